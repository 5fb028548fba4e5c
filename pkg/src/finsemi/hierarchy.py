"""Membership in DA and in the levels R_m, L_m of its hierarchy.

Two independent routes are provided.  The quotient route climbs by
Mal'cev quotients: ``R_1 = L_1`` is the class of J-trivial semigroups,
``S in R_{m+1}`` iff ``S/~K in L_m`` and ``S in L_{m+1}`` iff
``S/~D in R_m``.  The identity route checks DA together with the
pseudo-identity ``phi(G_m) = phi(I_m)`` (mirrored words for ``L_m``).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional


from .bands import phi_identity
from .errors import BudgetExceeded, RouteDisagreement
from .malcev import MalcevSide, sim_d, sim_k
from .semigroup import (
    FiniteSemigroup,
    is_j_trivial,
    is_l_trivial,
    is_r_trivial,
    local_submonoid,
    quotient,
    regular_elements,
    subsemigroup_above_j,
)
from .terms import DEFAULT_ASSIGNMENT_BUDGET, builtin_identity, satisfies, satisfies_witness

DEFAULT_MAX_M = 5
DEFAULT_IDENTITY_MAX_M = 3

DA_ROUTES = ("identity", "regular", "local")


# -- DA -------------------------------------------------------------------------

def _da_identity(S):
    return satisfies(S, builtin_identity("DA"))


def _da_regular(S):
    return all(S.is_idempotent[s] for s in regular_elements(S))


def _da_local(S):
    t = S.table
    for e in S.idempotents:
        above = subsemigroup_above_j(S, e).embedding
        if not (t[t[e, list(above)], e] == e).all():
            return False
    return True


_DA = {"identity": _da_identity, "regular": _da_regular, "local": _da_local}


def in_da(S: FiniteSemigroup, route: str = "identity") -> bool:
    if route == "all":
        got = {r: _DA[r](S) for r in DA_ROUTES}
        if len(set(got.values())) != 1:
            raise RouteDisagreement(f"DA routes disagree on {S!r}: {got}")
        return got["identity"]
    try:
        fn = _DA[route]
    except KeyError:
        raise ValueError(f"unknown DA route {route!r}") from None
    return fn(S)


# -- quotient route --------------------------------------------------------------

def sim_quotient(S: FiniteSemigroup, side: MalcevSide) -> FiniteSemigroup:
    """``S/~K`` or ``S/~D``, cached on S."""
    cache = S.__dict__.setdefault("_sim_quotients", {})
    if side not in cache:
        c = sim_k(S) if side is MalcevSide.K else sim_d(S)
        cache[side] = quotient(S, c)[0]
    return cache[side]


def in_rm(S: FiniteSemigroup, m: int) -> bool:
    if m < 1:
        raise ValueError("levels start at m = 1")
    if m == 1:
        return is_j_trivial(S)
    return in_lm(sim_quotient(S, MalcevSide.K), m - 1)


def in_lm(S: FiniteSemigroup, m: int) -> bool:
    if m < 1:
        raise ValueError("levels start at m = 1")
    if m == 1:
        return is_j_trivial(S)
    return in_rm(sim_quotient(S, MalcevSide.D), m - 1)


def quotient_chain(S: FiniteSemigroup, m: int, side: str = "R") -> dict:
    """Certificate for the quotient route at level ``m``.

    Records the order of each successive quotient and, on failure, a pair
    of distinct J-equivalent elements of the last quotient (which is then
    not J-trivial).
    """
    steps = []
    T = S
    letter = side
    for level in range(m, 1, -1):
        q = sim_quotient(T, MalcevSide.K if letter == "R" else MalcevSide.D)
        steps.append({"level": f"{letter}{level}", "order": T.order,
                      "congruence": "~K" if letter == "R" else "~D",
                      "quotient_order": q.order})
        T = q
        letter = "L" if letter == "R" else "R"
    jc = T.greens.j_class
    witness = None
    seen: dict[int, int] = {}
    for x, c in enumerate(jc):
        if c in seen:
            witness = [seen[c], x]
            break
        seen[c] = x
    return {"semigroup_order": S.order, "level": f"{side}{m}", "steps": steps,
            "final_order": T.order, "member": witness is None,
            "j_witness": witness}


# -- identity route ----------------------------------------------------------------

def in_rm_by_identity(S: FiniteSemigroup, m: int,
                      budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    if m < 2:
        raise ValueError("the phi identities start at m = 2")
    return in_da(S) and satisfies_witness(S, phi_identity(m), budget) is None


def in_lm_by_identity(S: FiniteSemigroup, m: int,
                      budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    if m < 2:
        raise ValueError("the phi identities start at m = 2")
    return in_da(S) and satisfies_witness(S, phi_identity(m, mirrored=True), budget) is None


# -- local operator ------------------------------------------------------------------

def in_local(S: FiniteSemigroup, inner_monoid: Callable[[FiniteSemigroup], bool]) -> bool:
    """True if every local monoid ``eSe`` passes ``inner_monoid``."""
    return all(inner_monoid(local_submonoid(S, e)) for e in S.idempotents)


def in_lj_da(S: FiniteSemigroup) -> bool:
    return in_da(S) and in_local(S, is_j_trivial)


def in_r_lj(S: FiniteSemigroup) -> bool:
    return is_r_trivial(S) and in_local(S, is_j_trivial)


# -- classification ----------------------------------------------------------------

@dataclass
class HierarchyReport:
    in_da: bool
    max_m: int
    min_r: Optional[int] = None
    min_l: Optional[int] = None
    r_levels: dict = field(default_factory=dict)
    l_levels: dict = field(default_factory=dict)
    corner: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("r_levels", "l_levels", "corner"):
            d[key] = {str(k): v for k, v in d[key].items()}
        return d


def classify(S: FiniteSemigroup, max_m: int = DEFAULT_MAX_M) -> HierarchyReport:
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    da = in_da(S)
    rep = HierarchyReport(in_da=da, max_m=max_m)
    rep.flags = {
        "J": is_j_trivial(S),
        "R": is_r_trivial(S),
        "L": is_l_trivial(S),
        "LJ&DA": in_lj_da(S),
        "R&LJ": in_r_lj(S),
    }
    for m in range(1, max_m + 1):
        r = in_rm(S, m) if da else False
        l = in_lm(S, m) if da else False
        rep.r_levels[m] = r
        rep.l_levels[m] = l
        rep.corner[m] = r and l
        if r and rep.min_r is None:
            rep.min_r = m
        if l and rep.min_l is None:
            rep.min_l = m
    if da and (rep.min_r is None or rep.min_l is None):
        rep.notes.append(f"in DA but no level <= {max_m} found on some side")
        if S.generators is not None:
            rep.notes.append(
                f"{len(set(S.generators))}-generated, so the level is at most "
                f"{len(set(S.generators)) + 1}")
    return rep


# -- corpus verification -----------------------------------------------------------

@dataclass
class CorpusItem:
    id: str
    semigroup: FiniteSemigroup
    generator_count: Optional[int] = None
    source: str = ""


@dataclass
class AgreementReport:
    name: str
    checked: int = 0
    disagreements: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _items(corpus) -> Iterable[CorpusItem]:
    for i, x in enumerate(corpus):
        if isinstance(x, CorpusItem):
            yield x
        else:
            yield CorpusItem(str(i), x)


def _table(S):
    return S.rows() if S.order <= 8 else f"<order {S.order}>"


def verify_main_theorem(corpus, m: int,
                        budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> AgreementReport:
    """Compare ``R_{m+1}`` (quotient route) with the phi identity route, and dually."""
    rep = AgreementReport(f"main-theorem m={m}")
    members = {"R": 0, "L": 0}
    for item in _items(corpus):
        S = item.semigroup
        try:
            r_id = in_rm_by_identity(S, m + 1, budget)
            l_id = in_lm_by_identity(S, m + 1, budget)
        except BudgetExceeded as exc:
            rep.skipped.append({"id": item.id, "reason": str(exc)})
            continue
        r_q, l_q = in_rm(S, m + 1), in_lm(S, m + 1)
        rep.checked += 1
        members["R"] += r_q
        members["L"] += l_q
        for side, q, i in (("R", r_q, r_id), ("L", l_q, l_id)):
            if q != i:
                wit = None
                if not i and in_da(S):
                    ident = phi_identity(m + 1, mirrored=(side == "L"))
                    wit = satisfies_witness(S, ident, budget)
                rep.disagreements.append({
                    "id": item.id, "side": f"{side}{m + 1}", "quotient": q,
                    "identity": i, "witness": wit, "table": _table(S)})
    rep.stats = {"members": members}
    if rep.checked == 0:
        rep.notes.append("empty corpus: vacuous agreement")
    return rep


def verify_nil_corner(corpus, m: int) -> AgreementReport:
    if m < 2:
        raise ValueError("the Nil corner is stated for m >= 2")
    rep = AgreementReport(f"nil-corner m={m}")

    def corner(T):
        return in_rm(T, m) and in_lm(T, m)

    hits = 0
    for item in _items(corpus):
        S = item.semigroup
        direct = corner(S)
        via_nil = (corner(sim_quotient(S, MalcevSide.K))
                   and corner(sim_quotient(S, MalcevSide.D)))
        rep.checked += 1
        hits += direct
        if direct != via_nil:
            rep.disagreements.append({"id": item.id, "direct": direct,
                                      "nil_malcev": via_nil, "table": _table(S)})
    rep.stats = {"members": hits}
    return rep


def verify_generator_bound(corpus, max_m: int = DEFAULT_MAX_M) -> AgreementReport:
    """Every m-generated member of DA lies in ``R_{m+1}`` and ``L_{m+1}``.

    Monogenic members must moreover be J-trivial; 2-generated ones must
    lie in ``R_3`` and ``L_3``.
    """
    rep = AgreementReport("generator-bound")
    by_rank: dict = {}
    for item in _items(corpus):
        S = item.semigroup
        k = item.generator_count
        if k is None:
            rep.skipped.append({"id": item.id, "reason": "generator count unknown"})
            continue
        if not in_da(S):
            continue
        rep.checked += 1
        by_rank[k] = by_rank.get(k, 0) + 1
        problems = []
        if k == 1 and not is_j_trivial(S):
            problems.append("monogenic but not J-trivial")
        if k + 1 <= max_m or k <= 2:
            if not in_rm(S, k + 1):
                problems.append(f"not in R{k + 1}")
            if not in_lm(S, k + 1):
                problems.append(f"not in L{k + 1}")
        if problems:
            rep.disagreements.append({"id": item.id, "generators": k,
                                      "problems": problems, "table": _table(S)})
    rep.stats = {"da_members_by_generator_count": {str(k): v for k, v in sorted(by_rank.items())}}
    return rep


def verify_da_routes(corpus) -> AgreementReport:
    rep = AgreementReport("da-equiv")
    members = 0
    for item in _items(corpus):
        S = item.semigroup
        got = {r: _DA[r](S) for r in DA_ROUTES}
        rep.checked += 1
        members += got["identity"]
        if len(set(got.values())) != 1:
            rep.disagreements.append({"id": item.id, "routes": got, "table": _table(S)})
    rep.stats = {"members": members}
    return rep
