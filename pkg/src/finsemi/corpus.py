"""Named small semigroups and the corpora used by the verification suites."""

from __future__ import annotations

import random
from typing import Iterator, Optional

from .bands import free_band
from .enumeration import enumerate_semigroups
from .hierarchy import CorpusItem
from .semigroup import FiniteSemigroup, Transformation, from_transformations, rank


def trivial() -> FiniteSemigroup:
    return FiniteSemigroup([[0]], identity=0, name="trivial")


def left_zero(n: int = 2) -> FiniteSemigroup:
    return FiniteSemigroup([[i] * n for i in range(n)], name=f"LZ{n}")


def right_zero(n: int = 2) -> FiniteSemigroup:
    return FiniteSemigroup([list(range(n)) for _ in range(n)], name=f"RZ{n}")


def semilattice2() -> FiniteSemigroup:
    """{1, 0} under meet: element 0 is the zero, element 1 the identity."""
    return FiniteSemigroup([[0, 0], [0, 1]], identity=1, name="SL2")


def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([[(i + j) % n for j in range(n)] for i in range(n)],
                           identity=0, name=f"Z{n}")


def null_semigroup(n: int = 2) -> FiniteSemigroup:
    """All products equal 0."""
    return FiniteSemigroup([[0] * n for _ in range(n)], name=f"N{n}")


B2_NAMES = ("a", "b", "ab", "ba", "0")


def brandt_b2() -> FiniteSemigroup:
    """The five-element Brandt semigroup ``{a, b, ab, ba, 0}``.

    ``aba = a``, ``bab = b`` and ``aa = bb = 0``.
    """
    a, b, ab, ba, z = range(5)
    t = [[z] * 5 for _ in range(5)]
    t[a][b] = ab
    t[b][a] = ba
    t[a][ba] = a
    t[ab][a] = a
    t[ab][ab] = ab
    t[b][ab] = b
    t[ba][b] = b
    t[ba][ba] = ba
    return FiniteSemigroup(t, name="B2")


NAMED = {
    "trivial": trivial,
    "LZ2": left_zero,
    "RZ2": right_zero,
    "SL2": semilattice2,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "N2": null_semigroup,
    "B2": brandt_b2,
    "FB1": lambda: free_band(1).semigroup,
    "FB2": lambda: free_band(2).semigroup,
    "FB3": lambda: free_band(3).semigroup,
}

# display names for elements of some named semigroups
ELEMENT_NAMES = {"B2": B2_NAMES}


def named(name: str) -> FiniteSemigroup:
    return NAMED[name]()


def small_corpus(max_order: int = 4, dedup_iso: bool = False) -> Iterator[CorpusItem]:
    """Every semigroup table of order <= max_order, with its rank."""
    for n in range(1, max_order + 1):
        for i, S in enumerate(enumerate_semigroups(n, dedup_iso)):
            yield CorpusItem(f"ord{n}-{i}", S, rank(S), "enumeration")


_KINDS = ("random", "extensive", "monotone", "reductive", "mixed")
# per-semigroup family schedule; mixtures are where the upper levels live
_SCHEDULE = _KINDS + ("mixed",) * 5


def _random_map(rng: random.Random, d: int, kind: str) -> Transformation:
    if kind == "mixed":
        kind = rng.choice(_KINDS[:4])
    if kind == "random":
        return Transformation([rng.randrange(d) for _ in range(d)])
    if kind == "extensive":
        return Transformation([rng.randrange(x, d) for x in range(d)])
    if kind == "reductive":
        return Transformation([rng.randrange(0, x + 1) for x in range(d)])
    # order-preserving
    return Transformation(sorted(rng.randrange(d) for _ in range(d)))


def transformation_corpus(count: int = 200, seed: int = 0, max_degree: int = 4,
                          max_gens: int = 5, include_full: bool = True,
                          cap: int = 256, high_quota: int = 20) -> list[CorpusItem]:
    """Distinct transformation semigroups from seeded random generator sets.

    Generators are drawn from several families (arbitrary, extensive,
    order-preserving, reductive maps) so that the DA, R-trivial and
    L-trivial regions are all represented.  The full monoid T_4 is
    included when ``include_full`` is set.  After ``count`` members, more
    draws are made on ``max_degree`` points until ``high_quota`` extra
    members of DA at level 4 or more (on either side) are found, since
    these are rare among uniform draws.
    """
    from .hierarchy import in_da, in_lm, in_rm

    rng = random.Random(seed)
    out: list[CorpusItem] = []
    seen: set = set()

    def add(gens, kind, accept=None):
        S = from_transformations(gens, cap=max(cap, 5000))
        if S.order > cap:
            return False
        key = frozenset(_elements(gens))
        if key in seen:
            return False
        if accept is not None and not accept(S):
            return False
        seen.add(key)
        k = len(set(S.generators))
        out.append(CorpusItem(f"tr{len(out)}", S, k, f"transformations:{kind}"))
        return True

    if include_full:
        d = max_degree
        # T_d is generated by a transposition, a d-cycle and a rank d-1 map
        cyc = Transformation([(x + 1) % d for x in range(d)])
        swap = Transformation([1, 0] + list(range(2, d)))
        merge = Transformation([0, 0] + list(range(2, d)))
        add([swap, cyc, merge], "full")
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError("could not generate enough distinct semigroups")
        # favour the largest degree, where the higher levels occur
        d = max(2, max_degree - rng.choice((0, 0, 0, 1, 2)))
        k = rng.randint(1, max_gens)
        kind = _SCHEDULE[attempts % len(_SCHEDULE)]
        add([_random_map(rng, d, kind) for _ in range(k)], kind)

    def high(S):
        return in_da(S) and not (in_rm(S, 3) and in_lm(S, 3))

    found = 0
    attempts = 0
    while found < high_quota and attempts < 2000 * max(high_quota, 1):
        attempts += 1
        k = rng.randint(2, max_gens)
        gens = [_random_map(rng, max_degree, "mixed") for _ in range(k)]
        found += add(gens, "mixed-high", high)
    return out


def _elements(gens):
    """All maps generated by ``gens`` (as image tuples)."""
    seen = {g.images for g in gens}
    frontier = list(seen)
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = tuple(g.images[v] for v in f)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def band_corpus(max_order: int = 4) -> list[CorpusItem]:
    from .semigroup import is_band
    items = [it for it in small_corpus(max_order) if is_band(it.semigroup)]
    for k in (1, 2, 3):
        items.append(CorpusItem(f"FB{k}", free_band(k).semigroup, k, "free band"))
    return items


def full_corpus(max_order: int = 4, transformations: int = 200, seed: int = 0,
                extra: Optional[list] = None) -> list[CorpusItem]:
    items = list(small_corpus(max_order))
    items += transformation_corpus(transformations, seed)
    if extra:
        items += extra
    return items
