"""Named verification suites, each returning an :class:`AgreementReport`.

Corpus suites can be split over worker processes.  Items are cut into
contiguous chunks and the chunk reports are merged in order, so the
result does not depend on the number of workers.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import numpy as np

from . import languages as lang
from .bands import band_canon, free_band, g_word, i_word, mirror, word_identity
from .enumeration import MAX_CONGRUENCE_ORDER
from .errors import BudgetExceeded, NoLeastElement
from .hierarchy import (
    AgreementReport,
    CorpusItem,
    in_lm,
    in_rm,
    verify_da_routes,
    verify_generator_bound,
    verify_main_theorem,
    verify_nil_corner,
)
from .malcev import (
    MalcevSide,
    _in_d,
    _in_k,
    is_v_morphism_onto_quotient,
    least_v_quotient_oracle,
    sim_d,
    sim_k,
)
from .semigroup import congruence_failure, is_band
from .terms import DEFAULT_ASSIGNMENT_BUDGET, satisfies_witness

log = logging.getLogger(__name__)


@dataclass
class SuiteConfig:
    m_values: tuple = (1, 2)
    max_m: int = 5
    budget: int = DEFAULT_ASSIGNMENT_BUDGET
    len_bound: int = lang.DEFAULT_LENGTH_BOUND
    fb3_level4: bool = False
    oracle_max_order: int = 4
    extra: dict = field(default_factory=dict)


def _table(S):
    return S.rows() if S.order <= 8 else f"<order {S.order}>"


# -- corpus suites ----------------------------------------------------------------

def suite_main_theorem(items, cfg: SuiteConfig) -> AgreementReport:
    reports = [verify_main_theorem(items, m, cfg.budget) for m in cfg.m_values]
    return _combine("main-theorem", reports)


def suite_nil_corner(items, cfg: SuiteConfig) -> AgreementReport:
    ms = [m for m in cfg.m_values if m >= 2] or [2, 3]
    return _combine("nil-corner", [verify_nil_corner(items, m) for m in ms])


def suite_da_equiv(items, cfg: SuiteConfig) -> AgreementReport:
    return verify_da_routes(items)


def suite_generator_bound(items, cfg: SuiteConfig) -> AgreementReport:
    return verify_generator_bound(items, cfg.max_m)


def suite_malcev_minimality(items, cfg: SuiteConfig) -> AgreementReport:
    """~K and ~D are congruences, their projections are K-/D-morphisms, and
    for small orders they are the coarsest such congruences."""
    rep = AgreementReport("malcev-minimality")
    compared = 0
    for item in items:
        S = item.semigroup
        rep.checked += 1
        for side, make, inner in ((MalcevSide.K, sim_k, _in_k),
                                  (MalcevSide.D, sim_d, _in_d)):
            c = make(S, check=False)
            bad = congruence_failure(S, c)
            if bad is not None:
                rep.disagreements.append({"id": item.id, "side": side.value,
                                          "problem": "not a congruence",
                                          "witness": list(map(str, bad))})
                continue
            if not is_v_morphism_onto_quotient(S, c, inner):
                rep.disagreements.append({"id": item.id, "side": side.value,
                                          "problem": "projection is not a morphism",
                                          "table": _table(S)})
                continue
            if S.order <= min(cfg.oracle_max_order, MAX_CONGRUENCE_ORDER):
                try:
                    best = least_v_quotient_oracle(S, side)
                except NoLeastElement as exc:
                    rep.disagreements.append({"id": item.id, "side": side.value,
                                              "problem": f"no coarsest congruence: {exc}"})
                    continue
                compared += 1
                if best != c:
                    rep.disagreements.append({
                        "id": item.id, "side": side.value, "problem": "differs from oracle",
                        "computed": list(c.class_of), "oracle": list(best.class_of),
                        "table": _table(S)})
    rep.stats = {"oracle_comparisons": compared}
    return rep


def _band_items(items):
    return [it for it in items if is_band(it.semigroup)]


def suite_band_interval(items, cfg: SuiteConfig) -> AgreementReport:
    """For bands, membership in R_m (L_m) equals the word identity G_m = I_m
    (mirrored)."""
    rep = AgreementReport("band-interval")
    fb = [CorpusItem("FB2", free_band(2).semigroup, 2, "free band"),
          CorpusItem("FB3", free_band(3).semigroup, 3, "free band")]
    bands = _band_items(items) + (fb if cfg.extra.get("with_free_bands", True) else [])
    members: dict = {}
    for item in bands:
        B = item.semigroup
        ms = [2, 3]
        if item.id == "FB3" and cfg.fb3_level4:
            ms.append(4)
        rep.checked += 1
        for m in ms:
            for side, mir in (("R", False), ("L", True)):
                g, i = g_word(m), i_word(m)
                if mir:
                    g, i = mirror(g), mirror(i)
                try:
                    wit = satisfies_witness(B, word_identity(g, i), cfg.budget)
                except BudgetExceeded as exc:
                    rep.skipped.append({"id": item.id, "level": f"{side}{m}",
                                        "reason": str(exc)})
                    continue
                q = in_rm(B, m) if side == "R" else in_lm(B, m)
                key = f"{side}{m}"
                members[key] = members.get(key, 0) + q
                if q != (wit is None):
                    rep.disagreements.append({"id": item.id, "level": key,
                                              "quotient": q, "identity": wit is None,
                                              "witness": wit, "table": _table(B)})
    rep.stats = {"members": members, "bands": len(bands)}
    return rep


# -- standalone suites -----------------------------------------------------------------

FREE_BAND_SIZES = {1: 1, 2: 6, 3: 159}


def _word_values(B, word, k):
    """Value of ``word`` under every assignment of letters 1..k, as a flat array."""
    n = B.order
    axes = np.indices((n,) * k).reshape(k, -1)
    acc = axes[word[0] - 1]
    for a in word[1:]:
        acc = B.table[acc, axes[a - 1]]
    return acc


def suite_free_band(items, cfg: SuiteConfig) -> AgreementReport:
    """Sizes of FB(1..3), idempotency, and soundness of the canonical form:
    no band in the corpus separates two words with the same canonical form."""
    rep = AgreementReport("free-band")
    sizes = {}
    for k, expected in FREE_BAND_SIZES.items():
        F = free_band(k)
        sizes[str(k)] = F.order
        rep.checked += 1
        if F.order != expected:
            rep.disagreements.append({"check": f"|FB({k})|", "expected": expected,
                                      "got": F.order})
        if not is_band(F.semigroup):
            rep.disagreements.append({"check": f"FB({k}) idempotent", "got": False})
    # words over k letters up to the given length, grouped by canonical form
    word_sets = {2: 6, 3: 4}
    groups = {}
    for k, length in word_sets.items():
        by_form: dict = {}
        for n in range(1, length + 1):
            for w in itertools.product(range(1, k + 1), repeat=n):
                by_form.setdefault(band_canon(w), []).append(w)
        groups[k] = [ws for ws in by_form.values() if len(ws) > 1]
    bands = _band_items(items) + [CorpusItem("FB2", free_band(2).semigroup, 2)]
    for item in bands:
        B = item.semigroup
        rep.checked += 1
        for k, gs in groups.items():
            if B.order ** k > cfg.budget:
                rep.skipped.append({"id": item.id, "letters": k, "reason": "budget"})
                continue
            for ws in gs:
                first = _word_values(B, ws[0], k)
                for w in ws[1:]:
                    if not np.array_equal(first, _word_values(B, w, k)):
                        rep.disagreements.append({"check": "canonical form soundness",
                                                  "id": item.id, "words": [ws[0], w]})
                        break
    rep.stats = {"sizes": sizes, "bands": len(bands)}
    return rep


LANGUAGE_GOLDENS = {
    # name: (monoid order, in DA, min R level, min L level)
    "B*": (2, True, 1, 1),
    "aA*": (3, True, 2, 3),
    "A*a": (3, True, 3, 2),
    "A*aA*": (2, True, 1, 1),
}

PRODUCT_GOLDENS = {
    # name: (deterministic, co-deterministic, unambiguous)
    "{e}aA*": (True, False, True),
    "A*aA*": (False, False, False),
    "A*a{e}": (False, True, True),
    "b*ab*": (True, True, True),
}


def example_languages(alphabet=("a", "b")) -> dict:
    return {
        "B*": lang.star_of("b", alphabet),
        "aA*": lang.starts_with("a", alphabet),
        "A*a": lang.ends_with("a", alphabet),
        "A*aA*": lang.contains("a", alphabet),
    }


def example_products(alphabet=("a", "b")) -> dict:
    A = lang.all_words(alphabet)
    E = lang.empty_word(alphabet)
    Bs = lang.star_of("b", alphabet)
    return {
        "{e}aA*": lang.product(E, "a", A),
        "A*aA*": lang.product(A, "a", A),
        "A*a{e}": lang.product(A, "a", E),
        "b*ab*": lang.product(Bs, "a", Bs),
    }


def suite_language(items, cfg: SuiteConfig) -> AgreementReport:
    rep = AgreementReport("language")
    for name, d in example_languages().items():
        r = lang.classify_language(d, cfg.max_m)
        got = (lang.syntactic_monoid(d).order, r.in_da, r.min_r, r.min_l)
        rep.checked += 1
        if got != LANGUAGE_GOLDENS[name]:
            rep.disagreements.append({"language": name, "expected": LANGUAGE_GOLDENS[name],
                                      "got": got})
    for name, p in example_products().items():
        v = lang.check_product(p, cfg.len_bound)
        got = (v.deterministic, v.codeterministic, v.unambiguous)
        rep.checked += 1
        if got != PRODUCT_GOLDENS[name] or not v.consistent:
            rep.disagreements.append({"product": name, "expected": PRODUCT_GOLDENS[name],
                                      "got": got, "brute_force": v.brute_force})
    return rep


# -- registry and execution --------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable
    uses_corpus: bool = True


SUITES = {s.name: s for s in (
    Suite("main-theorem", suite_main_theorem),
    Suite("da-equiv", suite_da_equiv),
    Suite("band-interval", suite_band_interval),
    Suite("nil-corner", suite_nil_corner),
    Suite("generator-bound", suite_generator_bound),
    Suite("free-band", suite_free_band),
    Suite("malcev-minimality", suite_malcev_minimality),
    Suite("language", suite_language, uses_corpus=False),
)}


def _add_stats(a, b):
    if isinstance(a, dict) and isinstance(b, dict):
        out = dict(a)
        for k, v in b.items():
            out[k] = _add_stats(out[k], v) if k in out else v
        return out
    if isinstance(a, (int, float)) and isinstance(b, (int, float)) \
            and not isinstance(a, bool):
        return a + b
    return a


def merge_reports(name: str, parts: list[AgreementReport]) -> AgreementReport:
    rep = AgreementReport(name)
    for p in parts:
        rep.checked += p.checked
        rep.disagreements += p.disagreements
        rep.skipped += p.skipped
        for n in p.notes:
            if n not in rep.notes:
                rep.notes.append(n)
        rep.stats = _add_stats(rep.stats, p.stats)
    return rep


def _combine(name, reports):
    """Side-by-side reports (e.g. one per m) folded into one."""
    rep = AgreementReport(name)
    for r in reports:
        rep.checked += r.checked
        rep.disagreements += [dict(d, run=r.name) for d in r.disagreements]
        rep.skipped += [dict(s, run=r.name) for s in r.skipped]
        rep.notes += [f"{r.name}: {n}" for n in r.notes]
        rep.stats[r.name] = r.stats
    return rep


def _chunks(items, jobs):
    size = -(-len(items) // jobs)
    return [items[i:i + size] for i in range(0, len(items), size)]


def run_suite(name: str, corpus: Optional[list] = None, cfg: Optional[SuiteConfig] = None,
              jobs: int = 1) -> AgreementReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    cfg = cfg or SuiteConfig()
    items = list(corpus or [])
    if not suite.uses_corpus or jobs <= 1 or len(items) < 2:
        rep = suite.run(items, cfg)
    elif name in ("band-interval", "free-band"):
        # the free-band extras must run exactly once
        rep = suite.run(items, cfg)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(partial(suite.run, cfg=cfg), _chunks(items, jobs)))
        rep = merge_reports(parts[0].name, parts)
    rep.name = name
    if suite.uses_corpus and not items:
        rep.notes.append("warning: empty corpus, agreement is vacuous")
        log.warning("suite %s ran on an empty corpus", name)
    return rep
