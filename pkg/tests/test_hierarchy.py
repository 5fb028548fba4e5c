import pytest

from finsemi.bands import free_band
from finsemi.corpus import brandt_b2, cyclic_group, left_zero, right_zero, semilattice2, trivial
from finsemi.hierarchy import (
    CorpusItem,
    classify,
    in_da,
    in_lj_da,
    in_lm,
    in_lm_by_identity,
    in_local,
    in_rm,
    in_rm_by_identity,
    quotient_chain,
    verify_da_routes,
    verify_generator_bound,
    verify_main_theorem,
    verify_nil_corner,
)
from finsemi.semigroup import is_band, local_submonoid, opposite
from finsemi.terms import satisfies_builtin


def test_da_routes_on_examples():
    for S in (left_zero(), right_zero(), semilattice2(), trivial()):
        assert in_da(S, "all")
    assert not in_da(brandt_b2(), "all")
    assert not in_da(cyclic_group(2), "all")
    with pytest.raises(ValueError):
        in_da(trivial(), "nope")


def test_levels_of_small_examples():
    assert in_rm(trivial(), 1)
    assert in_rm(left_zero(), 2) and not in_rm(left_zero(), 1)
    assert in_lm(right_zero(), 2) and not in_lm(right_zero(), 1)
    assert not in_rm(right_zero(), 2) and in_rm(right_zero(), 3)
    with pytest.raises(ValueError):
        in_rm(trivial(), 0)


def test_identity_route_examples():
    assert in_rm_by_identity(left_zero(), 2)
    assert not in_lm_by_identity(left_zero(), 2)
    assert in_rm_by_identity(trivial(), 3)
    with pytest.raises(ValueError):
        in_rm_by_identity(trivial(), 1)


def test_classify_examples():
    r = classify(semilattice2())
    assert r.in_da and r.min_r == 1 and r.min_l == 1
    r = classify(free_band(2).semigroup)
    assert (r.min_r, r.min_l) == (3, 3)
    assert r.corner[3] and not r.corner[2]
    r = classify(brandt_b2())
    assert not r.in_da and r.min_r is None and r.min_l is None
    assert not any(r.r_levels.values())
    r = classify(left_zero())
    assert (r.min_r, r.min_l) == (2, 3)
    assert r.to_dict()["r_levels"]["2"] is True


def test_classify_notes_generator_bound():
    r = classify(free_band(3).semigroup, max_m=2)
    assert r.min_r is None
    assert any("at most 4" in n for n in r.notes)


def test_chain_duality_and_containment(small_items):
    for item in small_items[::4]:
        S = item.semigroup
        for m in (1, 2, 3):
            if in_rm(S, m):
                assert in_rm(S, m + 1)
                assert in_da(S)
            assert in_rm(S, m) == in_lm(opposite(S), m)


def test_local_operator(iso_items):
    for item in iso_items:
        S = item.semigroup
        assert in_local(S, lambda M: M.order == 1) == satisfies_builtin(S, "LI")


def test_lj_da_matches_example_bands(iso_items):
    # (BR'2 v BL'2)^ = LJ & DA: on bands this is BR'3 & BL'3 = L SL & B
    for item in iso_items:
        S = item.semigroup
        if is_band(S):
            local_sl = all(satisfies_builtin(local_submonoid(S, e), "SL")
                           for e in S.idempotents)
            assert in_lj_da(S) == local_sl


def test_r2_identity_matches_usual_r_identity(small_items):
    for item in small_items:
        S = item.semigroup
        assert in_rm_by_identity(S, 2) == (in_da(S) and satisfies_builtin(S, "R"))


def test_quotient_chain_certificates():
    c = quotient_chain(free_band(2).semigroup, 2, "R")
    assert not c["member"] and c["j_witness"] is not None
    c = quotient_chain(free_band(2).semigroup, 3, "R")
    assert c["member"] and [s["congruence"] for s in c["steps"]] == ["~K", "~D"]
    c = quotient_chain(right_zero(), 2, "L")
    assert c["member"] and c["steps"][0]["quotient_order"] == 1


def test_verify_suites_on_small_corpus(iso_items):
    assert verify_main_theorem(iso_items, 1).passed
    assert verify_nil_corner(iso_items, 2).passed
    assert verify_da_routes(iso_items).passed
    assert verify_generator_bound(iso_items).passed


def test_empty_corpus_is_vacuous():
    rep = verify_main_theorem([], 1)
    assert rep.passed and rep.checked == 0 and rep.notes


def test_generator_bound_skips_unknown_rank():
    rep = verify_generator_bound([CorpusItem("x", left_zero(), None)])
    assert rep.skipped and rep.passed


def test_nil_corner_examples():
    rep = verify_nil_corner([CorpusItem("t", trivial()), CorpusItem("lz", left_zero())], 2)
    assert rep.passed and rep.stats["members"] == 1
