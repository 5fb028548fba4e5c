import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finsemi.corpus import brandt_b2, cyclic_group, left_zero, null_semigroup, right_zero, semilattice2
from finsemi.errors import (
    AssociativityViolation,
    BadIdentity,
    ClosureBudgetExceeded,
    DegreeMismatch,
    MalformedTable,
    NotACongruence,
    NotIdempotent,
    OutOfRangeEntry,
)
from finsemi.semigroup import (
    Congruence,
    FiniteSemigroup,
    Transformation,
    as_monoid,
    closure,
    congruence_failure,
    direct_product,
    find_identity,
    from_transformations,
    is_band,
    is_commutative,
    is_h_trivial,
    is_j_trivial,
    is_l_trivial,
    is_r_trivial,
    local_submonoid,
    omega_minus_one,
    omega_power,
    opposite,
    quotient,
    rank,
    regular_elements,
    relabel,
    restrict,
    subsemigroup_above_j,
    transformation_closure,
    validate,
)


# -- independent oracles ---------------------------------------------------------

def powers(S, s):
    """s, s^2, ... until the first repeat."""
    out = [s]
    while True:
        nxt = S.mul(out[-1], s)
        if nxt in out:
            return out, out.index(nxt)
        out.append(nxt)


def omega_oracle(S, s):
    ps, start = powers(S, s)
    # the idempotent is the unique idempotent among the powers
    es = [p for p in ps if S.mul(p, p) == p]
    assert len(es) == 1
    return es[0]


def ideals(S):
    n = S.order
    one = [set([x]) for x in range(n)]
    right = [one[x] | {S.mul(x, y) for y in range(n)} for x in range(n)]
    left = [one[x] | {S.mul(y, x) for y in range(n)} for x in range(n)]
    two = [left[x] | {S.mul(y, z) for y in left[x] for z in range(n)} for x in range(n)]
    return right, left, two


def transformation_semigroups():
    return st.integers(2, 4).flatmap(lambda d: st.lists(
        st.lists(st.integers(0, d - 1), min_size=d, max_size=d), min_size=1, max_size=3))


# -- validation ------------------------------------------------------------------

def test_validate_accepts_lz2():
    S = validate([[0, 0], [1, 1]])
    assert S.order == 2 and S.identity is None


def test_validate_rejects_bad_tables():
    with pytest.raises(MalformedTable):
        validate([[0, 1]])
    with pytest.raises(MalformedTable):
        validate([])
    with pytest.raises(OutOfRangeEntry):
        validate([[0, 2], [1, 1]])
    with pytest.raises(MalformedTable):
        validate([[0, 0.5], [1, 1]])


def test_associativity_witness_is_first_triple():
    # 0*1 = 1, 1*1 = 0: (0*1)*1 = 0 but 0*(1*1) = 0*0 = 1 ... find any failure
    t = [[1, 1], [0, 0]]
    with pytest.raises(AssociativityViolation) as exc:
        validate(t)
    i, j, k = exc.value.triple
    assert t[t[i][j]][k] != t[i][t[j][k]]
    for a, b, c in itertools.product(range(2), repeat=3):
        if (a, b, c) == (i, j, k):
            break
        assert t[t[a][b]][c] == t[a][t[b][c]]


def test_bad_identity():
    with pytest.raises(BadIdentity):
        validate([[0, 0], [1, 1]], identity=0)
    S = validate([[0, 0], [0, 1]], identity=1)
    assert S.identity == 1


def test_find_identity_and_as_monoid():
    assert find_identity(semilattice2()) == 1
    assert find_identity(left_zero()) is None
    assert as_monoid(left_zero()).identity is None
    M = as_monoid(FiniteSemigroup([[0, 0], [0, 1]]))
    assert M.identity == 1


def test_table_is_read_only():
    S = left_zero()
    with pytest.raises(ValueError):
        S.table[0, 0] = 1


# -- powers and idempotents ------------------------------------------------------

def test_omega_matches_power_enumeration(small_items):
    for item in small_items[:500]:
        S = item.semigroup
        for s in range(S.order):
            assert omega_power(S, s) == omega_oracle(S, s)


def test_omega_minus_one_in_cyclic_group():
    Z = cyclic_group(5)
    for s in range(5):
        w1 = omega_minus_one(Z, s)
        assert Z.mul(w1, s) == omega_power(Z, s) == 0
        assert (w1 + s) % 5 == 0


@given(transformation_semigroups())
@settings(max_examples=40, deadline=None)
def test_omega_on_transformations(gens):
    S = from_transformations([Transformation(g) for g in gens])
    for s in range(S.order):
        e = omega_power(S, s)
        assert e == omega_oracle(S, s)
        assert S.mul(omega_minus_one(S, s), s) == e


def test_idempotents():
    B = brandt_b2()
    assert B.idempotents == (2, 3, 4)
    assert is_band(left_zero()) and not is_band(B)


# -- Green's relations -------------------------------------------------------------

def test_greens_against_brute_force_ideals(iso_items):
    for item in iso_items:
        S = item.semigroup
        right, left, two = ideals(S)
        g = S.greens
        n = S.order
        for x, y in itertools.product(range(n), repeat=2):
            assert g.r_le[x, y] == (x in right[y])
            assert g.l_le[x, y] == (x in left[y])
            assert g.j_le[x, y] == (x in two[y])
            assert (g.r_class[x] == g.r_class[y]) == (right[x] == right[y])
            assert (g.l_class[x] == g.l_class[y]) == (left[x] == left[y])
            assert (g.j_class[x] == g.j_class[y]) == (two[x] == two[y])
            h = right[x] == right[y] and left[x] == left[y]
            assert (g.h_class[x] == g.h_class[y]) == h


def test_greens_triviality_examples():
    assert is_r_trivial(left_zero()) and not is_l_trivial(left_zero())
    assert is_l_trivial(right_zero()) and not is_r_trivial(right_zero())
    assert is_j_trivial(semilattice2())
    assert not is_h_trivial(cyclic_group(2))
    B = brandt_b2()
    assert sorted(map(tuple, B.greens.classes("J"))) == [(0, 1, 2, 3), (4,)]


def test_regular_elements():
    assert regular_elements(brandt_b2()) == (0, 1, 2, 3, 4)
    assert regular_elements(null_semigroup(3)) == (0,)


# -- subsemigroups -------------------------------------------------------------------

def test_local_submonoid_matches_brute_force(iso_items):
    for item in iso_items:
        S = item.semigroup
        for e in S.idempotents:
            eSe = sorted({S.mul(e, s, e) for s in range(S.order)})
            M = local_submonoid(S, e)
            assert sorted(M.embedding) == eSe
            assert M.embedding[M.identity] == e
            for i, j in itertools.product(range(M.order), repeat=2):
                assert M.embedding[M.mul(i, j)] == S.mul(M.embedding[i], M.embedding[j])


def test_local_submonoid_requires_idempotent():
    with pytest.raises(NotIdempotent):
        local_submonoid(brandt_b2(), 0)


def test_subsemigroup_above_j():
    B = brandt_b2()
    # generated by the s with e <=_J s; here a*a = 0 drags the zero in
    T = subsemigroup_above_j(B, 2)
    assert sorted(T.embedding) == [0, 1, 2, 3, 4]
    # e*M_e*e is not {e}, so B2 is not in DA
    assert {B.mul(2, s, 2) for s in T.embedding} != {2}
    T = subsemigroup_above_j(semilattice2(), 1)
    assert sorted(T.embedding) == [1]
    T = subsemigroup_above_j(B, 4)
    assert sorted(T.embedding) == [0, 1, 2, 3, 4]


def test_closure_and_restrict():
    B = brandt_b2()
    assert closure(B, [0, 1]) == [0, 1, 2, 3, 4]
    assert closure(B, [2]) == [2]
    T = restrict(B, [2, 4])
    assert T.order == 2 and is_band(T)


# -- transformations -------------------------------------------------------------------

def test_transformation_composition_is_left_to_right():
    f, g = Transformation((1, 1, 2)), Transformation((0, 2, 2))
    assert (f * g).images == (2, 2, 2)
    assert (g * f).images == (1, 2, 2)


def test_full_transformation_monoid_t3():
    gens = [Transformation(p) for p in [(1, 0, 2), (1, 2, 0), (0, 0, 2)]]
    S = from_transformations(gens)
    assert S.order == 27 and S.identity is not None


def test_transformation_errors():
    with pytest.raises(DegreeMismatch):
        from_transformations([Transformation((0, 1)), Transformation((0, 0, 0))])
    gens = [Transformation(p) for p in [(1, 0, 2), (1, 2, 0), (0, 0, 2)]]
    with pytest.raises(ClosureBudgetExceeded):
        from_transformations(gens, cap=10)


@given(transformation_semigroups())
@settings(max_examples=40, deadline=None)
def test_transformation_table_matches_composition(gens):
    S, maps = transformation_closure([Transformation(g) for g in gens])
    assert len(set(m.images for m in maps)) == S.order
    for i, j in itertools.product(range(S.order), repeat=2):
        assert maps[S.mul(i, j)] == maps[i] * maps[j]
    validate(S.rows())


# -- constructions ------------------------------------------------------------------------

def test_direct_product():
    P = direct_product(left_zero(), right_zero())
    assert P.order == 4
    assert is_band(P)
    # rectangular band: xyx = x
    for x, y in itertools.product(range(4), repeat=2):
        assert P.mul(x, y, x) == x


def test_opposite_and_relabel():
    assert opposite(left_zero()).rows() == right_zero().rows()
    S = brandt_b2()
    T = relabel(S, [4, 3, 2, 1, 0])
    assert T.order == 5 and is_band(T) == is_band(S)
    assert is_commutative(semilattice2()) and not is_commutative(left_zero())


def test_rank():
    assert rank(brandt_b2()) == 2
    assert rank(cyclic_group(4)) == 1
    assert rank(left_zero(3)) == 3


# -- congruences ---------------------------------------------------------------------------

def test_congruence_normalisation():
    c = Congruence((5, 5, 2))
    assert c.class_of == (0, 0, 1)
    assert c.class_count == 2
    assert Congruence.identity(3).refines(c)
    assert c.refines(Congruence.universal(3))
    assert Congruence.from_blocks(3, [[0, 1], [2]]) == c


def test_rees_congruence_quotient():
    B = brandt_b2()
    # identify everything except the J-class {a, b, ab, ba}: trivial here since 0 is alone
    c = Congruence.from_blocks(5, [[0], [1], [2], [3], [4]])
    Q, class_of = quotient(B, c)
    assert Q.rows() == B.rows()
    u = Congruence.universal(5)
    Q, _ = quotient(B, u)
    assert Q.order == 1


def test_non_congruence_witness():
    B = brandt_b2()
    c = Congruence.from_blocks(5, [[0, 1], [2], [3], [4]])
    (s, t), u, side = congruence_failure(B, c)
    assert c.class_of[s] == c.class_of[t]
    if side == "left":
        assert c.class_of[B.mul(u, s)] != c.class_of[B.mul(u, t)]
    else:
        assert c.class_of[B.mul(s, u)] != c.class_of[B.mul(t, u)]
    with pytest.raises(NotACongruence):
        quotient(B, c)


def test_quotient_map_is_a_morphism(small_items):
    from finsemi.malcev import sim_k
    for item in small_items[::7]:
        S = item.semigroup
        c = sim_k(S)
        Q, cls = quotient(S, c)
        for x, y in itertools.product(range(S.order), repeat=2):
            assert cls[S.mul(x, y)] == Q.mul(cls[x], cls[y])
