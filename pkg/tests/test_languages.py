import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finsemi.enumeration import are_isomorphic
from finsemi.errors import BudgetExceeded, ClosureBudgetExceeded
from finsemi.hierarchy import in_da, in_rm
from finsemi.languages import (
    Dfa,
    ProductExpression,
    all_words,
    brute_force_codeterministic,
    brute_force_deterministic,
    brute_force_unambiguous,
    check_product,
    classify_language,
    concat_product,
    contains,
    decompositions,
    determinize,
    dfa,
    empty_word,
    ends_with,
    equivalent,
    is_codeterministic,
    is_codeterministic_product,
    is_deterministic,
    is_deterministic_product,
    is_unambiguous_product,
    minimize,
    product,
    product_dfa,
    product_recognizer,
    reverse,
    star_of,
    starts_with,
    syntactic_monoid,
    words,
)
from finsemi.semigroup import is_j_trivial, is_r_trivial

A = ("a", "b")


def random_dfa(rng, n, alphabet=A):
    delta = tuple(tuple(rng.randrange(n) for _ in alphabet) for _ in range(n))
    acc = frozenset(q for q in range(n) if rng.random() < 0.5)
    return Dfa(tuple(alphabet), delta, 0, acc)


dfas = st.integers(0, 10 ** 6).map(lambda s: random_dfa(random.Random(s), random.Random(s).randint(1, 4)))


def same_language(d1, d2, max_len=8):
    return all(d1.accepts(w) == d2.accepts(w) for w in words(d1.alphabet, max_len))


# -- automata -----------------------------------------------------------------------

def test_dfa_validation():
    with pytest.raises(ValueError):
        Dfa(A, ((0,),), 0, frozenset())
    with pytest.raises(ValueError):
        Dfa(A, ((0, 1),), 0, frozenset())
    with pytest.raises(ValueError):
        dfa(A, 1, 0, [0], [(0, "c", 0)])
    d = dfa(A, 1, 0, [0], [(0, "a", 0)])
    assert d.state_count == 2  # sink added
    assert d.accepts("aa") and not d.accepts("ab")


def test_minimize_examples():
    assert minimize(contains("a", A)).state_count == 2
    # unreachable state dropped
    d = Dfa(A, ((0, 0), (1, 1)), 0, frozenset([0, 1]))
    assert minimize(d).state_count == 1
    # a* over {a, b}: accepting loop plus sink
    assert minimize(star_of("a", A)).state_count == 2
    # a redundant copy of a state is merged
    d = Dfa(A, ((1, 2), (1, 2), (1, 2)), 0, frozenset([1]))
    assert minimize(d).state_count == 2


@given(dfas)
@settings(max_examples=80, deadline=None)
def test_minimize_preserves_language_and_is_minimal(d):
    m = minimize(d)
    assert same_language(d, m)
    assert minimize(m) == m
    # states are pairwise distinguishable by some short word
    for p, q in itertools.combinations(range(m.state_count), 2):
        assert any((m.run(w, p) in m.accepting) != (m.run(w, q) in m.accepting)
                   for w in words(A, m.state_count))


@given(dfas)
@settings(max_examples=60, deadline=None)
def test_reverse(d):
    r = reverse(d)
    assert all(d.accepts(w) == r.accepts(w[::-1]) for w in words(A, 7))
    assert equivalent(reverse(r), d)


def test_concat_product_examples():
    E, S = empty_word(A), all_words(A)
    assert equivalent(concat_product(E, "a", S), starts_with("a", A))
    assert equivalent(concat_product(S, "a", E), ends_with("a", A))
    assert equivalent(concat_product(S, "a", S), contains("a", A))


def test_determinize_budget():
    S = all_words(A)
    p = product_recognizer(product(S, "a", S))
    with pytest.raises(BudgetExceeded):
        determinize(p, cap=1)


# -- syntactic monoid -----------------------------------------------------------------

def test_syntactic_monoid_examples():
    sm = syntactic_monoid(star_of("b", A))
    assert sm.order == 2 and is_j_trivial(sm.monoid)
    assert sm.letter_image["b"] == sm.monoid.identity
    sm = syntactic_monoid(starts_with("a", A))
    assert sm.order == 3
    assert is_r_trivial(sm.monoid) and not is_j_trivial(sm.monoid)
    alpha, beta = sm.letter_image["a"], sm.letter_image["b"]
    for x in (alpha, beta):
        assert sm.monoid.mul(alpha, x) == alpha and sm.monoid.mul(beta, x) == beta
    assert syntactic_monoid(all_words(A)).order == 1


def test_syntactic_monoid_cap():
    # words whose length is 0 mod 7 need a cyclic group of order 7
    d = Dfa(A, tuple(((q + 1) % 7, (q + 1) % 7) for q in range(7)), 0, frozenset([0]))
    assert syntactic_monoid(d).order == 7
    with pytest.raises(ClosureBudgetExceeded):
        syntactic_monoid(d, cap=3)


@given(dfas, st.lists(st.sampled_from(A), max_size=12))
@settings(max_examples=100, deadline=None)
def test_recognition(d, w):
    sm = syntactic_monoid(d)
    assert d.accepts(w) == sm.recognizes(w)


def test_monoid_invariant_under_equivalent_dfas():
    pairs = [
        (contains("a", A), concat_product(all_words(A), "a", all_words(A))),
        (starts_with("a", A), Dfa(A, ((1, 3), (2, 2), (1, 1), (3, 3)), 0, frozenset([1, 2]))),
    ]
    for d1, d2 in pairs:
        assert same_language(d1, d2)
        assert are_isomorphic(syntactic_monoid(d1).monoid, syntactic_monoid(d2).monoid)


# -- classification --------------------------------------------------------------------

@pytest.mark.parametrize("d,level", [
    (star_of("b", A), (1, 1)),
    (starts_with("a", A), (2, 3)),
    (ends_with("a", A), (3, 2)),
    (contains("a", A), (1, 1)),
    (all_words(A), (1, 1)),
])
def test_classify_language(d, level):
    r = classify_language(d)
    assert r.in_da and (r.min_r, r.min_l) == level
    assert any("DA" in n for n in r.notes)


@given(dfas)
@settings(max_examples=40, deadline=None)
def test_reversal_swaps_sides(d):
    r, s = classify_language(d), classify_language(reverse(d))
    assert (r.min_r, r.min_l) == (s.min_l, s.min_r)


def test_non_da_language():
    # (aa)* over {a, b}: the letter a acts as a cyclic group of order 2
    d = Dfa(A, ((1, 2), (0, 2), (2, 2)), 0, frozenset([0]))
    assert not classify_language(d).in_da


# -- products ------------------------------------------------------------------------------

def examples():
    E, S, Bs = empty_word(A), all_words(A), star_of("b", A)
    return {
        "{e}aA*": (E, "a", S),
        "A*aA*": (S, "a", S),
        "A*a{e}": (S, "a", E),
        "b*ab*": (Bs, "a", Bs),
    }


@pytest.mark.parametrize("name,det,codet,unamb", [
    ("{e}aA*", True, False, True),
    ("A*aA*", False, False, False),
    ("A*a{e}", False, True, True),
    ("b*ab*", True, True, True),
])
def test_product_verdicts(name, det, codet, unamb):
    K, a, L = examples()[name]
    assert is_deterministic_product(K, a, L) == det
    assert is_codeterministic_product(K, a, L) == codet
    assert is_unambiguous_product(product(K, a, L)) == unamb
    assert (brute_force_deterministic(K, a, L) is None) == det
    assert (brute_force_codeterministic(K, a, L) is None) == codet
    assert (brute_force_unambiguous(product(K, a, L)) is None) == unamb


def test_ambiguity_witness():
    S = all_words(A)
    assert brute_force_unambiguous(product(S, "a", S)) == ("a", "a")
    assert brute_force_deterministic(S, "a", S) == ("a", "a")
    assert decompositions(product(S, "a", S), "aa") == [(0,), (1,)]


def test_product_battery_against_brute_force():
    rng = random.Random(7)
    for _ in range(60):
        K = random_dfa(rng, rng.randint(1, 3))
        L = random_dfa(rng, rng.randint(1, 3))
        a = rng.choice(A)
        assert (brute_force_deterministic(K, a, L, 8) is None) == is_deterministic_product(K, a, L)
        assert (brute_force_codeterministic(K, a, L, 8) is None) == is_codeterministic_product(K, a, L)
        assert (brute_force_unambiguous(product(K, a, L), 8) is None) == \
            is_unambiguous_product(product(K, a, L))


def test_longer_products():
    S, Bs, As = all_words(A), star_of("b", A), star_of("a", A)
    p = product(Bs, "a", S, "b", As)
    assert is_unambiguous_product(p)
    assert brute_force_unambiguous(p) is None
    # right-nested: A* b a* is not deterministic (bb has prefixes b, bb in A*b)
    assert not is_deterministic(p)
    assert brute_force_deterministic(S, "b", As) == ("b", "b")
    # left-nested: b* a A* is not co-deterministic (aa has suffixes a, aa in aA*)
    assert not is_codeterministic(p)
    assert brute_force_codeterministic(Bs, "a", S) == ("a", "a")
    r = product(Bs, "a", As, "b", star_of("", A))
    assert is_deterministic(r)
    q = product(S, "a", S, "b", S)
    assert not is_unambiguous_product(q) and not is_deterministic(q) and not is_codeterministic(q)
    with pytest.raises(ValueError):
        ProductExpression((S,), ())


def test_check_product_reports_consistency():
    v = check_product(product(*examples()["b*ab*"]))
    assert v.consistent and v.to_dict()["length_bound"] == 10


def test_schutzenberger_consistency():
    """Deterministic products of J-trivial languages land in R_2; unambiguous
    products of B* languages land in DA."""
    rng = random.Random(3)
    pieces = [star_of(B, A) for B in ("", "a", "b", "ab")] + [
        contains("a", A), contains("b", A), all_words(A), empty_word(A)]
    checked = 0
    for K, L in itertools.product(pieces, repeat=2):
        for a in A:
            if is_deterministic_product(K, a, L):
                checked += 1
                assert in_rm(syntactic_monoid(concat_product(K, a, L)).monoid, 2)
    assert checked > 5
    stars = [star_of(B, A) for B in ("", "a", "b", "ab")]
    for _ in range(30):
        k = rng.randint(1, 3)
        parts = [rng.choice(stars)]
        for _ in range(k):
            parts += [rng.choice(A), rng.choice(stars)]
        p = product(*parts)
        if is_unambiguous_product(p):
            assert in_da(syntactic_monoid(product_dfa(p)).monoid)
