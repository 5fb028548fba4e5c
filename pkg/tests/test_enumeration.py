import itertools

import pytest

from finsemi.corpus import brandt_b2, left_zero, right_zero
from finsemi.enumeration import (
    are_isomorphic,
    enumerate_congruences,
    enumerate_semigroups,
    set_partitions,
)
from finsemi.errors import BudgetExceeded
from finsemi.semigroup import FiniteSemigroup, is_associative, is_congruence, Congruence


def all_associative_tables(n):
    """Filter every n x n grid; only feasible for n <= 3."""
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        rows = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if is_associative(rows):
            out.append(rows)
    return out


@pytest.mark.parametrize("n,count", [(1, 1), (2, 8), (3, 113)])
def test_labeled_counts_match_filtering_all_tables(n, count):
    brute = all_associative_tables(n)
    fast = [S.rows() for S in enumerate_semigroups(n)]
    assert len(brute) == len(fast) == count
    assert brute == fast  # same lexicographic order


def test_labeled_count_order_4():
    assert sum(1 for _ in enumerate_semigroups(4)) == 3492


@pytest.mark.parametrize("n,count", [(1, 1), (2, 5), (3, 24), (4, 188)])
def test_counts_up_to_isomorphism(n, count):
    # anti-isomorphic pairs such as LZ2 / RZ2 are counted separately
    assert sum(1 for _ in enumerate_semigroups(n, dedup_iso=True)) == count


def test_order_limits():
    with pytest.raises(ValueError):
        list(enumerate_semigroups(5))
    with pytest.raises(ValueError):
        list(enumerate_semigroups(0))


def test_isomorphism():
    S = FiniteSemigroup([[0, 0], [0, 1]])
    T = FiniteSemigroup([[0, 1], [1, 1]])
    assert are_isomorphic(S, T)
    assert not are_isomorphic(left_zero(), right_zero())


@pytest.mark.parametrize("n,bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_set_partitions_bell_numbers(n, bell):
    parts = list(set_partitions(n))
    assert len(parts) == len(set(parts)) == bell


def test_congruences_of_b2():
    B = brandt_b2()
    cs = list(enumerate_congruences(B))
    assert Congruence.identity(5) in cs and Congruence.universal(5) in cs
    # B2 is congruence-free apart from the two trivial ones
    assert len(cs) == 2
    for c in cs:
        assert is_congruence(B, c)


def test_congruence_budget():
    S = FiniteSemigroup([[0] * 7 for _ in range(7)])
    with pytest.raises(BudgetExceeded):
        list(enumerate_congruences(S))
