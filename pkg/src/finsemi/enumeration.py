"""Exhaustive enumeration of small semigroups and of congruences."""

from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .errors import BudgetExceeded
from .semigroup import Congruence, FiniteSemigroup, congruence_failure

MAX_ENUM_ORDER = 4
MAX_CONGRUENCE_ORDER = 6


def enumerate_semigroups(order: int, dedup_iso: bool = False) -> Iterator[FiniteSemigroup]:
    """Yield every semigroup table on ``{0..order-1}``.

    Tables come out in lexicographic order of their row-major entries.
    With ``dedup_iso`` only the lexicographically least table of each
    isomorphism class is yielded (anti-isomorphic tables stay distinct).
    """
    if not 1 <= order <= MAX_ENUM_ORDER:
        raise ValueError(f"order must be between 1 and {MAX_ENUM_ORDER}")
    perms = list(permutations(range(order))) if dedup_iso else None
    for rows in _tables(order):
        if dedup_iso and canonical_form(rows, perms) != rows:
            continue
        yield FiniteSemigroup(rows)


def _tables(n: int):
    T = [[-1] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]

    def consistent(i, j):
        v = T[i][j]
        # (i*j)*z == i*(j*z)
        for z in range(n):
            a = T[v][z]
            b = T[j][z]
            if a >= 0 and b >= 0:
                c = T[i][b]
                if c >= 0 and c != a:
                    return False
        # (x*i)*j == x*(i*j)
        for x in range(n):
            a = T[x][i]
            if a < 0:
                continue
            left = T[a][j]
            right = T[x][v]
            if left >= 0 and right >= 0 and left != right:
                return False
        # cell used as the outer product (a, z) with a = x*y
        for x in range(n):
            for y in range(n):
                if T[x][y] == i:
                    b = T[y][j]
                    if b >= 0:
                        c = T[x][b]
                        if c >= 0 and c != v:
                            return False
                if T[x][y] == j:
                    # cell used as outer product (i, b) with b = x*y
                    a = T[i][x]
                    if a >= 0:
                        c = T[a][y]
                        if c >= 0 and c != v:
                            return False
        return True

    def rec(k):
        if k == len(cells):
            yield tuple(tuple(r) for r in T)
            return
        i, j = cells[k]
        for v in range(n):
            T[i][j] = v
            if consistent(i, j):
                yield from rec(k + 1)
        T[i][j] = -1

    yield from rec(0)


def canonical_form(rows, perms=None):
    """Least relabelled copy of a table, over all permutations."""
    n = len(rows)
    if perms is None:
        perms = permutations(range(n))
    best = None
    for p in perms:
        inv = [0] * n
        for x, px in enumerate(p):
            inv[px] = x
        cand = tuple(tuple(p[rows[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        if best is None or cand < best:
            best = cand
    return best


def are_isomorphic(S: FiniteSemigroup, T: FiniteSemigroup) -> bool:
    if S.order != T.order:
        return False
    a = tuple(map(tuple, S.rows()))
    b = tuple(map(tuple, T.rows()))
    return canonical_form(a) == canonical_form(b)


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length n (one per set partition)."""
    if n == 0:
        yield ()
        return
    word = [0] * n

    def rec(k, top):
        if k == n:
            yield tuple(word)
            return
        for v in range(top + 2):
            word[k] = v
            yield from rec(k + 1, max(top, v))

    word[0] = 0
    yield from rec(1, 0)


def enumerate_congruences(S: FiniteSemigroup,
                          max_order: int = MAX_CONGRUENCE_ORDER) -> Iterator[Congruence]:
    if S.order > max_order:
        raise BudgetExceeded(
            f"congruence enumeration is limited to order {max_order}, got {S.order}")
    for ids in set_partitions(S.order):
        c = Congruence(ids)
        if congruence_failure(S, c) is None:
            yield c
