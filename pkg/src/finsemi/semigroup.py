"""Finite semigroups given by multiplication tables.

Elements are the integers ``0..n-1`` and ``table[i][j]`` is the product
``i*j``.  A monoid is a semigroup whose ``identity`` attribute is set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    AssociativityViolation,
    BadIdentity,
    ClosureBudgetExceeded,
    DegreeMismatch,
    MalformedTable,
    NotACongruence,
    NotIdempotent,
    OutOfRangeEntry,
)

DEFAULT_ELEMENT_CAP = 5000


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class FiniteSemigroup:
    """A finite semigroup stored as its Cayley table.

    The constructor trusts its input; use :func:`validate` for tables of
    unknown origin.  ``embedding`` optionally maps each element to an
    element of a larger semigroup this one was cut out of.
    """

    def __init__(self, table, identity: Optional[int] = None,
                 generators: Optional[Sequence[int]] = None,
                 embedding: Optional[Sequence[int]] = None,
                 name: Optional[str] = None):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise MalformedTable("table must be a non-empty square grid")
        self.table = _frozen(arr)
        self.identity = identity
        self.generators = tuple(generators) if generators is not None else None
        self.embedding = tuple(embedding) if embedding is not None else None
        self.name = name

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def mul(self, *elements: int) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = int(self.table[acc, x])
        return acc

    def key(self):
        return (self.order, self.table.tobytes(), self.identity)

    def __eq__(self, other):
        return isinstance(other, FiniteSemigroup) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        kind = "monoid" if self.identity is not None else "semigroup"
        return f"<FiniteSemigroup{label}: {kind} of order {self.order}>"

    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def is_idempotent(self) -> np.ndarray:
        idx = np.arange(self.order)
        return _frozen(self.table[idx, idx] == idx)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(int(e) for e in np.flatnonzero(self.is_idempotent))

    @cached_property
    def _omega(self):
        n = self.order
        om = np.empty(n, dtype=np.int64)
        om1 = np.empty(n, dtype=np.int64)
        for s in range(n):
            om[s], om1[s] = _omega_pair(self.table, s)
        return _frozen(om), _frozen(om1)

    @property
    def omega(self) -> np.ndarray:
        """``omega[s]`` is the idempotent power of ``s``."""
        return self._omega[0]

    @property
    def omega_minus_one(self) -> np.ndarray:
        return self._omega[1]

    @cached_property
    def greens(self) -> "GreensData":
        return _compute_greens(self)


def _omega_pair(table: np.ndarray, s: int) -> tuple[int, int]:
    # powers[k] holds s^(k+1); stop at the first repeated power.
    powers = [s]
    seen = {s: 1}
    p = s
    while True:
        p = int(table[p, s])
        if p in seen:
            break
        powers.append(p)
        seen[p] = len(powers)
    index = seen[p]
    period = len(powers) + 1 - index
    cycle = range(index, index + period)
    j = next(k for k in cycle if k % period == 0)
    j1 = next(k for k in cycle if (k + 1) % period == 0)
    return powers[j - 1], powers[j1 - 1]


def validate(table, identity: Optional[int] = None, name=None) -> FiniteSemigroup:
    """Check a raw grid and return it as a semigroup.

    Raises :class:`MalformedTable`, :class:`OutOfRangeEntry`,
    :class:`AssociativityViolation` (with the first failing triple in
    lexicographic order) or :class:`BadIdentity`.
    """
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise MalformedTable("table must be a non-empty square grid")
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise MalformedTable(f"table[{i}][{j}] = {v!r} is not an integer")
            if not 0 <= v < n:
                raise OutOfRangeEntry(i, j, v, n)
    t = np.array(rows, dtype=np.int64)
    bad = associativity_failure(t)
    if bad is not None:
        raise AssociativityViolation(*bad)
    if identity is not None:
        if not 0 <= identity < n:
            raise BadIdentity(identity, identity)
        for i in range(n):
            if t[identity, i] != i or t[i, identity] != i:
                raise BadIdentity(identity, i)
    return FiniteSemigroup(t, identity=identity, name=name)


def associativity_failure(table) -> Optional[tuple[int, int, int]]:
    t = np.asarray(table)
    left = t[t]                        # [i,j,k] -> (ij)k
    right = t[:, t]                    # [i,j,k] -> i(jk)
    bad = np.argwhere(left != right)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def is_associative(table) -> bool:
    return associativity_failure(table) is None


def find_identity(S: FiniteSemigroup) -> Optional[int]:
    t = S.table
    idx = np.arange(S.order)
    for e in range(S.order):
        if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx):
            return e
    return None


def as_monoid(S: FiniteSemigroup) -> FiniteSemigroup:
    """Return S with its identity field filled in, if it has an identity."""
    if S.identity is not None:
        return S
    e = find_identity(S)
    if e is None:
        return S
    return FiniteSemigroup(S.table, identity=e, generators=S.generators,
                           embedding=S.embedding, name=S.name)


# -- transformations ---------------------------------------------------------

@dataclass(frozen=True)
class Transformation:
    """A total map on ``{0..degree-1}``, written as its image list."""
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        d = len(self.images)
        if d == 0 or any(not 0 <= v < d for v in self.images):
            raise MalformedTable(f"not a transformation of degree {d}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def then(self, other: "Transformation") -> "Transformation":
        """Left-to-right composition: apply ``self`` first, then ``other``."""
        return Transformation(tuple(other.images[v] for v in self.images))

    __mul__ = then


def from_transformations(gens: Sequence[Transformation],
                         cap: int = DEFAULT_ELEMENT_CAP,
                         with_identity: bool = False) -> FiniteSemigroup:
    """Semigroup generated by ``gens`` under ``(f*g)(x) = g(f(x))``.

    Elements are numbered in breadth-first order, generators first.  With
    ``with_identity`` the identity map is adjoined as element 0 and the
    result is a monoid.
    """
    return transformation_closure(gens, cap, with_identity)[0]


def transformation_closure(gens: Sequence[Transformation],
                           cap: int = DEFAULT_ELEMENT_CAP,
                           with_identity: bool = False):
    """Like :func:`from_transformations` but also return the maps themselves."""
    gens = list(gens)
    if not gens:
        raise ValueError("at least one generator is required")
    d = gens[0].degree
    if any(g.degree != d for g in gens):
        raise DegreeMismatch("generators have different degrees")

    elements: list[tuple[int, ...]] = []
    index: dict[tuple[int, ...], int] = {}

    def add(m):
        if m not in index:
            if len(elements) >= cap:
                raise ClosureBudgetExceeded(f"more than {cap} elements")
            index[m] = len(elements)
            elements.append(m)
        return index[m]

    if with_identity:
        add(tuple(range(d)))
    gen_idx = [add(g.images) for g in gens]
    queue = deque(range(len(elements)))
    while queue:
        f = elements[queue.popleft()]
        for g in gens:
            before = len(elements)
            add(tuple(g.images[v] for v in f))
            if len(elements) > before:
                queue.append(len(elements) - 1)

    maps = np.array(elements, dtype=np.int64)
    n = len(elements)
    # comp[i, j, x] = maps[j][maps[i][x]]
    comp = maps[np.arange(n)[None, :, None], maps[:, None, :]]
    codes = _encode(comp, d)
    elem_codes = _encode(maps, d)
    order = np.argsort(elem_codes)
    table = order[np.searchsorted(elem_codes[order], codes)]
    identity = index.get(tuple(range(d)))
    S = FiniteSemigroup(table, identity=identity, generators=gen_idx)
    return S, [Transformation(m) for m in elements]


def _encode(maps: np.ndarray, d: int) -> np.ndarray:
    weights = d ** np.arange(maps.shape[-1] - 1, -1, -1, dtype=np.int64)
    return maps @ weights


# -- basic predicates ------------------------------------------------------

def idempotents(S: FiniteSemigroup) -> frozenset[int]:
    return frozenset(S.idempotents)


def omega_power(S: FiniteSemigroup, s: int) -> int:
    return int(S.omega[s])


def omega_minus_one(S: FiniteSemigroup, s: int) -> int:
    return int(S.omega_minus_one[s])


def is_band(S: FiniteSemigroup) -> bool:
    return bool(S.is_idempotent.all())


def is_commutative(S: FiniteSemigroup) -> bool:
    return bool((S.table == S.table.T).all())


def is_regular_element(S: FiniteSemigroup, s: int) -> bool:
    t = S.table
    return bool((t[t[s, :], s] == s).any())


def regular_elements(S: FiniteSemigroup) -> tuple[int, ...]:
    t = S.table
    # sts for all s, t: t[t[s, u], s]
    n = S.order
    s = np.arange(n)
    sts = t[t[s[:, None], s[None, :]], s[:, None]]
    return tuple(int(x) for x in np.flatnonzero((sts == s[:, None]).any(axis=1)))


# -- Green's relations -----------------------------------------------------

@dataclass(frozen=True)
class GreensData:
    """Green's classes, each relation given as ``element -> class id``.

    ``j_le[x, y]`` is true when ``x`` lies in the two-sided ideal generated
    by ``y``; ``j_order`` holds the pairs ``(a, b)`` of J-class ids with
    class ``a`` strictly below class ``b``.
    """
    r_class: tuple[int, ...]
    l_class: tuple[int, ...]
    j_class: tuple[int, ...]
    h_class: tuple[int, ...]
    j_order: frozenset
    j_le: np.ndarray
    r_le: np.ndarray
    l_le: np.ndarray

    def j_less(self, x: int, y: int) -> bool:
        return bool(self.j_le[x, y] and not self.j_le[y, x])

    def classes(self, kind: str) -> list[list[int]]:
        ids = getattr(self, f"{kind.lower()}_class")
        out: dict[int, list[int]] = {}
        for x, c in enumerate(ids):
            out.setdefault(c, []).append(x)
        return [out[c] for c in sorted(out)]


def _label(keys) -> tuple[int, ...]:
    ids: dict = {}
    return tuple(ids.setdefault(k, len(ids)) for k in keys)


def _compute_greens(S: FiniteSemigroup) -> GreensData:
    t = S.table
    n = S.order
    eye = np.eye(n, dtype=bool)
    rows = np.arange(n)
    # r_le[x, y]: x in y S^1;  l_le[x, y]: x in S^1 y;  j_le[x, y]: x in S^1 y S^1
    r_ideal = eye.copy()
    r_ideal[rows[:, None], t] = True          # r_ideal[y, y*s]
    l_ideal = eye.copy()
    l_ideal[rows[:, None], t.T] = True        # l_ideal[y, s*y]
    j_ideal = r_ideal | l_ideal
    # s*y*u for all s, u
    both = t[t.T]                             # [y, s, u] = (s*y)*u
    j_ideal[rows[:, None], both.reshape(n, -1)] = True
    r_le, l_le, j_le = r_ideal.T, l_ideal.T, j_ideal.T
    r_eq = r_le & r_le.T
    l_eq = l_le & l_le.T
    j_eq = j_le & j_le.T
    r_class = _label(r_eq[x].tobytes() for x in range(n))
    l_class = _label(l_eq[x].tobytes() for x in range(n))
    j_class = _label(j_eq[x].tobytes() for x in range(n))
    h_class = _label(zip(r_class, l_class))
    jc = np.asarray(j_class)
    below = np.argwhere(j_le & ~j_le.T)
    order = set(zip(jc[below[:, 0]].tolist(), jc[below[:, 1]].tolist()))
    return GreensData(r_class, l_class, j_class, h_class, frozenset(order),
                      _frozen(j_le.copy()), _frozen(r_le.copy()),
                      _frozen(l_le.copy()))


def greens(S: FiniteSemigroup) -> GreensData:
    return S.greens


def _trivial(ids) -> bool:
    return len(set(ids)) == len(ids)


def is_j_trivial(S: FiniteSemigroup) -> bool:
    return _trivial(S.greens.j_class)


def is_r_trivial(S: FiniteSemigroup) -> bool:
    return _trivial(S.greens.r_class)


def is_l_trivial(S: FiniteSemigroup) -> bool:
    return _trivial(S.greens.l_class)


def is_h_trivial(S: FiniteSemigroup) -> bool:
    return _trivial(S.greens.h_class)


# -- subsemigroups -----------------------------------------------------------

def closure(S: FiniteSemigroup, seeds: Iterable[int]) -> list[int]:
    """Sorted elements of the subsemigroup generated by ``seeds``."""
    t = S.table
    gens = sorted(set(int(s) for s in seeds))
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(t[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def restrict(S: FiniteSemigroup, elements: Sequence[int],
             identity: Optional[int] = None, name=None) -> FiniteSemigroup:
    """The subsemigroup on ``elements`` (assumed closed), renumbered in order.

    ``identity`` is an element of S; the returned semigroup records its
    new index.  The result's ``embedding`` maps back into S.
    """
    elements = list(elements)
    pos = np.full(S.order, -1, dtype=np.int64)
    pos[elements] = np.arange(len(elements))
    sub = S.table[np.ix_(elements, elements)]
    table = pos[sub]
    if (table < 0).any():
        raise ValueError("element set is not closed under multiplication")
    ident = int(pos[identity]) if identity is not None else None
    return FiniteSemigroup(table, identity=ident, embedding=elements, name=name)


def _require_idempotent(S, e):
    if int(S.table[e, e]) != e:
        raise NotIdempotent(e)


def local_submonoid(S: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """The monoid ``eSe`` with identity ``e``."""
    _require_idempotent(S, e)
    t = S.table
    elems = sorted(set(int(v) for v in t[t[e, :], e]))
    return restrict(S, elems, identity=e)


def subsemigroup_above_j(S: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """Subsemigroup generated by the elements J-above the idempotent e."""
    _require_idempotent(S, e)
    above = np.flatnonzero(S.greens.j_le[e, :])
    return restrict(S, closure(S, above))


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup,
                   cap: int = 10 ** 6) -> FiniteSemigroup:
    """Componentwise product; element ``(s, t)`` has index ``s*|T| + t``."""
    n, m = S.order, T.order
    if n * m > cap:
        raise ClosureBudgetExceeded(f"product of order {n * m} exceeds {cap}")
    a = S.table[:, None, :, None]
    b = T.table[None, :, None, :]
    table = (a * m + b).reshape(n * m, n * m)
    identity = None
    if S.identity is not None and T.identity is not None:
        identity = S.identity * m + T.identity
    return FiniteSemigroup(table, identity=identity)


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    """Same elements, reversed multiplication."""
    return FiniteSemigroup(S.table.T.copy(), identity=S.identity,
                           generators=S.generators, name=_opp_name(S.name))


def _opp_name(name):
    return None if name is None else f"{name}^op"


def relabel(S: FiniteSemigroup, perm: Sequence[int]) -> FiniteSemigroup:
    """Isomorphic copy in which element ``x`` is renamed ``perm[x]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.argsort(perm)
    table = perm[S.table[np.ix_(inv, inv)]]
    identity = None if S.identity is None else int(perm[S.identity])
    return FiniteSemigroup(table, identity=identity)


def rank(S: FiniteSemigroup, limit: int = 16) -> Optional[int]:
    """Smallest size of a generating set, by brute force (None if order > limit)."""
    from itertools import combinations
    n = S.order
    if n > limit:
        return None
    # Elements outside S*S must be generators.
    t = S.table
    products = set(int(v) for v in t.ravel())
    forced = [x for x in range(n) if x not in products]
    rest = [x for x in range(n) if x in products]
    for k in range(0, len(rest) + 1):
        for extra in combinations(rest, k):
            gens = forced + list(extra)
            if gens and len(closure(S, gens)) == n:
                return len(gens)
    return n


# -- congruences -------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    """A partition of the elements, stored as normalised class ids.

    Class ids are numbered by first occurrence, so two equal partitions
    compare equal.
    """
    class_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "class_of", _label(self.class_of))

    @property
    def class_count(self) -> int:
        return max(self.class_of) + 1

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def universal(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Congruence":
        ids = [-1] * n
        for b, block in enumerate(blocks):
            for x in block:
                ids[x] = b
        if -1 in ids:
            raise ValueError("blocks do not cover every element")
        return cls(tuple(ids))

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.class_count)]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return out

    def refines(self, other: "Congruence") -> bool:
        """True if every class of self lies inside a class of other."""
        seen: dict[int, int] = {}
        for a, b in zip(self.class_of, other.class_of):
            if seen.setdefault(a, b) != b:
                return False
        return True

    def is_identity(self) -> bool:
        return self.class_count == len(self.class_of)

    def is_universal(self) -> bool:
        return self.class_count == 1


def congruence_failure(S: FiniteSemigroup, c: Congruence):
    """A witness ``((s, t), u, side)`` of non-compatibility, or None."""
    cls = np.asarray(c.class_of)
    t = S.table
    reps = np.zeros(c.class_count, dtype=np.int64)
    for x in range(S.order - 1, -1, -1):
        reps[cls[x]] = x
    rep_of = reps[cls]
    left = cls[t]            # [u, s] -> class(u*s)
    bad = np.argwhere(left != left[:, rep_of])
    if len(bad):
        u, s = (int(v) for v in bad[0])
        return (int(rep_of[s]), s), u, "left"
    right = cls[t.T]         # [u, s] -> class(s*u)
    bad = np.argwhere(right != right[:, rep_of])
    if len(bad):
        u, s = (int(v) for v in bad[0])
        return (int(rep_of[s]), s), u, "right"
    return None


def is_congruence(S: FiniteSemigroup, c: Congruence) -> bool:
    return congruence_failure(S, c) is None


def quotient(S: FiniteSemigroup, c: Congruence):
    """Return ``(S/c, projection)`` where projection is a tuple of class ids."""
    if len(c.class_of) != S.order:
        raise ValueError("congruence is on a different number of elements")
    bad = congruence_failure(S, c)
    if bad is not None:
        raise NotACongruence(*bad)
    cls = np.asarray(c.class_of)
    reps = np.zeros(c.class_count, dtype=np.int64)
    for x in range(S.order - 1, -1, -1):
        reps[cls[x]] = x
    table = cls[S.table[np.ix_(reps, reps)]]
    identity = None if S.identity is None else int(cls[S.identity])
    Q = FiniteSemigroup(table, identity=identity)
    return Q, c.class_of
