"""Regular languages as DFAs: syntactic monoids, classification, and products.

States are ``0..n-1`` and ``delta[q][i]`` is the target of state ``q``
on the ``i``-th letter of the alphabet.  Letters are single strings and a
word is any sequence of letters (a plain ``str`` works for one-character
letters).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceeded, ClosureBudgetExceeded
from .hierarchy import DEFAULT_MAX_M, HierarchyReport, classify
from .semigroup import DEFAULT_ELEMENT_CAP, FiniteSemigroup, Transformation, transformation_closure

DEFAULT_STATE_CAP = 100_000
DEFAULT_LENGTH_BOUND = 10


@dataclass(frozen=True)
class Dfa:
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int
    accepting: frozenset[int]

    def __post_init__(self):
        n = len(self.delta)
        if n == 0:
            raise ValueError("a DFA needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("repeated letter in alphabet")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise ValueError(f"state {q} has {len(row)} transitions, "
                                 f"expected {len(self.alphabet)}")
            if any(not 0 <= r < n for r in row):
                raise ValueError(f"state {q} has a transition out of range")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if any(not 0 <= q < n for q in self.accepting):
            raise ValueError("accepting state out of range")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    def letter_index(self, a: str) -> int:
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise ValueError(f"letter {a!r} not in alphabet {self.alphabet}") from None

    def run(self, word: Iterable[str], q: Optional[int] = None) -> int:
        q = self.initial if q is None else q
        for a in word:
            q = self.delta[q][self.letter_index(a)]
        return q

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting


def dfa(alphabet: Sequence[str], states: int, initial: int, accepting: Iterable[int],
        transitions: Iterable[tuple[int, str, int]]) -> Dfa:
    """Build a DFA from a partial transition list, adding a sink if needed."""
    alphabet = tuple(alphabet)
    table: list[list[Optional[int]]] = [[None] * len(alphabet) for _ in range(states)]
    for p, a, q in transitions:
        if a not in alphabet:
            raise ValueError(f"letter {a!r} not in alphabet")
        if not (0 <= p < states and 0 <= q < states):
            raise ValueError(f"transition {p} {a} {q} out of range")
        i = alphabet.index(a)
        if table[p][i] is not None and table[p][i] != q:
            raise ValueError(f"two transitions from state {p} on {a!r}")
        table[p][i] = q
    if any(r is None for row in table for r in row):
        sink = states
        table = [[sink if r is None else r for r in row] for row in table]
        table.append([sink] * len(alphabet))
    return Dfa(alphabet, tuple(tuple(row) for row in table), initial, frozenset(accepting))


# -- a few standard languages -------------------------------------------------------

def all_words(alphabet: Sequence[str]) -> Dfa:
    """A*."""
    return Dfa(tuple(alphabet), ((0,) * len(alphabet),), 0, frozenset([0]))


def empty_word(alphabet: Sequence[str]) -> Dfa:
    """{ε}."""
    return dfa(alphabet, 1, 0, [0], [])


def star_of(letters: Iterable[str], alphabet: Sequence[str]) -> Dfa:
    """B* for a subset B of the alphabet."""
    letters = set(letters)
    return dfa(alphabet, 1, 0, [0], [(0, a, 0) for a in alphabet if a in letters])


def starts_with(a: str, alphabet: Sequence[str]) -> Dfa:
    """aA*."""
    return dfa(alphabet, 2, 0, [1], [(0, a, 1)] + [(1, b, 1) for b in alphabet])


def ends_with(a: str, alphabet: Sequence[str]) -> Dfa:
    """A*a."""
    return dfa(alphabet, 2, 0, [1], [(q, b, 1 if b == a else 0)
                                     for q in (0, 1) for b in alphabet])


def contains(a: str, alphabet: Sequence[str]) -> Dfa:
    """A*aA*."""
    return dfa(alphabet, 2, 0, [1], [(0, b, 1 if b == a else 0) for b in alphabet]
               + [(1, b, 1) for b in alphabet])


# -- minimisation and subset construction ---------------------------------------------

def _reachable(d: Dfa) -> list[int]:
    seen = {d.initial}
    order = [d.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for r in d.delta[q]:
            if r not in seen:
                seen.add(r)
                order.append(r)
                queue.append(r)
    return order


def minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA, states numbered in breadth-first order.

    Unreachable states are dropped, then the Moore partition is refined
    until stable.  The numbering makes equal languages give equal DFAs.
    """
    states = _reachable(d)
    block = {q: int(q in d.accepting) for q in states}
    while True:
        sigs = {q: (block[q],) + tuple(block[r] for r in d.delta[q]) for q in states}
        ids: dict = {}
        new = {q: ids.setdefault(sigs[q], len(ids)) for q in states}
        if len(ids) == len(set(block.values())):
            break
        block = new
    # renumber blocks breadth-first from the initial block
    rep = {}
    for q in states:
        rep.setdefault(block[q], q)
    number = {block[d.initial]: 0}
    queue = deque([block[d.initial]])
    while queue:
        b = queue.popleft()
        for r in d.delta[rep[b]]:
            if block[r] not in number:
                number[block[r]] = len(number)
                queue.append(block[r])
    delta = [None] * len(number)
    for b, i in number.items():
        delta[i] = tuple(number[block[r]] for r in d.delta[rep[b]])
    accepting = frozenset(number[block[q]] for q in states if q in d.accepting)
    return Dfa(d.alphabet, tuple(delta), 0, accepting)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    return d1.alphabet == d2.alphabet and minimize(d1) == minimize(d2)


@dataclass
class Nfa:
    """An epsilon-free NFA; ``moves[(q, letter)]`` is a set of targets."""
    alphabet: tuple[str, ...]
    state_count: int
    initial: frozenset[int]
    accepting: frozenset[int]
    moves: dict

    def step(self, qs: Iterable[int], a: str) -> frozenset[int]:
        out: set[int] = set()
        for q in qs:
            out |= self.moves.get((q, a), set())
        return frozenset(out)


def determinize(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    start = nfa.initial
    index = {start: 0}
    subsets = [start]
    delta = []
    i = 0
    while i < len(subsets):
        row = []
        for a in nfa.alphabet:
            t = nfa.step(subsets[i], a)
            if t not in index:
                if len(subsets) >= cap:
                    raise BudgetExceeded(f"subset construction exceeds {cap} states")
                index[t] = len(subsets)
                subsets.append(t)
            row.append(index[t])
        delta.append(tuple(row))
        i += 1
    accepting = frozenset(i for i, s in enumerate(subsets) if s & nfa.accepting)
    return Dfa(nfa.alphabet, tuple(delta), 0, accepting)


def reverse(d: Dfa, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Minimal DFA for the mirror image of the language."""
    moves: dict = {}
    for q, row in enumerate(d.delta):
        for a, r in zip(d.alphabet, row):
            moves.setdefault((r, a), set()).add(q)
    nfa = Nfa(d.alphabet, d.state_count, frozenset(d.accepting),
              frozenset([d.initial]), moves)
    return minimize(determinize(nfa, cap))


def _check_alphabets(*ds: Dfa):
    if len({d.alphabet for d in ds}) != 1:
        raise ValueError("all automata must share the same alphabet")


def concat_product(K: Dfa, a: str, L: Dfa, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Minimal DFA for ``KaL``."""
    _check_alphabets(K, L)
    K.letter_index(a)
    off = K.state_count
    moves: dict = {}
    for q, row in enumerate(K.delta):
        for b, r in zip(K.alphabet, row):
            moves.setdefault((q, b), set()).add(r)
        if q in K.accepting:
            moves.setdefault((q, a), set()).add(off + L.initial)
    for q, row in enumerate(L.delta):
        for b, r in zip(L.alphabet, row):
            moves.setdefault((off + q, b), set()).add(off + r)
    nfa = Nfa(K.alphabet, off + L.state_count, frozenset([K.initial]),
              frozenset(off + q for q in L.accepting), moves)
    return minimize(determinize(nfa, cap))


# -- syntactic monoid -------------------------------------------------------------------

@dataclass
class SyntacticMonoid:
    monoid: FiniteSemigroup
    letter_image: dict
    accepting_subset: frozenset[int]
    maps: list
    dfa: Dfa

    @property
    def order(self) -> int:
        return self.monoid.order

    def image(self, word: Iterable[str]) -> int:
        x = self.monoid.identity
        t = self.monoid.table
        for a in word:
            x = int(t[x, self.letter_image[a]])
        return x

    def recognizes(self, word: Sequence[str]) -> bool:
        return self.image(word) in self.accepting_subset


def syntactic_monoid(d: Dfa, cap: int = DEFAULT_ELEMENT_CAP) -> SyntacticMonoid:
    """Transition monoid of the minimal DFA; element 0 is the identity."""
    m = minimize(d)
    gens = [Transformation([row[i] for row in m.delta]) for i in range(len(m.alphabet))]
    if not gens:
        M = FiniteSemigroup([[0]], identity=0, name="syntactic monoid")
        return SyntacticMonoid(M, {}, frozenset([0]) if m.accepting else frozenset(),
                               [Transformation((0,))], m)
    try:
        M, maps = transformation_closure(gens, cap, with_identity=True)
    except ClosureBudgetExceeded as exc:
        raise ClosureBudgetExceeded(f"syntactic monoid: {exc}") from None
    M.name = "syntactic monoid"
    images = dict(zip(m.alphabet, M.generators))
    acc = frozenset(i for i, f in enumerate(maps) if f.images[m.initial] in m.accepting)
    return SyntacticMonoid(M, images, acc, maps, m)


LANGUAGE_MEANINGS = {
    "J": "Boolean combination of languages A*a1A*...akA* (piecewise testable)",
    "R2": "Boolean combination of deterministic products of level-1 languages",
    "L2": "Boolean combination of co-deterministic products of level-1 languages",
    "DA": "finite union of unambiguous products of languages B*, B a set of letters",
}


def classify_language(d: Dfa, max_m: int = DEFAULT_MAX_M,
                      cap: int = DEFAULT_ELEMENT_CAP) -> HierarchyReport:
    sm = syntactic_monoid(d, cap)
    rep = classify(sm.monoid, max_m)
    rep.notes.append(f"syntactic monoid of order {sm.order}, minimal DFA with "
                     f"{sm.dfa.state_count} states")
    if rep.flags["J"]:
        rep.notes.append("level 1: " + LANGUAGE_MEANINGS["J"])
    if rep.min_r is not None and rep.min_r > 1:
        rep.notes.append(f"R_{rep.min_r}: built from L_{rep.min_r - 1} languages "
                         "by Boolean operations and deterministic products")
    if rep.min_l is not None and rep.min_l > 1:
        rep.notes.append(f"L_{rep.min_l}: built from R_{rep.min_l - 1} languages "
                         "by Boolean operations and co-deterministic products")
    rep.notes.append(("in DA: " if rep.in_da else "not in DA: not a ")
                     + LANGUAGE_MEANINGS["DA"])
    return rep


# -- products -------------------------------------------------------------------------------

def is_deterministic_product(K: Dfa, a: str, L: Dfa,
                             cap: int = DEFAULT_STATE_CAP) -> bool:
    """Does every word of KaL have exactly one prefix in Ka?

    Runs K, a count of the prefixes in Ka read so far (capped at 2) and a
    DFA for KaL in parallel; the product is deterministic unless some
    reachable configuration with count 2 is accepting for KaL.
    """
    P = concat_product(K, a, L, cap)
    ai = K.letter_index(a)
    start = (K.initial, 0, P.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        k, c, p = queue.popleft()
        if c >= 2 and p in P.accepting:
            return False
        for i in range(len(K.alphabet)):
            nc = min(2, c + (i == ai and k in K.accepting))
            nxt = (K.delta[k][i], nc, P.delta[p][i])
            if nxt not in seen:
                if len(seen) >= cap:
                    raise BudgetExceeded(f"counting automaton exceeds {cap} states")
                seen.add(nxt)
                queue.append(nxt)
    return True


def is_codeterministic_product(K: Dfa, a: str, L: Dfa,
                               cap: int = DEFAULT_STATE_CAP) -> bool:
    """Does every word of KaL have exactly one suffix in aL?"""
    return is_deterministic_product(reverse(L, cap), a, reverse(K, cap), cap)


@dataclass(frozen=True)
class ProductExpression:
    """``L_0 a_1 L_1 ... a_k L_k``."""
    factors: tuple[Dfa, ...]
    markers: tuple[str, ...]

    def __post_init__(self):
        if len(self.markers) < 1 or len(self.factors) != len(self.markers) + 1:
            raise ValueError("need factors L_0..L_k and markers a_1..a_k with k >= 1")
        _check_alphabets(*self.factors)
        for a in self.markers:
            self.factors[0].letter_index(a)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.factors[0].alphabet

    def __str__(self):
        parts = ["L0"]
        for i, a in enumerate(self.markers, 1):
            parts += [a, f"L{i}"]
        return " ".join(parts)


def product(*parts) -> ProductExpression:
    """``product(L0, "a", L1, "b", L2)``."""
    return ProductExpression(tuple(parts[0::2]), tuple(parts[1::2]))


def product_dfa(p: ProductExpression, cap: int = DEFAULT_STATE_CAP) -> Dfa:
    acc = p.factors[-1]
    for K, a in zip(reversed(p.factors[:-1]), reversed(p.markers)):
        acc = concat_product(K, a, acc, cap)
    return acc


def is_deterministic(p: ProductExpression, cap: int = DEFAULT_STATE_CAP) -> bool:
    """Right-nested: each ``L_{i-1} a_i (L_i ... a_k L_k)`` is deterministic."""
    rest = p.factors[-1]
    for K, a in zip(reversed(p.factors[:-1]), reversed(p.markers)):
        if not is_deterministic_product(K, a, rest, cap):
            return False
        rest = concat_product(K, a, rest, cap)
    return True


def is_codeterministic(p: ProductExpression, cap: int = DEFAULT_STATE_CAP) -> bool:
    """Left-nested: each ``(L_0 ... a_{i-1} L_{i-1}) a_i L_i`` is co-deterministic."""
    acc = p.factors[0]
    for a, L in zip(p.markers, p.factors[1:]):
        if not is_codeterministic_product(acc, a, L, cap):
            return False
        acc = concat_product(acc, a, L, cap)
    return True


def product_recognizer(p: ProductExpression) -> Nfa:
    """NFA whose accepting runs on ``u`` are the decompositions of ``u``.

    States are pairs (factor, state) numbered consecutively; each marker
    is one transition from an accepting state of ``L_{i-1}`` to the
    initial state of ``L_i``.
    """
    offsets = list(itertools.accumulate([0] + [f.state_count for f in p.factors]))
    moves: dict = {}
    for i, f in enumerate(p.factors):
        off = offsets[i]
        for q, row in enumerate(f.delta):
            for b, r in zip(f.alphabet, row):
                moves.setdefault((off + q, b), set()).add(off + r)
            if i + 1 < len(p.factors) and q in f.accepting:
                nxt = p.factors[i + 1]
                moves.setdefault((off + q, p.markers[i]), set()).add(
                    offsets[i + 1] + nxt.initial)
    return Nfa(p.alphabet, offsets[-1], frozenset([p.factors[0].initial]),
               frozenset(offsets[-2] + q for q in p.factors[-1].accepting), moves)


def _trim(nfa: Nfa) -> set[int]:
    fwd = set(nfa.initial)
    queue = deque(fwd)
    while queue:
        q = queue.popleft()
        for a in nfa.alphabet:
            for r in nfa.moves.get((q, a), ()):
                if r not in fwd:
                    fwd.add(r)
                    queue.append(r)
    back_moves: dict = {}
    for (q, a), rs in nfa.moves.items():
        for r in rs:
            back_moves.setdefault(r, set()).add(q)
    bwd = set(nfa.accepting)
    queue = deque(bwd)
    while queue:
        r = queue.popleft()
        for q in back_moves.get(r, ()):
            if q not in bwd:
                bwd.add(q)
                queue.append(q)
    return fwd & bwd


def is_unambiguous_nfa(nfa: Nfa, cap: int = DEFAULT_STATE_CAP) -> bool:
    """No word has two accepting runs.

    In the self-product of the trimmed automaton, the NFA is ambiguous
    iff some pair ``(p, q)`` with ``p != q`` is reachable from an initial
    pair and can reach a pair of accepting states.
    """
    useful = _trim(nfa)
    init = [(p, q) for p in nfa.initial for q in nfa.initial if p in useful and q in useful]
    seen = set(init)
    back: dict = {}
    queue = deque(init)
    while queue:
        p, q = queue.popleft()
        for a in nfa.alphabet:
            ps = [r for r in nfa.moves.get((p, a), ()) if r in useful]
            qs = [r for r in nfa.moves.get((q, a), ()) if r in useful]
            for nxt in itertools.product(ps, qs):
                back.setdefault(nxt, set()).add((p, q))
                if nxt not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceeded(f"self-product exceeds {cap} states")
                    seen.add(nxt)
                    queue.append(nxt)
    alive = {pq for pq in seen if pq[0] in nfa.accepting and pq[1] in nfa.accepting}
    queue = deque(alive)
    while queue:
        for prev in back.get(queue.popleft(), ()):
            if prev not in alive:
                alive.add(prev)
                queue.append(prev)
    return all(p == q for p, q in alive)


def is_unambiguous_product(p: ProductExpression, cap: int = DEFAULT_STATE_CAP) -> bool:
    return is_unambiguous_nfa(product_recognizer(p), cap)


# -- brute-force oracles ---------------------------------------------------------------------

def words(alphabet: Sequence[str], max_len: int) -> Iterator[tuple[str, ...]]:
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def decompositions(p: ProductExpression, word: Sequence[str]) -> list[tuple[int, ...]]:
    """Marker positions ``i_1 < ... < i_k`` giving a decomposition of ``word``."""
    out = []
    k = len(p.markers)
    for pos in itertools.combinations(range(len(word)), k):
        if any(word[i] != a for i, a in zip(pos, p.markers)):
            continue
        bounds = (-1,) + pos + (len(word),)
        if all(f.accepts(word[bounds[j] + 1:bounds[j + 1]])
               for j, f in enumerate(p.factors)):
            out.append(pos)
    return out


def brute_force_unambiguous(p: ProductExpression,
                            max_len: int = DEFAULT_LENGTH_BOUND) -> Optional[tuple]:
    """First word up to ``max_len`` with two decompositions, or None."""
    for w in words(p.alphabet, max_len):
        if len(decompositions(p, w)) > 1:
            return w
    return None


def _ka_prefixes(K: Dfa, a: str, L: Dfa, w) -> tuple[int, int]:
    """(number of prefixes of w in Ka, number of decompositions of w in KaL)."""
    pre = sum(1 for i, x in enumerate(w) if x == a and K.accepts(w[:i]))
    dec = sum(1 for i, x in enumerate(w)
              if x == a and K.accepts(w[:i]) and L.accepts(w[i + 1:]))
    return pre, dec


def brute_force_deterministic(K: Dfa, a: str, L: Dfa,
                              max_len: int = DEFAULT_LENGTH_BOUND) -> Optional[tuple]:
    """First word of KaL up to ``max_len`` with two prefixes in Ka, or None."""
    for w in words(K.alphabet, max_len):
        pre, dec = _ka_prefixes(K, a, L, w)
        if dec and pre > 1:
            return w
    return None


def brute_force_codeterministic(K: Dfa, a: str, L: Dfa,
                                max_len: int = DEFAULT_LENGTH_BOUND) -> Optional[tuple]:
    """First word of KaL up to ``max_len`` with two suffixes in aL, or None."""
    for w in words(K.alphabet, max_len):
        suf = sum(1 for i, x in enumerate(w) if x == a and L.accepts(w[i + 1:]))
        dec = sum(1 for i, x in enumerate(w)
                  if x == a and K.accepts(w[:i]) and L.accepts(w[i + 1:]))
        if dec and suf > 1:
            return w
    return None


@dataclass
class ProductVerdict:
    deterministic: Optional[bool]
    codeterministic: Optional[bool]
    unambiguous: bool
    brute_force: dict
    length_bound: int

    @property
    def consistent(self) -> bool:
        bf = self.brute_force
        return all(bf[k] == getattr(self, k) for k in bf)

    def to_dict(self) -> dict:
        return {"deterministic": self.deterministic,
                "codeterministic": self.codeterministic,
                "unambiguous": self.unambiguous,
                "brute_force": dict(self.brute_force),
                "length_bound": self.length_bound,
                "consistent": self.consistent}


def check_product(p: ProductExpression, max_len: int = DEFAULT_LENGTH_BOUND,
                  cap: int = DEFAULT_STATE_CAP) -> ProductVerdict:
    """All three verdicts, each cross-checked against brute force.

    Determinism verdicts are only brute-forced for binary products.
    """
    det = is_deterministic(p, cap)
    codet = is_codeterministic(p, cap)
    unamb = is_unambiguous_product(p, cap)
    bf = {"unambiguous": brute_force_unambiguous(p, max_len) is None}
    if len(p.markers) == 1:
        K, L = p.factors
        a = p.markers[0]
        bf["deterministic"] = brute_force_deterministic(K, a, L, max_len) is None
        bf["codeterministic"] = brute_force_codeterministic(K, a, L, max_len) is None
    return ProductVerdict(det, codet, unamb, bf, max_len)
