"""Free bands, the words G_m / I_m and the substitution phi.

Words are tuples of positive integers: ``(2, 1)`` is ``x2 x1``.  Free-band
elements are represented by canonical trees: a word ``w`` with content
``C`` splits as ``w = p a ... b q`` where ``p`` is the longest prefix
using ``|C| - 1`` letters, ``a`` the letter right after it, ``q`` the
longest suffix using ``|C| - 1`` letters and ``b`` the letter right before
it.  Two words are equal in the free band iff their content, pivots and
(recursively) the trees of ``p`` and ``q`` agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import ClosureBudgetExceeded, NotABand
from .semigroup import FiniteSemigroup, is_band, local_submonoid
from .terms import (
    DEFAULT_ASSIGNMENT_BUDGET,
    PseudoIdentity,
    Term,
    builtin_identity,
    concat,
    omega,
    satisfies,
    satisfies_witness,
    var,
    word_term,
)

Word = tuple[int, ...]

MAX_FREE_BAND_RANK = 3


def parse_word(text: str) -> Word:
    """Read ``x2x1x2``, ``x2 x1``, or plain letters ``bab`` (a=1, b=2, ...)."""
    out = []
    for tok in re.findall(r"x\d+|[a-z]|\S", text):
        if tok.startswith("x") and len(tok) > 1:
            out.append(int(tok[1:]))
        elif "a" <= tok <= "z":
            out.append(ord(tok) - ord("a") + 1)
        else:
            raise ValueError(f"unexpected {tok!r} in word {text!r}")
    if not out or min(out) < 1:
        raise ValueError(f"not a non-empty word: {text!r}")
    return tuple(out)


def format_word(w: Sequence[int], letters: bool = False) -> str:
    if letters:
        return "".join(chr(ord("a") + i - 1) for i in w)
    return "".join(f"x{i}" for i in w)


def mirror(w: Sequence[int]) -> Word:
    return tuple(reversed(w))


@lru_cache(maxsize=None)
def g_word(m: int) -> Word:
    if m < 2:
        raise ValueError("G_m is defined for m >= 2")
    if m == 2:
        return (2, 1)
    return (m,) + mirror(g_word(m - 1))


@lru_cache(maxsize=None)
def i_word(m: int) -> Word:
    if m < 2:
        raise ValueError("I_m is defined for m >= 2")
    if m == 2:
        return (2, 1, 2)
    return g_word(m) + (m,) + mirror(i_word(m - 1))


# -- canonical forms -----------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    letter: int

    @property
    def content(self) -> frozenset[int]:
        return frozenset([self.letter])


@dataclass(frozen=True)
class Node:
    content: frozenset[int]
    prefix: "BandTree"
    prefix_pivot: int
    suffix_pivot: int
    suffix: "BandTree"


BandTree = Union[Leaf, Node]


@lru_cache(maxsize=1 << 16)
def band_canon(w: Word) -> BandTree:
    w = tuple(w)
    if not w:
        raise ValueError("empty word")
    content = frozenset(w)
    if len(content) == 1:
        return Leaf(w[0])
    k = len(content)
    seen: set[int] = set()
    for i, x in enumerate(w):
        seen.add(x)
        if len(seen) == k:
            p, a = w[:i], x
            break
    seen = set()
    for i in range(len(w) - 1, -1, -1):
        seen.add(w[i])
        if len(seen) == k:
            q, b = w[i + 1:], w[i]
            break
    return Node(content, band_canon(p), a, b, band_canon(q))


def band_equal(u: Sequence[int], v: Sequence[int]) -> bool:
    return band_canon(tuple(u)) == band_canon(tuple(v))


def representative(t: BandTree) -> Word:
    if isinstance(t, Leaf):
        return (t.letter,)
    return representative(t.prefix) + (t.prefix_pivot, t.suffix_pivot) + representative(t.suffix)


def band_multiply(s: BandTree, t: BandTree) -> BandTree:
    return band_canon(representative(s) + representative(t))


def render_tree(t: BandTree) -> str:
    if isinstance(t, Leaf):
        return format_word((t.letter,))
    c = ",".join(format_word((x,)) for x in sorted(t.content))
    return (f"[{{{c}}}: {render_tree(t.prefix)} | {format_word((t.prefix_pivot,))} "
            f"{format_word((t.suffix_pivot,))} | {render_tree(t.suffix)}]")


@dataclass
class FreeBand:
    semigroup: FiniteSemigroup
    elements: list[BandTree]
    words: list[Word]

    @property
    def order(self) -> int:
        return self.semigroup.order

    def index(self, w: Sequence[int]) -> int:
        return self.elements.index(band_canon(tuple(w)))


def free_band(k: int, cap: int = 5000) -> FreeBand:
    """Free band on letters ``1..k`` by closure of the generators.

    Element ``i`` (for ``i < k``) is the letter ``i + 1``.
    """
    if not 1 <= k <= MAX_FREE_BAND_RANK:
        raise ValueError(f"free bands are built for 1 <= k <= {MAX_FREE_BAND_RANK}")
    gens = [Leaf(a) for a in range(1, k + 1)]
    elements: list[BandTree] = list(gens)
    index = {t: i for i, t in enumerate(elements)}
    words = [representative(t) for t in elements]
    frontier = list(range(k))
    while frontier:
        nxt = []
        for i in frontier:
            for g in range(k):
                t = band_canon(words[i] + words[g])
                if t not in index:
                    if len(elements) >= cap:
                        raise ClosureBudgetExceeded(f"free band exceeds {cap} elements")
                    index[t] = len(elements)
                    elements.append(t)
                    words.append(representative(t))
                    nxt.append(index[t])
        frontier = nxt
    n = len(elements)
    table = [[index[band_canon(words[i] + words[j])] for j in range(n)] for i in range(n)]
    S = FiniteSemigroup(table, generators=range(k), name=f"FB({k})")
    return FreeBand(S, elements, words)


# -- phi -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def phi_letter(i: int) -> Term:
    x = var(f"x{i}")
    if i == 1:
        return omega(concat(omega(x), omega(var("x2")), omega(x)))
    if i == 2:
        return omega(x)
    m = i - 1
    inner = phi(mirror(g_word(m)) + g_word(m))
    return omega(concat(omega(x), omega(inner), omega(x)))


def phi(w: Sequence[int]) -> Term:
    """Apply phi letter by letter and concatenate (hash-consed)."""
    return concat(*(phi_letter(i) for i in w))


def phi_identity(m: int, mirrored: bool = False) -> PseudoIdentity:
    g, i = g_word(m), i_word(m)
    if mirrored:
        g, i = mirror(g), mirror(i)
    label = f"phi({'~' if mirrored else ''}G{m}) = phi({'~' if mirrored else ''}I{m})"
    return PseudoIdentity(phi(g), phi(i), label)


def word_identity(lhs: Sequence[int], rhs: Sequence[int]) -> PseudoIdentity:
    return PseudoIdentity(word_term(lhs), word_term(rhs),
                          f"{format_word(lhs)} = {format_word(rhs)}")


def band_satisfies_word_identity(B: FiniteSemigroup, lhs: Sequence[int],
                                 rhs: Sequence[int],
                                 budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    if not is_band(B):
        raise NotABand(f"{B!r} is not a band")
    return satisfies_witness(B, word_identity(lhs, rhs), budget) is None


def band_word_witness(B: FiniteSemigroup, lhs, rhs,
                      budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> Optional[dict]:
    if not is_band(B):
        raise NotABand(f"{B!r} is not a band")
    return satisfies_witness(B, word_identity(lhs, rhs), budget)


def _in_brm_words(B, m, mirrored, budget):
    g, i = g_word(m), i_word(m)
    if mirrored:
        g, i = mirror(g), mirror(i)
    return satisfies_witness(B, word_identity(g, i), budget) is None


def band_lattice_position(B: FiniteSemigroup, max_m: int = 4,
                          budget: int = 10 ** 7) -> dict:
    """Membership flags for the band pseudovarieties up to level ``max_m``.

    ``BR_m``/``BL_m`` come from the word identities when ``|B|^m`` is
    within ``budget``; beyond it the quotient route is used (bands lie in
    ``R_m`` exactly when they lie in ``BR_m``) and the route is recorded
    under ``"routes"``.  Primed levels above 2 use the local-monoid
    characterisation ``BR'_{m+1} = L BR_m ∩ B``.
    """
    if not is_band(B):
        raise NotABand(f"{B!r} is not a band")
    from .hierarchy import in_lm, in_rm

    flags: dict = {
        "SL": satisfies(B, builtin_identity("SL")),
        "LZ": satisfies(B, builtin_identity("LZ")),
        "RZ": satisfies(B, builtin_identity("RZ")),
        "BR'2": satisfies(B, builtin_identity("BR'2")),
        "BL'2": satisfies(B, builtin_identity("BL'2")),
    }
    routes = {}
    flags["BR1"] = flags["BL1"] = flags["SL"]
    locals_ = [local_submonoid(B, e) for e in B.idempotents]

    def level(T, m, mirrored):
        if T.order ** m <= budget:
            return _in_brm_words(T, m, mirrored, budget), "identity"
        return (in_lm(T, m) if mirrored else in_rm(T, m)), "quotient"

    for m in range(2, max_m + 1):
        flags[f"BR{m}"], routes[f"BR{m}"] = level(B, m, False)
        flags[f"BL{m}"], routes[f"BL{m}"] = level(B, m, True)
        flags[f"BR'{m + 1}"] = all(level(T, m, False)[0] for T in locals_)
        flags[f"BL'{m + 1}"] = all(level(T, m, True)[0] for T in locals_)
    flags["routes"] = routes
    return flags
