"""ω-terms, pseudo-identities and their satisfaction in finite semigroups.

Terms are hash-consed: building the same term twice returns the same
object, so structural equality is identity and shared subterms are stored
once.  Concatenation is kept flat (an n-ary node), which makes
``concat(concat(u, v), w) is concat(u, concat(v, w))``.

Text syntax::

    term   := factor+                  juxtaposition is concatenation
    factor := atom | atom "^w" | atom "^(w-1)"
    atom   := variable | "(" term ")"
    variable := lowercase letter followed by optional digits

``ω`` is accepted wherever ``w`` is.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import AssignmentBudgetExceeded, TermSyntaxError, UnboundVariable, UnknownName
from .semigroup import FiniteSemigroup

VAR = "var"
CONCAT = "concat"
OMEGA = "omega"
OMEGA_M1 = "omega-1"

DEFAULT_ASSIGNMENT_BUDGET = 10 ** 9
# Largest number of assignments evaluated in one vectorised block.
CHUNK = 1 << 22


class Term:
    __slots__ = ("kind", "name", "children", "uid", "_vars")

    def __init__(self, kind, name, children, uid):
        self.kind = kind
        self.name = name
        self.children = children
        self.uid = uid
        self._vars = None

    def __repr__(self):
        return f"Term({render(self)!r})"

    def __str__(self):
        return render(self)

    def variables(self) -> frozenset[str]:
        if self._vars is None:
            if self.kind == VAR:
                self._vars = frozenset([self.name])
            else:
                vs = frozenset()
                for c in self.children:
                    vs |= c.variables()
                self._vars = vs
        return self._vars

    # Identity-based equality is structural equality under hash-consing.
    __hash__ = object.__hash__


_table: dict = {}
_lock = threading.Lock()


def _make(kind, name, children) -> Term:
    key = (kind, name, tuple(c.uid for c in children))
    with _lock:
        t = _table.get(key)
        if t is None:
            t = Term(kind, name, tuple(children), len(_table))
            _table[key] = t
    return t


_VAR_RE = re.compile(r"[a-z][0-9]*\Z")


def var(name: str) -> Term:
    if not _VAR_RE.match(name):
        raise ValueError(f"bad variable name {name!r}")
    return _make(VAR, name, ())


def concat(*terms: Term) -> Term:
    flat: list[Term] = []
    for t in terms:
        if t.kind == CONCAT:
            flat.extend(t.children)
        else:
            flat.append(t)
    if not flat:
        raise ValueError("empty concatenation")
    if len(flat) == 1:
        return flat[0]
    return _make(CONCAT, None, flat)


def omega(t: Term) -> Term:
    return _make(OMEGA, None, (t,))


def omega_minus_one(t: Term) -> Term:
    return _make(OMEGA_M1, None, (t,))


def dag_nodes(*terms: Term) -> list[Term]:
    """Distinct nodes reachable from ``terms``, children before parents."""
    seen: set[int] = set()
    out: list[Term] = []

    def visit(t):
        if t.uid in seen:
            return
        for c in t.children:
            visit(c)
        seen.add(t.uid)
        out.append(t)

    for t in terms:
        visit(t)
    return out


def tree_size(t: Term) -> int:
    """Number of nodes of the fully unfolded tree (no sharing)."""
    sizes: dict[int, int] = {}
    for node in dag_nodes(t):
        sizes[node.uid] = 1 + sum(sizes[c.uid] for c in node.children)
    return sizes[t.uid]


def variable_key(name: str):
    return (name[0], int(name[1:]) if len(name) > 1 else -1)


# -- rendering and parsing ---------------------------------------------------

def render(t: Term) -> str:
    if t.kind == VAR:
        return t.name
    if t.kind == CONCAT:
        return " ".join(render(c) for c in t.children)
    suffix = "^w" if t.kind == OMEGA else "^(w-1)"
    c = t.children[0]
    inner = c.name if c.kind == VAR else f"({render(c)})"
    return inner + suffix


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<var>[a-z][0-9]*)|(?P<om1>\^\(\s*[wω]\s*-\s*1\s*\))|(?P<om>\^[wω])"
    r"|(?P<lp>\()|(?P<rp>\))|(?P<bad>\S))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:            # only trailing whitespace remains
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise TermSyntaxError(text, start, "a variable, '(', ')' or a power")
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def term(self):
        factors = []
        while self.peek()[0] in ("var", "lp"):
            factors.append(self.factor())
        if not factors:
            raise TermSyntaxError(self.text, self.peek()[2], "a variable or '('")
        return concat(*factors)

    def factor(self):
        kind, value, pos = self.take()
        if kind == "var":
            t = var(value)
        else:
            t = self.term()
            kind, _, pos = self.take()
            if kind != "rp":
                raise TermSyntaxError(self.text, pos, "')'")
        while self.peek()[0] in ("om", "om1"):
            kind = self.take()[0]
            t = omega(t) if kind == "om" else omega_minus_one(t)
        return t


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    kind, _, pos = p.peek()
    if kind != "end":
        raise TermSyntaxError(text, pos, "end of input")
    return t


# -- pseudo-identities -------------------------------------------------------

@dataclass(frozen=True)
class PseudoIdentity:
    lhs: Term
    rhs: Term
    name: Optional[str] = None

    def variables(self) -> list[str]:
        return sorted(self.lhs.variables() | self.rhs.variables(), key=variable_key)

    def __str__(self):
        return f"{render(self.lhs)} = {render(self.rhs)}"


def parse_identity(text: str, name: Optional[str] = None) -> list[PseudoIdentity]:
    """Parse ``u = v`` (or a chain ``u = v = w``) into pairwise identities.

    A chain ``t0 = t1 = ... = tk`` becomes ``t0 = t1, t0 = t2, ...``.
    """
    parts = text.split("=")
    if len(parts) < 2:
        raise TermSyntaxError(text, len(text), "'='")
    offset = 0
    terms = []
    for part in parts:
        try:
            terms.append(parse_term(part))
        except TermSyntaxError as exc:
            raise TermSyntaxError(text, offset + exc.position, exc.expected) from None
        offset += len(part) + 1
    return [PseudoIdentity(terms[0], t, name) for t in terms[1:]]


def parse_identity_file(text: str) -> list[PseudoIdentity]:
    from .errors import InputError
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.extend(parse_identity(line))
        except TermSyntaxError as exc:
            raise InputError(str(exc), line=lineno) from None
    return out


_BUILTIN = {
    "DA": ["(xy)^w x (xy)^w = (xy)^w"],
    "K": ["x^w y = x^w"],
    "D": ["y x^w = x^w"],
    # chained x^w y = y x^w = z^w, split with independent variables
    "Nil": ["x^w y = z^w", "y x^w = z^w"],
    "LI": ["x^w y x^w = x^w"],
    "LZ": ["xy = x", "xx = x"],
    "RZ": ["yx = x", "xx = x"],
    "SL": ["xx = x", "xy = yx"],
    "B": ["xx = x"],
    "R": ["(xy)^w = (xy)^w x"],
    "L": ["(yx)^w = x (yx)^w"],
    "BR'2": ["xyz = xzy", "xx = x"],
    "BL'2": ["xyz = yxz", "xx = x"],
}


def builtin_names() -> list[str]:
    return list(_BUILTIN)


def builtin_identity(name: str) -> list[PseudoIdentity]:
    try:
        texts = _BUILTIN[name]
    except KeyError:
        raise UnknownName(name) from None
    out = []
    for text in texts:
        out.extend(parse_identity(text, name=name))
    return out


# -- evaluation --------------------------------------------------------------

def evaluate(S: FiniteSemigroup, t: Term, assignment: Mapping[str, int]) -> int:
    """Value of ``t`` in S under one assignment (memoised within the call)."""
    memo: dict[int, int] = {}
    table, om, om1 = S.table, S.omega, S.omega_minus_one
    for node in dag_nodes(t):
        if node.kind == VAR:
            try:
                v = assignment[node.name]
            except KeyError:
                raise UnboundVariable(node.name) from None
        elif node.kind == CONCAT:
            it = iter(node.children)
            v = memo[next(it).uid]
            for c in it:
                v = int(table[v, memo[c.uid]])
        elif node.kind == OMEGA:
            v = int(om[memo[node.children[0].uid]])
        else:
            v = int(om1[memo[node.children[0].uid]])
        memo[node.uid] = v
    return memo[t.uid]


def _grid_values(S: FiniteSemigroup, terms: Sequence[Term], names: Sequence[str],
                 fixed: Optional[Mapping[str, int]] = None) -> list[np.ndarray]:
    """Evaluate terms over every assignment of ``names`` at once.

    Variable ``names[i]`` varies along axis ``i``; arrays broadcast, so a
    node only carries the axes of the variables it mentions.  Variables in
    ``fixed`` are pinned to one value.
    """
    k = len(names)
    n = S.order
    table, om, om1 = S.table, S.omega, S.omega_minus_one
    vals: dict[int, np.ndarray] = {}
    for node in dag_nodes(*terms):
        if node.kind == VAR:
            if node.name not in names:
                raise UnboundVariable(node.name)
            axis = names.index(node.name)
            shape = [1] * k
            if fixed is not None and node.name in fixed:
                v = np.full(shape, fixed[node.name], dtype=np.int64)
            else:
                shape[axis] = n
                v = np.arange(n, dtype=np.int64).reshape(shape)
        elif node.kind == CONCAT:
            it = iter(node.children)
            v = vals[next(it).uid]
            for c in it:
                v = table[v, vals[c.uid]]
        elif node.kind == OMEGA:
            v = om[vals[node.children[0].uid]]
        else:
            v = om1[vals[node.children[0].uid]]
        vals[node.uid] = v
    return [vals[t.uid] for t in terms]


def satisfies_witness(S: FiniteSemigroup, identity: PseudoIdentity,
                      budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> Optional[dict[str, int]]:
    """First falsifying assignment in mixed-radix order, or None.

    Variables range over all elements of S; the first variable (in
    ``x, x1, x2, ...`` order) is the most significant digit.
    """
    names = identity.variables()
    n = S.order
    total = n ** len(names)
    if total > budget:
        raise AssignmentBudgetExceeded(
            f"{n}^{len(names)} = {total} assignments exceed the budget of {budget}")
    if total <= CHUNK or not names:
        lhs, rhs = _grid_values(S, [identity.lhs, identity.rhs], names)
        return _first_difference(lhs, rhs, names, n)
    head = names[0]
    for value in range(n):
        lhs, rhs = _grid_values(S, [identity.lhs, identity.rhs], names, {head: value})
        w = _first_difference(lhs, rhs, names, n)
        if w is not None:
            w[head] = value
            return w
    return None


def _first_difference(lhs, rhs, names, n):
    shape = np.broadcast_shapes(lhs.shape, rhs.shape, (1,) * len(names))
    diff = np.broadcast_to(lhs, shape) != np.broadcast_to(rhs, shape)
    if not diff.any():
        return None
    idx = np.unravel_index(int(np.argmax(diff)), shape)
    # a broadcast axis of length 1 means the variable is irrelevant: report 0
    return {name: int(i) for name, i in zip(names, idx)}


def satisfies(S: FiniteSemigroup, identity, budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    """True if S satisfies the identity (or every identity of a list)."""
    if isinstance(identity, PseudoIdentity):
        return satisfies_witness(S, identity, budget) is None
    return all(satisfies_witness(S, i, budget) is None for i in identity)


def satisfies_builtin(S: FiniteSemigroup, name: str,
                      budget: int = DEFAULT_ASSIGNMENT_BUDGET) -> bool:
    return satisfies(S, builtin_identity(name), budget)


def word_term(word: Sequence[int], prefix: str = "x") -> Term:
    """Plain word over variables ``x1, x2, ...`` as a concatenation term."""
    return concat(*(var(f"{prefix}{i}") for i in word))
