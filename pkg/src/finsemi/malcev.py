"""The congruences ~K and ~D and Mal'cev-product membership.

``s ~K t`` holds when, for every idempotent ``e``, either both ``es`` and
``et`` lie strictly J-below ``e`` or ``es = et``.  ``~D`` is the mirror
image (``se``, ``te`` and ``se = te``).  ``S`` lies in ``K m V`` exactly
when ``S/~K`` lies in ``V``, and dually for ``D``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .enumeration import MAX_CONGRUENCE_ORDER, enumerate_congruences
from .errors import NoLeastElement, NotACongruence
from .semigroup import (
    Congruence,
    FiniteSemigroup,
    congruence_failure,
    quotient,
    restrict,
)
from .terms import satisfies_builtin

log = logging.getLogger(__name__)


class MalcevSide(Enum):
    K = "K"
    D = "D"
    NIL = "Nil"


@dataclass(frozen=True)
class VarietyPredicate:
    """A named membership test for a pseudovariety.

    ``monoid`` marks tests meant for monoids (the argument must have its
    identity set).
    """
    name: str
    test: Callable[[FiniteSemigroup], bool] = field(compare=False)
    monoid: bool = False

    def __call__(self, S: FiniteSemigroup) -> bool:
        if self.monoid and S.identity is None:
            from .errors import MonoidRequired
            raise MonoidRequired(f"{self.name} is a monoid pseudovariety")
        return bool(self.test(S))

    def __and__(self, other: "VarietyPredicate") -> "VarietyPredicate":
        return VarietyPredicate(f"{self.name} & {other.name}",
                                lambda S: self(S) and other(S),
                                self.monoid or other.monoid)


def _signatures(S: FiniteSemigroup, left: bool) -> np.ndarray:
    t = S.table
    es = np.asarray(S.idempotents, dtype=np.int64)
    j_le = S.greens.j_le
    if left:
        prod = t[es, :]              # [e, s] -> e*s
    else:
        prod = t[:, es].T            # [e, s] -> s*e
    # prod is always <=_J e; it is strictly below unless e <=_J prod
    below = ~j_le[es[:, None], prod]
    return np.where(below, -1, prod)


def _from_signatures(sig: np.ndarray) -> Congruence:
    keys = [sig[:, s].tobytes() for s in range(sig.shape[1])]
    return Congruence(tuple(keys))


def _checked(S, c, label):
    bad = congruence_failure(S, c)
    if bad is not None:
        log.error("%s is not a congruence on %r: witness %s", label, S, bad)
        raise NotACongruence(*bad)
    return c


def sim_k(S: FiniteSemigroup, check: bool = True) -> Congruence:
    c = _from_signatures(_signatures(S, left=True))
    return _checked(S, c, "~K") if check else c


def sim_d(S: FiniteSemigroup, check: bool = True) -> Congruence:
    c = _from_signatures(_signatures(S, left=False))
    return _checked(S, c, "~D") if check else c


def sim(S: FiniteSemigroup, side: MalcevSide) -> Congruence:
    if side is MalcevSide.K:
        return sim_k(S)
    if side is MalcevSide.D:
        return sim_d(S)
    raise ValueError("no single congruence for the Nil side")


def idempotent_class_preimages(S: FiniteSemigroup, c: Congruence) -> list[list[int]]:
    """Classes of ``c`` that are idempotents of the quotient."""
    cls = np.asarray(c.class_of)
    out = []
    for block in c.blocks():
        r = block[0]
        if cls[S.table[r, r]] == cls[r]:
            out.append(block)
    return out


def is_v_morphism_onto_quotient(S: FiniteSemigroup, c: Congruence,
                                inner: Callable[[FiniteSemigroup], bool]) -> bool:
    """Does every idempotent class of ``c`` (a subsemigroup) satisfy ``inner``?"""
    return all(inner(restrict(S, block))
               for block in idempotent_class_preimages(S, c))


def malcev_member(S: FiniteSemigroup, side: MalcevSide,
                  inner: Callable[[FiniteSemigroup], bool]) -> bool:
    if side is MalcevSide.NIL:
        return (malcev_member(S, MalcevSide.K, inner)
                and malcev_member(S, MalcevSide.D, inner))
    Q, _ = quotient(S, sim(S, side))
    return bool(inner(Q))


def _in_k(T):
    return satisfies_builtin(T, "K")


def _in_d(T):
    return satisfies_builtin(T, "D")


def least_v_quotient_oracle(S: FiniteSemigroup, side: MalcevSide,
                            max_order: int = MAX_CONGRUENCE_ORDER) -> Congruence:
    """Brute-force the coarsest congruence whose projection is a K- (D-) morphism.

    Every congruence of S is enumerated; the K-morphism condition is
    tested with the defining identity of K, independently of ``sim_k``.
    The answer must contain every other qualifying congruence, otherwise
    :class:`NoLeastElement` is raised.
    """
    if side is MalcevSide.NIL:
        raise ValueError("oracle covers the K and D sides only")
    inner = _in_k if side is MalcevSide.K else _in_d
    good = [c for c in enumerate_congruences(S, max_order)
            if is_v_morphism_onto_quotient(S, c, inner)]
    top = [c for c in good if all(d.refines(c) for d in good)]
    if len(top) != 1:
        maximal = [c for c in good
                   if not any(c != d and c.refines(d) for d in good)]
        log.error("no least %s-quotient for %r; maximal congruences %s",
                  side.value, S, [m.class_of for m in maximal])
        raise NoLeastElement([m.class_of for m in maximal])
    return top[0]
