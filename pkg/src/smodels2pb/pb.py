"""Linear pseudo-Boolean constraints and the encodings that produce them.

Constraints are kept as ``sum(c * lit) <rel> rhs``. :func:`normalize`
rewrites any constraint into the form OPB accepts: relation ``>=`` or
``=``, positive literals only (``c * ~x == c - c * x``), one term per
variable and no zero coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .program import Atom, Literal, MinimizeStatement, pos
from .transform import EquivConstraint

RELATIONS = (">=", "=", "<=", ">", "<")


@dataclass(frozen=True)
class PBConstraint:
    terms: Tuple[Tuple[int, Literal], ...]
    relation: str
    rhs: int

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "terms", tuple((int(c), l) for c, l in self.terms))

    def lhs(self, true_atoms) -> int:
        return sum(c for c, l in self.terms if l.holds(true_atoms))

    def satisfied_by(self, true_atoms) -> bool:
        v = self.lhs(true_atoms)
        return {
            ">=": v >= self.rhs,
            "=": v == self.rhs,
            "<=": v <= self.rhs,
            ">": v > self.rhs,
            "<": v < self.rhs,
        }[self.relation]

    @property
    def atoms(self):
        return {l.atom for _, l in self.terms}

    def __str__(self) -> str:
        ts = " ".join(f"{c:+d} {l}" for c, l in self.terms) or "0"
        return f"{ts} {self.relation} {self.rhs}"


@dataclass
class PBTheory:
    num_vars: int
    constraints: List[PBConstraint] = field(default_factory=list)

    def satisfied_by(self, true_atoms) -> bool:
        return all(c.satisfied_by(true_atoms) for c in self.constraints)


@dataclass(frozen=True)
class ObjectiveLevel:
    priority_index: int
    multiplier: int
    max_value: int


@dataclass(frozen=True)
class Objective:
    """Single minimization term standing in for several prioritized ones.

    ``levels`` lists the original minimize statements, most significant
    first. ``offset`` is the constant dropped when negated literals were
    rewritten, so the flattened value of an assignment is
    ``offset + sum of true terms``.
    """

    terms: Tuple[Tuple[int, Literal], ...]
    levels: Tuple[ObjectiveLevel, ...]
    offset: int = 0

    def value(self, true_atoms) -> int:
        return self.offset + sum(c for c, l in self.terms if l.holds(true_atoms))


@dataclass(frozen=True)
class BigMParams:
    m1: int
    m2: int


def _positive_form(terms: Iterable[Tuple[int, Literal]]) -> Tuple[Dict[Atom, int], int]:
    coefs: Dict[Atom, int] = {}
    const = 0
    for c, l in terms:
        if l.negated:
            const += c
            coefs[l.atom] = coefs.get(l.atom, 0) - c
        else:
            coefs[l.atom] = coefs.get(l.atom, 0) + c
    return coefs, const


def normalize(c: PBConstraint, negated_literals: bool = False) -> PBConstraint:
    """Rewrite ``c`` into an equivalent ``>=`` or ``=`` constraint over positive literals.

    With ``negated_literals`` the result instead has only positive
    coefficients, using ``~x`` for variables whose coefficient came out
    negative.
    """
    coefs, const = _positive_form(c.terms)
    rhs = c.rhs - const
    rel = c.relation
    if rel == ">":
        rel, rhs = ">=", rhs + 1
    elif rel == "<":
        rel, rhs = "<=", rhs - 1
    if rel == "<=":
        coefs = {a: -w for a, w in coefs.items()}
        rel, rhs = ">=", -rhs
    terms = [(coefs[a], pos(a)) for a in sorted(coefs) if coefs[a] != 0]
    if negated_literals:
        flipped = []
        for w, l in terms:
            if w < 0:
                flipped.append((-w, ~l))
                rhs -= w
            else:
                flipped.append((w, l))
        terms = flipped
    return PBConstraint(tuple(terms), rel, rhs)


def is_trivial(c: PBConstraint) -> bool:
    """True for a normalized constraint that every assignment satisfies."""
    if c.relation == ">=":
        return sum(min(w, 0) for w, _ in c.terms) >= c.rhs
    return not c.terms and c.rhs == 0


def clause_to_pb(clause: Sequence[Literal]) -> PBConstraint:
    """``l1 | ... | lk`` as ``l1 + ... + lk >= 1``; the empty clause gives ``0 >= 1``."""
    return PBConstraint(tuple((1, l) for l in clause), ">=", 1)


def big_m(eq: EquivConstraint) -> BigMParams:
    """Smallest guard coefficients making both halves of the equivalence vacuous when switched off.

    ``m1 = b - sum(min(0, w))`` makes the first half hold whenever the guard
    is false. For the second half the guard must cancel the largest possible
    sum, which needs ``m2 > sum(max(w, 0)) - b``; the bound
    ``m2 > b + sum(max(w, 0))`` is taken as well, and the larger of the two
    is used (they coincide in strength only for ``b >= 0``).
    """
    hi = sum(max(w, 0) for w, _ in eq.terms)
    lo = sum(min(w, 0) for w, _ in eq.terms)
    m1 = max(eq.bound - lo, 0)
    m2 = max(eq.bound + hi + 1, hi - eq.bound + 1, 0)
    return BigMParams(m1, m2)


def encode_equiv(eq: EquivConstraint, negated_literals: bool = False) -> Tuple[PBConstraint, PBConstraint]:
    """Encode ``h <=> b <= sum(w * l)`` as two normalized PB constraints::

        sum(w * l) + m1 * ~h >= b
        sum(w * l) - m2 * h  <= b - 1
    """
    m = big_m(eq)
    h = eq.guard
    first = PBConstraint(eq.terms + ((m.m1, Literal(h, True)),), ">=", eq.bound)
    second = PBConstraint(eq.terms + ((-m.m2, pos(h)),), "<", eq.bound)
    return normalize(first, negated_literals), normalize(second, negated_literals)


def flatten_objectives(mins: Sequence[MinimizeStatement], order: str = "last") -> Optional[Objective]:
    """Combine prioritized minimize statements into one weighted sum.

    ``order="last"`` treats the last statement in file order as the most
    significant one, ``"first"`` the first. Each level is scaled by the
    product of ``max_value + 1`` over all less significant levels, so any
    improvement at a more significant level outweighs every change below it.
    Returns None for an empty list.
    """
    if order not in ("first", "last"):
        raise ValueError("order must be 'first' or 'last'")
    if not mins:
        return None
    by_priority = sorted(mins, key=lambda m: m.priority_index)
    significant_first = by_priority[::-1] if order == "last" else by_priority
    levels: List[ObjectiveLevel] = []
    mult = 1
    for m in reversed(significant_first):
        mx = sum(w for w, _ in m.terms)
        levels.append(ObjectiveLevel(m.priority_index, mult, mx))
        mult *= mx + 1
    levels.reverse()
    scale = {lv.priority_index: lv.multiplier for lv in levels}
    terms = tuple((w * scale[m.priority_index], l) for m in significant_first for w, l in m.terms)
    return Objective(terms, tuple(levels))


def normalize_objective(obj: Objective, negated_literals: bool = False) -> Objective:
    """Merge terms per variable and rewrite negated literals, tracking the constant in ``offset``."""
    coefs, const = _positive_form(obj.terms)
    terms = tuple((coefs[a], pos(a)) for a in sorted(coefs) if coefs[a] != 0)
    offset = obj.offset + const
    if negated_literals:
        out = []
        for w, l in terms:
            if w < 0:
                out.append((-w, ~l))
                offset += w
            else:
                out.append((w, l))
        terms = tuple(out)
    return Objective(terms, obj.levels, offset)
