"""Translation of an aggregate-free base program into PB constraints.

Tight atoms only need Clark's completion. Atoms on positive loops also get
level-ranking constraints. Every such atom ``a`` in a loop component ``S``
carries an integer level ``L_a``, encoded in binary over
``len(S).bit_length()`` fresh bits. A level comparison such as
``L_a >= L_b + 1`` is a single linear constraint over those bits. Its truth
value is reified into a fresh atom with the same big-M encoding used for
aggregates, so no sorting network or unary counter is needed.

For a true loop atom ``a`` with supporting rules ``r`` (``I(r)`` = positive
body atoms inside ``S``) the constraints demand:

* weak ranking: some rule with a true body has ``L_a > L_b`` for every
  ``b`` in ``I(r)``;
* strong ranking: for every rule with a true body, ``L_a <= L_b + 1`` for
  some ``b`` in ``I(r)``, or ``L_a = 0`` when ``I(r)`` is empty.

Together with ``L_a = 0`` for false atoms this pins every level to
``min over applicable r of (1 + max L_b for b in I(r))``, the atom's
derivation depth inside its component. Each stable model therefore has
exactly one extension to the auxiliary atoms. Weak ranking alone still
excludes unfounded loops, but it leaves the levels free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .pb import PBConstraint, clause_to_pb, encode_equiv, normalize
from .program import (
    Atom,
    BasicRule,
    ChoiceRule,
    DependencyGraph,
    FreshAtoms,
    Literal,
    Program,
    build_dependency_graph,
    neg,
    pos,
)
from .transform import EquivConstraint

Clause = Tuple[Literal, ...]


@dataclass
class Definition:
    """One rule that can make ``atom`` true."""

    atom: Atom
    rule: object
    body: Tuple[Literal, ...]
    body_lit: Optional[Literal]  # None: empty body, always true
    choice: bool


@dataclass
class BaseEncoding:
    clauses: List[Clause] = field(default_factory=list)
    constraints: List[PBConstraint] = field(default_factory=list)
    body_aux: Dict[FrozenSet[Literal], Atom] = field(default_factory=dict)
    level_bits: Dict[Atom, Tuple[Atom, ...]] = field(default_factory=dict)

    def pb_constraints(self, negated_literals: bool = False) -> List[PBConstraint]:
        out = [normalize(clause_to_pb(c), negated_literals) for c in self.clauses]
        return out + list(self.constraints)


def _definitions(base: Program, fresh: FreshAtoms, enc: BaseEncoding) -> Dict[Atom, List[Definition]]:
    defs: Dict[Atom, List[Definition]] = {}
    for r in base.rules:
        if not isinstance(r, (BasicRule, ChoiceRule)):
            raise TypeError(f"base program may only hold basic and choice rules, got {type(r).__name__}")
        body = tuple(dict.fromkeys(r.body))
        if not body:
            lit = None
        elif len(body) == 1:
            lit = body[0]
        else:
            key = frozenset(body)
            if key not in enc.body_aux:
                aux = fresh.new("body-aux")
                enc.body_aux[key] = aux
                for l in body:
                    enc.clauses.append((neg(aux), l))
                enc.clauses.append((pos(aux), *(~l for l in body)))
            lit = pos(enc.body_aux[key])
        for h in r.heads:
            defs.setdefault(h, []).append(Definition(h, r, body, lit, isinstance(r, ChoiceRule)))
    return defs


def completion(base: Program, fresh: FreshAtoms, visible: Iterable[Atom] = (),
               enc: Optional[BaseEncoding] = None) -> Tuple[BaseEncoding, Dict[Atom, List[Definition]]]:
    """Clark's completion of ``base`` over ``base.atoms | visible``.

    Basic rules derive their head; choice rules only support theirs. Atoms
    without rules are false.
    """
    if enc is None:
        enc = BaseEncoding()
    defs = _definitions(base, fresh, enc)
    for a in sorted(set(base.atoms) | set(visible)):
        ds = defs.get(a, [])
        for d in ds:
            if d.choice:
                continue
            enc.clauses.append((pos(a),) if d.body_lit is None else (~d.body_lit, pos(a)))
        if any(d.body_lit is None for d in ds):
            continue
        enc.clauses.append((neg(a), *dict.fromkeys(d.body_lit for d in ds)))
    for a in base.compute_true:
        enc.clauses.append((pos(a),))
    for a in base.compute_false:
        enc.clauses.append((neg(a),))
    return enc, defs


class _Levels:
    def __init__(self, fresh: FreshAtoms, enc: BaseEncoding, negated_literals: bool):
        self.fresh = fresh
        self.enc = enc
        self.negated_literals = negated_literals
        self.cache: Dict[Tuple[str, Atom, Atom], Atom] = {}

    def value_terms(self, a: Atom, sign: int) -> Tuple[Tuple[int, Literal], ...]:
        return tuple((sign * (1 << i), pos(x)) for i, x in enumerate(self.enc.level_bits[a]))

    def _reify(self, kind: str, a: Atom, b: Atom, bound: int, terms) -> Literal:
        key = (kind, a, b)
        if key not in self.cache:
            g = self.fresh.new("flag-aux")
            self.cache[key] = g
            self.enc.constraints.extend(encode_equiv(EquivConstraint(g, bound, terms), self.negated_literals))
        return pos(self.cache[key])

    def greater(self, a: Atom, b: Atom) -> Literal:
        """Atom equivalent to ``L_a >= L_b + 1``."""
        return self._reify("gt", a, b, 1, self.value_terms(a, 1) + self.value_terms(b, -1))

    def at_most_one_above(self, a: Atom, b: Atom) -> Literal:
        """Atom equivalent to ``L_a <= L_b + 1``."""
        return self._reify("le1", a, b, -1, self.value_terms(b, 1) + self.value_terms(a, -1))


def ranking_constraints(base: Program, graph: DependencyGraph, fresh: FreshAtoms, enc: BaseEncoding,
                        defs: Dict[Atom, List[Definition]], strong: bool = True,
                        negated_literals: bool = False) -> BaseEncoding:
    """Add level-ranking constraints for every atom on a positive loop.

    Must run after :func:`completion` (it reuses the body atoms). Output
    order is by component id, then atom id. ``strong=False`` emits only the
    weak ranking, which admits several level assignments per stable model;
    it exists as a negative control for the one-to-one property.
    """
    loops = [sorted(c) for _, c in sorted(graph.components.items())
             if len(c) > 1 or any(a in graph.positive_edges.get(a, ()) for a in c)]
    for comp in loops:
        width = len(comp).bit_length()
        for a in comp:
            enc.level_bits[a] = tuple(fresh.new("level-bit") for _ in range(width))
    lv = _Levels(fresh, enc, negated_literals)

    for comp in loops:
        members = set(comp)
        size = len(comp)
        for a in comp:
            bits = enc.level_bits[a]
            if strong:
                for x in bits:
                    enc.clauses.append((neg(x), pos(a)))
            if (1 << len(bits)) - 1 > size:
                enc.constraints.append(normalize(PBConstraint(lv.value_terms(a, 1), "<=", size), negated_literals))

            support: List[Literal] = []
            trivially_supported = False
            for d in defs.get(a, []):
                inner = sorted({l.atom for l in d.body if not l.negated and l.atom in members})
                body = () if d.body_lit is None else (d.body_lit,)
                if not inner:
                    if d.body_lit is None:
                        trivially_supported = True
                    else:
                        support.append(d.body_lit)
                    if strong:
                        for x in bits:
                            enc.clauses.append((neg(a), *(~l for l in body), neg(x)))
                    continue
                gts = [lv.greater(a, b) for b in inner]
                f = pos(fresh.new("flag-aux"))
                for l in (*body, *gts):
                    enc.clauses.append((~f, l))
                enc.clauses.append((f, *(~l for l in body), *(~g for g in gts)))
                support.append(f)
                if strong:
                    enc.clauses.append((neg(a), *(~l for l in body), *(lv.at_most_one_above(a, b) for b in inner)))
            if not trivially_supported:
                enc.clauses.append((neg(a), *dict.fromkeys(support)))
    return enc


def translate_base(base: Program, fresh: FreshAtoms, visible: Iterable[Atom] = (), strong: bool = True,
                   negated_literals: bool = False) -> BaseEncoding:
    """Completion plus ranking: PB models restricted to the base atoms are exactly its stable models."""
    enc, defs = completion(base, fresh, visible)
    graph = build_dependency_graph(base)
    return ranking_constraints(base, graph, fresh, enc, defs, strong=strong, negated_literals=negated_literals)
