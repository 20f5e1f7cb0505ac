"""Program-to-program rewrites applied before the PB translation.

The pipeline order is::

    normalize_rules -> shift_disjunctive -> isolate_weight_heads
        -> split_aggregates -> cwa_register

after which the base program is aggregate-, disjunction- and minimize-free
and every former weight rule ``h <- W`` survives as a pending
``h <=> W`` obligation (an :class:`EquivConstraint`).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, Optional, Tuple

from .program import (
    Atom,
    BasicRule,
    ChoiceRule,
    DependencyGraph,
    DisjunctiveRule,
    FreshAtoms,
    Literal,
    MinimizeStatement,
    Program,
    WeightRule,
    build_dependency_graph,
    neg,
    pos,
)


class NotHeadCycleFree(ValueError):
    def __init__(self, rule: DisjunctiveRule, atoms: Tuple[Atom, Atom]):
        self.rule = rule
        self.atoms = atoms
        super().__init__(f"disjunctive rule {rule} is not head-cycle-free: atoms {atoms[0]} and {atoms[1]} "
                         "are in the same positive dependency cycle")


@dataclass(frozen=True)
class EquivConstraint:
    """Pending obligation ``guard <=> bound <= sum(w * lit)``."""

    guard: Atom
    bound: int
    terms: Tuple[Tuple[int, Literal], ...]

    def holds(self, true_atoms) -> bool:
        return sum(w for w, l in self.terms if l.holds(true_atoms)) >= self.bound


@dataclass(frozen=True)
class SplitResult:
    base_program: Program
    equivalences: Tuple[EquivConstraint, ...]
    minimize: Tuple[MinimizeStatement, ...]
    fresh: FreshAtoms
    complements: Dict[Atom, Atom] = field(default_factory=dict)
    visible: FrozenSet[Atom] = frozenset()


def _dedupe(lits):
    return tuple(dict.fromkeys(lits))


def _merge_terms(terms):
    acc: Dict[Literal, int] = {}
    for w, l in terms:
        acc[l] = acc.get(l, 0) + w
    return tuple((w, l) for l, w in acc.items())


def normalize_rules(program: Program) -> Program:
    """Drop duplicate body literals and sum weights of repeated weighted literals."""
    rules = []
    for r in program.rules:
        if isinstance(r, (BasicRule, ChoiceRule, DisjunctiveRule)):
            r = replace(r, body=_dedupe(r.body))
            if not isinstance(r, BasicRule):
                r = replace(r, heads=_dedupe(r.heads))
        elif isinstance(r, WeightRule):
            terms = _merge_terms(r.terms)
            r = replace(r, terms=terms, cardinality=r.cardinality and all(w == 1 for w, _ in terms))
        elif isinstance(r, MinimizeStatement):
            r = replace(r, terms=_merge_terms(r.terms))
        rules.append(r)
    return program.replace(rules=tuple(rules))


def shift_disjunctive(program: Program, graph: Optional[DependencyGraph] = None) -> Program:
    """Replace each disjunctive rule by one basic rule per head atom.

    ``a1 | ... | ak <- B`` becomes ``ai <- B, not a1, ..., not ak`` (without
    ``not ai``). Only valid for head-cycle-free programs; raises
    NotHeadCycleFree otherwise.
    """
    if not any(isinstance(r, DisjunctiveRule) for r in program.rules):
        return program
    if graph is None:
        graph = build_dependency_graph(program)
    rules = []
    for r in program.rules:
        if not isinstance(r, DisjunctiveRule):
            rules.append(r)
            continue
        heads = _dedupe(r.heads)
        for i, a in enumerate(heads):
            for b in heads[i + 1:]:
                if graph.scc_of[a] == graph.scc_of[b]:
                    raise NotHeadCycleFree(r, (a, b))
        for a in heads:
            others = tuple(neg(b) for b in heads if b != a)
            rules.append(BasicRule(a, _dedupe(r.body + others)))
    return program.replace(rules=tuple(rules))


def isolate_weight_heads(program: Program, fresh: Optional[FreshAtoms] = None) -> Program:
    """Give every weight rule a head that no other rule defines.

    A weight rule ``h <- W`` whose head also heads another rule becomes
    ``h' <- W`` plus ``h <- h'`` with fresh ``h'``.
    """
    if fresh is None:
        fresh = FreshAtoms(program.max_atom_id)
    defined = Counter(h for r in program.rules if not isinstance(r, MinimizeStatement) for h in set(r.heads))
    rules = []
    for r in program.rules:
        if isinstance(r, WeightRule) and defined[r.head] > 1:
            copy = fresh.new("head-copy")
            rules.append(replace(r, head=copy))
            rules.append(BasicRule(r.head, (pos(copy),)))
        else:
            rules.append(r)
    return program.replace(rules=tuple(rules))


def split_aggregates(program: Program, fresh: Optional[FreshAtoms] = None) -> SplitResult:
    """Move weight rules and minimize statements out of the program.

    Each weight rule ``h <- W`` is replaced by the pair ``h <- not q`` and
    ``q <- not h`` (q fresh) and recorded as ``h <=> W``. Expects a program
    without disjunction whose weight-rule heads are unique.
    """
    if fresh is None:
        fresh = FreshAtoms(program.max_atom_id)
    rules = []
    eqs: List[EquivConstraint] = []
    mins: List[MinimizeStatement] = []
    complements: Dict[Atom, Atom] = {}
    for r in program.rules:
        if isinstance(r, WeightRule):
            q = fresh.new("guard-complement")
            complements[r.head] = q
            rules.append(BasicRule(r.head, (neg(q),)))
            rules.append(BasicRule(q, (neg(r.head),)))
            eqs.append(EquivConstraint(r.head, r.bound, r.terms))
        elif isinstance(r, MinimizeStatement):
            mins.append(r)
        elif isinstance(r, DisjunctiveRule):
            raise ValueError("split_aggregates expects a disjunction-free program; shift first")
        else:
            rules.append(r)
    return SplitResult(program.replace(rules=tuple(rules)), tuple(eqs), tuple(mins), fresh, complements)


def cwa_register(split: SplitResult) -> SplitResult:
    """Mark every atom the PB side still refers to as part of the base vocabulary.

    Atoms that only occurred in weight-rule bodies or minimize statements are
    not mentioned by the base program any more; without registration the
    base translation would leave them unconstrained instead of false.
    """
    visible = set(split.base_program.atoms) | set(split.visible)
    for eq in split.equivalences:
        visible.add(eq.guard)
        visible.update(l.atom for _, l in eq.terms)
    for m in split.minimize:
        visible.update(l.atom for _, l in m.terms)
    return replace(split, visible=frozenset(visible))


def prepare(program: Program, fresh: Optional[FreshAtoms] = None) -> SplitResult:
    """Run the whole rewrite chain, including the recursion-over-aggregates check."""
    from .program import check_no_recursive_aggregates

    program = normalize_rules(program)
    graph = build_dependency_graph(program)
    check_no_recursive_aggregates(program, graph)
    if fresh is None:
        fresh = FreshAtoms(program.max_atom_id)
    program = shift_disjunctive(program, graph)
    program = isolate_weight_heads(program, fresh)
    return cwa_register(split_aggregates(program, fresh))
