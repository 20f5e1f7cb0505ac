"""Ground logic programs and their positive/full dependency graphs.

Atoms are plain positive integers (smodels atom numbers). Rules are frozen
dataclasses; bodies are stored with negative literals first, which is the
order the smodels format lists them in, so that writing and re-reading a
program gives back an equal object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Set, Tuple, Union

import networkx as nx

Atom = int


class Literal(NamedTuple):
    atom: Atom
    negated: bool = False

    def __invert__(self) -> "Literal":
        return Literal(self.atom, not self.negated)

    def holds(self, true_atoms) -> bool:
        return (self.atom in true_atoms) != self.negated

    def __str__(self) -> str:
        return f"~{self.atom}" if self.negated else str(self.atom)


def pos(atom: Atom) -> Literal:
    return Literal(atom, False)


def neg(atom: Atom) -> Literal:
    return Literal(atom, True)


WeightedLiteral = Tuple[int, Literal]


def _negatives_first(items, key):
    # stable partition: smodels lists negative literals before positive ones
    items = tuple(items)
    return tuple(x for x in items if key(x).negated) + tuple(x for x in items if not key(x).negated)


def _check_atom(a: Atom) -> None:
    if not isinstance(a, int) or isinstance(a, bool) or a < 1:
        raise ValueError(f"atom ids must be positive integers, got {a!r}")


@dataclass(frozen=True)
class BasicRule:
    head: Atom
    body: Tuple[Literal, ...] = ()

    def __post_init__(self):
        _check_atom(self.head)
        object.__setattr__(self, "body", _negatives_first(map(_as_literal, self.body), lambda l: l))

    @property
    def heads(self) -> Tuple[Atom, ...]:
        return (self.head,)

    def body_literals(self) -> Tuple[Literal, ...]:
        return self.body


@dataclass(frozen=True)
class ChoiceRule:
    heads: Tuple[Atom, ...]
    body: Tuple[Literal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(self.heads))
        if not self.heads:
            raise ValueError("choice rule needs at least one head atom")
        for h in self.heads:
            _check_atom(h)
        object.__setattr__(self, "body", _negatives_first(map(_as_literal, self.body), lambda l: l))

    def body_literals(self) -> Tuple[Literal, ...]:
        return self.body


@dataclass(frozen=True)
class DisjunctiveRule:
    heads: Tuple[Atom, ...]
    body: Tuple[Literal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "heads", tuple(self.heads))
        if not self.heads:
            raise ValueError("disjunctive rule needs at least one head atom")
        for h in self.heads:
            _check_atom(h)
        object.__setattr__(self, "body", _negatives_first(map(_as_literal, self.body), lambda l: l))

    def body_literals(self) -> Tuple[Literal, ...]:
        return self.body


@dataclass(frozen=True)
class WeightRule:
    """``head <- bound <= sum(w * lit)``.

    ``cardinality`` marks rules read from a smodels constraint rule (type 2);
    it only affects how the rule is written back out.
    """

    head: Atom
    bound: int
    terms: Tuple[WeightedLiteral, ...] = ()
    cardinality: bool = False

    def __post_init__(self):
        _check_atom(self.head)
        terms = tuple((int(w), _as_literal(l)) for w, l in self.terms)
        if any(w < 0 for w, _ in terms):
            raise ValueError("weight rule weights must be non-negative")
        if self.cardinality and any(w != 1 for w, _ in terms):
            raise ValueError("cardinality rule with a weight other than 1")
        object.__setattr__(self, "terms", _negatives_first(terms, lambda t: t[1]))

    @property
    def heads(self) -> Tuple[Atom, ...]:
        return (self.head,)

    def body_literals(self) -> Tuple[Literal, ...]:
        return tuple(l for _, l in self.terms)

    def total_weight(self) -> int:
        return sum(w for w, _ in self.terms)

    def satisfied_by(self, true_atoms) -> bool:
        return sum(w for w, l in self.terms if l.holds(true_atoms)) >= self.bound


@dataclass(frozen=True)
class MinimizeStatement:
    priority_index: int
    terms: Tuple[WeightedLiteral, ...] = ()

    def __post_init__(self):
        terms = tuple((int(w), _as_literal(l)) for w, l in self.terms)
        if any(w < 0 for w, _ in terms):
            raise ValueError("minimize weights must be non-negative")
        object.__setattr__(self, "terms", _negatives_first(terms, lambda t: t[1]))

    @property
    def heads(self) -> Tuple[Atom, ...]:
        return ()

    def body_literals(self) -> Tuple[Literal, ...]:
        return tuple(l for _, l in self.terms)

    def value(self, true_atoms) -> int:
        return sum(w for w, l in self.terms if l.holds(true_atoms))


Rule = Union[BasicRule, ChoiceRule, DisjunctiveRule, WeightRule, MinimizeStatement]


def _as_literal(x) -> Literal:
    if isinstance(x, Literal):
        _check_atom(x.atom)
        return x
    if isinstance(x, tuple) and len(x) == 2:
        return _as_literal(Literal(x[0], bool(x[1])))
    if isinstance(x, int) and x != 0:
        # signed-int shorthand: -3 is the negation of atom 3
        return Literal(abs(x), x < 0)
    raise TypeError(f"cannot interpret {x!r} as a literal")


def rule_heads(rule: Rule) -> Tuple[Atom, ...]:
    return rule.heads


@dataclass(frozen=True)
class Program:
    rules: Tuple[Rule, ...] = ()
    symbol_table: Dict[Atom, str] = field(default_factory=dict)
    compute_true: Tuple[Atom, ...] = ()
    compute_false: Tuple[Atom, ...] = ()
    models_requested: int = 1

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "symbol_table", dict(self.symbol_table))
        object.__setattr__(self, "compute_true", tuple(self.compute_true))
        object.__setattr__(self, "compute_false", tuple(self.compute_false))
        for a in (*self.symbol_table, *self.compute_true, *self.compute_false):
            _check_atom(a)
        if self.models_requested < 0:
            raise ValueError("models_requested must be non-negative")

    def __hash__(self):
        return hash((self.rules, self.compute_true, self.compute_false, self.models_requested))

    @cached_property
    def rule_atoms(self) -> FrozenSet[Atom]:
        """Atoms occurring in some rule (heads, bodies, minimize terms)."""
        out: Set[Atom] = set()
        for r in self.rules:
            out.update(r.heads)
            out.update(l.atom for l in r.body_literals())
        return frozenset(out)

    @cached_property
    def atoms(self) -> FrozenSet[Atom]:
        """Every atom mentioned anywhere: rules, symbol table, compute statements."""
        return self.rule_atoms | frozenset(self.symbol_table) | frozenset(self.compute_true) | frozenset(self.compute_false)

    @property
    def max_atom_id(self) -> int:
        return max(self.atoms, default=0)

    def of_type(self, kind) -> Iterator[Rule]:
        return (r for r in self.rules if isinstance(r, kind))

    @property
    def minimize(self) -> List[MinimizeStatement]:
        return list(self.of_type(MinimizeStatement))

    def replace(self, **changes) -> "Program":
        fields = dict(rules=self.rules, symbol_table=self.symbol_table, compute_true=self.compute_true,
                      compute_false=self.compute_false, models_requested=self.models_requested)
        fields.update(changes)
        return Program(**fields)


class FreshAtoms:
    """Allocator for auxiliary atoms, numbered consecutively above a start id.

    Every allocated atom is tagged with a role so that the back-mapping can
    tell original atoms from auxiliary ones.
    """

    ROLES = ("head-copy", "guard-complement", "body-aux", "level-bit", "flag-aux")

    def __init__(self, above: int):
        self.first = above + 1
        self.next = above + 1
        self.roles: Dict[Atom, str] = {}

    def new(self, role: str) -> Atom:
        if role not in self.ROLES:
            raise ValueError(f"unknown fresh-atom role {role!r}")
        a = self.next
        self.next += 1
        self.roles[a] = role
        return a

    @property
    def last(self) -> int:
        return self.next - 1

    def __contains__(self, a: Atom) -> bool:
        return a in self.roles

    def __len__(self) -> int:
        return len(self.roles)


# --- dependency analysis -------------------------------------------------


@dataclass(frozen=True)
class DependencyGraph:
    nodes: FrozenSet[Atom]
    positive_edges: Dict[Atom, FrozenSet[Atom]]
    all_edges: Dict[Atom, FrozenSet[Atom]]
    scc_of: Dict[Atom, int]

    @cached_property
    def components(self) -> Dict[int, FrozenSet[Atom]]:
        comps: Dict[int, Set[Atom]] = {}
        for a, c in self.scc_of.items():
            comps.setdefault(c, set()).add(a)
        return {c: frozenset(s) for c, s in comps.items()}

    def is_loop_atom(self, a: Atom) -> bool:
        return len(self.components[self.scc_of[a]]) > 1 or a in self.positive_edges.get(a, ())

    def depends_on(self, a: Atom, b: Atom) -> bool:
        """True iff there is a path of length >= 1 from a to b over all edges."""
        seen: Set[Atom] = set()
        stack = list(self.all_edges.get(a, ()))
        while stack:
            x = stack.pop()
            if x == b:
                return True
            if x not in seen:
                seen.add(x)
                stack.extend(self.all_edges.get(x, ()))
        return False


def build_dependency_graph(program: Program) -> DependencyGraph:
    """Edges go from each head atom to every atom in the rule body.

    Choice and disjunctive head members get edges exactly like basic heads.
    SCC ids are numbered in order of each component's smallest atom.
    """
    nodes: Set[Atom] = set(program.rule_atoms) | set(program.compute_true) | set(program.compute_false)
    pos_adj: Dict[Atom, Set[Atom]] = {a: set() for a in nodes}
    all_adj: Dict[Atom, Set[Atom]] = {a: set() for a in nodes}
    for r in program.rules:
        lits = r.body_literals()
        for h in r.heads:
            for l in lits:
                all_adj[h].add(l.atom)
                if not l.negated:
                    pos_adj[h].add(l.atom)

    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from((h, b) for h, bs in pos_adj.items() for b in bs)
    comps = sorted((sorted(c) for c in nx.strongly_connected_components(g)), key=lambda c: c[0])
    scc_of = {a: i for i, c in enumerate(comps) for a in c}

    return DependencyGraph(
        nodes=frozenset(nodes),
        positive_edges={a: frozenset(s) for a, s in pos_adj.items()},
        all_edges={a: frozenset(s) for a, s in all_adj.items()},
        scc_of=scc_of,
    )


class RecursiveAggregateError(ValueError):
    """Some weight rule has a body atom that depends on the rule's head."""

    def __init__(self, violations: List["AggregateViolation"]):
        self.violations = violations
        lines = [f"rule {v.rule} is recursive through cycle {' -> '.join(map(str, v.cycle))}" for v in violations]
        super().__init__("recursion over aggregates:\n  " + "\n  ".join(lines))


class AggregateViolation(NamedTuple):
    rule: WeightRule
    atom: Atom
    cycle: Tuple[Atom, ...]


def find_recursive_aggregates(program: Program, graph: Optional[DependencyGraph] = None) -> List[AggregateViolation]:
    if graph is None:
        graph = build_dependency_graph(program)
    g = nx.DiGraph()
    g.add_nodes_from(graph.nodes)
    g.add_edges_from((a, b) for a, bs in graph.all_edges.items() for b in bs)
    out = []
    for r in program.of_type(WeightRule):
        h = r.head
        for a in sorted({l.atom for _, l in r.terms}):
            if a == h:
                out.append(AggregateViolation(r, a, (h, h)))
            elif nx.has_path(g, a, h):
                out.append(AggregateViolation(r, a, (h, *nx.shortest_path(g, a, h))))
    return out


def check_no_recursive_aggregates(program: Program, graph: Optional[DependencyGraph] = None) -> None:
    """Raise RecursiveAggregateError unless no weight-rule body atom depends on its head."""
    violations = find_recursive_aggregates(program, graph)
    if violations:
        raise RecursiveAggregateError(violations)


def tight_atoms(graph: DependencyGraph) -> Tuple[FrozenSet[Atom], FrozenSet[Atom]]:
    """Split the graph's atoms into (tight, loop) atoms."""
    loop = frozenset(a for a in graph.nodes if graph.is_loop_atom(a))
    return frozenset(graph.nodes) - loop, loop
