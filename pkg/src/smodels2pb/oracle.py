"""Reference semantics by exhaustive enumeration, for testing only.

Nothing here is clever on purpose: stable models are found by trying every
interpretation and checking minimality against every subset, and PB models
by a plain depth-first search (or, for small theories, a vectorized scan of
all 2^n assignments).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .pb import Objective, PBConstraint, PBTheory, normalize
from .program import (
    Atom,
    BasicRule,
    ChoiceRule,
    DisjunctiveRule,
    MinimizeStatement,
    Program,
    WeightRule,
)


class OracleCapExceeded(ValueError):
    pass


Model = FrozenSet[Atom]


# --- stable models ------------------------------------------------------


def _compile(program: Program, index: Dict[Atom, int]):
    def mask(atoms):
        m = 0
        for a in atoms:
            m |= 1 << index[a]
        return m

    def body(lits):
        return mask(l.atom for l in lits if not l.negated), mask(l.atom for l in lits if l.negated)

    compiled = []
    for r in program.rules:
        if isinstance(r, BasicRule):
            compiled.append(("rule", mask([r.head]), *body(r.body)))
        elif isinstance(r, DisjunctiveRule):
            compiled.append(("rule", mask(r.heads), *body(r.body)))
        elif isinstance(r, ChoiceRule):
            compiled.append(("choice", [1 << index[h] for h in r.heads], *body(r.body)))
        elif isinstance(r, WeightRule):
            terms = [(w, 1 << index[l.atom], l.negated) for w, l in r.terms]
            compiled.append(("weight", 1 << index[r.head], r.bound, terms))
    return compiled


def _body_true(x, p, n):
    return x & p == p and not x & n


def _weight_true(x, bound, terms):
    return sum(w for w, bit, negated in terms if bool(x & bit) != negated) >= bound


def enumerate_stable(program: Program, cap: int = 20) -> List[Model]:
    """All stable models, as minimal models of the FLP reduct.

    Weight rules are kept in the reduct when their body holds in the
    candidate and are then evaluated in each subset. A choice rule keeps,
    for every head atom in the candidate, the rule ``h <- body``.
    Disjunctive rules need some head atom true, so minimality gives the
    usual minimal-model semantics.
    """
    atoms = sorted(program.atoms)
    if len(atoms) > cap:
        raise OracleCapExceeded(f"{len(atoms)} atoms exceeds the oracle cap of {cap}")
    index = {a: i for i, a in enumerate(atoms)}
    rules = _compile(program, index)
    must = sum(1 << index[a] for a in program.compute_true)
    must_not = sum(1 << index[a] for a in program.compute_false)

    def reduct_of(x):
        red = []
        for r in rules:
            if r[0] == "rule":
                _, heads, p, n = r
                if _body_true(x, p, n):
                    red.append(r)
            elif r[0] == "choice":
                _, heads, p, n = r
                if _body_true(x, p, n):
                    red.extend(("rule", h, p, n) for h in heads if x & h)
            elif _weight_true(x, r[2], r[3]):
                red.append(r)
        return red

    def satisfies(y, red):
        for r in red:
            if r[0] == "rule":
                _, heads, p, n = r
                if _body_true(y, p, n) and not y & heads:
                    return False
            else:
                _, head, bound, terms = r
                if _weight_true(y, bound, terms) and not y & head:
                    return False
        return True

    out = []
    for x in range(1 << len(atoms)):
        if x & must != must or x & must_not:
            continue
        red = reduct_of(x)
        if not satisfies(x, red):
            continue
        # every rule of the program outside the reduct has a false body, so
        # being a model of the reduct is the same as being a model
        y = (x - 1) & x
        minimal = True
        while True:
            if y != x and satisfies(y, red):
                minimal = False
                break
            if y == 0:
                break
            y = (y - 1) & x
        if minimal:
            out.append(frozenset(a for a in atoms if x >> index[a] & 1))
    return sorted(out, key=sorted)


def enumerate_stable_gl(program: Program, cap: int = 20) -> List[Model]:
    """Stable models of an aggregate-free, disjunction-free program via the Gelfond-Lifschitz reduct."""
    if any(isinstance(r, (WeightRule, DisjunctiveRule)) for r in program.rules):
        raise ValueError("GL oracle handles only basic and choice rules")
    atoms = sorted(program.atoms)
    if len(atoms) > cap:
        raise OracleCapExceeded(f"{len(atoms)} atoms exceeds the oracle cap of {cap}")
    out = []
    for bits in product((False, True), repeat=len(atoms)):
        m = {a for a, b in zip(atoms, bits) if b}
        if not set(program.compute_true) <= m or m & set(program.compute_false):
            continue
        reduct = []
        for r in program.rules:
            if isinstance(r, MinimizeStatement):
                continue
            if any(l.negated and l.atom in m for l in r.body):
                continue
            pos = {l.atom for l in r.body if not l.negated}
            heads = [r.head] if isinstance(r, BasicRule) else [h for h in r.heads if h in m]
            reduct.extend((h, pos) for h in heads)
        least = set()
        changed = True
        while changed:
            changed = False
            for h, pos in reduct:
                if h not in least and pos <= least:
                    least.add(h)
                    changed = True
        if least == m:
            out.append(frozenset(m))
    return sorted(out, key=sorted)


# --- PB models ----------------------------------------------------------


def _as_geq(theory: PBTheory) -> List[Tuple[List[Tuple[int, Atom, bool]], int]]:
    """Each constraint as ``sum(c * lit) >= rhs`` with c > 0; a literal is (coef, var, wanted value)."""
    out = []
    for con in theory.constraints:
        c = normalize(con)
        parts = [c] if c.relation == ">=" else [
            PBConstraint(c.terms, ">=", c.rhs),
            PBConstraint(tuple((-w, l) for w, l in c.terms), ">=", -c.rhs),
        ]
        for p in parts:
            lits = []
            rhs = p.rhs
            for w, l in p.terms:
                if w > 0:
                    lits.append((w, l.atom, True))
                else:
                    lits.append((-w, l.atom, False))
                    rhs -= w
            out.append((lits, rhs))
    return out


def _search(theory: PBTheory):
    """Yield every model as a frozenset of true variables (depth-first, with unit propagation)."""
    n = theory.num_vars
    cons = _as_geq(theory)
    slack = [sum(w for w, _, _ in lits) - rhs for lits, rhs in cons]
    occurs: Dict[Atom, List[Tuple[int, int, bool]]] = {v: [] for v in range(1, n + 1)}
    for ci, (lits, _) in enumerate(cons):
        for w, v, want in lits:
            if v < 1 or v > n:
                raise ValueError(f"variable x{v} outside 1..{n}")
            occurs[v].append((ci, w, want))
    value: Dict[Atom, bool] = {}

    if any(s < 0 for s in slack):
        return

    def assign(v, b, trail):
        """Set v := b and propagate; returns False on conflict. Undo info goes on trail."""
        queue = [(v, b)]
        while queue:
            v, b = queue.pop()
            if v in value:
                if value[v] != b:
                    return False
                continue
            value[v] = b
            trail.append(v)
            touched = []
            for ci, w, want in occurs[v]:
                if want != b:
                    slack[ci] -= w
                    touched.append(ci)
            for ci in touched:
                if slack[ci] < 0:
                    return False
                for w, u, want in cons[ci][0]:
                    if w > slack[ci] and u not in value:
                        queue.append((u, want))
        return True

    def undo(trail):
        for v in reversed(trail):
            b = value.pop(v)
            for ci, w, want in occurs[v]:
                if want != b:
                    slack[ci] += w

    def dfs(start):
        v = start
        while v <= n and v in value:
            v += 1
        if v > n:
            yield frozenset(u for u, b in value.items() if b)
            return
        for b in (False, True):
            trail: List[Atom] = []
            if assign(v, b, trail):
                yield from dfs(v + 1)
            undo(trail)

    # variables occurring in no constraint still branch, so counts stay exact
    yield from dfs(1)


def brute_force_pb_models(theory: PBTheory, cap: int = 20, chunk: int = 1 << 14) -> List[Model]:
    """All models, sorted, by evaluating every one of the 2^n assignments (numpy, no search)."""
    n = theory.num_vars
    if n > cap:
        raise OracleCapExceeded(f"{n} variables exceeds the brute-force cap of {cap}")
    cons = [normalize(c) for c in theory.constraints]
    A = np.zeros((len(cons), n), dtype=object if _big(cons) else np.int64)
    rhs = np.array([c.rhs for c in cons], dtype=A.dtype)
    eq = np.array([c.relation == "=" for c in cons], dtype=bool)
    for i, c in enumerate(cons):
        for w, l in c.terms:
            A[i, l.atom - 1] += w
    out = []
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, 1 << n, chunk):
        xs = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        X = ((xs[:, None] >> shifts) & 1).astype(A.dtype)
        lhs = X @ A.T if len(cons) else np.zeros((len(xs), 0), dtype=A.dtype)
        ok = np.where(eq, lhs == rhs, lhs >= rhs).all(axis=1) if len(cons) else np.ones(len(xs), dtype=bool)
        for x in xs[ok]:
            out.append(frozenset(i + 1 for i in range(n) if int(x) >> i & 1))
    return sorted(out, key=sorted)


def _big(cons) -> bool:
    return any(abs(w) > 2**40 for c in cons for w, _ in c.terms) or any(abs(c.rhs) > 2**40 for c in cons)


def enumerate_pb_models(theory: PBTheory, objective: Optional[Objective] = None, cap: Optional[int] = None,
                        optimal_only: bool = True) -> List[Model]:
    """All models of ``theory``, sorted; with an objective, only the minimizing ones.

    ``cap`` bounds ``theory.num_vars`` when given.
    """
    if cap is not None and theory.num_vars > cap:
        raise OracleCapExceeded(f"{theory.num_vars} variables exceeds the cap of {cap}")
    models = list(_search(theory))
    if objective is not None and optimal_only and models:
        values = [objective.value(m) for m in models]
        best = min(values)
        models = [m for m, v in zip(models, values) if v == best]
    return sorted(models, key=sorted)


# --- bijection ----------------------------------------------------------


@dataclass
class BijectionReport:
    stable_count: int
    pb_count: int
    unmatched_stable: List[Model] = field(default_factory=list)
    unmatched_pb: List[Model] = field(default_factory=list)
    multiply_extended: List[Tuple[Model, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.stable_count == self.pb_count and not self.unmatched_stable and not self.unmatched_pb
                and not self.multiply_extended)


def check_bijection(program: Program, theory: PBTheory, original_atoms, stable_cap: int = 20,
                    pb_cap: Optional[int] = None) -> BijectionReport:
    """Compare the oracle's stable models with the PB models projected onto ``original_atoms``.

    ``original_atoms`` may also be a TranslationRecord.
    """
    originals = frozenset(getattr(original_atoms, "original_atoms", original_atoms))
    stable = enumerate_stable(program, stable_cap)
    pb = enumerate_pb_models(theory, cap=pb_cap)
    counts: Dict[Model, int] = {}
    for m in pb:
        key = m & originals
        counts[key] = counts.get(key, 0) + 1
    stable_set = set(stable)
    return BijectionReport(
        stable_count=len(stable),
        pb_count=len(pb),
        unmatched_stable=[s for s in stable if s not in counts],
        unmatched_pb=sorted((k for k in counts if k not in stable_set), key=sorted),
        multiply_extended=[(s, counts[s]) for s in stable if counts.get(s, 0) > 1],
    )


# --- random programs ----------------------------------------------------


def random_program(rng, n_atoms: int = 6, n_rules: int = 8, kinds: Sequence[str] = ("basic", "choice", "weight"),
                   compute: bool = True, n_minimize: int = 0, max_weight: int = 3) -> Program:
    """A random ground program over atoms 1..n_atoms with no recursion over aggregates.

    ``rng`` is a ``random.Random``. Weight rules that would be recursive are
    dropped, so the result may have fewer than ``n_rules`` rules.
    """
    from .program import Literal, find_recursive_aggregates

    atoms = list(range(1, n_atoms + 1))

    def lits(k):
        chosen = rng.sample(atoms, min(k, n_atoms))
        return tuple(Literal(a, rng.random() < 0.4) for a in chosen)

    rules = []
    for _ in range(n_rules):
        kind = rng.choice(list(kinds))
        if kind == "basic":
            rules.append(BasicRule(rng.choice(atoms), lits(rng.randint(0, 3))))
        elif kind == "choice":
            rules.append(ChoiceRule(tuple(rng.sample(atoms, min(n_atoms, rng.randint(1, 2)))), lits(rng.randint(0, 2))))
        elif kind == "disjunctive":
            rules.append(DisjunctiveRule(tuple(rng.sample(atoms, min(n_atoms, rng.randint(2, 3)))), lits(rng.randint(0, 2))))
        elif kind == "weight":
            body = lits(rng.randint(1, 3))
            card = rng.random() < 0.3
            terms = tuple((1 if card else rng.randint(0, max_weight), l) for l in body)
            total = sum(w for w, _ in terms)
            rules.append(WeightRule(rng.choice(atoms), rng.randint(0, total + 1), terms, cardinality=card))
    for i in range(n_minimize):
        body = lits(rng.randint(1, 3))
        rules.append(MinimizeStatement(i, tuple((rng.randint(0, max_weight), l) for l in body)))
    prog = Program(tuple(rules))
    while True:
        bad = {id(v.rule) for v in find_recursive_aggregates(prog)}
        if not bad:
            break
        prog = prog.replace(rules=tuple(r for r in prog.rules if id(r) not in bad))
    ct, cf = (), ()
    if compute and rng.random() < 0.3:
        ct = tuple(rng.sample(atoms, 1))
    if compute and rng.random() < 0.3:
        cf = tuple(a for a in rng.sample(atoms, 1) if a not in ct)
    return prog.replace(compute_true=ct, compute_false=cf)
