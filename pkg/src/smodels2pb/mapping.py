"""Mapping PB solver answers back to answer sets of the original program.

The translation writes a small sidecar file next to the OPB output::

    smodels2pb-record 1
    num_vars 14
    min_order last
    offset 0
    original 2 3 4
    name 2 a
    fresh 5 guard-complement
    level 1 4 3
    level 0 1 3

``original`` lists the atoms of the input program. ``fresh`` lines give the
role of each auxiliary atom. ``level`` lines (priority index, multiplier,
max value) come most significant first. A name runs to the end of its line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from .opb import SolverOutput
from .pb import ObjectiveLevel
from .program import Atom, BasicRule, ChoiceRule, Program
from .transform import prepare

MAGIC = "smodels2pb-record"


class RecordError(ValueError):
    pass


@dataclass
class TranslationRecord:
    num_vars: int
    original_atoms: FrozenSet[Atom]
    symbol_table: Dict[Atom, str] = field(default_factory=dict)
    fresh_roles: Dict[Atom, str] = field(default_factory=dict)
    levels: Tuple[ObjectiveLevel, ...] = ()
    offset: int = 0
    min_order: str = "last"

    def dumps(self) -> str:
        lines = [f"{MAGIC} 1", f"num_vars {self.num_vars}", f"min_order {self.min_order}", f"offset {self.offset}",
                 "original " + " ".join(map(str, sorted(self.original_atoms)))]
        lines += [f"name {a} {n}" for a, n in sorted(self.symbol_table.items())]
        lines += [f"fresh {a} {r}" for a, r in sorted(self.fresh_roles.items())]
        lines += [f"level {lv.priority_index} {lv.multiplier} {lv.max_value}" for lv in self.levels]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "TranslationRecord":
        lines = text.splitlines()
        if not lines or lines[0].split()[:1] != [MAGIC]:
            raise RecordError("not a translation record")
        rec = cls(0, frozenset())
        originals: Set[Atom] = set()
        levels = []
        try:
            for line in lines[1:]:
                if not line.strip():
                    continue
                key, _, rest = line.partition(" ")
                if key == "num_vars":
                    rec.num_vars = int(rest)
                elif key == "min_order":
                    rec.min_order = rest.strip()
                elif key == "offset":
                    rec.offset = int(rest)
                elif key == "original":
                    originals.update(int(x) for x in rest.split())
                elif key == "name":
                    a, _, name = rest.partition(" ")
                    rec.symbol_table[int(a)] = name
                elif key == "fresh":
                    a, role = rest.split()
                    rec.fresh_roles[int(a)] = role
                elif key == "level":
                    p, m, mx = map(int, rest.split())
                    levels.append(ObjectiveLevel(p, m, mx))
                else:
                    raise RecordError(f"unknown record key {key!r}")
        except ValueError as e:
            if isinstance(e, RecordError):
                raise
            raise RecordError(f"malformed record line: {e}") from None
        rec.original_atoms = frozenset(originals)
        rec.levels = tuple(levels)
        return rec

    @classmethod
    def load(cls, path) -> "TranslationRecord":
        with open(path) as f:
            return cls.loads(f.read())


def true_original_atoms(out: SolverOutput, rec: TranslationRecord) -> FrozenSet[Atom]:
    if out.assignment is None:
        raise ValueError(f"solver output with status {out.status} has no assignment")
    missing = sorted(a for a in rec.original_atoms if a not in out.assignment)
    if missing:
        raise ValueError(f"assignment does not mention variables {missing[:10]}")
    return frozenset(a for a in rec.original_atoms if out.assignment[a])


def to_answer_set(out: SolverOutput, rec: TranslationRecord, show_unnamed: bool = False) -> FrozenSet[str]:
    """Names of the true original atoms; unnamed atoms appear as their id when ``show_unnamed``."""
    names = set()
    for a in true_original_atoms(out, rec):
        if a in rec.symbol_table:
            names.add(rec.symbol_table[a])
        elif show_unnamed:
            names.add(str(a))
    return frozenset(names)


def decode_objective(value: int, rec: Union[TranslationRecord, Iterable[ObjectiveLevel]],
                     offset: Optional[int] = None) -> List[Tuple[int, int]]:
    """Split a flattened objective value into per-level values, most significant first.

    ``value`` is the objective as written to the OPB file (what the solver
    reports on its ``o`` line); the record's offset is added back first.
    """
    if isinstance(rec, TranslationRecord):
        levels, off = rec.levels, rec.offset
    else:
        levels, off = tuple(rec), 0
    if offset is not None:
        off = offset
    total = value + off
    top = sum(lv.multiplier * lv.max_value for lv in levels)
    if total < 0 or total > top:
        raise ValueError(f"objective value {total} outside [0, {top}]")
    out = []
    for lv in levels:
        v, total = divmod(total, lv.multiplier)
        out.append((lv.priority_index, v))
    return out


def _least_model(rules: List[Tuple[Atom, Tuple[Atom, ...]]]) -> Set[Atom]:
    derived: Set[Atom] = set()
    watch: Dict[Atom, List[int]] = {}
    missing = []
    queue = []
    for i, (h, body) in enumerate(rules):
        missing.append(len(body))
        for b in body:
            watch.setdefault(b, []).append(i)
        if not body:
            queue.append(h)
    while queue:
        a = queue.pop()
        if a in derived:
            continue
        derived.add(a)
        for i in watch.get(a, ()):
            missing[i] -= 1
            if missing[i] == 0:
                queue.append(rules[i][0])
    return derived


def check_stable(program: Program, candidate: Iterable[Atom]) -> bool:
    """Decide whether ``candidate`` (a set of atom ids) is a stable model of ``program``.

    Works on the split program: the weight rules must agree with their
    guards, and the base part must be the least model of its reduct. This
    is polynomial, and exact for programs without recursion over aggregates.
    """
    cand = frozenset(candidate)
    unknown = cand - program.atoms
    if unknown:
        raise ValueError(f"candidate mentions atoms not in the program: {sorted(unknown)}")
    split = prepare(program)
    fresh = split.fresh
    truth: Set[Atom] = set(cand)
    for eq in split.equivalences:
        if eq.guard in fresh and eq.holds(cand):
            truth.add(eq.guard)
    for eq in split.equivalences:
        if eq.holds(truth) != (eq.guard in truth):
            return False
    for guard, comp in split.complements.items():
        if guard not in truth:
            truth.add(comp)

    base = split.base_program
    if any(a not in truth for a in base.compute_true) or any(a in truth for a in base.compute_false):
        return False
    reduct: List[Tuple[Atom, Tuple[Atom, ...]]] = []
    for r in base.rules:
        if any(l.negated and l.atom in truth for l in r.body):
            continue
        body = tuple(l.atom for l in r.body if not l.negated)
        if isinstance(r, BasicRule):
            reduct.append((r.head, body))
        elif isinstance(r, ChoiceRule):
            reduct.extend((h, body) for h in r.heads if h in truth)
    return _least_model(reduct) == truth
