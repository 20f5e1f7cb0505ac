"""End-to-end translation of a ground program into a PB theory."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .completion import BaseEncoding, translate_base
from .mapping import TranslationRecord
from .pb import Objective, PBConstraint, PBTheory, encode_equiv, flatten_objectives, is_trivial, normalize, normalize_objective
from .program import FreshAtoms, Program, neg
from .transform import SplitResult, prepare

log = logging.getLogger(__name__)


@dataclass
class Translation:
    theory: PBTheory
    objective: Optional[Objective]
    record: TranslationRecord
    split: SplitResult
    encoding: BaseEncoding


def translate(program: Program, min_order: str = "last", negated_literals: bool = False,
              strong_ranking: bool = True, keep_trivial: bool = False) -> Translation:
    """Translate ``program`` so that PB models correspond one-to-one to its stable models.

    Raises RecursiveAggregateError or NotHeadCycleFree for programs outside
    the supported fragment. ``strong_ranking=False`` is only meant for tests.
    """
    original = program.atoms
    top = program.max_atom_id
    fresh = FreshAtoms(top)
    split = prepare(program, fresh)

    enc = translate_base(split.base_program, fresh, split.visible, strong=strong_ranking,
                         negated_literals=negated_literals)
    constraints = enc.pb_constraints(negated_literals)
    for eq in split.equivalences:
        constraints.extend(encode_equiv(eq, negated_literals))
    # ids below the maximum that the program never mentions are fixed to false
    for a in range(1, top + 1):
        if a not in original:
            constraints.append(normalize(PBConstraint(((1, neg(a)),), ">=", 1), negated_literals))
    if not keep_trivial:
        constraints = [c for c in constraints if not is_trivial(c)]
    # the two halves of a complement pair complete to the same clauses
    constraints = list(dict.fromkeys(constraints))

    objective = flatten_objectives(split.minimize, min_order)
    if objective is not None:
        objective = normalize_objective(objective, negated_literals)

    num_vars = max(fresh.last, top)
    record = TranslationRecord(
        num_vars=num_vars,
        original_atoms=frozenset(original),
        symbol_table=dict(program.symbol_table),
        fresh_roles=dict(fresh.roles),
        levels=objective.levels if objective else (),
        offset=objective.offset if objective else 0,
        min_order=min_order,
    )
    log.debug("translated %d rules into %d constraints over %d variables (%d auxiliary)",
              len(program.rules), len(constraints), num_vars, len(fresh))
    return Translation(PBTheory(num_vars, constraints), objective, record, split, enc)
