"""Translate ground answer-set programs (smodels format) into pseudo-Boolean theories (OPB)."""

from .mapping import TranslationRecord, check_stable, decode_objective, to_answer_set
from .opb import SolverOutput, parse_solver_output, read_opb, write_opb
from .pb import Objective, PBConstraint, PBTheory, clause_to_pb, encode_equiv, flatten_objectives, normalize
from .program import (
    BasicRule,
    ChoiceRule,
    DisjunctiveRule,
    Literal,
    MinimizeStatement,
    Program,
    RecursiveAggregateError,
    WeightRule,
    build_dependency_graph,
    check_no_recursive_aggregates,
    neg,
    pos,
    tight_atoms,
)
from .smodels import parse_program, read_program, write_program
from .transform import NotHeadCycleFree
from .translate import Translation, translate

__version__ = "0.1.0"

__all__ = [
    "BasicRule", "ChoiceRule", "DisjunctiveRule", "Literal", "MinimizeStatement", "Program", "WeightRule",
    "RecursiveAggregateError", "NotHeadCycleFree", "build_dependency_graph", "check_no_recursive_aggregates",
    "tight_atoms", "neg", "pos", "parse_program", "read_program", "write_program", "Objective", "PBConstraint",
    "PBTheory", "clause_to_pb", "encode_equiv", "flatten_objectives", "normalize", "read_opb", "write_opb",
    "SolverOutput", "parse_solver_output", "TranslationRecord", "check_stable", "decode_objective",
    "to_answer_set", "Translation", "translate",
]
