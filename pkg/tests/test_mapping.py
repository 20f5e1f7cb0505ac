import itertools
import random

import pytest

from smodels2pb.mapping import RecordError, TranslationRecord, check_stable, decode_objective, to_answer_set
from smodels2pb.opb import SolverOutput
from smodels2pb.oracle import enumerate_pb_models, enumerate_stable, random_program
from smodels2pb.pb import ObjectiveLevel
from smodels2pb.program import BasicRule, Program, WeightRule, pos
from smodels2pb.translate import translate

from conftest import output_for


def test_answer_set_names():
    rec = TranslationRecord(3, frozenset({2, 3}), {2: "b", 3: "c"})
    assert to_answer_set(SolverOutput("SATISFIABLE", {1: False, 2: True, 3: False}), rec) == {"b"}
    assert to_answer_set(SolverOutput("SATISFIABLE", {1: False, 2: False, 3: False}), rec) == set()


def test_aux_atoms_never_reported():
    rec = TranslationRecord(5, frozenset({1, 2}), {1: "a"}, {4: "body-aux", 5: "level-bit"})
    out = SolverOutput("SATISFIABLE", {v: True for v in range(1, 6)})
    assert to_answer_set(out, rec) == {"a"}
    assert to_answer_set(out, rec, show_unnamed=True) == {"a", "2"}


def test_missing_variable_is_an_error():
    rec = TranslationRecord(3, frozenset({2, 3}), {2: "b"})
    with pytest.raises(ValueError):
        to_answer_set(SolverOutput("SATISFIABLE", {2: True}), rec)
    with pytest.raises(ValueError):
        to_answer_set(SolverOutput("UNSATISFIABLE"), rec)


def test_decode_examples():
    levels = (ObjectiveLevel(1, 4, 3), ObjectiveLevel(0, 1, 3))
    assert decode_objective(9, levels) == [(1, 2), (0, 1)]
    assert decode_objective(0, levels) == [(1, 0), (0, 0)]
    assert decode_objective(7, (ObjectiveLevel(0, 1, 10),)) == [(0, 7)]
    with pytest.raises(ValueError):
        decode_objective(16, levels)
    with pytest.raises(ValueError):
        decode_objective(-1, levels)


def test_decode_uses_record_offset():
    rec = TranslationRecord(1, frozenset(), levels=(ObjectiveLevel(0, 1, 5),), offset=3)
    assert decode_objective(-1, rec) == [(0, 2)]


def test_record_roundtrip_and_errors(tmp_path):
    rec = TranslationRecord(9, frozenset({1, 2, 4}), {1: "p(1, 2)", 4: "q"}, {5: "body-aux", 6: "flag-aux"},
                            (ObjectiveLevel(1, 7, 3), ObjectiveLevel(0, 1, 6)), -2, "first")
    assert TranslationRecord.loads(rec.dumps()) == rec
    path = tmp_path / "r.rec"
    path.write_text(rec.dumps())
    assert TranslationRecord.load(path) == rec
    for bad in ["", "hello\n", "smodels2pb-record 1\nnum_vars x\n", "smodels2pb-record 1\nbogus 1\n"]:
        with pytest.raises(RecordError):
            TranslationRecord.loads(bad)


def test_check_stable_examples():
    assert not check_stable(Program((BasicRule(1, (pos(1),)),)), {1})
    assert check_stable(Program((BasicRule(1),)), {1})
    p = Program((WeightRule(3, 2, ((1, pos(1)), (1, pos(2)))), BasicRule(1), BasicRule(2)))
    assert check_stable(p, {1, 2, 3})
    assert not check_stable(p, {1, 2})
    with pytest.raises(ValueError):
        check_stable(p, {1, 9})


def test_check_stable_agrees_with_oracle():
    rng = random.Random(31)
    for _ in range(150):
        p = random_program(rng, 6, 8)
        atoms = sorted(p.atoms)
        stable = set(enumerate_stable(p))
        for bits in itertools.product((0, 1), repeat=len(atoms)):
            cand = frozenset(a for a, b in zip(atoms, bits) if b)
            assert check_stable(p, cand) == (cand in stable), (p, cand)


def test_answers_cover_exactly_the_brave_atoms():
    rng = random.Random(37)
    for _ in range(80):
        p = random_program(rng, 6, 8)
        tr = translate(p)
        brave = set().union(*enumerate_stable(p)) if enumerate_stable(p) else set()
        seen = set()
        for m in enumerate_pb_models(tr.theory):
            seen |= set(to_answer_set(output_for(m, tr.theory.num_vars), tr.record, show_unnamed=True))
        assert seen == {str(a) for a in brave}


def test_decode_matches_per_level_values():
    rng = random.Random(41)
    for _ in range(60):
        p = random_program(rng, 5, 6, n_minimize=2)
        tr = translate(p)
        if tr.objective is None:
            continue
        mins = {m.priority_index: m for m in p.minimize}
        for m in enumerate_pb_models(tr.theory, tr.objective, optimal_only=False):
            flat = tr.objective.value(m) - tr.record.offset
            for prio, v in decode_objective(flat, tr.record):
                assert v == mins[prio].value(m)
