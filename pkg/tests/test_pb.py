import itertools
import random

from hypothesis import given, settings, strategies as st

from smodels2pb.pb import (
    BigMParams,
    ObjectiveLevel,
    PBConstraint,
    big_m,
    clause_to_pb,
    encode_equiv,
    flatten_objectives,
    is_trivial,
    normalize,
    normalize_objective,
)
from smodels2pb.program import Literal, MinimizeStatement, neg, pos
from smodels2pb.transform import EquivConstraint

A, B, H, X = 1, 2, 3, 4


def assignments(atoms):
    atoms = sorted(atoms)
    for bits in itertools.product((0, 1), repeat=len(atoms)):
        yield {a for a, b in zip(atoms, bits) if b}


def test_equiv_two_of_two():
    eq = EquivConstraint(H, 2, ((1, pos(A)), (1, pos(B))))
    assert big_m(eq) == BigMParams(2, 5)
    first, second = encode_equiv(eq)
    assert first == PBConstraint(((1, pos(A)), (1, pos(B)), (-2, pos(H))), ">=", 0)
    assert second == PBConstraint(((-1, pos(A)), (-1, pos(B)), (5, pos(H))), ">=", -1)
    for m in assignments({A, B, H}):
        assert (first.satisfied_by(m) and second.satisfied_by(m)) == ((H in m) == eq.holds(m))


def test_equiv_negated_literal():
    eq = EquivConstraint(H, 1, ((2, neg(X)),))
    assert big_m(eq) == BigMParams(1, 4)
    first, second = encode_equiv(eq)
    assert first == PBConstraint(((-1, pos(H)), (-2, pos(X))), ">=", -2)
    assert second == PBConstraint(((4, pos(H)), (2, pos(X))), ">=", 2)
    for a in assignments({H, X}):
        assert (first.satisfied_by(a) and second.satisfied_by(a)) == ((H in a) == eq.holds(a))


def test_equiv_vacuous_bound_forces_guard():
    first, second = encode_equiv(EquivConstraint(H, 0, ()))
    assert not second.satisfied_by(set()) and second.satisfied_by({H})
    assert first.satisfied_by(set()) and first.satisfied_by({H})


def test_equiv_with_negated_literal_output_mode():
    eq = EquivConstraint(H, 2, ((1, pos(A)), (1, pos(B))))
    for c in encode_equiv(eq, negated_literals=True):
        assert all(w > 0 for w, _ in c.terms)
    for m in assignments({A, B, H}):
        ok = all(c.satisfied_by(m) for c in encode_equiv(eq, negated_literals=True))
        assert ok == ((H in m) == eq.holds(m))


def test_clause_examples():
    assert normalize(clause_to_pb((pos(A), neg(B)))) == PBConstraint(((1, pos(A)), (-1, pos(B))), ">=", 0)
    assert clause_to_pb((pos(A),)) == PBConstraint(((1, pos(A)),), ">=", 1)
    empty = clause_to_pb(())
    assert str(empty) == "0 >= 1" and not empty.satisfied_by(set())


def test_normalize_examples():
    c = PBConstraint(((1, pos(A)), (1, pos(B)), (-5, pos(H))), "<=", 1)
    assert normalize(c) == PBConstraint(((-1, pos(A)), (-1, pos(B)), (5, pos(H))), ">=", -1)
    assert normalize(PBConstraint(((2, neg(X)),), ">=", 1)) == PBConstraint(((-2, pos(X)),), ">=", -1)
    assert normalize(PBConstraint(((3, pos(A)), (2, pos(A))), ">=", 4)) == PBConstraint(((5, pos(A)),), ">=", 4)
    assert normalize(PBConstraint(((1, pos(A)), (-1, pos(A))), ">=", 1)).terms == ()


def test_trivial_detection():
    assert is_trivial(PBConstraint(((1, pos(A)),), ">=", 0))
    assert is_trivial(PBConstraint(((-1, pos(A)),), ">=", -1))
    assert not is_trivial(PBConstraint(((1, pos(A)),), ">=", 1))
    assert not is_trivial(PBConstraint((), ">=", 1))


def test_flatten_single_level():
    obj = flatten_objectives([MinimizeStatement(0, ((2, pos(A)), (1, pos(B))))])
    assert obj.terms == ((2, pos(A)), (1, pos(B)))
    assert obj.levels == (ObjectiveLevel(0, 1, 3),)


def test_flatten_two_levels_last_is_significant():
    low = MinimizeStatement(0, ((1, pos(1)), (2, pos(2))))
    high = MinimizeStatement(1, ((1, pos(3)), (2, pos(4))))
    obj = flatten_objectives([low, high])
    assert obj.levels == (ObjectiveLevel(1, 4, 3), ObjectiveLevel(0, 1, 3))
    assert obj.value({4, 1}) == 9
    first = flatten_objectives([low, high], order="first")
    assert first.levels[0].priority_index == 0


def test_flatten_empty():
    assert flatten_objectives([]) is None


def test_objective_negated_literal_offset():
    obj = normalize_objective(flatten_objectives([MinimizeStatement(0, ((3, neg(A)), (1, pos(B))))]))
    assert obj.terms == ((-3, pos(A)), (1, pos(B))) and obj.offset == 3
    for m in assignments({A, B}):
        assert obj.value(m) == 3 * (A not in m) + (B in m)


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 5), st.booleans()), max_size=6),
    st.sampled_from([">=", "=", "<=", ">", "<"]),
    st.integers(-8, 8),
    st.booleans(),
)
def test_normalize_preserves_models(terms, rel, rhs, tilde):
    c = PBConstraint(tuple((w, Literal(a, n)) for w, a, n in terms), rel, rhs)
    n = normalize(c, negated_literals=tilde)
    assert n.relation in (">=", "=")
    assert len({l.atom for _, l in n.terms}) == len(n.terms)
    if not tilde:
        assert all(not l.negated for _, l in n.terms)
    else:
        assert all(w > 0 for w, _ in n.terms)
    for m in assignments(range(1, 6)):
        assert c.satisfied_by(m) == n.satisfied_by(m)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2**20), st.integers(1, 6), st.booleans()), max_size=6),
       st.integers(-2**21, 2**21))
def test_equiv_exact(terms, bound):
    eq = EquivConstraint(7, bound, tuple((w, Literal(a, n)) for w, a, n in terms))
    cs = encode_equiv(eq)
    for m in assignments(range(1, 8)):
        assert all(c.satisfied_by(m) for c in cs) == ((7 in m) == eq.holds(m))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.tuples(st.integers(0, 3), st.integers(1, 5), st.booleans()), min_size=1, max_size=3),
                min_size=1, max_size=3), st.sampled_from(["first", "last"]))
def test_flatten_preserves_lexicographic_argmin(levels, order):
    mins = [MinimizeStatement(i, tuple((w, Literal(a, n)) for w, a, n in ts)) for i, ts in enumerate(levels)]
    obj = normalize_objective(flatten_objectives(mins, order))
    sig = sorted(mins, key=lambda m: m.priority_index, reverse=order == "last")
    models = list(assignments(range(1, 6)))
    lex = lambda m: tuple(s.value(m) for s in sig)
    best_lex = min(map(lex, models))
    best_flat = min(obj.value(m) for m in models)
    assert {frozenset(m) for m in models if lex(m) == best_lex} == \
        {frozenset(m) for m in models if obj.value(m) == best_flat}
    rng = random.Random(len(models))
    for m in rng.sample(models, 8):
        assert obj.value(m) == sum(lv.multiplier * v for lv, v in zip(obj.levels, lex(m)))
