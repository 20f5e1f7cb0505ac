import random

import pytest
from hypothesis import given, settings, strategies as st

from smodels2pb.oracle import random_program
from smodels2pb.program import BasicRule, ChoiceRule, DisjunctiveRule, MinimizeStatement, Program, WeightRule, neg, pos
from smodels2pb.smodels import SmodelsParseError, parse_program, write_program

from conftest import rules_text

EMPTY = "0\n0\nB+\n0\nB-\n0\n1\n"


def test_basic_rule_example():
    p = parse_program("1 2 2 1 3 4\n0\n2 b\n0\nB+\n0\nB-\n0\n1")
    assert p.rules == (BasicRule(2, (neg(3), pos(4))),)
    assert p.symbol_table == {2: "b"}
    assert p.models_requested == 1


def test_weight_rule_example():
    p = parse_program("5 2 3 2 1 4 3 2 5\n0\n0\nB+\n0\nB-\n0\n1")
    (r,) = p.rules
    assert isinstance(r, WeightRule)
    assert (r.head, r.bound) == (2, 3)
    assert r.terms == ((2, neg(4)), (5, pos(3)))


def test_empty_program():
    p = parse_program(EMPTY)
    assert p.rules == ()
    assert write_program(p) == EMPTY
    assert write_program(Program()) == EMPTY


def test_single_fact():
    assert write_program(Program((BasicRule(2),))).startswith("1 2 0 0\n")


def test_every_rule_type():
    text = rules_text(
        "1 2 1 0 3",
        "2 4 2 1 1 5 6",
        "3 2 7 8 1 1 9",
        "5 10 3 2 1 5 6 2 2",
        "6 0 2 1 5 6 4 1",
        "8 2 11 12 0 0",
        names={2: "a", 12: "q(1,2)"},
        bplus=(2,),
        bminus=(3,),
        models=0,
    )
    p = parse_program(text)
    kinds = [type(r) for r in p.rules]
    assert kinds == [BasicRule, WeightRule, ChoiceRule, WeightRule, MinimizeStatement, DisjunctiveRule]
    assert p.rules[1].cardinality and p.rules[1].bound == 1
    assert p.rules[2] == ChoiceRule((7, 8), (neg(9),))
    assert p.rules[4].terms == ((4, neg(5)), (1, pos(6)))
    assert p.compute_true == (2,) and p.compute_false == (3,) and p.models_requested == 0
    assert parse_program(write_program(p)) == p
    assert write_program(p) == text


def test_minimize_priority_is_file_position():
    p = parse_program(rules_text("6 0 1 0 2 1", "6 0 1 0 3 1"))
    assert [m.priority_index for m in p.minimize] == [0, 1]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "1 2 2 1 3\n0\n0\nB+\n0\nB-\n0\n1",  # truncated body
        "5 2 1 2 0 3 4 1\n0\n0\nB+\n0\nB-\n0\n1",  # one weight short
        "5 2 1 1 0 3 4 1\n0\n0\nB+\n0\nB-\n0\n1",  # one weight too many
        "1 2 -1 0\n0\n0\nB+\n0\nB-\n0\n1",  # negative count
        "4 2 0 0\n0\n0\nB+\n0\nB-\n0\n1",  # unknown rule type
        "1 2 x 0\n0\n0\nB+\n0\nB-\n0\n1",  # non-integer
        "1 2 0 0\n0\n0\nB+\n0\n",  # missing B- section
        "1 2 0 0\n0\n0\nB+\n0\nB-\n3\n",  # unterminated B-
        "1 2 0 0\n",  # no end of rules
    ],
)
def test_malformed_input_is_rejected(text):
    with pytest.raises(SmodelsParseError):
        parse_program(text)


def test_whitespace_is_flexible():
    p = parse_program("1  2 2 1\t3 4 \n0\n0\nB+\n0\nB-\n0\n1\n\n")
    assert p.rules == (BasicRule(2, (neg(3), pos(4))),)


def test_big_weights_survive():
    w = 10**30
    p = parse_program(rules_text(f"5 2 {w} 1 0 3 {w}"))
    assert p.rules[0].bound == w
    assert parse_program(write_program(p)) == p


def test_roundtrip_random_programs():
    rng = random.Random(5)
    for _ in range(200):
        p = random_program(rng, 6, 8, kinds=("basic", "choice", "weight", "disjunctive"), n_minimize=2)
        p = p.replace(symbol_table={a: f"a{a}" for a in sorted(p.atoms) if a % 2})
        text = write_program(p)
        assert parse_program(text) == p
        assert write_program(parse_program(text)) == text


lits = st.lists(st.tuples(st.integers(1, 30), st.booleans()), max_size=4)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), lits, st.lists(st.integers(0, 50), min_size=4, max_size=4))
def test_roundtrip_weight_rules(head, body, weights):
    terms = tuple((w, neg(a) if n else pos(a)) for w, (a, n) in zip(weights, body))
    p = Program((WeightRule(head, weights[0], terms),))
    assert parse_program(write_program(p)) == p
