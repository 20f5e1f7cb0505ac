"""Reader and writer for the Lparse/Smodels intermediate format.

Rule lines (negative body literals are always listed first)::

    1 h n m  neg.. pos..                  basic rule
    2 h n m  bound neg.. pos..            constraint rule
    3 k h1..hk n m neg.. pos..            choice rule
    5 h bound n m neg.. pos.. w1..wn      weight rule
    6 0 n m neg.. pos.. w1..wn            minimize statement
    8 k h1..hk n m neg.. pos..            disjunctive rule

followed by ``0``, the symbol table (``id name`` lines) and ``0``, then
``B+`` ids ``0``, ``B-`` ids ``0`` and the number of requested models.
"""

from __future__ import annotations

import io
from typing import Dict, List, Tuple, Union

from .program import (
    BasicRule,
    ChoiceRule,
    DisjunctiveRule,
    Literal,
    MinimizeStatement,
    Program,
    WeightRule,
)

class SmodelsParseError(ValueError):
    pass


class _Line:
    """Tokens of a single rule line; every rule occupies exactly one line."""

    def __init__(self, text: str, line_no: int):
        self.toks = text.split()
        self.pos = 0
        self.line_no = line_no

    def more(self) -> bool:
        return self.pos < len(self.toks)

    def int(self, what: str) -> int:
        if self.pos >= len(self.toks):
            raise SmodelsParseError(f"line {self.line_no}: truncated rule, missing {what}")
        tok = self.toks[self.pos]
        self.pos += 1
        try:
            return int(tok)
        except ValueError:
            raise SmodelsParseError(f"line {self.line_no}: expected integer for {what}, got {tok!r}") from None

    def count(self, what: str) -> int:
        n = self.int(what)
        if n < 0:
            raise SmodelsParseError(f"line {self.line_no}: negative {what} ({n})")
        return n

    def atom(self, what: str = "atom") -> int:
        a = self.int(what)
        if a < 1:
            raise SmodelsParseError(f"line {self.line_no}: invalid atom id {a}")
        return a


def _body(t: _Line, n=None, m=None) -> Tuple[Literal, ...]:
    if n is None:
        n = t.count("literal count")
        m = t.count("negative literal count")
    if m > n:
        raise SmodelsParseError(f"line {t.line_no}: {m} negative literals but only {n} literals")
    atoms = [t.atom() for _ in range(n)]
    return tuple(Literal(a, i < m) for i, a in enumerate(atoms))


def _weighted_body(t: _Line) -> Tuple[Tuple[int, Literal], ...]:
    lits = _body(t)
    if len(t.toks) - t.pos != len(lits):
        raise SmodelsParseError(
            f"line {t.line_no}: weight list length mismatch ({len(t.toks) - t.pos} weights for {len(lits)} literals)")
    weights = [t.int("weight") for _ in lits]
    if any(w < 0 for w in weights):
        raise SmodelsParseError(f"line {t.line_no}: negative weight")
    return tuple(zip(weights, lits))


def _decode(data: Union[str, bytes]) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("ascii")
        except UnicodeDecodeError:
            raise SmodelsParseError("input is not ASCII") from None
    return data


def _parse_rule(t: _Line, kind: int, n_min: int):
    if kind == 1:
        h = t.atom("head")
        return BasicRule(h, _body(t))
    if kind == 2:
        h = t.atom("head")
        n = t.count("literal count")
        m = t.count("negative literal count")
        bound = t.int("bound")
        return WeightRule(h, bound, tuple((1, l) for l in _body(t, n, m)), cardinality=True)
    if kind in (3, 8):
        k = t.count("head count")
        if k == 0:
            raise SmodelsParseError(f"line {t.line_no}: rule type {kind} without heads")
        heads = tuple(t.atom("head") for _ in range(k))
        return (ChoiceRule if kind == 3 else DisjunctiveRule)(heads, _body(t))
    if kind == 5:
        h = t.atom("head")
        bound = t.int("bound")
        return WeightRule(h, bound, _weighted_body(t))
    if kind == 6:
        if t.int("minimize marker") != 0:
            raise SmodelsParseError(f"line {t.line_no}: minimize statement must start with '6 0'")
        return MinimizeStatement(n_min, _weighted_body(t))
    raise SmodelsParseError(f"line {t.line_no}: unsupported rule type {kind}")


def parse_program(data: Union[str, bytes]) -> Program:
    """Parse a complete smodels document into a Program."""
    lines = _decode(data).splitlines()
    i = 0

    def next_line(what):
        nonlocal i
        while i < len(lines):
            i += 1
            if lines[i - 1].strip():
                return _Line(lines[i - 1], i)
        raise SmodelsParseError(f"unexpected end of input: {what}")

    rules = []
    n_min = 0
    while True:
        t = next_line("rule section not terminated by 0")
        kind = t.int("rule type")
        if kind == 0:
            if t.more():
                raise SmodelsParseError(f"line {t.line_no}: trailing tokens after rule section terminator")
            break
        rule = _parse_rule(t, kind, n_min)
        if t.more():
            raise SmodelsParseError(f"line {t.line_no}: trailing tokens {' '.join(t.toks[t.pos:])!r}")
        n_min += isinstance(rule, MinimizeStatement)
        rules.append(rule)

    symbols: Dict[int, str] = {}
    while True:
        t = next_line("symbol table not terminated by 0")
        head, _, name = lines[i - 1].strip().partition(" ")
        if head == "0" and not name:
            break
        try:
            a = int(head)
        except ValueError:
            raise SmodelsParseError(f"line {i}: bad symbol table entry {lines[i - 1]!r}") from None
        if a < 1 or not name.strip():
            raise SmodelsParseError(f"line {i}: bad symbol table entry {lines[i - 1]!r}")
        symbols[a] = name.strip()

    toks = []
    for j in range(i, len(lines)):
        toks.extend((tok, j + 1) for tok in lines[j].split())
    it = iter(toks)

    def tok(what):
        try:
            return next(it)
        except StopIteration:
            raise SmodelsParseError(f"unexpected end of input: {what}") from None

    def integer(what):
        s, ln = tok(what)
        try:
            return int(s)
        except ValueError:
            raise SmodelsParseError(f"line {ln}: expected integer for {what}, got {s!r}") from None

    compute = {}
    for label in ("B+", "B-"):
        s, ln = tok(f"missing {label} section")
        if s != label:
            raise SmodelsParseError(f"line {ln}: expected {label!r}, got {s!r}")
        ids = []
        while True:
            a = integer(f"{label} section not terminated by 0")
            if a == 0:
                break
            if a < 0:
                raise SmodelsParseError(f"invalid atom id {a} in {label}")
            ids.append(a)
        compute[label] = tuple(ids)
    models = integer("model count")
    if models < 0:
        raise SmodelsParseError(f"negative model count {models}")
    rest = list(it)
    if rest:
        raise SmodelsParseError(f"line {rest[0][1]}: trailing input after model count")

    return Program(tuple(rules), symbols, compute["B+"], compute["B-"], models)


def _body_tokens(lits) -> List[int]:
    negs = [l.atom for l in lits if l.negated]
    poss = [l.atom for l in lits if not l.negated]
    return [len(negs) + len(poss), len(negs), *negs, *poss]


def _rule_line(r) -> str:
    if isinstance(r, BasicRule):
        toks = [1, r.head, *_body_tokens(r.body)]
    elif isinstance(r, WeightRule) and r.cardinality:
        b = _body_tokens(r.body_literals())
        toks = [2, r.head, b[0], b[1], r.bound, *b[2:]]
    elif isinstance(r, WeightRule):
        toks = [5, r.head, r.bound, *_body_tokens(r.body_literals()), *(w for w, _ in r.terms)]
    elif isinstance(r, ChoiceRule):
        toks = [3, len(r.heads), *r.heads, *_body_tokens(r.body)]
    elif isinstance(r, MinimizeStatement):
        toks = [6, 0, *_body_tokens(r.body_literals()), *(w for w, _ in r.terms)]
    elif isinstance(r, DisjunctiveRule):
        toks = [8, len(r.heads), *r.heads, *_body_tokens(r.body)]
    else:
        raise TypeError(f"not a rule: {r!r}")
    return " ".join(map(str, toks))


def write_program(program: Program) -> str:
    """Serialize a Program, one rule per line; ``parse_program(write_program(p)) == p``.

    Minimize statements get their priority from their position in the file,
    so ``priority_index`` values other than 0, 1, ... in rule order do not
    survive the round trip.
    """
    out = io.StringIO()
    for r in program.rules:
        out.write(_rule_line(r) + "\n")
    out.write("0\n")
    for a, name in program.symbol_table.items():
        out.write(f"{a} {name}\n")
    out.write("0\nB+\n")
    for a in program.compute_true:
        out.write(f"{a}\n")
    out.write("0\nB-\n")
    for a in program.compute_false:
        out.write(f"{a}\n")
    out.write(f"0\n{program.models_requested}\n")
    return out.getvalue()


def read_program(path) -> Program:
    with open(path, "rb") as f:
        return parse_program(f.read())
