"""OPB files and PB-competition style solver output.

Variables are written as ``x<id>`` with the atom id unchanged, so original
atoms keep their smodels numbers and auxiliary atoms follow them.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .pb import Objective, PBConstraint, PBTheory
from .program import Literal

STATUSES = ("SATISFIABLE", "OPTIMUM FOUND", "UNSATISFIABLE", "UNKNOWN")


class OPBFormatError(ValueError):
    pass


class SolverOutputError(ValueError):
    pass


def _term(c: int, l: Literal) -> str:
    return f"{'+' if c >= 0 else '-'}{abs(c)} {'~' if l.negated else ''}x{l.atom}"


def write_opb(theory: PBTheory, objective: Optional[Objective] = None) -> str:
    """Render ``theory`` (already normalized) and an optional objective as OPB text.

    An objective without terms is omitted. A constraint without terms is
    written with an empty left-hand side (``>= 1 ;`` is the contradiction).
    """
    out = io.StringIO()
    out.write(f"* #variable= {theory.num_vars} #constraint= {len(theory.constraints)}\n")
    if objective is not None and objective.terms:
        out.write("min: " + " ".join(_term(c, l) for c, l in objective.terms) + " ;\n")
    for con in theory.constraints:
        if con.relation not in (">=", "="):
            raise OPBFormatError(f"constraint not normalized: {con}")
        lhs = " ".join(_term(c, l) for c, l in con.terms)
        out.write(f"{lhs} {con.relation} {con.rhs} ;\n" if lhs else f"{con.relation} {con.rhs} ;\n")
    return out.getvalue()


_TERM = re.compile(r"^([+-]?\d+)$")
_VAR = re.compile(r"^(~?)x(\d+)$")


def _parse_terms(tokens: List[str], line_no: int) -> Tuple[Tuple[int, Literal], ...]:
    if len(tokens) % 2:
        raise OPBFormatError(f"line {line_no}: odd number of tokens in linear term")
    terms = []
    for c, v in zip(tokens[::2], tokens[1::2]):
        mc, mv = _TERM.match(c), _VAR.match(v)
        if not mc or not mv:
            raise OPBFormatError(f"line {line_no}: bad term {c} {v}")
        terms.append((int(c), Literal(int(mv.group(2)), mv.group(1) == "~")))
    return tuple(terms)


def read_opb(data: Union[str, bytes]) -> Tuple[PBTheory, Optional[Objective]]:
    """Parse OPB text as produced by :func:`write_opb` (linear, one constraint per line).

    The returned objective carries no level information.
    """
    if isinstance(data, bytes):
        data = data.decode("ascii")
    num_vars = None
    objective = None
    constraints = []
    for no, line in enumerate(data.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("*"):
            m = re.search(r"#variable=\s*(\d+)", line)
            if m and num_vars is None:
                num_vars = int(m.group(1))
            continue
        if not line.endswith(";"):
            raise OPBFormatError(f"line {no}: missing ';'")
        toks = line[:-1].split()
        if toks and toks[0] == "min:":
            if objective is not None:
                raise OPBFormatError(f"line {no}: second objective")
            objective = Objective(_parse_terms(toks[1:], no), ())
            continue
        if len(toks) < 2 or toks[-2] not in (">=", "="):
            raise OPBFormatError(f"line {no}: expected '>=' or '=' before the right-hand side")
        constraints.append(PBConstraint(_parse_terms(toks[:-2], no), toks[-2], int(toks[-1])))
    if num_vars is None:
        num_vars = max((l.atom for c in constraints for _, l in c.terms), default=0)
    return PBTheory(num_vars, constraints), objective


@dataclass
class SolverOutput:
    status: str
    assignment: Optional[Dict[int, bool]] = None
    best_value: Optional[int] = None

    def true_vars(self) -> frozenset:
        return frozenset(v for v, b in (self.assignment or {}).items() if b)


def parse_solver_output(data: Union[str, bytes]) -> SolverOutput:
    """Read ``s``/``v``/``o`` lines; all other lines are ignored.

    ``v`` lines may repeat; their tokens (``x3`` true, ``-x3`` false) are
    accumulated. The last ``o`` line wins.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    status = None
    values: Dict[int, bool] = {}
    best = None
    for line in data.splitlines():
        if line == "v" or line.startswith("v "):
            line = "v " + line[2:]
        if line.startswith("s "):
            st = line[2:].strip()
            if st not in STATUSES:
                raise SolverOutputError(f"unknown status {st!r}")
            status = st
        elif line.startswith("v "):
            for tok in line[2:].split():
                neg = tok.startswith("-")
                name = tok[1:] if neg else tok
                if not re.fullmatch(r"x\d+", name):
                    raise SolverOutputError(f"bad value token {tok!r}")
                v = int(name[1:])
                if values.get(v, not neg) == neg:
                    raise SolverOutputError(f"variable x{v} assigned both values")
                values[v] = not neg
        elif line.startswith("o "):
            best = int(line[2:].split()[0])
    if status is None:
        raise SolverOutputError("no status line in solver output")
    has_model = status in ("SATISFIABLE", "OPTIMUM FOUND")
    return SolverOutput(status, values if has_model else None, best)


def write_solver_output(out: SolverOutput, width: int = 10) -> str:
    """Inverse of :func:`parse_solver_output`, used for tests and the ``--solve`` round trip."""
    lines = []
    if out.best_value is not None:
        lines.append(f"o {out.best_value}")
    lines.append(f"s {out.status}")
    if out.assignment:
        toks = [("" if out.assignment[v] else "-") + f"x{v}" for v in sorted(out.assignment)]
        for i in range(0, len(toks), width):
            lines.append("v " + " ".join(toks[i:i + width]))
    return "\n".join(lines) + "\n"
