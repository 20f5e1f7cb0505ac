import random

import pytest

from smodels2pb.opb import SolverOutput


def rules_text(*rules: str, names=None, bplus=(), bminus=(), models=1) -> str:
    """Assemble a smodels document from rule lines."""
    parts = list(rules) + ["0"]
    parts += [f"{a} {n}" for a, n in (names or {}).items()] + ["0", "B+"]
    parts += [str(a) for a in bplus] + ["0", "B-"]
    parts += [str(a) for a in bminus] + ["0", str(models)]
    return "\n".join(parts) + "\n"


def output_for(model, num_vars, status="SATISFIABLE", best=None) -> SolverOutput:
    return SolverOutput(status, {v: v in model for v in range(1, num_vars + 1)}, best)


@pytest.fixture
def rng():
    return random.Random(20240611)
