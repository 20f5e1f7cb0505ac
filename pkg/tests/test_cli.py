import subprocess
import sys
from pathlib import Path

import pytest

from smodels2pb import cli
from smodels2pb.mapping import TranslationRecord
from smodels2pb.opb import read_opb
from smodels2pb.oracle import enumerate_pb_models

from conftest import rules_text

HERE = Path(__file__).parent
SOLVER = f"{sys.executable} {HERE / 'fake_solver.py'}"

TWO = rules_text("1 2 1 1 3", "1 3 1 1 2", names={2: "a", 3: "b"})
TWO_LEVELS = (HERE / "golden" / "two_levels.smodels").read_text()


def run(args, stdin=""):
    proc = subprocess.run([sys.executable, "-m", "smodels2pb", *args], input=stdin, capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_translate_facts(files, tmp_path):
    src = files("facts.sm", rules_text("1 2 0 0", "1 3 0 0", names={2: "a", 3: "b"}))
    out = tmp_path / "facts.opb"
    assert cli.main(["translate", src, "--out", str(out)]) == 0
    theory, obj = read_opb(out.read_text())
    assert obj is None
    assert enumerate_pb_models(theory) == [{2, 3}]
    assert TranslationRecord.load(str(out) + ".rec").symbol_table == {2: "a", 3: "b"}


def test_translate_stdin_to_stdout():
    code, out, err = run(["translate"], TWO)
    assert code == 0
    assert out.startswith("* #variable= 3 ")
    assert "record was not written" in err


def test_pigeonhole_unsat(tmp_path):
    sm, opb = tmp_path / "ph.sm", tmp_path / "ph.opb"
    assert cli.main(["benchgen", "pigeonhole", "--params", "n=2,m=1", "--out", str(sm)]) == 0
    assert cli.main(["translate", str(sm), "--out", str(opb)]) == 0
    assert enumerate_pb_models(read_opb(opb.read_text())[0]) == []


def test_two_levels_in_record(files, tmp_path):
    src = files("t.sm", TWO_LEVELS)
    out = tmp_path / "t.opb"
    assert cli.main(["translate", src, "--out", str(out), "--record", str(tmp_path / "t.rec")]) == 0
    assert any(line.startswith("min:") for line in out.read_text().splitlines())
    assert len(TranslationRecord.load(tmp_path / "t.rec").levels) == 2


def test_determinism(files, tmp_path):
    src = files("t.sm", TWO_LEVELS)
    outputs = []
    for k in range(2):
        out = tmp_path / f"o{k}.opb"
        cli.main(["translate", src, "--out", str(out), "--opb-negated-literals"])
        outputs.append((out.read_bytes(), Path(str(out) + ".rec").read_bytes()))
    assert outputs[0] == outputs[1]


def test_min_order_flag(files, tmp_path):
    src = files("t.sm", TWO_LEVELS)
    cli.main(["translate", src, "--out", str(tmp_path / "a.opb"), "--min-order", "first"])
    rec = TranslationRecord.load(tmp_path / "a.opb.rec")
    assert rec.min_order == "first" and rec.levels[0].priority_index == 0


def test_map_answer_unsat(files):
    rec = files("r.rec", TranslationRecord(3, frozenset({2, 3})).dumps())
    code, out, _ = run(["map-answer", "--record", rec], "s UNSATISFIABLE\n")
    assert (code, out) == (0, "UNSATISFIABLE\n")


def test_map_answer_optimum_and_verify(files, tmp_path):
    src = files("t.sm", TWO_LEVELS)
    opb = tmp_path / "t.opb"
    cli.main(["translate", src, "--out", str(opb)])
    solved = subprocess.run(SOLVER.split() + [str(opb)], capture_output=True, text=True).stdout
    code, out, _ = run(["map-answer", "--record", str(opb) + ".rec", "--program", src, "--verify"], solved)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "OPTIMUM FOUND"
    assert lines[1] == "Answer: c"
    assert lines[2] == "Optimization: 0 0"
    assert lines[3] == "Verify: PASS"


def test_translate_with_solve(files):
    src = files("two.sm", TWO)
    code, out, _ = run(["translate", src, "--solve", SOLVER, "--verify"])
    assert code == 0
    assert out.splitlines()[0] == "SATISFIABLE"
    assert out.splitlines()[1] in ("Answer: a", "Answer: b")
    assert out.splitlines()[2] == "Verify: PASS"


def test_benchgen_series(tmp_path):
    out = tmp_path / "vc.smodels"
    args = ["benchgen", "vertex-cover", "--params", "rows=2,cols=2", "--steps", "3", "--stride", "2",
            "--scale", "cols", "--out", str(out)]
    assert cli.main(args) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["vc-0.smodels", "vc-1.smodels", "vc-2.smodels"]


def test_hidden_oracle(files):
    code, out, _ = run(["oracle", "stable", files("two.sm", TWO)])
    assert code == 0 and out.splitlines() == ["2", "3", "% 2 model(s)"]
    assert "oracle" not in run(["--help"])[1]


# --- exit-code contract --------------------------------------------------

LOOP_HCF_VIOLATION = rules_text("8 2 2 3 1 0 4", "1 2 1 0 3", "1 3 1 0 2")
RECURSIVE = rules_text("2 2 1 0 1 3", "1 3 1 0 2")


@pytest.mark.parametrize(
    "args,stdin,code",
    [
        (["translate"], "oops\n", cli.EXIT_PARSE),
        (["translate"], LOOP_HCF_VIOLATION, cli.EXIT_NOT_HCF),
        (["translate"], RECURSIVE, cli.EXIT_RECURSIVE),
        (["map-answer"], "s UNSATISFIABLE\n", cli.EXIT_RECORD),
        (["map-answer", "--record", "/nonexistent/file.rec"], "s UNSATISFIABLE\n", cli.EXIT_RECORD),
        (["frobnicate"], "", 2),
        (["benchgen", "vertex-cover", "--params", "rows=3,cols=2"], "", 2),
    ],
)
def test_exit_codes(args, stdin, code):
    assert run(args, stdin)[0] == code


def test_exit_code_bad_record(files):
    assert run(["map-answer", "--record", files("bad.rec", "nonsense\n")], "s UNSATISFIABLE\n")[0] == cli.EXIT_RECORD


def test_exit_code_contradictory_output(files):
    rec = files("r.rec", TranslationRecord(3, frozenset({2, 3})).dumps())
    assert run(["map-answer", "--record", rec], "s SATISFIABLE\nv x2 -x2\n")[0] == cli.EXIT_SOLVER_OUTPUT
    assert run(["map-answer", "--record", rec], "v x2\n")[0] == cli.EXIT_SOLVER_OUTPUT
    assert run(["map-answer", "--record", rec], "s SATISFIABLE\nv x2\n")[0] == cli.EXIT_SOLVER_OUTPUT


def test_exit_code_verify_fail(files):
    src = files("self.sm", rules_text("1 2 1 0 2"))
    rec = files("self.rec", TranslationRecord(2, frozenset({2})).dumps())
    code, out, _ = run(["map-answer", "--record", rec, "--program", src, "--verify"], "s SATISFIABLE\nv -x1 x2\n")
    assert code == cli.EXIT_VERIFY_FAIL and "Verify: FAIL" in out


def test_exit_code_missing_solver(files):
    assert run(["translate", files("two.sm", TWO), "--solve", "/no/such/solver"])[0] == cli.EXIT_SOLVER


def test_exit_code_oracle_cap(files):
    src = files("big.sm", rules_text("3 5 2 3 4 5 6 0 0", "1 7 0 0"))
    assert run(["oracle", "stable", src, "--max-oracle-atoms", "3"])[0] == cli.EXIT_CAP
