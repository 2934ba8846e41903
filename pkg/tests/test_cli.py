import json
import subprocess
import sys

import pytest

from jetmodules.cli import run
from jetmodules.propcheck import REGISTRY

SESSION = """\
ring P1 = Q[x];
ring R = Q[x, y];
ring A = Q[x] / (x^2);
module M over R = coker [[x, y]];
module F over R = free 2;
op D on P1 = x*d(x)^2 + d(x);
op E on P1 = d(x);
op G on R = y*d(x) - x*d(y);
"""


@pytest.fixture
def session(tmp_path):
    path = tmp_path / "s.jm"
    path.write_text(SESSION)
    return str(path)


def ok(*argv):
    code, out, err = run([str(a) for a in argv])
    assert code == 0, err
    return out


def test_jet_algebra(session):
    assert ok("jet-algebra", "-N", 1, session, "A") == "Q[x, dx] / (dx^2, x*dx, x^2)\n"
    assert ok("jet-algebra", "-N", 0, session, "P1") == "Q[x, dx] / (dx)\n"


def test_jet_module(session):
    assert ok("jet-module", "-N", 1, session, "M") == "Q[x, y, dx, dy] / (dy^2, dx*dy, dx^2)\ncoker [[x + dx, y + dy]]\n"
    assert ok("jet-module", "-N", 1, session, "F").endswith("free 2\n")


def test_derive(session):
    assert ok("derive", "-N", 1, session, "x^2", "--in", "P1") == "x^2 + 2*x*dx\n"
    assert ok("derive", "-N", 1, session, "[x, 1]", "--in", "F") == "[x + dx, 1]\n"


def test_apply_and_compose(session):
    assert ok("apply", session, "D", "x^3") == "9*x^2\n"
    assert ok("apply", "--via-jets", 2, session, "D", "x^3") == ok("apply", session, "D", "x^3")
    assert ok("apply", session, "G", "x^2 + y^2") == "0\n"
    assert ok("compose", session, "D", "E") == "x*d(x)^3 + d(x)^2\n"


def test_hom_roundtrip(session):
    text = ok("to-hom", "-N", 2, session, "D")
    assert text == "dx -> 1\ndx^2 -> 2*x\n"
    values = "; ".join(text.strip().splitlines())
    assert ok("from-hom", "-N", 2, session, "P1", values) == "x*d(x)^2 + d(x)\n"


def test_dimensions(session):
    assert [ok("dim", "-N", N, session, "A") for N in range(4)] == ["2\n", "3\n", "4\n", "4\n"]
    assert ok("dim", "-N", 1, session, "P1") == "inf\n"
    assert ok("fiber-dim", "-N", 2, "--at", "x=0", session, "P1") == "3\n"
    assert ok("fiber-dim", "-N", 1, "--at", "x=1,y=2", session, "M") == "3\n"
    assert ok("groebner", "-N", 1, session, "A") == "dx^2\nx*dx\nx^2\n"


def test_check_json_is_deterministic():
    argv = ["check", "strictness", "--seed", "7", "--trials", "5", "--json", "--no-timing"]
    a, b = run(argv), run(argv)
    assert a == b and a[0] == 0
    report = json.loads(a[1])
    assert report["failures"] == [] and report["seed"] == 7 and "millis" not in report


def test_check_text_and_kinds():
    assert ok("check", "exterior", "--kind", "module", "--trials", "1") == "exterior:module: pass (2 instances, 0 failures)\n"
    assert ok("check", "exterior:module", "--trials", "1").startswith("exterior:module: pass")
    reports = json.loads(ok("check", "invariance", "--trials", "0", "--json"))
    assert [r["oracle"] for r in reports] == ["invariance:etale", "invariance:localization"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["dim"],
        ["dim", "/nonexistent/file.jm", "A"],
        ["check", "tensor_products", "--kind", "zero"],
        ["check", "strictness", "--max-vars", "9"],
        ["check", "no_such_oracle"],
    ],
)
def test_usage_errors(argv):
    code, out, err = run(argv)
    assert code == 2 and out == "" and err.startswith("jetmod: error:")


def test_semantic_and_parse_errors(session, tmp_path):
    assert run(["dim", session, "Nope"])[0] == 2
    assert run(["jet-module", session, "A"])[0] == 2
    code, _, err = run(["apply", session, "D", "x+"])
    assert code == 2 and "1:3" in err
    bad = tmp_path / "bad.jm"
    bad.write_text("ring R = Q[x]/(x^^2);\n")
    code, _, err = run(["dim", str(bad), "R"])
    assert code == 2 and "1:18" in err


def test_resource_exit_code(session):
    code, _, err = run(["--max-pairs", "1", "dim", "-N", "3", session, "R"])
    assert code == 3 and err.startswith("jetmod:")


def test_oracle_failure_exit_code(monkeypatch):
    def broken(inst):
        raise AssertionError("injected")

    monkeypatch.setattr(REGISTRY["smoothness"], "run", broken)
    code, out, _ = run(["check", "smoothness", "--trials", "0"])
    assert code == 1 and "fail" in out


def test_module_entry_point(session):
    proc = subprocess.run([sys.executable, "-m", "jetmodules", "dim", "-N", "2", session, "A"], capture_output=True, text=True)
    assert (proc.returncode, proc.stdout) == (0, "4\n")
    proc = subprocess.run([sys.executable, "-m", "jetmodules", "-h"], capture_output=True, text=True)
    assert proc.returncode == 0 and "check" in proc.stdout
