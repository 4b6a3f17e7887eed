import io
import json
import subprocess
import sys

import pytest

from llfp.cli import main
from llfp.predicates.builtins import numeral
from llfp.surface import pretty
from support import CORPUS

GOLDEN = str(CORPUS / "metatheory" / "golden.expect.llfp")
SQRT = str(CORPUS / "sqrt" / "signature.llfp")
ALL = sorted(str(p) for p in CORPUS.rglob("*.expect.llfp"))

SCRATCH = """\
signature {
  a : Type
  r : Type
  N : r
  c : a
  g : lock[True; N : r] a
}
context {
  y : a
}
"""


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def scratch(tmp_path):
    p = tmp_path / "scratch.llfp"
    p.write_text(SCRATCH)
    return str(p)


# -- check --------------------------------------------------------------------


def test_check_golden_exits_zero():
    code, out = run("check", GOLDEN)
    assert code == 0
    assert out.rstrip().endswith("0 mismatch(es), 0 watchdog trip(s)")


def test_check_eal_corpus():
    assert run("check", str(CORPUS / "eal" / "smoke.expect.llfp"))[0] == 0


def test_check_mismatch_exits_one(tmp_path):
    p = tmp_path / "bad.llfp"
    p.write_text("signature { a : Type }\ncontext { x : a -> a }\ncheck x : a -> a expect valid\n")
    code, out = run("check", str(p))
    assert code == 1 and "FAIL" in out and "NotEtaLong" in out


def test_check_parse_error_exits_two(tmp_path, capsys):
    p = tmp_path / "broken.llfp"
    p.write_text("signature { a : }\n")
    assert run("check", str(p))[0] == 2
    assert "broken.llfp:1" in capsys.readouterr().err


def test_check_missing_file_and_bad_usage():
    assert run("check", "/nonexistent.llfp")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("check")[0] == 2


def test_mode_conflict_exits_two():
    assert run("check", "--system=p", str(CORPUS / "sqrt" / "roots.expect.llfp"))[0] == 2
    # agreeing flag is fine
    assert run("check", "--system=pq", str(CORPUS / "sqrt" / "roots.expect.llfp"))[0] == 0


def test_bad_oracle_config_exits_two(tmp_path):
    cfg = tmp_path / "oracles.json"
    cfg.write_text(json.dumps({"Fitch": {"fuel": -1}}))
    assert run("check", f"--oracles={cfg}", GOLDEN)[0] == 2
    cfg.write_text("{not json")
    assert run("check", f"--oracles={cfg}", GOLDEN)[0] == 2


def test_oracle_config_from_environment(tmp_path, monkeypatch):
    cfg = tmp_path / "oracles.json"
    cfg.write_text(json.dumps({"Fitch": {"fuel": 1}}))
    monkeypatch.setenv("LLFP_ORACLES", str(cfg))
    code, out = run("check", str(CORPUS / "fpst" / "adequacy.expect.llfp"))
    # with a single step of fuel the detours can no longer be normalized
    assert code == 1 and "PredicateUnknown" in out


def test_records_format():
    code, out = run("check", "--format=records", GOLDEN)
    assert code == 0
    lines = out.splitlines()
    recs = [json.loads(x) for x in lines]
    assert len(recs) == 11
    assert {"goal", "verdict", "codes", "rules", "queries", "ok"} <= set(recs[0])
    assert recs[1]["codes"] == ["NotEtaLong"]
    assert all("elapsed" not in r for r in recs)


def test_records_deterministic():
    a = run("check", "--format=records", *ALL)
    b = run("check", "--format=records", *ALL)
    assert a == b and a[0] == 0


def test_trace_prints_derivations():
    code, out = run("check", "--trace", GOLDEN)
    assert code == 0 and "O·Lock" in out


# -- synth / subst ----------------------------------------------------------------


def test_synth(scratch):
    assert run("synth", scratch, "y") == (0, "a\n")
    assert run("synth", scratch, "unlock[True; N : r] g") == (0, "a\n")
    code, out = run("synth", scratch, "nope")
    assert code == 1 and "UnknownConst" in out
    assert run("synth", scratch, "\\z : a . z")[0] == 2


def test_subst_three_atomic_examples(scratch):
    assert run("subst", scratch, "x0", "c", "x0", "a") == (0, "reduces c : a\n")
    assert run("subst", scratch, "x0 y", "\\z : a . z", "x0", "a -> a") == (0, "reduces y : a\n")
    out = run("subst", scratch, "unlock[P; N : r] x0", "lock[P; N : r] c", "x0", "lock[P; N : r] a")
    assert out == (0, "reduces c : a\n")


def test_subst_other_sorts(scratch):
    assert run("subst", scratch, "y", "c", "x0", "a") == (0, "stays y\n")
    assert run("subst", "--sort=family", scratch, "lock[True; x0 : a] r", "c", "x0", "a") == (
        0, "lock[True; c : a] r\n")
    code, out = run("subst", scratch, "x0 y", "c", "x0", "a -> a")
    assert code == 1 and "SubstUndefined" in out


# -- solve --------------------------------------------------------------------------


def test_solve_nine():
    n9, n3 = pretty(numeral(9)), pretty(numeral(3))
    code, out = run("solve", SQRT, f"sqrt ({n9})")
    assert code == 0
    witness, judgement = out.splitlines()
    pair = f"pair ({n9}) ({n3}) (arith ({n9}) ({n3}))"
    assert witness == f"witness {pair}"
    assert judgement.startswith(f"|- unlock[SQRT; {pair} : prod ({n9})] sqrt ({n9}) => ")
    assert judgement.endswith(f"=> eval (sqroot ({n9})) (fst ({n9}) ({pair}))")


def test_solve_two_has_no_witness():
    assert run("solve", SQRT, f"sqrt ({pretty(numeral(2))})") == (1, "no witness\n")


def test_solve_true_is_unsupported(scratch):
    code, out = run("solve", "--system=pq", scratch, "g")
    assert code == 1 and out.startswith("unsupported")


def test_solve_requires_pq(scratch):
    assert run("solve", "--system=p", scratch, "g")[0] == 2


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "llfp.cli", "check", GOLDEN], capture_output=True, text=True)
    assert r.returncode == 0
