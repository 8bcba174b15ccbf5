import json

import pytest

from invmon import builtins
from invmon.backend import StephenBudget
from invmon.cli import golden_text, load_source, main, read_golden


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sgraph_semilattice(capsys):
    code, out, _ = run(capsys, "sgraph", "builtin:semilattice")
    assert code == 0 and out.count("digraph") == 4
    assert out.count("doublecircle") == 4


def test_sgraph_i2_sizes(capsys):
    code, out, _ = run(capsys, "sgraph", "builtin:i2", "--format", "json")
    sizes = [len(c["vertices"]) for c in json.loads(out)]
    assert code == 0 and sorted(sizes) == [1, 2, 2, 2]


def test_sgraph_bicyclic_word(capsys):
    code, out, _ = run(capsys, "sgraph", "builtin:bicyclic", "--word", "x' x", "--budget", "10")
    assert code == 0 and 'label="Truncated(10)"' in out
    code, _, err = run(capsys, "sgraph", "builtin:bicyclic", "--word", "x' x", "--budget", "10",
                       "--require-converged")
    assert code == 3 and "truncated" in err


def test_relmod_and_identities(capsys):
    code, out, _ = run(capsys, "relmod", "builtin:semilattice", "--format", "json")
    ranks = {c["e"]: c["rank"] for c in json.loads(out)["components"]}
    assert code == 0 and ranks == {"1": 0, "e": 1, "f": 1, "e f": 2}
    code, out, _ = run(capsys, "identities", "builtin:semilattice", "--format", "json")
    kernel = {en["e"]: en["kernelRank"] for en in json.loads(out)["entries"]}
    assert code == 0 and kernel == {"1": 0, "e": 0, "f": 0, "e f": 1}


def test_relmod_needs_a_finite_monoid(capsys):
    code, _, err = run(capsys, "relmod", "builtin:bicyclic", "--budget", "30")
    assert code == 3 and "did not finish" in err


def test_bad_inputs(capsys, tmp_path):
    assert run(capsys, "sgraph", "builtin:nope")[0] == 2
    assert run(capsys, "sgraph", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("relation: x = 1\n")
    assert run(capsys, "relmod", str(bad))[0] == 2
    assert run(capsys, "sgraph", "builtin:semilattice", "--word", "q")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_presentation_file(capsys, tmp_path):
    f = tmp_path / "idem.txt"
    f.write_text("# one idempotent\ngenerators: e\nrelation: e e = e\n")
    code, out, _ = run(capsys, "identities", str(f))
    assert code == 0 and "identities at e: -" in out


def test_output_is_reproducible(capsys):
    outs = {run(capsys, "sgraph", "builtin:semilattice0", "--jobs", str(j))[1] for j in (1, 4)}
    assert len(outs) == 1
    a = run(capsys, "verify", "builtin:semilattice", "--seed", "3", "--samples", "40")
    b = run(capsys, "verify", "builtin:semilattice", "--seed", "3", "--samples", "40")
    assert a == b


@pytest.mark.parametrize("name", builtins.BUILTIN_NAMES)
def test_golden_files_are_current(name):
    assert golden_text(load_source(f"builtin:{name}", StephenBudget())) == read_golden(name)


def test_verify_i2(capsys):
    code, out, _ = run(capsys, "verify", "builtin:i2", "--seed", "7")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 10
