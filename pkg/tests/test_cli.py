"""Tests for the run configuration and the fn3 command line."""

import json
from pathlib import Path

import numpy as np
import pytest

from fn3.cli.config import DEFAULT_SAMPLES, DEFAULT_TOLERANCES, RunConfig, parse_tol
from fn3.cli.main import main
from fn3.cli.serialize import matrix_to_json
from fn3.cli.suites import histogram, run_suite
from fn3.sl2 import fuchsian_pants
from fn3.utils import MalformedInput, UnknownSuite

SURFACE = {
    "pants": [{"id": 0, "fuchsian": [-3.0, -3.2, -2.8]}, {"id": 1, "fuchsian": [-3.0, -3.2, -2.8]}],
    "edges": [
        {"a": [0, "A"], "b": [1, "A"], "u": [0.7, 0.0], "v": [0.1, -0.2]},
        {"a": [0, "B"], "b": [1, "B"], "u": [0.3, 0.5], "v": [0.0, 0.0]},
        {"a": [0, "C"], "b": [1, "C"], "u": [0.0, 0.0], "v": [0.1, -0.2]},
    ],
}


def write(tmp_path: Path, name: str, data) -> Path:
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def run(capsys, argv) -> dict:
    main(argv)
    return json.loads(capsys.readouterr().out)


def exit_code(argv) -> int:
    with pytest.raises(SystemExit) as info:
        main(argv)
    return info.value.code


def test_config_defaults(tmp_path: Path) -> None:
    """No file, or a missing one, gives the defaults."""
    assert RunConfig.load(None) == RunConfig()
    cfg = RunConfig.load(tmp_path / "missing.json")
    assert cfg.seed == 0
    assert cfg.tol("scan") == DEFAULT_TOLERANCES["scan"]
    assert cfg.samples("pants") == DEFAULT_SAMPLES["pants"]


def test_config_file_overrides(tmp_path: Path) -> None:
    """File values replace defaults key by key."""
    path = write(tmp_path, "cfg.json", {"seed": 7, "tolerances": {"relation": 1e-6}, "sample_counts": {"pants": 5}})
    cfg = RunConfig.load(path)
    assert cfg.seed == 7
    assert cfg.tol("relation") == 1e-6
    assert cfg.tol("residual") == DEFAULT_TOLERANCES["residual"]
    assert cfg.samples("pants") == 5


def test_config_rejects_unknown_keys(tmp_path: Path) -> None:
    """Typos in the config file are errors."""
    path = write(tmp_path, "cfg.json", {"seeds": 1})
    with pytest.raises(MalformedInput, match="unknown config keys"):
        RunConfig.load(path)


def test_config_reports_bad_json_line(tmp_path: Path) -> None:
    """Decoding errors carry the line number."""
    path = tmp_path / "cfg.json"
    path.write_text('{\n  "seed": 1,\n  oops\n}\n', encoding="utf-8")
    with pytest.raises(MalformedInput, match="line 3"):
        RunConfig.load(path)


def test_config_overrides() -> None:
    """Flags win over the file and --quick divides the samples by ten."""
    cfg = RunConfig(seed=3).with_overrides(seed=9, tol={"scan": 1e-4}, quick=True)
    assert cfg.seed == 9
    assert cfg.tol("scan") == 1e-4
    assert cfg.samples("pants") == 20
    assert cfg.samples("surface") == 2
    assert RunConfig(seed=3).with_overrides().seed == 3


def test_config_rejects_non_positive_tolerance() -> None:
    """Tolerances must be positive."""
    with pytest.raises(MalformedInput, match="must be positive"):
        RunConfig(tolerances={"relation": 0.0})


def test_unknown_tolerance_name() -> None:
    """Only named tolerances exist."""
    with pytest.raises(MalformedInput, match="unknown tolerance"):
        RunConfig().tol("nope")


def test_parse_tol() -> None:
    """NAME=VAL pairs become floats."""
    assert parse_tol(["relation=1e-6", "scan=0.001"]) == {"relation": 1e-6, "scan": 0.001}
    assert parse_tol(None) == {}
    with pytest.raises(MalformedInput, match="NAME=VAL"):
        parse_tol(["relation"])
    with pytest.raises(MalformedInput, match="unknown tolerance"):
        parse_tol(["bogus=1"])
    with pytest.raises(MalformedInput, match="--tol relation"):
        parse_tol(["relation=abc"])


def test_histogram_bins() -> None:
    """Residuals fall into decade bins."""
    bins = histogram([3e-12, 5e-12, 2e-9, 0.0])
    assert bins["1e-12"] == 2
    assert bins["1e-9"] == 1
    assert sum(bins.values()) == 4


def test_classification_suite_checks_every_sample() -> None:
    """Only trace tests inside the indeterminate band are skipped."""
    result = run_suite("classification", RunConfig(sample_counts={"classification": 90}))
    assert result.passed, result.failures
    assert result.skipped == 0
    assert result.samples == 90


def test_run_suite_unknown() -> None:
    """Unknown suite names are input errors."""
    with pytest.raises(UnknownSuite, match="nope"):
        run_suite("nope", RunConfig())


def test_classify(tmp_path: Path, capsys) -> None:
    """diag(2, 1, 1/2) is strongly loxodromic."""
    path = write(tmp_path, "m.json", [[2, 0, 0], [0, 1, 0], [0, 0, 0.5]])
    out = run(capsys, ["classify", str(path)])
    assert out["command"] == "classify"
    assert out["result"]["class"] == "strongly_loxodromic"
    assert out["result"]["trace"] == pytest.approx([3.5, 0.0])
    assert out["result"]["trace_test"]["F"][0] == pytest.approx(0.5625)
    assert out["config"]["seed"] == 0


def test_classify_malformed_json(tmp_path: Path, capsys) -> None:
    """Bad JSON exits 2 with the line number."""
    path = tmp_path / "m.json"
    path.write_text("[[1, 0, 0],\n [0, 1 0]]", encoding="utf-8")
    assert exit_code(["classify", str(path)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("Error:")
    assert "line 2" in err


def test_classify_not_unimodular(tmp_path: Path, capsys) -> None:
    """det != 1 is a precondition failure."""
    path = write(tmp_path, "m.json", {"matrix": [[2, 0, 0], [0, 1, 0], [0, 0, 1]]})
    assert exit_code(["classify", str(path)]) == 3
    assert "det" in capsys.readouterr().err


def test_pants_build(tmp_path: Path) -> None:
    """The (8, 8, 8, 79) pants is written to --out."""
    y = [8, 8, 8, 79, 8, 8, 8, 79]
    src = write(tmp_path, "y.json", {"y": y, "root_choice": "plus"})
    dest = tmp_path / "out" / "pants.json"
    main(["pants", "build", str(src), "--out", str(dest)])
    out = json.loads(dest.read_text(encoding="utf-8"))
    result = out["result"]
    assert result["relation_residual"] <= 1e-9
    assert [v[0] for v in result["coords"]["y"]] == pytest.approx(y, rel=1e-7)
    assert result["solver"]["residual"] <= 1e-9


def test_pants_build_elliptic_boundary(tmp_path: Path, capsys) -> None:
    """An elliptic boundary exits 3."""
    src = write(tmp_path, "y.json", [1, 8, 8, 0, 1, 8, 8, 0])
    assert exit_code(["pants", "build", str(src)]) == 3
    assert "not strongly loxodromic" in capsys.readouterr().err


def test_pants_coords(tmp_path: Path, capsys) -> None:
    """A Fuchsian pair is self-paired on the irreducible branch and lands in SO(3,C)."""
    a, b, _ = fuchsian_pants(-3, -3, -3)
    src = write(tmp_path, "ab.json", {"A": matrix_to_json(a), "B": matrix_to_json(b)})
    result = run(capsys, ["pants", "coords", str(src)])["result"]
    assert result["coords"]["y"][3][0] == pytest.approx(79.0)
    assert result["reducibility"] == "irreducible_branch"
    assert result["verdict"]["tag"] == "so3c"


def test_surface_check(tmp_path: Path, capsys) -> None:
    """Genus two from Fuchsian pants passes its relations."""
    src = write(tmp_path, "s.json", SURFACE)
    result = run(capsys, ["surface", "check", str(src)])["result"]
    assert result["status"] == "PASS"
    assert set(result["relations"]) == {"pants 0", "pants 1", "edge 0", "edge 1", "edge 2"}
    assert "D1" in result["traces"]


def test_surface_check_and_build_share_relation_rule(tmp_path: Path, capsys) -> None:
    """check and build measure relations the same way and gate on the same tolerance."""
    src = write(tmp_path, "s.json", SURFACE)
    checked = run(capsys, ["surface", "check", str(src)])["result"]
    built = run(capsys, ["surface", "build", str(src)])["result"]
    assert checked["max_relation_residual"] == pytest.approx(built["max_relation_residual"])
    assert max(checked["raw_relations"].values()) >= checked["max_relation_residual"]
    tight = ["--tol", "relation=1e-300"]
    assert exit_code(["surface", "check", str(src), *tight]) == 1
    assert json.loads(capsys.readouterr().out)["result"]["status"] == "FAIL"
    assert exit_code(["surface", "build", str(src), *tight]) == 3
    assert "normalized residual" in capsys.readouterr().err


def test_surface_coords(tmp_path: Path, capsys) -> None:
    """Glue parameters come back from the assembled group."""
    src = write(tmp_path, "s.json", SURFACE)
    result = run(capsys, ["surface", "coords", str(src)])["result"]
    for got, edge in zip(result["glue"], SURFACE["edges"]):
        assert got["u"] == pytest.approx(edge["u"], abs=1e-6)
        assert got["v"] == pytest.approx(edge["v"], abs=1e-6)


def test_surface_word(tmp_path: Path, capsys) -> None:
    """C B A is the identity."""
    src = write(tmp_path, "s.json", SURFACE)
    result = run(capsys, ["surface", "word", str(src), "--word", "P0.C P0.B P0.A", "--tol", "classify=1e-6"])["result"]
    assert result["tr"] == pytest.approx([3.0, 0.0], abs=1e-8)
    assert result["class"] == "identity"


def test_surface_unknown_generator(tmp_path: Path, capsys) -> None:
    """Unknown letters are input errors."""
    src = write(tmp_path, "s.json", SURFACE)
    assert exit_code(["surface", "word", str(src), "--word", "P0.A Q"]) == 2
    assert "Q" in capsys.readouterr().err


def test_verify_quick(capsys) -> None:
    """A quick lawton run passes and reports per suite."""
    main(["verify", "lawton", "--quick"])
    captured = capsys.readouterr()
    out = json.loads(captured.out)
    assert out["result"]["status"] == "PASS"
    suite = out["result"]["suites"][0]
    assert suite["name"] == "lawton"
    assert suite["samples"] == DEFAULT_SAMPLES["lawton"] // 10
    assert "lawton: PASS" in captured.err


def test_verify_unknown_suite(capsys) -> None:
    """Unknown suites exit 2."""
    assert exit_code(["verify", "nope"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_verify_is_deterministic(capsys) -> None:
    """Identical seeds and configs give byte-identical reports."""
    argv = ["verify", "factorization", "--quick", "--seed", "5"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["config"]["seed"] == 5


def test_verify_fails_with_tight_tolerance(capsys) -> None:
    """An impossible tolerance makes the suite fail with exit 1."""
    assert exit_code(["verify", "lawton", "--quick", "--tol", "residual=1e-300"]) == 1
    assert "lawton: FAIL" in capsys.readouterr().err


@pytest.mark.parametrize(
    "data,key,expected",
    [
        ({"lam": 0.25, "tau": 5.0}, "t", 5.25),
        ({"t": 5.25, "t_inv": 5.25}, "lam", 0.25),
        ({"t": 5.25, "t_inv": 5.25}, "tau", 5.0),
    ],
)
def test_convert_goldman_boundary(tmp_path: Path, capsys, data, key: str, expected: float) -> None:
    """Boundary invariants to traces and back."""
    src = write(tmp_path, "g.json", data)
    assert run(capsys, ["convert", "goldman", str(src)])["result"][key] == pytest.approx(expected)


def test_convert_goldman_pants(tmp_path: Path, capsys) -> None:
    """Full parameters give a real pants with CBA = I."""
    src = write(tmp_path, "g.json", {"lam": [0.3, 0.4, 0.5], "tau": [6.0, 5.0, 3.5], "s": 1.2, "r": 0.8})
    result = run(capsys, ["convert", "goldman", str(src)])["result"]
    assert result["pants"]["relation_residual"] <= 1e-8
    assert result["rho"]["used"] in ("reference", "relation")
    assert result["t_internal"] == pytest.approx(0.8 / result["rho"]["B"])


def test_convert_goldman_constraint(tmp_path: Path, capsys) -> None:
    """Out-of-range parameters exit 3."""
    src = write(tmp_path, "g.json", {"lam": [1.5, 0.4, 0.5], "tau": [6.0, 5.0, 3.5], "s": 1.0, "r": 1.0})
    assert exit_code(["convert", "goldman", str(src)]) == 3
    assert "lambda_A" in capsys.readouterr().err


def test_convert_sl2(capsys) -> None:
    """Negative SL(2) traces give sigma = 79 for the (8, 8, 8) pants."""
    result = run(capsys, ["convert", "sl2", "-3", "-3", "-3"])["result"]
    assert result["coords"]["y"][3][0] == pytest.approx(79.0)
    assert result["closed_form_sigma"][0] == pytest.approx(79.0)
    assert result["gilman_maskit_sign"] is True
    assert result["tr_comm_sl2"] == pytest.approx([52.0, 0.0])


def test_convert_ppcross(tmp_path: Path, capsys) -> None:
    """Cross-ratios from fixed points and from traces agree."""
    from fn3.real_forms import su_loxodromic_sample

    rng = np.random.default_rng(0)
    a, _, _ = su_loxodromic_sample(rng)
    b, _, _ = su_loxodromic_sample(rng)
    src = write(tmp_path, "ab.json", {"A": matrix_to_json(a), "B": matrix_to_json(b)})
    result = run(capsys, ["convert", "ppcross", str(src)])["result"]
    assert result["from_traces"]["X1"] == pytest.approx(result["X1"], rel=1e-6, abs=1e-7)
    assert result["from_traces"]["X2"] == pytest.approx(result["X2"], rel=1e-6, abs=1e-7)


def test_no_command(capsys) -> None:
    """Without a command the help is printed and the exit code is 2."""
    assert exit_code([]) == 2
    assert "usage" in capsys.readouterr().out
