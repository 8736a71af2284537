import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

from conftest import ABS_J10, EXAMPLE_CURVE, TARGET_HEIGHT
from kumbrauer.cli import main
from kumbrauer.pipeline import ConfigError, emit_report, run_pipeline

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).parent / "golden" / "example_rank1.json"


def base_config(**extra):
    cfg = {"curve": EXAMPLE_CURVE, "height": str(TARGET_HEIGHT)}
    cfg.update(extra)
    return cfg


def test_example_report():
    report = run_pipeline(base_config())
    assert report.rank.kind == "odd-delta"
    assert report.algebraic_bound == 1
    assert 16106.8 < float(mpmath.log10(report.total_bound.log10)) < 16106.9
    data = json.loads(emit_report(report))
    assert data["schema_version"] == 1
    steps = [s["step"] for s in data["provenance"]]
    assert steps == ["curve", "rank-certificate", "galois-group", "algebraic", "height",
                     "faltings-constant", "transcendental"]


def test_exact_galois_mode_names_the_class():
    report = run_pipeline(base_config(galois="exact:(2,3);(4,5,6);(4,5)"))
    step = next(s for s in report.provenance if s["step"] == "galois-group")
    assert step["outputs"]["order"] == 12
    assert report.algebraic_bound == 1


def test_exceptional_galois_groups():
    # A5 acting transitively on the six points has H^1 = Z/2; the point-stabilizer A5 does not
    transitive = run_pipeline(base_config(galois="exact:(1,2,3,4,5);(1,6)(2,5)"))
    assert transitive.algebraic_bound == 2
    assert run_pipeline(base_config(galois="exact:(1,2,3,4,5);(1,2,3)")).algebraic_bound == 1
    assert run_pipeline(base_config(galois="exact:(1,2)(3,4);(1,2)(5,6)")).algebraic_bound == 2
    assert run_pipeline(base_config(galois="exact:(1,2)(3,4);(1,3)(2,4)")).algebraic_bound == 1


def test_json_is_deterministic():
    a = emit_report(run_pipeline(base_config()))
    b = emit_report(run_pipeline(base_config()))
    assert a == b


def test_golden_report(capsys):
    assert main([str(ROOT / "configs" / "example_rank1.json")]) == 0
    out = capsys.readouterr().out
    assert out == GOLDEN.read_text()


def test_inconclusive_rank_reports_scenarios():
    report = run_pipeline({"curve": "y^2 = x^6 + 1", "height": "1", "prime_budget": 30})
    assert not report.rank.certified
    assert report.total_bound is None
    assert [s["rank"] for s in report.scenarios] == [1, 2, 3, 4]
    assert all(s["caveats"] for s in report.scenarios if s["rank"] > 1)
    assert b"no total bound" in emit_report(report, "text")


def test_config_errors():
    with pytest.raises(ConfigError):
        run_pipeline({"curve": EXAMPLE_CURVE})
    with pytest.raises(ConfigError):
        run_pipeline(base_config(galois="guess"))
    with pytest.raises(ConfigError):
        run_pipeline(base_config(height=0.5))
    with pytest.raises(ConfigError):
        run_pipeline(base_config(colour="blue"))


def test_analytic_inputs_replace_height():
    report = run_pipeline({"curve": EXAMPLE_CURVE, "tau_imdet": "1.7446523661", "abs_j10": ABS_J10})
    assert report.height_upper.startswith("-1.0295836")


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["--curve", "y^2 = x^5", "--height", "1"]) == 2
    assert main(["--curve", "y^2 = x^6 +", "--height", "1"]) == 2
    assert main(["--curve", EXAMPLE_CURVE]) == 2
    assert main(["--curve", "y^2 = x^6 + 1", "--height", "1", "--prime-budget", "30", "--strict"]) == 3
    assert main(["--curve", "y^2 = x^6 + 1", "--height", "1", "--prime-budget", "30"]) == 0
    bad = tmp_path / "bad.toml"
    bad.write_text("curve = ")
    assert main([str(bad)]) == 2
    assert main([str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_cli_flags_override_config(capsys):
    assert main([str(ROOT / "configs" / "example_rank1.toml"), "--format", "json", "--height", "-0.79581"]) == 0
    data = json.loads(capsys.readouterr().out)
    h = Fraction(data["height_upper"])
    assert Fraction("-0.79581") <= h < Fraction("-0.79581") + Fraction(1, 10**16)
    assert data["galois_mode"] == "exact"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "kumbrauer", "--curve", EXAMPLE_CURVE, "--height", "-0.79581",
                          "--format", "text"], capture_output=True, text=True, check=True)
    assert "odd-delta" in out.stdout
