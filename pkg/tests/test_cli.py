import json

import pytest

from translie.cli import main, parse_config, run
from translie.errors import ConfigParseError, ConfigSchemaError
from translie.scalars import Scalar


def cfg_text(**kwargs):
    return json.dumps(kwargs)


def test_parse_check_laws_config():
    cfg = parse_config(
        cfg_text(
            command="check-laws",
            algebra={"kind": "a-omega-delta"},
            windows={"domain": [-3, 3], "equation": [-2, 2]},
            mode="exhaustive",
        )
    )
    assert cfg.command == "check-laws"
    assert cfg.algebra.kind == "a-omega-delta"
    assert cfg.windows["domain"] == (-3, 3)


def test_parse_scalar_strings():
    cfg = parse_config(
        cfg_text(
            command="check-laws",
            algebra={"kind": "a-f-k", "k": 1, "f": {"0": "5", "2": "1/2+5i"}},
        )
    )
    assert cfg.algebra.f.m_value(0) == Scalar(5)
    assert cfg.algebra.f.m_value(2) == Scalar.parse("1/2+5i")


def test_parse_rejects_bad_window():
    with pytest.raises(ConfigSchemaError):
        parse_config(
            cfg_text(
                command="check-laws",
                algebra={"kind": "a-omega-delta"},
                windows={"domain": [3, -3]},
            )
        )


def test_parse_rejects_unknown_key():
    with pytest.raises(ConfigSchemaError):
        parse_config(cfg_text(command="check-laws", algebra={"kind": "a-omega-delta"}, zap=1))


def test_parse_rejects_command_mismatch():
    with pytest.raises(ConfigSchemaError):
        parse_config(cfg_text(command="generators"), command="check-laws")


def test_parse_error_reports_position():
    with pytest.raises(ConfigParseError) as exc:
        parse_config("{not json")
    assert "line 1" in str(exc.value)


def test_run_check_laws_small():
    cfg = parse_config(
        cfg_text(
            command="check-laws",
            algebra={"kind": "a-omega-delta"},
            windows={"domain": [-2, 2], "equation": [-1, 1]},
            mode="randomized",
            budget=200,
            seed=7,
        )
    )
    report = run(cfg)
    assert report.verdict == "pass"
    laws = [e["law"] for e in report.entries]
    assert "skew-symmetry" in laws
    assert laws.count("fundamental-identity") == 2  # exhaustive + randomized
    assert "relabel-intertwining" in laws
    assert "involutive-morphism" in laws


def test_run_solve_derivations():
    cfg = parse_config(
        cfg_text(
            command="solve-derivations",
            algebra={"kind": "a-omega-delta"},
            windows={"domain": [-4, 4], "equation": [-4, 4], "core": [-2, 2]},
            degree=1,
        )
    )
    report = run(cfg)
    assert report.verdict == "pass"
    assert report.entries[0]["details"]["core_dimension"] == 1


def test_run_tp_triviality():
    cfg = parse_config(
        cfg_text(command="tp-triviality", windows={"domain": [-3, 3]})
    )
    report = run(cfg)
    assert report.verdict == "pass"
    assert report.entries[0]["details"]["dimension"] == 0


def test_run_build_tp():
    cfg = parse_config(
        cfg_text(
            command="build-tp",
            algebra={"kind": "a-f-k", "k": 2, "f": {"0": "1"}},
            tp_params={"example_family": {"d_seq": {"0": "5"}, "c": {"1": "1"}}},
        )
    )
    report = run(cfg)
    assert report.verdict == "pass"
    details = report.entries[0]["details"]
    assert details["params"]["alpha"] == "5"
    assert details["classification"] == "transposed-only"


def test_run_verify_tp_example_family():
    cfg = parse_config(
        cfg_text(
            command="verify-tp",
            algebra={"kind": "a-f-k", "k": 2, "f": {"0": "1"}},
            tp_params={"example_family": {"d_seq": {"0": "5"}, "c": {"1": "1"}}},
        )
    )
    report = run(cfg)
    assert report.verdict == "pass"
    by_law = {e["law"]: e for e in report.entries}
    assert by_law["tp-params-valid"]["passed"]
    assert by_law["commutative-associative"]["passed"]
    assert by_law["transposed-leibniz"]["passed"]
    dich = by_law["poisson-dichotomy"]
    assert dich["passed"]
    assert dich["details"]["classification"] == "transposed-only"
    assert dich["details"]["witness"] is not None


def test_run_verify_tp_explicit_invalid_params():
    cfg = parse_config(
        cfg_text(
            command="verify-tp",
            algebra={"kind": "a-f-k", "k": 2, "f": {"0": "1"}},
            tp_params={"alpha": "4", "c": {"1": "1"}, "d": [[0, 0, 0, "5"]]},
        )
    )
    report = run(cfg)
    assert report.verdict == "fail"
    assert report.entries[0]["law"] == "tp-params-valid"
    assert not report.entries[0]["passed"]
    assert report.entries[0]["details"]["weighted_sum_violations"]


def test_run_generators_spanned_and_missing():
    base = dict(
        command="generators",
        algebra={"kind": "a-omega-delta"},
        windows={"domain": [-4, 4]},
    )
    report = run(parse_config(json.dumps(base)))
    assert report.verdict == "pass"

    base["generators"] = [["L", -1], ["L", 0], ["L", 1]]
    report = run(parse_config(json.dumps(base)))
    assert report.verdict == "fail"
    assert "M_0" in report.entries[0]["details"]["missing"]


def test_report_byte_identical_across_runs():
    text = cfg_text(
        command="check-laws",
        algebra={"kind": "a-f-k", "k": 0, "f": {"0": "1"}},
        windows={"domain": [-2, 2], "equation": [-1, 1]},
        mode="randomized",
        budget=100,
        seed=3,
    )
    a = run(parse_config(text)).to_json()
    b = run(parse_config(text)).to_json()
    assert a == b
    assert '"timing_ms": null' in a


def test_main_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(
        cfg_text(
            command="tp-triviality",
            windows={"domain": [-2, 2]},
        )
    )
    out = tmp_path / "report.json"
    assert main(["tp-triviality", "--config", str(good), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["verdict"] == "pass"
    assert report["timing_ms"] is None

    failing = tmp_path / "failing.json"
    failing.write_text(
        cfg_text(
            command="generators",
            algebra={"kind": "a-omega-delta"},
            windows={"domain": [-3, 3]},
            generators=[["L", 0]],
        )
    )
    assert main(["generators", "--config", str(failing), "--quiet"]) == 1

    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert main(["tp-triviality", "--config", str(bad)]) == 2

    missing = tmp_path / "nope.json"
    assert main(["tp-triviality", "--config", str(missing)]) == 2
    capsys.readouterr()


def test_main_seed_override(tmp_path):
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(
        cfg_text(
            command="check-laws",
            algebra={"kind": "a-omega-delta"},
            windows={"domain": [-2, 2], "equation": [-1, 1]},
            mode="randomized",
            budget=50,
            seed=1,
        )
    )
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    main(["check-laws", "--config", str(cfg_file), "--out", str(out1), "--quiet"])
    main(["check-laws", "--config", str(cfg_file), "--seed", "9", "--out", str(out2), "--quiet"])
    r1 = json.loads(out1.read_text())
    r2 = json.loads(out2.read_text())
    assert r1["config"]["seed"] == 1
    assert r2["config"]["seed"] == 9
