"""Config parsing, serialization round trips, suite dispatch and exit codes."""

import io
import json
from contextlib import redirect_stdout

import pytest

from envalg.cli import (
    SUITE_NAMES,
    default_config_path,
    main,
    parse_config,
    run_all,
    run_suite,
    serialize_config,
)
from envalg.errors import ConfigError


MINIMAL = json.dumps(
    {
        "lie_algebra": {
            "dim": 1,
            "basis_names": ["x"],
            "structure": {},
            "weights": ["1"],
        },
        "functionals": {
            "delta": {"max_degree": 4, "values": {"0": "1"}},
        },
        "suites": [{"name": "radius", "functional": "delta"}],
    }
)


def capture(args):
    buf = io.StringIO()
    with redirect_stdout(buf):
        rc = main(args)
    return rc, buf.getvalue()


class TestParsing:
    def test_minimal_config(self):
        config = parse_config(MINIMAL)
        assert config.algebra.dim == 1
        assert "delta" in config.functionals
        assert config.suites[0].name == "radius"

    def test_unknown_key_is_named(self):
        bad = MINIMAL.replace('"weights"', '"weigths"')
        with pytest.raises(ConfigError, match="weigths"):
            parse_config(bad)

    def test_syntax_error_carries_position(self):
        with pytest.raises(ConfigError, match=r"line \d+, column \d+"):
            parse_config(MINIMAL[:-10])

    def test_round_trip_identity(self):
        config = parse_config(MINIMAL)
        text = serialize_config(config)
        again = parse_config(text)
        assert config == again
        assert serialize_config(again) == text

    def test_jacobi_violation_reported_with_witness(self):
        doc = json.loads(MINIMAL)
        doc["lie_algebra"] = {
            "dim": 3,
            "basis_names": ["a", "b", "c"],
            "structure": {"0,1": {"2": "1"}, "0,2": {"0": "1"}},
            "weights": ["1", "1", "1"],
        }
        doc.pop("functionals")
        doc.pop("suites")
        with pytest.raises(ConfigError, match=r"Jacobi.*\(0, 1, 2\)"):
            parse_config(json.dumps(doc))

    def test_submultiplicativity_guard(self):
        doc = json.loads(MINIMAL)
        doc["lie_algebra"] = {
            "dim": 3,
            "basis_names": ["p", "q", "z"],
            "structure": {"0,1": {"2": "1"}},
            "weights": ["1", "1", "3"],
        }
        doc.pop("functionals")
        doc.pop("suites")
        with pytest.raises(ConfigError, match="submultiplicative"):
            parse_config(json.dumps(doc))

    def test_unresolved_reference(self):
        doc = json.loads(MINIMAL)
        doc["suites"] = [{"name": "radius", "functional": "nope"}]
        with pytest.raises(ConfigError, match="unknown functional 'nope'"):
            parse_config(json.dumps(doc))

    def test_out_of_range_degree(self):
        doc = json.loads(MINIMAL)
        doc["suites"] = [{"name": "bch-identity", "degree": 11}]
        with pytest.raises(ConfigError, match="degree"):
            parse_config(json.dumps(doc))

    def test_unknown_suite_parameter(self):
        doc = json.loads(MINIMAL)
        doc["suites"] = [{"name": "radius", "functional": "delta", "fast": True}]
        with pytest.raises(ConfigError, match="fast"):
            parse_config(json.dumps(doc))

    def test_shipped_configs_validate(self):
        for name in ("su2.json", "gaussian.json"):
            path = default_config_path().parent.joinpath(name)
            config = parse_config(path.read_text(encoding="utf-8"))
            assert config.suites


class TestSuiteDispatch:
    def test_radius_suite_on_minimal(self):
        config = parse_config(MINIMAL)
        report = run_suite(config, "radius")
        assert report.ok
        assert report.checks[0].identifier == "estimate"

    def test_unknown_suite(self):
        from envalg.errors import UnknownSuiteError

        config = parse_config(MINIMAL)
        with pytest.raises(UnknownSuiteError):
            run_suite(config, "nope")

    def test_known_but_unconfigured_suite_needs_params(self):
        config = parse_config(MINIMAL)
        with pytest.raises(ConfigError, match="recursion"):
            run_suite(config, "recursion")

    def test_run_all_order_is_config_order(self):
        config = parse_config(MINIMAL)
        reports = run_all(config)
        assert [r.suite for r in reports] == ["radius"]


class TestCommandLine:
    def test_validate_default_config(self):
        rc, out = capture(["validate"])
        assert rc == 0
        assert "config OK" in out

    def test_run_single_suite(self):
        rc, out = capture(["run", "gns"])
        assert rc == 0
        assert "suite gns: PASS" in out

    def test_degree_override(self):
        rc, out = capture(["--degree", "3", "run", "bch-identity"])
        assert rc == 0
        assert "(m,n)=(3,0)" in out and "(m,n)=(4,0)" not in out

    def test_unknown_suite_exit_code(self):
        import sys

        err = io.StringIO()
        old = sys.stderr
        sys.stderr = err
        try:
            rc, _ = capture(["run", "bogus"])
        finally:
            sys.stderr = old
        assert rc == 2
        assert "unknown suite" in err.getvalue()

    def test_machine_format_schema(self):
        rc, out = capture(["--format", "machine", "run", "gns"])
        assert rc == 0
        lines = [json.loads(line) for line in out.splitlines()]
        kinds = [rec["kind"] for rec in lines]
        assert kinds.count("suite") == 1 and kinds[-1] == "summary"
        for rec in lines:
            if rec["kind"] == "check":
                assert set(rec) == {
                    "kind", "suite", "id", "status", "expected", "actual", "residual",
                }

    def test_machine_format_deterministic(self):
        rc1, out1 = capture(["--format", "machine", "--seed", "1", "run", "kernel"])
        rc2, out2 = capture(["--format", "machine", "--seed", "1", "run", "kernel"])
        assert rc1 == rc2 == 0
        assert out1 == out2

    def test_seed_changes_randomized_suite(self):
        _, out1 = capture(["--format", "machine", "--seed", "1", "run", "kernel"])
        _, out2 = capture(["--format", "machine", "--seed", "2", "run", "kernel"])
        assert out1 != out2

    def test_out_file(self, tmp_path):
        target = tmp_path / "report.txt"
        rc, out = capture(["--out", str(target), "run", "gns"])
        assert rc == 0
        assert out == ""
        assert "suite gns: PASS" in target.read_text()

    def test_dump_targets(self):
        rc, out = capture(["dump", "lie_algebra"])
        assert rc == 0
        doc = json.loads(out)
        assert doc["dim"] == 3
        rc, out = capture(["dump", "functional/spin_half"])
        assert rc == 0
        assert json.loads(out)["max_degree"] == 6
        rc, out = capture(["dump", "representation/spin_one"])
        assert rc == 0
        assert json.loads(out)["dim_V"] == 3
        rc, _ = capture(["dump", "bogus"])
        assert rc == 2

    def test_dump_config_round_trip(self):
        rc, out = capture(["dump", "config"])
        assert rc == 0
        config = parse_config(out)
        assert serialize_config(config) == out

    def test_missing_config_file(self):
        import sys

        err = io.StringIO()
        old = sys.stderr
        sys.stderr = err
        try:
            rc, _ = capture(["--config", "/nonexistent.json", "validate"])
        finally:
            sys.stderr = old
        assert rc == 2

    def test_parallel_matches_serial(self):
        _, serial = capture(["--format", "machine", "run-all"])
        _, parallel = capture(["--format", "machine", "--parallel", "run-all"])
        assert serial == parallel


def test_suite_names_cover_all_pipelines():
    assert set(SUITE_NAMES) == {
        "bch-identity", "pbw-confluence", "radius", "recursion", "positivity",
        "gns", "local-hom", "kernel", "cauchy", "extension",
    }
