"""
Tests for the command-line front end and the command families.
"""

import json

import pytest

from cvlab import cli
from cvlab.commands import TOOLS
from cvlab.config import get_config
from cvlab.convex import ConeSpec, functions_equal
from cvlab.errors import PreconditionError, SupportError
from cvlab.geometry import Polyhedron
from cvlab.hessian import PiecewisePolyDensity
from cvlab.serialization import function_from_json, polyhedron_from_json, valuation_to_json
from cvlab.valuations import TopDegreeValuation

ABS_JSON = {"n": 1, "pieces": [{"y": ["1"], "c": "0"}, {"y": ["-1"], "c": "0"}]}
BOX_JSON = {"n": 1, "pieces": [{"y": ["0"], "c": "0"}], "domain": {"dim": 1, "vertices": [["-1"], ["1"]]}}
CVLAB_KEYS = ("CVLAB_MODE", "CVLAB_MAX_DIM", "CVLAB_WORKERS", "CVLAB_SEED", "CVLAB_LOG_LEVEL", "CVLAB_PROGRESS")


class TestTools:
    """Test suite for the command families without the argument parser."""

    def test_registry(self):
        assert set(TOOLS) == {"fn", "body", "dual", "measure", "val", "suite"}
        assert all(tool.description for tool in TOOLS.values())

    def test_fn_eval(self):
        result = TOOLS["fn"].run({"action": "eval", "inputs": [ABS_JSON], "options": {"point": "-3/2"}})
        assert result == {"value": "3/2"}

    def test_min_that_is_not_convex(self):
        left = {"n": 1, "pieces": [{"y": ["1"], "c": "0"}]}
        right = {"n": 1, "pieces": [{"y": ["-1"], "c": "0"}]}
        assert TOOLS["fn"].run({"action": "min", "inputs": [left, right]}) == {"result": "not convex"}

    def test_unknown_action_and_missing_option(self):
        with pytest.raises(PreconditionError):
            TOOLS["fn"].run({"action": "fold", "inputs": [ABS_JSON]})
        with pytest.raises(PreconditionError):
            TOOLS["fn"].run({"action": "eval", "inputs": [ABS_JSON]})
        with pytest.raises(PreconditionError):
            TOOLS["fn"].run({"action": "add", "inputs": [ABS_JSON]})

    def test_dual_infconv(self):
        result = TOOLS["dual"].run({"action": "infconv", "inputs": [ABS_JSON, BOX_JSON]})
        distance = function_from_json(result["function"])
        assert distance([3]) == 2
        assert distance([0]) == 0

    def test_measure_theta0(self):
        region = {"dim": 1, "vertices": [["-1"], ["1"]]}
        result = TOOLS["measure"].run({"action": "theta0", "inputs": [ABS_JSON, region]})
        assert result["mass"] == "2"

    def test_val_make_and_fit(self):
        B = {"dim": 1, "vertices": [["-1"], ["1"]]}
        made = TOOLS["val"].run({"action": "make", "inputs": [B], "options": {"kind": "dirichlet"}})
        fit = TOOLS["val"].run({"action": "fit", "inputs": [made["valuation"], ABS_JSON]})
        assert fit["exact"] and not fit["falsified"]
        assert fit["variables"] == ["y1", "c"]
        assert fit["coefficients"] == {"0,0": ["2"], "2,0": ["2"]}

    def test_val_extend_from_probes(self):
        Z = valuation_to_json(TopDegreeValuation(PiecewisePolyDensity.tent([0], 1), ConeSpec.full(1)))
        cone = {"n": 1, "A": "all", "O": {"dim": 1, "vertices": [["-2"], ["2"]]}}
        f = {"n": 1, "pieces": ABS_JSON["pieces"], "domain": {"dim": 1, "vertices": [["-2"], ["2"]]}}
        options = {"centers": "-2;0;2", "delta": "1/2", "eps": "1/4"}
        result = TOOLS["val"].run({"action": "extend", "inputs": [Z, cone, f], "options": options})
        # only the probe at 0 is flagged; its cell [-1/2, 1/2] widened by one cell
        assert polyhedron_from_json(result["region"]).same_set(Polyhedron.box(["-3/2"], ["3/2"]))
        assert result["value"] == ["2"]
        assert result["valuation"]["kind"] == "extended"

    def test_val_extend_without_flagged_probes(self):
        Z = valuation_to_json(TopDegreeValuation(PiecewisePolyDensity.tent([0], 1), ConeSpec.full(1)))
        cone = {"n": 1, "A": "all", "O": {"dim": 1, "vertices": [["-4"], ["4"]]}}
        options = {"centers": "-3;3", "delta": "1/2", "eps": "1/4"}
        with pytest.raises(SupportError):
            TOOLS["val"].run({"action": "extend", "inputs": [Z, cone], "options": options})

    def test_suite_list(self):
        suites = TOOLS["suite"].run({"action": "list"})["suites"]
        assert "hessian" in suites and suites[-1] == "all"


class TestMain:
    """Test suite for the cvlab entry point."""

    @pytest.fixture(autouse=True)
    def setUp(self, tmp_path, monkeypatch, capsys):
        """Set up test fixtures."""
        # no .env files and no CVLAB_* variables
        monkeypatch.chdir(tmp_path)
        for key in CVLAB_KEYS:
            monkeypatch.setenv(key, "")
            monkeypatch.delenv(key)
        self.tmp_path = tmp_path
        self.monkeypatch = monkeypatch
        self.capsys = capsys

    def write(self, name, data):
        path = self.tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
        return str(path)

    def run(self, *argv):
        code = cli.main(list(argv))
        captured = self.capsys.readouterr()
        return code, captured.out, captured.err

    def test_conjugate_abs(self):
        code, out, _ = self.run("fn", "conj", self.write("abs.json", ABS_JSON))
        assert code == cli.EXIT_OK
        result = json.loads(out)
        assert result["schema"] == "cvlab/1"
        assert result["mode"] == "rational"
        assert functions_equal(function_from_json(result["function"]), function_from_json(BOX_JSON))

    def test_eval_at_infinity(self):
        code, out, _ = self.run("fn", "eval", self.write("box.json", BOX_JSON), "--point", "2")
        assert code == cli.EXIT_OK
        assert json.loads(out)["value"] == "+inf"

    def test_malformed_json(self):
        code, _, err = self.run("fn", "conj", self.write("bad.json", "{not json"))
        assert code == cli.EXIT_MALFORMED
        assert json.loads(err.strip().splitlines()[-1])["error"] == "malformed input"

    def test_schema_violation(self):
        code, _, _ = self.run("fn", "conj", self.write("partial.json", {"n": 1}))
        assert code == cli.EXIT_MALFORMED

    def test_missing_file(self):
        code, _, _ = self.run("fn", "conj", str(self.tmp_path / "missing.json"))
        assert code == cli.EXIT_MALFORMED

    def test_valuation_without_parameters(self):
        Z = self.write("Z.json", {"kind": "dirichlet", "params": {}})
        code, _, err = self.run("val", "eval", Z, self.write("abs.json", ABS_JSON))
        assert code == cli.EXIT_MALFORMED
        payload = json.loads(err.strip().splitlines()[-1])
        assert payload["error"] == "malformed input"
        assert payload["details"] == {"kind": "dirichlet"}

    def test_internal_key_error_is_unexpected(self):
        def explode(name, trials):
            raise KeyError("criteria")

        self.monkeypatch.setattr("cvlab.commands.suite.run_suite", explode)
        code, _, _ = self.run("suite", "run", "hessian")
        assert code == cli.EXIT_UNEXPECTED

    def test_precondition(self):
        code, _, err = self.run("fn", "eval", self.write("abs.json", ABS_JSON))
        assert code == cli.EXIT_PRECONDITION
        payload = json.loads(err.strip().splitlines()[-1])
        assert payload["error"] == "usage"

    def test_invalid_scale_factor(self):
        code, _, _ = self.run("fn", "scale", self.write("abs.json", ABS_JSON), "--factor", "-1")
        assert code == cli.EXIT_PRECONDITION

    def test_float_distance(self):
        shifted = {"n": 1, "pieces": [{"y": ["1"], "c": "1/4"}, {"y": ["-1"], "c": "1/4"}]}
        code, out, _ = self.run(
            "dual", "dist", self.write("abs.json", ABS_JSON), self.write("shifted.json", shifted), "--rho", "10"
        )
        assert code == cli.EXIT_OK
        result = json.loads(out)
        assert result["float"] is True
        assert float(result["distance"]) == pytest.approx(0.25)

    def test_flags_reach_the_config(self):
        code, out, _ = self.run("suite", "list", "--mode", "float", "--seed", "11", "--workers", "2")
        assert code == cli.EXIT_OK
        assert json.loads(out)["mode"] == "float"
        config = get_config()
        assert (config.seed, config.workers) == (11, 2)

    def test_environment_mode_wins(self):
        self.monkeypatch.setenv("CVLAB_MODE", "rational")
        code, out, _ = self.run("suite", "list", "--mode", "float")
        assert code == cli.EXIT_OK
        assert json.loads(out)["mode"] == "rational"

    def test_suite_run(self):
        code, out, _ = self.run("suite", "run", "uniqueness")
        assert code == cli.EXIT_OK
        result = json.loads(out)
        assert result["passed"] and not result["falsified"]
        assert {c["id"] for c in result["criteria"]} == {"uniqueness-n1-d1", "uniqueness-n2-d0"}

    def test_unknown_suite(self):
        code, _, _ = self.run("suite", "run", "nonsense")
        assert code == cli.EXIT_PRECONDITION

    def test_falsified_result(self):
        self.monkeypatch.setattr(
            "cvlab.commands.suite.run_suite", lambda name, trials: {"suite": name, "passed": False, "falsified": True}
        )
        code, out, _ = self.run("suite", "run", "hessian")
        assert code == cli.EXIT_FALSIFIED
        assert json.loads(out)["falsified"] is True

    def test_unexpected_failure(self):
        def explode(name, trials):
            raise RuntimeError("boom")

        self.monkeypatch.setattr("cvlab.commands.suite.run_suite", explode)
        code, _, err = self.run("suite", "run", "hessian")
        assert code == cli.EXIT_UNEXPECTED
        assert "boom" in err

    def test_unknown_family(self):
        with pytest.raises(SystemExit):
            cli.main(["paint", "conj"])
