"""CLI contract tests: exit codes, output formats, and report round trips."""

import json

import numpy as np
import pytest

from ordinfluence import Evaluator, cli
from ordinfluence.funcspec import RawEvaluatorSpec
from ordinfluence.report import ReportDocument


def write_spec(tmp_path, doc, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


PRODUCT_DOC = {"kind": "orderstat-polynomial", "arity": 2,
               "terms": [{"coefficient": 1, "exponents": {"1": 1, "2": 1}}]}
MEAN_DOC = {"kind": "set-function", "arity": 3,
            "values": ["0", "1/3", "1/3", "2/3", "1/3", "2/3", "2/3", "1"]}


class TestExitCodes:
    def test_success(self, tmp_path, capsys):
        path = write_spec(tmp_path, PRODUCT_DOC)
        assert cli.main(["influence", path, "--all"]) == 0
        out = capsys.readouterr().out
        assert "4/5" in out and "1/5" in out

    def test_invalid_spec_exits_2(self, tmp_path, capsys):
        path = write_spec(tmp_path, {"kind": "nope", "arity": 2})
        assert cli.main(["influence", path, "-k", "1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_unreadable_file_exits_2(self):
        assert cli.main(["influence", "/no/such/file.json", "-k", "1"]) == 2

    def test_incompatible_method_exits_3(self, tmp_path):
        path = write_spec(tmp_path, {"kind": "power-product", "arity": 2,
                                     "exponent": 1})
        assert cli.main(["influence", path, "-k", "1", "--method", "exact"]) == 3

    def test_lovasz_wrong_kind_exits_3(self, tmp_path):
        path = write_spec(tmp_path, PRODUCT_DOC)
        assert cli.main(["lovasz", path]) == 3

    def test_rank_out_of_range_exits_3(self, tmp_path):
        path = write_spec(tmp_path, PRODUCT_DOC)
        assert cli.main(["influence", path, "-k", "9"]) == 3

    def test_tainted_mc_exits_4(self, tmp_path, monkeypatch):
        path = write_spec(tmp_path, PRODUCT_DOC)
        bad = RawEvaluatorSpec(Evaluator(2, lambda x: np.full(len(x), np.nan),
                                         name="nan"))
        monkeypatch.setattr(cli, "parse_spec_file", lambda _: bad)
        assert cli.main(["influence", path, "-k", "1", "--method", "mc",
                         "--samples", "1000"]) == 4

    def test_crosscheck_agreement_exits_0(self, tmp_path, capsys):
        path = write_spec(tmp_path, PRODUCT_DOC)
        code = cli.main(["crosscheck", path, "-k", "1",
                         "--samples", "40000", "--seed", "12"])
        assert code == 0
        assert "max_z" in capsys.readouterr().out

    def test_crosscheck_disagreement_exits_5(self, tmp_path, capsys,
                                             monkeypatch):
        path = write_spec(tmp_path, PRODUCT_DOC)
        from ordinfluence.montecarlo import IntegrationEstimate

        def biased(f, k, samples, seed):
            return IntegrationEstimate(5.0, 1e-6, samples, seed, "covariance")

        monkeypatch.setattr(cli, "influence_mc_covariance", biased)
        code = cli.main(["crosscheck", path, "-k", "1", "--samples", "5000",
                         "--estimators",
                         "covariance,diff-quotient-triangular"])
        assert code == 5
        # the table is still emitted
        assert "z_scores" in capsys.readouterr().out

    def test_unknown_estimator_exits_3(self, tmp_path):
        path = write_spec(tmp_path, PRODUCT_DOC)
        assert cli.main(["crosscheck", path, "-k", "1",
                         "--estimators", "bootstrap"]) == 3

    def test_degenerate_variance_warns_exit_0(self, tmp_path, capsys):
        doc = {"kind": "orderstat-polynomial", "arity": 2, "constant": "2",
               "terms": []}
        path = write_spec(tmp_path, doc)
        assert cli.main(["approx", path]) == 0
        assert "degenerate" in capsys.readouterr().out


class TestFormats:
    def test_json_round_trip(self, tmp_path, capsys):
        path = write_spec(tmp_path, MEAN_DOC)
        assert cli.main(["approx", path, "--format", "json"]) == 0
        text = capsys.readouterr().out
        doc = ReportDocument.from_json(text)
        assert doc.to_json() + "\n" == text
        assert doc.command == "approx"

    def test_exact_decimal_matches_rational(self, tmp_path, capsys):
        path = write_spec(tmp_path, PRODUCT_DOC)
        cli.main(["influence", path, "--all", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        from fractions import Fraction
        for row in doc["results"]:
            assert row["rational"] is not None
            exact = float(Fraction(row["rational"]))
            assert "%.15g" % row["value"] == "%.15g" % exact

    def test_csv(self, tmp_path, capsys):
        path = write_spec(tmp_path, PRODUCT_DOC)
        cli.main(["influence", path, "--all", "--format", "csv"])
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "k,value,rational,se,method"
        assert lines[1].startswith("1,0.8,4/5")

    def test_mc_rows_carry_se_and_seed(self, tmp_path, capsys):
        path = write_spec(tmp_path, {"kind": "builtin", "arity": 2,
                                     "name": "conjunctive-example-6.1"})
        cli.main(["influence", path, "-k", "1", "--samples", "5000",
                  "--seed", "17", "--format", "json"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["seed"] == 17
        assert doc["requested"]["samples"] == 5000
        assert doc["results"][0]["se"] > 0


class TestLovaszCommand:
    def test_diagnostics(self, tmp_path, capsys):
        path = write_spec(tmp_path, MEAN_DOC)
        assert cli.main(["lovasz", path, "--diagnose-equal-influence",
                         "--mobius", "--symmetric-part",
                         "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["extras"]["equal_influence"]["equal"] is True
        assert doc["extras"]["mobius"][0] == "0"
        assert doc["extras"]["symmetric_part"]["slopes"] == ["1/3"] * 3

    def test_min_capacity_not_equal(self, tmp_path, capsys):
        doc = {"kind": "set-function", "arity": 3,
               "values": ["0"] * 7 + ["1"]}
        path = write_spec(tmp_path, doc)
        cli.main(["lovasz", path, "--diagnose-equal-influence",
                  "--format", "json"])
        report = json.loads(capsys.readouterr().out)
        diagnosis = report["extras"]["equal_influence"]
        assert diagnosis["equal"] is False
        assert diagnosis["first_violations"]


class TestEnvironment:
    def test_env_seed_default(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("ORDINFLUENCE_SEED", "99")
        path = write_spec(tmp_path, PRODUCT_DOC)
        cli.main(["influence", path, "-k", "1", "--method", "mc",
                  "--samples", "2000", "--format", "json"])
        assert json.loads(capsys.readouterr().out)["seed"] == 99

    def test_explicit_seed_wins(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("ORDINFLUENCE_SEED", "99")
        path = write_spec(tmp_path, PRODUCT_DOC)
        cli.main(["influence", path, "-k", "1", "--method", "mc",
                  "--samples", "2000", "--seed", "7", "--format", "json"])
        assert json.loads(capsys.readouterr().out)["seed"] == 7

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--version"])
        assert exc.value.code == 0
        import ordinfluence
        assert ordinfluence.__version__ in capsys.readouterr().out
