"""Function-spec parsing, builtins, and engine capability flags."""

import json
from fractions import Fraction

import numpy as np
import pytest

from ordinfluence import (
    BUILTIN_NAMES,
    ConfigurationError,
    DomainError,
    SpecFileError,
    influence_profile,
    influence_value,
    parse_spec_document,
    parse_spec_file,
    resolve_builtin,
    resolve_method,
)
from ordinfluence.funcspec import (
    MultiplicativeFunctionSpec,
    OrderStatPolynomialSpec,
    PowerProductSpec,
    RawEvaluatorSpec,
    SetFunctionSpec,
)


class TestParsing:
    def test_orderstat_polynomial(self):
        doc = {"kind": "orderstat-polynomial", "arity": 2,
               "terms": [{"coefficient": "1", "exponents": {"1": 1, "2": 1}}]}
        spec = parse_spec_document(doc)
        assert isinstance(spec, OrderStatPolynomialSpec)
        assert influence_value(spec, 1, "exact") == Fraction(4, 5)

    def test_plain_polynomial_symmetrizes(self):
        doc = {"kind": "plain-polynomial", "arity": 2,
               "terms": [{"coefficient": 1, "exponents": {"1": 1}}],
               "constant": "1/3"}
        spec = parse_spec_document(doc)
        # f = x_1 + 1/3: profile (1/2, 1/2)
        assert influence_value(spec, 1, "exact") == Fraction(1, 2)
        assert influence_value(spec, 2, "exact") == Fraction(1, 2)

    def test_set_function_bitmask_order(self):
        doc = {"kind": "set-function", "arity": 2,
               "values": ["0", "1", "0", "1"]}
        # bit 0 <-> element 1, so v({1}) = 1, v({2}) = 0: f(x) depends on x_1
        spec = parse_spec_document(doc)
        assert isinstance(spec, SetFunctionSpec)
        assert spec.set_function.value({1}) == 1
        assert spec.set_function.value({2}) == 0
        assert influence_value(spec, 1, "exact") == Fraction(1, 2)

    def test_set_function_wrong_length(self):
        with pytest.raises(SpecFileError):
            parse_spec_document({"kind": "set-function", "arity": 2,
                                 "values": ["0", "1", "0"]})

    def test_multiplicative(self):
        doc = {"kind": "multiplicative", "arity": 2,
               "factors": [{"exponent": 1}, {"exponent": 1}]}
        spec = parse_spec_document(doc)
        assert isinstance(spec, MultiplicativeFunctionSpec)
        assert influence_value(spec, 1, "closed-form") == pytest.approx(0.8)

    def test_power_product(self):
        spec = parse_spec_document({"kind": "power-product", "arity": 3,
                                    "exponent": "1/3"})
        assert isinstance(spec, PowerProductSpec)
        assert spec.exponent == Fraction(1, 3)

    def test_power_product_bad_exponent(self):
        with pytest.raises(SpecFileError):
            parse_spec_document({"kind": "power-product", "arity": 2,
                                 "exponent": "-1/2"})

    def test_unknown_kind(self):
        with pytest.raises(SpecFileError) as err:
            parse_spec_document({"kind": "fourier", "arity": 2})
        assert err.value.location == "kind"

    def test_missing_arity(self):
        with pytest.raises(SpecFileError):
            parse_spec_document({"kind": "power-product", "exponent": 1})

    def test_bad_rational(self):
        with pytest.raises(SpecFileError):
            parse_spec_document({"kind": "set-function", "arity": 1,
                                 "values": ["x", "1"]})

    def test_file_round_trip(self, tmp_path):
        doc = {"kind": "set-function", "arity": 2,
               "values": ["0", "1/2", "1/2", "1"]}
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(doc))
        spec = parse_spec_file(str(path))
        assert spec.describe()["values"] == doc["values"]

    def test_missing_file(self):
        with pytest.raises(SpecFileError):
            parse_spec_file("/nonexistent/spec.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(SpecFileError):
            parse_spec_file(str(path))


class TestBuiltins:
    def test_all_names_resolve(self):
        for name in BUILTIN_NAMES:
            arity = 2 if name == "conjunctive-example-6.1" else 3
            spec = resolve_builtin(name, arity)
            assert spec.arity == arity

    def test_variance(self):
        spec = resolve_builtin("variance", 2)
        assert influence_value(spec, 1, "exact") == Fraction(-1, 5)
        assert influence_value(spec, 2, "exact") == Fraction(1, 5)

    def test_arithmetic_mean(self):
        spec = resolve_builtin("arithmetic-mean", 4)
        profile = influence_profile(spec, "exact")
        assert profile.indices == (Fraction(1, 4),) * 4

    def test_geometric_mean_is_power_product(self):
        spec = resolve_builtin("geometric-mean", 3)
        assert isinstance(spec, PowerProductSpec)
        assert spec.exponent == Fraction(1, 3)

    def test_min_max_median(self):
        assert influence_value(resolve_builtin("min", 3), 1, "exact") == 1
        assert influence_value(resolve_builtin("max", 3), 3, "exact") == 1
        med_odd = resolve_builtin("median", 3)
        assert influence_value(med_odd, 2, "exact") == 1
        med_even = resolve_builtin("median", 4)
        assert influence_value(med_even, 2, "exact") == Fraction(1, 2)
        assert influence_value(med_even, 3, "exact") == Fraction(1, 2)

    def test_product(self):
        spec = resolve_builtin("product", 2)
        assert influence_value(spec, 1, "exact") == Fraction(4, 5)

    def test_conjunctive_is_mc_only(self):
        spec = resolve_builtin("conjunctive-example-6.1", 2)
        assert isinstance(spec, RawEvaluatorSpec)
        assert spec.methods == ("mc",)
        with pytest.raises(ConfigurationError):
            resolve_method(spec, "exact")

    def test_conjunctive_values(self):
        spec = resolve_builtin("conjunctive-example-6.1", 2)
        f = spec.evaluator()
        x = np.array([[0.5, 0.5], [0.8, 0.1], [0.8, 0.5], [0.9, 0.9]])
        assert f(x) == pytest.approx([0.0, 0.1, 0.25, 0.25])

    def test_conjunctive_arity_restriction(self):
        with pytest.raises(DomainError):
            resolve_builtin("conjunctive-example-6.1", 3)

    def test_unknown_builtin(self):
        with pytest.raises(SpecFileError):
            resolve_builtin("entropy", 2)


class TestMethodResolution:
    def test_auto_preference(self):
        assert resolve_method(resolve_builtin("min", 3), "auto") == "exact"
        assert resolve_method(resolve_builtin("geometric-mean", 3),
                              "auto") == "closed-form"
        assert resolve_method(resolve_builtin("conjunctive-example-6.1", 2),
                              "auto") == "mc"

    def test_incompatible(self):
        with pytest.raises(ConfigurationError):
            resolve_method(resolve_builtin("geometric-mean", 3), "exact")

    def test_unknown_method(self):
        with pytest.raises(ConfigurationError):
            resolve_method(resolve_builtin("min", 3), "quantum")

    def test_every_spec_supports_mc(self):
        docs = [
            {"kind": "orderstat-polynomial", "arity": 2,
             "terms": [{"coefficient": 1, "exponents": {"1": 1}}]},
            {"kind": "plain-polynomial", "arity": 2,
             "terms": [{"coefficient": 1, "exponents": {"1": 1}}]},
            {"kind": "set-function", "arity": 2, "values": [0, 0, 0, 1]},
            {"kind": "multiplicative", "arity": 2,
             "factors": [{"exponent": 1}, {"exponent": 2}]},
            {"kind": "power-product", "arity": 2, "exponent": 1},
        ]
        for doc in docs:
            spec = parse_spec_document(doc)
            assert "mc" in spec.methods
            est = influence_value(spec, 1, "mc", samples=5000, seed=1)
            assert np.isfinite(est.value)
