"""Function specifications: the tagged union of analyzable function classes.

A spec declares exactly one function on the unit cube and knows which engines
can handle it (exact rational, closed form, Monte-Carlo).  Specs can be built
programmatically or parsed from a JSON document, see ``parse_spec_file``.

Set-function payloads are listed in bitmask order with bit i-1 standing for
element i of [n].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from . import backends
from .closedforms import MultiplicativeSpec, UnaryFactor, variance_plain_terms
from .errors import ConfigurationError, DomainError, SpecFileError
from .exact import OrderStatPolynomial, as_rational, monomial, os_function, \
    polynomial, symmetrize
from .lovasz import SetFunction
from .montecarlo import Evaluator

EXACT, CLOSED_FORM, MC = "exact", "closed-form", "mc"


class FunctionSpec:
    """Base class; concrete specs define kind, arity and capabilities."""

    kind = "abstract"
    builtin_name: Optional[str] = None

    @property
    def methods(self) -> Tuple[str, ...]:
        raise NotImplementedError

    def to_orderstat_polynomial(self) -> OrderStatPolynomial:
        raise ConfigurationError("%s specs have no exact polynomial form"
                                 % self.kind)

    def evaluator(self) -> Evaluator:
        raise NotImplementedError

    def payload(self) -> dict:
        raise NotImplementedError

    def describe(self) -> dict:
        doc = {"kind": self.kind, "arity": self.arity}
        doc.update(self.payload())
        if self.builtin_name:
            doc["builtin"] = self.builtin_name
        return doc


def _rational_str(value) -> str:
    return str(as_rational(value))


@dataclass
class OrderStatPolynomialSpec(FunctionSpec):
    poly: OrderStatPolynomial
    builtin_name: Optional[str] = None
    kind = "orderstat-polynomial"

    @property
    def arity(self) -> int:
        return self.poly.arity

    @property
    def methods(self):
        return (EXACT, MC)

    def to_orderstat_polynomial(self):
        return self.poly

    def evaluator(self):
        terms = [(float(t.coefficient), t.exponents) for t in self.poly.terms]
        constant = float(self.poly.constant)

        def func(x):
            xs = np.sort(x, axis=1)
            out = np.full(len(x), constant)
            for coeff, exps in terms:
                part = np.full(len(x), coeff)
                for slot, exp in exps:
                    part *= xs[:, slot - 1] ** exp
                out += part
            return out

        return Evaluator(self.arity, func, name=self.builtin_name or self.kind)

    def payload(self):
        return {
            "constant": _rational_str(self.poly.constant),
            "terms": [{"coefficient": _rational_str(t.coefficient),
                       "exponents": {str(slot): exp for slot, exp in t.exponents}}
                      for t in self.poly.terms],
        }


@dataclass
class PlainPolynomialSpec(FunctionSpec):
    arity: int
    terms: list  # [(Fraction, {var: exp})]
    constant: Fraction = Fraction(0)
    builtin_name: Optional[str] = None
    kind = "plain-polynomial"

    @property
    def methods(self):
        return (EXACT, MC)

    def to_orderstat_polynomial(self):
        return symmetrize(self.arity, self.terms, self.constant)

    def evaluator(self):
        terms = [(float(c), [(int(v), int(e)) for v, e in exps.items()])
                 for c, exps in self.terms]
        constant = float(self.constant)

        def func(x):
            out = np.full(len(x), constant)
            for coeff, exps in terms:
                part = np.full(len(x), coeff)
                for var, exp in exps:
                    part *= x[:, var - 1] ** exp
                out += part
            return out

        return Evaluator(self.arity, func, name=self.builtin_name or self.kind)

    def payload(self):
        return {
            "constant": _rational_str(self.constant),
            "terms": [{"coefficient": _rational_str(c),
                       "exponents": {str(v): int(e) for v, e in exps.items()}}
                      for c, exps in self.terms],
        }


@dataclass
class SetFunctionSpec(FunctionSpec):
    set_function: SetFunction
    builtin_name: Optional[str] = None
    kind = "set-function"

    @property
    def arity(self) -> int:
        return self.set_function.arity

    @property
    def methods(self):
        return (EXACT, MC)

    def evaluator(self):
        values = np.array([float(v) for v in self.set_function.values])

        def func(x):
            return backends.lovasz_eval_batch(values, np.asarray(x, dtype=float))

        def derivative(x, k):
            return backends.lovasz_slope_batch(values, np.asarray(x, dtype=float), k)

        return Evaluator(self.arity, func, derivative,
                         name=self.builtin_name or self.kind)

    def payload(self):
        return {"values": [_rational_str(v) for v in self.set_function.values]}


@dataclass
class MultiplicativeFunctionSpec(FunctionSpec):
    spec: MultiplicativeSpec
    builtin_name: Optional[str] = None
    kind = "multiplicative"

    @property
    def arity(self) -> int:
        return self.spec.arity

    @property
    def methods(self):
        return (CLOSED_FORM, MC)

    def evaluator(self):
        spec = self.spec
        return Evaluator(self.arity, spec.evaluate,
                         name=self.builtin_name or self.kind)

    def payload(self):
        factors = []
        for f in self.spec.factors:
            if f.is_symbolic:
                factors.append({"exponent": _rational_str(f.exponent)})
            else:
                factors.append({"callable": repr(f.phi)})
        return {"factors": factors}


@dataclass
class PowerProductSpec(FunctionSpec):
    arity: int
    exponent: Fraction
    builtin_name: Optional[str] = None
    kind = "power-product"

    def __post_init__(self):
        self.exponent = as_rational(self.exponent)
        if self.exponent <= Fraction(-1, 2):
            raise DomainError("exponent must exceed -1/2")

    @property
    def methods(self):
        return (CLOSED_FORM, MC)

    def evaluator(self):
        c = float(self.exponent)
        n = self.arity

        def func(x):
            return np.prod(x, axis=1) ** c

        def derivative(x, k):
            # d/dx_{pi(k)} prod x_i^c = c f(x) / x_{pi(k)}
            order = np.argsort(x, axis=1, kind="stable")
            col = order[:, k - 1]
            mid = x[np.arange(len(x)), col]
            return c * func(x) / mid

        return Evaluator(n, func, derivative,
                         name=self.builtin_name or self.kind)

    def payload(self):
        return {"exponent": _rational_str(self.exponent)}


@dataclass
class RawEvaluatorSpec(FunctionSpec):
    """Black-box evaluator; Monte-Carlo only.  Not representable in a file."""

    raw: Evaluator
    builtin_name: Optional[str] = None
    kind = "builtin"

    @property
    def arity(self) -> int:
        return self.raw.arity

    @property
    def methods(self):
        return (MC,)

    def evaluator(self):
        return self.raw

    def payload(self):
        return {"name": self.builtin_name or self.raw.name}


# ---------------------------------------------------------------------------
# Builtins
# ---------------------------------------------------------------------------

def _conjunctive_threshold(x):
    # 0 below the 3/4 threshold on the largest input, else min capped at 1/4
    x = np.asarray(x, dtype=float)
    return np.where(np.maximum(x[:, 0], x[:, 1]) < 0.75, 0.0,
                    np.minimum(np.minimum(x[:, 0], x[:, 1]), 0.25))


def _arithmetic_mean_set_function(n: int) -> SetFunction:
    return SetFunction(n, tuple(Fraction(bin(mask).count("1"), n)
                                for mask in range(1 << n)))


BUILTIN_NAMES = ("variance", "arithmetic-mean", "geometric-mean", "product",
                 "min", "max", "median", "conjunctive-example-6.1")


def resolve_builtin(name: str, arity: int) -> FunctionSpec:
    n = arity
    if n < 1:
        raise DomainError("arity must be >= 1")
    if name == "variance":
        if n < 2:
            raise DomainError("variance needs arity >= 2")
        return PlainPolynomialSpec(n, variance_plain_terms(n),
                                   builtin_name=name)
    if name == "arithmetic-mean":
        return SetFunctionSpec(_arithmetic_mean_set_function(n),
                               builtin_name=name)
    if name == "geometric-mean":
        return PowerProductSpec(n, Fraction(1, n), builtin_name=name)
    if name == "product":
        terms = [(Fraction(1), {i: 1 for i in range(1, n + 1)})]
        return PlainPolynomialSpec(n, terms, builtin_name=name)
    if name == "min":
        return OrderStatPolynomialSpec(os_function(n, 1), builtin_name=name)
    if name == "max":
        return OrderStatPolynomialSpec(os_function(n, n), builtin_name=name)
    if name == "median":
        if n % 2:
            poly = os_function(n, (n + 1) // 2)
        else:
            poly = Fraction(1, 2) * (os_function(n, n // 2)
                                     + os_function(n, n // 2 + 1))
        return OrderStatPolynomialSpec(poly, builtin_name=name)
    if name in ("conjunctive-example-6.1", "conjunctive-threshold"):
        if n != 2:
            raise DomainError("the conjunctive threshold builtin is binary")
        return RawEvaluatorSpec(Evaluator(2, _conjunctive_threshold,
                                          name=name), builtin_name=name)
    raise SpecFileError("unknown builtin %r; known: %s"
                        % (name, ", ".join(BUILTIN_NAMES)), location="name")


# ---------------------------------------------------------------------------
# JSON spec files
# ---------------------------------------------------------------------------

def _require(doc: dict, key: str, location: str):
    if key not in doc:
        raise SpecFileError("missing required field %r" % key, location)
    return doc[key]


def _parse_rational(value, location: str) -> Fraction:
    try:
        return as_rational(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise SpecFileError("cannot parse rational from %r" % (value,), location)


def _parse_terms(raw, arity: int, location: str, slot_bound: int):
    terms = []
    for i, term in enumerate(raw):
        loc = "%s[%d]" % (location, i)
        if not isinstance(term, dict):
            raise SpecFileError("term must be an object", loc)
        coeff = _parse_rational(_require(term, "coefficient", loc), loc)
        exps = {}
        for key, exp in _require(term, "exponents", loc).items():
            try:
                idx = int(key)
            except ValueError:
                raise SpecFileError("bad index %r" % key, loc)
            if not 1 <= idx <= slot_bound:
                raise SpecFileError("index %d outside [1, %d]"
                                    % (idx, slot_bound), loc)
            if not isinstance(exp, int) or exp < 1:
                raise SpecFileError("exponent must be a positive integer", loc)
            exps[idx] = exp
        terms.append((coeff, exps))
    return terms


def parse_spec_document(doc: dict) -> FunctionSpec:
    """Build a FunctionSpec from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise SpecFileError("spec document must be a JSON object", "$")
    kind = _require(doc, "kind", "$")
    arity = _require(doc, "arity", "$")
    if not isinstance(arity, int) or arity < 1:
        raise SpecFileError("arity must be a positive integer", "arity")

    if kind == "orderstat-polynomial":
        terms = _parse_terms(doc.get("terms", []), arity, "terms", arity)
        constant = _parse_rational(doc.get("constant", 0), "constant")
        mono_terms = [monomial(arity, exps, coeff) for coeff, exps in terms]
        return OrderStatPolynomialSpec(polynomial(arity, mono_terms, constant))
    if kind == "plain-polynomial":
        terms = _parse_terms(doc.get("terms", []), arity, "terms", arity)
        constant = _parse_rational(doc.get("constant", 0), "constant")
        return PlainPolynomialSpec(arity, terms, constant)
    if kind == "set-function":
        values = _require(doc, "values", "values")
        if not isinstance(values, list) or len(values) != 1 << arity:
            raise SpecFileError("set-function payload needs exactly %d values"
                                % (1 << arity), "values")
        rationals = [_parse_rational(v, "values[%d]" % i)
                     for i, v in enumerate(values)]
        return SetFunctionSpec(SetFunction(arity, tuple(rationals)))
    if kind == "multiplicative":
        raw_factors = _require(doc, "factors", "factors")
        if not isinstance(raw_factors, list) or len(raw_factors) != arity:
            raise SpecFileError("multiplicative payload needs exactly %d factors"
                                % arity, "factors")
        factors = []
        for i, rf in enumerate(raw_factors):
            loc = "factors[%d]" % i
            if not isinstance(rf, dict) or "exponent" not in rf:
                raise SpecFileError("factor must declare an exponent", loc)
            c = _parse_rational(rf["exponent"], loc)
            if c <= Fraction(-1, 2):
                raise SpecFileError("factor exponent must exceed -1/2", loc)
            factors.append(UnaryFactor.power(c))
        return MultiplicativeFunctionSpec(MultiplicativeSpec(arity, tuple(factors)))
    if kind == "power-product":
        c = _parse_rational(_require(doc, "exponent", "exponent"), "exponent")
        if c <= Fraction(-1, 2):
            raise SpecFileError("exponent must exceed -1/2", "exponent")
        return PowerProductSpec(arity, c)
    if kind == "builtin":
        name = _require(doc, "name", "name")
        try:
            return resolve_builtin(name, arity)
        except DomainError as exc:
            raise SpecFileError(str(exc), "name")
    raise SpecFileError("unknown kind %r" % (kind,), "kind")


def parse_spec_file(path: str) -> FunctionSpec:
    """Load a function spec from a JSON file."""
    try:
        with open(path) as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SpecFileError("cannot read %s: %s" % (path, exc), path)
    except json.JSONDecodeError as exc:
        raise SpecFileError("invalid JSON: %s" % exc, "%s:%d" % (path, exc.lineno))
    return parse_spec_document(doc)
