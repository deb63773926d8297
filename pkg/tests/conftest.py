"""Shared randomized-case generators for the test suite.

Everything draws from an explicitly seeded generator so failures are
reproducible; the exact modules consume Fractions only.
"""

import random
from fractions import Fraction

import numpy as np
import pytest

from ordinfluence import Evaluator, SetFunction, monomial, polynomial


def random_fraction(rng, lo=-4, hi=4, den=6):
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_orderstat_polynomial(rng, n, max_terms=3, max_degree=3):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        slots = rng.sample(range(1, n + 1), rng.randint(1, min(n, 2)))
        exps = {s: rng.randint(1, max_degree) for s in slots}
        terms.append(monomial(n, exps, random_fraction(rng)))
    return polynomial(n, terms, random_fraction(rng))


def random_plain_terms(rng, n, max_terms=3, max_degree=2):
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        variables = rng.sample(range(1, n + 1), rng.randint(1, min(n, 2)))
        exps = {v: rng.randint(1, max_degree) for v in variables}
        terms.append((random_fraction(rng), exps))
    return terms


def random_set_function(rng, n, zero_grounded=True):
    values = [random_fraction(rng, 0, 3) for _ in range(1 << n)]
    if zero_grounded:
        values[0] = Fraction(0)
    return SetFunction(n, tuple(values))


def poly_evaluator(poly):
    """Vectorized black-box evaluator for an exact order-stat polynomial."""
    terms = [(float(t.coefficient), t.exponents) for t in poly.terms]
    constant = float(poly.constant)

    def func(x):
        xs = np.sort(np.asarray(x, dtype=float), axis=1)
        out = np.full(len(xs), constant)
        for coeff, exps in terms:
            part = np.full(len(xs), coeff)
            for slot, exp in exps:
                part *= xs[:, slot - 1] ** exp
            out += part
        return out

    return Evaluator(poly.arity, func, name="test-poly")


@pytest.fixture
def rng():
    return random.Random(20260823)
