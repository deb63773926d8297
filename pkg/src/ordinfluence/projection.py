"""Least-squares machinery on the span of {os_1, ..., os_n, 1}.

Builds the exact Gram system of the order-statistic basis, the covariance
kernels g_k, the influence index I(f,k) = <f, g_k>, the best shifted
L-statistic approximation of f, the normalized index r(f,k) and the
coefficient of determination R^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DegenerateVarianceError, DomainError
from .exact import (
    OrderStatPolynomial,
    inner_product_exact,
    integral,
    os_function,
)


# ---------------------------------------------------------------------------
# Gram system
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GramSystem:
    """Exact (n+1)x(n+1) Gram matrix of (os_1, ..., os_n, 1) and its inverse."""

    arity: int
    matrix: Tuple[Tuple[Fraction, ...], ...]
    inverse: Tuple[Tuple[Fraction, ...], ...]


def gram_system(n: int) -> GramSystem:
    """Gram matrix M with (M)_{ij} = min(i,j)(max(i,j)+1)/((n+1)(n+2)) and its
    exact inverse, which is tridiagonal up to the (n+1)(n+2) scale."""
    if n < 1:
        raise DomainError("arity must be >= 1, got %d" % n)
    denom = (n + 1) * (n + 2)
    size = n + 1
    matrix = tuple(
        tuple(Fraction(min(i, j) * (max(i, j) + 1), denom)
              for j in range(1, size + 1))
        for i in range(1, size + 1))
    inverse = []
    for i in range(1, size + 1):
        row = []
        for j in range(1, size + 1):
            if i == j:
                entry = Fraction(n + 1, n + 2) if i == size else Fraction(2)
            elif abs(i - j) == 1:
                entry = Fraction(-1)
            else:
                entry = Fraction(0)
            row.append(entry * denom)
        inverse.append(tuple(row))
    return GramSystem(n, matrix, tuple(inverse))


def g_basis(n: int, k: int) -> OrderStatPolynomial:
    """Covariance kernel g_k = -(n+1)(n+2)(os_{k+1} - 2 os_k + os_{k-1}),
    with os_0 the zero function and os_{n+1} the constant one."""
    if not 1 <= k <= n:
        raise DomainError("rank %d outside [1, %d]" % (k, n))
    second_diff = os_function(n, k + 1) - 2 * os_function(n, k) + os_function(n, k - 1)
    return -(n + 1) * (n + 2) * second_diff


def h_density(n: int, k: int) -> OrderStatPolynomial:
    """Probability density h_k = (n+1)(n+2)(os_{k+1} - os_k)(os_k - os_{k-1})
    weighting the directional derivative."""
    if not 1 <= k <= n:
        raise DomainError("rank %d outside [1, %d]" % (k, n))
    upper = os_function(n, k + 1) - os_function(n, k)
    lower = os_function(n, k) - os_function(n, k - 1)
    return (n + 1) * (n + 2) * (upper * lower)


# ---------------------------------------------------------------------------
# Influence index, profiles and approximations
# ---------------------------------------------------------------------------

def influence_exact(f: OrderStatPolynomial, k: int) -> Fraction:
    """Exact influence index I(f, k) = <f, g_k>."""
    if not 1 <= k <= f.arity:
        raise DomainError("rank %d outside [1, %d]" % (k, f.arity))
    return inner_product_exact(f, g_basis(f.arity, k))


@dataclass(frozen=True)
class InfluenceProfile:
    """All indices I(f, 1..n), the formal tail coefficient a_{n+1}, and the
    mean of f.  Exact methods carry rationals; Monte-Carlo carries floats with
    per-entry standard errors."""

    arity: int
    indices: tuple
    formal_tail: object
    mean: object
    method: str
    std_errors: Optional[tuple] = None
    tail_std_error: Optional[float] = None
    mean_std_error: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None

    def mean_preservation_gap(self):
        """(1/(n+1)) sum_{k=1}^{n+1} k a_k - <f,1>; zero for exact methods."""
        n = self.arity
        total = sum(k * a for k, a in enumerate(self.indices, start=1))
        total += (n + 1) * self.formal_tail
        return total / (n + 1) - self.mean


def profile_exact(f: OrderStatPolynomial) -> InfluenceProfile:
    """Exact influence profile of a polynomial of order statistics."""
    n = f.arity
    indices = tuple(influence_exact(f, k) for k in range(1, n + 1))
    mean = integral(f)
    tail = ((n + 1) ** 2 * mean
            - (n + 1) * (n + 2) * inner_product_exact(f, os_function(n, n)))
    return InfluenceProfile(n, indices, tail, mean, "exact")


@dataclass(frozen=True)
class ApproximationResult:
    """Best shifted L-statistic approximation of f.

    ``coefficients`` are (a_1, ..., a_{n+1}) in the basis
    (os_1, ..., os_n, 1); the recentered form is
    mean + sum_k I(f,k) (x_{(k)} - k/(n+1)).  Both evaluate identically.
    """

    arity: int
    coefficients: tuple
    mean: object
    r_squared: object
    residual_norm_sq: object
    method: str
    r_squared_std_error: Optional[float] = None
    coefficient_std_errors: Optional[tuple] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    degenerate: bool = False

    @property
    def slopes(self):
        return self.coefficients[:-1]

    @property
    def intercept(self):
        return self.coefficients[-1]

    def evaluate_basis(self, x: Sequence):
        xs = sorted(x)
        value = self.coefficients[-1]
        for k, a in enumerate(self.coefficients[:-1], start=1):
            value = value + a * xs[k - 1]
        return value

    def evaluate_recentered(self, x: Sequence):
        n = self.arity
        xs = sorted(x)
        value = self.mean
        for k, a in enumerate(self.coefficients[:-1], start=1):
            value = value + a * (xs[k - 1] - Fraction(k, n + 1))
        return value


def tail_coefficient(n: int, indices: Sequence, mean) -> object:
    """a_{n+1} from the mean-preservation identity
    (1/(n+1)) sum_{k=1}^{n+1} k a_k = <f, 1>."""
    weighted = sum(k * a for k, a in enumerate(indices, start=1))
    return ((n + 1) * mean - weighted) / (n + 1)


def r_squared_from_coefficients(n: int, coefficients: Sequence, variance):
    """R^2 = a^T (M - c c^T) a / sigma^2(f), with c the last column of M."""
    gram = gram_system(n)
    c = [row[-1] for row in gram.matrix]
    quad = sum(coefficients[i] * gram.matrix[i][j] * coefficients[j]
               for i in range(n + 1) for j in range(n + 1))
    lin = sum(c[i] * coefficients[i] for i in range(n + 1))
    return (quad - lin * lin) / variance


def approximation_from_moments(n: int, indices: Sequence, mean, norm_sq,
                               method: str = "exact") -> ApproximationResult:
    """Assemble an ApproximationResult from the influence indices, the mean
    and <f, f>.  Works for any path that can supply those moments."""
    tail = tail_coefficient(n, indices, mean)
    coefficients = tuple(indices) + (tail,)
    gram = gram_system(n)
    b = [sum(gram.matrix[i][j] * coefficients[j] for j in range(n + 1))
         for i in range(n + 1)]
    residual = norm_sq - sum(bi * ai for bi, ai in zip(b, coefficients))
    variance = norm_sq - mean * mean
    if variance == 0:
        raise DegenerateVarianceError(
            "R^2 is undefined for a constant function")
    r2 = r_squared_from_coefficients(n, coefficients, variance)
    return ApproximationResult(n, coefficients, mean, r2, residual, method)


def approximation_exact(f: OrderStatPolynomial) -> ApproximationResult:
    """Best shifted L-statistic approximation of an order-statistic polynomial,
    solved exactly via a = M^{-1} b."""
    n = f.arity
    gram = gram_system(n)
    b = [inner_product_exact(f, os_function(n, i)) for i in range(1, n + 2)]
    a = tuple(sum(gram.inverse[i][j] * b[j] for j in range(n + 1))
              for i in range(n + 1))
    norm_sq = inner_product_exact(f, f)
    mean = b[-1]
    residual = norm_sq - sum(bi * ai for bi, ai in zip(b, a))
    variance = norm_sq - mean * mean
    if variance == 0:
        raise DegenerateVarianceError("R^2 is undefined for a constant function")
    r2 = r_squared_from_coefficients(n, a, variance)
    return ApproximationResult(n, a, mean, r2, residual, "exact")


def normalized_index_exact(f: OrderStatPolynomial, k: int) -> float:
    """Normalized index r(f,k) = I(f,k) / (sigma(f) sqrt(2(n+1)(n+2)))."""
    n = f.arity
    variance = inner_product_exact(f, f) - integral(f) ** 2
    if variance == 0:
        raise DegenerateVarianceError("r(f,k) is undefined for a constant function")
    idx = influence_exact(f, k)
    return float(idx) / (math.sqrt(float(variance)) * math.sqrt(2 * (n + 1) * (n + 2)))
