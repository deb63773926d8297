"""Exact rational kernel for polynomials of order statistics.

Everything here is computed with arbitrary-precision rationals: evaluation of
order statistics, the closed-form moment of a product of order-statistic
powers over the unit cube, inner products, symmetrization of plain-variable
polynomials, dualization, and the combinatorial expansions relating subset
order statistics to the order statistics of the full variable set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .errors import DomainError

RationalLike = Union[int, str, float, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, 'p/q' strings, floats and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


# ---------------------------------------------------------------------------
# Order-statistic evaluation
# ---------------------------------------------------------------------------

def eval_order_stat(x: Sequence, k: int):
    """k-th smallest coordinate of x, with the conventions rank 0 -> 0 and
    rank n+1 -> 1.  Ties are handled by multiset (sorting) semantics."""
    n = len(x)
    if not 0 <= k <= n + 1:
        raise DomainError("rank %d outside [0, %d]" % (k, n + 1))
    if k == 0:
        return 0
    if k == n + 1:
        return 1
    return sorted(x)[k - 1]


# ---------------------------------------------------------------------------
# Monomials and polynomials in order statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderStatMonomial:
    """A term c * prod_j x_{(k_j)}^{c_j} with 1 <= k_1 < ... < k_m <= arity."""

    arity: int
    exponents: Tuple[Tuple[int, int], ...]  # ((slot, exponent), ...), slots ascending
    coefficient: Fraction

    def __post_init__(self):
        if self.arity < 1:
            raise DomainError("arity must be positive")
        prev = 0
        for slot, exp in self.exponents:
            if not 1 <= slot <= self.arity:
                raise DomainError("slot %d outside [1, %d]" % (slot, self.arity))
            if exp < 1:
                raise DomainError("exponents must be >= 1")
            if slot <= prev:
                raise DomainError("slots must be strictly ascending")
            prev = slot

    @property
    def exponent_map(self) -> dict:
        return dict(self.exponents)

    def evaluate(self, x: Sequence):
        xs = sorted(x)
        value = self.coefficient
        for slot, exp in self.exponents:
            value = value * xs[slot - 1] ** exp
        return value


def monomial(arity: int, exponents: Mapping[int, int],
             coefficient: RationalLike = 1) -> OrderStatMonomial:
    items = tuple(sorted((int(k), int(c)) for k, c in exponents.items() if c))
    return OrderStatMonomial(arity, items, as_rational(coefficient))


@dataclass(frozen=True)
class OrderStatPolynomial:
    """Canonical sum of order-statistic monomials plus a rational constant.

    Canonical means: no two terms share an exponent map, no zero coefficients,
    terms sorted by exponent map.  Built via :func:`polynomial`.
    """

    arity: int
    terms: Tuple[OrderStatMonomial, ...]
    constant: Fraction

    def evaluate(self, x: Sequence):
        xs = sorted(x)
        value = self.constant
        for term in self.terms:
            part = term.coefficient
            for slot, exp in term.exponents:
                part = part * xs[slot - 1] ** exp
            value = value + part
        return value

    def __add__(self, other):
        if isinstance(other, OrderStatPolynomial):
            if other.arity != self.arity:
                raise DomainError("arity mismatch: %d vs %d" % (self.arity, other.arity))
            return polynomial(self.arity, self.terms + other.terms,
                              self.constant + other.constant)
        return polynomial(self.arity, self.terms, self.constant + as_rational(other))

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, OrderStatPolynomial)
                       else -as_rational(other))

    def __rsub__(self, other):
        return (-self) + as_rational(other)

    def __mul__(self, other):
        if isinstance(other, OrderStatPolynomial):
            if other.arity != self.arity:
                raise DomainError("arity mismatch: %d vs %d" % (self.arity, other.arity))
            terms = []
            constant = self.constant * other.constant
            for t in self.terms:
                if other.constant:
                    terms.append(OrderStatMonomial(
                        self.arity, t.exponents, t.coefficient * other.constant))
                for u in other.terms:
                    merged = dict(t.exponents)
                    for slot, exp in u.exponents:
                        merged[slot] = merged.get(slot, 0) + exp
                    terms.append(monomial(self.arity, merged,
                                          t.coefficient * u.coefficient))
            if self.constant:
                for u in other.terms:
                    terms.append(OrderStatMonomial(
                        self.arity, u.exponents, u.coefficient * self.constant))
            return polynomial(self.arity, terms, constant)
        c = as_rational(other)
        return polynomial(
            self.arity,
            tuple(OrderStatMonomial(self.arity, t.exponents, t.coefficient * c)
                  for t in self.terms),
            self.constant * c)

    __rmul__ = __mul__


def polynomial(arity: int, terms: Iterable[OrderStatMonomial] = (),
               constant: RationalLike = 0) -> OrderStatPolynomial:
    """Build a canonical OrderStatPolynomial, merging duplicate exponent maps."""
    merged = {}
    for term in terms:
        if term.arity != arity:
            raise DomainError("term arity %d != polynomial arity %d"
                              % (term.arity, arity))
        merged[term.exponents] = merged.get(term.exponents, Fraction(0)) + term.coefficient
    canon = tuple(OrderStatMonomial(arity, exps, coeff)
                  for exps, coeff in sorted(merged.items()) if coeff != 0)
    return OrderStatPolynomial(arity, canon, as_rational(constant))


def os_function(arity: int, k: int) -> OrderStatPolynomial:
    """The function x -> x_{(k)} as a polynomial; rank 0 is the zero function
    and rank arity+1 is the constant one."""
    if not 0 <= k <= arity + 1:
        raise DomainError("rank %d outside [0, %d]" % (k, arity + 1))
    if k == 0:
        return polynomial(arity)
    if k == arity + 1:
        return polynomial(arity, constant=1)
    return polynomial(arity, [monomial(arity, {k: 1})])


# ---------------------------------------------------------------------------
# Moments and inner products
# ---------------------------------------------------------------------------

def moment(n: int, term: OrderStatMonomial) -> Fraction:
    """Exact integral over [0,1]^n of a monomial in order statistics.

    For ascending slots k_1 < ... < k_m with exponents c_1, ..., c_m the
    integral of prod_j x_{(k_j)}^{c_j} equals

        n! / (n + sum c)! * prod_j (k_j - 1 + c_1+...+c_j)! / (k_j - 1 + c_1+...+c_{j-1})!
    """
    if term.arity != n:
        raise DomainError("monomial arity %d != %d" % (term.arity, n))
    total = sum(c for _, c in term.exponents)
    value = Fraction(factorial(n), factorial(n + total))
    running = 0
    for slot, exp in term.exponents:
        value *= Fraction(factorial(slot - 1 + running + exp),
                          factorial(slot - 1 + running))
        running += exp
    return term.coefficient * value


def integral(f: OrderStatPolynomial) -> Fraction:
    """Exact integral of f over the unit cube."""
    return f.constant + sum((moment(f.arity, t) for t in f.terms), Fraction(0))


def inner_product_exact(f: OrderStatPolynomial, g: OrderStatPolynomial) -> Fraction:
    """Exact L2 inner product <f, g> over the unit cube."""
    if f.arity != g.arity:
        raise DomainError("arity mismatch: %d vs %d" % (f.arity, g.arity))
    return integral(f * g)


# ---------------------------------------------------------------------------
# Symmetrization of plain-variable polynomials
# ---------------------------------------------------------------------------

def symmetrize(arity: int,
               plain_terms: Iterable[Tuple[RationalLike, Mapping[int, int]]],
               constant: RationalLike = 0) -> OrderStatPolynomial:
    """Average a plain-variable polynomial over all permutations of its
    arguments and express the result in order statistics.

    ``plain_terms`` is an iterable of (coefficient, {variable index: exponent})
    pairs.  Each plain monomial on m distinct variables contributes the
    uniform average, over all injective assignments of its exponent list to
    order-statistic slots, of the corresponding order-statistic monomial.
    """
    out = []
    n = arity
    for coeff, exps in plain_terms:
        coeff = as_rational(coeff)
        exp_list = [int(c) for v, c in sorted(exps.items()) if c]
        for v in exps:
            if not 1 <= int(v) <= n:
                raise DomainError("variable index %s outside [1, %d]" % (v, n))
        m = len(exp_list)
        if m == 0:
            out.append((Fraction(0), coeff))  # degenerate: constant term
            continue
        if m > n:
            raise DomainError("monomial uses more variables than the arity")
        weight = Fraction(factorial(n - m), factorial(n))
        for slots in permutations(range(1, n + 1), m):
            out.append((monomial(n, dict(zip(slots, exp_list)), coeff * weight), None))
    terms = [t for t, c in out if c is None]
    extra_constant = sum((c for t, c in out if c is not None), Fraction(0))
    return polynomial(n, terms, as_rational(constant) + extra_constant)


# ---------------------------------------------------------------------------
# Dualization
# ---------------------------------------------------------------------------

def _reflect(f: OrderStatPolynomial) -> OrderStatPolynomial:
    """Expansion of x -> f(1 - x) using x_{(k)}(1-x) = 1 - x_{(n-k+1)}(x)."""
    n = f.arity
    terms = []
    constant = f.constant
    for term in f.terms:
        slots = [n - slot + 1 for slot, _ in term.exponents]
        exps = [exp for _, exp in term.exponents]
        # expand prod_j (1 - y_{r_j})^{c_j} multinomially
        for picks in product(*[range(c + 1) for c in exps]):
            coeff = term.coefficient
            emap = {}
            for r, c, t in zip(slots, exps, picks):
                coeff *= comb(c, t) * (-1) ** t
                if t:
                    emap[r] = t
            if emap:
                terms.append(monomial(n, emap, coeff))
            else:
                constant += coeff
    return polynomial(n, terms, constant)


def dualize(f: OrderStatPolynomial) -> OrderStatPolynomial:
    """Dual function f^d(x) = 1 - f(1 - x), in canonical form."""
    return 1 - _reflect(f)


# ---------------------------------------------------------------------------
# Subset order-statistic expansions
# ---------------------------------------------------------------------------

def expand_subset_sum(n: int, s: int, k: int) -> Tuple[int, ...]:
    """Coefficients (over x_{1:n}, ..., x_{n:n}) of the sum of the k-th order
    statistic over all subsets of size s:

        sum_{|S|=s} x_{k:S} = sum_j C(j-1, k-1) C(n-j, s-k) x_{j:n}.
    """
    if not 1 <= k <= s <= n:
        raise DomainError("need 1 <= k <= s <= n, got k=%d s=%d n=%d" % (k, s, n))
    return tuple(comb(j - 1, k - 1) * comb(n - j, s - k) for j in range(1, n + 1))


@dataclass(frozen=True)
class SignedSubsetCombination:
    """A signed combination sum coeff * x_{rank:S} of subset order statistics."""

    arity: int
    terms: Tuple[Tuple[frozenset, int, Fraction], ...]

    def evaluate(self, x: Sequence):
        value = Fraction(0) if all(isinstance(v, (int, Fraction)) for v in x) else 0.0
        for subset, rank, coeff in self.terms:
            vals = sorted(x[i - 1] for i in subset)
            value = value + coeff * vals[rank - 1]
        return value


def expand_min_max(n: int, k: int, mode: str) -> SignedSubsetCombination:
    """Express x_{k:n} through subset maxima ('via-max') or minima ('via-min').

    via-max: x_{k:n} = sum_{|S| >= k} (-1)^{|S|-k} C(|S|-1, k-1) max_S
    via-min: x_{k:n} = sum_{|S| >= n-k+1} (-1)^{|S|-n+k-1} C(|S|-1, n-k) min_S
    """
    if not 1 <= k <= n:
        raise DomainError("rank %d outside [1, %d]" % (k, n))
    terms = []
    if mode == "via-max":
        for size in range(k, n + 1):
            coeff = Fraction((-1) ** (size - k) * comb(size - 1, k - 1))
            for subset in combinations(range(1, n + 1), size):
                terms.append((frozenset(subset), size, coeff))
    elif mode == "via-min":
        for size in range(n - k + 1, n + 1):
            coeff = Fraction((-1) ** (size - n + k - 1) * comb(size - 1, n - k))
            for subset in combinations(range(1, n + 1), size):
                terms.append((frozenset(subset), 1, coeff))
    else:
        raise DomainError("mode must be 'via-max' or 'via-min', got %r" % (mode,))
    return SignedSubsetCombination(n, tuple(terms))
