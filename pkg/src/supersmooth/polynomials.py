"""Multi-indices and exact polynomials in the shifted monomial basis.

A Polynomial stores coefficients of (x - center)^alpha, so derivatives at the
center are coefficient read-offs.  Multi-indices are ordered by graded
lexicographic order throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import InputError

MultiIndex = tuple[int, ...]


def dim_pi(n: int, d: int) -> int:
    """Dimension of the polynomials of degree <= d in R^n (0 when d < 0)."""
    if d < 0:
        return 0
    return comb(d + n, n)


def grlex_key(alpha: MultiIndex):
    return (sum(alpha), alpha)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, k: int) -> tuple[MultiIndex, ...]:
    """All exponent tuples of total degree k, in lexicographic order."""
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k + 1):
        for rest in monomials_of_degree(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[MultiIndex, ...]:
    """All exponent tuples with |alpha| <= d, in graded lexicographic order."""
    out: list[MultiIndex] = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(n, k))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> dict[MultiIndex, int]:
    return {alpha: i for i, alpha in enumerate(monomials(n, d))}


def multi_factorial(alpha: MultiIndex) -> int:
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


class Polynomial:
    """Exact polynomial sum c_alpha (x - center)^alpha with Fraction coefficients."""

    __slots__ = ("n", "center", "coeffs")

    def __init__(self, n: int, coeffs: dict[MultiIndex, Fraction] | None = None, center=None):
        self.n = n
        if center is None:
            center = (Fraction(0),) * n
        self.center = tuple(Fraction(c) for c in center)
        if len(self.center) != n:
            raise InputError("center arity mismatch")
        clean: dict[MultiIndex, Fraction] = {}
        for alpha, c in (coeffs or {}).items():
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise InputError(f"bad exponent tuple {alpha!r}")
            c = Fraction(c)
            if c:
                clean[tuple(int(a) for a in alpha)] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, center=None) -> "Polynomial":
        return cls(n, {}, center)

    @classmethod
    def monomial(cls, n: int, alpha: MultiIndex, coeff=1, center=None) -> "Polynomial":
        return cls(n, {tuple(alpha): Fraction(coeff)}, center)

    @classmethod
    def from_coefficient_vector(cls, n: int, d: int, vector, center=None) -> "Polynomial":
        monos = monomials(n, d)
        if len(vector) != len(monos):
            raise InputError("coefficient vector length mismatch")
        return cls(n, {a: Fraction(v) for a, v in zip(monos, vector)}, center)

    # -- views -------------------------------------------------------------

    @property
    def total_degree(self) -> int:
        """Largest |alpha| with a nonzero coefficient; -1 for the zero polynomial."""
        return max((sum(a) for a in self.coeffs), default=-1)

    def coefficient(self, alpha: MultiIndex) -> Fraction:
        return self.coeffs.get(tuple(alpha), Fraction(0))

    def coefficient_vector(self, d: int) -> list[Fraction]:
        if self.total_degree > d:
            raise InputError("degree bound too small for coefficient vector")
        return [self.coeffs.get(a, Fraction(0)) for a in monomials(self.n, d)]

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- exact operations ----------------------------------------------------

    def evaluate(self, x) -> Fraction:
        x = tuple(Fraction(c) for c in x)
        shifted = tuple(xi - ci for xi, ci in zip(x, self.center))
        total = Fraction(0)
        for alpha, c in self.coeffs.items():
            term = c
            for base, e in zip(shifted, alpha):
                if e:
                    term *= base**e
            total += term
        return total

    def derivative(self, beta: MultiIndex) -> "Polynomial":
        beta = tuple(beta)
        out: dict[MultiIndex, Fraction] = {}
        for alpha, c in self.coeffs.items():
            if any(a < b for a, b in zip(alpha, beta)):
                continue
            factor = 1
            for a, b in zip(alpha, beta):
                for t in range(b):
                    factor *= a - t
            out[tuple(a - b for a, b in zip(alpha, beta))] = c * factor
        return Polynomial(self.n, out, self.center)

    def derivative_at_center(self, alpha: MultiIndex) -> Fraction:
        """D^alpha at the center: alpha! times the stored coefficient."""
        return self.coeffs.get(tuple(alpha), Fraction(0)) * multi_factorial(alpha)

    def truncated(self, rho: int) -> "Polynomial":
        return Polynomial(
            self.n, {a: c for a, c in self.coeffs.items() if sum(a) <= rho}, self.center
        )

    def recentered(self, new_center) -> "Polynomial":
        """The same polynomial expressed in powers of (x - new_center)."""
        new_center = tuple(Fraction(c) for c in new_center)
        if new_center == self.center:
            return self
        shift = tuple(nc - oc for oc, nc in zip(self.center, new_center))
        # (x - old) = (x - new) + shift; expand binomially per coordinate
        out: dict[MultiIndex, Fraction] = {}
        for alpha, c in self.coeffs.items():
            terms = [(tuple(), c)]
            for i, e in enumerate(alpha):
                expanded = []
                for prefix, coeff in terms:
                    for j in range(e + 1):
                        expanded.append((prefix + (j,), coeff * comb(e, j) * shift[i] ** (e - j)))
                terms = expanded
            for beta, coeff in terms:
                if coeff:
                    out[beta] = out.get(beta, Fraction(0)) + coeff
        return Polynomial(self.n, {a: c for a, c in out.items() if c}, new_center)

    def restricted_to_segment(self, v, w) -> tuple[Fraction, ...]:
        """Univariate coefficients of t -> p(v + t (w - v)), exact."""
        v = tuple(Fraction(c) for c in v)
        w = tuple(Fraction(c) for c in w)
        base = tuple(vi - ci for vi, ci in zip(v, self.center))
        step = tuple(wi - vi for wi, vi in zip(w, v))
        out: dict[int, Fraction] = {}
        for alpha, c in self.coeffs.items():
            uni = {0: c}
            for i, e in enumerate(alpha):
                for _ in range(e):
                    nxt: dict[int, Fraction] = {}
                    for k, coeff in uni.items():
                        if base[i]:
                            nxt[k] = nxt.get(k, Fraction(0)) + coeff * base[i]
                        if step[i]:
                            nxt[k + 1] = nxt.get(k + 1, Fraction(0)) + coeff * step[i]
                    uni = nxt
            for k, coeff in uni.items():
                out[k] = out.get(k, Fraction(0)) + coeff
        top = max((k for k, c in out.items() if c), default=-1)
        return tuple(out.get(k, Fraction(0)) for k in range(top + 1))

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.n != other.n or self.center != other.center:
            raise InputError("polynomials live in different charts")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, Fraction(0)) + c
        return Polynomial(self.n, out, self.center)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {a: -c for a, c in self.coeffs.items()}, self.center)

    def scaled(self, factor) -> "Polynomial":
        factor = Fraction(factor)
        return Polynomial(self.n, {a: c * factor for a, c in self.coeffs.items()}, self.center)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        out: dict[MultiIndex, Fraction] = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return Polynomial(self.n, out, self.center)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise InputError("negative polynomial power")
        result = Polynomial.monomial(self.n, (0,) * self.n, 1, self.center)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.n == other.n
            and self.center == other.center
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, self.center, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        parts = [f"{c}*X^{a}" for a, c in sorted(self.coeffs.items(), key=lambda kv: grlex_key(kv[0]))]
        return "Polynomial(" + " + ".join(parts) + ")"


def linear_form_polynomial(n: int, coefficients, center=None) -> Polynomial:
    """The homogeneous linear polynomial sum_i a_i (x - center)_i."""
    coeffs = {}
    for i, a in enumerate(coefficients):
        a = Fraction(a)
        if a:
            alpha = tuple(int(i == j) for j in range(n))
            coeffs[alpha] = a
    return Polynomial(n, coeffs, center)
