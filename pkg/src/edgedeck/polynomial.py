"""Univariate polynomials with exact rational coefficients, evaluated on matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import ExactMatrix


def _trim(coeffs) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class OperatorPolynomial:
    """``c_0 + c_1 t + ... + c_d t^d`` in an operator variable ``t``.

    Coefficients are stored normalized (no trailing zeros); the zero
    polynomial has no coefficients at all.
    """

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def constant(cls, c) -> OperatorPolynomial:
        return cls((c,))

    @classmethod
    def variable(cls) -> OperatorPolynomial:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, j: int) -> Fraction:
        return self.coefficients[j] if 0 <= j < len(self.coefficients) else Fraction(0)

    @property
    def constant_term(self) -> Fraction:
        return self.coefficient(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other) -> OperatorPolynomial:
        other = _lift(other)
        size = max(len(self.coefficients), len(other.coefficients))
        return OperatorPolynomial(tuple(self.coefficient(j) + other.coefficient(j) for j in range(size)))

    __radd__ = __add__

    def __neg__(self) -> OperatorPolynomial:
        return OperatorPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other) -> OperatorPolynomial:
        return self + (-_lift(other))

    def __rsub__(self, other) -> OperatorPolynomial:
        return _lift(other) - self

    def __mul__(self, other) -> OperatorPolynomial:
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return OperatorPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return OperatorPolynomial(tuple(out))

    __rmul__ = __mul__

    def divide_exact_by_variable(self) -> OperatorPolynomial:
        """``p(t) / t``; the constant term must already be zero."""
        if self.constant_term != 0:
            raise ValueError("polynomial has a nonzero constant term; not divisible by t")
        return OperatorPolynomial(self.coefficients[1:])

    def __call__(self, x):
        """Horner evaluation at a number or an :class:`ExactMatrix`."""
        if isinstance(x, ExactMatrix):
            size = x.shape[0]
            acc = ExactMatrix.zeros(size, size, x.row_catalog, x.col_catalog)
            eye = ExactMatrix.identity(size, x.row_catalog)
            for c in reversed(self.coefficients):
                acc = acc @ x + eye.scale(c)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def apply(self, matrix: ExactMatrix, vector) -> list:
        """``p(matrix) @ vector`` without forming matrix powers."""
        vec = [Fraction(v) for v in vector]
        acc = [Fraction(0)] * len(vec)
        for c in reversed(self.coefficients):
            acc = [a + c * v for a, v in zip(matrix @ acc, vec)]
        return acc

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coefficients]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for j, c in enumerate(self.coefficients):
            if c == 0:
                continue
            terms.append(str(c) if j == 0 else f"{c}*t" if j == 1 else f"{c}*t^{j}")
        return " + ".join(terms)


def _lift(x) -> OperatorPolynomial:
    return x if isinstance(x, OperatorPolynomial) else OperatorPolynomial.constant(x)


def product_of_linear_factors(roots) -> OperatorPolynomial:
    """``prod (t - r)`` over the given roots."""
    p = OperatorPolynomial.constant(1)
    t = OperatorPolynomial.variable()
    for r in roots:
        p = p * (t - r)
    return p
