"""Exact checks of the deck-operator identities and their polynomial forms.

Every identity check builds both sides directly from deck enumeration; no
identity is used to produce evidence for another.

Polynomials are in one variable ``t`` standing for the modified-deck operator
``Delta_1``; the perturbed operator ``D_1`` is ``t - m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .decks import build_operator_matrix
from .errors import IdentityMismatchError, InvalidParametersError
from .graph_core import enumerate_classes, pair_count
from .linalg import ExactMatrix
from .polynomial import OperatorPolynomial

EXACT_EQUAL = "exact-equal"
MISMATCH = "mismatch"


def binom(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    params: dict
    left_hash: str
    right_hash: str
    verdict: str
    first_difference: tuple | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.verdict == EXACT_EQUAL

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "params": dict(self.params),
            "left_hash": self.left_hash,
            "right_hash": self.right_hash,
            "verdict": self.verdict,
        }
        if self.first_difference is not None:
            i, j, a, b = self.first_difference
            out["first_difference"] = {"row": i, "col": j, "left": str(a), "right": str(b)}
        return out


def compare(identity: str, params: dict, left: ExactMatrix, right: ExactMatrix) -> IdentityReport:
    diff = left.first_difference(right)
    return IdentityReport(
        identity,
        params,
        left.digest(),
        right.digest(),
        EXACT_EQUAL if diff is None else MISMATCH,
        diff,
    )


def _validate(n: int, m: int, k: int, name: str = "k") -> None:
    enumerate_classes(n, m)
    if k < 0:
        raise InvalidParametersError(f"{name} = {k} must be nonnegative")


def _linear_combination(terms, size: int, catalog) -> ExactMatrix:
    acc = ExactMatrix.zeros(size, size, catalog, catalog)
    for coeff, mat in terms:
        if coeff:
            acc = acc + mat.scale(coeff)
    return acc


def verify_deck_sum(n: int, m: int, k: int) -> IdentityReport:
    """``Delta_k = sum_i C(m - i, k - i) D_i``."""
    _validate(n, m, k)
    if k > m:
        raise InvalidParametersError(f"k = {k} exceeds m = {m}")
    catalog = enumerate_classes(n, m)
    left = build_operator_matrix("delta", n, m, k)
    right = _linear_combination(
        ((binom(m - i, k - i), build_operator_matrix("perturbed", n, m, i)) for i in range(k + 1)),
        len(catalog),
        catalog,
    )
    return compare("deck-sum", {"n": n, "m": m, "k": k}, left, right)


def verify_recursion(n: int, m: int, i: int) -> IdentityReport:
    """``D_1 D_i = (m-i+1)(N-m-i+1) D_{i-1} + i(N-2i) D_i + (i+1)^2 D_{i+1}``.

    ``D_j`` for ``j > m`` is the zero matrix produced by deck enumeration.
    """
    _validate(n, m, i, "i")
    if i < 1:
        raise InvalidParametersError("the recursion needs i >= 1")
    N = pair_count(n)
    catalog = enumerate_classes(n, m)
    D = lambda j: build_operator_matrix("perturbed", n, m, j)  # noqa: E731
    left = D(1) @ D(i)
    right = _linear_combination(
        [
            ((m - i + 1) * (N - m - i + 1), D(i - 1)),
            (i * (N - 2 * i), D(i)),
            ((i + 1) ** 2, D(i + 1)),
        ],
        len(catalog),
        catalog,
    )
    return compare("recursion", {"n": n, "m": m, "i": i}, left, right)


def verify_inversion(n: int, m: int, k: int) -> IdentityReport:
    """``D_k = sum_i (-1)^(k+i) C(m - i, k - i) Delta_i``."""
    _validate(n, m, k)
    if k > m:
        raise InvalidParametersError(f"k = {k} exceeds m = {m}")
    catalog = enumerate_classes(n, m)
    left = build_operator_matrix("perturbed", n, m, k)
    right = _linear_combination(
        (((-1) ** (k + i) * binom(m - i, k - i), build_operator_matrix("delta", n, m, i)) for i in range(k + 1)),
        len(catalog),
        catalog,
    )
    return compare("inversion", {"n": n, "m": m, "k": k}, left, right)


def _check_Nm(N: int, m: int) -> None:
    if N < 0 or not 0 <= m <= N:
        raise InvalidParametersError(f"need 0 <= m <= N, got N = {N}, m = {m}")


@lru_cache(maxsize=None)
def _d_polynomials(N: int, m: int, upto: int) -> tuple[OperatorPolynomial, ...]:
    """``D_0 .. D_upto`` as polynomials in ``Delta_1`` via the three-term recursion."""
    t = OperatorPolynomial.variable()
    D1 = t - m
    polys = [OperatorPolynomial.constant(1), D1]
    for r in range(1, upto):
        prev = polys[r - 1]
        nxt = D1 * polys[r] - (m - r + 1) * (N - m - r + 1) * prev - r * (N - 2 * r) * polys[r]
        polys.append(nxt * Fraction(1, (r + 1) ** 2))
    return tuple(polys[: upto + 1])


def perturbed_polynomial(N: int, m: int, k: int) -> OperatorPolynomial:
    """``D_k`` as a polynomial in ``Delta_1`` (constant term included)."""
    _check_Nm(N, m)
    if k < 0:
        raise InvalidParametersError("k must be nonnegative")
    return _d_polynomials(N, m, max(k, 1))[k]


def delta_polynomial(N: int, m: int, i: int) -> OperatorPolynomial:
    """Polynomial ``p_i`` with ``p_i(Delta_1) = Delta_i`` and zero constant term.

    Raises :class:`IdentityMismatchError` if the constant terms fail to cancel.
    """
    _check_Nm(N, m)
    if i < 1:
        raise InvalidParametersError("delta_polynomial needs i >= 1")
    ds = _d_polynomials(N, m, max(i, 1))
    p = OperatorPolynomial()
    for k in range(i + 1):
        p = p + binom(m - k, i - k) * ds[k]
    if p.constant_term != 0:
        raise IdentityMismatchError(
            f"constant term of Delta_{i} polynomial is {p.constant_term}, not 0 (N = {N}, m = {m})"
        )
    return p


@lru_cache(maxsize=None)
def _lk_polynomials(N: int, m: int, upto: int) -> tuple[OperatorPolynomial, ...]:
    """``L_0 .. L_upto`` by the induction that peels off the identity component.

    At each step the identity coefficient is tracked separately and must equal
    ``(-1)^(r+1) (r+1)^2 C(m, r+1)`` before dividing by ``(r+1)^2``.
    """
    t = OperatorPolynomial.variable()
    L = [OperatorPolynomial(), t]
    for r in range(1, upto):
        c_r = (-1) ** r * binom(m, r)
        c_prev = (-1) ** (r - 1) * binom(m, r - 1)
        a = (m - r + 1) * (N - m - r + 1)
        b = r * (N - 2 * r)
        scaled = (t - m) * L[r] + c_r * t - a * L[r - 1] - b * L[r]
        identity_coeff = -m * c_r - a * c_prev - b * c_r
        sq = (r + 1) ** 2
        expected = (-1) ** (r + 1) * sq * binom(m, r + 1)
        if identity_coeff != expected:
            raise IdentityMismatchError(
                f"identity coefficient at step {r + 1} is {identity_coeff}, expected {expected}"
            )
        if scaled.constant_term != 0:
            raise IdentityMismatchError(f"L_{r + 1} picked up a constant term")
        L.append(scaled * Fraction(1, sq))
    return tuple(L[: upto + 1])


def lk_polynomial(N: int, m: int, k: int) -> OperatorPolynomial:
    """``L_k`` with ``D_k = L_k(Delta_1) + (-1)^k C(m, k) I``; zero constant term."""
    _check_Nm(N, m)
    if not 0 <= k <= m:
        raise InvalidParametersError(f"need 0 <= k <= m, got k = {k}, m = {m}")
    return _lk_polynomials(N, m, max(k, 1))[k]


def delta_polynomial_from_lk(N: int, m: int, i: int) -> OperatorPolynomial:
    """``sum_k C(m-k, i-k) (L_k + (-1)^k C(m, k))``, kept with its constant term."""
    total = OperatorPolynomial()
    for k in range(i + 1):
        total = total + binom(m - k, i - k) * (lk_polynomial(N, m, k) + (-1) ** k * binom(m, k))
    return total


def evaluate_on_delta1(poly: OperatorPolynomial, n: int, m: int) -> ExactMatrix:
    return poly(build_operator_matrix("delta", n, m, 1))


def verify_delta_polynomial(n: int, m: int, i: int) -> IdentityReport:
    """``p_i(Delta_1) = Delta_i`` with both matrices built from decks."""
    N = pair_count(n)
    _validate(n, m, i, "i")
    left = evaluate_on_delta1(delta_polynomial(N, m, i), n, m)
    right = build_operator_matrix("delta", n, m, i)
    return compare("delta-polynomial", {"n": n, "m": m, "i": i}, left, right)


def verify_lk(n: int, m: int, k: int) -> IdentityReport:
    """``L_k(Delta_1) + (-1)^k C(m, k) I = D_k``."""
    N = pair_count(n)
    _validate(n, m, k)
    size = len(enumerate_classes(n, m))
    catalog = enumerate_classes(n, m)
    left = evaluate_on_delta1(lk_polynomial(N, m, k), n, m) + ExactMatrix.identity(size, catalog).scale(
        (-1) ** k * binom(m, k)
    )
    right = build_operator_matrix("perturbed", n, m, k)
    return compare("lk-polynomial", {"n": n, "m": m, "k": k}, left, right)
