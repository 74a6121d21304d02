"""Recovering graph collections and 1-edge decks from modified 1-decks.

Two routes recover ``X_P`` from ``Delta_1 X_P`` when ``m > N/2``:

* the alternating formula ``X_P = (Delta_1 - Delta_2 + ... ) X_P`` where each
  ``Delta_i X_P`` is ``p_i(Delta_1) X_P`` and so only needs ``Delta_1 X_P``;
* an exact linear solve against the built ``Delta_1``.

Both must agree.  For ``m <= N/2`` the modified deck is complemented, which
turns it into the 1-edge deck of the complements of ``ED_1(P)``; those live on
``N - m + 1 > N/2`` edges, where the direct route applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .decks import MultiVector, apply, build_lift_matrix, build_operator_matrix, complement_vector
from .errors import IdentityMismatchError, MalformedDeckError, NotRealizableDeckError, OutOfRegimeError
from .graph_core import ClassCatalog, enumerate_classes, pair_count
from .linalg import exact_rank, solve_exact
from .operator_algebra import delta_polynomial
from .polynomial import OperatorPolynomial

DIRECT_SOLVE = "direct-solve"
ALTERNATING = "alternating-formula"
COMPLEMENT = "complement-pipeline"


@dataclass(frozen=True)
class ReconstructionResult:
    recovered: MultiVector
    route: str
    certificate: str


def exceeds_half(N: int, m: int) -> bool:
    return 2 * m > N


@lru_cache(maxsize=None)
def inverse_polynomial(N: int, m: int) -> OperatorPolynomial:
    """``r(t)`` with ``r(Delta_1) Delta_1 = I`` for ``m > N/2``.

    From ``I = sum_{i=1..m} (-1)^(i+1) Delta_i`` and ``Delta_i = p_i(Delta_1)``
    with ``p_i(0) = 0``, ``r(t) = sum (-1)^(i+1) p_i(t) / t``.
    """
    if not exceeds_half(N, m):
        raise OutOfRegimeError(f"alternating formula needs m > N/2, got N = {N}, m = {m}")
    total = OperatorPolynomial()
    for i in range(1, m + 1):
        total = total + (-1) ** (i + 1) * delta_polynomial(N, m, i)
    return total.divide_exact_by_variable()


def _per_graph_total(N: int, m: int) -> int:
    return m * (N - m + 1)


def _collection_size(total: int, N: int, m: int, r: int | None) -> int:
    per = _per_graph_total(N, m)
    if r is not None:
        if r < 0:
            raise MalformedDeckError(f"declared collection size r = {r} is negative")
        if total != r * per:
            raise MalformedDeckError(
                f"deck has {total} members; {r} graph(s) with m = {m}, N = {N} give {r * per}"
            )
        return r
    if per == 0:
        if total:
            raise MalformedDeckError("a nonempty deck cannot come from graphs whose decks are empty")
        return 0
    if total % per:
        raise MalformedDeckError(f"deck total {total} is not a multiple of m(N - m + 1) = {per}")
    return total // per


def _as_counts(values, what: str) -> tuple[int, ...]:
    out = []
    for x in values:
        x = Fraction(x)
        if x.denominator != 1:
            raise NotRealizableDeckError(f"{what} has the non-integral entry {x}")
        if x < 0:
            raise NotRealizableDeckError(f"{what} has the negative entry {x}")
        out.append(int(x))
    return tuple(out)


def reconstruct_from_delta1(v: MultiVector, r: int | None = None) -> ReconstructionResult:
    """Recover ``X_P`` from ``v = Delta_1 X_P`` (requires ``m > N/2``)."""
    n, m = v.catalog.key
    N = pair_count(n)
    if not exceeds_half(N, m):
        raise OutOfRegimeError(
            f"m = {m} <= N/2 = {N / 2}: Delta_1 inversion is unavailable; use edge_deck_from_modified"
        )
    _collection_size(v.total, N, m, r)
    delta1 = build_operator_matrix("delta", n, m, 1)

    via_formula = inverse_polynomial(N, m).apply(delta1, v.counts)
    via_solve = solve_exact(delta1, list(v.counts))
    if via_solve is None:
        raise NotRealizableDeckError("modified deck is not in the image of Delta_1")
    if list(via_formula) != list(via_solve):
        raise IdentityMismatchError(
            f"alternating formula and exact solve disagree at (n, m) = ({n}, {m}): {via_formula} vs {via_solve}"
        )
    counts = _as_counts(via_formula, "reconstructed collection")
    recovered = MultiVector(v.catalog, counts)
    if apply(delta1, recovered) != v:
        raise NotRealizableDeckError("reconstructed collection does not reproduce the modified deck")
    return ReconstructionResult(recovered, ALTERNATING, "Delta_1 X = v exactly; formula and solve agree")


def reconstruct_edge_deck(md: MultiVector, r: int | None = None) -> ReconstructionResult:
    """The 1-edge deck of the collection whose modified 1-deck is ``md``."""
    n, m = md.catalog.key
    N = pair_count(n)
    _collection_size(md.total, N, m, r)
    if m == 0:
        return ReconstructionResult(
            MultiVector(ClassCatalog(n, -1, ()), ()), COMPLEMENT, "m = 0: both decks are empty"
        )
    target = enumerate_classes(n, m - 1)
    lift = build_lift_matrix(n, m, 1)

    if exceeds_half(N, m):
        collection = reconstruct_from_delta1(md, r).recovered
        ed = apply(build_operator_matrix("edgedeck", n, m, 1), collection)
        route = DIRECT_SOLVE
    else:
        # complements of the MD_1 members are the 1-edge deck of P' = {F^c : F in ED_1(P)}
        complemented = complement_vector(md)
        m_prime = N - m + 1
        lifted = apply(build_lift_matrix(n, m_prime, 1), complemented)
        p_prime = reconstruct_from_delta1(lifted).recovered
        if apply(build_operator_matrix("edgedeck", n, m_prime, 1), p_prime) != complemented:
            raise NotRealizableDeckError("complemented deck is not the 1-edge deck of the recovered collection")
        ed = complement_vector(p_prime)
        route = COMPLEMENT

    if ed.catalog.key != target.key:
        raise IdentityMismatchError(f"edge deck landed on {ed.catalog.key}, expected {target.key}")
    if apply(lift, ed) != md:
        raise NotRealizableDeckError("recovered edge deck does not lift back to the modified deck")
    return ReconstructionResult(ed, route, "U_1 ED_1 = MD_1 exactly")


def edge_deck_from_modified(md: MultiVector, r: int | None = None) -> MultiVector:
    return reconstruct_edge_deck(md, r).recovered


@dataclass(frozen=True)
class KernelReport:
    n: int
    m: int
    N: int
    delta1_shape: tuple[int, int]
    delta1_rank: int
    d1_shape: tuple[int, int] | None
    d1_rank: int | None

    @property
    def delta1_injective(self) -> bool:
        return self.delta1_rank == self.delta1_shape[1]

    @property
    def d1_injective(self) -> bool | None:
        return None if self.d1_shape is None else self.d1_rank == self.d1_shape[1]

    @property
    def regime(self) -> str:
        if 2 * self.m > self.N:
            return "m > N/2"
        return "m = N/2" if 2 * self.m == self.N else "m < N/2"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "N": self.N,
            "regime": self.regime,
            "delta1": {"shape": list(self.delta1_shape), "rank": self.delta1_rank, "injective": self.delta1_injective},
            "d1": None
            if self.d1_shape is None
            else {"shape": list(self.d1_shape), "rank": self.d1_rank, "injective": self.d1_injective},
        }


def kernel_report(n: int, m: int) -> KernelReport:
    """Exact ranks of ``Delta_1`` and ``d_1`` on the (n, m) catalog."""
    enumerate_classes(n, m)
    N = pair_count(n)
    delta1 = build_operator_matrix("delta", n, m, 1)
    d1 = build_operator_matrix("edgedeck", n, m, 1) if m >= 1 else None
    return KernelReport(
        n,
        m,
        N,
        delta1.shape,
        exact_rank(delta1),
        None if d1 is None else d1.shape,
        None if d1 is None else exact_rank(d1),
    )
