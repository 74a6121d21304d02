"""Johnson-scheme matrices, the k-edge operator B and its closed-form spectrum.

Vertices of the Johnson scheme J(N, m) are the m-subsets of {0..N-1}, stored as
bitmasks in ``itertools.combinations`` order.  With ``N = C(n, 2)`` the same
bitmasks are the labeled m-edge graphs on n vertices (pair order of
:mod:`edgedeck.graph_core`).

Spectra are certified without floating point: the closed-form eigenvalues
``theta_j`` are checked by ``prod_j (B - theta_j I) = 0`` in exact integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .decks import build_operator_matrix
from .errors import IdentityMismatchError, InvalidParametersError, TooLargeError
from .graph_core import canonical_table, enumerate_classes, large_override_enabled, pair_count
from .linalg import ExactMatrix, exact_rank, rank_mod_p
from .operator_algebra import binom
from .polynomial import product_of_linear_factors

SIZE_GUARD = 20_000


@dataclass(frozen=True)
class JohnsonParams:
    N: int
    m: int
    k: int = 1

    def __post_init__(self):
        if self.N < 0 or not 0 <= self.m <= self.N:
            raise InvalidParametersError(f"need 0 <= m <= N, got N = {self.N}, m = {self.m}")
        if self.k < 0:
            raise InvalidParametersError(f"k = {self.k} must be nonnegative")

    @property
    def t(self) -> int:
        return min(self.m, self.N - self.m)


def _check_size(N: int, m: int, allow_large: bool = False) -> int:
    size = binom(N, m)
    if size > SIZE_GUARD and not (allow_large or large_override_enabled()):
        raise TooLargeError(f"C({N}, {m}) = {size} exceeds the dense size guard {SIZE_GUARD}")
    return size


@lru_cache(maxsize=None)
def subset_masks(N: int, m: int) -> np.ndarray:
    """All m-subsets of an N-set as bitmasks, in combination order."""
    masks = [sum(1 << b for b in c) for c in combinations(range(N), m)]
    return np.array(masks, dtype=np.int64)


@lru_cache(maxsize=None)
def _intersections(N: int, m: int) -> np.ndarray:
    masks = subset_masks(N, m)
    return np.bitwise_count(masks[:, None] & masks[None, :]).astype(np.int64)


def relation_matrix(N: int, m: int, i: int, allow_large: bool = False) -> ExactMatrix:
    """0/1 matrix of the i-th Johnson relation: |U & V| = m - i."""
    JohnsonParams(N, m)
    if i < 0:
        raise InvalidParametersError(f"relation index {i} must be nonnegative")
    _check_size(N, m, allow_large)
    return ExactMatrix((_intersections(N, m) == m - i).astype(np.int64))


def b_matrix(N: int, m: int, k: int, allow_large: bool = False) -> ExactMatrix:
    """``B = sum_{i=0..k} C(m - i, k - i) J_i``."""
    JohnsonParams(N, m, k)
    _check_size(N, m, allow_large)
    distance = m - _intersections(N, m)
    weights = np.array([binom(m - i, k - i) if i <= k else 0 for i in range(m + 1)], dtype=np.int64)
    return ExactMatrix(weights[distance])


def k_edge_eigenvalue(N: int, m: int, k: int, j: int) -> int:
    """j-th eigenvalue of B, exact.

    ``sum_{i<=k} sum_{l<=i} (-1)^l C(j,l) C(m-j,i-l) C(N-m-j,i-l) C(m-i,k-i)``;
    the inner sum is the Eberlein polynomial giving J_i's eigenvalue.
    """
    p = JohnsonParams(N, m, k)
    if not 0 <= j <= p.t:
        raise InvalidParametersError(f"j = {j} outside 0..min(m, N - m) = 0..{p.t}")
    total = 0
    for i in range(k + 1):
        weight = binom(m - i, k - i)
        if not weight:
            continue
        eberlein = sum(
            (-1) ** l * binom(j, l) * binom(m - j, i - l) * binom(N - m - j, i - l) for l in range(i + 1)
        )
        total += eberlein * weight
    return total


def eigenvalues(N: int, m: int, k: int) -> list[int]:
    t = JohnsonParams(N, m, k).t
    return [k_edge_eigenvalue(N, m, k, j) for j in range(t + 1)]


def annihilation_product(matrix: ExactMatrix, roots) -> ExactMatrix:
    size = matrix.shape[0]
    eye = ExactMatrix.identity(size)
    acc = eye
    for r in roots:
        acc = acc @ (matrix - eye.scale(r))
    return acc


@dataclass(frozen=True)
class SpectrumReport:
    params: JohnsonParams
    eigenvalues: tuple[int, ...]
    annihilates: bool
    regular_degree: int | None
    degree_matches_theta0: bool

    @property
    def zero_in_closed_form(self) -> bool:
        return 0 in self.eigenvalues

    def to_json(self) -> dict:
        return {
            "N": self.params.N,
            "m": self.params.m,
            "k": self.params.k,
            "eigenvalues": list(self.eigenvalues),
            "annihilation": "exact-zero" if self.annihilates else "nonzero",
            "regular_degree": self.regular_degree,
            "degree_matches_theta0": self.degree_matches_theta0,
        }


def verify_spectrum(N: int, m: int, k: int, allow_large: bool = False) -> SpectrumReport:
    """Certify the closed-form eigenvalues against the explicit B.

    Raises :class:`IdentityMismatchError` if ``prod (B - theta_j I)`` is nonzero.
    """
    p = JohnsonParams(N, m, k)
    thetas = tuple(eigenvalues(N, m, k))
    B = b_matrix(N, m, k, allow_large)
    product = annihilation_product(B, thetas)
    row_sums = set(B.row_sums())
    degree = row_sums.pop() if len(row_sums) == 1 else None
    if not product.is_zero():
        i, j = next((i, j) for i in range(product.shape[0]) for j in range(product.shape[1]) if product[i, j])
        raise IdentityMismatchError(
            f"closed-form spectrum fails to annihilate B for N = {N}, m = {m}, k = {k}: "
            f"entry ({i}, {j}) = {product[i, j]}"
        )
    return SpectrumReport(p, thetas, True, degree, degree == thetas[0])


@dataclass(frozen=True)
class SingularityCertificate:
    singular: bool
    method: str
    witness_column: int | None = None


def b_singularity(N: int, m: int, k: int, allow_large: bool = False) -> SingularityCertificate:
    """Decide whether B is singular from the explicit matrix.

    Full rank modulo a prime proves nonsingularity.  Singularity is proved by an
    explicit nonzero kernel vector (a column of the product over the nonzero
    closed-form eigenvalues, checked against B directly), falling back to exact
    fraction-free rank.
    """
    B = b_matrix(N, m, k, allow_large)
    size = B.shape[0]
    if rank_mod_p(B.entries) == size:
        return SingularityCertificate(False, "full rank mod p")
    nonzero = [t for t in dict.fromkeys(eigenvalues(N, m, k)) if t != 0]
    candidate = annihilation_product(B, nonzero)
    image = B @ candidate
    for col in range(size):
        column = [candidate[row, col] for row in range(size)]
        if any(column) and all(image[row, col] == 0 for row in range(size)):
            return SingularityCertificate(True, "explicit kernel vector", col)
    return SingularityCertificate(exact_rank(B) < size, "fraction-free rank")


@dataclass(frozen=True)
class MinusMResult:
    holds: bool
    witness_j: int | None
    witness_eigenvalue: int | None
    closed_form_zero: bool

    @property
    def consistent(self) -> bool:
        return self.holds == self.closed_form_zero


def minus_m_criterion(N: int, m: int) -> MinusMResult:
    """Is -m an eigenvalue of the Johnson graph J(N, m)?  Exactly when m <= N/2."""
    JohnsonParams(N, m, 1)
    holds = 2 * m <= N
    witness = m if holds else None
    # eigenvalue of J at index j is theta_j(B) - m for k = 1
    value = k_edge_eigenvalue(N, m, 1, m) - m if holds else None
    if holds and value != -m:
        raise IdentityMismatchError(f"J({N}, {m}) eigenvalue at j = m is {value}, expected {-m}")
    return MinusMResult(holds, witness, value, 0 in eigenvalues(N, m, 1))


@dataclass(frozen=True)
class IntertwineReport:
    n: int
    m: int
    ap_equals_pb: bool
    p_full_row_rank: bool
    q_of_a_zero: bool
    b_equals_mi_plus_j: bool
    eigenvalues: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.ap_equals_pb and self.p_full_row_rank and self.q_of_a_zero and self.b_equals_mi_plus_j

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "AP=PB": self.ap_equals_pb,
            "P_full_row_rank": self.p_full_row_rank,
            "q(A)=0": self.q_of_a_zero,
            "B=mI+J": self.b_equals_mi_plus_j,
            "eigenvalues": list(self.eigenvalues),
        }


def _labeled_swap_matrix(n: int, m: int) -> ExactMatrix:
    """Remove-one-edge/add-one-edge counts between labeled graphs, from the definition."""
    N = pair_count(n)
    masks = subset_masks(N, m).tolist()
    pos = {x: i for i, x in enumerate(masks)}
    full = (1 << N) - 1
    entries = np.zeros((len(masks), len(masks)), dtype=np.int64)
    for col, g in enumerate(masks):
        for e in range(N):
            if not g >> e & 1:
                continue
            base = g ^ (1 << e)
            absent = base ^ full
            for f in range(N):
                if absent >> f & 1:
                    entries[pos[base | 1 << f], col] += 1
    return ExactMatrix(entries)


def intertwine_check(n: int, m: int, strict: bool = True) -> IntertwineReport:
    """Check ``A P = P B``, rank(P) = rows, and ``q(A) = 0`` for the spectrum q of B.

    Raises :class:`IdentityMismatchError` on any failure unless ``strict`` is off.
    """
    if n > 5:
        raise InvalidParametersError("intertwine_check builds labeled matrices; needs n <= 5")
    N = pair_count(n)
    catalog = enumerate_classes(n, m)
    A = build_operator_matrix("delta", n, m, 1)
    masks = subset_masks(N, m)
    table = canonical_table(n)
    P_entries = np.zeros((len(catalog), len(masks)), dtype=np.int64)
    for col, x in enumerate(masks.tolist()):
        P_entries[catalog.index[int(table[x])], col] = 1
    P = ExactMatrix(P_entries)
    B = b_matrix(N, m, 1)
    thetas = tuple(eigenvalues(N, m, 1))
    q = product_of_linear_factors(thetas)

    ap_pb = (A @ P).first_difference(P @ B)
    report = IntertwineReport(
        n,
        m,
        ap_pb is None,
        exact_rank(P) == len(catalog),
        q(A).is_zero(),
        _labeled_swap_matrix(n, m) == B,
        thetas,
    )
    if strict and not report.ok:
        raise IdentityMismatchError(f"intertwining check failed for (n, m) = ({n}, {m}): {report.to_json()}"
                                    + ("" if ap_pb is None else f"; AP vs PB first differ at {ap_pb}"))
    return report


@dataclass(frozen=True, order=True)
class VanishingHit:
    N: int
    m: int
    k: int
    j: int
    value: int = 0

    def to_json(self) -> dict:
        return {"N": self.N, "m": self.m, "k": self.k, "j": self.j, "value": self.value}


@dataclass(frozen=True)
class ScanSummary:
    N_max: int
    k_max: int
    cells: int
    evaluations: int
    hits: tuple[VanishingHit, ...]

    def hits_for(self, k: int) -> list[VanishingHit]:
        return [h for h in self.hits if h.k == k]

    def jsonl(self, header: dict | None = None) -> str:
        lines = []
        if header is not None:
            lines.append(json.dumps(header, sort_keys=True))
        lines.extend(json.dumps(h.to_json(), sort_keys=True) for h in self.hits)
        lines.append(
            json.dumps(
                {"summary": {"N_max": self.N_max, "k_max": self.k_max, "cells": self.cells,
                             "evaluations": self.evaluations, "hits": len(self.hits)}},
                sort_keys=True,
            )
        )
        return "\n".join(lines) + "\n"


def scan_vanishing(N_max: int, k_max: int, N_min: int = 1) -> ScanSummary:
    """Every (N, m, k, j) with 2m - k + 1 > N and a zero closed-form eigenvalue."""
    if N_max < 0 or k_max < 1 or N_min < 0:
        raise InvalidParametersError("need N_max >= 0, k_max >= 1, N_min >= 0")
    hits = []
    cells = evaluations = 0
    for N in range(N_min, N_max + 1):
        for k in range(1, k_max + 1):
            for m in range(N + 1):
                if 2 * m - k + 1 <= N:
                    continue
                cells += 1
                for j in range(min(m, N - m) + 1):
                    evaluations += 1
                    value = k_edge_eigenvalue(N, m, k, j)
                    if value == 0:
                        hits.append(VanishingHit(N, m, k, j, value))
    return ScanSummary(N_max, k_max, cells, evaluations, tuple(sorted(hits)))


def search_vanishing(N_max: int, k_max: int) -> list[VanishingHit]:
    return list(scan_vanishing(N_max, k_max).hits)
