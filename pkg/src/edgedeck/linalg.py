"""Dense exact matrices over Python integers and fractions.

Entries live in numpy arrays.  Integer matrices use ``int64`` while every
product provably fits (checked from norms before multiplying) and fall back to
``object`` arrays of Python ints otherwise, so results are always exact.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .graph_core import ClassCatalog

_INT64_SAFE = 1 << 62


def _as_exact_array(entries) -> np.ndarray:
    arr = np.asarray(entries)
    if arr.dtype == object:
        return arr
    if np.issubdtype(arr.dtype, np.integer) or arr.dtype == bool:
        return arr.astype(np.int64)
    raise TypeError(f"inexact dtype {arr.dtype} is not allowed in an ExactMatrix")


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(max(abs(x) for x in arr.flat)) if arr.dtype == object else int(np.abs(arr).max())


def _max_row_abs_sum(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return int(max(sum(abs(x) for x in row) for row in arr))
    return int(np.abs(arr).sum(axis=1).max())


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object:
        if _max_row_abs_sum(a) * _max_abs(b) < _INT64_SAFE:
            return a @ b
    return a.astype(object) @ b.astype(object)


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _entry_text(x) -> str:
    return str(_normalize(x))


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Exact dense matrix, optionally indexed by class catalogs on each axis."""

    entries: np.ndarray
    row_catalog: ClassCatalog | None = None
    col_catalog: ClassCatalog | None = None

    def __post_init__(self):
        arr = _as_exact_array(self.entries)
        if arr.ndim != 2:
            raise ValueError(f"ExactMatrix needs a 2-d array, got shape {arr.shape}")
        object.__setattr__(self, "entries", arr)
        if self.row_catalog is not None and len(self.row_catalog) != arr.shape[0]:
            raise ValueError("row catalog size does not match the matrix")
        if self.col_catalog is not None and len(self.col_catalog) != arr.shape[1]:
            raise ValueError("column catalog size does not match the matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int, row_catalog=None, col_catalog=None) -> ExactMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), row_catalog, col_catalog)

    @classmethod
    def identity(cls, size: int, catalog=None) -> ExactMatrix:
        return cls(np.eye(size, dtype=np.int64), catalog, catalog)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def tolist(self) -> list[list]:
        return [[_normalize(x) for x in row] for row in self.entries]

    def __getitem__(self, key):
        return _normalize(self.entries[key])

    def _wrap(self, arr, row_catalog=None, col_catalog=None) -> ExactMatrix:
        return ExactMatrix(
            arr,
            self.row_catalog if row_catalog is None else row_catalog,
            self.col_catalog if col_catalog is None else col_catalog,
        )

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            return ExactMatrix(exact_matmul(self.entries, other.entries), self.row_catalog, other.col_catalog)
        vec = np.asarray(other, dtype=object).reshape(-1, 1)
        return exact_matmul(self.entries.astype(object), vec).reshape(-1)

    def _coerce_pair(self, other: ExactMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        a, b = self.entries, other.entries
        if a.dtype == object or b.dtype == object:
            return a.astype(object), b.astype(object)
        bound = _max_abs(a) + _max_abs(b)
        if bound >= _INT64_SAFE:
            return a.astype(object), b.astype(object)
        return a, b

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        a, b = self._coerce_pair(other)
        return self._wrap(a + b)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        a, b = self._coerce_pair(other)
        return self._wrap(a - b)

    def __neg__(self) -> ExactMatrix:
        return self._wrap(-self.entries)

    def scale(self, c) -> ExactMatrix:
        c = _normalize(c)
        if isinstance(c, int) and self.entries.dtype != object and abs(c) * _max_abs(self.entries) < _INT64_SAFE:
            return self._wrap(self.entries * c)
        return self._wrap(self.entries.astype(object) * c)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.first_difference(other) is None

    __hash__ = None

    def first_difference(self, other: ExactMatrix):
        """``(row, col, mine, theirs)`` of the first unequal entry, or ``None``."""
        if self.shape != other.shape:
            return (None, None, self.shape, other.shape)
        if self.entries.dtype != object and other.entries.dtype != object:
            diff = np.argwhere(self.entries != other.entries)
            if not len(diff):
                return None
            i, j = (int(x) for x in diff[0])
            return (i, j, self[i, j], other[i, j])
        for i in range(self.shape[0]):
            for j in range(self.shape[1]):
                if self.entries[i, j] != other.entries[i, j]:
                    return (i, j, self[i, j], other[i, j])
        return None

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries.flat)

    def column_sums(self) -> list:
        return [_normalize(sum(self.entries[:, j].tolist(), 0)) for j in range(self.shape[1])]

    def row_sums(self) -> list:
        return [_normalize(sum(self.entries[i, :].tolist(), 0)) for i in range(self.shape[0])]

    def power(self, k: int) -> ExactMatrix:
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = ExactMatrix.identity(self.shape[0], self.row_catalog)
        for _ in range(k):
            result = result @ self
        return result

    def digest(self) -> str:
        text = json.dumps([[_entry_text(x) for x in row] for row in self.entries])
        return hashlib.sha256(f"{self.shape}:{text}".encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        def cat(c):
            return None if c is None else {"n": c.n, "m": c.m}

        return {
            "row_catalog": cat(self.row_catalog),
            "col_catalog": cat(self.col_catalog),
            "entries": [[_entry_text(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, doc: dict) -> ExactMatrix:
        from .graph_core import enumerate_classes

        def cat(c):
            return None if c is None else enumerate_classes(int(c["n"]), int(c["m"]))

        rows = [[_normalize(Fraction(x)) for x in row] for row in doc["entries"]]
        arr = np.array(rows, dtype=object) if rows else np.zeros((0, 0), dtype=object)
        return cls(arr, cat(doc.get("row_catalog")), cat(doc.get("col_catalog")))


def bareiss_echelon(rows: list[list]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer/rational matrix.

    Rational input is first cleared of denominators row by row.  Returns the
    echelon rows and the pivot columns.
    """
    work = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        work.append([int(Fraction(x) * den) for x in row])
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r][c]
        for i in range(r + 1, nrows):
            a = work[i][c]
            row_i, row_r = work[i], work[r]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                row_i[j] = (piv * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return work, pivots


def _rows_of(matrix) -> list[list]:
    if isinstance(matrix, ExactMatrix):
        return [list(r) for r in matrix.tolist()]
    return [list(r) for r in matrix]


def exact_rank(matrix) -> int:
    _, pivots = bareiss_echelon(_rows_of(matrix))
    return len(pivots)


def solve_exact(matrix, rhs) -> list[Fraction] | None:
    """Unique solution of ``matrix @ x = rhs`` over the rationals.

    Returns ``None`` when the system is inconsistent.  Raises ``ValueError``
    when the solution is not unique.
    """
    rows = _rows_of(matrix)
    ncols = len(rows[0]) if rows else 0
    aug = [r + [b] for r, b in zip(rows, rhs)]
    echelon, pivots = bareiss_echelon(aug)
    if ncols in pivots:
        return None
    if len(pivots) < ncols:
        raise ValueError("system has a nontrivial kernel; solution is not unique")
    x = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        acc = Fraction(echelon[r][ncols])
        for j in range(c + 1, ncols):
            acc -= echelon[r][j] * x[j]
        x[c] = acc / echelon[r][c]
    return x


def nullspace(matrix) -> list[list[Fraction]]:
    """Basis of the right kernel over the rationals."""
    rows = _rows_of(matrix)
    ncols = len(rows[0]) if rows else 0
    echelon, pivots = bareiss_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            acc = Fraction(0)
            for j in range(c + 1, ncols):
                acc -= echelon[r][j] * x[j]
            x[c] = acc / echelon[r][c]
        basis.append(x)
    return basis


def rank_mod_p(arr: np.ndarray, p: int = 2_147_483_647) -> int:
    """Rank over GF(p); a lower bound for the rational rank of an integer matrix."""
    a = np.array([[int(x) % p for x in row] for row in arr], dtype=np.int64)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if not len(nz):
            continue
        k = r + int(nz[0])
        a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c].copy()
        if below.any():
            # p < 2^31 keeps each product below 2^62
            a[r + 1:] = (a[r + 1:] - (below[:, None] * a[r][None, :]) % p) % p
        r += 1
    return r
