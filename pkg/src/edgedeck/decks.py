"""Edge, perturbed and modified decks as multiplicity vectors and operator matrices.

For a graph G with edge set E and i removed/added pairs:

* edge deck ``ED_i``: G - X over all X subset of E, |X| = i;
* perturbed deck ``PD_i``: G - X + Y with Y drawn from the non-edges of G;
* modified deck ``MD_i``: G - X + Y with Y drawn from the pairs absent in
  G - X, so removed pairs may be put back.

The operator matrices ``delta`` (MD), ``perturbed`` (PD) and ``edgedeck`` (ED)
have one column per class of the source catalog holding that class's deck.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import InvalidParametersError, MalformedDeckError
from .graph_core import (
    ClassCatalog,
    LabeledGraph,
    canonical_table,
    check_vertex_count,
    enumerate_classes,
    graph6_decode,
    graph6_encode,
    pair_count,
)
from .linalg import ExactMatrix

DECK_KINDS = ("delta", "perturbed", "edgedeck")


@dataclass(frozen=True)
class MultiVector:
    """Nonnegative integer multiplicities indexed by a class catalog."""

    catalog: ClassCatalog
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != len(self.catalog):
            raise InvalidParametersError(
                f"vector of length {len(counts)} does not match catalog of size {len(self.catalog)}"
            )
        if any(c < 0 for c in counts):
            raise InvalidParametersError("multiplicities must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def zero(cls, catalog: ClassCatalog) -> MultiVector:
        return cls(catalog, (0,) * len(catalog))

    @classmethod
    def of_graph(cls, g: LabeledGraph) -> MultiVector:
        catalog = enumerate_classes(g.n, g.m)
        counts = [0] * len(catalog)
        counts[catalog.position(g)] = 1
        return cls(catalog, tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __add__(self, other: MultiVector) -> MultiVector:
        if other.catalog.key != self.catalog.key:
            raise InvalidParametersError("cannot add vectors over different catalogs")
        return MultiVector(self.catalog, tuple(a + b for a, b in zip(self.counts, other.counts)))

    def items(self):
        """``(graph6, multiplicity)`` for every class present, in catalog order."""
        for pos, c in enumerate(self.counts):
            if c:
                yield graph6_encode(self.catalog.graph(pos)), c

    def to_multiset(self) -> dict[str, int]:
        return dict(self.items())

    @classmethod
    def from_multiset(cls, n: int, m: int, multiset: dict[str, int]) -> MultiVector:
        """Parse ``{graph6: count}``; any labeling of a class is accepted."""
        catalog = enumerate_classes(n, m)
        counts = [0] * len(catalog)
        for text, mult in multiset.items():
            g = graph6_decode(text)
            if g.n != n or g.m != m:
                raise MalformedDeckError(f"deck member {text!r} has n = {g.n}, m = {g.m}; expected ({n}, {m})")
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 0:
                raise MalformedDeckError(f"multiplicity of {text!r} must be a nonnegative integer, got {mult!r}")
            counts[catalog.position(g)] += mult
        return cls(catalog, tuple(counts))

    def to_json(self) -> dict:
        return {"n": self.catalog.n, "m": self.catalog.m, "counts": [str(c) for c in self.counts]}


def _bits(mask: int) -> list[int]:
    out = []
    b = 0
    while mask:
        if mask & 1:
            out.append(b)
        mask >>= 1
        b += 1
    return out


def _check_i(i: int) -> None:
    if not isinstance(i, int) or i < 0:
        raise InvalidParametersError(f"deck depth must be a nonnegative integer, got {i!r}")


def _tally(n: int, masks, catalog: ClassCatalog) -> MultiVector:
    table = canonical_table(n)
    counter = Counter(int(table[x]) for x in masks)
    counts = [0] * len(catalog)
    for code, c in counter.items():
        counts[catalog.index[code]] += c
    return MultiVector(catalog, tuple(counts))


def _subset_masks(positions: list[int], size: int):
    for chosen in combinations(positions, size):
        mask = 0
        for b in chosen:
            mask |= 1 << b
        yield mask


def _edge_deck_masks(g: LabeledGraph, i: int):
    for x in _subset_masks(_bits(g.edges), i):
        yield g.edges ^ x


def _perturbed_masks(g: LabeledGraph, i: int):
    non_edges = _bits(g.edges ^ ((1 << g.N) - 1))
    for x in _subset_masks(_bits(g.edges), i):
        base = g.edges ^ x
        for y in _subset_masks(non_edges, i):
            yield base | y


def _modified_masks(g: LabeledGraph, i: int):
    full = (1 << g.N) - 1
    for x in _subset_masks(_bits(g.edges), i):
        base = g.edges ^ x
        for y in _subset_masks(_bits(base ^ full), i):
            yield base | y


def edge_deck(g: LabeledGraph, i: int) -> MultiVector:
    _check_i(i)
    if i > g.m:
        raise InvalidParametersError(f"cannot delete {i} edges from a graph with {g.m}")
    return _tally(g.n, _edge_deck_masks(g, i), enumerate_classes(g.n, g.m - i))


def perturbed_deck(g: LabeledGraph, i: int) -> MultiVector:
    """``PD_i(g)``; empty (zero vector) when g lacks i edges or i non-edges."""
    _check_i(i)
    return _tally(g.n, _perturbed_masks(g, i), enumerate_classes(g.n, g.m))


def modified_deck(g: LabeledGraph, i: int) -> MultiVector:
    _check_i(i)
    return _tally(g.n, _modified_masks(g, i), enumerate_classes(g.n, g.m))


def expected_total(kind: str, N: int, m: int, i: int) -> int:
    """Deck size of a single (N, m)-graph: the column sum of the operator matrix."""
    if kind == "delta":
        return comb(m, i) * comb(N - m + i, i)
    if kind == "perturbed":
        return comb(m, i) * comb(N - m, i)
    if kind == "edgedeck":
        return comb(m, i)
    if kind == "lift":
        return comb(N - m + i, i)
    raise InvalidParametersError(f"unknown operator kind {kind!r}")


def _check_nm(n: int, m: int) -> None:
    N = pair_count(n)
    if not 0 <= m <= N:
        raise InvalidParametersError(f"m = {m} outside 0..{N}")


@lru_cache(maxsize=None)
def _operator(kind: str, n: int, m: int, i: int) -> ExactMatrix:
    source = enumerate_classes(n, m)
    deck = {"delta": modified_deck, "perturbed": perturbed_deck, "edgedeck": edge_deck}[kind]
    target = enumerate_classes(n, m - i) if kind == "edgedeck" else source
    entries = np.zeros((len(target), len(source)), dtype=object)
    for col, g in enumerate(source.graphs()):
        entries[:, col] = deck(g, i).counts
    return ExactMatrix(_shrink(entries), target, source)


def _shrink(entries: np.ndarray) -> np.ndarray:
    if entries.size and max(abs(int(x)) for x in entries.flat) < (1 << 62):
        return entries.astype(np.int64)
    return entries


def build_operator_matrix(kind: str, n: int, m: int, i: int) -> ExactMatrix:
    """Dense deck operator: ``delta`` (MD_i), ``perturbed`` (PD_i) or ``edgedeck`` (ED_i)."""
    if kind not in DECK_KINDS:
        raise InvalidParametersError(f"unknown operator kind {kind!r}; expected one of {DECK_KINDS}")
    _check_i(i)
    check_vertex_count(n)
    _check_nm(n, m)
    if kind == "edgedeck" and i > m:
        raise InvalidParametersError(f"edge deck depth {i} exceeds m = {m}")
    return _operator(kind, n, m, i)


@lru_cache(maxsize=None)
def _lift(n: int, m: int, i: int) -> ExactMatrix:
    target = enumerate_classes(n, m)
    source = enumerate_classes(n, m - i)
    table = canonical_table(n)
    full = (1 << pair_count(n)) - 1
    entries = np.zeros((len(target), len(source)), dtype=np.int64)
    for col, g in enumerate(source.graphs()):
        for y in _subset_masks(_bits(g.edges ^ full), i):
            entries[target.index[int(table[g.edges | y])], col] += 1
    return ExactMatrix(entries, target, source)


def build_lift_matrix(n: int, m: int, i: int) -> ExactMatrix:
    """Add-i-edges operator from (n, m - i) classes to (n, m) classes."""
    _check_i(i)
    check_vertex_count(n)
    _check_nm(n, m)
    if i > m:
        raise InvalidParametersError(f"lift depth {i} exceeds m = {m}")
    return _lift(n, m, i)


def apply(matrix: ExactMatrix, vector: MultiVector) -> MultiVector:
    if matrix.col_catalog is None or matrix.col_catalog.key != vector.catalog.key:
        raise InvalidParametersError("vector catalog does not match the operator's columns")
    return MultiVector(matrix.row_catalog, tuple(int(x) for x in matrix @ list(vector.counts)))


def complement_vector(vector: MultiVector) -> MultiVector:
    """Multiset of complements, re-indexed by the (n, N - m) catalog."""
    n, m = vector.catalog.key
    N = pair_count(n)
    target = enumerate_classes(n, N - m)
    full = (1 << N) - 1
    table = canonical_table(n)
    counts = [0] * len(target)
    for code, c in zip(vector.catalog.classes, vector.counts):
        if c:
            counts[target.index[int(table[code ^ full])]] += c
    return MultiVector(target, tuple(counts))
