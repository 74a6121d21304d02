"""Small labeled graphs, canonical forms, isomorphism-class catalogs, graph6.

A graph on ``n`` vertices is an integer bitset over the ``N = C(n, 2)`` vertex
pairs.  Pairs are numbered in colex order, ``index(u, v) = C(v, 2) + u`` for
``u < v``, which is also the order graph6 uses for its upper-triangle bits.
That ordering is frozen: serialized catalogs store raw bitsets.
"""

from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .errors import Graph6ParseError, InvalidPairError, InvalidParametersError

MAX_N = 6
OVERRIDE_N = 7
ALLOW_LARGE_ENV = "EDGEDECK_ALLOW_LARGE"


def large_override_enabled() -> bool:
    return os.environ.get(ALLOW_LARGE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


def check_vertex_count(n: int, allow_large: bool = False) -> None:
    """Enforce the n <= 6 limit (n = 7 only with an explicit override)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParametersError(f"vertex count must be a positive integer, got {n!r}")
    if n <= MAX_N:
        return
    if n == OVERRIDE_N and (allow_large or large_override_enabled()):
        warnings.warn(
            "n = 7 enumerates 2^21 labeled graphs; expect minutes of runtime and ~100 MB",
            RuntimeWarning,
            stacklevel=3,
        )
        return
    raise InvalidParametersError(
        f"n = {n} exceeds the limit n <= {MAX_N}"
        + (f" (n = {OVERRIDE_N} needs the override flag or {ALLOW_LARGE_ENV}=1)" if n == OVERRIDE_N else "")
    )


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(u: int, v: int, n: int) -> int:
    """Bit position of the unordered pair {u, v} among the C(n, 2) pairs."""
    if not (0 <= u < n and 0 <= v < n):
        raise InvalidPairError(f"pair ({u}, {v}) out of range for n = {n}")
    if u == v:
        raise InvalidPairError(f"pair ({u}, {v}) is a loop")
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs (u, v), u < v, listed by bit position."""
    return tuple((u, v) for v in range(n) for u in range(v))


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    edges: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParametersError(f"graph needs at least one vertex, got n = {self.n}")
        if self.edges < 0 or self.edges >> pair_count(self.n):
            raise InvalidParametersError(f"edge bitset {self.edges:#x} has bits beyond C({self.n}, 2)")

    @classmethod
    def from_edges(cls, n: int, edges) -> LabeledGraph:
        mask = 0
        for u, v in edges:
            mask |= 1 << pair_index(u, v, n)
        return cls(n, mask)

    @property
    def N(self) -> int:
        return pair_count(self.n)

    @property
    def m(self) -> int:
        return self.edges.bit_count()

    def edge_list(self) -> list[tuple[int, int]]:
        return [p for b, p in enumerate(pair_list(self.n)) if self.edges >> b & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.edges >> pair_index(u, v, self.n) & 1)

    def relabel(self, perm) -> LabeledGraph:
        """Image under the vertex map ``i -> perm[i]``."""
        mask = 0
        for u, v in self.edge_list():
            mask |= 1 << pair_index(perm[u], perm[v], self.n)
        return LabeledGraph(self.n, mask)

    def neighbor_masks(self) -> list[int]:
        adj = [0] * self.n
        for u, v in self.edge_list():
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj


def complement(g: LabeledGraph) -> LabeledGraph:
    return LabeledGraph(g.n, g.edges ^ ((1 << g.N) - 1))


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Canonical bitset of an isomorphism class.

    Among all relabelings, the chosen bitset is the one whose bit string, read
    from pair 0 upward, is lexicographically smallest.  Codes of a fixed ``n``
    compare by their integer value.
    """

    n: int
    code: int

    def graph(self) -> LabeledGraph:
        return LabeledGraph(self.n, self.code)

    @property
    def m(self) -> int:
        return self.code.bit_count()


def canonicalize(g: LabeledGraph) -> CanonicalCode:
    """Canonical code by permutation search with prefix pruning.

    Labels are handed out in increasing order.  Assigning label ``t`` fixes
    the bits of pairs (0, t) .. (t-1, t), which are the next ``t`` positions of
    the bit string, so at each depth only branches achieving the minimal new
    block survive.
    """
    n = g.n
    adj = g.neighbor_masks()
    frontier: list[tuple[int, ...]] = [()]
    for t in range(n):
        best = None
        survivors: list[tuple[int, ...]] = []
        for assigned in frontier:
            used = set(assigned)
            for v in range(n):
                if v in used:
                    continue
                block = tuple(adj[w] >> v & 1 for w in assigned)
                if best is None or block < best:
                    best = block
                    survivors = [assigned + (v,)]
                elif block == best:
                    survivors.append(assigned + (v,))
        frontier = survivors
    order = frontier[0]
    code = 0
    for b, (u, v) in enumerate(pair_list(n)):
        if adj[order[u]] >> order[v] & 1:
            code |= 1 << b
    return CanonicalCode(n, code)


def is_isomorphic_bruteforce(g: LabeledGraph, h: LabeledGraph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return any(g.relabel(p) == h for p in permutations(range(g.n)))


@lru_cache(maxsize=None)
def _permutation_pair_maps(n: int) -> np.ndarray:
    """Row p maps each pair position to its position under permutation p."""
    pairs = pair_list(n)
    rows = [[pair_index(p[u], p[v], n) for u, v in pairs] for p in permutations(range(n))]
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(pairs))


def _orbit(mask: int, n: int) -> tuple[np.ndarray, int]:
    N = pair_count(n)
    maps = _permutation_pair_maps(n)
    bits = (mask >> np.arange(N, dtype=np.int64)) & 1
    images = (bits[None, :] << maps).sum(axis=1)
    reversed_images = (bits[None, :] << (N - 1 - maps)).sum(axis=1)
    return images, int(images[int(np.argmin(reversed_images))])


@lru_cache(maxsize=None)
def canonical_table(n: int) -> np.ndarray:
    """Canonical code of every labeled graph on ``n`` vertices, indexed by bitset.

    Built one orbit at a time; picks the same representative as
    :func:`canonicalize` (minimal bit-reversed value).
    """
    N = pair_count(n)
    table = np.full(1 << N, -1, dtype=np.int64)
    for mask in range(1 << N):
        if table[mask] >= 0:
            continue
        images, code = _orbit(mask, n)
        table[images] = code
    return table


def canonical_code_of_mask(n: int, mask: int) -> int:
    return int(canonical_table(n)[mask])


@dataclass(frozen=True)
class ClassCatalog:
    """Ordered isomorphism classes of (n, m)-graphs; the indexing of every vector."""

    n: int
    m: int
    classes: tuple[int, ...]
    index: dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {c: i for i, c in enumerate(self.classes)})

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def N(self) -> int:
        return pair_count(self.n)

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.m)

    def graph(self, pos: int) -> LabeledGraph:
        return LabeledGraph(self.n, self.classes[pos])

    def graphs(self) -> list[LabeledGraph]:
        return [LabeledGraph(self.n, c) for c in self.classes]

    def position_of_mask(self, mask: int) -> int:
        return self.index[canonical_code_of_mask(self.n, mask)]

    def position(self, g: LabeledGraph) -> int:
        if g.n != self.n or g.m != self.m:
            raise InvalidParametersError(
                f"graph with n = {g.n}, m = {g.m} does not belong to catalog ({self.n}, {self.m})"
            )
        return self.position_of_mask(g.edges)

    def to_json(self) -> dict:
        width = max(1, (self.N + 3) // 4)
        return {"n": self.n, "m": self.m, "classes": [f"{c:0{width}x}" for c in self.classes]}

    @classmethod
    def from_json(cls, doc: dict) -> ClassCatalog:
        n, m = int(doc["n"]), int(doc["m"])
        codes = tuple(int(h, 16) for h in doc["classes"])
        catalog = cls(n, m, codes)
        expected = enumerate_classes(n, m)
        if catalog.classes != expected.classes:
            raise InvalidParametersError(f"serialized catalog for ({n}, {m}) does not match enumeration")
        return expected


@lru_cache(maxsize=None)
def _classes_by_edge_count(n: int) -> dict[int, tuple[int, ...]]:
    codes = np.unique(canonical_table(n))
    grouped: dict[int, list[int]] = {}
    for c in codes.tolist():
        grouped.setdefault(c.bit_count(), []).append(c)
    return {m: tuple(sorted(cs)) for m, cs in grouped.items()}


@lru_cache(maxsize=None)
def _catalog(n: int, m: int) -> ClassCatalog:
    return ClassCatalog(n, m, _classes_by_edge_count(n).get(m, ()))


def enumerate_classes(n: int, m: int, allow_large: bool = False) -> ClassCatalog:
    """All non-isomorphic graphs with ``n`` vertices and ``m`` edges, sorted by code."""
    check_vertex_count(n, allow_large)
    N = pair_count(n)
    if not 0 <= m <= N:
        raise InvalidParametersError(f"m = {m} outside 0..{N}: m exceeds C(n,2)" if m > N else f"m = {m} is negative")
    return _catalog(n, m)


def labeled_graphs(n: int, m: int):
    """Every labeled (n, m)-graph as a bitset, in combination order."""
    for pairs in combinations(range(pair_count(n)), m):
        yield sum(1 << b for b in pairs)


# graph6 --------------------------------------------------------------------

GRAPH6_MAX_N = 62


def graph6_encode(g: LabeledGraph) -> str:
    """Short-form graph6 (n <= 62)."""
    if g.n > GRAPH6_MAX_N:
        raise InvalidParametersError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {g.n}")
    N = g.N
    out = [chr(g.n + 63)]
    for start in range(0, N, 6):
        chunk = 0
        for k in range(6):
            chunk <<= 1
            if start + k < N and g.edges >> (start + k) & 1:
                chunk |= 1
        out.append(chr(chunk + 63))
    return "".join(out)


def graph6_decode(text: str) -> LabeledGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6ParseError("empty graph6 string", 0)
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6ParseError(f"byte {ch!r} outside the graph6 range 63..126", pos)
    if s[0] == "~":
        raise Graph6ParseError("long-form size header (n > 62) is not supported", 0)
    n = ord(s[0]) - 63
    if n == 0:
        raise Graph6ParseError("graph6 with zero vertices is not a valid graph here", 0)
    N = pair_count(n)
    need = (N + 5) // 6
    body = s[1:]
    if len(body) != need:
        offset = 1 + min(len(body), need)
        raise Graph6ParseError(f"expected {need} data bytes for n = {n}, found {len(body)}", offset)
    edges = 0
    for k, ch in enumerate(body):
        chunk = ord(ch) - 63
        for j in range(6):
            b = 6 * k + j
            if chunk >> (5 - j) & 1:
                if b >= N:
                    raise Graph6ParseError("nonzero padding bit", 1 + k)
                edges |= 1 << b
    return LabeledGraph(n, edges)


def catalog_dumps(catalog: ClassCatalog) -> str:
    return json.dumps(catalog.to_json(), sort_keys=True)
