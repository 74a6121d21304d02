from math import lcm

import pytest

from edgedeck.decks import (
    MultiVector,
    apply,
    build_lift_matrix,
    build_operator_matrix,
    complement_vector,
    edge_deck,
    modified_deck,
)
from edgedeck.errors import MalformedDeckError, NotRealizableDeckError, OutOfRegimeError
from edgedeck.graph_core import LabeledGraph, enumerate_classes, pair_count
from edgedeck.linalg import nullspace
from edgedeck.reconstruction import (
    ALTERNATING,
    COMPLEMENT,
    DIRECT_SOLVE,
    edge_deck_from_modified,
    exceeds_half,
    inverse_polynomial,
    kernel_report,
    reconstruct_edge_deck,
    reconstruct_from_delta1,
)

K3 = LabeledGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
P3 = LabeledGraph.from_edges(3, [(0, 1), (1, 2)])
P3_K1 = LabeledGraph.from_edges(4, [(0, 1), (1, 2)])
K2_IN_4 = LabeledGraph.from_edges(4, [(0, 1)])

ALL_CELLS = [(n, m) for n in range(1, 6) for m in range(pair_count(n) + 1)]
ABOVE_HALF_CELLS = [(n, m) for n, m in ALL_CELLS if exceeds_half(pair_count(n), m)]


def vector(n, m, counts):
    return MultiVector(enumerate_classes(n, m), tuple(counts))


def single(g, count=1):
    v = MultiVector.of_graph(g)
    return MultiVector(v.catalog, tuple(c * count for c in v.counts))


def test_triangle_from_delta1():
    result = reconstruct_from_delta1(vector(3, 3, [3]))
    assert result.recovered.counts == (1,)
    assert result.route == ALTERNATING
    # Delta_1 - Delta_2 + Delta_3 on the 1x1 catalog: 3 - 3 + 1
    assert [build_operator_matrix("delta", 3, 3, i).tolist()[0][0] for i in (1, 2, 3)] == [3, 3, 1]


def test_two_class_sum_at_4_4():
    x = vector(4, 4, [1, 1])
    v = apply(build_operator_matrix("delta", 4, 4, 1), x)
    assert reconstruct_from_delta1(v, r=2).recovered == x


def test_zero_vector_recovers_zero():
    zero = MultiVector.zero(enumerate_classes(5, 7))
    assert reconstruct_from_delta1(zero).recovered == zero


def test_out_of_regime_is_refused():
    with pytest.raises(OutOfRegimeError):
        reconstruct_from_delta1(modified_deck(P3_K1, 1))
    with pytest.raises(OutOfRegimeError):
        inverse_polynomial(6, 3)


def test_inverse_polynomial_inverts_delta1():
    for n, m in ABOVE_HALF_CELLS:
        delta1 = build_operator_matrix("delta", n, m, 1)
        size = delta1.shape[0]
        product = inverse_polynomial(pair_count(n), m)(delta1) @ delta1
        assert product == type(delta1).identity(size), (n, m)


@pytest.mark.parametrize("n, m", ABOVE_HALF_CELLS)
def test_routes_agree_on_every_class(n, m):
    delta1 = build_operator_matrix("delta", n, m, 1)
    for g in enumerate_classes(n, m).graphs():
        x = single(g)
        result = reconstruct_from_delta1(apply(delta1, x), r=1)
        assert result.recovered == x


def test_edge_deck_examples():
    result = reconstruct_edge_deck(single(K3, 3))
    assert result.recovered == single(P3, 3)
    assert result.route == DIRECT_SOLVE

    md = modified_deck(P3_K1, 1)
    assert md.to_multiset() == {"CB": 8, "CK": 2}
    result = reconstruct_edge_deck(md, r=1)
    assert result.recovered == single(K2_IN_4, 2)
    assert result.route == COMPLEMENT


def test_empty_collection_gives_empty_deck():
    md = MultiVector.zero(enumerate_classes(4, 0))
    result = reconstruct_edge_deck(md, r=0)
    assert result.recovered.total == 0 and result.recovered.counts == ()
    # a single edgeless graph has an empty modified deck too
    assert reconstruct_edge_deck(modified_deck(LabeledGraph(4, 0), 1), r=1).recovered.total == 0


@pytest.mark.parametrize("n, m", ALL_CELLS)
def test_round_trip_every_class(n, m):
    for g in enumerate_classes(n, m).graphs():
        got = edge_deck_from_modified(modified_deck(g, 1), r=1)
        if m == 0:
            assert got.total == 0
        else:
            assert got == edge_deck(g, 1), (n, m, g)


@pytest.mark.parametrize("n, m", [(n, m) for n, m in ALL_CELLS if 1 <= m and not exceeds_half(pair_count(n), m)])
def test_complement_pipeline_identity(n, m):
    # complemented MD_1(G) is d_1 of P' = {F^c : F in ED_1(G)} on N - m + 1 edges
    N = pair_count(n)
    d1_prime = build_operator_matrix("edgedeck", n, N - m + 1, 1)
    for g in enumerate_classes(n, m).graphs():
        p_prime = complement_vector(edge_deck(g, 1))
        assert apply(d1_prime, p_prime) == complement_vector(modified_deck(g, 1))
        lifted = apply(build_lift_matrix(n, N - m + 1, 1), complement_vector(modified_deck(g, 1)))
        assert reconstruct_from_delta1(lifted).recovered == p_prime


def _integer_kernel_vectors(matrix):
    for z in nullspace(matrix):
        scale = lcm(*(x.denominator for x in z))
        yield [int(x * scale) for x in z]


@pytest.mark.parametrize("n, m", [(n, m) for n, m in ALL_CELLS if m >= 1])
def test_equal_modified_decks_force_equal_edge_decks(n, m, rng):
    delta1 = build_operator_matrix("delta", n, m, 1)
    d1 = build_operator_matrix("edgedeck", n, m, 1)
    kernel = list(_integer_kernel_vectors(delta1))
    if exceeds_half(pair_count(n), m):
        assert not kernel
    for z in kernel:
        for _ in range(5):
            base = [rng.randrange(3) for _ in z]
            p = vector(n, m, [b + max(x, 0) for b, x in zip(base, z)])
            q = vector(n, m, [b + max(-x, 0) for b, x in zip(base, z)])
            assert p != q
            assert apply(delta1, p) == apply(delta1, q)
            assert apply(d1, p) == apply(d1, q)


def test_kernel_cells_below_half_exist():
    # keeps the previous test from being vacuous
    assert any(kernel_report(n, m).delta1_rank < kernel_report(n, m).delta1_shape[1] for n, m in ALL_CELLS)


def test_kernel_report_examples():
    report = kernel_report(4, 4)
    assert report.delta1_shape == (2, 2) and report.delta1_injective and report.regime == "m > N/2"
    report = kernel_report(3, 3)
    assert report.delta1_shape == (1, 1) and report.delta1_rank == 1
    assert build_operator_matrix("delta", 3, 3, 1).tolist() == [[3]]
    report = kernel_report(4, 3)
    assert report.regime == "m = N/2"
    assert (report.delta1_shape, report.delta1_rank, report.d1_rank) == ((3, 3), 2, 2)
    assert kernel_report(5, 5).delta1_injective
    assert kernel_report(4, 0).to_json()["d1"] is None


def test_delta1_injective_above_half():
    for n, m in ABOVE_HALF_CELLS:
        assert kernel_report(n, m).delta1_injective


def test_total_mismatch_is_malformed():
    md = modified_deck(P3_K1, 1)
    bumped = MultiVector(md.catalog, (md.counts[0] + 1,) + md.counts[1:])
    with pytest.raises(MalformedDeckError):
        reconstruct_edge_deck(bumped)
    with pytest.raises(MalformedDeckError):
        reconstruct_edge_deck(md, r=2)
    with pytest.raises(MalformedDeckError):
        reconstruct_edge_deck(md, r=-1)


@pytest.mark.parametrize("n, m", [(4, 2), (4, 4), (5, 3), (5, 7)])
def test_moved_unit_is_not_realizable(n, m):
    catalog = enumerate_classes(n, m)
    for g in catalog.graphs():
        md = modified_deck(g, 1)
        for src in range(len(md.counts)):
            if not md.counts[src]:
                continue
            for dst in range(len(md.counts)):
                if dst == src:
                    continue
                counts = list(md.counts)
                counts[src] -= 1
                counts[dst] += 1
                with pytest.raises(NotRealizableDeckError):
                    reconstruct_edge_deck(MultiVector(md.catalog, tuple(counts)), r=1)


def test_malformed_is_a_kind_of_not_realizable():
    assert issubclass(MalformedDeckError, NotRealizableDeckError)
