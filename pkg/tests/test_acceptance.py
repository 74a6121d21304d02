"""End-to-end acceptance checks, all exact.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per criterion.
"""

import functools
import json
import random
from fractions import Fraction
from math import comb

import pytest

from edgedeck.decks import MultiVector, apply, build_operator_matrix, edge_deck, modified_deck
from edgedeck.errors import NotRealizableDeckError
from edgedeck.graph_core import enumerate_classes, pair_count
from edgedeck.johnson import SIZE_GUARD, b_singularity, intertwine_check, minus_m_criterion, search_vanishing, verify_spectrum
from edgedeck.operator_algebra import (
    delta_polynomial,
    verify_deck_sum,
    verify_delta_polynomial,
    verify_inversion,
    verify_recursion,
)
from edgedeck.polynomial import OperatorPolynomial
from edgedeck.reconstruction import edge_deck_from_modified, exceeds_half, reconstruct_edge_deck, reconstruct_from_delta1

from .oracles import class_counts_by_m

CELLS = [(n, m) for n in range(1, 6) for m in range(pair_count(n) + 1)]


def criterion(number, title):
    """Print a PASS/FAIL line for the decorated check and re-raise failures."""

    def wrap(check):
        @functools.wraps(check)
        def run(*args, **kwargs):
            try:
                check(*args, **kwargs)
            except BaseException:
                print(f"\nFAIL criterion {number}: {title}")
                raise
            print(f"\nPASS criterion {number}: {title}")

        return run

    return wrap


@criterion(1, "class catalogs match brute-force counts (n = 4 table, n = 5 orbit partition)")
def test_catalog_counts():
    assert tuple(len(enumerate_classes(4, m)) for m in range(7)) == (1, 1, 2, 3, 2, 1, 1)
    oracle = class_counts_by_m(5)
    assert {m: len(enumerate_classes(5, m)) for m in range(11)} == dict(oracle)


@criterion(2, "Delta_k = sum C(m-i, k-i) D_i for n <= 5, k <= min(m, 4)")
def test_deck_sum_identity():
    for n, m in CELLS:
        for k in range(min(m, 4) + 1):
            report = verify_deck_sum(n, m, k)
            assert report.ok, report.to_json()


@criterion(3, "three-term recursion for D_i, n <= 5, i in {1, 2, 3}")
def test_recursion_identity():
    for n, m in CELLS:
        for i in (1, 2, 3):
            report = verify_recursion(n, m, i)
            assert report.ok, report.to_json()


@criterion(4, "D_k is the alternating Delta-sum; D_m = 0 when m > N/2")
def test_inversion_identity():
    for n, m in CELLS:
        for k in range(min(m, 4) + 1):
            report = verify_inversion(n, m, k)
            assert report.ok, report.to_json()
        if exceeds_half(pair_count(n), m):
            assert build_operator_matrix("perturbed", n, m, m).is_zero(), (n, m)


@criterion(5, "Delta_i = p_i(Delta_1) with p_i(0) = 0; p_2 = ((2(m-1)-N)/4) t + t^2/4")
def test_delta_polynomials():
    for n, m in CELLS:
        N = pair_count(n)
        for i in range(1, min(m, 4) + 1):
            assert delta_polynomial(N, m, i).constant_term == 0
            report = verify_delta_polynomial(n, m, i)
            assert report.ok, report.to_json()
        if m >= 2:
            p2 = delta_polynomial(N, m, 2)
            assert p2 == OperatorPolynomial((0, Fraction(2 * (m - 1) - N, 4), Fraction(1, 4)))


@criterion(6, "ED_1 rebuilt from MD_1 for every class with n <= 5")
def test_edge_deck_from_modified_deck():
    routes = set()
    for n, m in CELLS:
        for g in enumerate_classes(n, m).graphs():
            md = modified_deck(g, 1)
            result = reconstruct_edge_deck(md, r=1)
            routes.add(result.route)
            if m == 0:
                assert result.recovered.total == 0
                continue
            assert result.recovered == edge_deck(g, 1), (n, m)
            assert edge_deck_from_modified(md) == edge_deck(g, 1)
    assert routes == {"direct-solve", "complement-pipeline"}


@criterion(7, "alternating formula and exact solve agree and recover X_P (all classes, 100 random collections)")
def test_alternating_formula_recovers_collections(seed):
    cells = [(n, m) for n, m in CELLS if exceeds_half(pair_count(n), m)]
    for n, m in cells:
        delta1 = build_operator_matrix("delta", n, m, 1)
        for g in enumerate_classes(n, m).graphs():
            x = MultiVector.of_graph(g)
            assert reconstruct_from_delta1(apply(delta1, x), r=1).recovered == x

    rng = random.Random(seed)
    multi = [(n, m) for n, m in cells if len(enumerate_classes(n, m)) >= 2]
    for _ in range(100):
        n, m = rng.choice(multi)
        catalog = enumerate_classes(n, m)
        counts = [0] * len(catalog)
        picks = rng.sample(range(len(catalog)), rng.randint(2, len(catalog)))
        for pos in picks:
            counts[pos] = rng.randint(1, 4)
        x = MultiVector(catalog, tuple(counts))
        v = apply(build_operator_matrix("delta", n, m, 1), x)
        result = reconstruct_from_delta1(v, r=sum(counts))
        assert result.recovered == x and result.route == "alternating-formula"


@criterion(8, "Johnson spectra annihilate B; -m criterion matches zero-detection; AP = PB")
def test_johnson_spectra():
    for N in range(1, 11):
        for m in range(0, min(5, N) + 1):
            if comb(N, m) > SIZE_GUARD:
                continue
            for k in range(0, min(2, m) + 1):
                assert verify_spectrum(N, m, k).annihilates
            crit = minus_m_criterion(N, m)
            assert crit.holds == crit.closed_form_zero == b_singularity(N, m, 1).singular == (0 in verify_spectrum(N, m, 1).eigenvalues)
    for n in range(1, 5):
        for m in range(pair_count(n) + 1):
            assert intertwine_check(n, m).ok


@criterion(9, "vanishing scan to N = 30, k = 3 runs; k = 1 has no hits")
def test_vanishing_scan(tmp_path):
    hits = search_vanishing(30, 3)
    report = tmp_path / "scan.jsonl"
    report.write_text("".join(json.dumps(h.to_json(), sort_keys=True) + "\n" for h in hits))
    assert report.exists()
    assert [h for h in hits if h.k == 1] == []
    for N in range(1, 31):
        for m in range(N + 1):
            if 2 * m > N:
                crit = minus_m_criterion(N, m)
                assert not crit.holds and not crit.closed_form_zero
    higher = [h for h in hits if h.k >= 2]
    print(f"\n  k >= 2 hits (recorded, not asserted): {len(higher)}")


@criterion(10, "a perturbed MD_1 multiplicity is rejected as not realizable")
def test_corrupted_deck_rejected():
    for n, m, pos in [(4, 2, 0), (4, 4, 1), (5, 6, 2), (5, 3, 0)]:
        g = enumerate_classes(n, m).graph(pos)
        md = modified_deck(g, 1)
        for delta in (1, -1):
            for idx in range(len(md.counts)):
                counts = list(md.counts)
                if counts[idx] + delta < 0:
                    continue
                counts[idx] += delta
                with pytest.raises(NotRealizableDeckError):
                    edge_deck_from_modified(MultiVector(md.catalog, tuple(counts)), r=1)
