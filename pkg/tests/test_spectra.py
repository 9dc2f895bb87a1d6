import itertools
import math
import random

import numpy as np
import pytest

from cayleyspec.charpoly import has_factor
from cayleyspec.errors import CapExceededError, VerificationError
from cayleyspec.permgroup import parse_permutation
from cayleyspec.spectra import (
    SpectrumReport,
    adjacency_matrix,
    certify_integrality,
    check_report,
    components_report,
    graph_component_sizes,
    spectrum_direct,
    spectrum_via_central_characters,
    subset_class_matrix,
)
from cayleyspec.subsets import generated_subgroup, is_euler, point_stabilizer, resolve_set_spec

from conftest import context

ORACLE_GROUPS = ["sym:3", "sym:4", "sym:5", "alt:4", "alt:5", "dih:5", "dih:6", "cyc:8", "cyc:9"]


def idx(G, *texts):
    return frozenset(G.index(parse_permutation(t, G.degree)) for t in texts)


def symmetric_class_unions(C):
    blocks = sorted({tuple(sorted({i, C.inverse_class[i]})) for i in range(1, C.count)})
    for mask in range(1, 1 << len(blocks)):
        yield sorted(c for b, blk in enumerate(blocks) if mask >> b & 1 for c in blk)


def as_int_dict(report, tol=1e-6):
    out = {}
    for v, m in report.pairs:
        assert abs(v - round(v)) < tol
        out[int(round(v))] = m
    return out


class TestSubsetClassMatrix:
    def test_sym3(self, sym3):
        assert subset_class_matrix(sym3[2], [1]).tolist() == [[0, 3, 0], [1, 0, 2], [0, 3, 0]]

    def test_abelian_equals_adjacency(self):
        G, C, A, _ = context("cyc:8")
        S = idx(G, "(1 2 3 4 5 6 7 8)", "(1 8 7 6 5 4 3 2)", "(1 5)(2 6)(3 7)(4 8)")
        B = subset_class_matrix(A, C.classes_meeting(S))
        assert list(C.reps) == list(range(G.order))
        assert np.array_equal(B, adjacency_matrix(G, S).astype(int))

    @pytest.mark.parametrize("classes", [[], [0, 1]])
    def test_rejects(self, sym3, classes):
        with pytest.raises(ValueError):
            subset_class_matrix(sym3[2], classes)


class TestCharacterRoute:
    def test_sym3_transpositions(self, sym3):
        r = spectrum_via_central_characters(sym3[3], [1], sym3[1])
        assert as_int_dict(r) == {3: 1, 0: 4, -3: 1}
        assert r.method == "central-characters"

    @pytest.mark.parametrize("spec", ["sym:4", "alt:5", "dih:7", "cyc:6"])
    def test_complete_graph(self, spec):
        G, C, _, T = context(spec)
        r = spectrum_via_central_characters(T, range(1, C.count), C)
        assert as_int_dict(r) == {G.order - 1: 1, -1: G.order - 1}

    def test_cyc5_non_integral(self, cyc5):
        G, C, _, T = cyc5
        S = idx(G, "(1 2 3 4 5)", "(1 5 4 3 2)")
        r = spectrum_via_central_characters(T, C.classes_meeting(S), C)
        expected = sorted(2 * math.cos(2 * math.pi * j / 5) for j in range(5))
        assert np.allclose(r.expanded(), expected)
        assert not r.integral and r.residual > 0.3

    def test_rejects_non_inverse_closed(self, alt4):
        G, C, _, T = alt4
        i = C.class_of[G.index(parse_permutation("(1 2 3)", 4))]
        with pytest.raises(ValueError):
            spectrum_via_central_characters(T, [i], C)

    def test_exact_snapping(self, sym4):
        G, C, A, T = sym4
        S = resolve_set_spec("transpositions", G, C)
        r = spectrum_via_central_characters(T, C.classes_meeting(S), C, exact_roots=[6, 2, 0, -2, -6])
        assert r.certified and r.pairs == [(6, 1), (2, 9), (0, 4), (-2, 9), (-6, 1)]
        with pytest.raises(VerificationError):
            spectrum_via_central_characters(T, C.classes_meeting(S), C, exact_roots=[6, 0, -6])


class TestAdjacency:
    def test_cycle_graph(self):
        G, _, _, _ = context("cyc:4")
        adj = adjacency_matrix(G, idx(G, "(1 2 3 4)", "(1 4 3 2)"))
        assert np.array_equal(adj.sum(axis=1), [2] * 4)
        assert sorted(graph_component_sizes(G, idx(G, "(1 2 3 4)", "(1 4 3 2)"))) == [4]
        vals = np.round(np.linalg.eigvalsh(adj), 9)
        assert sorted(vals) == [-2, 0, 0, 2]

    def test_k33(self, sym3):
        G, C, _, _ = sym3
        adj = adjacency_matrix(G, resolve_set_spec("transpositions", G, C))
        assert np.array_equal(adj, adj.T) and not adj.diagonal().any()
        parity = [sum(len(c) - 1 for c in p.cycles()) % 2 for p in G.elements]
        for g, h in itertools.product(range(6), repeat=2):
            assert adj[g, h] == (1 if parity[g] != parity[h] else 0)

    def test_single_involution_is_matching(self, sym3):
        G, _, _, _ = sym3
        adj = adjacency_matrix(G, idx(G, "(1 2)"))
        assert np.array_equal(adj.sum(axis=0), [1] * 6)

    def test_errors(self, sym4):
        G, _, _, _ = sym4
        with pytest.raises(ValueError):
            adjacency_matrix(G, idx(G, "(1 2 3 4)"))
        with pytest.raises(ValueError):
            adjacency_matrix(G, {0, 1})
        with pytest.raises(CapExceededError):
            adjacency_matrix(G, idx(G, "(1 2)"), oracle_cap=20)

    def test_definition(self, sym4):
        G, C, _, _ = sym4
        S = resolve_set_spec("star", G, C)
        adj = adjacency_matrix(G, S)
        for g, h in itertools.product(range(G.order), repeat=2):
            assert adj[g, h] == (G.mul(G.inv(g), h) in S)


class TestDirectRoute:
    def test_k33(self, sym3):
        G, C, _, _ = sym3
        r = spectrum_direct(adjacency_matrix(G, resolve_set_spec("transpositions", G, C)))
        assert as_int_dict(r) == {3: 1, 0: 4, -3: 1}
        assert r.integral and not r.certified and r.method == "direct-oracle"

    def test_cyc5(self, cyc5):
        G, _, _, _ = cyc5
        r = spectrum_direct(adjacency_matrix(G, idx(G, "(1 2 3 4 5)", "(1 5 4 3 2)")))
        golden = (1 + 5**0.5) / 2
        assert [m for _, m in r.pairs] == [1, 2, 2]
        assert np.allclose([v for v, _ in r.pairs], [2, golden - 1, -golden])
        assert not r.integral and r.residual == pytest.approx(2 - golden, abs=1e-9)

    def test_perfect_matching(self):
        G, _, _, _ = context("sym:4")
        r = spectrum_direct(adjacency_matrix(G, idx(G, "(1 2)(3 4)")))
        assert as_int_dict(r) == {1: 12, -1: 12}

    def test_clustering_respects_gap(self):
        adj = np.diag([1.0, 1.0 + 5e-5, 2.0])
        r = spectrum_direct(adj, tol=1e-6)
        assert [m for _, m in r.pairs] == [1, 1, 1]
        r = spectrum_direct(np.diag([1.0, 1.0 + 5e-6, 2.0]), tol=1e-6)
        assert [m for _, m in r.pairs] == [1, 2]


class TestComponents:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_transpositions_connected(self, n):
        G, C, _, _ = context(f"sym:{n}")
        rep = components_report(G, resolve_set_spec("transpositions", G, C), C)
        assert (rep.count, rep.size, rep.lemma_check) == (1, G.order, True)

    def test_three_cycles_in_s4(self, sym4):
        G, C, _, _ = sym4
        rep = components_report(G, resolve_set_spec("classof:(1 2 3)", G, C), C)
        assert (rep.count, rep.size, rep.lemma_check) == (2, 12, True)

    def test_matching(self, sym3):
        G, C, _, _ = sym3
        rep = components_report(G, idx(G, "(1 2)"), C)
        assert (rep.count, rep.size, rep.lemma_check) == (3, 2, True)

    def test_non_normal_disconnected(self):
        G, C, _, _ = context("sym:5")
        S = resolve_set_spec("elems:(1 2),(3 4)", G, C)
        rep = components_report(G, S, C)
        assert (rep.count, rep.size, rep.lemma_check) == (30, 4, True)

    def test_unchecked_above_oracle_cap(self):
        G, C, _, _ = context("sym:5")
        rep = components_report(G, resolve_set_spec("star", G, C), C, oracle_cap=50)
        assert rep.count == 1 and rep.lemma_check is None


class TestCertify:
    def test_sym4_transpositions(self, sym4):
        G, C, A, T = sym4
        r = certify_integrality(G, C, A, resolve_set_spec("transpositions", G, C), table=T)
        assert r.certified and r.integral and r.residual == 0
        assert r.pairs == [(6, 1), (2, 9), (0, 4), (-2, 9), (-6, 1)]

    def test_cyc5_certified_not_integral(self, cyc5):
        G, C, A, T = cyc5
        r = certify_integrality(G, C, A, idx(G, "(1 2 3 4 5)", "(1 5 4 3 2)"))
        assert r.certified and not r.integral
        assert has_factor(r.charpoly, [1, 1, -1])

    def test_alt5_cycles12_numeric(self):
        G, C, A, T = context("alt:5")
        r = certify_integrality(G, C, A, resolve_set_spec("cycles12", G, C))
        assert r.integral and not r.certified and r.method == "direct-oracle"
        assert r.residual < 1e-6

    def test_non_normal_above_cap(self):
        G, C, A, _ = context("sym:5")
        with pytest.raises(CapExceededError):
            certify_integrality(G, C, A, resolve_set_spec("star", G, C), oracle_cap=100)

    @pytest.mark.parametrize("S", [set(), {0}])
    def test_invalid_sets(self, sym3, S):
        G, C, A, _ = sym3
        with pytest.raises(ValueError):
            certify_integrality(G, C, A, S)


@pytest.mark.parametrize("spec", ORACLE_GROUPS)
def test_character_route_matches_oracle(spec):
    G, C, A, T = context(spec)
    for classes in symmetric_class_unions(C):
        S = C.union(classes)
        chars = spectrum_via_central_characters(T, classes, C)
        direct = spectrum_direct(adjacency_matrix(G, S))
        assert np.max(np.abs(chars.expanded() - direct.expanded())) < 1e-6
        assert [m for _, m in chars.pairs] == [m for _, m in direct.pairs]


@pytest.mark.parametrize("spec", ORACLE_GROUPS)
def test_report_identities(spec):
    G, C, A, T = context(spec)
    for classes in symmetric_class_unions(C):
        S = C.union(classes)
        report = certify_integrality(G, C, A, S, table=T)
        n = G.order // len(generated_subgroup(G, S))
        check_report(report, G.order, len(S), n)
        if is_euler(G, S):
            assert report.certified and report.integral


def test_check_report_catches_bad_spectra():
    good = SpectrumReport([(3, 1), (0, 4), (-3, 1)], "central-characters", True, True, 0.0)
    check_report(good, 6, 3, 1)
    bad = [
        SpectrumReport([(3, 1), (0, 4)], "x", True, True, 0.0),
        SpectrumReport([(3, 1), (1, 4), (-3, 1)], "x", True, True, 0.0),
        SpectrumReport([(3, 2), (0, 2), (-3, 2)], "x", True, True, 0.0),
        SpectrumReport([], "x", True, True, 0.0),
    ]
    for r in bad:
        with pytest.raises(VerificationError):
            check_report(r, 6, 3, 1)
    with pytest.raises(VerificationError):
        check_report(good, 6, 3, 2)


@pytest.mark.parametrize("spec", ["sym:4", "sym:5", "alt:5", "dih:6"])
def test_removing_subgroup_part_of_normal_euler_set_keeps_integrality(spec):
    """S = R minus (R meet H) for a normal Euler R and a subgroup H."""
    G, C, A, T = context(spec)
    rng = random.Random(spec)
    subgroups = [point_stabilizer(G, p) for p in range(1, G.degree + 1)]
    for _ in range(6):
        subgroups.append(generated_subgroup(G, rng.sample(range(1, G.order), 2)))
    euler_unions = [cl for cl in symmetric_class_unions(C) if is_euler(G, C.union(cl))]
    checked = 0
    for classes in euler_unions:
        R = C.union(classes)
        for H in subgroups:
            S = R - H
            if not S:
                continue
            report = certify_integrality(G, C, A, S, table=T)
            assert report.integral, (classes, sorted(H))
            assert report.residual < 1e-6
            checked += 1
    assert checked > 0
