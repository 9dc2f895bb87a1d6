import math

import pytest
from hypothesis import given, settings, strategies as st

from cayleyspec.errors import ParseError
from cayleyspec.permgroup import parse_permutation
from cayleyspec.subsets import (
    analyze_subset,
    euler_closure,
    euler_phi,
    generated_subgroup,
    inverse_closure,
    is_euler,
    is_symmetric,
    normal_closure,
    resolve_set_spec,
)

from conftest import context

SMALL_GROUPS = ["sym:3", "sym:4", "alt:4", "alt:5", "dih:5", "dih:6", "cyc:8", "cyc:12"]


def idx(G, *texts):
    return frozenset(G.index(parse_permutation(t, G.degree)) for t in texts)


def names(G, S):
    return sorted(str(G.elements[s]) for s in S)


@st.composite
def group_and_subset(draw):
    spec = draw(st.sampled_from(SMALL_GROUPS))
    G, C, _, _ = context(spec)
    S = draw(st.frozensets(st.integers(1, G.order - 1), max_size=8))
    return G, C, S


class TestEulerPhi:
    @pytest.mark.parametrize("m,phi", [(1, 1), (12, 4), (9, 6), (2, 1), (7, 6), (360, 96)])
    def test_values(self, m, phi):
        assert euler_phi(m) == phi

    @given(st.integers(1, 3000))
    def test_against_gcd_count(self, m):
        assert euler_phi(m) == sum(1 for k in range(m) if math.gcd(k, m) == 1)

    def test_small_totients_are_2_3_4_6(self):
        assert [m for m in range(1, 200) if euler_phi(m) <= 2] == [1, 2, 3, 4, 6]

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            euler_phi(0)


class TestAnalyze:
    def test_transpositions_of_s4(self, sym4):
        G, C, _, _ = sym4
        S = resolve_set_spec("transpositions", G, C)
        a = analyze_subset(G, C, S)
        assert (a.size, a.symmetric, a.normal, a.euler, a.excludes_identity) == (6, True, True, True, True)
        assert a.order_profile == {2: 6}
        assert C.union(a.class_indices) == S

    def test_single_4_cycle(self, sym4):
        G, C, _, _ = sym4
        a = analyze_subset(G, C, idx(G, "(1 2 3 4)"))
        assert not (a.symmetric or a.normal or a.euler)
        assert a.class_indices is None

    def test_cyclic_pair_not_euler(self, cyc5):
        G, C, _, _ = cyc5
        a = analyze_subset(G, C, idx(G, "(1 2 3 4 5)", "(1 5 4 3 2)"))
        assert a.symmetric and a.normal and not a.euler

    def test_identity_flag(self, sym3):
        G, C, _, _ = sym3
        assert not analyze_subset(G, C, {0}).excludes_identity

    @given(group_and_subset())
    @settings(max_examples=150, deadline=None)
    def test_euler_implies_symmetric_and_normal_iff_union(self, gcs):
        G, C, S = gcs
        a = analyze_subset(G, C, S)
        if a.euler:
            assert a.symmetric
        assert a.normal == (C.union(C.classes_meeting(S)) == S)


class TestClosures:
    def test_euler_closure_examples(self, cyc5, sym4):
        G, _, _, _ = cyc5
        g = idx(G, "(1 2 3 4 5)")
        assert euler_closure(G, g) == frozenset(range(1, 5))
        G, C, _, _ = sym4
        S = resolve_set_spec("transpositions", G, C)
        assert euler_closure(G, S) == S
        assert names(G, euler_closure(G, idx(G, "(1 2 3 4)"))) == ["(1 2 3 4)", "(1 4 3 2)"]

    def test_normal_closure_examples(self, sym3, alt4):
        G, C, _, _ = sym3
        assert names(G, normal_closure(G, C, idx(G, "(1 2)"))) == ["(1 2)", "(1 3)", "(2 3)"]
        G, C, _, _ = alt4
        S = normal_closure(G, C, idx(G, "(1 2 3)"))
        assert len(S) == 4 and idx(G, "(1 3 2)").isdisjoint(S)

    @given(group_and_subset())
    @settings(max_examples=150, deadline=None)
    def test_closure_properties(self, gcs):
        G, C, S = gcs
        E = euler_closure(G, S)
        N = normal_closure(G, C, S)
        assert S <= E and S <= N
        assert euler_closure(G, E) == E
        assert normal_closure(G, C, N) == N
        assert is_euler(G, E) and is_symmetric(G, E)
        if is_symmetric(G, S):
            assert is_symmetric(G, N)
        assert is_symmetric(G, inverse_closure(G, S))

    @given(group_and_subset())
    @settings(max_examples=100, deadline=None)
    def test_orders_2_3_4_6_symmetric_is_euler(self, gcs):
        G, C, S = gcs
        S = inverse_closure(G, {s for s in S if G.element_orders()[s] in (2, 3, 4, 6)})
        assert is_euler(G, S)


class TestGeneratedSubgroup:
    def test_transpositions_generate_s4(self, sym4):
        G, C, _, _ = sym4
        assert len(generated_subgroup(G, resolve_set_spec("transpositions", G, C))) == 24

    def test_three_cycles_generate_a4(self, sym4):
        G, C, _, _ = sym4
        H = generated_subgroup(G, resolve_set_spec("classof:(1 2 3)", G, C))
        assert len(H) == 12
        assert all(sum(len(c) - 1 for c in G.elements[h].cycles()) % 2 == 0 for h in H)

    def test_cyclic(self, sym4):
        G, _, _, _ = sym4
        H = generated_subgroup(G, idx(G, "(1 2 3 4)"))
        assert names(G, H) == ["()", "(1 2 3 4)", "(1 3)(2 4)", "(1 4 3 2)"]

    def test_empty_rejected(self, sym3):
        with pytest.raises(ValueError):
            generated_subgroup(sym3[0], set())

    @given(group_and_subset())
    @settings(max_examples=80, deadline=None)
    def test_closed_and_divides_order(self, gcs):
        G, _, S = gcs
        if not S:
            return
        H = generated_subgroup(G, S)
        assert S <= H and G.order % len(H) == 0
        assert all(G.mul(x, y) in H for x in H for y in S)


class TestSetSpec:
    def test_star(self, sym4):
        G, C, _, _ = sym4
        assert names(G, resolve_set_spec("star", G, C)) == ["(1 2)", "(1 3)", "(1 4)"]

    def test_cycles12_size(self):
        G, C, _, _ = context("alt:5")
        S = resolve_set_spec("cycles12", G, C)
        assert len(S) == 6 and is_symmetric(G, S)

    def test_minus_gives_empty(self, sym3):
        G, C, _, _ = sym3
        assert resolve_set_spec("minus[transpositions;classof:(1 2)]", G, C) == frozenset()

    def test_star_is_transpositions_minus_stabilizer(self):
        G, C, _, _ = context("sym:5")
        star = resolve_set_spec("star", G, C)
        assert resolve_set_spec("minus[transpositions;stab:1]", G, C) == star

    def test_combinators(self, sym4):
        G, C, _, _ = sym4
        S = resolve_set_spec("union[elems:(1 2 3 4);classof:(1 2)]", G, C)
        assert len(S) == 7
        assert len(resolve_set_spec("invclose[elems:(1 2 3 4)]", G, C)) == 2
        assert len(resolve_set_spec("eulerclose[elems:(1 2 3 4),(1 2 3)]", G, C)) == 4
        assert len(resolve_set_spec("normalclose[elems:(1 2 3 4)]", G, C)) == 6
        nested = "minus[union[transpositions;classof:(1 2 3)];stab:4]"
        assert len(resolve_set_spec(nested, G, C)) == 6 + 8 - 3 - 2

    def test_stab(self, sym4):
        G, C, _, _ = sym4
        H = resolve_set_spec("stab:1", G, C)
        assert len(H) == 6 and 0 in H

    @pytest.mark.parametrize(
        "spec",
        ["", "bogus", "union[star]", "minus[star;star;star]", "union[star;star", "frob[star]",
         "elems:(1 5)", "elems:(1 2),", "stab:x", "stab:9", "classof:(1 2"],
    )
    def test_errors(self, sym4, spec):
        G, C, _, _ = sym4
        with pytest.raises(ParseError):
            resolve_set_spec(spec, G, C)

    def test_named_sets_need_sym_or_alt(self):
        G, C, _, _ = context("dih:5")
        with pytest.raises(ParseError):
            resolve_set_spec("transpositions", G, C)

    def test_transpositions_not_in_alt(self, alt4):
        G, C, _, _ = alt4
        with pytest.raises(ParseError):
            resolve_set_spec("transpositions", G, C)

    def test_identity_allowed_here(self, sym3):
        G, C, _, _ = sym3
        assert resolve_set_spec("elems:()", G, C) == frozenset({0})
