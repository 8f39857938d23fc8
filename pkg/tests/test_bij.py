import pytest
from hypothesis import given, settings

from meshpat.bij import (LEMMA_P1, LEMMA_P2, MapSpec, PreconditionError, apply_map, blockwise_complement,
                         blockwise_reverse, build_map, chain_swaps, check_uniqueness, map_swaps,
                         single_swap_map, swap_chain, trace_map, verify_bijection, verify_reduction)
from meshpat.catalog import get_entry
from meshpat.occur import joint_counts
from meshpat.perm import Permutation, decompose, inverse, parse_permutation

from conftest import permutations

P = parse_permutation


class TestSwapChain:
    def test_golden_trace(self):
        img, steps = swap_chain(P("263518497"))
        assert str(img) == "325916487"
        assert [s.swap for s in steps] == [(8, 9), (6, 9), (9, 5), (5, 3), (2, 3)]
        assert [str(s.result) for s in steps] == [
            "263519487", "293516487", "253916487", "235916487", "325916487"]
        assert joint_counts(P("263518497"), LEMMA_P1, LEMMA_P2) == (3, 2)
        assert joint_counts(P("325916487"), LEMMA_P1, LEMMA_P2) == (2, 3)

    def test_occurrence_free(self):
        assert swap_chain(P("1")) == (P("1"), [])
        assert swap_chain(P("")) == (P(""), [])

    @given(permutations(max_n=7))
    def test_step_invariants(self, pi):
        k, l = joint_counts(pi, LEMMA_P1, LEMMA_P2)
        img, steps = swap_chain(pi)
        assert len(steps) == k + l
        for s in steps:
            assert sum(joint_counts(s.result, LEMMA_P1, LEMMA_P2)) == k + l
        assert joint_counts(img, LEMMA_P1, LEMMA_P2) == (l, k)

    def test_is_bijection_n7(self):
        fn = lambda pi: Permutation(apply_map(MapSpec("chain"), LEMMA_P1, LEMMA_P2, pi).values)
        assert verify_bijection(fn, LEMMA_P1, LEMMA_P2, 7)

    def test_swaps_are_value_pairs(self):
        vals = (2, 6, 3, 5, 1, 8, 4, 9, 7)
        assert chain_swaps(vals)[0] == (8, 9)


class TestBlockwise:
    def test_examples(self):
        assert str(blockwise_complement(P("24513"))) == "24315"
        assert str(blockwise_reverse(P("24513"))) == "25413"

    @given(permutations(min_n=1))
    def test_fix_minima(self, pi):
        for f in (blockwise_complement, blockwise_reverse):
            assert decompose(f(pi)).minima == decompose(pi).minima

    @given(permutations(min_n=1))
    def test_involutions(self, pi):
        assert blockwise_complement(blockwise_complement(pi)) == pi
        assert blockwise_reverse(blockwise_reverse(pi)) == pi

    @given(permutations(min_n=1))
    def test_complement_keeps_band_value_sets(self, pi):
        img = blockwise_complement(pi)
        for band in decompose(pi).bands:
            assert sorted(pi[p] for p in band) == sorted(img[p] for p in band)


class TestRegisteredMaps:
    @pytest.mark.parametrize("eid", ["X1_1", "X1_3", "X1_17", "X1_18", "Y1_17", "Y1_18",
                                     "X2_1", "X2_13", "Y2_13", "X3_1", "Y3_8"])
    def test_bijection_n6(self, eid):
        e = get_entry(eid)
        rep = verify_bijection(build_map(e.map, e.q1, e.q2), e.q1, e.q2, 6)
        assert rep, rep.failure

    def test_inverse_conjugation(self):
        e = get_entry("Y1_17")
        pi = P("3142657")
        inner = MapSpec(e.map.kind)
        x = get_entry("X1_17")
        # Y map = inverse . (X map of the inverse pair) . inverse
        want = inverse(apply_map(inner, x.q1, x.q2, inverse(pi)))
        assert apply_map(e.map, e.q1, e.q2, pi) == want

    def test_trace_matches_apply(self):
        e = get_entry("Y2_13")
        pi = P("5274163")
        steps = trace_map(e.map, e.q1, e.q2, pi)
        assert (steps[-1].result if steps else pi) == apply_map(e.map, e.q1, e.q2, pi)
        assert len(steps) == len(map_swaps(e.map, pi.values, e.q1, e.q2))

    def test_mapspec_validation(self):
        with pytest.raises(ValueError):
            MapSpec("nope")
        with pytest.raises(ValueError):
            MapSpec("chain", conjugate="reverse")
        spec = MapSpec("single-swap", "inverse")
        assert MapSpec.from_json(spec.to_json()) == spec


class TestSingleSwap:
    def test_x2_10_single_swap_trace(self):
        e = get_entry("X2_10")
        steps = trace_map(e.map, e.q1, e.q2, P("1324"))
        assert len(steps) == 1 and str(steps[0].result) == "1342"

    def test_not_a_bijection(self):
        # 1324 has the single q1 occurrence 124; swapping 2 and 4 creates the
        # q2 occurrence 142 but also a fresh q1 occurrence 134
        e = get_entry("X1_19")
        assert joint_counts(P("1324"), e.q1, e.q2) == (1, 0)
        img = single_swap_map(P("1324"), e.q1, e.q2)
        assert str(img) == "1342"
        assert joint_counts(img, e.q1, e.q2) == (1, 1)
        rep = verify_bijection(build_map(e.map, e.q1, e.q2), e.q1, e.q2, 4)
        assert not rep and rep.failure["pi"] == "1324"

    def test_precondition(self):
        e = get_entry("X4_4")
        with pytest.raises(PreconditionError):
            apply_map(e.map, e.q1, e.q2, P("312645"))
        rep = verify_bijection(build_map(e.map, e.q1, e.q2), e.q1, e.q2, 6)
        assert not rep and rep.failure["kind"] in ("precondition", "counts", "collision")

    @pytest.mark.parametrize("eid, ok", [("X1_19", True), ("X2_9", True), ("X2_10", True),
                                         ("X2_11", False), ("X2_12", False), ("X4_4", False),
                                         ("Y4_4", False), ("P113", True)])
    def test_uniqueness(self, eid, ok):
        e = get_entry(eid)
        assert bool(check_uniqueness(e.map, e.q1, e.q2, 6)) is ok

    def test_uniqueness_witnesses(self):
        e = get_entry("X2_11")
        assert check_uniqueness(e.map, e.q1, e.q2, 6).witness["pi"] == "14235"
        e = get_entry("X4_4")
        assert check_uniqueness(e.map, e.q1, e.q2, 6).witness["pi"] == "312645"

    def test_x2_9_needs_per_band_scope(self):
        e = get_entry("X2_9")
        assert check_uniqueness(e.map, e.q1, e.q2, 6)
        assert not check_uniqueness(MapSpec("single-swap"), e.q1, e.q2, 6)

    def test_uniqueness_rejects_other_kinds(self):
        with pytest.raises(ValueError):
            check_uniqueness(MapSpec("chain"), LEMMA_P1, LEMMA_P2, 3)


class TestReduction:
    @pytest.mark.parametrize("eid", ["X1_17", "X1_19", "X1_1"])
    def test_holds(self, eid):
        e = get_entry(eid)
        assert verify_reduction(e.q1, e.q2, 6)

    def test_vacuous_small_n(self):
        e = get_entry("X1_17")
        assert verify_reduction(e.q1, e.q2, 2)

    def test_wrong_type(self):
        e = get_entry("X2_1")
        with pytest.raises(ValueError):
            verify_reduction(e.q1, e.q2, 3)


@settings(max_examples=30, deadline=None)
@given(permutations(max_n=7))
def test_maps_are_total(pi):
    for eid in ("X1_17", "X2_13", "Y3_1"):
        e = get_entry(eid)
        assert apply_map(e.map, e.q1, e.q2, pi).n == pi.n
