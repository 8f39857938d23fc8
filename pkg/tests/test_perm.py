import itertools
import math

import pytest
from hypothesis import given, strategies as st

from meshpat.perm import (DuplicateValue, LimitExceeded, OutOfRange, Permutation, PermutationError,
                          complement, decompose, embed, enumerate_sn, format_one_line, from_one_line,
                          inverse, lex_rank, lex_unrank, parse_permutation, reverse, sn_ranges,
                          standardize)

from conftest import permutations


def P(s):
    return parse_permutation(s)


class TestBasics:
    def test_symmetries_of_24513(self):
        pi = P("24513")
        assert str(reverse(pi)) == "31542"
        assert str(complement(pi)) == "42153"
        assert str(inverse(pi)) == "41523"

    def test_one_indexed_access(self):
        pi = P("24513")
        assert pi[1] == 2 and pi[5] == 3
        with pytest.raises(IndexError):
            pi[0]
        assert pi.position_of(5) == 3

    def test_text_forms(self):
        assert str(P("10,2,1,3,4,5,6,7,8,9")) == "10,2,1,3,4,5,6,7,8,9"
        assert format_one_line((3, 1, 2)) == "312"
        assert P("").n == 0
        assert repr(P("231")) == "Permutation(231)"

    @pytest.mark.parametrize("bad, exc", [((1, 1), DuplicateValue), ((0, 1), OutOfRange),
                                          ((1, 3), OutOfRange), ((1.0, 2), PermutationError)])
    def test_validation(self, bad, exc):
        with pytest.raises(exc):
            Permutation(bad)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_permutation("12a")

    def test_standardize_and_embed(self):
        assert str(standardize([7, 2, 9])) == "213"
        assert embed([7, 2, 9], (2, 1, 3)) == [7, 2, 9]
        assert from_one_line([2, 1]).values == (2, 1)


class TestDecompose:
    def test_staircase(self):
        d = decompose(P("263518497"))
        assert d.minima == ((1, 2), (5, 1))
        # band 0 is above x_1=2, band 1 between x_2=1 and x_1=2 (empty)
        assert d.bands == ((2, 3, 4, 6, 7, 8, 9), ())
        assert d.column_blocks == ((2, 3, 4), (6, 7, 8, 9))
        assert d.above == (2, 3, 4, 6, 7, 8, 9)
        assert d.below == (5,)

    def test_bands_by_value(self):
        d = decompose(P("536142"))
        assert [v for _, v in d.minima] == [5, 3, 1]
        # 6 above 5; 4 between 3 and 5; 2 between 1 and 3
        assert d.bands == ((3,), (5,), (6,))

    def test_empty_rejected(self):
        with pytest.raises(PermutationError):
            decompose(P(""))

    @given(permutations(min_n=1))
    def test_blocks_partition(self, pi):
        d = decompose(pi)
        mins = {p for p, _ in d.minima}
        in_bands = [p for b in d.bands for p in b]
        in_cols = [p for b in d.column_blocks for p in b]
        assert sorted(in_bands) == sorted(in_cols) == [p for p in range(1, pi.n + 1) if p not in mins]
        assert sorted(d.above + d.below) == list(range(2, pi.n + 1))
        vals = [v for _, v in d.minima]
        assert vals == sorted(vals, reverse=True)


class TestEnumeration:
    def test_lex_order(self):
        got = [str(p) for p in enumerate_sn(3)]
        assert got == ["123", "132", "213", "231", "312", "321"]
        assert [str(p) for p in enumerate_sn(0)] == [""]

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            list(enumerate_sn(12, limit=10))

    @given(st.integers(1, 6), st.data())
    def test_rank_roundtrip(self, n, data):
        r = data.draw(st.integers(0, math.factorial(n) - 1))
        assert lex_rank(lex_unrank(n, r).values) == r

    @given(st.integers(0, 7), st.integers(1, 20))
    def test_ranges_cover(self, n, parts):
        rngs = sn_ranges(n, parts)
        assert rngs[0][0] == 0 and rngs[-1][1] == math.factorial(n)
        assert all(a[1] == b[0] for a, b in zip(rngs, rngs[1:]))

    def test_slice_matches_itertools(self):
        got = [p.values for p in enumerate_sn(5, 17, 40)]
        assert got == list(itertools.islice(itertools.permutations(range(1, 6)), 17, 40))


@given(permutations())
def test_involutions(pi):
    assert reverse(reverse(pi)) == pi
    assert complement(complement(pi)) == pi
    assert inverse(inverse(pi)) == pi


@given(permutations())
def test_rc_commute_and_inverse_conjugates(pi):
    assert reverse(complement(pi)) == complement(reverse(pi))
    # i∘r = c∘i
    assert inverse(reverse(pi)) == complement(inverse(pi))


@given(permutations())
def test_text_roundtrip(pi):
    assert parse_permutation(str(pi)) == pi
