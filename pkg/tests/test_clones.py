from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import mv2codec as m
from mv2codec.errors import (
    CapacityError,
    ContractError,
    CorruptionError,
    LengthMismatchError,
    TruncationError,
    UnknownCodeError,
)

from conftest import random_block


def oracle_digit_count(value, p):
    d = 1
    while value >= p:
        value //= p
        d += 1
    return d


def oracle_clone1_totals(p, n):
    rem = flag = 0
    for v in range(p**n):
        length = oracle_digit_count(v, p)
        rem += length
        flag += (n - length) + 1
    return rem, flag


def oracle_clone2_totals(p, n):
    # strip the top pit, then clone-1 the remaining width-(n-1) word
    rem = flag = 0
    for v in range(p**n):
        low = v % (p ** (n - 1))
        length = oracle_digit_count(low, p)
        rem += length
        flag += (n - 1 - length) + 1
    return p**n, rem, flag


def oracle_greedy_codes(p, n):
    # shortest-first fill, lowest code values first
    codes = []
    length = 1
    while len(codes) < p**n:
        for value in range(p**length):
            codes.append((length, value))
            if len(codes) == p**n:
                break
        length += 1
    return codes


blocks = st.builds(
    lambda p, n, seed: random_block(np.random.default_rng(seed), p, n, seed % 37),
    st.sampled_from([2, 3, 5, 16]), st.integers(1, 12), st.integers(0, 10_000))


class TestClone1:
    def test_single_pait(self):
        bundle = m.encode_clone1([m.pait_of_value(13, 2, 8)])
        assert bundle.remainder.tolist() == [1, 1, 0, 1]
        assert bundle.flag_len.tolist() == [0, 0, 0, 0, 1]
        assert bundle.total_pits == 9

    def test_main_file_2_8(self):
        bundle = m.encode_clone1(m.main_file(2, 8))
        assert (len(bundle.remainder), len(bundle.flag_len)) == (1794, 510)
        assert (len(bundle.remainder), len(bundle.flag_len)) == \
            tuple(oracle_clone1_totals(2, 8))
        assert bundle.remainder_ratio == Fraction(897, 1024)

    def test_main_file_3_2(self):
        bundle = m.encode_clone1(m.main_file(3, 2))
        assert (len(bundle.remainder), len(bundle.flag_len)) == (15, 12)
        assert (len(bundle.remainder), len(bundle.flag_len)) == \
            tuple(oracle_clone1_totals(3, 2))

    def test_decode_single(self):
        bundle = m.SecondaryBundle(
            1, 2, 8, 1, m.PitStream(2, [1, 1, 0, 1]), m.PitStream(2, [0, 0, 0, 0, 1]))
        assert m.decode_clone1(bundle)[0] == m.pait_of_value(13, 2, 8)

    def test_decode_all_zero_word(self):
        bundle = m.SecondaryBundle(
            1, 2, 8, 1, m.PitStream(2, [0]), m.PitStream(2, [0] * 7 + [1]))
        assert m.decode_clone1(bundle)[0] == m.pait_of_value(0, 2, 8)

    def test_roundtrip_main_file(self):
        block = m.main_file(2, 8)
        assert m.decode_clone1(m.encode_clone1(block)) == block

    @given(blocks)
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_random(self, block):
        assert m.decode_clone1(m.encode_clone1(block)) == block

    def test_remainder_head_is_nonzero(self, rng):
        # single-word remainders start with a nonzero pit unless the word is 0
        for v in range(256):
            rem = m.encode_clone1([m.pait_of_value(v, 2, 8)]).remainder
            if v:
                assert rem[0] == 1
            else:
                assert rem.tolist() == [0]

    def test_decode_flag_exhausted(self):
        bundle = m.SecondaryBundle(
            1, 2, 8, 2, m.PitStream(2, [1, 1]), m.PitStream(2, [0] * 7 + [1]))
        with pytest.raises(TruncationError):
            m.decode_clone1(bundle)

    def test_decode_bad_flag_pit(self):
        bundle = m.SecondaryBundle(
            1, 3, 2, 1, m.PitStream(3, [1]), m.PitStream(3, [2, 1]))
        with pytest.raises(CorruptionError):
            m.decode_clone1(bundle)

    def test_decode_unary_overrun(self):
        bundle = m.SecondaryBundle(
            1, 2, 4, 1, m.PitStream(2, []), m.PitStream(2, [0, 0, 0, 0, 1]))
        with pytest.raises(CorruptionError):
            m.decode_clone1(bundle)

    def test_decode_remainder_underrun(self):
        bundle = m.SecondaryBundle(
            1, 2, 8, 1, m.PitStream(2, [1, 0]), m.PitStream(2, [1]))
        with pytest.raises(LengthMismatchError):
            m.decode_clone1(bundle)

    def test_decode_leftover_remainder(self):
        bundle = m.SecondaryBundle(
            1, 2, 8, 1, m.PitStream(2, [1, 0, 1]), m.PitStream(2, [0] * 6 + [1]))
        with pytest.raises(LengthMismatchError):
            m.decode_clone1(bundle)

    def test_decode_leftover_flag(self):
        bundle = m.SecondaryBundle(
            1, 2, 8, 1, m.PitStream(2, [1]), m.PitStream(2, [0] * 7 + [1, 1]))
        with pytest.raises(LengthMismatchError):
            m.decode_clone1(bundle)

    def test_wrong_clone_id(self):
        bundle = m.encode_clone1(m.main_file(2, 2))
        with pytest.raises(ContractError):
            m.decode_clone2(bundle)


class TestClone2:
    def test_single_pait(self):
        bundle = m.encode_clone2([m.pait_of_value(13, 2, 8)])
        assert bundle.flag_msb.tolist() == [0]
        assert bundle.remainder.tolist() == [1, 1, 0, 1]
        assert bundle.flag_len.tolist() == [0, 0, 0, 1]
        assert bundle.total_pits == 9

    def test_main_file_2_8(self):
        bundle = m.encode_clone2(m.main_file(2, 8))
        measured = (len(bundle.flag_msb), len(bundle.remainder), len(bundle.flag_len))
        assert measured == (256, 1540, 508)
        assert measured == oracle_clone2_totals(2, 8)
        assert bundle.remainder_ratio == Fraction(385, 512)

    def test_main_file_3_2(self):
        bundle = m.encode_clone2(m.main_file(3, 2))
        measured = (len(bundle.flag_msb), len(bundle.remainder), len(bundle.flag_len))
        assert measured == (9, 9, 9)
        assert measured == oracle_clone2_totals(3, 2)

    def test_decode_msb_with_zero_low_word(self):
        bundle = m.SecondaryBundle(
            2, 2, 8, 1, m.PitStream(2, [0]), m.PitStream(2, [0] * 6 + [1]),
            m.PitStream(2, [1]))
        assert m.decode_clone2(bundle)[0] == m.pait_of_value(128, 2, 8)

    def test_roundtrip_main_file(self):
        block = m.main_file(2, 8)
        assert m.decode_clone2(m.encode_clone2(block)) == block

    @given(st.sampled_from([2, 3, 5]), st.integers(2, 10), st.integers(0, 10_000))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_random(self, p, n, seed):
        block = random_block(np.random.default_rng(seed), p, n, 64)
        assert m.decode_clone2(m.encode_clone2(block)) == block

    def test_width_one_rejected(self):
        with pytest.raises(ContractError):
            m.encode_clone2(m.main_file(2, 1))

    def test_decode_msb_length_mismatch(self):
        bundle = m.SecondaryBundle(
            2, 2, 8, 2, m.PitStream(2, [1, 1]), m.PitStream(2, [0] * 6 + [1] + [0] * 6 + [1]),
            m.PitStream(2, [1]))
        with pytest.raises(LengthMismatchError):
            m.decode_clone2(bundle)

    def test_decode_unary_overrun(self):
        bundle = m.SecondaryBundle(
            2, 2, 4, 1, m.PitStream(2, []), m.PitStream(2, [0, 0, 0, 1]),
            m.PitStream(2, [1]))
        with pytest.raises(CorruptionError):
            m.decode_clone2(bundle)

    def test_bundle_msb_presence_enforced(self):
        with pytest.raises(ContractError):
            m.SecondaryBundle(2, 2, 8, 0, m.PitStream(2), m.PitStream(2))
        with pytest.raises(ContractError):
            m.SecondaryBundle(1, 2, 8, 0, m.PitStream(2), m.PitStream(2), m.PitStream(2))


class TestCodeBook:
    def test_histogram_2_8(self):
        book = m.build_codebook(2, 8)
        assert book.histogram == {1: 2, 2: 4, 3: 8, 4: 16, 5: 32, 6: 64, 7: 128, 8: 2}

    def test_histogram_3_2(self):
        assert m.build_codebook(3, 2).histogram == {1: 3, 2: 6}

    def test_width_one_is_identity(self):
        book = m.build_codebook(2, 1)
        assert book.histogram == {1: 2}
        assert [book.forward(v) for v in range(2)] == [(1, 0), (1, 1)]

    @pytest.mark.parametrize("p,n", [(2, 8), (3, 4), (5, 3), (16, 2)])
    def test_canonical_assignment(self, p, n):
        book = m.build_codebook(p, n)
        expected = oracle_greedy_codes(p, n)
        assert [(L, c) for _, L, c in book.codes()] == expected

    @pytest.mark.parametrize("p,n", [(2, 10), (3, 6), (7, 3), (16, 2)])
    def test_bijectivity(self, p, n):
        book = m.build_codebook(p, n)
        seen = set()
        for v in range(p**n):
            length, code = book.forward(v)
            assert 1 <= length <= n
            assert 0 <= code < p**length
            assert book.inverse(length, code) == v
            seen.add((length, code))
        assert len(seen) == p**n

    def test_histogram_sums(self):
        for p, n in [(2, 8), (3, 5), (4, 4), (5, 3)]:
            hist = m.build_codebook(p, n).histogram
            assert sum(hist.values()) == p**n
            for length, count in hist.items():
                if length < max(hist):
                    assert count == p**length

    def test_forward_range_error(self):
        book = m.build_codebook(2, 3)
        with pytest.raises(ContractError):
            book.forward(8)

    def test_inverse_unknown_code(self):
        book = m.build_codebook(2, 8)
        with pytest.raises(UnknownCodeError):
            book.inverse(8, 2)  # only codes 0 and 1 exist at the top level
        with pytest.raises(UnknownCodeError):
            book.inverse(9, 0)
        with pytest.raises(UnknownCodeError):
            book.inverse(2, 4)

    def test_cap(self):
        with pytest.raises(CapacityError):
            m.build_codebook(2, 25)
        assert m.build_codebook(2, 25, cap=None).size == 2**25

    def test_code_digits(self):
        book = m.build_codebook(3, 4)
        assert book.code_digits(3, 5) == (0, 1, 2)


class TestClone3:
    def test_encode_value_zero(self):
        book = m.build_codebook(2, 8)
        bundle = m.encode_clone3([m.pait_of_value(0, 2, 8)], book)
        assert bundle.remainder.tolist() == [0]
        assert bundle.flag_len.tolist() == [0] * 7 + [1]
        assert bundle.total_pits == 9

    def test_decode_value_one(self):
        book = m.build_codebook(2, 8)
        bundle = m.SecondaryBundle(
            3, 2, 8, 1, m.PitStream(2, [1]), m.PitStream(2, [0] * 7 + [1]))
        assert m.decode_clone3(bundle, book)[0] == m.pait_of_value(1, 2, 8)

    def test_main_file_2_8(self):
        bundle = m.encode_clone3(m.main_file(2, 8), m.build_codebook(2, 8))
        assert (len(bundle.remainder), len(bundle.flag_len)) == (1554, 750)
        assert bundle.remainder_ratio == Fraction(777, 1024)

    def test_main_file_3_2(self):
        bundle = m.encode_clone3(m.main_file(3, 2), m.build_codebook(3, 2))
        assert (len(bundle.remainder), len(bundle.flag_len)) == (15, 12)

    def test_remainder_is_histogram_weighted_length(self):
        # the measured remainder must equal sum(L * count(L)) over the book
        for p, n in [(2, 8), (3, 4), (5, 3)]:
            book = m.build_codebook(p, n)
            bundle = m.encode_clone3(m.main_file(p, n), book)
            assert len(bundle.remainder) == \
                sum(L * c for L, c in book.histogram.items())

    def test_roundtrip_main_file(self):
        block = m.main_file(2, 8)
        book = m.build_codebook(2, 8)
        assert m.decode_clone3(m.encode_clone3(block, book), book) == block

    @given(st.sampled_from([2, 3, 4]), st.integers(1, 8), st.integers(0, 10_000))
    @settings(max_examples=100, deadline=None)
    def test_roundtrip_random(self, p, n, seed):
        block = random_block(np.random.default_rng(seed), p, n, 64)
        book = m.build_codebook(p, n)
        assert m.decode_clone3(m.encode_clone3(block, book), book) == block

    def test_decode_unknown_code(self):
        # length 8 admits only code values 0 and 1 at (2, 8); 5 is unassigned
        book = m.build_codebook(2, 8)
        bundle = m.SecondaryBundle(
            3, 2, 8, 1, m.PitStream(2, [0, 0, 0, 0, 0, 1, 0, 1]), m.PitStream(2, [1]))
        with pytest.raises(UnknownCodeError):
            m.decode_clone3(bundle, book)

    def test_book_mismatch(self):
        block = m.main_file(2, 4)
        with pytest.raises(ContractError):
            m.encode_clone3(block, m.build_codebook(2, 8))
        bundle = m.encode_clone3(block, m.build_codebook(2, 4))
        with pytest.raises(ContractError):
            m.decode_clone3(bundle, m.build_codebook(3, 4))


class TestSharedProperties:
    @given(blocks, st.sampled_from([1, 2, 3]))
    @settings(max_examples=150, deadline=None)
    def test_conservation(self, block, clone):
        if clone == 2 and block.n < 2:
            return
        bundle = _encode(clone, block)
        assert bundle.total_pits == (block.n + 1) * len(block)

    @given(blocks, st.sampled_from([1, 2, 3]))
    @settings(max_examples=60, deadline=None)
    def test_flag_terminator_count(self, block, clone):
        if clone == 2 and block.n < 2:
            return
        bundle = _encode(clone, block)
        assert int(np.count_nonzero(bundle.flag_len.digits == 1)) == len(block)

    @pytest.mark.parametrize("clone", [1, 2, 3])
    def test_context_free_concatenation(self, rng, clone):
        p, n = 3, 4
        a = random_block(rng, p, n, 20)
        b = random_block(rng, p, n, 30)
        both = m.PaitBlock(p, n, np.concatenate([a.digits, b.digits]))
        ea, eb, eboth = (_encode(clone, x) for x in (a, b, both))
        for stream in ("remainder", "flag_len", "flag_msb"):
            sa, sb, sboth = (getattr(x, stream) for x in (ea, eb, eboth))
            if sa is None:
                assert sboth is None
                continue
            assert sboth.tolist() == sa.tolist() + sb.tolist()

    @pytest.mark.parametrize("p,n", [(2, 12), (3, 7), (5, 5), (16, 5)])
    def test_roundtrip_ten_thousand_paits(self, rng, p, n):
        block = random_block(rng, p, n, 10_000)
        assert m.decode_clone1(m.encode_clone1(block)) == block
        assert m.decode_clone2(m.encode_clone2(block)) == block
        book = m.build_codebook(p, n)
        assert m.decode_clone3(m.encode_clone3(block, book), book) == block

    def test_encode_accepts_pait_sequences(self):
        paits = [m.pait_of_value(v, 2, 8) for v in (13, 0, 255)]
        bundle = m.encode_clone1(paits)
        assert bundle.pait_count == 3
        assert m.decode_clone1(bundle) == m.PaitBlock.from_paits(paits)
        with pytest.raises(ContractError):
            m.encode_clone1([m.Pait(2, [1]), m.Pait(3, [1])])

    @pytest.mark.parametrize("p,n", [(p, n) for p in (2, 3, 4, 5)
                                     for n in range(1, 17) if p**n <= 1 << 16])
    def test_measured_remainder_matches_model(self, p, n):
        block = m.main_file(p, n)
        original = n * p**n
        assert Fraction(len(m.encode_clone1(block).remainder), original) == \
            m.ratio_clone1(p, n)
        if n >= 2:
            assert Fraction(len(m.encode_clone2(block).remainder), original) == \
                m.ratio_clone2(p, n)
        assert Fraction(len(m.encode_clone3(block, m.build_codebook(p, n)).remainder),
                        original) == m.ratio_clone3(p, n)


def _encode(clone, block):
    if clone == 1:
        return m.encode_clone1(block)
    if clone == 2:
        return m.encode_clone2(block)
    return m.encode_clone3(block, m.build_codebook(block.p, block.n, cap=None))
