"""The three recoding transforms.

For each input word of width n, a transform writes to secondary streams:

  clone 1   the word minus its leading zeros -> remainder; the dropped-zero
            count in unary (z zero pits, then a single 1) -> flag_len.
  clone 2   the top pit -> flag_msb; the remaining width-(n-1) word treated
            as in clone 1 -> remainder + flag_len.
  clone 3   the word's code from a canonical shortest-first codebook ->
            remainder; the unused width in unary as above -> flag_len.

Every word contributes exactly n+1 pits across its streams, so the combined
output is (n+1)/n times the input while the remainder alone is shorter.
Encoding is context free: streams of a concatenation are the concatenated
streams, and disjoint chunks may be encoded independently.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .errors import CapacityError, ContractError, UnknownCodeError
from .pitcore import (
    DEFAULT_ENUMERATION_CAP,
    PaitBlock,
    PitStream,
    check_radix,
    check_width,
)

CLONE_IDS = (1, 2, 3)

# largest alphabet the compiled clone-3 kernels can address with int64 values
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class SecondaryBundle:
    """Per-round transform output: remainder plus flag streams.

    flag_msb is present exactly for clone 2. For well-formed bundles the
    stream lengths sum to (n+1) * pait_count and flag_len holds pait_count
    terminator pits; decoders verify rather than assume this.
    """

    clone_id: int
    p: int
    n: int
    pait_count: int
    remainder: PitStream
    flag_len: PitStream
    flag_msb: PitStream | None = None

    def __post_init__(self):
        if self.clone_id not in CLONE_IDS:
            raise ContractError(f"clone_id must be one of {CLONE_IDS}, got {self.clone_id}")
        if (self.flag_msb is not None) != (self.clone_id == 2):
            raise ContractError("flag_msb is present exactly for clone 2")
        if self.pait_count < 0:
            raise ContractError("pait_count must be non-negative")
        for stream in (self.remainder, self.flag_len, self.flag_msb):
            if stream is not None and stream.p != self.p:
                raise ContractError(
                    f"stream radix {stream.p} does not match bundle radix {self.p}")

    @property
    def total_pits(self) -> int:
        extra = len(self.flag_msb) if self.flag_msb is not None else 0
        return len(self.remainder) + len(self.flag_len) + extra

    @property
    def remainder_ratio(self) -> Fraction:
        """Remainder length over original length (the compression ratio)."""
        return Fraction(len(self.remainder), self.n * self.pait_count)


def _as_block(paits) -> PaitBlock:
    if isinstance(paits, PaitBlock):
        return paits
    return PaitBlock.from_paits(paits)


def encode_clone1(paits) -> SecondaryBundle:
    block = _as_block(paits)
    rem, flag = _backend.kernels.clone1_encode(block.digits, len(block), block.n)
    return SecondaryBundle(
        1, block.p, block.n, len(block),
        PitStream._wrap(block.p, rem), PitStream._wrap(block.p, flag))


def decode_clone1(bundle: SecondaryBundle) -> PaitBlock:
    if bundle.clone_id != 1:
        raise ContractError(f"expected a clone-1 bundle, got clone {bundle.clone_id}")
    digits = _backend.kernels.clone1_decode(
        bundle.remainder.digits, bundle.flag_len.digits, bundle.pait_count, bundle.n)
    return PaitBlock._wrap(bundle.p, bundle.n, digits)


def encode_clone2(paits) -> SecondaryBundle:
    block = _as_block(paits)
    if block.n < 2:
        raise ContractError("clone 2 needs width >= 2: stripping the top pit of a width-1 word leaves nothing")
    msb, rem, flag = _backend.kernels.clone2_encode(block.digits, len(block), block.n)
    return SecondaryBundle(
        2, block.p, block.n, len(block),
        PitStream._wrap(block.p, rem), PitStream._wrap(block.p, flag),
        PitStream._wrap(block.p, msb))


def decode_clone2(bundle: SecondaryBundle) -> PaitBlock:
    if bundle.clone_id != 2:
        raise ContractError(f"expected a clone-2 bundle, got clone {bundle.clone_id}")
    if bundle.n < 2:
        raise ContractError("clone 2 needs width >= 2")
    digits = _backend.kernels.clone2_decode(
        bundle.flag_msb.digits, bundle.remainder.digits, bundle.flag_len.digits,
        bundle.pait_count, bundle.n)
    return PaitBlock._wrap(bundle.p, bundle.n, digits)


class CodeBook:
    """Canonical bijection between width-n words and shortest-first codes.

    Word value i gets the i-th code in (length, value) lexicographic order:
    all p codes of length 1, then the p**2 codes of length 2, and so on;
    only the final length level is partially used. The map is arithmetic --
    offsets[L] is the first word value coded at length L -- so lookups are
    O(1) and nothing is materialized.
    """

    __slots__ = ("p", "n", "size", "_offsets", "_offsets_i64", "_histogram")

    def __init__(self, p: int, n: int):
        self.p = check_radix(p)
        self.n = check_width(n)
        self.size = self.p**self.n
        offsets = [0] * (self.n + 1)
        for length in range(1, self.n + 1):
            offsets[length] = (self.p**length - self.p) // (self.p - 1)
        self._offsets = offsets
        self._offsets_i64 = None
        self._histogram = None

    def capacity(self, length: int) -> int:
        """Number of codes assigned at the given length."""
        if not 1 <= length <= self.n:
            return 0
        if length < self.n:
            return self.p**length
        return self.size - self._offsets[self.n]

    @property
    def histogram(self) -> dict[int, int]:
        """Code count per length; every level below n is fully used."""
        if self._histogram is None:
            self._histogram = {L: self.capacity(L) for L in range(1, self.n + 1)}
        return dict(self._histogram)

    def forward(self, value: int) -> tuple[int, int]:
        """Map a word value to its (code length, code value)."""
        value = int(value)
        if not 0 <= value < self.size:
            raise ContractError(f"value {value} out of range [0, {self.p}**{self.n})")
        length = bisect_right(self._offsets, value) - 1
        if length < 1:
            length = 1
        return length, value - self._offsets[length]

    def inverse(self, length: int, code_value: int) -> int:
        """Map a (code length, code value) pair back to the word value."""
        length = int(length)
        code_value = int(code_value)
        if code_value < 0 or not 1 <= length <= self.n or code_value >= self.capacity(length):
            raise UnknownCodeError(f"no code of length {length} with value {code_value}")
        return self._offsets[length] + code_value

    def code_digits(self, length: int, code_value: int) -> tuple[int, ...]:
        """The code value expanded to its length base-p digits."""
        digits = [0] * length
        v = code_value
        for i in range(length - 1, -1, -1):
            digits[i] = v % self.p
            v //= self.p
        return tuple(digits)

    def codes(self, limit: int | None = None):
        """Yield (word value, code length, code value) in canonical order."""
        stop = self.size if limit is None else min(limit, self.size)
        for value in range(stop):
            length, code_value = self.forward(value)
            yield value, length, code_value

    def offsets_i64(self) -> np.ndarray:
        if self._offsets_i64 is None:
            self._offsets_i64 = np.array(self._offsets, dtype=np.int64)
        return self._offsets_i64

    def __eq__(self, other):
        return isinstance(other, CodeBook) and (self.p, self.n) == (other.p, other.n)

    def __repr__(self):
        return f"CodeBook(p={self.p}, n={self.n}, {self.size} codes)"


def build_codebook(p: int, n: int, cap: int | None = DEFAULT_ENUMERATION_CAP) -> CodeBook:
    """Codebook for (p, n); cap bounds the alphabet size, None disables the bound."""
    p = check_radix(p)
    n = check_width(n)
    if cap is not None and p**n > cap:
        raise CapacityError(f"alphabet size {p}**{n} exceeds enumeration cap {cap}")
    return CodeBook(p, n)


def _clone3_kernels(book: CodeBook):
    if _backend.kernels is not _backend.pure and book.size <= _INT64_SAFE:
        return _backend.kernels, book.offsets_i64()
    return _backend.pure, book._offsets


def encode_clone3(paits, book: CodeBook) -> SecondaryBundle:
    block = _as_block(paits)
    if (block.p, block.n) != (book.p, book.n):
        raise ContractError(
            f"codebook is for (p={book.p}, n={book.n}), input is (p={block.p}, n={block.n})")
    kernels, offsets = _clone3_kernels(book)
    rem, flag = kernels.clone3_encode(block.digits, len(block), block.n, block.p, offsets)
    return SecondaryBundle(
        3, block.p, block.n, len(block),
        PitStream._wrap(block.p, rem), PitStream._wrap(block.p, flag))


def decode_clone3(bundle: SecondaryBundle, book: CodeBook) -> PaitBlock:
    if bundle.clone_id != 3:
        raise ContractError(f"expected a clone-3 bundle, got clone {bundle.clone_id}")
    if (bundle.p, bundle.n) != (book.p, book.n):
        raise ContractError(
            f"codebook is for (p={book.p}, n={book.n}), bundle is (p={bundle.p}, n={bundle.n})")
    kernels, offsets = _clone3_kernels(book)
    digits = kernels.clone3_decode(
        bundle.remainder.digits, bundle.flag_len.digits, bundle.pait_count,
        bundle.n, bundle.p, offsets, book.size)
    return PaitBlock._wrap(bundle.p, bundle.n, digits)
