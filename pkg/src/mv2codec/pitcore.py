"""Radix-p digit streams and fixed-width words.

Conventions used throughout the package:

* a "pit" is one base-p digit, 2 <= p <= 65535, stored as uint16;
* a "pait" is a word of exactly n pits, most significant digit first;
* lengths are always counted in pits, never bytes;
* the significant length of a word is its width minus the count of leading
  zeros, floored at one pit, so the all-zero word never becomes empty;
* packing a stream uses ceil(log2 p) bits per pit, most significant bit
  first within each byte, the final partial byte zero padded.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ._backend import kernels
from .errors import CapacityError, ContractError

MIN_RADIX, MAX_RADIX = 2, 65535
MIN_WIDTH, MAX_WIDTH = 1, 4096

#: Largest alphabet size p**n that enumeration-based operations accept.
DEFAULT_ENUMERATION_CAP = 1 << 24


def check_radix(p) -> int:
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise ContractError(f"radix must be an integer, got {p!r}")
    if not MIN_RADIX <= p <= MAX_RADIX:
        raise ContractError(f"radix must be in [{MIN_RADIX}, {MAX_RADIX}], got {p}")
    return int(p)


def check_width(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ContractError(f"width must be an integer, got {n!r}")
    if not MIN_WIDTH <= n <= MAX_WIDTH:
        raise ContractError(f"width must be in [{MIN_WIDTH}, {MAX_WIDTH}], got {n}")
    return int(n)


def bits_per_pit(p: int) -> int:
    """Storage bits per radix-p pit under the fixed-width packing rule."""
    return (check_radix(p) - 1).bit_length()


def _validated_digits(p: int, values) -> np.ndarray:
    arr = np.array(values, dtype=np.int64, copy=True).ravel()
    if arr.size and (arr.min() < 0 or arr.max() >= p):
        bad = arr[(arr < 0) | (arr >= p)][0]
        raise ContractError(f"pit value {bad} out of range for radix {p}")
    out = arr.astype(np.uint16)
    out.setflags(write=False)
    return out


class Pait:
    """One fixed-width word: exactly n radix-p digits, most significant first."""

    __slots__ = ("p", "digits")

    def __init__(self, p: int, digits):
        p = check_radix(p)
        digits = tuple(int(d) for d in digits)
        check_width(len(digits))
        for d in digits:
            if not 0 <= d < p:
                raise ContractError(f"digit {d} out of range for radix {p}")
        self.p = p
        self.digits = digits

    @property
    def n(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.p + d
        return v

    def __len__(self):
        return len(self.digits)

    def __eq__(self, other):
        return (
            isinstance(other, Pait)
            and self.p == other.p
            and self.digits == other.digits
        )

    def __hash__(self):
        return hash((self.p, self.digits))

    def __repr__(self):
        return f"Pait(p={self.p}, digits={list(self.digits)})"


def pait_of_value(value: int, p: int, n: int) -> Pait:
    """The unique n-digit base-p expansion of value, most significant first."""
    p = check_radix(p)
    n = check_width(n)
    value = int(value)
    if not 0 <= value < p**n:
        raise ContractError(f"value {value} out of range [0, {p}**{n})")
    digits = [0] * n
    v = value
    for i in range(n - 1, -1, -1):
        digits[i] = v % p
        v //= p
    return Pait(p, digits)


def value_of_pait(x: Pait) -> int:
    """Inverse of pait_of_value."""
    return x.value


def significant_length(x: Pait) -> int:
    """Width minus leading zeros, at least 1 (the all-zero word keeps one pit)."""
    n = len(x.digits)
    z = 0
    while z < n - 1 and x.digits[z] == 0:
        z += 1
    return n - z


class PitStream:
    """Immutable sequence of radix-p digits backed by a read-only uint16 array."""

    __slots__ = ("p", "_digits")

    def __init__(self, p: int, pits=()):
        self.p = check_radix(p)
        self._digits = _validated_digits(self.p, pits)

    @classmethod
    def _wrap(cls, p: int, digits: np.ndarray) -> "PitStream":
        # trusted constructor: digits already validated uint16 < p
        self = object.__new__(cls)
        self.p = p
        digits.setflags(write=False)
        self._digits = digits
        return self

    @property
    def digits(self) -> np.ndarray:
        return self._digits

    def tolist(self) -> list[int]:
        return self._digits.tolist()

    def __len__(self):
        return int(self._digits.size)

    def __eq__(self, other):
        return (
            isinstance(other, PitStream)
            and self.p == other.p
            and np.array_equal(self._digits, other._digits)
        )

    def __getitem__(self, i):
        if isinstance(i, slice):
            return PitStream._wrap(self.p, self._digits[i])
        return int(self._digits[i])

    def __iter__(self):
        return iter(self._digits.tolist())

    def __repr__(self):
        return f"PitStream(p={self.p}, {len(self)} pits)"


class PaitBlock(Sequence):
    """A run of same-width words stored as one flat digit array.

    Behaves as a sequence of Pait; the codecs consume the flat array directly.
    """

    __slots__ = ("p", "n", "_digits")

    def __init__(self, p: int, n: int, digits=()):
        self.p = check_radix(p)
        self.n = check_width(n)
        arr = _validated_digits(self.p, digits)
        if arr.size % self.n:
            raise ContractError(
                f"digit count {arr.size} is not a multiple of width {self.n}")
        self._digits = arr

    @classmethod
    def _wrap(cls, p: int, n: int, digits: np.ndarray) -> "PaitBlock":
        self = object.__new__(cls)
        self.p = p
        self.n = n
        digits.setflags(write=False)
        self._digits = digits
        return self

    @classmethod
    def from_paits(cls, paits, p: int | None = None, n: int | None = None) -> "PaitBlock":
        paits = list(paits)
        if not paits:
            if p is None or n is None:
                raise ContractError("cannot infer radix/width from an empty sequence")
            return cls(p, n)
        first = paits[0]
        p = first.p if p is None else check_radix(p)
        n = first.n if n is None else check_width(n)
        flat = []
        for x in paits:
            if x.p != p or x.n != n:
                raise ContractError(
                    f"mixed words: expected (p={p}, n={n}), got (p={x.p}, n={x.n})")
            flat.extend(x.digits)
        return cls._wrap(p, n, np.array(flat, dtype=np.uint16))

    @property
    def digits(self) -> np.ndarray:
        return self._digits

    def flatten(self) -> PitStream:
        return PitStream._wrap(self.p, self._digits)

    def __len__(self):
        return int(self._digits.size) // self.n

    def __getitem__(self, i):
        if isinstance(i, slice):
            start, stop, step = i.indices(len(self))
            if step != 1:
                raise ContractError("only contiguous slices are supported")
            return PaitBlock._wrap(
                self.p, self.n, self._digits[start * self.n : stop * self.n])
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        pait = object.__new__(Pait)
        pait.p = self.p
        pait.digits = tuple(self._digits[i * self.n : (i + 1) * self.n].tolist())
        return pait

    def __eq__(self, other):
        return (
            isinstance(other, PaitBlock)
            and self.p == other.p
            and self.n == other.n
            and np.array_equal(self._digits, other._digits)
        )

    def __repr__(self):
        return f"PaitBlock(p={self.p}, n={self.n}, {len(self)} paits)"


def main_file(p: int, n: int, cap: int | None = DEFAULT_ENUMERATION_CAP) -> PaitBlock:
    """Every width-n word exactly once, in ascending numeric order."""
    p = check_radix(p)
    n = check_width(n)
    size = p**n
    limit = cap if cap is not None else 1 << 62
    if size > limit:
        raise CapacityError(f"alphabet size {p}**{n} exceeds enumeration cap {limit}")
    vals = np.arange(size, dtype=np.int64)
    digits = np.empty((size, n), dtype=np.uint16)
    for col in range(n - 1, -1, -1):
        digits[:, col] = vals % p
        vals //= p
    return PaitBlock._wrap(p, n, np.ascontiguousarray(digits.reshape(-1)))


def block_into_paits(s: PitStream, n: int) -> tuple[PaitBlock, int]:
    """Zero-pad s to a multiple of n pits and split into words.

    Returns the block and the pad count (needed to invert exactly).
    """
    n = check_width(n)
    pad = (-len(s)) % n
    if pad:
        digits = np.concatenate([s.digits, np.zeros(pad, dtype=np.uint16)])
    else:
        digits = s.digits
    return PaitBlock._wrap(s.p, n, digits), pad


def pack_pits(s: PitStream) -> bytes:
    """Pack a stream at ceil(log2 p) bits per pit, MSB first."""
    return kernels.pack_bits(s.digits, bits_per_pit(s.p)).tobytes()


def unpack_pits(data, count: int, p: int) -> PitStream:
    """Inverse of pack_pits given the pit count and radix."""
    p = check_radix(p)
    if count < 0:
        raise ContractError(f"pit count must be non-negative, got {count}")
    arr = np.frombuffer(bytes(data), dtype=np.uint8)
    return PitStream._wrap(p, kernels.unpack_bits(arr, count, bits_per_pit(p), p))
