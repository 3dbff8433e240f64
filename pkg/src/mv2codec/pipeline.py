"""Multi-round recoding pipeline and byte/digit ingestion.

Round i blocks the current stream into width-n words (recording the zero
pad), encodes it with the chosen clone, keeps that round's flag streams, and
feeds the remainder to round i+1. The container holds the final remainder,
every flag stream, and the per-round pads, which is exactly enough to undo
the rounds in reverse order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clones import (
    CLONE_IDS,
    SecondaryBundle,
    build_codebook,
    decode_clone1,
    decode_clone2,
    decode_clone3,
    encode_clone1,
    encode_clone2,
    encode_clone3,
)
from .errors import ContractError, CorruptionError, InvalidDigitError, LengthMismatchError
from .pitcore import (
    DEFAULT_ENUMERATION_CAP,
    PitStream,
    block_into_paits,
    check_radix,
    check_width,
)

INPUT_FORMATS = ("bytes", "digits")
MIN_ROUNDS, MAX_ROUNDS = 1, 255


@dataclass(frozen=True)
class PipelineParams:
    p: int
    n: int
    clone_id: int
    rounds: int = 1
    input_format: str = "digits"

    def __post_init__(self):
        check_radix(self.p)
        check_width(self.n)
        if self.clone_id not in CLONE_IDS:
            raise ContractError(f"clone_id must be one of {CLONE_IDS}, got {self.clone_id}")
        if self.clone_id == 2 and self.n < 2:
            raise ContractError("clone 2 needs width >= 2")
        if not MIN_ROUNDS <= self.rounds <= MAX_ROUNDS:
            raise ContractError(f"rounds must be in [{MIN_ROUNDS}, {MAX_ROUNDS}], got {self.rounds}")
        if self.input_format not in INPUT_FORMATS:
            raise ContractError(f"input_format must be one of {INPUT_FORMATS}, got {self.input_format!r}")
        if self.input_format == "bytes" and self.p != 2:
            raise ContractError("bytes input is 8 pits per byte and needs radix 2")


@dataclass(frozen=True)
class RoundRecord:
    pad_count: int
    flag_len_count: int
    flag_msb_count: int  # 0 unless clone 2


@dataclass(frozen=True)
class RoundStreams:
    flag_len: PitStream
    flag_msb: PitStream | None = None


@dataclass(frozen=True)
class Container:
    """Everything needed to reconstruct the original stream bit-exactly."""

    params: PipelineParams
    original_pit_count: int
    rounds: tuple[RoundRecord, ...]
    remainder: PitStream
    flags: tuple[RoundStreams, ...]

    @property
    def stored_pit_count(self) -> int:
        total = len(self.remainder)
        for fl in self.flags:
            total += len(fl.flag_len)
            if fl.flag_msb is not None:
                total += len(fl.flag_msb)
        return total

    @property
    def expansion(self) -> Fraction:
        return Fraction(self.stored_pit_count, self.original_pit_count)


def encode_pipeline(stream: PitStream, params: PipelineParams,
                    cap: int | None = DEFAULT_ENUMERATION_CAP) -> Container:
    """Apply the chosen clone for params.rounds rounds."""
    if stream.p != params.p:
        raise ContractError(f"stream radix {stream.p} does not match params radix {params.p}")
    book = build_codebook(params.p, params.n, cap) if params.clone_id == 3 else None
    records = []
    flags = []
    current = stream
    for _ in range(params.rounds):
        block, pad = block_into_paits(current, params.n)
        if params.clone_id == 1:
            bundle = encode_clone1(block)
        elif params.clone_id == 2:
            bundle = encode_clone2(block)
        else:
            bundle = encode_clone3(block, book)
        records.append(RoundRecord(
            pad_count=pad,
            flag_len_count=len(bundle.flag_len),
            flag_msb_count=len(bundle.flag_msb) if bundle.flag_msb is not None else 0,
        ))
        flags.append(RoundStreams(flag_len=bundle.flag_len, flag_msb=bundle.flag_msb))
        current = bundle.remainder
    return Container(
        params=params,
        original_pit_count=len(stream),
        rounds=tuple(records),
        remainder=current,
        flags=tuple(flags),
    )


def decode_pipeline(container: Container,
                    cap: int | None = DEFAULT_ENUMERATION_CAP) -> PitStream:
    """Undo the rounds in reverse order; returns exactly the original pits."""
    params = container.params
    p, n = params.p, params.n
    book = build_codebook(p, n, cap) if params.clone_id == 3 else None
    current = container.remainder
    for i in range(params.rounds, 0, -1):
        record = container.rounds[i - 1]
        streams = container.flags[i - 1]
        total = len(current) + len(streams.flag_len)
        if streams.flag_msb is not None:
            total += len(streams.flag_msb)
        if total % (n + 1):
            raise CorruptionError(
                f"round {i}: {total} secondary pits is not a multiple of n+1 = {n + 1}")
        count = total // (n + 1)
        bundle = SecondaryBundle(
            clone_id=params.clone_id, p=p, n=n, pait_count=count,
            remainder=current, flag_len=streams.flag_len, flag_msb=streams.flag_msb)
        if params.clone_id == 1:
            block = decode_clone1(bundle)
        elif params.clone_id == 2:
            block = decode_clone2(bundle)
        else:
            block = decode_clone3(bundle, book)
        flat = block.flatten()
        pad = record.pad_count
        if pad:
            if pad >= n or pad > len(flat):
                raise CorruptionError(f"round {i}: impossible pad count {pad}")
            tail = flat.digits[len(flat) - pad:]
            if tail.any():
                raise CorruptionError(f"round {i}: nonzero padding pits")
            current = flat[: len(flat) - pad]
        else:
            current = flat
    if len(current) != container.original_pit_count:
        raise LengthMismatchError(
            f"decoded {len(current)} pits, container promises {container.original_pit_count}")
    return current


def ingest(data: bytes, input_format: str, p: int = 2) -> PitStream:
    """Read a file into a pit stream: 8 pits per byte (MSB first) or one digit per byte."""
    p = check_radix(p)
    if input_format == "bytes":
        if p != 2:
            raise ContractError("bytes input is 8 pits per byte and needs radix 2")
        bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8))
        return PitStream._wrap(2, bits.astype(np.uint16))
    if input_format == "digits":
        arr = np.frombuffer(data, dtype=np.uint8)
        if arr.size:
            bad = np.nonzero(arr >= p)[0]
            if bad.size:
                off = int(bad[0])
                raise InvalidDigitError(off, int(arr[off]), p)
        return PitStream._wrap(p, arr.astype(np.uint16))
    raise ContractError(f"input_format must be one of {INPUT_FORMATS}, got {input_format!r}")


def emit(stream: PitStream, input_format: str) -> bytes:
    """Inverse of ingest."""
    if input_format == "bytes":
        if stream.p != 2:
            raise ContractError("bytes output needs radix 2")
        if len(stream) % 8:
            raise ContractError(f"byte output needs a multiple of 8 pits, got {len(stream)}")
        return np.packbits(stream.digits.astype(np.uint8)).tobytes()
    if input_format == "digits":
        if stream.digits.size and stream.digits.max() > 0xFF:
            raise ContractError("digit output holds one pit per byte and needs pit values < 256")
        return stream.digits.astype(np.uint8).tobytes()
    raise ContractError(f"input_format must be one of {INPUT_FORMATS}, got {input_format!r}")
