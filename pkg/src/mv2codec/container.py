"""Binary container format, version 1.

All multi-byte integers big-endian:

    offset  size  field
    0       4     magic "MV2C"
    4       1     version (0x01)
    5       2     radix p
    7       2     width n
    9       1     clone_id (1..3)
    10      1     rounds m (1..255)
    11      1     input_format (0 = bytes, 1 = digits)
    12      8     original pit count
    20      18*m  per-round records: pad_count (2), flag_len pits (8),
                  flag_msb pits (8, zero unless clone 2)
    ...     8     remainder pit count
    ...           packed streams: remainder, then rounds 1..m (flag_msb
                  first when present, then flag_len); each stream packed
                  at ceil(log2 p) bits per pit and zero padded to a byte
    last 4        CRC-32 (IEEE) over all preceding bytes
"""

from __future__ import annotations

import struct
import zlib

from .errors import (
    BadMagicError,
    ChecksumError,
    ContainerError,
    ContractError,
    TruncationError,
    UnsupportedVersionError,
)
from .pipeline import Container, PipelineParams, RoundRecord, RoundStreams
from .pitcore import bits_per_pit, pack_pits, unpack_pits

MAGIC = b"MV2C"
VERSION = 1

_HEADER = struct.Struct(">4sBHHBBBQ")
_ROUND = struct.Struct(">HQQ")
_COUNT = struct.Struct(">Q")
_CRC = struct.Struct(">I")

_FORMAT_CODES = {"bytes": 0, "digits": 1}
_FORMAT_NAMES = {v: k for k, v in _FORMAT_CODES.items()}


def _stream_bytes(pit_count: int, p: int) -> int:
    return (pit_count * bits_per_pit(p) + 7) // 8


def serialize_container(c: Container) -> bytes:
    params = c.params
    if len(c.rounds) != params.rounds or len(c.flags) != params.rounds:
        raise ContractError("container round records do not match params.rounds")
    out = bytearray(_HEADER.pack(
        MAGIC, VERSION, params.p, params.n, params.clone_id, params.rounds,
        _FORMAT_CODES[params.input_format], c.original_pit_count))
    for record, streams in zip(c.rounds, c.flags):
        msb_count = len(streams.flag_msb) if streams.flag_msb is not None else 0
        if record.flag_len_count != len(streams.flag_len) or record.flag_msb_count != msb_count:
            raise ContractError("round record counts do not match the stored streams")
        out += _ROUND.pack(record.pad_count, record.flag_len_count, record.flag_msb_count)
    out += _COUNT.pack(len(c.remainder))
    out += pack_pits(c.remainder)
    for streams in c.flags:
        if streams.flag_msb is not None:
            out += pack_pits(streams.flag_msb)
        out += pack_pits(streams.flag_len)
    out += _CRC.pack(zlib.crc32(bytes(out)) & 0xFFFFFFFF)
    return bytes(out)


def parse_container(data: bytes) -> Container:
    data = bytes(data)
    if len(data) < len(MAGIC):
        raise TruncationError(f"container holds {len(data)} bytes, shorter than the magic")
    if data[: len(MAGIC)] != MAGIC:
        raise BadMagicError(f"bad magic {data[:len(MAGIC)]!r}, expected {MAGIC!r}")
    if len(data) < len(MAGIC) + 1:
        raise TruncationError("container ends before the version byte")
    version = data[len(MAGIC)]
    if version != VERSION:
        raise UnsupportedVersionError(f"container version {version}, this build reads {VERSION}")
    if len(data) < _HEADER.size:
        raise TruncationError("container ends inside the fixed header")
    _, _, p, n, clone_id, rounds, fmt_code, original = _HEADER.unpack_from(data, 0)

    if not 2 <= p:
        raise ContainerError(f"radix {p} out of range")
    if not 1 <= n <= 4096:
        raise ContainerError(f"width {n} out of range")
    if clone_id not in (1, 2, 3):
        raise ContainerError(f"clone_id {clone_id} out of range")
    if clone_id == 2 and n < 2:
        raise ContainerError("clone 2 container with width < 2")
    if rounds < 1:
        raise ContainerError("round count 0")
    if fmt_code not in _FORMAT_NAMES:
        raise ContainerError(f"input_format code {fmt_code} out of range")
    if fmt_code == _FORMAT_CODES["bytes"]:
        if p != 2:
            raise ContainerError(f"bytes input_format with radix {p}")
        if original % 8:
            raise ContainerError(f"bytes input_format with {original} pits, not a byte multiple")

    offset = _HEADER.size
    records = []
    for i in range(rounds):
        if len(data) < offset + _ROUND.size:
            raise TruncationError(f"container ends inside round record {i + 1}")
        pad, flag_len_count, flag_msb_count = _ROUND.unpack_from(data, offset)
        offset += _ROUND.size
        if pad >= n:
            raise ContainerError(f"round {i + 1}: pad count {pad} not below width {n}")
        if clone_id != 2 and flag_msb_count:
            raise ContainerError(f"round {i + 1}: msb flag pits on a clone-{clone_id} container")
        records.append(RoundRecord(pad, flag_len_count, flag_msb_count))
    if len(data) < offset + _COUNT.size:
        raise TruncationError("container ends before the remainder count")
    (remainder_count,) = _COUNT.unpack_from(data, offset)
    offset += _COUNT.size

    sections = [("remainder", remainder_count)]
    for i, record in enumerate(records, start=1):
        if clone_id == 2:
            sections.append((f"round {i} flag_msb", record.flag_msb_count))
        sections.append((f"round {i} flag_len", record.flag_len_count))
    expected = offset + sum(_stream_bytes(count, p) for _, count in sections) + _CRC.size
    if len(data) < expected:
        raise TruncationError(f"container holds {len(data)} bytes, needs {expected}")
    if len(data) > expected:
        raise ContainerError(f"{len(data) - expected} trailing bytes after the container")

    (stored_crc,) = _CRC.unpack_from(data, expected - _CRC.size)
    actual_crc = zlib.crc32(data[: expected - _CRC.size]) & 0xFFFFFFFF
    if stored_crc != actual_crc:
        raise ChecksumError(f"checksum {actual_crc:#010x} does not match stored {stored_crc:#010x}")

    streams = {}
    for name, count in sections:
        nbytes = _stream_bytes(count, p)
        streams[name] = unpack_pits(data[offset : offset + nbytes], count, p)
        offset += nbytes

    try:
        params = PipelineParams(p, n, clone_id, rounds, _FORMAT_NAMES[fmt_code])
    except ContractError as exc:
        raise ContainerError(str(exc)) from exc
    flags = tuple(
        RoundStreams(
            flag_len=streams[f"round {i} flag_len"],
            flag_msb=streams.get(f"round {i} flag_msb"),
        )
        for i in range(1, rounds + 1)
    )
    return Container(
        params=params,
        original_pit_count=original,
        rounds=tuple(records),
        remainder=streams["remainder"],
        flags=flags,
    )
