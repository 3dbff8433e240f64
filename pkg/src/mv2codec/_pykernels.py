"""Pure-Python digit kernels.

Reference implementations of the per-word inner loops. `_backend` prefers the
compiled twins in `_kernels` and falls back to these; both take flat uint16
digit buffers, return freshly allocated numpy arrays, and raise the same error
classes under the same conditions. The clone-3 functions here additionally
accept alphabets too large for the compiled int64 path (offsets may be
arbitrary Python integers).
"""

from __future__ import annotations

import numpy as np

from .errors import (
    CorruptionError,
    LengthMismatchError,
    TruncationError,
    UnknownCodeError,
)


def _u16(values) -> np.ndarray:
    return np.array(values, dtype=np.uint16)


def clone1_encode(digits, count: int, n: int):
    """Strip leading zeros from each width-n word (all-zero words keep one pit)."""
    src = np.asarray(digits).tolist()
    rem = []
    flag = []
    for i in range(count):
        base = i * n
        z = 0
        while z < n - 1 and src[base + z] == 0:
            z += 1
        rem.extend(src[base + z : base + n])
        flag.extend([0] * z)
        flag.append(1)
    return _u16(rem), _u16(flag)


def clone1_decode(rem, flag, count: int, n: int):
    rem = np.asarray(rem).tolist()
    flag = np.asarray(flag).tolist()
    out = [0] * (count * n)
    ri = fi = 0
    rem_len, flag_len = len(rem), len(flag)
    for i in range(count):
        z = 0
        while True:
            if fi >= flag_len:
                raise TruncationError(f"length flag exhausted at word {i} of {count}")
            v = flag[fi]
            fi += 1
            if v == 1:
                break
            if v != 0:
                raise CorruptionError(f"length flag pit must be 0 or 1, got {v}")
            z += 1
            if z >= n:
                raise CorruptionError(f"unary length record exceeds width {n}")
        length = n - z
        if ri + length > rem_len:
            raise LengthMismatchError("remainder stream underrun")
        base = i * n + z
        out[base : base + length] = rem[ri : ri + length]
        ri += length
    if ri != rem_len:
        raise LengthMismatchError("remainder stream not fully consumed")
    if fi != flag_len:
        raise LengthMismatchError("length flag not fully consumed")
    return _u16(out)


def clone2_encode(digits, count: int, n: int):
    """Split off the top pit, then strip leading zeros of the width-(n-1) rest."""
    src = np.asarray(digits).tolist()
    msb = []
    rem = []
    flag = []
    for i in range(count):
        base = i * n
        msb.append(src[base])
        z = 0
        while z < n - 2 and src[base + 1 + z] == 0:
            z += 1
        rem.extend(src[base + 1 + z : base + n])
        flag.extend([0] * z)
        flag.append(1)
    return _u16(msb), _u16(rem), _u16(flag)


def clone2_decode(msb, rem, flag, count: int, n: int):
    msb = np.asarray(msb).tolist()
    rem = np.asarray(rem).tolist()
    flag = np.asarray(flag).tolist()
    if len(msb) != count:
        raise LengthMismatchError(f"msb flag holds {len(msb)} pits, expected {count}")
    out = [0] * (count * n)
    ri = fi = 0
    rem_len, flag_len = len(rem), len(flag)
    for i in range(count):
        out[i * n] = msb[i]
        z = 0
        while True:
            if fi >= flag_len:
                raise TruncationError(f"length flag exhausted at word {i} of {count}")
            v = flag[fi]
            fi += 1
            if v == 1:
                break
            if v != 0:
                raise CorruptionError(f"length flag pit must be 0 or 1, got {v}")
            z += 1
            if z >= n - 1:
                raise CorruptionError(f"unary length record exceeds width {n - 1}")
        length = (n - 1) - z
        if ri + length > rem_len:
            raise LengthMismatchError("remainder stream underrun")
        base = i * n + 1 + z
        out[base : base + length] = rem[ri : ri + length]
        ri += length
    if ri != rem_len:
        raise LengthMismatchError("remainder stream not fully consumed")
    if fi != flag_len:
        raise LengthMismatchError("length flag not fully consumed")
    return _u16(out)


def clone3_encode(digits, count: int, n: int, p: int, offsets):
    """Replace each word with its canonical variable-length code.

    offsets[L] is the first word value assigned a length-L code, L in 1..n.
    """
    src = np.asarray(digits).tolist()
    rem = []
    flag = []
    for i in range(count):
        base = i * n
        v = 0
        for j in range(n):
            v = v * p + src[base + j]
        length = n
        while length > 1 and offsets[length] > v:
            length -= 1
        c = v - offsets[length]
        code = [0] * length
        for j in range(length - 1, -1, -1):
            code[j] = c % p
            c //= p
        rem.extend(code)
        flag.extend([0] * (n - length))
        flag.append(1)
    return _u16(rem), _u16(flag)


def clone3_decode(rem, flag, count: int, n: int, p: int, offsets, size):
    rem = np.asarray(rem).tolist()
    flag = np.asarray(flag).tolist()
    out = [0] * (count * n)
    ri = fi = 0
    rem_len, flag_len = len(rem), len(flag)
    for i in range(count):
        z = 0
        while True:
            if fi >= flag_len:
                raise TruncationError(f"length flag exhausted at word {i} of {count}")
            v = flag[fi]
            fi += 1
            if v == 1:
                break
            if v != 0:
                raise CorruptionError(f"length flag pit must be 0 or 1, got {v}")
            z += 1
            if z >= n:
                raise CorruptionError(f"unary length record exceeds width {n}")
        length = n - z
        if ri + length > rem_len:
            raise LengthMismatchError("remainder stream underrun")
        c = 0
        for j in range(length):
            c = c * p + rem[ri]
            ri += 1
        value = offsets[length] + c
        upper = offsets[length + 1] if length < n else size
        if value >= upper:
            raise UnknownCodeError(f"no code of length {length} with value {c}")
        base = i * n
        for j in range(n - 1, -1, -1):
            out[base + j] = value % p
            value //= p
    if ri != rem_len:
        raise LengthMismatchError("remainder stream not fully consumed")
    if fi != flag_len:
        raise LengthMismatchError("length flag not fully consumed")
    return _u16(out)


def pack_bits(digits, bits_per_pit: int):
    """MSB-first fixed-width packing; final partial byte zero padded."""
    src = np.asarray(digits).tolist()
    total_bits = len(src) * bits_per_pit
    out = bytearray((total_bits + 7) // 8)
    acc = 0
    bits = 0
    oi = 0
    for d in src:
        acc = (acc << bits_per_pit) | d
        bits += bits_per_pit
        while bits >= 8:
            bits -= 8
            out[oi] = (acc >> bits) & 0xFF
            oi += 1
            acc &= (1 << bits) - 1  # keep the int small
    if bits:
        out[oi] = (acc << (8 - bits)) & 0xFF
    return np.frombuffer(bytes(out), dtype=np.uint8)


def unpack_bits(data, count: int, bits_per_pit: int, p: int):
    src = np.asarray(data).tolist()
    needed = (count * bits_per_pit + 7) // 8
    if len(src) < needed:
        raise TruncationError(f"packed stream underrun: need {needed} bytes, have {len(src)}")
    out = [0] * count
    acc = 0
    bits = 0
    di = 0
    mask = (1 << bits_per_pit) - 1
    for i in range(count):
        while bits < bits_per_pit:
            acc = (acc << 8) | src[di]
            di += 1
            bits += 8
        bits -= bits_per_pit
        v = (acc >> bits) & mask
        acc &= (1 << bits) - 1  # keep the int small
        if v >= p:
            raise CorruptionError(f"packed pit {i} decodes to {v}, not a radix-{p} digit")
        out[i] = v
    return _u16(out)
