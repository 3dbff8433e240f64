# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled digit kernels.

Hot-loop twins of `_pykernels`; same signatures, outputs, and error classes.
Limits of this backend: clone-3 word values must fit in int64 (the caller
routes larger alphabets to the pure backend).
"""

import numpy as np

from .errors import (
    CorruptionError,
    LengthMismatchError,
    TruncationError,
    UnknownCodeError,
)

ctypedef unsigned short u16
ctypedef unsigned char u8
ctypedef long long i64


def clone1_encode(const u16[::1] digits, Py_ssize_t count, Py_ssize_t n):
    rem_np = np.empty(count * n, dtype=np.uint16)
    flag_np = np.empty(count * n, dtype=np.uint16)
    cdef u16[::1] rem = rem_np
    cdef u16[::1] flag = flag_np
    cdef Py_ssize_t i, j, z, base, ri = 0, fi = 0
    for i in range(count):
        base = i * n
        z = 0
        while z < n - 1 and digits[base + z] == 0:
            z += 1
        for j in range(base + z, base + n):
            rem[ri] = digits[j]
            ri += 1
        for j in range(z):
            flag[fi] = 0
            fi += 1
        flag[fi] = 1
        fi += 1
    return rem_np[:ri].copy(), flag_np[:fi].copy()


def clone1_decode(const u16[::1] rem, const u16[::1] flag, Py_ssize_t count, Py_ssize_t n):
    out_np = np.zeros(count * n, dtype=np.uint16)
    cdef u16[::1] out = out_np
    cdef Py_ssize_t rem_len = rem.shape[0], flag_len = flag.shape[0]
    cdef Py_ssize_t i, j, z, length, base, ri = 0, fi = 0
    cdef u16 v
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
        for j in range(length):
            out[base + j] = rem[ri]
            ri += 1
    if ri != rem_len:
        raise LengthMismatchError("remainder stream not fully consumed")
    if fi != flag_len:
        raise LengthMismatchError("length flag not fully consumed")
    return out_np


def clone2_encode(const u16[::1] digits, Py_ssize_t count, Py_ssize_t n):
    msb_np = np.empty(count, dtype=np.uint16)
    rem_np = np.empty(count * (n - 1), dtype=np.uint16)
    flag_np = np.empty(count * (n - 1), dtype=np.uint16)
    cdef u16[::1] msb = msb_np
    cdef u16[::1] rem = rem_np
    cdef u16[::1] flag = flag_np
    cdef Py_ssize_t i, j, z, base, ri = 0, fi = 0
    for i in range(count):
        base = i * n
        msb[i] = digits[base]
        z = 0
        while z < n - 2 and digits[base + 1 + z] == 0:
            z += 1
        for j in range(base + 1 + z, base + n):
            rem[ri] = digits[j]
            ri += 1
        for j in range(z):
            flag[fi] = 0
            fi += 1
        flag[fi] = 1
        fi += 1
    return msb_np, rem_np[:ri].copy(), flag_np[:fi].copy()


def clone2_decode(const u16[::1] msb, const u16[::1] rem, const u16[::1] flag,
                  Py_ssize_t count, Py_ssize_t n):
    if msb.shape[0] != count:
        raise LengthMismatchError(f"msb flag holds {msb.shape[0]} pits, expected {count}")
    out_np = np.zeros(count * n, dtype=np.uint16)
    cdef u16[::1] out = out_np
    cdef Py_ssize_t rem_len = rem.shape[0], flag_len = flag.shape[0]
    cdef Py_ssize_t i, j, z, length, base, ri = 0, fi = 0
    cdef u16 v
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
        for j in range(length):
            out[base + j] = rem[ri]
            ri += 1
    if ri != rem_len:
        raise LengthMismatchError("remainder stream not fully consumed")
    if fi != flag_len:
        raise LengthMismatchError("length flag not fully consumed")
    return out_np


def clone3_encode(const u16[::1] digits, Py_ssize_t count, Py_ssize_t n,
                  i64 p, const i64[::1] offsets):
    rem_np = np.empty(count * n, dtype=np.uint16)
    flag_np = np.empty(count * n, dtype=np.uint16)
    cdef u16[::1] rem = rem_np
    cdef u16[::1] flag = flag_np
    cdef Py_ssize_t i, j, length, base, idx, ri = 0, fi = 0
    cdef i64 v, c
    for i in range(count):
        base = i * n
        v = 0
        for j in range(n):
            v = v * p + digits[base + j]
        length = n
        while length > 1 and offsets[length] > v:
            length -= 1
        c = v - offsets[length]
        idx = ri + length - 1
        for j in range(length):
            rem[idx - j] = <u16> (c % p)
            c //= p
        ri += length
        for j in range(n - length):
            flag[fi] = 0
            fi += 1
        flag[fi] = 1
        fi += 1
    return rem_np[:ri].copy(), flag_np[:fi].copy()


def clone3_decode(const u16[::1] rem, const u16[::1] flag, Py_ssize_t count,
                  Py_ssize_t n, i64 p, const i64[::1] offsets, i64 size):
    out_np = np.empty(count * n, dtype=np.uint16)
    cdef u16[::1] out = out_np
    cdef Py_ssize_t rem_len = rem.shape[0], flag_len = flag.shape[0]
    cdef Py_ssize_t i, j, z, length, base, ri = 0, fi = 0
    cdef u16 v
    cdef i64 c, value, upper
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
            out[base + j] = <u16> (value % p)
            value //= p
    if ri != rem_len:
        raise LengthMismatchError("remainder stream not fully consumed")
    if fi != flag_len:
        raise LengthMismatchError("length flag not fully consumed")
    return out_np


def pack_bits(const u16[::1] digits, int bits_per_pit):
    cdef Py_ssize_t count = digits.shape[0]
    cdef Py_ssize_t total_bits = count * bits_per_pit
    out_np = np.zeros((total_bits + 7) // 8, dtype=np.uint8)
    cdef u8[::1] out = out_np
    cdef unsigned long long acc = 0
    cdef int bits = 0
    cdef Py_ssize_t i, oi = 0
    for i in range(count):
        acc = (acc << bits_per_pit) | digits[i]
        bits += bits_per_pit
        while bits >= 8:
            bits -= 8
            out[oi] = <u8> ((acc >> bits) & 0xFF)
            oi += 1
    if bits:
        out[oi] = <u8> ((acc << (8 - bits)) & 0xFF)
    return out_np


def unpack_bits(const u8[::1] data, Py_ssize_t count, int bits_per_pit, int p):
    cdef Py_ssize_t needed = (count * bits_per_pit + 7) // 8
    if data.shape[0] < needed:
        raise TruncationError(
            f"packed stream underrun: need {needed} bytes, have {data.shape[0]}")
    out_np = np.empty(count, dtype=np.uint16)
    cdef u16[::1] out = out_np
    cdef unsigned long long acc = 0, mask = (1ULL << bits_per_pit) - 1, v
    cdef int bits = 0
    cdef Py_ssize_t i, di = 0
    for i in range(count):
        while bits < bits_per_pit:
            acc = (acc << 8) | data[di]
            di += 1
            bits += 8
        bits -= bits_per_pit
        v = (acc >> bits) & mask
        if v >= <unsigned long long> p:
            raise CorruptionError(f"packed pit {i} decodes to {v}, not a radix-{p} digit")
        out[i] = <u16> v
    return out_np
