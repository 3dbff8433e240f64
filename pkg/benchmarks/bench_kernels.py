#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Usage:  python benchmarks/bench_kernels.py [--paits N] [--radix P] [--width W]
"""

import argparse
import time

import numpy as np

from mv2codec import _pykernels, bits_per_pit, build_codebook

try:
    from mv2codec import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def run(args):
    rng = np.random.default_rng(1)
    p, n, count = args.radix, args.width, args.paits
    digits = rng.integers(0, p, size=count * n, dtype=np.uint16)
    book = build_codebook(p, n, cap=None)
    bpp = bits_per_pit(p)
    packed = _pykernels.pack_bits(digits, bpp)

    c1 = _pykernels.clone1_encode(digits, count, n)
    c2 = _pykernels.clone2_encode(digits, count, n)
    c3 = _pykernels.clone3_encode(digits, count, n, p, book._offsets)

    workloads = [
        ("clone1_encode", lambda k: k.clone1_encode(digits, count, n)),
        ("clone1_decode", lambda k: k.clone1_decode(c1[0], c1[1], count, n)),
        ("clone2_encode", lambda k: k.clone2_encode(digits, count, n)),
        ("clone2_decode", lambda k: k.clone2_decode(c2[0], c2[1], c2[2], count, n)),
        ("clone3_encode", lambda k: k.clone3_encode(
            digits, count, n, p, book._offsets if k is _pykernels else book.offsets_i64())),
        ("clone3_decode", lambda k: k.clone3_decode(
            c3[0], c3[1], count, n, p,
            book._offsets if k is _pykernels else book.offsets_i64(), book.size)),
        ("pack_bits", lambda k: k.pack_bits(digits, bpp)),
        ("unpack_bits", lambda k: k.unpack_bits(packed, count * n, bpp, p)),
    ]

    print(f"radix {p}, width {n}, {count} paits ({count * n} pits)\n")
    print(f"{'kernel':<16}{'pure (ms)':>12}{'compiled (ms)':>16}{'speedup':>10}")
    for name, call in workloads:
        t_pure, ref = best_of(lambda: call(_pykernels))
        if _kernels is None:
            print(f"{name:<16}{t_pure * 1e3:>12.2f}{'n/a':>16}{'-':>10}")
            continue
        t_fast, out = best_of(lambda: call(_kernels))
        refs = ref if isinstance(ref, tuple) else (ref,)
        outs = out if isinstance(out, tuple) else (out,)
        assert all(np.array_equal(a, b) for a, b in zip(refs, outs)), name
        print(f"{name:<16}{t_pure * 1e3:>12.2f}{t_fast * 1e3:>16.2f}"
              f"{t_pure / t_fast:>9.1f}x")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--paits", type=int, default=1 << 17)
    parser.add_argument("--radix", type=int, default=2)
    parser.add_argument("--width", type=int, default=8)
    run(parser.parse_args())
