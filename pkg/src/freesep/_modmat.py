"""Flat-tuple integer matrices mod p: internal helpers for hot paths.

A matrix is a row-major tuple of n*n ints in [0, p). These avoid the
per-entry object overhead of Matrix<FpElem> in closures, screenings and
replay checks; the public API keeps the typed matrices.
"""

from __future__ import annotations


def identity_flat(n: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mul_flat(a: tuple[int, ...], b: tuple[int, ...], n: int, p: int) -> tuple[int, ...]:
    out = []
    for i in range(n):
        arow = a[i * n : (i + 1) * n]
        for j in range(n):
            acc = 0
            for l in range(n):
                acc += arow[l] * b[l * n + j]
            out.append(acc % p)
    return tuple(out)


def pow_flat(a: tuple[int, ...], k: int, n: int, p: int) -> tuple[int, ...]:
    result = identity_flat(n)
    base = a
    while k:
        if k & 1:
            result = mul_flat(result, base, n, p)
        base = mul_flat(base, base, n, p)
        k >>= 1
    return result
