"""Dense univariate polynomial helpers.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is the empty tuple).  The helpers are
coefficient-agnostic: anything supporting ``+ - * /`` and comparison with 0
works (``gmpy2.mpq`` in the scalar layer, field scalars in the series layer).
"""
from __future__ import annotations

from typing import Sequence


def trim(p: Sequence) -> tuple:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def degree(p: Sequence) -> int:
    return len(p) - 1


def add(p: Sequence, r: Sequence) -> tuple:
    if len(p) < len(r):
        p, r = r, p
    out = list(p)
    for i, c in enumerate(r):
        out[i] = out[i] + c
    return trim(out)


def sub(p: Sequence, r: Sequence) -> tuple:
    out = list(p) + [0] * max(0, len(r) - len(p))
    for i, c in enumerate(r):
        out[i] = out[i] - c
    return trim(out)


def neg(p: Sequence) -> tuple:
    return tuple(-c for c in p)


def scale(p: Sequence, c) -> tuple:
    if not c:
        return ()
    return trim([a * c for a in p])


def mul(p: Sequence, r: Sequence) -> tuple:
    if not p or not r:
        return ()
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(r):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def shift(p: Sequence, k: int) -> tuple:
    """Multiply by t**k (k >= 0)."""
    if not p:
        return ()
    return (0,) * k + tuple(p)


def divmod_(p: Sequence, r: Sequence) -> tuple[tuple, tuple]:
    if not r:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dr = len(r) - 1
    lead = r[-1]
    if len(rem) <= dr:
        return (), trim(rem)
    quo = [0] * (len(rem) - dr)
    for k in range(len(rem) - 1 - dr, -1, -1):
        c = rem[k + dr]
        if not c:
            continue
        c = c / lead
        quo[k] = c
        for i, b in enumerate(r):
            rem[k + i] = rem[k + i] - c * b
    return trim(quo), trim(rem[:dr])


def monic(p: Sequence) -> tuple:
    if not p:
        return ()
    lead = p[-1]
    if lead == 1:
        return tuple(p)
    return tuple(c / lead for c in p)


def gcd(p: Sequence, r: Sequence) -> tuple:
    """Monic gcd by the Euclidean algorithm."""
    a, b = trim(p), trim(r)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def xgcd(p: Sequence, r: Sequence) -> tuple[tuple, tuple, tuple]:
    """Return (g, s, t) with s*p + t*r = g, g monic."""
    r0, r1 = trim(p), trim(r)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return (), (), ()
    lead = r0[-1]
    return monic(r0), scale(s0, 1 / lead), scale(t0, 1 / lead)


def evaluate(p: Sequence, x, one=1):
    acc = 0 * one
    for c in reversed(p):
        acc = acc * x + c
    return acc


def power(p: Sequence, k: int) -> tuple:
    out: tuple = (1,)
    base = tuple(p)
    while k:
        if k & 1:
            out = mul(out, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return out


def valuation(p: Sequence) -> int:
    """Index of the lowest nonzero coefficient (p must be nonzero)."""
    for i, c in enumerate(p):
        if c:
            return i
    raise ValueError("valuation of the zero polynomial")
