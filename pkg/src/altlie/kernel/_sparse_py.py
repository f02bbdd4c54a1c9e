"""Pure-Python sparse polynomial kernels.

A polynomial body is a ``dict`` mapping a packed monomial (one ``WIDTH``-bit
field per registry variable) to an integer numerator.  The common denominator
is owned by the caller, so every routine here works over the integers.
"""
from math import gcd

WIDTH = 16
FIELD_MASK = (1 << WIDTH) - 1


def add_scaled(a, sa, b, sb):
    """Return ``sa*a + sb*b`` with zero terms dropped."""
    if sa == 1:
        out = dict(a)
    else:
        out = {k: c * sa for k, c in a.items()}
    get = out.get
    for k, c in b.items():
        v = get(k, 0) + c * sb
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def partial_degree(key, offsets):
    d = 0
    for off in offsets:
        d += (key >> off) & FIELD_MASK
    return d


def mul_truncated(a, b, offsets, cap):
    """Product keeping only monomials whose degree in ``offsets`` is <= cap."""
    da = [(partial_degree(k, offsets), k, c) for k, c in a.items()]
    db = sorted((partial_degree(k, offsets), k, c) for k, c in b.items())
    out = {}
    get = out.get
    for dk, ka, ca in da:
        room = cap - dk
        if room < 0:
            continue
        for dl, kb, cb in db:
            if dl > room:
                break
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def content(a):
    return gcd(*a.values()) if a else 0


def scale_div(a, num, den):
    """Return ``a*num/den``; the caller guarantees exact divisibility."""
    return {k: c * num // den for k, c in a.items()}
