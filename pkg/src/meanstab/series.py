"""Truncated formal power series over an exact field.

A series is a plain sequence of coefficients ``(a_0, ..., a_N)`` for
``sum a_n u**n``; the truncation order ``N`` is an explicit argument of every
operation, and nothing past index ``N`` is ever read or produced.

The workhorse is :func:`series_power`, the coefficient recursion for an
arbitrary real power of a series with nonzero constant term:

    P[0] = a_0**r,
    P[n] = (1/(n*a_0)) * sum_{k=1..n} (k*(1+r) - n) * a_k * P[n-k].

With integer exponents any nonzero constant term is allowed; a fractional
exponent requires constant term 1 so that every coefficient stays in the
field.  All functions are duck-typed over the scalar: exact rationals in
normal use, and the Laurent-window scalars of :mod:`meanstab.laurent` when a
computation needs an exact one-sided limit in a parameter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Coeffs = Sequence


def _zero_of(a: Coeffs):
    return a[0] * 0 if len(a) else Fraction(0)


def _fit(a: Coeffs, order: int, zero) -> list:
    out = list(a[: order + 1])
    out.extend([zero] * (order + 1 - len(out)))
    return out


def series_add(a: Coeffs, b: Coeffs, order: int) -> tuple:
    zero = _zero_of(a) if len(a) else _zero_of(b)
    fa, fb = _fit(a, order, zero), _fit(b, order, zero)
    return tuple(x + y for x, y in zip(fa, fb))


def series_sub(a: Coeffs, b: Coeffs, order: int) -> tuple:
    zero = _zero_of(a) if len(a) else _zero_of(b)
    fa, fb = _fit(a, order, zero), _fit(b, order, zero)
    return tuple(x - y for x, y in zip(fa, fb))


def series_scale(a: Coeffs, factor, order: int) -> tuple:
    return tuple(c * factor for c in _fit(a, order, _zero_of(a)))


def series_mul(a: Coeffs, b: Coeffs, order: int) -> tuple:
    """Cauchy product truncated at the given order."""
    zero = _zero_of(a) if len(a) else _zero_of(b)
    fa, fb = _fit(a, order, zero), _fit(b, order, zero)
    out = [zero] * (order + 1)
    for i, x in enumerate(fa):
        if x == 0:
            continue
        for j in range(order + 1 - i):
            y = fb[j]
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return tuple(out)


def series_int_pow(a: Coeffs, n: int, order: int) -> tuple:
    """a**n for a nonnegative integer n; tolerates a zero constant term."""
    if n < 0:
        raise ValueError("series_int_pow requires a nonnegative exponent")
    zero = _zero_of(a)
    one = a[0] ** 0 if len(a) else Fraction(1)
    out: tuple = tuple([one] + [zero] * order)
    base = tuple(_fit(a, order, zero))
    for _ in range(n):
        out = series_mul(out, base, order)
    return out


def _is_integer(r) -> bool:
    return isinstance(r, int) or (isinstance(r, Fraction) and r.denominator == 1)


def series_power(a: Coeffs, r, order: int) -> tuple:
    """Coefficients of ``a**r`` for a rational exponent r.

    Integer r admits any nonzero constant term; fractional r requires
    constant term exactly 1 (otherwise the leading coefficient would leave
    the field).
    """
    if not len(a) or a[0] == 0:
        raise ValueError("zero constant term")
    a0 = a[0]
    if _is_integer(r):
        r = int(r)
        head = a0 ** r
    else:
        if a0 != 1:
            raise ValueError("irrational leading power")
        r = Fraction(r)
        head = a0
    zero = _zero_of(a)
    fa = _fit(a, order, zero)
    out = [zero] * (order + 1)
    out[0] = head
    for n in range(1, order + 1):
        acc = zero
        for k in range(1, n + 1):
            if fa[k] == 0:
                continue
            weight = k * (1 + r) - n
            if weight != 0:
                acc = acc + weight * fa[k] * out[n - k]
        out[n] = acc / (n * a0)
    return tuple(out)


def series_compose(outer: Coeffs, inner: Coeffs, order: int) -> tuple:
    """Taylor coefficients of outer(inner(u)); inner must have zero constant
    term, so the composition is a finite Horner accumulation."""
    zero = _zero_of(inner) if len(inner) else _zero_of(outer)
    if len(inner) and inner[0] != 0:
        raise ValueError("composition requires positive valuation")
    fi = tuple(_fit(inner, order, zero))
    fo = _fit(outer, order, zero)
    acc: tuple = tuple([fo[order]] + [zero] * order)
    for k in range(order - 1, -1, -1):
        acc = series_mul(acc, fi, order)
        acc = (acc[0] + fo[k],) + acc[1:]
    return acc


def integrate_formal(a: Coeffs, order: int) -> tuple:
    """Term-by-term antiderivative with zero constant term."""
    zero = _zero_of(a)
    fa = _fit(a, order, zero)
    return tuple([zero] + [fa[n - 1] / n for n in range(1, order + 1)])


def differentiate_formal(a: Coeffs, order: int) -> tuple:
    zero = _zero_of(a)
    fa = _fit(a, order + 1, zero)
    return tuple(fa[n + 1] * (n + 1) for n in range(order + 1))
