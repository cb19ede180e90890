"""Mean families and their exact asymptotic expansions.

Every mean M handled here is symmetric and homogeneous, so its behaviour for
large ``x`` is captured by a single coefficient sequence:

    M(x - t, x + t) ~ sum_n  a_n * t**n * x**(1 - n),   t > 0 fixed, x -> oo,

equivalently ``M = x * A(u)`` with ``u = t/x`` and ``A`` a formal power
series with constant term 1.  All-powers indexing is used throughout: a mean
whose expansion contains only even powers simply has zero odd coefficients.
The ``t > 0`` convention turns every ``|t|**k`` of the mixed-parity families
into ``t**k``; symmetry recovers ``t < 0``.

Families:

* power means ``B_p``,
* ``L_alpha`` and ``S_alpha``, the one-parameter interpolations generated by
  ``u(x) = cosh(alpha*x)`` and ``1/cosh(alpha*x)`` (covering H, G, L and the
  Seiffert means P, T),
* the difference-quotient means M1..M5 and the two-parameter family
  ``M_{alpha,r}``, all of the shape ``|b - a| / D(|ln(b/a)|)``,
* means generated by an odd function with prescribed Taylor coefficients,
* the order-by-order fixed point of the resultant mean-map (the "stable
  mean" series for a prescribed t^2 coefficient).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .rationals import ONE, ZERO, Rational, binomial
from .series import (
    integrate_formal,
    series_add,
    series_compose,
    series_power,
    series_scale,
)

# ---------------------------------------------------------------------------
# Mean specifications


@dataclass(frozen=True)
class PowerMean:
    p: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))


@dataclass(frozen=True)
class LAlpha:
    alpha: Rational

    def __post_init__(self) -> None:
        alpha = Fraction(self.alpha)
        if abs(alpha) > 1:
            raise ValueError("LAlpha requires |alpha| <= 1")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class SAlpha:
    alpha: Rational

    def __post_init__(self) -> None:
        alpha = Fraction(self.alpha)
        if abs(alpha) > 1:
            raise ValueError("SAlpha requires |alpha| <= 1")
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class ClassicMean:
    """One of the difference-quotient means M1..M5."""

    index: int

    def __post_init__(self) -> None:
        if self.index not in (1, 2, 3, 4, 5):
            raise ValueError("classic mean index must be 1..5")


@dataclass(frozen=True)
class MAlphaR:
    alpha: Rational
    r: Rational

    def __post_init__(self) -> None:
        alpha, r = Fraction(self.alpha), Fraction(self.r)
        if r <= 0:
            raise ValueError("MAlphaR requires r > 0")
        if abs(alpha) > 1:
            raise ValueError("MAlphaR requires |alpha| <= 1")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "r", r)


@dataclass(frozen=True)
class MuGenerated:
    """Mean |b-a| / mu(|ln(b/a)|) for the odd function
    mu(y) = sum_n c_n y**(2n+1) with c_0 = 1."""

    odd_coeffs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.odd_coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("mu-generated mean requires leading coefficient 1")
        object.__setattr__(self, "odd_coeffs", coeffs)


MeanSpec = Union[PowerMean, LAlpha, SAlpha, ClassicMean, MAlphaR, MuGenerated]

M1 = ClassicMean(1)
M2 = ClassicMean(2)
M3 = ClassicMean(3)
M4 = ClassicMean(4)
M5 = ClassicMean(5)

#: Named classics resolved to their parametric forms.
ALIASES: dict[str, MeanSpec] = {
    "A": PowerMean(Fraction(1)),
    "G": PowerMean(Fraction(0)),
    "H": PowerMean(Fraction(-1)),
    "L": SAlpha(Fraction(0)),
    "P": SAlpha(Fraction(1, 2)),
    "T": SAlpha(Fraction(1)),
    "HZ1/4": LAlpha(Fraction(1, 4)),
}


# ---------------------------------------------------------------------------
# Expansions


@dataclass(frozen=True)
class MeanExpansion:
    """Coefficients a_0..a_N of M(x-t, x+t) ~ sum a_n t**n x**(1-n), t > 0."""

    coeffs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("a mean expansion must start with coefficient 1")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    @property
    def parity(self) -> str:
        return "even-only" if self.is_even else "mixed"

    def coefficient(self, n: int) -> Rational:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else ZERO

    def truncated(self, order: int) -> "MeanExpansion":
        if order > self.order:
            raise ValueError("cannot extend a truncated expansion")
        return MeanExpansion(self.coeffs[: order + 1])

    def partial_sum(self, x: float, t: float) -> float:
        """Float value of the truncated series at (x - t, x + t)."""
        u = t / x
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * u + float(c)
        return x * acc

    def __iter__(self):
        return iter(self.coeffs)


def _spread_even(even: Sequence[Rational], order: int) -> tuple[Rational, ...]:
    out = [ZERO] * (order + 1)
    for n, c in enumerate(even):
        if 2 * n <= order:
            out[2 * n] = c
    return tuple(out)


def expand_power_mean(p: Rational, order: int) -> MeanExpansion:
    """Expansion of the power mean B_p; B_0 is the geometric mean.

    The engine route: average the binomial series of (1 -/+ u)**p and raise
    to 1/p, all over Q.  First coefficients: a_2 = (p-1)/2 and
    a_4 = (p-1)(3+p-2p^2)/24.
    """
    p = Fraction(p)
    if p == 0:
        inner = (ONE, ZERO, -ONE)  # 1 - u^2
        return MeanExpansion(series_power(inner, Fraction(1, 2), order))
    minus = series_power((ONE, -ONE), p, order)
    plus = series_power((ONE, ONE), p, order)
    avg = series_scale(series_add(minus, plus, order), Fraction(1, 2), order)
    return MeanExpansion(series_power(avg, 1 / p, order))


def expand_l_alpha(alpha: Rational, order: int) -> MeanExpansion:
    """Expansion of L_alpha, the family generated by u(x) = cosh(alpha*x).

    Even-only:
        a_{2n} = 2*alpha * sum_k C(alpha, n-k) (-1)**(n-k)
                 * P[k, -1, (C(2*alpha, 2i+1))_i],
    so a_2 = -(2*alpha^2 + 1)/3.  alpha = 0 degenerates to the logarithmic
    mean and is delegated to the odd-generator route.
    """
    alpha = Fraction(alpha)
    if abs(alpha) > 1:
        raise ValueError("LAlpha requires |alpha| <= 1")
    if alpha == 0:
        return expand_mu_generated((ONE,), order)
    half = order // 2
    odd_binoms = tuple(binomial(2 * alpha, 2 * i + 1) for i in range(half + 1))
    recip = series_power(odd_binoms, -1, half)
    even = []
    for n in range(half + 1):
        acc = ZERO
        for k in range(n + 1):
            sign = -ONE if (n - k) % 2 else ONE
            acc += binomial(alpha, n - k) * sign * recip[k]
        even.append(2 * alpha * acc)
    return MeanExpansion(_spread_even(even, order))


def expand_s_alpha(alpha: Rational, order: int) -> MeanExpansion:
    """Expansion of S_alpha, the family generated by u(x) = 1/cosh(alpha*x).

    Even-only, through two auxiliary sequences:
        C_n = sum_k C(alpha, 2k+1) * P[n-k, -1, (C(alpha, 2i))_i],
        D_n = sum_m (-1)**m/(2m+1) * P[n-m, 2m+1, (C_i)_i],
        a_{2n} = alpha * P[n, -1, (D_i)_i],
    so a_2 = (2*alpha^2 - 1)/3.  alpha = 0 is the logarithmic mean.
    """
    alpha = Fraction(alpha)
    if abs(alpha) > 1:
        raise ValueError("SAlpha requires |alpha| <= 1")
    if alpha == 0:
        return expand_mu_generated((ONE,), order)
    half = order // 2
    even_binoms = tuple(binomial(alpha, 2 * i) for i in range(half + 1))
    recip_even = series_power(even_binoms, -1, half)
    c_seq = []
    for n in range(half + 1):
        acc = ZERO
        for k in range(n + 1):
            acc += binomial(alpha, 2 * k + 1) * recip_even[n - k]
        c_seq.append(acc)
    c_powers = {m: series_power(c_seq, 2 * m + 1, half) for m in range(half + 1)}
    d_seq = []
    for n in range(half + 1):
        acc = ZERO
        for m in range(n + 1):
            term = c_powers[m][n - m] / (2 * m + 1)
            acc += -term if m % 2 else term
        d_seq.append(acc)
    final = series_power(d_seq, -1, half)
    return MeanExpansion(_spread_even([alpha * v for v in final], order))


def expand_mu_generated(odd_coeffs: Sequence[Rational], order: int) -> MeanExpansion:
    """Expansion of |b-a| / mu(|ln(b/a)|) for an odd generator
    mu(y) = sum c_n y**(2n+1), c_0 = 1.

    Even-only:  a_{2m} = P[m, -1, (E_i)_i]  with
        E_m = sum_n c_n 4**n P[m-n, 2n+1, (1/(2i+1))_i].
    """
    c = tuple(Fraction(x) for x in odd_coeffs)
    if not c or c[0] != 1:
        raise ValueError("odd generator requires constant coefficient 1")
    half = order // 2
    odd_recip = tuple(Fraction(1, 2 * i + 1) for i in range(half + 1))
    powers = {n: series_power(odd_recip, 2 * n + 1, half) for n in range(half + 1)}
    e_seq = []
    for m in range(half + 1):
        acc = ZERO
        for n in range(min(m, len(c) - 1) + 1):
            if c[n] != 0:
                acc += c[n] * Fraction(4**n) * powers[n][m - n]
        e_seq.append(acc)
    return MeanExpansion(_spread_even(series_power(e_seq, -1, half), order))


def log_ratio_series(order: int) -> tuple[Rational, ...]:
    """ln((x+t)/(x-t)) as a series in u = t/x: 2*sum u**(2k+1)/(2k+1)."""
    return tuple(
        Fraction(2, n) if n % 2 else ZERO for n in range(order + 1)
    )


def _denominator_derivative(spec: ClassicMean | MAlphaR) -> tuple[tuple[Rational, ...], Rational]:
    """(base, exponent) with D'(y) = base(y)**exponent for the
    difference-quotient means; D is the denominator applied to |ln(b/a)|."""
    half = Fraction(1, 2)
    if isinstance(spec, ClassicMean):
        return {
            1: ((ONE, ONE), Fraction(-1)),           # ln(1+y)
            2: ((ONE, ZERO, half), Fraction(-1)),    # sqrt2*arctan(y/sqrt2)
            3: ((ONE, ONE, half), Fraction(-1)),     # 2*arctan(1+y) - pi/2
            4: ((ONE, ZERO, half), -half),           # sqrt2*arcsinh(y/sqrt2)
            5: ((ONE, ONE, half), -half),            # sqrt2*(arcsinh(1+y) - arcsinh 1)
        }[spec.index]
    # ((1 + r*y)**((r+alpha)/r) - 1)/(r+alpha); the limit alpha -> -r is the
    # logarithmic form and needs no special casing at the series level.
    return (ONE, spec.r), spec.alpha / spec.r


def denominator_series(spec: MeanSpec, order: int) -> tuple[Rational, ...]:
    """Series D(y) with M(a, b) = |b - a| / D(|ln(b/a)|); zero constant term.

    Defined for every catalog family except power means, which are not of
    difference-quotient shape.
    """
    if isinstance(spec, PowerMean):
        raise ValueError("power means have no log-ratio denominator form")
    if isinstance(spec, (ClassicMean, MAlphaR)):
        base, expo = _denominator_derivative(spec)
        return integrate_formal(series_power(base, expo, order - 1), order)
    if isinstance(spec, MuGenerated):
        c = spec.odd_coeffs
    elif isinstance(spec, LAlpha):
        # mu(y) = sinh(alpha*y)/alpha
        a2 = spec.alpha * spec.alpha
        c, power = [], ONE
        for n in range(order // 2 + 1):
            c.append(power / math.factorial(2 * n + 1))
            power *= a2
    elif isinstance(spec, SAlpha):
        # mu'(y) = 1/cosh(alpha*y)
        a2 = spec.alpha * spec.alpha
        half = order // 2
        cosh_even = []
        power = ONE
        for n in range(half + 1):
            cosh_even.append(power / math.factorial(2 * n))
            power *= a2
        sech = series_power(cosh_even, -1, half)
        c = [sech[n] / (2 * n + 1) for n in range(half + 1)]
    else:  # pragma: no cover
        raise TypeError(f"unknown mean spec {spec!r}")
    out = [ZERO] * (order + 1)
    for n, cn in enumerate(c):
        if 2 * n + 1 <= order:
            out[2 * n + 1] = cn
    return tuple(out)


def expand_quotient_mean(spec: MeanSpec, order: int) -> MeanExpansion:
    """Expansion of any difference-quotient mean (M1..M5, M_{alpha,r}, and
    equally the L/S families) by composing its denominator series with the
    log-ratio series and inverting:

        M(x-t, x+t) = 2t / D(Lambda(u)),   Lambda = ln((x+t)/(x-t)).

    D(Lambda) has valuation 1 with linear coefficient 2, so the quotient is
    x * (power series with constant term 1); coefficients stay in Q because
    every sqrt(2) in the closed forms cancels against the scaled argument.
    For L_alpha and S_alpha this is an independent route that must agree
    with the dedicated binomial formulas.
    """
    deep = order + 1
    lam = log_ratio_series(deep)
    den = series_compose(denominator_series(spec, deep), lam, deep)
    assert den[0] == 0 and den[1] == 2
    shifted = tuple(den[j + 1] / 2 for j in range(order + 1))
    return MeanExpansion(series_power(shifted, -1, order))


def expand_stable(a2: Rational, order: int) -> MeanExpansion:
    """Even-only series fixed under the resultant mean-map R(M, M, M) = M.

    At each even order the resultant coefficient is affine in the unknown
    top coefficient, so the fixed point is solved exactly one order at a
    time.  First solved terms:
        a_4 = a_2 (1 + a_2)(1 - 4 a_2)/6,
        a_6 = a_2 (1 + a_2)(6 - 31 a_2 + 36 a_2^2 + 64 a_2^3)/90.
    """
    from .resultant import resultant_coeffs  # runtime import; engine layers upward

    a2 = Fraction(a2)
    coeffs = [ONE, ZERO] + [ZERO] * max(order - 1, 0)
    if order >= 2:
        coeffs[2] = a2
    for idx in range(4, order + 1, 2):
        window = coeffs[: idx + 1]
        window[idx] = ZERO
        base = resultant_coeffs(window, window, window, idx)[idx]
        window[idx] = ONE
        slope = resultant_coeffs(window, window, window, idx)[idx] - base
        if slope == 1:
            raise ArithmeticError(f"fixed point underdetermined at order {idx}")
        coeffs[idx] = base / (1 - slope)
    return MeanExpansion(tuple(coeffs))


def expand_mean(spec: MeanSpec, order: int) -> MeanExpansion:
    """Expansion of any catalog mean to the given truncation order."""
    if isinstance(spec, PowerMean):
        return expand_power_mean(spec.p, order)
    if isinstance(spec, LAlpha):
        return expand_l_alpha(spec.alpha, order)
    if isinstance(spec, SAlpha):
        return expand_s_alpha(spec.alpha, order)
    if isinstance(spec, (ClassicMean, MAlphaR)):
        return expand_quotient_mean(spec, order)
    if isinstance(spec, MuGenerated):
        return expand_mu_generated(spec.odd_coeffs, order)
    raise TypeError(f"unknown mean spec {spec!r}")


def describe_spec(spec: MeanSpec) -> str:
    if isinstance(spec, PowerMean):
        return f"B_{spec.p}"
    if isinstance(spec, LAlpha):
        return f"L_{spec.alpha}"
    if isinstance(spec, SAlpha):
        return f"S_{spec.alpha}"
    if isinstance(spec, ClassicMean):
        return f"M{spec.index}"
    if isinstance(spec, MAlphaR):
        return f"M_({spec.alpha},{spec.r})"
    return f"mu-generated({len(spec.odd_coeffs)} coeffs)"
