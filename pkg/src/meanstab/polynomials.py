"""Exact univariate polynomials over Q with certified real-root isolation.

Roots are reported in the strongest form available:

* rational roots exactly (candidate search plus exact verification),
* irrational roots of quadratic factors as surds ``(a + sign*sqrt(b))/c``,
* everything else as an isolating interval with a sign change, narrowed to a
  requested width.

Isolation runs on the square-free part and uses Descartes' rule of signs on
Moebius-transformed coordinates with exact sign evaluation, so every interval
is certified to contain exactly one simple real root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .rationals import ONE, ZERO, Rational

DEFAULT_ISOLATION_WIDTH = Fraction(1, 10**12)

_TRIAL_DIVISION_BOUND = 10**5
_DIVISOR_CAP = 1 << 16


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``x**i``.

    The zero polynomial is the empty tuple; otherwise the leading coefficient
    is nonzero.  Instances are immutable and safe to share.
    """

    coeffs: tuple[Rational, ...]

    def __post_init__(self) -> None:
        trimmed = list(self.coeffs)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in trimmed))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational | int]) -> "UniPoly":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def constant(cls, c: Rational | int) -> "UniPoly":
        return cls((Fraction(c),))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Rational:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> Rational:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __call__(self, x: Rational | int) -> Rational:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(n))
        )

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            tuple(self.coefficient(i) - other.coefficient(i) for i in range(n))
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "UniPoly | Rational | int") -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        q = [ZERO] * max(len(rem) - len(div) + 1, 0)
        inv_lead = 1 / div[-1]
        for k in range(len(rem) - len(div), -1, -1):
            factor = rem[k + len(div) - 1] * inv_lead
            q[k] = factor
            if factor != 0:
                for j, d in enumerate(div):
                    rem[k + j] -= factor * d
        return UniPoly(tuple(q)), UniPoly(tuple(rem[: len(div) - 1]))

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self * (1 / self.leading)

    def compose_linear(self, slope: Rational, intercept: Rational) -> "UniPoly":
        """Return p(slope*x + intercept)."""
        lin = UniPoly((Fraction(intercept), Fraction(slope)))
        acc = UniPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly.constant(c)
        return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def squarefree_part(p: UniPoly) -> UniPoly:
    """p divided by gcd(p, p'): same real roots, all simple."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    q, r = divmod(p, g)
    assert r.is_zero
    return q.monic()


def lagrange_interpolate(
    points: Sequence[tuple[Rational | int, Rational | int]],
) -> UniPoly:
    """Unique polynomial of degree < len(points) through the given points.

    Newton's divided differences keep the arithmetic exact; duplicate
    abscissae are rejected.
    """
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation points")
    n = len(points)
    coef = ys[:]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = UniPoly.zero()
    for i in range(n - 1, -1, -1):
        poly = poly * UniPoly((-xs[i], ONE)) + UniPoly.constant(coef[i])
    return poly


# ---------------------------------------------------------------------------
# Root descriptions


@dataclass(frozen=True)
class RationalRoot:
    value: Rational

    kind = "exact-rational"

    def approx(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class QuadraticSurdRoot:
    """The number ``(add + sign*sqrt(radicand))/div``.

    Canonical form: ``radicand`` is a positive non-square integer with small
    square factors removed, ``div`` is positive.
    """

    add: Rational
    sign: int
    radicand: Rational
    div: Rational

    kind = "quadratic-surd"

    def minimal_polynomial(self) -> UniPoly:
        a, b, c = self.add, self.radicand, self.div
        return UniPoly((a * a - b, -2 * a * c, c * c))

    def sqrt_bounds(self, width: Fraction = Fraction(1, 10**18)) -> tuple[Rational, Rational]:
        """Rational enclosure of sqrt(radicand) of at most the given width."""
        n = self.radicand
        lo = Fraction(math.isqrt(n.numerator * n.denominator), n.denominator)
        hi = lo + 1
        while hi - lo > width:
            mid = (lo + hi) / 2
            if mid * mid <= n:
                lo = mid
            else:
                hi = mid
        return lo, hi

    def bounds(self, width: Fraction = Fraction(1, 10**18)) -> tuple[Rational, Rational]:
        slo, shi = self.sqrt_bounds(width)
        if self.sign > 0:
            lo, hi = self.add + slo, self.add + shi
        else:
            lo, hi = self.add - shi, self.add - slo
        lo, hi = lo / self.div, hi / self.div
        return (lo, hi) if lo <= hi else (hi, lo)

    def approx(self) -> float:
        return float(self.add + self.sign * math.sqrt(self.radicand)) / float(self.div)


@dataclass(frozen=True)
class IntervalRoot:
    """Isolating interval (low, high) for one simple root of ``polynomial``."""

    low: Rational
    high: Rational
    polynomial: UniPoly

    kind = "isolated-interval"

    def approx(self) -> float:
        return float(self.low + self.high) / 2

    def refined(self, width: Fraction) -> "IntervalRoot":
        lo, hi = self.low, self.high
        p = self.polynomial
        sign_lo = 1 if p(lo) > 0 else -1
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = p(mid)
            if v == 0:
                # Simple root hit exactly; shrink to a tiny straddling interval.
                eps = width / 4
                return IntervalRoot(mid - eps, mid + eps, p)
            if (1 if v > 0 else -1) == sign_lo:
                lo = mid
            else:
                hi = mid
        return IntervalRoot(lo, hi, p)


Root = Union[RationalRoot, QuadraticSurdRoot, IntervalRoot]


def _extract_square(n: int) -> tuple[int, int]:
    """Write n = f*f*core with the small square factors pulled into f."""
    root = math.isqrt(n)
    if root * root == n:
        return root, 1
    f, core = 1, n
    d = 2
    while d <= 10_000 and d * d <= core:
        while core % (d * d) == 0:
            core //= d * d
            f *= d
        d += 1
    return f, core


def make_surd(add: Rational, sign: int, radicand: Rational, div: Rational) -> QuadraticSurdRoot:
    """Canonicalize ``(add + sign*sqrt(radicand))/div``; radicand must not be a
    perfect rational square."""
    if radicand <= 0:
        raise ValueError("radicand must be positive")
    add, radicand, div = Fraction(add), Fraction(radicand), Fraction(div)
    # Integerize the radicand: sqrt(n/d) = sqrt(n*d)/d.
    d = radicand.denominator
    radicand = Fraction(radicand.numerator * d)
    add, div = add * d, div * d
    f, core = _extract_square(int(radicand))
    if core == 1:
        raise ValueError("radicand is a perfect square; the value is rational")
    add, div, radicand = add / f, div / f, Fraction(core)
    if div < 0:
        add, sign, div = -add, -sign, -div
    return QuadraticSurdRoot(add, sign, radicand, div)


def _is_square(q: Fraction) -> bool:
    if q < 0:
        return False
    return (
        math.isqrt(q.numerator) ** 2 == q.numerator
        and math.isqrt(q.denominator) ** 2 == q.denominator
    )


def _sqrt_exact(q: Fraction) -> Fraction:
    return Fraction(math.isqrt(q.numerator), math.isqrt(q.denominator))


# ---------------------------------------------------------------------------
# Descartes / bisection isolation


def sign_variations(coeffs: Sequence[Rational]) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _descartes_count(p: UniPoly, a: Rational, b: Rational) -> int:
    """Sign-variation bound for the number of roots of p in the open (a, b).

    Uses the Moebius substitution x = (a + b*y)/(1 + y), which maps
    y in (0, inf) onto (a, b); Descartes' rule applies to the transformed
    coefficients.
    """
    n = p.degree
    lin_num = UniPoly((a, b))  # a + b*y
    lin_den = UniPoly((ONE, ONE))  # 1 + y
    acc = UniPoly.zero()
    num_pow = UniPoly.constant(1)
    den_pows = [UniPoly.constant(1)]
    for _ in range(n):
        den_pows.append(den_pows[-1] * lin_den)
    for i, c in enumerate(p.coeffs):
        if c != 0:
            acc = acc + (num_pow * den_pows[n - i]) * c
        if i < n:
            num_pow = num_pow * lin_num
    return sign_variations(acc.coeffs)


def cauchy_root_bound(p: UniPoly) -> Rational:
    lead = abs(p.leading)
    return 1 + max(abs(c) for c in p.coeffs) / lead


def _isolate_intervals(g: UniPoly) -> list[tuple[Rational, Rational]]:
    """Isolating intervals for all real roots of square-free g with no
    rational roots (so g never vanishes at a rational splitting point)."""
    bound = cauchy_root_bound(g)
    stack = [(-bound, bound)]
    found: list[tuple[Rational, Rational]] = []
    while stack:
        a, b = stack.pop()
        v = _descartes_count(g, a, b)
        if v == 0:
            continue
        if v == 1:
            found.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    found.sort()
    return found


def _refine(g: UniPoly, a: Rational, b: Rational, width: Fraction) -> tuple[Rational, Rational]:
    sign_a = 1 if g(a) > 0 else -1
    while b - a > width:
        mid = (a + b) / 2
        v = g(mid)
        assert v != 0, "rational root missed by candidate search"
        if (1 if v > 0 else -1) == sign_a:
            a = mid
        else:
            b = mid
    return a, b


# ---------------------------------------------------------------------------
# Rational root search


def _factorize(n: int) -> dict[int, int] | None:
    """Trial-division factorization; None when a large cofactor resists."""
    n = abs(n)
    factors: dict[int, int] = {}
    if n == 0:
        return factors
    d = 2
    while d <= _TRIAL_DIVISION_BOUND and d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n > _TRIAL_DIVISION_BOUND * _TRIAL_DIVISION_BOUND:
            # n might be composite with unknown factors; divisor list would be
            # incomplete.  Callers fall back to interval recognition.
            return None
        factors[n] = factors.get(n, 0) + 1
    return factors


def _divisors(n: int) -> list[int] | None:
    factors = _factorize(n)
    if factors is None:
        return None
    divs = [1]
    for prime, mult in factors.items():
        divs = [d * prime**e for d in divs for e in range(mult + 1)]
        if len(divs) > _DIVISOR_CAP:
            return None
    return divs


def _rational_roots(g: UniPoly) -> list[Rational]:
    """All rational roots of g (square-free), found by the rational-root
    candidate test and verified by exact evaluation."""
    scale = math.lcm(*(c.denominator for c in g.coeffs))
    ints = [int(c * scale) for c in g.coeffs]
    roots: list[Rational] = []
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.append(ZERO)
        ints = ints[shift:]
    if len(ints) <= 1:
        return roots
    num_divs = _divisors(ints[0])
    den_divs = _divisors(ints[-1])
    if num_divs is None or den_divs is None:
        return roots  # interval recognition will pick up what this misses
    seen = set()
    for p in num_divs:
        for q in den_divs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in seen:
                    seen.add(cand)
                    if g(cand) == 0:
                        roots.append(cand)
    return roots


def simplest_between(lo: Rational, hi: Rational) -> Rational:
    """Rational with the smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo == hi:
        return lo
    if lo <= 0 <= hi:
        return ZERO
    if hi < 0:
        return -simplest_between(-hi, -lo)
    floor_lo = lo.numerator // lo.denominator
    ceil_lo = -((-lo.numerator) // lo.denominator)
    if ceil_lo <= hi:
        return Fraction(ceil_lo)
    frac_part = simplest_between(1 / (hi - floor_lo), 1 / (lo - floor_lo))
    return floor_lo + 1 / frac_part


def _recognize_rational(g: UniPoly, a: Rational, b: Rational) -> Rational | None:
    """Check whether the isolated root in (a, b) is in fact rational.

    Safety net for the rare case where the divisor enumeration bailed out on
    an unfactorable coefficient; the candidate is verified exactly.
    """
    for _ in range(4):
        cand = simplest_between(a, b)
        if g(cand) == 0:
            return cand
        if b - a <= Fraction(1, 10**30):
            return None
        a, b = _refine(g, a, b, (b - a) / Fraction(10**6))
    return None


def _pair_quadratic_factors(
    g: UniPoly, intervals: list[tuple[Rational, Rational]]
) -> tuple[list[QuadraticSurdRoot], list[tuple[Rational, Rational]]]:
    """Recognize pairs of isolated roots that are conjugate over Q.

    For a conjugate pair the trace and product are rational; candidates are
    reconstructed from tight interval bounds and verified by exact division
    of g by x^2 - T*x + P, so every reported surd is certified.
    """
    surds: list[QuadraticSurdRoot] = []
    claimed: set[int] = set()
    n = len(intervals)
    for i in range(n):
        if i in claimed:
            continue
        for j in range(i + 1, n):
            if j in claimed:
                continue
            (alo, ahi), (blo, bhi) = intervals[i], intervals[j]
            trace = simplest_between(alo + blo, ahi + bhi)
            prods = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
            prod = simplest_between(min(prods), max(prods))
            quad = UniPoly((prod, -trace, ONE))
            if (g % quad).is_zero:
                disc = trace * trace - 4 * prod
                if disc > 0 and not _is_square(disc):
                    surds.append(make_surd(trace, -1, disc, Fraction(2)))
                    surds.append(make_surd(trace, +1, disc, Fraction(2)))
                    claimed.update((i, j))
                    break
    leftovers = [iv for k, iv in enumerate(intervals) if k not in claimed]
    return surds, leftovers


def isolate_real_roots(
    f: UniPoly, width: Fraction = DEFAULT_ISOLATION_WIDTH
) -> list[Root]:
    """Describe every distinct real root of f.

    Rational roots come back exactly, roots of the residual quadratic factor
    as surds, higher-degree irrational roots as sign-change intervals of at
    most the requested width.  Results are sorted by value.
    """
    if f.is_zero:
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return []
    g = squarefree_part(f)
    roots: list[Root] = []
    for r in _rational_roots(g):
        assert f(r) == 0
        roots.append(RationalRoot(r))
        g, rem = divmod(g, UniPoly((-r, ONE)))
        assert rem.is_zero
    if g.degree == 1:
        # Only reachable when the divisor search bailed out.
        roots.append(RationalRoot(-g.coeffs[0] / g.coeffs[1]))
    elif g.degree == 2:
        c0, c1, c2 = g.coeffs
        disc = c1 * c1 - 4 * c0 * c2
        if disc > 0:
            if _is_square(disc):
                s = _sqrt_exact(disc)
                roots.append(RationalRoot((-c1 - s) / (2 * c2)))
                roots.append(RationalRoot((-c1 + s) / (2 * c2)))
            else:
                roots.append(make_surd(-c1, -1, disc, 2 * c2))
                roots.append(make_surd(-c1, +1, disc, 2 * c2))
    elif g.degree >= 3:
        pending: list[tuple[Rational, Rational]] = []
        for a, b in _isolate_intervals(g):
            recognized = _recognize_rational(g, a, b)
            if recognized is not None:
                roots.append(RationalRoot(recognized))
                continue
            pending.append(_refine(g, a, b, min(width, Fraction(1, 10**12))))
        surds, leftovers = _pair_quadratic_factors(g, pending)
        roots.extend(surds)
        roots.extend(IntervalRoot(lo, hi, g) for lo, hi in leftovers)
    roots.sort(key=lambda r: r.approx())
    return roots


# ---------------------------------------------------------------------------
# Exact evaluation at roots


@dataclass(frozen=True)
class SignedInterval:
    """Certified rational enclosure of a nonzero real value."""

    low: Rational
    high: Rational

    @property
    def sign(self) -> int:
        return 1 if self.low > 0 else -1

    def approx(self) -> float:
        return float(self.low + self.high) / 2


def _interval_eval(p: UniPoly, lo: Rational, hi: Rational) -> tuple[Rational, Rational]:
    acc_lo, acc_hi = ZERO, ZERO
    for c in reversed(p.coeffs):
        cands = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(cands) + c, max(cands) + c
    return acc_lo, acc_hi


def eval_at_root(p: UniPoly, root: Root) -> Rational | SignedInterval:
    """Value of p at an isolated root: exact rational when the value lies in
    Q (including exact zero), otherwise a sign-certified enclosure."""
    if isinstance(root, RationalRoot):
        return p(root.value)
    if isinstance(root, QuadraticSurdRoot):
        rem = p % root.minimal_polynomial()
        e0 = rem.coefficient(0)
        e1 = rem.coefficient(1)
        if e1 == 0:
            return e0
        width = Fraction(1, 10**12)
        for _ in range(8):
            lo, hi = root.bounds(width)
            cands = (e0 + e1 * lo, e0 + e1 * hi)
            vlo, vhi = min(cands), max(cands)
            if vlo > 0 or vhi < 0:
                return SignedInterval(vlo, vhi)
            width = width * width
        raise ArithmeticError("could not certify the sign at a surd root")
    # Interval root: exact zero test through the gcd, then interval signs.
    g = poly_gcd(p, root.polynomial)
    if g.degree >= 1 and g(root.low) * g(root.high) < 0:
        return ZERO
    current = root
    for _ in range(60):
        vlo, vhi = _interval_eval(p, current.low, current.high)
        if vlo > 0 or vhi < 0:
            return SignedInterval(vlo, vhi)
        current = current.refined((current.high - current.low) / Fraction(2**16))
    raise ArithmeticError("could not certify the sign at an interval root")


def affine_image(root: Root, slope: Rational, intercept: Rational) -> Root:
    """The root description of slope*x + intercept at the given root."""
    slope, intercept = Fraction(slope), Fraction(intercept)
    if isinstance(root, RationalRoot):
        return RationalRoot(intercept + slope * root.value)
    if isinstance(root, QuadraticSurdRoot):
        if slope == 0:
            return RationalRoot(intercept)
        sign = root.sign if slope > 0 else -root.sign
        return make_surd(
            intercept * root.div + slope * root.add,
            sign,
            slope * slope * root.radicand,
            root.div,
        )
    if slope == 0:
        return RationalRoot(intercept)
    lo = intercept + slope * root.low
    hi = intercept + slope * root.high
    if lo > hi:
        lo, hi = hi, lo
    poly = root.polynomial.compose_linear(1 / slope, -intercept / slope)
    return IntervalRoot(lo, hi, poly)
