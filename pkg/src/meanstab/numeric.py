"""Double-precision evaluation lab: direct mean values, associated
one-variable functions, resultant compositions, comparison scans, boundary
limits and remainder-decay checks.

Everything here is floating point on purpose; it cross-validates the exact
engine rather than feeding it.  Values derived by extrapolation are labelled
as numeric evidence, never as exact results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .catalog import (
    ClassicMean,
    LAlpha,
    MAlphaR,
    MeanSpec,
    MuGenerated,
    PowerMean,
    SAlpha,
    denominator_series,
    expand_mean,
)

_EPS = 2.0 ** -52
_NEAR_DIAGONAL = 1e-6
_SQRT2 = math.sqrt(2.0)


def _require_positive(*values: float) -> None:
    if any(not (v > 0) for v in values):
        raise ValueError("means are defined on positive arguments only")


@lru_cache(maxsize=None)
def _denominator_floats(spec: MeanSpec, order: int = 9) -> tuple[float, ...]:
    return tuple(float(c) for c in denominator_series(spec, order))


def _denominator_series_value(spec: MeanSpec, y: float) -> float:
    acc = 0.0
    for c in reversed(_denominator_floats(spec)):
        acc = acc * y + c
    return acc


def _denominator_closed(spec: MeanSpec, y: float) -> float:
    """D(y) with M(a,b) = |b-a|/D(|ln(b/a)|), in closed form."""
    if isinstance(spec, LAlpha):
        a = float(spec.alpha)
        return y if a == 0.0 else math.sinh(a * y) / a
    if isinstance(spec, SAlpha):
        a = float(spec.alpha)
        return y if a == 0.0 else 2.0 * math.atan(math.tanh(a * y / 2.0)) / a
    if isinstance(spec, ClassicMean):
        if spec.index == 1:
            return math.log1p(y)
        if spec.index == 2:
            return _SQRT2 * math.atan(y / _SQRT2)
        if spec.index == 3:
            # 2*atan(1+y) - pi/2 rewritten without cancellation at y -> 0
            return 2.0 * math.atan(y / (2.0 + y))
        if spec.index == 4:
            return _SQRT2 * math.asinh(y / _SQRT2)
        # sqrt2*(asinh(1+y) - asinh(1)), cancellation-free:
        # asinh(1+y) - asinh(1) = log1p((y + dr)/(1 + sqrt2)) where
        # dr = sqrt(2 + 2y + y^2) - sqrt2 = (2y + y^2)/(sqrt(2+2y+y^2) + sqrt2)
        root = math.sqrt(2.0 + y * (2.0 + y))
        dr = y * (2.0 + y) / (root + _SQRT2)
        return _SQRT2 * math.log1p((y + dr) / (1.0 + _SQRT2))
    if isinstance(spec, MAlphaR):
        r, alpha = float(spec.r), float(spec.alpha)
        if alpha + r == 0.0:
            return math.log1p(r * y) / r
        s = (r + alpha) / r
        return math.expm1(s * math.log1p(r * y)) / (r + alpha)
    if isinstance(spec, MuGenerated):
        return _denominator_series_value(spec, y)
    raise TypeError(f"no denominator form for {spec!r}")


def eval_mean(spec: MeanSpec, a: float, b: float) -> float:
    """Value of the mean at (a, b); exact formulas away from the diagonal, a
    short series in the log-ratio once |a-b| <= 1e-6*max(a,b) where the
    closed forms turn into 0/0."""
    _require_positive(a, b)
    if a == b:
        return float(a)
    lo, hi = (a, b) if a < b else (b, a)
    if isinstance(spec, PowerMean):
        p = float(spec.p)
        if p == 0.0:
            return math.sqrt(lo * hi)
        if p == 1.0:
            return (lo + hi) / 2.0
        if p == -1.0:
            return 2.0 * lo * hi / (lo + hi)
        # factor out the dominant argument so the inner ratio power is <= 1
        if p > 0:
            return hi * ((1.0 + (lo / hi) ** p) / 2.0) ** (1.0 / p)
        return lo * ((1.0 + (hi / lo) ** p) / 2.0) ** (1.0 / p)
    y = math.log1p((hi - lo) / lo)
    if hi - lo <= _NEAR_DIAGONAL * hi:
        den = _denominator_series_value(spec, y)
    else:
        den = _denominator_closed(spec, y)
    value = (hi - lo) / den
    return min(max(value, lo), hi)


def eval_f(spec: MeanSpec, x: float) -> float:
    """Associated function f_M(x) = M(exp(-x), exp(x)); with G = 1 it turns
    mean comparison into comparison of one-variable functions."""
    if not (x > 0):
        raise ValueError("evaluate the associated function at x > 0")
    if isinstance(spec, PowerMean):
        p = float(spec.p)
        if p == 0.0:
            return 1.0
        return math.cosh(p * x) ** (1.0 / p)
    y = 2.0 * x
    if y <= _NEAR_DIAGONAL:
        den = _denominator_series_value(spec, y)
    else:
        den = _denominator_closed(spec, y)
    return 2.0 * math.sinh(x) / den


def eval_resultant(
    outer: MeanSpec, middle: MeanSpec, inner: MeanSpec, s: float, t: float
) -> float:
    """Direct composition K(M(s, N(s,t)), M(N(s,t), t))."""
    _require_positive(s, t)
    n = eval_mean(inner, s, t)
    return eval_mean(outer, eval_mean(middle, s, n), eval_mean(middle, n, t))


# ---------------------------------------------------------------------------
# Grids and comparisons


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self) -> None:
        if self.count < 2:
            raise ValueError("a grid needs at least two points")
        if not (0 < self.start < self.stop):
            raise ValueError("grid must lie in the positive half-line, start < stop")
        if self.scale not in ("linear", "logarithmic"):
            raise ValueError("scale must be 'linear' or 'logarithmic'")

    def points(self) -> list[float]:
        n = self.count
        if self.scale == "linear":
            step = (self.stop - self.start) / (n - 1)
            return [self.start + i * step for i in range(n)]
        ratio = (self.stop / self.start) ** (1.0 / (n - 1))
        return [self.start * ratio**i for i in range(n)]


@dataclass(frozen=True)
class ComparisonReport:
    verdict: str  # "m1<m2" | "m2<m1" | "crossing"
    witnesses: tuple[tuple[float, float], ...]
    min_gap: float


def compare_scan(m1: MeanSpec, m2: MeanSpec, grid: GridSpec) -> ComparisonReport:
    """Compare the associated functions on the grid; a uniform verdict or
    bracketing witnesses for each sign change."""
    xs = grid.points()
    diffs = [eval_f(m1, x) - eval_f(m2, x) for x in xs]
    min_gap = min(abs(d) for d in diffs)
    witnesses = tuple(
        (xs[i], xs[i + 1])
        for i in range(len(xs) - 1)
        if diffs[i] == 0.0 or (diffs[i] > 0) != (diffs[i + 1] > 0)
    )
    if witnesses:
        return ComparisonReport("crossing", witnesses, min_gap)
    verdict = "m1<m2" if diffs[0] < 0 else "m2<m1"
    return ComparisonReport(verdict, (), min_gap)


# ---------------------------------------------------------------------------
# Boundary limits


@dataclass(frozen=True)
class LimitReport:
    value: float
    uncertainty: float
    method: str  # "closed-form" | "extrapolated"

    @property
    def is_exact(self) -> bool:
        return self.method == "closed-form"


def _neville_to_zero(ws: list[float], vs: list[float]) -> tuple[float, float]:
    """Polynomial extrapolation of (w, v) samples to w = 0 with an error
    estimate from the last correction."""
    table = vs[:]
    best = table[-1]
    correction = math.inf
    n = len(ws)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            table[i] = table[i] + (table[i] - table[i - 1]) * ws[i] / (
                ws[i - level] - ws[i]
            )
        correction = abs(table[n - 1] - best)
        best = table[n - 1]
    return best, correction


def _mean_boundary_closed(spec: MeanSpec) -> float | None:
    """lim_{s->0+} M(s, 1-s) in closed form: the denominators D(y) have
    explicit limits as y -> infinity.  None when no closed form applies."""
    if isinstance(spec, PowerMean):
        p = float(spec.p)
        return 2.0 ** (-1.0 / p) if p > 0 else 0.0
    if isinstance(spec, LAlpha):
        return 0.0  # sinh(alpha*y) (or y itself) diverges
    if isinstance(spec, SAlpha):
        a = abs(float(spec.alpha))
        return 0.0 if a == 0.0 else 2.0 * a / math.pi
    if isinstance(spec, ClassicMean):
        return {
            1: 0.0,
            2: _SQRT2 / math.pi,
            3: 2.0 / math.pi,
            4: 0.0,
            5: 0.0,
        }[spec.index]
    if isinstance(spec, MAlphaR):
        s = spec.r + spec.alpha
        return float(-s) if s < 0 else 0.0
    return None


def _resultant_boundary_closed(
    outer: MeanSpec, middle: MeanSpec, inner: MeanSpec
) -> float | None:
    """lim_{s->0+} R(B_p, M, B_q)(s, 1-s) via continuity of the composition:
    the inner mean tends to nu = B_q(0, 1), the two middle values to
    nu*lim M(s,1) and M(nu, 1), and B_p extends continuously to the
    boundary (vanishing there for p <= 0)."""
    if not isinstance(outer, PowerMean) or not isinstance(inner, PowerMean):
        return None
    mean_limit = _mean_boundary_closed(middle)
    if mean_limit is None:
        return None
    p, q = float(outer.p), float(inner.p)
    nu = 2.0 ** (-1.0 / q) if q > 0 else 0.0
    if nu > 0.0:
        w1 = nu * mean_limit
        w2 = eval_mean(middle, nu, 1.0)
    else:
        w1, w2 = 0.0, mean_limit
    if w1 > 0.0 and w2 > 0.0:
        if w1 == w2:
            return w1
        return eval_mean(PowerMean(Fraction(p).limit_denominator(10**12)), w1, w2)
    top = max(w1, w2)
    if top == 0.0:
        return 0.0
    return top * 2.0 ** (-1.0 / p) if p > 0 else 0.0


def boundary_limit(
    expr: MeanSpec | tuple[MeanSpec, MeanSpec, MeanSpec],
) -> LimitReport:
    """lim_{s->0+} of M(s, 1-s), or of R(K, M, N)(s, 1-s) for a triple.

    Catalog means and power-mean resultant sandwiches have closed-form
    limits (several families approach them only logarithmically, far too
    slowly for sampling).  Everything else is sampled at s = 1e-3..1e-8 and
    extrapolated polynomially in 1/log10(1/s); those values are evidence,
    not proofs, and carry an uncertainty estimate.
    """
    if isinstance(expr, tuple):
        outer, middle, inner = expr
        closed = _resultant_boundary_closed(outer, middle, inner)
        if closed is not None:
            return LimitReport(closed, 0.0, "closed-form")

        def sample(s: float) -> float:
            return eval_resultant(outer, middle, inner, s, 1.0 - s)

    else:
        closed = _mean_boundary_closed(expr)
        if closed is not None:
            return LimitReport(closed, 0.0, "closed-form")

        def sample(s: float) -> float:
            return eval_mean(expr, s, 1.0 - s)

    ks = list(range(3, 9))
    ws = [1.0 / k for k in ks]
    vs = [sample(10.0**-k) for k in ks]
    value, uncertainty = _neville_to_zero(ws, vs)
    spread = max(vs) - min(vs)
    # Sequences approaching their limit only logarithmically keep drifting
    # through the sample range; a still-moving extrapolant is not evidence.
    if not math.isfinite(value) or (
        uncertainty > max(2e-4, 2e-3 * abs(value)) and spread > 1e-9
    ):
        raise ValueError("limit not resolved")
    if abs(value) < 5e-4 and spread < 0.2:
        value = max(value, 0.0)
    return LimitReport(value, uncertainty, "extrapolated")


# ---------------------------------------------------------------------------
# Remainder decay


@dataclass(frozen=True)
class DecayReport:
    slope: float | None
    expected_exponent: int | None
    points_used: int
    noise_floor: bool
    exact: bool = False


def verify_expansion_decay(
    spec: MeanSpec, order: int, t: float, grid: GridSpec
) -> DecayReport:
    """Check that the truncation remainder decays at the predicted rate.

    The remainder after summing through t**order is dominated by the next
    nonzero term a_n t**n x**(1-n), so log|remainder| against log x has
    slope 1 - n.  Points within 400 ulp of the direct evaluation are
    discarded as float noise; with fewer than four usable points the report
    says so instead of fitting."""
    if grid.scale != "logarithmic":
        raise ValueError("decay verification expects a logarithmic grid")
    if math.log10(grid.stop / grid.start) < 3 or grid.start < 100.0:
        raise ValueError("grid must span >= 3 decades with x >= 100")
    deep = expand_mean(spec, order + 6)
    next_nonzero = next(
        (n for n in range(order + 1, deep.order + 1) if deep.coefficient(n) != 0),
        None,
    )
    truncated = deep.truncated(order)
    xs, rems = [], []
    for x in grid.points():
        direct = eval_mean(spec, x - t, x + t)
        rem = abs(direct - truncated.partial_sum(x, t))
        xs.append(x)
        rems.append(rem)
    if all(r == 0.0 for r in rems):
        return DecayReport(None, 1 - next_nonzero if next_nonzero else None, 0, False, True)
    usable = [(x, r) for x, r in zip(xs, rems) if r > 400.0 * _EPS * x]
    if len(usable) < 4:
        return DecayReport(None, 1 - next_nonzero if next_nonzero else None, len(usable), True)
    lx = [math.log(x) for x, _ in usable]
    lr = [math.log(r) for _, r in usable]
    n = len(lx)
    mean_x = sum(lx) / n
    mean_r = sum(lr) / n
    slope = sum((a - mean_x) * (b - mean_r) for a, b in zip(lx, lr)) / sum(
        (a - mean_x) ** 2 for a in lx
    )
    expected = 1 - next_nonzero if next_nonzero is not None else None
    return DecayReport(slope, expected, n, False)
