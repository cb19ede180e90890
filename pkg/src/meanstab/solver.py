"""Stability classification and power-mean sub/super-stabilizability.

Given a mean M with exact expansion coefficients, the solver studies the
difference M - R(B_p, M, B_q) order by order:

* the t coefficient is a_1/2, independent of (p, q): a mixed-parity mean
  with a_1 != 0 can never have the leading term cancelled;
* the t^2 coefficient vanishes exactly on the affine locus
  q = 3*a_2 + (3 - p)/2;
* on that locus the t^k coefficient is a polynomial in p of degree at most
  k - 1, recovered exactly by interpolation and solved by certified root
  isolation.

The verdict distinguishes a candidate direction of the inequality (the sign
of the first surviving coefficient, which is only the asymptotic, near-
diagonal side) from boundary evidence at (s, 1-s), s -> 0; it never claims
the global inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .catalog import (
    LAlpha,
    MeanExpansion,
    MeanSpec,
    PowerMean,
    SAlpha,
    describe_spec,
    expand_mean,
)
from .numeric import boundary_limit
from .polynomials import (
    QuadraticSurdRoot,
    RationalRoot,
    Root,
    SignedInterval,
    UniPoly,
    affine_image,
    eval_at_root,
    isolate_real_roots,
    lagrange_interpolate,
)
from .rationals import Rational
from .resultant import resultant_coeffs, resultant_power_means

# ---------------------------------------------------------------------------
# Difference expansions


@dataclass(frozen=True)
class DifferenceExpansion:
    """Coefficients of M - R(B_p, M, B_q) in t**n x**(1-n)."""

    coeffs: tuple[Rational, ...]
    p: Rational
    q: Rational

    @property
    def first_nonzero(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c != 0:
                return n
        return None

    @property
    def sign(self) -> int:
        n = self.first_nonzero
        if n is None:
            return 0
        return 1 if self.coeffs[n] > 0 else -1

    @property
    def is_zero(self) -> bool:
        return self.first_nonzero is None


def difference_expansion(
    mean: MeanExpansion, p: Rational, q: Rational, order: int
) -> DifferenceExpansion:
    """Exact difference between the mean and its power-mean resultant."""
    p, q = Fraction(p), Fraction(q)
    res = resultant_power_means(p, q, mean.truncated(order), order)
    coeffs = tuple(mean.coefficient(n) - res.coefficient(n) for n in range(order + 1))
    return DifferenceExpansion(coeffs, p, q)


# ---------------------------------------------------------------------------
# First-order locus and coefficient polynomials


@dataclass(frozen=True)
class AffineLocus:
    """q as an affine function of p."""

    intercept: Rational
    slope: Rational

    def q_of(self, p: Rational) -> Rational:
        return self.intercept + self.slope * Fraction(p)

    def describe(self) -> str:
        return f"q = {self.intercept} + ({self.slope})*p"


def first_order_locus(mean: MeanExpansion) -> AffineLocus:
    """The locus where the t^2 coefficient of M - R(B_p, M, B_q) vanishes:
    q = 3*a_2 + (3 - p)/2.

    For a mixed-parity mean with a_1 != 0 the difference already starts at
    the parameter-free term a_1/2 * t, so no locus can help."""
    if mean.coefficient(1) != 0:
        raise ValueError("leading term parameter-independent")
    a2 = mean.coefficient(2)
    return AffineLocus(3 * a2 + Fraction(3, 2), Fraction(-1, 2))


def coefficient_polynomial(
    mean: MeanExpansion, k: int, locus: AffineLocus
) -> UniPoly:
    """The t**k coefficient of the difference on the locus, as an exact
    polynomial in p (degree <= k-1, enforced by two surplus samples)."""
    if k < 2:
        raise ValueError("coefficient polynomials start at the t^2 index")
    samples = []
    for i in range(k + 2):
        p = Fraction(i - (k + 2) // 2)
        diff = difference_expansion(mean, p, locus.q_of(p), k)
        samples.append((p, diff.coeffs[k]))
    poly = lagrange_interpolate(samples[: k + 1])
    if poly.degree > k - 1:
        raise ArithmeticError("degree bound violated")
    p_extra, v_extra = samples[k + 1]
    if poly(p_extra) != v_extra:
        raise ArithmeticError("degree bound violated")
    return poly


# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class BoundaryEvidence:
    """Numeric limits of M and R at (s, 1-s), s -> 0; evidence only."""

    mean_limit: float | None
    resultant_limit: float | None
    label: str

    @property
    def difference_sign(self) -> int | None:
        if self.mean_limit is None or self.resultant_limit is None:
            return None
        gap = self.mean_limit - self.resultant_limit
        scale = 1.0 + abs(self.mean_limit) + abs(self.resultant_limit)
        if abs(gap) <= 1e-6 * scale:
            return 0
        return 1 if gap > 0 else -1


@dataclass(frozen=True)
class OptimalCandidate:
    """One optimal parameter pair with the first surviving coefficient."""

    p: Root
    q: Root
    achieved_order: int | None  # index of first nonzero coefficient; None = all zero
    leading: Rational | SignedInterval | None

    @property
    def sign(self) -> int:
        if self.leading is None:
            return 0
        if isinstance(self.leading, SignedInterval):
            return self.leading.sign
        return 1 if self.leading > 0 else (-1 if self.leading < 0 else 0)


@dataclass(frozen=True)
class StabilizabilityVerdict:
    relation: str  # "candidate-sub" | "candidate-super" | "neither" | "stabilizable"
    candidates: tuple[OptimalCandidate, ...] = ()
    locus: AffineLocus | None = None
    fixed_leading: Rational | None = None  # parameter-free leading coefficient
    fixed_leading_order: int | None = None
    boundary: BoundaryEvidence | None = None
    notes: tuple[str, ...] = ()


def _boundary_evidence(
    spec: MeanSpec | None, p: float | None, q: float | None
) -> BoundaryEvidence:
    if spec is None or p is None or q is None:
        return BoundaryEvidence(None, None, "unavailable")
    try:
        m_rep = boundary_limit(spec)
        r_rep = boundary_limit((PowerMean(Fraction(p).limit_denominator(10**12)),
                                spec,
                                PowerMean(Fraction(q).limit_denominator(10**12))))
    except ValueError:
        return BoundaryEvidence(None, None, "unavailable")
    label = "closed-form" if (m_rep.is_exact and r_rep.is_exact) else "numeric-extrapolation"
    return BoundaryEvidence(m_rep.value, r_rep.value, label)


def _relation_from_signs(asymptotic_sign: int, boundary: BoundaryEvidence) -> str:
    base = "candidate-sub" if asymptotic_sign > 0 else "candidate-super"
    b = boundary.difference_sign
    if b is not None and b != 0 and b != asymptotic_sign:
        return "neither"
    return base


#: (p, q) probes for the parameter-free paths, including extreme corners:
#: the sign of the boundary difference may depend on where B_p, B_q sit.
_BOUNDARY_SAMPLES = (
    (1.0, 1.0),
    (2.0, 0.5),
    (0.5, 2.0),
    (-20.0, 10.0),
    (-1.0, 3.0),
    (6.0, -2.0),
)


def _sampled_relation(
    spec: MeanSpec | None, asym: int
) -> tuple[str, BoundaryEvidence | None]:
    """Relation when the leading difference coefficient cannot be cancelled.

    "neither" only when the boundary difference conflicts with the
    asymptotic sign at some probe and supports it at none; probes with a
    vanishing boundary difference are uninformative.
    """
    base = "candidate-sub" if asym > 0 else "candidate-super"
    if spec is None:
        return base, None
    supported = conflicted = None
    for p, q in _BOUNDARY_SAMPLES:
        evidence = _boundary_evidence(spec, p, q)
        b = evidence.difference_sign
        if b == asym and supported is None:
            supported = evidence
        elif b == -asym and conflicted is None:
            conflicted = evidence
    if supported is not None:
        return base, supported
    if conflicted is not None:
        return "neither", conflicted
    return base, _boundary_evidence(spec, *_BOUNDARY_SAMPLES[0])


def _sampled_relation_on_locus(
    spec: MeanSpec | None, asym: int, locus: AffineLocus
) -> tuple[str, BoundaryEvidence | None]:
    base = "candidate-sub" if asym > 0 else "candidate-super"
    if spec is None:
        return base, None
    supported = conflicted = None
    for p in (1.0, 2.0, -1.0, -20.0, 6.0):
        evidence = _boundary_evidence(spec, p, float(locus.q_of(Fraction(p))))
        b = evidence.difference_sign
        if b == asym and supported is None:
            supported = evidence
        elif b == -asym and conflicted is None:
            conflicted = evidence
    if supported is not None:
        return base, supported
    if conflicted is not None:
        return "neither", conflicted
    return base, _boundary_evidence(spec, 1.0, float(locus.q_of(1)))


def optimal_parameters(
    mean: MeanExpansion, max_order: int, spec: MeanSpec | None = None
) -> StabilizabilityVerdict:
    """Search for power-mean parameters cancelling as many difference
    coefficients as possible, then certify the first survivor.

    Surd parameters are evaluated exactly through reduction modulo their
    minimal polynomial; a leading coefficient that is rational comes back
    exact, otherwise as a sign-certified enclosure.  Boundary limits (when a
    mean spec is supplied) are numeric evidence attached to the verdict,
    never part of the exact computation.
    """
    if mean.order < max_order:
        raise ValueError("mean expansion shorter than the requested search order")

    # Parameter-free leading term: mixed parity with a_1 != 0.
    a1 = mean.coefficient(1)
    if a1 != 0:
        leading = a1 / 2
        asym = 1 if leading > 0 else -1
        relation, boundary = _sampled_relation(spec, asym)
        return StabilizabilityVerdict(
            relation,
            fixed_leading=leading,
            fixed_leading_order=1,
            boundary=boundary,
            notes=("the t coefficient a_1/2 does not depend on (p, q)",),
        )

    locus = first_order_locus(mean)
    polys: dict[int, UniPoly] = {}

    def poly_at(k: int) -> UniPoly:
        if k not in polys:
            polys[k] = coefficient_polynomial(mean, k, locus)
        return polys[k]

    pivot: tuple[int, UniPoly] | None = None
    for k in range(3, max_order + 1):
        pk = poly_at(k)
        if pk.is_zero:
            continue
        pivot = (k, pk)
        break
    if pivot is None:
        return StabilizabilityVerdict(
            "stabilizable",
            locus=locus,
            notes=(
                f"difference vanishes identically on the locus through order {max_order}",
            ),
        )

    k0, pk0 = pivot
    roots = isolate_real_roots(pk0) if pk0.degree >= 1 else []
    if not roots:
        # The pivot coefficient keeps one sign for every p on the locus.
        sample_val = pk0(0)
        asym = 1 if sample_val > 0 else -1
        relation, boundary = _sampled_relation_on_locus(spec, asym, locus)
        note = (
            f"the t^{k0} coefficient on the locus is constant in p"
            if pk0.degree == 0
            else f"the t^{k0} coefficient has no real zero; its sign is fixed"
        )
        return StabilizabilityVerdict(
            relation,
            locus=locus,
            fixed_leading=pk0.coefficient(0) if pk0.degree == 0 else None,
            fixed_leading_order=k0,
            boundary=boundary,
            notes=(note,),
        )

    candidates = []
    for root in roots:
        q_root = affine_image(root, locus.slope, locus.intercept)
        achieved: int | None = None
        leading: Rational | SignedInterval | None = None
        for k in range(k0 + 1, max_order + 1):
            pk = poly_at(k)
            if pk.is_zero:
                continue
            value = eval_at_root(pk, root)
            if isinstance(value, Fraction) and value == 0:
                continue
            achieved, leading = k, value
            break
        candidates.append(OptimalCandidate(root, q_root, achieved, leading))

    if any(c.achieved_order is None for c in candidates):
        best = tuple(c for c in candidates if c.achieved_order is None)
        rest = tuple(c for c in candidates if c.achieved_order is not None)
        return StabilizabilityVerdict(
            "stabilizable",
            candidates=best + rest,
            locus=locus,
            notes=(f"difference vanishes through order {max_order} at "
                   f"{len(best)} parameter pair(s)",),
        )

    best_order = max(c.achieved_order for c in candidates)
    ranked = tuple(
        sorted(candidates, key=lambda c: -(c.achieved_order or max_order + 1))
    )
    top = [c for c in candidates if c.achieved_order == best_order]
    asym = top[0].sign
    notes: tuple[str, ...] = ()
    if any(c.sign != asym for c in top):
        notes = ("best candidates disagree in sign; relation taken from the first",)
    boundary = _boundary_evidence(
        spec,
        top[0].p.approx() if spec is not None else None,
        top[0].q.approx() if spec is not None else None,
    )
    relation = _relation_from_signs(asym, boundary)
    return StabilizabilityVerdict(
        relation, candidates=ranked, locus=locus, boundary=boundary, notes=notes
    )


# ---------------------------------------------------------------------------
# Stability


@dataclass(frozen=True)
class StabilityReport:
    description: str
    order: int
    is_stable: bool
    first_mismatch: int | None
    defect: Rational | None


def is_stable(spec: MeanSpec, order: int) -> StabilityReport:
    """Compare a mean with R(M, M, M) coefficientwise through the order."""
    if order < 4:
        raise ValueError("stability checks need order >= 4")
    exp = expand_mean(spec, order)
    res = resultant_coeffs(exp.coeffs, exp.coeffs, exp.coeffs, order)
    for n in range(order + 1):
        defect = exp.coefficient(n) - res[n]
        if defect != 0:
            return StabilityReport(describe_spec(spec), order, False, n, defect)
    return StabilityReport(describe_spec(spec), order, True, None, None)


def _stability_defect(make_spec: Callable[[Rational], MeanSpec], alpha: Rational, index: int) -> Rational:
    exp = expand_mean(make_spec(alpha), index)
    res = resultant_coeffs(exp.coeffs, exp.coeffs, exp.coeffs, index)
    return exp.coefficient(index) - res[index]


_SCAN_SAMPLES = tuple(
    Fraction(num, den)
    for num, den in ((0, 1), (1, 8), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2),
                     (3, 5), (2, 3), (3, 4), (4, 5), (7, 8), (1, 1))
)


def _defect_polynomial_in_beta(
    make_spec: Callable[[Rational], MeanSpec], index: int
) -> UniPoly:
    """Interpolate the t**index stability defect as a polynomial in
    beta = alpha**2 (both families are even in alpha)."""
    points = [
        (alpha * alpha, _stability_defect(make_spec, alpha, index))
        for alpha in _SCAN_SAMPLES
    ]
    poly = lagrange_interpolate(points[:-2])
    for beta, value in points[-2:]:
        if poly(beta) != value:
            raise ArithmeticError("stability defect is not polynomial in alpha^2")
    return poly


def stability_parameter_scan(family: str, order: int = 16) -> list[Root]:
    """All parameters alpha in [-1, 1] for which the family is stable.

    The t^4 stability defect is interpolated as an exact polynomial in
    alpha^2 and its roots isolated; candidates must survive the t^6 defect
    and a full coefficient comparison to the given order.  Families: "L"
    (generated by cosh) and "S" (generated by 1/cosh).
    """
    name = family.strip().upper()
    if name.startswith("L"):
        make_spec: Callable[[Rational], MeanSpec] = LAlpha
    elif name.startswith("S"):
        make_spec = SAlpha
    else:
        raise ValueError("family must be 'LAlpha' or 'SAlpha'")

    defect4 = _defect_polynomial_in_beta(make_spec, 4)
    if defect4.is_zero:
        raise ArithmeticError("t^4 defect vanishes identically; scan inconclusive")
    results: list[Root] = []
    for root in isolate_real_roots(defect4):
        if isinstance(root, RationalRoot):
            beta = root.value
            if beta < 0 or beta > 1:
                continue
            num, den = beta.numerator, beta.denominator
            ni, di = math.isqrt(num), math.isqrt(den)
            if ni * ni != num or di * di != den:
                continue  # irrational alpha cannot match a rational-coefficient family
            alpha = Fraction(ni, di)
            if is_stable(make_spec(alpha), order).is_stable:
                if alpha != 0:
                    results.append(RationalRoot(-alpha))
                results.append(RationalRoot(alpha))
        else:
            lo, hi = (root.bounds() if isinstance(root, QuadraticSurdRoot)
                      else (root.low, root.high))
            if hi < 0 or lo > 1:
                continue
            defect6 = _defect_polynomial_in_beta(make_spec, 6)
            value = eval_at_root(defect6, root)
            if isinstance(value, Fraction) and value == 0:
                raise ArithmeticError(
                    "irrational stability candidate survives t^6; unresolved"
                )
    results.sort(key=lambda r: r.approx())
    return results
