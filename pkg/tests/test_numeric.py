import math
import random
from fractions import Fraction as F

import pytest

from meanstab.catalog import (
    ALIASES,
    LAlpha,
    M1,
    M2,
    M3,
    M4,
    M5,
    MAlphaR,
    PowerMean,
    SAlpha,
)
from meanstab.numeric import (
    GridSpec,
    boundary_limit,
    compare_scan,
    eval_f,
    eval_mean,
    eval_resultant,
    verify_expansion_decay,
)

CATALOG = [
    PowerMean(F(1)),
    PowerMean(F(0)),
    PowerMean(F(-1)),
    PowerMean(F(5, 2)),
    LAlpha(F(1, 3)),
    LAlpha(F(3, 4)),
    SAlpha(F(0)),
    SAlpha(F(1, 2)),
    SAlpha(F(1)),
    M1,
    M2,
    M3,
    M4,
    M5,
    MAlphaR(F(1, 2), F(1)),
    MAlphaR(F(-1, 3), F(2)),
]


class TestEvalMean:
    def test_named_values(self):
        assert eval_mean(LAlpha(F(1, 2)), 1.0, 4.0) == pytest.approx(2.0, rel=1e-14)
        assert eval_mean(MAlphaR(F(0), F(3)), 2.0, 3.0) == pytest.approx(
            1.0 / math.log(1.5), rel=1e-13
        )
        assert eval_mean(PowerMean(F(2)), 1.0, 9.0) == pytest.approx(
            math.sqrt(41), rel=1e-14
        )

    def test_diagonal(self):
        for spec in CATALOG:
            assert eval_mean(spec, 3.7, 3.7) == 3.7

    def test_positive_domain_enforced(self):
        with pytest.raises(ValueError):
            eval_mean(M1, -1.0, 2.0)
        with pytest.raises(ValueError):
            eval_mean(M1, 1.0, 0.0)

    @pytest.mark.parametrize("spec", CATALOG, ids=str)
    def test_mean_axioms_on_grid(self, spec):
        rng = random.Random(5)
        for _ in range(40):
            a = rng.uniform(0.02, 50.0)
            b = rng.uniform(0.02, 50.0)
            v = eval_mean(spec, a, b)
            assert min(a, b) <= v <= max(a, b)
            assert eval_mean(spec, b, a) == pytest.approx(v, rel=1e-12)
            for lam in (1e-3, 7.0, 1e3):
                assert eval_mean(spec, lam * a, lam * b) == pytest.approx(
                    lam * v, rel=1e-12
                )

    @pytest.mark.parametrize("spec", CATALOG, ids=str)
    def test_near_diagonal_continuity(self, spec):
        # the mean axiom must survive the series switch-over; means with a
        # t-coefficient of 1 hug the max to within double resolution there
        a = 1.0
        for gap in (2.2e-6, 1.8e-6, 9e-7, 1e-8):
            v = eval_mean(spec, a, a + gap)
            assert a <= v <= a + gap


class TestMonotonicityInAlpha:
    def test_l_family_decreasing(self):
        a, b = 2.0, 5.0
        alphas = [F(k, 10) for k in range(0, 11)]
        values = [eval_mean(LAlpha(al), a, b) for al in alphas]
        assert all(x > y for x, y in zip(values, values[1:]))

    def test_s_family_increasing(self):
        a, b = 2.0, 5.0
        alphas = [F(k, 10) for k in range(0, 11)]
        values = [eval_mean(SAlpha(al), a, b) for al in alphas]
        assert all(x < y for x, y in zip(values, values[1:]))


class TestDenominatorBranches:
    def test_series_matches_closed_form_near_zero(self):
        from meanstab.numeric import _denominator_closed, _denominator_series_value

        specs = [s for s in CATALOG if not isinstance(s, PowerMean)]
        for spec in specs:
            for y in (1e-5, 1e-6, 1e-7):
                closed = _denominator_closed(spec, y)
                series = _denominator_series_value(spec, y)
                assert abs(closed - series) <= 1e-13 * abs(closed), (spec, y)


class TestEvalF:
    def test_classic_values(self):
        assert eval_f(PowerMean(F(0)), 1.7) == 1.0
        assert eval_f(PowerMean(F(1)), 2.0) == pytest.approx(math.cosh(2.0), rel=1e-14)
        assert eval_f(M1, 1.0) == pytest.approx(2 * math.sinh(1) / math.log(3), rel=1e-14)

    @pytest.mark.parametrize("spec", CATALOG, ids=str)
    def test_consistency_with_eval_mean(self, spec):
        for x in (1e-4, 0.3, 1.0, 2.5, 6.0):
            lhs = eval_f(spec, x)
            rhs = eval_mean(spec, math.exp(-x), math.exp(x))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            eval_f(M1, 0.0)


class TestEvalResultant:
    def test_stable_mean_composition(self):
        v = eval_resultant(PowerMean(F(2)), PowerMean(F(2)), PowerMean(F(2)), 1.0, 9.0)
        assert v == pytest.approx(math.sqrt(41), rel=1e-13)

    def test_log_sandwich_value(self):
        v = eval_resultant(ALIASES["A"], ALIASES["L"], ALIASES["G"], 2.0, 8.0)
        assert v == pytest.approx(6.0 / math.log(4.0), rel=1e-12)

    @pytest.mark.parametrize("spec", CATALOG, ids=str)
    def test_geometric_outer_identity(self, spec):
        # R(A, m, G)(a, b) = A(sqrt a, sqrt b) * m(sqrt a, sqrt b)
        rng = random.Random(11)
        for _ in range(8):
            a = rng.uniform(0.05, 20.0)
            b = rng.uniform(0.05, 20.0)
            lhs = eval_resultant(ALIASES["A"], spec, ALIASES["G"], a, b)
            sa, sb = math.sqrt(a), math.sqrt(b)
            rhs = 0.5 * (sa + sb) * eval_mean(spec, sa, sb)
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestCompareScan:
    GRID = GridSpec(1e-3, 10.0, 10000)

    def test_classic_chain(self):
        chain = ["H", "G", "L", "P", "A", "T"]
        for low, high in zip(chain, chain[1:]):
            report = compare_scan(ALIASES[low], ALIASES[high], self.GRID)
            assert report.verdict == "m1<m2", (low, high)
            assert report.min_gap > 0

    def test_s_alpha_below_arithmetic(self):
        report = compare_scan(SAlpha(F(7, 10)), ALIASES["A"], self.GRID)
        assert report.verdict == "m1<m2"

    def test_chain_small_alpha(self):
        # 0 < alpha < 1/2: G < L_a < L < S_a < A
        a = F(1, 3)
        for m1, m2 in [
            (ALIASES["G"], LAlpha(a)),
            (LAlpha(a), ALIASES["L"]),
            (ALIASES["L"], SAlpha(a)),
            (SAlpha(a), ALIASES["A"]),
        ]:
            assert compare_scan(m1, m2, self.GRID).verdict == "m1<m2"

    def test_chain_large_alpha(self):
        # 1/2 < alpha < 1: H < L_a < G < L < S_a < T
        a = F(3, 4)
        for m1, m2 in [
            (ALIASES["H"], LAlpha(a)),
            (LAlpha(a), ALIASES["G"]),
            (ALIASES["G"], ALIASES["L"]),
            (ALIASES["L"], SAlpha(a)),
            (SAlpha(a), ALIASES["T"]),
        ]:
            assert compare_scan(m1, m2, self.GRID).verdict == "m1<m2"

    def test_m_chain(self):
        # M4 < M5 < M1 < M3 and L < M4 < A, L < M2 < M3
        for m1, m2 in [
            (M4, M5),
            (M5, M1),
            (M1, M3),
            (ALIASES["L"], M4),
            (M4, ALIASES["A"]),
            (ALIASES["L"], M2),
            (M2, M3),
        ]:
            assert compare_scan(m1, m2, self.GRID).verdict == "m1<m2"

    def test_crossing_witness_arithmetic_vs_m1(self):
        report = compare_scan(ALIASES["A"], M1, self.GRID)
        assert report.verdict == "crossing"
        assert any(lo <= 2.0 <= hi or lo >= 1.0 for lo, hi in report.witnesses)

    def test_crossing_s_alpha_in_true_window(self):
        # Non-comparability of S_alpha with A is real for
        # sqrt(2)/2 < alpha < pi/4: above the diagonal near 0, below at
        # infinity (the limit ratio is 4*alpha/pi).
        report = compare_scan(SAlpha(F(18, 25)), ALIASES["A"], self.GRID)
        assert report.verdict == "crossing"

    def test_s_alpha_09_dominates_arithmetic(self):
        # For alpha > pi/4 the limit ratio 4*alpha/pi exceeds 1 and the
        # difference is single-signed: S_0.9 > A on the whole grid.
        report = compare_scan(SAlpha(F(9, 10)), ALIASES["A"], self.GRID)
        assert report.verdict == "m2<m1"

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            GridSpec(1.0, 0.5, 10)
        with pytest.raises(ValueError):
            GridSpec(0.0, 1.0, 10)
        with pytest.raises(ValueError):
            GridSpec(1.0, 2.0, 1)


class TestBoundaryLimit:
    def test_m1_vanishes(self):
        report = boundary_limit(M1)
        assert report.value == 0.0 and report.is_exact

    def test_m1_resultant_closed_form(self):
        report = boundary_limit((PowerMean(F(1)), M1, PowerMean(F(1))))
        assert report.is_exact
        assert report.value == pytest.approx(0.25 / math.log1p(math.log(2)), rel=1e-14)

    def test_m_alpha_r_negative_sum(self):
        spec = MAlphaR(F(-1, 2), F(1, 4))
        report = boundary_limit(spec)
        assert report.value == pytest.approx(0.25, abs=1e-12)

    def test_closed_form_matches_sampling_where_fast(self):
        # B_2 approaches its boundary value fast; extrapolation must agree.
        from meanstab.numeric import _mean_boundary_closed

        spec = PowerMean(F(2))
        closed = _mean_boundary_closed(spec)
        samples = [eval_mean(spec, 10.0**-k, 1 - 10.0**-k) for k in (6, 7, 8)]
        assert closed == pytest.approx(samples[-1], rel=1e-4)
        assert closed == pytest.approx(2 ** -0.5, rel=1e-12)

    def test_seiffert_limit(self):
        assert boundary_limit(SAlpha(F(1))).value == pytest.approx(2 / math.pi, rel=1e-12)

    def test_extrapolated_label_for_unlisted_means(self):
        from meanstab.catalog import MuGenerated

        report = boundary_limit(MuGenerated((F(1), F(1, 6))))
        assert report.method == "extrapolated"
        assert report.value == pytest.approx(0.0, abs=1e-3)

    def test_logarithmically_slow_sequence_not_resolved(self):
        # R(M1, M1, M1)(s, 1-s) drifts like 1/log(log(1/s)); honest refusal
        # beats a confidently wrong number.
        with pytest.raises(ValueError, match="not resolved"):
            boundary_limit((M1, M1, M1))


class TestDecay:
    GRID = GridSpec(100.0, 1e5, 40, "logarithmic")

    def test_l_alpha_next_exponent(self):
        report = verify_expansion_decay(LAlpha(F(1, 3)), 4, 10.0, self.GRID)
        assert report.expected_exponent == -5
        assert report.slope == pytest.approx(-5.0, abs=0.15)

    def test_arithmetic_mean_is_exact(self):
        report = verify_expansion_decay(PowerMean(F(1)), 4, 1.0, self.GRID)
        assert report.exact

    def test_m1_after_linear_term(self):
        report = verify_expansion_decay(M1, 1, 1.0, self.GRID)
        assert report.expected_exponent == -1
        assert report.slope == pytest.approx(-1.0, abs=0.15)

    def test_noise_floor_reported(self):
        # truncating far beyond double precision leaves only noise
        report = verify_expansion_decay(PowerMean(F(2)), 10, 0.1, self.GRID)
        assert report.noise_floor
        assert report.slope is None
