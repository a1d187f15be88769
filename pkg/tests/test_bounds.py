"""Bound routing, formula values, sandwich/scaling invariants, and report
serialization."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigenbound import bounds, geometry, radial, specfun
from eigenbound.bounds import InradiusOnly
from eigenbound.exceptions import NumericError, UnsupportedError
from eigenbound.geometry import Ball, Box, Cylinder, LShape, UShape
from eigenbound.radial import OperatorSpec

J01 = 2.404825557695773
J11 = 3.831705970207512
PI_HALF_SQ = (math.pi / 2.0) ** 2


class TestLowerBound:
    def test_infinity_laplacian_inradius_formula(self):
        for dom, r in ((Ball(1.0), 1.0), (Box(1, 1), 0.5), (LShape(7, 1), 2 - math.sqrt(2))):
            lb = bounds.lower_bound(OperatorSpec.infinity_laplacian(), dom)
            assert lb.value == pytest.approx((math.pi / (2 * r)) ** 2, rel=1e-14)
            assert lb.method == "exact"

    def test_gradient_limit_one_over_r(self):
        lb = bounds.lower_bound(OperatorSpec.gradient_limit(), Ball(2.0))
        assert lb.value == 0.5
        assert lb.method == "exact"

    def test_p_greater_than_n_first_zero_formula(self):
        op = OperatorSpec.p_laplacian(4, 2)
        lb = bounds.lower_bound(op, Ball(1.0))
        alpha = (4 - 2) / (2 * (4 - 1))
        expected = (3 / 4) * specfun.first_zero(alpha - 1.0, "J") ** 2
        assert lb.value == pytest.approx(expected, rel=1e-12)
        assert lb.method == "theorem1"

    def test_square_first_gap_value(self):
        lb = bounds.lower_bound(OperatorSpec.laplacian(2), Box(1, 1), k_max=1)
        expected = ((J11 - J01) / 0.5) ** 2
        assert lb.value == pytest.approx(expected, rel=1e-10)
        assert lb.value == pytest.approx(8.1439, abs=2e-4)
        assert lb.method == "theorem2-J"
        assert lb.zero_gap.k == 1

    def test_laplacian_3d_scan_approaches_limit(self):
        lb = bounds.lower_bound(OperatorSpec.laplacian(3), Ball(1.0, n=3), k_max=64)
        assert 0.98 * PI_HALF_SQ <= lb.value <= PI_HALF_SQ * (1 + 1e-9)

    def test_pucci_example_reaches_half_pi_squared(self):
        # gamma=1, Gamma=2, n=2 has the same exponent as the 3D laplacian
        lb = bounds.lower_bound(OperatorSpec.pucci(1, 2, 2), Box(1, 1), k_max=64)
        target = (math.pi / (2 * 0.5)) ** 2
        assert 0.98 * target <= lb.value <= target * (1 + 1e-9)

    def test_pucci_coefficient_scales_bound(self):
        lb1 = bounds.lower_bound(OperatorSpec.pucci(1, 2, 2), Box(1, 1), k_max=4)
        lb2 = bounds.lower_bound(OperatorSpec.pucci(2, 4, 2), Box(1, 1), k_max=4)
        assert lb2.value == pytest.approx(2 * lb1.value, rel=1e-12)

    def test_scan_running_max_never_decreases(self):
        values = [bounds.lower_bound(OperatorSpec.laplacian(2), Box(1, 1), k_max=k).value
                  for k in (1, 2, 4, 8, 16)]
        assert all(a <= b + 1e-14 for a, b in zip(values, values[1:]))

    def test_inradius_only_convex(self):
        lb = bounds.lower_bound(OperatorSpec.laplacian(2), InradiusOnly(0.5), k_max=1)
        assert lb.value == pytest.approx(((J11 - J01) / 0.5) ** 2, rel=1e-10)

    def test_inradius_only_nonconvex_needs_shape(self):
        with pytest.raises(UnsupportedError):
            bounds.lower_bound(OperatorSpec.laplacian(2),
                               InradiusOnly(0.5, convex=False), k_max=1)

    def test_inradius_only_nonconvex_r_only_routes_fine(self):
        lb = bounds.lower_bound(OperatorSpec.infinity_laplacian(),
                                InradiusOnly(0.5, convex=False))
        assert lb.value == pytest.approx((math.pi / 1.0) ** 2, rel=1e-14)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            bounds.lower_bound(OperatorSpec.laplacian(3), Box(1, 1))


class TestUpperBound:
    def test_ball_eigenvalue_p_laplacian(self):
        op = OperatorSpec.p_laplacian(4, 2)
        ub = bounds.upper_bound(op, Ball(1.0))
        alpha = (4 - 2) / (2 * (4 - 1))
        assert ub.value == pytest.approx((3 / 4) * specfun.first_zero(-alpha, "J") ** 2,
                                         rel=1e-12)
        assert ub.method == "ball-eigenvalue"

    def test_laplacian_3d_unit_ball_is_pi_squared(self):
        ub = bounds.upper_bound(OperatorSpec.laplacian(3), Ball(1.0, n=3))
        assert ub.value == pytest.approx(math.pi ** 2, rel=1e-12)

    def test_infinity_laplacian_upper_equals_lower(self):
        op = OperatorSpec.infinity_laplacian()
        dom = LShape(7, 1)
        assert bounds.upper_bound(op, dom).value == bounds.lower_bound(op, dom).value

    def test_pucci_upper_absent(self):
        assert bounds.upper_bound(OperatorSpec.pucci(1, 2, 2), Box(1, 1)) is None

    def test_strongly_degenerate_exponent_upper_absent(self):
        # alpha = (1.1 - 3)/(2 * 0.1) = -9.5 <= -1: no ball formula
        op = OperatorSpec.p_laplacian(1.1, 3)
        assert bounds.upper_bound(op, InradiusOnly(1.0)) is None


class TestRfk:
    def test_sharp_on_balls(self):
        assert bounds.rfk_bound(Ball(1.0, n=3)) == pytest.approx(math.pi ** 2, rel=1e-12)
        assert bounds.rfk_bound(Ball(1.0, n=2)) == pytest.approx(J01 ** 2, rel=1e-10)

    def test_volume_eight_balls_gives_quarter(self):
        # |domain| = 8 |B_R| turns the volume bound into exactly (pi/2R)^2
        r = 1.0
        vol = 8 * geometry.volume(Ball(r, n=3))
        height = vol / math.pi   # cylinder radius 1
        got = bounds.rfk_bound(Cylinder(1.0, height))
        assert got == pytest.approx((math.pi / (2 * r)) ** 2, rel=1e-12)

    def test_unsupported_dimension(self):
        with pytest.raises(UnsupportedError):
            bounds.rfk_bound(Ball(1.0, n=4))
        with pytest.raises(UnsupportedError):
            bounds.rfk_bound(InradiusOnly(1.0))


class TestFullReport:
    def test_infinity_laplacian_lshape(self):
        rep = bounds.full_report(OperatorSpec.infinity_laplacian(), LShape(7, 1))
        r = 1.0 / (1.0 + 1.0 / math.sqrt(2.0))
        assert rep.R == pytest.approx(r, abs=1e-15)
        assert rep.lower == rep.upper == pytest.approx((math.pi / (2 * r)) ** 2, rel=1e-14)
        assert rep.certificate.report.verified

    def test_square_sandwich_fields(self):
        rep = bounds.full_report(OperatorSpec.laplacian(2), Box(1, 1), k_max=1)
        assert rep.lower == pytest.approx(8.1439, abs=2e-4)
        assert rep.upper == pytest.approx((J01 / 0.5) ** 2, rel=1e-10)
        assert rep.upper == pytest.approx(23.13, abs=5e-3)
        assert rep.lower <= 2 * math.pi ** 2 <= rep.upper
        assert rep.rfk is not None
        assert rep.zero_gap.family == "J"
        assert rep.delta_used is not None and rep.r_delta_used is not None

    def test_gradient_limit_ball(self):
        rep = bounds.full_report(OperatorSpec.gradient_limit(), Ball(2.0))
        assert rep.lower == rep.upper == 0.5
        assert rep.certificate.report.max_residual == 0.0

    def test_certificates_always_verified(self):
        cases = [
            (OperatorSpec.laplacian(2), Box(1, 2), 8),
            (OperatorSpec.laplacian(3), Ball(1.0, n=3), 8),
            (OperatorSpec.p_laplacian(4, 2), Ball(1.0), 8),
            (OperatorSpec.p_laplacian(1.5, 2), Ball(1.0), 8),
            (OperatorSpec.pucci(1, 2, 2), Box(1, 1), 8),
            (OperatorSpec.infinity_laplacian(), UShape(3, 1, 2), 8),
        ]
        for op, dom, k in cases:
            rep = bounds.full_report(op, dom, k_max=k)
            assert rep.certificate.report.verified
            if rep.upper is not None:
                assert rep.lower <= rep.upper * (1 + 1e-12)

    def test_domain_monotonicity(self):
        op = OperatorSpec.laplacian(2)
        small = bounds.full_report(op, Box(1, 1), k_max=4)
        large = bounds.full_report(op, Box(2, 2), k_max=4)
        assert small.R <= large.R
        assert small.lower >= large.lower
        assert small.upper >= large.upper

    @settings(max_examples=12, deadline=None)
    @given(s=st.floats(min_value=0.1, max_value=10.0))
    def test_scale_covariance(self, s):
        op = OperatorSpec.laplacian(2)
        base = bounds.full_report(op, Ball(1.0), k_max=2)
        scaled = bounds.full_report(op, Ball(s), k_max=2)
        assert scaled.lower == pytest.approx(base.lower / s ** 2, rel=1e-10)
        assert scaled.upper == pytest.approx(base.upper / s ** 2, rel=1e-10)
        gl = bounds.full_report(OperatorSpec.gradient_limit(), Ball(s))
        assert gl.lower == pytest.approx(1.0 / s, rel=1e-12)

    def test_report_round_trips_to_dict(self):
        rep = bounds.full_report(OperatorSpec.laplacian(2), Box(1, 1), k_max=2)
        d = rep.to_dict()
        assert d["lower"] == rep.lower
        assert d["zero_gap"]["k"] == rep.zero_gap.k
        assert d["certificate"]["residual"]["verified"] is True
        assert d["domain"] == {"shape": "box", "sides": [1.0, 1.0]}

    def test_nonconvex_polygon_pads_inradius(self):
        poly = geometry.Polygon([(0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)])
        rep = bounds.full_report(OperatorSpec.infinity_laplacian(), poly)
        assert rep.resolution > 0.0
        r_exact = geometry.inradius(LShape(3, 1))
        # padded radii keep both bounds conservative
        assert rep.lower <= (math.pi / (2 * r_exact)) ** 2
        assert rep.upper >= (math.pi / (2 * r_exact)) ** 2
        assert rep.lower < rep.upper

    def test_nonconvex_polygon_annular_route_is_conservative(self):
        # distance-transform dilation geometry underbids the exact formulas
        poly = geometry.Polygon([(0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)])
        rep = bounds.full_report(OperatorSpec.laplacian(2), poly, k_max=1)
        exact = bounds.full_report(OperatorSpec.laplacian(2), LShape(3, 1), k_max=1)
        assert rep.lower_method.startswith("theorem2")
        assert rep.lower <= exact.lower
        assert rep.lower > 0.85 * exact.lower
        assert rep.certificate.report.verified


class TestPScan:
    def test_bounds_sandwich_and_skip(self):
        rows = bounds.p_limit_scan(2, 1.0, [2, 3, 100])
        assert rows[0].skipped and rows[0].lower is None
        for row in rows[1:]:
            assert not row.skipped
            assert row.lower < row.upper

    def test_convergence_to_infinity_laplacian_value(self):
        rows = bounds.p_limit_scan(2, 1.0, [1e2, 1e4, 1e6])
        gaps_lo = [abs(r.lower - PI_HALF_SQ) for r in rows]
        gaps_hi = [abs(r.upper - PI_HALF_SQ) for r in rows]
        assert gaps_lo == sorted(gaps_lo, reverse=True)
        assert gaps_hi == sorted(gaps_hi, reverse=True)
        assert gaps_lo[-1] < 1e-3 and gaps_hi[-1] < 1e-3

    def test_ratio_never_exceeds_one(self):
        for row in bounds.p_limit_scan(3, 0.7, [3.5, 4, 10, 100]):
            assert row.lower / row.upper <= 1.0

    def test_invalid_inradius(self):
        with pytest.raises(ValueError):
            bounds.p_limit_scan(2, -1.0, [3.0])


class TestCertificateIntegrity:
    def test_rate_bump_flips_residual(self):
        cases = [
            (OperatorSpec.p_laplacian(4, 2), Ball(1.0)),
            (OperatorSpec.laplacian(2), Box(1, 1)),
            (OperatorSpec.laplacian(3), Ball(1.0, n=3)),
            (OperatorSpec.pucci(1, 2, 2), Box(1, 1)),
        ]
        for op, dom in cases:
            rep = bounds.full_report(op, dom, k_max=4)
            bumped = radial.verify_supersolution(
                op, rep.certificate.profile, 1.05 * rep.certificate.lam)
            assert bumped.max_residual > 0.0
            assert not bumped.verified
