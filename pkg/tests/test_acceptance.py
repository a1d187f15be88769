"""Acceptance suite: one test per criterion, each printing a pass line with
its measured runtime.  Tolerances are pinned to the stated values."""

import math
import time

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from eigenbound import bounds, geometry, oracle, radial, specfun
from eigenbound.bounds import InradiusOnly
from eigenbound.geometry import Ball, Box, Cylinder, LShape, Polygon, UShape
from eigenbound.radial import OperatorSpec, chebyshev_nodes

PI_HALF_SQ = (math.pi / 2.0) ** 2


class _Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        if exc_type is None:
            assert elapsed < self.seconds, (
                f"{self.name}: runtime {elapsed:.2f}s exceeds budget {self.seconds}s")
            print(f"PASS {self.name} ({elapsed:.2f}s)")
        else:
            print(f"FAIL {self.name} ({elapsed:.2f}s)")
        return False


def test_criterion_01_infinity_laplacian_exactness():
    with _Budget("criterion 1: infinity-laplacian exactness", 1.0):
        op = OperatorSpec.infinity_laplacian()
        for r in (0.5, 1.0, 2.0, 0.585786):
            rep = bounds.full_report(op, InradiusOnly(r))
            target = (math.pi / (2.0 * r)) ** 2
            assert abs(rep.lower - target) <= 1e-10
            assert abs(rep.upper - target) <= 1e-10
            assert rep.lower == rep.upper
            prof = rep.certificate.profile
            rs = chebyshev_nodes(prof.r_lo + 1e-9 * r, prof.r_hi - 1e-9 * r, 1000)
            res = radial.residual(op, prof, rep.certificate.lam, rs)
            assert np.max(np.abs(res)) <= 1e-10


def test_criterion_02_gradient_limit_exactness():
    with _Budget("criterion 2: gradient-limit exactness", 1.0):
        op = OperatorSpec.gradient_limit()
        for r in (0.5, 1.0, 3.0):
            rep = bounds.full_report(op, InradiusOnly(r))
            assert rep.lower == rep.upper == pytest.approx(1.0 / r, rel=1e-14)
            rs = np.linspace(1e-6 * r, r * (1 - 1e-9), 1000)
            assert all(min(0.0, 1.0 - s / r) == 0.0 for s in rs)
            res = radial.residual(op, rep.certificate.profile, rep.certificate.lam, rs)
            assert np.all(res == 0.0)


def test_criterion_03_p_to_infinity_convergence():
    with _Budget("criterion 3: p -> infinity convergence", 5.0):
        rows = bounds.p_limit_scan(2, 1.0, [1e2, 1e4, 1e6])
        gaps_lo = [abs(r.lower - PI_HALF_SQ) for r in rows]
        gaps_hi = [abs(r.upper - PI_HALF_SQ) for r in rows]
        assert gaps_lo[0] > gaps_lo[1] > gaps_lo[2]
        assert gaps_hi[0] > gaps_hi[1] > gaps_hi[2]
        assert gaps_lo[2] < 1e-3 and gaps_hi[2] < 1e-3


def test_criterion_04_ball_formula_cross_validation():
    with _Budget("criterion 4: shooting vs ball formula", 10.0):
        for p, n in ((2, 2), (2, 3), (4, 2), (10, 3)):
            op = OperatorSpec.laplacian(n) if p == 2 else OperatorSpec.p_laplacian(p, n)
            alpha = radial.profile_exponent(op)
            formula = radial.eigenvalue_coefficient(op) * specfun.first_zero(-alpha, "J") ** 2
            lam = oracle.radial_shoot_ball_lambda1(op, 1.0, tol=1e-9)
            assert abs(lam - formula) <= 1e-6
            if (p, n) == (2, 3):
                assert abs(lam - math.pi ** 2) <= 1e-6


def test_criterion_05_unit_square_sandwich():
    with _Budget("criterion 5: unit-square sandwich", 60.0):
        op = OperatorSpec.laplacian(2)
        rep1 = bounds.full_report(op, Box(1, 1), k_max=1)
        assert rep1.lower == pytest.approx(8.143, abs=1.5e-3)
        assert rep1.upper == pytest.approx(23.13, abs=5e-3)
        grid = oracle.fd_laplacian_lambda1(Box(1, 1), 1 / 256)
        assert grid.lambda_h == pytest.approx(2 * math.pi ** 2, rel=1e-3)
        assert rep1.lower <= grid.lambda_h * 1.01
        assert grid.lambda_h <= rep1.upper * 1.01


def test_criterion_06_lshape_sandwich():
    with _Budget("criterion 6: L-shape sandwich", 60.0):
        op = OperatorSpec.laplacian(2)
        dom = LShape(3, 1)
        assert geometry.inradius(dom) == pytest.approx(1 / (1 + 1 / math.sqrt(2)), abs=1e-15)
        rep = bounds.full_report(op, dom)
        grid = oracle.fd_laplacian_lambda1(dom, 1 / 256)
        assert rep.lower < grid.lambda_h * 1.01
        assert grid.lambda_h < rep.upper * 1.01


def test_criterion_07_laplacian_3d_scan():
    with _Budget("criterion 7: 3D laplacian scanned bound", 5.0):
        lb = bounds.lower_bound(OperatorSpec.laplacian(3), Ball(1.0, n=3), k_max=64)
        assert lb.value >= 0.98 * PI_HALF_SQ
        assert lb.value <= PI_HALF_SQ * (1.0 + 1e-9)


def test_criterion_08_rfk_crossover():
    with _Budget("criterion 8: volume-bound crossover", 5.0):
        # |domain| = 8 |B_R|  ==>  the volume bound equals (pi/2R)^2 exactly
        r = 1.0
        vol = 8.0 * geometry.volume(Ball(r, n=3))
        dom_equal = Cylinder(1.0, vol / math.pi)
        assert abs(bounds.rfk_bound(dom_equal) - PI_HALF_SQ) <= 1e-10
        # a 20-tall cylinder has even more volume, so the scanned bound wins
        tall = Cylinder(1.0, 20.0)
        assert geometry.volume(tall) > vol
        scanned = bounds.lower_bound(OperatorSpec.laplacian(3), tall, k_max=64).value
        assert scanned > bounds.rfk_bound(tall)


def test_criterion_09_convexity_lemma():
    with _Budget("criterion 9: convex dilation identity", 30.0):
        rng = np.random.default_rng(12345)
        for _ in range(50):
            pts = rng.normal(size=(rng.integers(6, 20), 2)) * rng.uniform(0.5, 4.0)
            poly = Polygon(pts[ConvexHull(pts).vertices])
            r = geometry.inradius(poly)
            for delta in (0.1, 0.5, 2.0):
                assert abs(geometry.dilated_inradius(poly, delta) - (r + delta)) <= 1e-8
        u = UShape(3, 1, 2)
        gap = geometry.dilated_inradius(u, 0.75) - (geometry.inradius(u) + 0.75)
        assert gap > 0.01


def test_criterion_10_bessel_substrate():
    with _Budget("criterion 10: Bessel zeros vs scan oracle", 10.0):
        assert abs(specfun.first_zero(0.5, "J") - math.pi) <= 1e-12
        assert abs(specfun.first_zero(-0.5, "J") - 0.5 * math.pi) <= 1e-12
        for nu in (-0.49, -0.25, 0.0, 0.25, 0.49):
            table = specfun.zero_table(nu, "J", 20)
            scanned = oracle.bessel_zero_scan(nu, "J", table.zeros[-1] + 0.5)
            assert len(scanned) >= 20
            for a, b in zip(table.zeros, scanned):
                assert abs(a - b) <= 1e-10
            below = specfun.zero_table(nu - 1.0, "J", 22).zeros
            for a, b in zip(table.zeros[:-1], table.zeros[1:]):
                assert sum(1 for z in below if a < z < b) == 1


def test_criterion_11_certificate_integrity():
    with _Budget("criterion 11: certificate integrity", 30.0):
        matrix = [
            (OperatorSpec.p_laplacian(4, 2), Ball(1.0)),        # origin-anchored
            (OperatorSpec.p_laplacian(3, 2), Box(1, 1)),        # origin-anchored
            (OperatorSpec.p_laplacian(1.5, 2), Ball(1.0)),      # annular, p < n
            (OperatorSpec.laplacian(2), Box(1, 1)),             # annular
            (OperatorSpec.laplacian(2), LShape(3, 1)),          # annular, nonconvex
            (OperatorSpec.laplacian(3), Ball(1.0, n=3)),        # annular
            (OperatorSpec.pucci(1, 2, 2), Box(1, 1)),           # annular
            (OperatorSpec.pucci(2, 3, 2), Ball(1.0)),           # annular
        ]
        for op, dom in matrix:
            rep = bounds.full_report(op, dom)
            assert rep.lower_method.startswith("theorem")
            assert rep.certificate.report.verified
            bumped = radial.verify_supersolution(
                op, rep.certificate.profile, 1.05 * rep.certificate.lam)
            assert bumped.max_residual > 0.0
