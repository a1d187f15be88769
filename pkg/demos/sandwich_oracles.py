"""Closed-form bounds sandwiching an independent finite-difference eigensolve.

For the plain laplacian in 2D we can check the certified bounds against a
completely different computation: rasterize the domain, assemble the 5-point
Dirichlet matrix, and run shifted inverse power iteration.  The discrete
eigenvalue must land between the annular-barrier lower bound and the
inscribed-ball upper bound.

The ODE-shooting oracle does the same job for balls, where the eigenvalue
has a Bessel closed form for every p.
"""

import math

from eigenbound import (Ball, Box, LShape, OperatorSpec, fd_laplacian_lambda1,
                        full_report, radial_shoot_ball_lambda1)

op = OperatorSpec.laplacian(2)
H = 1 / 128

print("=== 5-point oracle vs certified bounds (laplacian, n = 2) ===\n")
for name, dom, exact in [
    ("unit square", Box(1, 1), 2 * math.pi ** 2),
    ("unit disk", Ball(1.0), 5.783185962946785),
    ("L-shape(3,1)", LShape(3, 1), None),
]:
    rep = full_report(op, dom)
    grid = fd_laplacian_lambda1(dom, H)
    line = (f"{name:<13} lower {rep.lower:9.4f}  <=  lambda_h {grid.lambda_h:9.4f}"
            f"  <=  upper {rep.upper:9.4f}")
    if exact is not None:
        line += f"   (exact {exact:.4f})"
    print(line)
    assert rep.lower <= grid.lambda_h * 1.01 and grid.lambda_h <= rep.upper * 1.01

print("\nFor the square the volume-based comparison bound is sharper than the")
rep = full_report(op, Box(1, 1))
print(f"annular scan (it uses area, not just R): scan {rep.lower:.4f} vs "
      f"volume bound {rep.rfk:.4f}; both sit below 2 pi^2 = {2 * math.pi ** 2:.4f}.")

print("\n=== shooting oracle vs ball formulas ===\n")
for p, n in ((2, 2), (2, 3), (4, 2), (10, 3)):
    opn = OperatorSpec.laplacian(n) if p == 2 else OperatorSpec.p_laplacian(p, n)
    lam = radial_shoot_ball_lambda1(opn, 1.0, tol=1e-9)
    rep = full_report(opn, Ball(1.0, n=n) if n == 3 else Ball(1.0))
    print(f"p={p:>2} n={n}: shooting {lam:.9f}   ball formula {rep.upper:.9f}   "
          f"diff {abs(lam - rep.upper):.2e}")
