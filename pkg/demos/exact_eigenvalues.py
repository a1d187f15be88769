"""Two operators whose principal Dirichlet eigenvalue this library pins down
exactly from the inradius alone.

The normalized infinity laplacian has eigenvalue (pi/2R)^2 on any domain of
inradius R: sin(pi r / 2R), composed with the distance to the complement, is
both an eigenfunction candidate on the inscribed ball and an admissible
barrier from the other side.  The min-form operator that appears as the
p -> infinity limit of the p-laplacian eigenvalue problem has eigenvalue 1/R
the same way, with the profile phi(r) = r.

L-shaped domains are where inradius-based bounds shine: any enclosing disk
or strip grows linearly with the leg length, while R stays fixed.
"""

import math

import numpy as np

from eigenbound import (LShape, OperatorSpec, full_report, InradiusOnly,
                        residual)

print("=== normalized infinity laplacian on L-shaped domains ===\n")
for leg in (2, 7, 100):
    dom = LShape(leg, 1)
    rep = full_report(OperatorSpec.infinity_laplacian(), dom)
    print(f"L-shape(leg={leg:>3}, width=1): R = {rep.R:.12f}  "
          f"lambda_1 = {rep.lower:.12f}   (lower == upper: {rep.lower == rep.upper})")

r = 1 / (1 + 1 / math.sqrt(2))
print(f"\nThe inradius never changes: the corner ball has radius {r:.12f},")
print(f"so lambda_1 = (pi/2R)^2 = {(math.pi / (2 * r)) ** 2:.12f} for every leg length.")

# even an unbounded L-shape works: only R enters
rep = full_report(OperatorSpec.infinity_laplacian(), InradiusOnly(r))
print(f"inradius-only input (leg -> infinity): lambda_1 = {rep.lower:.12f}")

print("\n=== gradient-limit operator: min(-D2_inf u, |grad u| - lambda u) ===\n")
for R in (0.5, 1.0, 2.0):
    rep = full_report(OperatorSpec.gradient_limit(), InradiusOnly(R))
    print(f"R = {R}: lambda_1 = {rep.lower}   certificate residual = "
          f"{rep.certificate.report.max_residual}")

# the linear profile satisfies the min-form inequality with equality
op = OperatorSpec.gradient_limit()
rep = full_report(op, InradiusOnly(1.0))
rs = np.linspace(0.01, 0.999, 7)
print("\nresidual of phi(r) = r at lambda = 1/R, sampled:",
      residual(op, rep.certificate.profile, 1.0, rs))
