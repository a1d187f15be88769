"""The homogeneous p-laplacian eigenvalue squeezed between two Bessel-zero
formulas, and its p -> infinity limit.

For p > n the radial profiles give

    (p-1)/p (mu_1^(a-1) / R)^2  <=  lambda_{1,p}  <=  (p-1)/p (mu_1^(-a) / R)^2

with a = (p-n)/(2(p-1)) and mu_1^(nu) the first positive zero of J_nu.
As p grows, a -> 1/2, both zero orders converge to -1/2 where the first zero
is pi/2, and both sides collapse onto (pi/2R)^2: the infinity-laplacian
eigenvalue.  The table makes that collapse visible.
"""

import math

from eigenbound import p_limit_scan

R = 1.0
target = (math.pi / (2 * R)) ** 2

print(f"unit inradius, target (pi/2R)^2 = {target:.12f}\n")
print(f"{'p':>10}  {'lower':>16}  {'upper':>16}  {'gap lower':>11}  {'gap upper':>11}")
for row in p_limit_scan(2, R, [3, 10, 100, 1e3, 1e4, 1e5, 1e6]):
    print(f"{row.p:>10g}  {row.lower:>16.12f}  {row.upper:>16.12f}  "
          f"{abs(row.lower - target):>11.3e}  {abs(row.upper - target):>11.3e}")

print("\nBoth gap columns shrink monotonically; the eigenvalue of the")
print("p-laplacian converges to the infinity-laplacian value.")

print("\nEntries with p <= n are skipped (no origin-anchored profile exists):")
for row in p_limit_scan(3, R, [2, 2.5, 3]):
    print(" ", row.note)
