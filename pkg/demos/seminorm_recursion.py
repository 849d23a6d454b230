"""Norms of multilinear components, insertion constants and radius estimates.

Run as ``python3 demos/seminorm_recursion.py``.
"""

from envalg.catalog import gaussian_functional, laplace_functional, spin_half
from envalg.functionals import (
    beta_component,
    growth_diagnostics,
    insertion_constants,
    pnorm,
    radius_estimate,
    recursion_check,
    symmetrize,
)
from envalg.gns import analytic_diagnostics, functional_from_rep

rep = spin_half()
lam = functional_from_rep(rep, 6)

print("Spin-1/2 matrix-coefficient functional on so(3), degree <= 6")
print("  ||beta_n^s||_p for n = 1..5:")
for n in range(1, 6):
    norm = pnorm(symmetrize(beta_component(lam, n)))
    print(f"    n={n}: {norm.to_float():.6g}  (squared {norm.squared})")

print("  insertion constants c_n:")
for n in range(0, 4):
    c = insertion_constants(lam, n)
    print(f"    c_{n} = {c.to_float():.6g}")

print()
print(recursion_check(lam, 4))

print()
est = radius_estimate(lam)
print(" ", est, "(exactly 2:", est.equals_rational(2), ")")

print()
print("Growth diagnostics (symmetrized vs raw partial sums at t=1):")
sym, raw = growth_diagnostics(lam)
print("  symmetrized:", [f"{v:.4f}" for v in sym])
print("  raw:        ", [f"{v:.4f}" for v in raw])

print()
print("Factor-2 consistency on g = R with moments of 1/(1+t^2):")
lap = laplace_functional(40)
print("  functional radius estimate:", radius_estimate(lap, max_n=20).value)
diag = analytic_diagnostics(lap, lap.spec.basis_vector(0), 20)
print("  vector-series root-test estimate:", f"{diag.vector_radius_estimate:.4f}")
print("  ratio to half the functional estimate:", f"{diag.factor2_ratio:.4f}")

print()
print("Gaussian moments: per-degree roots fall, so the length-limited")
print("estimate is driven by the first even degree:")
g = radius_estimate(gaussian_functional(16))
for n, root in g.per_degree:
    if root is not None:
        print(f"  n={n}: root {root.to_float():.6f}")
print("  estimate:", g.value)
