"""Moment matrices, exact positivity certificates and truncated GNS models.

Run as ``python3 demos/gns_models.py``.
"""

from envalg.catalog import gaussian_functional, spin_half, spin_one, spin_three_half
from envalg.gns import (
    functional_from_rep,
    gns_build,
    moment_matrix,
    orbit_gram,
    psd_check,
)

print("Gaussian moments on g = R: the signed Hankel matrix at degree 2")
M = moment_matrix(gaussian_functional(8), 2)
for row in M.rows:
    print("  ", [str(c) for c in row])
report = psd_check(M)
print("  exact pivots:", [str(p) for p in report.pivots],
      "->", "PASS" if report.ok else "FAIL")

print()
print("Spin ladder: the GNS quotient recovers the cyclic span")
for factory, two_j in ((spin_half, 1), (spin_one, 2), (spin_three_half, 3)):
    rep = factory()
    lam = functional_from_rep(rep, 2 * two_j)
    model = gns_build(lam, two_j)
    same = orbit_gram(rep, two_j) == model.gram.rows
    print(
        f"  {rep.name}: quotient rank {model.quotient_rank} "
        f"(expected {two_j + 1}), Gram matches orbit: {same}, "
        f"skewness exact: {model.skew_exact}"
    )

print()
print("Gram pivots certify positivity degree by degree (spin-1/2):")
lam = functional_from_rep(spin_half(), 8)
for d in range(0, 4):
    rep_d = psd_check(moment_matrix(lam, d))
    print(
        f"  degree {d}: size {rep_d.size}, rank {rep_d.rank}, "
        f"min pivot {min(rep_d.pivots) if rep_d.pivots else '-'}"
    )
