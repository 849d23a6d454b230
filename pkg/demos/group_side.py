"""The floating-point group side: local group law, kernels, Cauchy bounds.

Run as ``python3 demos/group_side.py``.
"""

from fractions import Fraction

from envalg.catalog import heisenberg_rep, so3, spin_half
from envalg.group_integration import (
    cauchy_estimate_check,
    local_hom_check,
    matrix_coefficient,
    pd_kernel_check,
    sample_group,
)
from envalg.lie_structure import GVector
from envalg.scalars import Scalar

SO3 = so3()
rep = spin_half()


def vec(spec, *cs):
    return GVector(spec, [Scalar(Fraction(c)) for c in cs])


print("Order of the truncated group law exp(R(rx)) exp(R(ry)) vs exp(R(rx * ry)):")
x = vec(SO3, "1/2", 0, "1/3")
y = vec(SO3, 0, "2/5", "-1/4")
scales = [Fraction(1, 5), Fraction(1, 10), Fraction(1, 20), Fraction(1, 40)]
for N in (2, 3, 4):
    print(" ", local_hom_check(rep, x, y, N, scales))

hrep = heisenberg_rep()
hx = vec(hrep.spec, 1, 0, "1/3")
hy = vec(hrep.spec, 0, 1, "-1/2")
print(" ", local_hom_check(hrep, hx, hy, 2, scales),
      "(nilpotent class 2: truncation at degree 2 is already exact)")

print()
print("Matrix-coefficient kernels are Gram matrices, hence PSD:")
sample = sample_group(rep, 20, seed=0)
print(" ", pd_kernel_check(sample))
phis = matrix_coefficient(sample)
print(f"  |phi(g)| <= 1 for unitary g: max = {max(abs(p) for p in phis):.6f}")

print()
print("Factorial derivative bounds along exp(t R(e3)) v:")
report = cauchy_estimate_check(rep, SO3.basis_vector(2), r=1.0, n_max=8)
print(f"  boundary-grid constant C = {report.C:.6g}")
for n, lhs, bound in report.rows:
    print(f"  n={n}: ||R^n v|| = {lhs:.6g} <= {bound:.6g}")
