"""Walk through the truncated BCH series and the exponential group law.

Run as ``python3 demos/bch_series.py``.
"""

from envalg.free_algebra import (
    FreeSeries,
    fa_bch,
    fa_bidegree_project,
    fa_check_exp_identity,
    fa_exp,
)

N = 6
z = fa_bch(N)

print(f"BCH series Z = log(exp(X) exp(Y)) truncated at degree {N}")
for degree in range(1, N + 1):
    part = z.homogeneous_part(degree)
    print(f"  degree {degree}: {len(part.terms)} words")
    if degree <= 3:
        for word in sorted(part.terms, key=lambda w: w):
            label = "".join("XY"[l] for l in word)
            print(f"    {label}: {part.terms[word]}")

print()
print("The degree-2 part is the half-commutator:")
print(" ", fa_bidegree_project(z, 1, 1).terms)

x = FreeSeries.letter(2, N, 0)
y = FreeSeries.letter(2, N, 1)
print()
print("Group law check: exp(X) exp(Y) == exp(Z) modulo degree", N + 1, "->",
      fa_exp(x) * fa_exp(y) == fa_exp(z))

print()
print("Bidegree exponential identity x^m y^n/(m! n!) = sum_k T_mn((x*y)^k)/k!:")
for m, n in [(1, 1), (2, 1), (2, 2), (3, 2)]:
    print(" ", fa_check_exp_identity(m, n))
