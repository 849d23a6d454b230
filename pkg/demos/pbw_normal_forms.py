"""PBW normal forms, the star involution and rewriting confluence.

Run as ``python3 demos/pbw_normal_forms.py``.
"""

import random

from envalg.catalog import heisenberg, so3
from envalg.lie_structure import PBWPoly, bch_in_g, pbw_mul, pbw_reduce, star
from envalg.sampling import random_word

heis = heisenberg()
print("Heisenberg algebra, basis order p < q < z, [p, q] = z")
print("  reduce q p      ->", pbw_reduce(heis, (1, 0)))
print("  reduce q p p    ->", pbw_reduce(heis, (1, 0, 0)))
print("  reduce q q p p  ->", pbw_reduce(heis, (1, 1, 0, 0)))

p = PBWPoly.generator(heis, 0)
q = PBWPoly.generator(heis, 1)
pq = pbw_mul(p, q)
print("  (pq)^*          ->", star(pq), " (reversal with signs, then reduce)")

print()
print("BCH evaluated inside the algebra (exact for nilpotent class 2):")
print("  p * q =", bch_in_g(heis.basis_vector(0), heis.basis_vector(1), 4))

print()
s = so3()
print("so(3): multiply-then-reduce equals reduce-then-multiply on random words")
rng = random.Random(0)
agree = 0
for _ in range(200):
    w1 = random_word(s, rng, max_length=5)
    w2 = random_word(s, rng, max_length=5)
    if pbw_reduce(s, w1 + w2) == pbw_mul(pbw_reduce(s, w1), pbw_reduce(s, w2)):
        agree += 1
print(f"  {agree}/200 pairs agree exactly")
