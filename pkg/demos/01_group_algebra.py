"""A tour of GF(2^ell)[Z_2^k]: the field, the group algebra, and why squares vanish.

Run with ``python3 demos/01_group_algebra.py``.
"""

import numpy as np

from kpath import gf2e
from kpath import group_algebra as ga
from kpath.oracle import gf2_rank

# %% The field GF(4) = GF(2)[x] / (x^2 + x + 1).  Elements are bitmasks.
f4 = gf2e.field_for_ell(2)
x = 0b10
print("x^2      =", bin(gf2e.mul(f4, x, x)))  # 1 + x
print("x^3      =", gf2e.power(f4, x, 3))  # back to 1
print("x + (1+x)=", gf2e.add(f4, x, 0b11))

# %% Group elements are k-bit masks; the group law is xor.  An algebra
# element is a dense vector of 2^k coefficients.
a = ga.from_terms({0b000: 1, 0b101: x}, 3, f4)
b = ga.from_terms({0b000: 1, 0b101: 1, 0b111: 1}, 3, f4)
print("a + b =", a + b)
print("a * b =", a * b)

# the slow convolution and the transform-based product agree
print("naive == fast:", ga.mul_naive(a, b) == ga.mul_fast(a, b))

# %% Every group element is its own inverse, so (1 + v)^2 = 1 + 2v + v^2 = 0.
spec = gf2e.field_for_k(4)
e = ga.linear(0b0110, 4, spec)
print("(1 + v)^2 is zero:", ga.is_zero(e * e))

# %% Products of linear factors: zero for dependent vectors, and the sum of
# the whole span for independent ones.
for vs in ([1, 2, 4, 8], [1, 2, 3], [5, 9, 12, 3]):
    p = ga.elem_product(vs, 4, spec)
    print(f"{vs}: rank {gf2_rank(vs)}, nonzero coefficients {int(np.count_nonzero(p.coeffs))}")

# %% The probability that k random vectors are independent tends to ~0.289.
gen = np.random.default_rng(0)
for k in (2, 4, 8):
    hits = np.mean([gf2_rank(gen.integers(0, 1 << k, k)) == k for _ in range(4000)])
    exact = np.prod([1 - 2.0**-i for i in range(1, k + 1)])
    print(f"k={k}: full rank {hits:.3f} (exact {exact:.3f})")
