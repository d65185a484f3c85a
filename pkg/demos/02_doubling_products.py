"""The eight doubling products, multiplied the slow way.

``cdtwist.multiply`` applies the doubling formulas literally: split each
vector into its even and odd coefficients ``(a, b)``, recurse, and interleave
the result. It is exponential in the level but needs nothing else.

Run with ``python demos/02_doubling_products.py``.
"""
import numpy as np

from cdtwist import ALL_VARIANTS, DenseVector, conjugate, multiply, oracle_twist, twist

e = DenseVector.basis

# %% Quaternions: i, j, k = e1, e2, e3 under any of P0..P3
i, j, k = e(1, 2), e(2, 2), e(3, 2)
print("i j =", multiply(i, j, "P3").coefficients)
print("k i =", multiply(k, i, "P0").coefficients)

# %% The basis table read off the oracle matches the automaton
level = 4
mismatch = sum(
    oracle_twist(p, q, v) != twist(p, q, v)
    for v in ALL_VARIANTS
    for p in range(1 << level)
    for q in range(1 << level)
)
print("oracle/automaton mismatches on sedenion basis pairs:", mismatch)

# %% Conjugation negates everything but the real part
x = DenseVector(np.arange(1.0, 9.0))
print("x* =", conjugate(x).coefficients)
print("x x* =", multiply(x, conjugate(x), "P3").coefficients.round(12))

# %% Norms multiply for octonions only under k = 0 and 3
rng = np.random.default_rng(0)
a, b = (DenseVector(v) for v in rng.normal(size=(2, 8)))
for v in ALL_VARIANTS:
    ab = multiply(a, b, v)
    print(f"{v}: |ab| - |a||b| = {ab.norm() - a.norm() * b.norm():+.3e}")

# under P2 the 8-dimensional algebra already has zero divisors
print("(e1 + e2)(e4 + e7) under P2 =", multiply(e(1, 3) + e(2, 3), e(4, 3) + e(7, 3), "P2").coefficients)

# %% Pk and Tk are transposes, and since both are bilinear this holds for all vectors
x, y = (DenseVector(v) for v in rng.integers(-5, 6, size=(2, 16)).astype(float))
print("x y (P1) == y x (T1):", multiply(x, y, "P1") == multiply(y, x, "T1"))
