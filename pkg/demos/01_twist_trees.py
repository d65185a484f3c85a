"""Walking the twist automaton by hand.

Every product of basis vectors is a signed basis vector,
``e_p e_q = omega(p, q) e_{p ^ q}``. The sign is found by writing p and q in
binary, pairing their bits into doublets, and feeding the doublets to a
five-label automaton (C, T, L, D, I) that carries a running sign.

Run with ``python demos/01_twist_trees.py``.
"""
from cdtwist import P_VARIANTS, basis_product, shuffle_doublets, twist, walk
from cdtwist.basis import format_path

# %% Doublet paths
# p's bit comes first in each doublet; the shorter number is padded with 0s.
for p, q in [(3, 1), (26, 42), (25, 17)]:
    print(f"[{p};{q}] = {format_path(shuffle_doublets(p, q))}")

# %% The quaternion case: e3 e1 = e2, i.e. k i = j
for d, state in walk(3, 1, "P0"):
    print(f"  {d} -> {state}")
print("e3 e1 = %+d e%d" % basis_product(3, 1, "P0"))

# %% A longer walk under P3: e25 e17
# 11 drops to -D, 10 to -I, then the I3 rules flip the sign on 11 only.
for d, state in walk(25, 17, "P3"):
    print(f"  {d} -> {state}")
print("e25 e17 = %+d e%d" % basis_product(25, 17, "P3"))

# %% The four products only differ once the walk reaches I
print("omega(5, 2) per product:", {str(v): twist(5, 2, v) for v in P_VARIANTS})

# %% Transposes swap the arguments at the basis level
print("omega(5, 2) under T1 == omega(2, 5) under P1:", twist(5, 2, "T1"), twist(2, 5, "P1"))

# %% Huge indices cost one step per bit
p, q = 2**62 + 12345, 2**61 + 999
print(f"omega({p}, {q}) under P3 = {twist(p, q, 'P3'):+d}")
