"""Shrinking index pairs without changing their twist.

Two modular identities let a pair (p, q) be replaced by a much smaller pair
with the same sign, up to a recorded factor of -1 when the arguments are
swapped.

Run with ``python demos/03_periodicity.py``.
"""
import numpy as np

from cdtwist import P_VARIANTS, canonicalize, canonicalize_arrays, reduce_t4, reduce_t5, twist

# %% Folding the larger index above the smaller one's octave
print("reduce_t4(5, 481) =", reduce_t4(5, 481))
# %% Stripping high bits shared by two indices of the same length
print("reduce_t5(483, 481) =", reduce_t5(483, 481))

# %% Full reductions with their traces
for p, q in [(5, 481), (481, 5), (483, 481), (9, 9), (123456789, 987654321)]:
    t = canonicalize(p, q)
    print(f"({p}, {q}) -> {t.canonical} sign {t.total_sign:+d}")
    for s in t.steps:
        print(f"    {s.rule.value:12s} N={s.octave_N} {s.before} -> {s.after}")
    assert all(twist(p, q, v) == t.total_sign * twist(*t.canonical, v) for v in P_VARIANTS)

# %% How much smaller does it get?
rng = np.random.default_rng(1)
p, q = rng.integers(0, 1 << 40, size=(2, 100_000))
cp, cq, _ = canonicalize_arrays(p, q)
print("median bit length before:", np.median(np.log2(np.maximum(p, q) + 1)).round(1))
print("median bit length after: ", np.median(np.log2(np.maximum(cp, cq) + 1)).round(1))

# %% Distinct canonical pairs among all pairs of a 2**10-dimensional algebra
idx = np.arange(1024)
P, Q = np.meshgrid(idx, idx, indexing="ij")
cp, cq, _ = canonicalize_arrays(P, Q)
keys = np.unique(np.minimum(cp, cq) * 4096 + np.maximum(cp, cq))
print(f"{P.size} pairs, {keys.size} distinct canonical pairs")
