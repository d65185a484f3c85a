"""Invariant suites run by ``cdtwist verify``.

Every suite takes the bit budget and the variants to check, counts the
individual checks it made, and keeps the first counterexample it finds.
Expensive suites clip the budget: the oracle is exponential, so it stops at
7 bits, and vector products stop at level 6.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .automaton import twist, twist_array
from .basis import ALL_VARIANTS, ProductVariant, shuffle_doublets, unshuffle
from .kernel import TwistCache, multiply_fast, twist_memo
from .oracle import DenseVector, MalformedProductError, conjugate_array, multiply_arrays, oracle_twist_many
from .periodicity import bit_length_array, canonicalize, canonicalize_arrays

MAX_VERIFY_BITS = 10
ORACLE_BITS = 7
VECTOR_LEVELS = 6

# leaves of the quaternion tree, left to right, addressed by [p;q] for p, q < 4
QUATERNION_LEAVES = (1, 1, 1, -1, 1, 1, 1, -1, 1, -1, 1, 1, -1, 1, -1, -1)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: int = 0
    example: str | None = field(default=None)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok, describe) -> None:
        """Count an array (or scalar) of outcomes; ``describe(i)`` names failure i."""
        ok = np.asarray(ok, dtype=bool).ravel()
        self.checked += ok.size
        bad = np.flatnonzero(~ok)
        self.failures += bad.size
        if bad.size and self.example is None:
            self.example = describe(int(bad[0]))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.checked} checks, {self.failures} failures"
        if self.example:
            text += f" (first: {self.example})"
        return text


def _all_pairs(bits):
    n = 1 << bits
    p, q = np.meshgrid(np.arange(n, dtype=np.int64), np.arange(n, dtype=np.int64), indexing="ij")
    return p.ravel(), q.ravel()


def suite_xor_group(bits, variants, rng):
    res = SuiteResult("xor-group")
    if bits == 0:
        return res
    p, q, r = rng.integers(0, 1 << bits, size=(3, 4096))
    res.record((p ^ q) ^ r == p ^ (q ^ r), lambda i: f"associativity at {p[i], q[i], r[i]}")
    res.record(p ^ q == q ^ p, lambda i: f"commutativity at {p[i], q[i]}")
    res.record((p ^ p == 0) & (p ^ 0 == p), lambda i: f"inverse/identity at {p[i]}")
    return res


def suite_doublet_paths(bits, variants, rng):
    res = SuiteResult("doublet-paths")
    p, q = _all_pairs(min(bits, 7))
    for a, b in zip(p.tolist(), q.tolist()):
        path = shuffle_doublets(a, b)
        ok = unshuffle(path) == (a, b) and len(path) == max(a.bit_length(), b.bit_length())
        res.record(ok, lambda i: f"[{a};{b}]")
    return res


def suite_quaternion_tree(bits, variants, rng):
    res = SuiteResult("quaternion-tree")
    if bits < 2:
        return res
    for v in variants:
        for p in range(4):
            for q in range(4):
                # a transpose product reads its quaternion table transposed
                path = shuffle_doublets(q, p) if v.is_transpose else shuffle_doublets(p, q)
                leaf = sum(d.code << (2 * (len(path) - 1 - j)) for j, d in enumerate(path))
                res.record(twist(p, q, v) == QUATERNION_LEAVES[leaf], lambda i: f"{v} ({p},{q})")
    return res


def suite_identities(bits, variants, rng):
    """omega(p,0) = omega(0,p) = 1, omega(p,p) = -1, antisymmetry off the axes."""
    res = SuiteResult("unit-square-antisymmetry")
    p, q = _all_pairs(bits)
    for v in variants:
        w = twist_array(p, q, v)
        wt = twist_array(q, p, v)
        expect = np.where((p == 0) | (q == 0), 1, np.where(p == q, -1, -wt))
        res.record(w == expect, lambda i: f"{v} ({p[i]},{q[i]})")
    return res


def suite_transpose_basis(bits, variants, rng):
    res = SuiteResult("transpose-basis")
    p, q = _all_pairs(min(bits, 6))
    for k in range(4):
        pk, tk = ProductVariant(f"P{k}"), ProductVariant(f"T{k}")
        if pk not in variants and tk not in variants:
            continue
        try:
            ok = oracle_twist_many(q, p, tk) == oracle_twist_many(p, q, pk)
        except MalformedProductError as exc:
            res.record(False, lambda i: str(exc))
            continue
        res.record(ok, lambda i: f"k={k} ({p[i]},{q[i]})")
        res.record(twist_array(p, q, tk) == twist_array(q, p, pk), lambda i: f"automaton k={k} ({p[i]},{q[i]})")
    return res


def suite_oracle_equivalence(bits, variants, rng):
    res = SuiteResult("oracle-automaton")
    p, q = _all_pairs(min(bits, ORACLE_BITS))
    for v in variants:
        try:
            expect = oracle_twist_many(p, q, v)
        except MalformedProductError as exc:
            res.record(False, lambda i: f"{v}: {exc}")
            continue
        res.record(twist_array(p, q, v) == expect, lambda i: f"{v} ({p[i]},{q[i]})")
    return res


def _octave_range(n):
    return np.arange(1 << (n - 1), 1 << n, dtype=np.int64)


def suite_periodicity(bits, variants, rng):
    """Both periodicity identities, all valid pairs per octave, shifts k <= 8."""
    res = SuiteResult("periodicity")
    for n in range(1, min(bits, 6) + 1):
        low = _octave_range(n)
        high = np.arange(1 << n, 1 << (n + 1), dtype=np.int64)
        p2, q2 = (a.ravel() for a in np.meshgrid(low, high, indexing="ij"))
        p3, q3 = (a.ravel() for a in np.meshgrid(low, low, indexing="ij"))
        for v in variants:
            w2 = twist_array(p2, q2, v)
            w3 = twist_array(p3, q3, v)
            for k in range(9):
                shift = k << n
                res.record(w2 == twist_array(p2, q2 + shift, v), lambda i: f"first {v} N={n} k={k} ({p2[i]},{q2[i]})")
                res.record(w3 == twist_array(p3 + shift, q3 + shift, v), lambda i: f"second {v} N={n} k={k} ({p3[i]},{q3[i]})")
    return res


def suite_reduction(bits, variants, rng):
    res = SuiteResult("reduction")
    p, q = _all_pairs(bits)
    if bits >= 4:
        extra = rng.integers(0, 1 << 20, size=(2, 4096))
        p, q = np.concatenate([p, extra[0]]), np.concatenate([q, extra[1]])
    cp, cq, sign = canonicalize_arrays(p, q)
    for v in variants:
        res.record(twist_array(p, q, v) == sign * twist_array(cp, cq, v), lambda i: f"soundness {v} ({p[i]},{q[i]})")
    distinct = p != q
    bound = 2 << bit_length_array(p ^ q)
    res.record(~distinct | ((cp < bound) & (cq < bound)), lambda i: f"smallness ({p[i]},{q[i]})")
    cp2, cq2, sign2 = canonicalize_arrays(cp, cq)
    res.record((cp2 == cp) & (cq2 == cq) & (sign2 == 1), lambda i: f"idempotence ({p[i]},{q[i]})")
    sample = rng.choice(p.size, size=min(p.size, 2000), replace=False)
    for i in sample.tolist():
        t = canonicalize(int(p[i]), int(q[i]))
        ok = t.canonical == (cp[i], cq[i]) and t.total_sign == sign[i]
        res.record(ok, lambda _: f"scalar/array mismatch ({p[i]},{q[i]})")
    return res


def suite_memo(bits, variants, rng):
    res = SuiteResult("memo")
    if bits == 0:
        return res
    pairs = rng.integers(0, 1 << (2 * bits), size=(500, 2))
    for v in variants:
        cache = TwistCache(v)
        for a, b in pairs.tolist():
            res.record(twist_memo(a, b, v, cache) == twist(a, b, v), lambda i: f"{v} ({a},{b})")
    return res


def suite_oracle_algebra(bits, variants, rng):
    """Conjugation, bilinearity and norm composition.

    Norms compose for every variant up to the quaternions, and at the octonion
    level only for k = 0 and 3: the k = 1 and 2 products have zero divisors
    there already, e.g. ``(e1 + e2)(e4 + e7) == 0`` under P2.
    """
    res = SuiteResult("oracle-algebra")
    for level in range(1, min(bits, 5) + 1):
        x, y, z = rng.normal(size=(3, 32, 1 << level))
        res.record((conjugate_array(conjugate_array(x)) == x).all(axis=1), lambda i: f"involution level {level}")
        for v in variants:
            lhs = multiply_arrays(x, y + z, v)
            rhs = multiply_arrays(x, y, v) + multiply_arrays(x, z, v)
            res.record(np.abs(lhs - rhs).max(axis=1) <= 1e-12, lambda i: f"bilinearity {v} level {level}")
            if level <= 2 or (level == 3 and v.index in (0, 3)):
                xy = np.linalg.norm(multiply_arrays(x, y, v), axis=1)
                nn = np.linalg.norm(x, axis=1) * np.linalg.norm(y, axis=1)
                res.record(np.abs(xy - nn) <= 1e-12, lambda i: f"norm {v} level {level}")
        if level == 3 and any(v.index in (1, 2) for v in variants):
            x = np.zeros(8)
            y = np.zeros(8)
            x[[1, 2]] = 1.0
            y[[4, 7]] = 1.0
            res.record(not multiply_arrays(x, y, "P2").any(), lambda i: "P2 zero divisor (e1+e2)(e4+e7)")
    return res


def suite_kernel(bits, variants, rng):
    res = SuiteResult("kernel-oracle")
    for level in range(1, min(bits, VECTOR_LEVELS) + 1):
        for v in variants:
            cache = TwistCache(v)
            for _ in range(4):
                x = DenseVector(rng.normal(size=1 << level))
                y = DenseVector(rng.normal(size=1 << level))
                fast = multiply_fast(x, y, v)
                ref = multiply_arrays(x.coefficients, y.coefficients, v)
                res.record(np.abs(fast.coefficients - ref).max() <= 1e-12, lambda i: f"{v} level {level}")
                res.record(multiply_fast(x, y, v, cache=cache) == fast, lambda i: f"cache {v} level {level}")
    return res


SUITES = (
    suite_xor_group,
    suite_doublet_paths,
    suite_quaternion_tree,
    suite_identities,
    suite_transpose_basis,
    suite_oracle_equivalence,
    suite_periodicity,
    suite_reduction,
    suite_memo,
    suite_oracle_algebra,
    suite_kernel,
)


def run_suites(max_bits: int, variants=ALL_VARIANTS, seed: int = 0) -> list[SuiteResult]:
    variants = tuple(ProductVariant.parse(v) for v in variants)
    rng = np.random.default_rng(seed)
    return [suite(max_bits, variants, rng) for suite in SUITES]
