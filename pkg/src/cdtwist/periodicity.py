"""Periodicity and modularity of the twist, and reduction to small pairs.

An index p with ``2**(N-1) <= p < 2**N`` lies in octave N (its bit length).
Two modular identities hold for every P product:

* if p is in octave N and ``q >= 2**N`` then
  ``omega(p, q) == omega(p, 2**N + q % 2**N)``;
* if p and q share an octave and p ^ q lies in octave N, then
  ``omega(p, q) == omega(2**N + p % 2**N, 2**N + q % 2**N)``.

Together with antisymmetry, ``omega(p, q) == -omega(q, p)`` for distinct
nonzero p and q, they take any pair to a canonical pair no larger than twice
the octave of ``p ^ q``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .automaton import twist
from .basis import MAX_INDEX, ContractError, check_index


class Rule(enum.Enum):
    MODULAR_T4 = "ModularT4"
    MODULAR_T5 = "ModularT5"
    SWAP_ANTISYM = "SwapAntisym"


@dataclass(frozen=True)
class ReductionStep:
    rule: Rule
    before: tuple[int, int]
    after: tuple[int, int]
    sign_factor: int
    octave_N: int | None  # None for the swap, which has no octave


@dataclass(frozen=True)
class ReductionTrace:
    original: tuple[int, int]
    steps: tuple[ReductionStep, ...]
    canonical: tuple[int, int]
    total_sign: int

    @property
    def modular_steps(self) -> int:
        return sum(s.rule is not Rule.SWAP_ANTISYM for s in self.steps)


def reduce_t4(p: int, q: int) -> tuple[int, int]:
    """Fold q into the octave just above p's octave."""
    p, q = check_index(p), check_index(q)
    if p == 0:
        raise ContractError("reduce_t4 needs p > 0")
    n = p.bit_length()
    if q < (1 << n):
        raise ContractError(f"reduce_t4 needs q >= 2**{n} for p={p}, got q={q}")
    return p, (1 << n) + (q & ((1 << n) - 1))


def reduce_t5(p: int, q: int) -> tuple[int, int]:
    """Drop the shared high bits of a same-octave pair above the octave of p ^ q."""
    p, q = check_index(p), check_index(q)
    if p == 0 or q == 0 or p == q:
        raise ContractError(f"reduce_t5 needs distinct nonzero indices, got ({p}, {q})")
    if p.bit_length() != q.bit_length():
        raise ContractError(f"reduce_t5 needs equal bit lengths, got ({p}, {q})")
    n = (p ^ q).bit_length()
    mask = (1 << n) - 1
    return (1 << n) + (p & mask), (1 << n) + (q & mask)


def canonicalize(p: int, q: int) -> ReductionTrace:
    """Reduce (p, q) to a canonical pair, recording every rule used.

    ``twist(p, q, v) == trace.total_sign * twist(*trace.canonical, v)`` for
    every variant v. Pairs with a zero entry or equal entries are already
    canonical since their twist is known outright.
    """
    p, q = check_index(p), check_index(q)
    original = (p, q)
    steps = []
    sign = 1
    while p and q and p != q:
        # only a pair whose first entry is in the higher octave needs swapping
        if p.bit_length() > q.bit_length():
            steps.append(ReductionStep(Rule.SWAP_ANTISYM, (p, q), (q, p), -1, None))
            sign = -sign
            p, q = q, p
        if p.bit_length() < q.bit_length():
            rule, n, new = Rule.MODULAR_T4, p.bit_length(), reduce_t4(p, q)
        else:
            rule, n, new = Rule.MODULAR_T5, (p ^ q).bit_length(), reduce_t5(p, q)
        if new == (p, q):
            break
        steps.append(ReductionStep(rule, (p, q), new, 1, n))
        p, q = new
    return ReductionTrace(original, tuple(steps), (p, q), sign)


def bit_length_array(a) -> np.ndarray:
    """Elementwise bit length of a non-negative int64 array."""
    a = np.array(a, dtype=np.int64)
    n = np.zeros(a.shape, dtype=np.int64)
    for shift in (32, 16, 8, 4, 2, 1):
        big = a >= (1 << shift)
        n[big] += shift
        a[big] >>= shift
    return n + (a > 0)


def canonicalize_arrays(p, q) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised :func:`canonicalize`: canonical pairs and total signs.

    One swap followed by one modular step already reaches the fixpoint, so no
    loop is needed here.
    """
    p, q = np.broadcast_arrays(np.asarray(p, dtype=np.int64), np.asarray(q, dtype=np.int64))
    active = (p != 0) & (q != 0) & (p != q)
    bp, bq = bit_length_array(p), bit_length_array(q)
    swap = active & (bp > bq)
    sign = np.where(swap, -1, 1).astype(np.int8)
    lo, hi = np.where(swap, q, p), np.where(swap, p, q)
    blo, bhi = np.minimum(bp, bq), np.maximum(bp, bq)

    # different octaves: keep the lower one, fold the other above its octave
    top = np.int64(1) << blo
    t4_hi = top + (hi & (top - 1))
    # same octave (lo, hi are then just p, q): strip shared bits above the octave of p ^ q
    top5 = np.int64(1) << bit_length_array(lo ^ hi)
    t5_lo = top5 + (lo & (top5 - 1))
    t5_hi = top5 + (hi & (top5 - 1))

    same = blo == bhi
    cp = np.where(active, np.where(same, t5_lo, lo), p)
    cq = np.where(active, np.where(same, t5_hi, t4_hi), q)
    return cp, cq, sign


def _octave_bounds_check(k: int, n: int, *others: int) -> None:
    if k < 0:
        raise ContractError(f"k must be non-negative, got {k}")
    if max(others) + k * (1 << n) > MAX_INDEX:
        raise ContractError("shifted index exceeds the supported 63-bit range")


def check_periodicity_t2(p: int, q: int, k: int, variant) -> bool:
    """``omega(p, q) == omega(p, q + k 2**N)`` for p in octave N and q in octave N+1."""
    p, q = check_index(p), check_index(q)
    n = p.bit_length()
    if p == 0 or not (1 << n) <= q < (1 << (n + 1)):
        raise ContractError(f"need 2**(N-1) <= p < 2**N <= q < 2**(N+1); got p={p}, q={q}")
    _octave_bounds_check(k, n, q)
    return twist(p, q, variant) == twist(p, q + k * (1 << n), variant)


def check_periodicity_t3(p: int, q: int, k: int, variant) -> bool:
    """``omega(p, q) == omega(p + k 2**N, q + k 2**N)`` for p, q both in octave N."""
    p, q = check_index(p), check_index(q)
    n = p.bit_length()
    if p == 0 or q.bit_length() != n:
        raise ContractError(f"p and q must share a nonzero octave; got p={p}, q={q}")
    _octave_bounds_check(k, n, p, q)
    shift = k * (1 << n)
    return twist(p, q, variant) == twist(p + shift, q + shift, variant)
