"""Fast products: ``z[p ^ q] += omega(p, q) * x[p] * y[q]`` over all pairs.

Signs come from the vectorised automaton, one block of rows p at a time.
With a :class:`TwistCache` each pair is first reduced to its canonical pair,
and only canonical pairs not seen before are walked.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .automaton import twist, twist_array
from .basis import ContractError, ProductVariant, check_index
from .oracle import DenseVector
from .periodicity import canonicalize, canonicalize_arrays

_BLOCK_ELEMENTS = 1 << 20
_PACK_LIMIT = 1 << 31


class TwistCache:
    """Signs of canonical pairs for one variant, shareable between threads.

    Keys are canonical pairs as produced by
    :func:`~cdtwist.periodicity.canonicalize`, stored with ``p < q``. Pairs of indices below
    ``2**31`` are packed into one int64 and kept in sorted arrays so whole
    blocks can be looked up at once; scalar inserts are buffered in a dict and
    merged in batches. Wider pairs live in a plain dict. Writers take a lock
    and publish a new ``(keys, values)`` tuple, so readers never see a
    half-merged store.
    """

    _FLUSH_AT = 4096

    def __init__(self, variant):
        self.variant = ProductVariant.parse(variant)
        self._store = (np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int8))
        self._pending: dict[int, int] = {}
        self._wide: dict[tuple[int, int], int] = {}
        self._lock = threading.Lock()

    def __len__(self):
        return self._store[0].size + len(self._pending) + len(self._wide)

    def __contains__(self, key):
        return self.get(*key) is not None

    @staticmethod
    def _packable(p, q) -> bool:
        return p < _PACK_LIMIT and q < _PACK_LIMIT

    def get(self, p: int, q: int):
        """Cached sign of a canonical pair, or None."""
        if not self._packable(p, q):
            return self._wide.get((p, q))
        key = (p << 31) | q
        s = self._pending.get(key)
        if s is not None:
            return s
        keys, values = self._store
        i = int(np.searchsorted(keys, key))
        if i < keys.size and keys[i] == key:
            return int(values[i])
        return None

    def lookup(self, p: int, q: int) -> int:
        """Sign of a canonical pair, walking the automaton on a miss."""
        s = self.get(p, q)
        if s is not None:
            return s
        s = twist(p, q, self.variant)
        with self._lock:
            if self._packable(p, q):
                self._pending[(p << 31) | q] = s
                if len(self._pending) >= self._FLUSH_AT:
                    self._flush_locked()
            else:
                self._wide[(p, q)] = s
        return s

    def _merge_locked(self, new_keys, new_values):
        keys, values = self._store
        keys = np.concatenate([keys, new_keys])
        values = np.concatenate([values, new_values])
        keys, first = np.unique(keys, return_index=True)
        self._store = (keys, values[first])

    def _flush_locked(self):
        if self._pending:
            self._merge_locked(np.fromiter(self._pending, np.int64), np.fromiter(self._pending.values(), np.int8))
            self._pending = {}

    def lookup_packed(self, keys: np.ndarray) -> tuple[np.ndarray, int]:
        """Signs for sorted unique packed keys, plus the number of misses walked."""
        if self._pending:
            with self._lock:
                self._flush_locked()
        store_keys, store_values = self._store
        if store_keys.size:
            idx = np.minimum(np.searchsorted(store_keys, keys), store_keys.size - 1)
            hit = store_keys[idx] == keys
        else:
            idx = np.zeros(keys.shape, dtype=np.intp)
            hit = np.zeros(keys.shape, dtype=bool)
        out = np.empty(keys.shape, dtype=np.int8)
        out[hit] = store_values[idx[hit]]
        missing = keys[~hit]
        if missing.size:
            fresh = twist_array(missing >> 31, missing & (_PACK_LIMIT - 1), self.variant)
            out[~hit] = fresh
            with self._lock:
                self._merge_locked(missing, fresh)
        return out, int(missing.size)

    def check_variant(self, variant) -> None:
        if ProductVariant.parse(variant) is not self.variant:
            raise ContractError(f"cache holds {self.variant} signs, not {variant}")


@dataclass
class KernelStats:
    """Counters filled in by :func:`multiply_fast` when passed in."""

    twist_evaluations: int = 0
    cache_lookups: int = 0


def twist_memo(p: int, q: int, variant, cache: TwistCache | None = None) -> int:
    """Same value as ``twist(p, q, variant)``, computed on the canonical pair."""
    p, q = check_index(p), check_index(q)
    if p == 0 or q == 0:
        return 1
    if p == q:
        return -1
    trace = canonicalize(p, q)
    if cache is None:
        return trace.total_sign * twist(*trace.canonical, variant)
    cache.check_variant(variant)
    cp, cq = trace.canonical
    # canonical pairs are distinct and nonzero, so antisymmetry halves the keys
    if cp > cq:
        return -trace.total_sign * cache.lookup(cq, cp)
    return trace.total_sign * cache.lookup(cp, cq)


def _cached_signs(p, q, cache, stats):
    p, q = np.broadcast_arrays(p, q)
    cp, cq, sign = canonicalize_arrays(p, q)
    flip = cp > cq
    cp, cq = np.where(flip, cq, cp), np.where(flip, cp, cq)
    sign = np.where(flip, -sign, sign)
    trivial = (p == 0) | (q == 0) | (p == q)
    if (cp[~trivial] >= _PACK_LIMIT).any() or (cq[~trivial] >= _PACK_LIMIT).any():
        raise ContractError("cached block products support indices below 2**31")
    keys = (cp[~trivial] << 31) | cq[~trivial]
    uniq, inverse = np.unique(keys, return_inverse=True)
    values, walked = cache.lookup_packed(uniq)
    out = np.empty(p.shape, dtype=np.int8)
    out[~trivial] = sign[~trivial] * values[inverse.ravel()]
    # zero and diagonal entries are fixed outright
    out[trivial] = np.where((p[trivial] == q[trivial]) & (p[trivial] != 0), -1, 1)
    if stats is not None:
        stats.twist_evaluations += walked
        stats.cache_lookups += int(keys.size)
    return out


def twist_block(rows, level: int, variant, cache: TwistCache | None = None, stats=None) -> np.ndarray:
    """Signs ``omega(p, q)`` for p in ``rows`` and every q below ``2**level``."""
    p = np.asarray(rows, dtype=np.int64)[:, None]
    q = np.arange(1 << level, dtype=np.int64)[None, :]
    if cache is None:
        if stats is not None:
            stats.twist_evaluations += p.size * q.size
        return twist_array(p, q, variant)
    cache.check_variant(variant)
    return _cached_signs(p, q, cache, stats)


def multiply_fast(
    x: DenseVector,
    y: DenseVector,
    variant,
    cache: TwistCache | None = None,
    stats: KernelStats | None = None,
) -> DenseVector:
    """Product of two vectors by XOR-indexed accumulation.

    Each output coefficient ``z[r]`` is summed over p in increasing order
    (the lexicographic order of the pairs ``(p, p ^ r)``), so results are
    reproducible bit for bit, with or without a cache.
    """
    variant = ProductVariant.parse(variant)
    if x.level != y.level:
        raise ContractError(f"level mismatch: {x.level} vs {y.level}")
    level = x.level
    n = 1 << level
    xs, ys = x.coefficients, y.coefficients
    z = np.zeros(n)
    r = np.arange(n, dtype=np.int64)
    block = max(1, _BLOCK_ELEMENTS // n)
    for start in range(0, n, block):
        rows = np.arange(start, min(n, start + block), dtype=np.int64)
        signs = twist_block(rows, level, variant, cache, stats)
        for i, p in enumerate(rows.tolist()):
            z[p ^ r] += (xs[p] * ys) * signs[i]
    return DenseVector(z)
