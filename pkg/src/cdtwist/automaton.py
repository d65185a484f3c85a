"""Twist evaluation by walking the signed C/T/L/D/I automaton.

The infinite twist trees are self-similar, so each node is fully described by
its label and its sign. Reading one doublet of ``[p;q]`` moves to a child
label and multiplies the running sign. The four P products share the outer
labels and differ only inside the interior (I) region. T products are the
transposes at the basis level, so they are evaluated with swapped arguments.
"""
from __future__ import annotations

import enum
from typing import NamedTuple

import numpy as np

from .basis import (
    ContractError,
    Doublet,
    ProductVariant,
    check_index,
    shuffle_doublets,
    xor_index,
)


class NodeLabel(enum.Enum):
    C = "C"  # corner
    T = "T"  # top
    L = "L"  # left
    D = "D"  # diagonal
    I = "I"  # interior  # noqa: E741


class TwistState(NamedTuple):
    label: NodeLabel
    sign: int

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.label.value}"


START = TwistState(NodeLabel.C, 1)

_C, _T, _L, _D, _I = NodeLabel.C, NodeLabel.T, NodeLabel.L, NodeLabel.D, NodeLabel.I

# label -> doublet code (00, 01, 10, 11) -> (child label, sign multiplier)
OUTER = {
    _C: ((_C, 1), (_T, 1), (_L, 1), (_D, -1)),
    _T: ((_T, 1), (_T, 1), (_I, 1), (_I, -1)),
    _L: ((_L, 1), (_I, -1), (_L, 1), (_I, 1)),
    _D: ((_D, 1), (_I, -1), (_I, 1), (_D, 1)),
}

# variant index k -> doublet code -> sign multiplier; the label stays I
INTERIOR = {
    0: (-1, 1, 1, 1),
    1: (-1, -1, -1, -1),
    2: (1, 1, 1, 1),
    3: (1, -1, -1, -1),
}

_LABEL_CODE = {_C: 0, _T: 1, _L: 2, _D: 3, _I: 4}


class _Tables(NamedTuple):
    next_label: np.ndarray  # (5, 4) int8
    multiplier: np.ndarray  # (4, 5, 4) int8, indexed by variant index first
    scalar: tuple  # per variant: ((next, mult) tuples) for the pure-Python walk


def _compile(outer, interior) -> _Tables:
    nxt = np.empty((5, 4), dtype=np.int8)
    mult = np.empty((4, 5, 4), dtype=np.int8)
    for label, row in outer.items():
        for d, (child, m) in enumerate(row):
            nxt[_LABEL_CODE[label], d] = _LABEL_CODE[child]
            mult[:, _LABEL_CODE[label], d] = m
    nxt[4, :] = 4
    for k, row in interior.items():
        mult[k, 4, :] = row
    scalar = tuple(
        (tuple(tuple(int(v) for v in r) for r in nxt), tuple(tuple(int(v) for v in r) for r in mult[k]))
        for k in range(4)
    )
    return _Tables(nxt, mult, scalar)


_TABLES = _compile(OUTER, INTERIOR)


def _doublet_code(d) -> int:
    if isinstance(d, Doublet):
        return d.code
    if isinstance(d, str) and len(d) == 2 and set(d) <= {"0", "1"}:
        return int(d, 2)
    if isinstance(d, tuple) and len(d) == 2:
        return 2 * int(d[0]) + int(d[1])
    raise ContractError(f"not a doublet: {d!r}")


def _require_p_variant(variant) -> ProductVariant:
    variant = ProductVariant.parse(variant)
    if variant.is_transpose:
        raise ContractError(f"{variant} is a transpose product; use twist() for it")
    return variant


def step(state: TwistState, d, variant) -> TwistState:
    """Consume one doublet from ``state`` under a P product."""
    k = _require_p_variant(variant).index
    code = _doublet_code(d)
    if state.label is NodeLabel.I:
        return TwistState(NodeLabel.I, state.sign * INTERIOR[k][code])
    child, m = OUTER[state.label][code]
    return TwistState(child, state.sign * m)


def walk(p: int, q: int, variant) -> list[tuple[Doublet, TwistState]]:
    """States visited while navigating ``[p;q]``; T products walk ``[q;p]``.

    Mostly for display; :func:`twist` is the fast path.
    """
    variant = ProductVariant.parse(variant)
    if variant.is_transpose:
        p, q, variant = q, p, variant.transpose
    state = START
    visited = []
    for d in shuffle_doublets(p, q):
        state = step(state, d, variant)
        visited.append((d, state))
    return visited


def twist(p: int, q: int, variant) -> int:
    """Sign omega(p, q) in ``e_p e_q = omega(p, q) e_{p ^ q}``."""
    variant = ProductVariant.parse(variant)
    p, q = check_index(p), check_index(q)
    if variant.is_transpose:
        p, q = q, p
    nxt, mult = _TABLES.scalar[variant.index]
    label, sign = 0, 1
    for i in range(max(p, q).bit_length() - 1, -1, -1):
        d = (((p >> i) & 1) << 1) | ((q >> i) & 1)
        sign *= mult[label][d]
        label = nxt[label][d]
    return sign


def basis_product(p: int, q: int, variant) -> tuple[int, int]:
    """Return ``(sign, r)`` with ``e_p e_q = sign * e_r``."""
    return twist(p, q, variant), xor_index(p, q)


def twist_array(p, q, variant) -> np.ndarray:
    """Vectorised :func:`twist` over broadcastable integer arrays.

    All pairs are walked at the common width of the largest index; extra
    leading 00 doublets keep the automaton at its start state.
    """
    variant = ProductVariant.parse(variant)
    p = np.asarray(p, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    if (p.size and p.min() < 0) or (q.size and q.min() < 0):
        raise ContractError("basis indices must be non-negative")
    if variant.is_transpose:
        p, q = q, p
    p, q = np.broadcast_arrays(p, q)
    nxt = _TABLES.next_label
    mult = _TABLES.multiplier[variant.index]
    label = np.zeros(p.shape, dtype=np.int8)
    sign = np.ones(p.shape, dtype=np.int8)
    width = int(np.bitwise_or(p, q).max()).bit_length() if p.size else 0
    for i in range(width - 1, -1, -1):
        d = ((p >> i) & 1) * 2 + ((q >> i) & 1)
        sign *= mult[label, d]
        label = nxt[label, d]
    return sign
