"""Basis indices, product variants and the doublet encoding of index pairs.

Basis vectors e_p of the Cayley-Dickson algebras are indexed by non-negative
integers in the shuffle basis, and multiply as a twisted group under bitwise
XOR: ``e_p e_q = omega(p, q) e_{p ^ q}``.
"""
from __future__ import annotations

import enum
from typing import NamedTuple, Sequence

import numpy as np

MAX_BITS = 63
MAX_INDEX = (1 << MAX_BITS) - 1

Sign = int  # always +1 or -1


class ContractError(ValueError):
    """Raised when an argument violates an operation's precondition."""


def check_index(p) -> int:
    """Validate a basis index and return it as a plain int."""
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise ContractError(f"basis index must be an integer, got {p!r}")
    p = int(p)
    if p < 0 or p > MAX_INDEX:
        raise ContractError(f"basis index {p} outside [0, 2**{MAX_BITS})")
    return p


def bit_length(p: int) -> int:
    """Number of bits needed to write p; 0 for p == 0."""
    return check_index(p).bit_length()


def xor_index(p: int, q: int) -> int:
    """Group operation on basis indices: e_p e_q is a multiple of e_{p ^ q}."""
    return check_index(p) ^ check_index(q)


class ProductVariant(enum.Enum):
    """The eight doubling products P0..P3 and their transposes T0..T3."""

    P0 = "P0"
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    T0 = "T0"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"

    @property
    def index(self) -> int:
        return int(self.value[1])

    @property
    def is_transpose(self) -> bool:
        return self.value[0] == "T"

    @property
    def transpose(self) -> "ProductVariant":
        return ProductVariant(("P" if self.is_transpose else "T") + self.value[1])

    @classmethod
    def parse(cls, name) -> "ProductVariant":
        """Accept a variant or its name in any case (``"p3"``, ``"T1"``)."""
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().upper())
        except ValueError:
            raise ContractError(f"unknown product variant {name!r}") from None

    def __str__(self) -> str:
        return self.value


P_VARIANTS = (ProductVariant.P0, ProductVariant.P1, ProductVariant.P2, ProductVariant.P3)
T_VARIANTS = (ProductVariant.T0, ProductVariant.T1, ProductVariant.T2, ProductVariant.T3)
ALL_VARIANTS = P_VARIANTS + T_VARIANTS


def transpose_of(variant: ProductVariant) -> ProductVariant:
    return ProductVariant.parse(variant).transpose


class Doublet(NamedTuple):
    """One bit of p paired with the same-position bit of q."""

    p_bit: int
    q_bit: int

    @property
    def code(self) -> int:
        """The doublet read as a two-bit number, p's bit high."""
        return 2 * self.p_bit + self.q_bit

    def __str__(self) -> str:
        return f"{self.p_bit}{self.q_bit}"


DOUBLETS = tuple(Doublet(a, b) for a in (0, 1) for b in (0, 1))

DoubletPath = tuple  # tuple[Doublet, ...], most significant first


def shuffle_doublets(p: int, q: int) -> DoubletPath:
    """Interleave the binary forms of p and q into doublets.

    Both numbers are written at the width of the longer one, so the path
    length is ``max(p.bit_length(), q.bit_length())`` and ``(0, 0)`` gives the
    empty path.

    >>> [str(d) for d in shuffle_doublets(3, 1)]
    ['10', '11']
    """
    p, q = check_index(p), check_index(q)
    width = max(p.bit_length(), q.bit_length())
    return tuple(
        DOUBLETS[2 * ((p >> i) & 1) + ((q >> i) & 1)] for i in range(width - 1, -1, -1)
    )


def unshuffle(path: Sequence[Doublet]) -> tuple[int, int]:
    """Recover (p, q) from a doublet path."""
    p = q = 0
    for d in path:
        p = (p << 1) | d.p_bit
        q = (q << 1) | d.q_bit
    return p, q


def format_path(path: Sequence[Doublet]) -> str:
    return ",".join(str(d) for d in path)


def format_sign(s: int) -> str:
    return "+1" if s > 0 else "-1"
