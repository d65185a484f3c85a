"""Reference multiplication by the literal doubling formulas.

A vector of length 2**N is the shuffle ``a0, b0, a1, b1, ...`` of its two
halves, so ``(a, b)`` is recovered with ``x[0::2], x[1::2]``. Multiplication
recurses on the halves with the chosen doubling product until the halves are
real numbers. This is deliberately naive and is the ground truth the faster
paths are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import ContractError, ProductVariant, check_index


class MalformedProductError(RuntimeError):
    """A basis product was not a single signed basis vector (a bug, not bad input)."""


@dataclass(frozen=True, eq=False)
class DenseVector:
    """Real coefficients of an element of the level-N algebra."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.float64)
        if c.ndim != 1 or c.size == 0 or c.size & (c.size - 1):
            raise ContractError(f"coefficient count must be a power of two, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def level(self) -> int:
        return self.coefficients.size.bit_length() - 1

    @classmethod
    def basis(cls, index: int, level: int) -> "DenseVector":
        index = check_index(index)
        if index >= 1 << level:
            raise ContractError(f"e_{index} does not exist at level {level}")
        c = np.zeros(1 << level)
        c[index] = 1.0
        return cls(c)

    @classmethod
    def zeros(cls, level: int) -> "DenseVector":
        return cls(np.zeros(1 << level))

    def deinterleave(self) -> tuple["DenseVector", "DenseVector"]:
        if self.level == 0:
            raise ContractError("a level-0 vector has no halves")
        return DenseVector(self.coefficients[0::2]), DenseVector(self.coefficients[1::2])

    @staticmethod
    def interleave(a: "DenseVector", b: "DenseVector") -> "DenseVector":
        if a.level != b.level:
            raise ContractError("halves must have equal levels")
        c = np.empty(2 * a.coefficients.size)
        c[0::2] = a.coefficients
        c[1::2] = b.coefficients
        return DenseVector(c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def __array__(self, dtype=None, copy=None):
        return self.coefficients if dtype is None else self.coefficients.astype(dtype)

    def __len__(self):
        return self.coefficients.size

    def __add__(self, other):
        _same_level(self, other)
        return DenseVector(self.coefficients + other.coefficients)

    def __sub__(self, other):
        _same_level(self, other)
        return DenseVector(self.coefficients - other.coefficients)

    def __neg__(self):
        return DenseVector(-self.coefficients)

    def __rmul__(self, scalar):
        return DenseVector(float(scalar) * self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, DenseVector):
            return NotImplemented
        return bool(np.array_equal(self.coefficients, other.coefficients))

    __hash__ = None

    def __repr__(self):
        return f"DenseVector(level={self.level}, {self.coefficients.tolist()!r})"


def _same_level(x: DenseVector, y: DenseVector) -> None:
    if x.level != y.level:
        raise ContractError(f"level mismatch: {x.level} vs {y.level}")


def conjugate_array(x: np.ndarray) -> np.ndarray:
    out = -x
    out[..., 0] = x[..., 0]
    return out


def conjugate(x: DenseVector) -> DenseVector:
    """``x0, -x1, -x2, ...``; the same as ``(a, b)* = (a*, -b)`` on the halves."""
    return DenseVector(conjugate_array(x.coefficients))


# (a, b)(c, d) = (first, second), with m = multiplication and j = conjugation
_FORMULAS = {
    ProductVariant.P0: lambda a, b, c, d, m, j: (m(c, a) - m(j(b), d), m(d, j(a)) + m(b, c)),
    ProductVariant.P1: lambda a, b, c, d, m, j: (m(c, a) - m(d, j(b)), m(j(a), d) + m(c, b)),
    ProductVariant.P2: lambda a, b, c, d, m, j: (m(a, c) - m(j(b), d), m(d, j(a)) + m(b, c)),
    ProductVariant.P3: lambda a, b, c, d, m, j: (m(a, c) - m(d, j(b)), m(j(a), d) + m(c, b)),
    ProductVariant.T0: lambda a, b, c, d, m, j: (m(c, a) - m(b, j(d)), m(a, d) + m(j(c), b)),
    ProductVariant.T1: lambda a, b, c, d, m, j: (m(c, a) - m(j(d), b), m(d, a) + m(b, j(c))),
    ProductVariant.T2: lambda a, b, c, d, m, j: (m(a, c) - m(b, j(d)), m(a, d) + m(j(c), b)),
    ProductVariant.T3: lambda a, b, c, d, m, j: (m(a, c) - m(j(d), b), m(d, a) + m(b, j(c))),
}


def multiply_arrays(x: np.ndarray, y: np.ndarray, variant) -> np.ndarray:
    """Multiply along the last axis; leading axes broadcast as a batch."""
    formula = _FORMULAS[ProductVariant.parse(variant)]
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape[-1] != y.shape[-1]:
        raise ContractError(f"level mismatch: {x.shape[-1]} vs {y.shape[-1]} coefficients")
    n = x.shape[-1]
    if n == 0 or n & (n - 1):
        raise ContractError(f"coefficient count must be a power of two, got {n}")

    def m(u, w):
        if u.shape[-1] == 1:
            return u * w
        # an all-zero factor contributes nothing; skipping keeps basis products linear-time
        if not (u.any() and w.any()):
            return np.zeros(np.broadcast_shapes(u.shape, w.shape))
        first, second = formula(u[..., 0::2], u[..., 1::2], w[..., 0::2], w[..., 1::2], m, conjugate_array)
        out = np.empty(np.broadcast_shapes(first.shape, second.shape)[:-1] + (u.shape[-1],))
        out[..., 0::2] = first
        out[..., 1::2] = second
        return out

    return m(x, y)


def multiply(x: DenseVector, y: DenseVector, variant) -> DenseVector:
    _same_level(x, y)
    return DenseVector(multiply_arrays(x.coefficients, y.coefficients, variant))


def _extract_signs(z: np.ndarray, r: np.ndarray) -> np.ndarray:
    rows = np.arange(z.shape[0])
    value = z[rows, r]
    single = np.count_nonzero(z, axis=1) == 1
    bad = ~(single & ((value == 1.0) | (value == -1.0)))
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise MalformedProductError(
            f"basis product is not +-e_{int(r[i])}: coefficients {z[i].tolist()}"
        )
    return value.astype(np.int8)


def oracle_twist(p: int, q: int, variant) -> int:
    """Twist read off the product of basis vectors at the smallest level holding both."""
    p, q = check_index(p), check_index(q)
    level = max(p.bit_length(), q.bit_length())
    z = multiply_arrays(DenseVector.basis(p, level).coefficients, DenseVector.basis(q, level).coefficients, variant)
    return int(_extract_signs(z[None, :], np.array([p ^ q]))[0])


def oracle_twist_many(p, q, variant, chunk: int = 256) -> np.ndarray:
    """:func:`oracle_twist` for many pairs, multiplied in batches per level."""
    p = np.asarray(p, dtype=np.int64).ravel()
    q = np.asarray(q, dtype=np.int64).ravel()
    if p.shape != q.shape:
        raise ContractError("p and q must have the same length")
    out = np.empty(p.shape, dtype=np.int8)
    levels = np.array([max(int(a).bit_length(), int(b).bit_length()) for a, b in zip(p, q)], dtype=np.int64)
    for level in np.unique(levels):
        idx = np.flatnonzero(levels == level)
        dim = 1 << int(level)
        for start in range(0, idx.size, chunk):
            sel = idx[start:start + chunk]
            x = np.zeros((sel.size, dim))
            y = np.zeros((sel.size, dim))
            x[np.arange(sel.size), p[sel]] = 1.0
            y[np.arange(sel.size), q[sel]] = 1.0
            out[sel] = _extract_signs(multiply_arrays(x, y, variant), p[sel] ^ q[sel])
    return out
