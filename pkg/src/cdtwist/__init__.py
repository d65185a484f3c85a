"""Exact basis twists and products in the Cayley-Dickson algebras.

Three independent routes compute the sign in ``e_p e_q = omega(p, q) e_{p ^ q}``:

* :func:`oracle_twist` multiplies basis vectors with the doubling formulas,
* :func:`twist` walks the signed C/T/L/D/I automaton over the doublets of p and q,
* :func:`twist_memo` first reduces (p, q) with the periodicity identities.

:func:`multiply_fast` uses the twist to multiply whole vectors.
"""

__version__ = "0.1.0"

from .basis import (
    ALL_VARIANTS,
    P_VARIANTS,
    T_VARIANTS,
    ContractError,
    Doublet,
    ProductVariant,
    bit_length,
    shuffle_doublets,
    transpose_of,
    unshuffle,
    xor_index,
)
from .automaton import NodeLabel, TwistState, basis_product, step, twist, twist_array, walk
from .periodicity import (
    ReductionStep,
    ReductionTrace,
    Rule,
    canonicalize,
    canonicalize_arrays,
    check_periodicity_t2,
    check_periodicity_t3,
    reduce_t4,
    reduce_t5,
)
from .oracle import DenseVector, MalformedProductError, conjugate, multiply, multiply_arrays, oracle_twist, oracle_twist_many
from .kernel import KernelStats, TwistCache, multiply_fast, twist_memo
