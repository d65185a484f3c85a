import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdtwist import automaton
from cdtwist.automaton import START, NodeLabel, TwistState, basis_product, step, twist, twist_array, walk
from cdtwist.basis import ALL_VARIANTS, P_VARIANTS, ContractError, ProductVariant, shuffle_doublets
from cdtwist.oracle import oracle_twist_many

C, T, L, D, I = NodeLabel.C, NodeLabel.T, NodeLabel.L, NodeLabel.D, NodeLabel.I

# Fig. 1 leaves, left to right
QUATERNION_LEAVES = (1, 1, 1, -1, 1, 1, 1, -1, 1, -1, 1, 1, -1, 1, -1, -1)


@pytest.mark.parametrize(
    "state, d, variant, expected",
    [
        (TwistState(C, 1), "11", "P3", TwistState(D, -1)),
        (TwistState(D, -1), "10", "P3", TwistState(I, -1)),
        (TwistState(I, -1), "11", "P3", TwistState(I, 1)),
        (TwistState(C, 1), "00", "P0", TwistState(C, 1)),
        (TwistState(T, -1), (1, 1), "P1", TwistState(I, 1)),
    ],
)
def test_step(state, d, variant, expected):
    assert step(state, d, variant) == expected


def test_step_rejects_transposes():
    with pytest.raises(ContractError):
        step(START, "01", "T2")


def test_interior_is_absorbing():
    for v, d in itertools.product(P_VARIANTS, ("00", "01", "10", "11")):
        assert step(TwistState(I, 1), d, v).label is I


def test_worked_examples():
    for v in P_VARIANTS:
        assert twist(3, 1, v) == 1
        assert basis_product(3, 1, v) == (1, 2)
    assert twist(25, 17, "P3") == 1
    assert basis_product(25, 17, "P3") == (1, 8)
    states = [str(s) for _, s in walk(25, 17, "P3")]
    assert states[:2] == ["-D", "-I"]
    assert states[-1] == "+I"


def test_variants_disagree_at_5_2():
    # oracle expansion: e5 e2 = (0, e2)(e1, 0) = (0, e2 e1) = -e7 under P0
    assert twist(5, 2, "P0") == -1
    assert twist(5, 2, "P1") == 1
    assert basis_product(7, 7, "P2") == (-1, 0)


@pytest.mark.parametrize("variant", P_VARIANTS)
def test_quaternion_tree(variant):
    for p, q in itertools.product(range(4), repeat=2):
        path = shuffle_doublets(p, q)
        leaf = sum(d.code << (2 * (len(path) - 1 - j)) for j, d in enumerate(path))
        assert twist(p, q, variant) == QUATERNION_LEAVES[leaf], (p, q)


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_unit_square_and_antisymmetry(variant):
    n = 256
    for p in range(n):
        assert twist(p, 0, variant) == twist(0, p, variant) == 1
        if p:
            assert twist(p, p, variant) == -1
    p, q = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    off = p != q
    assert (twist_array(p, q, variant)[off] == -twist_array(q, p, variant)[off]).all()


@pytest.mark.parametrize("k", range(4))
def test_transpose_relation(k):
    for p, q in itertools.product(range(128), repeat=2):
        assert twist(p, q, f"T{k}") == twist(q, p, f"P{k}")


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_matches_oracle(variant):
    p, q = np.meshgrid(np.arange(64), np.arange(64), indexing="ij")
    assert (twist_array(p, q, variant).ravel() == oracle_twist_many(p, q, variant)).all()


@given(
    st.integers(0, (1 << 40) - 1),
    st.integers(0, (1 << 40) - 1),
    st.sampled_from(ALL_VARIANTS),
)
def test_scalar_and_array_agree(p, q, variant):
    assert twist(p, q, variant) == int(twist_array(p, q, variant))


@given(st.integers(0, 1 << 20), st.integers(0, 1 << 20), st.integers(0, 30), st.sampled_from(P_VARIANTS))
def test_padding_invariance(p, q, pad, variant):
    # leading 00 doublets keep the walk at the corner
    state = START
    for _ in range(pad):
        state = step(state, "00", variant)
    assert state == START
    for d in shuffle_doublets(p, q):
        state = step(state, d, variant)
    assert state.sign == twist(p, q, variant)


def test_large_indices():
    big = (1 << 63) - 1
    assert twist(big, 0, "P3") == 1
    assert twist(big, big, "T1") == -1
    assert twist(big, 5, "P0") == -twist(5, big, "P0")


def test_mutated_interior_changes_values(monkeypatch):
    bad = dict(automaton.INTERIOR)
    bad[1] = (1, -1, -1, -1)
    monkeypatch.setattr(automaton, "_TABLES", automaton._compile(automaton.OUTER, bad))
    p, q = np.meshgrid(np.arange(32), np.arange(32), indexing="ij")
    assert (twist_array(p, q, "P1").ravel() != oracle_twist_many(p, q, "P1")).any()
