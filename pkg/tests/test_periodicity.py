import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdtwist.automaton import twist
from cdtwist.basis import ALL_VARIANTS, P_VARIANTS, ContractError
from cdtwist.periodicity import (
    Rule,
    canonicalize,
    canonicalize_arrays,
    check_periodicity_t2,
    check_periodicity_t3,
    reduce_t4,
    reduce_t5,
)


@pytest.mark.parametrize(
    "p, q, expected",
    [(5, 481, (5, 9)), (3, 5, (3, 5)), (1, 2**20 + 1, (1, 3))],
)
def test_reduce_t4(p, q, expected):
    assert reduce_t4(p, q) == expected
    for v in P_VARIANTS:
        assert twist(p, q, v) == twist(*expected, v)


@pytest.mark.parametrize("p, q", [(0, 9), (5, 7), (9, 5)])
def test_reduce_t4_contract(p, q):
    with pytest.raises(ContractError):
        reduce_t4(p, q)


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (483, 481, (7, 5)),
        (7, 5, (7, 5)),
        (12, 10, (12, 10)),  # 12 ^ 10 = 6 sits one octave below: already fixed
        (13, 12, (3, 2)),
    ],
)
def test_reduce_t5(p, q, expected):
    assert reduce_t5(p, q) == expected
    assert expected[0] ^ expected[1] == p ^ q
    for v in P_VARIANTS:
        assert twist(p, q, v) == twist(*expected, v)


@pytest.mark.parametrize("p, q", [(5, 5), (5, 9), (0, 3)])
def test_reduce_t5_contract(p, q):
    with pytest.raises(ContractError):
        reduce_t5(p, q)


def test_canonicalize_examples():
    t = canonicalize(5, 481)
    assert t.canonical == (5, 9) and t.total_sign == 1
    assert [s.rule for s in t.steps] == [Rule.MODULAR_T4]
    assert t.steps[0].octave_N == 3

    t = canonicalize(481, 5)
    assert t.canonical == (5, 9) and t.total_sign == -1
    assert [s.rule for s in t.steps] == [Rule.SWAP_ANTISYM, Rule.MODULAR_T4]

    t = canonicalize(483, 481)
    assert t.canonical == (7, 5) and t.total_sign == 1
    assert t.steps[0].octave_N == 2

    t = canonicalize(0, 7)
    assert t.canonical == (0, 7) and t.total_sign == 1 and t.steps == ()

    assert canonicalize(9, 9).steps == ()


def _check_trace(t):
    sign = 1
    pair = t.original
    for s in t.steps:
        assert s.before == pair
        sign *= s.sign_factor
        pair = s.after
        if s.rule is Rule.SWAP_ANTISYM:
            assert s.sign_factor == -1
        else:
            assert s.sign_factor == 1
            assert (max(s.after), min(s.after)) < (max(s.before), min(s.before))
    assert pair == t.canonical
    assert sign == t.total_sign


pairs = st.tuples(st.integers(0, (1 << 20) - 1), st.integers(0, (1 << 20) - 1))


@given(pairs)
def test_canonicalize_properties(pair):
    p, q = pair
    t = canonicalize(p, q)
    _check_trace(t)
    for v in ALL_VARIANTS:
        assert twist(p, q, v) == t.total_sign * twist(*t.canonical, v)
    if p != q:
        bound = 2 * 2 ** (p ^ q).bit_length()
        assert max(t.canonical) < bound
    assert canonicalize(*t.canonical).modular_steps == 0


@given(st.lists(pairs, min_size=1, max_size=50))
def test_array_version_matches(ps):
    p, q = np.array(ps).T
    cp, cq, sign = canonicalize_arrays(p, q)
    for i, (a, b) in enumerate(ps):
        t = canonicalize(a, b)
        assert (int(cp[i]), int(cq[i])) == t.canonical
        assert int(sign[i]) == t.total_sign


def test_array_version_large_indices():
    p = np.array([(1 << 62) + 5, (1 << 62) + 3, 3])
    q = np.array([(1 << 62) + 6, 7, (1 << 62) + 1])
    cp, cq, sign = canonicalize_arrays(p, q)
    for i in range(3):
        t = canonicalize(int(p[i]), int(q[i]))
        assert (int(cp[i]), int(cq[i]), int(sign[i])) == (*t.canonical, t.total_sign)


@pytest.mark.parametrize("variant", P_VARIANTS)
def test_periodicity_examples(variant):
    assert check_periodicity_t2(5, 9, 59, variant)
    assert check_periodicity_t2(1, 2, 0, variant)
    assert check_periodicity_t3(7, 5, 119, variant)
    assert check_periodicity_t3(1, 1, 5, variant)


@pytest.mark.parametrize(
    "check, args",
    [
        (check_periodicity_t2, (3, 2, 1)),
        (check_periodicity_t2, (3, 8, 1)),
        (check_periodicity_t2, (0, 1, 1)),
        (check_periodicity_t2, (5, 9, -1)),
        (check_periodicity_t3, (2, 5, 1)),
        (check_periodicity_t3, (5, 6, 1 << 62)),
    ],
)
def test_periodicity_contracts(check, args):
    with pytest.raises(ContractError):
        check(*args, "P0")


def test_periodicity_exhaustive_small():
    for n in range(1, 5):
        for p in range(2 ** (n - 1), 2**n):
            for v in ALL_VARIANTS:
                for k in range(9):
                    for q in range(2**n, 2 ** (n + 1)):
                        assert check_periodicity_t2(p, q, k, v)
                    for q in range(2 ** (n - 1), 2**n):
                        assert check_periodicity_t3(p, q, k, v)
