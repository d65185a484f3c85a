from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cdtwist.automaton import twist
from cdtwist.basis import ALL_VARIANTS, ContractError
from cdtwist.kernel import KernelStats, TwistCache, multiply_fast, twist_block, twist_memo
from cdtwist.oracle import DenseVector, multiply, multiply_arrays

e = DenseVector.basis


def test_basis_product():
    assert multiply_fast(e(25, 5), e(17, 5), "P3") == e(8, 5)
    assert multiply_fast(e(3, 2), e(1, 2), "P0") == e(2, 2)


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_scalar_action(variant):
    x = DenseVector(np.random.default_rng(0).normal(size=32))
    assert multiply_fast(2 * e(0, 5), x, variant) == 2 * x
    assert multiply_fast(x, e(0, 5), variant) == x


def test_level_zero():
    assert multiply_fast(DenseVector([3.0]), DenseVector([4.0]), "T0") == DenseVector([12.0])


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_matches_oracle_level_6(variant):
    rng = np.random.default_rng(variant.index + 10 * variant.is_transpose)
    for _ in range(5):
        x, y = (DenseVector(v) for v in rng.normal(size=(2, 64)))
        diff = multiply_fast(x, y, variant).coefficients - multiply(x, y, variant).coefficients
        assert np.abs(diff).max() <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 5), st.sampled_from(ALL_VARIANTS), st.integers(0, 2**32 - 1))
def test_integer_inputs_exact(level, variant, seed):
    rng = np.random.default_rng(seed)
    x, y = rng.integers(-50, 51, size=(2, 1 << level)).astype(float)
    fast = multiply_fast(DenseVector(x), DenseVector(y), variant)
    assert np.array_equal(fast.coefficients, multiply_arrays(x, y, variant))


def test_level_mismatch():
    with pytest.raises(ContractError):
        multiply_fast(e(0, 2), e(0, 3), "P0")


def test_twist_memo_examples():
    cache = TwistCache("P2")
    assert twist_memo(5, 481, "P2", cache) == twist(5, 9, "P2")
    assert (5, 9) in cache
    before = len(cache)
    assert twist_memo(0, 12345, "P2", cache) == 1
    assert twist_memo(77, 0, "P2", cache) == 1
    assert twist_memo(77, 77, "P2", cache) == -1
    assert len(cache) == before


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_twist_memo_random(variant):
    rng = np.random.default_rng(99)
    cache = TwistCache(variant)
    for p, q in rng.integers(0, 1 << 20, size=(1250, 2)).tolist():
        assert twist_memo(p, q, variant, cache) == twist(p, q, variant)
        assert twist_memo(p, q, variant) == twist(p, q, variant)


def test_cache_variant_checked():
    with pytest.raises(ContractError):
        twist_memo(5, 9, "P1", TwistCache("P0"))
    with pytest.raises(ContractError):
        multiply_fast(e(1, 2), e(2, 2), "P1", cache=TwistCache("P0"))


@pytest.mark.parametrize("variant", ["P0", "T3"])
def test_cached_block_matches_automaton(variant):
    cache = TwistCache(variant)
    rows = np.arange(64)
    plain = twist_block(rows, 6, variant)
    cached = twist_block(rows, 6, variant, cache)
    assert np.array_equal(plain, cached)
    assert np.array_equal(twist_block(rows, 6, variant, cache), plain)


def test_cache_is_bit_identical_and_deterministic():
    rng = np.random.default_rng(1)
    x, y = (DenseVector(v) for v in rng.normal(size=(2, 256)))
    cache = TwistCache("P3")
    plain = multiply_fast(x, y, "P3")
    first = multiply_fast(x, y, "P3", cache=cache)
    second = multiply_fast(x, y, "P3", cache=cache)
    assert plain.coefficients.tobytes() == first.coefficients.tobytes() == second.coefficients.tobytes()
    assert multiply_fast(x, y, "P3").coefficients.tobytes() == plain.coefficients.tobytes()


def test_shared_cache_across_threads():
    rng = np.random.default_rng(2)
    pairs = [tuple(DenseVector(v) for v in rng.normal(size=(2, 128))) for _ in range(8)]
    expected = [multiply_fast(x, y, "P1").coefficients.tobytes() for x, y in pairs]
    cache = TwistCache("P1")
    with ThreadPoolExecutor(max_workers=4) as pool:
        got = list(pool.map(lambda xy: multiply_fast(*xy, "P1", cache=cache).coefficients.tobytes(), pairs))
    assert got == expected


def test_evaluation_counts():
    stats = KernelStats()
    x = DenseVector(np.ones(1024))
    multiply_fast(x, x, "P0", stats=stats)
    assert stats.twist_evaluations == 2**20
    cached = KernelStats()
    cache = TwistCache("P0")
    multiply_fast(x, x, "P0", cache=cache, stats=cached)
    assert 0 < cached.twist_evaluations == len(cache) < 2**20
    again = KernelStats()
    multiply_fast(x, x, "P0", cache=cache, stats=again)
    assert again.twist_evaluations == 0
