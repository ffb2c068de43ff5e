import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from internodal.kernels import philox_block
from internodal.rng import CounterStream, check_seed


def numpy_philox_block(counter, key):
    # numpy advances the counter before producing a block
    bg = np.random.Philox(counter=np.array(counter, dtype=np.uint64) - np.array([1, 0, 0, 0], dtype=np.uint64),
                          key=np.array(key, dtype=np.uint64))
    return bg.random_raw(4)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 2**64 - 1), st.integers(0, 2**40), st.integers(0, 2**64 - 1),
       st.integers(0, 2**64 - 1))
def test_philox_matches_numpy_reference(c0, c1, k0, k1):
    ours = philox_block((c0, c1, 0, 0), (k0, k1))[0]
    ref = numpy_philox_block([c0, c1, 0, 0], [k0, k1])
    np.testing.assert_array_equal(ours, ref)


def test_philox_vectorized_matches_scalar():
    idx = np.arange(10, dtype=np.uint64)
    blocks = philox_block((idx, 3, 0, 0), (99, 7))
    for i in range(10):
        np.testing.assert_array_equal(blocks[i], philox_block((i, 3, 0, 0), (99, 7))[0])


def test_stream_reproducible_and_independent():
    a = CounterStream(5, index=3).uniforms(10)
    b = CounterStream(5, index=3).uniforms(10)
    c = CounterStream(5, index=4).uniforms(10)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.all((a >= 0.0) & (a < 1.0))


def test_spawn_keeps_seed():
    s = CounterStream(11, index=0)
    np.testing.assert_array_equal(s.spawn(9).uniforms(4), CounterStream(11, 9).uniforms(4))


def test_uniforms_roughly_uniform():
    u = CounterStream(1).uniforms(20000)
    assert abs(u.mean() - 0.5) < 0.01
    assert abs(u.var() - 1 / 12) < 0.005


@pytest.mark.parametrize("bad", [-1, 2**64])
def test_seed_range(bad):
    with pytest.raises(ValueError):
        check_seed(bad)
