import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from manyopt.errors import DomainError
from manyopt.scalarize import (
    DENOMINATOR_FLOOR,
    ScalarizerState,
    frame_coordinates,
    init_from_population,
    normalize,
    pbi,
    pbi_normalized,
    update_ideal,
    update_nadir,
)


def test_normalize_examples():
    s = ScalarizerState([1.0, 1.0], [5.0, 9.0])
    np.testing.assert_allclose(normalize([3.0, 5.0], s), [0.5, 0.5])
    np.testing.assert_array_equal(normalize(s.ideal, s), [0.0, 0.0])
    np.testing.assert_array_equal(normalize(s.nadir, s), [1.0, 1.0])


def test_normalize_degenerate_denominator():
    s = ScalarizerState([1.0, 2.0], [1.0, 4.0])
    out = normalize([1.0 + 1e-12, 3.0], s)
    assert out[0] == pytest.approx(1e-12 / DENOMINATOR_FLOOR, rel=1e-3)
    assert np.all(np.isfinite(out))


def test_pbi_hand_value():
    b = pbi_normalized([1.0, 0.0], [0.0, 1.0], 5.0)
    assert (b.d1, b.d2, b.value) == pytest.approx((0.0, 1.0, 5.0))


def test_pbi_parallel_and_zero():
    w = np.array([0.2, 0.3, 0.5])
    f = 1.7 * w / np.linalg.norm(w)
    b = pbi_normalized(f, w, 5.0)
    assert b.d2 == pytest.approx(0.0, abs=1e-12)
    assert b.value == pytest.approx(1.7)
    z = pbi_normalized(np.zeros(3), w, 5.0)
    assert (z.d1, z.d2, z.value) == (0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        pbi_normalized([1.0, 1.0], [0.0, 0.0], 5.0)


def test_pbi_pipeline_consistency():
    s = ScalarizerState([1.0, 1.0], [5.0, 9.0])
    f, w = np.array([3.0, 7.0]), np.array([0.3, 0.7])
    assert pbi(f, w, s) == pbi_normalized(normalize(f, s), w, s.theta)
    t = ScalarizerState([1.0, 1.0], [5.0, 9.0], use_nadir=False)
    np.testing.assert_array_equal(frame_coordinates(f, t), f - 1.0)
    assert pbi(f, w, t) == pbi_normalized(f - 1.0, w, t.theta)


def test_theta_must_be_positive():
    with pytest.raises(DomainError):
        ScalarizerState([0.0], [1.0], theta=0.0)


def test_ideal_and_nadir_updates():
    s = ScalarizerState([1.0, 1.0], [1.0, 1.0])
    update_ideal(s, [0.0, 2.0])
    np.testing.assert_array_equal(s.ideal, [0.0, 1.0])
    np.testing.assert_array_equal(s.nadir, [1.0, 1.0])
    update_ideal(s, [0.0, 2.0])
    np.testing.assert_array_equal(s.ideal, [0.0, 1.0])
    update_nadir(s, [2.0, 0.0])
    np.testing.assert_array_equal(s.nadir, [2.0, 1.0])
    update_nadir(s, [2.0, 0.0])
    np.testing.assert_array_equal(s.nadir, [2.0, 1.0])
    update_ideal(s, [5.0, 5.0])
    update_nadir(s, [0.5, 0.5])
    np.testing.assert_array_equal(s.ideal, [0.0, 1.0])
    np.testing.assert_array_equal(s.nadir, [2.0, 1.0])


def test_init_from_population():
    s = init_from_population([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_array_equal(s.ideal, [0.0, 0.0])
    np.testing.assert_array_equal(s.nadir, [1.0, 1.0])
    one = init_from_population([[3.0, 4.0]])
    np.testing.assert_array_equal(one.ideal, one.nadir)
    rng = np.random.default_rng(1)
    P = rng.random((10, 4))
    a, b = init_from_population(P), init_from_population(P[rng.permutation(10)])
    np.testing.assert_array_equal(a.ideal, b.ideal)
    np.testing.assert_array_equal(a.nadir, b.nadir)
    with pytest.raises(DomainError):
        init_from_population(np.empty((0, 3)))


vec = st.lists(st.floats(0, 10), min_size=3, max_size=3)
wvec = st.lists(st.floats(0.01, 1), min_size=3, max_size=3)


@given(vec, wvec)
@settings(max_examples=300, deadline=None)
def test_pythagorean_decomposition(f, w):
    b = pbi_normalized(f, w, 5.0)
    assert b.d1 >= 0 and b.d2 >= 0 and b.value >= 0
    assert b.d1 ** 2 + b.d2 ** 2 == pytest.approx(float(np.dot(f, f)), abs=1e-9, rel=1e-9)


@given(vec, wvec, st.floats(0.1, 10), st.floats(0.1, 10))
@settings(max_examples=200, deadline=None)
def test_pbi_monotone_in_theta(f, w, t1, dt):
    lo, hi = pbi_normalized(f, w, t1), pbi_normalized(f, w, t1 + dt)
    if lo.d2 > 1e-6:
        assert hi.value > lo.value
