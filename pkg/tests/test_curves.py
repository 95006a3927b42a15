"""Short-model minimization, reduction types, conductor band heuristic."""

import math

import numpy as np
import pytest

from ecdensity.curves import (
    ConductorInfo,
    CurveParams,
    conductor,
    conductor_log_batch,
    minimal_short_model,
    reduction_type,
)


def test_disc_formula():
    assert CurveParams(1, 1).disc == -496
    assert CurveParams(-16, 16).disc == 151552
    assert CurveParams(0, 1).disc == -432


def test_minimal_short_model_known():
    assert minimal_short_model(1296, 46656) == (1, 1, 6)
    assert minimal_short_model(1, 1) == (1, 1, 1)
    assert minimal_short_model(0, 64) == (0, 1, 2)
    assert minimal_short_model(16, 0) == (1, 0, 2)
    assert minimal_short_model(-16, 16) == (-16, 16, 1)


def test_minimal_short_model_properties(rng):
    for _ in range(100):
        a = rng.randrange(-40, 40)
        b = rng.randrange(-40, 40)
        if 4 * a**3 + 27 * b**2 == 0:
            continue
        u = rng.choice([1, 2, 3, 6])
        a2, b2, u2 = minimal_short_model(a * u**4, b * u**6)
        # recovered model reproduces the input under scaling
        assert a2 * u2**4 == a * u**4 and b2 * u2**6 == b * u**6
        # and is itself fixed by another minimization pass
        assert minimal_short_model(a2, b2) == (a2, b2, 1)


def test_minimal_short_model_rejects_singular():
    for a, b in ((0, 0), (-3, 2), (-27, 54)):
        with pytest.raises(ValueError):
            minimal_short_model(a, b)


def test_reduction_type_cases():
    assert reduction_type(1, 1, 7) == ("good", 0)
    assert reduction_type(1, 1, 31) == ("multiplicative", 1)
    assert reduction_type(0, 5, 5) == ("additive", 2)
    with pytest.raises(ValueError):
        reduction_type(1, 1, 3)


def test_conductor_known_values():
    info = conductor(1, 1)
    assert info.odd_part == 31
    assert info.n == 496
    assert info.n_lo == 31
    assert info.n_hi == 2**8 * 31
    assert info.bad_primes == ((31, "multiplicative", 1),)
    assert not info.exact

    info = conductor(-16, 16)
    # true conductor 37 sits at the bottom of the band
    assert info.odd_part == 37
    assert info.n_lo == 37
    assert info.n_hi == 2**8 * 37
    assert info.n_lo <= 37 <= info.n_hi
    assert info.u == 1


def test_conductor_band_ordering(rng):
    for _ in range(80):
        a = rng.randrange(-60, 60)
        b = rng.randrange(-60, 60)
        if 4 * a**3 + 27 * b**2 == 0:
            continue
        info = conductor(a, b)
        assert 1 <= info.n_lo <= info.n <= info.n_hi
        assert info.n_lo == info.odd_part
        assert info.odd_part % 2 == 1 and info.odd_part % 3 != 0
        for p, typ, fp in info.bad_primes:
            assert p >= 5
            assert (typ, fp) in (("multiplicative", 1), ("additive", 2))


def test_conductor_scaling_invariance():
    # scaled models reduce to the same minimal data
    base = conductor(2, 3)
    scaled = conductor(2 * 5**4, 3 * 5**6)
    assert scaled.n == base.n
    assert scaled.u == 5


def test_batch_matches_scalar(rng):
    pairs = []
    while len(pairs) < 60:
        a = rng.randrange(-50, 50)
        b = rng.randrange(1, 50)
        if 4 * a**3 + 27 * b**2 != 0:
            pairs.append((a, b))
    av = np.array([p[0] for p in pairs], dtype=np.int64)
    bv = np.array([p[1] for p in pairs], dtype=np.int64)
    ln, lo, hi = conductor_log_batch(av, bv)
    for i, (a, b) in enumerate(pairs):
        info = conductor(a, b)
        assert abs(ln[i] - math.log(info.n)) < 1e-9
        assert abs(lo[i] - math.log(info.n_lo)) < 1e-9
        assert abs(hi[i] - math.log(info.n_hi)) < 1e-9


def test_batch_rejects_singular_and_shape_mismatch():
    with pytest.raises(ValueError):
        conductor_log_batch(np.array([-3]), np.array([2]))
    with pytest.raises(ValueError):
        conductor_log_batch(np.array([1, 2]), np.array([1]))
