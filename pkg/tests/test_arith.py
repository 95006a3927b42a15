"""Prime, symbol, and kernel arithmetic against independent oracles."""

import math

import pytest

from ecdensity.arith import (
    DTriple,
    cube_kernel,
    d_triple,
    factorize,
    is_prime,
    jacobi,
    legendre,
    mod_inverse,
    psi4,
    sieve_primes,
    smallest_factor_table,
)


def test_sieve_matches_known_counts():
    ps = sieve_primes(100)
    assert len(ps) == 25
    assert ps[0] == 2 and ps[-1] == 97
    assert sieve_primes(1) == []
    # pi(10^4) = 1229
    assert len(sieve_primes(10**4)) == 1229


def test_sieve_agrees_with_trial_division():
    naive = [n for n in range(2, 500)
             if all(n % d for d in range(2, int(math.isqrt(n)) + 1))]
    assert sieve_primes(499) == naive


def test_smallest_factor_table():
    spf = smallest_factor_table(30)
    assert spf[15] == 3
    assert spf[17] == 17
    assert spf[28] == 2
    for n in range(2, 31):
        assert n % spf[n] == 0
        assert is_prime(spf[n])


def test_is_prime_agrees_with_sieve():
    ps = set(sieve_primes(2000))
    for n in range(2001):
        assert is_prime(n) == (n in ps)


def test_is_prime_large_inputs():
    assert is_prime(2**31 - 1)          # Mersenne prime
    assert not is_prime(2**31 + 1)
    assert is_prime(10**12 + 39)
    assert not is_prime(10**12 + 37)


def test_factorize_known_value():
    f = factorize(496)
    assert f.n == 496
    assert f.factors == ((2, 4), (31, 1))
    assert f.valuation(2) == 4
    assert f.valuation(31) == 1
    assert f.valuation(7) == 0


def test_factorize_round_trip(rng):
    for _ in range(200):
        n = rng.randrange(1, 10**9)
        f = factorize(n)
        prod = 1
        for p, e in f.factors:
            assert is_prime(p)
            prod *= p**e
        assert prod == n
        assert list(f.factors) == sorted(f.factors)


def test_factorize_semiprime_rho_path():
    p, q = 1_000_003, 1_000_033
    f = factorize(p * q)
    assert f.factors == ((p, 1), (q, 1))


def test_legendre_known_and_euler(rng):
    assert legendre(3, 5) == -1
    assert legendre(4, 5) == 1
    assert legendre(10, 5) == 0
    for _ in range(300):
        p = rng.choice([3, 5, 7, 11, 13, 101, 997])
        n = rng.randrange(-50, 50)
        sym = legendre(n, p)
        if n % p == 0:
            assert sym == 0
        else:
            assert sym == (1 if pow(n, (p - 1) // 2, p) == 1 else -1)


def test_legendre_multiplicative(rng):
    for _ in range(200):
        p = rng.choice([5, 7, 13, 97])
        m, n = rng.randrange(1, 200), rng.randrange(1, 200)
        assert legendre(m * n, p) == legendre(m, p) * legendre(n, p)


def test_jacobi_factors_over_odd_moduli(rng):
    assert jacobi(2, 15) == 1
    for _ in range(300):
        m1 = rng.choice([3, 5, 7, 9, 11, 15])
        m2 = rng.choice([3, 5, 7, 9, 13])
        n = rng.randrange(-100, 100)
        assert jacobi(n, m1 * m2) == jacobi(n, m1) * jacobi(n, m2)
    for p in (3, 7, 19):
        for n in range(-10, 10):
            assert jacobi(n, p) == legendre(n, p)


def test_mod_inverse(rng):
    assert mod_inverse(10, 17) == 12
    for _ in range(300):
        m = rng.randrange(2, 10**6)
        a = rng.randrange(1, m)
        if math.gcd(a, m) != 1:
            with pytest.raises(ValueError):
                mod_inverse(a, m)
        else:
            assert a * mod_inverse(a, m) % m == 1


def test_psi4_values():
    assert psi4(5) == 1
    assert psi4(13) == 1
    assert psi4(7) == 1j
    assert psi4(11) == 1j
    for p in (2, 9, 15):
        with pytest.raises(ValueError):
            psi4(p)


def test_psi4_is_gauss_sum_sign():
    # sum_b (b/p) e(b/p) = psi4(p) sqrt(p)
    import cmath
    for p in (5, 7, 11, 13, 29, 31):
        s = sum(legendre(b, p) * cmath.exp(2j * cmath.pi * b / p)
                for b in range(1, p))
        assert abs(s - psi4(p) * math.sqrt(p)) < 1e-9


def test_d_triple_known_value():
    assert d_triple(12) == DTriple(12, 6, 3, 6)
    assert d_triple(1) == DTriple(1, 1, 1, 1)
    assert d_triple(8) == DTriple(8, 4, 2, 2)
    assert cube_kernel(24) == 6      # 24 = 2^3 * 3 -> 2 * 3
    assert cube_kernel(16) == 4      # 2^4 needs 2^2


def test_d_triple_defining_properties(rng):
    for _ in range(300):
        d = rng.randrange(1, 5000)
        t = d_triple(d)
        assert t.d_sq**2 % d == 0
        assert t.d_sq**2 == d * t.d_star
        assert t.d_cube**3 % d == 0
        # minimality: removing any prime breaks divisibility
        for p, _ in factorize(t.d_sq).factors:
            assert (t.d_sq // p) ** 2 % d != 0
        for p, _ in factorize(t.d_cube).factors:
            assert (t.d_cube // p) ** 3 % d != 0
        # d_star is squarefree
        assert all(e == 1 for _, e in factorize(t.d_star).factors)


def test_d_triple_rejects_nonpositive():
    for bad in (0, -4):
        with pytest.raises(ValueError):
            d_triple(bad)
