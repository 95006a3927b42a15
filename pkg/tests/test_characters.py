"""Character group structure, orthogonality, Gauss sums, cubic counting."""

import cmath
import math
from math import gcd

import numpy as np
import pytest

from ecdensity.arith import factorize, is_prime, jacobi
from ecdensity.characters import (
    char_conj,
    char_eval,
    char_group,
    char_mul,
    char_order_and_conductor,
    char_power,
    conductor,
    count_cube_roots,
    count_cube_roots_structural,
    cubic_characters,
    cubic_structure_report,
    enumerate_characters,
    gauss_sum,
    gauss_sum_matrix,
    is_primitive,
    is_principal,
    principal_character,
    quadratic_gauss_bound_check,
    real_characters,
    unit_group_basis,
)

SMALL_Q = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 16, 24, 35, 36, 40, 63, 72, 100]


def test_unit_group_basis_sizes():
    for q in SMALL_Q:
        basis = unit_group_basis(q)
        phi = sum(1 for n in range(1, q + 1) if gcd(n, q) == 1) if q > 1 else 1
        assert basis.phi == phi
        assert (math.prod(basis.orders) if basis.orders else 1) == phi


def test_unit_group_basis_mod_8():
    b = unit_group_basis(8)
    assert sorted(b.orders) == [2, 2]
    gens = set(b.gens)
    assert gens == {7, 5} or gens == {3, 5}  # -1 and 5 up to choice


def test_character_count_and_homomorphism(rng):
    for q in SMALL_Q:
        chars = enumerate_characters(q)
        phi = unit_group_basis(q).phi
        assert len(chars) == phi
        for chi in chars[: min(4, len(chars))]:
            for _ in range(20):
                m = rng.randrange(1, max(q, 2) + 40)
                n = rng.randrange(1, max(q, 2) + 40)
                lhs = char_eval(chi, m * n)
                rhs = char_eval(chi, m) * char_eval(chi, n)
                assert abs(lhs - rhs) < 1e-12
            if q > 1:
                for n in range(q):
                    if gcd(n, q) != 1:
                        assert char_eval(chi, n) == 0


def test_character_periodicity_and_unit_modulus(rng):
    for q in (7, 12, 16, 45):
        for chi in enumerate_characters(q):
            n = rng.randrange(1, 1000)
            assert abs(char_eval(chi, n) - char_eval(chi, n + q)) < 1e-12
            if gcd(n, q) == 1:
                assert abs(abs(char_eval(chi, n)) - 1.0) < 1e-12


def test_orthogonality_both_ways():
    for q in (5, 8, 12, 21, 36):
        chars = enumerate_characters(q)
        phi = len(chars)
        # sum over n of chi(n) conj(psi(n)) = phi * [chi == psi]
        for i, chi in enumerate(chars):
            for j, psi in enumerate(chars):
                s = sum(char_eval(chi, n) * char_eval(psi, n).conjugate()
                        for n in range(q))
                want = phi if i == j else 0.0
                assert abs(s - want) < 1e-9
        # sum over chi of chi(n) = phi * [n == 1 mod q]
        for n in range(1, q):
            if gcd(n, q) != 1:
                continue
            s = sum(char_eval(chi, n) for chi in chars)
            want = phi if n % q == 1 % q else 0.0
            assert abs(s - want) < 1e-9


def test_char_algebra(rng):
    q = 36
    chars = enumerate_characters(q)
    a, b = chars[3], chars[7]
    n = rng.randrange(1, 200)
    assert abs(char_eval(char_mul(a, b), n)
               - char_eval(a, n) * char_eval(b, n)) < 1e-12
    assert abs(char_eval(char_conj(a), n)
               - char_eval(a, n).conjugate()) < 1e-12
    assert abs(char_eval(char_power(a, 3), n)
               - char_eval(a, n) ** 3) < 1e-12
    assert is_principal(principal_character(q))
    assert is_principal(char_mul(a, char_conj(a)))


def test_order_and_conductor_brute_force():
    # conductor = least f | q with chi constant on 1 + f Z intersect units
    for q in (8, 9, 12, 24, 45):
        for chi in enumerate_characters(q):
            order, cond = char_order_and_conductor(chi)
            assert is_principal(char_power(chi, order))
            assert all(not is_principal(char_power(chi, k))
                       for k in range(1, order))
            divs = [f for f in range(1, q + 1) if q % f == 0]
            found = None
            for f in divs:
                if all(abs(char_eval(chi, n) - 1) < 1e-9
                       for n in range(1, q + 1)
                       if gcd(n, q) == 1 and n % f == 1 % f):
                    found = f
                    break
            assert cond == found
            assert conductor(chi) == cond
            assert is_primitive(chi) == (cond == q)


def test_real_characters_match_jacobi():
    for q in (3, 4, 5, 8, 12):
        reals = real_characters(q)
        for chi in reals:
            for n in range(1, 3 * q):
                v = char_eval(chi, n)
                assert abs(v.imag) < 1e-12
        # number of real characters = number of square roots of 1 in dual
        count = sum(1 for chi in enumerate_characters(q)
                    if is_principal(char_power(chi, 2)))
        assert len(reals) == count
    # mod 8 all four characters are real
    assert len(real_characters(8)) == 4
    # the quadratic character mod an odd prime is the Legendre symbol
    for p in (5, 7, 13):
        quads = [c for c in real_characters(p) if not is_principal(c)]
        assert len(quads) == 1
        for n in range(1, p):
            assert abs(char_eval(quads[0], n) - jacobi(n, p)) < 1e-12


def test_gauss_sum_values():
    # principal character mod q: tau = mu(q) (Ramanujan sum at 1)
    mu = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1, 7: -1, 8: 0, 9: 0, 10: 1}
    for q, m in mu.items():
        assert abs(gauss_sum(principal_character(q)) - m) < 1e-9
    # primitive characters: |tau| = sqrt(q)
    for q in (5, 7, 9, 11, 16):
        for chi in enumerate_characters(q):
            if is_primitive(chi):
                assert abs(abs(gauss_sum(chi)) - math.sqrt(q)) < 1e-9


def test_gauss_sum_twisted_relation(rng):
    # primitive chi: tau_a(chi) = conj(chi)(a) tau(chi) for gcd(a, q) = 1
    for q in (7, 9, 16):
        for chi in enumerate_characters(q):
            if not is_primitive(chi):
                continue
            a = rng.choice([n for n in range(1, q) if gcd(n, q) == 1])
            lhs = gauss_sum(chi, a)
            rhs = char_eval(chi, a).conjugate() * gauss_sum(chi)
            assert abs(lhs - rhs) < 1e-9


def test_gauss_sum_matrix_matches_scalar():
    for q in (1, 2, 12, 21):
        chars, units, T = gauss_sum_matrix(q)
        assert T.shape == (len(chars), len(units))
        for j, chi in enumerate(chars):
            for i, a in enumerate(units):
                assert abs(T[j, i] - gauss_sum(chi, int(a))) < 1e-9


def test_quadratic_gauss_bound(rng):
    # the 2 sqrt(l) bound needs gcd(a, l) = 1; degenerate a (say a = 0)
    # collapses the quadratic phase and can reach the trivial bound l
    for _ in range(50):
        l = rng.randrange(2, 400)
        a = rng.choice([n for n in range(1, l + 1) if gcd(n, l) == 1])
        k = rng.randrange(0, l)
        lhs, rhs = quadratic_gauss_bound_check(l, a, k)
        assert lhs <= rhs + 1e-9
    # for odd prime l and a nonzero the magnitude is exactly sqrt(l)
    for l in (5, 7, 11, 13):
        for a in range(1, l):
            lhs, _ = quadratic_gauss_bound_check(l, a, 3)
            assert abs(lhs - math.sqrt(l)) < 1e-9


def test_cube_root_counts_agree():
    for q in (7, 9, 13, 14, 19, 21, 27, 63):
        chars = enumerate_characters(q)
        for chi1 in chars[:6]:
            assert count_cube_roots(q, chi1) == count_cube_roots_structural(q, chi1)


def test_cube_root_count_of_principal():
    assert count_cube_roots(7, principal_character(7)) == 3
    assert count_cube_roots(9, principal_character(9)) == 3
    assert count_cube_roots(5, principal_character(5)) == 1
    # 819 = 9 * 7 * 13: three components each contributing gcd(3, m) = 3
    assert count_cube_roots_structural(819, principal_character(819)) == 27


def test_cubic_characters_have_order_three():
    for q in (7, 9, 13, 14, 63):
        cubs = cubic_characters(q)
        for chi in cubs:
            assert not is_principal(chi)
            assert is_principal(char_power(chi, 3))
        # count: prod gcd(3, order of component) - 1
        b = unit_group_basis(q)
        want = math.prod(gcd(3, m) for m in b.orders) - 1
        assert len(cubs) == want
    assert cubic_characters(5) == []


def test_primitive_cubic_moduli_up_to_20():
    have = [q for q in range(1, 21)
            if any(is_primitive(c) for c in cubic_characters(q))]
    assert have == [7, 9, 13, 19]


def test_cubic_structure_report():
    rows = cubic_structure_report(200)
    assert all(r.shape_ok for r in rows)
    by_q = {r.q: r for r in rows}
    # brute-force comparison on every q
    for q in range(1, 201):
        cubs = cubic_characters(q)
        n_prim = sum(1 for c in cubs if is_primitive(c))
        assert by_q[q].n_cubic == len(cubs)
        assert by_q[q].n_primitive_cubic == n_prim
        # admissible shape: 9^a * squarefree primes = 1 mod 3
        fac = factorize(q)
        admissible = q > 1 and all(
            (p == 3 and e == 2) or (p % 3 == 1 and e == 1 and is_prime(p))
            for p, e in fac.factors)
        assert (n_prim > 0) == admissible
        if admissible:
            assert n_prim == 2 ** len(fac.factors)
