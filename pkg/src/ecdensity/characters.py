"""Dirichlet characters as exponent vectors over a unit-group basis.

A character mod q is stored as a tuple of exponents against fixed generators
of (Z/q)^* obtained by CRT over the prime-power parts of q (two generators
{-1, 5} at powers of 2 >= 8).  Values are roots of unity computed from exact
integer phases t/L with L the group exponent, so order, conductor and
orthogonality checks are integer computations; complex values only appear at
the final exp(2*pi*i*t/L).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .arith import Factorization, factorize, is_prime


# ---------------------------------------------------------------------------
# unit group basis


@dataclass(frozen=True)
class UnitGroupBasis:
    """Generators of (Z/q)^*, lifted to mod q, with their orders."""

    q: int
    prime_powers: tuple[int, ...]
    gens: tuple[int, ...]
    orders: tuple[int, ...]

    @property
    def phi(self) -> int:
        return math.prod(self.orders) if self.orders else 1


def _primitive_root(p: int) -> int:
    """Smallest primitive root mod an odd prime p."""
    fac = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r, _ in fac.factors):
            return g
    raise AssertionError(f"no primitive root mod {p}")


def _odd_prime_power_generator(p: int, k: int) -> int:
    """Generator of the cyclic group (Z/p^k)^* for odd p."""
    g = _primitive_root(p)
    if k == 1:
        return g
    # g lifts to all p^k iff g^(p-1) != 1 mod p^2; otherwise g+p does
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g


def unit_group_basis(q: int) -> UnitGroupBasis:
    """Basis of (Z/q)^* by CRT over prime powers; q = 1, 2 give the empty basis."""
    if q <= 0:
        raise ValueError(f"modulus must be positive, got {q}")
    pps: list[int] = []
    gens: list[int] = []
    orders: list[int] = []
    for p, k in factorize(q).factors:
        pk = p**k
        if p == 2:
            if k == 1:
                continue
            if k == 2:
                pps.append(4)
                gens.append(3)
                orders.append(2)
            else:
                pps.extend((pk, pk))
                gens.extend((pk - 1, 5))
                orders.extend((2, pk // 4))
        else:
            pps.append(pk)
            gens.append(_odd_prime_power_generator(p, k))
            orders.append(pk - pk // p)
    # CRT lift: generator for component i is its local value, 1 elsewhere
    lifted = []
    for i, (pk, g) in enumerate(zip(pps, gens)):
        rest = q // pk
        if rest == 1:
            lifted.append(g % q)
        else:
            inv = pow(rest % pk, -1, pk)
            x = (1 + rest * ((g - 1) * inv % pk)) % q
            lifted.append(x)
    return UnitGroupBasis(q, tuple(pps), tuple(lifted), tuple(orders))


class CharGroup:
    """Character group mod q with precomputed discrete logs.

    dlog_mat[n] holds the exponent vector of n for units, all -1 otherwise.
    exponent L = lcm of generator orders; weights[i] = L // orders[i], so a
    character e has integer phase t(n) = sum_i e[i]*dlog[n][i]*weights[i] mod L
    and value e(t(n)/L).
    """

    def __init__(self, q: int):
        self.q = q
        self.basis = unit_group_basis(q)
        self.orders = self.basis.orders
        self.r = len(self.orders)
        self.L = math.lcm(*self.orders) if self.orders else 1
        self.weights = tuple(self.L // m for m in self.orders)
        self.phi = self.basis.phi
        self._build_dlogs()

    def _build_dlogs(self):
        q, r = self.q, self.r
        vals = np.ones(1, dtype=np.int64)
        for g, m in zip(self.basis.gens, self.orders):
            powers = np.empty(m, dtype=np.int64)
            acc = 1
            for j in range(m):
                powers[j] = acc
                acc = acc * g % q
            vals = (vals[:, None] * powers[None, :] % q).reshape(-1)
        self.dlog_mat = np.full((max(q, 2), r), -1, dtype=np.int64)
        if r:
            digits = np.unravel_index(np.arange(self.phi), self.orders)
            for i in range(r):
                self.dlog_mat[vals, i] = digits[i]
        self.unit_mask = np.zeros(max(q, 2), dtype=bool)
        if q == 1:
            self.unit_mask[:] = True  # every n is a unit mod 1
        else:
            self.unit_mask[vals % q] = True

    def dlog(self, n: int) -> tuple[int, ...] | None:
        n %= self.q if self.q > 1 else 1
        if self.q == 1:
            return ()
        if not self.unit_mask[n]:
            return None
        return tuple(int(x) for x in self.dlog_mat[n])

    def phase_table(self, e: tuple[int, ...]) -> np.ndarray:
        """Integer phases t(n) mod L for n = 0..q-1, -1 at non-units."""
        q = max(self.q, 2)
        if self.r == 0:
            t = np.zeros(q, dtype=np.int64)
            t[~self.unit_mask] = -1
            return t
        coeff = np.array([ei * wi for ei, wi in zip(e, self.weights)], dtype=np.int64)
        t = (self.dlog_mat * coeff[None, :]).sum(axis=1) % self.L
        t[~self.unit_mask] = -1
        return t

    def value_table(self, e: tuple[int, ...]) -> np.ndarray:
        """chi(n) for n = 0..q-1 as complex128 (0 at non-units)."""
        t = self.phase_table(e)
        vals = np.exp(2j * np.pi * np.where(t < 0, 0, t) / self.L)
        vals[t < 0] = 0.0
        return vals


@lru_cache(maxsize=64)
def _group(q: int) -> CharGroup:
    return CharGroup(q)


def char_group(q: int) -> CharGroup:
    """Shared, cached character-group context for modulus q."""
    return _group(q)


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class DirichletCharacter:
    q: int
    e: tuple[int, ...]

    def __call__(self, n: int) -> complex:
        return char_eval(self, n)


def principal_character(q: int) -> DirichletCharacter:
    g = _group(q)
    return DirichletCharacter(q, (0,) * g.r)


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q; the principal one comes first."""
    g = _group(q)
    return [DirichletCharacter(q, e) for e in product(*(range(m) for m in g.orders))]


def char_eval(chi: DirichletCharacter, n: int) -> complex:
    """chi(n); 0 when gcd(n, q) > 1."""
    g = _group(chi.q)
    v = g.dlog(n)
    if v is None:
        return 0.0 + 0.0j
    t = sum(ei * vi * wi for ei, vi, wi in zip(chi.e, v, g.weights)) % g.L
    if t == 0:
        return 1.0 + 0.0j
    return cmath.exp(2j * math.pi * t / g.L)


def char_mul(a: DirichletCharacter, b: DirichletCharacter) -> DirichletCharacter:
    if a.q != b.q:
        raise ValueError("character product needs a common modulus")
    g = _group(a.q)
    return DirichletCharacter(a.q, tuple((x + y) % m for x, y, m in zip(a.e, b.e, g.orders)))


def char_conj(chi: DirichletCharacter) -> DirichletCharacter:
    g = _group(chi.q)
    return DirichletCharacter(chi.q, tuple((-x) % m for x, m in zip(chi.e, g.orders)))


def char_power(chi: DirichletCharacter, k: int) -> DirichletCharacter:
    g = _group(chi.q)
    return DirichletCharacter(chi.q, tuple((x * k) % m for x, m in zip(chi.e, g.orders)))


def is_principal(chi: DirichletCharacter) -> bool:
    return all(x == 0 for x in chi.e)


def char_order_and_conductor(chi: DirichletCharacter) -> tuple[int, int]:
    """(order, conductor), both exact.

    The conductor is found as the least divisor f of q such that chi is
    constant (= 1) on units congruent to 1 mod f, checked with integer phases.
    """
    g = _group(chi.q)
    order = 1
    for ei, m in zip(chi.e, g.orders):
        order = math.lcm(order, m // math.gcd(m, ei))
    q = chi.q
    if q == 1:
        return 1, 1
    t = g.phase_table(chi.e)
    divisors = sorted(
        d for d in range(1, q + 1) if q % d == 0
    )
    for f in divisors:
        ok = True
        for n in range(1 % q, q, f) if f < q else [1 % q]:
            if n % f == 1 % f and t[n] > 0:
                ok = False
                break
        if ok:
            return order, f
    return order, q  # unreachable: f = q always passes


def conductor(chi: DirichletCharacter) -> int:
    return char_order_and_conductor(chi)[1]


def is_primitive(chi: DirichletCharacter) -> bool:
    return conductor(chi) == chi.q


def real_characters(q: int) -> list[DirichletCharacter]:
    """Characters with chi^2 principal (order 1 or 2)."""
    g = _group(q)
    choices = []
    for m in g.orders:
        opts = [0] if m % 2 else [0, m // 2]
        choices.append(opts)
    return [DirichletCharacter(q, e) for e in product(*choices)]


# ---------------------------------------------------------------------------
# Gauss sums


def gauss_sum(chi: DirichletCharacter, a: int = 1) -> complex:
    """tau_a(chi) = sum over b mod q of chi(b) e(ab/q), at the modulus q."""
    g = _group(chi.q)
    q = chi.q
    if q == 1:
        return 1.0 + 0.0j
    vals = g.value_table(chi.e)
    n = np.arange(q)
    return complex(np.sum(vals[:q] * np.exp(2j * np.pi * (a % q) * n / q)))


def gauss_sum_matrix(q: int) -> tuple[list[DirichletCharacter], np.ndarray, np.ndarray]:
    """tau_a(chi) for every character and every unit a, in one BLAS product.

    Returns (characters, units, T) with T[j, i] = tau_{units[i]}(chi_j).
    """
    g = _group(q)
    chars = enumerate_characters(q)
    V = np.vstack([g.value_table(c.e)[:q] for c in chars]) if q > 1 else np.ones((1, 1), dtype=complex)
    units = np.flatnonzero(g.unit_mask[:q]) if q > 1 else np.array([0])
    n = np.arange(max(q, 1))
    E = np.exp(2j * np.pi * np.outer(n, units) / max(q, 1))
    return chars, units, V @ E


def quadratic_gauss_bound_check(l: int, a: int, k: int) -> tuple[float, float]:
    """(|sum_b e((a b^2 + k b)/l)|, 2*sqrt(l)) for the quadratic phase sum."""
    if l <= 0:
        raise ValueError("modulus must be positive")
    b = np.arange(l)
    s = np.sum(np.exp(2j * np.pi * ((a % l) * b * b % l + (k % l) * b) / l))
    return float(abs(s)), 2.0 * math.sqrt(l)


# ---------------------------------------------------------------------------
# cube roots in the dual group, and the cubic-conductor structure


def count_cube_roots(q: int, chi1: DirichletCharacter) -> int:
    """#{chi mod q : conj(chi)^3 = chi1}, by exhaustive enumeration."""
    g = _group(q)
    target = chi1.e
    count = 0
    for e in product(*(range(m) for m in g.orders)):
        if all((-3 * x) % m == t for x, t, m in zip(e, target, g.orders)):
            count += 1
    return count


def count_cube_roots_structural(q: int, chi1: DirichletCharacter) -> int:
    """Same count via the per-component congruence -3x = e1 (mod m)."""
    g = _group(q)
    total = 1
    for t, m in zip(chi1.e, g.orders):
        d = math.gcd(3, m)
        if t % d:
            return 0
        total *= d
    return total


def _odd_component_cubic_conductor(p: int, k: int) -> int:
    """Conductor of a nonprincipal cubic character on the (Z/p^k)^* component."""
    m = p**k - p ** (k - 1)
    e = m // 3  # both nonzero cubic exponents give the same p-valuation
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return p ** (k - v)


def cubic_characters(q: int) -> list[DirichletCharacter]:
    """All characters of exact order 3 mod q."""
    g = _group(q)
    choices = []
    for m in g.orders:
        if m % 3 == 0:
            choices.append([0, m // 3, 2 * m // 3])
        else:
            choices.append([0])
    out = []
    for e in product(*choices):
        if any(e):
            out.append(DirichletCharacter(q, e))
    return out


@dataclass(frozen=True)
class CubicStructureRow:
    q: int
    n_cubic: int
    n_primitive_cubic: int
    shape_ok: bool


def _cubic_shape_admissible(fac: Factorization) -> bool:
    """q supports a primitive cubic character iff q = 9^a * squarefree product
    of primes = 1 (mod 3), with a in {0, 1} and q > 1."""
    if fac.n == 1:
        return False
    for p, k in fac.factors:
        if p == 3:
            if k != 2:
                return False
        else:
            if k != 1 or p % 3 != 1:
                return False
    return True


def cubic_structure_report(limit: int) -> list[CubicStructureRow]:
    """For each q <= limit, count primitive order-3 characters and check that
    they exist exactly for the admissible modulus shape, in the expected number
    2^(number of prime-power parts).

    Conductors here come from the per-component structure; tests cross-check
    against the generic divisor-scan conductor on small moduli.
    """
    rows = []
    for q in range(1, limit + 1):
        fac = factorize(q)
        n_cubic = 0
        n_prim = 0
        comps = []
        for p, k in fac.factors:
            pk = p**k
            if p == 2:
                m = 1 if k == 1 else (2 if k == 2 else 2 ** (k - 2))
                # cubic exponents need 3 | m; powers of 2 never provide them
                comps.append((pk, 1, 0))
            else:
                m = pk - pk // p
                if m % 3 == 0:
                    comps.append((pk, 3, _odd_component_cubic_conductor(p, k)))
                else:
                    comps.append((pk, 1, 0))
        n_sol = math.prod(c[1] for c in comps) if comps else 1
        n_cubic = n_sol - 1
        # a cubic char is primitive iff every component is nonprincipal with
        # full local conductor; count = prod over components of (#nonprincipal
        # cubic exponents with conductor pk), i.e. 2 per qualifying component
        prim_per_comp = []
        for pk, nloc, cond in comps:
            prim_per_comp.append(2 if (nloc == 3 and cond == pk) else 0)
        n_prim = math.prod(prim_per_comp) if comps else 0
        if q == 1:
            n_prim = 0
        expected = 2 ** len(comps) if _cubic_shape_admissible(fac) else 0
        rows.append(CubicStructureRow(q, n_cubic, n_prim, n_prim == expected))
    return rows
