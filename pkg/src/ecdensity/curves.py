"""Short Weierstrass models y^2 = x^3 + a x + b: minimality, reduction, conductor.

Only short models are handled.  At p >= 5 the reduction type and local
conductor exponent read off the minimal short model exactly; at p = 2, 3 the
exponents are capped valuation heuristics (min(v2, 8), min(v3, 5)) carried
with an exact=False flag and a sensitivity band [drop 2 and 3 entirely, apply
the caps], since short models cannot decide those places.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import factorize, sieve_primes


@dataclass(frozen=True)
class CurveParams:
    a: int
    b: int

    @property
    def disc(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)


def minimal_short_model(a: int, b: int) -> tuple[int, int, int]:
    """(a', b', u): the largest u with u^4 | a and u^6 | b removed.

    Requires a nonsingular curve (4a^3 + 27b^2 != 0).  When a = 0 or b = 0
    the constraint from the zero coefficient is vacuous.
    """
    if 4 * a**3 + 27 * b**2 == 0:
        raise ValueError(f"singular curve (a, b) = ({a}, {b})")
    u = 1
    if a == 0:
        for p, e in factorize(abs(b)).factors:
            u *= p ** (e // 6)
    elif b == 0:
        for p, e in factorize(abs(a)).factors:
            u *= p ** (e // 4)
    else:
        fb = factorize(abs(b))
        for p, ea in factorize(abs(a)).factors:
            eb = fb.valuation(p)
            u *= p ** min(ea // 4, eb // 6)
    return a // u**4, b // u**6, u


def reduction_type(a: int, b: int, p: int) -> tuple[str, int]:
    """(type, local conductor exponent) at p >= 5 for a p-minimal short model.

    good: p does not divide disc; multiplicative: p | disc, p does not divide
    c4 = -48a; additive otherwise.  Exponents are 0 / 1 / 2.
    """
    if p < 5:
        raise ValueError("reduction_type handles p >= 5 only; see conductor() for 2 and 3")
    disc = -16 * (4 * a**3 + 27 * b**2)
    if disc % p != 0:
        return "good", 0
    if (48 * a) % p != 0:
        return "multiplicative", 1
    return "additive", 2


F2_CAP = 8
F3_CAP = 5


@dataclass(frozen=True)
class ConductorInfo:
    n: int                      # heuristic conductor value
    exact: bool                 # False whenever 2 or 3 divides the minimal disc
    f2: int
    f3: int
    odd_part: int               # prod over bad p >= 5 of p^f_p (exact)
    n_lo: int                   # band: drop the 2- and 3-contributions
    n_hi: int                   # band: apply the caps at 2 and 3 outright
    bad_primes: tuple[tuple[int, str, int], ...]
    u: int                      # scaling removed when minimizing


def conductor(a: int, b: int) -> ConductorInfo:
    a1, b1, u = minimal_short_model(a, b)
    disc = -16 * (4 * a1**3 + 27 * b1**2)
    fac = factorize(abs(disc))
    v2 = fac.valuation(2)
    v3 = fac.valuation(3)
    odd = 1
    bad = []
    for p, _ in fac.factors:
        if p < 5:
            continue
        typ, fp = reduction_type(a1, b1, p)
        odd *= p**fp
        bad.append((p, typ, fp))
    f2 = min(v2, F2_CAP)
    f3 = min(v3, F3_CAP)
    n = odd * 2**f2 * 3**f3
    n_hi = odd * (2**F2_CAP if v2 else 1) * (3**F3_CAP if v3 else 1)
    return ConductorInfo(
        n=n,
        exact=(v2 == 0 and v3 == 0),
        f2=f2,
        f3=f3,
        odd_part=odd,
        n_lo=odd,
        n_hi=n_hi,
        bad_primes=tuple(bad),
        u=u,
    )


def conductor_log_batch(av: np.ndarray, bv: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(log n, log n_lo, log n_hi) for arrays of curves, vectorized.

    Same heuristic as conductor(); factorization of the minimal |disc|/16
    values runs by trial division over a shared prime list, with the single
    possible leftover factor > sqrt(max) necessarily prime.
    """
    a = np.asarray(av, dtype=np.int64).copy()
    b = np.asarray(bv, dtype=np.int64).copy()
    if a.shape != b.shape:
        raise ValueError("curve arrays must have matching shapes")
    core = 4 * a**3 + 27 * b**2
    if np.any(core == 0):
        raise ValueError("singular curve in batch")
    # remove u^4 | a, u^6 | b (only primes with p^4 <= max|a| can occur)
    amax = int(np.abs(a).max()) if a.size else 0
    for p in sieve_primes(max(int(amax ** 0.25) + 1, 2)):
        p4, p6 = p**4, p**6
        while True:
            m = (a % p4 == 0) & (b % p6 == 0) & (a != 0)
            m |= (a == 0) & (b % p6 == 0) & (b != 0)
            if not m.any():
                break
            a[m] //= p4
            b[m] //= p6
    d = np.abs(4 * a**3 + 27 * b**2)  # |disc| / 16
    v2 = np.zeros(a.shape, dtype=np.int64)
    v3 = np.zeros(a.shape, dtype=np.int64)
    log_odd = np.zeros(a.shape, dtype=np.float64)
    rem = d.copy()
    # v2 of disc = 4 + v2(d); the factor 16 never meets the p >= 5 part
    for _ in range(64):
        m = rem % 2 == 0
        if not m.any():
            break
        v2[m] += 1
        rem[m] //= 2
    v2 += 4
    for _ in range(41):
        m = rem % 3 == 0
        if not m.any():
            break
        v3[m] += 1
        rem[m] //= 3
    dmax = int(rem.max()) if rem.size else 0
    c4 = -48 * a
    for p in sieve_primes(math.isqrt(max(dmax, 1))):
        if p < 5:
            continue
        m = rem % p == 0
        if not m.any():
            continue
        fp = np.where(c4[m] % p != 0, 1, 2)
        log_odd[m] += fp * math.log(p)
        while True:
            mm = rem % p == 0
            if not mm.any():
                break
            rem[mm] //= p
    big = rem > 1  # leftover prime factor, valuation 1 in disc
    if big.any():
        fp = np.where(c4[big] % rem[big] != 0, 1, 2)
        log_odd[big] += fp * np.log(rem[big].astype(np.float64))
    l2, l3 = math.log(2), math.log(3)
    log_n = log_odd + np.minimum(v2, F2_CAP) * l2 + np.minimum(v3, F3_CAP) * l3
    log_hi = log_odd + F2_CAP * l2 + np.where(v3 > 0, F3_CAP, 0) * l3
    return log_n, log_odd.copy(), log_hi
