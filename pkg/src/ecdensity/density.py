"""One-level density over the family y^2 = x^3 + a x + b.

Curves are weighted by w(a/A, b/B) with A = X^(1/3), B = X^(1/2), w a smooth
box bump.  With an even test pair (phi, phihat), the averaged explicit
formula reads

    assembled = phihat(0) * C(X) + phi(0)/2 - (P1 + P2) / W,

where W is the total weight, C(X) the weighted mean of log N / log X, and

    P1 = sum_{p>3} phihat(log p/log X) (2 log p/(p log X))
              sum_{a,b} lambda(a,b,p) w(a/A, b/B),
    P2 = the analogous sum at p^2 with lambda(p)^2 - p.

P1 has two routes that agree to rounding: the direct route contracts the full
residue table of lambda against residue-class weight sums, and the dual route
applies 2D Poisson summation per prime, turning the inner double sum into

    -(AB/log X) sum_p psi4(p) (2 log p / p^{3/2}) phihat(log p/log X)
        sum_{h,k} (k/p) e(-h^3 kbar^2 / p) what(hA/p, kB/p),

whose (h, k) window shrinks with the transform decay of the weight.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.integrate import quad

from .analysis import DEFAULT_BOX, SmoothWeight, TestFunctionPair, bump, fejer_pair
from .arith import cube_kernel, legendre, psi4, sieve_primes
from .characters import (
    DirichletCharacter,
    char_eval,
    char_group,
    enumerate_characters,
    gauss_sum,
)
from .curves import ConductorInfo, conductor, conductor_log_batch
from .frobenius import get_table, lambda_block, lambda_p, lambda_p2, legendre_table

NU_PROVEN_LIMIT = Fraction(7, 10)
DEFAULT_TAIL_TOL = 1e-9
_P1_CHUNK = 16


class _Neumaier:
    """Compensated accumulator; addition order fixes the result bit-for-bit."""

    __slots__ = ("s", "c")

    def __init__(self):
        self.s = 0.0
        self.c = 0.0

    def add(self, v: float):
        t = self.s + v
        if abs(self.s) >= abs(v):
            self.c += (self.s - t) + v
        else:
            self.c += (v - t) + self.s
        self.s = t

    @property
    def total(self) -> float:
        return self.s + self.c


@dataclass
class FamilySpec:
    """Family parameters: size X, support parameter nu, test pair, weight."""

    x: float
    nu: Fraction
    phi: TestFunctionPair
    weight: SmoothWeight
    table_cap: int = 1000
    tail_tol: float = DEFAULT_TAIL_TOL
    threads: int = 1
    cache_dir: str | None = None

    @property
    def a_scale(self) -> float:
        return self.x ** (1.0 / 3.0)

    @property
    def b_scale(self) -> float:
        return math.sqrt(self.x)

    @property
    def log_x(self) -> float:
        return math.log(self.x)


def family(x: float, nu: Fraction | str | float = Fraction(7, 10),
           box: tuple = DEFAULT_BOX, **kw) -> FamilySpec:
    nu = Fraction(nu)
    return FamilySpec(x=float(x), nu=nu, phi=fejer_pair(nu), weight=SmoothWeight(box), **kw)


# ---------------------------------------------------------------------------
# lattice sums


def _axis_lattice(f: FamilySpec, i: int) -> tuple[np.ndarray, np.ndarray]:
    scale = f.a_scale if i == 0 else f.b_scale
    lo = f.weight.box[2 * i]
    hi = f.weight.box[2 * i + 1]
    n0 = math.floor(lo * scale) + 1
    n1 = math.ceil(hi * scale) - 1
    ns = np.arange(n0, n1 + 1, dtype=np.int64)
    if ns.size == 0:
        raise ValueError(
            f"weight box axis {i} contains no lattice points at X={f.x:g}"
        )
    return ns, f.weight.axis_weight(i, ns / scale)


def w_total(f: FamilySpec) -> float:
    """W = sum over integer (a, b) of w(a/A, b/B); errors on empty support."""
    _, wa = _axis_lattice(f, 0)
    _, wb = _axis_lattice(f, 1)
    return float(wa.sum() * wb.sum())


def scaled_mass(f: FamilySpec) -> float:
    """A * B * integral of w, the continuous stand-in for W (reported alongside)."""
    return f.a_scale * f.b_scale * f.weight.mass


# ---------------------------------------------------------------------------
# prime ranges


def _p1_primes(f: FamilySpec) -> list[int]:
    limit = int(f.x ** float(f.nu)) + 2
    lx = f.log_x
    return [p for p in sieve_primes(limit)
            if p > 3 and float(f.phi.phihat(math.log(p) / lx)) > 0.0]


def _p2_primes(f: FamilySpec) -> list[int]:
    limit = int(f.x ** (float(f.nu) / 2.0)) + 2
    lx = f.log_x
    return [p for p in sieve_primes(limit)
            if p > 3 and float(f.phi.phihat(2.0 * math.log(p) / lx)) > 0.0]


# ---------------------------------------------------------------------------
# P1, direct route


def _residue_weights(ns: np.ndarray, ws: np.ndarray, p: int) -> np.ndarray:
    return np.bincount(ns % p, weights=ws, minlength=p).astype(np.float64)


def _p1_term_direct(f: FamilySpec, p: int,
                    na: np.ndarray, wa: np.ndarray,
                    nb: np.ndarray, wb: np.ndarray) -> float:
    lx = f.log_x
    pref = float(f.phi.phihat(math.log(p) / lx)) * 2.0 * math.log(p) / (p * lx)
    if p <= f.table_cap:
        tab = get_table(p, f.cache_dir, use_cache=f.cache_dir is not None)
        sa = _residue_weights(na, wa, p)
        sb = _residue_weights(nb, wb, p)
        inner = float(sa @ tab.table.astype(np.float64) @ sb)
    else:
        # stream one a-residue row at a time; lattice residues only
        sb = _residue_weights(nb, wb, p)
        bres = np.flatnonzero(sb)
        inner = 0.0
        sa = _residue_weights(na, wa, p)
        for alpha in np.flatnonzero(sa):
            lam = lambda_block(int(alpha), p, bres)
            inner += float(sa[alpha]) * float((sb[bres] * lam).sum())
    return pref * inner


def _p1_direct_chunk(f: FamilySpec, ps: list[int]) -> float:
    na, wa = _axis_lattice(f, 0)
    nb, wb = _axis_lattice(f, 1)
    acc = _Neumaier()
    for p in ps:
        acc.add(_p1_term_direct(f, p, na, wa, nb, wb))
    return acc.total


def _chunk_worker(args):
    f, ps = args
    return _p1_direct_chunk(f, ps)


def p1_direct(f: FamilySpec, stats: dict | None = None) -> float:
    """P1 by residue-table contraction per prime (deterministic prime order)."""
    primes = _p1_primes(f)
    chunks = [primes[i : i + _P1_CHUNK] for i in range(0, len(primes), _P1_CHUNK)]
    if f.threads > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=f.threads) as ex:
            parts = list(ex.map(_chunk_worker, [(f, c) for c in chunks]))
    else:
        parts = [_p1_direct_chunk(f, c) for c in chunks]
    acc = _Neumaier()
    for v in parts:
        acc.add(v)
    if stats is not None:
        stats["primes"] = len(primes)
        stats["terms"] = direct_term_count(f)
    return acc.total


def direct_term_count(f: FamilySpec) -> int:
    """Summand count of the direct route's residue-grid contraction,
    p^2 per prime.  The streaming fallback for p above the table cap skips
    zero-weight residues, but that exploits family sparsity, not the
    representation; the contraction itself always has p^2 terms."""
    return sum(p * p for p in _p1_primes(f))


# ---------------------------------------------------------------------------
# P1, dual (Poisson) route


def _inverse_table(p: int) -> np.ndarray:
    """inv[k] = k^{-1} mod p for 1 <= k < p, by the O(p) recurrence."""
    inv = np.zeros(p, dtype=np.int64)
    inv[1] = 1
    for k in range(2, p):
        inv[k] = (p - (p // k) * inv[p % k] % p) % p
    return inv


def _p1_poisson_term(f: FamilySpec, p: int, tol: float,
                     count_only: bool) -> tuple[complex, int]:
    a_sc, b_sc = f.a_scale, f.b_scale
    wt = f.weight
    m0, m1 = wt.axis_mass(0), wt.axis_mass(1)
    r0 = wt.radius(0, tol / m1)
    r1 = wt.radius(1, tol / m0)
    hmax = int(r0 * p / a_sc)
    kmax = int(r1 * p / b_sc)
    h = np.arange(-hmax, hmax + 1, dtype=np.int64)
    k = np.arange(-kmax, kmax + 1, dtype=np.int64)
    k = k[k % p != 0]  # (k/p) = 0 there, exactly
    if k.size == 0:
        return 0.0j, 0
    va = wt.axis_transform(0, h * (a_sc / p))
    vb = wt.axis_transform(1, k * (b_sc / p))
    absa, absb = np.abs(va), np.abs(vb)
    if count_only:
        order = np.sort(absb)
        lo = tol / np.maximum(absa, 1e-300)
        count = int(np.sum(order.size - np.searchsorted(order, lo)))
        return 0.0j, count
    mask = absa[:, None] * absb[None, :] >= tol
    count = int(mask.sum())
    if count == 0:
        return 0.0j, 0
    kmod = k % p
    inv = _inverse_table(p)
    kinv2 = inv[kmod] * inv[kmod] % p
    h3 = np.power(h % p, 3) % p
    phase = h3[:, None] * kinv2[None, :] % p
    omega = np.exp(-2j * np.pi * np.arange(p) / p)
    mat = omega[phase]
    ls = legendre_table(p).astype(np.float64)
    coeff = ls[kmod] * vb
    s_p = complex(va @ ((mat * mask) @ coeff))
    return s_p, count


def p1_poisson(f: FamilySpec, tail_tol: float | None = None,
               stats: dict | None = None) -> float:
    """P1 through the per-prime dual-lattice identity; exact up to the
    (h, k) truncation at tail_tol on |what|."""
    tol = f.tail_tol if tail_tol is None else tail_tol
    lx = f.log_x
    acc_re = _Neumaier()
    acc_im = _Neumaier()
    terms = 0
    primes = _p1_primes(f)
    for p in primes:
        s_p, n = _p1_poisson_term(f, p, tol, count_only=False)
        terms += n
        w1 = float(f.phi.phihat(math.log(p) / lx))
        pref = psi4(p) * (2.0 * math.log(p) / p**1.5) * w1
        v = pref * s_p
        acc_re.add(v.real)
        acc_im.add(v.imag)
    total = -(f.a_scale * f.b_scale / lx) * complex(acc_re.total, acc_im.total)
    if stats is not None:
        stats["primes"] = len(primes)
        stats["terms"] = terms
        stats["imag_leak"] = abs(total.imag)
    return total.real


def poisson_term_count(f: FamilySpec, tail_tol: float | None = None) -> int:
    """Summand count of the dual route without evaluating the sums."""
    tol = f.tail_tol if tail_tol is None else tail_tol
    total = 0
    for p in _p1_primes(f):
        _, n = _p1_poisson_term(f, p, tol, count_only=True)
        total += n
    return total


# ---------------------------------------------------------------------------
# P2 and the conductor average


def p2_direct(f: FamilySpec) -> float:
    """P2 over p < X^(nu/2), with lambda(p^2) = lambda(p)^2 - p throughout."""
    na, wa = _axis_lattice(f, 0)
    nb, wb = _axis_lattice(f, 1)
    lx = f.log_x
    acc = _Neumaier()
    for p in _p2_primes(f):
        tab = get_table(p, f.cache_dir, use_cache=f.cache_dir is not None)
        t = tab.table.astype(np.float64)
        sa = _residue_weights(na, wa, p)
        sb = _residue_weights(nb, wb, p)
        inner = float(sa @ (t * t - p) @ sb)
        pref = float(f.phi.phihat(2.0 * math.log(p) / lx))
        acc.add(pref * 2.0 * math.log(p) / (p * p * lx) * inner)
    return acc.total


def conductor_term(f: FamilySpec) -> tuple[float, float, float]:
    """(C, C_lo, C_hi): weighted averages of log N / log X over the family,
    at the heuristic conductor and at both ends of its sensitivity band."""
    na, wa = _axis_lattice(f, 0)
    nb, wb = _axis_lattice(f, 1)
    av = np.repeat(na, nb.size)
    bv = np.tile(nb, na.size)
    wv = np.repeat(wa, nb.size) * np.tile(wb, na.size)
    log_n, log_lo, log_hi = conductor_log_batch(av, bv)
    w = float(wv.sum())
    lx = f.log_x
    return (
        float((wv * log_n).sum()) / (w * lx),
        float((wv * log_lo).sum()) / (w * lx),
        float((wv * log_hi).sum()) / (w * lx),
    )


# ---------------------------------------------------------------------------
# report assembly


def rank_bound_exact(nu: Fraction) -> Fraction:
    """Average-rank bound 1/2 + 1/nu from the one-level density at support nu."""
    nu = Fraction(nu)
    if nu <= 0:
        raise ValueError("nu must be positive")
    return Fraction(1, 2) + 1 / nu


@dataclass
class DensityReport:
    x: float
    nu: Fraction
    method: str
    w: float
    scaled_mass: float
    p1: float
    p2: float
    p1_over_w: float
    p2_over_w: float
    c: float
    c_lo: float
    c_hi: float
    assembled: float
    predicted: float
    gap: float
    rank_bound: Fraction
    term_counts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def density_report(f: FamilySpec, method: str = "auto") -> DensityReport:
    """Full pipeline at one X; method "auto" switches to the dual route once
    the prime cutoff passes the table cap."""
    if method == "auto":
        method = "poisson" if f.x ** float(f.nu) > f.table_cap else "direct"
    if method not in ("direct", "poisson"):
        raise ValueError(f"unknown method {method!r}")
    warnings = []
    if f.nu > NU_PROVEN_LIMIT:
        warnings.append(
            f"nu = {f.nu} exceeds 7/10; the density limit is unproven there"
        )
    timings: dict[str, float] = {}
    counts: dict[str, int] = {}
    t0 = time.perf_counter()
    w = w_total(f)
    timings["w_total"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    stats: dict = {}
    p1 = p1_direct(f, stats) if method == "direct" else p1_poisson(f, stats=stats)
    timings["p1"] = time.perf_counter() - t0
    counts["p1_terms"] = stats.get("terms", 0)
    counts["p1_primes"] = stats.get("primes", 0)
    t0 = time.perf_counter()
    p2 = p2_direct(f)
    timings["p2"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    c, c_lo, c_hi = conductor_term(f)
    timings["conductor"] = time.perf_counter() - t0
    phihat0 = f.phi.phihat0
    phi0 = f.phi.phi0
    assembled = phihat0 * c + 0.5 * phi0 - (p1 + p2) / w
    predicted = phihat0 + 0.5 * phi0
    return DensityReport(
        x=f.x,
        nu=f.nu,
        method=method,
        w=w,
        scaled_mass=scaled_mass(f),
        p1=p1,
        p2=p2,
        p1_over_w=p1 / w,
        p2_over_w=p2 / w,
        c=c,
        c_lo=c_lo,
        c_hi=c_hi,
        assembled=assembled,
        predicted=predicted,
        gap=abs(assembled - predicted),
        rank_bound=rank_bound_exact(f.nu),
        term_counts=counts,
        timings=timings,
        warnings=tuple(warnings),
    )


CSV_COLUMNS = ("X", "nu", "W", "P1_over_W", "P2_over_W", "C_lo", "C", "C_hi",
               "assembled", "predicted", "gap")


def sweep_csv(reports: list[DensityReport]) -> str:
    """Deterministic CSV (repr floats) for a sweep of reports."""
    lines = [",".join(CSV_COLUMNS)]
    for r in reports:
        row = (repr(r.x), str(r.nu), repr(r.w), repr(r.p1_over_w), repr(r.p2_over_w),
               repr(r.c_lo), repr(r.c), repr(r.c_hi), repr(r.assembled),
               repr(r.predicted), repr(r.gap))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def report_json(r: DensityReport) -> str:
    d = {
        "X": r.x,
        "nu": str(r.nu),
        "method": r.method,
        "W": r.w,
        "scaled_mass": r.scaled_mass,
        "P1": r.p1,
        "P2": r.p2,
        "P1_over_W": r.p1_over_w,
        "P2_over_W": r.p2_over_w,
        "C_lo": r.c_lo,
        "C": r.c,
        "C_hi": r.c_hi,
        "assembled": r.assembled,
        "predicted": r.predicted,
        "gap": r.gap,
        "rank_bound": str(r.rank_bound),
        "rank_bound_float": float(r.rank_bound),
        "term_counts": r.term_counts,
        "timings": r.timings,
        "warnings": list(r.warnings),
    }
    return json.dumps(d, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# dyadic block and its multiplicative-character expansion


def g_dyadic(t):
    """Smooth dyadic bump supported in (1, 2)."""
    return bump(np.asarray(t, dtype=float) - 1.0)


def _dyadic_ints(lo: float, hi: float) -> np.ndarray:
    return np.arange(math.floor(lo) + 1, math.ceil(hi), dtype=np.int64)


def s_hkp_direct(h_size: float, k_size: float, p_size: float, f: FamilySpec,
                 g=g_dyadic) -> complex:
    """Literal dyadic block:

    S = sum_{h ~ H} sum_{k ~ K} sum_{p ~ P} (log p / p^{3/2}) psi4(p) (k/p)
           e(-h^3 kbar^2/p) what(hA/p, kB/p) g(h/H) g(k/K) g(p/P),

    with p > 3 prime and terms with p | k vanishing through the symbol.
    """
    a_sc, b_sc = f.a_scale, f.b_scale
    hs = _dyadic_ints(h_size, 2 * h_size)
    ks = _dyadic_ints(k_size, 2 * k_size)
    ps = [p for p in sieve_primes(int(2 * p_size)) if p > max(3, p_size)]
    total = 0.0 + 0.0j
    for p in ps:
        gp = float(g(p / p_size))
        if gp == 0.0:
            continue
        inv = _inverse_table(p)
        cp = math.log(p) / p**1.5 * psi4(p) * gp
        for k in ks:
            if k % p == 0:
                continue
            gk = float(g(k / k_size))
            if gk == 0.0:
                continue
            lk = legendre(int(k), p)
            kinv2 = int(inv[k % p]) ** 2 % p
            for h in hs:
                gh = float(g(h / h_size))
                if gh == 0.0:
                    continue
                t = pow(int(h), 3, p) * kinv2 % p
                wv = f.weight.what(h * a_sc / p, k * b_sc / p)
                total += cp * lk * gk * gh * wv * np.exp(-2j * np.pi * t / p)
    return complex(total)


def q_dk_chi(d: int, k: int, chi: DirichletCharacter,
             h_size: float, k_size: float, p_size: float, f: FamilySpec,
             g=g_dyadic) -> complex:
    """Inner block of the character expansion at divisor d | k^2:

    Q = sum_{p ~ P} sum_{h ~ H/d0} psi4(p) chi(p) (k/p) conj(chi)(h)^3
          e(-h^3 d0^3/(p k^2)) U,
    U = g(h d0/H) g(k/K) g(p/P) what(h d0 A/p, k B/p) (log p / p^{3/2}),

    where d0 is the least integer with d | d0^3.  The weight matches the
    literal block of s_hkp_direct term for term (h there = h d0 here).
    """
    k2 = k * k
    if k2 % d != 0:
        raise ValueError(f"d = {d} must divide k^2 = {k2}")
    d0 = cube_kernel(d)
    a_sc, b_sc = f.a_scale, f.b_scale
    hs = _dyadic_ints(h_size / d0, 2 * h_size / d0)
    ps = [p for p in sieve_primes(int(2 * p_size)) if p > max(3, p_size)]
    gk = float(g(k / k_size))
    if gk == 0.0 or hs.size == 0:
        return 0.0 + 0.0j
    total = 0.0 + 0.0j
    for p in ps:
        gp = float(g(p / p_size))
        if gp == 0.0 or k % p == 0:
            continue
        chip = char_eval(chi, p)
        if chip == 0.0:
            continue
        lk = legendre(int(k), p)
        cp = psi4(p) * chip * lk * gp * gk * math.log(p) / p**1.5
        mod = p * k2
        for h in hs:
            ghv = float(g(h * d0 / h_size))
            if ghv == 0.0:
                continue
            chih = char_eval(chi, int(h))
            if chih == 0.0:
                continue
            t = pow(int(h), 3, mod) * pow(d0, 3, mod) % mod
            wv = f.weight.what(h * d0 * a_sc / p, k * b_sc / p)
            total += (cp * chih.conjugate() ** 3 * ghv * wv
                      * np.exp(-2j * np.pi * t / mod))
    return complex(total)


@dataclass(frozen=True)
class ExpansionCheck:
    lhs: complex
    rhs: complex
    rel_err: float


def verify_char_expansion(h_size: float, k_size: float, p_size: float,
                          f: FamilySpec, g=g_dyadic) -> ExpansionCheck:
    """Exact identity: the literal dyadic block equals

    sum_{k ~ K} sum_{d | k^2} (1/phi(k^2/d)) sum_{chi mod k^2/d}
        tau(chi) conj(chi)(d0^3/d) Q(d, k, chi),

    with tau the modulus-level Gauss sum.  Strata whose d0^3/d shares a
    factor with k^2/d contribute 0 through conj(chi)(d0^3/d).
    """
    lhs = s_hkp_direct(h_size, k_size, p_size, f, g)
    rhs = 0.0 + 0.0j
    for k in _dyadic_ints(k_size, 2 * k_size):
        k2 = int(k * k)
        for d in range(1, k2 + 1):
            if k2 % d != 0:
                continue
            q = k2 // d
            grp = char_group(q)
            d0 = cube_kernel(d)
            ratio = d0**3 // d
            for chi in enumerate_characters(q):
                factor = char_eval(chi, ratio).conjugate()
                if factor == 0.0:
                    continue
                tau = gauss_sum(chi)
                if abs(tau) < 1e-15:
                    continue
                qv = q_dk_chi(d, int(k), chi, h_size, k_size, p_size, f, g)
                rhs += tau * factor * qv / grp.phi
    scale = max(abs(lhs), 1e-300)
    return ExpansionCheck(complex(lhs), complex(rhs), abs(lhs - rhs) / scale)


# ---------------------------------------------------------------------------
# single-curve explicit formula against listed zeros


def p1_single(a: int, b: int, f: FamilySpec) -> float:
    lx = f.log_x
    acc = _Neumaier()
    for p in _p1_primes(f):
        w1 = float(f.phi.phihat(math.log(p) / lx))
        acc.add(lambda_p(a, b, p) * w1 * 2.0 * math.log(p) / (p * lx))
    return acc.total


def p2_single(a: int, b: int, f: FamilySpec) -> float:
    lx = f.log_x
    acc = _Neumaier()
    for p in _p2_primes(f):
        w2 = float(f.phi.phihat(2.0 * math.log(p) / lx))
        acc.add(lambda_p2(a, b, p) * w2 * 2.0 * math.log(p) / (p * p * lx))
    return acc.total


@dataclass(frozen=True)
class ZeroList:
    label: str
    height: float
    gammas: tuple[float, ...]  # ordinates >= 0; a central zero is listed as 0


class ZeroFileError(ValueError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ZeroListTooShort(ValueError):
    def __init__(self, height: float, required: float):
        super().__init__(
            f"zero list reaches height {height:g} but {required:g} is needed"
        )
        self.required = required


def parse_zero_file(path: str | Path) -> ZeroList:
    """Read '# curve=<label> T=<height>' then one ordinate per line, ascending."""
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ZeroFileError("missing '# curve=<label> T=<height>' header", 1)
    head = lines[0].lstrip("#").split()
    fields = dict(part.split("=", 1) for part in head if "=" in part)
    if "curve" not in fields or "T" not in fields:
        raise ZeroFileError("header must carry curve=<label> and T=<height>", 1)
    try:
        height = float(fields["T"])
    except ValueError:
        raise ZeroFileError(f"bad height {fields['T']!r}", 1)
    gammas = []
    prev = -1.0
    for no, raw in enumerate(lines[1:], start=2):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            g = float(text)
        except ValueError:
            raise ZeroFileError(f"not a number: {text!r}", no)
        if g < 0:
            raise ZeroFileError(f"ordinate {g} is negative", no)
        if g < prev:
            raise ZeroFileError(f"ordinate {g} breaks ascending order", no)
        prev = g
        gammas.append(g)
    return ZeroList(fields["curve"], height, tuple(gammas))


def write_zero_file(path: str | Path, zl: ZeroList) -> None:
    out = [f"# curve={zl.label} T={zl.height:g}"]
    out += [repr(g) for g in zl.gammas]
    Path(path).write_text("\n".join(out) + "\n")


def _zero_tail_bound(height: float, log_n_hi: float, nu: float, scale: float) -> float:
    """Bound on the neglected sum over zeros above the listed height: the test
    function envelope 1/(pi^2 nu (scale t)^2) times a zero-count density
    log(N (2+t)) per unit ordinate, integrated upward."""
    def integrand(t):
        return (log_n_hi + math.log(2.0 + t)) / (t * t)
    val, _ = quad(integrand, height, np.inf, limit=200)
    return 2.0 * val / (math.pi**2 * nu * scale**2)


@dataclass(frozen=True)
class CrosscheckReport:
    curve: tuple[int, int]
    x: float
    lhs: float
    rhs_lo: float
    rhs: float
    rhs_hi: float
    gap: float          # |lhs - rhs| at the heuristic conductor
    gap_band: float     # distance from lhs to the whole rhs band
    budget: float
    budget_c: float
    tail_bound: float
    required_height: float
    conductor_info: ConductorInfo
    passed: bool


DEFAULT_BUDGET_C = 4.0


def explicit_formula_crosscheck(zl: ZeroList, a: int, b: int, f: FamilySpec,
                                budget_c: float = DEFAULT_BUDGET_C) -> CrosscheckReport:
    """Sum phi over listed ordinates of one curve against the prime-side
    explicit formula, with the conductor entering through its heuristic band.

    budget(X) = budget_c * (log X)^(-2/5); the residual is reported against
    it, and the listed height must make the zero tail small next to it.
    """
    lx = f.log_x
    scale = lx / (2.0 * math.pi)
    info = conductor(a, b)
    nu = float(f.nu)
    budget = budget_c * lx ** (-0.4)
    tail = _zero_tail_bound(max(zl.height, 1e-9), math.log(info.n_hi), nu, scale)
    req = max(zl.height, 1e-9)
    while _zero_tail_bound(req, math.log(info.n_hi), nu, scale) > 0.1 * budget:
        req *= 1.5
    if tail > 0.1 * budget:
        raise ZeroListTooShort(zl.height, req)
    lhs_acc = _Neumaier()
    for g in zl.gammas:
        mult = 1.0 if g < 1e-12 else 2.0
        lhs_acc.add(mult * float(f.phi.phi(g * scale)))
    lhs = lhs_acc.total
    p1 = p1_single(a, b, f)
    p2 = p2_single(a, b, f)
    base = 0.5 * f.phi.phi0 - p1 - p2
    rhs_at = lambda n: f.phi.phihat0 * math.log(n) / lx + base
    rhs_lo, rhs, rhs_hi = rhs_at(info.n_lo), rhs_at(info.n), rhs_at(info.n_hi)
    gap = abs(lhs - rhs)
    if rhs_lo <= lhs <= rhs_hi:
        gap_band = 0.0
    else:
        gap_band = min(abs(lhs - rhs_lo), abs(lhs - rhs_hi))
    return CrosscheckReport(
        curve=(a, b),
        x=f.x,
        lhs=lhs,
        rhs_lo=rhs_lo,
        rhs=rhs,
        rhs_hi=rhs_hi,
        gap=gap,
        gap_band=gap_band,
        budget=budget,
        budget_c=budget_c,
        tail_bound=tail,
        required_height=req,
        conductor_info=info,
        passed=gap_band <= budget,
    )
