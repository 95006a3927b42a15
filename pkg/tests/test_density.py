"""Density pipeline: lattice sums, dual routes, reports, zero-list crosscheck.

The brute-force oracles here are pure Python (pow-based symbols, explicit
loops) so they share no code with the vectorized paths they certify.
"""

import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ecdensity.density import (
    CrosscheckReport,
    DensityReport,
    ZeroFileError,
    ZeroList,
    ZeroListTooShort,
    conductor_term,
    density_report,
    direct_term_count,
    explicit_formula_crosscheck,
    family,
    g_dyadic,
    p1_direct,
    p1_poisson,
    p1_single,
    p2_direct,
    p2_single,
    parse_zero_file,
    poisson_term_count,
    q_dk_chi,
    rank_bound_exact,
    report_json,
    s_hkp_direct,
    scaled_mass,
    sweep_csv,
    verify_char_expansion,
    w_total,
    write_zero_file,
)
from ecdensity.characters import enumerate_characters

ZERO_FILE = Path(__file__).parent / "data" / "curve_m16_16_zeros.txt"


# -- pure-Python reference implementations ---------------------------------

def _leg(n: int, p: int) -> int:
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def _primes_upto(m: int) -> list[int]:
    return [p for p in range(5, m + 1)
            if all(p % d for d in range(2, int(math.isqrt(p)) + 1))]


def _lam(a: int, b: int, p: int) -> int:
    return -sum(_leg(x * x * x + a * x + b, p) for x in range(p))


def _u(t: float) -> float:
    if t <= 0.0 or t >= 1.0:
        return 0.0
    return math.exp(-1.0 / (t * (1.0 - t)))


def _lattice(scale: float, lo: float, hi: float):
    out = []
    n = math.floor(lo * scale) + 1
    while n <= math.ceil(hi * scale) - 1:
        t = (n / scale - lo) / (hi - lo)
        out.append((n, _u(t)))
        n += 1
    return out


def _brute_family(f):
    ax = _lattice(f.a_scale, f.weight.box[0], f.weight.box[1])
    bx = _lattice(f.b_scale, f.weight.box[2], f.weight.box[3])
    return ax, bx


def _brute_p1(f) -> float:
    ax, bx = _brute_family(f)
    lx = f.log_x
    total = 0.0
    for p in _primes_upto(int(f.x ** float(f.nu)) + 2):
        u = math.log(p) / lx
        ph = max(0.0, 1.0 - u / float(f.nu))
        if ph == 0.0:
            continue
        inner = sum(wa * wb * _lam(a, b, p) for a, wa in ax for b, wb in bx)
        total += inner * ph * 2.0 * math.log(p) / (p * lx)
    return total


def _brute_p2(f) -> float:
    ax, bx = _brute_family(f)
    lx = f.log_x
    total = 0.0
    for p in _primes_upto(int(f.x ** (float(f.nu) / 2.0)) + 2):
        u = 2.0 * math.log(p) / lx
        ph = max(0.0, 1.0 - u / float(f.nu))
        if ph == 0.0:
            continue
        inner = sum(wa * wb * (_lam(a, b, p) ** 2 - p)
                    for a, wa in ax for b, wb in bx)
        total += inner * ph * 2.0 * math.log(p) / (p * p * lx)
    return total


# -- family geometry -------------------------------------------------------

def test_family_scales():
    f = family(1e3)
    assert f.a_scale == pytest.approx(10.0)
    assert f.b_scale == pytest.approx(math.sqrt(1000.0))
    assert f.log_x == pytest.approx(math.log(1000.0))
    assert f.nu == Fraction(7, 10)


def test_w_total_matches_brute(fam_250, fam_1e3):
    for f in (fam_250, fam_1e3):
        ax, bx = _brute_family(f)
        want = sum(wa for _, wa in ax) * sum(wb for _, wb in bx)
        assert w_total(f) == pytest.approx(want, rel=1e-13)
    assert scaled_mass(fam_1e3) > 0


def test_empty_lattice_raises():
    # a box thinner than one lattice spacing at tiny X has no integer points
    with pytest.raises(ValueError):
        w_total(family(30.0, box=(0.5, 0.6, 0.5, 1.0)))


# -- P1 and P2, direct routes vs oracles -----------------------------------

def test_p1_direct_matches_brute(fam_250):
    got = p1_direct(fam_250)
    want = _brute_p1(fam_250)
    assert got == pytest.approx(want, abs=1e-11 * max(1.0, abs(want)))


def test_p2_direct_matches_brute(fam_250):
    got = p2_direct(fam_250)
    want = _brute_p2(fam_250)
    assert got == pytest.approx(want, abs=1e-11 * max(1.0, abs(want)))


def test_p1_table_and_streaming_agree(fam_1e3):
    # force the streaming fallback for every prime above 5
    low_cap = family(1e3, table_cap=5)
    assert p1_direct(low_cap) == pytest.approx(p1_direct(fam_1e3), rel=1e-12)


def test_p1_threads_bitwise_deterministic(fam_1e3):
    threaded = family(1e3, threads=2)
    assert p1_direct(threaded) == p1_direct(fam_1e3)


def test_p1_single_and_p2_single_match_brute(fam_250):
    f = fam_250
    lx = f.log_x
    for a, b in ((-16, 16), (1, 1)):
        want1 = 0.0
        for p in _primes_upto(int(f.x ** 0.7) + 2):
            ph = max(0.0, 1.0 - math.log(p) / lx / 0.7)
            want1 += _lam(a, b, p) * ph * 2.0 * math.log(p) / (p * lx)
        assert p1_single(a, b, f) == pytest.approx(want1, rel=1e-12)
        want2 = 0.0
        for p in _primes_upto(int(f.x ** 0.35) + 2):
            ph = max(0.0, 1.0 - 2.0 * math.log(p) / lx / 0.7)
            want2 += (_lam(a, b, p) ** 2 - p) * ph * 2.0 * math.log(p) / (p * p * lx)
        assert p2_single(a, b, f) == pytest.approx(want2, rel=1e-12)


def test_direct_term_count(fam_1e3):
    want = sum(p * p for p in _primes_upto(int(1e3 ** 0.7) + 2)
               if math.log(p) / math.log(1e3) < 0.7)
    assert direct_term_count(fam_1e3) == want


# -- dual (Poisson) route --------------------------------------------------

def test_poisson_matches_direct(fam_250, fam_1e3):
    for f in (fam_250, fam_1e3):
        stats: dict = {}
        got = p1_poisson(f, tail_tol=1e-14, stats=stats)
        want = p1_direct(f)
        assert got == pytest.approx(want, abs=1e-9 * max(1.0, abs(want)))
        assert stats["imag_leak"] < 1e-9
        assert stats["terms"] > 0


def test_poisson_term_count_consistent(fam_250):
    stats: dict = {}
    p1_poisson(fam_250, tail_tol=1e-10, stats=stats)
    assert poisson_term_count(fam_250, tail_tol=1e-10) == stats["terms"]


def test_poisson_tail_tol_monotone(fam_250):
    # tighter tolerance keeps at least as many dual terms
    loose = poisson_term_count(fam_250, tail_tol=1e-6)
    tight = poisson_term_count(fam_250, tail_tol=1e-12)
    assert tight >= loose > 0


# -- conductor average and assembled statistic -----------------------------

def test_conductor_term_banded(fam_1e3):
    c, lo, hi = conductor_term(fam_1e3)
    assert lo <= c <= hi
    assert 0 < lo and hi < 4


def test_conductor_term_matches_scalar_route(fam_250):
    from ecdensity.curves import conductor
    f = fam_250
    ax, bx = _brute_family(f)
    lx = f.log_x
    num = num_lo = num_hi = den = 0.0
    for a, wa in ax:
        for b, wb in bx:
            w = wa * wb
            info = conductor(a, b)
            num += w * math.log(info.n)
            num_lo += w * math.log(info.n_lo)
            num_hi += w * math.log(info.n_hi)
            den += w
    c, lo, hi = conductor_term(f)
    assert c == pytest.approx(num / den / lx, rel=1e-10)
    assert lo == pytest.approx(num_lo / den / lx, rel=1e-10)
    assert hi == pytest.approx(num_hi / den / lx, rel=1e-10)


def test_rank_bound_exact_values():
    assert rank_bound_exact(Fraction(7, 10)) == Fraction(27, 14)
    assert rank_bound_exact(Fraction(2, 3)) == Fraction(2)
    assert isinstance(rank_bound_exact(Fraction(1, 2)), Fraction)


def test_density_report_consistency(fam_1e3):
    rep = density_report(fam_1e3)
    assert isinstance(rep, DensityReport)
    assert rep.method == "direct"          # X^nu below the table cap
    assert rep.w == pytest.approx(w_total(fam_1e3), rel=1e-14)
    assert rep.p1_over_w == pytest.approx(rep.p1 / rep.w, rel=1e-14)
    assert rep.p2_over_w == pytest.approx(rep.p2 / rep.w, rel=1e-14)
    want = (rep.c * fam_1e3.phi.phihat0 + 0.5 * fam_1e3.phi.phi0
            - (rep.p1 + rep.p2) / rep.w)
    assert rep.assembled == pytest.approx(want, rel=1e-13)
    assert rep.gap == pytest.approx(abs(rep.assembled - rep.predicted))
    assert rep.rank_bound == Fraction(27, 14)
    assert rep.warnings == ()
    assert rep.term_counts["p1_terms"] == direct_term_count(fam_1e3)
    assert rep.term_counts["p1_primes"] > 0


def test_density_report_methods_agree(fam_250):
    d = density_report(fam_250, method="direct")
    p = density_report(fam_250, method="poisson")
    assert p.method == "poisson"
    # report-level runs keep the default tail_tol truncation, so the gate
    # here is looser than the tight-tolerance route comparison above
    assert d.p1 == pytest.approx(p.p1, abs=1e-6 * max(1.0, abs(d.p1)))
    assert d.p2 == p.p2                    # P2 has a single route
    with pytest.raises(ValueError):
        density_report(fam_250, method="nonsense")


def test_density_report_warns_beyond_proven_support():
    rep = density_report(family(250.0, nu=Fraction(3, 4)))
    assert any("7/10" in w for w in rep.warnings)


def test_predicted_value_at_default_support(fam_1e3):
    rep = density_report(fam_1e3)
    assert rep.predicted == pytest.approx(1.35)


# -- serialization ---------------------------------------------------------

def test_sweep_csv_shape_and_determinism():
    r1 = density_report(family(250.0))
    r2 = density_report(family(250.0))
    csv1 = sweep_csv([r1])
    csv2 = sweep_csv([r2])
    assert csv1 == csv2
    header, row = csv1.strip().split("\n")
    cols = header.split(",")
    assert cols[0] == "X" and "assembled" in cols and "nu" in cols
    assert len(row.split(",")) == len(cols)
    # floats round-trip exactly through repr
    vals = dict(zip(cols, row.split(",")))
    assert float(vals["assembled"]) == r1.assembled
    assert vals["nu"] == "7/10"


def test_report_json_round_trip(fam_250):
    rep = density_report(fam_250)
    blob = json.loads(report_json(rep))
    assert blob["X"] == 250.0
    assert blob["method"] == rep.method
    assert blob["assembled"] == rep.assembled
    assert blob["rank_bound"] == "27/14"


# -- dyadic block and its character expansion ------------------------------

def test_g_dyadic_window():
    assert g_dyadic(1.5) == pytest.approx(math.exp(-4.0), rel=1e-14)
    assert g_dyadic(1.0) == 0.0
    assert g_dyadic(2.0) == 0.0
    assert g_dyadic(0.5) == 0.0


def test_char_expansion_exact(fam_250):
    for h, k, p in ((4, 6, 50), (3, 4, 40)):
        chk = verify_char_expansion(h, k, p, fam_250)
        assert chk.rel_err < 1e-8
        assert chk.lhs == pytest.approx(chk.rhs, abs=1e-8 * max(1e-300, abs(chk.lhs)))


def test_char_expansion_rhs_is_genuinely_computed(fam_250):
    # the identity must not pass vacuously: the block itself is nonzero
    chk = verify_char_expansion(4, 6, 50, fam_250)
    assert abs(chk.lhs) > 0


def test_q_dk_chi_requires_divisibility(fam_250):
    chi = enumerate_characters(9)[1]
    with pytest.raises(ValueError):
        q_dk_chi(5, 3, chi, 4.0, 6.0, 50.0, fam_250)


def test_s_hkp_direct_empty_prime_window(fam_250):
    # a window below the smallest admissible prime has no terms
    assert s_hkp_direct(4.0, 6.0, 1.0, fam_250, g_dyadic) == 0


# -- zero lists and the explicit-formula crosscheck ------------------------

def test_parse_zero_file_round_trip(tmp_path):
    zl = ZeroList("test(1,2)", 12.5, (0.0, 1.25, 3.5))
    path = tmp_path / "z.txt"
    write_zero_file(path, zl)
    back = parse_zero_file(path)
    assert back == zl


def test_parse_zero_file_errors(tmp_path):
    path = tmp_path / "z.txt"

    path.write_text("1.0\n2.0\n")
    with pytest.raises(ZeroFileError) as e:
        parse_zero_file(path)
    assert e.value.line_no == 1

    path.write_text("# curve=c T=ten\n1.0\n")
    with pytest.raises(ZeroFileError):
        parse_zero_file(path)

    path.write_text("# curve=c T=10\n1.0\nfoo\n")
    with pytest.raises(ZeroFileError) as e:
        parse_zero_file(path)
    assert e.value.line_no == 3

    path.write_text("# curve=c T=10\n2.0\n1.0\n")
    with pytest.raises(ZeroFileError) as e:
        parse_zero_file(path)
    assert e.value.line_no == 3

    path.write_text("# curve=c T=10\n-1.0\n")
    with pytest.raises(ZeroFileError):
        parse_zero_file(path)


def test_parse_zero_file_skips_blanks_and_comments(tmp_path):
    path = tmp_path / "z.txt"
    path.write_text("# curve=c T=10\n\n# interior comment\n1.0\n\n2.0\n")
    assert parse_zero_file(path).gammas == (1.0, 2.0)


def test_frozen_zero_list_parses():
    zl = parse_zero_file(ZERO_FILE)
    assert zl.height == 22.0
    assert zl.gammas[0] == 0.0             # central zero of the rank-1 curve
    assert zl.gammas[1] == pytest.approx(5.00317001401, abs=1e-9)
    assert len(zl.gammas) == 15
    assert all(b > a for a, b in zip(zl.gammas, zl.gammas[1:]))


def test_crosscheck_passes_on_frozen_curve():
    zl = parse_zero_file(ZERO_FILE)
    rep = explicit_formula_crosscheck(zl, -16, 16, family(1e4))
    assert isinstance(rep, CrosscheckReport)
    assert rep.passed
    assert rep.gap_band <= rep.budget
    assert rep.tail_bound <= 0.1 * rep.budget
    assert rep.conductor_info.n_lo == 37
    assert rep.rhs_lo <= rep.rhs <= rep.rhs_hi
    # the zeros side really sums the listed ordinates
    f = family(1e4)
    scale = f.log_x / (2 * math.pi)
    want = sum((1.0 if g == 0 else 2.0) * float(f.phi.phi(g * scale))
               for g in zl.gammas)
    assert rep.lhs == pytest.approx(want, rel=1e-12)


def test_crosscheck_rejects_short_list():
    zl = parse_zero_file(ZERO_FILE)
    kept = tuple(g for g in zl.gammas if g <= 3.0)
    short = ZeroList(zl.label, 3.0, kept)
    with pytest.raises(ZeroListTooShort) as e:
        explicit_formula_crosscheck(short, -16, 16, family(1e4))
    assert e.value.required > 3.0
