"""Command-line front end: density sweeps, verification suites, cache
management, and the single-curve zero-list crosscheck.

Data goes to files (or stdout when no --out prefix is given); diagnostics go
to stderr.  Exit codes: 0 success, 1 contract or test failure, 2 argument or
config or file-format errors, 3 zero list truncated below the required
height.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from .analysis import DEFAULT_BOX, GaussianPair, poisson_mod_l_check
from .arith import sieve_primes
from .characters import (
    char_order_and_conductor,
    cubic_structure_report,
    gauss_sum,
    gauss_sum_matrix,
    is_primitive,
    quadratic_gauss_bound_check,
    real_characters,
)
from .density import (
    DEFAULT_TAIL_TOL,
    ZeroFileError,
    ZeroListTooShort,
    density_report,
    explicit_formula_crosscheck,
    family,
    p1_poisson,
    parse_zero_file,
    report_json,
    sweep_csv,
    verify_char_expansion,
)
from .frobenius import (
    DEFAULT_TABLE_CAP,
    TableFormatError,
    cache_dir,
    get_table,
    lambda_sq_total,
    load_table,
    twisted_closed_form_all,
    twisted_complete_sum_all,
)
from .harness import (
    dirichlet_meanvalue_suite,
    expsum_ratio,
    gallagher_integral_suite,
    gallagher_spacing_suite,
    harness_csv,
    heathbrown_suite,
    large_sieve_suite,
    lemma_f_growth,
    weyl_ratio,
)

DEFAULT_SEED = 20260823


class ConfigError(ValueError):
    def __init__(self, message: str, line_no: int = 0):
        where = f"line {line_no}: " if line_no else ""
        super().__init__(where + message)
        self.line_no = line_no


@dataclass(frozen=True)
class RunConfig:
    x: tuple[float, ...] = (1e4,)
    nu: Fraction = Fraction(7, 10)
    box: tuple[float, float, float, float] = DEFAULT_BOX
    method: str = "auto"
    cache_dir: str | None = None
    seed: int = DEFAULT_SEED
    out: str | None = None
    table_cap: int = DEFAULT_TABLE_CAP
    threads: int = 1
    tail_tol: float = DEFAULT_TAIL_TOL


def validate_config(cfg: RunConfig) -> RunConfig:
    if not cfg.x:
        raise ConfigError("empty X sweep")
    if any(v <= 1.0 for v in cfg.x):
        raise ConfigError("every X must exceed 1")
    if list(cfg.x) != sorted(cfg.x):
        raise ConfigError("X sweep must be ascending")
    if not (0 < cfg.nu < 1):
        raise ConfigError(f"nu = {cfg.nu} outside (0, 1)")
    x0, x1, y0, y1 = cfg.box
    if not (x0 < x1 and y0 < y1):
        raise ConfigError(f"invalid weight box {cfg.box}")
    if cfg.method not in ("auto", "direct", "poisson", "both"):
        raise ConfigError(f"unknown method {cfg.method!r}")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    if cfg.table_cap < 5:
        raise ConfigError("table_cap must be >= 5")
    if not (0 < cfg.tail_tol < 1):
        raise ConfigError("tail_tol must be in (0, 1)")
    return cfg


_CONFIG_KEYS = ("x", "nu", "box", "method", "cache_dir", "seed", "out",
                "table_cap", "threads", "tail_tol")


def parse_config(text: str) -> RunConfig:
    """Flat key = value lines; '#' starts a comment; unknown keys rejected."""
    fields: dict = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", no)
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown key {key!r}", no)
        try:
            if key == "x":
                fields["x"] = tuple(float(t) for t in val.replace(",", " ").split())
            elif key == "nu":
                fields["nu"] = Fraction(val)
            elif key == "box":
                parts = tuple(float(t) for t in val.replace(",", " ").split())
                if len(parts) != 4:
                    raise ValueError("need 4 numbers")
                fields["box"] = parts
            elif key in ("seed", "table_cap", "threads"):
                fields[key] = int(val)
            elif key == "tail_tol":
                fields[key] = float(val)
            else:
                fields[key] = val
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {exc}", no)
    return validate_config(RunConfig(**fields))


def render_config(cfg: RunConfig) -> str:
    lines = [
        "x = " + " ".join(repr(v) for v in cfg.x),
        f"nu = {cfg.nu}",
        "box = " + ",".join(repr(v) for v in cfg.box),
        f"method = {cfg.method}",
        f"seed = {cfg.seed}",
        f"table_cap = {cfg.table_cap}",
        f"threads = {cfg.threads}",
        f"tail_tol = {repr(cfg.tail_tol)}",
    ]
    if cfg.cache_dir is not None:
        lines.append(f"cache_dir = {cfg.cache_dir}")
    if cfg.out is not None:
        lines.append(f"out = {cfg.out}")
    return "\n".join(lines) + "\n"


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", metavar="PATH", help="key=value config file")
    sp.add_argument("--x", nargs="+", metavar="X", help="family size sweep")
    sp.add_argument("--nu", help="support parameter, fraction or decimal")
    sp.add_argument("--method", choices=("auto", "direct", "poisson", "both"))
    sp.add_argument("--threads", type=int)
    sp.add_argument("--out", metavar="PREFIX", help="output file prefix")
    sp.add_argument("--box", nargs=4, type=float, metavar=("X0", "X1", "Y0", "Y1"))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--table-cap", type=int, dest="table_cap")
    sp.add_argument("--cache-dir", dest="cache_dir")
    sp.add_argument("--tail-tol", type=float, dest="tail_tol")


def _config_from_args(args) -> RunConfig:
    if getattr(args, "config", None):
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}")
        cfg = parse_config(text)
    else:
        cfg = RunConfig()
    updates: dict = {}
    if getattr(args, "x", None):
        try:
            updates["x"] = tuple(float(t) for t in args.x)
        except ValueError as exc:
            raise ConfigError(f"bad --x value: {exc}")
    if getattr(args, "nu", None):
        try:
            updates["nu"] = Fraction(args.nu)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad --nu value: {exc}")
    if getattr(args, "box", None):
        updates["box"] = tuple(args.box)
    for key in ("method", "threads", "seed", "table_cap", "cache_dir",
                "tail_tol", "out"):
        val = getattr(args, key, None)
        if val is not None:
            updates[key] = val
    return validate_config(replace(cfg, **updates))


def _spec_for(cfg: RunConfig, x: float):
    return family(x, cfg.nu, cfg.box, table_cap=cfg.table_cap,
                  tail_tol=cfg.tail_tol, threads=cfg.threads,
                  cache_dir=cfg.cache_dir)


# ---------------------------------------------------------------------------
# density


def cmd_density(cfg: RunConfig) -> int:
    reports = []
    for x in cfg.x:
        f = _spec_for(cfg, x)
        if cfg.method == "both":
            rep = density_report(f, "direct")
            p1p = p1_poisson(f)
            gate = 1e-6 * (1.0 + abs(rep.p1)) + 10.0 * f.tail_tol * (
                f.a_scale * f.b_scale / f.log_x)
            dual_gap = abs(rep.p1 - p1p)
            _diag(f"X={x:g} dual-path gap {dual_gap:.3e} (gate {gate:.3e})")
            if dual_gap > gate:
                _diag(f"FAIL X={x:g}: direct and Poisson paths disagree")
                return 1
        else:
            rep = density_report(f, cfg.method)
        for w in rep.warnings:
            _diag(f"warning: {w}")
        _diag(f"X={x:g} method={rep.method} assembled={rep.assembled:.6f} "
              f"predicted={rep.predicted:.6f} gap={rep.gap:.2e}")
        reports.append(rep)
    csv_text = sweep_csv(reports)
    if cfg.out:
        Path(f"{cfg.out}.csv").write_text(csv_text)
        body = ",\n".join(report_json(r) for r in reports)
        Path(f"{cfg.out}.json").write_text("[\n" + body + "\n]\n")
        _diag(f"wrote {cfg.out}.csv and {cfg.out}.json")
    else:
        sys.stdout.write(csv_text)
    return 0


# ---------------------------------------------------------------------------
# verify


def _identity_checks(cfg: RunConfig):
    checks = []

    def second_moment():
        for p in sieve_primes(97):
            if p < 5:
                continue
            if lambda_sq_total(p) != p * p * (p - 1):
                return False, f"p={p}"
        return True, "p <= 97"

    def twisted_sums():
        worst = 0.0
        for p in sieve_primes(31):
            if p < 5:
                continue
            err = abs(twisted_complete_sum_all(p) - twisted_closed_form_all(p)).max()
            worst = max(worst, float(err) / p**1.5)
            if worst > 1e-6:
                return False, f"p={p} rel err {worst:.2e}"
        return True, f"p <= 31, worst rel err {worst:.2e}"

    def gauss_suite():
        for q in range(1, 121):
            _, _, mat = gauss_sum_matrix(q)
            if abs(mat).max() > math.sqrt(q) + 1e-9:
                return False, f"|tau| > sqrt(q) at q={q}"
        worst = 0.0
        for l in range(3, 200, 2):
            for chi in real_characters(l):
                if not is_primitive(chi):
                    continue
                order, _ = char_order_and_conductor(chi)
                if order != 2:
                    continue
                fac_sf = all(l % (pp * pp) for pp in sieve_primes(int(l**0.5) + 1))
                if not fac_sf:
                    continue
                for a in (1, 2, l - 1):
                    if math.gcd(a, l) != 1:
                        continue
                    tau = gauss_sum(chi, a)
                    root = math.sqrt(l)
                    chi_a = chi(a)
                    want = chi_a * root if l % 4 == 1 else 1j * chi_a * root
                    worst = max(worst, abs(tau - want))
        if worst > 1e-9:
            return False, f"real primitive mismatch {worst:.2e}"
        for l in range(3, 121):
            s, bound = quadratic_gauss_bound_check(l, 1, 1)
            if s > bound + 1e-9:
                return False, f"quadratic bound fails at l={l}"
        return True, f"q <= 120, real primitive worst {worst:.2e}"

    def cubic_structure():
        rows = cubic_structure_report(1000)
        bad = [r.q for r in rows if not r.shape_ok]
        if bad:
            return False, f"shape violations at {bad[:5]}"
        by_q = {r.q: r.n_primitive_cubic for r in rows}
        if by_q.get(9, 0) != 2 or by_q.get(27, -1) != 0:
            return False, f"mod 9 -> {by_q.get(9)}, mod 27 -> {by_q.get(27)}"
        return True, f"q <= 1000, {len(rows)} moduli with cubic characters"

    def char_expansion():
        f = _spec_for(cfg, 1000.0)
        chk = verify_char_expansion(4.0, 6.0, 50.0, f)
        ok = chk.rel_err <= 1e-8
        return ok, f"(4,6,50) rel err {chk.rel_err:.2e}"

    def poisson_checks():
        pair = GaussianPair(1.0)
        lhs, rhs = poisson_mod_l_check(pair, 7, 3, 5.0)
        if abs(lhs - rhs) > 1e-12 * (1 + abs(lhs)):
            return False, f"mod-l identity off by {abs(lhs - rhs):.2e}"
        f = replace(_spec_for(cfg, 1000.0), tail_tol=1e-14)
        from .density import p1_direct
        d = p1_direct(f)
        p = p1_poisson(f)
        ok = abs(d - p) <= 1e-6 * (1 + abs(d))
        return ok, f"X=1e3 dual gap {abs(d - p):.2e}"

    checks = [
        ("second_moment", second_moment),
        ("twisted_sums", twisted_sums),
        ("gauss_suite", gauss_suite),
        ("cubic_structure", cubic_structure),
        ("char_expansion", char_expansion),
        ("poisson_checks", poisson_checks),
    ]
    failed = 0
    for name, fn in checks:
        t0 = time.perf_counter()
        ok, detail = fn()
        dt = time.perf_counter() - t0
        _diag(f"{'ok  ' if ok else 'FAIL'} {name}: {detail} [{dt:.1f}s]")
        failed += not ok
    return failed


def _lemma_suite(cfg: RunConfig) -> int:
    failed = 0
    reports = []
    ls = large_sieve_suite(seed=cfg.seed)
    reports.append(ls)
    _diag(f"{'ok  ' if ls.failures == 0 else 'FAIL'} large_sieve: "
          f"{ls.instances} instances, {ls.failures} failures, max {ls.max_ratio:.4f}")
    failed += ls.failures > 0
    gs = gallagher_spacing_suite(seed=cfg.seed)
    reports.append(gs)
    _diag(f"{'ok  ' if gs.failures == 0 else 'FAIL'} gallagher_spacing: "
          f"{gs.instances} instances, {gs.failures} failures, max {gs.max_ratio:.4f}")
    failed += gs.failures > 0
    for rep in (heathbrown_suite(seed=cfg.seed),
                gallagher_integral_suite(seed=cfg.seed),
                dirichlet_meanvalue_suite(seed=cfg.seed),
                expsum_ratio(32, 64, 1, 1, seed=cfg.seed),
                weyl_ratio(16, 128, 3, seed=cfg.seed)):
        reports.append(rep)
        _diag(f"ok   {rep.lemma}: max ratio {rep.max_ratio:.4f} "
              f"(p50 {rep.p50:.4f}, p90 {rep.p90:.4f})")
    fits = lemma_f_growth(10**5)
    for fit in fits:
        tag = "ok  " if fit.ok else "FAIL"
        _diag(f"{tag} growth[{fit.name}]: slope {fit.slope:.3f} "
              f"<= {fit.stated_exponent} + 0.1")
        failed += not fit.ok
    text = harness_csv(reports)
    if cfg.out:
        Path(f"{cfg.out}_ratios.csv").write_text(text)
        _diag(f"wrote {cfg.out}_ratios.csv")
    else:
        sys.stdout.write(text)
    return failed


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    failed = 0
    if suite in ("identities", "all"):
        failed += _identity_checks(cfg)
    if suite in ("lemmas", "all"):
        failed += _lemma_suite(cfg)
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------
# cache


def cmd_cache(cfg: RunConfig, action: str) -> int:
    base = Path(cfg.cache_dir) if cfg.cache_dir else cache_dir()
    if action == "build":
        base.mkdir(parents=True, exist_ok=True)
        ps = [p for p in sieve_primes(cfg.table_cap) if p >= 5]
        for p in ps:
            get_table(p, base, use_cache=True)
        _diag(f"{len(ps)} tables present in {base}")
        return 0
    entries = sorted(base.glob("*.frbt")) if base.is_dir() else []
    if action == "stat":
        total = 0
        for path in entries:
            try:
                tab = load_table(path)
                size = path.stat().st_size
                total += size
                _diag(f"p={tab.p} {size} bytes {path.name}")
            except (TableFormatError, OSError) as exc:
                _diag(f"corrupt {path.name}: {exc}")
        _diag(f"{len(entries)} entries, {total} bytes in {base}")
        return 0
    if action == "gc":
        removed = 0
        for path in entries:
            try:
                load_table(path)
            except (TableFormatError, OSError) as exc:
                _diag(f"removing {path.name}: {exc}")
                path.unlink(missing_ok=True)
                removed += 1
        _diag(f"removed {removed} corrupt entries from {base}")
        return 0
    raise ValueError(f"unknown cache action {action!r}")


# ---------------------------------------------------------------------------
# crosscheck


def cmd_crosscheck(cfg: RunConfig, zero_file: str, a: int, b: int) -> int:
    try:
        zl = parse_zero_file(zero_file)
    except OSError as exc:
        _diag(f"cannot read zero file: {exc}")
        return 2
    except ZeroFileError as exc:
        _diag(f"malformed zero file: {exc}")
        return 2
    f = _spec_for(cfg, cfg.x[0])
    try:
        rep = explicit_formula_crosscheck(zl, a, b, f)
    except ZeroListTooShort as exc:
        _diag(f"zero list truncated below required height: {exc}")
        return 3
    n = rep.conductor_info
    _diag(f"curve=({a},{b}) N={n.n} band=[{n.n_lo},{n.n_hi}] exact={n.exact}")
    print(f"lhs={rep.lhs!r} rhs_lo={rep.rhs_lo!r} rhs={rep.rhs!r} "
          f"rhs_hi={rep.rhs_hi!r} gap={rep.gap!r} band_gap={rep.gap_band!r} "
          f"budget={rep.budget!r} tail={rep.tail_bound!r}")
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecdensity",
        description="One-level density of low-lying zeros over the family "
                    "y^2 = x^3 + ax + b, with verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    pd = sub.add_parser("density", help="run the density pipeline over an X sweep")
    _add_common(pd)
    pv = sub.add_parser("verify", help="run identity and lemma suites")
    pv.add_argument("suite", nargs="?", default="all",
                    choices=("identities", "lemmas", "all"))
    _add_common(pv)
    pc = sub.add_parser("cache", help="manage the residue-table cache")
    pc.add_argument("action", choices=("build", "stat", "gc"))
    _add_common(pc)
    px = sub.add_parser("crosscheck",
                        help="explicit-formula check of one curve against a zero list")
    px.add_argument("zero_file")
    px.add_argument("a", type=int)
    px.add_argument("b", type=int)
    _add_common(px)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
    except ConfigError as exc:
        _diag(f"config error: {exc}")
        return 2
    if args.command == "density":
        return cmd_density(cfg)
    if args.command == "verify":
        return cmd_verify(cfg, args.suite)
    if args.command == "cache":
        return cmd_cache(cfg, args.action)
    if args.command == "crosscheck":
        return cmd_crosscheck(cfg, args.zero_file, args.a, args.b)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
