"""Explicit-formula crosscheck against a frozen list of actual zeros.

For the single curve (-16, 16), conductor 37, the repository carries the
imaginary parts of the L-function zeros up to height 22, computed offline
from the completed L-function.  The zero-side sum of the test function
must land inside the conductor band of the prime-side evaluation, up to a
budget that covers the truncated zero tail and the band width.
"""

from pathlib import Path

from ecdensity import explicit_formula_crosscheck, family, parse_zero_file

zeros = Path(__file__).resolve().parents[1] / "tests" / "data" / "curve_m16_16_zeros.txt"
zl = parse_zero_file(zeros)
print(f"zero list: {zl.label}, height {zl.height}, {len(zl.gammas)} ordinates")
print(f"first few: {[round(g, 5) for g in zl.gammas[:4]]} "
      "(the 0.0 is the central zero; the curve has rank 1)")

for x in (1e3, 1e4):
    rep = explicit_formula_crosscheck(zl, -16, 16, family(x))
    print()
    print(f"X={x:.0e}: zero side {rep.lhs:.4f}, "
          f"prime side band [{rep.rhs_lo:.4f}, {rep.rhs_hi:.4f}]")
    print(f"  band gap {rep.gap_band:.4f} <= budget {rep.budget:.4f} "
          f"(tail bound {rep.tail_bound:.4f})  passed={rep.passed}")
    print(f"  conductor band [{rep.conductor_info.n_lo}, {rep.conductor_info.n_hi}], "
          f"needs zeros to height {rep.required_height:.1f}")
