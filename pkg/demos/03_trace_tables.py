"""Trace-of-Frobenius tables and the identities that anchor them.

lambda_{a,b}(p) is minus the Legendre sum of x^3 + ax + b over F_p.  The
whole (a, b) grid for one prime is a small integer matrix; its second
moment is exactly p^2 (p - 1), and its twisted discrete Fourier transform
collapses to a closed form built from a Legendre symbol, a quartic phase
and p^(3/2).
"""

import math
import tempfile
from pathlib import Path

from ecdensity import (
    lambda_p,
    lambda_sq_total,
    lambda_table,
    load_table,
    save_table,
    twisted_closed_form,
    twisted_complete_sum,
)

p = 13
tab = lambda_table(p)
print(f"lambda table mod {p} (rows a, cols b):")
for row in tab.table:
    print("  ", " ".join(f"{v:+3d}" for v in row))

print()
print(f"Hasse check: max |lambda| = {abs(tab.table).max()} < 2 sqrt({p}) "
      f"= {2 * math.sqrt(p):.2f}")
print(f"second moment: {lambda_sq_total(p)} == p^2(p-1) = {p * p * (p - 1)}")
print(f"spot value lambda_(1,1)(5) = {lambda_p(1, 1, 5)}")

h, k = 2, 3
brute = twisted_complete_sum(p, h, k, tab)
closed = twisted_closed_form(p, h, k)
print()
print(f"twisted sum at (h,k)=({h},{k}): brute {brute:+.6f}")
print(f"                        closed  {closed:+.6f}")

# tables round-trip through a checksummed binary cache
with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "table.frbt"
    save_table(tab, path)
    again = load_table(path)
    print()
    print(f"cache round trip: {path.stat().st_size} bytes, "
          f"equal={bool((again.table == tab.table).all())}")
