"""
Guarantee curves
================

The single-pass guarantee 2 - 2(1 - alpha) f(alpha) as alpha varies, the
multi-pass guarantee as the alpha schedule gets finer, and one exact LP
certificate.  Everything is an exact fraction; decimals are for reading.
"""

from fractions import Fraction

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from cyclevca import f_alpha, integral_bound, lp_certificates, ratio_bound
from cyclevca.bounds import curve_rows

rows = curve_rows("bound")
best = min(rows, key=lambda r: r[2])
print("best single alpha:", best[0], "bound", best[2], f"= {float(best[2]):.5f}")

xs = [float(a) for a, _, _ in rows]
ys = [float(r) for _, _, r in rows]

ks = [1, 2, 4, 8, 16, 32, 64, 128]
ib = [integral_bound(k) for k in ks]
for k, b in zip(ks, ib):
    print(f"k_max={k:>4}  {float(b):.6f}")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
ax1.plot(xs, ys, drawstyle="steps-post")
ax1.axvline(8 / 11, ls=":", c="k")
ax1.set_xlabel("alpha")
ax1.set_ylabel("single-pass ratio bound")
ax2.semilogx(ks, [float(b) for b in ib], "o-")
ax2.set_xlabel("k_max")
ax2.set_ylabel("multi-pass ratio bound")
fig.tight_layout()
fig.savefig("bound_curves.png", dpi=120)
print("wrote bound_curves.png")

# the lower-bound LP at alpha = 3/4 for a critical set covering 5 of 39 vertices
cert = lp_certificates(39, 5, Fraction(3, 4))
print("LP value", cert.objective, "interval", cert.interval)
print("dual", [str(y) for y in cert.dual])
print("f(3/4) =", f_alpha(Fraction(3, 4)), " ratio_bound(3/4) =", ratio_bound(Fraction(3, 4)))
