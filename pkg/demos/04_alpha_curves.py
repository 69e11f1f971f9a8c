"""
How the indifference probability moves with wealth
===================================================

alpha(x) is the probability on b that makes c + x as good as the lottery
between b + x and a + x.  Concave log utility lowers it toward (c-a)/(b-a)
as wealth grows; convex utility raises it; linear utility keeps it fixed.
Exponential utility keeps it fixed too, since its risk aversion does not
depend on wealth.
"""

from betlab import (
    AlphaSpec,
    Exponential,
    Linear,
    LogShifted,
    Power,
    alpha,
    alpha_monotonicity_report,
)

spec = AlphaSpec(0, 400, 1000, 0, 5000)
for u in (LogShifted(), Power(0.5), Exponential(0.001), Linear(1.0), Power(2.0)):
    ends = alpha(u, spec, [0.0, 5000.0])
    print(f"{u.family:>12} {str(u.params()):<18} alpha(0)={ends[0]:.4f} alpha(5000)={ends[1]:.4f} "
          f"-> {alpha_monotonicity_report(u, spec, 1000)}")

far = AlphaSpec(0, 400, 1000, 0, 1e6)
for x in (1e3, 1e4, 1e5, 1e6):
    print(f"log utility, x={x:>9.0f}: alpha={alpha(LogShifted(), far, x):.5f}")
