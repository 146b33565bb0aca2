"""Growth of the order bound f(n) = n*g(n)/h(n).

log f(n) grows like n/2, so the ratio log(f(n)) / (n/2) tends to 1.
The exact product is only formed below 10^5; above that the log-space
summation takes over, which is why sampling at n = 10^6 costs
milliseconds rather than megabytes.

Run from the repository root:  python demos/04_bound_asymptotics.py
"""

import math

from abelmax import numtheory as nt

print("n          log f(n)        ratio = log f / (n/2)")
for n in [100, 1000, 10_000, 100_000, 1_000_000]:
    sample = nt.asymptotic_ratio(n)
    print(f"{sample.n:<10d} {sample.log_f:<15.3f} {sample.ratio:.9f}")

print()
print("cross-check at exact scale: for n <= 10^5 the exact product exists,")
print("and its true logarithm matches the summed one to floating precision:")
for n in [1000, 10_000]:
    exact = math.log(nt.order_bound(n).value)
    summed = nt.order_bound_log(n)
    print(f"  n={n:<7d} exact={exact:.9f} summed={summed:.9f} "
          f"rel.err={(abs(summed - exact) / exact):.2e}")
