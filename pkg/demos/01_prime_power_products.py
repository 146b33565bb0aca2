"""Walk through the arithmetic side of the package.

The divisibility bound for a finite group order is built from two
products over primes: g(n), the product of all prime powers <= n, and
h(n), the product of the primes in (n/2, n].  This script prints a
small table of both, the combined bound f(n) = n*g(n)/h(n), and the
scan showing which intervals (m/2, m] are too thin to hold two primes.

Run from the repository root:  python demos/01_prime_power_products.py
"""

from abelmax import numtheory as nt

print("n      g(n)            h(n)    f(n) = n*g/h")
for n in [2, 3, 4, 5, 6, 8, 10, 11, 12, 16]:
    g = nt.prime_power_product(n)
    h = nt.upper_half_prime_product(n)
    f = nt.order_bound(n)
    print(f"{n:<6d} {g.value:<15d} {h.value:<7d} {f.value}")

print()
print("factored forms carry exact exponents, e.g.")
print(f"  g(16) = {nt.prime_power_product(16).factored_str()}")
print(f"  h(16) = {nt.upper_half_prime_product(16).factored_str()}")

print()
limit = 10**6
exceptions = nt.two_prime_interval_exceptions(limit)
print(f"m in [3, {limit}] with fewer than two primes in (m/2, m]: {exceptions}")
print("(the scan is what makes the equality analysis finite: beyond these")
print(" three values every interval carries at least two primes)")
