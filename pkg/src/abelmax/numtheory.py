"""Exact and log-space arithmetic for prime-power products.

The quantities computed here drive every divisibility check in the
package:

* ``prime_power_product(n)`` - the product of all prime powers <= n,
  equivalently prod(p ** (e*(e+1)/2)) over primes p <= n where e is the
  largest exponent with p**e <= n.
* ``upper_half_prime_product(n)`` - the product of the primes in
  (n/2, n].
* ``order_bound(n)`` - n * prime_power_product(n) / upper_half_prime_product(n),
  an integer because every prime in (n/2, n] occurs exactly once in the
  prime-power product.

Everything is exact big-integer arithmetic except ``order_bound_log``,
which sums exponent * log(p) so the bound can be evaluated far beyond
the range where the exact product is practical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError

# Deterministic Miller-Rabin witnesses; valid for all n < 3.3e24 (in
# particular below 2**64, which covers every order this package builds).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Exact order_bound values above this are refused; use order_bound_log.
EXACT_BOUND_CAP = 100_000


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (valid below 2**64)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# Read-mostly shared sieve table, grown on demand.  Rebuilding is
# idempotent, so concurrent first use is harmless.
_sieve_limit = 0
_sieve_flags = np.zeros(1, dtype=bool)
_prime_counts = np.zeros(1, dtype=np.int64)


def _ensure_sieve(limit: int) -> None:
    global _sieve_limit, _sieve_flags, _prime_counts
    if limit <= _sieve_limit:
        return
    limit = max(limit, 2 * _sieve_limit, 1 << 10)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    _sieve_flags = flags
    _prime_counts = np.cumsum(flags, dtype=np.int64)
    _sieve_limit = limit


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending; empty for limit < 2."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    if limit < 2:
        return []
    _ensure_sieve(limit)
    return np.nonzero(_sieve_flags[: limit + 1])[0].tolist()


def primes_in_halfopen(a: float, b: float) -> list[int]:
    """Primes p with a < p <= b (strict lower bound, inclusive upper)."""
    if not a < b:
        raise ValueError("need a < b")
    hi = math.floor(b)
    if hi < 2:
        return []
    _ensure_sieve(hi)
    ps = np.nonzero(_sieve_flags[: hi + 1])[0]
    return ps[ps > a].tolist()


def floor_log(p: int, n: int) -> int:
    """The unique e >= 1 with p**e <= n < p**(e+1).

    Computed by exact integer multiplication; p must be at least 2 and
    n at least p.
    """
    if p < 2:
        raise ValueError("base must be >= 2")
    if n < p:
        raise ValueError(f"need n >= p, got n={n} < p={p}")
    e = 1
    pk = p * p
    while pk <= n:
        e += 1
        pk *= p
    return e


@dataclass(frozen=True)
class XiProfile:
    """For each prime p <= n, the largest exponent e with p**e <= n."""

    n: int
    entries: dict[int, int]


def xi_profile(n: int) -> XiProfile:
    if n < 2:
        raise ValueError("need n >= 2")
    return XiProfile(n, {p: floor_log(p, n) for p in sieve_primes(n)})


@dataclass
class FactoredInteger:
    """An exact nonnegative integer carried together with its factorization.

    The empty factor map represents 1.  Every key is verified prime and
    ``value`` always equals the product of p**e over the map.
    """

    factors: dict[int, int] = field(default_factory=dict)
    value: int = 1

    @classmethod
    def one(cls) -> "FactoredInteger":
        return cls({}, 1)

    @classmethod
    def from_factors(cls, factors: dict[int, int]) -> "FactoredInteger":
        value = 1
        for p in sorted(factors):
            e = factors[p]
            if e < 1:
                raise ValueError(f"exponent for {p} must be >= 1, got {e}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            value *= p**e
        return cls(dict(sorted(factors.items())), value)

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        """Factor n >= 1 by trial division."""
        if n < 1:
            raise ValueError("need n >= 1")
        factors: dict[int, int] = {}
        m = n
        d = 2
        while d * d <= m:
            while m % d == 0:
                factors[d] = factors.get(d, 0) + 1
                m //= d
            d += 1 if d == 2 else 2
        if m > 1:
            factors[m] = factors.get(m, 0) + 1
        return cls(factors, n)

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        merged = dict(self.factors)
        for p, e in other.factors.items():
            merged[p] = merged.get(p, 0) + e
        return FactoredInteger(dict(sorted(merged.items())), self.value * other.value)

    def exact_div(self, other: "FactoredInteger") -> "FactoredInteger":
        """Quotient self/other; raises unless the division is exact."""
        out = dict(self.factors)
        for p, e in other.factors.items():
            have = out.get(p, 0)
            if have < e:
                raise ValueError(f"{other.value} does not divide {self.value}")
            if have == e:
                del out[p]
            else:
                out[p] = have - e
        return FactoredInteger(out, self.value // other.value)

    def divides(self, other: "FactoredInteger") -> bool:
        return all(other.factors.get(p, 0) >= e for p, e in self.factors.items())

    def p_part(self, p: int) -> int:
        return p ** self.factors.get(p, 0)

    def factored_str(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for p, e in self.factors.items():
            parts.append(f"{p}^{e}" if e > 1 else f"{p}")
        return "*".join(parts)

    def __str__(self) -> str:
        return str(self.value)


def prime_power_product(n: int) -> FactoredInteger:
    """Product of all prime powers <= n; 1 for n = 1 (empty product).

    Uses the exponent form: each prime p <= n contributes e*(e+1)/2
    where e = floor_log(p, n), since the powers p, p^2, ..., p^e are
    exactly the powers of p not exceeding n.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    factors = {}
    for p in sieve_primes(n):
        e = floor_log(p, n)
        factors[p] = e * (e + 1) // 2
    return FactoredInteger.from_factors(factors)


def upper_half_prime_product(n: int) -> FactoredInteger:
    """Product of the primes p with n/2 < p <= n; 1 for n = 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    return FactoredInteger.from_factors({p: 1 for p in primes_in_halfopen(n / 2, n)})


def order_bound(n: int) -> FactoredInteger:
    """Exact n * prime_power_product(n) / upper_half_prime_product(n).

    Integral because each prime in (n/2, n] has floor_log 1 and so
    divides the prime-power product exactly once.  Capped at
    EXACT_BOUND_CAP; beyond that use order_bound_log.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > EXACT_BOUND_CAP:
        raise CapacityError(
            f"exact order_bound capped at n <= {EXACT_BOUND_CAP} (got {n}); "
            "use order_bound_log"
        )
    num = FactoredInteger.from_int(n) * prime_power_product(n)
    return num.exact_div(upper_half_prime_product(n))


def order_bound_log(n: int) -> float:
    """Natural log of order_bound(n), by exponent-weighted log summation.

    Never forms the big product, so it is usable for n far beyond the
    exact cap.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return 0.0
    _ensure_sieve(n)
    ps = np.nonzero(_sieve_flags[: n + 1])[0]
    exps = np.ones(len(ps))
    # Only primes <= sqrt(n) can have floor_log > 1.
    root = math.isqrt(n)
    for i, p in enumerate(ps[ps <= root]):
        e = floor_log(int(p), n)
        exps[i] = e * (e + 1) / 2
    exps -= ps > n / 2  # divide out the upper-half primes
    return math.log(n) + float(np.dot(exps, np.log(ps)))


@dataclass(frozen=True)
class AsymptoticSample:
    """One point of the bound's growth curve: ratio = log_bound / (n/2)."""

    n: int
    log_f: float
    ratio: float


def asymptotic_ratio(n: int) -> AsymptoticSample:
    """Sample log(order_bound(n)) / (n/2); the ratio tends to 1."""
    if n < 16:
        raise ValueError("need n >= 16")
    lf = order_bound_log(n)
    return AsymptoticSample(n, lf, lf / (n / 2))


def two_prime_interval_exceptions(limit: int) -> list[int]:
    """All m in [3, limit] whose interval (m/2, m] holds fewer than two primes."""
    if limit < 3:
        raise ValueError("need limit >= 3")
    _ensure_sieve(limit)
    ms = np.arange(3, limit + 1)
    counts = _prime_counts[ms] - _prime_counts[ms // 2]
    return ms[counts < 2].tolist()


def nagura_interval_flags(limit: int, start: int = 25) -> list[int]:
    """Integers x in [start, limit] with no prime strictly inside (x, 6x/5).

    The classical statement guarantees a prime in the interval for
    x >= 25 but leaves the endpoints ambiguous; this scan uses the open
    interval and reports boundary-only cases for inspection instead of
    asserting them away.
    """
    if limit < start:
        return []
    _ensure_sieve(6 * limit // 5 + 1)
    xs = np.arange(start, limit + 1)
    upper = (6 * xs - 1) // 5  # largest integer strictly below 6x/5
    counts = _prime_counts[upper] - _prime_counts[xs]
    return xs[counts < 1].tolist()
