"""Slow, obvious reference implementations the tests compare against.

Nothing here shares code or representation with the package: Beatty
floors are exact multiplications against a 60-digit *decimal* integer
(the package works in binary fixed point with directed brackets),
sieves are single-shot dense arrays, primality is trial division, and
the counting functions walk a smallest-prime-factor table exhaustively.

The decimal scale is safe far beyond the ranges used here: flipping a
floor would need frac(n*c) within ~1e-52 of an integer, which cannot
happen for n below 1e8 for constants this well separated from
rationals.
"""

import math
from functools import lru_cache

import numpy as np
from mpmath import mp

SCALE_DIGITS = 60
SCALE = 10 ** SCALE_DIGITS


@lru_cache(maxsize=None)
def const60(name):
    """floor(c * 10^60), straight from mpmath at generous precision."""
    with mp.workdps(90):
        value = {"pi": mp.pi, "sqrt2": mp.sqrt(2), "e": mp.e}[name]
        return int(mp.floor(value * mp.mpf(10) ** SCALE_DIGITS))


def beatty_values(hi, name="pi", lo=1):
    """All floor(n*c) in [lo, hi], by plain multiplication over n."""
    c = const60(name)
    out = []
    n = max(1, (lo * SCALE) // c)  # a touch early; filtered below
    while True:
        m = (n * c) // SCALE
        if m > hi:
            return out
        if m >= lo:
            out.append(m)
        n += 1


def beatty_member_direct(m, name="pi"):
    """Some n with floor(n*c) = m? Decimal ceil-division interval test."""
    c = const60(name)
    n = -(-(m * SCALE) // c)
    return (n * c) // SCALE == m


def trial_is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def simple_sieve(limit):
    """Ascending primes <= limit from a one-shot dense sieve."""
    comp = np.zeros(limit + 1, dtype=bool)
    comp[:2] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not comp[p]:
            comp[p * p::p] = True
    return np.flatnonzero(~comp)


def composite_flags(limit):
    """Dense composite flags indexed by the integer itself."""
    comp = np.zeros(max(limit, 2), dtype=bool)
    comp[:2] = True
    for p in range(2, math.isqrt(limit - 1) + 1 if limit > 2 else 2):
        if not comp[p]:
            comp[p * p::p] = True
    return comp


def spf_sieve(limit):
    """spf[n] = smallest prime factor, 0 for n < 2 and for primes."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    return spf


def factorize(n, spf):
    """Distinct prime factors of n >= 2 using an spf table."""
    out = []
    while n > 1:
        p = int(spf[n]) or n
        out.append(p)
        while n % p == 0:
            n //= p
    return out


def sq_members(q, z, spf):
    """n <= z with every prime factor = 1 (mod q); 1 included."""
    out = [1]
    for n in range(2, z + 1):
        if all(p % q == 1 % q for p in factorize(n, spf)):
            out.append(n)
    return out


def psi_members(x, t, spf):
    """n <= x with every prime factor strictly below t; 1 included."""
    out = [1]
    for n in range(2, x + 1):
        if all(p < t for p in factorize(n, spf)):
            out.append(n)
    return out


def ap_counts(primes, q):
    counts = {r: 0 for r in range(q)}
    for p in primes:
        counts[int(p) % q] += 1
    return counts


def beatty_primes_below(limit, name="pi"):
    """Ascending Beatty primes < limit: dense sieve + decimal membership."""
    c = const60(name)
    out = []
    for p in simple_sieve(limit - 1):
        p = int(p)
        n = -(-(p * SCALE) // c)
        if (n * c) // SCALE == p:
            out.append(p)
    return out


def first_k_run(set_primes, k, q, a):
    """(ordinal, primes) of the first k consecutive entries = a (mod q)."""
    run = 0
    for i, p in enumerate(set_primes):
        if p % q == a % q:
            run += 1
            if run == k:
                start = i - k + 1
                return start, list(set_primes[start:start + k])
        else:
            run = 0
    return None
