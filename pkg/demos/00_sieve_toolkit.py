# Segmented sieve, cached tables, and primality -- the substrate the
# rest of the package is built on.

from primestrings import count_primes_ap, is_prime, load_or_build, sieve_range
from primestrings.sieve import cache_dir, primality_is_deterministic

# windows never materialize more than one segment at a time
window = sieve_range(10 ** 12, 10 ** 12 + 200)
print("primes just past 1e12:", [int(p) for p in window])

# tables persist on disk; the second call is a file read
table = load_or_build(1_000_000)
print("pi(1e6) =", len(table.primes_between(2, 1_000_000)),
      " cached under", cache_dir())

ap = count_primes_ap(100_000, 12, table=table)
print("primes <= 1e5 by class mod 12:", ap.counts)

# primality is deterministic through 64 bits, seeded-probabilistic above
for n in (2 ** 61 - 1, 2 ** 67 - 1, 2 ** 89 - 1):
    kind = "det." if primality_is_deterministic(n) else "prob."
    print(f"is_prime(2^{n.bit_length()} - 1) = {is_prime(n)!s:5s} ({kind})")
