"""Counting functions: S_q, smooth numbers, primes in progressions.

S_q(z) counts n <= z whose prime factors are all = 1 (mod q), with 1
counted as the empty product.  Psi(x, t) counts the t-smooth numbers
(every prime factor strictly below t).  Both grow like z over a
fractional power of log z, which the little table at the end makes
visible.
"""

import math

from primestrings import count_primes_ap, count_psi, count_S_q

print("S_4 members up to 30:", count_S_q(4, 30, return_members=True))
print("5-smooth numbers up to 30:", count_psi(30, 5.0, return_members=True))
print()

# primes below 1000 split by residue class mod 7
ap = count_primes_ap(1000, 7)
print("primes < 1000 by class mod 7:", ap.counts)
print("(class 0 holds only 7 itself; the rest are near-even)")
print()

# the normalized density S_3(z) * sqrt(log z) / z settles quickly
print("   z        S_3(z)   S_3(z)*sqrt(log z)/z")
for z in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
    c = count_S_q(3, z)
    print(f"   {z:<8d} {c:<8d} {c * math.sqrt(math.log(z)) / z:.5f}")
