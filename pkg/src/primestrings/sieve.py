"""Segmented prime sieve, AP counting, and primality testing.

The sieve works on a bitmap over odd integers >= 3 (2 is handled
implicitly). Bit j covers the odd number 2j + 3 and is set when that
number is composite. Segment size only controls working-set memory;
the produced bitmap is bit-identical for any segmentation and any
worker count.
"""

from __future__ import annotations

import logging
import math
import os
import random
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidModulus, InvalidRange, RangeExceeded, RangeTooLarge

log = logging.getLogger("primestrings.sieve")

DEFAULT_SEGMENT_BYTES = 262144  # odds per working segment (1 byte each)
MAX_SCAN_HI = 1 << 48           # upper end of the supported scan range
MAX_SCAN_SPAN = 1 << 31         # widest single [lo, hi) window
PROGRESS_EVERY = 10 ** 7        # candidates between progress log lines

CACHE_MAGIC = b"SPC1"
CACHE_VERSION = 1

# Deterministic Miller-Rabin witnesses, valid for every n < 2^64.
_MR_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_MR_DETERMINISTIC_LIMIT = 1 << 64
_MR_PROBABILISTIC_ROUNDS = 48
_MR_MAX_CANDIDATE = 1 << 256

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _n_odds(limit):
    # number of odd integers m with 3 <= m < limit
    return max(0, (limit - 2) // 2)


def _dense_primes(n):
    """All primes <= n via a plain dense sieve (used for base primes)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    comp = np.zeros(n + 1, dtype=bool)
    comp[:2] = True
    for p in range(2, math.isqrt(n) + 1):
        if not comp[p]:
            comp[p * p:: p] = True
    return np.flatnonzero(~comp).astype(np.int64)


def _sieve_segment(args):
    """Composite flags for odd-index window [j_lo, j_hi). Picklable task."""
    j_lo, j_hi, base_odd = args
    comp = np.zeros(j_hi - j_lo, dtype=bool)
    m_lo = 2 * j_lo + 3
    m_hi = 2 * j_hi + 3
    for p in base_odd:
        p = int(p)
        if p * p >= m_hi:
            break
        start = max(p * p, ((m_lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= m_hi:
            continue
        comp[(start - 3) // 2 - j_lo:: p] = True
    return comp


def _segment_bounds(j_lo, j_hi, seg_odds):
    out = []
    j = j_lo
    while j < j_hi:
        out.append((j, min(j + seg_odds, j_hi)))
        j = out[-1][1]
    return out


def _run_segments(bounds, base_odd, workers):
    tasks = [(lo, hi, base_odd) for lo, hi in bounds]
    if workers <= 1 or len(tasks) <= 1:
        return [_sieve_segment(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() preserves submission order, which is ascending segments
        return list(pool.map(_sieve_segment, tasks, chunksize=1))


@dataclass
class PrimeTable:
    """Composite-flag table for odd integers in [3, limit)."""

    limit: int
    segment_size: int
    _comp: np.ndarray  # bool, index j <-> odd 2j+3

    @classmethod
    def build(cls, limit, segment_size=DEFAULT_SEGMENT_BYTES, workers=1):
        if limit < 0:
            raise InvalidRange(f"limit must be >= 0, got {limit}")
        if limit > MAX_SCAN_SPAN:
            raise RangeTooLarge(f"table limit {limit} > {MAX_SCAN_SPAN}")
        if segment_size < 1:
            raise InvalidRange("segment_size must be positive")
        n = _n_odds(limit)
        base_odd = _dense_primes(math.isqrt(max(limit - 1, 0)))[1:]
        bounds = _segment_bounds(0, n, segment_size)
        parts = _run_segments(bounds, base_odd, workers)
        comp = np.concatenate(parts) if parts else np.zeros(0, dtype=bool)
        return cls(limit=limit, segment_size=segment_size, _comp=comp)

    @property
    def bitmap(self):
        """Packed composite flags, LSB-first, as stored in cache files."""
        return np.packbits(self._comp, bitorder="little").tobytes()

    def is_prime(self, n):
        if n >= self.limit:
            raise InvalidRange(f"{n} >= table limit {self.limit}")
        if n < 3 or n % 2 == 0:
            return n == 2
        return not self._comp[(n - 3) // 2]

    def primes_between(self, lo, hi):
        """Ascending primes in [lo, hi); requires hi <= limit."""
        if not 0 <= lo <= hi:
            raise InvalidRange(f"bad range [{lo}, {hi})")
        if hi > self.limit:
            raise InvalidRange(f"hi {hi} > table limit {self.limit}")
        j_lo = max(0, (lo - 2) // 2) if lo > 3 else 0
        j_hi = _n_odds(hi)
        odd = 2 * (np.flatnonzero(~self._comp[j_lo:j_hi]) + j_lo) + 3
        if lo <= 2 < hi:
            return np.concatenate(([2], odd)).astype(np.int64)
        return odd.astype(np.int64)

    def save(self, path):
        payload = struct.pack("<4sIQ", CACHE_MAGIC, CACHE_VERSION, self.limit)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "wb") as fh:
            fh.write(payload)
            fh.write(self.bitmap)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path, segment_size=DEFAULT_SEGMENT_BYTES):
        with open(path, "rb") as fh:
            head = fh.read(16)
            if len(head) != 16:
                raise InvalidRange(f"{path}: truncated header")
            magic, version, limit = struct.unpack("<4sIQ", head)
            if magic != CACHE_MAGIC:
                raise InvalidRange(f"{path}: bad magic {magic!r}")
            if version != CACHE_VERSION:
                raise InvalidRange(f"{path}: unsupported version {version}")
            n = _n_odds(limit)
            body = fh.read()
        if len(body) < (n + 7) // 8:
            raise InvalidRange(f"{path}: bitmap shorter than limit implies")
        comp = np.unpackbits(
            np.frombuffer(body, dtype=np.uint8), bitorder="little", count=n
        ).astype(bool)
        return cls(limit=int(limit), segment_size=segment_size, _comp=comp)


def sieve_range(lo, hi, table=None, segment_size=DEFAULT_SEGMENT_BYTES,
                workers=1):
    """Ascending primes in [lo, hi) as an int64 array.

    Uses the supplied table when it covers the window, otherwise sieves
    the window directly (works for hi up to MAX_SCAN_HI, window width up
    to MAX_SCAN_SPAN).
    """
    if not 0 <= lo <= hi:
        raise InvalidRange(f"bad range [{lo}, {hi})")
    if hi > MAX_SCAN_HI:
        raise RangeTooLarge(f"hi {hi} > {MAX_SCAN_HI}")
    if hi - lo > MAX_SCAN_SPAN:
        raise RangeTooLarge(f"window {hi - lo} wider than {MAX_SCAN_SPAN}")
    if table is not None and hi <= table.limit:
        return table.primes_between(lo, hi)
    if hi <= 3:
        return np.array([2], dtype=np.int64) if lo <= 2 < hi else \
            np.empty(0, dtype=np.int64)
    base_odd = _dense_primes(math.isqrt(hi - 1))[1:]
    j_lo = max(0, (lo - 2) // 2) if lo > 3 else 0
    j_hi = _n_odds(hi)
    bounds = _segment_bounds(j_lo, j_hi, segment_size)
    chunks = []
    done = 0
    for (a, b), comp in zip(bounds,
                            _run_segments(bounds, base_odd, workers)):
        chunks.append(2 * (np.flatnonzero(~comp) + a) + 3)
        done += 2 * (b - a)
        if done // PROGRESS_EVERY != (done - 2 * (b - a)) // PROGRESS_EVERY:
            log.info("sieved %d candidates up to %d", done, 2 * b + 3)
    odd = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.int64)
    if lo <= 2 < hi:
        return np.concatenate(([2], odd)).astype(np.int64)
    return odd.astype(np.int64)


@dataclass
class APCount:
    """Exact prime counts per residue class mod q, over primes <= X."""

    X: int
    q: int
    counts: dict

    def total(self):
        return sum(self.counts.values())


def count_primes_ap(X, q, table=None, workers=1):
    """Count primes p <= X in each residue class mod q."""
    if q < 1:
        raise InvalidModulus(f"q must be >= 1, got {q}")
    if X < 0:
        raise InvalidRange(f"X must be >= 0, got {X}")
    primes = sieve_range(0, X + 1, table=table, workers=workers)
    binned = np.bincount(primes % q, minlength=q) if primes.size else \
        np.zeros(q, dtype=np.int64)
    return APCount(X=X, q=q, counts={r: int(binned[r]) for r in range(q)})


def _mr_witness(n, a, d, s):
    """True when a witnesses the compositeness of n."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n, table=None):
    """Primality of any integer: table lookup, then Miller-Rabin.

    Deterministic below 2^64 (fixed witness set). Above that the test
    is probabilistic Miller-Rabin with 48 rounds, with witnesses drawn
    from a PRNG seeded by n so repeat calls agree.
    """
    if table is not None and 0 <= n < table.limit:
        return table.is_prime(n)
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n > _MR_MAX_CANDIDATE:
        raise RangeExceeded(f"{n.bit_length()}-bit candidate exceeds "
                            f"the supported primality range")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        bases = _MR_BASES_64
    else:
        rng = random.Random(n)
        bases = [rng.randrange(2, n - 1)
                 for _ in range(_MR_PROBABILISTIC_ROUNDS)]
    for a in bases:
        if a % n and _mr_witness(n, a % n, d, s):
            return False
    return True


def primality_is_deterministic(n):
    """Whether is_prime(n) is exact rather than probabilistic."""
    return n < _MR_DETERMINISTIC_LIMIT


def cache_dir():
    """Directory for persisted tables (PRIMES_CACHE_DIR overrides)."""
    env = os.environ.get("PRIMES_CACHE_DIR")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "primestrings")


def table_cache_path(limit):
    return os.path.join(cache_dir(), f"primes-{limit}.spc")


def load_or_build(limit, segment_size=DEFAULT_SEGMENT_BYTES, workers=1,
                  use_cache=True):
    """Fetch a table from the cache or build (and persist) it.

    A missing or unreadable cache file is never an error; the table is
    rebuilt silently.
    """
    path = table_cache_path(limit)
    if use_cache and os.path.exists(path):
        try:
            table = PrimeTable.load(path, segment_size=segment_size)
            if table.limit == limit:
                return table
        except (OSError, InvalidRange):
            log.info("ignoring unreadable cache file %s", path)
    table = PrimeTable.build(limit, segment_size=segment_size,
                             workers=workers)
    if use_cache:
        try:
            os.makedirs(cache_dir(), exist_ok=True)
            table.save(path)
        except OSError:
            log.info("could not persist table to %s", path)
    return table
