"""Segmented sieve, cache format, AP counts, and primality."""

import os
import random
import struct

import numpy as np
import pytest

import _oracles
from primestrings import (APCount, PrimeTable, count_primes_ap, is_prime,
                          load_or_build, sieve_range)
from primestrings.errors import InvalidModulus, InvalidRange, RangeExceeded, \
    RangeTooLarge
from primestrings.sieve import (CACHE_MAGIC, CACHE_VERSION, MAX_SCAN_HI,
                                MAX_SCAN_SPAN, _TINY_PRIMES, cache_dir,
                                primality_is_deterministic, table_cache_path)


def test_sieve_matches_dense_oracle(primes_100k):
    got = sieve_range(0, 100_001)
    assert np.array_equal(got, primes_100k)


def test_sieve_range_windows(primes_100k):
    rng = random.Random(3)
    for _ in range(25):
        lo = rng.randrange(0, 90_000)
        hi = lo + rng.randrange(0, 10_000)
        want = primes_100k[(primes_100k >= lo) & (primes_100k < hi)]
        assert np.array_equal(sieve_range(lo, hi), want)


def test_sieve_range_edges():
    assert sieve_range(5, 5).size == 0
    assert list(sieve_range(0, 3)) == [2]
    assert list(sieve_range(2, 3)) == [2]
    assert list(sieve_range(3, 4)) == [3]
    assert sieve_range(0, 2).size == 0
    assert sieve_range(0, 0).size == 0
    # a window away from the origin, odd boundaries on both sides
    assert list(sieve_range(89, 98)) == [89, 97]


def test_sieve_range_guards():
    with pytest.raises(InvalidRange):
        sieve_range(10, 5)
    with pytest.raises(InvalidRange):
        sieve_range(-1, 5)
    with pytest.raises(RangeTooLarge):
        sieve_range(0, MAX_SCAN_HI + 1)
    with pytest.raises(RangeTooLarge):
        sieve_range(0, MAX_SCAN_SPAN + 1)


def test_sieve_range_high_window():
    # beyond any table: 2^40 .. 2^40 + 2000, checked by trial division
    lo = 1 << 40
    got = [int(p) for p in sieve_range(lo, lo + 2000)]
    want = [n for n in range(lo, lo + 2000) if _oracles.trial_is_prime(n)]
    assert got == want


def test_bitmap_identical_across_segmentation():
    base = PrimeTable.build(100_000)
    for seg in (64, 1_000, 4_999, 1 << 16):
        assert PrimeTable.build(100_000, segment_size=seg).bitmap == base.bitmap
    for workers in (2, 3):
        assert PrimeTable.build(100_000, workers=workers).bitmap == base.bitmap
        assert PrimeTable.build(100_000, segment_size=4_999,
                                workers=workers).bitmap == base.bitmap


def test_table_lookup_and_primes_between(primes_100k):
    t = PrimeTable.build(100_000)
    flags = _oracles.composite_flags(100_000)
    for n in range(0, 2_000):
        assert t.is_prime(n) == (not flags[n])
    assert np.array_equal(t.primes_between(0, 100_000), primes_100k)
    assert list(t.primes_between(89, 98)) == [89, 97]
    with pytest.raises(InvalidRange):
        t.is_prime(100_000)
    with pytest.raises(InvalidRange):
        t.primes_between(0, 100_001)


def test_cache_file_layout(tmp_path):
    t = PrimeTable.build(1000)
    path = tmp_path / "primes-1000.spc"
    t.save(str(path))
    raw = path.read_bytes()
    magic, version, limit = struct.unpack("<4sIQ", raw[:16])
    assert magic == CACHE_MAGIC == b"SPC1"
    assert version == CACHE_VERSION == 1
    assert limit == 1000
    # bit j (LSB-first) = 1 iff 2j+3 is composite
    flags = _oracles.composite_flags(1000)
    want = np.packbits(flags[3:1000:2], bitorder="little").tobytes()
    assert raw[16:] == want


def test_cache_roundtrip(tmp_path):
    t = PrimeTable.build(50_000)
    path = str(tmp_path / "t.spc")
    t.save(path)
    back = PrimeTable.load(path)
    assert back.limit == t.limit
    assert back.bitmap == t.bitmap


def test_cache_rejects_bad_files(tmp_path):
    t = PrimeTable.build(1000)
    good = str(tmp_path / "good.spc")
    t.save(good)
    raw = bytearray(open(good, "rb").read())

    bad_magic = tmp_path / "m.spc"
    bad_magic.write_bytes(b"XXXX" + bytes(raw[4:]))
    with pytest.raises(InvalidRange):
        PrimeTable.load(str(bad_magic))

    bad_version = tmp_path / "v.spc"
    bad_version.write_bytes(bytes(raw[:4]) + struct.pack("<I", 9) + bytes(raw[8:]))
    with pytest.raises(InvalidRange):
        PrimeTable.load(str(bad_version))

    truncated = tmp_path / "t.spc"
    truncated.write_bytes(bytes(raw[:20]))
    with pytest.raises(InvalidRange):
        PrimeTable.load(str(truncated))


def test_load_or_build_uses_and_survives_cache():
    limit = 77_777
    path = table_cache_path(limit)
    if os.path.exists(path):
        os.remove(path)
    first = load_or_build(limit)
    assert os.path.exists(path)
    second = load_or_build(limit)
    assert second.bitmap == first.bitmap
    # corrupt the file: rebuild must be silent and correct
    with open(path, "wb") as fh:
        fh.write(b"garbage")
    third = load_or_build(limit)
    assert third.bitmap == first.bitmap
    assert cache_dir() == os.environ["PRIMES_CACHE_DIR"]


def test_build_guards():
    with pytest.raises(InvalidRange):
        PrimeTable.build(-1)
    with pytest.raises(InvalidRange):
        PrimeTable.build(100, segment_size=0)
    with pytest.raises(RangeTooLarge):
        PrimeTable.build(MAX_SCAN_SPAN + 1)


def test_count_primes_ap_examples():
    assert count_primes_ap(100, 4).counts == {0: 0, 1: 11, 2: 1, 3: 13}
    assert count_primes_ap(10, 1).counts == {0: 4}
    c = count_primes_ap(100, 4)
    assert c.total() == 25
    assert isinstance(c, APCount)


def test_count_primes_ap_matches_direct(primes_100k, table_1m):
    for X in (10, 997, 10_000):
        prefix = primes_100k[primes_100k <= X]
        for q in (1, 2, 3, 7, 12, 50):
            want = _oracles.ap_counts(prefix, q)
            assert count_primes_ap(X, q, table=table_1m).counts == want


def test_count_primes_ap_guards():
    with pytest.raises(InvalidModulus):
        count_primes_ap(100, 0)
    with pytest.raises(InvalidRange):
        count_primes_ap(-5, 3)


def test_is_prime_small_agrees_with_trial_division():
    for n in range(-3, 20_000):
        assert is_prime(n) == _oracles.trial_is_prime(n), n


def test_is_prime_random_64bit():
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randrange(2, 10 ** 10)
        assert is_prime(n) == _oracles.trial_is_prime(n)


def test_is_prime_known_large():
    assert is_prime(2 ** 61 - 1)          # Mersenne
    assert is_prime(2 ** 89 - 1)          # Mersenne, above the 64-bit line
    assert not is_prime(2 ** 67 - 1)      # 193707721 * 761838257287
    assert not is_prime(561)              # Carmichael
    assert not is_prime((2 ** 61 - 1) ** 2)


def test_is_prime_probabilistic_is_repeatable():
    n = (1 << 89) - 1
    assert not primality_is_deterministic(n)
    assert primality_is_deterministic(2 ** 64 - 1)
    assert [is_prime(n) for _ in range(3)] == [True, True, True]


def test_is_prime_range_ceiling():
    n = (1 << 257) | 1
    while any(n % p == 0 for p in _TINY_PRIMES):
        n += 2
    with pytest.raises(RangeExceeded):
        is_prime(n)


def test_is_prime_prefers_table(table_1m):
    assert is_prime(999_983, table=table_1m)
    assert not is_prime(999_981, table=table_1m)
    # out-of-table values fall through to Miller-Rabin
    assert is_prime(1_000_003, table=table_1m)
