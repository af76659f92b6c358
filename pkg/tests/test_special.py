"""Beatty and floor-product sets: membership, enumeration, g diagnostics."""

import math

import numpy as np
import pytest
from mpmath import mp

import _oracles
from primestrings import (GFamily, SpecialSetSpec, beatty_member,
                          enumerate_special, member, named_constant,
                          special_primes, validate_g)
from primestrings.errors import (DerivativeUnavailable, DomainError,
                                 GridTooSmall)
from primestrings.fixedpoint import IrrationalConstant
from primestrings.special import floorprod_member

PI = named_constant("pi")


# ---------------------------------------------------------------- Beatty

def test_beatty_member_known_values():
    assert beatty_member(PI, 3)       # floor(pi)
    assert beatty_member(PI, 31)
    assert not beatty_member(PI, 7)   # floor(2pi)=6, floor(3pi)=9
    assert beatty_member(PI, 100)     # floor(32pi)
    assert not beatty_member(PI, 99)
    assert beatty_member(PI, 314159)


def test_beatty_enumeration_prefix():
    spec = SpecialSetSpec.beatty(PI)
    got = list(enumerate_special(spec, 1, 32))
    assert got == [3, 6, 9, 12, 15, 18, 21, 25, 28, 31]
    assert got == _oracles.beatty_values(31)


def test_beatty_member_agrees_with_enumeration():
    spec = SpecialSetSpec.beatty(PI)
    hi = 20_000
    members = set(_oracles.beatty_values(hi - 1))
    listed = set(int(m) for m in enumerate_special(spec, 1, hi))
    assert listed == members
    for m in range(1, hi):
        assert beatty_member(PI, m) == (m in members)


def test_beatty_strictly_increasing():
    spec = SpecialSetSpec.beatty(named_constant("sqrt2"))
    vals = enumerate_special(spec, 1, 50_000)
    assert np.all(np.diff(vals) > 0)


def test_beatty_sqrt2_and_e():
    for name in ("sqrt2", "e"):
        spec = SpecialSetSpec.beatty(named_constant(name))
        got = [int(m) for m in enumerate_special(spec, 1, 2000)]
        assert got == _oracles.beatty_values(1999, name=name)


def test_beatty_rejects_alpha_at_most_one():
    small = IrrationalConstant.from_decimal(
        "small", "0.577215664901532860606512090082402431042")
    with pytest.raises(DomainError):
        SpecialSetSpec.beatty(small)


def test_descriptors():
    assert SpecialSetSpec.all_primes().descriptor() == "all"
    assert SpecialSetSpec.beatty(PI).descriptor() == "beatty:pi"
    assert SpecialSetSpec.floor_product(GFamily.loglog()).descriptor() \
        == "floorprod:loglog"
    assert SpecialSetSpec.floor_product(GFamily.log_pow(1.5)).descriptor() \
        == "floorprod:log^1.5"


def test_all_primes_set():
    spec = SpecialSetSpec.all_primes()
    assert list(enumerate_special(spec, 1, 20)) == list(range(1, 20))
    assert member(spec, 9)  # membership is set membership, not primality
    got = [int(p) for p in special_primes(spec, 10, 32)]
    assert got == [11, 13, 17, 19, 23, 29, 31]


# ---------------------------------------------------------- floor products

def test_floorprod_loglog_prefix():
    spec = SpecialSetSpec.floor_product(GFamily.loglog())
    got = [int(m) for m in enumerate_special(spec, 1, 30)]
    # f(n) = n loglog n first clears 2 at n = 5
    assert got[:6] == [2, 3, 4, 5, 7, 8]
    assert 152 in set(int(m) for m in enumerate_special(spec, 1, 200))


def test_floorprod_matches_mpmath_floor():
    g = GFamily.loglog()
    spec = SpecialSetSpec.floor_product(g)
    with mp.workdps(60):
        want = sorted({int(mp.floor(n * mp.log(mp.log(n))))
                       for n in range(spec.start_n, 400)
                       if n * mp.log(mp.log(n)) >= 2})
    got = [int(m) for m in enumerate_special(spec, 1, want[-1] + 1)]
    assert got == want


def test_floorprod_membership_consistent():
    spec = SpecialSetSpec.floor_product(GFamily.loglog())
    values = set(int(m) for m in enumerate_special(spec, 1, 600))
    for m in range(1, 600):
        assert floorprod_member(spec, m) == (m in values), m


def test_floorprod_strictly_increasing_after_collapse():
    spec = SpecialSetSpec.floor_product(GFamily.log_pow(2.0))
    vals = enumerate_special(spec, 1, 100_000)
    assert np.all(np.diff(vals) > 0)


def test_floorprod_logpow_values():
    g = GFamily.log_pow(1.0)
    spec = SpecialSetSpec.floor_product(g)
    with mp.workdps(60):
        want = sorted({int(mp.floor(n * mp.log(n)))
                       for n in range(spec.start_n, 500)
                       if n * mp.log(n) >= 2})
    got = [int(m) for m in enumerate_special(spec, 1, want[-1] + 1)]
    assert got == want


def test_special_primes_is_prime_intersection(table_1m):
    for spec in (SpecialSetSpec.beatty(PI),
                 SpecialSetSpec.floor_product(GFamily.loglog())):
        got = [int(p) for p in special_primes(spec, 1, 5000, table=table_1m)]
        want = [int(m) for m in enumerate_special(spec, 1, 5000)
                if _oracles.trial_is_prime(int(m))]
        assert got == want


# ------------------------------------------------------------ derivatives

def _mp_deriv(fn, x, order):
    with mp.workdps(60):
        return float(mp.diff(fn, mp.mpf(x), order))


@pytest.mark.parametrize("g,fn", [
    (GFamily.loglog(), lambda t: mp.log(mp.log(t))),
    (GFamily.loglog(3.0), lambda t: mp.log(mp.log(t)) ** 3),
    (GFamily.log_pow(1.0), lambda t: mp.log(t)),
    (GFamily.log_pow(2.5), lambda t: mp.log(t) ** 2.5),
])
def test_derivatives_match_mpmath(g, fn):
    for x in (2e3, 1e5, 3e7):
        if x < g.c:
            continue
        for order in (0, 1, 2, 3):
            want = _mp_deriv(fn, x, order)
            assert g.deriv(x, order) == pytest.approx(want, rel=1e-8)


def test_f_deriv_product_rule():
    g = GFamily.loglog()
    x = 1e6
    for order in (1, 2, 3):
        want = _mp_deriv(lambda t: t * mp.log(mp.log(t)), x, order)
        assert g.f_deriv(x, order) == pytest.approx(want, rel=1e-8)


def test_custom_family_derivatives():
    g = GFamily.custom(lambda x: x ** 0.5,
                       lambda x: 0.5 * x ** -0.5,
                       lambda x: -0.25 * x ** -1.5, c=16)
    assert g.value(100) == pytest.approx(10.0)
    assert g.deriv(100, 1) == pytest.approx(0.05)
    # third order falls back to differencing the supplied second
    assert g.deriv(100, 3) == pytest.approx(0.375 * 100 ** -2.5, rel=1e-4)
    bare = GFamily.custom(lambda x: x ** 0.5, None, None, c=16)
    with pytest.raises(DerivativeUnavailable):
        bare.deriv(100, 1)


# ------------------------------------------------------------- validate_g

CANON_GRID = [1650, 1.65e4, 1.2e5, 1e6, 2e6]


def test_validate_g_needs_a_real_grid():
    g = GFamily.loglog()
    with pytest.raises(GridTooSmall):
        validate_g(g, [2e3, 3e3, 4e3, 5e3])          # too few points
    with pytest.raises(GridTooSmall):
        validate_g(g, [2e3, 3e3, 4e3, 5e3, 6e3])     # under three decades


def test_validate_g_loglog_canonical_grid():
    rep = validate_g(GFamily.loglog(), CANON_GRID)
    sample = next(s for s in rep.samples if s["x"] == 1e6)
    assert abs(sample["alpha_g"][0] - 1.0) < 0.05
    assert abs(sample["alpha_f"][0] - 1.0) < 0.05
    assert rep.flags["alpha1_positive"]
    assert rep.flags["second_order_positive"]
    assert rep.flags["increasing_unbounded"]
    assert rep.flags["codomain_ge_2"]
    # comparison scale for the log-growth ratio only exists above ~3.8e6,
    # so this grid cannot exhibit the decreasing trend
    assert not rep.flags["log_growth"]


def test_validate_g_loglog_wide_grid_log_growth():
    rep = validate_g(GFamily.loglog(), [1e7, 1e9, 1e12, 1e16, 1e20])
    assert rep.flags["log_growth"]


def test_validate_g_logpow_alpha_collision():
    # x (log x)^B has matching first and second fitted exponents, so the
    # distinctness flag must come back false
    rep = validate_g(GFamily.log_pow(1.0), [1e4, 1e6, 1e8, 1e10, 1e12])
    assert not rep.flags["alpha1_ne_alpha2"]
    assert rep.flags["alpha1_positive"]


def test_validate_g_flags_degenerate_custom():
    flat = GFamily.custom(lambda x: 5.0, lambda x: 0.0, lambda x: 0.0, c=10)
    rep = validate_g(flat, [10, 100, 1000, 1e4, 1e5])
    assert not rep.flags["increasing_unbounded"]
    assert not rep.flags["second_order_positive"]
    shrunk = GFamily.custom(lambda x: 1.5, lambda x: 0.0, lambda x: 0.0, c=10)
    rep2 = validate_g(shrunk, [10, 100, 1000, 1e4, 1e5])
    assert not rep2.flags["codomain_ge_2"]


def test_validate_g_report_shape():
    rep = validate_g(GFamily.loglog(), CANON_GRID)
    assert rep.grid == tuple(CANON_GRID)
    assert rep.tolerance == 0.05
    assert len(rep.samples) == len(CANON_GRID)
    assert len(rep.alpha_g) == 3 and len(rep.alpha_f) == 3
    assert set(rep.flags) == {
        "alpha1_positive", "alpha2_nonnegative", "alpha1_ne_alpha2",
        "alpha3_ne_3alpha1", "two_alpha1_plus_alpha3_ne_3alpha2",
        "second_order_positive", "increasing_unbounded", "codomain_ge_2",
        "log_growth"}
