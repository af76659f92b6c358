"""Special integer sequences and their prime subsets.

Three carriers are supported: the natural numbers ("all", so the prime
subset is every prime), Beatty sequences floor(n * alpha) for
irrational alpha > 1, and floor-product sequences floor(n * g(n)) for
slowly varying g. Beatty membership and enumeration are exact (integer
fixed-point with directed rounding); floor-product values are computed
in floats with high-precision rechecks near floor boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath
import numpy as np

from .errors import (DerivativeUnavailable, DomainError, GridTooSmall,
                     InvalidRange, RangeTooLarge)
from .fixedpoint import IrrationalConstant
from .sieve import sieve_range

MAX_ENUM_HI = 1 << 48
_FLOAT_GUARD = 1 << 52     # values beyond this cannot use the float path
_MP_DPS = 50               # digits for boundary rechecks


# ---------------------------------------------------------------------------
# g-families for floor-product sequences


@dataclass(frozen=True)
class GFamily:
    """A slowly varying g with derivatives up to third order.

    Built-in families carry analytic derivatives; custom families carry
    evaluators for g, g', g'' and get g''' by central differences with
    relative step 1e-5.
    """

    family: str                      # "loglogpow" | "logpow" | "custom"
    B: float = 1.0
    c: float = 1.0                   # nominal domain start
    fn: Optional[Callable] = None
    dfn: Optional[Callable] = None
    d2fn: Optional[Callable] = None

    @staticmethod
    def loglog(B=1.0, c=None):
        """g(x) = (log log x)^B; default c solves g(c) = 2."""
        if c is None:
            c = math.exp(math.exp(2.0 ** (1.0 / B)))
        return GFamily(family="loglogpow", B=B, c=c)

    @staticmethod
    def log_pow(B=1.0, c=None):
        """g(x) = (log x)^B; default c solves g(c) = 2."""
        if c is None:
            c = math.exp(2.0 ** (1.0 / B))
        return GFamily(family="logpow", B=B, c=c)

    @staticmethod
    def custom(fn, dfn=None, d2fn=None, c=1.0):
        return GFamily(family="custom", c=c, fn=fn, dfn=dfn, d2fn=d2fn)

    def label(self):
        if self.family == "loglogpow":
            return "loglog" if self.B == 1.0 else f"loglog^{self.B:g}"
        if self.family == "logpow":
            return "log" if self.B == 1.0 else f"log^{self.B:g}"
        return "custom"

    def value(self, x):
        if self.family == "loglogpow":
            if x <= 1.0 or math.log(x) <= 1.0:
                raise DomainError(f"loglog undefined/nonpositive at {x}")
            return math.log(math.log(x)) ** self.B
        if self.family == "logpow":
            if x <= 1.0:
                raise DomainError(f"log nonpositive at {x}")
            return math.log(x) ** self.B
        return self.fn(x)

    def deriv(self, x, order):
        if order == 0:
            return self.value(x)
        if self.family == "loglogpow":
            return self._loglog_deriv(x, order)
        if self.family == "logpow":
            return self._log_deriv(x, order)
        return self._custom_deriv(x, order)

    def _loglog_deriv(self, x, order):
        L = math.log(x)
        if L <= 1.0:
            raise DomainError(f"loglog undefined/nonpositive at {x}")
        B = self.B
        u = math.log(L)
        u1 = 1.0 / (x * L)
        u2 = -(L + 1.0) / (x * L) ** 2
        u3 = -1.0 / (x ** 3 * L ** 2) + 2.0 * (L + 1.0) ** 2 / (x * L) ** 3
        if order == 1:
            return B * u ** (B - 1) * u1
        if order == 2:
            return B * ((B - 1) * u ** (B - 2) * u1 ** 2 + u ** (B - 1) * u2)
        if order == 3:
            return B * ((B - 1) * (B - 2) * u ** (B - 3) * u1 ** 3
                        + 3 * (B - 1) * u ** (B - 2) * u1 * u2
                        + u ** (B - 1) * u3)
        raise ValueError(f"order {order} not supported")

    def _log_deriv(self, x, order):
        if x <= 1.0:
            raise DomainError(f"log nonpositive at {x}")
        B = self.B
        v = math.log(x)
        if order == 1:
            return B * v ** (B - 1) / x
        if order == 2:
            return B * v ** (B - 2) * ((B - 1) - v) / x ** 2
        if order == 3:
            return (B * v ** (B - 3)
                    * ((B - 1) * (B - 2) - 3 * (B - 1) * v + 2 * v ** 2)
                    / x ** 3)
        raise ValueError(f"order {order} not supported")

    def _custom_deriv(self, x, order):
        if order == 1:
            if self.dfn is None:
                raise DerivativeUnavailable("custom family lacks g'")
            return self.dfn(x)
        if order == 2:
            if self.d2fn is None:
                raise DerivativeUnavailable("custom family lacks g''")
            return self.d2fn(x)
        if order == 3:
            if self.d2fn is None:
                raise DerivativeUnavailable("custom family lacks g''")
            h = 1e-5 * x
            return (self.d2fn(x + h) - self.d2fn(x - h)) / (2.0 * h)
        raise ValueError(f"order {order} not supported")

    def f_value(self, n):
        """f(n) = n * g(n)."""
        return n * self.value(n)

    def f_deriv(self, x, order):
        # f = x g  =>  f^(k) = k g^(k-1) + x g^(k)
        return order * self.deriv(x, order - 1) + x * self.deriv(x, order)

    def value_np(self, x):
        """Vectorized g over a float array (domain already checked)."""
        if self.family == "loglogpow":
            return np.log(np.log(x)) ** self.B
        if self.family == "logpow":
            return np.log(x) ** self.B
        return np.array([self.fn(v) for v in x])

    def _mp_value(self, n):
        if self.family == "loglogpow":
            return mpmath.log(mpmath.log(n)) ** self.B
        if self.family == "logpow":
            return mpmath.log(n) ** self.B
        return None

    def f_floor(self, n):
        """floor(n * g(n)) with a high-precision recheck near boundaries."""
        v = n * self.value(n)
        f = math.floor(v)
        if min(v - f, f + 1 - v) < 1e-9:
            with mpmath.workdps(_MP_DPS):
                gv = self._mp_value(n)
                if gv is not None:
                    f = int(mpmath.floor(n * gv))
        return f

    def default_start_n(self):
        """Smallest integer where g is defined and positive."""
        if self.family == "loglogpow":
            return 3    # needs log x > 1
        if self.family == "logpow":
            return 2    # needs log x > 0
        n = max(2, math.ceil(self.c))
        while True:
            try:
                if self.value(n) > 0:
                    return n
            except (DomainError, ValueError):
                pass
            n += 1
            if n > 10 ** 9:
                raise DomainError("no positive start found for custom g")


# ---------------------------------------------------------------------------
# set specifications


@dataclass(frozen=True)
class SpecialSetSpec:
    """Carrier sequence whose prime members form the special set."""

    kind: str                                  # "all" | "beatty" | "floorprod"
    alpha: Optional[IrrationalConstant] = None
    g: Optional[GFamily] = None
    start_n: Optional[int] = None

    @staticmethod
    def all_primes():
        return SpecialSetSpec(kind="all")

    @staticmethod
    def beatty(alpha):
        if float(alpha) <= 1.0:
            raise DomainError(
                f"Beatty slope must exceed 1, got {float(alpha)}")
        return SpecialSetSpec(kind="beatty", alpha=alpha)

    @staticmethod
    def floor_product(g, start_n=None):
        if start_n is None:
            start_n = g.default_start_n()
        return SpecialSetSpec(kind="floorprod", g=g, start_n=start_n)

    def descriptor(self):
        if self.kind == "all":
            return "all"
        if self.kind == "beatty":
            return f"beatty:{self.alpha.name}"
        return f"floorprod:{self.g.label()}"


def beatty_member(alpha, m):
    """Whether m = floor(n * alpha) for some positive integer n.

    Exact: an integer n exists in [m/alpha, (m+1)/alpha) iff
    floor(ceil(m/alpha) * alpha) == m. Undecided comparisons escalate
    precision and ultimately raise PrecisionExhausted.
    """
    if m < 1:
        raise InvalidRange(f"membership defined for m >= 1, got {m}")
    if float(alpha) <= 1.0:
        raise DomainError("Beatty slope must exceed 1")
    n0 = alpha.ceil_div(m)
    return alpha.floor_mul(n0) == m


def _beatty_block(alpha, n_lo, n_hi):
    """floor(n * alpha) for n in [n_lo, n_hi), exactly, vectorized.

    Float fast path plus exact fixed-point recheck of every n whose
    fractional part sits within the float error bound of 0 or 1.
    """
    if n_hi <= n_lo:
        return np.empty(0, dtype=np.int64)
    n = np.arange(n_lo, n_hi, dtype=np.float64)
    prod = n * float(alpha)
    m = np.floor(prod)
    frac = prod - m
    eps = prod * 2.0 ** -50 + 2.0 ** -45
    vals = m.astype(np.int64)
    for i in np.flatnonzero((frac < eps) | (frac > 1.0 - eps)):
        vals[i] = alpha.floor_mul(int(n_lo + i))
    return vals


def enumerate_special(spec, lo, hi):
    """Ascending members of the carrier sequence in [lo, hi)."""
    if not 0 <= lo <= hi:
        raise InvalidRange(f"bad range [{lo}, {hi})")
    if hi > MAX_ENUM_HI:
        raise RangeTooLarge(f"hi {hi} > {MAX_ENUM_HI}")
    if spec.kind == "all":
        return np.arange(max(lo, 1), max(hi, 1), dtype=np.int64)
    if spec.kind == "beatty":
        alpha = spec.alpha
        n_lo = max(1, alpha.ceil_div(max(lo, 0)))
        n_hi = alpha.ceil_div(hi)        # first n with floor(n*alpha) >= hi
        return _beatty_block(alpha, n_lo, n_hi)
    return _floorprod_range(spec, lo, hi)


def _floorprod_first_n(spec, target):
    """Smallest n >= start_n with f(n) >= target (f increasing)."""
    g = spec.g
    n = spec.start_n
    if g.f_value(n) >= target:
        return n
    step = 1
    while g.f_value(n + step) < target:
        step *= 2
        if step > 1 << 60:
            raise DomainError(f"f never reaches {target}; g not unbounded?")
    lo, hi = n + step // 2, n + step
    while lo < hi:
        mid = (lo + hi) // 2
        if g.f_value(mid) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _floorprod_range(spec, lo, hi):
    g = spec.g
    lo = max(lo, 2)                      # values below 2 are skipped
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    n_lo = _floorprod_first_n(spec, lo)
    n_hi = _floorprod_first_n(spec, hi)
    if n_hi - n_lo > MAX_ENUM_HI:
        raise RangeTooLarge("floor-product index range too wide")
    if n_hi <= n_lo:
        return np.empty(0, dtype=np.int64)
    n = np.arange(n_lo, n_hi, dtype=np.float64)
    prod = n * g.value_np(n)
    vals = np.floor(prod).astype(np.int64)
    frac = prod - np.floor(prod)
    eps = prod * 2.0 ** -46 + 2.0 ** -40
    for i in np.flatnonzero((frac < eps) | (frac > 1.0 - eps)):
        vals[i] = g.f_floor(int(n_lo + i))
    vals = np.unique(vals)               # repeats collapse
    return vals[(vals >= lo) & (vals < hi)]


def floorprod_member(spec, m):
    """Whether m = floor(n * g(n)) for some n >= start_n."""
    if m < 2:
        return False
    n = _floorprod_first_n(spec, m)
    # the float search can land one off when f(n) grazes m
    return any(spec.g.f_floor(k) == m
               for k in (n - 1, n, n + 1) if k >= spec.start_n)


def member(spec, m):
    """Membership of m in the carrier sequence."""
    if spec.kind == "all":
        return m >= 1
    if spec.kind == "beatty":
        return m >= 1 and beatty_member(spec.alpha, m)
    return floorprod_member(spec, m)


def special_primes(spec, lo, hi, table=None, workers=1):
    """Ascending primes in the carrier sequence, within [lo, hi)."""
    primes = sieve_range(lo, hi, table=table, workers=workers)
    if spec.kind == "all":
        return primes
    members = enumerate_special(spec, lo, hi)
    return np.intersect1d(members, primes, assume_unique=True)


# ---------------------------------------------------------------------------
# numeric class-condition evidence


@dataclass
class AlphaReport:
    """Numeric evidence about the growth class of a g-family.

    alpha_g are fits of x g^(i)/g^(i-1) + i at the largest grid point;
    alpha_f are the matching fits for f = x g without the +i shift.
    samples holds the per-point series. Flags are pure functions of the
    recorded estimates and tolerance; they report evidence and never
    assert class membership.
    """

    grid: tuple
    alpha_g: tuple
    alpha_f: tuple
    samples: list
    flags: dict
    tolerance: float


def _alpha_fits(g, x):
    d0 = g.deriv(x, 0)
    d1 = g.deriv(x, 1)
    d2 = g.deriv(x, 2)
    d3 = g.deriv(x, 3)
    a_g = (x * d1 / d0 + 1 if d0 else math.nan,
           x * d2 / d1 + 2 if d1 else math.nan,
           x * d3 / d2 + 3 if d2 else math.nan)
    f0 = x * d0
    f1 = g.f_deriv(x, 1)
    f2 = g.f_deriv(x, 2)
    f3 = g.f_deriv(x, 3)
    a_f = (x * f1 / f0 if f0 else math.nan,
           x * f2 / f1 if f1 else math.nan,
           x * f3 / f2 if f2 else math.nan)
    return a_g, a_f


def _log_growth_trend(g, grid):
    """True when log g / (loglog * llll / lll) decreases on the tail."""
    ratios = []
    for x in grid:
        L = math.log(x)
        if L <= 0:
            continue
        LL = math.log(L)
        if LL <= 0:
            continue
        LLL = math.log(LL)
        if LLL <= 0:
            continue
        LLLL = math.log(LLL)
        if LLLL <= 0:
            continue
        gv = g.value(x)
        if gv <= 0:
            continue
        ratios.append(math.log(gv) / (LL * LLLL / LLL))
    if len(ratios) < 2:
        return False
    return all(b < a for a, b in zip(ratios, ratios[1:]))


def validate_g(g, grid, tolerance=0.05):
    """Fit growth exponents and evaluate the class conditions numerically.

    Requires at least 5 grid points spanning at least 3 decades. The
    derivative ratios are evaluated pointwise; headline estimates come
    from the largest grid point.
    """
    grid = sorted(float(x) for x in grid)
    if len(grid) < 5:
        raise GridTooSmall(f"need >= 5 grid points, got {len(grid)}")
    if grid[0] <= 0 or grid[-1] / grid[0] < 1000.0:
        raise GridTooSmall("grid must span at least 3 decades")
    samples = []
    for x in grid:
        a_g, a_f = _alpha_fits(g, x)
        samples.append({"x": x, "alpha_g": a_g, "alpha_f": a_f,
                        "g": g.deriv(x, 0),
                        "dg": g.deriv(x, 1),
                        "second_order": 2 * g.deriv(x, 1) + x * g.deriv(x, 2)})
    a1, a2, a3 = samples[-1]["alpha_g"]
    tol = tolerance
    flags = {
        "alpha1_positive": a1 > tol,
        "alpha2_nonnegative": a2 > -tol,
        "alpha1_ne_alpha2": abs(a1 - a2) > tol,
        "alpha3_ne_3alpha1": abs(a3 - 3 * a1) > tol,
        "two_alpha1_plus_alpha3_ne_3alpha2": abs(2 * a1 + a3 - 3 * a2) > tol,
        "second_order_positive": all(s["second_order"] > 0 for s in samples),
        "increasing_unbounded": (all(s["dg"] > 0 for s in samples)
                                 and samples[-1]["g"] > samples[0]["g"]),
        "codomain_ge_2": all(s["g"] >= 2 for s in samples),
        "log_growth": _log_growth_trend(g, grid),
    }
    return AlphaReport(grid=tuple(grid),
                       alpha_g=samples[-1]["alpha_g"],
                       alpha_f=samples[-1]["alpha_f"],
                       samples=samples, flags=flags, tolerance=tol)
