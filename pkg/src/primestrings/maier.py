"""Maier-matrix constructions over special residue classes.

The matrix has entries r*Q + i with rows r = 1..R and columns i from an
interval I of length y*z. Q is q times a product of primes P_a chosen
by the residue case of a mod q, so columns carry fixed residues mod q
and coprimality to Q is a column property. S columns are coprime and
= a (mod q); T columns are coprime with other residues. Row scans count
"good" primes (= a mod q) against "bad" ones and track the longest good
run per row.

All Q-sized arithmetic is exact big-int; only column indices (bounded
by y*z) go through numpy.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .arith import euler_phi, prime_factors, crt_pair
from .errors import (CaseMismatch, EmptyProductWarning, IntervalTooLarge,
                     InvalidQuery, NegativeStart, ParameterDomain)
from .sieve import is_prime, sieve_range, primality_is_deterministic
from .special import member, SpecialSetSpec

E_POW_E = math.exp(math.e)              # ~15.154, threshold for t
X_FLOOR = math.exp(math.exp(math.e))    # loglog X must exceed e
MAX_INTERVAL = 10 ** 8

PHI_NOTE = ("k-bound exponents are evaluated with phi(q); the asymptotic "
            "statement they mirror uses phi(Q), which is far larger")


# ---------------------------------------------------------------------------
# well-distribution models


@dataclass(frozen=True)
class WellDistModel:
    """Carrier density model: E(X) with remainder quality D(X).

    F(X) = X / (E(X) log X) measures how sparse the carrier is; for the
    full primes F is ~1.
    """

    e_name: str
    d_name: str
    _e: object
    _d: object

    @staticmethod
    def d_constant(c):
        return (f"const:{c:g}", lambda X: float(c))

    @staticmethod
    def d_loglog(c):
        return (f"loglog:{c:g}", lambda X: c * math.log(math.log(X)))

    @classmethod
    def all_primes(cls, d=None):
        """E(X) = X / log X (primes, Beatty primes)."""
        d_name, d_fn = d if d is not None else cls.d_constant(2.0)
        return cls(e_name="X/logX", d_name=d_name,
                   _e=lambda X: X / math.log(X), _d=d_fn)

    @classmethod
    def floor_product(cls, g, d=None):
        """E(X) = f^{-1}(X) / log X for f(x) = x g(x)."""
        d_name, d_fn = d if d is not None else cls.d_constant(2.0)

        def e_fn(X, g=g):
            lo, hi = 2.0, 4.0
            while hi * g.value(hi) < X:
                lo, hi = hi, hi * 2
            for _ in range(200):
                mid = (lo + hi) / 2
                if mid * g.value(mid) < X:
                    lo = mid
                else:
                    hi = mid
            return lo / math.log(X)

        return cls(e_name=f"finv:{g.label()}", d_name=d_name,
                   _e=e_fn, _d=d_fn)

    def E(self, X):
        v = self._e(X)
        if v <= 0:
            raise ParameterDomain(f"E({X}) = {v} must be positive")
        return v

    def D(self, X):
        v = self._d(X)
        if X >= 16 and v < 1:
            raise ParameterDomain(f"D({X}) = {v} must be >= 1")
        return v

    def F(self, X):
        return X / (self.E(X) * math.log(X))


# ---------------------------------------------------------------------------
# residue classification and parameters


def classify_residue(a, q):
    """Residue case of a mod q: A_plus, A_minus, both, or other.

    a is in A_plus when a = 1 mod every prime dividing q, in A_minus
    when a = -1 mod every such prime; prime powers of 2 make the two
    coincide.
    """
    if q < 1:
        raise InvalidQuery(f"q must be >= 1, got {q}")
    if math.gcd(a, q) != 1:
        raise InvalidQuery(f"need gcd(a, q) = 1, got gcd({a}, {q})")
    ps = prime_factors(q) if q > 1 else []
    plus = all(a % p == 1 % p for p in ps)
    minus = all(a % p == (p - 1) % p for p in ps)
    if plus and minus:
        return "both"
    if plus:
        return "A_plus"
    if minus:
        return "A_minus"
    return "other"


@dataclass(frozen=True)
class ChosenParams:
    y: int
    p0: int
    t: Optional[float]
    z: int


def _smallest_prime_above(x, avoid_divisor_of):
    n = max(2, math.floor(x) + 1)
    while True:
        if is_prime(n) and avoid_divisor_of % n != 0:
            return n
        n += 1


def choose_parameters(X, q, model, y_override=None):
    """Derive (y, p0, t, z) for a construction at scale X.

    z = ceil(max(F(X)^3, D(X)^3)); y defaults to ceil(log X / D(X));
    t = exp(log y * logloglog y / (4 loglog y)), undefined (None) when
    y <= e^e; p0 is the smallest prime above log y not dividing q.
    """
    if X <= X_FLOOR:
        raise ParameterDomain(
            f"X must exceed e^(e^e) ~ {X_FLOOR:.0f} so loglog X > e")
    if y_override is not None and y_override < 7:
        raise ParameterDomain(f"y override must be >= 7, got {y_override}")
    d = model.D(X)
    z = max(1, math.ceil(max(model.F(X) ** 3, d ** 3)))
    y = int(y_override) if y_override is not None else \
        math.ceil(math.log(X) / d)
    if y > E_POW_E:
        ly = math.log(y)
        t = math.exp(0.25 * ly * math.log(math.log(ly)) / math.log(ly))
    else:
        t = None
    p0 = _smallest_prime_above(math.log(y), q)
    return ChosenParams(y=y, p0=p0, t=t, z=z)


# ---------------------------------------------------------------------------
# the product Q and the column interval


@dataclass(frozen=True)
class QProduct:
    Q: int
    P_a: tuple
    case: str


def build_Q(q, a, y, p0, t=None, yz_over_t=None, case=None):
    """Assemble the prime support P_a and the modulus Q = q * prod(P_a).

    A_plus/A_minus (and both): P_a holds primes p <= y with p not
    dividing q, p != p0, p != 1 mod q. Otherwise three prime blocks are
    joined: p <= y with p != 1, a; t <= p <= y with p = 1; and
    p <= y*z/t with p = a, again excluding p0 and divisors of q.
    """
    if q < 1:
        raise InvalidQuery(f"q must be >= 1, got {q}")
    if math.gcd(a, q) != 1:
        raise InvalidQuery(f"need gcd(a, q) = 1, got gcd({a}, {q})")
    if y < 2:
        raise ParameterDomain(f"y must be >= 2, got {y}")
    if not is_prime(p0) or q % p0 == 0:
        raise ParameterDomain(f"p0 = {p0} must be a prime not dividing q")
    cls = classify_residue(a, q)
    if case is not None:
        compatible = {cls}
        if cls == "both":
            compatible = {"both", "A_plus", "A_minus"}
        if case not in compatible:
            raise CaseMismatch(f"caller says {case}, classification {cls}")
    a_mod = a % q
    small = [int(p) for p in sieve_range(0, y + 1)]
    if cls != "other":
        pa = [p for p in small if p % q != 1 % q]
    else:
        if t is None:
            raise ParameterDomain("non-A± case needs t (y too small?)")
        if yz_over_t is None:
            raise ParameterDomain("non-A± case needs yz/t")
        if t > yz_over_t:
            raise ParameterDomain(
                f"need t <= sqrt(y z): t = {t}, yz/t = {yz_over_t}")
        pa = [p for p in small if p % q not in (1 % q, a_mod)]
        pa += [p for p in small if p >= t and p % q == 1 % q]
        wide = [int(p) for p in sieve_range(0, math.floor(yz_over_t) + 1)]
        pa += [p for p in wide if p % q == a_mod]
    pa = sorted({p for p in pa if p != p0 and q % p != 0})
    if not pa:
        warnings.warn(f"P_a is empty for a={a}, q={q}, y={y}; Q = q",
                      EmptyProductWarning)
    Q = q
    for p in pa:
        Q *= p
    tag = "A_plus" if cls == "both" else cls
    return QProduct(Q=Q, P_a=tuple(pa), case=tag)


@dataclass(frozen=True)
class MaierConfig:
    q: int
    a: int
    y: int
    p0: int
    t: Optional[float]
    z: int
    Q: int
    case_tag: str
    P_a: tuple


def make_config(q, a, y, p0, t, z, product: QProduct):
    return MaierConfig(q=q, a=a, y=y, p0=p0, t=t, z=z,
                       Q=product.Q, case_tag=product.case,
                       P_a=product.P_a)


def crt_anchor(config, sign):
    """Smallest positive x with x = 0 mod rad(Q/q) and x = a-+1 mod q.

    sign "plus" targets a-1 (anchoring m with m+1 = a mod q after the
    coprime shift), "minus" targets a+1.
    """
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be plus or minus, got {sign!r}")
    R = config.Q // config.q
    residue = (config.a - 1) % config.q if sign == "plus" else \
        (config.a + 1) % config.q
    x = crt_pair(0, R, residue, config.q)
    return x if x > 0 else R * config.q


def build_interval(config, anchors, yz):
    """Column interval I as (start, length).

    A_plus: {m+1 .. m+yz}; A_minus: {n-yz+1 .. n} and n must keep the
    start positive; other: {1 .. yz}.
    """
    if yz < 1:
        raise InvalidQuery(f"yz must be >= 1, got {yz}")
    if yz > MAX_INTERVAL:
        raise IntervalTooLarge(f"yz = {yz} > {MAX_INTERVAL}")
    if config.case_tag == "A_plus":
        return anchors["plus"] + 1, yz
    if config.case_tag == "A_minus":
        n = anchors["minus"]
        if n < yz:
            raise NegativeStart(
                f"n = {n} < yz = {yz}; enlarge n by a multiple of Q")
        return n - yz + 1, yz
    return 1, yz


def anchored_interval(config, yz):
    """Anchors plus the case interval, enlarging n when it sits too low."""
    anchors = {"plus": crt_anchor(config, "plus"),
               "minus": crt_anchor(config, "minus")}
    if config.case_tag == "A_minus" and anchors["minus"] < yz:
        n = anchors["minus"]
        lift = -(-(yz - n) // config.Q) * config.Q
        anchors["minus"] = n + lift
    return anchors, build_interval(config, anchors, yz)


# ---------------------------------------------------------------------------
# column sets and row sampling


@dataclass(frozen=True)
class STCount:
    S: int
    T: int
    S_members: tuple


def _coprime_mask(config, start, length):
    """Coprimality to Q over the interval, via the prime support of Q."""
    mask = np.ones(length, dtype=bool)
    support = sorted(set(prime_factors(config.q)) | set(config.P_a)) \
        if config.q > 1 else sorted(config.P_a)
    for p in support:
        first = (-start) % p
        mask[first::p] = False
    return mask


def count_S_T(config, interval, with_members=True):
    """Split coprime columns into S (= a mod q) and T (the rest)."""
    start, length = interval
    if length > MAX_INTERVAL:
        raise IntervalTooLarge(f"interval length {length} > {MAX_INTERVAL}")
    mask = _coprime_mask(config, start, length)
    first_good = (config.a - start) % config.q
    good_idx = np.arange(first_good, length, config.q)
    s_idx = good_idx[mask[good_idx]]
    s_count = int(s_idx.size)
    t_count = int(mask.sum()) - s_count
    members = tuple(start + int(j) for j in s_idx) if with_members else ()
    return STCount(S=s_count, T=t_count, S_members=members)


@dataclass
class MaierCensus:
    """Sampled row statistics of the Maier matrix."""

    S_count: int
    T_count: int
    rows_sampled: int
    per_row: list            # (r, good, bad, longest_good_run)
    good_total: int
    bad_total: int
    rows_with_bad: int
    max_good_run: int
    deterministic: bool      # primality testing stayed below 2^64


def sample_rows_census(config, interval, rows, spec=None, table=None):
    """Scan rows r = 1..rows of the matrix for good and bad primes.

    A prime at column i is good when i = a (mod q). Only columns
    coprime to Q can contribute primes beyond Q's own support, so the
    scan walks those columns. The column residue invariant
    (r*Q + i = i mod q) is asserted for every prime found.
    """
    if rows < 1:
        raise InvalidQuery(f"rows must be >= 1, got {rows}")
    start, length = interval
    mask = _coprime_mask(config, start, length)
    cols = [int(j) for j in np.flatnonzero(mask)]
    q, a, Q = config.q, config.a, config.Q
    per_row = []
    good_total = bad_total = 0
    rows_with_bad = 0
    max_run = 0
    deterministic = primality_is_deterministic(rows * Q + start + length)
    for r in range(1, rows + 1):
        base = r * Q + start
        good = bad = 0
        run = best = 0
        for j in cols:
            c = base + j
            if not is_prime(c, table=table):
                continue
            if spec is not None and spec.kind != "all" \
                    and not member(spec, c):
                continue
            assert c % q == (start + j) % q, "column residue broken"
            if c % q == a % q:
                good += 1
                run += 1
                best = max(best, run)
            else:
                bad += 1
                run = 0
        per_row.append((r, good, bad, best))
        good_total += good
        bad_total += bad
        rows_with_bad += 1 if bad else 0
        max_run = max(max_run, best)
    st = count_S_T(config, interval, with_members=False)
    return MaierCensus(S_count=st.S, T_count=st.T, rows_sampled=rows,
                       per_row=per_row, good_total=good_total,
                       bad_total=bad_total, rows_with_bad=rows_with_bad,
                       max_good_run=max_run, deterministic=deterministic)


# ---------------------------------------------------------------------------
# counting functions and bound evaluation


def count_S_q(q, z, return_members=False):
    """Count n <= z whose prime factors are all = 1 (mod q); 1 counts.

    Exact enumeration over nondecreasing factorizations into primes
    = 1 mod q.
    """
    if q < 1:
        raise InvalidQuery(f"q must be >= 1, got {q}")
    if z < 1:
        return [] if return_members else 0
    ps = [int(p) for p in sieve_range(0, int(z) + 1) if p % q == 1 % q]
    members = [] if return_members else None
    count = 0

    def rec(idx, value, budget):
        nonlocal count
        count += 1
        if members is not None:
            members.append(value)
        for j in range(idx, len(ps)):
            p = ps[j]
            if p > budget:
                break
            rec(j, value * p, budget // p)

    rec(0, 1, int(z))
    if return_members:
        members.sort()
        return members
    return count


def count_psi(x, t, return_members=False):
    """Psi(x, t): count n <= x with every prime factor strictly below t."""
    if x < 1:
        return [] if return_members else 0
    ps = [int(p) for p in sieve_range(0, max(2, math.ceil(t))) if p < t]
    members = [] if return_members else None
    count = 0

    def rec(idx, value, budget):
        nonlocal count
        count += 1
        if members is not None:
            members.append(value)
        for j in range(idx, len(ps)):
            p = ps[j]
            if p > budget:
                break
            rec(j, value * p, budget // p)

    rec(0, 1, int(x))
    if return_members:
        members.sort()
        return members
    return count


def estimate_string_bound(x_scales, d_value, f_value, q, case):
    """Evaluate the guaranteed-string-length exponent at scale X.

    x_scales = (loglog X, logloglog X, loglogloglog X). The A± cases
    use (loglog X / log max(D, F))^(1/phi(q)); other residues carry the
    extra logloglog factors. See PHI_NOTE for the phi(q) caveat.
    """
    loglog_x, logloglog_x, loglogloglog_x = x_scales
    m = max(d_value, f_value)
    if m <= 1:
        raise ParameterDomain(f"max(D, F) = {m} must exceed 1")
    denom = math.log(m)
    if case in ("A_plus", "A_minus", "both"):
        base = loglog_x / denom
    else:
        if logloglog_x <= 0 or loglogloglog_x <= 0:
            raise ParameterDomain("iterated logs of X must be positive")
        base = loglog_x * loglogloglog_x / (logloglog_x * denom)
    if base <= 0:
        raise ParameterDomain(f"bound base {base} must be positive")
    return base ** (1.0 / euler_phi(q))


def case1_proxy(log_y_t, log_z, q):
    """Pigeonhole run-length proxy (log(y,t) / log z)^(1/phi(q))."""
    if log_y_t <= 0 or log_z <= 0:
        raise ParameterDomain("log(y,t) and log z must be positive")
    return (log_y_t / log_z) ** (1.0 / euler_phi(q))


def log_y_t(config):
    """log y for A± residues, log t otherwise."""
    if config.case_tag in ("A_plus", "A_minus"):
        return math.log(config.y)
    if config.t is None:
        raise ParameterDomain("non-A± case needs t")
    return math.log(config.t)


def bound_report(config, X, model):
    """All bound evaluations for a config at scale X, JSON-ready."""
    ll = math.log(math.log(X))
    lll = math.log(ll)
    llll = math.log(lll)
    d_value = model.D(X)
    f_value = model.F(X)
    scales = (ll, lll, llll)
    report = {
        "loglog_X": ll,
        "phi_q": euler_phi(config.q),
        "case": config.case_tag,
        "bound_A_pm": estimate_string_bound(scales, d_value, f_value,
                                            config.q, "A_plus"),
        "bound_other": estimate_string_bound(scales, d_value, f_value,
                                             config.q, "other"),
        "phi_note": PHI_NOTE,
    }
    report["bound"] = report["bound_A_pm"] \
        if config.case_tag in ("A_plus", "A_minus") else \
        report["bound_other"]
    try:
        report["case1_proxy"] = case1_proxy(
            log_y_t(config), math.log(config.z), config.q)
    except (ParameterDomain, ValueError):
        report["case1_proxy"] = None
    return report


# ---------------------------------------------------------------------------
# end-to-end construction


def run_construction(q, a, y=None, p0=None, yz=None, rows=1000, spec=None,
                     X=10.0 ** 8, model=None, table=None):
    """Assemble a full construction: parameters, Q, interval, row census.

    Explicit y/p0/yz win over the chosen defaults. Returns (config,
    interval, census, bounds).
    """
    if model is None:
        model = WellDistModel.all_primes()
    chosen = choose_parameters(X, q, model, y_override=y)
    y = chosen.y
    p0 = p0 if p0 is not None else chosen.p0
    t = chosen.t
    z = chosen.z if yz is None else max(1, -(-yz // y))
    yz = yz if yz is not None else y * z
    cls = classify_residue(a, q)
    yz_over_t = (yz / t) if t else None
    product = build_Q(q, a, y, p0,
                      t=t if cls == "other" else None,
                      yz_over_t=yz_over_t if cls == "other" else None)
    config = make_config(q, a, y, p0, t, z, product)
    anchors, interval = anchored_interval(config, yz)
    census = sample_rows_census(config, interval, rows,
                                spec=spec or SpecialSetSpec.all_primes(),
                                table=table)
    bounds = bound_report(config, X, model)
    bounds["anchors"] = {k: str(v) for k, v in anchors.items()}
    return config, interval, census, bounds


def census_json(config, interval, census, bounds=None):
    """JSON-ready dict for a construction census (Q as decimal string)."""
    start, length = interval
    doc = {
        "q": config.q,
        "a": config.a,
        "y": config.y,
        "p0": config.p0,
        "t": config.t,
        "z": config.z,
        "Q": str(config.Q),
        "case": config.case_tag,
        "interval_start": str(start),
        "interval_length": length,
        "S": census.S_count,
        "T": census.T_count,
        "rows": census.rows_sampled,
        "good": census.good_total,
        "bad": census.bad_total,
        "rows_with_bad": census.rows_with_bad,
        "max_good_run": census.max_good_run,
        "per_row": [{"row": r, "good": g, "bad": b, "longest_good_run": l}
                    for r, g, b, l in census.per_row],
        "case_summary": {
            "case1_rows_with_bad": census.rows_with_bad,
            "case2_rows_without_bad":
                census.rows_sampled - census.rows_with_bad,
            "case2_good_in_clean_rows":
                sum(g for _, g, b, _ in census.per_row if b == 0),
            "max_good_run": census.max_good_run,
        },
        "exceptionality": "unverified",
        "primality": "deterministic" if census.deterministic
                     else "probabilistic",
    }
    if bounds is not None:
        doc["bounds"] = bounds
    return doc
