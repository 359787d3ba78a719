"""Independent reference evaluation of the height-bound quantities.

This module is the measuring stick for the bound engine: every ln-valued
quantity the engine produces is re-derived here from scratch with mpmath's
ordinary to-nearest arithmetic at 60 significant digits.  Nothing in this file
may import from the package under test, and it deliberately does not share the
engine's directed-rounding machinery, its number-theory helpers, or its
log-space assembly order.

Two tiers are provided:

* the ``ref_*`` functions transcribe each quantity in multiplicative form and
  only fall back to working with logarithms where the plain product cannot be
  stored at all (D* and the Delta(N) tower, whose *binary exponents* would need
  gigabytes once the level grows);
* the ``ref_*_literal`` functions materialize even those towers as honest
  mpf numbers, which is feasible for small levels, and exist to cross-check
  the log-space algebra of tier one.
"""

from fractions import Fraction

from mpmath import mp, mpf, log, sqrt, exp, fsum, fprod

REF_DPS = 60

# Levels small enough that D*, Delta(N) and the Delta-based bound can be
# materialized as single mpf values (their binary exponents stay under ~10^6).
LITERAL_MAX_LEVEL = 8


# ---- elementary number theory (kept separate from the package on purpose) ----

def prime_factors(n):
    """Return the sorted list of distinct primes dividing n."""
    ps = []
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            ps.append(q)
            while m % q == 0:
                m //= q
        q += 1 if q == 2 else 2
    if m > 1:
        ps.append(m)
    return ps


def euler_phi(n):
    phi = n
    for q in prime_factors(n):
        phi = phi // q * (q - 1)
    return phi


def dn(n):
    """Degree bound d_N attached to a level: N^3/2 * prod(1 - q^-2), with 6 at N=2."""
    if n == 2:
        return 6
    num = n ** 3
    for q in prime_factors(n):
        num = num // (q * q) * (q * q - 1)
    assert num % 2 == 0
    return num // 2


def m_of(n):
    """Substituted level for prime-power n (3n for 2-powers, 2n otherwise), else None."""
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    return 3 * n if ps[0] == 2 else 2 * n


def _as_mpf(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


def b_of(n):
    """The exact rational B = d_N(N-6)/(12N) + 2."""
    return Fraction(dn(n) * (n - 6), 12 * n) + 2


def s_of(r_inf, places):
    return r_inf + len(places)


def p_max(places):
    return max((p for p, _f in places), default=1)


# ---- tier one: reference values over the whole grid ----

def ref_lambda_ln(n):
    """ln of the tower constant (B*d_N)^(25*B*d_N)."""
    with mp.workdps(REF_DPS):
        bd = _as_mpf(b_of(n) * dn(n))
        return _as_mpf(25 * b_of(n) * dn(n)) * log(bd)


def ref_h_s(d, places):
    """Normalized sum of log-norms over S (infinite places contribute log 1 = 0)."""
    with mp.workdps(REF_DPS):
        if not places:
            return mpf(0)
        return fsum(f * log(p) for p, f in places) / d


def ref_ln_dstar(n, d, abs_disc, places):
    """ln D*, with the tower constant materialized but D* itself kept as a log."""
    with mp.workdps(REF_DPS):
        lam = exp(ref_lambda_ln(n))
        return dn(n) * log(abs_disc) + (ref_h_s(d, places)
                                        + (1 + log(1728)) * lam) * d * dn(n)


def ref_ln_delta0(level, d, abs_disc, places):
    """ln Delta_0 at the given level, from the fully materialized product."""
    with mp.workdps(REF_DPS):
        phi = euler_phi(level)
        inner = mpf(level) ** (d * level) * mpf(abs_disc) ** phi
        prod_lognorm = fprod(log(mpf(p) ** f) for p, f in places) if places else mpf(1)
        delta0 = (mpf(d) ** (-d) * sqrt(inner) * log(inner) ** (d * phi)
                  * prod_lognorm ** phi)
        return log(delta0)


def ref_ln_delta(level, d, abs_disc, places):
    """ln Delta at the given level; the D* tower forces log-space assembly."""
    with mp.workdps(REF_DPS):
        phi = euler_phi(level)
        dl = dn(level)
        ln_dstar = ref_ln_dstar(level, d, abs_disc, places)
        ln_inner = level * d * dl * log(level) + phi * ln_dstar
        sum_loglog = fsum(log(f * log(p)) for p, f in places) if places else mpf(0)
        return (-d * log(d) + ln_inner / 2 + phi * d * dl * log(ln_inner)
                + phi * dl * sum_loglog)


def ref_ln_bound_cusps(n, d, abs_disc, r_inf, places, ln_c=0):
    """ln of the three-cusp height bound; returns (ln_bound, level_used)."""
    with mp.workdps(REF_DPS):
        level = m_of(n) or n
        s = s_of(r_inf, places)
        p = p_max(places)
        val = (2 * s * level * (mpf(ln_c) + log(d * s * level ** 2))
               + 3 * s * level * log(log(d * level))
               + d * level * log(p)
               + ref_ln_delta0(level, d, abs_disc, places))
        return val, level


def ref_ln_bound_covering(n, d, abs_disc, r_inf, places, ln_c=0):
    """ln of the covering-route height bound; returns (ln_bound, level_used)."""
    with mp.workdps(REF_DPS):
        level = m_of(n) or n
        dl = dn(level)
        s = s_of(r_inf, places)
        p = p_max(places)
        val = (2 * s * level * dl * (mpf(ln_c) + log(d * s * dl ** 2 * level ** 2))
               + 3 * s * level * dl * log(log(d * level * dl))
               + d * level * dl * log(p)
               + ref_ln_delta(level, d, abs_disc, places))
        return val, level


def ref_ln_delta1(level, d0, abs_disc0, s0_product):
    """ln Delta_1 for a lifted field of degree d0, discriminant |D_0|, and a
    wholesale product of log-norms over the lifted place set."""
    with mp.workdps(REF_DPS):
        phi = euler_phi(level)
        inner = mpf(level) ** (d0 * level) * mpf(abs_disc0) ** phi
        delta1 = (mpf(d0) ** (-d0) * sqrt(inner) * log(inner) ** (d0 * phi)
                  * mpf(s0_product) ** phi)
        return log(delta1)


# ---- tier two: everything materialized, small levels only ----

def ref_dstar_literal(n, d, abs_disc, places):
    """D* as a single mpf (binary exponent is a multi-kilobyte integer)."""
    assert n <= LITERAL_MAX_LEVEL
    with mp.workdps(REF_DPS):
        lam = _as_mpf(b_of(n) * dn(n)) ** _as_mpf(25 * b_of(n) * dn(n))
        return (mpf(abs_disc) ** dn(n)
                * exp((ref_h_s(d, places) + (1 + log(1728)) * lam) * d * dn(n)))


def ref_ln_delta_literal(level, d, abs_disc, places):
    """ln Delta via the fully materialized product, cross-checking ref_ln_delta."""
    assert level <= LITERAL_MAX_LEVEL
    with mp.workdps(REF_DPS):
        phi = euler_phi(level)
        dl = dn(level)
        dstar = ref_dstar_literal(level, d, abs_disc, places)
        inner = mpf(level) ** (level * d * dl) * dstar ** phi
        prod_lognorm = fprod(log(mpf(p) ** f) for p, f in places) if places else mpf(1)
        delta = (mpf(d) ** (-d) * sqrt(inner) * log(inner) ** (phi * d * dl)
                 * prod_lognorm ** (phi * dl))
        return log(delta)


def ref_ln_bound_cusps_literal(n, d, abs_disc, r_inf, places, ln_c=0):
    """ln of the three-cusp bound via the fully materialized product (any grid n)."""
    with mp.workdps(REF_DPS):
        level = m_of(n) or n
        s = s_of(r_inf, places)
        p = p_max(places)
        phi = euler_phi(level)
        inner = mpf(level) ** (d * level) * mpf(abs_disc) ** phi
        prod_lognorm = fprod(log(mpf(pp) ** f) for pp, f in places) if places else mpf(1)
        delta0 = (mpf(d) ** (-d) * sqrt(inner) * log(inner) ** (d * phi)
                  * prod_lognorm ** phi)
        bound = ((exp(mpf(ln_c)) * d * s * level ** 2) ** (2 * s * level)
                 * log(d * level) ** (3 * s * level)
                 * mpf(p) ** (d * level)
                 * delta0)
        return log(bound), level


def ref_ln_bound_covering_literal(n, d, abs_disc, r_inf, places, ln_c=0):
    """ln of the covering-route bound via the fully materialized product."""
    level = m_of(n) or n
    assert level <= LITERAL_MAX_LEVEL
    with mp.workdps(REF_DPS):
        dl = dn(level)
        s = s_of(r_inf, places)
        p = p_max(places)
        delta = exp(ref_ln_delta_literal(level, d, abs_disc, places))
        bound = ((exp(mpf(ln_c)) * d * s * dl ** 2 * level ** 2) ** (2 * s * level * dl)
                 * log(d * level * dl) ** (3 * s * level * dl)
                 * mpf(p) ** (d * level * dl)
                 * delta)
        return log(bound), level
