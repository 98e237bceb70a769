"""Survival functions for F, chi-square, and studentized range statistics.

The F survival is the regularized incomplete beta evaluated by the classic
continued fraction; chi-square uses the regularized incomplete gamma (series
below the shoulder, continued fraction above). The studentized range is the
textbook double integral: the range CDF of k standard normals, mixed over
the scaled-chi distribution of the pooled standard deviation. Quadrature
constants: inner z grid on [-8, 8], adaptive outer integral to 1e-8, overall
absolute error well under 1e-6.
"""

from __future__ import annotations

import math

from numpy.polynomial.legendre import leggauss

_MAX_ITER = 400
_EPS = 1e-14
_FPMIN = 1e-300

_INNER_Z_LO = -8.0
_INNER_Z_HI = 8.0
_INNER_PANELS = 4
_INNER_NODES_PER_PANEL = 48
_OUTER_TOL = 1e-8
_SQRT_HALF = math.sqrt(0.5)
_INV_SQRT_TWO_PI = 1.0 / math.sqrt(2.0 * math.pi)


class InvalidParameterError(Exception):
    pass


def normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z * _SQRT_HALF)


def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    """Modified Lentz evaluation of the incomplete-beta continued fraction."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise InvalidParameterError(
        f"incomplete beta continued fraction failed to converge (a={a}, b={b}, x={x})"
    )


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) with the usual symmetry split for fast convergence."""
    if a <= 0 or b <= 0:
        raise InvalidParameterError("beta parameters must be positive")
    if x < 0.0 or x > 1.0:
        raise InvalidParameterError("x must be in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def _lower_gamma_series(s: float, x: float) -> float:
    """P(s, x) by series; valid for x < s + 1."""
    term = 1.0 / s
    total = term
    denom = s
    for _ in range(_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + s * math.log(x) - math.lgamma(s))
    raise InvalidParameterError(f"incomplete gamma series failed to converge (s={s}, x={x})")


def _upper_gamma_cf(s: float, x: float) -> float:
    """Q(s, x) by continued fraction; valid for x >= s + 1."""
    b = x + 1.0 - s
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h * math.exp(-x + s * math.log(x) - math.lgamma(s))
    raise InvalidParameterError(
        f"incomplete gamma continued fraction failed to converge (s={s}, x={x})"
    )


def regularized_upper_gamma(s: float, x: float) -> float:
    """Q(s, x) = 1 - P(s, x)."""
    if s <= 0:
        raise InvalidParameterError("shape parameter must be positive")
    if x < 0:
        raise InvalidParameterError("x must be >= 0")
    if x == 0.0:
        return 1.0
    if x < s + 1.0:
        return 1.0 - _lower_gamma_series(s, x)
    return _upper_gamma_cf(s, x)


def f_survival(x: float, d1: float, d2: float) -> float:
    """P(F >= x) for an F(d1, d2) variate."""
    if d1 <= 0 or d2 <= 0:
        raise InvalidParameterError("F degrees of freedom must be positive")
    if x <= 0.0:
        return 1.0
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * x))


def chi2_survival(x: float, df: float) -> float:
    """P(X >= x) for a chi-square variate with df degrees of freedom."""
    if df <= 0:
        raise InvalidParameterError("chi-square df must be positive")
    if x <= 0.0:
        return 1.0
    return regularized_upper_gamma(df / 2.0, x / 2.0)


def _inner_grid() -> tuple[list[float], list[float], list[float]]:
    nodes, weights = leggauss(_INNER_NODES_PER_PANEL)
    width = (_INNER_Z_HI - _INNER_Z_LO) / _INNER_PANELS
    zs: list[float] = []
    wts: list[float] = []
    for panel in range(_INNER_PANELS):
        lo = _INNER_Z_LO + panel * width
        mid = lo + width / 2.0
        half = width / 2.0
        for node, weight in zip(nodes.tolist(), weights.tolist()):
            zs.append(mid + half * node)
            wts.append(half * weight)
    phis = [_INV_SQRT_TWO_PI * math.exp(-0.5 * z * z) for z in zs]
    cdfs = [normal_cdf(z) for z in zs]
    pre = [w * p for w, p in zip(wts, phis)]
    return zs, pre, cdfs


_INNER_Z, _INNER_PRE, _INNER_CDF = _inner_grid()


def _range_cdf(w: float, k: int) -> float:
    """P(range of k iid standard normals <= w)."""
    if w <= 0.0:
        return 0.0
    power = k - 1
    total = 0.0
    erfc = math.erfc
    for z, pre, cdf_hi in zip(_INNER_Z, _INNER_PRE, _INNER_CDF):
        span = cdf_hi - 0.5 * erfc((w - z) * _SQRT_HALF)
        if span > 0.0:
            total += pre * span**power
    return min(1.0, k * total)


def _adaptive_simpson(f, a: float, b: float, fa: float, fm: float, fb: float,
                      whole: float, tol: float, depth: int) -> float:
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    return _adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + \
        _adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)


def _integrate(f, a: float, b: float, tol: float) -> float:
    fa = f(a)
    fb = f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 24)


def studentized_range_survival(q: float, k: int, df: float) -> float:
    """P(Q >= q) for the studentized range of k groups with df error dof.

    The pooled-SD scale is integrated against its chi(df)/sqrt(df) density;
    the inner range CDF is evaluated on a fixed Gauss-Legendre grid.
    """
    if k < 2 or int(k) != k:
        raise InvalidParameterError("studentized range needs integer k >= 2")
    if df < 1:
        raise InvalidParameterError("studentized range needs df >= 1")
    if q <= 0.0:
        return 1.0

    k = int(k)
    half_df = df / 2.0
    log_norm = math.log(2.0) + half_df * math.log(half_df) - math.lgamma(half_df)

    def integrand(u: float) -> float:
        if u <= 0.0:
            return 0.0
        log_density = log_norm + (df - 1.0) * math.log(u) - half_df * u * u
        if log_density < -745.0:
            return 0.0
        return math.exp(log_density) * _range_cdf(q * u, k)

    u_hi = 2.0
    while chi2_survival(df * u_hi * u_hi, df) > 1e-13 and u_hi < 64.0:
        u_hi *= 1.5

    # Split at the density mode so the adaptive rule starts on a good mesh.
    mode = math.sqrt(max(df - 1.0, 0.25) / df)
    cuts = sorted({0.0, 0.5 * mode, mode, min(2.0 * mode, u_hi), u_hi})
    cdf = 0.0
    for lo, hi in zip(cuts, cuts[1:]):
        if hi > lo:
            cdf += _integrate(integrand, lo, hi, _OUTER_TOL)
    return min(1.0, max(0.0, 1.0 - cdf))
