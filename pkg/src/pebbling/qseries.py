"""Exact generating functions for G(k, m) as truncated integer series.

Everything here is a formal power series with integer coefficients.  The
contour integrals that define G(k, m) are Cauchy coefficient formulas, so they
are realized by reading off coefficients; nothing is integrated numerically.

Infinite sums and products are cut by the minimal-exponent rule: a term or a
factor is kept exactly when it can influence a coefficient at or below the
requested order.
"""

from __future__ import annotations

from functools import lru_cache

from .report import CheckResult, VerificationReport
from .series import IntSeries, poly


def _q_sum_cut(order: int, first_exponent) -> range:
    """Indices i >= 1 whose leading exponent does not exceed ``order``."""
    i = 1
    while first_exponent(i) <= order:
        i += 1
    return range(1, i)


@lru_cache(maxsize=None)
def sk_series(k: int, order: int) -> IntSeries:
    """``S_k(z) = sum_i (-1)^(i+1) z^(i(i+2k-1)/2) prod_{j<=i} (1-z^j)^-2``."""
    if order < 0:
        return IntSeries.zero(order)
    total = [0] * (order + 1)
    base = IntSeries.one().truncate(order)
    for i in _q_sum_cut(order, lambda i: i * (i + 2 * k - 1) // 2):
        base = base.divide_one_minus_power(i, times=2)
        e = i * (i + 2 * k - 1) // 2
        sign = 1 if i % 2 else -1
        for n in range(e, order + 1):
            total[n] += sign * base.coeff(n - e)
    return IntSeries.from_coeffs(total, 0, order)


def s_series(order: int) -> IntSeries:
    """``S(z) = (2z^2-3z+2) S_1 - (4z^2-4z+1) S_2 + 2z^2 - z - 1``."""
    return _s_series(order)


@lru_cache(maxsize=None)
def _s_series(order: int) -> IntSeries:
    s1 = sk_series(1, order)
    s2 = sk_series(2, order)
    return poly([2, -3, 2]) * s1 - poly([1, -4, 4]) * s2 + poly([-1, -1, 2]).truncate(order)


@lru_cache(maxsize=None)
def inverse_s_series(order: int) -> IntSeries:
    return s_series(order).invert()


@lru_cache(maxsize=None)
def partition_product_series(order: int) -> IntSeries:
    """``prod_{L>=1} (1 - z^L)^-1`` up to ``z^order`` (partition numbers)."""
    s = IntSeries.one().truncate(order)
    for j in range(1, order + 1):
        s = s.divide_one_minus_power(j)
    return s


def _n_sum(m: int, order: int, exponent, sign) -> IntSeries:
    """``sum_n sign(n) z^exponent(n) prod_{L=0..m}(1-z^(L+n))^-1 prod_{L<n}(1-z^L)^-2``.

    The squared Pochhammer part is carried incrementally across n.
    """
    total = [0] * (order + 1) if order >= 0 else []
    square = IntSeries.one().truncate(order)  # prod_{L=1}^{n-1} (1-z^L)^-2
    for n in _q_sum_cut(order, exponent):
        if n > 1:
            square = square.divide_one_minus_power(n - 1, times=2)
        term = square
        for L in range(m + 1):
            term = term.divide_one_minus_power(L + n)
        e = exponent(n)
        sg = sign(n)
        for i in range(e, order + 1):
            total[i] += sg * term.coeff(i - e)
    return IntSeries.from_coeffs(total, 0, order)


@lru_cache(maxsize=None)
def theorem_series(m: int, order: int) -> IntSeries:
    """``(-1)^m z^m V_m(z)`` with V_m taken from its closed n-sum form::

        z^(1+m(m+3)/2) / S(z) * sum_n (-1)^n z^(n(n+1)/2+nm)
            * prod_{L=0..m} (1-z^(L+n))^-1 * prod_{L=1..n-1} (1-z^L)^-2

    For m >= 1 this is the generating function of G(k, m).  The m = 0
    instance only continues the V-recurrence downward; the G(k, 0) row obeys
    its own boundary rule and is *not* this series (it first differs at z^6).
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    lead = 1 + m * (m + 3) // 2
    inner = order - lead
    if inner < 0:
        return IntSeries.zero(order)
    t = _n_sum(
        m,
        inner,
        lambda n: n * (n + 1) // 2 + n * m,
        lambda n: -1 if n % 2 else 1,
    )
    return (t * inverse_s_series(inner)).shift(lead)


@lru_cache(maxsize=None)
def gm_series(m: int, order: int) -> IntSeries:
    """Ordinary generating function ``sum_k G(k, m) z^k`` up to ``z^order``.

    m = 0 goes through the G(k, 1) series:
    ``sum_k G(k, 0) z^k = (z^2 + sum_k G(k, 1) z^k) / (1 - 2z)``.
    """
    if m == 0:
        g1 = theorem_series(1, order)
        return (g1 + poly([1], 2)) * poly([1, -2]).invert(order)
    return theorem_series(m, order)


def v_series(m: int, order: int) -> IntSeries:
    """``V_m(z) = (-1)^m z^-m * theorem_series(m)`` up to ``z^order``."""
    g = theorem_series(m, order + m)
    return g.shift(-m) if m % 2 == 0 else (-g).shift(-m)


def u_series(m: int, order: int) -> IntSeries:
    """``U_m(z)`` from its defining n-sum; ``V_m = z U_m / S``."""
    off = m * (m + 1) // 2
    inner = order - off
    if inner < 0:
        return IntSeries.zero(order)
    t = _n_sum(
        m,
        inner,
        lambda n: n * (n - 1) // 2 + n * (m + 1),
        lambda n: 1 if (n + m) % 2 == 0 else -1,
    )
    return t.shift(off)


def _check_threshold(k: int, m: int) -> None:
    if k < 0 or m < 0:
        raise ValueError("k and m must be non-negative")


def g_from_series(k: int, m: int, order: int | None = None) -> int:
    """G(k, m) as the z^k coefficient of :func:`gm_series`."""
    _check_threshold(k, m)
    order = k if order is None else order
    if order < k:
        raise ValueError("series order must be at least k")
    value = gm_series(m, order).coeff(k)
    if value < 0:
        raise AssertionError(f"negative coefficient {value} for G({k},{m}): series engine bug")
    return value


def g_total_from_series(k: int, order: int | None = None) -> int:
    """G(k) = 2^(k-2) + sum_{l=1..k} 2^(k-l) [z^l] sum_j G(j, 1) z^j."""
    if k < 2:
        raise ValueError(f"G(k) undefined for k={k} < 2")
    order = k if order is None else order
    if order < k:
        raise ValueError("series order must be at least k")
    g1 = theorem_series(1, order)
    return 2 ** (k - 2) + sum(2 ** (k - l) * g1.coeff(l) for l in range(1, k + 1))


@lru_cache(maxsize=None)
def w0_series(order: int) -> IntSeries:
    """``S(z)^-1 prod_{L>=1} (1-z^L)^-1``; W0(l) is minus its z^(l-2) coefficient."""
    return inverse_s_series(order) * partition_product_series(order)


def w0(l: int) -> int:
    if l < 2:
        raise ValueError(f"l={l} is below the minimal configuration count (l >= 2)")
    return -w0_series(l - 2).coeff(l - 2)


def finite_w_series(m: int, order: int) -> IntSeries:
    """``S(z)^-1 prod_{L=0..m} (1-z^(L+1))^-1`` (the n=1 term at finite m)."""
    s = inverse_s_series(order)
    for L in range(m + 1):
        s = s.divide_one_minus_power(L + 1)
    return s


# ----------------------------------------------------------------- identities


def _compare(name: str, lhs: IntSeries, rhs: IntSeries) -> CheckResult:
    diff = lhs.first_difference(rhs)
    orders = [x for x in (lhs.order, rhs.order) if x is not None]
    upto = min(orders) if orders else max(lhs.degree, rhs.degree)
    if diff is None:
        return CheckResult(name, True, f"verified through z^{upto}", data={"order": upto})
    detail = f"z^{diff}: {lhs.coeff(diff)} != {rhs.coeff(diff)}"
    return CheckResult(name, False, detail, diff, {"order": upto})


def check_v_recurrence(m: int, order: int) -> CheckResult:
    """z^(m+1) (V_{m+1} + V_{m-1}) = (2 z^(m+1) - 1) V_m."""
    lhs = (v_series(m + 1, order) + v_series(m - 1, order)).shift(m + 1)
    rhs = poly([-1] + [0] * m + [2]) * v_series(m, order)
    return _compare(f"V-recurrence m={m}", lhs, rhs)


def check_boundary_equation(order: int) -> CheckResult:
    """(1-2z)-cleared boundary relation between V_1 and V_2.

    ((z^4 + 2z^2 - 1)(1 - 2z) + z^3) V_1 - z^2 (1 - 2z) V_2 = z^4
    """
    a = poly([-1, 0, 2, 0, 1]) * poly([1, -2]) + poly([1], 3)
    lhs = a * v_series(1, order) - poly([1, -2], 2) * v_series(2, order)
    return _compare("boundary equation V1/V2", lhs, poly([1], 4).truncate(order))


def check_sk_recurrence(k: int, order: int, sk=None) -> CheckResult:
    """S_{k-1} + (z^(k-1) - 2) S_k + S_{k+1} = z^(k-1)."""
    sk = sk or sk_series
    lhs = sk(k - 1, order) + (poly([1], k - 1) - 2) * sk(k, order) + sk(k + 1, order)
    return _compare(f"S_k recurrence k={k}", lhs, poly([1], k - 1).truncate(order))


def check_u1_expansion(order: int) -> CheckResult:
    """z U_1 = -z S_1 + (1 + z) S_2 - S_3."""
    lhs = u_series(1, order).shift(1)
    rhs = (
        -(sk_series(1, order).shift(1))
        + poly([1, 1]) * sk_series(2, order)
        - sk_series(3, order)
    )
    return _compare("U1 expansion", lhs, rhs)


def check_u2_expansion(order: int) -> CheckResult:
    """z^3 U_2 = -z^3 S_1 + (z^3+z^2+z) S_2 - (z^2+z+1) S_3 + S_4."""
    lhs = u_series(2, order).shift(3)
    rhs = (
        -(sk_series(1, order).shift(3))
        + poly([0, 1, 1, 1]) * sk_series(2, order)
        - poly([1, 1, 1]) * sk_series(3, order)
        + sk_series(4, order)
    )
    return _compare("U2 expansion", lhs, rhs)


def check_v_u_relation(m: int, order: int) -> CheckResult:
    """S V_m = z U_m."""
    lhs = s_series(order) * v_series(m, order)
    rhs = u_series(m, order).shift(1)
    return _compare(f"S*V_m = z*U_m m={m}", lhs, rhs)


def verify_series_identities(order: int, sk=None) -> VerificationReport:
    """Run every generating-function identity coefficient-exactly up to ``order``.

    ``sk`` may replace :func:`sk_series` (fault injection in tests); it only
    feeds the S_k recurrence checks.
    """
    report = VerificationReport(f"series identities (order {order})")
    for m in range(1, 7):
        report.add(check_v_recurrence(m, order))
    report.add(check_boundary_equation(order))
    for k in range(2, 9):
        report.add(check_sk_recurrence(k, order, sk))
    report.add(check_u1_expansion(order))
    report.add(check_u2_expansion(order))
    for m in (1, 2):
        report.add(check_v_u_relation(m, order))
    return report
