"""High-precision growth constants from the dominant root of S(z).

S(z) and S'(z) are evaluated from the exact integer coefficients of the
truncated series, plus an explicit tail bound.  The bound comes from a
majorant: on |z| <= 1/2 every squared Pochhammer denominator satisfies
prod (1 - z^j)^-2 <= prod (1 - 2^-j)^-2 <= 12.02, which caps the weighted
coefficient sum of S at rho = 1/2 by a constant M, hence |s_n| <= M 2^n and
the tail beyond z^N at radius r < 1/2 is at most M (2r)^(N+1) / (1 - 2r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from decimal import ROUND_DOWN, Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .qseries import s_series
from .recurrence import CountTable, g, g_total, zero_threshold
from .report import CheckResult, VerificationReport

POCHHAMMER_SQUARED_BOUND = 12.02  # >= prod_{j>=1} (1 - 2^-j)^-2 = 11.9906...
MAX_SERIES_ORDER = 40_000


class PrecisionError(ArithmeticError):
    """The requested accuracy cannot be certified with the allowed series order."""


class RootStructureError(RuntimeError):
    """The grid scan did not find exactly one sign change of S on (0, 1/2)."""


@dataclass(frozen=True)
class PrecisionPolicy:
    digits: int = 30
    guard: int = 10
    series_order: Optional[int] = None  # None: smallest order that certifies

    def __post_init__(self) -> None:
        if self.digits <= 0 or self.guard <= 0:
            raise ValueError("digits and guard must be positive")

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    @property
    def eps(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-self.dps)

    def doubled(self) -> PrecisionPolicy:
        order = None if self.series_order is None else 2 * self.series_order
        return replace(self, digits=2 * self.digits, series_order=order)


def _theta_sum(k: int) -> float:
    """sum_{i>=1} 2^(-i(i+2k-1)/2), rounded up."""
    total = 0.0
    i = 1
    while True:
        e = i * (i + 2 * k - 1) // 2
        if e > 1100:
            break
        total += 2.0 ** (-e)
        i += 1
    return total * (1 + 1e-12)


def _majorant_at_half() -> float:
    rho = 0.5
    b1 = POCHHAMMER_SQUARED_BOUND * _theta_sum(1)
    b2 = POCHHAMMER_SQUARED_BOUND * _theta_sum(2)
    return (
        (2 * rho**2 + 3 * rho + 2) * b1
        + (4 * rho**2 + 4 * rho + 1) * b2
        + (2 * rho**2 + rho + 1)
    )


S_MAJORANT = _majorant_at_half()


def tail_bound(r, order: int, derivative: bool = False) -> mpmath.mpf:
    """Bound on the part of S (or S') beyond z^order at radius r < 1/2."""
    x = 2 * mpmath.mpf(r)
    if not 0 <= x < 1:
        raise ValueError("tail bound needs 0 <= r < 1/2")
    M = mpmath.mpf(S_MAJORANT)
    N = order
    if not derivative:
        return M * x ** (N + 1) / (1 - x)
    # sum_{n>N} n |s_n| r^(n-1) <= 2M sum_{n>N} n x^(n-1)
    return 2 * M * ((N + 1) * x**N * (1 - x) + x ** (N + 1)) / (1 - x) ** 2


def certified_order(r, eps, derivative: bool = False) -> int:
    """Smallest series order whose tail at radius r is below eps."""
    x = 2 * float(r)
    if x >= 1:
        raise PrecisionError("radius must be below 1/2")
    if x <= 0:
        return 1 if derivative else 0
    log_eps = float(mpmath.log(eps))
    guess = int(max(0.0, (log_eps - math.log(S_MAJORANT) + math.log(1 - x)) / math.log(x)))
    N = max(guess - 5, 0)
    while tail_bound(r, N, derivative) > eps:
        N += 1
        if N > MAX_SERIES_ORDER:
            raise PrecisionError(f"series order above {MAX_SERIES_ORDER} needed at z={r}")
    return N


class SEvaluator:
    """Evaluates S and S' at a fixed working precision with certified tails."""

    def __init__(self, policy: PrecisionPolicy):
        self.policy = policy
        self._coeffs: tuple[int, ...] = ()
        self._dcoeffs: tuple[int, ...] = ()
        self._order = -1

    def _ensure(self, order: int) -> None:
        if order <= self._order:
            return
        s = s_series(order)
        self._coeffs = tuple(s.coeff(n) for n in range(order + 1))
        self._dcoeffs = tuple(n * c for n, c in enumerate(self._coeffs))[1:]
        self._order = order

    def _order_for(self, z, derivative: bool) -> int:
        eps = self.policy.eps
        fixed = self.policy.series_order
        if fixed is not None:
            if tail_bound(z, fixed, derivative) > eps:
                raise PrecisionError(
                    f"series order {fixed} cannot certify 10^-{self.policy.dps} at z={mpmath.nstr(z, 8)}"
                )
            return fixed
        return certified_order(z, eps, derivative)

    @staticmethod
    def _horner(coeffs: Sequence[int], z, count: int):
        acc = mpmath.mpf(0)
        for c in reversed(coeffs[:count]):
            acc = acc * z + c
        return acc

    def value(self, z) -> tuple[mpmath.mpf, mpmath.mpf]:
        """(S(z), bound on the neglected tail)."""
        with mpmath.workdps(self.policy.dps):
            z = _to_mpf(z)
            N = self._order_for(z, False)
            self._ensure(N)
            return self._horner(self._coeffs, z, N + 1), tail_bound(z, N)

    def derivative(self, z) -> tuple[mpmath.mpf, mpmath.mpf]:
        """(S'(z), bound on the neglected tail)."""
        with mpmath.workdps(self.policy.dps):
            z = _to_mpf(z)
            N = self._order_for(z, True)
            self._ensure(N)
            return self._horner(self._dcoeffs, z, N), tail_bound(z, N, derivative=True)


def _to_mpf(z) -> mpmath.mpf:
    if isinstance(z, Fraction):
        return mpmath.mpf(z.numerator) / z.denominator
    return mpmath.mpf(z)


def _check_z(z) -> None:
    if not 0 < z < 0.5:
        raise ValueError("z must lie in (0, 1/2)")


def eval_S(z, policy: PrecisionPolicy) -> mpmath.mpf:
    _check_z(z)
    return SEvaluator(policy).value(z)[0]


def eval_S_prime(z, policy: PrecisionPolicy) -> mpmath.mpf:
    if not 0 <= z < 0.5:
        raise ValueError("z must lie in [0, 1/2)")
    return SEvaluator(policy).derivative(z)[0]


# --------------------------------------------------------------------- root


@dataclass(frozen=True)
class RootCertificate:
    z_star: mpmath.mpf
    residual: mpmath.mpf
    bracket: tuple[mpmath.mpf, mpmath.mpf]
    s_prime: mpmath.mpf
    grid_sign_changes: int
    policy: PrecisionPolicy = field(repr=False)

    @property
    def a(self) -> mpmath.mpf:
        with mpmath.workdps(self.policy.dps):
            return 1 / self.z_star


def scan_sign_changes(step: str = "0.01") -> list[tuple[mpmath.mpf, mpmath.mpf]]:
    """Intervals of the grid over (0, 1/2) on which S changes sign."""
    scan = SEvaluator(PrecisionPolicy(digits=15, guard=5))
    h = mpmath.mpf(step)
    n = int(mpmath.nint(mpmath.mpf("0.5") / h))
    points = [h * i for i in range(1, n)]
    signs = []
    for p in points:
        val, tail = scan.value(p)
        if abs(val) <= tail:
            raise RootStructureError(f"sign of S at grid point {mpmath.nstr(p, 5)} not certified")
        signs.append(val > 0)
    return [
        (points[i], points[i + 1])
        for i in range(len(points) - 1)
        if signs[i] != signs[i + 1]
    ]


def find_zstar(policy: PrecisionPolicy) -> RootCertificate:
    """Locate the unique root of S in (0, 1/2).

    Grid scan, bisection to 10^-8, Newton to working precision, then a
    sign check at both ends of a bracket of width 10^-(digits+2).
    """
    changes = scan_sign_changes()
    if len(changes) != 1:
        raise RootStructureError(f"root structure unexpected: {len(changes)} sign changes on grid")
    ev = SEvaluator(policy)
    with mpmath.workdps(policy.dps):
        lo, hi = (mpmath.mpf(x) for x in changes[0])
        f_lo = ev.value(lo)[0]
        while hi - lo > mpmath.mpf(10) ** -8:
            mid = (lo + hi) / 2
            f_mid = ev.value(mid)[0]
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        z = (lo + hi) / 2
        tol = mpmath.mpf(10) ** -(policy.dps - 2)
        for _ in range(100):
            step = ev.value(z)[0] / ev.derivative(z)[0]
            z -= step
            if abs(step) < tol:
                break
        else:
            raise RootStructureError("Newton refinement did not converge")

        half = mpmath.mpf(10) ** -(policy.digits + 2) / 2
        b_lo, b_hi = z - half, z + half
        (v_lo, t_lo), (v_hi, t_hi) = ev.value(b_lo), ev.value(b_hi)
        if not (v_lo < -t_lo and v_hi > t_hi):
            raise RootStructureError("bracket around the refined root lacks a certified sign change")
        val, tail = ev.value(z)
        residual = abs(val) + tail
        if residual > mpmath.mpf(10) ** -policy.digits:
            raise PrecisionError("residual above 10^-digits")
        return RootCertificate(
            z_star=z,
            residual=residual,
            bracket=(b_lo, b_hi),
            s_prime=ev.derivative(z)[0],
            grid_sign_changes=len(changes),
            policy=policy,
        )


# ---------------------------------------------------------------- constants


def euler_product(z, eps, power: int = 1) -> mpmath.mpf:
    """prod_{j>=1} (1 - z^j)^power for 0 < z <= 1/2, truncated below eps (relative)."""
    z = mpmath.mpf(z)
    prod = mpmath.mpf(1)
    j = 1
    zj = z
    # |log tail| <= sum_{j>J} z^j / (1 - z^j) <= z^(J+1) / (1 - z)^2
    while abs(power) * zj / (1 - z) ** 2 >= eps:
        prod *= (1 - zj) ** power
        j += 1
        zj *= z
    return prod


def _n_sum(z, m: int, exponent, eps) -> mpmath.mpf:
    """sum_n (-1)^(n+1) z^exponent(n) prod_{L=0..m}(1-z^(L+n))^-1 prod_{L<n}(1-z^L)^-2.

    Terms are bounded by 12.02 (1-z)^-(m+1) z^exponent(n) and exponents grow
    by at least one per n, so the tail after n is at most
    12.02 (1-z)^-(m+2) z^exponent(n+1).
    """
    z = mpmath.mpf(z)
    total = mpmath.mpf(0)
    square = mpmath.mpf(1)
    n = 1
    while True:
        if n > 1:
            square /= (1 - z ** (n - 1)) ** 2
        term = z ** exponent(n) * square
        for L in range(m + 1):
            term /= 1 - z ** (L + n)
        total += term if n % 2 else -term
        bound = POCHHAMMER_SQUARED_BOUND * (1 - z) ** -(m + 2) * z ** exponent(n + 1)
        if bound < eps:
            return total
        n += 1


@dataclass(frozen=True)
class AsymptoticConstants:
    z_star: mpmath.mpf
    a: mpmath.mpf
    s_prime: mpmath.mpf
    c_star: mpmath.mpf
    c_1: mpmath.mpf
    theorem_b_prefactor: mpmath.mpf
    digits: int


def _root(policy: PrecisionPolicy, cert: Optional[RootCertificate]) -> RootCertificate:
    return cert if cert is not None else find_zstar(policy)


def c_star(policy: PrecisionPolicy, cert: Optional[RootCertificate] = None) -> mpmath.mpf:
    """G(k) ~ c_star * a^k."""
    cert = _root(policy, cert)
    with mpmath.workdps(policy.dps):
        z = cert.z_star
        s = _n_sum(z, 1, lambda n: n * (n + 1) // 2 + n, policy.eps)
        return z**2 / ((1 - 2 * z) * cert.s_prime) * s


def c1(policy: PrecisionPolicy, cert: Optional[RootCertificate] = None) -> mpmath.mpf:
    cert = _root(policy, cert)
    with mpmath.workdps(policy.dps):
        z = cert.z_star
        lz = mpmath.log(z)
        return (
            -lz / (2 * mpmath.pi)
            * mpmath.exp(-mpmath.pi**2 / (2 * lz))
            / cert.s_prime
            * euler_product(z, policy.eps, 2)
        )


def theorem_b_prefactor(policy: PrecisionPolicy, cert: Optional[RootCertificate] = None) -> mpmath.mpf:
    """z_* / S'(z_*) * prod_{L>=1} (1 - z_*^L)^-1, the coefficient of z_*^-l."""
    cert = _root(policy, cert)
    with mpmath.workdps(policy.dps):
        z = cert.z_star
        return z / cert.s_prime / euler_product(z, policy.eps, 1)


def asymptotic_g(
    k: int, m: int, policy: PrecisionPolicy, cert: Optional[RootCertificate] = None
) -> mpmath.mpf:
    """Leading dominant-pole term of G(k, m) at fixed m.

    The m = 0 row has its own generating function, so it is answered with
    c_star * a^k rather than the m = 0 instance of the n-sum.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    cert = _root(policy, cert)
    with mpmath.workdps(policy.dps):
        z = cert.z_star
        if m == 0:
            return c_star(policy, cert) * z ** (-k)
        s = _n_sum(z, m, lambda n: n * (n + 1) // 2 + n * m, policy.eps)
        return z ** (m * (m + 3) // 2 - k) / cert.s_prime * s


def asymptotic_constants(
    policy: PrecisionPolicy, cert: Optional[RootCertificate] = None
) -> AsymptoticConstants:
    cert = _root(policy, cert)
    return AsymptoticConstants(
        z_star=cert.z_star,
        a=cert.a,
        s_prime=cert.s_prime,
        c_star=c_star(policy, cert),
        c_1=c1(policy, cert),
        theorem_b_prefactor=theorem_b_prefactor(policy, cert),
        digits=policy.digits,
    )


def decimal_string(x, places: int) -> str:
    """``x`` cut (not rounded) to ``places`` digits after the point."""
    text = mpmath.nstr(x, places + 20, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    with localcontext() as ctx:
        ctx.prec = places + 40
        return str(Decimal(text).quantize(Decimal(1).scaleb(-places), rounding=ROUND_DOWN))


# ------------------------------------------------------------------- report


def ratio_report(
    table: CountTable,
    policy: PrecisionPolicy,
    ks: Sequence[int],
    ms: Sequence[int],
    cert: Optional[RootCertificate] = None,
) -> VerificationReport:
    """Exact / asymptotic ratios for every requested (k, m).

    m = 0 compares G(k) with c_star a^k.  Each entry records |ratio - 1|;
    an entry fails only when a row's gap grows with k while still above the
    precision floor k * 10^-digits (the relative error carried by z_*^-k).
    """
    report = VerificationReport("asymptotic ratios")
    if not ks or not ms:
        return report
    cert = _root(policy, cert)
    with mpmath.workdps(policy.dps):
        for m in ms:
            prev_gap = None
            for k in ks:
                name = f"G({k},{m})" if m else f"G({k}) vs c_star a^k"
                if k <= zero_threshold(m) or (m == 0 and k < 2):
                    report.add(CheckResult(name, True, "inapplicable", data={"k": k, "m": m}))
                    continue
                exact = g_total(table, k) if m == 0 else g(table, k, m)
                ratio = mpmath.mpf(exact) / asymptotic_g(k, m, policy, cert)
                gap = abs(ratio - 1)
                floor = k * mpmath.mpf(10) ** -policy.digits
                ok = prev_gap is None or gap <= max(prev_gap, floor)
                report.add(CheckResult(
                    name,
                    ok,
                    f"ratio={mpmath.nstr(ratio, 12)} gap={mpmath.nstr(gap, 3)}",
                    None if ok else k,
                    {
                        "k": k,
                        "m": m,
                        "ratio": mpmath.nstr(ratio, 20),
                        "gap": mpmath.nstr(gap, 6),
                        "at_precision_floor": bool(gap <= floor),
                    },
                ))
                prev_gap = gap
    return report
