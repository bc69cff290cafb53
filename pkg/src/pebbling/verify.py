"""Cross-route verification suites: board search, recurrence, series, constants."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from . import asymptotics as asy
from .board import enumerate_counts, initial_board
from .qseries import (
    finite_w_series,
    g_total_from_series,
    gm_series,
    verify_series_identities,
    w0,
    w0_series,
)
from .recurrence import (
    CountTable,
    build_table,
    g,
    g_total,
    verify_boundary_identities,
)
from .report import CheckResult, VerificationReport


@dataclass(frozen=True)
class PublishedConstant:
    name: str
    value: str
    tolerance: str


# Published decimal expansions and the agreement each must reach.
PUBLISHED = {
    "z_star": PublishedConstant("z_star", "0.430729593137930", "1e-15"),
    "a": PublishedConstant("a", "2.321642199494", "1e-12"),
    "c_star": PublishedConstant("c_star", "0.12268707", "5e-9"),
    "c_1": PublishedConstant("c_1", "2.027402047468498", "1e-14"),
    "theorem_b_prefactor": PublishedConstant("theorem_b_prefactor", "0.287777704935052", "1e-13"),
}


def oracle_equality(table: CountTable, max_steps: int = 9, ms=(0, 1, 2)) -> VerificationReport:
    """Clean BFS counts against the recurrence over every complete level."""
    report = VerificationReport(f"board search vs recurrence ({max_steps} steps)")
    for m in ms:
        counts = enumerate_counts(m, max_steps)
        base = initial_board(m).pebbles
        first = None
        levels = range(base, base + max_steps + 1)
        for k in levels:
            if k > table.k_max:
                break
            if counts.get(k, 0) != g(table, k, m):
                first = k
                break
        report.add(CheckResult(
            f"oracle m={m}",
            first is None,
            f"k = {base}..{min(levels[-1], table.k_max)}",
            first,
        ))
    return report


def coefficient_equality(table: CountTable, k_max: int, m_max: int = 10) -> VerificationReport:
    """Series coefficients against the recurrence, plus the G(k) summed form."""
    report = VerificationReport(f"series coefficients vs recurrence (k <= {k_max})")
    for m in range(m_max + 1):
        series = gm_series(m, k_max)
        first = next(
            (k for k in range(k_max + 1) if series.coeff(k) != g(table, k, m)), None
        )
        report.add(CheckResult(f"coefficients m={m}", first is None, f"k = 0..{k_max}", first))
    first = next(
        (k for k in range(2, k_max + 1) if g_total_from_series(k, k_max) != g_total(table, k)),
        None,
    )
    report.add(CheckResult("G(k) from summed G(k,1) series", first is None, f"k = 2..{k_max}", first))
    negative = next(
        ((m, k) for m in range(m_max + 1) for k in range(k_max + 1) if gm_series(m, k_max).coeff(k) < 0),
        None,
    )
    report.add(CheckResult("non-negative coefficients", negative is None, "", negative))
    return report


def w_collapse(table: CountTable, ms=range(3, 9)) -> VerificationReport:
    """W0(l) equals G(m(m+5)/2 + l, m) for 2 <= l <= m + 3, independent of m."""
    report = VerificationReport("W0 collapse")
    report.add(CheckResult("W0(2) = 1", w0(2) == 1, f"W0(2) = {w0(2)}"))
    for m in ms:
        top = m * (m + 5) // 2 + m + 3
        if top > table.k_max:
            report.add(CheckResult(f"W collapse m={m}", False, f"table needs k_max >= {top}", m))
            continue
        first = next(
            (l for l in range(2, m + 4) if w0(l) != g(table, m * (m + 5) // 2 + l, m)), None
        )
        report.add(CheckResult(f"W collapse m={m}", first is None, f"l = 2..{m + 3}", first))
        finite = finite_w_series(m, m + 1)
        full = w0_series(m + 1)
        diff = finite.first_difference(full)
        report.add(CheckResult(
            f"finite-m product agrees with W0 series m={m}",
            diff is None,
            f"z^0..z^{m + 1}",
            diff,
        ))
    return report


def _within(value, published: PublishedConstant) -> tuple[bool, mpmath.mpf]:
    gap = abs(value - mpmath.mpf(published.value))
    return gap <= mpmath.mpf(published.tolerance), gap


def constants_check(policy: asy.PrecisionPolicy) -> VerificationReport:
    """Computed constants against their published expansions."""
    report = VerificationReport(f"constants ({policy.digits} digits)")
    cert = asy.find_zstar(policy)
    consts = asy.asymptotic_constants(policy, cert)
    with mpmath.workdps(policy.dps):
        report.add(CheckResult(
            "unique sign change on the 0.01 grid",
            cert.grid_sign_changes == 1,
            f"{cert.grid_sign_changes} change(s)",
        ))
        report.add(CheckResult(
            "residual |S(z_star)| <= 10^-digits",
            cert.residual <= mpmath.mpf(10) ** -policy.digits,
            f"residual <= {mpmath.nstr(cert.residual, 3)}",
        ))
        z15 = asy.decimal_string(consts.z_star, 15)
        report.add(CheckResult(
            "z_star 15 digits",
            z15 == PUBLISHED["z_star"].value,
            z15,
        ))
        a12 = asy.decimal_string(consts.a, 12)
        report.add(CheckResult("a 13 significant digits", a12 == PUBLISHED["a"].value, a12))
        for key in ("c_star", "c_1", "theorem_b_prefactor"):
            ok, gap = _within(getattr(consts, key), PUBLISHED[key])
            report.add(CheckResult(
                f"{key} vs published",
                ok,
                f"{asy.decimal_string(getattr(consts, key), 16)} gap={mpmath.nstr(gap, 3)}"
                f" tol={PUBLISHED[key].tolerance}",
            ))
    return report


def refinement_check(policy: asy.PrecisionPolicy) -> VerificationReport:
    """Reported digits do not move when precision and series order are doubled."""
    report = VerificationReport("refinement stability")
    base = asy.asymptotic_constants(policy)
    fine = asy.asymptotic_constants(policy.doubled())
    for key in ("z_star", "a", "s_prime", "c_star", "c_1", "theorem_b_prefactor"):
        lo = asy.decimal_string(getattr(base, key), policy.digits)
        hi = asy.decimal_string(getattr(fine, key), policy.digits)
        report.add(CheckResult(f"{key} stable", lo == hi, lo, None if lo == hi else hi))
    return report


def run_all(
    k_max: int = 80,
    order: int = 200,
    digits: int = 20,
    max_steps: int = 9,
) -> VerificationReport:
    if digits < 15:
        raise ValueError("published constants need at least 15 digits")
    table = build_table(k_max)
    report = VerificationReport("full verification")
    for sub in (
        verify_boundary_identities(table),
        verify_series_identities(order),
        oracle_equality(table, max_steps),
        coefficient_equality(table, k_max, 10),
        w_collapse(table, [m for m in range(3, 9) if m * (m + 5) // 2 + m + 3 <= k_max]),
        constants_check(asy.PrecisionPolicy(digits)),
    ):
        report.extend(sub)
    return report
