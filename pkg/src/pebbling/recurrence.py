"""Exact table of G(k, m) from the pebbling recurrences.

For every level k the rows m >= 1 are filled first (their right-hand sides
only touch smaller k), then G(k, 0) = 2 G(k-1, 0) + G(k, 1) + [k == 2].
Indices at or below the zero threshold ``k <= m(m+5)/2 + 1`` are never
stored; they read as 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .report import CheckResult, VerificationReport


class TableTooSmallError(LookupError):
    """A lookup above the zero threshold asked for k beyond ``k_max``."""


def zero_threshold(m: int) -> int:
    """Largest k with G(k, m) = 0, namely m(m+5)/2 + 1."""
    return m * (m + 5) // 2 + 1


def m_max(k: int) -> int:
    """Largest m with m(m+5)/2 + 2 <= k (-1 when no row is populated)."""
    m = -1
    while zero_threshold(m + 1) + 1 <= k:
        m += 1
    return m


@dataclass(frozen=True)
class CountTable:
    k_max: int
    entries: Mapping[tuple[int, int], int] = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def g(self, k: int, m: int) -> int:
        return g(self, k, m)

    def row(self, m: int) -> list[int]:
        """G(0..k_max, m)."""
        return [g(self, k, m) for k in range(self.k_max + 1)]


def build_table(k_max: int) -> CountTable:
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    G: dict[tuple[int, int], int] = {}

    def at(k: int, m: int) -> int:
        if k <= zero_threshold(m):
            return 0
        return G[k, m]

    for k in range(k_max + 1):
        for m in range(m_max(k), 0, -1):
            if m == 1:
                value = at(k - 3, 0) + 2 * at(k - 2, 1) + at(k - 1, 2) + at(k - 4, 1)
            else:
                value = at(k - m - 2, m - 1) + 2 * at(k - m - 1, m) + at(k - m, m + 1)
            G[k, m] = value
        if k >= 2:
            G[k, 0] = 2 * at(k - 1, 0) + at(k, 1) + (1 if k == 2 else 0)
    return CountTable(k_max, G)


def g(table: CountTable, k: int, m: int) -> int:
    """G(k, m); zero-threshold indices are answered without table support."""
    if k < 0 or m < 0:
        raise ValueError("k and m must be non-negative")
    if k <= zero_threshold(m):
        return 0
    if k > table.k_max:
        raise TableTooSmallError(f"G({k},{m}) needs k_max >= {k}, table has {table.k_max}")
    return table.entries[k, m]


def g_total(table: CountTable, k: int) -> int:
    """Total number of reachable configurations G(k) = G(k, 0), k >= 2."""
    if k < 2:
        raise ValueError(f"G(k) is undefined for this index (k={k} < 2)")
    return g(table, k, 0)


def verify_boundary_identities(table: CountTable) -> VerificationReport:
    """Check the two eliminated boundary rules against the table.

    (a) G(k,0) = 2^(k-2) + sum_{l=1..k} 2^(k-l) G(l,1),             k >= 2
    (b) G(k,1) = 2G(k-2,1) + G(k-1,2) + G(k-4,1) + 2^(k-5)
                 + sum_{l=1..k-3} 2^(k-l-3) G(l,1),                   k >= 5
    """
    if table.k_max < 5:
        raise ValueError("boundary identities need k_max >= 5")
    report = VerificationReport(f"boundary identities (k <= {table.k_max})")

    def G(k: int, m: int) -> int:
        return g(table, k, m) if k >= 0 else 0

    first_a = None
    for k in range(2, table.k_max + 1):
        rhs = 2 ** (k - 2) + sum(2 ** (k - l) * G(l, 1) for l in range(1, k + 1))
        if G(k, 0) != rhs:
            first_a = k
            break
    report.add(CheckResult(
        "(a) G(k,0) power-of-two sum",
        first_a is None,
        f"k = 2..{table.k_max}",
        first_a,
    ))

    first_b = None
    for k in range(5, table.k_max + 1):
        rhs = (
            2 * G(k - 2, 1) + G(k - 1, 2) + G(k - 4, 1) + 2 ** (k - 5)
            + sum(2 ** (k - l - 3) * G(l, 1) for l in range(1, k - 2))
        )
        if G(k, 1) != rhs:
            first_b = k
            break
    report.add(CheckResult(
        "(b) G(k,1) eliminated boundary",
        first_b is None,
        f"k = 5..{table.k_max}",
        first_b,
    ))
    return report
