import pytest

from pebbling.board import enumerate_counts
from pebbling.recurrence import (
    CountTable,
    TableTooSmallError,
    build_table,
    g,
    g_total,
    m_max,
    verify_boundary_identities,
    zero_threshold,
)


@pytest.fixture(scope="module")
def T():
    return build_table(120)


@pytest.fixture(scope="module")
def oracle_m0():
    return enumerate_counts(0, 9)


def test_build_small():
    assert g_total(build_table(2), 2) == 1


def test_first_totals_match_bfs(oracle_m0):
    T = build_table(7)
    expected = [oracle_m0[k] for k in range(2, 8)]
    assert expected == [1, 2, 4, 9, 20, 46]
    assert [g_total(T, k) for k in range(2, 8)] == expected


def test_first_m1_values_match_bfs():
    bfs = enumerate_counts(1, 3)
    T = build_table(7)
    assert [g(T, k, 1) for k in (5, 6, 7)] == [bfs[5], bfs[6], bfs[7]] == [1, 2, 6]


def test_g41_zero_threshold():
    assert g(build_table(4), 4, 1) == 0


def test_lookups(T):
    assert g(T, 1, 0) == 0
    assert g(T, 6, 0) == 20
    assert g(T, 9, 2) == 1


def test_lookup_below_threshold_needs_no_table():
    small = build_table(0)
    assert g(small, 34, 6) == 0  # 34 = 6*11/2 + 1


def test_lookup_out_of_range():
    with pytest.raises(TableTooSmallError):
        g(build_table(10), 11, 0)


def test_g_total_undefined_below_two(T):
    with pytest.raises(ValueError):
        g_total(T, 1)


def test_g_total_examples(T):
    assert g_total(T, 2) == 1
    assert g_total(T, 3) == 2
    assert g_total(T, 7) == 46


def test_low_k_values_of_m0_row(T):
    # k = 0, 1 are reported as produced (zero) without combinatorial meaning
    assert g(T, 0, 0) == 0 and g(T, 1, 0) == 0


def test_zero_threshold_iff(T):
    for k in range(T.k_max + 1):
        for m in range(m_max(k) + 2):
            assert (g(T, k, m) == 0) == (k <= zero_threshold(m))


def test_values_nonnegative_integers(T):
    assert all(isinstance(v, int) and v >= 0 for v in T.entries.values())


def test_general_recurrence_holds(T):
    for (k, m), v in T.entries.items():
        if m >= 2:
            assert v == g(T, k - m - 2, m - 1) + 2 * g(T, k - m - 1, m) + g(T, k - m, m + 1)


def test_monotone_totals(T):
    totals = [g_total(T, k) for k in range(3, T.k_max + 1)]
    assert all(b > a for a, b in zip(totals, totals[1:]))


def test_deterministic():
    assert dict(build_table(60).entries) == dict(build_table(60).entries)


def test_table_immutable(T):
    with pytest.raises(TypeError):
        T.entries[5, 0] = 0


def test_exceeds_64_bits():
    T = build_table(80)
    assert g_total(T, 80) > 2**63


def test_storage_sparse_in_m():
    T = build_table(100)
    assert max(m for _, m in T.entries) == m_max(100)


def test_boundary_identities(T):
    report = verify_boundary_identities(T)
    assert report.passed, report.render()


def test_boundary_identities_edge():
    report = verify_boundary_identities(build_table(5))
    assert report.passed
    assert report.get("(b) G(k,1) eliminated boundary").detail == "k = 5..5"


def test_boundary_identities_need_k5():
    with pytest.raises(ValueError):
        verify_boundary_identities(build_table(4))


def test_boundary_fault_injection():
    good = build_table(40)
    entries = dict(good.entries)
    entries[17, 0] += 1
    report = verify_boundary_identities(CountTable(40, entries))
    a = report.get("(a) G(k,0) power-of-two sum")
    assert not a.passed and a.first_failure == 17
    assert report.get("(b) G(k,1) eliminated boundary").passed
