import pytest

from pebbling.qseries import (
    check_sk_recurrence,
    finite_w_series,
    g_from_series,
    g_total_from_series,
    gm_series,
    partition_product_series,
    s_series,
    sk_series,
    theorem_series,
    u_series,
    verify_series_identities,
    w0,
    w0_series,
)
from pebbling.recurrence import build_table, g
from pebbling.series import IntSeries


# --- naive oracle: dense lists, schoolbook products, no IntSeries -----------


def _mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


def _geom(j, n):
    return [1 if k % j == 0 else 0 for k in range(n + 1)]


def naive_sk(k, n):
    total = [0] * (n + 1)
    i = 1
    while i * (i + 2 * k - 1) // 2 <= n:
        e = i * (i + 2 * k - 1) // 2
        term = [0] * e + [1] + [0] * n
        for j in range(1, i + 1):
            term = _mul(term, _geom(j, n), n)
            term = _mul(term, _geom(j, n), n)
        sign = 1 if i % 2 else -1
        total = [t + sign * c for t, c in zip(total, term)]
        i += 1
    return total


def naive_partitions(n):
    # count partitions of each size by enumerating parts in non-increasing order
    def count(rest, largest):
        if rest == 0:
            return 1
        return sum(count(rest - p, p) for p in range(1, min(rest, largest) + 1))

    return [count(k, k) for k in range(n + 1)]


# --- S_k, S -----------------------------------------------------------------


def test_sk1_order3():
    assert sk_series(1, 3).dense(0, 3) == [0, 1, 2, 2]


def test_sk2_order3():
    assert sk_series(2, 3).dense(0, 3) == [0, 0, 1, 2]


def test_sk_zero_when_leading_exponent_exceeds_order():
    assert sk_series(6, 5).is_zero


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_sk_matches_naive_oracle(k):
    assert sk_series(k, 25).dense(0, 25) == naive_sk(k, 25)


def test_s_series_small():
    assert s_series(0).dense(0, 0) == [-1]
    assert s_series(3).dense(0, 3) == [-1, 1, 2, 2]


def test_s_linear_coefficient():
    for n in (1, 5, 40):
        assert s_series(n).coeff(1) == 1


def test_inverse_s():
    assert s_series(3).invert().dense(0, 3) == [-1, -1, -3, -7]


def test_partition_product():
    assert partition_product_series(5).dense(0, 5) == [1, 1, 2, 3, 5, 7]
    assert partition_product_series(0).dense(0, 0) == [1]
    assert partition_product_series(20).dense(0, 20) == naive_partitions(20)


# --- G(k, m) as coefficients ---------------------------------------------------


def test_gm_series_m1():
    s = gm_series(1, 8)
    assert s.dense(0, 4) == [0] * 5
    assert s.coeff(5) == 1
    assert s.coeff(7) == 6


@pytest.mark.parametrize("m", range(0, 9))
def test_valuation_law(m):
    s = gm_series(m, m * (m + 5) // 2 + 10)
    assert s.valuation == m * (m + 5) // 2 + 2
    assert s.coeffs[0] == 1


def test_g_from_series_examples():
    assert g_from_series(6, 1, 10) == 2
    assert g_from_series(9, 2, 12) == 1
    assert g_from_series(3, 1, 10) == 0


def test_g_total_from_series_examples():
    assert g_total_from_series(2, 5) == 1
    assert g_total_from_series(5, 8) == 9
    assert g_total_from_series(7, 10) == 46
    with pytest.raises(ValueError):
        g_total_from_series(1, 5)


def test_m0_theorem_instance_is_not_the_g0_row():
    # the closed form at m = 0 continues the V recurrence, not the G(k, 0) row
    t = theorem_series(0, 10)
    real = gm_series(0, 10)
    assert t.first_difference(real) == 6
    assert real.dense(2, 7) == [1, 2, 4, 9, 20, 46]


def test_coefficients_equal_recurrence_small():
    T = build_table(40)
    for m in range(0, 6):
        s = gm_series(m, 40)
        assert [s.coeff(k) for k in range(41)] == [g(T, k, m) for k in range(41)]


def test_coefficients_nonnegative():
    for m in range(0, 8):
        assert all(c >= 0 for c in gm_series(m, 90).coeffs)


# --- W0 ---------------------------------------------------------------------


def test_w0_values():
    assert [w0(l) for l in (2, 3, 4, 5)] == [1, 2, 6, 15]
    with pytest.raises(ValueError):
        w0(1)


def test_w0_positive():
    assert all(w0(l) > 0 for l in range(2, 60))


def test_w0_matches_recurrence_diagonal():
    T = build_table(70)
    for m in range(1, 9):
        for l in range(2, m + 4):
            assert w0(l) == g(T, m * (m + 5) // 2 + l, m)


def test_finite_m_products_agree_up_to_l_max():
    for m in range(0, 9):
        f, full = finite_w_series(m, m + 1), w0_series(m + 1)
        assert f.agrees_with(full)
        # and differ right after: the factor (1 - z^(m+2)) kicks in
        assert finite_w_series(m, m + 2).coeff(m + 2) != w0_series(m + 2).coeff(m + 2)


# --- identities ---------------------------------------------------------------


def test_identities_order_100():
    report = verify_series_identities(100)
    assert report.passed, report.render()
    assert len(report) == 6 + 1 + 7 + 2 + 2


def test_sk_recurrence_k2_order20():
    assert check_sk_recurrence(2, 20).passed


def test_u_series_from_definition_low_order():
    # U_1 = sum_n (-1)^(n+1) z^(n(n-1)/2 + 2n + 1) / ((1-z^n)(1-z^(n+1))) * prod_{L<n}(1-z^L)^-2
    # n = 1 term: z^3/((1-z)(1-z^2)) = z^3 + z^4 + 2 z^5 + ...; n = 2 starts at z^6
    assert u_series(1, 5).dense(0, 5) == [0, 0, 0, 1, 1, 2]


def test_fault_injection_sk_perturbation_located():
    def perturbed(k, order):
        s = sk_series(k, order)
        if k != 2:
            return s
        coeffs = list(s.dense(0, order))
        coeffs[11] += 1
        return IntSeries.from_coeffs(coeffs, 0, order)

    report = verify_series_identities(40, sk=perturbed)
    k2 = report.get("S_k recurrence k=2")
    k3 = report.get("S_k recurrence k=3")
    assert not k2.passed and k2.first_failure == 11
    # S_2 is also the S_{k-1} term of the k = 3 identity
    assert not k3.passed and k3.first_failure == 11
    assert report.get("S_k recurrence k=5").passed
