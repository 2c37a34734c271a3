from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from iceefp.boundary import h_ice, kappa
from iceefp.conjecture import (
    a_entries_finite_sum,
    a_entries_integral,
    a_matrix,
    a_matrix_mp,
    build_matrices,
    efp_conjecture,
    efp_conjecture_mp,
    laguerre_apply,
    laguerre_poly,
    laguerre_residue,
    verify_omega_relations,
)
from iceefp.efp_exact import EfpQuery, efp_enumerate, ik_decomposition
from iceefp.exact import Matrix, Poly, charpoly, det_exact

F = Fraction


def test_laguerre_examples():
    assert laguerre_poly(2, 0) == Poly([1, -2, F(1, 2)], "x")
    assert laguerre_poly(1, 0) - 2 * laguerre_poly(0, 0) == Poly([-1, -1], "x")
    assert laguerre_poly(-1, 0).is_zero()


@pytest.mark.parametrize("n", range(0, 7))
@pytest.mark.parametrize("alpha", [-1, 0, 1, 3])
def test_laguerre_recurrence(n, alpha):
    assert laguerre_poly(n, alpha - 1) == laguerre_poly(n, alpha) - laguerre_poly(n - 1, alpha)


@pytest.mark.parametrize("n", range(0, 6))
def test_laguerre_three_term(n):
    # (n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1}
    x = Poly([0, 1], "x")
    lhs = (n + 1) * laguerre_poly(n + 1, 0)
    rhs = (2 * n + 1 - x) * laguerre_poly(n, 0) - n * laguerre_poly(n - 1, 0)
    assert lhs == rhs


def test_laguerre_apply_examples():
    h4 = h_ice(4)
    assert laguerre_apply(0, 0, h4) == h4(0)
    assert laguerre_apply(1, 0, h4) == F(-1, 6)


@pytest.mark.parametrize("N", [3, 5, 8])
@pytest.mark.parametrize("n", range(0, 5))
@pytest.mark.parametrize("alpha", [-1, 0, 2])
def test_laguerre_residue_form(N, n, alpha):
    h = h_ice(N)
    assert laguerre_residue(n, alpha, h) == (-1) ** n * laguerre_apply(n, alpha, h)


# ---------------------------------------------------------------------------
# the matrices


@pytest.mark.parametrize("N", range(2, 10))
def test_s1_is_h0(N):
    m = build_matrices(N, 1)
    assert m.A == m.V == Matrix.from_rows([[h_ice(N).coeff(0)]])
    assert a_entries_integral(N, 1) == m.A


@pytest.mark.parametrize("N", range(3, 11))
def test_s2_display(N):
    b0, b1, k = h_ice(N).coeff(0), h_ice(N - 1).coeff(0), kappa(N, 1)
    expected = Matrix.from_rows([[b1, b1 * (k - 1)], [b0 * (k + 1), b0 * k * k]])
    assert a_matrix(N, 2) == expected
    assert ik_decomposition(N, 2).values[1] == -b1 - b0 * k * k


def test_s2_n4_values():
    assert a_matrix(4, 2) == Matrix.from_rows([[F(2, 7), F(2, 7)], [F(1, 2), F(2, 3)]])
    assert list(charpoly(a_matrix(4, 2)).coeffs) == [1, F(-20, 21), F(1, 21)]


@pytest.mark.parametrize("N", range(4, 10))
def test_s3_lower_factor_last_row(N):
    L = build_matrices(N, 3).L
    k1, k2 = kappa(N, 1), kappa(N, 2)
    assert L[2, 0] == k2 / 2 - 2 * k1 + 1
    assert L[2, 1] == k1 - 1
    assert L[2, 2] == 1


@pytest.mark.parametrize("N, s, expected", [(2, 1, F(1, 2)), (4, 2, F(2, 21)), (3, 2, F(0))])
def test_efp_conjecture_examples(N, s, expected):
    assert efp_conjecture(N, s) == expected


@pytest.mark.parametrize("N, s", [(N, s) for N in range(2, 9) for s in range(1, 5) if s < N])
def test_conjecture_matches_enumeration(N, s):
    assert efp_conjecture(N, s) == efp_enumerate(EfpQuery(N, N - s, s))


@pytest.mark.parametrize("N, s", [(N, s) for N in range(2, 9) for s in range(1, 4) if s < N])
def test_charpoly_gives_ik(N, s):
    assert tuple(charpoly(a_matrix(N, s)).padded(s + 1)) == ik_decomposition(N, s).values


@pytest.mark.parametrize("N, s", [(4, 2), (6, 3), (9, 4), (10, 5), (8, 1), (7, 2)])
def test_omega_relations(N, s):
    rep = verify_omega_relations(N, s)
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("N, s", [(N, s) for N in range(2, 10) for s in range(1, 5) if s < N])
def test_integral_and_finite_sum_forms(N, s):
    A = a_matrix(N, s)
    assert a_entries_integral(N, s) == A
    assert a_entries_finite_sum(N, s) == A


@given(st.integers(1, 8), st.integers(1, 5), st.integers(1, 5))
def test_top_left_block_stable(r, s1, s2):
    lo, hi = sorted((s1, s2))
    small, big = a_matrix(r + lo, lo), a_matrix(r + hi, hi)
    assert all(small[i, j] == big[i, j] for i in range(lo) for j in range(lo))


@given(st.integers(2, 9).flatmap(lambda N: st.tuples(st.just(N), st.integers(1, min(4, N - 1)))),
       st.lists(st.fractions(min_value=F(1, 5), max_value=5, max_denominator=5), min_size=4, max_size=4))
def test_diagonal_gauge_invariance(Ns, g):
    N, s = Ns
    G = Matrix.diag(g[:s])
    Ginv = Matrix.diag([1 / x for x in g[:s]])
    A = a_matrix(N, s)
    eye = Matrix.identity(s)
    assert det_exact(eye - G @ A @ Ginv) == det_exact(eye - A)


# ---------------------------------------------------------------------------
# high-precision float path


@pytest.mark.parametrize("N, s", [(6, 2), (10, 4), (13, 5), (20, 3), (30, 6)])
def test_mp_path_matches_exact(N, s):
    exact = efp_conjecture(N, s)
    with mpmath.workdps(50):
        approx = efp_conjecture_mp(N, s, 50)
        assert abs(approx - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-12 * max(1, float(exact))


def test_mp_path_matches_exact_n64():
    N, s = 64, 9
    exact = efp_conjecture(N, s)
    with mpmath.workdps(60):
        approx = efp_conjecture_mp(N, s, 60)
        assert abs(approx - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-10


def test_mp_matrix_matches_exact():
    A = a_matrix(9, 4)
    Am = a_matrix_mp(9, 4, 40)
    for i in range(4):
        for j in range(4):
            assert float(Am[i][j]) == pytest.approx(float(A[i, j]), rel=1e-14, abs=1e-15)


def test_invalid_sizes():
    with pytest.raises(ValueError):
        efp_conjecture(4, 4)
    with pytest.raises(ValueError):
        a_matrix(4, 0)
