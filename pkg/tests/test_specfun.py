import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab.arith import primes_up_to
from zetalab.core import BranchCutError, DomainError, PoleError, SingularError
from zetalab.specfun import (
    completed_xi,
    exp_integral_En,
    gamma,
    jacobi_phi,
    log_zeta,
    psi_critical,
    psi_critical_closed,
    riemann_zeta,
    zeta_log_derivative,
)



@pytest.fixture(autouse=True, scope="module")
def _mp_precision():
    with mp.workdps(30):
        yield


def mpc(z):
    return complex(z)


# --- zeta -------------------------------------------------------------------


def test_zeta_two_and_zero():
    assert abs(riemann_zeta(2).value - math.pi ** 2 / 6) < 1e-13
    assert abs(riemann_zeta(0).value + 0.5) < 1e-14


def test_zeta_pole():
    with pytest.raises(PoleError):
        riemann_zeta(1)


@pytest.mark.parametrize("s", [0.5 + 14.134725j, -3.7 + 2j, 2.5 - 40j, 0.3, -7.0, 1 + 1e-6j, 0.5 + 300j, -20 + 5j])
def test_zeta_against_mpmath(s):
    r = riemann_zeta(s)
    ref = mpc(mp.zeta(s))
    assert abs(r.value - ref) <= max(r.abs_err * 10, 1e-12 * max(abs(ref), 1.0))


def test_zeta_error_estimate_covers_truth():
    rng = np.random.default_rng(11)
    for _ in range(40):
        s = complex(rng.uniform(-4, 5), rng.uniform(-60, 60))
        r = riemann_zeta(s)
        assert abs(r.value - mpc(mp.zeta(s))) <= r.abs_err + 1e-15


def test_zeta_trivial_zeros():
    for n in (1, 2, 5):
        assert abs(riemann_zeta(-2 * n).value) < 1e-12


def test_conjugate_symmetry_exact():
    rng = np.random.default_rng(5)
    for _ in range(30):
        s = complex(rng.uniform(-5, 6), rng.uniform(-30, 30))
        assert riemann_zeta(s.conjugate()).value == riemann_zeta(s).value.conjugate()


def test_euler_product():
    p = primes_up_to(100_000).astype(float)
    for s in (2.0, 2.5 + 3j, 4 - 7j):
        prod = np.prod(1.0 / (1.0 - np.exp(-s * np.log(p))))
        r = riemann_zeta(s)
        # primes above 10^5 perturb the product by at most about sum_{p>L} p^{-sigma}
        tail = 2.0 * 100_000 ** (1 - s.real) / ((s.real - 1) * math.log(100_000))
        assert abs(r.value - prod) <= tail + r.abs_err


# --- functional equation / xi -------------------------------------------------


def test_functional_equation_residual_200_points():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(200):
        s = complex(rng.uniform(-5, 6), rng.uniform(-30, 30))
        a = completed_xi(s).value
        b = completed_xi(1 - s).value
        worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    assert worst <= 1e-10


@settings(max_examples=60, deadline=None)
@given(st.floats(-5, 6), st.floats(-30, 30))
def test_functional_equation_property(x, y):
    s = complex(x, y)
    a = completed_xi(s).value
    assert abs(a - completed_xi(1 - s).value) <= 1e-10 * max(abs(a), 1.0)


def test_xi_examples():
    assert abs(completed_xi(0.5 + 14.1347251417j).value) < 1e-8 * abs(completed_xi(0.5).value)
    a, b = completed_xi(2).value, completed_xi(-1).value
    assert abs(a - b) <= 1e-12 * abs(a)
    assert abs(completed_xi(0).value - 0.5) < 1e-14
    assert abs(completed_xi(1).value - 0.5) < 1e-14


def test_xi_against_mpmath():
    for s in (0.3 + 5j, 3 - 2j, -2.5, -4.0 + 0.1j):
        ref = mp.mpf(0.5) * s * (s - 1) * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)
        assert abs(completed_xi(s).value - mpc(ref)) <= 1e-12 * max(abs(mpc(ref)), 1.0)


# --- gamma ----------------------------------------------------------------------


def test_gamma_examples():
    assert abs(gamma(1).value - 1) < 1e-15
    assert abs(gamma(0.5).value - math.sqrt(math.pi)) < 1e-14
    assert abs(gamma(4.3 + 2.1j).value - mpc(mp.gamma(4.3 + 2.1j))) < 1e-12 * abs(mpc(mp.gamma(4.3 + 2.1j)))


def test_gamma_poles():
    for s in (0, -1, -4):
        with pytest.raises(PoleError):
            gamma(s)


# --- log zeta and its derivative ------------------------------------------------------


def test_log_zeta_examples():
    assert abs(log_zeta(2).value - math.log(math.pi ** 2 / 6)) < 1e-14
    r = log_zeta(40)
    assert abs(r.value / 2.0 ** -40 - 1) < 1e-6
    with mp.workdps(40):
        ref = mpc(mp.log(mp.zeta(40)))
    assert abs(r.value - ref) <= r.abs_err
    v = log_zeta(1.5 + 1j).value
    assert abs(v.imag) < math.pi
    assert abs(v - mpc(mp.log(mp.zeta(1.5 + 1j)))) < 1e-12


def test_log_zeta_domain():
    with pytest.raises(DomainError):
        log_zeta(0.9)


def test_log_derivative_vs_von_mangoldt():
    from zetalab.arith import prime_power_table

    pp, lam = prime_power_table(1_000_000)
    for s in (2.0, 2.0 + 5j):
        partial = -np.sum(lam * np.exp(-s * np.log(pp)))
        # sum_{n > N} Lambda(n) n^{-2} < 1.04 * N^{-1} (Chebyshev bound psi(x) < 1.04 x)
        tail = 1.04 * 2.0 / 1e6
        assert abs(zeta_log_derivative(s).value - partial) <= tail
    ref = mp.zeta(2, derivative=1) / mp.zeta(2)
    assert abs(zeta_log_derivative(2).value - float(ref)) < 1e-13


def test_log_derivative_large_s():
    r = zeta_log_derivative(40)
    assert abs(r.value / (-math.log(2) * 2.0 ** -40) - 1) < 1e-6
    ref = mpc(mp.zeta(40, derivative=1) / mp.zeta(40))
    assert abs(r.value - ref) <= r.abs_err + 1e-12 * abs(ref)
    assert r.abs_err < 1e-10 * abs(ref)


def test_log_derivative_near_first_zero_grows():
    a = abs(zeta_log_derivative(0.5 + 14j).value)
    b = abs(zeta_log_derivative(0.5 + 13j).value)
    # the growth across this pair is about 8.9x
    assert a > 5 * b


def test_log_derivative_singular():
    with pytest.raises(SingularError):
        zeta_log_derivative(1)


# --- Psi on the critical line -------------------------------------------------------------


def test_psi_at_zero():
    r = psi_critical(0.0)
    ref = 2 * mp.diff(mp.zeta, 0.5) / mp.zeta(0.5)
    assert abs(r.value - float(ref)) < 1e-12


def test_psi_singular_near_zero():
    with pytest.raises(SingularError):
        psi_critical(14.134725141734693)


def test_psi_closed_form_matches_direct():
    ts = [0.0, 3.0, 10.5, 17.0, 30.0, 101.3]
    direct = [psi_critical(t).value.real for t in ts]
    np.testing.assert_allclose(psi_critical_closed(ts), direct, rtol=1e-10, atol=1e-11)


# --- E_n ------------------------------------------------------------------------------------


def test_En_examples():
    assert exp_integral_En(2, 0).value == 1.0
    assert abs(exp_integral_En(1, 1).value - 0.21938393439552029) < 1e-15
    with pytest.raises(PoleError):
        exp_integral_En(1, 0)
    with pytest.raises(BranchCutError):
        exp_integral_En(1, -2.0)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
@pytest.mark.parametrize("z", [0.3 + 0.1j, 1.5 - 2j, -3 + 0.5j, 12 + 30j, -0.7 - 4j, 40 + 0j])
def test_En_against_mpmath(n, z):
    ref = mpc(mp.expint(n, z))
    r = exp_integral_En(n, z)
    assert abs(r.value - ref) <= 1e-12 * max(abs(ref), 1e-300) + r.abs_err


def test_En_recurrence():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        z = cmath.rect(rng.uniform(0.05, 30), rng.uniform(-3, 3))
        for n in range(1, 7):
            lhs = n * exp_integral_En(n + 1, z).value
            rhs = cmath.exp(-z) - z * exp_integral_En(n, z).value
            worst = max(worst, abs(lhs - rhs) / max(abs(lhs), abs(cmath.exp(-z))))
    assert worst <= 1e-12


def test_En_monodromy_loop():
    # follow E_1 once around the origin counterclockwise with sheet tracking
    start = exp_integral_En(1, 1.0).value
    vals = [start]
    sheet = 0
    ang = np.linspace(0, 2 * np.pi, 257)[1:]
    prev_arg = 0.0
    for a in ang:
        z = cmath.rect(1.0, a)
        # principal arg jumps from +pi to -pi when crossing the negative axis
        if a > np.pi and prev_arg <= np.pi:
            sheet = 1
        prev_arg = a
        vals.append(exp_integral_En(1, z, sheet=sheet if a > np.pi else 0).value)
    assert max(abs(b - a) for a, b in zip(vals, vals[1:])) < 0.1
    assert abs((vals[-1] - start) + 2j * math.pi) < 1e-10


def test_En_sheet_shift_higher_order():
    z = 0.8 + 0.6j
    for n in (1, 2, 3):
        shift = exp_integral_En(n, z, sheet=1).value - exp_integral_En(n, z).value
        assert abs(shift + 2j * math.pi * (-z) ** (n - 1) / math.factorial(n - 1)) < 1e-13


# --- theta sum ---------------------------------------------------------------------------


def test_jacobi_phi_values():
    ref = sum(math.exp(-math.pi * n * n) for n in range(1, 10))
    assert abs(jacobi_phi(1).value - ref) < 1e-16
    assert abs(jacobi_phi(1).value - 0.04321740560665402) < 1e-16
    assert abs(jacobi_phi(100).value / math.exp(-100 * math.pi) - 1) < 1e-15
    with pytest.raises(DomainError):
        jacobi_phi(0)


@pytest.mark.parametrize("x", [0.25, 0.5, 1.0, 2.0, 4.0])
def test_jacobi_identity(x):
    lhs = 2 * jacobi_phi(x).value.real + 1
    rhs = (2 * jacobi_phi(1 / x).value.real + 1) / math.sqrt(x)
    assert abs(lhs - rhs) < 1e-13
