import random

import pytest
from mpmath import mp, mpc, mpf

from wrt8.numerics import bits
from wrt8.quantization import (HalfFormTag, PointE, QuantParams, basis_section,
                               cauchy_riemann_residual, evaluate_state,
                               halfform_norm, heisenberg_pullback, inner_product,
                               inner_product_quadrature)

PREC = 128


def _rand_point(rng):
    return PointE(mpf(rng.random()), mpf(rng.random()))


def test_m_eigenrelation_contract():
    # pull-back by (mu/2k, 1) multiplies Psi_ell by e^{i ell pi / k}
    k, ell = 5, 2
    params = QuantParams(k=k, precision=PREC)
    rng = random.Random(1)
    coeffs = [0] * (2 * k)
    coeffs[ell] = 1
    with bits(PREC):
        v = PointE(mpf(1) / (2 * k), mpf(0))
        for _ in range(10):
            x = _rand_point(rng)
            lhs = heisenberg_pullback(params, v, coeffs, x)
            rhs = mp.expjpi(mpf(2 * ell) / (2 * k)) * \
                evaluate_state(params, coeffs, x).amplitude
            assert abs(lhs - rhs) < mpf(2) ** -100


def test_l_shift_contract():
    k = 5
    params = QuantParams(k=k, precision=PREC)
    rng = random.Random(2)
    c0 = [0] * (2 * k)
    c0[0] = 1
    with bits(PREC):
        v = PointE(mpf(0), -mpf(1) / (2 * k))
        for _ in range(5):
            x = _rand_point(rng)
            lhs = heisenberg_pullback(params, v, c0, x)       # L Psi_0
            rhs = basis_section(params, -1, x).amplitude      # Psi_{-1}
            assert abs(lhs - rhs) < mpf(2) ** -100


def test_r_invariance():
    k = 4
    params = QuantParams(k=k, precision=PREC)
    rng = random.Random(3)
    coeffs = [0] * (2 * k)
    coeffs[3] = 1
    with bits(PREC):
        for v in (PointE(1, 0), PointE(0, 1), PointE(-2, 3)):
            x = _rand_point(rng)
            lhs = heisenberg_pullback(params, v, coeffs, x)
            rhs = evaluate_state(params, coeffs, x).amplitude
            assert abs(lhs - rhs) < mpf(2) ** -100


def test_lambda_half_translation_shifts_index_by_k():
    # T*_{lambda/2} Psi_ell = Psi_{ell + k}
    k, ell = 4, 1
    params = QuantParams(k=k, precision=PREC)
    with bits(PREC):
        x = PointE(mpf("0.21"), mpf("0.57"))
        c = [0] * (2 * k)
        c[ell] = 1
        lhs = heisenberg_pullback(params, PointE(0, mpf(1) / 2), c, x)
        rhs = basis_section(params, ell + k, x).amplitude
        assert abs(lhs - rhs) < mpf(2) ** -100


def test_parity():
    # coefficients with c_{-l} = -c_l give opposite values at x and -x
    k = 4
    params = QuantParams(k=k, precision=PREC)
    with bits(PREC):
        c = [mpc(0)] * (2 * k)
        c[1], c[-1 % (2 * k)] = mpc(2, 1), mpc(-2, -1)
        c[3], c[-3 % (2 * k)] = mpc(0, -1), mpc(0, 1)
        x = PointE(mpf("0.3"), mpf("0.8"))
        mx = PointE(-mpf("0.3"), -mpf("0.8"))
        a = evaluate_state(params, c, x).amplitude
        b = evaluate_state(params, c, mx).amplitude
        assert abs(a + b) < mpf(2) ** -100


def test_linearity_delta_coefficient():
    k = 3
    params = QuantParams(k=k, precision=PREC)
    with bits(PREC):
        x = PointE(mpf("0.11"), mpf("0.77"))
        c = [0] * 6
        c[0] = 1
        assert evaluate_state(params, c, x).amplitude == \
            basis_section(params, 0, x).amplitude


def test_psi0_at_origin_positive_theta_value():
    with bits(PREC):
        for k in (3, 6, 12):
            params = QuantParams(k=k, precision=PREC)
            v = basis_section(params, 0, PointE(0, 0))
            assert v.halfform is HalfFormTag.OMEGA_MU
            amp = v.amplitude
            assert abs(mp.im(amp)) < mpf(2) ** -100
            ratio = mp.re(amp) / (mpf(k) / (2 * mp.pi)) ** mpf("0.25")
            # Theta_k(0) = 1 + 2 e^{-2 pi k} + ..., positive
            assert ratio > 1 and ratio - 1 < mpf("2.001") * mp.exp(-2 * mp.pi * k)


def test_orthonormality_coefficient_formula():
    with bits(PREC):
        a = [mpc(0)] * 6
        b = [mpc(0)] * 6
        a[2] = 1
        b[2] = 1
        assert abs(inner_product(a, b) - 1) == 0
        b2 = [mpc(0)] * 6
        b2[3] = 1
        assert inner_product(a, b2) == 0
        with pytest.raises(ValueError):
            inner_product(a, [mpc(0)] * 8)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_gram_matrix_quadrature(k):
    """Quadrature Gram matrix of the 2k basis sections = identity to 1e-8."""
    params = QuantParams(k=k, precision=96)
    with bits(96):
        for l in range(2 * k):
            for m in range(l, min(l + 2, 2 * k)):
                el = [0] * (2 * k)
                em = [0] * (2 * k)
                el[l] = 1
                em[m] = 1
                g = inner_product_quadrature(params, el, em, grid=40)
                target = 1 if l == m else 0
                assert abs(g - target) < mpf("1e-8")


def test_quadrature_oracle_random_vectors():
    k = 4
    params = QuantParams(k=k, precision=96)
    rng = random.Random(7)
    with bits(96):
        a = [mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(2 * k)]
        b = [mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(2 * k)]
        direct = inner_product(a, b)
        quad = inner_product_quadrature(params, a, b, grid=48)
        assert abs(direct - quad) < mpf("1e-8")


def test_cauchy_riemann_second_order():
    k = 4
    params = QuantParams(k=k, precision=160)
    with bits(160):
        c = [0] * (2 * k)
        c[1] = 1
        x = PointE(mpf("0.23"), mpf("0.41"))
        r = [cauchy_riemann_residual(params, c, x, mpf(h))
             for h in ("1e-3", "5e-4", "2.5e-4")]
        assert r[0] / r[1] == pytest.approx(4, rel=0.05)
        assert r[1] / r[2] == pytest.approx(4, rel=0.05)


def test_halfform_norms():
    params = QuantParams(k=5, precision=96)
    with bits(96):
        mu = halfform_norm(params, HalfFormTag.OMEGA_MU)
        la = halfform_norm(params, HalfFormTag.OMEGA_LAMBDA)
        # square lattice: the two frames have equal norm (2 pi)^{-1/4}
        assert abs(mu / la - 1) < mpf(2) ** -80
        assert abs(mu - (2 * mp.pi) ** mpf("-0.25")) < mpf(2) ** -80
        # frozen regression value of the metric computation at tau = i
        assert abs(mu - mpf("0.63161877774606470129")) < mpf("1e-18")
        # homogeneity is |c| * norm by definition of a norm on a line
        assert abs(3 * mu - abs(-3) * mu) == 0


def test_tau_validation():
    with pytest.raises(ValueError):
        QuantParams(k=3, tau_c=1.0)
    with pytest.raises(ValueError):
        QuantParams(k=0)
