"""Level-k geometric quantization of the torus H_1(Sigma, R).

The symplectic form is omega = 4 pi dp ^ dq on E = R mu + R lambda, the
prequantum connection is d + (1/i) alpha with alpha_x(y) = omega(x, y)/2,
and the complex structure is z = p + tau q (Im tau > 0, default tau = i).

In the unitary trivialization the orthonormal basis pinned by the contract
(holomorphic, R-invariant, M-eigenvectors, unit shift under L, positive at
the origin) is

    Psi_l(p, q) = (k/2pi)^{1/4} * sum_{n = l mod 2k}
                  exp(i pi tau n^2 / 2k) exp(2 pi i n z) * exp(2 pi i k z q)

tensored with the half-form vector Omega_mu.  M = pull-back by (mu/2k, 1)
and L = pull-back by (-lambda/2k, 1) then satisfy M Psi_l = e^{i l pi/k}
Psi_l and L Psi_l = Psi_{l-1}, and the basis is orthonormal for the scalar
product integrating the pointwise half-form pairing against |omega|.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from mpmath import mp, mpc, mpf

from .numerics import DEFAULT_PRECISION, GUARD_BITS, bits, fixed_sum


class PointE(NamedTuple):
    """x = p mu + q lambda; all of E is allowed."""
    p: object
    q: object


class HalfFormTag(enum.Enum):
    OMEGA_MU = "omega_mu"
    OMEGA_LAMBDA = "omega_lambda"


@dataclass(frozen=True)
class QuantParams:
    k: int
    tau_c: complex = 1j
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if not mp.im(mpc(self.tau_c)) > 0:
            raise ValueError("complex-structure parameter needs Im tau > 0")


@dataclass(frozen=True)
class SectionValue:
    """Value of a section of L^k (x) delta in the unitary trivialization.

    ``amplitude`` is the coefficient against the recorded half-form frame;
    the trivialization-independent intensity is amplitude times the
    half-form norm of the frame.
    """
    amplitude: mpc
    halfform: HalfFormTag


def _window_radius(k: int, prec: int, b) -> int:
    # Gaussian tail: terms fall below 2^-(prec+16) once
    # pi b (n + 2kq)^2 / (2k) > (prec + 16) log 2
    return int(math.ceil(math.sqrt(2 * k * (prec + 16) * math.log(2) / (math.pi * float(b))))) + 2


def evaluate_state(params: QuantParams, coefficients: Sequence, x: PointE) -> SectionValue:
    """sum_l c_l Psi_l(x), fused over the theta window (single Gaussian sum).

    ``coefficients`` has length 2k, indexed by l mod 2k.
    """
    k = params.k
    if len(coefficients) != 2 * k:
        raise ValueError("coefficient vector must have length 2k")
    prec = params.precision
    with bits(prec + GUARD_BITS):
        tau = mpc(params.tau_c)
        b = mp.im(tau)
        p = mpf(x.p) if not isinstance(x.p, (mpf, mpc)) else x.p
        q = mpf(x.q) if not isinstance(x.q, (mpf, mpc)) else x.q
        z = p + tau * q
        center = int(mp.nint(-2 * k * q))
        R = _window_radius(k, prec, b)
        pref = mp.exp(2j * mp.pi * k * z * q)
        terms = []
        for n in range(center - R, center + R + 1):
            c = coefficients[n % (2 * k)]
            if c == 0:
                continue
            expo = 1j * mp.pi * tau * n * n / (2 * k) + 2j * mp.pi * n * z
            terms.append(c * mp.exp(expo))
        amp = (mpf(k) / (2 * mp.pi)) ** mpf("0.25") * pref * fixed_sum(terms)
        return SectionValue(mpc(amp), HalfFormTag.OMEGA_MU)


def basis_section(params: QuantParams, ell: int, x: PointE) -> SectionValue:
    """Psi_ell(x); ell is reduced mod 2k."""
    coeffs = [0] * (2 * params.k)
    coeffs[ell % (2 * params.k)] = 1
    return evaluate_state(params, coeffs, x)


def inner_product(a: Sequence, b: Sequence) -> mpc:
    """<a, b> = sum_l a_l conj(b_l): the basis (Psi_l) is orthonormal."""
    if len(a) != len(b):
        raise ValueError("coefficient vectors of different levels")
    return fixed_sum([mpc(x) * mp.conj(mpc(y)) for x, y in zip(a, b)])


def inner_product_quadrature(params: QuantParams, a: Sequence, b: Sequence,
                             grid: int = 64) -> mpc:
    """Trapezoid quadrature of the pointwise pairing over a fundamental domain.

    Cross-check oracle for the coefficient formula: integrates
    <Psi_a(x), Psi_b(x)>_delta |omega|(x) over [0,1)^2 with the half-form
    factor |Omega_mu|^2.  Exponentially accurate in ``grid`` (periodic
    smooth integrand).
    """
    k = params.k
    with bits(params.precision + GUARD_BITS):
        om2 = halfform_norm(params, HalfFormTag.OMEGA_MU) ** 2
        cell = 4 * mp.pi / mpf(grid * grid) * om2
        total = mpc(0)
        for i in range(grid):
            for j in range(grid):
                x = PointE(mpf(i) / grid, mpf(j) / grid)
                va = evaluate_state(params, a, x).amplitude
                vb = evaluate_state(params, b, x).amplitude
                total += va * mp.conj(vb)
        return total * cell


def halfform_norm(params: QuantParams, tag: HalfFormTag) -> mpf:
    """Norm of the half-form frame vector: ||v|| = ||phi(v^2)||_g^{1/2}.

    With g = omega(., j.) the Kahler metric, phi(Omega_mu^2) = dz and
    phi(Omega_lambda^2) = dz / tau, giving (b/2pi)^{1/4} and
    (b/2pi)^{1/4} |tau|^{-1/2}.
    """
    with bits(params.precision):
        tau = mpc(params.tau_c)
        b = mp.im(tau)
        base = (b / (2 * mp.pi)) ** mpf("0.25")
        if tag is HalfFormTag.OMEGA_MU:
            return mpf(base)
        if tag is HalfFormTag.OMEGA_LAMBDA:
            return mpf(base / mp.sqrt(abs(tau)))
        raise ValueError(f"unknown half-form tag {tag!r}")


def heisenberg_pullback(params: QuantParams, v: PointE, coefficients: Sequence, x: PointE) -> mpc:
    """(T*_{(v,1)} Psi)(x) = exp(-(ik/2) omega(v, x)) Psi(x + v), amplitude part.

    Used by the contract tests: with v = mu/2k this is the operator M, with
    v = -lambda/2k the operator L, with v in R the invariance of H_k.
    """
    k = params.k
    with bits(params.precision + GUARD_BITS):
        vp, vq = mpf(v.p), mpf(v.q)
        xp, xq = mpf(x.p), mpf(x.q)
        omega = 4 * mp.pi * (vp * xq - vq * xp)
        shifted = PointE(xp + vp, xq + vq)
        return mp.exp(-0.5j * k * omega) * evaluate_state(params, coefficients, shifted).amplitude


def cauchy_riemann_residual(params: QuantParams, coefficients: Sequence, x: PointE, h) -> mpf:
    """|dbar psi + (k pi / b) z psi| by centered differences at step h.

    The basis sections satisfy the holomorphy equation exactly; the residual
    measures the discretization and must vanish at second order in h.
    """
    with bits(params.precision + GUARD_BITS):
        tau = mpc(params.tau_c)
        b = mp.im(tau)
        h = mpf(h)

        def val(p, q):
            return evaluate_state(params, coefficients, PointE(p, q)).amplitude

        p, q = mpf(x.p), mpf(x.q)
        dp = (val(p + h, q) - val(p - h, q)) / (2 * h)
        dq = (val(p, q + h) - val(p, q - h)) / (2 * h)
        # d/dzbar = (tau d/dp - d/dq) / (tau - taubar)
        dzbar = (tau * dp - dq) / (tau - mp.conj(tau))
        z = p + tau * q
        return abs(dzbar + (params.k * mp.pi / b) * z * val(p, q))
