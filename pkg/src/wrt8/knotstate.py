"""Figure-eight knot state and the exact q-difference operator identity.

The state is Z_k = (sin(pi/k)/sqrt k) sum_l J_l(t_k) Psi_l.  In coefficient
space M is diagonal with (M c)_l = e^{i l pi / k} c_l and L is the cyclic
shift (L c)_l = c_{l+1} (so that L Psi_l = Psi_{l-1} on sections; the shift
direction was frozen by testing against quantization.basis_section).

The operators

    Q = (q^-1 M^2 - q M^-2) L + (q M^2 - q^-1 M^-2) L^-1
        + (M^2 - M^-2)(-M^4 - M^-4 + M^2 + M^-2 + q^2 + q^-2)
    R = M^5 + M^-5 + M^3 + M^-3 - (q^2 + q^-2)(M + M^-1)

with q = e^{i pi/k} annihilate the pair (Z_k, Z_k^0): Q Z_k = R Z_k^0
exactly, with Z_k^0 the constant-coefficient section 1/(2i sqrt k).  The
residual of that identity is the strongest single correctness gate for the
Jones evaluator and the operator conventions together.
"""
from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpc, mpf

from .jones import KnotId, jones_table
from .numerics import DEFAULT_PRECISION, GUARD_BITS, UnitRoot, bits, fixed_sum


@dataclass(frozen=True)
class StateVector:
    """A level-k state as 2k coefficients in the Psi_l basis."""
    k: int
    c: tuple
    alternating: bool = False

    def __post_init__(self):
        if len(self.c) != 2 * self.k:
            raise ValueError("need 2k coefficients")

    def norm(self) -> mpf:
        return mp.sqrt(fixed_sum([abs(x) ** 2 for x in self.c]))

    def coeff(self, ell: int) -> mpc:
        return self.c[ell % (2 * self.k)]


@dataclass(frozen=True)
class BandedOperator:
    """Circulant-banded operator in coefficient space.

    (A c)_l = diag[l] c_l + up[l] c_{l+1} + down[l] c_{l-1}, indices mod 2k.
    The band entries are precomputed at build precision.
    """
    k: int
    precision: int
    diag: tuple
    up: tuple
    down: tuple

    def apply(self, v: StateVector) -> StateVector:
        n = 2 * self.k
        c = v.c
        with bits(self.precision + GUARD_BITS):
            out = tuple(self.diag[l] * c[l] + self.up[l] * c[(l + 1) % n]
                        + self.down[l] * c[(l - 1) % n] for l in range(n))
        return StateVector(self.k, out)

    def as_matrix(self):
        n = 2 * self.k
        m = [[mpc(0)] * n for _ in range(n)]
        for l in range(n):
            m[l][l] = self.diag[l]
            m[l][(l + 1) % n] = self.up[l]
            m[l][(l - 1) % n] = self.down[l]
        return m


def build_state(knot: KnotId, k: int, prec: int = DEFAULT_PRECISION) -> StateVector:
    """Z_k(E_K): c_l = (sin(pi/k)/sqrt k) J_l(t_k); alternating."""
    if k < 3:
        raise ValueError("k must be >= 3")
    table = jones_table(knot, k, prec)
    with bits(prec + GUARD_BITS):
        scale = mp.sinpi(mpf(1) / k) / mp.sqrt(k)
        c = tuple(mpc(scale * table.value(l)) for l in range(2 * k))
    return StateVector(k, c, alternating=True)


def build_Z0(k: int, prec: int = DEFAULT_PRECISION) -> StateVector:
    """Z_k^0 = (1 / 2i sqrt k) sum_l Psi_l."""
    if k < 2:
        raise ValueError("k must be >= 2")
    with bits(prec + GUARD_BITS):
        v = mpc(0, -1) / (2 * mp.sqrt(k))
    return StateVector(k, (v,) * (2 * k))


def build_Q(k: int, prec: int = DEFAULT_PRECISION) -> BandedOperator:
    root = UnitRoot(k, prec + GUARD_BITS)
    with bits(prec + GUARD_BITS):
        q = root.q                    # e^{i pi / k} = t_k^2
        q2 = q * q
        diag, up, down = [], [], []
        for l in range(2 * k):
            a = root.t_pow(4 * l)     # M^2 eigenvalue
            diag.append((a - 1 / a) * (-a * a - 1 / (a * a) + a + 1 / a + q2 + 1 / q2))
            up.append(a / q - q / a)
            down.append(q * a - 1 / (q * a))
    return BandedOperator(k, prec, tuple(diag), tuple(up), tuple(down))


def build_R(k: int, prec: int = DEFAULT_PRECISION) -> BandedOperator:
    root = UnitRoot(k, prec + GUARD_BITS)
    with bits(prec + GUARD_BITS):
        q2 = root.q ** 2
        diag = []
        for l in range(2 * k):
            m = lambda j: root.t_pow(2 * l * j)
            diag.append(m(5) + m(-5) + m(3) + m(-3) - (q2 + 1 / q2) * (m(1) + m(-1)))
        zero = (mpc(0),) * (2 * k)
    return BandedOperator(k, prec, tuple(diag), zero, zero)


def qdiff_residual(k: int, prec: int = DEFAULT_PRECISION,
                   knot: KnotId = KnotId.FIGURE_EIGHT) -> mpf:
    """|| Q Z_k(E_K) - R Z_k^0 ||_2 at level k.

    For the figure eight this is an exact identity, so the result must be at
    rounding level; with the unknot state substituted it is bounded away
    from zero (the identity is knot-specific).
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    with bits(prec + GUARD_BITS):
        z = build_state(knot, k, prec)
        z0 = build_Z0(k, prec)
        lhs = build_Q(k, prec).apply(z)
        rhs = build_R(k, prec).apply(z0)
        diff = StateVector(k, tuple(a - b for a, b in zip(lhs.c, rhs.c)))
        return diff.norm()


def qdiff_rhs_norm(k: int, prec: int = DEFAULT_PRECISION) -> mpf:
    """|| R Z_k^0 ||_2, the scale against which the residual is judged."""
    with bits(prec + GUARD_BITS):
        return build_R(k, prec).apply(build_Z0(k, prec)).norm()


def index_reversal(v: StateVector) -> StateVector:
    """(I c)_l = c_{-l}: the pull-back of x -> -x in coefficient space."""
    n = 2 * v.k
    return StateVector(v.k, tuple(v.c[(-l) % n] for l in range(n)))


def coefficient_shift(v: StateVector) -> StateVector:
    """c_l -> c_{l+k}: the pull-back of the lambda/2 Heisenberg translation."""
    n = 2 * v.k
    return StateVector(v.k, tuple(v.c[(l + v.k) % n] for l in range(n)))
