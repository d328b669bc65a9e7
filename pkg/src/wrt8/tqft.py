"""SL_2(Z) action on the level-k space, solid-torus states, WRT pairings.

The representation acts on coefficient vectors in the Psi_l basis:

    rep_S[m][l] = e^{-i pi m l / k} / sqrt(2k),
    rep_T       = diag(e^{-i pi l^2 / 2k}).

Both restrict to the alternating subspace; the representation is projective
(S^2 and (S T)^3 are global unit scalars recorded by the tests).  The sign
in rep_T and the pairing orientation are the convention frozen by the two
build-time gates (lens-space envelope and the Brieskorn-sphere fit): with
these choices the (1,1)-filling series oscillates exactly with Hikami's
Chern-Simons phases e^{-25 i pi/84}, e^{+47 i pi/84}.

The solid-torus state of slope (p, q) is rho(W) e_1 with e_1 the colored
vacuum and W the continued-fraction word carrying (1, 0) to (p, q).  All
invariants are computed in this one fixed anomaly convention; acceptance
comparisons are anomaly-robust (magnitudes, phase differences, pi/4-grid
distances).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from mpmath import mp, mpc, mpf

from .jones import KnotId
from .knotstate import StateVector, build_state
from .numerics import DEFAULT_PRECISION, GUARD_BITS, UnitRoot, bits, fixed_sum
from .quantization import inner_product
from .slopes import Slope

S_MAT = ((0, -1), (1, 0))
T_MAT = ((1, 1), (0, 1))


def _mat_mul(a, b):
    return tuple(tuple(sum(a[i][r] * b[r][j] for r in range(2)) for j in range(2))
                 for i in range(2))


def _mat_pow(m, e: int):
    out = ((1, 0), (0, 1))
    base = m
    if e < 0:
        base = ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))
        e = -e
    while e:
        if e & 1:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        e >>= 1
    return out


@dataclass(frozen=True)
class MappingClass:
    """Word in the generators S, T whose matrix carries (1,0) to (p,q)."""
    letters: tuple       # sequence of ("S", 1) and ("T", e)
    matrix: tuple

    @classmethod
    def from_slope(cls, p: int, q: int) -> "MappingClass":
        """Deterministic continued-fraction word with matrix (1,0) -> (p,q).

        Peels M = T^{e_1} S T^{e_2} S ... by nearest-integer division, so
        T-exponents satisfy |e| <= 2 max(|p|, |q|).
        """
        Slope(p, q)
        letters = []
        a, c = p, q
        while c != 0:
            e = round(a / c)
            # M = T^e S M' sends the target column to (c, -(a - e c))
            a, c = c, -(a - e * c)
            letters.append(("T", e))
            letters.append(("S", 1))
        if a < 0:
            letters.extend([("S", 1), ("S", 1)])   # S^2 = -id
        m = ((1, 0), (0, 1))
        for kind, e in letters:
            m = _mat_mul(m, S_MAT if kind == "S" else _mat_pow(T_MAT, e))
        if (m[0][0], m[1][0]) != (p, q):
            raise AssertionError("word construction failed")
        return cls(tuple(letters), m)


def rep_T_phase(k: int, ell: int) -> mpc:
    """Diagonal entry of rho(T) at index ell: e^{-i pi ell^2 / 2k}.

    The exponent is reduced exactly mod 4k, so the entry is well defined
    for ell mod 2k.
    """
    return mp.expjpi(-mpf((ell * ell) % (4 * k)) / (2 * k))


def rep_S(k: int, prec: int = DEFAULT_PRECISION):
    """Dense rho(S) as a 2k x 2k list of rows."""
    root = UnitRoot(k, prec + GUARD_BITS)
    with bits(prec + GUARD_BITS):
        s = 1 / mp.sqrt(2 * k)
        return [[s * mp.conj(root.t_pow(2 * m * l)) for l in range(2 * k)]
                for m in range(2 * k)]


def rep_T(k: int, prec: int = DEFAULT_PRECISION):
    """Dense rho(T) (diagonal) as a 2k x 2k list of rows."""
    with bits(prec + GUARD_BITS):
        n = 2 * k
        m = [[mpc(0)] * n for _ in range(n)]
        for l in range(n):
            m[l][l] = rep_T_phase(k, l)
        return m


def apply_S(k: int, v: Sequence, prec: int) -> tuple:
    root = UnitRoot(k, prec + GUARD_BITS)
    with bits(prec + GUARD_BITS):
        s = 1 / mp.sqrt(2 * k)
        n = 2 * k
        return tuple(s * fixed_sum([mp.conj(root.t_pow(2 * m * l)) * v[l]
                                    for l in range(n)]) for m in range(n))


def apply_T_power(k: int, v: Sequence, e: int, prec: int) -> tuple:
    """rho(T)^e v: diagonal phases e^{-i pi e l^2 / 2k}, exact mod-4k reduction."""
    with bits(prec + GUARD_BITS):
        phases = [mp.expjpi(-mpf((e * l * l) % (4 * k)) / (2 * k)) for l in range(2 * k)]
        return tuple(ph * v[l] for l, ph in enumerate(phases))


def colored_state(ell: int, k: int, prec: int = DEFAULT_PRECISION) -> StateVector:
    """e_ell = (Psi_ell - Psi_{-ell}) / sqrt 2, the colored solid-torus state.

    The convention phase of the TQFT normalization is set to 1 and absorbed
    into the anomaly record.
    """
    if not 0 < ell < k:
        raise ValueError("color must satisfy 0 < ell < k")
    with bits(prec + GUARD_BITS):
        r = 1 / mp.sqrt(2)
        c = [mpc(0)] * (2 * k)
        c[ell] = mpc(r)
        c[(-ell) % (2 * k)] = mpc(-r)
    return StateVector(k, tuple(c), alternating=True)


def vacuum_state(k: int, prec: int = DEFAULT_PRECISION) -> StateVector:
    return colored_state(1, k, prec)


def _apply_S_to_vacuum(k: int, prec: int) -> tuple:
    """rho(S) e_1 in closed form: -(i / sqrt k) sin(pi m / k)."""
    root = UnitRoot(k, prec + GUARD_BITS)
    with bits(prec + GUARD_BITS):
        a = mpc(0, -1) / mp.sqrt(k)
        return tuple(a * root.sin_pi(m) for m in range(2 * k))


def solid_torus_state(p: int, q: int, k: int, prec: int = DEFAULT_PRECISION) -> StateVector:
    """Image of the vacuum under the mapping-class word of the slope.

    The rightmost S acting on the vacuum is evaluated in closed form, so
    words S T^e S ... cost O(k) per diagonal letter and O(k^2) only for
    each further S.
    """
    word = MappingClass.from_slope(p, q)
    letters = list(word.letters)
    v = None
    while letters:
        kind, e = letters.pop()            # rightmost first
        if v is None:
            if kind == "S":
                v = _apply_S_to_vacuum(k, prec)
            else:
                v = apply_T_power(k, vacuum_state(k, prec).c, e, prec)
        else:
            v = apply_S(k, v, prec) if kind == "S" else apply_T_power(k, v, e, prec)
    if v is None:
        v = vacuum_state(k, prec).c
    return StateVector(k, tuple(v), alternating=True)


@dataclass(frozen=True)
class WrtSeries:
    """A k-indexed family of invariants computed in one anomaly convention."""
    p: int
    q: int
    entries: dict
    anomaly_convention: str = "fixed rep_T = diag(e^{-i pi l^2/2k}); no framing correction"

    def ks(self):
        return sorted(self.entries)


def wrt_invariant(p: int, q: int, k: int, prec: int = DEFAULT_PRECISION,
                  knot: KnotId = KnotId.FIGURE_EIGHT) -> mpc:
    """Z_k(M) = <Z_k(E_K), Z_k(N_{p,q})>."""
    if k < 3:
        raise ValueError("k must be >= 3")
    z = build_state(knot, k, prec)
    n = solid_torus_state(p, q, k, prec)
    with bits(prec + GUARD_BITS):
        return inner_product(z.c, n.c)


def wrt_series(p: int, q: int, ks, prec: int = DEFAULT_PRECISION,
               knot: KnotId = KnotId.FIGURE_EIGHT) -> WrtSeries:
    entries = {}
    for k in sorted(ks):
        entries[k] = wrt_invariant(p, q, k, prec, knot)
    return WrtSeries(p, q, entries)


def colored_wrt(frame, ell: int, k: int, prec: int = DEFAULT_PRECISION) -> mpc:
    """Z_{k, ell}: pairing of the knot state with the frame-transported e_ell.

    ``frame`` is an SL_2(Z) matrix ((a, b), (c, d)) giving (mu', lambda');
    the identity frame pairs directly with the colored state:
    Z_{k,ell} = sqrt 2 (sin(pi/k)/sqrt k) J_ell(t_k).
    """
    a, b = frame[0]
    c, d = frame[1]
    if a * d - b * c != 1:
        raise ValueError("frame matrix must lie in SL_2(Z)")
    if not 0 < ell < k:
        raise ValueError("color must satisfy 0 < ell < k")
    z = build_state(KnotId.FIGURE_EIGHT, k, prec)
    e = colored_state(ell, k, prec)
    if frame != ((1, 0), (0, 1)):
        v = tuple(e.c)
        for kind, exp in _word_from_matrix(frame):
            v = apply_S(k, v, prec) if kind == "S" else apply_T_power(k, v, exp, prec)
        e = StateVector(k, v, alternating=True)
    with bits(prec + GUARD_BITS):
        return inner_product(z.c, e.c)


def _word_from_matrix(m):
    """Letters whose product is the given SL_2(Z) matrix."""
    cur = tuple(map(tuple, m))
    s_inv = ((0, 1), (-1, 0))
    letters = []
    while cur[1][0] != 0:
        e = round(cur[0][0] / cur[1][0])
        letters.append(("T", e))
        letters.append(("S", 1))
        cur = _mat_mul(s_inv, _mat_mul(_mat_pow(T_MAT, -e), cur))
    a, b = cur[0]
    if a == 1:
        if b:
            letters.append(("T", b))
    else:
        letters.extend([("S", 1), ("S", 1)])       # -id
        if b:
            letters.append(("T", -b))
    chk = ((1, 0), (0, 1))
    for kind, e in letters:
        chk = _mat_mul(chk, S_MAT if kind == "S" else _mat_pow(T_MAT, e))
    if chk != tuple(map(tuple, m)):
        raise AssertionError("matrix word construction failed")
    return letters
