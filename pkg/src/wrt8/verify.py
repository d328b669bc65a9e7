"""Asymptotic verification: k-sweeps, oscillatory-atom fits, pointwise checks.

The fitter solves the complex least-squares problem

    Z_k  ~  sum_rho c_rho k^{n(rho)} cs(rho)^k

over a k-sweep, reports |c_rho| against the predicted leading amplitudes,
the distance of arg c_rho from the pi/4 anomaly grid, and the log-log decay
exponent of the residual.  Absolute phases are never asserted: only grid
membership and differences (the invariant is defined up to anomaly powers).

Deterministic: fixed k-grids, fixed atom order, plain numpy lstsq on the
(well separated) atom phases.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from mpmath import mp, mpc, mpf

from . import invariants, tqft
from .jones import KnotId
from .knotstate import build_state
from .numerics import DEFAULT_PRECISION, bits
from .quantization import (HalfFormTag, PointE, QuantParams, evaluate_state,
                           halfform_norm)


def default_k_grid(kmin: int = 200, kmax: int = 2000, step: int = 10):
    """Arithmetic k-progression; the step must not alias the atom phases
    (callers pick step coprime to the circle-phase denominators)."""
    return list(range(kmin, kmax + 1, step))


@dataclass(frozen=True)
class FitReport:
    label: str
    ks: tuple
    atoms: tuple                    # (cs complex, power) per atom
    coefficients: tuple             # fitted complex c_rho
    amplitudes: tuple               # |c_rho|
    predicted_a0: tuple             # predicted |amplitudes| (None allowed)
    amp_rel_errors: tuple
    phase_grid_distances: tuple     # distance of arg c to pi/4 grid
    residual_exponent: float
    residual_exponent_stderr: float
    condition_number: float

    def summary(self) -> str:
        rows = [f"fit[{self.label}] over k={self.ks[0]}..{self.ks[-1]} "
                f"({len(self.ks)} samples), cond={self.condition_number:.3g}"]
        for i, (amp, pred, err, dist) in enumerate(zip(
                self.amplitudes, self.predicted_a0, self.amp_rel_errors,
                self.phase_grid_distances)):
            ptxt = "n/a" if pred is None else f"{pred:.8f}"
            etxt = "n/a" if err is None else f"{err:+.2%}"
            rows.append(f"  atom {i}: |c| = {amp:.8f}  a0 = {ptxt}  "
                        f"rel = {etxt}  d(arg, pi/4 grid) = {dist:.2e}")
        rows.append(f"  residual decay exponent: {self.residual_exponent:.3f}"
                    f" +- {self.residual_exponent_stderr:.3f}")
        return "\n".join(rows)


def pi4_grid_distance(phase: float) -> float:
    """Distance of a phase (radians) to the nearest multiple of pi/4."""
    step = math.pi / 4
    r = phase % step
    return min(r, step - r)


def _loglog_slope(ks, values):
    xs = np.log(np.asarray(ks, dtype=float))
    ys = np.log(np.maximum(np.asarray(values, dtype=float), 1e-300))
    A = np.stack([xs, np.ones_like(xs)], axis=1)
    coef, res, *_ = np.linalg.lstsq(A, ys, rcond=None)
    n = len(xs)
    if n > 2 and res.size:
        s2 = float(res[0]) / (n - 2)
        var = s2 / float(np.sum((xs - xs.mean()) ** 2))
        return float(coef[0]), math.sqrt(max(var, 0.0))
    return float(coef[0]), 0.0


def fit_atoms(ks: Sequence[int], series: Sequence[complex], atoms,
              predicted=None, label: str = "") -> FitReport:
    """Least-squares fit of a k-series against atoms (cs, power).

    ``series`` may be any complex-like values (mpc accepted); the fit runs
    in double precision, ample for percent-level amplitude comparisons.
    """
    ks = list(ks)
    z = np.array([complex(v) for v in series])
    U = np.stack([np.array([complex(cs) ** k * k ** float(n) for k in ks])
                  for cs, n in atoms], axis=1)
    gram = U.conj().T @ U
    cond = float(np.linalg.cond(gram))
    if cond > 1e8:
        raise ValueError(f"ill-conditioned atom Gram matrix (cond = {cond:.3g}); "
                         "near-coincident phases or an aliasing k-grid")
    coef, *_ = np.linalg.lstsq(U, z, rcond=None)
    resid = z - U @ coef
    slope, err = _loglog_slope(ks, np.abs(resid))
    if predicted is None:
        predicted = [None] * len(coef)
    amps = [abs(c) for c in coef]
    rel = [None if p is None else (a - float(p)) / float(p)
           for a, p in zip(amps, predicted)]
    dists = [pi4_grid_distance(cmath.phase(c)) for c in coef]
    return FitReport(label, tuple(ks), tuple(atoms), tuple(coef), tuple(amps),
                     tuple(predicted), tuple(rel), tuple(dists), slope, err, cond)


def fit_expansion(p: int, q: int, ks: Sequence[int],
                  prec: int = DEFAULT_PRECISION,
                  include_central: bool = False,
                  series: Optional[Sequence] = None) -> FitReport:
    """Fit the WRT series of the (p,q)-filling against its predicted atoms.

    Central atoms are merged into the residual by default (their k^{-3/2}
    decay is below the O(k^{-1}) corrections of the leading atoms).
    """
    preds = invariants.predict(p, q, prec)
    atoms, a0s = [], []
    for fc in preds:
        if fc.cls == "central" and not include_central:
            continue
        atoms.append((complex(fc.cs_phase), float(fc.order)))
        a0s.append(float(fc.a0))
    if series is None:
        series = [tqft.wrt_invariant(p, q, k, prec) for k in ks]
    return fit_atoms(ks, series, atoms, a0s, label=f"({p},{q})")


def prony_phases(series: Sequence[complex], n_atoms: int):
    """Dominant oscillation frequencies of a uniformly sampled series.

    Hankel/shift (Prony) diagnostic: returns the phase increments per step
    of the strongest exponentials.  Used to discover atoms independently of
    the predictions; not part of any acceptance gate.
    """
    z = np.array([complex(v) for v in series])
    n = len(z)
    m = n // 2
    H = np.stack([z[i:i + m] for i in range(n - m)], axis=0)
    u, s, vh = np.linalg.svd(H[:-1], full_matrices=False)
    r = min(n_atoms, len(s))
    pinv = vh[:r].conj().T @ np.diag(1.0 / s[:r]) @ u[:, :r].conj().T
    shift = pinv @ H[1:]
    eig = np.linalg.eigvals(shift)
    eig = sorted(eig, key=lambda w: -abs(w))[:n_atoms]
    return [cmath.phase(w) for w in eig]


# ---------------------------------------------------------------------------
# pointwise checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointwiseReport:
    label: str
    rows: tuple

    def summary(self) -> str:
        out = [f"pointwise[{self.label}]"]
        out.extend("  " + r for r in self.rows)
        return "\n".join(out)


def _state_amplitude_at(k: int, prec: int, x: PointE) -> mpf:
    params = QuantParams(k=k, precision=prec)
    state = build_state(KnotId.FIGURE_EIGHT, k, prec)
    return abs(evaluate_state(params, state.c, x).amplitude)


def pointwise_irreducible_check(points, ks, prec: int = DEFAULT_PRECISION):
    """Intensity ratios at characteristic-set points against the symbol.

    I_k(x) = |Z_k(x)| 4 pi^{3/4} k^{-3/4}; for two branch points the ratio
    converges to sqrt(||sigma(x1)|| / ||sigma(x2)||) with sigma the torsion
    1-form dp/(1 - 4 cos 4 pi q) measured in the Kahler metric: the dp-norm
    cancels, leaving sqrt((1 - 4 cos 4 pi q2)/(1 - 4 cos 4 pi q1)).
    """
    rows = []
    ratios = {}
    with bits(prec):
        for k in ks:
            vals = []
            for (pp, qq) in points:
                I = _state_amplitude_at(k, prec, PointE(mpf(pp), mpf(qq)))
                vals.append(I * 4 * mp.pi ** mpf("0.75") * mpf(k) ** mpf("-0.75"))
            ratios[k] = vals
        (p1, q1), (p2, q2) = points[0], points[1]
        pred = mp.sqrt((1 - 4 * mp.cospi(4 * mpf(q2))) / (1 - 4 * mp.cospi(4 * mpf(q1))))
        for k in ks:
            r = ratios[k][0] / ratios[k][1]
            rows.append(f"k={k}: I1/I2 = {mp.nstr(r, 8)} predicted {mp.nstr(pred, 8)} "
                        f"rel {mp.nstr(r / pred - 1, 3)}")
    report = PointwiseReport("irreducible-ratio", tuple(rows))
    last = ratios[ks[-1]][0] / ratios[ks[-1]][1]
    return report, float(last / pred - 1)


def pointwise_abelian_check(qs, ks, prec: int = DEFAULT_PRECISION):
    """Abelian-arc intensity against the Alexander-polynomial closed form.

    |Z_k(q lambda)|_delta (2 pi / k)^{1/4} -> |sigma - sigma^{-1}| /
    (sqrt 2 |Delta_8(sigma^2)|) * ||Omega_lambda||, sigma = e^{2 i pi q}.
    """
    rows = []
    rels = []
    with bits(prec):
        for qq in qs:
            q = mpf(qq)
            s = 2 * abs(mp.sinpi(2 * q))
            pred_coeff = s / (mp.sqrt(2) * abs(invariants.alexander_fig8(mp.expjpi(4 * q))))
            for k in ks:
                params = QuantParams(k=k, precision=prec)
                om_mu = halfform_norm(params, HalfFormTag.OMEGA_MU)
                om_la = halfform_norm(params, HalfFormTag.OMEGA_LAMBDA)
                amp = _state_amplitude_at(k, prec, PointE(mpf(0), q))
                val = amp * om_mu * (2 * mp.pi / k) ** mpf("0.25")
                pred = pred_coeff * om_la
                rels.append(float(val / pred - 1))
                rows.append(f"q={mp.nstr(q, 6)} k={k}: |Z| (2pi/k)^1/4 = {mp.nstr(val, 8)} "
                            f"pred {mp.nstr(pred, 8)} rel {rels[-1]:+.2e}")
    return PointwiseReport("abelian-limit", tuple(rows)), rels[-1]


def microsupport_check(points, ks, prec: int = DEFAULT_PRECISION):
    """Decay exponents of |Z_k(x)| over the sweep at off-variety points.

    Off the characteristic picture the state is O(k^-infinity): the log-log
    slope over a dyadic sweep should fall below any fixed power.  On-curve
    points are positive controls growing like k^{3/4}.
    """
    rows = []
    slopes = []
    for (pp, qq) in points:
        vals = [float(_state_amplitude_at(k, prec, PointE(mpf(pp), mpf(qq))))
                for k in ks]
        slope, err = _loglog_slope(ks, vals)
        slopes.append(slope)
        rows.append(f"x=({pp}, {qq}): slope {slope:.3f} +- {err:.3f}")
    return PointwiseReport("microsupport", tuple(rows)), slopes


# ---------------------------------------------------------------------------
# colored (generalized) fits
# ---------------------------------------------------------------------------

def colored_series(qdot: Fraction, ks, prec: int = DEFAULT_PRECISION,
                   frame=((1, 0), (0, 1))):
    """Z_{k, ell} along ell = 2 qdot k for the fixed visible coordinate.

    qdot must be rational and every k must make ell = 2 qdot k an integer
    (jitter from color rounding smears the oscillation atoms; see
    colored_k_grid).
    """
    qdot = Fraction(qdot)
    out = []
    for k in ks:
        ell2 = 2 * qdot * k
        if ell2.denominator != 1:
            raise ValueError(f"k = {k} does not make 2 qdot k an integer")
        out.append(tqft.colored_wrt(frame, int(ell2), k, prec))
    return out


def colored_k_grid(qdot: Fraction, kmin: int, kmax: int, step_mult: int = 1):
    """k-grid with 2 qdot k integral: multiples of denominator(2 qdot)."""
    d = Fraction(qdot).limit_denominator(10 ** 6)
    den = (2 * d).denominator
    step = den * step_mult
    start = ((kmin + step - 1) // step) * step
    return list(range(start, kmax + 1, step))


def generalized_atoms(qdot, prec: int = DEFAULT_PRECISION):
    """Oscillation atoms and leading amplitudes of the colored series.

    The visible circle {q = qdot} meets the abelian arc at (0, qdot) and,
    inside the band, the two branch strands at (+-p(qdot), qdot).  Atoms
    (empirically pinned, conventions as everywhere in the package):

      * abelian: constant phase, power -1/2, amplitude
        2^{-1/4} (T_ab / omega(mu', .))^{1/2};
      * irreducible (per strand): conj(CS) e^{2 pi i qdot p}, power 0,
        amplitude 2^{-3/4} (T_8 / omega(mu', .))^{1/2} with the printed
        branch torsion 2^{3/2} pi |dp| / (1 - 4 cos 4 pi q).

    Returns a list of (cs, power, predicted_amplitude_or_None).
    """
    from .charvar import band_of, strand_p, strand_slope
    with bits(prec):
        q = mpf(Fraction(qdot).numerator) / Fraction(qdot).denominator
        delta = invariants.alexander_fig8(mp.expjpi(4 * q))
        t_ab = 4 * mp.sinpi(2 * q) ** 2 / abs(delta) ** 2 * 2 ** mpf("1.5") * mp.pi
        a_ab = 2 ** mpf("-0.25") * mp.sqrt(t_ab / (4 * mp.pi))
        atoms = [(mpc(1), -0.5, float(a_ab))]
        band = band_of(q)
        if band is not None:
            for sigma in (+1, -1):
                pt = strand_p(q, sigma, band)
                cp = invariants.classify_point(pt, q, prec)
                cs8 = invariants.cs_irreducible(cp, prec)
                atom = mp.conj(cs8) * mp.exp(2j * mp.pi * q * pt)
                s = strand_slope(q, sigma, band)
                t8 = invariants.torsion_fig8(q, prec).value_on((s, 1))
                w = abs(invariants.omega_pairing((1, 0), (s, 1)))
                a_irr = 2 ** mpf("-0.75") * mp.sqrt(t8 / w)
                atoms.append((atom, 0.0, float(a_irr)))
        return atoms


def generalized_fit(qdot, ks, prec: int = DEFAULT_PRECISION,
                    frame=((1, 0), (0, 1))) -> FitReport:
    """Fit of the colored series Z_{k, 2 qdot k} against the circle atoms."""
    series = colored_series(qdot, ks, prec, frame)
    spec = generalized_atoms(qdot, prec)
    atoms = [(cs, n) for cs, n, _ in spec]
    preds = [a for _, _, a in spec]
    return fit_atoms(ks, series, atoms, preds, label=f"colored q={qdot}")
