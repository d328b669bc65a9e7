"""Figure-eight character-variety geometry on the boundary torus.

The characteristic set is X = {F = 0} with

    F(p, q) = cos(2 pi p) - cos(8 pi q) + cos(4 pi q) + 1.

X is the union of two immersed circles living in the bands q in [1/6, 1/3]
and [2/3, 5/6] (each with one double point, at (0, 1/4) resp. (0, 3/4))
plus the two isolated points (1/2, 0) and (1/2, 1/2) (imaginary double
points).  Writing qc for the band center and d = q - qc, the identity

    1 - (cos 8 pi q - cos 4 pi q - 1) = 2 sin^2(4 pi d) + 2 sin^2(2 pi d) =: w

holds on both bands and the two smooth strands through the double point are

    p = sigma * sign(d) * arcsin(sqrt(w/2)) / pi,    sigma = +-1,

with dp/dq = sigma sign(d) w' / (2 pi sqrt(w (2-w))), slope +-2 sqrt 5 at
the double point itself.  These stable forms are what everything downstream
(transport, torsion, Chern-Simons quadrature) evaluates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from mpmath import mp, mpf

from .numerics import DEFAULT_PRECISION, bits

BAND1 = (Fraction(1, 6), Fraction(1, 3))
BAND2 = (Fraction(2, 3), Fraction(5, 6))


def char_function(p, q):
    """F(p, q) = cos(2 pi p) - cos(8 pi q) + cos(4 pi q) + 1."""
    return mp.cospi(2 * mpf(p)) - mp.cospi(8 * mpf(q)) + mp.cospi(4 * mpf(q)) + 1


def char_function_alt(p, q):
    """Redundant product-form evaluation: 2 cos^2(pi p) + 2 sin(6 pi q) sin(2 pi q)."""
    return 2 * mp.cospi(mpf(p)) ** 2 + 2 * mp.sinpi(6 * mpf(q)) * mp.sinpi(2 * mpf(q))


def grad_char(p, q):
    """(F_p, F_q)."""
    fp = -2 * mp.pi * mp.sinpi(2 * mpf(p))
    fq = 8 * mp.pi * mp.sinpi(8 * mpf(q)) - 4 * mp.pi * mp.sinpi(4 * mpf(q))
    return fp, fq


def band_of(q) -> Optional[int]:
    """1 or 2 if q mod 1 lies in the closed irreducible band, else None."""
    qm = mpf(q) % 1
    if mpf(1) / 6 <= qm <= mpf(1) / 3:
        return 1
    if mpf(2) / 3 <= qm <= mpf(5) / 6:
        return 2
    return None


def band_center(band: int) -> Fraction:
    return Fraction(1, 4) if band == 1 else Fraction(3, 4)


def band_center_mpf(band: int) -> mpf:
    return mpf(1) / 4 if band == 1 else mpf(3) / 4


def _w(d):
    return 2 * mp.sinpi(4 * d) ** 2 + 2 * mp.sinpi(2 * d) ** 2


def _wprime(d):
    return 8 * mp.pi * mp.sinpi(8 * d) + 4 * mp.pi * mp.sinpi(4 * d)


def strand_p(q, sigma: int, band: int):
    """p-coordinate (in (-1/2, 1/2]) of the smooth strand sigma in the band."""
    d = mpf(q) - band_center_mpf(band)
    sgn = 1 if d > 0 else (-1 if d < 0 else 0)
    return sigma * sgn * mp.asin(mp.sqrt(_w(d) / 2)) / mp.pi


def strand_slope(q, sigma: int, band: int):
    """dp/dq along the strand; +-2 sqrt 5 at the double point, infinite at
    the band-edge fold points (vertical tangent)."""
    d = mpf(q) - band_center_mpf(band)
    w = _w(d)
    if w == 0:
        return sigma * 2 * mp.sqrt(mpf(5))
    if w >= 2:
        return mp.inf if sigma * (1 if d > 0 else -1) > 0 else -mp.inf
    sgn = 1 if d > 0 else -1
    return sigma * sgn * _wprime(d) / (2 * mp.pi * mp.sqrt(w * (2 - w)))


@dataclass(frozen=True)
class CharPoint:
    """A classified point related to the characteristic picture."""
    p: mpf
    q: mpf
    cls: str                      # 'irreducible' | 'abelian' | 'central'
    band: Optional[int] = None
    strand: Optional[int] = None
    tangent: Optional[mpf] = None
    real_double: bool = False
    imaginary_double: bool = False


def classify_point(p, q, prec: int = DEFAULT_PRECISION) -> CharPoint:
    """Classify a point assumed to lie on {F = 0} or on the abelian arc."""
    with bits(prec):
        pm = mpf(p) % 1
        qm = mpf(q) % 1
        pt = pm if pm <= mpf("0.5") else pm - 1
        tol = mpf(2) ** (-prec // 2)
        half = mpf("0.5")
        if abs(pt - half) < tol and (qm < tol or abs(qm - half) < tol or qm > 1 - tol):
            return CharPoint(half, qm, "central", imaginary_double=True)
        if abs(pt) < tol:
            rd = min(abs(qm - mpf("0.25")), abs(qm - mpf("0.75"))) < tol
            return CharPoint(mpf(0), qm, "abelian", real_double=rd)
        band = band_of(qm)
        if band is None:
            # snap root-polish noise at the closed band edges
            for edge in (mpf(1) / 6, mpf(1) / 3, mpf(2) / 3, mpf(5) / 6):
                if abs(qm - edge) < mpf(2) ** (-prec // 3):
                    qm = edge
                    band = band_of(qm)
                    break
        if band is None:
            raise ValueError(f"point ({p}, {q}) is not on the characteristic picture")
        d = qm - band_center_mpf(band)
        sgn = 1 if d > 0 else (-1 if d < 0 else 0)
        sigma = +1 if (1 if pt > 0 else -1) == sgn else -1
        return CharPoint(pt, qm, "irreducible", band=band, strand=sigma,
                         tangent=strand_slope(qm, sigma, band))


def tangent_slope(point: CharPoint, prec: int = DEFAULT_PRECISION):
    """dp/dq of the branch through the point (strand-resolved at double points)."""
    with bits(prec):
        if point.cls == "irreducible":
            return strand_slope(point.q, point.strand, point.band)
        if point.real_double:
            if point.strand is None:
                raise ValueError("double point: a strand must be chosen")
            return point.strand * 2 * mp.sqrt(mpf(5))
        fp, fq = grad_char(point.p, point.q)
        if abs(fp) == 0 and abs(fq) == 0:
            raise ValueError("vanishing gradient off the double points")
        if fp == 0:
            raise ValueError("vertical tangent: dp/dq is infinite")
        return -fq / fp


@dataclass(frozen=True)
class LinePoint:
    """One intersection of the surgery line with the characteristic picture."""
    t: mpf
    point: CharPoint
    multiplicity: int = 1
    transversal: bool = True


@dataclass(frozen=True)
class IntersectionSet:
    p: int
    q: int
    points: tuple

    def irreducible(self):
        return [lp for lp in self.points if lp.point.cls == "irreducible"]

    def representatives(self):
        """Irreducible points deduped by the Z_2 symmetry t ~ 1 - t."""
        out = []
        for lp in self.irreducible():
            if any(abs(lp.t + o.t - 1) < mpf("1e-20") for o in out):
                continue
            out.append(lp)
        return out

    def hits_real_double_point(self) -> bool:
        return any(lp.point.real_double for lp in self.points)


def _double_point_passes(p: int, q: int):
    """Exact parameters t where the line (pt, qt) meets a double point.

    Real double points: pt = 0, qt = 1/4 or 3/4 (mod 1); imaginary:
    pt = 1/2 (mod 1), qt = 0 or 1/2 (mod 1).  All checks are exact rational
    arithmetic.
    """
    real_hits, imag_hits = [], []
    for m in range(p):
        t = Fraction(m, p)
        r = (q * t) % 1
        if r == Fraction(1, 4) or r == Fraction(3, 4):
            real_hits.append(t)
    for j in range(2 * p):
        t = Fraction(2 * j + 1, 2 * p)
        if t >= 1:
            break
        r = (q * t) % 1
        if r == 0 or r == Fraction(1, 2):
            imag_hits.append(t)
    return real_hits, imag_hits


def intersect_line(p: int, q: int, prec: int = DEFAULT_PRECISION) -> IntersectionSet:
    """All t in [0,1) with F(pt, qt) = 0, classified.

    Transversal crossings are found from sign changes on an oversampled grid
    and polished by bisection/Newton; double-point passes are detected by
    exact rational arithmetic (they are tangential and produce no sign
    change); smooth tangencies (failures of the regularity hypothesis) are
    caught by a derivative-root scan.
    """
    if p <= 0 or gcd(p, abs(q)) != 1:
        raise ValueError("slope must be coprime with p > 0")
    with bits(prec):
        pts = []

        def G(t):
            return char_function(p * t, q * t)

        n0 = 16 * 8 * (abs(p) + abs(q))
        grid = [mpf(i) / n0 for i in range(n0 + 1)]
        vals = [G(t) for t in grid]
        real_hits, imag_hits = _double_point_passes(p, q)

        def near_known(t):
            return any(abs(t - mpf(h.numerator) / h.denominator) < mpf(1) / (4 * n0)
                       for h in real_hits + imag_hits)

        for i in range(n0):
            a, b = grid[i], grid[i + 1]
            fa, fb = vals[i], vals[i + 1]
            if fa == 0 and not near_known(a):
                root = a
            elif fa * fb < 0:
                root = mp.findroot(G, (a, b), solver="bisect", tol=mpf(2) ** (-prec + 16))
            else:
                continue
            if near_known(root):
                continue
            cp = classify_point(p * root, q * root, prec)
            if cp.cls == "irreducible":
                line_slope = mpf(p) / q if q else mp.inf
                trans = abs(line_slope - cp.tangent) > mpf("1e-9")
                pts.append(LinePoint(root % 1, cp, 1, trans))
            else:
                pts.append(LinePoint(root % 1, cp, 1, False))

        # tangential smooth contacts: roots of G' where G is also ~0
        dG = lambda t: (G(t + mpf(2) ** (-prec // 3)) - G(t - mpf(2) ** (-prec // 3))) \
            / (2 * mpf(2) ** (-prec // 3))
        for i in range(n0):
            a, b = grid[i], grid[i + 1]
            da, db = dG(a), dG(b)
            if da * db < 0:
                tc = mp.findroot(dG, (a, b), solver="bisect", tol=mpf(2) ** (-prec // 2))
                if abs(G(tc)) < mpf(2) ** (-prec // 3) and not near_known(tc) \
                        and not any(abs(tc - lp.t) < mpf(1) / (2 * n0) for lp in pts):
                    cp = classify_point(p * tc, q * tc, prec)
                    pts.append(LinePoint(tc % 1, cp, 2, False))

        for h in real_hits:
            t = mpf(h.numerator) / h.denominator
            qm = (q * h) % 1
            pts.append(LinePoint(t, CharPoint(mpf(0), mpf(qm.numerator) / qm.denominator,
                                              "abelian", real_double=True), 2, False))
        for h in imag_hits:
            # tangential pass through an isolated point of {F = 0}; matches
            # the (X+1)^2 factor of Phi_{p,q} for odd p
            t = mpf(h.numerator) / h.denominator
            qm = (q * h) % 1
            pts.append(LinePoint(t, CharPoint(mpf("0.5"), mpf(qm.numerator) / qm.denominator,
                                              "central", imaginary_double=True), 2, False))
        pts.sort(key=lambda lp: lp.t)
        return IntersectionSet(p, q, tuple(pts))


@dataclass(frozen=True)
class AbelianPoint:
    ell: int
    t: Fraction
    q_coord: Fraction
    central: bool
    on_double_point: bool
    alexander_regular: bool = True   # |Delta_8| >= 1 on the circle


def abelian_points(p: int, q: int):
    """Intersections of the surgery line with the abelian arc {p = 0}.

    t = ell / p for ell = 0..p-1, deduplicated by ell ~ p - ell; flags mark
    central points (meridian holonomy +-1) and hits of the real double
    points (q-coordinate +-1/4, only possible when 4 | p).
    """
    if p == 0:
        raise ValueError("meridian-degenerate slope: p = 0")
    out = []
    for ell in range(0, p // 2 + 1):
        t = Fraction(ell, p)
        qc = (q * t) % 1
        central = (2 * ell) % p == 0
        dp = qc in (Fraction(1, 4), Fraction(3, 4))
        out.append(AbelianPoint(ell, t, qc, central, dp))
    return out
