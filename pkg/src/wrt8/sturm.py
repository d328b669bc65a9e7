"""Real-root isolation by Sturm sequences and unit-circle root certification.

A palindromic integer polynomial is reduced through Y = X + 1/X to an
ordinary integer polynomial whose real roots in [-2, 2] are in bijection
with the conjugate pairs of unit-circle roots (Y = 2 cos theta).  Sturm
chains over exact rationals then isolate those roots.  A numeric root
finder is kept alongside purely as a cross-check oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .laurent import (IntLaurentPoly, palindromic_to_symmetric, poly_gcd,
                      squarefree_decomposition)


# -- Sturm chains over Q -----------------------------------------------------

def _frac_poly(p: IntLaurentPoly):
    # ordinary-polynomial coefficients, keeping the X^lo monomial factor
    # (its root at 0 counts: the Y-polynomials of the circle reduction may
    # vanish at Y = 0, i.e. X = +-i)
    if p.lo < 0:
        raise ValueError("ordinary polynomial expected")
    return [Fraction(0)] * p.lo + [Fraction(c) for c in p.coeffs]


def _fp_deriv(a):
    return [a[i] * i for i in range(1, len(a))]


def _fp_rem(a, b):
    a = list(a)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] / b[-1]
        off = len(a) - len(b)
        for j in range(len(b)):
            a[off + j] -= c * b[j]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_eval(a, x: Fraction):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sturm_chain(p: IntLaurentPoly):
    a = _frac_poly(p)
    if len(a) <= 1:
        return [a] if a else []
    chain = [a, _fp_deriv(a)]
    while len(chain[-1]) > 0:
        r = _fp_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain, x: Fraction):
    signs = []
    for a in chain:
        v = _fp_eval(a, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(p: IntLaurentPoly, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    chain = sturm_chain(p)
    if len(chain) < 2:
        return 0
    return _variations(chain, Fraction(a)) - _variations(chain, Fraction(b))


def isolate_real_roots(p: IntLaurentPoly, a: Fraction, b: Fraction):
    """Disjoint rational intervals (lo, hi], one distinct root each, in (a, b].

    The input must be squarefree on the interval for termination; callers
    pass squarefree factors.
    """
    a, b = Fraction(a), Fraction(b)
    chain = sturm_chain(p)
    if len(chain) < 2:
        return []
    va, vb = _variations(chain, a), _variations(chain, b)
    out = []
    stack = [(a, b, va, vb)]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = _variations(chain, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    out.sort()
    return out


# -- unit-circle certification ------------------------------------------------

@dataclass(frozen=True)
class CircleRootInterval:
    """A certified unit-circle root locus of a palindromic polynomial.

    ``y_lo < Y <= y_hi`` isolates Y = X + 1/X = 2 cos(theta); each interior Y
    corresponds to the conjugate pair X = e^{+-i theta} (Y = +-2 are the
    single roots X = +-1).  ``multiplicity`` is that of the original factor.
    """
    y_lo: Fraction
    y_hi: Fraction
    multiplicity: int

    @property
    def is_pair(self) -> bool:
        return not (self.y_lo == self.y_hi and abs(self.y_lo) == 2)

    def circle_points(self) -> int:
        return 2 if self.is_pair else 1


def _strip_unit_factors(p: IntLaurentPoly):
    """Strip (X-1) and (X+1) factors; return (stripped, mult_at_1, mult_at_-1)."""
    m1 = mm1 = 0
    one = IntLaurentPoly([-1, 1])   # X - 1
    mone = IntLaurentPoly([1, 1])   # X + 1
    while p.degree_span() >= 1 and p(1) == 0:
        p = p.divexact(one)
        m1 += 1
    while p.degree_span() >= 1 and p(-1) == 0:
        p = p.divexact(mone)
        mm1 += 1
    return p, m1, mm1


def isolate_unit_circle_roots(p: IntLaurentPoly):
    """Certified isolation of the unit-circle roots of a palindromic polynomial.

    Raises on the zero polynomial and on non-palindromic input (after the
    monomial factor X^lo is dropped).  Returns CircleRootInterval records
    sorted by y_lo, with multiplicities from the squarefree decomposition.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    q = p.normalized()
    if not q.is_palindromic():
        raise ValueError("polynomial is not palindromic")
    out = []
    for factor, mult in squarefree_decomposition(q):
        f, m1, mm1 = _strip_unit_factors(factor)
        if m1:
            out.append(CircleRootInterval(Fraction(2), Fraction(2), mult))
        if mm1:
            out.append(CircleRootInterval(Fraction(-2), Fraction(-2), mult))
        if f.degree_span() < 1:
            continue
        # the squarefree factor of a palindromic polynomial splits into a
        # palindromic part and unit factors; anything else has no roots on
        # the circle paired with their inverses, hence none on the circle
        g = poly_gcd(f, f.reverse())
        if g.degree_span() < 1:
            continue
        if not g.is_palindromic():
            g2, a1, a2 = _strip_unit_factors(g)
            g = g2
            if g.degree_span() < 1 or not g.is_palindromic():
                continue
        if g.degree_span() % 2:
            g, a1, a2 = _strip_unit_factors(g)
            if g.degree_span() % 2 or g.degree_span() < 1:
                continue
        h = palindromic_to_symmetric(g)
        for lo, hi in isolate_real_roots(h, Fraction(-2), Fraction(2)):
            out.append(CircleRootInterval(lo, hi, mult))
    out.sort(key=lambda r: (r.y_lo, r.y_hi))
    return out


def unit_circle_root_count(p: IntLaurentPoly) -> int:
    """Total number of unit-circle roots counted with multiplicity."""
    return sum(r.circle_points() * r.multiplicity
               for r in isolate_unit_circle_roots(p))


def numeric_circle_roots(p: IntLaurentPoly, tol=1e-8):
    """Numeric cross-check: all roots with ||z|-1| < tol, via mpmath.polyroots.

    Oracle only; certification goes through the Sturm path.
    """
    q = p.normalized()
    coeffs = list(reversed(q.coeffs))
    with mpmath.workprec(256):
        roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        return [r for r in roots if abs(abs(r) - 1) < tol]
