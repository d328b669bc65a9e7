"""Exact certification of the regularity hypotheses H'1 / H'2 for slopes.

H'1 (the surgery line avoids the real double points) holds iff p != 0 mod 4.
H'2 (first-order contact with the characteristic set) is equivalent to the
surgery polynomial

    Phi_{p,q} = X^{2p} - X^{p+4q} + X^{p+2q} + 2 X^p + X^{p-2q} - X^{p-4q} + 1

having no multiple roots on the unit circle beyond the exceptional points
-1 (p odd) and +-i (p = 0 mod 4) accounted for by stripping (X+1)^2 resp.
(X^2+1)^2.  Certification methods, in escalation order:

  * slope bound: p/q < 2 sqrt 5, exact as p^2 < 20 q^2;
  * discriminant of the stripped polynomial nonzero (modular nonzero
    certificates with an exact subresultant fallback);
  * the F_{l^2} criterion for odd primes l | p: with xi a root of
    xi^2 - xi/2 + 1, multiple circle roots force 2^{4q} = xi^{+-p}
    (the common-root analysis of Phi and Phi' over F_l; note the 4q,
    see the derivation in the tests);
  * exact: gcd(Phi_s, Phi_s'), strip, certify remaining unit-circle roots
    by Sturm isolation.  Never inconclusive.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .laurent import IntLaurentPoly, discriminant_nonzero, poly_gcd
from .sturm import CircleRootInterval, isolate_unit_circle_roots


@dataclass(frozen=True, order=True)
class Slope:
    """A surgery slope p/q in canonical form: gcd(p, q) = 1, p >= 0."""
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and abs(self.q) != 1:
            raise ValueError("slope (0, q) needs q = +-1")
        if gcd(self.p, self.q) != 1:
            raise ValueError("slope coordinates must be coprime")
        if self.p < 0:
            object.__setattr__(self, "p", -self.p)
            object.__setattr__(self, "q", -self.q)
        if self.p == 0:
            object.__setattr__(self, "q", 1)


class H2Verdict(enum.Enum):
    PROVED_BY_SLOPE_BOUND = "ProvedBySlopeBound"
    PROVED_BY_DISCRIMINANT = "ProvedByDiscriminant"
    PROVED_BY_MOD_L = "ProvedByModL"
    PROVED_EXACT = "ProvedExact"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SlopeReport:
    slope: Slope
    h1_pass: bool
    h1_witness: int                    # p mod 4
    h2: H2Verdict
    h2_method: str
    h2_evidence: Optional[object] = None

    def h2_passed(self) -> bool:
        return self.h2 in (H2Verdict.PROVED_BY_SLOPE_BOUND,
                           H2Verdict.PROVED_BY_DISCRIMINANT,
                           H2Verdict.PROVED_BY_MOD_L,
                           H2Verdict.PROVED_EXACT)


def build_phi(p: int, q: int) -> IntLaurentPoly:
    """Phi_{p,q}, shifted to nonnegative exponents; palindromic by symmetry.

    Phi is even in q, so q is taken positive.
    """
    if p <= 0 or q == 0:
        raise ValueError("need p > 0 and q != 0")
    if gcd(p, q) != 1:
        raise ValueError("slope coordinates must be coprime")
    q = abs(q)
    poly = IntLaurentPoly.from_terms([
        (1, 2 * p), (-1, p + 4 * q), (1, p + 2 * q), (2, p),
        (1, p - 2 * q), (-1, p - 4 * q), (1, 0)])
    return poly.normalized()


def check_h1(p: int, q: int) -> bool:
    """H'1 holds iff p != 0 mod 4 (line misses the real double points)."""
    Slope(p, q)
    return p % 4 != 0


def strip_exceptional(phi: IntLaurentPoly, p: int) -> IntLaurentPoly:
    """Divide out the allowed double roots: (X+1)^2 for p odd, (X^2+1)^2
    for p = 0 mod 4, nothing for p = 2 mod 4."""
    if p % 2 == 1:
        return phi.divexact(IntLaurentPoly([1, 2, 1]))       # (X+1)^2
    if p % 4 == 0:
        return phi.divexact(IntLaurentPoly([1, 0, 2, 0, 1]))  # (X^2+1)^2
    return phi


# -- F_{l^2} arithmetic -------------------------------------------------------

def _smallest_nonresidue(ell: int) -> int:
    for d in range(2, ell):
        if pow(d, (ell - 1) // 2, ell) == ell - 1:
            return d
    raise ValueError(f"{ell} does not look like an odd prime")


@dataclass(frozen=True)
class Fq2Elem:
    """a + b theta in F_{l^2} with theta^2 = d, d the smallest nonresidue."""
    a: int
    b: int
    ell: int
    d: int

    def _make(self, a, b):
        return Fq2Elem(a % self.ell, b % self.ell, self.ell, self.d)

    def __add__(self, other):
        if isinstance(other, int):
            return self._make(self.a + other, self.b)
        assert self.ell == other.ell
        return self._make(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return self._make(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other if not isinstance(other, int) else -other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._make(self.a * other, self.b * other)
        assert self.ell == other.ell
        return self._make(self.a * other.a + self.d * self.b * other.b,
                          self.a * other.b + self.b * other.a)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = Fq2Elem(1, 0, self.ell, self.d)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def inverse(self):
        # (a + b theta)^-1 = (a - b theta) / (a^2 - d b^2)
        nrm = (self.a * self.a - self.d * self.b * self.b) % self.ell
        inv = pow(nrm, -1, self.ell)
        return self._make(self.a * inv, -self.b * inv)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.ell
        return (self.ell, self.a, self.b) == (other.ell, other.a, other.b)


def _sqrt_mod(a: int, ell: int) -> Optional[int]:
    """Square root mod an odd prime by Tonelli-Shanks; None if nonresidue."""
    a %= ell
    if a == 0:
        return 0
    if pow(a, (ell - 1) // 2, ell) != 1:
        return None
    if ell % 4 == 3:
        return pow(a, (ell + 1) // 4, ell)
    # Tonelli-Shanks
    s, q = 0, ell - 1
    while q % 2 == 0:
        s += 1
        q //= 2
    z = _smallest_nonresidue(ell)
    m, c, t, r = s, pow(z, q, ell), pow(a, q, ell), pow(a, (q + 1) // 2, ell)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % ell
            i += 1
        b = pow(c, 1 << (m - i - 1), ell)
        m, c = i, b * b % ell
        t, r = t * c % ell, r * b % ell
    return r


def _xi_roots(ell: int):
    """The roots of xi^2 - xi/2 + 1 = 0 (i.e. 2 xi^2 - xi + 2 = 0) in F_{l^2}."""
    d = _smallest_nonresidue(ell)
    inv4 = pow(4, -1, ell)
    disc = -15 % ell
    s = _sqrt_mod(disc, ell)
    if s is not None:
        return [Fq2Elem((1 + s) * inv4 % ell, 0, ell, d),
                Fq2Elem((1 - s) * inv4 % ell, 0, ell, d)]
    # sqrt(disc) = e * theta with e^2 = disc / d (a residue since both are not)
    e = _sqrt_mod(disc * pow(d, -1, ell) % ell, ell)
    return [Fq2Elem(inv4, e * inv4 % ell, ell, d),
            Fq2Elem(inv4, -e * inv4 % ell, ell, d)]


def modl_test(p: int, q: int, ell: int) -> bool:
    """True (conclusive: H'2 holds) iff 2^{4q} != xi^{+-p} in F_{l^2}.

    ell must be an odd prime dividing p.  A common circle root of the
    stripped Phi and Phi' forces alpha^{2q} = xi and alpha^p in {-4, -1/4},
    hence 2^{4|q|} = xi^{+-p}; ruling that out proves H'2.
    """
    if ell < 3 or p % ell != 0:
        raise ValueError("ell must be an odd prime divisor of p")
    target = pow(2, 4 * abs(q), ell)
    for xi in _xi_roots(ell):
        if xi ** p == target or xi ** (-p) == target:
            return False
    return True


# -- certification ------------------------------------------------------------

def _h2_exact(p: int, q: int):
    """Total method: certify via gcd and Sturm isolation."""
    phi_s = strip_exceptional(build_phi(p, q), p)
    if phi_s.degree_span() < 2:
        return H2Verdict.PROVED_EXACT, None
    g = poly_gcd(phi_s, phi_s.derivative())
    if g.degree_span() < 1:
        return H2Verdict.PROVED_EXACT, None
    # unit-circle roots of g are the multiple circle roots of phi_s
    sym = poly_gcd(g, g.reverse())
    if sym.degree_span() < 1 and g(1) != 0 and g(-1) != 0:
        return H2Verdict.PROVED_EXACT, None
    probe = sym if sym.degree_span() >= 1 else g
    if g(1) == 0 or g(-1) == 0:
        return H2Verdict.REFUTED, CircleRootInterval(
            Fraction(2 if g(1) == 0 else -2), Fraction(2 if g(1) == 0 else -2), 2)
    if not probe.is_palindromic():
        from .sturm import _strip_unit_factors
        probe, m1, mm1 = _strip_unit_factors(probe)
        if probe.degree_span() < 1:
            return H2Verdict.PROVED_EXACT, None
    roots = isolate_unit_circle_roots(probe)
    if roots:
        return H2Verdict.REFUTED, roots[0]
    return H2Verdict.PROVED_EXACT, None


def check_h2(p: int, q: int, method: str = "auto"):
    """Certify H'2; returns (verdict, method_used, evidence)."""
    Slope(p, q)
    if method == "slope_bound" or method == "auto":
        if p * p < 20 * q * q:
            return H2Verdict.PROVED_BY_SLOPE_BOUND, "slope_bound", None
        if method == "slope_bound":
            return H2Verdict.INCONCLUSIVE, "slope_bound", None
    if method == "discriminant" or method == "auto":
        stripped = strip_exceptional(build_phi(p, q), p)
        # p = 4q collapses Phi to a monomial times the exceptional factor:
        # nothing is left to have a multiple circle root
        if stripped.degree_span() < 2 or discriminant_nonzero(stripped):
            return H2Verdict.PROVED_BY_DISCRIMINANT, "discriminant", None
        if method == "discriminant":
            return H2Verdict.INCONCLUSIVE, "discriminant", None
    if method == "modl":
        odd = [l for l in range(3, p + 1, 2) if p % l == 0 and _is_prime(l)]
        if not odd:
            raise ValueError("mod-l method inapplicable: p a power of 2")
        for ell in odd:
            if modl_test(p, q, ell):
                return H2Verdict.PROVED_BY_MOD_L, "modl", ell
        return H2Verdict.INCONCLUSIVE, "modl", None
    verdict, evidence = _h2_exact(p, q)
    return verdict, "exact", evidence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def certify(p: int, q: int, method: str = "auto") -> SlopeReport:
    slope = Slope(p, q)
    h1 = check_h1(slope.p, slope.q)
    verdict, used, evidence = check_h2(slope.p, slope.q, method)
    return SlopeReport(slope, h1, slope.p % 4, verdict, used, evidence)


def scan(pmax: int, qmax: int, method: str = "auto"):
    """Reports for all coprime slopes 1 <= p <= pmax, 1 <= |q| <= qmax."""
    out = []
    for p in range(1, pmax + 1):
        for q in range(1, qmax + 1):
            if gcd(p, q) == 1:
                out.append(certify(p, q, method))
    return out
