"""Exact integer Laurent polynomial arithmetic.

Dense little-endian coefficient lists with an exponent offset.  Everything
here is exact over Z (Python ints); this is the substrate for the surgery
polynomials Phi_{p,q}, Chebyshev polynomials, the Alexander polynomial and
the discriminant/gcd machinery used by slope certification.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from mpmath import mpc


def _trim(coeffs, lo):
    i = 0
    while i < len(coeffs) and coeffs[i] == 0:
        i += 1
    j = len(coeffs)
    while j > i and coeffs[j - 1] == 0:
        j -= 1
    if i == j:
        return [], 0
    return list(coeffs[i:j]), lo + i


class IntLaurentPoly:
    """sum_{i} c[i - lo] X^i with integer coefficients, trimmed at both ends."""

    __slots__ = ("coeffs", "lo")

    def __init__(self, coeffs=(), lo=0):
        self.coeffs, self.lo = _trim([int(c) for c in coeffs], lo)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls([1])

    @classmethod
    def monomial(cls, c, e):
        return cls([c], e)

    @classmethod
    def from_terms(cls, terms):
        """terms: iterable of (coefficient, exponent)."""
        if not terms:
            return cls()
        lo = min(e for _, e in terms)
        hi = max(e for _, e in terms)
        coeffs = [0] * (hi - lo + 1)
        for c, e in terms:
            coeffs[e - lo] += c
        return cls(coeffs, lo)

    # -- basic structure ---------------------------------------------------
    @property
    def hi(self):
        return self.lo + len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, e):
        if self.is_zero() or e < self.lo or e > self.hi:
            return 0
        return self.coeffs[e - self.lo]

    def __eq__(self, other):
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self.lo == other.lo and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lo, tuple(self.coeffs)))

    def __repr__(self):
        if self.is_zero():
            return "IntLaurentPoly(0)"
        parts = [f"{c}*X^{self.lo + i}" for i, c in enumerate(self.coeffs) if c]
        return "IntLaurentPoly(" + " + ".join(parts) + ")"

    # -- arithmetic --------------------------------------------------------
    def __neg__(self):
        return IntLaurentPoly([-c for c in self.coeffs], self.lo)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly([other])
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.lo + i - lo] += c
        for i, c in enumerate(other.coeffs):
            out[other.lo + i - lo] += c
        return IntLaurentPoly(out, lo)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntLaurentPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntLaurentPoly()
            return IntLaurentPoly([other * c for c in self.coeffs], self.lo)
        if self.is_zero() or other.is_zero():
            return IntLaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntLaurentPoly(out, self.lo + other.lo)

    __rmul__ = __mul__

    def shift(self, e):
        """Multiply by X^e."""
        return IntLaurentPoly(self.coeffs, self.lo + e)

    # -- queries -----------------------------------------------------------
    def degree_span(self):
        """hi - lo; the degree of the normalized ordinary polynomial."""
        return 0 if self.is_zero() else self.hi - self.lo

    def is_palindromic(self):
        """p(X) = X^{lo+hi} p(1/X), i.e. the coefficient list is a palindrome."""
        return self.coeffs == self.coeffs[::-1]

    def is_antipalindromic(self):
        return self.coeffs == [-c for c in self.coeffs[::-1]]

    def reverse(self):
        """X^{lo+hi} p(1/X): reversed coefficient list, same span."""
        return IntLaurentPoly(self.coeffs[::-1], self.lo)

    def normalized(self):
        """Shift so that lo = 0 (the ordinary-polynomial representative)."""
        return IntLaurentPoly(self.coeffs, 0)

    def content(self):
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g

    def primitive(self):
        g = self.content()
        if g in (0, 1):
            return self
        return IntLaurentPoly([c // g for c in self.coeffs], self.lo)

    # -- calculus / evaluation ----------------------------------------------
    def derivative(self):
        return IntLaurentPoly.from_terms(
            [(c * (self.lo + i), self.lo + i - 1)
             for i, c in enumerate(self.coeffs) if c and self.lo + i != 0])

    def __call__(self, x):
        """Evaluate by Horner on the normalized part, then the X^lo factor."""
        if self.is_zero():
            return 0 * x if not isinstance(x, (int, Fraction)) else 0
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.lo:
            acc = acc * x ** self.lo
        return acc

    def eval_complex(self, t) -> mpc:
        return self(mpc(t))

    # -- exact division ----------------------------------------------------
    def divexact(self, other):
        """Exact quotient self/other; raises if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a = list(self.coeffs)
        b = other.coeffs
        if self.is_zero():
            return IntLaurentPoly()
        n, m = len(a), len(b)
        if n < m:
            raise ValueError("not divisible (degree)")
        q = [0] * (n - m + 1)
        for i in range(n - m, -1, -1):
            num = a[i + m - 1]
            if num % b[-1]:
                raise ValueError("not divisible (leading coefficient)")
            q[i] = num // b[-1]
            if q[i]:
                for j in range(m):
                    a[i + j] -= q[i] * b[j]
        if any(a[:m - 1]):
            raise ValueError("not divisible (remainder)")
        return IntLaurentPoly(q, self.lo - other.lo)


# ---------------------------------------------------------------------------
# gcd / subresultants / discriminant (on normalized ordinary polynomials)
# ---------------------------------------------------------------------------

def _poly_pseudo_rem(a, b):
    """Pseudo-remainder of dense int lists (little endian), lead(b)^(da-db+1)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        if a[-1] == 0:
            a.pop()
            continue
        coef = a[-1]
        a = [c * lb for c in a]
        for j in range(db + 1):
            a[da - db + j] -= coef * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(f: IntLaurentPoly, g: IntLaurentPoly) -> IntLaurentPoly:
    """Primitive gcd over Z of the normalized parts (monomial factors dropped)."""
    a = f.normalized().primitive()
    b = g.normalized().primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    A, B = list(a.coeffs), list(b.coeffs)
    if len(A) < len(B):
        A, B = B, A
    while any(B):
        R = _poly_pseudo_rem(A, B)
        A, B = B, R
        if B:
            h = IntLaurentPoly(B).primitive()
            B = list(h.coeffs) if not h.is_zero() else []
    out = IntLaurentPoly(A).primitive()
    if not out.is_zero() and out.coeffs[-1] < 0:
        out = -out
    return out


def subresultant_prs(f: IntLaurentPoly, g: IntLaurentPoly):
    """Subresultant polynomial remainder sequence of the normalized parts.

    Ducos-free classic variant: pseudo-remainders divided by the standard
    beta factors, which keeps all entries integral with controlled growth.
    """
    a = f.normalized()
    b = g.normalized()
    if a.degree_span() < b.degree_span():
        a, b = b, a
    prs = [a, b]
    d = a.degree_span() - b.degree_span()
    beta = (-1) ** (d + 1)
    psi = -1
    s, t = a, b
    while not t.is_zero():
        r_coeffs = _poly_pseudo_rem(list(s.coeffs), list(t.coeffs))
        if not any(r_coeffs):
            break
        r = IntLaurentPoly([c // beta for c in r_coeffs])
        prs.append(r)
        lc = t.coeffs[-1]
        psi = (-lc) ** d // psi ** (d - 1) if d >= 1 else psi
        s, t = t, r
        d = s.degree_span() - t.degree_span()
        beta = -lc * psi ** d
    return prs


def resultant_exact(f: IntLaurentPoly, g: IntLaurentPoly) -> int:
    """Resultant of the normalized parts via exact Euclid over Q."""
    a = [Fraction(c) for c in f.normalized().coeffs]
    b = [Fraction(c) for c in g.normalized().coeffs]
    if not a or not b:
        return 0
    res = Fraction(1)

    def deg(p):
        return len(p) - 1

    while True:
        if len(b) == 1:
            res *= b[0] ** deg(a)
            val = res
            break
        # a = q b + r
        r = list(a)
        while len(r) >= len(b) and any(r):
            if r[-1] == 0:
                r.pop()
                continue
            c = r[-1] / b[-1]
            off = len(r) - len(b)
            for j in range(len(b)):
                r[off + j] -= c * b[j]
            r.pop()
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return 0
        res *= (-1) ** (deg(a) * deg(b)) * b[-1] ** (deg(a) - len(r) + 1)
        a, b = b, r
    assert val.denominator == 1
    return int(val)


def discriminant(f: IntLaurentPoly) -> int:
    """disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f) for the normalized part."""
    p = f.normalized()
    n = p.degree_span()
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant_exact(p, p.derivative())
    lc = p.coeffs[-1]
    sign = (-1) ** (n * (n - 1) // 2)
    assert r % lc == 0
    return sign * (r // lc)


# -- modular certificates ----------------------------------------------------

def _poly_mod(coeffs, m):
    return [c % m for c in coeffs]


def _polymod_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_rem(a, b, m):
    a = list(a)
    inv = pow(b[-1], -1, m)
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv % m
        off = len(a) - len(b)
        for j in range(len(b)):
            a[off + j] = (a[off + j] - c * b[j]) % m
        a.pop()
    return _polymod_trim(a)


def resultant_mod(f: IntLaurentPoly, g: IntLaurentPoly, m: int) -> int:
    """Resultant of the normalized parts over F_m (m prime, not dividing lcs).

    Vectorized Euclid with int64 rows when m < 2^31 (products stay below
    2^62 before each reduction); plain lists otherwise.  Exact either way.
    """
    a = _polymod_trim(_poly_mod(f.normalized().coeffs, m))
    b = _polymod_trim(_poly_mod(g.normalized().coeffs, m))
    if not a or not b:
        return 0
    use_np = m < 2 ** 31
    if use_np:
        import numpy as np
        a = np.array(a, dtype=np.int64)
        b = np.array(b, dtype=np.int64)
    res = 1
    while True:
        if len(b) == 1:
            return res * pow(int(b[0]), len(a) - 1, m) % m
        if use_np:
            r = a.copy()
            inv = pow(int(b[-1]), -1, m)
            while len(r) >= len(b):
                if r[-1] == 0:
                    r = r[:-1]
                    continue
                c = int(r[-1]) * inv % m
                off = len(r) - len(b)
                r[off:] = (r[off:] - c * b) % m
                r = r[:-1]
            while len(r) and r[-1] == 0:
                r = r[:-1]
        else:
            r = _polymod_rem(list(a), list(b), m)
        if len(r) == 0:
            return 0
        res = res * (-1) ** ((len(a) - 1) * (len(b) - 1)) % m
        res = res * pow(int(b[-1]), (len(a) - 1) - (len(r) - 1), m) % m
        a, b = b, r


def discriminant_nonzero(f: IntLaurentPoly, primes=(2147483647, 2147483629,
                                                    2147483587)) -> bool:
    """Certify disc(f) != 0.

    Nonzero mod a single prime (with surviving leading coefficient) is a
    sound nonzero certificate; a second prime is tried for confirmation per
    the stated policy, and the exact chain is the fallback when the modular
    images keep vanishing.
    """
    p = f.normalized()
    n = p.degree_span()
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    hits = 0
    for m in primes:
        if p.coeffs[-1] % m == 0:
            continue
        if resultant_mod(p, p.derivative(), m) != 0:
            hits += 1
            if hits >= 1:
                return True
    return discriminant(f) != 0


# -- squarefree decomposition -------------------------------------------------

def squarefree_decomposition(f: IntLaurentPoly):
    """Yun decomposition of the normalized primitive part.

    Returns a list of (factor, multiplicity) with multiplicities ascending;
    monomial content X^lo is dropped.
    """
    p = f.normalized().primitive()
    if p.degree_span() < 1:
        return []
    if p.coeffs[-1] < 0:
        p = -p
    out = []
    g = poly_gcd(p, p.derivative())
    w = p.divexact(g)
    i = 1
    while w.degree_span() >= 1:
        y = poly_gcd(w, g)
        factor = w.divexact(y)
        if factor.degree_span() >= 1:
            out.append((factor, i))
        w = y
        g = g.divexact(y)
        i += 1
    return out


# ---------------------------------------------------------------------------
# Chebyshev-like basis and the palindromic Y = X + 1/X reduction
# ---------------------------------------------------------------------------

def chebyshev_T(ell: int) -> IntLaurentPoly:
    """T_ell with T_0 = 0, T_1 = 1 and T_{l+1} + x T_l + T_{l-1} = 0.

    These are the skein expansions of closed Jones-Wenzl idempotents; for
    negative indices the recursion runs backwards, giving T_{-l} = -T_l.
    deg T_ell = ell - 1 for ell >= 1.
    """
    if ell < 0:
        return -chebyshev_T(-ell)
    a, b = IntLaurentPoly.zero(), IntLaurentPoly.one()  # T_0, T_1
    if ell == 0:
        return a
    x = IntLaurentPoly.monomial(1, 1)
    for _ in range(ell - 1):
        a, b = b, -(x * b) - a
    return b


def palindromic_to_symmetric(f: IntLaurentPoly) -> IntLaurentPoly:
    """Write a palindromic even-span polynomial as X^m H(X + 1/X); return H.

    Uses C_0 = 2, C_1 = Y, C_{j+1} = Y C_j - C_{j-1} for X^j + X^{-j}.
    """
    p = f.normalized()
    if not p.is_palindromic():
        raise ValueError("polynomial is not palindromic")
    n = p.degree_span()
    if n % 2:
        raise ValueError("odd-span palindromic polynomial: strip (X+1) first")
    m = n // 2
    y = IntLaurentPoly.monomial(1, 1)
    c_prev, c_cur = IntLaurentPoly([2]), y  # C_0, C_1
    out = IntLaurentPoly([p.coeffs[m]])
    for j in range(1, m + 1):
        out = out + p.coeffs[m + j] * c_cur
        c_prev, c_cur = c_cur, (y * c_cur) - c_prev
    return out
