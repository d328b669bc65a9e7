import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wrt8.laurent import (IntLaurentPoly, chebyshev_T, discriminant,
                          discriminant_nonzero, palindromic_to_symmetric,
                          poly_gcd, resultant_exact, squarefree_decomposition)


def P(*terms):
    return IntLaurentPoly.from_terms(list(terms))


small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=7).map(
    lambda cs: IntLaurentPoly(cs, -2))


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == IntLaurentPoly.zero()


def test_eval_and_derivative():
    p = P((2, 3), (-1, 0), (5, -2))      # 2X^3 - 1 + 5X^-2
    assert p(2) == 16 - 1 + Fraction(5, 4)
    d = p.derivative()
    assert d(2) == 6 * 4 - 10 / Fraction(2) ** 3


def test_divexact_and_error():
    a = P((1, 2), (2, 1), (1, 0))        # (X+1)^2
    b = P((1, 1), (1, 0))
    assert a.divexact(b) == b
    with pytest.raises(ValueError):
        P((1, 2), (1, 0)).divexact(b)


def test_chebyshev_base_cases():
    assert chebyshev_T(0).is_zero()
    assert chebyshev_T(1) == IntLaurentPoly.one()
    assert chebyshev_T(2) == P((-1, 1))          # -x
    assert chebyshev_T(-3) == -chebyshev_T(3)


@pytest.mark.parametrize("ell", range(1, 9))
def test_chebyshev_degree(ell):
    assert chebyshev_T(ell).hi == ell - 1


def test_chebyshev_cabling_identity():
    # T_{k-l} = T_{k-1} T_l - T_k T_{l-1} for (k, l) = (5, 2), exact expansion
    k, ell = 5, 2
    lhs = chebyshev_T(k - ell)
    rhs = chebyshev_T(k - 1) * chebyshev_T(ell) - chebyshev_T(k) * chebyshev_T(ell - 1)
    assert lhs == rhs


def test_resultant_and_discriminant_small():
    # disc(x^2 + bx + c) = b^2 - 4c
    p = P((1, 2), (3, 1), (1, 0))
    assert discriminant(p) == 9 - 4
    # disc((x-1)(x-2)(x-3)) = prod (ri - rj)^2 = 4
    q = P((1, 3), (-6, 2), (11, 1), (-6, 0))
    assert discriminant(q) == 4
    # res(f, g) = lc(f)^{deg g} prod g(alpha) over roots of f
    assert resultant_exact(P((1, 1), (-2, 0)), P((1, 1), (-3, 0))) == -1


def test_discriminant_nonzero_certificate_matches_exact():
    rng = random.Random(3)
    for _ in range(20):
        coeffs = [rng.randint(-6, 6) for _ in range(rng.randint(3, 9))]
        p = IntLaurentPoly(coeffs)
        if p.degree_span() < 1:
            continue
        assert discriminant_nonzero(p) == (discriminant(p) != 0)


def test_squarefree_decomposition():
    f = P((1, 1), (1, 0))        # X + 1
    g = P((1, 1), (-2, 0))       # X - 2
    prod = f * f * g * g * g
    dec = squarefree_decomposition(prod)
    assert sorted((m, tuple(fac.coeffs)) for fac, m in dec) == [
        (2, (1, 1)), (3, (-2, 1))]


def test_poly_gcd():
    f = P((1, 1), (1, 0))
    g = P((1, 1), (-1, 0))
    assert poly_gcd(f * g, f * f) == f
    assert poly_gcd(g, f).degree_span() == 0


def test_palindromic_to_symmetric():
    # X^2 + 1 -> Y ; X^4 + X^3 + X^2 + X + 1 -> Y^2 + Y - 1
    h = palindromic_to_symmetric(P((1, 2), (1, 0)))
    assert h == P((1, 1))
    h2 = palindromic_to_symmetric(P((1, 4), (1, 3), (1, 2), (1, 1), (1, 0)))
    assert h2 == P((1, 2), (1, 1), (-1, 0))
    with pytest.raises(ValueError):
        palindromic_to_symmetric(P((1, 2), (3, 0)))
