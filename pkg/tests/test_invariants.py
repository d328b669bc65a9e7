import random
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from wrt8.charvar import classify_point, intersect_line, strand_p, strand_slope
from wrt8.invariants import (Frame, HypothesisError, TorsionDensity,
                             alexander_fig8, cs_abelian, cs_filled_irreducible,
                             cs_irreducible, filled_torsion_abelian,
                             filled_torsion_irreducible, glue_torsion,
                             hikami_convention, omega_pairing, predict,
                             solid_torus_torsion, symbols_f0_f1,
                             torsion_abelian_exterior, torsion_fig8,
                             torsion_lens, torsion_torus_knot,
                             transport_residual)
from wrt8.numerics import bits

PREC = 192


def test_alexander_from_seifert_matrix():
    """Delta_8(t) = -t + 3 - 1/t from det(V - t V^T), V = [[1,1],[0,-1]].

    Build-time oracle for the hardcoded closed form, normalized to
    Delta(1) = 1 after dividing by the t-power making it symmetric.
    """
    with bits(96):
        rng = random.Random(2)
        for _ in range(10):
            t = mpc(rng.uniform(0.2, 2), rng.uniform(-1, 1))
            # V - t V^T = [[1 - t, 1], [-t, t - 1]]
            det = (1 - t) * (t - 1) + t
            sym = det / t               # t^{-1/2}-symmetrized; Delta(1) = 1
            assert abs(sym - alexander_fig8(t)) < mpf(2) ** -70


def test_cs_abelian_examples():
    with bits(96):
        assert cs_abelian(0, 5, 1) == 1
        assert abs(cs_abelian(1, 5, 1) - mp.expjpi(mpf(2) / 5)) < mpf(2) ** -80
        # lens symmetry ell ~ p - ell
        for (ell, p, q) in [(1, 5, 1), (2, 7, 3), (3, 11, 2)]:
            a = cs_abelian(ell, p, q)
            b = cs_abelian(p - ell, p, q)
            assert abs(a - b) < mpf(2) ** -80


def test_cs_irreducible_anchors():
    with bits(PREC):
        for sigma in (1, -1):
            cp = classify_point(0, mpf(1) / 4, PREC)
            cp = type(cp)(cp.p, cp.q, cp.cls, strand=sigma, real_double=True)
            v = cs_irreducible(cp, PREC)
            assert abs(v - mp.expjpi(2 * mpf(sigma) / 5)) < mpf(2) ** -150


def test_cs_brieskorn_phases():
    """The two (1,1) intersection values are exactly e^{-25 i pi/84} and
    e^{47 i pi/84}; the difference is 6 pi / 7 (acceptance #5)."""
    xs = intersect_line(1, 1, PREC)
    reps = xs.representatives()
    with bits(PREC):
        cs1 = cs_filled_irreducible(1, 1, reps[0], PREC)
        cs2 = cs_filled_irreducible(1, 1, reps[1], PREC)
        assert abs(cs1 - mp.expjpi(mpf(-25) / 84)) < mpf("1e-30")
        assert abs(cs2 - mp.expjpi(mpf(47) / 84)) < mpf("1e-30")
        diff = mp.arg(cs2 / cs1)
        assert abs(diff - 6 * mp.pi / 7) < mpf("1e-30")


def test_cs_path_independence():
    """Two different quadrature partitions of the same branch segment agree."""
    from wrt8.invariants import _transport_integral
    with bits(PREC):
        q = mpf("0.31")
        whole = _transport_integral(q, 1, 1, PREC)
        mid = mpf("0.28")
        first = _transport_integral(mid, 1, 1, PREC)

        def integrand(qq):
            return strand_p(qq, 1, 1) - qq * strand_slope(qq, 1, 1)

        second = mp.quad(integrand, [mid, q])
        assert abs(whole - (first + second)) < mpf("1e-30")


def test_cs_lambda_half_symmetry():
    """Band-2 values equal band-1 values twisted by the translation phase.

    In the package orientation: cs(x + la/2) = cs(x) * e^{+i pi p(x)},
    checked at 20 sampled branch points.
    """
    import random as _r
    rng = _r.Random(14)
    samples = [(mpf("0.17") + mpf(rng.random()) * mpf("0.15"), rng.choice([1, -1]))
               for _ in range(20)]
    with bits(PREC):
        for qq, sigma in samples:
            cp1 = classify_point(strand_p(qq, sigma, 1), qq, PREC)
            cp2 = classify_point(strand_p(qq + mpf(1) / 2, sigma, 2), qq + mpf(1) / 2, PREC)
            v1 = cs_irreducible(cp1, PREC)
            v2 = cs_irreducible(cp2, PREC)
            tw = mp.exp(1j * mp.pi * cp1.p)
            assert abs(v2 - v1 * tw) < mpf("1e-25")


def test_torsion_fig8_values():
    with bits(96):
        assert abs(torsion_fig8(mpf(1) / 4).magnitude - 2 ** mpf("1.5") * mp.pi / 5) \
            < mpf(2) ** -70
        assert abs(torsion_fig8(mpf(1) / 8).magnitude - 2 ** mpf("1.5") * mp.pi) \
            < mpf(2) ** -70
        # positive on the whole band: 1 - 4 cos(4 pi q) >= 3 there
        for i in range(20):
            q = mpf(1) / 6 + (mpf(i) / 19) * mpf(1) / 6
            assert torsion_fig8(q).magnitude > 0


def test_torsion_abelian_values():
    with bits(96):
        got = torsion_abelian_exterior(mpf(1) / 4)
        assert abs(got.magnitude - 4 * 2 ** mpf("1.5") * mp.pi / 25) < mpf(2) ** -70
        got8 = torsion_abelian_exterior(mpf(1) / 8)
        assert abs(got8.magnitude - 2 * 2 ** mpf("1.5") * mp.pi / 9) < mpf(2) ** -70
        # q -> -q invariance
        a = torsion_abelian_exterior(mpf("0.13")).magnitude
        b = torsion_abelian_exterior(-mpf("0.13")).magnitude
        assert abs(a - b) < mpf(2) ** -70
        with pytest.raises(ValueError):
            torsion_abelian_exterior(mpf(1) / 2)


def test_torsion_lens_values():
    with bits(96):
        assert abs(torsion_lens(5, 1, 1) - mpf(16) / 5 * mp.sinpi(mpf(2) / 5) ** 2) \
            < mpf(2) ** -70
        assert abs(torsion_lens(7, 1, 2) - mpf(16) / 7 * mp.sinpi(mpf(4) / 7) ** 2) \
            < mpf(2) ** -70
        assert abs(torsion_lens(7, 2, 3) - torsion_lens(7, 2, 4)) < mpf(2) ** -70
        with pytest.raises(ValueError):
            torsion_lens(5, 1, 5)


def test_torsion_torus_knot_values():
    with bits(96):
        tref = torsion_torus_knot(2, 3, 1, 1)
        assert abs(tref.magnitude - mpf(1) / 3 * 2 ** mpf("1.5") * mp.pi) < mpf(2) ** -70
        assert abs(torsion_torus_knot(2, 3, 1, 2).magnitude - tref.magnitude) < mpf(2) ** -70
        assert tref.magnitude > 0
        with pytest.raises(ValueError):
            torsion_torus_knot(2, 3, 2, 1)


def test_glue_torsion_requires_transversal():
    with bits(96):
        t1 = torsion_fig8(mpf("0.3"))
        t2 = solid_torus_torsion(1, 1, mpf("0.3"))
        with pytest.raises(ValueError):
            glue_torsion(t1, (1, 1), t2, (2, 2))


def test_glued_torsion_brieskorn():
    """sqrt of the glued torsions = Hikami's printed values (acceptance #6).

    The density product T1(v1) T2(v2) / (2 pi omega) reproduces the squares
    of the printed Brieskorn torsions exactly (the printed values live in a
    square-root convention); kappa = 2^{7/2} pi needs no recalibration.
    """
    xs = intersect_line(1, 1, PREC)
    reps = xs.representatives()
    with bits(PREC):
        for lp, m in zip(reps, (2, 3)):
            got = hikami_convention(filled_torsion_irreducible(1, 1, lp, PREC))
            hik = 2 ** mpf("1.5") / mp.sqrt(7) * mp.sinpi(mpf(m) / 7)
            assert abs(got - hik) < mpf("1e-30")
        r = filled_torsion_irreducible(1, 1, reps[0], PREC) / \
            filled_torsion_irreducible(1, 1, reps[1], PREC)
        target = (mp.sinpi(mpf(2) / 7) / mp.sinpi(mpf(3) / 7)) ** 2
        assert abs(r - target) < mpf("1e-30")


def test_abelian_reconciliation():
    """Records the convention outcome: the glued abelian torsion equals
    4 x (the first-power closed form)^2, i.e. (16/p) sin^2 sin^2 / Delta^2."""
    with bits(PREC):
        for (p, q, ell) in [(5, 1, 1), (5, 1, 2), (7, 2, 3)]:
            got = filled_torsion_abelian(p, q, ell, PREC)
            s1 = mp.sinpi(2 * mpf(ell) / p)
            s2 = mp.sinpi(2 * mpf(ell * q) / p)
            d = alexander_fig8(mp.expjpi(4 * mpf(ell * q) / p))
            direct = mpf(16) / p * s1 ** 2 * s2 ** 2 / abs(d) ** 2
            assert abs(got - direct) < mpf("1e-40")
            display_form = 2 / mp.sqrt(p) * s1 * s2 / abs(d)
            assert abs(got - 4 * display_form ** 2) < mpf("1e-40")


def test_symbols():
    with bits(96):
        rng = random.Random(9)
        for _ in range(10):
            q = mpf(rng.random())
            p = strand_p(q, 1, 1) if False else mpf(rng.random())
            f0, f1 = symbols_f0_f1(p, q, 96)
            # f0 = -4i sin(4 pi q) F
            from wrt8.charvar import char_function
            assert abs(f0 + 4j * mp.sinpi(4 * q) * char_function(p, q)) < mpf(2) ** -70
        # vanishing loci
        f0, _ = symbols_f0_f1(mpf("0.123"), mpf(1) / 4, 96)   # sin(4 pi q) = 0
        assert abs(f0) < mpf(2) ** -70
        _, f1 = symbols_f0_f1(0, mpf("0.37"), 96)
        assert abs(f1) < mpf(2) ** -70


def test_transport_second_order_convergence():
    with bits(PREC):
        q = mpf("0.27")
        cp = classify_point(strand_p(q, -1, 1), q, PREC)
        r1 = transport_residual(cp, mpf("1e-3"), PREC)
        r2 = transport_residual(cp, mpf("5e-4"), PREC)
        assert float(r1 / r2) == pytest.approx(4.0, rel=0.02)


def test_transport_negative_control():
    """Replacing the torsion by dp/(1 - 3 cos 4 pi q) breaks the equation."""
    from wrt8.invariants import _hamiltonian_f0
    with bits(PREC):
        q0 = mpf("0.29")
        p0 = strand_p(q0, 1, 1)
        s = strand_slope(q0, 1, 1)
        h = mpf("1e-6")

        def bad_sigma_of_X(pp, qq):
            xp, _ = _hamiltonian_f0(pp, qq)
            return xp / (1 - 3 * mp.cospi(4 * qq))

        a = 1 - 3 * mp.cospi(4 * q0)
        aq = 12 * mp.pi * mp.sinpi(4 * q0)
        xp, xq = _hamiltonian_f0(p0, q0)
        term1 = aq / a ** 2 * (xp * 1 - xq * s)
        term2 = (bad_sigma_of_X(p0 + h * s, q0 + h) -
                 bad_sigma_of_X(p0 - h * s, q0 - h)) / (2 * h)
        _, f1 = symbols_f0_f1(p0, q0, PREC)
        resid = abs(term1 + term2 + 2j * f1 * s / a)
        assert resid > mpf("0.1")


def test_predict_brieskorn():
    table = predict(1, 1, PREC)
    classes = [fc.cls for fc in table]
    assert classes == ["central", "irreducible", "irreducible"]
    with bits(PREC):
        irr = [fc for fc in table if fc.cls == "irreducible"]
        for fc, m in zip(irr, (2, 3)):
            target = (2 ** mpf("1.5") / mp.sqrt(7) * mp.sinpi(mpf(m) / 7)) / 2
            assert abs(fc.a0 - target) < mpf("1e-25")
            assert fc.order == Fraction(0)
        cen = table[0]
        assert abs(cen.a0 - mp.sqrt(2) * mp.pi) < mpf("1e-25")
        assert cen.order == Fraction(-3, 2)


def test_predict_51():
    table = predict(5, 1, PREC)
    by_cls = {}
    for fc in table:
        by_cls.setdefault(fc.cls, []).append(fc)
    assert len(by_cls["central"]) == 1
    assert len(by_cls["abelian"]) == 2
    assert len(by_cls["irreducible"]) == 2
    with bits(PREC):
        assert abs(by_cls["central"][0].a0 - mp.sqrt(2) * mp.pi / 5 ** mpf("1.5")) \
            < mpf("1e-25")
        # frozen from the validated sweep fit (prototype ground truth)
        assert abs(by_cls["abelian"][0].a0 - mpf("0.2477510577926871")) < mpf("1e-12")
        assert abs(by_cls["abelian"][1].a0 - mpf("0.1834686231393646")) < mpf("1e-12")


def test_predict_rejects_h1_failure():
    with pytest.raises(HypothesisError):
        predict(4, 1, 96)


def test_torsion_density_frames():
    d = TorsionDensity(mpf(6), Frame.PER_DP)
    assert d.value_on((2, 7)) == 12
    d2 = TorsionDensity(mpf(6), Frame.PER_DQ)
    assert d2.value_on((2, 7)) == 42
    d3 = TorsionDensity(mpf(6), Frame.PER_UNIT_GAMMA, (2, 1))
    assert d3.value_on((4, 2)) == 12
    with bits(96):
        assert abs(omega_pairing((1, 0), (0, 1)) - 4 * mp.pi) < mpf(2) ** -70
