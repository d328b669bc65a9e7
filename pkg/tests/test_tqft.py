import pytest
from mpmath import mp, mpc, mpf

from wrt8.jones import KnotId, jones_table
from wrt8.knotstate import build_state
from wrt8.numerics import bits
from wrt8.quantization import PointE, QuantParams, evaluate_state, inner_product
from wrt8.tqft import (MappingClass, apply_S, apply_T_power, colored_state,
                       colored_wrt, rep_S, rep_T, rep_T_phase, solid_torus_state,
                       vacuum_state, wrt_invariant, wrt_series)

PREC = 128


def test_word_matrices_hit_slopes():
    for p, q in [(1, 1), (5, 1), (0, 1), (1, 0), (3, 2), (7, 5), (2, -3), (13, 4)]:
        w = MappingClass.from_slope(p, q)
        assert (w.matrix[0][0], w.matrix[1][0]) == (p, q)
        # T-exponent bound from the nearest-integer continued fraction
        for kind, e in w.letters:
            if kind == "T":
                assert abs(e) <= 2 * max(abs(p), abs(q), 1)


def test_rep_S_unitary():
    k = 4
    S = rep_S(k, PREC)
    n = 2 * k
    with bits(PREC):
        tol = mpf(2) ** -(PREC - 20)
        for i in range(n):
            for j in range(n):
                v = sum(S[i][l] * mp.conj(S[j][l]) for l in range(n))
                assert abs(v - (1 if i == j else 0)) < tol


def test_projectivity_scalars():
    """S^2 and (S T)^3 are global unit scalars on the alternating subspace."""
    k = 4
    with bits(PREC):
        e = colored_state(1, k, PREC).c
        v = apply_S(k, apply_S(k, e, PREC), PREC)
        # S^2 = parity; on alternating vectors it is the scalar -1
        assert all(abs(a + b) < mpf(2) ** -100 for a, b in zip(v, e))
        w = list(e)
        for _ in range(3):
            w = apply_S(k, apply_T_power(k, w, 1, PREC), PREC)
        ratios = [mp.mpc(a) / b for a, b in zip(w, e) if abs(b) > mpf("1e-20")]
        scalar = ratios[0]
        assert abs(abs(scalar) - 1) < mpf(2) ** -100
        assert all(abs(r - scalar) < mpf(2) ** -95 for r in ratios)
        # frozen regression: the (ST)^3 scalar at k = 4 is e^{-i pi/4}
        assert abs(scalar - mp.expjpi(mpf(-1) / 4)) < mpf(2) ** -95


def test_S_preserves_alternating():
    k = 5
    z = build_state(KnotId.FIGURE_EIGHT, k, PREC)
    with bits(PREC):
        v = apply_S(k, z.c, PREC)
        n = 2 * k
        for l in range(n):
            assert abs(v[(-l) % n] + v[l]) < mpf(2) ** -100


def test_colored_state_examples():
    e = colored_state(1, 3, PREC)
    with bits(PREC):
        r = 1 / mp.sqrt(2)
        expected = [0, r, 0, 0, 0, -r]
        for c, x in zip(e.c, expected):
            assert abs(c - x) < mpf(2) ** -110
        assert abs(e.norm() - 1) < mpf(2) ** -110
    with pytest.raises(ValueError):
        colored_state(3, 3, PREC)
    with pytest.raises(ValueError):
        colored_state(0, 5, PREC)


def test_pairing_with_colored_state_is_jones():
    k = 7
    table = jones_table(KnotId.FIGURE_EIGHT, k, PREC)
    z = build_state(KnotId.FIGURE_EIGHT, k, PREC)
    with bits(PREC):
        scale = mp.sqrt(2) * mp.sinpi(mpf(1) / k) / mp.sqrt(k)
        for ell in range(1, k):
            got = inner_product(z.c, colored_state(ell, k, PREC).c)
            assert abs(got - scale * table.value(ell)) < mpf(2) ** -100


def test_colored_wrt_identity_frame():
    k = 9
    table = jones_table(KnotId.FIGURE_EIGHT, k, PREC)
    with bits(PREC):
        scale = mp.sqrt(2) * mp.sinpi(mpf(1) / k) / mp.sqrt(k)
        for ell in (1, 3, 5):
            got = colored_wrt(((1, 0), (0, 1)), ell, k, PREC)
            assert abs(got - scale * table.value(ell)) < mpf(2) ** -100
    with pytest.raises(ValueError):
        colored_wrt(((1, 1), (1, 1)), 2, 9, PREC)


def test_colored_symmetry_ell_to_k_minus_ell():
    # J_{k - ell} = J_ell at t_k, so |Z_{k, ell}| = |Z_{k, k-ell}|
    k = 11
    with bits(PREC):
        for ell in (2, 3, 4):
            a = abs(colored_wrt(((1, 0), (0, 1)), ell, k, PREC))
            b = abs(colored_wrt(((1, 0), (0, 1)), k - ell, k, PREC))
            assert abs(a - b) < mpf(2) ** -100


def test_vacuum_is_meridian_state():
    k = 6
    v = vacuum_state(k, PREC)
    st = solid_torus_state(1, 0, k, PREC)
    assert all(a == b for a, b in zip(v.c, st.c))


def test_pairing_conjugate_symmetry():
    k = 5
    a = build_state(KnotId.FIGURE_EIGHT, k, PREC)
    b = solid_torus_state(3, 1, k, PREC)
    with bits(PREC):
        assert abs(inner_product(a.c, b.c) - mp.conj(inner_product(b.c, a.c))) \
            < mpf(2) ** -110


def test_wrt_s3_value():
    """Meridian filling of any knot gives S^3: Z = sqrt(2/k) sin(pi/k)."""
    with bits(PREC):
        for k in (5, 12):
            z = wrt_invariant(1, 0, k, PREC)
            s3 = mp.sqrt(mpf(2) / k) * mp.sinpi(mpf(1) / k)
            assert abs(z - s3) < mpf(2) ** -100
            zu = wrt_invariant(1, 0, k, PREC, knot=KnotId.UNKNOT)
            assert abs(zu - s3) < mpf(2) ** -100


def test_wrt_regression_value():
    """Frozen regression: Z_30 of the (1,1)-filling (Brieskorn sphere)."""
    z = wrt_invariant(1, 1, 30, PREC)
    with bits(64):
        got = complex(z)
    assert abs(got - (0.21606688110578157 + 0.8126363154749376j)) < 1e-12


def test_admissibility_bound():
    """|Z_k| stays polynomially bounded along a sweep (sanity)."""
    series = wrt_series(1, 1, range(20, 101, 20), 96)
    for k, z in series.entries.items():
        assert abs(z) < 10 * k


def test_solid_torus_microsupport():
    """The (2,1)-state decays away from its support circle.

    In the frozen convention the state of slope (p, q) is carried by the
    circle {t (p mu - q lambda)} (the orientation mirror; the intersection
    parameters with the characteristic set coincide by evenness of F in q).
    """
    on_pt = PointE(mpf("0.5"), mpf("0.75"))      # t = 1/4 on {t (2 mu - la)}
    far_pt = PointE(mpf("0.8"), mpf("0.4"))      # distance ~ 0.18 from the circle
    vals = {}
    for k in (40, 120):
        st = solid_torus_state(2, 1, k, 96)
        params = QuantParams(k=k, precision=96)
        with bits(96):
            vals[k] = (abs(evaluate_state(params, st.c, on_pt).amplitude),
                       abs(evaluate_state(params, st.c, far_pt).amplitude))
    assert vals[40][0] > 1 and vals[120][0] > 1
    assert vals[120][1] / vals[120][0] < mpf("1e-8")
    # decay off the circle is much faster than any power of k
    assert vals[120][1] < vals[40][1] * mpf("1e-4")


def test_unitarity_up_to_k64():
    """Norm preservation of rho(S), rho(T) on random vectors for k <= 64."""
    import random as _r
    rng = _r.Random(3)
    with bits(PREC):
        for k in (8, 23, 64):
            v = tuple(mpc(rng.uniform(-1, 1), rng.uniform(-1, 1))
                      for _ in range(2 * k))
            nv = mp.sqrt(sum(abs(x) ** 2 for x in v))
            sv = apply_S(k, v, PREC)
            tv = apply_T_power(k, v, 1, PREC)
            ns = mp.sqrt(sum(abs(x) ** 2 for x in sv))
            nt = mp.sqrt(sum(abs(x) ** 2 for x in tv))
            assert abs(ns - nv) < mpf(2) ** -(PREC - 40)
            assert abs(nt - nv) < mpf(2) ** -(PREC - 40)


def test_rep_T_phase_well_defined_mod_2k():
    k = 6
    with bits(96):
        for ell in range(2 * k):
            assert abs(rep_T_phase(k, ell) - rep_T_phase(k, ell + 2 * k)) == 0
        m = rep_T(k, 96)
        assert all(m[i][j] == 0 for i in range(2 * k) for j in range(2 * k) if i != j)
