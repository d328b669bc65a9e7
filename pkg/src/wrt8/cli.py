"""Command-line front end: sweeps, certification, verification reports.

Exit codes: 0 success, 1 domain error, 2 hypothesis (H'1/H'2) failure,
64 usage.  Output is deterministic at fixed configuration: floats are
serialized as precision-matched decimals plus a hex-float field (of the
double rounding) for bit-exact reload of plot-ready data, and no
timestamps or environment-dependent fields are ever emitted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from mpmath import mp, mpf

from . import charvar, invariants, knotstate, quantization, slopes, tqft, verify
from .invariants import HypothesisError
from .jones import KnotId, jones_table
from .numerics import DEFAULT_PRECISION

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_HYPOTHESIS = 2
EXIT_USAGE = 64

SCHEMA = "v1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def _dec(x, prec):
    digits = max(8, int(prec * 0.30103) + 2)
    if isinstance(x, (int, float)):
        x = mpf(x)
    return mp.nstr(x, digits, strip_zeros=False)


def _hex(x):
    return float(x).hex()


def _num(x, prec):
    return {"dec": _dec(x, prec), "hex": _hex(x)}


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_series(rows):
    lines = ["k,re,im,abs,arg"]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def _series_rows(entries, prec):
    rows = []
    for k in sorted(entries):
        z = entries[k]
        rows.append((k, _dec(mp.re(z), prec), _dec(mp.im(z), prec),
                     _dec(abs(z), prec), _dec(mp.arg(z), prec)))
    return rows


def _wrt_worker(task):
    p, q, k, prec = task
    z = tqft.wrt_invariant(p, q, k, prec)
    return k, (mp.re(z), mp.im(z))


def cmd_jones(args):
    knot = KnotId.FIGURE_EIGHT if args.knot == "fig8" else KnotId.UNKNOT
    table = jones_table(knot, args.k, args.precision)
    if args.format == "csv":
        lines = ["ell,value"]
        lines.extend(f"{l},{_dec(table.value(l), args.precision)}"
                     for l in range(2 * args.k))
        _emit(args, "\n".join(lines) + "\n")
    else:
        doc = {"schema": SCHEMA, "knot": knot.value, "k": args.k,
               "values": [_num(table.value(l), args.precision)
                          for l in range(2 * args.k)]}
        _emit(args, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_state(args):
    state = knotstate.build_state(KnotId.FIGURE_EIGHT, args.k, args.precision)
    doc = {"schema": SCHEMA, "k": args.k,
           "coefficients": [{"re": _num(mp.re(c), args.precision),
                             "im": _num(mp.im(c), args.precision)}
                            for c in state.c]}
    _emit(args, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_wrt(args):
    ks = list(range(args.kmin, args.kmax + 1, args.kstep))
    if args.threads > 1:
        import multiprocessing as mproc
        with mproc.Pool(args.threads) as pool:
            results = pool.map(_wrt_worker,
                               [(args.p, args.q, k, args.precision) for k in ks])
        entries = {k: mp.mpc(re, im) for k, (re, im) in sorted(results)}
    else:
        entries = tqft.wrt_series(args.p, args.q, ks, args.precision).entries
    if args.format == "json":
        doc = {"schema": SCHEMA, "p": args.p, "q": args.q,
               "series": [{"k": k,
                           "re": _num(mp.re(entries[k]), args.precision),
                           "im": _num(mp.im(entries[k]), args.precision)}
                          for k in sorted(entries)]}
        _emit(args, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        _emit(args, _csv_series(_series_rows(entries, args.precision)))
    return EXIT_OK


def cmd_charvar(args):
    xs = charvar.intersect_line(args.p, args.q, args.precision)
    doc = {"schema": SCHEMA, "p": args.p, "q": args.q,
           "points": [{"t": _num(lp.t, args.precision),
                       "p": _num(lp.point.p, args.precision),
                       "q": _num(lp.point.q, args.precision),
                       "class": lp.point.cls,
                       "band": lp.point.band,
                       "strand": lp.point.strand,
                       "multiplicity": lp.multiplicity,
                       "transversal": lp.transversal}
                      for lp in xs.points]}
    _emit(args, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_predict(args):
    table = invariants.predict(args.p, args.q, args.precision)
    doc = {"schema": SCHEMA, "p": args.p, "q": args.q,
           "connections": [{
               "class": fc.cls,
               "cs_re": _num(mp.re(fc.cs_phase), args.precision),
               "cs_im": _num(mp.im(fc.cs_phase), args.precision),
               "order": str(fc.order),
               "a0": _num(fc.a0, args.precision),
               "torsion": None if fc.torsion is None else _num(fc.torsion, args.precision),
           } for fc in table]}
    _emit(args, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_verify(args):
    ks = list(range(args.kmin, args.kmax + 1, args.kstep))
    rep = verify.fit_expansion(args.p, args.q, ks, args.precision)
    doc = {"schema": SCHEMA, "p": args.p, "q": args.q,
           "kmin": args.kmin, "kmax": args.kmax, "kstep": args.kstep,
           "atoms": [{"cs_re": _num(cs.real, args.precision),
                      "cs_im": _num(cs.imag, args.precision),
                      "power": n} for cs, n in rep.atoms],
           "amplitudes": [_num(a, args.precision) for a in rep.amplitudes],
           "predicted_a0": [None if p is None else _num(p, args.precision)
                            for p in rep.predicted_a0],
           "amp_rel_errors": [None if e is None else e for e in rep.amp_rel_errors],
           "phase_grid_distances": list(rep.phase_grid_distances),
           "residual_exponent": rep.residual_exponent,
           "residual_exponent_stderr": rep.residual_exponent_stderr,
           "condition_number": rep.condition_number}
    _emit(args, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    return EXIT_OK


def cmd_pointwise(args):
    params = quantization.QuantParams(k=args.k, precision=args.precision)
    state = knotstate.build_state(KnotId.FIGURE_EIGHT, args.k, args.precision)
    lines = ["p,q,abs"]
    n = args.grid
    for i in range(n):
        for j in range(n):
            x = quantization.PointE(mpf(i) / n, mpf(j) / n)
            v = abs(quantization.evaluate_state(params, state.c, x).amplitude)
            lines.append(f"{_dec(mpf(i) / n, 24)},{_dec(mpf(j) / n, 24)},"
                         f"{_dec(v, args.precision)}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_microsupport(args):
    pts = []
    for chunk in args.points.split(";"):
        a, b = chunk.split(",")
        pts.append((mpf(a), mpf(b)))
    ks = list(range(args.kmin, args.kmax + 1, args.kstep))
    report, slopes_out = verify.microsupport_check(pts, ks, args.precision)
    lines = ["p,q,decay_slope"]
    for (pp, qq), s in zip(pts, slopes_out):
        lines.append(f"{_dec(pp, 24)},{_dec(qq, 24)},{s}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_slopes(args):
    if args.scan:
        pmax, qmax = args.scan
        reports = slopes.scan(pmax, qmax, args.method)
        lines = ["p,q,h1,h2,method"]
        lines.extend(f"{r.slope.p},{r.slope.q},{'pass' if r.h1_pass else 'fail'},"
                     f"{r.h2.value},{r.h2_method}" for r in reports)
        _emit(args, "\n".join(lines) + "\n")
        return EXIT_OK
    report = slopes.certify(args.p, args.q, args.method)
    doc = {"schema": SCHEMA, "p": args.p, "q": args.q,
           "h1": "pass" if report.h1_pass else "fail",
           "h1_witness_p_mod_4": report.h1_witness,
           "h2": report.h2.value, "h2_method": report.h2_method}
    _emit(args, json.dumps(doc, sort_keys=True, indent=1) + "\n")
    if not report.h1_pass:
        sys.stderr.write(f"H1 fails: p = {report.h1_witness} mod 4 (p divisible by 4)\n")
        return EXIT_HYPOTHESIS
    if not report.h2_passed():
        sys.stderr.write(f"H2 not certified: {report.h2.value}\n")
        return EXIT_HYPOTHESIS
    return EXIT_OK


def cmd_transport_check(args):
    import random
    rng = random.Random(7)
    rows = ["q,strand,residual"]
    for _ in range(args.n):
        qq = mpf("0.17") + mpf(rng.random()) * mpf("0.15")
        sigma = rng.choice([1, -1])
        pt = charvar.strand_p(qq, sigma, 1)
        cp = charvar.classify_point(pt, qq, args.precision)
        r = invariants.transport_residual(cp, mpf(args.step), args.precision)
        rows.append(f"{_dec(qq, 24)},{sigma},{_dec(r, 24)}")
    _emit(args, "\n".join(rows) + "\n")
    return EXIT_OK


def build_parser() -> _Parser:
    ap = _Parser(prog="wrt8", description=__doc__)
    env_prec = os.environ.get("WRT_PRECISION")
    default_prec = int(env_prec) if env_prec else DEFAULT_PRECISION

    def common(sp, k=False, slope=False, krange=False):
        sp.add_argument("--precision", type=int, default=default_prec)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("json", "csv"), default="csv")
        sp.add_argument("--threads", type=int, default=1)
        if k:
            sp.add_argument("--k", type=int, required=True)
        if slope:
            sp.add_argument("--p", type=int)
            sp.add_argument("--q", type=int)
        if krange:
            sp.add_argument("--kmin", type=int, default=200)
            sp.add_argument("--kmax", type=int, default=2000)
            sp.add_argument("--kstep", type=int, default=10)

    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("jones");          common(sp, k=True)
    sp.add_argument("--knot", choices=("unknot", "fig8"), default="fig8")
    sp.set_defaults(func=cmd_jones)

    sp = sub.add_parser("state");          common(sp, k=True)
    sp.set_defaults(func=cmd_state)

    sp = sub.add_parser("wrt");            common(sp, slope=True, krange=True)
    sp.set_defaults(func=cmd_wrt)

    sp = sub.add_parser("charvar");        common(sp, slope=True)
    sp.set_defaults(func=cmd_charvar)

    sp = sub.add_parser("predict");        common(sp, slope=True)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("verify");         common(sp, slope=True, krange=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pointwise");      common(sp, k=True)
    sp.add_argument("--grid", type=int, default=32)
    sp.set_defaults(func=cmd_pointwise)

    sp = sub.add_parser("microsupport");   common(sp, krange=True)
    sp.add_argument("--points", default="0.5,0.05;0.3,0.11;0.1,0.55")
    sp.set_defaults(func=cmd_microsupport)

    sp = sub.add_parser("slopes");         common(sp)
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--method", default="auto",
                    choices=("auto", "slope_bound", "discriminant", "modl", "exact"))
    sp.add_argument("--scan", nargs=2, type=int, metavar=("PMAX", "QMAX"))
    sp.set_defaults(func=cmd_slopes)

    sp = sub.add_parser("transport-check"); common(sp)
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--step", default="1e-5")
    sp.set_defaults(func=cmd_transport_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except HypothesisError as exc:
        sys.stderr.write(f"hypothesis failure: {exc}\n")
        return EXIT_HYPOTHESIS
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
