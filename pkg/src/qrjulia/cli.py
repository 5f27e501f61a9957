"""qrjulia command line: verify, render, gauge, cantor, pullback, classify.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for bad arguments or parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import coding, dynamics, hausdorff, pullback, qrmap
from .geometry import Gauge, PowerGauge

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"^([+-]?{_NUM})?(?:([+-]{_NUM}|[+-])i)?$")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """'a+bi', 'a-bi', 'a' or 'bi' (no spaces)."""
    s = text.strip().replace("j", "i")
    if s.endswith("i") and re.fullmatch(rf"[+-]?{_NUM}i", s):
        return complex(0.0, float(s[:-1]))
    m = _COMPLEX.match(s)
    if not s or not m or (m.group(1) is None and m.group(2) is None):
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r} (use a+bi)")
    re_part = float(m.group(1)) if m.group(1) else 0.0
    im = m.group(2)
    if im in ("+", "-"):
        im += "1"
    return complex(re_part, float(im) if im else 0.0)


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{'+' if z.imag >= 0 else '-'}{abs(z.imag):.17g}i"


# -- JSON with fixed key order and 17 significant digits ----------------------------

def to_json(obj, indent: int | None = 2) -> str:
    def enc(x, level):
        pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
        end = "" if indent is None else "\n" + " " * (indent * level)
        sep = ", " if indent is None else ","
        if isinstance(x, bool) or x is None:
            return {True: "true", False: "false", None: "null"}[x]
        if isinstance(x, (int, np.integer)):
            return str(int(x))
        if isinstance(x, (float, np.floating)):
            x = float(x)
            return format(x, ".17g") if math.isfinite(x) else "null"
        if isinstance(x, complex):
            return enc([x.real, x.imag], level)
        if isinstance(x, str):
            return _json_str(x)
        if isinstance(x, dict):
            if not x:
                return "{}"
            items = [pad + _json_str(str(k)) + ": " + enc(x[k], level + 1) for k in sorted(x)]
            return "{" + sep.join(items) + end + "}"
        if isinstance(x, (list, tuple)):
            if not x:
                return "[]"
            return "[" + sep.join(pad + enc(v, level + 1) for v in x) + end + "]"
        raise TypeError(f"cannot serialize {type(x).__name__}")

    return enc(obj, 0) + "\n"


def _json_str(s: str) -> str:
    return json.dumps(s)


def _check(name, observed, threshold, ok, samples=None, **extra):
    rec = {"name": name, "observed": observed, "threshold": threshold,
           "status": "pass" if ok else "fail", "violation": 0.0 if ok else abs(observed - threshold)}
    if samples is not None:
        rec["samples"] = samples
    rec.update(extra)
    return rec


# -- output -------------------------------------------------------------------------

def _emit_text(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    _write_bytes(out, text.encode("utf-8"))


def _write_bytes(path: str, data: bytes):
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _params(args) -> qrmap.MapParams:
    delta = None if args.delta == "auto" else args.delta
    if delta is not None:
        try:
            delta = float(delta)
        except ValueError as exc:
            raise UsageError(f"--delta must be a number or 'auto', got {args.delta!r}") from exc
    return qrmap.params_new(args.K, delta)


# -- subcommands -------------------------------------------------------------------

def cmd_verify(args) -> int:
    p = _params(args)
    n = args.sweep_samples
    checks = []
    seams = qrmap.gluing_check(p, samples=n, max_depth=args.depth, seed=args.seed, per_seam=True)[1]
    for name, v in sorted(seams.items()):
        checks.append(_check(f"gluing_{name}", v, 1e-9, v <= 1e-9, n))
    anchor = qrmap.seam_anchor(p, seed=args.seed)
    checks.append(_check("seam_anchor_modulus", anchor, 1e-10, anchor <= 1e-10, 1000))
    b = qrmap.beltrami_sweep(p, samples=n, seed=args.seed, max_depth=args.depth)
    bound = p.delta / (1 - 7 * p.delta)
    checks.append(_check("beltrami_annulus", b["annulus_max"], bound + 1e-6,
                         b["annulus_max"] <= bound + 1e-6, n))
    target = (p.K - 1) / (p.K + 1)
    dev = max(abs(b["y_min"] - target), abs(b["y_max"] - target))
    checks.append(_check("beltrami_y", dev, 1e-6, dev <= 1e-6, n, expected=target))
    conf = max(b["zquad_max"], b["x_max"])
    checks.append(_check("beltrami_conformal", conf, 1e-9, conf <= 1e-9, n))
    checks.append(_check("beltrami_finite_difference", b["fd_max_rel_error"], 1e-4,
                         b["fd_max_rel_error"] <= 1e-4, n, abs_error=b["fd_max_error"]))
    kmax = max(b["annulus_max"], b["y_max"])
    k_est = (1 + kmax) / (1 - kmax)
    checks.append(_check("dilatation", k_est, p.K, k_est <= p.K * (1 + 1e-9), n))
    ineq = qrmap.inequality_sweep(p, samples=args.samples, seed=args.seed)
    checks.append(_check("escape_bound_on_Z", ineq["min_abs_f_on_Z"], 4.0,
                         ineq["min_abs_f_on_Z"] >= 4.0, args.samples))
    checks.append(_check("growth_bound", ineq["min_growth_ratio"], 3.0,
                         ineq["min_growth_ratio"] >= 3.0, args.samples))
    ok = all(c["status"] == "pass" for c in checks)
    report = {"command": "verify", "params": {"K": p.K, "delta": p.delta, "seed": args.seed},
              "checks": checks, "passed": ok}
    _emit_text(to_json(report), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render(args) -> int:
    if args.px < 1:
        raise UsageError("--px must be >= 1")
    if not args.width > 0:
        raise UsageError("--width must be positive")
    p = _params(args)
    img = dynamics.render_grid(p, center=args.center, width=args.width, px=args.px,
                               max_steps=args.max_iter, workers=args.threads)
    _write_bytes(args.out, dynamics.pgm_bytes(img))
    return EXIT_OK


def cmd_gauge(args) -> int:
    p = _params(args)
    rep = hausdorff.cover_report(p, args.n_max)
    _emit_text(rep.to_csv(), args.out)
    gap = rep.max_rel_gap()
    print(f"limit {rep.limit:.17g}  max |S_direct - S_closed|/S = {gap:.3g}  "
          f"S_closed monotone: {rep.is_monotone()}", file=sys.stderr)
    return EXIT_OK if gap <= 1e-10 else EXIT_FAIL


def cmd_cantor(args) -> int:
    p = _params(args)
    if not 1 <= args.level <= p.scales.max_depth:
        raise UsageError(f"--level must lie in 1..{p.scales.max_depth}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("word", "re", "im", "level"))
    for u in coding.all_words(args.level):
        a = coding.cantor_point(u, p.scales)
        w.writerow((coding.word_str(u), format(a.real, ".17g"), format(a.imag, ".17g"), len(u)))
    _emit_text(buf.getvalue(), args.out)
    if args.scales_out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("n", "log_t", "log_s", "log_r"))
        for n, lt, ls, lr in p.scales.rows():
            w.writerow([n] + [format(float(v), ".17g") for v in (lt, ls, lr)])
        _write_bytes(args.scales_out, buf.getvalue().encode())
    if args.boxdim_out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("n", "dim_est"))
        for n, d in hausdorff.boxdim_sequence(p, args.boxdim_n):
            w.writerow((n, format(d, ".17g")))
        _write_bytes(args.boxdim_out, buf.getvalue().encode())
    return EXIT_OK


def _instance(args):
    map_arg = args.map
    if map_arg == "explicit":
        p = _params(args)
        return pullback.explicit_instance(p), Gauge(2, p.K), \
            pullback.default_neg_log_radii(), p
    if map_arg.startswith("quad:"):
        key, _, val = map_arg[5:].partition("=")
        if key != "c" or not val:
            raise UsageError(f"--map quad takes the form quad:c=<a+bi>, got {map_arg!r}")
        try:
            c = parse_complex(val)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(str(exc)) from exc
        # K = 1 has no logarithmic gauge; use h(r) = r
        radii = [-math.log(r) for r in (0.5, 0.2, 0.1, 0.05, 0.02, 0.01)]
        return pullback.quadratic_instance(c), PowerGauge(1.0), radii, None
    raise UsageError(f"unknown --map {map_arg!r}; use quad:c=<a+bi> or explicit")


def cmd_pullback(args) -> int:
    if args.depth < 1:
        raise UsageError("--depth must be >= 1")
    inst, gauge, neg_log_radii, _ = _instance(args)
    if args.radii:
        try:
            radii = [float(x) for x in args.radii.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --radii {args.radii!r}") from exc
        if any(not 0 < r < 1 for r in radii):
            raise UsageError("every radius must lie in (0, 1)")
        neg_log_radii = [-math.log(r) for r in radii]
    tree = pullback.build_tree(inst, args.xi, args.depth, threads=args.threads)
    d = inst.degree
    lc = pullback.level_count_check(tree, d)
    totals = tree.chain_totals
    mult_ok = all(t == d ** m for m, t in enumerate(totals))
    resid = tree.max_residual()
    l4 = pullback.lemma4_check(inst, args.xi)
    checks = [
        _check("level_growth", min(g for _, g in lc.growth), 0,
               all(g >= 0 for _, g in lc.growth), margins=[g for _, g in lc.growth]),
        _check("level_floor", min((f for _, f in lc.floor), default=0), 0,
               all(f >= 0 for _, f in lc.floor), margins=[f for _, f in lc.floor]),
        _check("multiplicity_total", totals[-1], d ** tree.depth, mult_ok),
        _check("forward_verification", resid, pullback.VERIFY_REL_TOL,
               resid <= pullback.VERIFY_REL_TOL),
        _check("exceptional_point_certificate", l4, 3, l4 >= 3),
    ]
    report = {"instance": inst.name, "xi": format_complex(args.xi), "depth": tree.depth,
              "counts": tree.counts, "checks": checks, "C_est": None, "table": []}
    if tree.counts[-1] >= 2:
        mr = pullback.mass_distribution(tree, gauge, neg_log_radii=neg_log_radii,
                                        centers=args.centers, metric=args.metric,
                                        seed=args.seed)
        report["C_est"] = mr.C_est
        report["table"] = [{"center": c, "neg_log_r": x, "mu": mu, "ratio": r}
                           for c, x, mu, r in mr.table]
    _emit_text(to_json(report), args.out)
    ok = all(c["status"] == "pass" for c in checks)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    p = _params(args)
    region = qrmap.classify(args.point, p)
    out = {"point": format_complex(args.point), "tag": region.tag,
           "word": coding.word_str(region.word), "level": region.level}
    _emit_text(to_json(out, indent=None), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qrjulia", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--K", type=float, default=1.5, help="dilatation, in (1, 2)")
    common.add_argument("--delta", default="auto", help="hole radius or 'auto'")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="run the numerical checks of the map")
    s.add_argument("--samples", type=int, default=100_000, help="samples for the growth bounds")
    s.add_argument("--sweep-samples", type=int, default=10_000,
                   help="samples per seam and for the dilatation sweep")
    s.add_argument("--depth", type=int, default=8, help="deepest address sampled")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", parents=[common], help="escape-time image as PGM")
    s.add_argument("--px", type=int, default=512)
    s.add_argument("--max-iter", type=int, default=64)
    s.add_argument("--center", type=parse_complex, default=0j)
    s.add_argument("--width", type=float, default=8.0)
    s.set_defaults(func=cmd_render, out_default="bo.pgm")

    s = sub.add_parser("gauge", parents=[common], help="cover sums as CSV")
    s.add_argument("--n-max", type=int, default=40)
    s.set_defaults(func=cmd_gauge)

    s = sub.add_parser("cantor", parents=[common], help="Cantor centers a_u as CSV")
    s.add_argument("--level", type=int, default=4)
    s.add_argument("--scales-out", default=None)
    s.add_argument("--boxdim-out", default=None)
    s.add_argument("--boxdim-n", type=int, default=24)
    s.set_defaults(func=cmd_cantor)

    s = sub.add_parser("pullback", parents=[common], help="backward-orbit tree report as JSON")
    s.add_argument("--map", default="quad:c=0", help="quad:c=<a+bi> or explicit")
    s.add_argument("--xi", type=parse_complex, default=1 + 0j)
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--centers", type=int, default=100)
    s.add_argument("--metric", choices=("euclidean", "chordal"), default="euclidean")
    s.add_argument("--radii", default=None, help="comma-separated radii in (0, 1)")
    s.set_defaults(func=cmd_pullback)

    s = sub.add_parser("classify", parents=[common], help="region of a point as JSON")
    s.add_argument("--point", type=parse_complex, required=True)
    s.set_defaults(func=cmd_classify)
    return ap


_COMPLEX_FLAGS = ("--xi", "--point", "--center")


def _join_negative_literals(argv):
    """Let '--xi -1+0i' through: argparse would read '-1+0i' as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _COMPLEX_FLAGS and i + 1 < len(argv) and re.match(r"-[\d.]", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = ap.parse_args(_join_negative_literals(argv))
    if args.out is None and getattr(args, "out_default", None):
        args.out = args.out_default
    if args.threads < 1:
        print("qrjulia: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"qrjulia: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except qrmap.PreimageError as exc:
        print(f"qrjulia: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
