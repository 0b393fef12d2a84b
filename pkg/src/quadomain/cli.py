"""Command-line interface.

    quadomain trace       boundary of the planar profile D_p
    quadomain quadrature  quadrature data by both extraction routes
    quadomain monodromy   continue F around loop tokens g1/g2
    quadomain growth      Laplacian-growth trajectory
    quadomain cusp        search for the cusp parameter
    quadomain examples    classical shapes (neumann, limacon, cardioid, ball)
    quadomain elliptic    complete elliptic integrals and the xi-form check

Exit status: 0 success, 1 invalid input or unwritable output, 2 numerical
failure.  Settings come from flags, then ``--config`` (key=value lines),
then built-in defaults.  Without ``--out`` output goes to stdout, or to
``$QUADOMAIN_OUT_DIR/<command>.<format>`` when that variable is set.
"""
import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import classical, continuation, growth, moments
from .conformal import MapParams, boundary_curve, laurent_coeffs
from .emitters import to_csv, to_json, to_svg
from .errors import NumericalError, ValidationError

OUT_DIR_ENV = "QUADOMAIN_OUT_DIR"

TRACE_COLUMNS = "theta, re_zeta, im_zeta, abs_df (one row per boundary sample; a sweep adds a leading column)"
GROWTH_COLUMNS = "t, a, C, a0, a1, min_abs_df, cusp_flag"
PK_COLUMNS = "t, a, b, M0, M1, cusp_flag"


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _samples(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"samples must be an integer, got {s!r}")
    if n < 256 or n > 65536 or n & (n - 1):
        raise argparse.ArgumentTypeError(f"samples must be a power of two in [256, 65536], got {n}")
    return n


def _complex(s):
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {s!r}")


def parse_sweep(text):
    """'key=start:stop:step' -> (key, values), stop inclusive."""
    try:
        key, rng = text.split("=", 1)
        start, stop, step = (float(v) for v in rng.split(":"))
    except ValueError:
        raise UsageError(f"bad sweep {text!r}; expected key=start:stop:step")
    if step <= 0 or stop < start:
        raise UsageError(f"bad sweep range in {text!r}")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return key.strip(), [round(start + i * step, 12) for i in range(n)]


def read_config(path):
    """Flat key=value file; '#' starts a comment."""
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    for no, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{no}: expected key=value, got {line!r}")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = (v.strip(), no)
    return out


def _add_common(p, formats, default_format):
    p.add_argument("--format", choices=formats, default=default_format)
    p.add_argument("--out", help="output file (default stdout or $%s)" % OUT_DIR_ENV)
    p.add_argument("--config", help="key=value file of defaults")


def _add_map(p):
    p.add_argument("--a", type=float, default=0.3, help="branch-point parameter, 0 <= a < 1")
    p.add_argument("--c", type=float, default=1.0, help="scale factor C > 0")


def build_parser():
    parser = _Parser(prog="quadomain", description=__doc__.split("\n\n")[0],
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("trace", help="boundary curve of the profile domain",
                       description=f"CSV columns: {TRACE_COLUMNS}. SVG output also writes the CSV next to it.")
    _add_map(p)
    p.add_argument("--samples", type=_samples, default=4096)
    p.add_argument("--sweep", help="key=start:stop:step over a or c")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p, ["csv", "json", "svg"], "csv")

    p = sub.add_parser("quadrature", help="quadrature coefficients and residual table",
                       description="CSV columns: a, C, a0_direct, a1_direct, a0_laurent, a1_laurent, max_residual, simple")
    _add_map(p)
    p.add_argument("--samples", type=_samples, default=4096)
    p.add_argument("--K", type=int, default=8, help="highest moment order")
    p.add_argument("--sweep", help="key=start:stop:step over a or c")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p, ["json", "csv"], "json")

    p = sub.add_parser("monodromy", help="continuation of F around loop tokens")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--path", default="g1,g2,g1", help="comma-separated tokens g1, g2")
    p.add_argument("--ladder", type=int, help="use g1 (g2 g1)^k instead of --path")
    p.add_argument("--base", type=_complex, default=None, help="base point, e.g. 0.5j")
    _add_common(p, ["json"], "json")

    p = sub.add_parser("growth", help="Laplacian-growth trajectory",
                       description=f"CSV columns (r4): {GROWTH_COLUMNS}; (pk): {PK_COLUMNS}")
    p.add_argument("--family", choices=["r4", "pk"], default="r4")
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--c", type=float, default=1.0, help="C for r4")
    p.add_argument("--b", type=float, default=1.0, help="b for pk")
    p.add_argument("--q", type=float, default=-0.5, help="source strength; negative is suction")
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--samples", type=_samples, default=2048)
    _add_common(p, ["csv", "json", "svg"], "csv")

    p = sub.add_parser("cusp", help="bisection for the cusp parameter")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--lo", type=float, default=0.5)
    p.add_argument("--hi", type=float, default=0.99)
    p.add_argument("--samples", type=_samples, default=4096)
    _add_common(p, ["json"], "json")

    p = sub.add_parser("examples", help="classical reference shapes",
                       description="kinds: neumann (a), limacon (sigma), cardioid (a,b), ball (r,n). "
                                   "CSV columns: theta, re_zeta, im_zeta")
    p.add_argument("kind", choices=["neumann", "limacon", "cardioid", "ball"])
    p.add_argument("--param", default=None, help="comma-separated shape parameters")
    p.add_argument("--samples", type=_samples, default=4096)
    p.add_argument("--sweep", help="param=start:stop:step over the first parameter")
    _add_common(p, ["svg", "csv", "json"], "svg")

    p = sub.add_parser("elliptic", help="Pi(n, m), K(m) and the xi-form check")
    p.add_argument("--n", type=float, default=0.0)
    p.add_argument("--m", type=float, default=0.0)
    p.add_argument("--a", type=float, default=None, help="also compare xi_form and eval_F at --w")
    p.add_argument("--w", default="0.5", help="comma-separated complex points")
    _add_common(p, ["json"], "json")
    return parser


_EXAMPLE_DEFAULTS = {"neumann": "1", "limacon": "0.25", "cardioid": "0.2,1", "ball": "1,4"}


def _apply_config(parser, argv):
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    cfg = read_config(args.config)
    subparser = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, (val, no) in cfg.items():
        act = actions.get(key)
        if act is None or key in ("config", "help"):
            raise UsageError(f"{args.config}:{no}: unknown setting {key!r} for {args.command}")
        try:
            defaults[key] = act.type(val) if act.type else val
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise UsageError(f"{args.config}:{no}: bad value for {key}: {exc}")
        if act.choices and defaults[key] not in act.choices:
            raise UsageError(f"{args.config}:{no}: {key} must be one of {sorted(act.choices)}")
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _output_path(args):
    out = args.out
    env = os.environ.get(OUT_DIR_ENV)
    if out is None:
        return Path(env) / f"{args.command}.{args.format}" if env else None
    out = Path(out)
    if env and not out.is_absolute():
        out = Path(env) / out
    return out


def _write(path, text):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}")


def _map_params(a, c):
    return MapParams(a, c)


def _sweep_values(args, allowed):
    if not getattr(args, "sweep", None):
        return None, [None]
    key, vals = parse_sweep(args.sweep)
    if key not in allowed:
        raise UsageError(f"cannot sweep {key!r}; choose from {allowed}")
    return key, vals


def _with(args, key, val):
    ns = argparse.Namespace(**vars(args))
    if key is not None:
        setattr(ns, key, val)
    return ns


def _trace_one(a, c, samples):
    p = _map_params(a, c)
    curve = boundary_curve(p, samples)
    return curve.theta, curve.zeta, np.abs(curve.dfd), curve.simple, curve.min_abs_df


def _map_jobs(fn, argsets, jobs):
    if jobs > 1 and len(argsets) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, *zip(*argsets)))
    return [fn(*s) for s in argsets]


def cmd_trace(args):
    key, vals = _sweep_values(args, ("a", "c"))
    runs = [_with(args, key, v) for v in vals]
    for r in runs:
        _map_params(r.a, r.c)
    res = _map_jobs(_trace_one, [(r.a, r.c, r.samples) for r in runs], args.jobs)
    header = ([key] if key else []) + ["theta", "re_zeta", "im_zeta", "abs_df"]
    rows = []
    for v, (th, z, adf, _, _) in zip(vals, res):
        lead = [v] if key else []
        rows += [lead + [t, w.real, w.imag, d] for t, w, d in zip(th, z, adf)]
    csv = to_csv(header, rows)
    path = _output_path(args)
    if args.format == "csv":
        _write(path, csv)
    elif args.format == "json":
        recs = [{"a": r.a, "C": r.c, "samples": r.samples, "simple": s, "min_abs_df": mdf,
                 "re_zeta": z.real, "im_zeta": z.imag}
                for r, (_, z, _, s, mdf) in zip(runs, res)]
        _write(path, to_json(recs if key else recs[0]))
    else:
        labels = [f"a={r.a:g} C={r.c:g}" for r in runs]
        _write(path, to_svg([z for _, z, _, _, _ in res], labels, "boundary of D_p"))
        if path is not None:
            _write(path.with_suffix(".csv"), csv)
    return 0


def _quadrature_one(a, c, samples, K):
    p = _map_params(a, c)
    grid = laurent_coeffs(p)
    curve = boundary_curve(p, samples, grid)
    d = moments.extract_quadrature_direct(curve, K)
    lq = moments.extract_quadrature_laurent(p, grid, K)
    return d, lq, curve.simple


def cmd_quadrature(args):
    key, vals = _sweep_values(args, ("a", "c"))
    runs = [_with(args, key, v) for v in vals]
    for r in runs:
        _map_params(r.a, r.c)
    res = _map_jobs(_quadrature_one, [(r.a, r.c, r.samples, r.K) for r in runs], args.jobs)
    path = _output_path(args)
    if args.format == "json":
        recs = []
        for r, (d, lq, simple) in zip(runs, res):
            recs.append({"params": {"a": r.a, "C": r.c}, "samples": r.samples, "simple": simple,
                         "direct": d.to_dict(), "laurent": lq.to_dict(),
                         "agreement": {"a0": abs(d.a0 - lq.a0) / abs(d.a0),
                                       "a1": abs(d.a1 - lq.a1) / max(abs(d.a1), 1e-300)}})
        _write(path, to_json(recs if key else recs[0]))
    else:
        header = ["a", "C", "a0_direct", "a1_direct", "a0_laurent", "a1_laurent",
                  "max_residual", "simple"]
        rows = [[r.a, r.c, d.a0, d.a1, lq.a0, lq.a1, d.max_residual, simple]
                for r, (d, lq, simple) in zip(runs, res)]
        _write(path, to_csv(header, rows))
    return 0


def cmd_monodromy(args):
    if args.ladder is not None:
        if args.ladder < 0:
            raise UsageError("ladder index must be >= 0")
        tokens = continuation.ladder_tokens(args.ladder)
    else:
        tokens = [t.strip() for t in args.path.split(",") if t.strip()]
    rec = continuation.run_loops(tokens, args.a, args.base)
    rec = {"a": args.a, "tokens": list(tokens), **rec}
    _write(_output_path(args), to_json(rec))
    return 0


def cmd_growth(args):
    path = _output_path(args)
    if args.family == "pk":
        traj = growth.pk_evolve(growth.pk_state(args.a, args.b), args.q, args.dt, args.steps)
        header = ["t", "a", "b", "M0", "M1", "cusp_flag"]
        curves = [classical.pk_cardioid_map(np.exp(2j * np.pi * np.arange(args.samples) / args.samples),
                                            s.a, s.b) for s in traj]
    else:
        s0 = growth.initial_state(_map_params(args.a, args.c), args.samples)
        traj = growth.evolve(s0, args.q, args.dt, args.steps, args.samples)
        header = ["t", "a", "C", "a0", "a1", "min_abs_df", "cusp_flag"]
        curves = None
    rows = [s.row() for s in traj]
    if args.format == "csv":
        _write(path, to_csv(header, rows))
    elif args.format == "json":
        _write(path, to_json([dict(zip(header, r)) for r in rows]))
    else:
        idx = sorted(set(list(range(0, len(traj), 10)) + [len(traj) - 1]))
        if curves is None:
            curves = [boundary_curve(traj[i].params, args.samples).zeta for i in idx]
        else:
            curves = [curves[i] for i in idx]
        labels = [f"t={traj[i].t:g}" for i in idx]
        _write(path, to_svg(curves, labels, "growth snapshots"))
    return 0


def cmd_cusp(args):
    rec = {"C": args.c, "bracket": [args.lo, args.hi]}
    a_star = growth.find_cusp_parameter(args.c, (args.lo, args.hi), m=args.samples)
    rec["a_star"] = a_star
    _write(_output_path(args), to_json(rec))
    return 0


def _parse_floats(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad parameter list {text!r}")


def cmd_examples(args):
    base = _parse_floats(args.param or _EXAMPLE_DEFAULTS[args.kind])
    if args.sweep:
        key, vals = parse_sweep(args.sweep)
        if key != "param":
            raise UsageError("examples sweeps only 'param'")
        params = [(v,) + base[1:] for v in vals]
    else:
        params = [base]
    shapes = [classical.ClassicalShape(args.kind, p) for p in params]
    curves = [s.boundary(args.samples) for s in shapes]
    path = _output_path(args)
    if args.format == "svg":
        labels = [f"{args.kind} {','.join(f'{v:g}' for v in s.params)}" for s in shapes]
        _write(path, to_svg([c.zeta for c in curves], labels, f"{args.kind} boundary"))
    elif args.format == "csv":
        multi = len(shapes) > 1
        header = (["param"] if multi else []) + ["theta", "re_zeta", "im_zeta"]
        rows = []
        for s, c in zip(shapes, curves):
            lead = [s.params[0]] if multi else []
            rows += [lead + [t, z.real, z.imag] for t, z in zip(c.theta, c.zeta)]
        _write(path, to_csv(header, rows))
    else:
        recs = [{"kind": s.kind, "params": list(s.params), "simple": c.simple,
                 "quadrature": s.quadrature()} for s, c in zip(shapes, curves)]
        _write(path, to_json(recs if len(recs) > 1 else recs[0]))
    return 0


def cmd_elliptic(args):
    rec = {"n": args.n, "m": args.m, "Pi": continuation.carlson_pi(args.n, args.m),
           "K_agm": continuation.ellipk_agm(args.m)}
    if args.a is not None:
        pts = []
        for s in args.w.split(","):
            w = _complex(s)
            xi, seg = complex(continuation.xi_form(w, args.a)), complex(continuation.eval_F(w, args.a))
            pts.append({"w": w, "xi_form": xi, "eval_F": seg, "abs_diff": abs(xi - seg)})
        rec["a"] = args.a
        rec["xi_check"] = pts
    _write(_output_path(args), to_json(rec))
    return 0


COMMANDS = {"trace": cmd_trace, "quadrature": cmd_quadrature, "monodromy": cmd_monodromy,
            "growth": cmd_growth, "cusp": cmd_cusp, "examples": cmd_examples,
            "elliptic": cmd_elliptic}


def main(argv=None):
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"quadomain: error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"quadomain: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
