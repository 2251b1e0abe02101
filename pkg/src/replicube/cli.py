"""Command-line front end.

Every subcommand writes deterministic CSV or JSON: floats are rendered
with their shortest round-trip decimal representation, so re-running a
command with the same configuration produces byte-identical output.

A key-value config file (one `key = value` per line, keys named after
the long flags) can preload any option; flags given on the command line
win.  The only environment variable consulted is REPLICUBE_WORKERS,
which bounds the worker pool of parameter sweeps.

Exit codes: 0 success, 1 usage error, 2 numerical failure,
3 verdict undetermined.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import (bifurcation, core, equilibria, flow, geometry, lyapunov)


class UsageError(Exception):
    pass


class Undetermined(Exception):
    pass


def fmt(v):
    """Shortest round-trip decimal for floats; str() otherwise."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _jsonable(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def write_csv(out, header, rows):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def write_json(out, payload):
    json.dump(_jsonable(payload), out, indent=2, sort_keys=True)
    out.write("\n")


# ---------------------------------------------------------------- commands

def cmd_equilibria(args, out):
    rows = []
    for eq in equilibria.closed_form_equilibria(args.mu):
        try:
            ed = equilibria.eigen_analysis(args.mu, eq.location)
            vals, label = ed.eigenvalues, ed.classification
        except ValueError:
            vals, label = [complex(np.nan)] * 3, "undefined"
        rows.append([eq.name, args.mu, *eq.location, eq.in_cube,
                     *[part for v in vals for part in (v.real, v.imag)],
                     label])
    header = ["name", "mu", "x", "y", "z", "in_cube",
              "re1", "im1", "re2", "im2", "re3", "im3", "classification"]
    if args.format == "json":
        write_json(out, [dict(zip(header, r)) for r in rows])
    else:
        write_csv(out, header, rows)


def cmd_eigen(args, out):
    vals = equilibria.closed_form_eigenvalues(args.name, args.mu)
    loc = equilibria.equilibrium_location(args.name, args.mu)
    numeric = equilibria.sort_eigenvalues(
        np.linalg.eigvals(core.cube_jacobian(args.mu, loc)))
    rows = [[args.name, args.mu, i + 1, v.real, v.imag, n.real, n.imag]
            for i, (v, n) in enumerate(zip(vals, numeric))]
    header = ["name", "mu", "index", "re", "im", "re_numeric", "im_numeric"]
    if args.format == "json":
        write_json(out, [dict(zip(header, r)) for r in rows])
    else:
        write_csv(out, header, rows)


def cmd_scan_bifurcations(args, out):
    events = bifurcation.scan(args.mu_from, args.mu_to, step=args.step,
                              tol=args.tol)
    payload = [{"kind": e.kind, "equilibrium": e.equilibrium,
                "mu_star": e.mu_star, "bracket": list(e.bracket),
                "tol": args.tol} for e in events]
    if args.format == "csv":
        write_csv(out, ["kind", "equilibrium", "mu_star", "lo", "hi", "tol"],
                  [[e.kind, e.equilibrium, e.mu_star, *e.bracket, args.tol]
                   for e in events])
    else:
        write_json(out, payload)


def cmd_classify_case(args, out):
    try:
        label = bifurcation.classify_case(args.mu)
    except ValueError as exc:
        raise UsageError(str(exc))
    write_json(out, {"mu": args.mu, "case": label})


def cmd_integrate(args, out):
    p0 = _parse_point(args.x0)
    traj = flow.integrate(args.mu, p0, args.t_end, rel_tol=args.rel_tol,
                          abs_tol=args.abs_tol, n_samples=args.samples)
    rows = [[t, *p] for t, p in zip(traj.times[::args.stride],
                                    traj.states[::args.stride])]
    if args.format == "json":
        write_json(out, {"mu": args.mu, "t": [r[0] for r in rows],
                         "states": [r[1:] for r in rows]})
    else:
        write_csv(out, ["t", "x", "y", "z"], rows)


def cmd_lyapunov(args, out):
    p0 = _parse_point(args.x0) if args.x0 else None
    spec = lyapunov.spectrum(args.mu, p0=p0, T=args.T,
                             renorm_dt=args.renorm_dt,
                             discard_T=args.discard)
    payload = {"mu": args.mu, "exponents": list(spec.exponents),
               "signature": spec.signature, "T": spec.horizon,
               "divergence_avg": spec.divergence_avg}
    if args.format == "csv":
        write_csv(out, ["mu", "LE1", "LE2", "LE3", "signature"],
                  [[args.mu, *spec.exponents, spec.signature]])
    else:
        write_json(out, payload)


def cmd_sweep(args, out):
    rows, intervals = lyapunov.sweep(args.mu_from, args.mu_to, args.points,
                                     T=args.T)
    mus = np.linspace(args.mu_from, args.mu_to, args.points)
    table = []
    for mu, r in zip(mus, rows):
        if r is None:
            table.append([mu, "", "", "", "failed"])
        else:
            table.append([mu, *r.exponents, r.signature])
    if args.format == "json":
        write_json(out, {"rows": [{"mu": t[0], "exponents": t[1:4],
                                   "signature": t[4]} for t in table],
                         "positive_intervals": [list(iv) for iv in intervals]})
    else:
        write_csv(out, ["mu", "LE1", "LE2", "LE3", "signature"], table)


def cmd_manifolds(args, out):
    if args.kind == "unstable":
        traces = geometry.trace_unstable(args.mu, n_seeds=args.seeds,
                                         t_end=args.t_end)
    else:
        traces = geometry.trace_stable(args.mu, t_end=args.t_end)
    if args.format == "json":
        write_json(out, [{"branch": tr.branch, "verdict": tr.verdict}
                         for tr in traces])
        return
    rows = []
    for tr in traces:
        for t, p in zip(tr.trajectory.times[::args.stride],
                        tr.trajectory.states[::args.stride]):
            rows.append([tr.branch, t, *p])
    write_csv(out, ["branch", "t", "x", "y", "z"], rows)


def cmd_homoclinic(args, out):
    prox = geometry.homoclinic_proximity(args.mu, r_exclude=args.r_exclude,
                                         t_forward=args.t_forward,
                                         t_backward=args.t_backward,
                                         n_seeds=args.seeds)
    write_json(out, {"mu": args.mu, "proximity": prox,
                     "r_exclude": args.r_exclude})


def cmd_poincare(args, out):
    try:
        smap = geometry.poincare_map(args.mu, n_returns=args.returns,
                                     t_max=args.t_max, discard=args.discard)
    except RuntimeError as exc:
        raise Undetermined(str(exc))
    rows = [[t, *p] for t, p in zip(smap.times, smap.returns)]
    if args.format == "json":
        write_json(out, {"mu": args.mu, "times": list(smap.times),
                         "returns": [list(p) for p in smap.returns],
                         "return_times": list(smap.return_times)})
    else:
        write_csv(out, ["t", "x", "y", "z"], rows)


INTERIOR_PRESETS = {
    "-20": 50.0, "-17.5": 100.0, "-14": 100.0, "-8.5": 100.0, "-7": 100.0,
    "1.1": 100.0, "3.6": 170.0, "6.5": 100.0, "8": 100.0,
}
BOUNDARY_PRESETS = ["-20", "-14", "-10", "-7", "-5", "6", "9"]


def _preset_info(preset):
    if preset.startswith("boundary:mu="):
        key = preset[len("boundary:mu="):]
        if key not in BOUNDARY_PRESETS:
            raise UsageError(f"unknown boundary preset {preset!r}")
        return float(key), 100.0, True
    if preset.startswith("mu="):
        key = preset[len("mu="):]
        if key not in INTERIOR_PRESETS:
            raise UsageError(f"unknown preset {preset!r}")
        return float(key), INTERIOR_PRESETS[key], False
    raise UsageError(f"presets look like 'mu=3.6' or 'boundary:mu=-7', "
                     f"got {preset!r}")


def cmd_gallery(args, out):
    mu, t_end, boundary = _preset_info(args.preset)
    outdir = args.outdir or f"gallery-{args.preset.replace(':', '-')}"
    os.makedirs(outdir, exist_ok=True)
    files = []

    def emit(name, header, rows):
        path = os.path.join(outdir, name)
        with open(path, "w") as fh:
            write_csv(fh, header, rows)
        files.append(name)

    eq_rows = []
    for eq in equilibria.closed_form_equilibria(mu):
        eq_rows.append([eq.name, *eq.location, eq.in_cube, eq.stratum])
    emit("equilibria.csv", ["name", "x", "y", "z", "in_cube", "stratum"],
         eq_rows)

    if boundary:
        # one orbit per face, seeded off-center so the face dynamics show
        seeds = {
            "x0": (0.0, 0.3, 0.6), "x1": (1.0, 0.3, 0.6),
            "y0": (0.35, 0.0, 0.55), "y1": (0.35, 1.0, 0.55),
            "z0": (0.3, 0.65, 0.0), "z1": (0.3, 0.65, 1.0),
        }
        for face, seed in seeds.items():
            traj = flow.integrate(mu, seed, t_end, n_samples=2001)
            emit(f"face-{face}.csv", ["t", "x", "y", "z"],
                 [[t, *p] for t, p in zip(traj.times, traj.states)])
    else:
        p0 = lyapunov.initial_condition(mu)
        traj = flow.integrate(mu, p0, t_end, n_samples=4001)
        emit("orbit.csv", ["t", "x", "y", "z"],
             [[t, *p] for t, p in zip(traj.times, traj.states)])

    manifest = {
        "preset": args.preset, "mu": mu, "t_end": t_end,
        "axes": ["x", "y", "z"], "files": files,
    }
    with open(os.path.join(outdir, "manifest.json"), "w") as fh:
        write_json(fh, manifest)
    write_json(out, {"outdir": outdir, "files": files + ["manifest.json"]})


# ------------------------------------------------------------- plumbing

def _parse_point(text):
    try:
        parts = [float(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"bad point {text!r}, expected x,y,z")
    if len(parts) != 3:
        raise UsageError(f"bad point {text!r}, expected x,y,z")
    return np.array(parts)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="replicube",
        description="Numerical laboratory for the cube family of "
                    "polymatrix replicators.")
    ap.add_argument("--config", help="key=value file preloading any option")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--output", help="write to this file instead of stdout")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        return p

    p = add("equilibria", cmd_equilibria,
            help="equilibrium ledger at one parameter value")
    p.add_argument("--mu", type=float, required=True)

    p = add("eigen", cmd_eigen,
            help="closed-form vs numeric eigenvalues of a named equilibrium")
    p.add_argument("--name", required=True)
    p.add_argument("--mu", type=float, required=True)

    p = add("scan-bifurcations", cmd_scan_bifurcations,
            help="detect and refine all parameter events")
    p.set_defaults(format="json")
    p.add_argument("--from", dest="mu_from", type=float, default=core.MU_MIN)
    p.add_argument("--to", dest="mu_to", type=float, default=core.MU_MAX)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("classify-case", cmd_classify_case,
            help="label the parameter's dynamics case")
    p.add_argument("--mu", type=float, required=True)

    p = add("integrate", cmd_integrate, help="integrate one orbit")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--x0", required=True, help="initial point x,y,z")
    p.add_argument("--t-end", type=float, default=100.0)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--samples", type=int, default=2001)
    p.add_argument("--stride", type=int, default=1)

    p = add("lyapunov", cmd_lyapunov, help="Lyapunov spectrum at one mu")
    p.set_defaults(format="json")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--x0", help="initial point x,y,z (default: standard)")
    p.add_argument("--T", type=float, default=lyapunov.DEFAULT_T)
    p.add_argument("--renorm-dt", type=float,
                   default=lyapunov.DEFAULT_RENORM_DT)
    p.add_argument("--discard", type=float, default=lyapunov.DEFAULT_DISCARD)

    p = add("sweep", cmd_sweep, help="Lyapunov spectra over a mu grid")
    p.add_argument("--from", dest="mu_from", type=float, required=True)
    p.add_argument("--to", dest="mu_to", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--T", type=float, default=lyapunov.DEFAULT_T)

    p = add("manifolds", cmd_manifolds,
            help="trace invariant manifolds of the interior point")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--kind", choices=["unstable", "stable"],
                   default="unstable")
    p.add_argument("--t-end", type=float, default=100.0)
    p.add_argument("--seeds", type=int, default=8)
    p.add_argument("--stride", type=int, default=10)

    p = add("homoclinic", cmd_homoclinic,
            help="stable-to-unstable manifold proximity")
    p.set_defaults(format="json")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--r-exclude", type=float, default=0.05)
    p.add_argument("--t-forward", type=float, default=150.0)
    p.add_argument("--t-backward", type=float, default=120.0)
    p.add_argument("--seeds", type=int, default=12)

    p = add("poincare", cmd_poincare, help="section return map samples")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--returns", type=int, default=10)
    p.add_argument("--t-max", type=float, default=2000.0)
    p.add_argument("--discard", type=float, default=0.0)

    p = add("gallery", cmd_gallery,
            help="export a figure-preset dataset bundle")
    p.add_argument("--preset", required=True,
                   help="'mu=<value>' or 'boundary:mu=<value>'")
    p.add_argument("--outdir", help="bundle directory (default derived)")

    return ap


def _load_config(path):
    opts = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, _, val = line.partition("=")
            opts.append((key.strip().replace("_", "-"), val.strip()))
    return opts


def _merge_config(argv):
    """Inject config-file options before the user's flags so that
    explicit flags override them."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a file argument")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    if not rest:
        raise UsageError("--config requires a subcommand")
    cmd, flags = rest[0], rest[1:]
    injected = []
    for key, val in _load_config(path):
        injected += [f"--{key}", val]
    return [cmd] + injected + flags


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _merge_config(argv)
        parser = build_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return 0 if exc.code == 0 else 1
        out = io.StringIO()
        args.fn(args, out)
        text = out.getvalue()
        if getattr(args, "output", None):
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except Undetermined as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, RuntimeError, ArithmeticError,
            OSError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
