"""Command-line front end.

Data go to standard output (CSV with a header row, or JSON); diagnostics go
to standard error.  Exit codes: 0 success, 1 invalid input, 2 numerical
failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
import traceback

import numpy as np

from . import __version__
from .errors import LevyPKError, NumericalError
from .infimum import a_star_killed, infimum_density_matrix, infimum_density_residue
from .model import classify, load_model, mean, model_to_dict, variance
from .presets import PRESETS, REFERENCE_TARGETS, reference_model
from .roots import find_roots

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_grid(text: str) -> np.ndarray:
    """``a:b:n`` -> n equally spaced points from a to b."""
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"grid must look like a:b:n, got {text!r}") from None
    if n < 1:
        raise UsageError("grid needs n >= 1")
    return np.linspace(a, b, n)


def _model(args):
    if getattr(args, "preset", None):
        return reference_model(args.preset)
    if not getattr(args, "model", None):
        raise UsageError("give a model file or --preset")
    try:
        return load_model(args.model)
    except OSError as exc:
        raise UsageError(f"cannot read model file: {exc}") from None


def _fmt(args, default="csv"):
    return args.format or default


def _emit_table(args, columns, rows, header_lines=()):
    out = sys.stdout
    if _fmt(args) == "json":
        records = [dict(zip(columns, map(_plain, r))) for r in rows]
        meta = dict(header_lines)
        json.dump({**meta, "rows": records} if meta else records, out, indent=2)
        out.write("\n")
        return
    for key, val in header_lines:
        out.write(f"# {key}={val}\n")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    out.write(buf.getvalue())


def _emit_json(obj):
    json.dump(obj, sys.stdout, indent=2, default=_plain)
    sys.stdout.write("\n")


def _plain(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v]
    return v


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_validate(args):
    model = _model(args)
    info = classify(model)
    _emit_json(
        {
            "valid": True,
            "case": info.tag.value,
            "n_roots": info.n_roots,
            "mean": mean(model),
            "variance": variance(model),
            "model": model_to_dict(model),
        }
    )


def cmd_roots(args):
    model = _model(args)
    rs = find_roots(model, args.s, tol=args.tolerance or 1e-10)
    records = rs.to_records()
    if _fmt(args, "json") == "csv":
        _emit_table(args, ["re", "im", "multiplicity"], [[r["re"], r["im"], r["multiplicity"]] for r in records])
    else:
        _emit_json(records)


def cmd_infimum(args):
    model = _model(args)
    y = parse_grid(args.grid)
    if np.any(y > 0):
        raise UsageError("the infimum density lives on y <= 0")
    rs = find_roots(model, args.s)
    if args.method == "matrix":
        dens = infimum_density_matrix(model, rs)
        atom, const = dens.atom0, None
        header_extra = []
    else:
        dens = infimum_density_residue(model, rs)
        atom, const = dens.atom0, dens.constant
        header_extra = [("density_at_0-", dens.at_zero)]
    vals = dens(y)
    header = [("s", args.s), ("atom0", atom)]
    if const is not None and args.s == 0:
        header.append(("constant", const))
    header += header_extra
    _emit_table(args, ["y", "density"], zip(y, vals), header)


def cmd_transform(args):
    from .transforms import b_transform, c_transforms, pi_tilde

    model = _model(args)
    x = parse_grid(args.grid)
    if args.kind == "pi_tilde":
        v = pi_tilde(model, x, complex(args.u, args.w or 0.0))
        _emit_table(args, ["x", "re", "im"], zip(x, v.real, v.imag))
    elif args.kind == "B":
        v = b_transform(model, x, complex(args.u, args.w or 0.0))
        _emit_table(args, ["x", "re", "im"], zip(x, v.real, v.imag))
    else:
        if not args.w:
            raise UsageError("C transforms need --w != 0")
        c1, c2 = c_transforms(model, x, args.u, args.w)
        _emit_table(args, ["x", "value"], zip(x, c1 if args.kind == "C1" else c2))


def cmd_supremum(args):
    from .supremum import sample_supremum, supremum_cdf, supremum_law

    model = _model(args)
    law = supremum_law(model)
    what = args.what
    if what == "triplet":
        _emit_json(law.triplet())
    elif what == "mgf":
        r = parse_grid(args.grid) if args.grid else np.linspace(-2.0, 0.0, 11)
        if args.imag:
            r = 1j * r
        m = law.mgf(r)
        _emit_table(args, ["r_re", "r_im", "mgf_re", "mgf_im"], zip(np.real(r), np.imag(r), m.real, m.imag))
    elif what == "cdf":
        x = parse_grid(args.grid) if args.grid else np.linspace(0.0, 10.0, 101)
        kw = {"tol": args.tolerance} if args.tolerance else {}
        _emit_table(args, ["x", "cdf"], zip(x, supremum_cdf(law, x, **kw)))
    else:
        draws = sample_supremum(law, args.seed, args.n)
        _emit_table(args, ["x"], ([v] for v in draws), [("seed", args.seed), ("n", args.n)])


def cmd_montecarlo(args):
    from .montecarlo import SimConfig, simulate_sup
    from .supremum import supremum_cdf, supremum_law

    model = _model(args)
    horizon = args.horizon if args.horizon else 20.0 / abs(mean(model)) if mean(model) < 0 else 1.0
    cfg = SimConfig(horizon_T=horizon, n_paths=args.paths, seed=args.seed)
    law = supremum_law(model)
    x = parse_grid(args.grid) if args.grid else None
    res = simulate_sup(model, cfg, x_grid=x, analytic_cdf=lambda q: supremum_cdf(law, q), gamma=law.gamma)
    for note in res.warnings:
        print(f"warning: {note}", file=sys.stderr)
    header = [("paths", res.n_paths), ("horizon", res.horizon_used), ("bias_bound", res.bias_bound)]
    _emit_table(
        args,
        ["x", "empirical_cdf", "se", "analytic_cdf", "z_score"],
        zip(res.x, res.empirical_cdf, res.se, res.analytic_cdf, res.z_score),
        header,
    )


def reference_report(with_mc=False, fig_points=201, seed=0):
    """Computes the reference-example quantities and checks them against three-decimal reference values."""
    from .infimum import limit_density
    from .supremum import supremum_cdf, supremum_law

    model = reference_model("halfnormal_oscillating")
    t0 = time.perf_counter()
    rs = find_roots(model, 0.0)
    root_time = time.perf_counter() - t0
    dens = limit_density(model, rs)
    law = supremum_law(model, rs)
    cplx = [r.value for r in rs.roots if r.value.imag != 0]
    real = [r.value.real for r in rs.roots if r.value.imag == 0 and r.value != 0]
    pair = [f for f in dens.fused() if "w" in f][0]
    term = [f for f in dens.fused() if "rate" in f][0]
    got = {
        "r2_re": cplx[0].real,
        "r2_im": abs(cplx[0].imag),
        "r4": real[0],
        "const": dens.constant,
        "coef_r4": term["coeffs"][0],
        "cos": pair["cos"][0],
        "sin": pair["sin"][0],
        "a_star": law.a_star,
        "one_minus_rho": 1 - law.rho,
        "c_star": law.c_star,
    }
    checks = []
    for key, (target, tol) in REFERENCE_TARGETS.items():
        checks.append(
            {"quantity": key, "value": got[key], "target": target, "tol": tol, "pass": abs(got[key] - target) <= tol}
        )
    checks.append(
        {"quantity": "root_time_s", "value": root_time, "target": 5.0, "tol": 0.0, "pass": root_time < 5.0}
    )
    mu = mean(model)
    checks.append(
        {"quantity": "const_vs_1/|mu|", "value": dens.constant, "target": 1 / abs(mu), "tol": 1e-6,
         "pass": abs(dens.constant - 1 / abs(mu)) <= 1e-6}
    )
    x = np.linspace(0.0, 10.0, fig_points)
    f0 = law.f0(np.where(x == 0, 1e-12, x))
    report = {
        "roots": rs.to_records(),
        "mean": mu,
        "infimum_limit": {"constant": dens.constant, "atom": dens.atom0, "terms": dens.fused()},
        "a_star": law.a_star,
        "one_minus_rho": 1 - law.rho,
        "c_star": law.c_star,
        "f0_grid": {"x": x.tolist(), "f0": f0.tolist()},
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks),
    }
    if with_mc:
        from .montecarlo import SimConfig, simulate_sup

        res = simulate_sup(model, SimConfig(horizon_T=100.0, n_paths=100_000, seed=seed),
                           analytic_cdf=lambda q: supremum_cdf(law, q), gamma=law.gamma)
        report["montecarlo"] = {
            "x": res.x.tolist(),
            "empirical_cdf": res.empirical_cdf.tolist(),
            "se": res.se.tolist(),
            "analytic_cdf": res.analytic_cdf.tolist(),
            "z_score": res.z_score.tolist(),
            "max_abs_z": float(np.max(np.abs(res.z_score))),
        }
    return report


def cmd_reproduce(args):
    rep = reference_report(with_mc=args.mc, seed=args.seed)
    if args.json or _fmt(args, "text") == "json":
        _emit_json(rep)
    else:
        out = sys.stdout
        out.write("roots r_k (actual roots are -r_k):\n")
        for r in rep["roots"]:
            out.write(f"  {r['re']: .6f} {r['im']:+.6f}i  (multiplicity {r['multiplicity']})\n")
        lim = rep["infimum_limit"]
        out.write(f"limit density constant: {lim['constant']:.6f}\n")
        for t in lim["terms"]:
            if "rate" in t:
                out.write(f"  {t['coeffs'][0]:.6f} exp({t['rate']:.6f} y)\n")
            else:
                out.write(
                    f"  exp({t['v']:.6f} y) ({t['cos'][0]:.6f} cos({t['w']:.6f} y) + {t['sin'][0]:.6f} sin({t['w']:.6f} y))\n"
                )
        out.write(f"a* = {rep['a_star']:.6f}, 1 - rho = {rep['one_minus_rho']:.6f}, c* = {rep['c_star']:.6f}\n")
        out.write("checks:\n")
        for c in rep["checks"]:
            flag = "PASS" if c["pass"] else "FAIL"
            out.write(f"  {flag} {c['quantity']}: {c['value']:.6g} (target {c['target']} +/- {c['tol']})\n")
        out.write("F0 density grid (x, f0):\n")
        for xv, fv in zip(rep["f0_grid"]["x"], rep["f0_grid"]["f0"]):
            out.write(f"{xv:.4f} {fv:.8e}\n")
        if "montecarlo" in rep:
            mc = rep["montecarlo"]
            out.write("Monte Carlo (x, empirical, se, analytic, z):\n")
            for row in zip(mc["x"], mc["empirical_cdf"], mc["se"], mc["analytic_cdf"], mc["z_score"]):
                out.write("  {:.4f} {:.5f} {:.5f} {:.5f} {:+.2f}\n".format(*row))
    if not rep["all_pass"]:
        raise _ChecksFailed()


class _ChecksFailed(NumericalError):
    def __str__(self):
        return "reference checks failed"


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: exit code 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _join_grid(argv):
    # "--grid -2:0:5" would otherwise be read as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--grid":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--grid={nxt}")
        else:
            out.append(tok)
    return out


def build_parser():
    p = _Parser(prog="levypk", description="Supremum laws of Lévy processes with two-sided jumps.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=["csv", "json"], default=None,
                   help="output format (tables default to csv, roots and reports to json)")
    p.add_argument("--tolerance", type=float, default=None, help="override the default numerical tolerance")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_model(sp):
        sp.add_argument("model", nargs="?", help="model JSON file")
        sp.add_argument("--preset", choices=sorted(PRESETS), help="use a built-in model instead of a file")
        return sp

    sp = with_model(sub.add_parser("validate", help="check a model file and print its case and moments"))
    sp.set_defaults(func=cmd_validate)

    sp = with_model(sub.add_parser("roots", help="roots of k(r) = s in the left half-plane"))
    sp.add_argument("--s", type=float, required=True)
    sp.set_defaults(func=cmd_roots)

    sp = with_model(sub.add_parser("infimum-density", help="density of the killed infimum on a y-grid"))
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--grid", required=True, help="a:b:n with b <= 0")
    sp.add_argument("--method", choices=["residue", "matrix"], default="residue")
    sp.set_defaults(func=cmd_infimum)

    sp = with_model(sub.add_parser("transform", help="integral transforms of the positive jump measure"))
    sp.add_argument("--kind", choices=["pi_tilde", "B", "C1", "C2"], default="pi_tilde")
    sp.add_argument("--u", type=float, default=0.0, help="real part (v for C transforms)")
    sp.add_argument("--w", type=float, default=None, help="imaginary part")
    sp.add_argument("--grid", required=True)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("supremum", help="law of the overall supremum")
    sp.add_argument("what", choices=["triplet", "mgf", "cdf", "sample"])
    with_model(sp)
    sp.add_argument("--grid", default=None)
    sp.add_argument("--imag", action="store_true", help="evaluate the m.g.f. at i times the grid")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", type=int, default=1000)
    sp.set_defaults(func=cmd_supremum)

    sp = with_model(sub.add_parser("montecarlo", help="simulated supremum against the analytic CDF"))
    sp.add_argument("--paths", type=int, default=100_000)
    sp.add_argument("--horizon", type=float, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--grid", default=None)
    sp.set_defaults(func=cmd_montecarlo)

    sp = sub.add_parser("reproduce-paper-example", help="reference example: roots, constants, F0 grid, checks")
    sp.add_argument("--mc", action="store_true", help="add a Monte Carlo cross-check")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_reproduce)
    return p


def _provenance(exc) -> str:
    """Module of the innermost package frame that raised ``exc``."""
    where = "levypk"
    for frame in traceback.extract_tb(exc.__traceback__):
        if "levypk" in frame.filename:
            where = "levypk." + os.path.splitext(os.path.basename(frame.filename))[0]
    return where


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_join_grid(sys.argv[1:] if argv is None else list(argv)))
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        args.func(args)
    except NumericalError as exc:
        print(f"numerical error in {_provenance(exc)} ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (LevyPKError, ValueError, KeyError) as exc:
        print(f"invalid input in {_provenance(exc)} ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
