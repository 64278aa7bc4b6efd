"""Command-line front end: ``hypab <command> ...``.

Every command produces one record (schema version, command, parameters and a
list of rows) written as CSV or JSON. Exit codes: 0 success, 2 usage error,
3 numerical non-convergence, 4 validation failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .core import PhysicalParams, PseudospherePoint
from .errors import ConvergenceError, HypabError
from .flat import InterferenceGeometry, interference_term, legendre_bessel_limit_check
from .kernel import KernelRequest, duality_residual, lambda_profile, partial_wave_sum, winding_sum
from .landau import landau_levels
from .potentials import CoulombParams, HiggsParams, coulomb_bound_spectrum, higgs_bound_spectrum
from .validation import run_suite

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_VALIDATION = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            raise ValueError("non-finite value in output")
        return repr(v)
    return str(v)


def _clean(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def render(record: dict, fmt: str) -> str:
    if fmt == "json":
        rec = {
            "schema_version": record["schema_version"],
            "command": record["command"],
            "parameters": {k: _clean(v) for k, v in record["parameters"].items()},
            "rows": [{k: _clean(v) for k, v in row.items()} for row in record["rows"]],
        }
        return json.dumps(rec, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    buf.write(f"# {record['schema_version']},{record['command']}\r\n")
    rows = record["rows"]
    cols = record.get("columns") or (list(rows[0]) if rows else [])
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in cols])
    return buf.getvalue()


def _record(command: str, parameters: dict, rows: list, columns: list) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "parameters": parameters,
            "rows": rows, "columns": columns}


def _params(args) -> PhysicalParams:
    return PhysicalParams(hbar=args.hbar, mass=args.mass, curvature_radius=args.R)


def _globals(args) -> dict:
    return {"hbar": args.hbar, "mass": args.mass, "R": args.R}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_spectrum(args) -> dict:
    params = _params(args)
    rows = []
    pars = dict(_globals(args), problem=args.problem, lmax=args.lmax)
    for l in range(-args.lmax, args.lmax + 1):
        if args.problem == "landau":
            energies = landau_levels(args.b, params)
            pars["b"] = args.b
        elif args.problem == "higgs":
            h = HiggsParams.create(args.omega, params)
            energies = higgs_bound_spectrum(h, l, args.xi, params, normalizable_only=args.normalizable_only)
            pars.update(omega=args.omega, xi=args.xi, nu=h.nu, normalizable_only=args.normalizable_only)
        else:
            c = CoulombParams.create(args.alpha, params)
            energies = coulomb_bound_spectrum(c, l, args.xi, params)
            pars.update(alpha=args.alpha, xi=args.xi, bohr_radius=c.bohr_radius)
        rows.extend({"N": n, "l": l, "E": float(e)} for n, e in enumerate(energies))
    return _record("spectrum", pars, rows, ["N", "l", "E"])


def _row(term: str, value: complex, n: int | None = None) -> dict:
    return {"term": term, "re": value.real, "im": value.imag, "abs": abs(value)}


def cmd_kernel(args) -> dict:
    params = _params(args)
    req = KernelRequest(PseudospherePoint(args.tau1, 0.0), PseudospherePoint(args.tau2, args.dphi),
                        args.beta, args.xi, l_max=args.lmax, n_max=args.nmax, params=params)
    pars = dict(_globals(args), beta=args.beta, tau1=args.tau1, tau2=args.tau2, dphi=args.dphi,
                xi=args.xi, mode=args.mode, lmax=args.lmax, nmax=args.nmax,
                tail_correction=not args.no_tail_correction)
    rows = []
    pw = None
    if args.mode in ("partial-wave", "both"):
        pw = partial_wave_sum(req)
        rows.append(_row("partial_wave", pw.value))
        rows.append({"term": "partial_wave_truncation", "re": pw.truncation_estimate, "im": 0.0,
                     "abs": pw.truncation_estimate})
    if args.mode in ("winding", "both"):
        prof = lambda_profile(req)
        ws = winding_sum(req, tail_correction=not args.no_tail_correction, profile=prof)
        for n in sorted(ws.terms):
            rows.append(_row(f"n={n}", ws.terms[n]))
        rows.append(_row("winding_tail", ws.tail))
        rows.append(_row("winding_sum", ws.value))
    if args.mode == "both":
        res = duality_residual(pw.value, ws.value, pw.abs_sum)
        rows.append({"term": "duality_residual", "re": res, "im": 0.0, "abs": res})
    return _record("kernel", pars, rows, ["term", "re", "im", "abs"])


def _parse_pairs(text: str):
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            n, l = chunk.split(":")
            pairs.append((int(n), int(l)))
        except ValueError:
            raise UsageError(f"bad pair {chunk!r}; expected n:l")
    if not pairs:
        raise UsageError("no pairs given")
    return pairs


def cmd_interference(args) -> dict:
    params = _params(args)
    if args.xi_steps < 1:
        raise UsageError("--xi-steps must be >= 1")
    pairs = _parse_pairs(args.pairs)
    g = InterferenceGeometry(args.tau1, args.tau2, 0.0, args.dphi, params.R, args.T, params)
    convention = "verbatim" if args.verbatim_sign else ("magnitude" if args.magnitude else "contrast")
    xs = np.linspace(args.xi_start, args.xi_end, args.xi_steps) if args.xi_steps > 1 else np.array([args.xi_start])
    cols = ["xi"] + [f"I[{n}:{l}]" for n, l in pairs]
    rows = []
    for xi in xs:
        row = {"xi": float(xi)}
        for (n, l), c in zip(pairs, cols[1:]):
            row[c] = interference_term(n, l, g, float(xi), convention)
        rows.append(row)
    pars = dict(_globals(args), xi_start=args.xi_start, xi_end=args.xi_end, xi_steps=args.xi_steps,
                pairs=args.pairs, tau1=args.tau1, tau2=args.tau2, dphi=args.dphi, T=args.T,
                convention=convention)
    return _record("interference", pars, rows, cols)


def _floats(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad number list {text!r}")


def cmd_flatlimit(args) -> dict:
    rows = []
    for mu in _floats(args.mu):
        for z in _floats(args.z):
            for nu in _floats(args.nu):
                c = legendre_bessel_limit_check(mu, z, nu)
                rows.append({"mu": mu, "z": z, "nu": nu, "lhs": c.lhs, "rhs": c.rhs, "rel_dev": c.rel_dev})
    pars = dict(_globals(args), mu=args.mu, z=args.z, nu=args.nu)
    return _record("flatlimit", pars, rows, ["mu", "z", "nu", "lhs", "rhs", "rel_dev"])


def cmd_validate(args) -> dict:
    results = run_suite(args.suite)
    rows = [{"suite": r.suite, "check": r.check, "residual": float(r.residual) if math.isfinite(r.residual) else 1e308,
             "tolerance": float(r.tolerance), "passed": r.passed} for r in results]
    rec = _record("validate", dict(_globals(args), suite=args.suite), rows,
                  ["suite", "check", "residual", "tolerance", "passed"])
    rec["all_passed"] = all(r.passed for r in results)
    return rec


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypab", description="Aharonov-Bohm effect on the hyperbolic plane")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--R", type=float, default=1.0, help="curvature radius")
    p.add_argument("--seedless", action="store_true",
                   help="reserved; nothing is random, so setting it is an error")
    p.add_argument("--out", default=None, help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="discrete spectra")
    sp.add_argument("problem", choices=("landau", "higgs", "coulomb"))
    sp.add_argument("--b", type=float, default=0.0)
    sp.add_argument("--omega", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--xi", type=float, default=0.0)
    sp.add_argument("--lmax", type=int, default=0)
    sp.add_argument("--normalizable-only", action="store_true")
    sp.set_defaults(func=cmd_spectrum)

    kp = sub.add_parser("kernel", help="Euclidean AB propagator")
    kp.add_argument("--beta", type=float, default=0.5)
    kp.add_argument("--tau1", type=float, default=1.0)
    kp.add_argument("--tau2", type=float, default=1.0)
    kp.add_argument("--dphi", type=float, default=0.7)
    kp.add_argument("--xi", type=float, default=0.0)
    kp.add_argument("--mode", choices=("partial-wave", "winding", "both"), default="both")
    kp.add_argument("--lmax", type=int, default=40)
    kp.add_argument("--nmax", type=int, default=5)
    kp.add_argument("--no-tail-correction", action="store_true")
    kp.set_defaults(func=cmd_kernel)

    ip = sub.add_parser("interference", help="flux sweep of winding interference terms")
    ip.add_argument("--xi-start", type=float, default=0.0)
    ip.add_argument("--xi-end", type=float, default=1.0)
    ip.add_argument("--xi-steps", type=int, default=5)
    ip.add_argument("--pairs", default="0:-1")
    ip.add_argument("--tau1", type=float, default=1.0)
    ip.add_argument("--tau2", type=float, default=1.0)
    ip.add_argument("--dphi", type=float, default=math.pi)
    ip.add_argument("--T", type=float, default=1.0, help="real time")
    g = ip.add_mutually_exclusive_group()
    g.add_argument("--verbatim-sign", action="store_true", help="signed prefactor 2(m/2 pi i hbar T)^2")
    g.add_argument("--magnitude", action="store_true", help="prefactor 2(m/2 pi hbar T)^2")
    ip.set_defaults(func=cmd_interference)

    fp = sub.add_parser("flatlimit", help="Legendre to Bessel limit table")
    fp.add_argument("--mu", default="0,0.3,0.5,1")
    fp.add_argument("--z", default="0.5,2")
    fp.add_argument("--nu", default="500,1000,2000")
    fp.set_defaults(func=cmd_flatlimit)

    vp = sub.add_parser("validate", help="run oracle suites")
    vp.add_argument("--suite", choices=("all", "specfun", "kernel", "limits", "spectra"), default="all")
    vp.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seedless:
        parser.error("--seedless is reserved: no command uses randomness")
    try:
        record = args.func(args)
        text = render(record, args.format)
    except UsageError as exc:
        parser.error(str(exc))
    except ConvergenceError as exc:
        print(f"hypab: not converged: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (HypabError, ValueError) as exc:
        print(f"hypab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    if record.get("all_passed") is False:
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
