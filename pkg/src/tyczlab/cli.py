"""Command-line front end: every operation as a reproducible subcommand.

Synopsis::

    tycz families
    tycz classify --A 0 --B -1
    tycz tmg --family simanca --lambda 1 --m 1..10 --point r=1
    tycz fit --family hyperbolic --mu 4 --n 1 --m 1..10 --point r=0.3 --basis 1,0
    tycz curvature --p 2 --point x1=0,x2=0
    tycz inducible --family an0vii --zeta 0.3333333333333333 --mu 3 --h-max 40
    tycz balanced --family an0v --lambda 2 --mu 4 --xi 0.5 --max-degree 12
    tycz szego --profile "m^2 + 1/m" --n 2 --logterm
    tycz selftest

Machine-readable results go to stdout (CSV with 17 significant digits, or
JSON with sorted keys); progress and diagnostics go to stderr.  Exit codes:
0 success, 1 usage error, 2 computation error.  A JSON config file mirroring
the flags can be passed with --config; explicit flags win.  The environment
variable TYCZ_PRECISION={double|extended} selects the jet precision used by
the scans.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance
from .bergman import distortion_series, fit_poly_in_m
from .errors import TyczError
from .geometry import curvature_report
from .potentials import (
    FamilyParams,
    RadialPotential,
    ReinhardtPotential,
    family_potential,
    family_registry,
    pdomain_potential,
)
from .projectivity import (
    balanced_check,
    derivative_sign_scan,
    integer_root_test,
    known_inducible,
)
from .psi import PsiProfile, classify_psi, profile_of_family, y_limit_points
from .szego import DistortionProfile, logterm_fit, phi_series, psi_h_probe

USAGE_ERROR = 1
COMPUTE_ERROR = 2


def _fmt(x):
    """17 significant digits: enough to reproduce downstream fits bit-for-bit."""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _add_potential_flags(p):
    p.add_argument("--family", help="catalog family tag (see `tycz families`)")
    p.add_argument("--lambda", dest="lam", type=float, help="family parameter λ")
    p.add_argument("--mu", type=float, help="family parameter μ")
    p.add_argument("--xi", type=float, help="family parameter ξ")
    p.add_argument("--zeta", type=float, help="family parameter ζ")
    p.add_argument("--kappa", type=float, help="family parameter κ")
    p.add_argument("--p", type=float, help="p-domain exponent (Reinhardt potential)")
    p.add_argument("--n", type=int, default=2, help="complex dimension (1 or 2)")
    p.add_argument("--potential-json", help="JSON file describing the potential")


def _add_io_flags(p):
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--degree-cap", type=int, default=64)


def _potential_from_args(args):
    if getattr(args, "potential_json", None):
        with open(args.potential_json) as fh:
            desc = json.load(fh)
        if "x2_upper" in desc or desc.get("p") is not None:
            return ReinhardtPotential.from_json(desc)
        return RadialPotential.from_json(desc)
    if getattr(args, "p", None) is not None:
        return pdomain_potential(args.p)
    if not getattr(args, "family", None):
        raise TyczError("no potential given: use --family, --p or --potential-json")
    params = FamilyParams(lam=args.lam, mu=args.mu, xi=args.xi,
                          zeta=args.zeta, kappa=args.kappa)
    return family_potential(args.family, params, n=args.n)


def _parse_points(texts, pot):
    pts = []
    for text in texts:
        for chunk in text.split(";"):
            fields = dict(kv.split("=") for kv in chunk.split(","))
            if "r" in fields:
                pts.append(float(fields["r"]))
            else:
                pts.append((float(fields.get("x1", 0.0)), float(fields.get("x2", 0.0))))
    if not pts:
        pts = [1.0 if isinstance(pot, RadialPotential) else (0.2, 0.1)]
    return pts


def _parse_m_range(text):
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    if "," in text:
        return [int(x) for x in text.split(",")]
    return [int(text)]


def _emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _point_label(pt):
    # ';' keeps the label a single CSV field
    if isinstance(pt, tuple):
        return f"x1={_fmt(pt[0])};x2={_fmt(pt[1])}"
    return f"r={_fmt(pt)}"


def _pot_label(pot):
    if isinstance(pot, ReinhardtPotential):
        return pot.label, {}
    return pot.label, (pot.params.to_json() if pot.params is not None else {})


def _params_csv(params: dict) -> str:
    return ";".join(f"{k}={_fmt(v)}" for k, v in sorted(params.items()))


# -- subcommands -------------------------------------------------------------


def cmd_families(args):
    rows = []
    for fid, fam in sorted(family_registry().items(), key=lambda kv: kv[0].value):
        names = [n for n, f in
                 [("an0fs", "fubini_study"), ("an0hyp", "hyperbolic"),
                  ("an0iii", "case11a"), ("an0iv", "case6"), ("an0v", "case7"),
                  ("an0vi", "case8"), ("an0vii", "case9"), ("an0viii", "case10a")]
                 if f == fid.value]
        rows.append({"family": fid.value, "aliases": ",".join(names),
                     "required": ",".join(fam.required),
                     "optional": ",".join(sorted(fam.defaults)),
                     "description": fam.description})
    if args.format == "json":
        _emit(args, json.dumps(rows, indent=2, sort_keys=True) + "\n")
    else:
        lines = ["family,aliases,required,optional,description"]
        lines += [",".join([r["family"], r["aliases"], r["required"],
                            r["optional"], f"\"{r['description']}\""]) for r in rows]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_classify(args):
    profile = PsiProfile(A=args.A, B=args.B, C=args.C, n=args.n)
    fid, params = classify_psi(profile)
    payload = {"family": fid.value, "params": params.to_json(),
               "free": [f for f in ("xi", "kappa") if getattr(params, f) is None],
               "csck_scalar": profile.csck_scalar(), "a3_zero": profile.a3_zero}
    if args.format == "json":
        _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    else:
        ptxt = ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(params.to_json().items()))
        _emit(args, f"{fid.value}" + (f", {ptxt}" if ptxt else "") + "\n")
    return 0


def cmd_tmg(args):
    pot = _potential_from_args(args)
    m_grid = _parse_m_range(args.m)
    points = _parse_points(args.point or [], pot)
    label, params = _pot_label(pot)
    rows = []
    for pt in points:
        print(f"tmg: {label} at {_point_label(pt)} over {len(m_grid)} levels",
              file=sys.stderr)
        ser = distortion_series(pot, m_grid, pt, tol=args.tol,
                                degree_cap=args.degree_cap)
        for m, val in zip(ser.m_grid, ser.values):
            rows.append((label, params, _point_label(pt), m, val))
    if args.format == "json":
        payload = [{"family": r[0], "params": r[1], "point": r[2],
                    "m": r[3], "T": r[4]} for r in rows]
        _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    else:
        lines = ["family,params,point,m,T"]
        lines += [f"{r[0]},{_params_csv(r[1])},{r[2]},{r[3]},{_fmt(r[4])}"
                  for r in rows]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_fit(args):
    pot = _potential_from_args(args)
    m_grid = _parse_m_range(args.m)
    pt = _parse_points(args.point or [], pot)[0]
    basis = tuple(int(b) for b in args.basis.split(","))
    ser = distortion_series(pot, m_grid, pt, tol=args.tol, degree_cap=args.degree_cap)
    fit = fit_poly_in_m(ser, basis, tol=args.fit_tol)
    label, params = _pot_label(pot)
    payload = {"family": label, "params": params,
               "point": _point_label(pt), "series": ser.to_json(),
               "fit": fit.to_json()}
    _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def cmd_curvature(args):
    pot = _potential_from_args(args)
    points = _parse_points(args.point or [], pot)
    label, params = _pot_label(pot)
    reports = [curvature_report(pot, pt) for pt in points]
    if args.format == "json":
        _emit(args, json.dumps([r.to_json() for r in reports], sort_keys=True) + "\n")
    else:
        lines = ["family,params,point,scal,ric_norm2,riem_norm2,lap_scal,a1,a2"]
        for pt, r in zip(points, reports):
            lines.append(",".join([label, _params_csv(params), _point_label(pt),
                                   _fmt(r.scal), _fmt(r.ric_norm2), _fmt(r.riem_norm2),
                                   _fmt(r.lap_scal), _fmt(r.a1), _fmt(r.a2)]))
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_inducible(args):
    pot = _potential_from_args(args)
    precision = os.environ.get("TYCZ_PRECISION", "double")
    verdict = derivative_sign_scan(pot, h_max=args.h_max, precision=precision)
    payload = {"scan": verdict.to_json()}
    if pot.family is not None:
        prof = profile_of_family(pot.family, pot.params)
        root = integer_root_test(prof, y_limit_points(pot.family, pot.params))
        payload["integer_root_test"] = root.to_json()
        payload["catalog_inducible"] = known_inducible(pot.family, pot.params)
    _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    if verdict.obstructed:
        w = verdict.witness
        print(f"obstructed: d^{w.h} e^f / dr^{w.h} < 0 at r = {w.r:g}", file=sys.stderr)
    else:
        print("no obstruction found (bounded search, not a proof)", file=sys.stderr)
    return 0


def cmd_balanced(args):
    pot = _potential_from_args(args)
    verdict = balanced_check(pot, m=args.m_level, max_degree=args.max_degree)
    if args.format == "json":
        _emit(args, json.dumps(verdict.to_json(), sort_keys=True) + "\n")
    elif verdict.balanced:
        _emit(args, f"Balanced: constant C = {_fmt(verdict.constant)} "
                    f"(checked to degree {verdict.checked_degree})\n")
    else:
        _emit(args, f"NotBalanced: {verdict.reason}\n")
    return 0


def cmd_szego(args):
    if args.probe:
        n, k0, h = (int(x) for x in args.probe.split(","))
        res = psi_h_probe(n, k0, h)
        _emit(args, json.dumps(res.to_json(), sort_keys=True) + "\n")
        return 0
    profile = DistortionProfile.from_string(args.profile, n=args.n, T0=args.T0)
    payload = {"profile": profile.to_json()}
    if args.phi_at is not None:
        value, derivs = phi_series(profile, args.phi_at)
        payload["phi"] = {"t": args.phi_at, "value": value, "derivatives": derivs}
    if args.logterm:
        fit = logterm_fit(profile, fit_window=(args.t_lo, args.t_hi))
        payload["logterm"] = fit.to_json()
    _emit(args, json.dumps(payload, sort_keys=True) + "\n")
    return 0


def cmd_selftest(args):
    results = acceptance.run_all(verbose=True)
    return 0 if all(r.passed for r in results) else COMPUTE_ERROR


def build_parser():
    parser = _Parser(prog="tycz", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON config file mirroring the flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", help="list the catalog families")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_families)

    p = sub.add_parser("classify", help="classify a ψ-profile (A, B)")
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--C", type=float, default=0.0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--format", choices=("csv", "json", "text"), default="text")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("tmg", help="distortion function over an m-grid")
    _add_potential_flags(p)
    _add_io_flags(p)
    p.add_argument("--m", default="1..10", help="m-grid: A..B or comma list")
    p.add_argument("--point", action="append", help="r=VAL or x1=VAL,x2=VAL; repeatable")
    p.set_defaults(fn=cmd_tmg)

    p = sub.add_parser("fit", help="fit T_m against powers of m")
    _add_potential_flags(p)
    _add_io_flags(p)
    p.add_argument("--m", default="1..12")
    p.add_argument("--point", action="append")
    p.add_argument("--basis", default="2,1,0", help="comma list of integer powers")
    p.add_argument("--fit-tol", type=float, default=1e-7)
    p.set_defaults(fn=cmd_fit)

    p = sub.add_parser("curvature", help="curvature invariants and a₁, a₂")
    _add_potential_flags(p)
    _add_io_flags(p)
    p.add_argument("--point", action="append")
    p.set_defaults(fn=cmd_curvature)

    p = sub.add_parser("inducible", help="projective-inducibility obstruction scan")
    _add_potential_flags(p)
    p.add_argument("--h-max", type=int, default=40)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(fn=cmd_inducible)

    p = sub.add_parser("balanced", help="degreewise balanced-metric check")
    _add_potential_flags(p)
    p.add_argument("--m-level", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=16)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_balanced)

    p = sub.add_parser("szego", help="fiber series probes and log-term fit")
    p.add_argument("--profile", default="m^2", help="inline profile, e.g. 'm^2 + 1/m'")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--T0", type=float, default=0.0)
    p.add_argument("--phi-at", type=float, help="evaluate φ and derivatives at t")
    p.add_argument("--logterm", action="store_true")
    p.add_argument("--t-lo", type=float, default=0.55)
    p.add_argument("--t-hi", type=float, default=0.95)
    p.add_argument("--probe", help="ψ_h probe as 'n,k0,h'")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_szego)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # config file provides defaults; explicit flags win by coming later
    if "--config" in argv:
        i = argv.index("--config")
        with open(argv[i + 1]) as fh:
            cfg = json.load(fh)
        del argv[i:i + 2]
        extra = []
        for key, val in sorted(cfg.items()):
            flag = "--" + key.replace("_", "-")
            if isinstance(val, bool):
                if val:
                    extra.append(flag)
            elif isinstance(val, list):
                for v in val:
                    extra += [flag, str(v)]
            else:
                extra += [flag, str(val)]
        if argv:
            argv = [argv[0]] + extra + argv[1:]
        else:
            argv = extra
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except TyczError as exc:
        print(f"tycz: {type(exc).__name__}: {exc}", file=sys.stderr)
        return COMPUTE_ERROR


if __name__ == "__main__":
    sys.exit(main())
