"""Command-line front end.

Every subcommand builds a family, runs its checks and writes a JSON report
(schema "1").  Rationals appear as ``"num/den"`` strings and keys are sorted,
so a fixed config and seed always produce the same bytes.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error
(including an on-discriminant base point), 3 certificate or truncation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction

from .deformations import (
    ICISFamily,
    NodeFamily,
    axes_family,
    icis_tangent_fields,
    mf_quotient_curve,
    mf_quotient_icis,
    tprime_matrix,
    unfolding_basis,
)
from .exact import MultiPoly, ParseError, RationalFunction, SeriesTruncationError, det_bareiss, parse_poly
from .exact.parse import identifiers
from .fmanifold import (
    DimensionDropError,
    build_fstructure_curve,
    build_fstructure_node,
    check_axioms,
    check_euler,
    check_euler_curve,
    check_integrability,
    mutate,
    random_point,
    restrict_to_stratum,
    semisimplicity_at,
)
from .frobenius_node import (
    OnDiscriminantError,
    SingularFiberError,
    calibrate_conventions,
    check_pairing_shape,
    default_truncation,
    euler_check,
    fiber_restrict,
    flat_coordinates,
    flat_pairing_check,
    pairing_matrix,
    residue_theorem_check,
    weight_check,
)
from .groebner import GroebnerBasis
from .quotients import CertificateError

SCHEMA = "1"
TRUNCATION_ENV = "SINGFROB_TRUNCATION"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CERT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# config and report plumbing
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    kind: str = "node"
    p: int = 2
    q: int = 2
    r: int = 2
    base: list = None
    trunc: int = None
    samples: int = 5
    seed: int = 0
    out: str = None
    g: list = field(default_factory=list)
    f: str = None
    vars: list = None
    suite: str = "default"
    mutate: bool = False

    @classmethod
    def from_json(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise UsageError(f"unknown config keys {unknown}")
        return cls(**data)

    def echo(self):
        out = asdict(self)
        out.pop("out")
        return out


def parse_rational(text):
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not an exact rational: {text!r}") from exc


def parse_base(values, names):
    """Comma list in ``names`` order or ``name=value`` pairs."""
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    values = list(values)
    if values and all(isinstance(v, str) and "=" in v for v in values):
        pairs = dict(v.split("=", 1) for v in values)
        unknown = sorted(set(k.strip() for k in pairs) - set(names))
        if unknown:
            raise UsageError(f"unknown base coordinates {unknown}; expected {list(names)}")
        point = {k: Fraction(0) for k in names}
        point.update({k.strip(): parse_rational(v) for k, v in pairs.items()})
        return point
    if len(values) != len(names):
        raise UsageError(f"base point needs {len(names)} values {list(names)}, got {len(values)}")
    return {k: parse_rational(v) for k, v in zip(names, values)}


def q(x):
    """Exact rational as a ``num/den`` string."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return q(obj)
    if isinstance(obj, (MultiPoly, RationalFunction)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(report):
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def _check(passed, **data):
    return {"passed": bool(passed), **data}


def _finish(command, cfg, checks, artifacts, extra=None):
    report = {
        "schema": SCHEMA,
        "command": command,
        "config": cfg.echo(),
        "checks": checks,
        "artifacts": artifacts,
        "passed": all(c["passed"] for c in checks.values()),
    }
    if extra:
        report.update(extra)
    return report


def _truncation(cfg, p, q_):
    if cfg.trunc is not None:
        return int(cfg.trunc)
    env = os.environ.get(TRUNCATION_ENV)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"{TRUNCATION_ENV} must be an integer, got {env!r}") from exc
    return default_truncation(p, q_)


def _generic_semisimplicity(structures_at, count, rng, base, avoid):
    """Count squarefree characteristic polynomials over random points."""
    good, bad, skipped = 0, [], 0
    for _ in range(count):
        for _attempt in range(10):
            pt = random_point(base, rng, avoid_zero=avoid)
            try:
                args = structures_at(pt)
                break
            except (DimensionDropError, SingularFiberError):
                skipped += 1
        else:
            raise DimensionDropError("could not find a generic sample point")
        ok, cp = semisimplicity_at(*args)
        if ok:
            good += 1
        else:
            bad.append({"point": pt, "char_poly": cp})
    allowed = max(1, count // 20)
    return _check(count - good <= allowed, squarefree=good, total=count, non_semisimple=bad, redrawn=skipped)


# ---------------------------------------------------------------------------
# node
# ---------------------------------------------------------------------------


def cmd_node(cfg):
    fam = NodeFamily(cfg.p, cfg.q)
    base = cfg.base if cfg.base is not None else ["1"] + ["0"] * (len(fam.params) - 1)
    point = parse_base(base, fam.params)
    if point["eps"] == 0:
        raise OnDiscriminantError("base point has eps = 0, which lies on the discriminant")
    N = _truncation(cfg, fam.p, fam.q)
    rng = random.Random(cfg.seed)
    checks, art = {}, {}

    T = tprime_matrix(fam)
    det = det_bareiss(T)
    art["tprime_matrix"] = T
    art["tprime_det"] = det
    checks["tprime_invertible"] = _check(det.evaluate(point) != 0, det_at_base=det.evaluate(point),
                                         shape=[len(T), len(T[0])])

    fm = fiber_restrict(fam, point)
    if not fm.is_smooth():
        raise SingularFiberError("the fiber over the base point is singular (H has a repeated root)")
    pm = pairing_matrix(fm)
    art["pairing"] = pm
    shape = check_pairing_shape(pm, fam, point)
    structural = {k: v for k, v in shape.items() if isinstance(v, bool) and k != "corners_equal_displayed"}
    checks["pairing_shape"] = _check(all(structural.values()) and shape["corner_inf1"] == shape["corner_inf2"],
                                     **shape)
    frame = fam.frame
    res = [[residue_theorem_check(fm, u, v) for v in frame] for u in frame]
    checks["residue_theorem"] = _check(all(all(r) for r in res))

    chart = flat_coordinates(fm, N)
    art["flat_coordinates"] = chart
    flat = flat_pairing_check(fam, point, N)
    checks["flat_pairing"] = _check(flat["passed"], **flat["checks"], flat_matrix=flat["flat_matrix"])

    fs = build_fstructure_node(fam)
    checks["euler_class"] = _check(euler_check(fam))
    checks["euler_lie"] = _check(check_euler(fs)["passed"])
    wc = weight_check(fam)
    checks["weights"] = _check(wc["degrees_match"], entries=wc["entries"], lie_E_eigenvalue=wc["lie_E_eigenvalue"])
    target = mutate(fs, cfg.seed) if cfg.mutate else fs
    ax = check_axioms(target)
    checks["axioms"] = _check(ax["passed"], **{k: v for k, v in ax.items() if k != "passed"})
    integ = check_integrability(fs, [random_point(fs.base, rng) for _ in range(cfg.samples)])
    checks["integrability"] = integ

    ss, cp = semisimplicity_at(fs, point)
    art["semisimple_at_base"] = ss
    art["char_poly_at_base"] = cp
    checks["generic_semisimplicity"] = _generic_semisimplicity(
        lambda pt: (fs, pt), max(cfg.samples, 20), rng, fs.base, ("eps",))

    strat = restrict_to_stratum(fs, "eps")
    sax = check_axioms(strat)
    checks["stratum"] = _check(sax["passed"] and strat.rank == fam.p + fam.q - 1, dimension=strat.rank,
                               unit=strat.frame[strat.unit], killed=strat.meta["killed"])
    art["fstructure"] = fs
    conv = calibrate_conventions(fam)
    return _finish("node", cfg, checks, art, {"conventions": conv, "truncation": N})


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------


def cmd_curve(cfg):
    if min(cfg.p, cfg.q, cfg.r) < 2:
        raise UsageError("p, q and r must be at least 2")
    fam = axes_family(cfg.p, cfg.q, cfg.r)
    rng = random.Random(cfg.seed)
    lambdas = ("l1", "l2", "l3")
    A = mf_quotient_curve(fam)
    ub = unfolding_basis(fam, A)
    checks, art = {}, {}
    art["Mf_dimension"] = A.dimension
    art["Mf_basis"] = A.basis_polys()
    art["unfolding_basis"] = ub
    art["degree_bound"] = A.degree_bound
    n = cfg.p + cfg.q + cfg.r
    checks["Mf_dimension"] = _check(A.dimension == n + 1, expected=n + 1)
    checks["unfolding_size"] = _check(len(ub) == n - 2 and A.dimension == len(ub) + 3, expected=n - 2)

    if cfg.base is not None:
        point = parse_base(cfg.base, fam.base_coordinates)
    else:
        point = random_point(fam.base_coordinates, rng, avoid_zero=lambdas)
    fs = target = build_fstructure_curve(fam, point, A.dimension)
    if cfg.mutate:
        target = mutate(fs, cfg.seed)
    ax = check_axioms(target)
    checks["axioms"] = _check(ax["passed"], **{k: v for k, v in ax.items() if k != "passed"})
    ec = check_euler_curve(fam, point)
    checks["euler"] = _check(ec["passed"], **{k: v for k, v in ec.items() if k != "passed"})
    ss, cp = semisimplicity_at(fs)
    art["point"] = point
    art["semisimple_at_point"] = ss
    art["char_poly_at_point"] = cp
    art["fstructure"] = fs
    checks["generic_semisimplicity"] = _generic_semisimplicity(
        lambda pt: (build_fstructure_curve(fam, pt, A.dimension), None),
        max(cfg.samples, 20), rng, fam.base_coordinates, lambdas)
    return _finish("curve", cfg, checks, art)


# ---------------------------------------------------------------------------
# icis
# ---------------------------------------------------------------------------


def _icis_family(cfg):
    if not cfg.g:
        raise UsageError("at least one --g equation is needed")
    if not cfg.f:
        raise UsageError("--f is required")
    texts = list(cfg.g) + [cfg.f]
    if cfg.vars:
        names = tuple(cfg.vars)
    else:
        names = tuple(sorted(set().union(*(identifiers(t) for t in texts))))
    if not names:
        raise UsageError("no variables found; pass --vars")
    gs = [parse_poly(t, names) for t in cfg.g]
    return ICISFamily(gs, parse_poly(cfg.f, names), names)


def cmd_icis(cfg):
    fam = _icis_family(cfg)
    A = mf_quotient_icis(fam)
    checks, art = {}, {}
    art["ambient"] = list(fam.ambient)
    art["Mf_dimension"] = A.dimension
    art["Mf_basis"] = A.basis_polys()
    try:
        fields_ = icis_tangent_fields(fam, include_f=True)
        kind = "tangent to the fibers of f on X"
    except ValueError:
        fields_ = icis_tangent_fields(fam, include_f=False) if len(fam.gs) < len(fam.ambient) else []
        kind = "tangent to X"
    gb = GroebnerBasis(fam.ideal_gens())
    tangent = all(gb.contains(xi(g)) for xi in fields_ for g in fam.gs)
    art["tangent_fields"] = [{v: xi.component(v) for v in fam.ambient} for xi in fields_]
    checks["tangency"] = _check(tangent, fields=len(fields_), kind=kind)
    return _finish("icis", cfg, checks, art)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

NODE_SUITE = [(2, 2), (2, 3)]
CURVE_SUITE = [(2, 2, 2)]
ICIS_SUITE = [(["y"], "x^3"), (["y"], "x^4")]


def cmd_verify(cfg):
    if cfg.suite not in ("default", "node-only"):
        raise UsageError(f"unknown suite {cfg.suite!r}")
    runs = {}
    for p, q_ in NODE_SUITE:
        sub = RunConfig(kind="node", p=p, q=q_, samples=cfg.samples, seed=cfg.seed, trunc=cfg.trunc,
                        mutate=cfg.mutate)
        runs[f"node({p},{q_})"] = cmd_node(sub)
    if cfg.suite == "default":
        for p, q_, r in CURVE_SUITE:
            sub = RunConfig(kind="curve", p=p, q=q_, r=r, samples=cfg.samples, seed=cfg.seed, mutate=cfg.mutate)
            runs[f"curve({p},{q_},{r})"] = cmd_curve(sub)
        for gs, f in ICIS_SUITE:
            sub = RunConfig(kind="icis", g=gs, f=f, seed=cfg.seed)
            runs[f"icis({','.join(gs)};{f})"] = cmd_icis(sub)
    checks = {name: _check(r["passed"], failed=sorted(k for k, c in r["checks"].items() if not c["passed"]))
              for name, r in runs.items()}
    return _finish("verify", cfg, checks, {})


COMMANDS = {"node": cmd_node, "curve": cmd_curve, "icis": cmd_icis, "verify": cmd_verify}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="singfrob", description="Exact F-manifold checks for deformations of singularities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--samples", type=int, help="number of random sample points")
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--mutate", action="store_true", default=None,
                        help="perturb one structure constant (negative control)")

    sp = sub.add_parser("node", help="deformed node x^p + y^q on xy = eps")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--base", help="eps,a1..,b1..,c as comma-separated rationals")
    sp.add_argument("--trunc", type=int, help=f"series truncation (default p+q+4, or ${TRUNCATION_ENV})")
    common(sp)

    sp = sub.add_parser("curve", help="space curve C_{p,q,r} given by the coordinate axes")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--point", dest="base", help="l1,l2,l3,a..,b..,c..,d values or name=value pairs")
    common(sp)

    sp = sub.add_parser("icis", help="function on a complete intersection")
    sp.add_argument("--g", action="append", help="defining equation; repeat for several")
    sp.add_argument("--f", help="the function")
    sp.add_argument("--vars", help="comma-separated ambient coordinates (default: sorted identifiers)")
    common(sp)

    sp = sub.add_parser("verify", help="run the invariant suite")
    sp.add_argument("--suite", choices=["default", "node-only"])
    sp.add_argument("--trunc", type=int)
    common(sp)
    return parser


def config_from_args(args):
    cfg = RunConfig(kind=args.command)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        data.setdefault("kind", args.command)
        if data["kind"] != args.command:
            raise UsageError(f"config is for {data['kind']!r}, not {args.command!r}")
        cfg = RunConfig.from_json(data)
    for name in ("p", "q", "r", "base", "trunc", "samples", "seed", "out", "g", "f", "suite", "mutate"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    if getattr(args, "vars", None):
        cfg.vars = [v.strip() for v in args.vars.split(",") if v.strip()]
    if isinstance(cfg.base, str):
        cfg.base = [v.strip() for v in cfg.base.split(",") if v.strip()]
    if args.command == "node" and (cfg.p < 2 or cfg.q < 2):
        raise UsageError("p and q must be at least 2")
    return cfg


def run(argv=None):
    """Run the CLI; returns ``(exit code, report or None, text, output path)``."""
    out = None
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        out = cfg.out
        report = COMMANDS[args.command](cfg)
    except (UsageError, ParseError, OnDiscriminantError, SingularFiberError, DimensionDropError) as exc:
        return EXIT_USAGE, None, f"error: {exc}", out
    except (CertificateError, SeriesTruncationError) as exc:
        bound = getattr(exc, "degree_bound", None)
        extra = f" (degree bound {bound})" if bound is not None else ""
        return EXIT_CERT, None, f"certificate failure: {exc}{extra}", out
    text = dumps_report(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    return (EXIT_OK if report["passed"] else EXIT_FAIL), report, text, out


def main(argv=None):
    code, report, text, out = run(argv)
    if report is None:
        print(text, file=sys.stderr)
        return code
    if not out:
        sys.stdout.write(text)
    failed = sorted(k for k, c in report["checks"].items() if not c["passed"])
    summary = "all checks passed" if not failed else f"failed: {', '.join(failed)}"
    print(f"{report['command']}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
