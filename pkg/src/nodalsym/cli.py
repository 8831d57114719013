"""Command-line front end: ``nodalsym <subcommand> ...``.

Exit codes: 0 success, 1 a mathematical failure tag (for instance a
non-positive leading coefficient or an identically zero resultant),
2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (GeneralTypeWarning, SurfaceSpec, bound_chi, bound_h0, bound_partial_chi,
                     bound_partial_h0, certify, lmin_quadrics, presets, preset)
from .chern import euler_log_twist_delta, euler_sym_cotangent, euler_sym_twist, log_cotangent_bundle, log_lattice
from .discrepancies import discrepancies
from .exact.parser import ParseError
from .exact.series import SeriesOrderError
from .local_euler import chi0_a1, chi0_a1_by_kernel, chi0_a1_by_summation, chi1_a1, chi_a1

EXIT_OK, EXIT_FAILURE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _exact(x):
    """Recursively turn numbers into exact strings for JSON."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, dict):
        return {k: _exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_exact(v) for v in x]
    return x


def _emit(args, doc: dict, table_lines: list):
    if args.format == "json":
        print(json.dumps(_exact(doc), ensure_ascii=False, indent=2))
    else:
        for line in table_lines:
            print(line)


def _kv(doc: dict) -> list:
    width = max((len(k) for k in doc), default=0)
    out = []
    for k, v in doc.items():
        if isinstance(v, (list, tuple)):
            v = ", ".join(str(x) for x in v) if v else "-"
        out.append(f"{k.ljust(width)}  {v}")
    return out


# euler ---------------------------------------------------------------------------------

def cmd_euler(args) -> int:
    if args.m < 0:
        raise InputError("--m must be non-negative")
    K2, chi = Fraction(args.k2), Fraction(args.chi)
    doc = {"K2": K2, "chi": chi, "m": args.m}
    if args.log_twist is None:
        doc["euler"] = euler_sym_cotangent(K2, chi, args.m)
    else:
        lat = log_lattice(K2)
        h = args.log_twist
        doc["h"] = h
        doc["euler"] = euler_sym_twist(log_cotangent_bundle(lat, chi), -h * lat.cls("E"),
                                       lat.cls("K"), chi, args.m)
        doc["delta"] = euler_log_twist_delta(args.m, h, K2, chi)
    _emit(args, doc, _kv(doc))
    return EXIT_OK


# local-chi ------------------------------------------------------------------------------

def cmd_local_chi(args) -> int:
    if args.m < 0:
        raise InputError("--m must be non-negative")
    if args.oracle != "closed" and args.which != "chi0":
        raise InputError(f"the {args.oracle} oracle only computes chi0")
    if args.which == "chi0":
        if args.oracle == "closed":
            v = chi0_a1(args.m)
        elif args.oracle == "summation":
            v = chi0_a1_by_summation(args.m)
        else:
            if args.cap is not None and args.cap < 1:
                raise InputError("--cap must be positive")
            cap = args.cap if args.cap is not None else 10
            if args.m > cap:
                raise InputError(f"kernel oracle capped at m <= {cap}; raise --cap to go further")
            v = chi0_a1_by_kernel(args.m, cap=cap)
    elif args.which == "chi1":
        v = chi1_a1(args.m)
    else:
        v = chi_a1(args.m)
    doc = {"m": args.m, "which": args.which, "oracle": args.oracle, "value": v}
    _emit(args, doc, _kv(doc))
    return EXIT_OK


# surfaces and bounds ---------------------------------------------------------------------

def read_surface(path) -> SurfaceSpec:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read surface file {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON in {path}: {e.msg}") from None
    try:
        return SurfaceSpec(int(data["ambient"]), tuple(data["degrees"]), int(data["nodes"]),
                           data.get("name"), data.get("node_type", "A1"))
    except (KeyError, TypeError) as e:
        raise InputError(f"surface file {path} lacks field {e}") from None
    except ValueError as e:
        raise InputError(str(e)) from None


def cmd_bound(args) -> int:
    if args.preset:
        try:
            s = preset(args.preset)
        except KeyError as e:
            raise InputError(e.args[0]) from None
    else:
        s = read_surface(args.surface)
    r = args.extend_r or 0
    if r < 0 or r > s.nodes:
        raise InputError(f"--extend-r must lie in [0, {s.nodes}]")
    if args.h0_hat is not None:
        if args.threshold:
            raise InputError("--threshold needs a chi-type bound; drop --h0-hat")
        if args.m < 1:
            raise InputError("--m must be at least 1 for h0-type bounds")
        v = bound_partial_h0(args.h0_hat, s.nodes, r, args.m) if r else bound_h0(args.h0_hat, s.nodes, args.m)
        doc = {"surface": s.label(), "method": "h0", "r": r, "m": args.m, "bound": v}
        _emit(args, doc, _kv(doc))
        return EXIT_OK
    if args.threshold:
        rep = certify(s, r)
        doc = rep.to_dict()
        lines = _kv({"surface": s.label(), "method": rep.method, "leading coefficient": rep.leading,
                     "threshold": rep.threshold if rep.threshold is not None else "none",
                     "value": rep.value if rep.value is not None else "-",
                     "stable from": rep.stable_from if rep.stable_from is not None else "-",
                     "notes": rep.notes})
        _emit(args, doc, lines)
        return EXIT_OK if rep.threshold is not None else EXIT_FAILURE
    if args.m < 3:
        raise InputError("chi-type bounds are valid for m >= 3")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", GeneralTypeWarning)
        prof = bound_partial_chi(s, r) if r else bound_chi(s)
    doc = {"surface": s.label(), "method": prof.method, "m": args.m, "bound": prof(args.m),
           "notes": [str(w.message) for w in caught]}
    _emit(args, doc, _kv(doc))
    return EXIT_OK


def cmd_lmin(args) -> int:
    ns = [args.ambient] if args.ambient is not None else list(range(6, 11))
    for n in ns:
        if n < 6:
            raise InputError("--ambient must be at least 6")
    rows = [{"ambient": n, "lmin": lmin_quadrics(n)} for n in ns]
    if args.ambient is not None:
        _emit(args, rows[0], [str(rows[0]["lmin"])])
    else:
        _emit(args, {"rows": rows}, ["ambient  lmin"] + [f"{r['ambient']:>7}  {r['lmin']}" for r in rows])
    return EXIT_OK


def cmd_presets(args) -> int:
    rows = []
    for s in sorted(presets(), key=lambda s: s.name):
        d = s.to_dict()
        d["general_type"] = s.general_type
        rows.append(d)
    lines = [f"{'name':<16}{'ambient':>8}  {'degrees':<20}{'nodes':>6}"]
    for d in rows:
        lines.append(f"{d['name']:<16}{d['ambient']:>8}  {str(d['degrees']):<20}{d['nodes']:>6}")
    _emit(args, {"presets": rows}, lines)
    return EXIT_OK


def cmd_discrepancies(args) -> int:
    recs = discrepancies()
    _emit(args, {"discrepancies": [d.to_dict() for d in recs]},
          "\n\n".join(d.to_text() for d in recs).splitlines())
    return EXIT_OK


# forms -------------------------------------------------------------------------------------

def _resolve(path: str) -> str:
    """Map ``builtin:NAME`` to the packaged data file NAME."""
    from .symdiff.io import data_path

    if not path.startswith("builtin:"):
        return path
    name = path[len("builtin:"):]
    p = data_path(name)
    if not p.exists():
        raise InputError(f"no packaged data file {name!r}")
    return str(p)


def _load_forms(spec: str):
    """``PATH`` or ``PATH#LABEL``; ``builtin:NAME`` selects a packaged data file."""
    from .symdiff.io import FormFileError, read_form_file

    path, _, label = spec.partition("#")
    path = _resolve(path)
    try:
        ff = read_form_file(path)
    except FormFileError as e:
        raise InputError(str(e)) from None
    if not label:
        return ff, list(zip(ff.labels(), ff.forms))
    if label.isdigit():
        i = int(label) - 1
        if not 0 <= i < len(ff):
            raise InputError(f"{path} has {len(ff)} forms")
        return ff, [(ff.labels()[i], ff.forms[i])]
    for name, form in zip(ff.labels(), ff.forms):
        if name == label:
            return ff, [(name, form)]
    raise InputError(f"{path} has no form labelled {label!r}")


def _single(spec: str):
    ff, forms = _load_forms(spec)
    if len(forms) != 1:
        raise InputError(f"{spec} holds {len(forms)} forms; select one with #LABEL")
    return ff, forms[0]


def cmd_pullback(args) -> int:
    from .symdiff.forms import FormUndefinedError, InconsistentParametrization, pullback
    from .symdiff.io import FormFileError, read_parametrization

    ff, forms = _load_forms(args.form)
    try:
        p = read_parametrization(_resolve(args.param))
    except FormFileError as e:
        raise InputError(str(e)) from None
    rows = []
    for name, f in forms:
        try:
            pb = pullback(f, p)
        except FormUndefinedError as e:
            raise InputError(f"{name}: {e}") from None
        except (ValueError, InconsistentParametrization) as e:
            raise InputError(f"{name}: {e}") from None
        rows.append({"form": name, "pullback": pb.to_string(), "zero": pb.is_zero()})
    if len(rows) == 1:
        lines = [rows[0]["pullback"]]
    else:
        lines = [f"{r['form']}: {r['pullback']}" for r in rows]
    _emit(args, {"parameter": p.parameter, "results": rows}, lines)
    return EXIT_OK


def cmd_resultant(args) -> int:
    from .symdiff.resultant import IdenticallyZeroResultant, resultant_locus

    _, (n1, f1) = _single(args.form1)
    _, (n2, f2) = _single(args.form2)
    xy = [v.strip() for v in args.vars.split(",")]
    if len(xy) != 2:
        raise InputError("--vars needs two coordinates x,y")
    if f1.ring != f2.ring:
        raise InputError("forms are defined over different rings")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IdenticallyZeroResultant)
            loc = resultant_locus(f1, f2, xy[0], xy[1])
    except ValueError as e:
        raise InputError(str(e)) from None
    root = args.sqrt_name
    doc = {"form1": n1, "form2": n2, "vars": xy, "zero": loc.is_zero,
           "resultant": loc.value.to_string(root),
           "cleared": [d.to_string(root) for d in loc.cleared], "notes": loc.notes}
    lines = _kv({"res": doc["resultant"], "zero": loc.is_zero, "cleared": doc["cleared"],
                 "notes": loc.notes})
    _emit(args, doc, lines)
    return EXIT_FAILURE if loc.is_zero else EXIT_OK


def _load_chart(spec: str, order: int | None):
    from .symdiff.io import FormFileError, read_json
    from .symdiff.nodechart import BUILTIN_CHARTS, NodeChartError, chart_from_dict

    try:
        if spec in BUILTIN_CHARTS:
            return BUILTIN_CHARTS[spec](order) if order else BUILTIN_CHARTS[spec]()
        data = read_json(_resolve(spec))
        return chart_from_dict(data, order or 4)
    except FormFileError as e:
        raise InputError(str(e)) from None
    except NodeChartError as e:
        raise InputError(str(e)) from None


def cmd_node_expand(args) -> int:
    from .symdiff.forms import FormUndefinedError
    from .symdiff.nodechart import _expansion_obstructions, node_expand

    if args.order is not None and args.order < 2:
        raise InputError("--order must be at least 2")
    _, forms = _load_forms(args.form)
    chart = _load_chart(args.chart, args.order)
    results = []
    failed = False
    lines = []
    for name, f in forms:
        try:
            exp = node_expand(f, chart, args.order)
        except FormUndefinedError as e:
            raise InputError(f"{name}: {e}") from None
        except SeriesOrderError as e:
            failed = True
            results.append({"form": name, "error": str(e)})
            lines.append(f"{name}: {e}")
            continue
        except ValueError as e:
            raise InputError(f"{name}: {e}") from None
        obs = _expansion_obstructions(exp)
        rows = [{"t_exponent": o.exponent, "coefficient": o.coefficient.to_string("I"),
                 "monomial": o.monomial()} for o in obs]
        results.append({"form": name, "expansion": exp.to_string(), "order": exp.order,
                        "obstructions": rows})
        if len(forms) > 1:
            lines.append(f"{name}:")
        lines.append(f"expansion: {exp.to_string()}")
        lines.append(f"obstructions: {len(rows)}")
        for r in rows:
            lines.append(f"  t^{r['t_exponent']}  {r['coefficient']}  {r['monomial']}")
    _emit(args, {"chart": args.chart, "results": results}, lines)
    return EXIT_FAILURE if failed else EXIT_OK


# entry point ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--seed", type=int, default=None, help="reserved; no command is randomized")

    ap = argparse.ArgumentParser(prog="nodalsym", description="Symmetric differentials on nodal surfaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("euler", parents=[common], help="chi(S^m cotangent) from K^2 and c2")
    p.add_argument("--k2", required=True, type=Fraction)
    p.add_argument("--chi", required=True, type=Fraction)
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--log-twist", type=int, metavar="H",
                   help="use S^m of the log-cotangent bundle twisted by -H*E, with E^2 = -2")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("local-chi", parents=[common], help="local Euler characteristics of an A1 node")
    p.add_argument("--m", required=True, type=int)
    p.add_argument("--which", choices=("chi0", "chi1", "chi"), default="chi")
    p.add_argument("--oracle", choices=("closed", "summation", "kernel"), default="closed")
    p.add_argument("--cap", type=int, help="largest m accepted by the kernel oracle (default 10)")
    p.set_defaults(func=cmd_local_chi)

    p = sub.add_parser("bound", parents=[common], help="lower bounds and thresholds")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset")
    src.add_argument("--surface", metavar="FILE")
    p.add_argument("--extend-r", type=int, metavar="R", help="require regularity along R exceptional curves")
    p.add_argument("--h0-hat", type=int, metavar="V", help="use a known h0 of the reflexive power")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--m", type=int)
    what.add_argument("--threshold", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("pullback", parents=[common], help="pull a form back along a curve")
    p.add_argument("--form", required=True, metavar="FILE[#LABEL]")
    p.add_argument("--param", required=True, metavar="FILE")
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("resultant", parents=[common], help="Sylvester resultant of two forms")
    p.add_argument("--form1", required=True, metavar="FILE[#LABEL]")
    p.add_argument("--form2", required=True, metavar="FILE[#LABEL]")
    p.add_argument("--vars", required=True, metavar="x,y")
    p.add_argument("--sqrt-name", default="sqrtD", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("node-expand", parents=[common], help="expand a form along a node's exceptional curve")
    p.add_argument("--form", required=True, metavar="FILE[#LABEL]")
    p.add_argument("--chart", default="cone", help="cone, cuboid-y1, or a chart JSON file")
    p.add_argument("--order", type=int)
    p.set_defaults(func=cmd_node_expand)

    p = sub.add_parser("lmin", parents=[common], help="least node count for quadric intersections")
    p.add_argument("--ambient", type=int)
    p.set_defaults(func=cmd_lmin)

    p = sub.add_parser("presets", parents=[common], help="list preset surfaces")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("discrepancies", parents=[common], help="report known reference-value mismatches")
    p.set_defaults(func=cmd_discrepancies)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
