"""Command-line front end: ``hnbounds <subcommand> [options]``.

Results go to stdout as canonical JSON (sorted keys, rationals as "p/q").
Exit codes: 0 success, 2 invalid input or violated hypothesis (with a JSON
error object), 1 internal failure.

Negative list values must be attached with ``=``: ``--d=-1,3``.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import Sequence

from . import degrees as dg
from . import frobdynamics as fd
from . import hnpolygon as hp
from . import slbounds as sl
from ._checks import require_prime
from .errors import ConsistencyError, HNBoundsError, PreconditionError, ValidationError
from .parabolic import Facet, psi_size, shape_decomposition, u_set
from .rootsystem import RootSystem, build_root_system, parse_cartan_label, weyl_element
from .serialize import dumps, parse_rational, rational_vector, to_jsonable


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message, "argv")


# ------------------------------------------------------------ input helpers


def _int_list(text: str | None, name: str) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ValidationError(f"{name}: expected comma-separated integers, got {text!r}", name)


def _rat_list(text: str, name: str) -> list[Fraction]:
    if text is None or text.strip() == "":
        raise ValidationError(f"{name}: empty list", name)
    return [parse_rational(x, name) for x in text.split(",")]


def _pairs(text: str, name: str) -> list[tuple]:
    """'a:b,c:d' -> [(a, b), (c, d)] with a an integer and b a rational."""
    out = []
    for k, item in enumerate(text.split(",")):
        left, sep, right = item.partition(":")
        if not sep:
            raise ValidationError(f"{name}: item {k} must look like a:b, got {item!r}", f"{name}[{k}]")
        try:
            a = int(left)
        except ValueError:
            raise ValidationError(f"{name}: item {k} has a non-integer left part", f"{name}[{k}]")
        out.append((a, parse_rational(right, f"{name}[{k}]")))
    return out


def _rat(text, name: str) -> Fraction:
    if text is None:
        raise ValidationError(f"--{name} is required", name)
    return parse_rational(text, name)


def _read_input(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        raw = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ValidationError(f"cannot read input: {exc}", "input")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc}", "input")
    if not isinstance(doc, dict):
        raise ValidationError("input JSON must be an object", "input")
    return doc


def _root_system(args, doc: dict | None = None) -> RootSystem:
    doc = doc or {}
    label = args.label or doc.get("label")
    if label:
        return parse_cartan_label(str(label))
    ctype = args.type or doc.get("type") or args.config.get("type")
    rank = args.rank if args.rank is not None else doc.get("rank", args.config.get("rank"))
    if ctype is None or rank is None:
        raise ValidationError("a root system is required: give --type and --rank, --label, or a config file", "type")
    if isinstance(rank, bool) or not isinstance(rank, int):
        raise ValidationError("rank must be an integer", "rank")
    return build_root_system(str(ctype), rank)


def _facet(rs: RootSystem, I, chamber, where: str) -> Facet:
    try:
        I = [int(i) for i in I]
        word = [int(c) for c in (chamber or [])]
    except (TypeError, ValueError):
        raise ValidationError(f"{where}: I and chamber must be integer lists", where)
    bad = [c for c in word if not 1 <= c <= rs.rank]
    if bad:
        raise ValidationError(f"{where}: chamber letters {bad} outside 1..{rs.rank}", f"{where}.chamber")
    return Facet(rs, frozenset(I), weyl_element(rs, word) if word else None)


def _by_vertex(mapping: dict) -> dict:
    return {str(k): mapping[k] for k in sorted(mapping)}


def _s0_json(s: fd.S0Value, witness: bool) -> dict:
    out = {"sign": s.sign, "square": s.square, "value": s.value, "exact": s.exact}
    if witness and s.witness:
        P, Q, word = s.witness
        out["witness"] = {"P": list(P), "Q": list(Q), "Q_chamber": list(word)}
    return out


# ------------------------------------------------------------ subcommands


def cmd_rootsys(args) -> dict:
    rs = _root_system(args)
    return {
        "label": rs.label,
        "rank": rs.rank,
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "gram": [rational_vector(r) for r in rs.gram],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "fundamental_weights": [rational_vector(v) for v in rs.fundamental_weights],
        "fundamental_coweights": [rational_vector(v) for v in rs.fundamental_coweights],
        "dim_g": rs.dim_g,
        "weyl_order": rs.weyl_order,
    }


def cmd_facet(args) -> dict:
    rs = _root_system(args)
    f = _facet(rs, _int_list(args.I, "I"), _int_list(args.chamber, "chamber"), "facet")
    dec = shape_decomposition(f)
    out = {
        "I": list(f.indices),
        "chamber": list(f.w.word) if f.chamber is not None else [],
        "vertices": {str(i): rational_vector(f.vertex(i)) for i in f.indices},
        "psi_sizes": {str(i): psi_size(f, i) for i in f.indices},
        "u_set": [list(a) for a in sorted(u_set(f))],
        "shapes": [
            {"level": e.level, "shape": list(e.shape), "rank": e.rank, "roots": [list(a) for a in e.roots]}
            for e in dec.entries()
        ],
        "dim_g": dec.dim_g,
        "dim_p": dec.dim_p,
        "dim_l": dec.dim_l,
        "dim_u": dec.dim_u,
    }
    if args.d is not None:
        d = dg.degree_vector(rs, _rat_list(args.d, "d"))
        out["degree"] = dg.parabolic_degree(f, d)
        if f.I:
            out["invariants"] = _by_vertex(dg.numerical_invariants(f, d).n)
    return out


def _degree_input(args, rs: RootSystem, doc: dict) -> dg.DegreeVector:
    if args.d is not None:
        return dg.degree_vector(rs, _rat_list(args.d, "d"))
    if "d" not in doc:
        raise ValidationError("a degree vector is required: --d or an input document with 'd'", "d")
    if not isinstance(doc["d"], list):
        raise ValidationError("'d' must be a list of rationals", "d")
    return dg.degree_vector(rs, [parse_rational(x, f"d[{k}]") for k, x in enumerate(doc["d"])])


def cmd_canonical(args) -> dict:
    doc = _read_input(args.input)
    rs = _root_system(args, doc)
    d = _degree_input(args, rs, doc)
    red = dg.canonical_facet(rs, d)
    return {"facet": list(red.facet.indices), "degree": red.degree, "invariants": _by_vertex(red.profile.n)}


def cmd_bounds(args) -> dict:
    which = args.which
    if which == "b-of-g":
        rep = dg.b_of_G(_root_system(args))
        return {"b_of_G": rep.value, "argmax_facet": rep.detail["argmax_facet"]}
    if which == "instability":
        rs = _root_system(args)
        f = _facet(rs, _int_list(args.I, "I"), [], "facet")
        inf, adj = dg.instability_bound_66(f, _rat(args.L, "L"), _prime(args.p))
        return {
            "facet": list(f.indices),
            "weight_sum": dg.weight_sum(f),
            "deg_hn_infinity_bound": inf.value,
            "adjoint_deg_hn_bound": adj.value,
        }
    if which == "lmax":
        r, p, L = _int(args.r, "r"), _prime(args.p), _rat(args.L, "L")
        out = {"lmax_bound": hp.lmax_bound_13(r, p, _rat(args.mu_max, "mu-max"), L)}
        if args.mu_min is not None:
            out["lmin_bound"] = hp.lmin_bound_13(r, p, _rat(args.mu_min, "mu-min"), L)
        return out
    if which == "rep":
        dimV = _int(args.dimV, "dimV")
        if args.weights is not None:
            factors = [sl.DominantWeightSL(dimV, tuple(_int_list(w, "weights"))) for w in args.weights.split(";")]
            jh = sl.jh_degree(factors)
        else:
            jh = _int(args.jh, "jh")
        return {"rep_bound": sl.rep_bound_83(dimV, jh, _rat(args.L, "L"), _prime(args.p)), "jh_degree": jh}
    if which == "threshold":
        rs = _root_system(args)
        ok, rep = dg.semistability_threshold(rs, _rat(args.L, "L"), _prime(args.p))
        return {"b_of_G": dict(rep.inputs)["b_of_G"], "threshold": rep.value, "p_exceeds_threshold": ok}
    if which == "s0":
        rs = _root_system(args)
        cap = fd.DEFAULT_S0_RANK_CAP if args.rank_cap is None else _int(args.rank_cap, "rank-cap")
        return _s0_json(fd.s0_estimate(rs, rank_cap=cap), witness=True)
    raise ValidationError(f"unknown bound {which!r}", "which")


def _json_quotients(raw, where: str) -> list[tuple]:
    if not isinstance(raw, list):
        raise ValidationError(f"{where} must be a list of [rank, degree] pairs", where)
    out = []
    for k, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2 or not isinstance(pair[0], int):
            raise ValidationError(f"{where}[{k}] must be [rank, degree]", f"{where}[{k}]")
        out.append((pair[0], parse_rational(pair[1], f"{where}[{k}]")))
    return out


def cmd_polygon(args) -> dict:
    which = args.which
    doc = _read_input(args.input)
    if which == "deg-hn":
        if args.quotients is not None:
            pairs = _pairs(args.quotients, "quotients")
        elif "quotients" in doc:
            pairs = _json_quotients(doc["quotients"], "quotients")
        else:
            raise ValidationError("--quotients or an input document with 'quotients' is required", "quotients")
        h = hp.make_hn(pairs)
        return {"deg_hn": hp.deg_hn(h), "bounds_ok": hp.hn_bounds_check(h)}
    if which == "frobenius":
        if args.levels is not None:
            levels = [_pairs(level, f"levels[{k}]") for k, level in enumerate(args.levels.split(";"))]
        elif isinstance(doc.get("levels"), list):
            levels = [_json_quotients(level, f"levels[{k}]") for k, level in enumerate(doc["levels"])]
        else:
            raise ValidationError("--levels or an input document with 'levels' is required", "levels")
        hs = [hp.make_hn(level) for level in levels]
        values, mono = hp.frobenius_sequence(hs, _prime(args.p if args.p is not None else doc.get("p")))
        return {"normalized": values, "monotone": mono}
    if which == "hilbert":
        if args.chi is None:
            raise ValidationError("--chi is required", "chi")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            res = hp.hilbert_coeffs(_pairs(args.chi, "chi"), _int(args.d, "d"))
        return {"a": list(res.a), "integral": res.integral, "warnings": [str(w.message) for w in caught]}
    raise ValidationError(f"unknown polygon computation {which!r}", "which")


def cmd_certify(args) -> dict:
    doc = _read_input(args.input)
    rs = _root_system(args, doc)
    try:
        P, Q = doc["P"], doc["Q"]
        nP, nQ = doc["nP"], doc["nQ"]
    except KeyError as exc:
        raise ValidationError(f"certify input is missing {exc.args[0]!r}", "input")
    fP = _facet(rs, P.get("I", []), P.get("chamber"), "P")
    fQ = _facet(rs, Q.get("I", []), Q.get("chamber"), "Q")
    eps = parse_rational(args.epsilon if args.epsilon is not None else doc.get("epsilon"), "epsilon")
    sigma = fd.match_facets(fP, fQ)
    if sigma is None:
        raise PreconditionError("no Weyl element maps facet P onto facet Q", "sigma")
    profP = dg.profile_from_invariants(fP, {int(k): parse_rational(v, f"nP.{k}") for k, v in nP.items()})
    profQ = dg.profile_from_invariants(fQ, {int(k): parse_rational(v, f"nQ.{k}") for k, v in nQ.items()})
    s0_in = args.s0 if args.s0 is not None else doc.get("s0")
    s0 = fd.S0Value.from_rational(parse_rational(s0_in, "s0")) if s0_in is not None else fd.s0_estimate(rs)
    cert = fd.contradiction_certificate(profP, profQ, sigma, eps, s0)
    if cert.recheck() != cert.verdict:
        raise ConsistencyError("certificate verdict is not reproducible from its fields")
    return {
        "verdict": cert.verdict,
        "reason": cert.reason,
        "sigma": list(sigma.word),
        "epsilon": cert.epsilon,
        "s0": _s0_json(cert.s0, witness=False),
        "norm_P": cert.norm_P,
        "norm_Q": cert.norm_Q,
        "same_facet": cert.same_facet,
        "star2_holds": cert.star2_holds,
        "warnings": list(cert.warnings),
    }


def cmd_stabilize(args) -> dict:
    doc = _read_input(args.input)
    if "p" not in doc or "entries" not in doc:
        raise ValidationError("sequence input needs 'p' and 'entries'", "input")
    entries = []
    for pos, e in enumerate(doc["entries"]):
        if not isinstance(e, dict):
            raise ValidationError(f"entry {pos} must be an object", f"entries[{pos}]")
        entries.append({**e, "n": [parse_rational(x, f"entries[{pos}].n") for x in e.get("n", [])]})
    seq = fd.make_sequence(_prime(doc["p"]), entries)
    eps = parse_rational(args.epsilon if args.epsilon is not None else doc.get("epsilon"), "epsilon")
    pair = fd.detect_stabilization(seq, eps)
    return {"pair": None if pair is None else list(pair)}


def cmd_extend(args) -> dict:
    doc = _read_input(args.input)
    if args.columns is not None:
        columns = [_int_list(c, "columns") for c in args.columns.split(";")]
    else:
        columns = doc.get("columns")
    if args.values is not None:
        values = _rat_list(args.values, "values")
    else:
        values = [parse_rational(v, "values") for v in doc.get("values", [])]
    if not columns:
        raise ValidationError("sublattice columns are required", "columns")
    rank = len(columns)
    if any(not isinstance(c, list) or len(c) != rank for c in columns):
        raise ValidationError(f"need {rank} columns of length {rank}", "columns")
    matrix = [[columns[j][i] for j in range(rank)] for i in range(rank)]
    lf = sl.extend_functional(rank, matrix, values)
    return {"extension": list(lf.extension), "index": lf.index, "values": list(lf.values)}


def _int(x, name: str) -> int:
    if x is None:
        raise ValidationError(f"--{name} is required", name)
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    try:
        return int(str(x))
    except ValueError:
        raise ValidationError(f"--{name} must be an integer, got {x!r}", name)


def _prime(x) -> int:
    return require_prime(_int(x, "p"))


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", help="Cartan type letter A-G")
    common.add_argument("--rank", type=int)
    common.add_argument("--label", help="Cartan label such as B3 or A1xG2")
    common.add_argument("--config", help="JSON file with default type and rank")
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--input", help="JSON input file, or - for stdin")

    parser = _Parser(prog="hnbounds", description="Exact bounds for canonical reductions of principal bundles.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sub.add_parser("rootsys", parents=[common], help="root system data").set_defaults(func=cmd_rootsys)

    p = sub.add_parser("facet", parents=[common], help="facet data, shapes and U(P)")
    p.add_argument("--I", default="")
    p.add_argument("--chamber", default="")
    p.add_argument("--d")
    p.set_defaults(func=cmd_facet)

    p = sub.add_parser("canonical", parents=[common], help="canonical facet of a degree vector")
    p.add_argument("--d")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("bounds", parents=[common], help="explicit bound calculators")
    p.add_argument("which", choices=["b-of-g", "instability", "lmax", "rep", "threshold", "s0"])
    p.add_argument("--I", default="")
    p.add_argument("--L")
    p.add_argument("--p")
    p.add_argument("--r")
    p.add_argument("--mu-max", dest="mu_max")
    p.add_argument("--mu-min", dest="mu_min")
    p.add_argument("--dimV", dest="dimV")
    p.add_argument("--jh")
    p.add_argument("--weights", help="highest weights of composition factors, e.g. 1,1;2,0")
    p.add_argument("--rank-cap", dest="rank_cap")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("polygon", parents=[common], help="HN polygon numerics")
    p.add_argument("which", choices=["deg-hn", "frobenius", "hilbert"])
    p.add_argument("--quotients", help="rank:degree pairs, e.g. 1:1,1:0")
    p.add_argument("--levels", help="';'-separated quotient lists, one per Frobenius level")
    p.add_argument("--p")
    p.add_argument("--chi", help="m:chi pairs")
    p.add_argument("--d")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("certify", parents=[common], help="contradiction certificate for two facets")
    p.add_argument("--epsilon")
    p.add_argument("--s0")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("stabilize", parents=[common], help="epsilon-window in an invariant sequence")
    p.add_argument("--epsilon")
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("extend", parents=[common], help="rational extension of a lattice functional")
    p.add_argument("--columns", help="';'-separated integer columns")
    p.add_argument("--values")
    p.set_defaults(func=cmd_extend)
    return parser


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config: {exc}", "config")
    if not isinstance(cfg, dict):
        raise ValidationError("config must be a JSON object", "config")
    return cfg


def render_table(result: dict) -> str:
    data = to_jsonable(result)
    width = max((len(k) for k in data), default=0)
    lines = []
    for key in sorted(data):
        v = data[key]
        text = v if isinstance(v, str) else json.dumps(v, sort_keys=True, separators=(",", ":"))
        lines.append(f"{key.ljust(width)}  {text}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise ValidationError("a subcommand is required", "argv")
        args.config = _load_config(args.config)
        result = args.func(args)
    except ConsistencyError as exc:
        _emit(exc.to_dict(), "json")
        return 1
    except HNBoundsError as exc:
        _emit(exc.to_dict(), "json")
        return 2
    except Exception as exc:  # noqa: BLE001 - report, never crash with a traceback
        _emit({"code": "internal", "message": f"{type(exc).__name__}: {exc}", "location": None}, "json")
        return 1
    _emit(result, args.format)
    return 0


def _emit(obj: dict, fmt: str) -> None:
    sys.stdout.write((render_table(obj) if fmt == "table" else dumps(obj)) + "\n")


if __name__ == "__main__":
    sys.exit(main())
