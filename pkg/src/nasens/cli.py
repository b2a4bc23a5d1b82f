"""Command-line front end.

Exit codes: ``nset`` 0 ok, 2 bad configuration, 3 size guard hit;
``certify`` 0 witnessed, 1 refuted at the horizon, 4 inconclusive, 2 bad
configuration; ``reproduce-paper`` 0 all rows match, 1 mismatches, 2 unreadable
claims table.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import corpus, detect
from ._rational import as_fraction, fmt
from .errors import ResourceError
from .metric import Arc, Box, Circle, Product, Span, check_region
from .nds import system_from_json

EXIT_OK, EXIT_REFUTED, EXIT_CONFIG, EXIT_RESOURCE, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
VERDICT_EXIT = {detect.WITNESSED: EXIT_OK, detect.REFUTED: EXIT_REFUTED,
                detect.INCONCLUSIVE: EXIT_INCONCLUSIVE}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    system: str | None = None
    system_file: str | None = None
    delta: Fraction | None = None
    sweep: bool = False
    horizon: int = 64
    vectors: list = field(default_factory=list)
    resolution: int = 5
    output: str = "json"
    seed: int | None = None

    def validate(self):
        if self.horizon < 1:
            raise ConfigError("--horizon must be at least 1")
        if self.delta is not None and self.delta <= 0:
            raise ConfigError("--delta must be positive")
        if not 1 <= self.resolution <= 10:
            raise ConfigError("--resolution must lie in [1, 10]")


# -- parsing helpers ---------------------------------------------------------


def _rational(text, what):
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ConfigError(f"{what}: {text!r} is not a rational") from None


def parse_delta(text, space):
    """Threshold with a ``turn`` suffix on the circle; plain (squared) otherwise."""
    text = text.strip()
    turn = text.endswith("turn")
    if turn:
        text = text[:-4].strip()
    if isinstance(space, Circle) and not turn:
        raise ConfigError("circle thresholds need the 'turn' suffix, e.g. 1/8turn")
    if not isinstance(space, Circle) and turn:
        raise ConfigError("the 'turn' suffix is only meaningful on the circle")
    value = _rational(text, "--delta")
    if value <= 0:
        raise ConfigError("--delta must be positive")
    return value


def _factor_region(text, space):
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"region {text!r} must look like 'a,b'")
    a, b = (_rational(p, "region") for p in parts)
    if a >= b:
        raise ConfigError(f"region {text!r} is empty or inverted")
    if isinstance(space, Circle):
        if not (0 <= a and b <= 1):
            raise ConfigError("circle regions are arcs 'a,b' with 0 <= a < b <= 1 (angle fractions)")
        return Arc(a, b - a)
    return Span(a, b)


def parse_region(text, space):
    """``a,b`` for 1-D spaces; factors separated by ``;`` for products."""
    if isinstance(space, Product):
        parts = text.split(";")
        if len(parts) != len(space.factors):
            raise ConfigError(f"product regions need {len(space.factors)} ';'-separated factors")
        region = Box(tuple(_factor_region(p, s) for p, s in zip(parts, space.factors)))
    else:
        region = _factor_region(text, space)
    try:
        check_region(space, region)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return region


def parse_vector(text):
    try:
        v = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ConfigError(f"vector {text!r} must be comma-separated positive integers") from None
    if not v or any(k < 1 for k in v):
        raise ConfigError(f"vector {text!r} must have positive entries")
    return v


def parse_params(items):
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--param {item!r} must look like key=value")
        out[key.strip()] = int(value) if value.strip().lstrip("-").isdigit() else value.strip()
    return out


def load_system(args):
    if bool(args.system) == bool(args.system_file):
        raise ConfigError("give exactly one of --system or --system-file")
    params = parse_params(args.param)
    if args.seed is not None:
        params["seed"] = args.seed
    try:
        if args.system_file:
            with open(args.system_file) as fh:
                return system_from_json(json.load(fh))
        return corpus.build(args.system, **params)
    except KeyError as exc:
        raise ConfigError(str(exc).strip("'\"")) from None
    except (OSError, ValueError, TypeError) as exc:
        raise ConfigError(f"cannot load system: {exc}") from None


# -- output ------------------------------------------------------------------


def _emit(out, fmt_, doc, rows, header, text_lines):
    if fmt_ == "json":
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif fmt_ == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text_lines) + "\n")


# -- commands ----------------------------------------------------------------


def cmd_nset(args, out):
    s = load_system(args)
    if not args.region:
        raise ConfigError("--region is required")
    if args.delta is None:
        raise ConfigError("--delta is required")
    cfg = RunConfig("nset", args.system, args.system_file, parse_delta(args.delta, s.space),
                    horizon=args.horizon, output=args.format)
    cfg.validate()
    region = parse_region(args.region, s.space)
    ns = detect.n_set(s, region, cfg.delta, cfg.horizon)
    doc = ns.to_json()
    from .schemas import validate
    validate(doc, "nset")
    rows = [[w["n"], json.dumps(w["u"]), json.dumps(w["v"]), w["distance"]] for w in doc["witnesses"]]
    text = [f"system {s.name}  region {region}  delta {fmt(cfg.delta)}  horizon {cfg.horizon}",
            f"members: {ns.members if ns.members else 'none'}"]
    text += [f"  n={w['n']}: u={w['u']} v={w['v']} distance={w['distance']}" for w in doc["witnesses"]]
    _emit(out, cfg.output, doc, rows, ["n", "u", "v", "distance"], text)
    return EXIT_OK


def _decide(args, s, delta):
    within = parse_region(args.within, s.space) if args.within else None
    battery = None
    if args.property != "vector-multi" or not args.region:
        battery = detect.default_battery(s.space, args.resolution, within=within, delta=delta)
    prop = args.property
    if prop == "sensitive":
        return detect.sensitivity(s, delta, args.horizon, battery)
    if prop == "multi":
        return detect.multi_sensitivity(s, args.r, delta, args.horizon, battery)
    if prop == "vector-multi":
        v = parse_vector(args.vector)
        if args.region:
            regions = [parse_region(r, s.space) for r in args.region]
            if len(regions) != len(v):
                raise ConfigError("give one --region per vector entry")
            return detect.vector_multi_sensitivity(s, v, regions, delta, args.horizon)
        return detect.vector_multi_sensitivity_battery(s, v, delta, args.horizon, battery)
    if prop == "n-sensitive":
        return detect.n_sensitivity(s, args.n, delta, args.horizon, battery)
    if prop == "strong-multi":
        family = [parse_vector(p) for p in args.family.split(";")]
        return detect.strong_multi_sensitivity(s, family, delta, args.horizon, battery)
    if prop == "cofinite":
        tail = args.tail if args.tail is not None else max(1, args.horizon // 2)
        if not 1 <= tail <= args.horizon:
            raise ConfigError("--tail must lie in [1, horizon]")
        return detect.cofinite_sensitivity(s, delta, args.horizon, tail, battery)
    raise ConfigError(f"unknown property {prop!r}")


def cmd_certify(args, out):
    s = load_system(args)
    prop = args.property
    if prop == "vector-multi" and not args.vector:
        raise ConfigError("--vector is required for vector-multi")
    if prop == "n-sensitive" and args.n is None:
        raise ConfigError("--n is required for n-sensitive")
    if prop == "strong-multi" and not args.family:
        raise ConfigError("--family is required for strong-multi (e.g. '1;2,3;1,1,4')")
    if (args.delta is None) == (not args.sweep):
        raise ConfigError("give exactly one of --delta or --sweep")
    cfg = RunConfig("certify", args.system, args.system_file, horizon=args.horizon,
                    resolution=args.resolution, output=args.format, sweep=args.sweep)
    cfg.validate()
    if args.sweep:
        unit = "turn" if isinstance(s.space, Circle) else ""
        grid = [Fraction(1, 2**j) for j in range(1, 11)]
        _, cert = detect.largest_witnessed_delta(lambda d: _decide(args, s, d), grid)
        if cert is None:
            cert = _decide(args, s, grid[-1])
        cert.notes.append(f"delta swept over 1/2 .. 1/1024{unit}; largest witnessed value reported")
    else:
        cert = _decide(args, s, parse_delta(args.delta, s.space))
    doc = cert.to_json()
    from .schemas import validate
    validate(doc, "certificate")
    header = ["property", "verdict", "delta", "delta_unit", "horizon", "tuples_total", "claims"]
    rows = [[doc["property"], doc["verdict"], doc["delta"], doc["delta_unit"], doc["horizon"],
             doc["tuples_total"], len(doc["claims"])]]
    text = [f"{doc['property']} for {doc['system']}: {doc['verdict']}",
            f"delta {doc['delta']} ({doc['delta_unit']}), horizon {doc['horizon']}, "
            f"{doc['tuples_total']} region tuples, {len(doc['claims'])} claims recorded"]
    if doc["failure"]:
        text.append(f"failure: {doc['failure']['statement']}")
    text += [f"note: {n}" for n in doc["notes"]]
    _emit(out, cfg.output, doc, rows, header, text)
    return VERDICT_EXIT[cert.verdict]


def cmd_reproduce(args, out):
    from .reproduce import ClaimsError, run
    try:
        rows = run(args.claims)
    except ClaimsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    header = ["id", "claim", "source", "expected", "verdict", "horizon", "status"]
    table = [[r.id, r.claim, r.source, r.expected, r.verdict, r.horizon if r.horizon else "",
              "pass" if r.passed else "MISMATCH"] for r in rows]
    doc = {"rows": [dict(zip(header, t)) for t in table],
           "passed": sum(r.passed for r in rows), "total": len(rows)}
    width = max(len(r.id) for r in rows)
    text = [f"{t[0]:<{width}}  {t[6]:<8}  {t[4]:<19} {t[2]}" for t in table]
    text.append(f"{doc['passed']}/{doc['total']} rows match")
    _emit(out, args.format, doc, table, header, text)
    mismatched = [r.id for r in rows if not r.passed]
    if mismatched:
        print("mismatches: " + ", ".join(mismatched), file=sys.stderr)
        return EXIT_REFUTED
    return EXIT_OK


def cmd_list(args, out):
    for e in corpus.ENTRIES:
        alias = f" (alias {', '.join(e.aliases)})" if e.aliases else ""
        out.write(f"{e.name}{alias}: {e.summary}\n")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser():
    p = _Parser(prog="nasens", description="Exact finite-horizon sensitivity analysis "
                "of non-autonomous interval and circle systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def system_flags(sp):
        sp.add_argument("--system", help="corpus name (see 'nasens list')")
        sp.add_argument("--system-file", help="JSON system description")
        sp.add_argument("--param", action="append", help="builder parameter key=value")
        sp.add_argument("--seed", type=int, help="seed for random corpus systems")
        sp.add_argument("--horizon", type=int, default=64)
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")

    sp = sub.add_parser("nset", help="separation set of one region with witnesses")
    system_flags(sp)
    sp.add_argument("--region", help="'a,b' (arc from a to b on the circle; ';' between product factors)")
    sp.add_argument("--delta", help="threshold, e.g. 1/2 or 1/8turn")
    sp.set_defaults(func=cmd_nset)

    sp = sub.add_parser("certify", help="finite-horizon sensitivity certificate")
    system_flags(sp)
    sp.add_argument("--property", required=True, choices=["sensitive", "cofinite", "multi", "vector-multi",
                                                          "n-sensitive", "strong-multi"])
    sp.add_argument("--delta")
    sp.add_argument("--sweep", action="store_true", help="report the largest witnessed dyadic delta")
    sp.add_argument("--vector", help="e.g. 1,2")
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int, default=2, help="tuple size for multi")
    sp.add_argument("--family", help="vectors separated by ';', e.g. '1;2,3'")
    sp.add_argument("--tail", type=int, help="tail length for cofinite")
    sp.add_argument("--region", action="append", help="explicit regions for vector-multi")
    sp.add_argument("--within", help="restrict the battery to regions inside this one")
    sp.add_argument("--resolution", type=int, default=5, help="battery resolution b in [1, 10]")
    sp.set_defaults(func=cmd_certify)

    for name in ("reproduce-paper", "reproduce"):
        sp = sub.add_parser(name, help="run the corpus regression table")
        sp.add_argument("--claims", help="alternative claims table")
        sp.add_argument("--format", choices=["json", "csv", "text"], default="text")
        sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("list", help="list corpus systems")
    sp.set_defaults(func=cmd_list)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
