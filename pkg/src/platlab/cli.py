"""Command line interface: ``platlab <command> ...``.

Commands read diagrams as PD JSON or Gauss code, from a file or from
standard input (``-``).  Every command can print plain text or JSON.
Defaults come from flags, then from ``PLATLAB_*`` environment variables.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .braid import NotPureError, is_pure, ordinary_closure, parse_braid, plat_closure
from .diagram import DiagramError, LinkDiagram, from_gauss, from_pd_json, linking_matrix
from .equivalence import (corollary32_scan, is_brunnian, load_certificate, theorem1_check,
                          verify_certificate)
from .freegroup import (DecompositionError, RankError, WordSyntaxError, decompose_simple_quasi,
                        format_tree, format_word, lcs_depth, parse_word)
from .invariants import ResourceError, all_sequences, conway, finite_type_profile, mu_bar
from .linkgroup import chen_milnor_words, longitude, wirtinger

EXIT_OK, EXIT_ERROR, EXIT_ALARM = 0, 1, 3


@dataclass(frozen=True)
class Config:
    magnus_cap: int = 8
    conway_bound: int = 16
    simplify_budget: int = 10_000
    output: str = "text"

    def __post_init__(self):
        for name in ("magnus_cap", "conway_bound", "simplify_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.output not in ("text", "json"):
            raise ValueError("output must be 'text' or 'json'")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def config_from(args: argparse.Namespace) -> Config:
    def pick(flag, env, default):
        return flag if flag is not None else _env_int(env, default)

    return Config(
        magnus_cap=pick(args.magnus_cap, "PLATLAB_MAGNUS_CAP", 8),
        conway_bound=pick(args.conway_bound, "PLATLAB_CONWAY_BOUND", 16),
        simplify_budget=pick(args.simplify_budget, "PLATLAB_SIMPLIFY_BUDGET", 10_000),
        output=args.output or os.environ.get("PLATLAB_OUTPUT", "text"),
    )


def read_diagram(source: str) -> LinkDiagram:
    text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    stripped = text.strip()
    if stripped.startswith(("{", "[")):
        return from_pd_json(stripped)
    return from_gauss(stripped)


def _emit(cfg: Config, record: dict, lines: list[str]) -> None:
    if cfg.output == "json":
        print(json.dumps(record))
    else:
        print("\n".join(lines))


# -- commands ------------------------------------------------------------------

def _plat_braid(text: str, strands: int | None):
    b = parse_braid(text, strands)
    if strands is None and b.strands % 2:
        b = parse_braid(text, b.strands + 1)
    return b


def cmd_close(args, cfg: Config) -> int:
    b = parse_braid(args.braid, args.strands) if args.trace else _plat_braid(args.braid, args.strands)
    if not is_pure(b):
        raise NotPureError(f"braid {args.braid!r} is not pure")
    d = ordinary_closure(b) if args.trace else plat_closure(b)
    pd = d.pd_code()
    text = d.gauss_code() if args.gauss else json.dumps(pd)
    _emit(cfg, {**pd, "gauss": d.gauss_code()} if args.gauss else pd, [text])
    return EXIT_OK


def cmd_invariants(args, cfg: Config) -> int:
    d = read_diagram(args.diagram)
    record: dict = {"components": d.component_count, "lk": linking_matrix(d)}
    lines = [f"components: {d.component_count}", f"lk: {record['lk']}"]
    if args.mu_len:
        if args.mu_len > cfg.magnus_cap:
            raise ValueError(f"--mu-len {args.mu_len} exceeds the Magnus cap {cfg.magnus_cap}")
        values = [mu_bar(d, seq, args.mu_len)
                  for k in range(2, args.mu_len + 1)
                  for seq in all_sequences(d.component_count, k)] if d.component_count > 1 else []
        record["mu"] = [v.as_dict() for v in values]
        nonzero = [v for v in values if v.value]
        for v in nonzero:
            idx = "".join(map(str, v.indices)) if d.component_count < 10 else ",".join(map(str, v.indices))
            mod = f" (mod {v.delta})" if v.delta else ""
            lines.append(f"mu({idx}) = {v.value}{mod}")
        lines.append(f"{len(values) - len(nonzero)} other mu invariants of length <= {args.mu_len} vanish")
    if args.conway:
        poly = conway(d, cfg.conway_bound)
        record["conway"] = poly.as_dict()
        lines.append(f"conway: {poly}")
    if args.profile is not None:
        prof = finite_type_profile(d, args.profile, cfg.conway_bound)
        record["profile"] = prof.as_dict()
        lines.append(f"order-{args.profile} profile matches unlink: {prof.matches_unlink}")
    _emit(cfg, record, lines)
    return EXIT_OK


def cmd_group(args, cfg: Config) -> int:
    d = read_diagram(args.diagram)
    p = wirtinger(d)
    record: dict = {
        "generators": [f"a{g}" for g in range(1, len(p.generators) + 1)],
        "relators": [format_word(r, "a") for r in p.relators],
        "meridians": [f"a{g}" for g in p.meridians],
    }
    lines = [str(p)]
    if args.longitudes:
        cap = args.cap or cfg.magnus_cap
        longs = [longitude(d, k, p) for k in range(d.component_count)]
        words = chen_milnor_words(d, cap)
        record["longitudes"] = [format_word(l.word, "a") for l in longs]
        record["W"] = [format_word(w) for w in words]
        record["lcs_depth"] = [lcs_depth(w, cap) for w in words]
        record["cap"] = cap
        for k, (l, w) in enumerate(zip(longs, words), start=1):
            lines.append(f"longitude {k}: {format_word(l.word, 'a')}")
            lines.append(f"W{k} (mod degree > {cap}): {format_word(w)}")
    _emit(cfg, record, lines)
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    text = sys.stdin.read() if args.certificate == "-" else open(args.certificate).read()
    cert = load_certificate(text)
    report = verify_certificate(cert, min(6, cfg.magnus_cap), cfg.simplify_budget, cfg.conway_bound)
    lines = [report.outcome.value]
    lines += [f"  selection {mask:0{len(cert.collection)}b}: {o.value}" for mask, o in report.selections]
    _emit(cfg, report.as_dict(), lines)
    return EXIT_OK


def cmd_theorem1(args, cfg: Config) -> int:
    d = plat_closure(_plat_braid(args.braid, args.strands))
    r = theorem1_check(d, args.m, cfg.conway_bound)
    w = r.witness
    lines = [
        f"plat closure: {d.component_count} components, {d.crossing_count} crossings",
        f"mu vanish through length {args.m + 1}: {r.mu_vanish_m1}",
        f"mu vanish through length {args.m + 2}: {r.mu_vanish_m2}",
        f"order-{args.m} profile matches unlink: {r.profile_trivial}",
        "first nonvanishing mu: " + (f"mu({''.join(map(str, w.indices))}) = {w.value}" if w else "none"),
        f"consistent: {r.consistent}",
    ]
    _emit(cfg, r.as_dict(), lines)
    return EXIT_OK if r.consistent else EXIT_ALARM


def cmd_scan(args, cfg: Config) -> int:
    d = read_diagram(args.diagram)
    r = corollary32_scan(d, args.cap or min(6, cfg.magnus_cap), cfg.simplify_budget)
    record = r.as_dict()
    lines = [r.status] + ([f"witness: mu{tuple(r.witness.indices)} = {r.witness.value}"] if r.witness else [])
    if args.brunnian and d.component_count > 1:
        b = is_brunnian(d, budget=cfg.simplify_budget, bound=cfg.conway_bound)
        record["brunnian"] = {"value": b.brunnian, "inconclusive": b.inconclusive}
        lines.append(f"brunnian: {b.brunnian}" + (" (inconclusive)" if b.inconclusive else ""))
    _emit(cfg, record, lines)
    return EXIT_OK


def cmd_decompose(args, cfg: Config) -> int:
    w = parse_word(args.word, args.rank)
    trees = decompose_simple_quasi(w, args.m)
    texts = [format_tree(t) for t in trees]
    _emit(cfg, {"word": format_word(w), "m": args.m, "trees": texts}, texts or ["(empty product)"])
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

BRAID_HELP = ("braid word: s<i> and s<i>^-1 are Artin generators (s<i> crosses strand i+1 "
              "over strand i); A(i,j) is s_{j-1}...s_{i+1} s_i^2 s_{i+1}^-1...s_{j-1}^-1; "
              "any token may carry ^k")


def build_parser() -> argparse.ArgumentParser:
    def common(parser, default):
        parser.add_argument("--output", choices=["text", "json"], default=default,
                            help="output format (PLATLAB_OUTPUT)")
        parser.add_argument("--magnus-cap", type=int, default=default,
                            help="Magnus truncation degree (PLATLAB_MAGNUS_CAP)")
        parser.add_argument("--conway-bound", type=int, default=default,
                            help="max crossings for the skein recursion (PLATLAB_CONWAY_BOUND)")
        parser.add_argument("--simplify-budget", type=int, default=default,
                            help="Reidemeister move budget (PLATLAB_SIMPLIFY_BUDGET)")

    ap = argparse.ArgumentParser(prog="platlab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common(ap, None)
    shared = argparse.ArgumentParser(add_help=False)
    # options repeated after the command name override the ones before it
    common(shared, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("close", parents=[shared], help="close a pure braid into a diagram", description=BRAID_HELP)
    p.add_argument("braid", help=BRAID_HELP)
    how = p.add_mutually_exclusive_group()
    how.add_argument("--plat", action="store_true", help="plat closure (default)")
    how.add_argument("--trace", action="store_true", help="ordinary closure")
    p.add_argument("--strands", type=int)
    p.add_argument("--gauss", action="store_true", help="print the Gauss code instead of PD JSON")
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("invariants", parents=[shared], help="linking numbers, Milnor invariants, Conway polynomial")
    p.add_argument("diagram", nargs="?", default="-", help="PD JSON or Gauss code file, '-' for stdin")
    p.add_argument("--mu-len", type=int, default=0, help="report Milnor invariants up to this length")
    p.add_argument("--conway", action="store_true")
    p.add_argument("--profile", type=int, help="finite type profile through this order")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("group", parents=[shared], help="Wirtinger presentation and longitude words")
    p.add_argument("diagram", nargs="?", default="-")
    p.add_argument("--longitudes", action="store_true")
    p.add_argument("--cap", type=int, help="Magnus degree for the longitude words")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("verify", parents=[shared], help="check a crossing-change certificate")
    p.add_argument("certificate", nargs="?", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theorem1", parents=[shared], help="compare Milnor vanishing with the finite type profile",
                       description=BRAID_HELP)
    p.add_argument("braid")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--strands", type=int)
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("scan", parents=[shared], help="decide triviality from Milnor invariants and simplification")
    p.add_argument("diagram", nargs="?", default="-")
    p.add_argument("--cap", type=int)
    p.add_argument("--brunnian", action="store_true", help="also test every proper sublink")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("decompose", parents=[shared], help="write a word as a product of simple commutators")
    p.add_argument("word", help="e.g. '[x1,x2] [x2,[x1,x2]]'")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rank", type=int)
    p.set_defaults(func=cmd_decompose)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from(args)
        return args.func(args, cfg)
    except (ValueError, DiagramError, NotPureError, RankError, WordSyntaxError,
            DecompositionError, ResourceError, OSError) as exc:
        print(f"platlab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
