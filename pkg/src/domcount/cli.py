"""Command-line front end.

Each command reads one or more graphs (``--family``, ``--graph6`` or
``--catalog``), evaluates them, and writes one JSON object per line.
Exit status: 0 clean, 1 some check failed, 2 input/parse error, 3 an
enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

from . import bounds
from .conditions import Activation, ColoringCondition, load_condition
from .counting import (
    STRUCTURES,
    ImageGraph,
    count_dominating_sets,
    count_legal_colorings,
    dominating_polynomial,
    hom_count,
    xhom_count,
)
from .errors import CapExceededError, DomcountError, GraphError, NotRegularError
from .graph import Graph, make_family, parse_graph6, regular_degree
from .parallel import ordered_map

log = logging.getLogger("domcount")

EXIT_OK, EXIT_FAILED, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3

SWEEP_CHECKS = ("tree-extremal", "ds-bound", "legal-bounds", "cycle-extremal", "moon-moser", "fomin")


class CatalogError(GraphError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


# -- inputs ------------------------------------------------------------------------


def parse_family(spec: str) -> Graph:
    """``cycle:4``, ``complete_bipartite:2,2``, ``petersen``, ``disjoint_union:cycle:3+cycle:3``."""
    name, _, args = spec.partition(":")
    name = name.strip().replace("-", "_")
    if name == "disjoint_union":
        parts = [parse_family(p) for p in args.split("+") if p.strip()]
        return make_family(name, *parts)
    try:
        params = [int(a) for a in args.split(",") if a.strip()]
    except ValueError:
        raise GraphError(f"bad family parameters in {spec!r}") from None
    return make_family(name, *params)


def load_catalog(path: str | Path, strict: bool = True) -> Iterator[tuple[int, Graph]]:
    """(line number, graph) for each graph6 line; blank lines and ``#`` comments skipped."""
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                yield lineno, parse_graph6(line)
            except GraphError as exc:
                if strict:
                    raise CatalogError(path, lineno, str(exc)) from None
                log.warning("%s:%d: skipping malformed line: %s", path, lineno, exc)


def parse_image(spec: str) -> ImageGraph:
    kind, _, arg = spec.partition(":")
    if kind == "hind":
        return ImageGraph.h_ind()
    if kind == "eq":
        return ImageGraph.looped_empty(int(arg))
    if kind == "kq":
        return ImageGraph.complete(int(arg))
    if kind == "file":
        return ImageGraph.load(arg)
    raise GraphError(f"unknown image spec {spec!r}")


def parse_condition(spec: str, colors: int | None) -> ColoringCondition:
    if spec.startswith("file:"):
        return load_condition(spec[5:])
    if spec == "dominating":
        return ColoringCondition.dominating(colors or 2)
    if spec == "proper":
        return ColoringCondition.proper(colors or 2)
    if spec == "rainbow":
        return ColoringCondition.rainbow(colors or 2)
    raise GraphError(f"unknown condition {spec!r}")


def _graphs(args) -> Iterator[tuple[int | None, Graph]]:
    if args.family:
        yield None, parse_family(args.family)
    elif args.graph6:
        yield None, parse_graph6(args.graph6)
    else:
        yield from load_catalog(args.catalog, strict=args.strict)


# -- per-graph evaluation -------------------------------------------------------------


def _value(x) -> str:
    return str(x)


def _count(settings: dict, G: Graph) -> list[dict]:
    cap = settings["cap_bits"]
    if settings["condition"]:
        cond = parse_condition(settings["condition"], settings["colors"])
        lam = Activation.parse(settings["weights"]) if settings["weights"] else None
        value = count_legal_colorings(G, cond, settings["mode"], lam, cap)
        return [{"check": f"count:legal-{settings['mode']}", "condition": cond.describe(), "value": _value(value)}]
    structure = settings["structure"] or "ds"
    rec = {"check": f"count:{structure}", "value": _value(STRUCTURES[structure](G, cap_bits=cap))}
    isolates = G.isolated()
    if structure == "ds" and isolates:
        rest = G.full & ~isolates
        rec["isolates"] = isolates.bit_count()
        rec["ds_without_isolates"] = _value(count_dominating_sets(G.induced(rest), cap_bits=cap) if rest else 1)
    return [rec]


def _poly(settings: dict, G: Graph) -> list[dict]:
    strong = settings["structure"] == "sds"
    poly = dominating_polynomial(G, strong, settings["cap_bits"])
    rec = {
        "check": "poly:" + ("sds" if strong else "ds"),
        "coefficients": [_value(c) for c in poly.coefficients],
        "polynomial": str(poly),
    }
    if settings["mu"]:
        rec["mu"] = settings["mu"]
        rec["value"] = _value(poly(Fraction(settings["mu"])))
    return [rec]


def _regular_only(name: str, fn):
    try:
        return fn()
    except NotRegularError as exc:
        return [bounds.not_applicable(name, str(exc))]


def _bound_check(settings: dict, G: Graph) -> list[dict]:
    cap = settings["cap_bits"]
    lam = Activation.parse(settings["weights"]) if settings["weights"] else None
    image = parse_image(settings["image"]) if settings["image"] else None
    reports = _regular_only("ds-bound", lambda: [bounds.check_ds_bound(G, cap)])
    if settings["condition"]:
        cond = parse_condition(settings["condition"], settings["colors"])
        reports += _regular_only("legal-bounds", lambda: list(bounds.check_legal_bounds(G, cond, None, cap)))
        if lam is not None and len(lam) == cond.k:
            reports += _regular_only("legal-bounds-weighted", lambda: list(bounds.check_legal_bounds(G, cond, lam, cap)))
    elif settings["colors"]:
        reports += _regular_only("prorain", lambda: bounds.check_prorain_bounds(G, settings["colors"], cap))
    if settings["mu"]:
        reports += _regular_only("dom-poly", lambda: list(bounds.check_polynomial_bounds(G, Fraction(settings["mu"]), cap)))
    image_lam = lam if (image is not None and lam is not None and len(lam) == image.q) else None
    reports += bounds.check_background_bounds(G, image, image_lam, cap)
    if regular_degree(G) == 2:
        reports.append(bounds.cycle_extremal_check(G))
    return [r.to_record() if isinstance(r, bounds.BoundReport) else r for r in reports]


def _entropy(settings: dict, G: Graph) -> list[dict]:
    if settings["condition"]:
        structure = parse_condition(settings["condition"], settings["colors"])
    else:
        structure = {"ds": "dominating", "sds": "strong_dominating", None: "dominating"}[settings["structure"]]
    mode = settings["mode"]
    if settings["structure"] == "sds" and not settings["mode_given"]:
        mode = "open"
    rep = bounds.shearer_report(G, structure, mode, settings["cap_bits"])
    rec = rep.to_record()
    rec["mode"] = mode
    return [rec]


def _xhom(settings: dict, G: Graph) -> list[dict]:
    image = parse_image(settings["image"] or "hind")
    if settings["hom"]:
        lam = Activation.parse(settings["weights"]) if settings["weights"] else None
        value = hom_count(G, image, lam, settings["cap_bits"])
        return [{"check": "hom", "image": settings["image"] or "hind", "value": _value(value)}]
    rec = {"check": "xhom", "image": settings["image"] or "hind", "value": _value(xhom_count(G, image, settings["cap_bits"]))}
    isolates = G.isolated()
    if isolates and (settings["image"] or "hind") == "hind":
        rest = G.full & ~isolates
        rec["isolates"] = isolates.bit_count()
        rec["xhom_without_isolates"] = _value(xhom_count(G.induced(rest), image, settings["cap_bits"]) if rest else 1)
    return [rec]


HANDLERS = {"count": _count, "poly": _poly, "bound-check": _bound_check, "entropy": _entropy, "xhom": _xhom}


def evaluate(task: tuple) -> list[dict]:
    """Records for one graph; errors become records with an ``error`` field."""
    settings, index, lineno, g6 = task
    G = parse_graph6(g6)
    head = {"index": index, "graph": g6}
    if lineno is not None:
        head["line"] = lineno
    try:
        records = HANDLERS[settings["command"]](settings, G)
    except CapExceededError as exc:
        return [{**head, "error": "cap", "message": str(exc)}]
    except (DomcountError, ValueError) as exc:
        return [{**head, "error": "input", "message": str(exc)}]
    return [{**head, **rec} for rec in records]


# -- sweeps ----------------------------------------------------------------------------


def run_sweep(args) -> dict:
    check = args.check
    if check == "tree-extremal":
        n = args.trees or args.max_n
        if not n:
            raise GraphError("tree-extremal sweep needs --trees N")
        return bounds.tree_extremal_sweep(n).to_record()
    if check == "ds-bound":
        return bounds.ds_bound_sweep(args.max_n or 8, args.max_r or 4).to_record()
    if check == "legal-bounds":
        return bounds.legal_bound_sweep(args.max_n or 12, labeled=args.labeled).to_record()
    if check == "cycle-extremal":
        return bounds.cycle_extremal_sweep(args.max_n or 18).to_record()
    if check == "moon-moser":
        return bounds.moon_moser_sweep(args.max_n or 6).to_record()
    return bounds.fomin_sweep(args.max_n or 6).to_record()


# -- argument handling --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="domcount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file whose keys mirror the flags")
    common.add_argument("--cap-bits", type=int, help="enumeration cap, as log2 of the search space")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", help="write records here instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true")

    source = argparse.ArgumentParser(add_help=False)
    src = source.add_mutually_exclusive_group()
    src.add_argument("--family", help="NAME:ARGS, e.g. cycle:4 or complete_bipartite:2,2")
    src.add_argument("--graph6", help="a graph6 string")
    src.add_argument("--catalog", help="file of graph6 lines")
    source.add_argument("--strict", action="store_true", help="abort on a malformed catalog line")

    def opts(p, *names):
        if "structure" in names:
            p.add_argument("--structure", choices=sorted(STRUCTURES))
        if "condition" in names:
            p.add_argument("--condition", help="dominating, proper, rainbow or file:PATH")
            p.add_argument("--colors", type=int, help="number of colors q")
        if "weights" in names:
            p.add_argument("--weights", help='activation, e.g. "1,3/2"')
        if "mode" in names:
            p.add_argument("--mode", choices=("open", "closed"))
        if "mu" in names:
            p.add_argument("--mu", help="positive rational, e.g. 1/2")
        if "image" in names:
            p.add_argument("--image", help="hind, eq:Q, kq:Q or file:PATH")

    p = sub.add_parser("count", parents=[common, source], help="count a structure or legal colorings")
    opts(p, "structure", "condition", "weights", "mode")
    p = sub.add_parser("poly", parents=[common, source], help="(strong) domination polynomial")
    opts(p, "structure", "mu")
    p = sub.add_parser("bound-check", parents=[common, source], help="check every applicable inequality")
    opts(p, "condition", "weights", "mu", "image")
    p = sub.add_parser("entropy", parents=[common, source], help="Shearer entropy report")
    opts(p, "structure", "condition", "mode")
    p = sub.add_parser("xhom", parents=[common, source], help="existence homomorphisms (or --hom)")
    opts(p, "image", "weights")
    p.add_argument("--hom", action="store_true", help="count ordinary homomorphisms instead")
    p = sub.add_parser("sweep", parents=[common], help="exhaustive bound sweeps")
    p.add_argument("--check", choices=SWEEP_CHECKS, required=True)
    p.add_argument("--trees", type=int, help="tree size for tree-extremal")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-r", type=int)
    p.add_argument("--labeled", action="store_true", help="walk labeled graphs one by one")
    return parser


def _config_argv(path: str) -> list[str]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise GraphError("config file must hold a JSON object")
    argv = []
    for key, value in data.items():
        if key in ("command", "config"):
            continue
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif value not in (False, None):
            argv += [flag, str(value)]
    return argv


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        # config values first, so explicit flags on the command line win
        try:
            extra = _config_argv(args.config)
        except (OSError, ValueError) as exc:
            raise GraphError(f"cannot read config {args.config}: {exc}") from None
        args = parser.parse_args([argv[0], *extra, *argv[1:]])
    if args.command != "sweep":
        if sum(x is not None for x in (args.family, args.graph6, args.catalog)) != 1:
            parser.error("give exactly one of --family, --graph6, --catalog")
    if args.cap_bits is not None and args.cap_bits <= 0:
        parser.error("--cap-bits must be positive")
    return args


def _settings(args) -> dict:
    get = lambda name: getattr(args, name, None)  # noqa: E731
    return {
        "command": args.command,
        "structure": get("structure"),
        "condition": get("condition"),
        "colors": get("colors"),
        "weights": get("weights"),
        "mode": get("mode") or "closed",
        "mode_given": get("mode") is not None,
        "mu": get("mu"),
        "image": get("image"),
        "hom": bool(get("hom")),
        "cap_bits": args.cap_bits,
    }


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    except DomcountError as exc:
        print(f"domcount: {exc}", file=sys.stderr)
        return EXIT_PARSE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    out = open(args.out, "w") if args.out else stdout
    status = EXIT_OK
    try:
        if args.command == "sweep":
            try:
                rec = run_sweep(args)
            except CapExceededError as exc:
                rec, status = {"check": args.check, "error": "cap", "message": str(exc)}, EXIT_CAP
            except DomcountError as exc:
                print(f"domcount: {exc}", file=sys.stderr)
                return EXIT_PARSE
            out.write(json.dumps(rec) + "\n")
            if rec.get("verdict") == bounds.FAILS:
                status = EXIT_FAILED
            return status

        settings = _settings(args)
        try:
            tasks = [(settings, i, lineno, G.to_graph6()) for i, (lineno, G) in enumerate(_graphs(args))]
        except (DomcountError, OSError) as exc:
            print(f"domcount: {exc}", file=sys.stderr)
            return EXIT_PARSE
        failed = cap_hit = bad_input = False
        for records in ordered_map(evaluate, tasks, workers=args.workers):
            for rec in records:
                out.write(json.dumps(rec) + "\n")
                failed |= rec.get("verdict") == bounds.FAILS
                cap_hit |= rec.get("error") == "cap"
                bad_input |= rec.get("error") == "input"
        if bad_input:
            status = EXIT_PARSE
        elif cap_hit:
            status = EXIT_CAP
        elif failed:
            status = EXIT_FAILED
        return status
    finally:
        if out is not stdout:
            out.close()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
