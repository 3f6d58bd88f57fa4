"""Command-line front end.

Subcommands wrap the library one-to-one: ``analyze`` for a single product
network, ``batch`` for the per-product table plus the integrated network,
``timeseries`` for exponents over years, ``prody`` and ``correlate`` for
complexity columns, ``backbone`` for graph export, and ``synth`` for
synthetic fixture generation.

JSON is the canonical machine format; CSV mirrors it for spreadsheets and
DOT is for backbones only.  Every emitted file ends with a metadata block
(tool version, parameters, conventions), contains no timestamps or paths,
and is byte-identical across repeated runs.  Exit codes: 0 success, 1
input/config error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__, allometry, flowcalc, metrics, pipeline
from .backbone import extract
from .errors import FlowAnalysisError, SingularNetwork
from .ingest import (parse_attributes, parse_exclusions, parse_product_column,
                     parse_trades, write_trades)
from .netcore import ALL, build_network
from .synth import SynthSpec, generate, to_records

CONVENTIONS = {
    "log_base": "10",
    "stderr": "OLS slope standard error, n-2 dof",
    "neutral_band": "|eta - 1| <= 2 * stderr",
    "gini": "population pairwise form",
    "throughflow": "max(total imports, total exports)",
    "backbone_rule": ("per-endpoint mass-weighted quantile on the directed "
                      "network, ties kept; visualization only"),
}


# ---------------------------------------------------------------------------
# document rendering
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _meta(command: str, params: dict) -> dict:
    return {
        "tool": "flowallometry",
        "version": __version__,
        "command": command,
        "parameters": params,
        "conventions": CONVENTIONS,
    }


def _render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _render_csv(header: list[str], rows: list[list], meta: dict,
                extra_comments: list[str] = ()) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    lines.extend(extra_comments)
    lines.append(f"# tool: {meta['tool']} {meta['version']}")
    lines.append(f"# command: {meta['command']}")
    for key, value in meta["parameters"].items():
        lines.append(f"# parameter {key}: {value}")
    for key, value in meta["conventions"].items():
        lines.append(f"# convention {key}: {value}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# input marshalling
# ---------------------------------------------------------------------------

def _read_trades(paths: list[str]):
    records = []
    for path in paths:
        records.extend(parse_trades(Path(path)))
    return records


def _read_gdp(path: str) -> dict[str, float]:
    return {a.country: a.value for a in parse_attributes(Path(path), kind="gdp")}


def _parse_years(text: str | None) -> list[int] | None:
    if text is None:
        return None
    years: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            years.extend(range(int(lo), int(hi) + 1))
        else:
            years.append(int(part))
    return years


def _result_json(result: pipeline.ProductResult) -> dict:
    return {
        "product": result.product,
        "year": result.year,
        "n": result.n_countries,
        "eta": result.eta,
        "stderr": result.stderr,
        "r2": result.r2,
        "classification": result.classification,
        "gini": result.gini,
        "dominance": result.dominance,
        "topk": [{"country": c, "impact": v} for c, v in result.topk],
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> str:
    records = _read_trades(args.input)
    net = build_network(records, args.product, args.year, args.digits,
                        min_flow=args.min_flow)
    analysis = flowcalc.analyze(net)
    fit = allometry.fit(analysis.throughflow, analysis.impact)
    report = metrics.inequality_report(net.nodes, analysis.impact)

    nodes = [{
        "country": code,
        "throughflow": float(analysis.throughflow[i]),
        "source": float(analysis.source[i]),
        "impact": float(analysis.impact[i]),
        "log10_throughflow": math.log10(analysis.throughflow[i]),
        "log10_impact": math.log10(analysis.impact[i]),
    } for i, code in enumerate(net.nodes)]

    meta = _meta("analyze", {"product": args.product, "year": args.year,
                             "digits": args.digits, "min_flow": args.min_flow,
                             "format": args.format})
    if args.format == "json":
        return _render_json({
            "product": net.product, "year": net.year, "n": net.n,
            "eta": fit.eta, "stderr": fit.stderr, "r2": fit.r2,
            "classification": fit.classification,
            "gini": report.gini, "dominance": report.dominance,
            "topk": [{"country": c, "impact": v} for c, v in report.topk],
            "nodes": nodes,
            "meta": meta,
        })
    header = ["product", "year", "n", "eta", "stderr", "r2", "classification",
              "gini", "dominance", "country", "throughflow", "source",
              "impact", "log10_throughflow", "log10_impact"]
    rows = [[net.product, net.year, net.n, fit.eta, fit.stderr, fit.r2,
             fit.classification, report.gini, report.dominance,
             node["country"], node["throughflow"], node["source"],
             node["impact"], node["log10_throughflow"], node["log10_impact"]]
            for node in nodes]
    return _render_csv(header, rows, meta)


def _batch_presentation(outcome: pipeline.BatchResult) -> list[pipeline.ProductResult]:
    ordered = sorted(outcome.results, key=lambda r: (-r.eta, r.product))
    if outcome.integrated is not None:
        ordered.append(outcome.integrated)
    return ordered


def cmd_batch(args) -> str:
    records = _read_trades(args.input)
    outcome = pipeline.batch(records, args.year, args.digits,
                             min_countries=args.min_countries,
                             min_flow=args.min_flow, workers=args.workers)
    ordered = _batch_presentation(outcome)
    meta = _meta("batch", {"year": args.year, "digits": args.digits,
                           "min_countries": args.min_countries,
                           "min_flow": args.min_flow, "format": args.format})
    if args.format == "json":
        return _render_json({
            "year": args.year, "digits": args.digits,
            "results": [_result_json(r) for r in ordered],
            "skipped": [{"product": s.product, "reason": s.reason}
                        for s in outcome.skipped],
            "meta": meta,
        })
    header = ["code", "eta", "stderr", "r2", "gini", "dominance", "n"]
    rows = [[r.product, r.eta, r.stderr, r.r2, r.gini, r.dominance,
             r.n_countries] for r in ordered]
    comments = [f"# skipped {s.product}: {s.reason}" for s in outcome.skipped]
    return _render_csv(header, rows, meta, comments)


def cmd_timeseries(args) -> str:
    records = _read_trades(args.input)
    years = _parse_years(args.years)
    series = pipeline.timeseries(records, args.digits, years=years,
                                 min_countries=args.min_countries,
                                 min_flow=args.min_flow)
    all_years = years if years is not None else sorted({r.year for r in records})
    meta = _meta("timeseries", {"digits": args.digits,
                                "years": ",".join(map(str, all_years)),
                                "min_countries": args.min_countries,
                                "format": args.format})
    if args.format == "json":
        return _render_json({
            "digits": args.digits, "years": all_years,
            "series": [{"product": code,
                        "points": [{"year": yr, "eta": by_year[yr]}
                                   for yr in all_years]}
                       for code, by_year in series.items()],
            "meta": meta,
        })
    rows = [[code, yr, by_year[yr]]
            for code, by_year in series.items() for yr in all_years]
    return _render_csv(["product", "year", "eta"], rows, meta)


def cmd_prody(args) -> str:
    records = _read_trades(args.input)
    table = metrics.complexity_table(records, args.year, args.digits,
                                     gdp=_read_gdp(args.gdp))
    values = metrics.prody_all(table)
    meta = _meta("prody", {"year": args.year, "digits": args.digits,
                           "format": args.format})
    if args.format == "json":
        return _render_json({
            "year": args.year, "digits": args.digits,
            "products": [{"product": p, "prody": v} for p, v in values.items()],
            "meta": meta,
        })
    rows = [[p, v] for p, v in values.items()]
    return _render_csv(["product", "prody"], rows, meta)


def cmd_correlate(args) -> str:
    if (args.complexity_column is None) == (args.gdp is None):
        raise ValueError("give exactly one of --complexity-column or --gdp")
    records = _read_trades(args.input)
    outcome = pipeline.batch(records, args.year, args.digits,
                             min_countries=args.min_countries,
                             min_flow=args.min_flow, workers=args.workers)
    if args.complexity_column is not None:
        column = parse_product_column(Path(args.complexity_column))
        column_name = "file"
    else:
        table = metrics.complexity_table(records, args.year, args.digits,
                                         gdp=_read_gdp(args.gdp))
        column = metrics.prody_all(table)
        column_name = "prody"
    exclusions = parse_exclusions(Path(args.exclude)) if args.exclude else set()
    r, pairs = pipeline.correlate_complexity(outcome.results, column,
                                             exclusions=exclusions)
    meta = _meta("correlate", {"year": args.year, "digits": args.digits,
                               "min_countries": args.min_countries,
                               "column": column_name,
                               "excluded": ",".join(sorted(exclusions)),
                               "format": args.format})
    if args.format == "json":
        return _render_json({
            "r": r, "n_pairs": len(pairs),
            "excluded": sorted(exclusions),
            "pairs": [{"product": p, "eta": e, "value": v} for p, e, v in pairs],
            "meta": meta,
        })
    rows = [[p, e, v] for p, e, v in pairs]
    comments = [f"# pearson_r: {r!r}", f"# n_pairs: {len(pairs)}"]
    return _render_csv(["product", "eta", "value"], rows, meta, comments)


def cmd_backbone(args) -> str:
    records = _read_trades(args.input)
    net = build_network(records, args.product, args.year, args.digits,
                        min_flow=args.min_flow)
    bone = extract(net, args.alpha)
    meta = _meta("backbone", {"product": args.product, "year": args.year,
                              "digits": args.digits, "alpha": args.alpha,
                              "format": args.format})
    nodes = [{"id": code, "role": bone.roles[code], "size": bone.sizes[code]}
             for code in net.nodes]
    links = [{"source": s, "target": t,
              "weight": float(net.flux[net.index(s), net.index(t)])}
             for s, t in sorted(bone.kept)]
    if args.format == "json":
        return _render_json({"directed": True, "alpha": args.alpha,
                             "nodes": nodes, "links": links, "meta": meta})

    max_size = max(node["size"] for node in nodes)
    max_weight = max(link["weight"] for link in links)
    lines = ["digraph backbone {",
             '  node [shape=circle, style=filled, fixedsize=true];']
    for node in nodes:
        color = "lightskyblue" if node["role"] == "exporter" else "darkorange"
        width = 0.3 + 1.2 * math.sqrt(node["size"] / max_size)
        lines.append(f'  "{node["id"]}" [width={width!r}, fillcolor="{color}", '
                     f'tooltip="{node["role"]}, volume {node["size"]!r}"];')
    for link in links:
        penwidth = 0.5 + 4.5 * link["weight"] / max_weight
        lines.append(f'  "{link["source"]}" -> "{link["target"]}" '
                     f'[penwidth={penwidth!r}];')
    lines.append("}")
    lines.append(f"// tool: {meta['tool']} {meta['version']}")
    lines.append(f"// command: {meta['command']}")
    for key, value in meta["parameters"].items():
        lines.append(f"// parameter {key}: {value}")
    for key, value in meta["conventions"].items():
        lines.append(f"// convention {key}: {value}")
    return "\n".join(lines) + "\n"


def cmd_synth(args) -> str:
    weight = args.weight
    if ":" in weight:
        lo, hi = weight.split(":", 1)
        weight = (float(lo), float(hi))
    else:
        weight = float(weight)
    spec = SynthSpec(args.kind, args.n, weight, args.density,
                     args.back_density, args.seed)
    net = generate(spec, year=args.year)
    text = write_trades(to_records(net, product=args.product, year=args.year))
    meta = _meta("synth", {"kind": args.kind, "n": args.n,
                           "weight": args.weight, "density": args.density,
                           "back_density": args.back_density,
                           "seed": args.seed, "product": args.product,
                           "year": args.year})
    lines = [f"# tool: {meta['tool']} {meta['version']}",
             f"# command: {meta['command']}"]
    lines.extend(f"# parameter {k}: {v}" for k, v in meta["parameters"].items())
    lines.extend(f"# convention {k}: {v}" for k, v in meta["conventions"].items())
    return text + "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sub, *, product=False, year=True, formats=("json", "csv")):
    sub.add_argument("--input", action="append", required=True,
                     help="canonical trades CSV (repeatable)")
    if year:
        sub.add_argument("--year", type=int, required=True)
    if product:
        sub.add_argument("--product", default=ALL,
                         help="product code at the digit level, or ALL")
    sub.add_argument("--digits", type=int, default=1,
                     help="product-code digit level, 1..4 (default 1)")
    sub.add_argument("--min-flow", type=float, default=0.0,
                     help="drop aggregated edges below this value (default off)")
    sub.add_argument("--format", choices=formats, default=formats[0])
    sub.add_argument("--out", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowallometry",
        description="Hierarchicality analysis of trade flow networks")
    parser.add_argument("--version", action="version",
                        version=f"flowallometry {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="single-network analysis and fit")
    _add_common(p, product=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("batch", help="per-product table plus integrated network")
    _add_common(p)
    p.add_argument("--min-countries", type=int, default=10)
    p.add_argument("--workers", type=int, default=None,
                   help="thread count for per-product analyses")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("timeseries", help="exponents per product over years")
    _add_common(p, year=False)
    p.add_argument("--years", help="e.g. 1999,2000 or 1962-2000 (default: all)")
    p.add_argument("--min-countries", type=int, default=10)
    p.set_defaults(func=cmd_timeseries)

    p = sub.add_parser("prody", help="GDP-weighted product sophistication")
    _add_common(p)
    p.add_argument("--gdp", required=True,
                   help="per-country GDP per capita CSV (country,value)")
    p.set_defaults(func=cmd_prody)

    p = sub.add_parser("correlate", help="exponent vs complexity column")
    _add_common(p)
    p.add_argument("--min-countries", type=int, default=10)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--gdp", help="compute sophistication from this GDP file")
    p.add_argument("--complexity-column",
                   help="per-product value CSV (product,value)")
    p.add_argument("--exclude", help="file of product codes to exclude")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("backbone", help="sparse backbone export")
    _add_common(p, product=True, formats=("dot", "json"))
    p.add_argument("--alpha", type=float, default=0.05,
                   help="significance level in (0, 1] (default 0.05)")
    p.set_defaults(func=cmd_backbone)

    p = sub.add_parser("synth", help="generate a synthetic fixture CSV")
    p.add_argument("kind", choices=("star", "chain", "random_tree", "random_flow"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", default="1.0", help="W or LO:HI range")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--back-density", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--product", default="1")
    p.add_argument("--year", type=int, default=2000)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        text = args.func(args)
    except SingularNetwork as exc:
        print(f"flowallometry: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (FlowAnalysisError, OSError, ValueError) as exc:
        print(f"flowallometry: error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return 0


def entrypoint():
    raise SystemExit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
