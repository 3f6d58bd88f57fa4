"""Batch orchestration: per-product analyses, exponent distributions, time
series, and correlation against complexity columns.

Batch results are a pure function of (records, parameters): per-product work
may run on a thread pool, but results are always reduced in product-code
order, so parallel and serial runs are identical.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import allometry, flowcalc, metrics
from .errors import (DegenerateFit, EmptySelection, SingularNetwork,
                     TooFewPoints)
from .ingest import TradeRecord, enumerate_products
from .netcore import ALL, build_network

PRIMARY_PREFIXES = frozenset("01234")
MANUFACTURED_PREFIXES = frozenset("56789")


@dataclass(frozen=True)
class ProductResult:
    """Per-network summary row: scaling fit plus inequality measures."""

    product: str
    year: int
    eta: float
    stderr: float
    r2: float
    classification: str
    gini: float
    dominance: float
    n_countries: int
    topk: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class SkippedProduct:
    """A product that could not be analyzed, with the reason; never silent."""

    product: str
    reason: str


@dataclass(frozen=True)
class BatchResult:
    results: list[ProductResult]            # sorted by product code
    integrated: ProductResult | None        # all products as one network
    skipped: list[SkippedProduct]


def summarize_network(net, topk: int = 10) -> ProductResult:
    """Analyze, fit, and summarize one already-built network."""
    analysis = flowcalc.analyze(net)
    fit = allometry.fit(analysis.throughflow, analysis.impact)
    report = metrics.inequality_report(net.nodes, analysis.impact, k=topk)
    return ProductResult(net.product, net.year, fit.eta, fit.stderr, fit.r2,
                         fit.classification, report.gini, report.dominance,
                         net.n, report.topk)


def analyze_product(records: Iterable[TradeRecord], product: str, year: int,
                    digit_level: int, min_flow: float = 0.0,
                    topk: int = 10) -> ProductResult:
    """Build, analyze, fit, and summarize one product network."""
    net = build_network(records, product, year, digit_level, min_flow=min_flow)
    return summarize_network(net, topk=topk)


def batch(records: Iterable[TradeRecord], year: int, digit_level: int,
          min_countries: int = 10, min_flow: float = 0.0,
          workers: int | None = None, topk: int = 10) -> BatchResult:
    """Analyze every product at ``digit_level`` for one year, plus the
    integrated all-products network.

    Products with fewer retained countries than ``min_countries`` or failing
    with a singular balance / degenerate fit land in the skip list with the
    reason.  ``workers`` > 1 runs products on a thread pool; the output is
    identical to a serial run.
    """
    if min_countries < 3:
        raise ValueError(f"min_countries must be at least 3, got {min_countries}")
    year_records = [r for r in records if r.year == year]
    if not year_records:
        raise EmptySelection(f"no records for year {year}")
    products = enumerate_products(year_records, digit_level)

    def run(code: str):
        try:
            net = build_network(year_records, code, year, digit_level,
                                min_flow=min_flow)
            if net.n < min_countries:
                raise TooFewPoints(f"{net.n} countries < {min_countries}")
            return code, summarize_network(net, topk=topk), None
        except (TooFewPoints, DegenerateFit, SingularNetwork, EmptySelection) as exc:
            return code, None, f"{type(exc).__name__}: {exc}"

    jobs = products + [ALL]
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, jobs))
    else:
        outcomes = [run(code) for code in jobs]

    results = []
    integrated = None
    skipped = []
    for code, result, reason in sorted(outcomes, key=lambda o: (o[0] == ALL, o[0])):
        if result is not None:
            if code == ALL:
                integrated = result
            else:
                results.append(result)
        else:
            skipped.append(SkippedProduct(code, reason))
    return BatchResult(results, integrated, skipped)


@dataclass(frozen=True)
class Histogram:
    """Left-closed exponent bins with optional stacked group counts."""

    edges: tuple[float, ...]                 # len(bins) + 1 ascending edges
    counts: tuple[int, ...]
    stacks: dict[str, tuple[int, ...]] = field(default_factory=dict)


def histogram(results: Iterable[ProductResult], bin_width: float,
              stack_by: str | None = None) -> Histogram:
    """Bin per-product exponents into left-closed bins of ``bin_width``.

    ``stack_by`` may be ``"prefix"`` (ten 1-digit groups) or ``"class"``
    (primary = prefixes 0-4, manufactured = 5-9); every stack group is
    emitted even when empty and group counts sum to the totals.  Bins are
    anchored at the largest multiple of the width not above the smallest
    exponent.
    """
    rows = list(results)
    if not rows:
        raise ValueError("no results to bin")
    if bin_width <= 0:
        raise ValueError(f"bin width must be positive, got {bin_width}")
    if stack_by not in (None, "prefix", "class"):
        raise ValueError(f"unknown stacking mode {stack_by!r}")

    etas = np.array([r.eta for r in rows])
    # Bin in index space so multiples of the width land on their own left
    # edge despite division rounding (0.7/0.05 floors to 13 otherwise).
    raw = np.floor(etas / bin_width + 1e-9).astype(int)
    first = int(raw.min())
    indices = raw - first
    n_bins = int(indices.max()) + 1
    edges = tuple(float((first + k) * bin_width) for k in range(n_bins + 1))

    counts = [0] * n_bins
    groups = ([str(d) for d in range(10)] if stack_by == "prefix"
              else ["primary", "manufactured"] if stack_by == "class" else [])
    stacks = {g: [0] * n_bins for g in groups}
    for row, idx in zip(rows, indices):
        counts[idx] += 1
        if stack_by == "prefix":
            stacks[row.product[0]][idx] += 1
        elif stack_by == "class":
            key = "primary" if row.product[0] in PRIMARY_PREFIXES else "manufactured"
            stacks[key][idx] += 1
    return Histogram(edges, tuple(counts),
                     {g: tuple(v) for g, v in stacks.items()})


def timeseries(records: Iterable[TradeRecord], digit_level: int,
               years: Iterable[int] | None = None, min_countries: int = 10,
               min_flow: float = 0.0) -> dict[str, dict[int, float | None]]:
    """Per-product exponent by year; missing product-year combinations are
    explicit ``None`` gaps, never zeros."""
    records = list(records)
    if years is None:
        years = sorted({r.year for r in records})
    years = list(years)
    if not years:
        raise ValueError("no years requested")

    per_year: dict[int, dict[str, float]] = {}
    for yr in years:
        try:
            outcome = batch(records, yr, digit_level, min_countries=min_countries,
                            min_flow=min_flow)
            per_year[yr] = {r.product: r.eta for r in outcome.results}
        except EmptySelection:
            per_year[yr] = {}
    codes = sorted({code for fits in per_year.values() for code in fits})
    return {code: {yr: per_year[yr].get(code) for yr in years} for code in codes}


def correlate_complexity(results: Iterable[ProductResult],
                         column: Mapping[str, float],
                         exclusions: Iterable[str] = ()) -> tuple[float, list[tuple[str, float, float]]]:
    """Pearson correlation of per-product exponents against a complexity column.

    Inner-joins on product code, drops the user-supplied exclusions, and
    returns the coefficient plus the joined (product, eta, value) pairs for
    plotting.  Exclusion is never automatic.
    """
    excluded = set(exclusions)
    pairs = [(r.product, r.eta, float(column[r.product]))
             for r in sorted(results, key=lambda r: r.product)
             if r.product in column and r.product not in excluded]
    if len(pairs) < 3:
        raise TooFewPoints(f"only {len(pairs)} products joined; need at least 3")
    r = metrics.pearson([p[1] for p in pairs], [p[2] for p in pairs])
    return r, pairs
