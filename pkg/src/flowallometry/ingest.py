"""Parsing of trade-record files and auxiliary per-country / per-product tables.

One canonical CSV schema per table kind, UTF-8, ``.`` decimal separator, no
thousands separators.  Blank lines and lines starting with ``#`` are ignored,
so emitted files may carry trailing metadata comments and still round-trip.

    trades:     year,exporter,importer,product,value
    attributes: country,value
    columns:    product,value
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

from .errors import DuplicateCountry, FlowDataWarning, ParseError
from .netcore import country_id, product_code

TRADES_HEADER = ("year", "exporter", "importer", "product", "value")
ATTRIBUTES_HEADER = ("country", "value")
COLUMN_HEADER = ("product", "value")


@dataclass(frozen=True)
class TradeRecord:
    """One bilateral flow observation."""

    year: int
    exporter: str
    importer: str
    product: str
    value: float


@dataclass(frozen=True)
class CountryAttribute:
    """One per-country scalar (GDP per capita in dollars, or a ratio in [0,1])."""

    country: str
    value: float


def _rows(source, expected_header):
    """Yield (data_row_index, fields) from CSV text, bytes, path, or file-like."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, (str, Path)) and "\n" not in str(source):
        text = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")

    reader = csv.reader(io.StringIO(text))
    header = None
    row_index = 0
    for fields in reader:
        if not fields or (len(fields) == 1 and not fields[0].strip()):
            continue
        if fields[0].lstrip().startswith("#"):
            continue
        if header is None:
            header = tuple(f.strip() for f in fields)
            if header != expected_header:
                raise ParseError(0, None,
                                 f"expected header {','.join(expected_header)}, "
                                 f"got {','.join(header)}")
            continue
        row_index += 1
        if len(fields) != len(expected_header):
            raise ParseError(row_index, None,
                             f"expected {len(expected_header)} fields, got {len(fields)}")
        yield row_index, [f.strip() for f in fields]
    if header is None:
        raise ParseError(0, None, "empty file: missing header")


def _nonnegative_value(row, raw):
    try:
        value = float(raw)
    except ValueError:
        raise ParseError(row, "value", f"not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise ParseError(row, "value", f"not finite: {raw!r}")
    if value < 0:
        raise ParseError(row, "value", f"negative: {raw!r}")
    return value


def parse_trades(source) -> list[TradeRecord]:
    """Parse the canonical trades CSV into records, aborting on the first bad field."""
    records = []
    for row, (year_s, exporter, importer, product, value_s) in _rows(source, TRADES_HEADER):
        try:
            year = int(year_s)
        except ValueError:
            raise ParseError(row, "year", f"not an integer: {year_s!r}") from None
        try:
            exporter = country_id(exporter)
        except ValueError as exc:
            raise ParseError(row, "exporter", str(exc)) from None
        try:
            importer = country_id(importer)
        except ValueError as exc:
            raise ParseError(row, "importer", str(exc)) from None
        try:
            product = product_code(product)
        except ValueError as exc:
            raise ParseError(row, "product", str(exc)) from None
        value = _nonnegative_value(row, value_s)
        records.append(TradeRecord(year, exporter, importer, product, value))
    return records


def write_trades(records: Iterable[TradeRecord], target=None) -> str:
    """Serialize records back to the canonical trades CSV; returns the text.

    ``target`` may be a path or file-like; parsing the output reproduces the
    records field-for-field.
    """
    lines = [",".join(TRADES_HEADER)]
    lines.extend(f"{r.year},{r.exporter},{r.importer},{r.product},{r.value!r}"
                 for r in records)
    text = "\n".join(lines) + "\n"
    if isinstance(target, (str, Path)):
        Path(target).write_text(text, encoding="utf-8", newline="\n")
    elif target is not None:
        target.write(text)
    return text


def parse_attributes(source, kind: str | None = None) -> list[CountryAttribute]:
    """Parse a per-country attribute CSV (header ``country,value``).

    ``kind`` enables range checks: ``"gdp"`` requires strictly positive values,
    ``"ratio"`` requires values in [0, 1].  Duplicate countries are an error.
    """
    seen: set[str] = set()
    out = []
    for row, (country, value_s) in _rows(source, ATTRIBUTES_HEADER):
        try:
            country = country_id(country)
        except ValueError as exc:
            raise ParseError(row, "country", str(exc)) from None
        if country in seen:
            raise DuplicateCountry(f"row {row}: duplicate country {country}")
        seen.add(country)
        value = _nonnegative_value(row, value_s)
        if kind == "gdp" and value <= 0:
            raise ParseError(row, "value", f"GDP per capita must be > 0: {value}")
        if kind == "ratio" and not (0 <= value <= 1):
            raise ParseError(row, "value", f"ratio must be in [0,1]: {value}")
        out.append(CountryAttribute(country, value))
    return out


def parse_product_column(source) -> dict[str, float]:
    """Parse a per-product value CSV (header ``product,value``) into a mapping."""
    out: dict[str, float] = {}
    for row, (product, value_s) in _rows(source, COLUMN_HEADER):
        try:
            product = product_code(product)
        except ValueError as exc:
            raise ParseError(row, "product", str(exc)) from None
        if product in out:
            raise ParseError(row, "product", f"duplicate product code {product}")
        out[product] = _nonnegative_value(row, value_s)
    return out


def parse_exclusions(source) -> set[str]:
    """Parse an exclusion list: one product code per line, ``#`` comments allowed."""
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source if isinstance(source, str) else source.read()
    codes = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        codes.add(product_code(line))
    return codes


def enumerate_products(records: Iterable[TradeRecord], digit_level: int) -> list[str]:
    """Distinct product codes truncated to ``digit_level``, sorted ascending.

    Codes shorter than the digit level are excluded with a counted warning
    rather than padded into invented categories.
    """
    if digit_level < 1 or digit_level > 4:
        raise ValueError(f"digit level must be in 1..4, got {digit_level}")
    codes = set()
    short = 0
    for rec in records:
        if len(rec.product) < digit_level:
            short += 1
            continue
        codes.add(rec.product[:digit_level])
    if short:
        warnings.warn(f"excluded {short} record(s) with codes shorter than "
                      f"{digit_level} digits", FlowDataWarning, stacklevel=2)
    return sorted(codes)
