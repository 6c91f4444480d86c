"""Parse and serialize the four input file schemas; derive estimate weights.

All files are UTF-8 CSV with `.` decimals and no thousands separators:

* estimates.csv  paper_id,estimate_id,scc_usd2015_per_tC,emission_year,author_weight
* papers.csv     paper_id,peer_reviewed,marginal_correct,plausible_scenario (0/1)
* countries.csv  iso3,gdp_usd2015,emissions_tC,tax_share,income_per_capita
* scenarios.csv  scenario,year,gdp_growth,energy_intensity_decline,carbon_intensity_decline

Scenario rows carry the rates for the step from their year to the next one.
Serialization is canonical (shortest round-trip float repr), so parsing a
canonical file and writing it back is byte-stable.
"""
from __future__ import annotations

import csv
import math
import re
from dataclasses import replace
from pathlib import Path

import numpy as np

from .errors import LinkError, ParseError, ValidationError
from .params import REBASE_GROWTH
from .records import (
    CountryRecord,
    PaperRecord,
    ScenarioRow,
    ScenarioSpec,
    SccEstimate,
    WeightedSample,
)

ESTIMATES_HEADER = ["paper_id", "estimate_id", "scc_usd2015_per_tC", "emission_year", "author_weight"]
PAPERS_HEADER = ["paper_id", "peer_reviewed", "marginal_correct", "plausible_scenario"]
COUNTRIES_HEADER = ["iso3", "gdp_usd2015", "emissions_tC", "tax_share", "income_per_capita"]
SCENARIOS_HEADER = ["scenario", "year", "gdp_growth", "energy_intensity_decline", "carbon_intensity_decline"]

_ISO3 = re.compile(r"^[A-Z]{3}$")
REBASE_YEAR = 2019


def _rows(path, header):
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"input file not found: {path}")
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            first = next(reader)
        except StopIteration:
            raise ParseError(path, 1, "file is empty") from None
        if first != header:
            raise ParseError(path, 1, f"expected header {','.join(header)}")
        out = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(path, line_no, f"expected {len(header)} fields, got {len(row)}")
            out.append((line_no, row))
    return out


def _parse_float(path, line_no, field, text) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(path, line_no, f"{field}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(path, line_no, f"{field}: must be finite")
    return value


def _parse_int(path, line_no, field, text) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(path, line_no, f"{field}: not an integer: {text!r}") from None


def _parse_flag(path, line_no, field, text) -> bool:
    if text == "0":
        return False
    if text == "1":
        return True
    raise ParseError(path, line_no, f"{field}: must be 0 or 1, got {text!r}")


def _parse_id(path, line_no, field, text) -> str:
    if not text or "," in text or "\n" in text:
        raise ParseError(path, line_no, f"{field}: invalid identifier {text!r}")
    return text


def parse_papers(path) -> list[PaperRecord]:
    papers = []
    seen = set()
    for line_no, row in _rows(path, PAPERS_HEADER):
        paper_id = _parse_id(path, line_no, "paper_id", row[0])
        if paper_id in seen:
            raise ParseError(path, line_no, f"duplicate paper_id {paper_id!r}")
        seen.add(paper_id)
        papers.append(
            PaperRecord(
                paper_id=paper_id,
                peer_reviewed=_parse_flag(path, line_no, "peer_reviewed", row[1]),
                marginal_correct=_parse_flag(path, line_no, "marginal_correct", row[2]),
                plausible_scenario=_parse_flag(path, line_no, "plausible_scenario", row[3]),
            )
        )
    return papers


def parse_estimates(estimates_path, papers_path) -> tuple[list[SccEstimate], list[PaperRecord]]:
    """Parse the estimates file, joining quality scores from the papers file.

    Row order is preserved. Malformed rows raise ParseError with their line
    number; references to unknown papers raise LinkError.
    """
    papers = parse_papers(papers_path)
    by_id = {p.paper_id: p for p in papers}
    estimates = []
    for line_no, row in _rows(estimates_path, ESTIMATES_HEADER):
        paper_id = _parse_id(estimates_path, line_no, "paper_id", row[0])
        paper = by_id.get(paper_id)
        if paper is None:
            raise LinkError(
                f"{estimates_path}:{line_no}: unknown paper_id {paper_id!r}"
            )
        try:
            estimate = SccEstimate(
                paper_id=paper_id,
                estimate_id=_parse_id(estimates_path, line_no, "estimate_id", row[1]),
                value=_parse_float(estimates_path, line_no, "scc_usd2015_per_tC", row[2]),
                emission_year=_parse_int(estimates_path, line_no, "emission_year", row[3]),
                author_weight=_parse_float(estimates_path, line_no, "author_weight", row[4]),
                quality_score=paper.quality_score,
            )
        except ValidationError as exc:
            raise ParseError(estimates_path, line_no, str(exc)) from None
        estimates.append(estimate)
    return estimates, papers


def parse_countries(path) -> list[CountryRecord]:
    countries = []
    seen = set()
    for line_no, row in _rows(path, COUNTRIES_HEADER):
        code = row[0]
        if not _ISO3.match(code):
            raise ParseError(path, line_no, f"iso3: expected three capitals, got {code!r}")
        if code in seen:
            raise ParseError(path, line_no, f"duplicate country {code!r}")
        seen.add(code)
        try:
            countries.append(
                CountryRecord(
                    country_code=code,
                    gdp=_parse_float(path, line_no, "gdp_usd2015", row[1]),
                    emissions=_parse_float(path, line_no, "emissions_tC", row[2]),
                    tax_share=_parse_float(path, line_no, "tax_share", row[3]),
                    per_capita_income=_parse_float(path, line_no, "income_per_capita", row[4]),
                )
            )
        except ValidationError as exc:
            raise ParseError(path, line_no, str(exc)) from None
    return countries


def parse_scenarios(path) -> list[ScenarioSpec]:
    """Parse scenario rows, grouped by name in order of first appearance."""
    grouped: dict[str, list[ScenarioRow]] = {}
    for line_no, row in _rows(path, SCENARIOS_HEADER):
        name = _parse_id(path, line_no, "scenario", row[0])
        try:
            spec_row = ScenarioRow(
                year=_parse_int(path, line_no, "year", row[1]),
                gdp_growth=_parse_float(path, line_no, "gdp_growth", row[2]),
                energy_intensity_decline=_parse_float(path, line_no, "energy_intensity_decline", row[3]),
                carbon_intensity_decline=_parse_float(path, line_no, "carbon_intensity_decline", row[4]),
            )
        except ValidationError as exc:
            raise ParseError(path, line_no, str(exc)) from None
        grouped.setdefault(name, []).append(spec_row)
    specs = []
    for name, rows in grouped.items():
        try:
            specs.append(ScenarioSpec(name, tuple(rows)))
        except ValidationError as exc:
            raise ValidationError(f"{path}: {exc}") from None
    return specs


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _write_csv(path, header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(field) for field in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_estimates(estimates: list[SccEstimate], path) -> None:
    _write_csv(
        path,
        ESTIMATES_HEADER,
        [(e.paper_id, e.estimate_id, e.value, e.emission_year, e.author_weight) for e in estimates],
    )


def write_papers(papers: list[PaperRecord], path) -> None:
    _write_csv(
        path,
        PAPERS_HEADER,
        [(p.paper_id, p.peer_reviewed, p.marginal_correct, p.plausible_scenario) for p in papers],
    )


def write_countries(countries: list[CountryRecord], path) -> None:
    _write_csv(
        path,
        COUNTRIES_HEADER,
        [(c.country_code, c.gdp, c.emissions, c.tax_share, c.per_capita_income) for c in countries],
    )


def write_scenarios(specs: list[ScenarioSpec], path) -> None:
    rows = []
    for spec in specs:
        for r in spec.rows:
            rows.append((spec.name, r.year, r.gdp_growth, r.energy_intensity_decline, r.carbon_intensity_decline))
    _write_csv(path, SCENARIOS_HEADER, rows)


def rebase_to_2019(estimate: SccEstimate, growth: float = REBASE_GROWTH) -> SccEstimate:
    """Move an estimate to the 2019 emission year by compound growth.

    value' = value * (1 + growth)^(2019 - emission_year); the sign of the
    estimate is preserved, and a 2019 estimate is returned unchanged.
    """
    factor = (1.0 + growth) ** (REBASE_YEAR - estimate.emission_year)
    return replace(estimate, value=estimate.value * factor, emission_year=REBASE_YEAR)


def combined_weight(estimate: SccEstimate) -> float:
    """Author weight times quality score; zero author weight drops the row."""
    return estimate.author_weight * estimate.quality_score


def build_sample(estimates: list[SccEstimate], growth: float = REBASE_GROWTH) -> WeightedSample:
    """Rebase all estimates to 2019 and pair them with combined weights."""
    if not estimates:
        raise ValidationError("no estimates to build a sample from")
    rebased = [rebase_to_2019(e, growth) for e in estimates]
    values = np.array([e.value for e in rebased])
    weights = np.array([combined_weight(e) for e in rebased])
    return WeightedSample(values, weights)
