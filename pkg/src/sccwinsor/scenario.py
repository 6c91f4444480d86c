"""Project country panels and the winsorized mean through time.

Global scenario growth is downscaled to countries by a convergence rule
(poorer countries grow faster), rescaled so the GDP-weighted aggregate matches
the global rate exactly. Energy and carbon intensity decline uniformly across
countries. Estimate values compound at the social-cost-of-carbon growth rate;
per-country limits are recomputed every year, optionally with the carbon-tax
abatement feedback applied within each year.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .abatement import apply_tax_feedback, calibrate_alpha
from .errors import ValidationError
from .params import (
    GROWTH_BOUND,
    GROWTH_BOUND_MODE,
    GROWTH_INTERCEPT,
    GROWTH_SLOPE,
    INCOME_REF,
    SCC_GROWTH,
    SCC_GROWTH_TAXED,
    TAX_GROWTH_INTERCEPT,
    TAX_GROWTH_SLOPE,
    TAX_SHARE_CAP,
    Params,
)
from .records import CountryRecord, CountryTrajectory, ScenarioRow, ScenarioSpec, WeightedSample
from .stats import weighted_mean
from .validation import require
from .winsor import WinsorLimits, WinsorPolicy, compute_limits, winsorize_sample


def national_growth_rate(
    income: float,
    intercept: float = GROWTH_INTERCEPT,
    slope: float = GROWTH_SLOPE,
    bound: float = GROWTH_BOUND,
    bound_mode: str = GROWTH_BOUND_MODE,
) -> float:
    """Per-capita-income based national growth rate, intercept - slope*ln(y).

    bound_mode "floor" keeps the rate at least ``bound`` (poorer countries
    grow faster); "cap" applies ``bound`` as a maximum instead.
    """
    require(income > 0, "income must be positive")
    rate = intercept - slope * math.log(income)
    if bound_mode == "floor":
        return max(bound, rate)
    if bound_mode == "cap":
        return min(bound, rate)
    raise ValidationError(f"bound_mode must be 'floor' or 'cap', got {bound_mode!r}")


def rescale_growth(
    rates: dict[str, float], countries: list[CountryRecord], global_growth: float
) -> dict[str, float]:
    """Scale all growth factors so aggregate GDP growth matches the global rate.

    Solves for the single scalar lam with sum_c Y_c*(1+g_c)*lam equal to
    (sum_c Y_c)*(1+global_growth) and returns g_c' = lam*(1+g_c) - 1.
    """
    require(global_growth > -1, "global growth must be > -1")
    require(bool(countries), "country panel is empty")
    total_gdp = math.fsum(c.gdp for c in countries)
    require(total_gdp > 0, "no positive-GDP country")
    grown = math.fsum(c.gdp * (1.0 + rates[c.country_code]) for c in countries)
    require(grown > 0, "aggregate GDP would be wiped out before rescaling")
    lam = total_gdp * (1.0 + global_growth) / grown
    return {code: lam * (1.0 + g) - 1.0 for code, g in rates.items()}


def evolve_country(record: CountryRecord, row: ScenarioRow, growth: float) -> CountryRecord:
    """One year forward: GDP and income grow; emissions follow GDP less the
    uniform energy- and carbon-intensity declines. Population is held fixed."""
    factor = 1.0 + growth
    emissions = (
        record.emissions
        * factor
        * (1.0 - row.energy_intensity_decline)
        * (1.0 - row.carbon_intensity_decline)
    )
    if not emissions > 0:
        raise ValidationError(
            f"{record.country_code}: emissions would be non-positive in {row.year + 1}"
        )
    return replace(
        record,
        gdp=record.gdp * factor,
        emissions=emissions,
        per_capita_income=record.per_capita_income * factor,
    )


def evolve_tax_share(
    tax_share: float,
    income: float,
    intercept: float = TAX_GROWTH_INTERCEPT,
    slope: float = TAX_GROWTH_SLOPE,
    cap: float = TAX_SHARE_CAP,
    income_ref: float = INCOME_REF,
) -> float:
    """Grow the tax share with income, capped so it cannot run away."""
    require(0 <= tax_share <= 1, "tax share must be in [0, 1]")
    require(income > 0 and income_ref > 0, "income and income_ref must be positive")
    factor = 1.0 + intercept + slope * math.log(income / income_ref)
    return min(cap, tax_share * factor)


def scc_path(
    s0: float,
    with_tax: bool,
    years,
    no_tax_rate: float = SCC_GROWTH,
    with_tax_rate: float = SCC_GROWTH_TAXED,
) -> dict[int, float]:
    """Compound an anchor value along a year range.

    The first year carries s0 itself; each later year multiplies by the
    applicable annual growth factor.
    """
    years = list(years)
    if not years:
        return {}
    rate = with_tax_rate if with_tax else no_tax_rate
    first = years[0]
    return {year: s0 * (1.0 + rate) ** (year - first) for year in years}


def evolve_panel(
    countries: list[CountryRecord], row: ScenarioRow, params: Params
) -> list[CountryRecord]:
    """Advance the whole panel one year using the scenario row's rates."""
    rates = {
        c.country_code: national_growth_rate(
            c.per_capita_income,
            intercept=params.growth_intercept,
            slope=params.growth_slope,
            bound=params.growth_bound,
            bound_mode=params.growth_bound_mode,
        )
        for c in countries
    }
    rates = rescale_growth(rates, countries, row.gdp_growth)
    evolved = []
    for rec in countries:
        nxt = evolve_country(rec, row, rates[rec.country_code])
        tax = evolve_tax_share(
            rec.tax_share,
            rec.per_capita_income,
            intercept=params.tax_growth_intercept,
            slope=params.tax_growth_slope,
            cap=params.tax_share_cap,
            income_ref=params.income_ref,
        )
        evolved.append(replace(nxt, tax_share=tax))
    return evolved


def project_panel(
    countries: list[CountryRecord],
    spec: ScenarioSpec,
    from_year: int,
    to_year: int,
    params: Params | None = None,
) -> list[CountryTrajectory]:
    """Country trajectories over [from_year, to_year] under one scenario."""
    params = params or Params()
    _check_horizon(spec, from_year, to_year)
    panel = list(countries)
    by_code: dict[str, dict[int, CountryRecord]] = {c.country_code: {} for c in countries}
    for year in range(from_year, to_year + 1):
        if year > from_year:
            panel = evolve_panel(panel, spec.row_for(year - 1), params)
        for rec in panel:
            by_code[rec.country_code][year] = rec
    return [CountryTrajectory(code, years) for code, years in by_code.items()]


@dataclass(frozen=True)
class YearResult:
    """Projection output for a single year."""

    year: int
    mean_scc: float
    limits: WinsorLimits | None
    weitzman_avg: float
    hobbes_avg: float
    iterations: int
    reduction: float


@dataclass(frozen=True)
class ProjectionResult:
    """Winsorized-mean path for one (scenario, policy, with_tax) run."""

    scenario: str
    policy: WinsorPolicy
    with_tax: bool
    by_year: dict[int, YearResult]


def _check_horizon(spec: ScenarioSpec, from_year: int, to_year: int) -> None:
    require(from_year <= to_year, "horizon start must not exceed its end")
    if from_year < spec.first_year or to_year > spec.last_year:
        raise ValidationError(
            f"horizon {from_year}-{to_year} outside scenario {spec.name!r} "
            f"years {spec.first_year}-{spec.last_year}"
        )


def _limit_average(countries: list[CountryRecord], kind: str) -> float:
    """Emission-weighted average of a limit family over the panel."""
    limits = compute_limits(countries, WinsorPolicy(kind), 0.0)
    total = math.fsum(c.emissions for c in countries)
    return math.fsum(c.emissions * limits.per_country[c.country_code] for c in countries) / total


def project_mean_path(
    sample: WeightedSample,
    countries: list[CountryRecord],
    spec: ScenarioSpec,
    policy: WinsorPolicy,
    with_tax_feedback: bool = False,
    *,
    from_year: int | None = None,
    to_year: int | None = None,
    params: Params | None = None,
) -> ProjectionResult:
    """Winsorized weighted mean per year under a growth scenario.

    Each year the panel advances, every estimate compounds at the
    social-cost-of-carbon growth rate, and limits are recomputed. With
    with_tax_feedback (limit-family policies only) the within-year
    winsorize-tax fixed point replaces the plain winsorized mean, and the
    slower with-tax growth rate applies over the whole horizon; for other
    policies the flag only switches the growth rate.
    """
    params = params or Params()
    from_year = spec.first_year if from_year is None else from_year
    to_year = spec.last_year if to_year is None else to_year
    _check_horizon(spec, from_year, to_year)
    growth = params.scc_growth_taxed if with_tax_feedback else params.scc_growth
    feedback = with_tax_feedback and policy.kind in ("weitzman", "hobbes")

    panel = list(countries)
    values = sample.values.copy()
    by_year: dict[int, YearResult] = {}
    for year in range(from_year, to_year + 1):
        if year > from_year:
            panel = evolve_panel(panel, spec.row_for(year - 1), params)
            values = values * (1.0 + growth)
        current = WeightedSample(values, sample.weights)
        if feedback:
            abate = calibrate_alpha(panel, r_unit=params.unit_reduction)
            result = apply_tax_feedback(
                current,
                panel,
                policy,
                abate,
                tol=params.feedback_tol,
                max_iter=params.feedback_max_iter,
                single_pass=params.feedback_single_pass,
            )
            mean = result.mean_scc
            limits = result.limits
            stat_panel = result.panel
            iterations = result.iterations
            reduction = result.reduction
        else:
            if policy.kind == "censor":
                limits = None
            else:
                limits = compute_limits(panel, policy, float(np.max(values)))
            mean = weighted_mean(winsorize_sample(current, limits, panel, policy))
            stat_panel = panel
            iterations = 0
            reduction = 0.0
        by_year[year] = YearResult(
            year=year,
            mean_scc=mean,
            limits=limits,
            weitzman_avg=_limit_average(stat_panel, "weitzman"),
            hobbes_avg=_limit_average(stat_panel, "hobbes"),
            iterations=iterations,
            reduction=reduction,
        )
    return ProjectionResult(spec.name, policy, with_tax_feedback, by_year)
