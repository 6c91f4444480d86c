"""Carbon-tax abatement feedback on winsorizing limits.

A country facing tax ``tax`` (USD/tC) abates a share R of its emissions at
quadratic resource cost; cost-minimization gives

    cost(R) = 0.5 * alpha * R^2 * Y + tax * (1 - R) * E
    R       = tax * E / (alpha * Y), clamped to [0, 1]

The cost coefficients alpha are proportional to carbon intensity E/Y and
scaled so a $1/tC tax abates the fraction ``r_unit`` (default 0.00126) of
emissions at the emission-weighted average intensity; with that scaling the
reduction rate tax * r_unit is uniform across countries.

Imposing the winsorized mean as the tax changes emissions and output, which
moves the limits, which moves the winsorized mean: ``apply_tax_feedback``
iterates that loop to its fixed point (or runs a single pass).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceError, ValidationError
from .params import FEEDBACK_MAX_ITER, FEEDBACK_TOL, UNIT_REDUCTION
from .records import CountryRecord, WeightedSample
from .stats import weighted_mean
from .validation import require
from .winsor import WinsorLimits, WinsorPolicy, compute_limits, winsorize_sample


@dataclass(frozen=True)
class AbatementParams:
    """Per-country cost coefficients, the unit-tax reduction, and the tax."""

    alpha: dict[str, float]
    r_unit: float = UNIT_REDUCTION
    tax: float = 0.0

    def __post_init__(self):
        require(self.r_unit > 0, "r_unit must be positive")
        for code, a in self.alpha.items():
            if not a > 0:
                raise ValidationError(f"{code}: alpha must be positive")


def calibrate_alpha(
    countries: list[CountryRecord], r_unit: float = UNIT_REDUCTION, tax: float = 0.0
) -> AbatementParams:
    """Choose alpha_i proportional to carbon intensity E_i/Y_i.

    The proportionality constant is 1/r_unit, which makes the cost-minimizing
    reduction R_i = tax * r_unit identical everywhere, so the emission-weighted
    average reduction at a $1/tC tax is exactly r_unit.
    """
    require(bool(countries), "country panel is empty")
    require(r_unit > 0, "r_unit must be positive")
    total_emissions = math.fsum(c.emissions for c in countries)
    require(total_emissions > 0, "total emissions must be positive")
    scale = 1.0 / r_unit
    alpha = {c.country_code: scale * c.emissions / c.gdp for c in countries}
    return AbatementParams(alpha=alpha, r_unit=r_unit, tax=tax)


def reduction_rate(params: AbatementParams, country: CountryRecord) -> float:
    """Cost-minimizing emission reduction, clamped to [0, 1]."""
    raw = params.tax * country.emissions / (params.alpha[country.country_code] * country.gdp)
    return min(1.0, max(0.0, raw))


def abatement_cost(
    params: AbatementParams, country: CountryRecord, reduction: float
) -> tuple[float, float]:
    """(resource_cost, tax_payment) in USD/yr at a given reduction rate.

    Only the resource cost 0.5*alpha*R^2*Y destroys output; the tax payment
    tax*(1-R)*E is a transfer and is reported separately.
    """
    require(0 <= reduction <= 1, "reduction must be in [0, 1]")
    a = params.alpha[country.country_code]
    resource = 0.5 * a * reduction * reduction * country.gdp
    payment = params.tax * (1.0 - reduction) * country.emissions
    return resource, payment


def cost_gradient(params: AbatementParams, country: CountryRecord, reduction: float) -> float:
    """Analytic derivative of total country cost in the reduction rate."""
    a = params.alpha[country.country_code]
    return a * reduction * country.gdp - params.tax * country.emissions


def abate_panel(
    countries: list[CountryRecord], params: AbatementParams
) -> list[CountryRecord]:
    """Panel after abatement at params.tax: lower emissions, lower output."""
    adjusted = []
    for rec in countries:
        r = reduction_rate(params, rec)
        resource, _ = abatement_cost(params, rec, r)
        emissions = rec.emissions * (1.0 - r)
        gdp = rec.gdp - resource
        if not emissions > 0:
            raise ConvergenceError(
                f"tax {params.tax:g} implies full abatement in {rec.country_code}; "
                "winsorizing limits undefined"
            )
        if not gdp > 0:
            raise ConvergenceError(
                f"abatement cost exceeds output in {rec.country_code} at tax {params.tax:g}"
            )
        adjusted.append(replace(rec, emissions=emissions, gdp=gdp))
    return adjusted


@dataclass(frozen=True)
class FeedbackResult:
    """Converged winsorize-tax state for one year."""

    limits: WinsorLimits
    mean_scc: float
    iterations: int
    reduction: float
    panel: list[CountryRecord]
    trace: tuple[float, ...]


def apply_tax_feedback(
    sample: WeightedSample,
    countries: list[CountryRecord],
    policy: WinsorPolicy,
    params: AbatementParams | None = None,
    *,
    tol: float = FEEDBACK_TOL,
    max_iter: int = FEEDBACK_MAX_ITER,
    single_pass: bool = False,
) -> FeedbackResult:
    """Iterate tax -> abatement -> limits -> winsorized mean to a fixed point.

    Starts from the winsorized mean under the unabated panel. Each step abates
    at the current tax, recomputes limits from the abated panel, and takes the
    new winsorized mean as the next tax. Stops when consecutive means differ
    by less than tol * max(1, mean), or after one step if single_pass.

    Raises
    ------
    ConvergenceError
        If max_iter steps do not converge; carries the last two iterates.
    """
    require(policy.kind in ("weitzman", "hobbes"), "tax feedback needs a limit-family policy")
    if params is None:
        params = calibrate_alpha(countries)
    s_max = float(np.max(sample.values))
    limits = compute_limits(countries, policy, s_max)
    tau = weighted_mean(winsorize_sample(sample, limits, countries, policy))
    trace = [tau]
    total_emissions = math.fsum(c.emissions for c in countries)
    for iteration in range(1, max_iter + 1):
        taxed = replace(params, tax=tau)
        panel = abate_panel(countries, taxed)
        limits = compute_limits(panel, policy, s_max)
        tau_next = weighted_mean(winsorize_sample(sample, limits, panel, policy))
        trace.append(tau_next)
        reduction = math.fsum(
            rec.emissions * reduction_rate(taxed, rec) for rec in countries
        ) / total_emissions
        if single_pass or abs(tau_next - tau) < tol * max(1.0, tau):
            return FeedbackResult(
                limits=limits,
                mean_scc=tau_next,
                iterations=iteration,
                reduction=reduction,
                panel=panel,
                trace=tuple(trace),
            )
        tau = tau_next
    raise ConvergenceError(
        f"tax feedback did not converge in {max_iter} iterations",
        last_iterates=trace[-2:],
    )
