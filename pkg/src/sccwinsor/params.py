"""Default model constants and their documented bounds.

Every constant is exposed as a CLI flag and echoed into the run manifest, so
sensitivity runs never require code changes.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ValidationError

# Annual growth used to move estimates to the 2019 emission year.
REBASE_GROWTH = 0.0201
# Annual growth of the social cost of carbon, without / with a carbon tax.
SCC_GROWTH = 0.0216
SCC_GROWTH_TAXED = 0.0195
# Emission reduction per USD/tC of carbon tax at the average carbon intensity.
UNIT_REDUCTION = 0.00126
# National income growth: intercept - slope * ln(income per capita).
GROWTH_INTERCEPT = 0.059
GROWTH_SLOPE = 0.005
GROWTH_BOUND = 0.01
GROWTH_BOUND_MODE = "floor"  # "floor" keeps poor countries fast; "cap" is the literal min()
# Tax-share growth: 1 + intercept + slope * ln(income / income_ref).
TAX_GROWTH_INTERCEPT = 0.026
TAX_GROWTH_SLOPE = 0.016
TAX_SHARE_CAP = 0.6
INCOME_REF = 1.0
# Winsorize-tax fixed point.
FEEDBACK_TOL = 1e-6
FEEDBACK_MAX_ITER = 100

_BOUNDS = {
    "rebase_growth": (-0.5, 0.5),
    "scc_growth": (-0.5, 0.5),
    "scc_growth_taxed": (-0.5, 0.5),
    "unit_reduction": (0.0, 1.0),
    "growth_intercept": (-1.0, 1.0),
    "growth_slope": (-1.0, 1.0),
    "growth_bound": (-1.0, 1.0),
    "tax_growth_intercept": (-1.0, 1.0),
    "tax_growth_slope": (-1.0, 1.0),
    "tax_share_cap": (0.0, 1.0),
    "income_ref": (0.0, 1e12),
    "feedback_tol": (0.0, 1.0),
}


@dataclass(frozen=True)
class Params:
    """Bundle of all tunable constants, defaulting to the documented values."""

    rebase_growth: float = REBASE_GROWTH
    scc_growth: float = SCC_GROWTH
    scc_growth_taxed: float = SCC_GROWTH_TAXED
    unit_reduction: float = UNIT_REDUCTION
    growth_intercept: float = GROWTH_INTERCEPT
    growth_slope: float = GROWTH_SLOPE
    growth_bound: float = GROWTH_BOUND
    growth_bound_mode: str = GROWTH_BOUND_MODE
    tax_growth_intercept: float = TAX_GROWTH_INTERCEPT
    tax_growth_slope: float = TAX_GROWTH_SLOPE
    tax_share_cap: float = TAX_SHARE_CAP
    income_ref: float = INCOME_REF
    feedback_tol: float = FEEDBACK_TOL
    feedback_max_iter: int = FEEDBACK_MAX_ITER
    feedback_single_pass: bool = False

    def __post_init__(self):
        for name, (lo, hi) in _BOUNDS.items():
            value = getattr(self, name)
            if not lo < value < hi:
                raise ValidationError(
                    f"{name}={value!r} outside documented bounds ({lo}, {hi})"
                )
        if self.growth_bound_mode not in ("floor", "cap"):
            raise ValidationError(
                f"growth_bound_mode must be 'floor' or 'cap', got {self.growth_bound_mode!r}"
            )
        if self.feedback_max_iter < 1:
            raise ValidationError("feedback_max_iter must be at least 1")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}
