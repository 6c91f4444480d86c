"""Domain records: estimates, papers, country panels, scenarios, samples.

Numeric invariants are enforced at construction; file-format rules (ISO codes,
CSV schemas) are enforced by the parsers in :mod:`sccwinsor.ingest`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

EMISSION_YEAR_RANGE = (1980, 2100)
DECLINE_RANGE = (-0.2, 0.2)


@dataclass(frozen=True)
class SccEstimate:
    """One published social-cost-of-carbon estimate, in USD(2015)/tC."""

    paper_id: str
    estimate_id: str
    value: float
    emission_year: int
    author_weight: float
    quality_score: int

    def __post_init__(self):
        lo, hi = EMISSION_YEAR_RANGE
        if not lo <= self.emission_year <= hi:
            raise ValidationError(
                f"estimate {self.estimate_id}: emission_year {self.emission_year} "
                f"outside [{lo}, {hi}]"
            )
        if not self.author_weight >= 0:
            raise ValidationError(
                f"estimate {self.estimate_id}: author_weight must be >= 0"
            )
        if self.quality_score not in (1, 2, 3, 4):
            raise ValidationError(
                f"estimate {self.estimate_id}: quality_score must be in 1..4"
            )
        if not math.isfinite(self.value):
            raise ValidationError(f"estimate {self.estimate_id}: value not finite")


@dataclass(frozen=True)
class PaperRecord:
    """Quality flags for one paper; score is 1 plus one point per true flag."""

    paper_id: str
    peer_reviewed: bool
    marginal_correct: bool
    plausible_scenario: bool

    @property
    def quality_score(self) -> int:
        return 1 + sum((self.peer_reviewed, self.marginal_correct, self.plausible_scenario))


@dataclass(frozen=True)
class CountryRecord:
    """One country-year: GDP (USD2015/yr), emissions (tC/yr), tax share, income."""

    country_code: str
    gdp: float
    emissions: float
    tax_share: float
    per_capita_income: float

    def __post_init__(self):
        if not self.country_code:
            raise ValidationError("country_code must be non-empty")
        if not self.gdp > 0:
            raise ValidationError(f"{self.country_code}: gdp must be > 0")
        if not self.emissions > 0:
            raise ValidationError(f"{self.country_code}: emissions must be > 0")
        if not 0 <= self.tax_share <= 1:
            raise ValidationError(f"{self.country_code}: tax_share must be in [0, 1]")
        if not self.per_capita_income > 0:
            raise ValidationError(f"{self.country_code}: per_capita_income must be > 0")

    @property
    def intensity_limit(self) -> float:
        """Ability to pay: GDP per tonne of carbon emitted (USD/tC)."""
        return self.gdp / self.emissions


@dataclass(frozen=True)
class ScenarioRow:
    """Rates for the step from this year to the next."""

    year: int
    gdp_growth: float
    energy_intensity_decline: float
    carbon_intensity_decline: float

    def __post_init__(self):
        lo, hi = DECLINE_RANGE
        for name in ("energy_intensity_decline", "carbon_intensity_decline"):
            value = getattr(self, name)
            if not lo <= value <= hi:
                raise ValidationError(
                    f"year {self.year}: {name}={value} outside [{lo}, {hi}]"
                )
        if not self.gdp_growth > -1:
            raise ValidationError(f"year {self.year}: gdp_growth must be > -1")


@dataclass(frozen=True)
class ScenarioSpec:
    """Named global scenario: one row per year, contiguous and increasing."""

    name: str
    rows: tuple[ScenarioRow, ...]

    def __post_init__(self):
        if not self.rows:
            raise ValidationError(f"scenario {self.name!r} has no rows")
        years = [r.year for r in self.rows]
        for prev, cur in zip(years, years[1:]):
            if cur != prev + 1:
                raise ValidationError(
                    f"scenario {self.name!r}: years must be contiguous and "
                    f"increasing, got {prev} then {cur}"
                )

    @property
    def first_year(self) -> int:
        return self.rows[0].year

    @property
    def last_year(self) -> int:
        return self.rows[-1].year

    def row_for(self, year: int) -> ScenarioRow:
        if not self.first_year <= year <= self.last_year:
            raise ValidationError(
                f"scenario {self.name!r} has no row for year {year}"
            )
        return self.rows[year - self.first_year]


@dataclass(frozen=True)
class WeightedSample:
    """Paired values and non-negative weights with positive total weight."""

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)
        if values.ndim != 1 or weights.ndim != 1 or values.shape != weights.shape:
            raise ValidationError("values and weights must be 1-d arrays of equal length")
        if values.size == 0:
            raise ValidationError("sample is empty")
        if not np.all(np.isfinite(values)):
            raise ValidationError("sample values must be finite")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise ValidationError("weights must be finite and non-negative")
        if not weights.sum() > 0:
            raise ValidationError("total weight must be positive")

    @classmethod
    def from_pairs(cls, pairs) -> "WeightedSample":
        pairs = list(pairs)
        if not pairs:
            raise ValidationError("sample is empty")
        values = np.array([p[0] for p in pairs], dtype=float)
        weights = np.array([p[1] for p in pairs], dtype=float)
        return cls(values, weights)

    @property
    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.weights.tolist()))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class SummaryStats:
    """Weighted distribution summary in USD/tC."""

    mean: float
    std_error: float
    std_dev: float
    mode: float
    median: float
    effective_n: float


@dataclass(frozen=True)
class CountryTrajectory:
    """A country's panel records keyed by year, over a contiguous horizon."""

    country_code: str
    by_year: dict[int, CountryRecord] = field(default_factory=dict)

    def __post_init__(self):
        years = sorted(self.by_year)
        for prev, cur in zip(years, years[1:]):
            if cur != prev + 1:
                raise ValidationError(
                    f"{self.country_code}: trajectory years not contiguous "
                    f"({prev} then {cur})"
                )
