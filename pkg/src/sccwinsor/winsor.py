"""Winsorize estimate distributions against per-country economic limits.

Each country caps an estimate at its own upper limit; the winsorized estimate
is the emission-weighted average of the capped values across countries:

    winsorized(s) = sum_c E_c * min(s, W_c) / sum_c E_c

Limit families:

* ``none``     - W_c is the sample maximum, so nothing changes.
* ``weitzman`` - ability to pay: W_c = GDP_c / emissions_c (USD per tonne;
  paying more than this would exceed the country's entire output).
* ``hobbes``   - Leviathan tax: W_c = tax_share_c * GDP_c / emissions_c (a
  carbon tax above this would grow the public sector).
* ``censor``   - not a limit family: estimates above a global threshold are
  dropped instead of capped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .errors import ValidationError
from .records import CountryRecord, WeightedSample
from .validation import check_countries, check_value_array, require

POLICY_KINDS = ("none", "weitzman", "hobbes", "censor")


@dataclass(frozen=True)
class WinsorPolicy:
    """Which limit family applies; censor carries its global threshold."""

    kind: str
    censor_threshold: float | None = None

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ValidationError(
                f"policy kind must be one of {POLICY_KINDS}, got {self.kind!r}"
            )
        if self.kind == "censor":
            if self.censor_threshold is None or not self.censor_threshold > 0:
                raise ValidationError("censor policy requires censor_threshold > 0")
        elif self.censor_threshold is not None:
            raise ValidationError(
                f"censor_threshold only applies to the censor policy, not {self.kind!r}"
            )


@dataclass(frozen=True)
class WinsorLimits:
    """Per-country upper limits, USD/tC, keyed by country code."""

    per_country: dict[str, float]

    def __post_init__(self):
        # negative limits are legal: the no-op family carries the sample
        # maximum, which an all-negative sample puts below zero
        require(bool(self.per_country), "limits must cover at least one country")
        for code, limit in self.per_country.items():
            if not math.isfinite(limit):
                raise ValidationError(f"{code}: limit must be finite")

    def min_limit(self) -> float:
        return min(self.per_country.values())


def compute_limits(
    countries: list[CountryRecord], policy: WinsorPolicy, s_max: float
) -> WinsorLimits:
    """Per-country upper limits for a limit-family policy.

    Parameters
    ----------
    countries : list of CountryRecord
    policy : WinsorPolicy with kind none, weitzman, or hobbes
    s_max : float
        Maximum estimate value in the sample; used as the (inactive) limit
        for kind ``none``.
    """
    require(bool(countries), "country panel is empty")
    if policy.kind == "censor":
        raise ValidationError("censor policy filters estimates and has no limits")
    limits = {}
    for rec in countries:
        if not rec.emissions > 0:
            raise ValidationError(f"{rec.country_code}: zero emissions, intensity undefined")
        if policy.kind == "none":
            limits[rec.country_code] = float(s_max)
        elif policy.kind == "weitzman":
            limits[rec.country_code] = rec.gdp / rec.emissions
        else:
            limits[rec.country_code] = rec.tax_share * rec.gdp / rec.emissions
    return WinsorLimits(limits)


def _aligned_winsorizer(limits: WinsorLimits, countries: list[CountryRecord]):
    """Precompute aligned emission/limit arrays; returns a per-value mapper."""
    require(bool(countries), "country panel is empty")
    emissions = np.array([rec.emissions for rec in countries])
    aligned = []
    for rec in countries:
        try:
            aligned.append(limits.per_country[rec.country_code])
        except KeyError:
            raise ValidationError(f"no limit for country {rec.country_code}") from None
    limit_arr = np.array(aligned)
    total = math.fsum(emissions)
    require(total > 0, "total emissions must be positive")
    lowest = float(limit_arr.min())

    def apply(value: float) -> float:
        if value <= lowest:
            return float(value)
        capped = np.minimum(value, limit_arr)
        # exact when all countries cap alike (e.g. a single country)
        if capped.min() == capped.max():
            return float(capped[0])
        return math.fsum(emissions * capped) / total

    return apply


def winsorize_estimate(
    value: float, limits: WinsorLimits, countries: list[CountryRecord]
) -> float:
    """Emission-weighted average of min(value, W_c) over countries.

    Values at or below every country limit pass through unchanged (the cap is
    a no-op), so the transform is exactly the identity on the lower range.
    Summation is exact, making the result independent of country order up to
    the rounding of the final division.
    """
    return _aligned_winsorizer(limits, countries)(value)


def winsorize_sample(
    sample: WeightedSample,
    limits: WinsorLimits | None,
    countries: list[CountryRecord],
    policy: WinsorPolicy,
) -> WeightedSample:
    """Apply a policy to a whole weighted sample.

    Limit families map every value through :func:`winsorize_estimate` and keep
    weights untouched; ``none`` returns the sample unchanged; ``censor`` drops
    pairs whose value exceeds the threshold (the sample may shrink).
    """
    if policy.kind == "none":
        return sample
    if policy.kind == "censor":
        keep = sample.values <= policy.censor_threshold
        if not np.any(keep):
            raise ValidationError(
                f"censor threshold {policy.censor_threshold} removed every estimate"
            )
        return WeightedSample(sample.values[keep], sample.weights[keep])
    require(limits is not None, "limit-family policies require limits")
    apply = _aligned_winsorizer(limits, countries)
    winsorized = np.array([apply(v) for v in sample.values.tolist()])
    return WeightedSample(winsorized, sample.weights)


class SccWinsorizer(BaseEstimator, TransformerMixin):
    """Winsorizing transformer with the scikit-learn fit/transform contract.

    Fit learns per-country limits from a country panel; transform maps raw
    estimate values to their emission-weighted winsorized counterparts.

    Parameters
    ----------
    policy : str, default "hobbes"
        One of "none", "weitzman", "hobbes", "censor".
    censor_threshold : float, optional
        Global cutoff, required iff policy="censor". Transform then filters
        values instead of capping them, so the output can be shorter.

    Attributes
    ----------
    countries_ : list of CountryRecord
        Panel seen during fit.
    limits_ : dict mapping country code to USD/tC, or None
        Populated for the weitzman and hobbes families.

    Examples
    --------
    >>> panel = [[2.0e13, 2.5e9, 0.25], [1.0e12, 8.0e8, 0.05]]
    >>> w = SccWinsorizer(policy="weitzman").fit(panel)
    >>> w.transform([50.0, 1e6]).round(2).tolist()
    [50.0, 6363.64]
    """

    def __init__(self, policy: str = "hobbes", censor_threshold: float | None = None):
        self.policy = policy
        self.censor_threshold = censor_threshold

    def _policy(self) -> WinsorPolicy:
        threshold = self.censor_threshold if self.policy == "censor" else None
        return WinsorPolicy(self.policy, threshold)

    def fit(self, X, y=None):
        """Learn limits from a country panel.

        X may be a sequence of CountryRecord or an (n, 3..4) array of
        (gdp, emissions, tax_share[, income]).
        """
        policy = self._policy()
        self.countries_ = check_countries(X)
        if policy.kind in ("weitzman", "hobbes"):
            self.limits_ = compute_limits(self.countries_, policy, 0.0).per_country
        else:
            self.limits_ = None
        return self

    def transform(self, X):
        """Winsorize (or censor) estimate values; shape (n,) or (n, 1) in."""
        if not hasattr(self, "countries_"):
            raise NotFittedError("SccWinsorizer must be fitted before transform")
        values, was_column = check_value_array(X)
        policy = self._policy()
        sample = WeightedSample(values, np.ones(values.size))
        if policy.kind in ("weitzman", "hobbes"):
            limits = WinsorLimits(self.limits_)
        else:
            limits = None
        out = np.array(winsorize_sample(sample, limits, self.countries_, policy).values)
        return out[:, None] if was_column else out
