"""Input validation helpers shared by the functional API and the estimator."""
from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .records import CountryRecord


def check_value_array(X) -> tuple[np.ndarray, bool]:
    """Coerce X to a finite 1-d float array.

    Accepts shape (n,) or a single column (n, 1); returns the flat array and
    whether the input was 2-d so callers can restore the shape.
    """
    arr = np.asarray(X, dtype=float)
    was_column = False
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
        was_column = True
    if arr.ndim != 1:
        raise ValidationError(f"expected shape (n,) or (n, 1), got {arr.shape}")
    if arr.size == 0:
        raise ValidationError("empty value array")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("values must be finite")
    return arr, was_column


def check_countries(X) -> list[CountryRecord]:
    """Coerce X to a list of CountryRecord.

    Accepts a sequence of CountryRecord, or an array-like of shape (n, 3) or
    (n, 4) with columns (gdp, emissions, tax_share[, per_capita_income]);
    array rows get synthetic codes C0, C1, ...
    """
    if isinstance(X, CountryRecord):
        return [X]
    seq = list(X) if not hasattr(X, "ndim") else X
    if isinstance(seq, list) and seq and isinstance(seq[0], CountryRecord):
        return seq
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[1] not in (3, 4):
        raise ValidationError(
            "country panel must be CountryRecord objects or an (n, 3..4) array "
            "of (gdp, emissions, tax_share[, income])"
        )
    records = []
    for i, row in enumerate(arr):
        income = float(row[3]) if arr.shape[1] == 4 else 1.0
        records.append(
            CountryRecord(
                country_code=f"C{i}",
                gdp=float(row[0]),
                emissions=float(row[1]),
                tax_share=float(row[2]),
                per_capita_income=income,
            )
        )
    return records


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)
