"""Winsorize social-cost-of-carbon estimates with per-country economic limits,
summarize the weighted distribution, and project the mean under growth
scenarios with an optional carbon-tax feedback."""

from .abatement import (
    AbatementParams,
    FeedbackResult,
    abatement_cost,
    apply_tax_feedback,
    calibrate_alpha,
    reduction_rate,
)
from .errors import (
    ConvergenceError,
    LinkError,
    ParseError,
    SccWinsorError,
    ValidationError,
)
from .ingest import (
    build_sample,
    combined_weight,
    parse_countries,
    parse_estimates,
    parse_papers,
    parse_scenarios,
    rebase_to_2019,
)
from .params import Params
from .records import (
    CountryRecord,
    CountryTrajectory,
    PaperRecord,
    ScenarioRow,
    ScenarioSpec,
    SccEstimate,
    SummaryStats,
    WeightedSample,
)
from .scenario import (
    ProjectionResult,
    YearResult,
    evolve_country,
    evolve_panel,
    evolve_tax_share,
    national_growth_rate,
    project_mean_path,
    project_panel,
    rescale_growth,
    scc_path,
)
from .stats import (
    ecdf,
    log_histogram,
    share_below,
    summarize,
    weighted_mean,
    weighted_mode,
    weighted_quantile,
    weighted_sd_se,
)
from .winsor import (
    SccWinsorizer,
    WinsorLimits,
    WinsorPolicy,
    compute_limits,
    winsorize_estimate,
    winsorize_sample,
)

__version__ = "0.1.0"
