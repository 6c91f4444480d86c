"""Command-line front-end: stats, cdf, hist, limits, project.

Every run writes its outputs plus a ``run_manifest.txt`` recording the
command, input checksums, and every effective constant, so results are
reproducible byte for byte. Exit codes: 0 success, 1 runtime error,
2 validation error.
"""
from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from . import params as defaults
from .errors import SccWinsorError, ValidationError
from .ingest import build_sample, parse_countries, parse_estimates, parse_scenarios
from .params import Params
from .records import WeightedSample
from .scenario import project_mean_path
from .stats import ecdf, log_histogram, summarize
from .svg import bar_chart, line_chart
from .winsor import WinsorPolicy, compute_limits, winsorize_sample

_CONSTANT_FLAGS = {
    # flag suffix -> (Params field, help text)
    "rebase-growth": ("rebase_growth", "annual growth used to move estimates to 2019"),
    "scc-growth": ("scc_growth", "annual SCC growth without a carbon tax"),
    "scc-growth-tax": ("scc_growth_taxed", "annual SCC growth with a carbon tax"),
    "unit-reduction": ("unit_reduction", "emission reduction per USD/tC of tax at average intensity"),
    "growth-intercept": ("growth_intercept", "national growth regression intercept"),
    "growth-slope": ("growth_slope", "national growth regression slope on ln(income)"),
    "growth-bound": ("growth_bound", "bound applied to the national growth rate"),
    "tax-growth-intercept": ("tax_growth_intercept", "tax-share growth intercept"),
    "tax-growth-slope": ("tax_growth_slope", "tax-share growth slope on ln(income)"),
    "tax-share-cap": ("tax_share_cap", "upper cap on evolved tax shares"),
    "income-ref": ("income_ref", "income scale in the tax-share growth formula"),
    "feedback-tol": ("feedback_tol", "relative convergence tolerance of the tax feedback"),
}


@dataclass(frozen=True)
class RunConfig:
    """Everything one command run depends on."""

    estimates: Path | None
    papers: Path | None
    countries: Path | None
    scenarios: Path | None
    policy: str
    censor_threshold: float | None
    scenario: str | None
    from_year: int | None
    to_year: int | None
    with_tax: bool
    tail_min: float | None
    out: Path
    svg: bool
    params: Params


def _config(args: argparse.Namespace) -> RunConfig:
    overrides = {field: getattr(args, field) for _, (field, _) in _CONSTANT_FLAGS.items()}
    overrides["growth_bound_mode"] = args.growth_bound_mode
    overrides["feedback_max_iter"] = args.feedback_max_iter
    overrides["feedback_single_pass"] = args.feedback_single_pass
    censor = getattr(args, "censor_threshold", None)
    if censor is not None and not censor > 0:
        raise ValidationError("--censor-threshold must be positive")
    return RunConfig(
        estimates=getattr(args, "estimates", None),
        papers=getattr(args, "papers", None),
        countries=getattr(args, "countries", None),
        scenarios=getattr(args, "scenarios", None),
        policy=getattr(args, "policy", "hobbes"),
        censor_threshold=censor,
        scenario=getattr(args, "scenario", None),
        from_year=getattr(args, "from_year", None),
        to_year=getattr(args, "to_year", None),
        with_tax=getattr(args, "with_tax", False),
        tail_min=getattr(args, "tail_min", None),
        out=Path(args.out),
        svg=args.svg,
        params=Params(**overrides),
    )


def _policy_list(config: RunConfig) -> list[WinsorPolicy]:
    policies = [WinsorPolicy("none"), WinsorPolicy("weitzman"), WinsorPolicy("hobbes")]
    if config.censor_threshold is not None:
        policies.append(WinsorPolicy("censor", config.censor_threshold))
    return policies


def _policy_single(config: RunConfig) -> WinsorPolicy:
    if config.policy == "censor":
        if config.censor_threshold is None:
            raise ValidationError("--policy censor requires --censor-threshold")
        return WinsorPolicy("censor", config.censor_threshold)
    return WinsorPolicy(config.policy)


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write(path: Path, lines: list[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_manifest(command: str, config: RunConfig) -> None:
    entries = {"command": command}
    for name in ("estimates", "papers", "countries", "scenarios"):
        path = getattr(config, name)
        if path is None:
            continue
        digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        entries[f"input.{name}"] = str(path)
        entries[f"input.{name}.sha256"] = digest
    for f in fields(Params):
        entries[f"constant.{f.name}"] = _fmt(getattr(config.params, f.name))
    entries["policy"] = config.policy
    if config.censor_threshold is not None:
        entries["censor_threshold"] = _fmt(config.censor_threshold)
    if config.scenario is not None:
        entries["scenario"] = config.scenario
    if config.from_year is not None:
        entries["from_year"] = _fmt(config.from_year)
    if config.to_year is not None:
        entries["to_year"] = _fmt(config.to_year)
    if config.tail_min is not None:
        entries["tail_min"] = _fmt(config.tail_min)
    entries["with_tax"] = _fmt(config.with_tax)
    entries["svg"] = _fmt(config.svg)
    lines = [f"{key}={entries[key]}" for key in sorted(entries)]
    _write(config.out / "run_manifest.txt", lines)


def _load_sample(config: RunConfig) -> WeightedSample:
    if config.estimates is None or config.papers is None:
        raise ValidationError("--estimates and --papers are required")
    estimates, _ = parse_estimates(config.estimates, config.papers)
    if not estimates:
        raise ValidationError(f"{config.estimates}: no estimate rows")
    return build_sample(estimates, growth=config.params.rebase_growth)


def _load_countries(config: RunConfig):
    if config.countries is None:
        raise ValidationError("--countries is required")
    countries = parse_countries(config.countries)
    if not countries:
        raise ValidationError(f"{config.countries}: no country rows")
    return countries


def _winsorized(sample, countries, policy):
    if policy.kind == "censor":
        return winsorize_sample(sample, None, countries, policy)
    limits = compute_limits(countries, policy, float(np.max(sample.values)))
    return winsorize_sample(sample, limits, countries, policy)


def cmd_stats(args) -> int:
    config = _config(args)
    sample = _load_sample(config)
    countries = _load_countries(config)
    header = "policy,mean,se,sd,mode,median,effective_n"
    lines = [header]
    means = {}
    for policy in _policy_list(config):
        stats = summarize(_winsorized(sample, countries, policy))
        means[policy.kind] = stats.mean
        lines.append(
            ",".join(
                [policy.kind]
                + [
                    _fmt(v)
                    for v in (
                        stats.mean,
                        stats.std_error,
                        stats.std_dev,
                        stats.mode,
                        stats.median,
                        stats.effective_n,
                    )
                ]
            )
        )
    _write(config.out / "stats.csv", lines)
    if config.svg:
        chart = bar_chart(
            list(means), list(means.values()),
            "Mean social cost of carbon by winsorizing policy", "USD/tC",
        )
        _write(config.out / "stats.svg", [chart.rstrip("\n")])
    _write_manifest("stats", config)
    return 0


def cmd_cdf(args) -> int:
    config = _config(args)
    sample = _load_sample(config)
    countries = _load_countries(config)
    lines = ["policy,value,cumulative_fraction"]
    curves = {}
    for policy in _policy_list(config):
        curve = ecdf(_winsorized(sample, countries, policy))
        if config.tail_min is not None:
            curve = [(v, f) for v, f in curve if v >= config.tail_min]
        curves[policy.kind] = curve
        lines.extend(f"{policy.kind},{_fmt(v)},{_fmt(f)}" for v, f in curve)
    _write(config.out / "cdf.csv", lines)
    if config.svg:
        chart = line_chart(
            {kind: curve for kind, curve in curves.items() if curve},
            "Cumulative distribution of the social cost of carbon",
            "USD/tC", "cumulative fraction", step=True,
        )
        _write(config.out / "cdf.svg", [chart.rstrip("\n")])
    _write_manifest("cdf", config)
    return 0


def cmd_hist(args) -> int:
    config = _config(args)
    sample = _load_sample(config)
    bins = log_histogram(sample)
    lines = ["bin_label,weighted_share"]
    lines.extend(f"{label},{_fmt(share)}" for label, share in bins)
    _write(config.out / "hist.csv", lines)
    if config.svg:
        chart = bar_chart(
            [label for label, _ in bins], [share for _, share in bins],
            "Estimates by decade (bin upper bound)", "weight share",
        )
        _write(config.out / "hist.svg", [chart.rstrip("\n")])
    _write_manifest("hist", config)
    return 0


def cmd_limits(args) -> int:
    config = _config(args)
    countries = _load_countries(config)
    total_emissions = sum(c.emissions for c in countries)
    weitzman = compute_limits(countries, WinsorPolicy("weitzman"), 0.0)
    hobbes = compute_limits(countries, WinsorPolicy("hobbes"), 0.0)
    lines = ["iso3,emissions_share,weitzman,hobbes"]
    for c in countries:
        lines.append(
            ",".join(
                [
                    c.country_code,
                    _fmt(c.emissions / total_emissions),
                    _fmt(weitzman.per_country[c.country_code]),
                    _fmt(hobbes.per_country[c.country_code]),
                ]
            )
        )
    _write(config.out / "limits.csv", lines)
    _write_manifest("limits", config)
    return 0


def cmd_project(args) -> int:
    config = _config(args)
    sample = _load_sample(config)
    countries = _load_countries(config)
    if config.scenarios is None:
        raise ValidationError("--scenarios is required")
    if config.scenario is None:
        raise ValidationError("--scenario NAME is required")
    specs = {s.name: s for s in parse_scenarios(config.scenarios)}
    if config.scenario not in specs:
        raise ValidationError(
            f"unknown scenario {config.scenario!r}; available: {', '.join(sorted(specs))}"
        )
    spec = specs[config.scenario]
    policy = _policy_single(config)
    result = project_mean_path(
        sample,
        countries,
        spec,
        policy,
        with_tax_feedback=config.with_tax,
        from_year=config.from_year,
        to_year=config.to_year,
        params=config.params,
    )
    lines = [
        "scenario,policy,with_tax,year,mean_scc,global_weitzman_limit,"
        "global_hobbes_limit,iterations,global_reduction_rate"
    ]
    for year in sorted(result.by_year):
        yr = result.by_year[year]
        lines.append(
            ",".join(
                [
                    spec.name,
                    policy.kind,
                    _fmt(config.with_tax),
                    _fmt(year),
                    _fmt(yr.mean_scc),
                    _fmt(yr.weitzman_avg),
                    _fmt(yr.hobbes_avg),
                    _fmt(yr.iterations),
                    _fmt(yr.reduction),
                ]
            )
        )
    _write(config.out / "timeseries.csv", lines)
    if config.svg:
        points = [(float(y), result.by_year[y].mean_scc) for y in sorted(result.by_year)]
        label = f"{policy.kind}{' + tax' if config.with_tax else ''}"
        chart = line_chart(
            {label: points},
            f"Mean social cost of carbon, scenario {spec.name}",
            "year", "USD/tC",
        )
        _write(config.out / "timeseries.svg", [chart.rstrip("\n")])
    _write_manifest("project", config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--estimates", type=Path, help="estimates CSV")
    common.add_argument("--papers", type=Path, help="papers CSV with quality flags")
    common.add_argument("--countries", type=Path, help="country panel CSV")
    common.add_argument("--scenarios", type=Path, help="scenario paths CSV")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--svg", action="store_true", help="also emit SVG charts")
    common.add_argument(
        "--policy", choices=("none", "weitzman", "hobbes", "censor"), default="hobbes",
        help="winsorizing policy (project only; stats/cdf always cover all families)",
    )
    common.add_argument(
        "--censor-threshold", type=float, default=None,
        help="global cutoff for the censor policy, USD/tC",
    )
    for suffix, (field, help_text) in _CONSTANT_FLAGS.items():
        common.add_argument(
            f"--{suffix}", dest=field, type=float,
            default=getattr(defaults, field.upper()), help=f"{help_text}",
        )
    common.add_argument(
        "--growth-bound-mode", choices=("floor", "cap"),
        default=defaults.GROWTH_BOUND_MODE,
        help="apply the growth bound as a floor (default) or literal cap",
    )
    common.add_argument(
        "--feedback-max-iter", type=int, default=defaults.FEEDBACK_MAX_ITER,
        help="iteration cap of the tax feedback fixed point",
    )
    common.add_argument(
        "--feedback-single-pass", action="store_true",
        help="apply one tax-feedback pass instead of iterating to the fixed point",
    )

    parser = argparse.ArgumentParser(
        prog="sccwinsor",
        description="Winsorize social-cost-of-carbon estimates against per-country "
        "economic limits, summarize them, and project them through time.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", parents=[common], help="summary table per policy")
    p_stats.set_defaults(func=cmd_stats)

    p_cdf = sub.add_parser("cdf", parents=[common], help="cumulative distribution per policy")
    p_cdf.add_argument(
        "--tail-min", type=float, default=None,
        help="restrict emitted CDF to values at or above this, for tail views",
    )
    p_cdf.set_defaults(func=cmd_cdf)

    p_hist = sub.add_parser("hist", parents=[common], help="decade histogram of the raw sample")
    p_hist.set_defaults(func=cmd_hist)

    p_limits = sub.add_parser("limits", parents=[common], help="per-country limit table")
    p_limits.set_defaults(func=cmd_limits)

    p_project = sub.add_parser("project", parents=[common], help="winsorized mean through time")
    p_project.add_argument("--scenario", help="scenario name from the scenarios file")
    p_project.add_argument("--from", dest="from_year", type=int, default=None,
                           help="first projected year (default: scenario start)")
    p_project.add_argument("--to", dest="to_year", type=int, default=None,
                           help="last projected year (default: scenario end)")
    p_project.add_argument("--with-tax", action="store_true",
                           help="impose the mean as a carbon tax (feedback + slower SCC growth)")
    p_project.set_defaults(func=cmd_project)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SccWinsorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
