import math

import pytest

from sccwinsor.cli import main
from sccwinsor.ingest import write_countries, write_estimates, write_papers
from sccwinsor import CountryRecord, PaperRecord, SccEstimate


def base_args(files):
    return [
        "--estimates", str(files["estimates"]),
        "--papers", str(files["papers"]),
        "--countries", str(files["countries"]),
        "--scenarios", str(files["scenarios"]),
    ]


def read_rows(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestStatsCommand:
    def test_policy_rows_and_mean_ordering(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        rc = main(["stats", *base_args(fixture_files), "--out", str(out),
                   "--censor-threshold", "1594"])
        assert rc == 0
        rows = {r["policy"]: r for r in read_rows(out / "stats.csv")}
        assert set(rows) == {"none", "weitzman", "hobbes", "censor"}
        assert float(rows["none"]["mean"]) >= float(rows["weitzman"]["mean"])
        assert float(rows["weitzman"]["mean"]) >= float(rows["hobbes"]["mean"])

    def test_huge_limits_make_all_rows_identical(self, fixture_files, tmp_path):
        rich = tmp_path / "rich.csv"
        write_countries(
            [CountryRecord("AAA", 1e30, 1.0, 1.0, 40_000.0)], rich
        )
        out = tmp_path / "out"
        rc = main(["stats",
                   "--estimates", str(fixture_files["estimates"]),
                   "--papers", str(fixture_files["papers"]),
                   "--countries", str(rich),
                   "--out", str(out)])
        assert rc == 0
        rows = read_rows(out / "stats.csv")
        reference = {k: v for k, v in rows[0].items() if k != "policy"}
        for row in rows[1:]:
            assert {k: v for k, v in row.items() if k != "policy"} == reference

    def test_empty_estimates_exits_2(self, fixture_files, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("", encoding="utf-8")
        rc = main(["stats", "--estimates", str(empty),
                   "--papers", str(fixture_files["papers"]),
                   "--countries", str(fixture_files["countries"]),
                   "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_all_negative_sample_still_summarizes(self, fixture_files, tmp_path):
        est = tmp_path / "neg.csv"
        pap = tmp_path / "pap.csv"
        write_papers([PaperRecord("P1", True, True, True)], pap)
        write_estimates(
            [SccEstimate("P1", "E1", -10.0, 2019, 1.0, 4),
             SccEstimate("P1", "E2", -2_000.0, 2019, 1.0, 4)],
            est,
        )
        out = tmp_path / "out"
        rc = main(["stats", "--estimates", str(est), "--papers", str(pap),
                   "--countries", str(fixture_files["countries"]),
                   "--out", str(out)])
        assert rc == 0
        rows = {r["policy"]: r for r in read_rows(out / "stats.csv")}
        assert float(rows["none"]["mean"]) == -1_005.0

    def test_header_only_estimates_exits_2(self, fixture_files, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text(
            "paper_id,estimate_id,scc_usd2015_per_tC,emission_year,author_weight\n",
            encoding="utf-8",
        )
        rc = main(["stats", "--estimates", str(empty),
                   "--papers", str(fixture_files["papers"]),
                   "--countries", str(fixture_files["countries"]),
                   "--out", str(tmp_path / "out")])
        assert rc == 2


class TestCdfCommand:
    def test_two_point_fixture_two_steps(self, tmp_path, fixture_files):
        est = tmp_path / "two.csv"
        pap = tmp_path / "pap.csv"
        write_papers([PaperRecord("P1", True, True, True)], pap)
        write_estimates(
            [SccEstimate("P1", "E1", 10.0, 2019, 1.0, 4),
             SccEstimate("P1", "E2", 20.0, 2019, 1.0, 4)],
            est,
        )
        out = tmp_path / "out"
        rc = main(["cdf", "--estimates", str(est), "--papers", str(pap),
                   "--countries", str(fixture_files["countries"]),
                   "--out", str(out)])
        assert rc == 0
        rows = [r for r in read_rows(out / "cdf.csv") if r["policy"] == "none"]
        assert [(float(r["value"]), float(r["cumulative_fraction"])) for r in rows] == [
            (10.0, 0.5), (20.0, 1.0)
        ]

    def test_tail_flag_is_filter_of_full_cdf(self, fixture_files, tmp_path):
        full_out = tmp_path / "full"
        tail_out = tmp_path / "tail"
        assert main(["cdf", *base_args(fixture_files), "--out", str(full_out)]) == 0
        assert main(["cdf", *base_args(fixture_files), "--out", str(tail_out),
                     "--tail-min", "100"]) == 0
        full = read_rows(full_out / "cdf.csv")
        tail = read_rows(tail_out / "cdf.csv")
        expected = [r for r in full if float(r["value"]) >= 100.0]
        assert tail == expected


class TestHistCommand:
    def test_shares_sum_to_one(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        assert main(["hist", *base_args(fixture_files), "--out", str(out)]) == 0
        shares = [float(r["weighted_share"]) for r in read_rows(out / "hist.csv")]
        assert math.fsum(shares) == pytest.approx(1.0, abs=1e-12)


class TestLimitsCommand:
    def test_limit_columns(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        assert main(["limits", *base_args(fixture_files), "--out", str(out)]) == 0
        rows = {r["iso3"]: r for r in read_rows(out / "limits.csv")}
        assert float(rows["AAA"]["weitzman"]) == pytest.approx(2.0e13 / 2.5e9)
        assert float(rows["AAA"]["hobbes"]) == pytest.approx(0.25 * 2.0e13 / 2.5e9)
        assert float(rows["CCC"]["hobbes"]) == pytest.approx(0.05 * 1.0e12 / 8.0e8)
        shares = [float(r["emissions_share"]) for r in rows.values()]
        assert math.fsum(shares) == pytest.approx(1.0)


class TestProjectCommand:
    def test_policy_none_geometric_series(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        rc = main(["project", *base_args(fixture_files), "--scenario", "demo",
                   "--policy", "none", "--from", "2020", "--to", "2035",
                   "--out", str(out)])
        assert rc == 0
        means = [float(r["mean_scc"]) for r in read_rows(out / "timeseries.csv")]
        for prev, cur in zip(means, means[1:]):
            assert cur / prev == pytest.approx(1.0216, rel=1e-12)

    def test_with_tax_dominates_without(self, fixture_files, tmp_path):
        # the feedback raises limits faster than the slower growth rate drags
        with_tax = tmp_path / "with"
        without = tmp_path / "without"
        common = ["project", *base_args(fixture_files), "--scenario", "demo",
                  "--policy", "hobbes", "--from", "2020", "--to", "2030"]
        assert main([*common, "--out", str(without)]) == 0
        assert main([*common, "--with-tax", "--out", str(with_tax)]) == 0
        means_tax = [float(r["mean_scc"]) for r in read_rows(with_tax / "timeseries.csv")]
        means_plain = [float(r["mean_scc"]) for r in read_rows(without / "timeseries.csv")]
        for taxed, plain in zip(means_tax, means_plain):
            assert taxed >= plain

    def test_feedback_diagnostics_emitted(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        assert main(["project", *base_args(fixture_files), "--scenario", "demo",
                     "--policy", "hobbes", "--from", "2020", "--to", "2022",
                     "--with-tax", "--out", str(out)]) == 0
        for row in read_rows(out / "timeseries.csv"):
            assert int(row["iterations"]) >= 1
            assert 0.0 < float(row["global_reduction_rate"]) < 1.0

    def test_single_year_horizon(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        assert main(["project", *base_args(fixture_files), "--scenario", "demo",
                     "--from", "2020", "--to", "2020", "--out", str(out)]) == 0
        assert len(read_rows(out / "timeseries.csv")) == 1

    def test_unknown_scenario_exits_2(self, fixture_files, tmp_path):
        rc = main(["project", *base_args(fixture_files), "--scenario", "nope",
                   "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_horizon_outside_scenario_exits_2(self, fixture_files, tmp_path):
        rc = main(["project", *base_args(fixture_files), "--scenario", "demo",
                   "--from", "2019", "--to", "2030",
                   "--out", str(tmp_path / "out")])
        assert rc == 2


class TestConstantsAndManifest:
    def test_override_changes_projection(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        assert main(["project", *base_args(fixture_files), "--scenario", "demo",
                     "--policy", "none", "--from", "2020", "--to", "2024",
                     "--scc-growth", "0.03", "--out", str(out)]) == 0
        means = [float(r["mean_scc"]) for r in read_rows(out / "timeseries.csv")]
        for prev, cur in zip(means, means[1:]):
            assert cur / prev == pytest.approx(1.03, rel=1e-12)

    def test_manifest_lists_constants_and_checksums(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        assert main(["stats", *base_args(fixture_files), "--out", str(out),
                     "--rebase-growth", "0.03"]) == 0
        manifest = dict(
            line.split("=", 1)
            for line in (out / "run_manifest.txt").read_text().splitlines()
        )
        assert manifest["command"] == "stats"
        assert manifest["constant.rebase_growth"] == "0.03"
        for key in ("constant.scc_growth", "constant.scc_growth_taxed",
                    "constant.unit_reduction", "constant.growth_intercept",
                    "constant.growth_slope", "constant.tax_growth_intercept",
                    "constant.tax_growth_slope", "constant.tax_share_cap",
                    "constant.feedback_tol", "constant.feedback_max_iter"):
            assert key in manifest
        assert len(manifest["input.estimates.sha256"]) == 64

    def test_out_of_bounds_constant_exits_2(self, fixture_files, tmp_path):
        rc = main(["stats", *base_args(fixture_files),
                   "--rebase-growth", "0.9", "--out", str(tmp_path / "out")])
        assert rc == 2

    def test_single_pass_flag(self, fixture_files, tmp_path):
        fixed = tmp_path / "fixed"
        single = tmp_path / "single"
        common = ["project", *base_args(fixture_files), "--scenario", "demo",
                  "--policy", "hobbes", "--from", "2020", "--to", "2024", "--with-tax"]
        assert main([*common, "--out", str(fixed)]) == 0
        assert main([*common, "--feedback-single-pass", "--out", str(single)]) == 0
        fixed_rows = read_rows(fixed / "timeseries.csv")
        single_rows = read_rows(single / "timeseries.csv")
        for one, full in zip(single_rows, fixed_rows):
            assert int(one["iterations"]) == 1
            assert float(one["mean_scc"]) <= float(full["mean_scc"]) + 1e-9

    def test_exhausted_feedback_iterations_exit_1(self, fixture_files, tmp_path):
        rc = main(["project", *base_args(fixture_files), "--scenario", "demo",
                   "--policy", "hobbes", "--from", "2020", "--to", "2024",
                   "--with-tax", "--feedback-max-iter", "1",
                   "--out", str(tmp_path / "out")])
        assert rc == 1

    def test_growth_bound_mode_echoed(self, fixture_files, tmp_path):
        out = tmp_path / "out"
        assert main(["project", *base_args(fixture_files), "--scenario", "demo",
                     "--policy", "none", "--from", "2020", "--to", "2021",
                     "--growth-bound-mode", "cap", "--out", str(out)]) == 0
        manifest = dict(
            line.split("=", 1)
            for line in (out / "run_manifest.txt").read_text().splitlines()
        )
        assert manifest["constant.growth_bound_mode"] == "cap"


class TestDeterminism:
    COMMANDS = (
        ["stats", "--svg", "--censor-threshold", "1594"],
        ["cdf", "--svg"],
        ["hist", "--svg"],
        ["limits"],
        ["project", "--scenario", "demo", "--policy", "hobbes",
         "--from", "2020", "--to", "2026", "--with-tax", "--svg"],
    )

    def test_byte_identical_reruns(self, fixture_files, tmp_path):
        for i, command in enumerate(self.COMMANDS):
            out_a = tmp_path / f"a{i}"
            out_b = tmp_path / f"b{i}"
            args = [command[0], *base_args(fixture_files), *command[1:]]
            assert main([*args, "--out", str(out_a)]) == 0
            assert main([*args, "--out", str(out_b)]) == 0
            files_a = sorted(p.name for p in out_a.iterdir())
            files_b = sorted(p.name for p in out_b.iterdir())
            assert files_a == files_b and files_a
            for name in files_a:
                assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
