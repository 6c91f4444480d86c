import numpy as np
import pytest

from sccwinsor import (
    CountryRecord,
    PaperRecord,
    ScenarioRow,
    ScenarioSpec,
    SccEstimate,
    WeightedSample,
)


@pytest.fixture
def panel():
    return [
        CountryRecord("AAA", gdp=2.0e13, emissions=2.5e9, tax_share=0.25, per_capita_income=40_000.0),
        CountryRecord("BBB", gdp=5.0e12, emissions=1.5e9, tax_share=0.15, per_capita_income=8_000.0),
        CountryRecord("CCC", gdp=1.0e12, emissions=8.0e8, tax_share=0.05, per_capita_income=2_500.0),
    ]


@pytest.fixture
def sample():
    values = [-150.0, 10.0, 50.0, 128.0, 600.0, 2_000.0, 40_000.0, 2.0e6]
    weights = [1.0, 2.0, 4.0, 6.0, 3.0, 1.0, 0.25, 0.05]
    return WeightedSample(np.array(values), np.array(weights))


@pytest.fixture
def papers():
    return [
        PaperRecord("P1", True, True, True),
        PaperRecord("P2", True, False, True),
        PaperRecord("P3", False, False, False),
    ]


@pytest.fixture
def estimates():
    return [
        SccEstimate("P1", "E1", 128.0, 2019, 1.0, 4),
        SccEstimate("P1", "E2", 2_000.0, 2015, 0.5, 4),
        SccEstimate("P2", "E3", -150.0, 2019, 1.0, 3),
        SccEstimate("P2", "E4", 45_000.0, 2030, 1.0, 3),
        SccEstimate("P3", "E5", 18.0, 2019, 2.0, 1),
    ]


def make_scenario(name="demo", first=2020, last=2050, growth=0.025,
                  energy_decline=0.01, carbon_decline=0.005):
    rows = tuple(
        ScenarioRow(year, growth, energy_decline, carbon_decline)
        for year in range(first, last + 1)
    )
    return ScenarioSpec(name, rows)


@pytest.fixture
def scenario():
    return make_scenario()


def write_fixture_files(directory):
    """Write a small consistent input-file set; returns paths by stem."""
    from sccwinsor.ingest import (
        write_countries,
        write_estimates,
        write_papers,
        write_scenarios,
    )

    estimates = [
        SccEstimate("P1", "E1", 128.0, 2019, 1.0, 4),
        SccEstimate("P1", "E2", 2_000.0, 2015, 0.25, 4),
        SccEstimate("P2", "E3", -150.0, 2019, 1.0, 3),
        SccEstimate("P2", "E4", 45_000.0, 2030, 0.05, 3),
        SccEstimate("P3", "E5", 18.0, 2019, 2.0, 1),
        SccEstimate("P3", "E6", 600.0, 2019, 1.5, 1),
    ]
    papers = [
        PaperRecord("P1", True, True, True),
        PaperRecord("P2", True, False, True),
        PaperRecord("P3", False, False, False),
    ]
    countries = [
        CountryRecord("AAA", 2.0e13, 2.5e9, 0.25, 40_000.0),
        CountryRecord("BBB", 5.0e12, 1.5e9, 0.15, 8_000.0),
        CountryRecord("CCC", 1.0e12, 8.0e8, 0.05, 2_500.0),
    ]
    specs = [make_scenario("demo"), make_scenario("flat", growth=0.0,
                                                  energy_decline=0.0,
                                                  carbon_decline=0.0)]
    paths = {
        "estimates": directory / "estimates.csv",
        "papers": directory / "papers.csv",
        "countries": directory / "countries.csv",
        "scenarios": directory / "scenarios.csv",
    }
    write_estimates(estimates, paths["estimates"])
    write_papers(papers, paths["papers"])
    write_countries(countries, paths["countries"])
    write_scenarios(specs, paths["scenarios"])
    return paths


@pytest.fixture
def fixture_files(tmp_path):
    return write_fixture_files(tmp_path)
