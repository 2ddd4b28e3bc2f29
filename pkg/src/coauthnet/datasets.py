"""Bundled reference datasets."""

from __future__ import annotations

from importlib import resources

from .evolve import parse_growth_csv

GROWTH_SERIES_FILENAME = "lis_growth_1988_2007.csv"


def lis_growth_series() -> list[tuple[int, int, int]]:
    """Cumulative (year, papers, authors) rows for the bundled twenty-year
    library-and-information-science journal corpus (1988 through 2007)."""
    resource = resources.files("coauthnet") / "data" / GROWTH_SERIES_FILENAME
    return parse_growth_csv(resource.read_text(encoding="utf-8"))
