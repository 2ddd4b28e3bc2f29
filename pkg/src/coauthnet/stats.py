"""Statistical analyses: power-curve fits, degree distributions, Spearman
rank correlation, histograms, and ranking profiles.

The power fit is ordinary least squares of ln(y) on ln(x), which mirrors
spreadsheet "power trendline" behavior; its R-squared is therefore reported
in log space.
"""

from __future__ import annotations

import csv
import io
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from scipy.stats import t as _student_t

from .centrality import CentralityVector, ordinal_ranks
from .errors import DataError
from .graph import CoauthGraph


@dataclass(frozen=True)
class PowerFit:
    """Least-squares fit of y = coefficient * x**exponent on log-log axes."""

    coefficient: float
    exponent: float
    r_squared: float
    n_points: int


@dataclass(frozen=True)
class CorrelationReport:
    """Pairwise Spearman rho matrix with 0.01-level significance flags."""

    labels: tuple[str, ...]
    rho: tuple[tuple[float, ...], ...]
    significant_01: tuple[tuple[bool, ...], ...]
    n: int


@dataclass(frozen=True)
class Histogram:
    """Equal-width histogram; the last bin includes its right edge."""

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    normalized: bool

    def probabilities(self) -> tuple[float, ...]:
        total = sum(self.counts)
        return tuple(c / total for c in self.counts)


@dataclass(frozen=True)
class RankingProfile:
    """Per-vertex ordinal ranks under several measures, ordered by the
    baseline measure's rank (column 0)."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, tuple[int, ...]], ...]


def power_fit(points: Sequence[tuple[float, float]]) -> PowerFit:
    """Fit y = a * x**b by OLS of ln(y) on ln(x).

    Requires at least 3 strictly positive points. Raises DataError for
    non-positive coordinates or degenerate (all-equal) x values.
    """
    if len(points) < 3:
        raise DataError(f"power_fit needs >= 3 points, got {len(points)}")
    for x, y in points:
        if x <= 0 or y <= 0:
            raise DataError(f"power_fit needs positive coordinates, got ({x}, {y})")
    lx = [math.log(x) for x, _ in points]
    ly = [math.log(y) for _, y in points]
    n = len(points)
    mean_x = sum(lx) / n
    mean_y = sum(ly) / n
    sxx = sum((a - mean_x) ** 2 for a in lx)
    if sxx == 0.0:
        raise DataError("power_fit: all x values equal, slope undefined")
    sxy = sum((a - mean_x) * (b - mean_y) for a, b in zip(lx, ly))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((b - (intercept + slope * a)) ** 2 for a, b in zip(lx, ly))
    ss_tot = sum((b - mean_y) ** 2 for b in ly)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    r_squared = min(1.0, max(0.0, r_squared))
    return PowerFit(
        coefficient=math.exp(intercept),
        exponent=slope,
        r_squared=r_squared,
        n_points=n,
    )


def degree_distribution(g: CoauthGraph) -> list[tuple[int, float]]:
    """(degree, probability) rows for degrees >= 1, sorted by degree.

    Probabilities divide by the total vertex count, so isolated vertices
    deflate the listed probabilities without emitting a row of their own.
    """
    n = len(g)
    if n == 0:
        raise DataError("degree_distribution: empty graph")
    counts: dict[int, int] = {}
    for v in g.vertices():
        k = g.degree(v)
        counts[k] = counts.get(k, 0) + 1
    if set(counts) == {0}:
        raise DataError("degree_distribution: every vertex is isolated")
    return [(k, counts[k] / n) for k in sorted(counts) if k >= 1]


def _average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks with tied values sharing the average of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = (i + j + 2) / 2
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def _pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxy = sxx = syy = 0.0
    for a, b in zip(xs, ys):
        dx = a - mean_x
        dy = b - mean_y
        sxy += dx * dy
        sxx += dx * dx
        syy += dy * dy
    if sxx == 0.0 or syy == 0.0:
        raise DataError("correlation undefined: a series has zero rank variance")
    return sxy / math.sqrt(sxx * syy)


def spearman(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float]:
    """Spearman rank correlation with average-rank tie handling.

    Returns (rho, two-sided p-value). The p-value uses the t approximation
    t = rho * sqrt((n-2) / (1-rho^2)) with n-2 degrees of freedom; a perfect
    rho of +-1 yields p = 0.
    """
    n = len(xs)
    if len(ys) != n:
        raise DataError(f"spearman: length mismatch ({n} vs {len(ys)})")
    if n < 3:
        raise DataError(f"spearman needs n >= 3, got {n}")
    rho = _pearson(_average_ranks(xs), _average_ranks(ys))
    if rho >= 1.0:
        return 1.0, 0.0
    if rho <= -1.0:
        return -1.0, 0.0
    t_stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    p_value = 2.0 * float(_student_t.sf(abs(t_stat), n - 2))
    return rho, p_value


def correlation_matrix(series: Mapping[str, Sequence[float]]) -> CorrelationReport:
    """Pairwise Spearman correlations over aligned, same-length series.

    The diagonal is exactly 1.0 and flagged significant (p = 0 under the
    perfect-correlation rule). Errors from an undefined pair are re-raised
    naming the pair.
    """
    labels = tuple(series)
    if len(labels) < 2:
        raise DataError("correlation_matrix needs >= 2 series")
    lengths = {len(series[label]) for label in labels}
    if len(lengths) != 1:
        raise DataError("correlation_matrix: series lengths differ")
    n = lengths.pop()
    k = len(labels)
    rho = [[1.0] * k for _ in range(k)]
    sig = [[True] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            try:
                r, p = spearman(series[labels[i]], series[labels[j]])
            except DataError as exc:
                raise DataError(f"pair ({labels[i]}, {labels[j]}): {exc}") from exc
            rho[i][j] = rho[j][i] = r
            sig[i][j] = sig[j][i] = p < 0.01
    return CorrelationReport(
        labels=labels,
        rho=tuple(tuple(row) for row in rho),
        significant_01=tuple(tuple(row) for row in sig),
        n=n,
    )


def histogram(values: Sequence[float], bins: int, normalized: bool = False) -> Histogram:
    """Equal-width histogram over [min, max].

    Interior bins are right-open; the last bin includes its right edge. A
    constant input collapses to a single zero-width bin holding everything.
    """
    if not values:
        raise DataError("histogram: empty input")
    if bins < 1:
        raise DataError(f"histogram: bins must be >= 1, got {bins}")
    lo = float(min(values))
    hi = float(max(values))
    if lo == hi:
        return Histogram(bin_edges=(lo, hi), counts=(len(values),), normalized=normalized)
    edges = [lo + (hi - lo) * i / bins for i in range(bins + 1)]
    edges[0] = lo
    edges[-1] = hi
    counts = [0] * bins
    for v in values:
        idx = bisect_right(edges, v) - 1
        if idx == bins:
            idx -= 1
        counts[idx] += 1
    return Histogram(bin_edges=tuple(edges), counts=tuple(counts), normalized=normalized)


def ranking_profile(
    baseline: CentralityVector,
    others: Iterable[CentralityVector],
    citations: Mapping[str, float],
) -> RankingProfile:
    """Ordinal ranks of every vertex under the baseline measure, the other
    measures, and citation counts, ordered by baseline rank.

    All inputs must cover exactly the same vertex set.
    """
    others = list(others)
    vertex_set = set(baseline.scores)
    for cv in others:
        if set(cv.scores) != vertex_set:
            raise DataError(f"ranking_profile: vertex set of {cv.measure!r} differs")
    if set(citations) != vertex_set:
        raise DataError("ranking_profile: citations cover a different vertex set")
    columns = (baseline.measure, *(cv.measure for cv in others), "citations")
    rank_maps = [ordinal_ranks(baseline.scores)]
    rank_maps.extend(ordinal_ranks(cv.scores) for cv in others)
    rank_maps.append(ordinal_ranks(citations))
    by_baseline = sorted(vertex_set, key=lambda v: rank_maps[0][v])
    rows = tuple((v, tuple(ranks[v] for ranks in rank_maps)) for v in by_baseline)
    return RankingProfile(columns=columns, rows=rows)


def _format_number(x: float) -> str:
    return format(x, ".17g")


def render_fit_csv(fits: Iterable[tuple[str, PowerFit]]) -> str:
    """CSV ``series,coefficient,exponent,r_squared,n``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["series", "coefficient", "exponent", "r_squared", "n"])
    for name, fit in fits:
        writer.writerow(
            [
                name,
                _format_number(fit.coefficient),
                _format_number(fit.exponent),
                _format_number(fit.r_squared),
                fit.n_points,
            ]
        )
    return buf.getvalue()


def render_correlation_csv(report: CorrelationReport) -> str:
    """Square rho matrix with row/column labels."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["series", *report.labels])
    for label, row in zip(report.labels, report.rho):
        writer.writerow([label, *(_format_number(x) for x in row)])
    return buf.getvalue()


def render_significance_csv(report: CorrelationReport) -> str:
    """Square 0/1 matrix flagging p < 0.01, labels matching the rho matrix."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["series", *report.labels])
    for label, row in zip(report.labels, report.significant_01):
        writer.writerow([label, *(int(flag) for flag in row)])
    return buf.getvalue()


def render_histogram_csv(hist: Histogram) -> str:
    """CSV ``bin_lo,bin_hi,count``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bin_lo", "bin_hi", "count"])
    for i, count in enumerate(hist.counts):
        writer.writerow(
            [
                _format_number(hist.bin_edges[i]),
                _format_number(hist.bin_edges[i + 1]),
                count,
            ]
        )
    return buf.getvalue()


def render_profile_csv(profile: RankingProfile) -> str:
    """CSV ``author,<measure>_rank,...`` ordered by the baseline column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["author", *(f"{name}_rank" for name in profile.columns)])
    for author, ranks in profile.rows:
        writer.writerow([author, *ranks])
    return buf.getvalue()
