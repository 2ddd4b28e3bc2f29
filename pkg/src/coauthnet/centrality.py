"""Centrality measures on coauthorship graphs.

Four measures: degree (neighbor count), closeness (sum of reciprocal
geodesic distances, which handles disconnected graphs gracefully),
betweenness (unnormalized geodesic-fraction sums over unordered pairs, via
Brandes' dependency accumulation), and PageRank over the bidirectional
arc interpretation of the undirected graph.

Determinism contract: per-source passes iterate neighbors in canonical
(lexicographic) order and cross-source reductions run in canonical source
order, so serial and parallel runs produce bit-identical scores.
"""

from __future__ import annotations

import csv
import io
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigError, ConvergenceError, DataError
from .graph import CoauthGraph, shortest_path_lengths

MEASURES = ("degree", "closeness", "betweenness", "pagerank")

DEFAULT_DAMPING = 0.85
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class CentralityVector:
    """Scores of one measure for every vertex of the graph it ran on."""

    measure: str
    scores: dict[str, float]


@dataclass(frozen=True)
class RankTable:
    """Top-N ranking rows (rank, author, score), score descending.

    Ties are broken by ascending author key; ranks are ordinal (1, 2, 3...).
    """

    rows: tuple[tuple[int, str, float], ...]
    tie_rule: str = "score desc, author asc"


def degree_centrality(g: CoauthGraph) -> CentralityVector:
    """Number of distinct neighbors of each vertex."""
    return CentralityVector("degree", {v: g.degree(v) for v in g.vertices()})


def closeness_centrality(g: CoauthGraph, workers: int = 1) -> CentralityVector:
    """Sum over reachable others of 1/distance; unreachable pairs add 0."""
    vertices = g.vertices()

    def score(v: str) -> float:
        dist = shortest_path_lengths(g, v)
        return sum(1.0 / d for _, d in sorted(dist.items()) if d > 0)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(score, vertices))
    else:
        values = [score(v) for v in vertices]
    return CentralityVector("closeness", dict(zip(vertices, values)))


def betweenness_centrality(g: CoauthGraph, workers: int = 1) -> CentralityVector:
    """Unnormalized shortest-path betweenness over unordered vertex pairs.

    Brandes' one-pass-per-source accumulation; the per-source dependency
    maps are reduced in canonical source order regardless of worker count.
    """
    vertices = g.vertices()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda s: _brandes_source(g, s), vertices))
    else:
        partials = [_brandes_source(g, s) for s in vertices]
    totals = {v: 0.0 for v in vertices}
    for partial in partials:
        for v in sorted(partial):
            totals[v] += partial[v]
    # each unordered pair was seen from both endpoints
    return CentralityVector("betweenness", {v: totals[v] / 2.0 for v in vertices})


def _brandes_source(g: CoauthGraph, s: str) -> dict[str, float]:
    """Dependency of source s on every other vertex.

    Geodesic counts are exact (Python integers); dependencies accumulate in
    reverse BFS order.
    """
    sigma: dict[str, int] = {s: 1}
    dist: dict[str, int] = {s: 0}
    preds: dict[str, list[str]] = {s: []}
    order: list[str] = []
    queue = deque([s])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                sigma[w] = 0
                preds[w] = []
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    delta = {v: 0.0 for v in order}
    for w in reversed(order):
        for p in preds[w]:
            delta[p] += sigma[p] / sigma[w] * (1.0 + delta[w])
    return {v: delta[v] for v in order if v != s}


def pagerank(
    g: CoauthGraph,
    damping: float = DEFAULT_DAMPING,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> CentralityVector:
    """Fixed point of PR(v) = (1-d)/N + d * sum(PR(u)/deg(u) for u ~ v).

    Each undirected edge acts as two directed arcs; isolated (degree-0)
    vertices spread their mass uniformly over all vertices. Iteration starts
    from the uniform vector and stops once the L1 change drops below tol.

    Raises ConvergenceError when max_iter passes without reaching tol.
    """
    if not 0.0 < damping < 1.0:
        raise ConfigError(f"damping must lie in (0, 1), got {damping}")
    if tol <= 0.0:
        raise ConfigError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ConfigError(f"max_iter must be >= 1, got {max_iter}")
    vertices = g.vertices()
    n = len(vertices)
    if n == 0:
        raise DataError("pagerank: graph has no vertices")
    degree = {v: g.degree(v) for v in vertices}
    dangling = [v for v in vertices if degree[v] == 0]
    base = (1.0 - damping) / n
    rank = {v: 1.0 / n for v in vertices}
    residual = 0.0
    for _ in range(max_iter):
        dangling_share = sum(rank[v] for v in dangling) / n
        nxt = {}
        for v in vertices:
            acc = 0.0
            for u in g.neighbors(v):
                acc += rank[u] / degree[u]
            nxt[v] = base + damping * (acc + dangling_share)
        residual = sum(abs(nxt[v] - rank[v]) for v in vertices)
        rank = nxt
        if residual < tol:
            return CentralityVector("pagerank", rank)
    raise ConvergenceError(
        f"pagerank did not converge to tol={tol:g} within {max_iter} iterations "
        f"(L1 residual {residual:.3e})",
        residual=residual,
    )


def rank_table(cv: CentralityVector, top_n: int) -> RankTable:
    """Top-N rows sorted by score descending, author ascending on ties."""
    if top_n < 1:
        raise DataError(f"top_n must be >= 1, got {top_n}")
    ordered = sorted(cv.scores.items(), key=lambda item: (-item[1], item[0]))
    rows = tuple(
        (rank, author, score)
        for rank, (author, score) in enumerate(ordered[:top_n], start=1)
    )
    return RankTable(rows=rows)


def ordinal_ranks(scores: Mapping[str, float]) -> dict[str, int]:
    """Ordinal rank (1 = best) of every key under rank_table ordering."""
    ordered = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return {key: rank for rank, (key, _) in enumerate(ordered, start=1)}


def _format_score(x: float | int) -> str:
    return format(x, ".17g")


def render_vector_csv(cv: CentralityVector) -> str:
    """CSV ``author,measure,score`` with scores at 17 significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["author", "measure", "score"])
    for author in sorted(cv.scores):
        writer.writerow([author, cv.measure, _format_score(cv.scores[author])])
    return buf.getvalue()


def render_rank_csv(table: RankTable) -> str:
    """CSV ``rank,author,score`` in table order."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "author", "score"])
    for rank, author, score in table.rows:
        writer.writerow([rank, author, _format_score(score)])
    return buf.getvalue()
