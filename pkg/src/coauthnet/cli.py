"""Command-line interface.

Subcommands wire the pipeline ingest -> graph -> centrality -> evolve ->
stats into deterministic file outputs: identical inputs and flags produce
byte-identical files. Every run writes a ``run.json`` manifest with the
resolved configuration.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 convergence error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path

from .centrality import (
    DEFAULT_DAMPING,
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    betweenness_centrality,
    closeness_centrality,
    degree_centrality,
    pagerank,
    rank_table,
    render_rank_csv,
    render_vector_csv,
)
from .errors import CoauthNetError, ConfigError, ConvergenceError, DataError
from .evolve import (
    cumulative_slices,
    growth_series,
    parse_growth_csv,
    render_growth_csv,
    render_slice_csv,
    slice_report,
)
from .graph import (
    build_graph,
    largest_component,
    render_edge_list,
    render_isolated_vertices,
    render_summary_csv,
    summary_stats,
)
from .ingest import (
    DEFAULT_DOC_TYPES,
    AuthorMergeMap,
    BiblioRecord,
    apply_merge_map,
    author_citations,
    filter_documents,
    normalize_records,
    parse_records,
)
from .stats import (
    correlation_matrix,
    degree_distribution,
    histogram,
    power_fit,
    ranking_profile,
    render_correlation_csv,
    render_fit_csv,
    render_histogram_csv,
    render_profile_csv,
    render_significance_csv,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_CONVERGENCE = 3

DEFAULT_TOP_N = 30


@dataclass
class RunConfig:
    """Resolved run configuration, serialized into the run.json manifest."""

    command: str
    input_path: str | None
    output_dir: str
    merge_map_path: str | None = None
    doc_types: tuple[str, ...] = DEFAULT_DOC_TYPES
    start_year: int | None = None
    slice_boundaries: tuple[int, ...] = ()
    damping: float = DEFAULT_DAMPING
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    top_n: int = DEFAULT_TOP_N
    restrict_to_largest: bool = True
    workers: int = 1
    histogram_bins: int | None = None
    series_path: str | None = None


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; remap onto ConfigError
    so usage problems surface as exit code 1."""

    def error(self, message):
        raise ConfigError(message)


def _comma_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _comma_tokens(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="coauthnet",
        description="Coauthorship-network analysis: summary statistics, "
        "centrality rankings, network evolution, correlations, curve fits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--input", help="tab-delimited bibliography export")
    common.add_argument("--output-dir", required=True, help="directory for result files")
    common.add_argument("--merge-map", help="CSV of variant,canonical author names")
    common.add_argument(
        "--doc-types",
        type=_comma_tokens,
        default=DEFAULT_DOC_TYPES,
        help="comma-separated document types to keep (default: Article,Review)",
    )
    common.add_argument(
        "--workers", type=int, default=1, help="parallel BFS workers (default 1)"
    )

    p_stats = sub.add_parser(
        "stats", parents=[common], help="summary statistics and graph export"
    )
    p_stats.set_defaults(handler=cmd_stats)

    p_cent = sub.add_parser(
        "centrality", parents=[common], help="centrality vectors and top-N tables"
    )
    p_cent.add_argument("--damping", type=float, default=DEFAULT_DAMPING)
    p_cent.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_cent.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p_cent.add_argument("--top-n", type=int, default=DEFAULT_TOP_N)
    p_cent.add_argument(
        "--whole-graph",
        action="store_true",
        help="compute on the whole graph instead of the largest component",
    )
    p_cent.add_argument(
        "--histogram-bins",
        type=int,
        default=None,
        help="also write a score histogram per measure with this many bins",
    )
    p_cent.set_defaults(handler=cmd_centrality)

    p_evolve = sub.add_parser(
        "evolve", parents=[common], help="growth series and cumulative slice reports"
    )
    p_evolve.add_argument("--start-year", type=int, default=None)
    p_evolve.add_argument(
        "--slices",
        type=_comma_ints,
        default=(),
        help="comma-separated boundary years, e.g. 1992,1997,2002,2007",
    )
    p_evolve.set_defaults(handler=cmd_evolve)

    p_corr = sub.add_parser(
        "correlate",
        parents=[common],
        help="Spearman correlations of centralities vs citations, ranking profile",
    )
    p_corr.add_argument("--damping", type=float, default=DEFAULT_DAMPING)
    p_corr.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p_corr.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    p_corr.add_argument("--whole-graph", action="store_true")
    p_corr.set_defaults(handler=cmd_correlate)

    p_fit = sub.add_parser(
        "fit", parents=[common], help="power-curve fits for growth and degrees"
    )
    p_fit.add_argument("--start-year", type=int, default=None)
    p_fit.add_argument(
        "--series",
        help="pre-tabulated year,papers,authors CSV (replaces --input)",
    )
    p_fit.add_argument("--whole-graph", action="store_true")
    p_fit.set_defaults(handler=cmd_fit)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        input_path=args.input,
        output_dir=args.output_dir,
        merge_map_path=args.merge_map,
        doc_types=tuple(args.doc_types),
        start_year=getattr(args, "start_year", None),
        slice_boundaries=tuple(getattr(args, "slices", ())),
        damping=getattr(args, "damping", DEFAULT_DAMPING),
        tol=getattr(args, "tol", DEFAULT_TOL),
        max_iter=getattr(args, "max_iter", DEFAULT_MAX_ITER),
        top_n=getattr(args, "top_n", DEFAULT_TOP_N),
        restrict_to_largest=not getattr(args, "whole_graph", False),
        workers=args.workers,
        histogram_bins=getattr(args, "histogram_bins", None),
        series_path=getattr(args, "series", None),
    )
    if not cfg.doc_types:
        raise ConfigError("--doc-types must name at least one document type")
    if not 0.0 < cfg.damping < 1.0:
        raise ConfigError(f"--damping must lie in (0, 1), got {cfg.damping}")
    if cfg.tol <= 0.0:
        raise ConfigError(f"--tol must be positive, got {cfg.tol}")
    if cfg.max_iter < 1:
        raise ConfigError(f"--max-iter must be >= 1, got {cfg.max_iter}")
    if cfg.top_n < 1:
        raise ConfigError(f"--top-n must be >= 1, got {cfg.top_n}")
    if cfg.workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {cfg.workers}")
    if cfg.histogram_bins is not None and cfg.histogram_bins < 1:
        raise ConfigError(f"--histogram-bins must be >= 1, got {cfg.histogram_bins}")
    return cfg


def _read_text(path_str: str, what: str) -> str:
    path = Path(path_str)
    if not path.is_file():
        raise ConfigError(f"{what} not found: {path}")
    return path.read_text(encoding="utf-8")


def _load_corpus(cfg: RunConfig) -> list[BiblioRecord]:
    if not cfg.input_path:
        raise ConfigError("--input is required for this command")
    records = parse_records(_read_text(cfg.input_path, "input file"))
    logger.info("parsed %d record(s) from %s", len(records), cfg.input_path)
    kept = filter_documents(records, cfg.doc_types)
    dropped = len(records) - len(kept)
    if dropped:
        logger.info(
            "dropped %d record(s) outside document types {%s}",
            dropped,
            ", ".join(cfg.doc_types),
        )
    kept = normalize_records(kept)
    if cfg.merge_map_path:
        merge_map = AuthorMergeMap.from_csv(_read_text(cfg.merge_map_path, "merge map"))
        kept = apply_merge_map(kept, merge_map)
        logger.info("applied merge map with %d entries", len(merge_map))
    if not kept:
        raise DataError("no records after filtering")
    return kept


def _outdir(cfg: RunConfig) -> Path:
    path = Path(cfg.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_atomic(path: Path, text: str) -> None:
    """Write-then-rename so partial runs never leave a corrupt file."""
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def _write_manifest(cfg: RunConfig, outdir: Path, **resolved) -> None:
    payload = asdict(cfg)
    payload.update(resolved)
    _write_atomic(outdir / "run.json", json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _restrict(cfg: RunConfig, g):
    if cfg.restrict_to_largest:
        sub, ratio = largest_component(g)
        logger.info(
            "restricted to largest component: %d of %d author(s) (%.2f%%)",
            len(sub),
            len(g),
            100.0 * ratio,
        )
        return sub
    return g


def cmd_stats(cfg: RunConfig) -> None:
    records = _load_corpus(cfg)
    g = build_graph(records)
    stats = summary_stats(records, g)
    outdir = _outdir(cfg)
    _write_atomic(outdir / "summary.csv", render_summary_csv(stats))
    _write_atomic(outdir / "edges.tsv", render_edge_list(g))
    _write_atomic(outdir / "isolated_vertices.txt", render_isolated_vertices(g))
    _write_manifest(cfg, outdir)
    logger.info("wrote summary.csv, edges.tsv, isolated_vertices.txt to %s", outdir)


def _all_centralities(cfg: RunConfig, g):
    return (
        degree_centrality(g),
        closeness_centrality(g, workers=cfg.workers),
        betweenness_centrality(g, workers=cfg.workers),
        pagerank(g, damping=cfg.damping, tol=cfg.tol, max_iter=cfg.max_iter),
    )


def cmd_centrality(cfg: RunConfig) -> None:
    records = _load_corpus(cfg)
    g = _restrict(cfg, build_graph(records))
    outdir = _outdir(cfg)
    for cv in _all_centralities(cfg, g):
        _write_atomic(outdir / f"{cv.measure}.csv", render_vector_csv(cv))
        _write_atomic(
            outdir / f"top_{cv.measure}.csv",
            render_rank_csv(rank_table(cv, cfg.top_n)),
        )
        if cfg.histogram_bins:
            values = [cv.scores[v] for v in sorted(cv.scores)]
            hist = histogram(values, bins=cfg.histogram_bins, normalized=True)
            _write_atomic(outdir / f"hist_{cv.measure}.csv", render_histogram_csv(hist))
    _write_manifest(cfg, outdir)
    logger.info("wrote centrality vectors and rank tables to %s", outdir)


def cmd_evolve(cfg: RunConfig) -> None:
    records = _load_corpus(cfg)
    if not cfg.slice_boundaries:
        raise ConfigError("--slices is required for evolve")
    start = cfg.start_year if cfg.start_year is not None else min(r.year for r in records)
    end = max(r.year for r in records)
    slices = cumulative_slices(records, start, cfg.slice_boundaries)
    reports = [slice_report(ts) for ts in slices]
    growth = growth_series(records, start, end)
    outdir = _outdir(cfg)
    _write_atomic(outdir / "growth.csv", render_growth_csv(growth))
    _write_atomic(outdir / "slices.csv", render_slice_csv(reports))
    _write_manifest(cfg, outdir, start_year=start, end_year=end)
    logger.info("wrote growth.csv and slices.csv to %s", outdir)


def cmd_correlate(cfg: RunConfig) -> None:
    records = _load_corpus(cfg)
    g = _restrict(cfg, build_graph(records))
    citations = author_citations(records)
    vertices = g.vertices()
    deg, clo, bet, pr = _all_centralities(cfg, g)
    series = {
        "citations": [float(citations.get(v, 0)) for v in vertices],
        "closeness": [clo.scores[v] for v in vertices],
        "betweenness": [bet.scores[v] for v in vertices],
        "degree": [float(deg.scores[v]) for v in vertices],
        "pagerank": [pr.scores[v] for v in vertices],
    }
    report = correlation_matrix(series)
    profile = ranking_profile(pr, [clo, bet, deg], {v: citations.get(v, 0) for v in vertices})
    outdir = _outdir(cfg)
    _write_atomic(outdir / "correlation.csv", render_correlation_csv(report))
    _write_atomic(outdir / "correlation_sig.csv", render_significance_csv(report))
    _write_atomic(outdir / "ranking_profile.csv", render_profile_csv(profile))
    _write_manifest(cfg, outdir, n=report.n)
    logger.info("wrote correlation and ranking-profile files to %s", outdir)


def cmd_fit(cfg: RunConfig) -> None:
    fits = []
    resolved: dict[str, object] = {}
    if cfg.series_path:
        rows = parse_growth_csv(_read_text(cfg.series_path, "series file"))
        records = None
    else:
        records = _load_corpus(cfg)
        start = cfg.start_year if cfg.start_year is not None else min(r.year for r in records)
        end = max(r.year for r in records)
        rows = growth_series(records, start, end)
        resolved.update(start_year=start, end_year=end)
    t_axis = range(1, len(rows) + 1)
    fits.append(("papers", power_fit([(t, row[1]) for t, row in zip(t_axis, rows)])))
    fits.append(("authors", power_fit([(t, row[2]) for t, row in zip(t_axis, rows)])))
    if records is not None:
        g = _restrict(cfg, build_graph(records))
        fits.append(("degree_distribution", power_fit(degree_distribution(g))))
    outdir = _outdir(cfg)
    _write_atomic(outdir / "fits.csv", render_fit_csv(fits))
    _write_manifest(cfg, outdir, **resolved)
    logger.info("wrote fits.csv to %s", outdir)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        stream=sys.stderr, level=logging.INFO, format="%(levelname)s: %(message)s"
    )
    try:
        args = build_parser().parse_args(argv)
        cfg = _config_from_args(args)
        args.handler(cfg)
    except ConfigError as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    except ConvergenceError as exc:
        logger.error("%s", exc)
        return EXIT_CONVERGENCE
    except CoauthNetError as exc:
        logger.error("%s", exc)
        return EXIT_DATA
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
