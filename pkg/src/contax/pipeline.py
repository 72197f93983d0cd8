"""End-to-end orchestration: smooth -> weight -> threshold -> engine -> eval."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import clustering, lattice, smoothing
from .context import ContextBuild, PairTable, build_context, load_pairs
from .errors import ValidationError
from .evaluation import EvalReport, average_reports, evaluate
from .smoothing import SimilarityChoice, SimilarityKind
from .taxonomy import Taxonomy, parse_taxonomy
from .weighting import Measure, make_weigher

ENGINES = ("fca", "agglo-single", "agglo-complete", "agglo-average", "bisect")

DEFAULT_THRESHOLDS = (0.005, 0.01, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass
class PipelineConfig:
    pairs_path: str
    terms_path: str | None = None
    gold_path: str | None = None
    measure: Measure = Measure.CONDITIONAL
    smooth: SimilarityKind | None = None
    alpha: float = 0.99
    engine: str = "fca"
    threshold: float = 0.5
    sweep: Sequence[float] = field(default_factory=tuple)
    seed: int = 0
    runs: int = 1

    def __post_init__(self):
        self.measure = Measure(self.measure)
        if self.smooth is not None:
            self.smooth = SimilarityKind(self.smooth)
        if self.engine not in ENGINES:
            raise ValidationError(f"unknown engine {self.engine!r}")
        for t in (self.threshold, *self.sweep):
            if not (0.0 <= t <= 1.0):
                raise ValidationError(f"threshold out of [0,1]: {t}")
        if self.runs < 1:
            raise ValidationError("runs must be >= 1")


@dataclass
class PipelineResult:
    taxonomy: Taxonomy  # first run for bisect
    run_taxonomies: list[Taxonomy]
    context: ContextBuild
    report: EvalReport | None = None
    run_reports: list[EvalReport] = field(default_factory=list)
    mutual_pairs: frozenset[tuple[str, str]] = frozenset()
    added_cells: int = 0


def read_terms(path: str) -> list[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    terms = [ln.strip() for ln in lines if ln.strip() and not ln.startswith("#")]
    if not terms:
        raise ValidationError(f"no terms in {path}")
    return terms


def load_inputs(cfg: PipelineConfig) -> tuple[PairTable, list[str]]:
    with open(cfg.pairs_path, encoding="utf-8") as fh:
        table = load_pairs(fh)
    if cfg.terms_path:
        terms = read_terms(cfg.terms_path)
    else:
        terms = sorted(table.terms)
    return table, terms


def _build(cfg: PipelineConfig, table: PairTable, terms: list[str],
           threshold: float) -> PipelineResult:
    ctx = build_context(table, terms, make_weigher(cfg.measure), threshold)
    if cfg.engine == "fca":
        _, tax = lattice.induce_hierarchy(ctx.binary)
        runs = [tax]
    elif cfg.engine.startswith("agglo-"):
        vectors = [
            clustering.TermVector(t, ctx.weighted.term_weights(t))
            for t in ctx.binary.objects
        ]
        if not vectors:
            raise ValidationError("no terms survive the threshold")
        tax = clustering.agglomerate(vectors, clustering.Linkage(cfg.engine[6:]))
        runs = [tax]
    else:  # bisect
        vectors = [
            clustering.TermVector(t, ctx.weighted.term_weights(t))
            for t in ctx.binary.objects
        ]
        if not vectors:
            raise ValidationError("no terms survive the threshold")
        runs = clustering.bisect_kmeans(vectors, cfg.seed, cfg.runs)
        tax = runs[0]
    return PipelineResult(taxonomy=tax, run_taxonomies=runs, context=ctx)


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    table, terms = load_inputs(cfg)
    pairs: frozenset[tuple[str, str]] = frozenset()
    added = 0
    if cfg.smooth is not None:
        choice = SimilarityChoice(cfg.smooth, cfg.alpha)
        table, pairs, added = smoothing.smooth_table(table, choice, terms)
    result = _build(cfg, table, terms, cfg.threshold)
    result.mutual_pairs = pairs
    result.added_cells = added
    if cfg.gold_path:
        gold = _load_gold(cfg.gold_path)
        result.run_reports = [evaluate(t, gold) for t in result.run_taxonomies]
        result.report = average_reports(result.run_reports)
    return result


def _load_gold(path: str) -> Taxonomy:
    with open(path, encoding="utf-8") as fh:
        return parse_taxonomy(fh)


@dataclass(frozen=True)
class SweepRow:
    threshold: float
    concept_count: int
    lexical_recall: float
    precision: float
    recall: float
    f_measure: float
    f_prime: float


def sweep(cfg: PipelineConfig) -> list[SweepRow]:
    """Evaluate each threshold independently against the gold standard."""
    if not cfg.gold_path:
        raise ValidationError("sweep requires a gold taxonomy")
    thresholds = tuple(cfg.sweep) or DEFAULT_THRESHOLDS
    table, terms = load_inputs(cfg)
    if cfg.smooth is not None:
        choice = SimilarityChoice(cfg.smooth, cfg.alpha)
        table, _, _ = smoothing.smooth_table(table, choice, terms)
    gold = _load_gold(cfg.gold_path)
    rows = []
    for t in sorted(thresholds):
        result = _build(cfg, table, terms, t)
        reports = [evaluate(tax, gold) for tax in result.run_taxonomies]
        rep = average_reports(reports)
        counts = [len(tax.concepts) for tax in result.run_taxonomies]
        rows.append(
            SweepRow(
                threshold=t,
                concept_count=round(sum(counts) / len(counts)),
                lexical_recall=rep.lexical_recall,
                precision=rep.precision,
                recall=rep.recall,
                f_measure=rep.f_measure,
                f_prime=rep.f_prime,
            )
        )
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    out = io.StringIO()
    out.write("threshold,concepts,lexical_recall,precision,recall,f_measure,f_prime\n")
    for r in rows:
        out.write(
            f"{r.threshold:g},{r.concept_count},{r.lexical_recall:.6f},"
            f"{r.precision:.6f},{r.recall:.6f},{r.f_measure:.6f},{r.f_prime:.6f}\n"
        )
    return out.getvalue()
