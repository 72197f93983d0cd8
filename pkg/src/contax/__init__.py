"""contax: concept hierarchies from verb-argument dependency pairs.

Builds weighted formal contexts from dependency counts, induces taxonomies
via Formal Concept Analysis, agglomerative clustering, or Bi-Section-KMeans,
and scores them against gold hierarchies with lexical recall and taxonomic
overlap measures.
"""

from .context import (
    DependencyPair,
    FormalContext,
    PairTable,
    WeightedContext,
    attribute_rank_stats,
    build_context,
    load_pairs,
)
from .clustering import Linkage, TermVector, agglomerate, bisect_kmeans
from .errors import ContaxError, PairParseError, ValidationError
from .evaluation import EvalReport, evaluate, lexical_recall, taxonomic_overlap
from .lattice import (
    ConceptLattice,
    FormalConcept,
    build_lattice,
    compact,
    enumerate_concepts,
    induce_hierarchy,
    to_partial_order,
)
from .pipeline import PipelineConfig, run_pipeline, sweep
from .smoothing import (
    SimilarityChoice,
    SimilarityKind,
    TermDistribution,
    mutual_pairs,
    smooth_counts,
    smooth_table,
)
from .taxonomy import ROOT, Taxonomy, TaxonomyStats, parse_taxonomy, serialize_taxonomy
from .weighting import Measure, conditional, normalize, pmi, resnik

__version__ = "0.1.0"

__all__ = [
    "ConceptLattice",
    "ContaxError",
    "DependencyPair",
    "EvalReport",
    "FormalConcept",
    "FormalContext",
    "Linkage",
    "Measure",
    "PairParseError",
    "PairTable",
    "PipelineConfig",
    "ROOT",
    "SimilarityChoice",
    "SimilarityKind",
    "Taxonomy",
    "TaxonomyStats",
    "TermDistribution",
    "TermVector",
    "ValidationError",
    "WeightedContext",
    "agglomerate",
    "attribute_rank_stats",
    "bisect_kmeans",
    "build_context",
    "build_lattice",
    "compact",
    "conditional",
    "enumerate_concepts",
    "evaluate",
    "induce_hierarchy",
    "lexical_recall",
    "load_pairs",
    "mutual_pairs",
    "normalize",
    "parse_taxonomy",
    "pmi",
    "resnik",
    "run_pipeline",
    "serialize_taxonomy",
    "smooth_counts",
    "smooth_table",
    "sweep",
    "taxonomic_overlap",
    "to_partial_order",
]
