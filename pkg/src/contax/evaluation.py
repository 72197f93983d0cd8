"""Comparing a learned concept hierarchy against a gold one.

Precision/recall are directional taxonomic overlaps built on strict common
cotopies; the designated roots never count as concepts but the root is a
legal match candidate and cotopy query point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import UnknownConceptError, ValidationError
from .taxonomy import ROOT, Taxonomy


def semantic_cotopy(c: str, o: Taxonomy) -> frozenset[str]:
    """All super- and subconcepts of ``c`` including itself, root excluded."""
    if c == ROOT:
        return o.concepts
    if c not in o:
        raise UnknownConceptError(f"unknown concept {c!r}")
    return o.ancestors(c) | o.descendants(c) | {c}


def common_cotopy(c: str, o1: Taxonomy, o2: Taxonomy) -> frozenset[str]:
    """SC': the cotopy of ``c`` in o1 restricted to concepts of both."""
    return semantic_cotopy(c, o1) & o1.concepts & o2.concepts


def strict_common_cotopy(c: str, o1: Taxonomy, o2: Taxonomy) -> frozenset[str]:
    """SC'': common cotopy under the strict order, the concept itself excluded.

    ``root`` is a valid query point; everything common sits strictly below it.
    """
    common = o1.concepts & o2.concepts
    if c == ROOT:
        return common
    if c not in o1:
        raise UnknownConceptError(f"unknown concept {c!r}")
    return (o1.ancestors(c) | o1.descendants(c)) & common


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    union = a | b
    if not union:
        return 0.0  # 0/0 inside the max counts as no overlap
    return len(a & b) / len(union)


@dataclass(frozen=True)
class ConceptMatch:
    concept: str
    best_match: str
    overlap: float


def _overlap_matches(o1: Taxonomy, o2: Taxonomy) -> list[ConceptMatch]:
    """Best strict-common-cotopy overlap for each concept of o1 not in o2."""
    novel = sorted(o1.concepts - o2.concepts)
    candidates = sorted(o2.concepts) + [ROOT]
    matches = []
    for c in novel:
        sc1 = strict_common_cotopy(c, o1, o2)
        best_name = ROOT
        best = 0.0
        for c2 in candidates:
            j = _jaccard(sc1, strict_common_cotopy(c2, o2, o1))
            if j > best:
                best, best_name = j, c2
        matches.append(ConceptMatch(c, best_name, best))
    return matches


def taxonomic_overlap(o1: Taxonomy, o2: Taxonomy) -> float:
    """Average best overlap of o1's novel concepts against o2; 1 when o1 has
    no concept outside o2 (the trivial-hierarchy 'per definition' case)."""
    matches = _overlap_matches(o1, o2)
    if not matches:
        return 1.0
    return sum(m.overlap for m in matches) / len(matches)


def taxonomic_overlap_full(o1: Taxonomy, o2: Taxonomy) -> float:
    """Reference variant over full cotopies, averaged over all of C1.

    Same-named concepts compare their own cotopies; others take the best
    candidate in C2.
    """
    if not o1.concepts:
        return 1.0
    total = 0.0
    for c in sorted(o1.concepts):
        sc1 = semantic_cotopy(c, o1)
        if c in o2:
            total += _jaccard(sc1, semantic_cotopy(c, o2))
        else:
            total += max(
                (_jaccard(sc1, semantic_cotopy(c2, o2)) for c2 in o2.concepts),
                default=0.0,
            )
    return total / len(o1.concepts)


def lexical_recall(o1: Taxonomy, o2: Taxonomy) -> float:
    if not o2.concepts:
        raise ValidationError("gold taxonomy has no concepts")
    return len(o1.concepts & o2.concepts) / len(o2.concepts)


def _harmonic(a: float, b: float) -> float:
    if a + b == 0.0:
        return 0.0
    return 2 * a * b / (a + b)


@dataclass(frozen=True)
class EvalReport:
    lexical_recall: float
    precision: float
    recall: float
    f_measure: float
    f_prime: float
    precision_matches: list[ConceptMatch] = field(default_factory=list)
    recall_matches: list[ConceptMatch] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "lexical_recall": self.lexical_recall,
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
            "f_prime": self.f_prime,
            "matches": [
                {"concept": m.concept, "best_match": m.best_match, "overlap": m.overlap}
                for m in self.precision_matches
            ],
            "recall_matches": [
                {"concept": m.concept, "best_match": m.best_match, "overlap": m.overlap}
                for m in self.recall_matches
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def evaluate(learned: Taxonomy, gold: Taxonomy) -> EvalReport:
    if not gold.concepts:
        raise ValidationError("gold taxonomy has no concepts")
    p_matches = _overlap_matches(learned, gold)
    r_matches = _overlap_matches(gold, learned)
    precision = (
        sum(m.overlap for m in p_matches) / len(p_matches) if p_matches else 1.0
    )
    recall = (
        sum(m.overlap for m in r_matches) / len(r_matches) if r_matches else 1.0
    )
    lr = lexical_recall(learned, gold)
    f = _harmonic(precision, recall)
    return EvalReport(
        lexical_recall=lr,
        precision=precision,
        recall=recall,
        f_measure=f,
        f_prime=_harmonic(lr, f),
        precision_matches=p_matches,
        recall_matches=r_matches,
    )


def average_reports(reports: list[EvalReport]) -> EvalReport:
    """Mean metric values across runs (match tables are not averaged)."""
    if not reports:
        raise ValidationError("no reports to average")
    n = len(reports)
    return EvalReport(
        lexical_recall=sum(r.lexical_recall for r in reports) / n,
        precision=sum(r.precision for r in reports) / n,
        recall=sum(r.recall for r in reports) / n,
        f_measure=sum(r.f_measure for r in reports) / n,
        f_prime=sum(r.f_prime for r in reports) / n,
    )
