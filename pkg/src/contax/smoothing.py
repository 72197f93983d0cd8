"""Distributional similarity between terms and count smoothing.

Terms that are reciprocal nearest neighbors under the chosen measure share
their attribute counts, assigning nonzero frequency to attribute/term
combinations never seen in the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .context import DependencyPair, PairTable
from .errors import ValidationError


class SimilarityKind(str, Enum):
    COSINE = "cosine"
    JACCARD = "jaccard"
    L1 = "l1"
    JENSEN_SHANNON = "js"
    SKEW = "skew"


# Divergences measure information loss: smaller means closer.
_LOWER_IS_CLOSER = {SimilarityKind.L1, SimilarityKind.JENSEN_SHANNON, SimilarityKind.SKEW}


@dataclass(frozen=True)
class SimilarityChoice:
    kind: SimilarityKind
    alpha: float = 0.99  # skew divergence only

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValidationError(f"alpha must be in (0,1), got {self.alpha}")

    @property
    def higher_is_closer(self) -> bool:
        return self.kind not in _LOWER_IS_CLOSER


@dataclass(frozen=True)
class TermDistribution:
    """Per-term conditional attribute distribution f(t, a) / f(t)."""

    term: str
    probs: dict[str, float] = field(hash=False)

    @classmethod
    def from_table(cls, table: PairTable, term: str) -> "TermDistribution":
        total = table.term_total(term)
        if total == 0:
            return cls(term, {})
        return cls(term, {a: c / total for a, c in table.term_row(term).items()})


def cosine(p: dict[str, float], q: dict[str, float]) -> float:
    dot = sum(v * q[a] for a, v in p.items() if a in q)
    np = math.sqrt(sum(v * v for v in p.values()))
    nq = math.sqrt(sum(v * v for v in q.values()))
    if np == 0.0 or nq == 0.0:
        return 0.0
    return dot / (np * nq)


def jaccard(p: dict[str, float], q: dict[str, float]) -> float:
    sp = {a for a, v in p.items() if v > 0}
    sq = {a for a, v in q.items() if v > 0}
    union = sp | sq
    if not union:
        return 0.0
    return len(sp & sq) / len(union)


def l1(p: dict[str, float], q: dict[str, float]) -> float:
    return sum(abs(p.get(a, 0.0) - q.get(a, 0.0)) for a in set(p) | set(q))


def l1_common(p: dict[str, float], q: dict[str, float]) -> float:
    """L1 via common attributes only, using that both distributions sum to 1."""
    masses = sum(abs(p[a] - q[a]) - p[a] - q[a] for a in p.keys() & q.keys())
    return masses + sum(p.values()) + sum(q.values())


def _kl(p: dict[str, float], q: dict[str, float]) -> float:
    """D(p || q) over the support of p; q must be nonzero there."""
    return sum(v * math.log(v / q[a]) for a, v in p.items() if v > 0)


def jensen_shannon(p: dict[str, float], q: dict[str, float]) -> float:
    avg = {a: (p.get(a, 0.0) + q.get(a, 0.0)) / 2 for a in set(p) | set(q)}
    return 0.5 * (_kl(p, avg) + _kl(q, avg))


def jensen_shannon_common(p: dict[str, float], q: dict[str, float]) -> float:
    """JS via common attributes; attribute mass unique to one side adds ln2/2."""
    common = p.keys() & q.keys()
    acc = 0.0
    only_mass = 0.0
    for a, v in p.items():
        if a in common:
            acc += 0.5 * v * math.log(2 * v / (v + q[a]))
        else:
            only_mass += v
    for a, v in q.items():
        if a in common:
            acc += 0.5 * v * math.log(2 * v / (v + p[a]))
        else:
            only_mass += v
    return acc + 0.5 * math.log(2.0) * only_mass


def skew_divergence(p: dict[str, float], q: dict[str, float], alpha: float) -> float:
    mix = {a: alpha * p.get(a, 0.0) + (1 - alpha) * q.get(a, 0.0) for a in set(p) | set(q)}
    return _kl(p, mix)


def similarity(
    d1: TermDistribution, d2: TermDistribution, choice: SimilarityChoice
) -> tuple[float, bool]:
    """Score plus orientation flag (True when higher means closer)."""
    p, q = d1.probs, d2.probs
    if choice.kind is SimilarityKind.COSINE:
        return cosine(p, q), True
    if choice.kind is SimilarityKind.JACCARD:
        return jaccard(p, q), True
    if choice.kind is SimilarityKind.L1:
        return l1(p, q), False
    if choice.kind is SimilarityKind.JENSEN_SHANNON:
        return jensen_shannon(p, q), False
    if choice.kind is SimilarityKind.SKEW:
        return skew_divergence(p, q, choice.alpha), False
    raise ValidationError(f"unknown similarity {choice.kind!r}")  # pragma: no cover


def mutual_pairs_from_scores(
    terms: Iterable[str],
    score: dict[tuple[str, str], float],
    higher_is_closer: bool,
) -> frozenset[tuple[str, str]]:
    """Reciprocal-nearest-neighbor pairs from directed scores.

    ``score[(a, b)]`` is the closeness of b as seen from a.  Ties break
    toward the lexicographically smaller candidate, so the nearest neighbor
    is always unique and the result deterministic.
    """
    term_list = sorted(set(terms))
    if len(term_list) < 2:
        return frozenset()
    sign = 1.0 if higher_is_closer else -1.0
    best: dict[str, str] = {}
    for t in term_list:
        # candidates are visited in lexicographic order, so on ties the
        # smaller name wins and the nearest neighbor is unique
        top_score = None
        for c in term_list:
            if c == t:
                continue
            s = sign * score[(t, c)]
            if top_score is None or s > top_score:
                top_score = s
                best[t] = c
    return frozenset(
        tuple(sorted((a, b)))
        for a, b in best.items()
        if best[b] == a and a < b
    )


def mutual_pairs(
    dists: Iterable[TermDistribution], choice: SimilarityChoice
) -> frozenset[tuple[str, str]]:
    """Unordered term pairs that are each other's nearest neighbor."""
    by_term = {d.term: d for d in dists}
    score = {
        (a, b): similarity(by_term[a], by_term[b], choice)[0]
        for a in by_term
        for b in by_term
        if a != b
    }
    return mutual_pairs_from_scores(by_term, score, choice.higher_is_closer)


def smooth_counts(
    table: PairTable, pairs: Iterable[tuple[str, str]]
) -> tuple[PairTable, int]:
    """Share attribute counts inside each mutual pair.

    For each pair {t1, t2} and attribute a, both terms end up with
    f(t1, a) + f(t2, a).  Returns the new table and the number of
    (term, attribute) cells that went from zero to nonzero.
    """
    extra: dict[tuple[str, str, str], int] = {}
    added = 0
    for t1, t2 in pairs:
        rows = {t1: {}, t2: {}}
        for p in table.records():
            if p.noun in rows:
                rows[p.noun][(p.verb, p.role)] = rows[p.noun].get((p.verb, p.role), 0) + p.count
        for a, b in ((t1, t2), (t2, t1)):
            for (verb, role), c in rows[b].items():
                extra[(verb, role, a)] = extra.get((verb, role, a), 0) + c
                if rows[a].get((verb, role), 0) == 0:
                    added += 1
    result = PairTable(table.records())
    for (verb, role, noun), c in sorted(extra.items()):
        result.add(DependencyPair(verb, role, noun, c))
    return result, added


def smooth_table(
    table: PairTable, choice: SimilarityChoice, terms: Iterable[str] | None = None
) -> tuple[PairTable, frozenset[tuple[str, str]], int]:
    """Full smoothing pass: distributions -> mutual pairs -> shared counts."""
    term_list = sorted(set(terms)) if terms is not None else sorted(table.terms)
    dists = [TermDistribution.from_table(table, t) for t in term_list]
    pairs = mutual_pairs(dists, choice)
    smoothed, added = smooth_counts(table, pairs)
    return smoothed, pairs, added
