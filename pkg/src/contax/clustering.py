"""Taxonomies from weighted term vectors: agglomerative and Bi-Section-KMeans.

Both engines share the Taxonomy output contract with the FCA path: leaves
are terms, inner nodes are synthetic clusters, and anything with similarity
0 to everything else ends up directly under the fictive root.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .context import WeightedContext
from .errors import ValidationError
from .taxonomy import ROOT, Taxonomy


class Linkage(str, Enum):
    SINGLE = "single"
    COMPLETE = "complete"
    AVERAGE = "average"


@dataclass(frozen=True)
class TermVector:
    term: str
    values: dict[str, float]

    def __post_init__(self):
        for v in self.values.values():
            if not math.isfinite(v) or v < 0:
                raise ValidationError(f"bad vector value for {self.term!r}: {v}")


def vectors_from_context(ctx: WeightedContext) -> list[TermVector]:
    return [TermVector(t, ctx.term_weights(t)) for t in ctx.terms]


def cosine_term_similarity(a: TermVector, b: TermVector) -> float:
    dot = sum(v * b.values[k] for k, v in a.values.items() if k in b.values)
    na = math.sqrt(sum(v * v for v in a.values.values()))
    nb = math.sqrt(sum(v * v for v in b.values.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


class _Cluster:
    __slots__ = ("members", "node")

    def __init__(self, members: tuple[str, ...], node: str):
        self.members = members  # sorted term names
        self.node = node  # taxonomy node carrying this cluster

    @property
    def key(self) -> str:
        return self.members[0]


def _linkage_sim(sims: dict[tuple[str, str], float], p: _Cluster, q: _Cluster,
                 linkage: Linkage) -> float:
    values = [sims[(a, b)] for a in p.members for b in q.members]
    if linkage is Linkage.SINGLE:
        return max(values)
    if linkage is Linkage.COMPLETE:
        return min(values)
    return sum(values) / len(values)


def agglomerate(
    vectors: Sequence[TermVector],
    linkage: Linkage,
    merge_log: list[float] | None = None,
) -> Taxonomy:
    """Bottom-up merging of the most similar clusters under cosine.

    Merging stops when the best remaining pair similarity is 0; the leftover
    clusters are ordered directly under the root.  Inner nodes are named
    ``agg:0001`` ... in merge order.  When ``merge_log`` is given it receives
    the chosen similarity of every merge, in order.
    """
    if not vectors:
        raise ValidationError("agglomerate needs at least one term")
    by_term = {v.term: v for v in vectors}
    if len(by_term) != len(vectors):
        raise ValidationError("duplicate term names")
    terms = sorted(by_term)
    sims = {
        (a, b): cosine_term_similarity(by_term[a], by_term[b])
        for a in terms
        for b in terms
        if a != b
    }
    clusters = [_Cluster((t,), t) for t in terms]
    edges: list[tuple[str, str]] = []
    merges = 0
    while len(clusters) > 1:
        best = None
        best_pair = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                p, q = clusters[i], clusters[j]
                s = _linkage_sim(sims, p, q, linkage)
                pair_key = tuple(sorted((p.key, q.key)))
                if best is None or s > best or (s == best and pair_key < best_pair):
                    best, best_pair, bi, bj = s, pair_key, i, j
        if best <= 0.0:
            break
        if merge_log is not None:
            merge_log.append(best)
        merges += 1
        node = f"agg:{merges:04d}"
        p, q = clusters[bi], clusters[bj]
        edges.append((p.node, node))
        edges.append((q.node, node))
        merged = _Cluster(tuple(sorted(p.members + q.members)), node)
        clusters = [c for k, c in enumerate(clusters) if k not in (bi, bj)]
        clusters.append(merged)
    for c in clusters:
        edges.append((c.node, ROOT))
    return Taxonomy(edges)


# ---------------------------------------------------------------------------
# Bi-Section-KMeans


def _unit(values: dict[str, float]) -> dict[str, float]:
    norm = math.sqrt(sum(v * v for v in values.values()))
    if norm == 0.0:
        return dict(values)
    return {k: v / norm for k, v in values.items()}


def _centroid(vectors: Sequence[dict[str, float]]) -> dict[str, float]:
    acc: dict[str, float] = {}
    for vec in vectors:
        for k, v in vec.items():
            acc[k] = acc.get(k, 0.0) + v
    n = len(vectors)
    return _unit({k: v / n for k, v in acc.items()})


def _cos(p: dict[str, float], q: dict[str, float]) -> float:
    dot = sum(v * q[k] for k, v in p.items() if k in q)
    np = math.sqrt(sum(v * v for v in p.values()))
    nq = math.sqrt(sum(v * v for v in q.values()))
    if np == 0.0 or nq == 0.0:
        return 0.0
    return dot / (np * nq)


def _variance(members: Sequence[str], unit: dict[str, dict[str, float]]) -> float:
    centroid = _centroid([unit[m] for m in members])
    return sum(1.0 - _cos(unit[m], centroid) for m in members)


def _two_means(members: tuple[str, ...], unit: dict[str, dict[str, float]],
               rng: random.Random) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split a cluster into two nonempty parts by seeded 2-means with cosine."""
    for _ in range(5):
        seeds = rng.sample(members, 2)
        centroids = [dict(unit[seeds[0]]), dict(unit[seeds[1]])]
        assign = None
        for _ in range(50):
            new_assign = []
            for m in members:
                s0 = _cos(unit[m], centroids[0])
                s1 = _cos(unit[m], centroids[1])
                new_assign.append(0 if s0 >= s1 else 1)
            if new_assign == assign:
                break
            assign = new_assign
            for side in (0, 1):
                side_members = [m for m, a in zip(members, assign) if a == side]
                if side_members:
                    centroids[side] = _centroid([unit[m] for m in side_members])
        left = tuple(m for m, a in zip(members, assign) if a == 0)
        right = tuple(m for m, a in zip(members, assign) if a == 1)
        if left and right:
            return left, right
    # degenerate data: peel off the point farthest from the centroid
    centroid = _centroid([unit[m] for m in members])
    far = min(members, key=lambda m: (_cos(unit[m], centroid), m))
    rest = tuple(m for m in members if m != far)
    return (far,), rest


def bisect_kmeans_run(vectors: Sequence[TermVector], rng: random.Random) -> Taxonomy:
    """One divisive run: repeatedly 2-means-split the largest-variance cluster."""
    if not vectors:
        raise ValidationError("bisect_kmeans needs at least one term")
    unit = {v.term: _unit(v.values) for v in vectors}
    if len(unit) != len(vectors):
        raise ValidationError("duplicate term names")
    edges: list[tuple[str, str]] = []
    splits = 0
    # clusters pending a split, each attached to its taxonomy node
    pending = [(tuple(sorted(unit)), ROOT)]
    while pending:
        pending.sort(key=lambda item: (-_variance(item[0], unit), item[0]))
        members, node = pending.pop(0)
        if len(members) == 1:
            edges.append((members[0], node))
            continue
        left, right = _two_means(members, unit, rng)
        for part in (left, right):
            if len(part) == 1:
                edges.append((part[0], node))
            else:
                splits += 1
                child = f"bisect:{splits:04d}"
                edges.append((child, node))
                pending.append((part, child))
    return Taxonomy(edges)


def bisect_kmeans(vectors: Sequence[TermVector], seed: int, runs: int) -> list[Taxonomy]:
    """Independent seeded runs; per-run seeds are seed + run index."""
    if runs < 1:
        raise ValidationError("runs must be >= 1")
    return [
        bisect_kmeans_run(vectors, random.Random(seed + r)) for r in range(runs)
    ]
