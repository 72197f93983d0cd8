"""Concept hierarchies: a set of named concepts under a designated root.

The hierarchy is a DAG (a concept may have several parents); every concept
must reach the root through parent links.  ``root`` is a reserved name that
denotes the designated top element and is never itself a member of the
concept set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .errors import UnknownConceptError, ValidationError

ROOT = "root"


@dataclass(frozen=True)
class TaxonomyStats:
    concept_count: int
    leaf_count: int
    avg_depth: float
    max_depth: int
    avg_children: float
    max_children: int


class Taxonomy:
    """Immutable concept hierarchy over child->parent edges."""

    def __init__(self, edges: Iterable[tuple[str, str]]):
        parents: dict[str, set[str]] = {}
        children: dict[str, set[str]] = {}
        for child, parent in edges:
            if child == ROOT:
                raise ValidationError("'root' is reserved and cannot be a child")
            if child == parent:
                raise ValidationError(f"self-loop on {child!r}")
            parents.setdefault(child, set()).add(parent)
            if parent != ROOT:
                children.setdefault(parent, set()).add(child)
        concepts = set(parents) | set(children)
        for c in concepts:
            if c not in parents:
                raise ValidationError(f"concept {c!r} has no path to root")
        self._parents = {c: frozenset(ps) for c, ps in parents.items()}
        self._children = {c: frozenset(children.get(c, ())) for c in concepts}
        self._concepts = frozenset(concepts)
        self._root_children = frozenset(
            c for c, ps in self._parents.items() if ROOT in ps
        )
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        state: dict[str, int] = {}  # 1 = on stack, 2 = done
        for start in self._concepts:
            if state.get(start):
                continue
            stack = [(start, iter(self.parents_of(start)))]
            state[start] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for p in it:
                    if p == ROOT:
                        continue
                    s = state.get(p)
                    if s == 1:
                        raise ValidationError(f"cycle through concept {p!r}")
                    if s is None:
                        state[p] = 1
                        stack.append((p, iter(self.parents_of(p))))
                        advanced = True
                        break
                if not advanced:
                    state[node] = 2
                    stack.pop()

    # -- basic queries -------------------------------------------------

    @property
    def concepts(self) -> frozenset[str]:
        return self._concepts

    @property
    def leaves(self) -> frozenset[str]:
        return frozenset(c for c in self._concepts if not self._children[c])

    def __contains__(self, name: str) -> bool:
        return name in self._concepts

    def __len__(self) -> int:
        return len(self._concepts)

    def children_of(self, c: str) -> frozenset[str]:
        if c == ROOT:
            return self._root_children
        self._require(c)
        return self._children[c]

    def parents_of(self, c: str) -> frozenset[str]:
        if c == ROOT:
            return frozenset()
        self._require(c)
        return self._parents[c]

    def _require(self, c: str) -> None:
        if c not in self._concepts:
            raise UnknownConceptError(f"unknown concept {c!r}")

    def ancestors(self, c: str) -> frozenset[str]:
        """Strict ancestors of ``c``, root excluded."""
        self._require(c)
        seen: set[str] = set()
        todo = [c]
        while todo:
            for p in self._parents[todo.pop()]:
                if p != ROOT and p not in seen:
                    seen.add(p)
                    todo.append(p)
        return frozenset(seen)

    def descendants(self, c: str) -> frozenset[str]:
        """Strict descendants of ``c``; for root: every concept."""
        if c == ROOT:
            return self._concepts
        self._require(c)
        seen: set[str] = set()
        todo = [c]
        while todo:
            for ch in self._children[todo.pop()]:
                if ch not in seen:
                    seen.add(ch)
                    todo.append(ch)
        return frozenset(seen)

    def leaf_extension(self, c: str) -> frozenset[str]:
        """All leaves dominated by ``c``; a leaf's extension is itself."""
        if c == ROOT:
            return self.leaves
        self._require(c)
        if not self._children[c]:
            return frozenset((c,))
        return frozenset(d for d in self.descendants(c) if not self._children[d])

    @property
    def edge_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(
            (c, p) for c, ps in self._parents.items() for p in ps
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Taxonomy):
            return NotImplemented
        return self.edge_set == other.edge_set

    def __hash__(self) -> int:
        return hash(self.edge_set)

    # -- statistics ----------------------------------------------------

    def depths(self) -> dict[str, int]:
        """Shortest-path distance (in edges) from each concept up to root."""
        depth: dict[str, int] = {}

        def d(c: str) -> int:
            if c == ROOT:
                return 0
            if c not in depth:
                depth[c] = 1 + min(d(p) for p in self._parents[c])
            return depth[c]

        for c in self._concepts:
            d(c)
        return depth

    def stats(self) -> TaxonomyStats:
        if not self._concepts:
            raise ValidationError("cannot compute stats of an empty taxonomy")
        depth = self.depths()
        leaf_depths = [depth[c] for c in self.leaves]
        inner = [c for c in self._concepts if self._children[c]]
        child_counts = [len(self._children[c]) for c in inner]
        child_counts.append(len(self._root_children))
        return TaxonomyStats(
            concept_count=len(self._concepts),
            leaf_count=len(leaf_depths),
            avg_depth=sum(leaf_depths) / len(leaf_depths),
            max_depth=max(leaf_depths),
            avg_children=sum(child_counts) / len(child_counts),
            max_children=max(child_counts),
        )

    # -- serialization -------------------------------------------------

    def iter_edges(self) -> Iterator[tuple[str, str]]:
        for child in sorted(self._parents):
            for parent in sorted(self._parents[child]):
                yield child, parent

    def serialize(self, out: TextIO) -> None:
        for child, parent in self.iter_edges():
            out.write(f"{child}\t{parent}\n")

    def to_json_dict(self) -> dict:
        return {c: sorted(self._parents[c]) for c in sorted(self._concepts)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def parse_taxonomy(lines: Iterable[str]) -> Taxonomy:
    """Parse ``child<TAB>parent`` lines; names are trimmed and lowercased."""
    edges = []
    for i, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValidationError(f"line {i}: expected 'child<TAB>parent'")
        child, parent = (p.strip().lower() for p in parts)
        if not child or not parent:
            raise ValidationError(f"line {i}: empty concept name")
        edges.append((child, parent))
    return Taxonomy(edges)


def serialize_taxonomy(tax: Taxonomy) -> str:
    return "".join(f"{c}\t{p}\n" for c, p in tax.iter_edges())
