"""Formal concept enumeration and the lattice-to-hierarchy transform.

Concepts are enumerated with Ganter's Next Closure over attribute sets in
lectic order; extents and intents are integer bitmasks over the context's
object/attribute lists.  The covering (Hasse) relation is the transitive
reduction of the extent-inclusion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .context import FormalContext
from .taxonomy import ROOT, Taxonomy

INTENT_PREFIX = "intent:"


@dataclass(frozen=True)
class FormalConcept:
    extent: int  # object bitmask
    intent: int  # attribute bitmask

    def extent_names(self, ctx: FormalContext) -> frozenset[str]:
        return frozenset(_names(self.extent, ctx.objects))

    def intent_names(self, ctx: FormalContext) -> frozenset[str]:
        return frozenset(_names(self.intent, ctx.attributes))


def _names(mask: int, universe: list[str]) -> Iterable[str]:
    i = 0
    while mask:
        if mask & 1:
            yield universe[i]
        mask >>= 1
        i += 1


def _bits(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def derive_attributes(ctx: FormalContext, objects: int) -> int:
    """A' as a bitmask: attributes common to all objects in the mask."""
    result = (1 << len(ctx.attributes)) - 1
    for i in _bits(objects):
        result &= ctx.rows[i]
    return result


def derive_objects(ctx: FormalContext, attributes: int) -> int:
    """B' as a bitmask: objects carrying every attribute in the mask."""
    result = (1 << len(ctx.objects)) - 1
    for j in _bits(attributes):
        result &= ctx.cols[j]
    return result


def derive_objects_named(ctx: FormalContext, attrs: Iterable[str]) -> frozenset[str]:
    mask = 0
    for m in attrs:
        mask |= 1 << ctx.attr_index(m)
    return frozenset(_names(derive_objects(ctx, mask), ctx.objects))


def derive_attributes_named(ctx: FormalContext, objs: Iterable[str]) -> frozenset[str]:
    mask = 0
    for g in objs:
        mask |= 1 << ctx.object_index(g)
    return frozenset(_names(derive_attributes(ctx, mask), ctx.attributes))


def closure(ctx: FormalContext, attributes: int) -> int:
    """B'' as a bitmask."""
    return derive_attributes(ctx, derive_objects(ctx, attributes))


def closure_named(ctx: FormalContext, attrs: Iterable[str]) -> frozenset[str]:
    mask = 0
    for m in attrs:
        mask |= 1 << ctx.attr_index(m)
    return frozenset(_names(closure(ctx, mask), ctx.attributes))


def enumerate_concepts(ctx: FormalContext) -> list[FormalConcept]:
    """All formal concepts, intents in lectic order."""
    n = len(ctx.attributes)
    full = (1 << n) - 1
    intent = closure(ctx, 0)
    concepts = [FormalConcept(derive_objects(ctx, intent), intent)]
    while intent != full:
        nxt = None
        for j in range(n - 1, -1, -1):
            bit = 1 << j
            if intent & bit:
                intent &= ~bit
            else:
                candidate = closure(ctx, intent | bit)
                # canonicity: nothing new below position j
                if (candidate & ~intent) & (bit - 1) == 0:
                    nxt = candidate
                    break
        if nxt is None:  # pragma: no cover - full set always closes the walk
            break
        intent = nxt
        concepts.append(FormalConcept(derive_objects(ctx, intent), intent))
    return concepts


class ConceptLattice:
    """Concepts plus their covering relation and reduced labeling."""

    def __init__(self, ctx: FormalContext):
        self.ctx = ctx
        self.concepts = enumerate_concepts(ctx)
        self._by_intent = {c.intent: i for i, c in enumerate(self.concepts)}
        self.covers = self._covering_edges()  # (child index, parent index)
        self.object_concept = {
            g: self._by_intent[derive_attributes(ctx, 1 << i)]
            for i, g in enumerate(ctx.objects)
        }
        self.attribute_concept = {
            m: self._by_intent[closure(ctx, 1 << j)]
            for j, m in enumerate(ctx.attributes)
        }
        self.top = self._by_intent[closure(ctx, 0)]
        full = (1 << len(ctx.attributes)) - 1
        self.bottom = self._by_intent[derive_attributes(ctx, derive_objects(ctx, full))]

    def _covering_edges(self) -> list[tuple[int, int]]:
        # child.extent strictly included in parent.extent, nothing in between
        order = sorted(range(len(self.concepts)),
                       key=lambda i: self.concepts[i].extent.bit_count())
        edges = []
        for ci in order:
            child = self.concepts[ci]
            for pi in order:
                parent = self.concepts[pi]
                if parent.extent.bit_count() <= child.extent.bit_count():
                    continue
                if child.extent & ~parent.extent:
                    continue
                if any(
                    self._strictly_between(self.concepts[mi], child, parent)
                    for mi in order
                    if mi != ci and mi != pi
                ):
                    continue
                edges.append((ci, pi))
        return edges

    @staticmethod
    def _strictly_between(mid: FormalConcept, child: FormalConcept,
                          parent: FormalConcept) -> bool:
        return (
            mid.extent != child.extent
            and mid.extent != parent.extent
            and child.extent & ~mid.extent == 0
            and mid.extent & ~parent.extent == 0
        )

    def leq(self, i: int, j: int) -> bool:
        """Concept i below-or-equal concept j (extent inclusion)."""
        return self.concepts[i].extent & ~self.concepts[j].extent == 0

    def concept_name(self, i: int) -> str:
        names = sorted(self.concepts[i].intent_names(self.ctx))
        return INTENT_PREFIX + "+".join(names)

    def dump(self) -> str:
        """Debug listing: concepts in lectic order, then Hasse edges."""
        lines = []
        for c in self.concepts:
            ext = ",".join(sorted(c.extent_names(self.ctx)))
            inn = ",".join(sorted(c.intent_names(self.ctx)))
            lines.append(f"extent{{{ext}}} intent{{{inn}}}\n")
        for child, parent in sorted(self.covers):
            lines.append(f"{child} -> {parent}\n")
        return "".join(lines)


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    return ConceptLattice(ctx)


def to_partial_order(lat: ConceptLattice) -> Taxonomy:
    """Name each concept with its intent and hang objects under their
    object concept; the top concept becomes the taxonomy root.

    The bottom concept is dropped when its extent is empty and no object
    labels it.
    """
    drop_bottom = (
        lat.bottom != lat.top
        and lat.concepts[lat.bottom].extent == 0
    )

    def name(i: int) -> str:
        return ROOT if i == lat.top else lat.concept_name(i)

    edges: list[tuple[str, str]] = []
    for child, parent in lat.covers:
        if drop_bottom and child == lat.bottom:
            continue
        edges.append((name(child), name(parent)))
    for g, i in lat.object_concept.items():
        if i == lat.top:
            edges.append((g, ROOT))
        else:
            edges.append((g, name(i)))
    return Taxonomy(edges)


def compact(tax: Taxonomy) -> Taxonomy:
    """Remove inner nodes whose leaf extension equals one of their children's.

    Children of a removed node are re-attached to its nearest surviving
    ancestors; leaves and the root always survive.
    """
    extension = {c: tax.leaf_extension(c) for c in tax.concepts}
    removed = {
        c
        for c in tax.concepts
        if tax.children_of(c)
        and any(extension[c] == extension[ch] for ch in tax.children_of(c))
    }

    def surviving_ancestors(c: str) -> set[str]:
        result: set[str] = set()
        for p in tax.parents_of(c):
            if p == ROOT or p not in removed:
                result.add(p)
            else:
                result.update(surviving_ancestors(p))
        return result

    edges = []
    for c in tax.concepts:
        if c in removed:
            continue
        parents = surviving_ancestors(c)
        if len(parents) > 1:
            # keep only minimal ancestors: drop root and anything strictly
            # above another member, so the edge set stays a cover relation
            parents.discard(ROOT)
            parents = {
                p for p in parents
                if not any(q != p and q in tax.descendants(p) for q in parents)
            }
        for p in sorted(parents):
            edges.append((c, p))
    return Taxonomy(edges)


def induce_hierarchy(ctx: FormalContext) -> tuple[ConceptLattice, Taxonomy]:
    """Lattice -> partial order -> compacted taxonomy."""
    lat = build_lattice(ctx)
    return lat, compact(to_partial_order(lat))
