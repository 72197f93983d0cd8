"""Dependency-pair ingestion and formal-context construction.

A pairs file is line-oriented TSV: ``verb<TAB>role<TAB>noun<TAB>count`` with
role one of ``subj``, ``obj``, ``pp:<prep>``.  The pseudo-role ``attr`` lets
a file carry plain attribute names directly (toy contexts given as binary
incidence tables); its attribute key is the bare first field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

from .errors import PairParseError, UnknownAttributeError, ValidationError

_ROLES = ("subj", "obj", "attr")


def attribute_key(verb: str, role: str) -> str:
    """Composite attribute identifier, e.g. ``book_obj``, ``combine_pp:with``."""
    if role == "attr":
        return verb
    return f"{verb}_{role}"


@dataclass(frozen=True)
class DependencyPair:
    verb: str
    role: str
    noun: str
    count: int

    def __post_init__(self):
        if not self.verb or not self.noun:
            raise ValidationError("verb and noun must be non-empty")
        if self.count < 1:
            raise ValidationError(f"count must be >= 1, got {self.count}")
        if self.role not in _ROLES and not self.role.startswith("pp:"):
            raise ValidationError(f"bad role {self.role!r}")

    @property
    def attribute(self) -> str:
        return attribute_key(self.verb, self.role)


class PairTable:
    """Aggregated (verb, role, noun) counts with their marginal sums."""

    def __init__(self, pairs: Iterable[DependencyPair] = ()):
        self._counts: dict[tuple[str, str, str], int] = {}
        self._term_totals: dict[str, int] = {}
        self._attr_totals: dict[str, int] = {}
        self._grand_total = 0
        for p in pairs:
            self.add(p)

    def add(self, pair: DependencyPair) -> None:
        if hasattr(self, "_cells"):
            del self._cells
        key = (pair.verb, pair.role, pair.noun)
        self._counts[key] = self._counts.get(key, 0) + pair.count
        self._term_totals[pair.noun] = self._term_totals.get(pair.noun, 0) + pair.count
        attr = pair.attribute
        self._attr_totals[attr] = self._attr_totals.get(attr, 0) + pair.count
        self._grand_total += pair.count

    def count(self, noun: str, attr: str) -> int:
        """f(n, v_arg): occurrences of noun in the attribute's slot."""
        return self._by_cell().get((noun, attr), 0)

    def _by_cell(self) -> dict[tuple[str, str], int]:
        if not hasattr(self, "_cells"):
            cells: dict[tuple[str, str], int] = {}
            for (verb, role, noun), c in self._counts.items():
                key = (noun, attribute_key(verb, role))
                cells[key] = cells.get(key, 0) + c
            self._cells = cells
        return self._cells

    def term_total(self, noun: str) -> int:
        return self._term_totals.get(noun, 0)

    def attr_total(self, attr: str) -> int:
        return self._attr_totals.get(attr, 0)

    @property
    def grand_total(self) -> int:
        return self._grand_total

    @property
    def terms(self) -> frozenset[str]:
        return frozenset(self._term_totals)

    @property
    def attributes(self) -> frozenset[str]:
        return frozenset(self._attr_totals)

    def attr_fillers(self, attr: str) -> dict[str, int]:
        """noun -> f(n, attr) for every noun observed in the slot."""
        return {n: c for (n, a), c in self._by_cell().items() if a == attr}

    def term_row(self, noun: str) -> dict[str, int]:
        """attr -> f(noun, attr) over the noun's observed attributes."""
        return {a: c for (n, a), c in self._by_cell().items() if n == noun}

    def records(self) -> Iterable[DependencyPair]:
        for (verb, role, noun), c in sorted(self._counts.items()):
            yield DependencyPair(verb, role, noun, c)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairTable):
            return NotImplemented
        return self._counts == other._counts

    def serialize(self) -> str:
        return "".join(
            f"{p.verb}\t{p.role}\t{p.noun}\t{p.count}\n" for p in self.records()
        )


def load_pairs(lines: Iterable[str]) -> PairTable:
    """Parse a pairs stream; duplicate keys sum, `#` lines are comments."""
    table = PairTable()
    for i, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise PairParseError(i, f"expected 4 tab-separated fields, got {len(parts)}")
        verb, role, noun, count_s = (p.strip() for p in parts)
        try:
            count = int(count_s)
        except ValueError:
            raise PairParseError(i, f"count is not an integer: {count_s!r}") from None
        if count <= 0:
            raise PairParseError(i, f"count must be positive, got {count}")
        try:
            table.add(DependencyPair(verb, role, noun, count))
        except ValidationError as e:
            raise PairParseError(i, str(e)) from None
    return table


class WeightedContext:
    """Term x attribute matrix of normalized weights in [0, 1]."""

    def __init__(
        self,
        terms: Iterable[str],
        weights: dict[tuple[str, str], float],
    ):
        self.terms = sorted(set(terms))
        term_set = set(self.terms)
        for (t, a), w in weights.items():
            if t not in term_set:
                raise ValidationError(f"weight for term {t!r} outside the term set")
            if not (0.0 <= w <= 1.0):
                raise ValidationError(f"weight out of [0,1] for ({t}, {a}): {w}")
        self.weights = {k: w for k, w in weights.items() if w > 0.0}
        self.attributes = sorted({a for (_, a) in self.weights})

    def weight(self, term: str, attr: str) -> float:
        return self.weights.get((term, attr), 0.0)

    def term_weights(self, term: str) -> dict[str, float]:
        return {a: w for (t, a), w in self.weights.items() if t == term}


class FormalContext:
    """Binary incidence over ordered object and attribute lists.

    Rows and columns are kept as integer bitmasks for fast derivations.
    """

    def __init__(
        self,
        objects: Iterable[str],
        attributes: Iterable[str],
        incidence: Iterable[tuple[str, str]],
    ):
        self.objects = list(objects)
        self.attributes = list(attributes)
        self._obj_index = {g: i for i, g in enumerate(self.objects)}
        self._attr_index = {m: j for j, m in enumerate(self.attributes)}
        if len(self._obj_index) != len(self.objects):
            raise ValidationError("duplicate object names")
        if len(self._attr_index) != len(self.attributes):
            raise ValidationError("duplicate attribute names")
        self.rows = [0] * len(self.objects)  # object -> attribute mask
        self.cols = [0] * len(self.attributes)  # attribute -> object mask
        for g, m in incidence:
            i = self.object_index(g)
            j = self.attr_index(m)
            self.rows[i] |= 1 << j
            self.cols[j] |= 1 << i

    def object_index(self, g: str) -> int:
        try:
            return self._obj_index[g]
        except KeyError:
            raise UnknownAttributeError(f"unknown object {g!r}") from None

    def attr_index(self, m: str) -> int:
        try:
            return self._attr_index[m]
        except KeyError:
            raise UnknownAttributeError(f"unknown attribute {m!r}") from None

    def has(self, g: str, m: str) -> bool:
        return bool(self.rows[self.object_index(g)] >> self.attr_index(m) & 1)

    @property
    def incidence_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)


class ContextBuild(NamedTuple):
    weighted: WeightedContext
    binary: FormalContext
    dropped_terms: tuple[str, ...]


def context_from_weights(weighted: WeightedContext, threshold: float) -> ContextBuild:
    """Binarize a weighted context: incidence iff weight >= threshold.

    Terms with no surviving attribute are excluded from the object set and
    reported as dropped; all-zero attribute columns are dropped as well.
    """
    if not (0.0 <= threshold <= 1.0):
        raise ValidationError(f"threshold must be in [0,1], got {threshold}")
    kept = [(t, a) for (t, a), w in weighted.weights.items() if w >= threshold]
    objects = sorted({t for t, _ in kept})
    attributes = sorted({a for _, a in kept})
    dropped = tuple(t for t in weighted.terms if t not in set(objects))
    return ContextBuild(weighted, FormalContext(objects, attributes, kept), dropped)


def build_context(
    table: PairTable,
    terms: Iterable[str],
    weigher: Callable[[PairTable, Iterable[str]], dict[tuple[str, str], float]],
    threshold: float,
) -> ContextBuild:
    """Weight the table over the term set and threshold into a binary context."""
    term_list = sorted(set(terms))
    if not term_list:
        raise ValidationError("term set is empty")
    weights = weigher(table, term_list)
    return context_from_weights(WeightedContext(term_list, weights), threshold)


@dataclass(frozen=True)
class RankRow:
    rank: int
    term: str
    attribute_count: int


def attribute_rank_stats(
    ctx: WeightedContext, table: PairTable | None = None
) -> tuple[list[RankRow], float]:
    """Per-term nonzero-attribute counts, ranked by decreasing term frequency.

    Frequency comes from the pair table when given, otherwise from the sum of
    the term's weights.  Also returns the fill ratio of the weight matrix.
    """
    def freq(t: str) -> float:
        if table is not None:
            return float(table.term_total(t))
        return sum(ctx.term_weights(t).values())

    ordered = sorted(ctx.terms, key=lambda t: (-freq(t), t))
    rows = [
        RankRow(rank, t, len(ctx.term_weights(t)))
        for rank, t in enumerate(ordered, start=1)
    ]
    cells = len(ctx.terms) * len(ctx.attributes)
    fill = (len(ctx.weights) / cells) if cells else 0.0
    return rows, fill
