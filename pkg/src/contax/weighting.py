"""Information measures scoring (term, attribute) pairs.

Raw scores are computed per observed pair only and min-max normalized into
[0, 1] over all observed pairs; unobserved pairs keep weight 0.  Logarithms
are natural; normalization makes the choice of base irrelevant for PMI.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Iterable

from .context import PairTable
from .errors import UnknownAttributeError, ValidationError


class Measure(str, Enum):
    CONDITIONAL = "conditional"
    PMI = "pmi"
    RESNIK = "resnik"
    GIVEN = "given"  # raw counts taken as weights (pre-weighted input)


def conditional(table: PairTable, noun: str, attr: str) -> float:
    """P(n | v_arg) = f(n, v_arg) / f(v_arg)."""
    total = table.attr_total(attr)
    if total == 0:
        raise UnknownAttributeError(f"attribute {attr!r} has no occurrences")
    return table.count(noun, attr) / total


def pmi(table: PairTable, noun: str, attr: str) -> float:
    """log(P(n|v_arg) / P(n)); only defined for observed pairs."""
    joint = table.count(noun, attr)
    if joint == 0:
        raise ValidationError(f"PMI undefined for unobserved pair ({noun}, {attr})")
    p_cond = joint / table.attr_total(attr)
    p_noun = table.term_total(noun) / table.grand_total
    return math.log(p_cond / p_noun)


def selectional_strength(table: PairTable, attr: str) -> float:
    """Relative entropy of the slot's noun distribution vs. the noun prior."""
    total = table.attr_total(attr)
    if total == 0:
        raise UnknownAttributeError(f"attribute {attr!r} has no occurrences")
    grand = table.grand_total
    s = 0.0
    for noun, c in table.attr_fillers(attr).items():
        p_cond = c / total
        p_noun = table.term_total(noun) / grand
        s += p_cond * math.log(p_cond / p_noun)
    return s


def resnik(table: PairTable, noun: str, attr: str) -> float:
    """S_R(v_arg) * P(n | v_arg)."""
    return selectional_strength(table, attr) * conditional(table, noun, attr)


def raw_weights(
    table: PairTable, terms: Iterable[str], measure: Measure
) -> dict[tuple[str, str], float]:
    """Raw scores for every observed (term, attribute) pair with term in T."""
    term_set = set(terms)
    raw: dict[tuple[str, str], float] = {}
    strength: dict[str, float] = {}
    for noun in sorted(term_set):
        for attr, c in table.term_row(noun).items():
            if measure is Measure.CONDITIONAL:
                raw[(noun, attr)] = c / table.attr_total(attr)
            elif measure is Measure.PMI:
                raw[(noun, attr)] = pmi(table, noun, attr)
            elif measure is Measure.RESNIK:
                if attr not in strength:
                    strength[attr] = selectional_strength(table, attr)
                raw[(noun, attr)] = strength[attr] * (c / table.attr_total(attr))
            elif measure is Measure.GIVEN:
                raw[(noun, attr)] = float(c)
            else:  # pragma: no cover - exhaustive enum
                raise ValidationError(f"unknown measure {measure!r}")
    return raw


def normalize(raw: dict[tuple[str, str], float]) -> dict[tuple[str, str], float]:
    """Min-max normalize over observed pairs; constant data maps to all 1.0."""
    if not raw:
        return {}
    lo = min(raw.values())
    hi = max(raw.values())
    if hi == lo:
        return {k: 1.0 for k in raw}
    span = hi - lo
    return {k: (v - lo) / span for k, v in raw.items()}


def compute_weights(
    table: PairTable, terms: Iterable[str], measure: Measure
) -> dict[tuple[str, str], float]:
    """Normalized weights over observed pairs, ready for a WeightedContext."""
    return normalize(raw_weights(table, terms, measure))


def make_weigher(measure: Measure):
    """Adapter matching the ``build_context`` weigher signature."""
    def weigh(table: PairTable, terms: Iterable[str]) -> dict[tuple[str, str], float]:
        return compute_weights(table, terms, measure)

    return weigh


def dump_weights(
    table: PairTable, terms: Iterable[str], measure: Measure
) -> str:
    """TSV debug dump: term, attribute, raw, normalized."""
    raw = raw_weights(table, terms, measure)
    norm = normalize(raw)
    lines = []
    for key in sorted(raw):
        t, a = key
        lines.append(f"{t}\t{a}\t{raw[key]:.10g}\t{norm[key]:.10g}\n")
    return "".join(lines)
