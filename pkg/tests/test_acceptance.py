"""Acceptance suite: one test per criterion, each printing a pass line.

Criterion 9's full-scale reproduction is corpus-dependent and intentionally
not attempted; its substitute structural checks run on synthetic data, and
the gold-standard statistics check runs only when a published gold file is
supplied via the CONTAX_TOURISM_GOLD environment variable.
"""

import math
import os
import random
import time

import pytest

from contax.clustering import Linkage, TermVector, agglomerate, bisect_kmeans
from contax.context import FormalContext, load_pairs
from contax.evaluation import evaluate
from contax.lattice import (
    build_lattice,
    compact,
    enumerate_concepts,
    induce_hierarchy,
    to_partial_order,
)
from contax.pipeline import PipelineConfig, sweep
from contax.smoothing import (
    SimilarityChoice,
    SimilarityKind,
    jensen_shannon,
    jensen_shannon_common,
    l1,
    l1_common,
    mutual_pairs_from_scores,
    smooth_table,
)
from contax.taxonomy import ROOT, Taxonomy, parse_taxonomy
from contax.weighting import conditional, pmi, resnik

from conftest import TABLE1_PAIRS
from test_lattice import (
    TABLE1_CONCEPTS,
    brute_force_concepts,
    concept_set,
    random_context,
)


def _ok(name):
    print(f"ACCEPTANCE PASS: {name}")


def test_criterion_1_tourism_toy_lattice(table1_ctx):
    start = time.perf_counter()
    assert concept_set(table1_ctx) == TABLE1_CONCEPTS
    lat = build_lattice(table1_ctx)
    intents = {
        frozenset(c.intent_names(table1_ctx)): i for i, c in enumerate(lat.concepts)
    }
    top = intents[frozenset({"bookable"})]
    rent = intents[frozenset({"bookable", "rentable"})]
    drive = intents[frozenset({"bookable", "rentable", "driveable"})]
    ride = intents[frozenset({"bookable", "rentable", "driveable", "rideable"})]
    join = intents[frozenset({"bookable", "joinable"})]
    bottom = intents[
        frozenset({"bookable", "rentable", "driveable", "rideable", "joinable"})
    ]
    assert set(lat.covers) == {
        (rent, top),
        (join, top),
        (drive, rent),
        (ride, drive),
        (bottom, ride),
        (bottom, join),
    }
    assert time.perf_counter() - start < 1.0
    _ok("1: tourism toy lattice (6 concepts, Figure-2 Hasse structure)")


def test_criterion_2_compaction_removes_rideable(table1_ctx):
    lat = build_lattice(table1_ctx)
    full = to_partial_order(lat)
    compacted = compact(full)
    assert full.concepts - compacted.concepts == {
        "intent:bookable+driveable+rentable+rideable"
    }
    _ok("2: compaction removes exactly the rideable node")


def test_criterion_3_metric_fixtures(o_ref, o_perfect, o_down_r, o_down_p, o_trivial):
    tol = 1e-4
    cases = [
        (o_perfect, (1.0, 1.0, 1.0)),
        (o_down_r, (1.0, 0.875, 0.933333)),
        (o_down_p, (0.9, 1.0, 0.947368)),
        (o_trivial, (1.0, 1 / 3, 0.5)),
    ]
    for learned, (p, r, f) in cases:
        rep = evaluate(learned, o_ref)
        assert rep.precision == pytest.approx(p, abs=tol)
        assert rep.recall == pytest.approx(r, abs=tol)
        assert rep.f_measure == pytest.approx(f, abs=tol)
    five_of_ten = Taxonomy(
        [(leaf, ROOT) for leaf in ("hotel", "apartment", "car", "bike", "trip")]
    )
    rep = evaluate(five_of_ten, o_ref)
    assert rep.lexical_recall == pytest.approx(0.5, abs=tol)
    lr, f = 0.5, 0.5556
    assert 2 * lr * f / (lr + f) == pytest.approx(0.5263, abs=tol)
    _ok("3: worked metric values on the reconstructed hierarchies")


def test_criterion_4_oracle_equivalence():
    rng = random.Random(20240817)
    start = time.perf_counter()
    for _ in range(1000):
        ctx = random_context(rng, max_g=8, max_m=8)
        assert concept_set(ctx) == brute_force_concepts(ctx)
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _ok(f"4: 1000 random contexts match the brute-force oracle ({elapsed:.1f}s)")


def test_criterion_5_galois_lattice_properties():
    from contax.lattice import derive_attributes_named, derive_objects_named

    rng = random.Random(424242)
    for _ in range(200):
        ctx = random_context(rng, max_g=8, max_m=8)
        objs = list(ctx.objects)
        for _ in range(4):
            a1 = {g for g in objs if rng.random() < 0.5}
            a2 = a1 | {g for g in objs if rng.random() < 0.3}
            d1 = derive_attributes_named(ctx, a1)
            d2 = derive_attributes_named(ctx, a2)
            assert d2 <= d1
            closed = derive_objects_named(ctx, d1)
            assert a1 <= closed
            assert derive_attributes_named(ctx, closed) == d1
        extents = {e for e, _ in concept_set(ctx)}
        for e1 in extents:
            for e2 in extents:
                assert e1 & e2 in extents  # meet
                join = derive_objects_named(
                    ctx, derive_attributes_named(ctx, e1 | e2)
                )
                assert join in extents and e1 | e2 <= join  # join
    _ok("5: Galois and lattice properties on random contexts")


def test_criterion_6_clustering_properties():
    rng = random.Random(99)
    for trial in range(5):
        vectors = [
            TermVector(
                f"t{i}",
                {f"d{d}": rng.random() + 0.05 for d in range(3)},
            )
            for i in range(rng.randint(2, 10))
        ]
        n = len(vectors)
        for linkage in Linkage:
            log = []
            tax = agglomerate(vectors, linkage, merge_log=log)
            assert tax.leaves == {v.term for v in vectors}
            assert len(tax.concepts - tax.leaves) == n - 1  # fully merged
            if linkage is Linkage.COMPLETE:
                assert log == sorted(log, reverse=True)
        runs = bisect_kmeans(vectors, seed=5, runs=2)
        assert runs == bisect_kmeans(vectors, seed=5, runs=2)
        for tax in runs:
            assert tax.leaves == {v.term for v in vectors}
            assert len(tax.concepts - tax.leaves) == max(n - 2, 0)
    purity = [
        TermVector("a1", {"x": 1.0, "y": 0.05}),
        TermVector("a2", {"x": 0.95, "y": 0.1}),
        TermVector("b1", {"x": 0.05, "y": 1.0}),
        TermVector("b2", {"x": 0.1, "y": 0.9}),
    ]
    for seed in range(10):
        tax = bisect_kmeans(purity, seed=seed, runs=1)[0]
        sides = {frozenset(tax.leaf_extension(c)) for c in tax.children_of(ROOT)}
        assert sides == {frozenset({"a1", "a2"}), frozenset({"b1", "b2"})}
    _ok("6: clustering structural properties and Bi-Section purity fixture")


def test_criterion_7_smoothing():
    rng = random.Random(31)
    for _ in range(200):
        def draw():
            attrs = rng.sample("abcdefgh", rng.randint(1, 6))
            raw = [rng.random() + 0.01 for _ in attrs]
            total = sum(raw)
            return {a: v / total for a, v in zip(attrs, raw)}

        p, q = draw(), draw()
        assert abs(l1(p, q) - l1_common(p, q)) < 1e-9
        assert abs(jensen_shannon(p, q) - jensen_shannon_common(p, q)) < 1e-9
    scores = {}
    terms = [f"t{i}" for i in range(6)]
    for a in terms:
        for b in terms:
            if a != b:
                key = tuple(sorted((a, b)))
                scores.setdefault(key, rng.random())
                scores[(a, b)] = scores[key]
    base = mutual_pairs_from_scores(terms, scores, True)
    for k in (1.0, 2.0, 10.0):
        flipped = {key: k - v for key, v in scores.items()}
        assert mutual_pairs_from_scores(terms, flipped, False) == base
    # Figure-3 scenario: car/bike merge into one concept extent after smoothing
    table = load_pairs([
        "drive\tobj\tcar\t4",
        "drive\tobj\tbike\t4",
        "start\tobj\tcar\t1",
        "need\tobj\tbike\t1",
        "book\tobj\thotel\t3",
    ])
    smoothed, pairs, _ = smooth_table(table, SimilarityChoice(SimilarityKind.COSINE))
    assert ("bike", "car") in pairs
    incidence = [
        (noun, attr)
        for noun in smoothed.terms
        for attr in smoothed.term_row(noun)
    ]
    ctx = FormalContext(
        sorted(smoothed.terms), sorted(smoothed.attributes), incidence
    )
    lat = build_lattice(ctx)
    assert lat.object_concept["car"] == lat.object_concept["bike"]
    extent = lat.concepts[lat.object_concept["car"]].extent_names(ctx)
    assert {"car", "bike"} <= extent
    _ok("7: smoothing equivalences, rank invariance, and the car/bike merge")


def test_criterion_8_weighting_closed_forms(fixture4):
    assert abs(conditional(fixture4, "car", "rent_obj") - 0.75) < 1e-9
    assert abs(pmi(fixture4, "hotel", "book_obj") - math.log(2)) < 1e-9
    assert abs(resnik(fixture4, "car", "rent_obj") - 0.75 * math.log(2)) < 1e-9
    balanced = load_pairs(["book\tobj\thotel\t2", "book\tobj\ttrip\t2"])
    assert abs(pmi(balanced, "hotel", "book_obj")) < 1e-12
    assert abs(resnik(balanced, "hotel", "book_obj")) < 1e-12
    _ok("8: weighting closed forms on the 4-record fixture")


def test_criterion_9_sweep_structure_and_optional_gold(tmp_path):
    # full-scale corpus numbers are NOT reproducible here (non-redistributable
    # corpora); the substitute checks assert the sweep's structural laws
    pairs_path = tmp_path / "pairs.tsv"
    pairs_path.write_text(TABLE1_PAIRS)
    gold_path = tmp_path / "gold.isa"
    gold_path.write_text(
        "hotel\troot\nobject-to-rent\troot\nactivity\troot\n"
        "apartment\tobject-to-rent\nvehicle\tobject-to-rent\ncar\tvehicle\n"
        "two-wheeled vehicle\tvehicle\nbike\ttwo-wheeled vehicle\n"
        "excursion\tactivity\ntrip\tactivity\n"
    )
    thresholds = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)
    cfg = PipelineConfig(
        pairs_path=str(pairs_path), gold_path=str(gold_path),
        measure="conditional", sweep=thresholds,
    )
    rows = sweep(cfg)
    assert [r.threshold for r in rows] == list(thresholds)
    for row in rows:
        assert row.concept_count >= 0
        for v in (row.precision, row.recall, row.f_measure, row.f_prime):
            assert 0.0 <= v <= 1.0

    # incidence monotonicity, checked on random weighted contexts
    rng = random.Random(6)
    from contax.context import WeightedContext, context_from_weights

    for _ in range(50):
        weights = {
            (f"g{i}", f"m{j}"): rng.random()
            for i in range(6)
            for j in range(6)
            if rng.random() < 0.6
        }
        wc = WeightedContext([f"g{i}" for i in range(6)], weights)
        t1, t2 = sorted((rng.random(), rng.random()))
        loose = context_from_weights(wc, t1).binary
        tight = context_from_weights(wc, t2).binary
        loose_cells = {
            (g, m) for g in loose.objects for m in loose.attributes if loose.has(g, m)
        }
        tight_cells = {
            (g, m) for g in tight.objects for m in tight.attributes if tight.has(g, m)
        }
        assert tight_cells <= loose_cells
        assert enumerate_concepts(tight) and enumerate_concepts(loose)

    # at a threshold where no objects share attributes, FCA yields the trivial
    # hierarchy with precision 1 "per definition"
    disjoint = load_pairs([
        "swim\tobj\tlake\t9",
        "climb\tobj\tmountain\t1",
    ])
    from contax.context import build_context
    from contax.weighting import Measure, make_weigher

    build = build_context(
        disjoint, disjoint.terms, make_weigher(Measure.CONDITIONAL), 0.9
    )
    _, tax = induce_hierarchy(build.binary)
    assert tax.concepts == tax.leaves
    gold = Taxonomy([("lake", "water"), ("water", ROOT), ("mountain", ROOT)])
    assert evaluate(tax, gold).precision == 1.0

    gold_file = os.environ.get("CONTAX_TOURISM_GOLD")
    if gold_file and os.path.exists(gold_file):
        with open(gold_file, encoding="utf-8") as fh:
            published = parse_taxonomy(fh)
        s = published.stats()
        assert s.concept_count == 293
        assert s.leaf_count == 236
        assert s.max_depth == 6
        _ok("9: sweep structure + published tourism gold statistics")
    else:
        _ok("9: sweep structural laws (published gold file absent; stats check skipped)")
