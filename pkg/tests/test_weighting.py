"""Weight tables: frozen fixture values, dual-route equivalence, counting DP."""

import math
import random

import pytest

from rps.errors import ConfigurationError
from rps.measures import BaseMeasure, MeasureSpec
from rps.model import Batch, plain_itemset, sequence, weighted_itemset
from rps.weighting import (
    AdmissibleBlocks,
    batch_weight,
    instance_weight,
    sequence_counts,
    weight_table,
)

import streamgen
from conftest import A, B, C

FREQ = MeasureSpec(BaseMeasure.FREQ)
AREA = MeasureSpec(BaseMeasure.AREA)
UTIL = MeasureSpec(BaseMeasure.UTIL)
AVGUTIL = MeasureSpec(BaseMeasure.AVGUTIL)


def test_plain_tables_fixture():
    z = plain_itemset([A, B, C])
    t = weight_table(z, FREQ)
    assert t.as_dict() == {1: 3, 2: 3, 3: 1}
    assert t.total == 7
    assert weight_table(z, AREA).as_dict() == {1: 3, 2: 6, 3: 3}
    assert weight_table(z, AREA).total == 12
    half = MeasureSpec(BaseMeasure.DECAY, alpha=0.5)
    assert weight_table(z, half).as_dict() == {1: 1.5, 2: 0.75, 3: 0.125}


def test_plain_tables_norm_band():
    z = plain_itemset([A, B, C])
    banded = weight_table(z, MeasureSpec(BaseMeasure.FREQ, max_norm=2))
    assert banded.as_dict() == {1: 3, 2: 3}
    floor = weight_table(z, MeasureSpec(BaseMeasure.FREQ, min_norm=2))
    assert floor.as_dict() == {2: 3, 3: 1}
    # floor above the instance norm leaves nothing
    empty = weight_table(z, MeasureSpec(BaseMeasure.FREQ, min_norm=4))
    assert empty.norms == () and empty.total == 0.0


def test_weighted_tables_fixture():
    z = weighted_itemset({A: 2.0, B: 1.5, C: 2.0})
    t = weight_table(z, UTIL)
    assert t.as_dict() == {1: 5.5, 2: 11.0, 3: 5.5}
    assert t.total == 22.0
    avg = weight_table(z, AVGUTIL)
    assert avg.as_dict() == pytest.approx({1: 5.5, 2: 5.5, 3: 5.5 / 3})


def test_table_lookup_helpers():
    t = weight_table(plain_itemset([A, B, C]), FREQ)
    assert t.weight(2) == 3
    assert t.weight(4) == 0.0
    assert t.cumulative == (3, 6, 7)


def test_variant_base_mismatch():
    with pytest.raises(ConfigurationError):
        weight_table(weighted_itemset({A: 1.0}), FREQ)
    with pytest.raises(ConfigurationError):
        weight_table(sequence([[A], [B]]), UTIL)


def test_sequence_counts_fixture():
    # z3 = <{B}{A,C}{A}>: 3 singles, 5 pairs, 4 triples, 1 quadruple
    z3 = sequence([[B], [A, C], [A]])
    t = weight_table(z3, FREQ)
    assert t.as_dict() == {1: 3, 2: 5, 3: 4, 4: 1}
    assert t.total == 13
    # repeated itemset: <{A}{A}> holds only {A} and <{A}{A}>
    rep = sequence([[A], [A]])
    assert weight_table(rep, FREQ).as_dict() == {1: 1, 2: 1}
    counts = sequence_counts(z3, 4)
    assert [counts.count(ell) for ell in (1, 2, 3, 4)] == [3, 5, 4, 1]
    with pytest.raises(ValueError):
        counts.count(5)


def test_sequence_counts_gap_suppression():
    # a block equal to an intermediate itemset is never placed late:
    # in <{A,B}{A}{A,B}> the pattern <{A,B}> only counts once
    z = sequence([[A, B], [A], [A, B]])
    counts = sequence_counts(z, 5)
    # norm 1: {A}, {B}; norm 5: <{A,B}{A}{A,B}> only
    assert counts.count(1) == 2
    assert counts.count(5) == 1


def test_batch_weight_fixture():
    batch = Batch(1.0, (plain_itemset([A, B, C]), plain_itemset([A, C])))
    assert batch_weight(batch, FREQ) == 10.0
    assert instance_weight(plain_itemset([A, C]), FREQ) == 3.0
    assert batch_weight(Batch(1.0, ()), FREQ) == 0.0


def test_admissible_blocks_count_equals_enumeration():
    rng = random.Random(8141)
    for _ in range(200):
        base = tuple(sorted(rng.sample(range(8), rng.randint(1, 6))))
        gaps = [
            tuple(sorted(rng.sample(range(8), rng.randint(1, 6))))
            for _ in range(rng.randint(0, 4))
        ]
        blocks = AdmissibleBlocks(base, gaps)
        for q in range(1, len(base) + 1):
            assert blocks.count(q) == len(blocks.admissible(q)), (base, gaps, q)


def test_tables_match_enumeration_randomized():
    # dual route: closed forms / counting DP vs exhaustive pattern sums
    rng = random.Random(20260814)
    for variant in streamgen.VARIANTS:
        for _ in range(60):
            z = streamgen.random_instance(rng, variant)
            for base_spec in streamgen.base_measures(variant):
                for mn, mx in streamgen.NORM_SETTINGS:
                    spec = streamgen.with_norms(base_spec, mn, mx)
                    got = weight_table(z, spec).as_dict()
                    want = streamgen.enumeration_table(z, spec)
                    assert got.keys() == want.keys(), (z, spec)
                    for ell in want:
                        assert got[ell] == pytest.approx(want[ell], rel=1e-9), (
                            z,
                            spec,
                            ell,
                        )


def test_weight_table_is_cached():
    z = plain_itemset([A, B])
    assert weight_table(z, FREQ) is weight_table(plain_itemset([B, A]), FREQ)


def test_total_weight_decomposition():
    # instance weight must equal the sum of its table entries
    rng = random.Random(99)
    for variant in streamgen.VARIANTS:
        for _ in range(20):
            z = streamgen.random_instance(rng, variant)
            spec = streamgen.base_measures(variant)[0]
            t = weight_table(z, spec)
            assert t.total == pytest.approx(math.fsum(t.weights), rel=1e-12)
            assert instance_weight(z, spec) == t.total
