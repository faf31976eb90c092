"""Model invariants: canonical forms, validation, containment."""

import random

import pytest

from rps.model import (
    Batch,
    Catalog,
    Pattern,
    PlainItemset,
    Sequence,
    is_subset,
    matches,
    pattern,
    plain_itemset,
    sequence,
    weighted_itemset,
)

from conftest import A, B, C, D


def test_catalog_round_trip():
    cat = Catalog()
    assert cat.intern("apple") == 0
    assert cat.intern("pear") == 1
    assert cat.intern("apple") == 0  # idempotent
    assert cat.token(1) == "pear"
    assert cat.id_of("pear") == 1
    assert "apple" in cat and "fig" not in cat
    assert len(cat) == 2
    assert cat.intern_all(["pear", "apple", "pear"]) == (0, 1)


def test_plain_itemset_canonical():
    z = plain_itemset([C, A, B, A])
    assert z.items == (A, B, C)
    assert z.norm == 3
    assert z.elements == ((A, B, C),)


def test_itemset_validation():
    with pytest.raises(ValueError):
        PlainItemset(())
    with pytest.raises(ValueError):
        PlainItemset((B, A))  # not sorted
    with pytest.raises(ValueError):
        PlainItemset((A, A))  # duplicate
    with pytest.raises(ValueError):
        PlainItemset((-1,))


def test_weighted_itemset():
    z = weighted_itemset({B: 1.5, A: 2.0, C: 2.0})
    assert z.items == (A, B, C)
    assert z.weights == (2.0, 1.5, 2.0)
    assert z.total_weight == 5.5
    assert z.weight_of(B) == 1.5
    with pytest.raises(KeyError):
        z.weight_of(D)
    with pytest.raises(ValueError):
        weighted_itemset([(A, 1.0), (A, 2.0)])  # duplicate item
    with pytest.raises(ValueError):
        weighted_itemset({A: 0.0})  # weights must be positive
    with pytest.raises(ValueError):
        weighted_itemset({A: -1.0})


def test_sequence_and_pattern_norms():
    z = sequence([[B], [C, A], [A]])
    assert z.elements == ((B,), (A, C), (A,))
    assert z.norm == 4
    with pytest.raises(ValueError):
        sequence([])
    with pytest.raises(ValueError):
        sequence([[A], []])
    x = pattern([[A], [C, A]])
    assert x.norm == 3
    assert not x.is_itemset
    assert pattern([[A, B]]).is_itemset


def test_batch_invariants():
    with pytest.raises(ValueError):
        Batch(1.0, (plain_itemset([A]), sequence([[A]])))
    with pytest.raises(ValueError):
        Batch(1.0, (plain_itemset([A]),), labels=("x", "y"))
    empty = Batch(1.0, ())
    assert empty.instances == ()


def test_is_subset():
    assert is_subset((A,), (A, B))
    assert is_subset((A, C), (A, B, C))
    assert not is_subset((A, D), (A, B, C))
    assert is_subset((), (A,))
    assert not is_subset((A,), ())


def test_matches_itemsets():
    z = plain_itemset([A, B, C])
    assert matches(pattern([[A, C]]), z)
    assert not matches(pattern([[A, D]]), z)
    # multi-element patterns never match single itemsets
    assert not matches(pattern([[A], [B]]), z)
    w = weighted_itemset({A: 1.0, C: 2.0})
    assert matches(pattern([[A, C]]), w)
    assert not matches(pattern([[B]]), w)


def test_matches_sequence_examples():
    z3 = sequence([[B], [A, C], [A]])
    assert not matches(pattern([[A], [C]]), z3)
    assert matches(pattern([[B]]), z3)
    assert matches(pattern([[B], [A, C], [A]]), z3)
    assert matches(pattern([[A], [A]]), z3)
    assert not matches(pattern([[A], [A], [A]]), z3)
    z1 = sequence([[A], [B], [A, C], [B]])
    assert matches(pattern([[A], [C]]), z1)
    assert matches(pattern([[A], [B], [B]]), z1)
    assert not matches(pattern([[C], [A]]), z1)


def _matches_brute(pat: Pattern, z: Sequence) -> bool:
    # try every increasing assignment of pattern elements to positions
    def embed(pi: int, start: int) -> bool:
        if pi == len(pat.elements):
            return True
        for j in range(start, len(z.elements)):
            if is_subset(pat.elements[pi], z.elements[j]) and embed(pi + 1, j + 1):
                return True
        return False

    return embed(0, 0)


def test_matches_equals_brute_force():
    # the greedy scan must agree with exhaustive embedding search
    rng = random.Random(20260814)
    for _ in range(300):
        n = rng.randint(1, 5)
        z = sequence(
            [rng.sample(range(4), rng.randint(1, 3)) for _ in range(n)]
        )
        m = rng.randint(1, 3)
        pat = pattern(
            [rng.sample(range(4), rng.randint(1, 2)) for _ in range(m)]
        )
        assert matches(pat, z) == _matches_brute(pat, z), (pat, z)
