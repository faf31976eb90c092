"""Single-batch pattern draws.

A pattern is drawn from a batch in three stages, each a discrete draw over
precomputed mass: pick an instance proportionally to its table total, pick a
norm from that instance's table, then pick a pattern uniformly by measure
mass among the instance's patterns of that norm.  The staged draw follows
the exact batch law m(x, B) / w(B) without enumerating patterns.

All randomness comes from the caller's random.Random, consumed in the fixed
order instance, norm, pattern; replaying a seed replays the draws.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from itertools import accumulate
from random import Random

from .measures import MeasureSpec
from .model import (
    Batch,
    Instance,
    Items,
    Pattern,
    PlainItemset,
    Sequence,
    WeightedItemset,
)
from .weighting import AdmissibleBlocks, NormWeightTable, sequence_counts, weight_table

# admissible-subset draws: enumerate when the block's subset space is at most
# this big, otherwise rejection-sample
_ENUM_LIMIT = 1024
_REJECT_CAP = 1_000_000


def sample_distinct_indices(rng: Random, n: int, k: int) -> list[int]:
    """k distinct indices uniform over range(n), by partial Fisher-Yates.

    Sparse dict bookkeeping keeps this O(k) regardless of n.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    swap: dict[int, int] = {}
    out: list[int] = []
    for i in range(k):
        j = rng.randrange(i, n)
        out.append(swap.get(j, j))
        swap[j] = swap.get(i, i)
    return out


def _pick_cumulative(cum: list[float], total: float, rng: Random) -> int:
    # bisect_right skips zero-weight entries even when the point lands
    # exactly on their repeated prefix value
    return bisect_right(cum, rng.random() * total)


def draw_instance(weights: list[float], rng: Random) -> int:
    """Index draw proportional to non-negative weights."""
    cum = list(accumulate(weights))
    total = cum[-1] if cum else 0.0
    if total <= 0:
        raise ValueError("no positive weight to draw from")
    return _pick_cumulative(cum, total, rng)


def draw_norm(table: NormWeightTable, rng: Random) -> int:
    """Norm draw proportional to the table weights."""
    if not table.norms:
        raise ValueError("empty norm weight table")
    return table.norms[bisect_right(table.cumulative, rng.random() * table.total)]


def draw_pattern_of_norm(
    z: Instance, ell: int, spec: MeasureSpec, rng: Random
) -> Pattern:
    """Pattern of norm ell from z, proportional to measure mass.

    Within a fixed norm the norm factor is a common constant, so plain
    itemsets and sequences draw uniformly over distinct patterns, and
    weighted itemsets draw proportionally to summed item weights.
    """
    if isinstance(z, PlainItemset):
        idxs = sample_distinct_indices(rng, z.norm, ell)
        return Pattern((tuple(sorted(z.items[i] for i in idxs)),))
    if isinstance(z, WeightedItemset):
        return _draw_weighted_pattern(z, ell, rng)
    if isinstance(z, Sequence):
        return _draw_sequence_pattern(z, ell, spec, rng)
    raise TypeError(f"not an instance: {type(z).__name__}")


def _draw_weighted_pattern(z: WeightedItemset, ell: int, rng: Random) -> Pattern:
    # pivot item i with probability w_i / W, then a uniform (ell-1)-subset of
    # the rest: P(x) = sum_{i in x} w_i / (W * C(n-1, ell-1)), the measure
    # mass of x over the table entry at ell
    n = z.norm
    if not 1 <= ell <= n:
        raise ValueError(f"norm {ell} outside [1, {n}]")
    cum = list(accumulate(z.weights))
    pivot = bisect_right(cum, rng.random() * cum[-1])
    rest = sample_distinct_indices(rng, n - 1, ell - 1)
    chosen = [z.items[pivot]]
    chosen.extend(z.items[i if i < pivot else i + 1] for i in rest)
    return Pattern((tuple(sorted(chosen)),))


def _draw_admissible_block(blocks: AdmissibleBlocks, q: int, rng: Random) -> Items:
    # uniform over the admissible q-subsets; enumerate below the limit,
    # otherwise rejection-sample (admissible sets are never rare enough at
    # this scale to exhaust the cap, but fall back to enumeration anyway)
    n = len(blocks.base)
    if math.comb(n, q) <= _ENUM_LIMIT:
        options = blocks.admissible(q)
        return options[rng.randrange(len(options))]
    for _ in range(_REJECT_CAP):
        idxs = sample_distinct_indices(rng, n, q)
        cand = tuple(sorted(blocks.base[i] for i in idxs))
        if not blocks.covered(cand):
            return cand
    options = blocks.admissible(q)
    return options[rng.randrange(len(options))]


def _draw_sequence_pattern(
    z: Sequence, ell: int, spec: MeasureSpec, rng: Random
) -> Pattern:
    # walk the first-occurrence counting table: at each step pick the next
    # block position j and size q with mass (admissible blocks) x
    # (continuations of the remaining norm), then a uniform admissible
    # q-subset; masses are integers so rng.randrange keeps the draw exact
    counts = sequence_counts(z, spec.norm_cap(z.norm))
    if not 1 <= ell <= counts.cap or counts.count(ell) <= 0:
        raise ValueError(f"sequence has no pattern of norm {ell}")
    parts: list[Items] = []
    i = -1
    remaining = ell
    while remaining > 0:
        options: list[tuple[int, int, int]] = []
        for j in range(i + 1, len(counts.elements)):
            blocks = counts.blocks(i, j)
            for q in range(1, min(remaining, len(counts.elements[j])) + 1):
                ways = blocks.count(q)
                if not ways:
                    continue
                mass = (
                    ways
                    if q == remaining
                    else ways * counts.continuation(j, remaining - q)
                )
                if mass:
                    options.append((j, q, mass))
        r = rng.randrange(sum(mass for _, _, mass in options))
        for j, q, mass in options:
            if r < mass:
                break
            r -= mass
        parts.append(_draw_admissible_block(counts.blocks(i, j), q, rng))
        i = j
        remaining -= q
    return Pattern(tuple(parts))


def sample_from_batch(
    batch: Batch, spec: MeasureSpec, count: int, rng: Random
) -> list[Pattern]:
    """count independent pattern draws from the batch law m(x, B) / w(B)."""
    if count < 0:
        raise ValueError(f"draw count must be >= 0, got {count}")
    if count == 0:
        return []
    tables = [weight_table(z, spec) for z in batch.instances]
    cum = list(accumulate(t.total for t in tables))
    total = cum[-1] if cum else 0.0
    if total <= 0:
        raise ValueError("batch has no pattern mass under this measure")
    out: list[Pattern] = []
    for _ in range(count):
        zi = _pick_cumulative(cum, total, rng)
        ell = draw_norm(tables[zi], rng)
        out.append(draw_pattern_of_norm(batch.instances[zi], ell, spec, rng))
    return out
