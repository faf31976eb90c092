"""Exhaustive ground truth for small inputs.

Everything here enumerates patterns explicitly and evaluates measures from
first principles (containment, summed item weights, norm factor, damping).
It shares no code path with the closed-form tables or the staged draws, so
tests can compare the two routes; the enumeration guard keeps it honest
about scale.
"""

from __future__ import annotations

import math
from itertools import combinations
from typing import Iterable, Mapping, Sequence as SequenceOf

from .measures import MeasureSpec, damping
from .model import (
    Batch,
    Instance,
    Items,
    Pattern,
    PlainItemset,
    Sequence,
    WeightedItemset,
    matches,
)

MAX_ENUM_NORM = 14


def enumerate_patterns(z: Instance, max_norm: int | None = None) -> set[Pattern]:
    """All distinct patterns contained in z with norm <= max_norm."""
    if z.norm > MAX_ENUM_NORM:
        raise ValueError(
            f"refusing to enumerate an instance of norm {z.norm} (> {MAX_ENUM_NORM})"
        )
    cap = z.norm if max_norm is None else min(max_norm, z.norm)
    if isinstance(z, Sequence):
        return _enumerate_sequence(z.elements, cap)
    found: set[Pattern] = set()
    for ell in range(1, cap + 1):
        for sub in combinations(z.items, ell):
            found.add(Pattern((sub,)))
    return found


def _enumerate_sequence(elements: tuple[Items, ...], cap: int) -> set[Pattern]:
    found: set[Pattern] = set()

    def extend(prefix: tuple[Items, ...], used: int, start: int) -> None:
        for j in range(start, len(elements)):
            base = elements[j]
            for q in range(1, min(cap - used, len(base)) + 1):
                for sub in combinations(base, q):
                    grown = prefix + (sub,)
                    found.add(Pattern(grown))
                    extend(grown, used + q, j + 1)

    extend((), 0, 0)
    return found


def pattern_utility(x: Pattern, z: Instance) -> float:
    """u(x, z): 1/0 containment, except weighted itemsets where a contained
    pattern scores the sum of its item weights."""
    if isinstance(z, WeightedItemset):
        if not x.is_itemset or not matches(x, z):
            return 0.0
        return math.fsum(z.weight_of(i) for i in x.elements[0])
    return 1.0 if matches(x, z) else 0.0


def pattern_measure(x: Pattern, z: Instance, spec: MeasureSpec) -> float:
    """m(x, z) = u(x, z) * f(norm(x))."""
    u = pattern_utility(x, z)
    return u * spec.norm_utility(x.norm) if u else 0.0


def batch_measure(x: Pattern, batch: Batch, spec: MeasureSpec) -> float:
    return math.fsum(pattern_measure(x, z, spec) for z in batch.instances)


def global_utility(
    stream: SequenceOf[Batch],
    x: Pattern,
    spec: MeasureSpec,
    gamma: float = 0.0,
    t_now: float | None = None,
) -> float:
    """Damped stream total of m(x, .), evaluated at t_now (default: the
    last batch's timestamp)."""
    if t_now is None:
        t_now = stream[-1].timestamp
    return math.fsum(
        batch_measure(x, b, spec) * damping(gamma, t_now, b.timestamp)
        for b in stream
    )


def _support(batches: Iterable[Batch], max_norm: int | None) -> set[Pattern]:
    support: set[Pattern] = set()
    for b in batches:
        for z in b.instances:
            support |= enumerate_patterns(z, max_norm)
    return support


def batch_law(batch: Batch, spec: MeasureSpec) -> dict[Pattern, float]:
    """Exact law of one pattern draw from a batch: m(x, B) / w(B)."""
    masses = {
        x: batch_measure(x, batch, spec)
        for x in _support([batch], spec.max_norm)
    }
    return _normalized(masses)


def stream_law(
    stream: SequenceOf[Batch],
    spec: MeasureSpec,
    gamma: float = 0.0,
    t_now: float | None = None,
) -> dict[Pattern, float]:
    """Exact damped stream law: Phi(x) over its total."""
    masses = {
        x: global_utility(stream, x, spec, gamma, t_now)
        for x in _support(stream, spec.max_norm)
    }
    return _normalized(masses)


def _normalized(masses: dict[Pattern, float]) -> dict[Pattern, float]:
    total = math.fsum(masses.values())
    if total <= 0:
        raise ValueError("no pattern has positive mass")
    return {x: m / total for x, m in masses.items() if m > 0}


def frequencies(draws: Iterable[Pattern]) -> dict[Pattern, float]:
    """Empirical law of a sample."""
    counts: dict[Pattern, int] = {}
    n = 0
    for x in draws:
        counts[x] = counts.get(x, 0) + 1
        n += 1
    if n == 0:
        raise ValueError("empty sample")
    return {x: c / n for x, c in counts.items()}


def total_variation(
    a: Mapping[Pattern, float], b: Mapping[Pattern, float]
) -> float:
    keys = set(a) | set(b)
    return 0.5 * math.fsum(abs(a.get(x, 0.0) - b.get(x, 0.0)) for x in keys)
