"""Data model: interned items, stream instances, batches, patterns, containment.

Items are dense non-negative integer ids; a Catalog maps them back to the
original string tokens.  Every itemset is stored as a strictly increasing
tuple of ids, which makes all model objects hashable and gives each pattern
exactly one representation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

Items = tuple[int, ...]


class Catalog:
    """Append-only bijection between string tokens and dense ids.

    Lookups are plain dict reads; insertion is serialized so concurrent
    readers never observe a half-registered token.
    """

    def __init__(self, tokens: Iterable[str] = ()):
        self._ids: dict[str, int] = {}
        self._tokens: list[str] = []
        self._lock = threading.Lock()
        for tok in tokens:
            self.intern(tok)

    def intern(self, token: str) -> int:
        got = self._ids.get(token)
        if got is not None:
            return got
        with self._lock:
            got = self._ids.get(token)
            if got is None:
                got = len(self._tokens)
                self._tokens.append(token)
                self._ids[token] = got
            return got

    def intern_all(self, tokens: Iterable[str]) -> Items:
        return canon_items(self.intern(t) for t in tokens)

    def token(self, item_id: int) -> str:
        return self._tokens[item_id]

    def id_of(self, token: str) -> int:
        return self._ids[token]

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def __len__(self) -> int:
        return len(self._tokens)


def canon_items(items: Iterable[int]) -> Items:
    """Duplicate-free sorted tuple of item ids."""
    return tuple(sorted(set(items)))


def _check_items(items: Items) -> None:
    if not isinstance(items, tuple):
        raise TypeError(f"itemset must be a tuple, got {type(items).__name__}")
    if not items:
        raise ValueError("itemset must be non-empty")
    if items[0] < 0:
        raise ValueError(f"item ids are non-negative: {items!r}")
    if any(a >= b for a, b in zip(items, items[1:])):
        raise ValueError(f"items must be strictly increasing: {items!r}")


@dataclass(frozen=True, slots=True)
class PlainItemset:
    """Unweighted itemset instance."""

    items: Items

    def __post_init__(self):
        _check_items(self.items)

    @property
    def norm(self) -> int:
        return len(self.items)

    @property
    def elements(self) -> tuple[Items, ...]:
        return (self.items,)


@dataclass(frozen=True, slots=True)
class WeightedItemset:
    """Itemset with one positive weight per item, aligned with items."""

    items: Items
    weights: tuple[float, ...]

    def __post_init__(self):
        _check_items(self.items)
        if len(self.weights) != len(self.items):
            raise ValueError("weights must align 1:1 with items")
        if any(not w > 0 for w in self.weights):
            raise ValueError(f"item weights must be positive: {self.weights!r}")

    @property
    def norm(self) -> int:
        return len(self.items)

    @property
    def elements(self) -> tuple[Items, ...]:
        return (self.items,)

    @property
    def total_weight(self) -> float:
        return sum(self.weights)

    def weight_of(self, item_id: int) -> float:
        # items is sorted but stays tiny at this scale; linear scan is fine
        for it, w in zip(self.items, self.weights):
            if it == item_id:
                return w
        raise KeyError(item_id)


@dataclass(frozen=True, slots=True)
class Sequence:
    """Ordered tuple of non-empty itemsets."""

    elements: tuple[Items, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("sequence must have at least one element")
        for e in self.elements:
            _check_items(e)

    @property
    def norm(self) -> int:
        return sum(len(e) for e in self.elements)


Instance = Union[PlainItemset, WeightedItemset, Sequence]


@dataclass(frozen=True, slots=True)
class Pattern:
    """Sampled pattern: one itemset element for itemset streams, one or more
    for sequence streams.  Norm is the total item count."""

    elements: tuple[Items, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("pattern must have at least one element")
        for e in self.elements:
            _check_items(e)

    @property
    def norm(self) -> int:
        return sum(len(e) for e in self.elements)

    @property
    def is_itemset(self) -> bool:
        return len(self.elements) == 1


@dataclass(frozen=True, slots=True)
class Batch:
    """Timestamped group of same-variant instances; may be empty.

    labels, when present, align 1:1 with instances (empty string = no label).
    """

    timestamp: float
    instances: tuple[Instance, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        kinds = {type(z) for z in self.instances}
        if len(kinds) > 1:
            names = sorted(k.__name__ for k in kinds)
            raise ValueError(f"batch mixes instance variants: {names}")
        if self.labels is not None and len(self.labels) != len(self.instances):
            raise ValueError("labels must align 1:1 with instances")


def plain_itemset(items: Iterable[int]) -> PlainItemset:
    return PlainItemset(canon_items(items))


def weighted_itemset(
    weights_by_item: Mapping[int, float] | Iterable[tuple[int, float]],
) -> WeightedItemset:
    pairs = (
        weights_by_item.items()
        if isinstance(weights_by_item, Mapping)
        else list(weights_by_item)
    )
    by_item: dict[int, float] = {}
    for item, w in pairs:
        if item in by_item:
            raise ValueError(f"duplicate item {item} in weighted itemset")
        by_item[item] = float(w)
    items = tuple(sorted(by_item))
    return WeightedItemset(items, tuple(by_item[i] for i in items))


def sequence(elements: Iterable[Iterable[int]]) -> Sequence:
    return Sequence(tuple(canon_items(e) for e in elements))


def pattern(elements: Iterable[Iterable[int]]) -> Pattern:
    return Pattern(tuple(canon_items(e) for e in elements))


def is_subset(a: Items, b: Items) -> bool:
    """a subseteq b for sorted id tuples, by merge walk."""
    i = 0
    n = len(b)
    for x in a:
        while i < n and b[i] < x:
            i += 1
        if i == n or b[i] != x:
            return False
        i += 1
    return True


def matches(pat: Pattern, z: Instance) -> bool:
    """Containment test.

    Itemset instances contain exactly the subsets of their items; a sequence
    contains a pattern iff the pattern elements embed into distinct itemsets
    in order.  The greedy leftmost embedding decides this exactly.
    """
    targets = z.elements
    i = 0
    n = len(targets)
    for e in pat.elements:
        while i < n and not is_subset(e, targets[i]):
            i += 1
        if i == n:
            return False
        i += 1
    return True
