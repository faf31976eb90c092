"""Streaming reservoir sampler over timestamped batches.

The reservoir holds a fixed number of patterns.  Each arriving batch is
accepted with probability equal to its share of the damped total stream
weight; on acceptance a replacement count n_r is drawn and n_r uniformly
chosen slots are refilled with fresh draws from the batch.  After any prefix
of the stream, every slot independently holds a pattern distributed by the
damped stream law of that prefix.

The running normalizer is kept rescaled to the last mass-bearing timestamp:

  S_i = S_{i-1} * e^{-gamma (t_i - t_prev)} + w(B_i),   p_i = w(B_i) / S_i

which equals the ratio of the batch's damped weight to the damped total
without ever exponentiating a growing timestamp.

Replacement count modes ("realisation modes"), selectable per sampler:

  binomial-cdf (default)  n_r = inverse Bin(k, p) CDF at the acceptance
                          uniform; accept iff n_r >= 1.  Per-slot
                          replacement probability is exactly p, which is the
                          mode that makes the k-slot marginal match the
                          stream law.
  coupled-beta            accept iff x < p, then n_r = 1 + inverse
                          Bin(k-1, p) CDF at x (the same uniform).
  conditional-binomial    accept iff x < p, then n_r ~ Bin(k, p) | >= 1
                          from a fresh uniform.

All modes coincide at capacity 1.  Randomness comes from one seeded
generator, consumed in a fixed order per batch: acceptance uniform, then the
conditional mode's extra uniform, then eviction slots, then pattern draws;
the first acceptance fills the empty reservoir without eviction draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

from . import betainc
from .errors import ConfigurationError, ReservoirNotReady, StreamOrderError
from .measures import MeasureSpec
from .model import Batch, Instance, Pattern, matches
from .sampling import sample_distinct_indices, sample_from_batch
from .weighting import batch_weight

REALISATION_MODES = ("binomial-cdf", "coupled-beta", "conditional-binomial")


@dataclass(frozen=True, slots=True)
class BatchReport:
    """What one process_batch call did."""

    timestamp: float
    weight: float
    probability: float
    accepted: bool
    realisations: int
    evicted: tuple[int, ...]


class ReservoirSampler:
    def __init__(
        self,
        spec: MeasureSpec,
        capacity: int,
        damping: float = 0.0,
        seed: int | None = 0,
        realisation_mode: str = "binomial-cdf",
    ):
        if capacity < 1:
            raise ConfigurationError(f"capacity must be >= 1, got {capacity}")
        if not 0.0 <= damping <= 1.0:
            raise ConfigurationError(f"damping must be in [0, 1], got {damping!r}")
        if realisation_mode not in REALISATION_MODES:
            raise ConfigurationError(
                f"unknown realisation mode {realisation_mode!r}; "
                f"pick one of {', '.join(REALISATION_MODES)}"
            )
        self.spec = spec
        self.capacity = capacity
        self.damping = damping
        self.realisation_mode = realisation_mode
        self.rng = Random(seed)
        self._entries: list[tuple[float, Pattern]] = []
        self._scaled_mass = 0.0
        self._t_mass: float | None = None  # timestamp the normalizer is scaled to
        self._t_seen: float | None = None  # last timestamp seen, for ordering
        self.batches_seen = 0
        self.batches_accepted = 0
        self.insertions = 0

    @property
    def reservoir_full(self) -> bool:
        return len(self._entries) == self.capacity

    def snapshot(self) -> list[tuple[float, Pattern]]:
        """Current (insertion timestamp, pattern) slots, in slot order."""
        return list(self._entries)

    def feature_vector(self, z: Instance) -> list[int]:
        """One containment bit per slot, in slot order."""
        if not self.reservoir_full:
            raise ReservoirNotReady(
                f"reservoir holds {len(self._entries)}/{self.capacity} patterns"
            )
        return [1 if matches(pat, z) else 0 for _, pat in self._entries]

    def process_batch(self, batch: Batch) -> BatchReport:
        t = batch.timestamp
        if self._t_seen is not None and t <= self._t_seen:
            raise StreamOrderError(
                f"batch timestamp {t} is not after {self._t_seen}"
            )
        if batch.instances and not self.spec.supports(batch.instances[0]):
            raise ConfigurationError(
                f"measure {self.spec.base.value} is not defined for "
                f"{type(batch.instances[0]).__name__} streams"
            )
        self._t_seen = t
        self.batches_seen += 1

        w = batch_weight(batch, self.spec)
        if w <= 0.0:
            # nothing to sample and nothing to add to the normalizer; the
            # batch still counts as seen
            return BatchReport(t, w, 0.0, False, 0, ())

        if self._t_mass is None:
            self._scaled_mass = w
        else:
            decay = math.exp(-self.damping * (t - self._t_mass))
            self._scaled_mass = self._scaled_mass * decay + w
        self._t_mass = t
        p = w / self._scaled_mass  # exactly 1.0 on the first mass

        k = self.capacity
        x = self.rng.random()
        if self.realisation_mode == "binomial-cdf":
            n = betainc.realisations_from_uniform(k, p, x)
            accepted = n >= 1
        elif self.realisation_mode == "coupled-beta":
            accepted = x < p
            n = betainc.inv_draw_realisations(k, p, x) if accepted else 0
        else:  # conditional-binomial
            accepted = x < p
            n = betainc.draw_realisations_conditional(k, p, self.rng) if accepted else 0

        if not accepted:
            return BatchReport(t, w, p, False, 0, ())
        self.batches_accepted += 1

        if self._entries:
            slots = sample_distinct_indices(self.rng, k, n)
            patterns = sample_from_batch(batch, self.spec, n, self.rng)
            for s, pat in zip(slots, patterns):
                self._entries[s] = (t, pat)
            evicted = tuple(slots)
        else:
            # first acceptance has p == 1 and n == k in every mode
            patterns = sample_from_batch(batch, self.spec, n, self.rng)
            self._entries = [(t, pat) for pat in patterns]
            evicted = tuple(range(n))

        self.insertions += n
        return BatchReport(t, w, p, True, n, evicted)

    def process_stream(self, batches) -> list[BatchReport]:
        return [self.process_batch(b) for b in batches]
