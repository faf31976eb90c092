"""A reservoir over a drifting stream, landmark vs damped.

The stream starts on one vocabulary and drifts to another. With damping off
the reservoir stays proportional to everything ever seen; with damping on it
tracks the recent window. The feature vectors at the end are the reservoir's
view of two probe instances.

Run:  python3 notebooks/03_streaming_reservoir.py
"""

import random
from collections import Counter

from rps import Batch, BaseMeasure, MeasureSpec, ReservoirSampler, plain_itemset

OLD, NEW = range(0, 4), range(4, 8)
rng = random.Random(20260814)


def make_stream():
    batches = []
    for t in range(1, 201):
        vocab = OLD if t <= 100 else NEW
        instances = tuple(
            plain_itemset(rng.sample(vocab, rng.randint(1, 3))) for _ in range(4)
        )
        batches.append(Batch(float(t), instances))
    return batches


def old_fraction(sampler):
    counts = Counter(
        "old" if all(i in OLD for e in x.elements for i in e) else "new"
        for _, x in sampler.snapshot()
    )
    return counts["old"] / sampler.capacity


stream = make_stream()
spec = MeasureSpec(BaseMeasure.FREQ)

for gamma in (0.0, 0.05, 0.2):
    sampler = ReservoirSampler(spec, capacity=200, damping=gamma, seed=1)
    for batch in stream:
        sampler.process_batch(batch)
    print(
        f"gamma={gamma:<4g} old-vocabulary share of reservoir: "
        f"{old_fraction(sampler):.2f}   "
        f"(accepted {sampler.batches_accepted}/200 batches, "
        f"{sampler.insertions} insertions)"
    )

print()
print("Half the stream was old vocabulary, so the landmark run keeps about")
print("half its slots there; damping shifts mass toward the recent batches.")

sampler = ReservoirSampler(spec, capacity=8, damping=0.2, seed=5)
for batch in stream:
    sampler.process_batch(batch)
probe_old = plain_itemset([0, 1, 2])
probe_new = plain_itemset([4, 5, 6])
print()
print(f"feature vector of an old-vocab probe: {sampler.feature_vector(probe_old)}")
print(f"feature vector of a new-vocab probe:  {sampler.feature_vector(probe_new)}")
print("(one containment bit per reservoir slot, in slot order)")
