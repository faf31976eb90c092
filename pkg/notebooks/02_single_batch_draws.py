"""Drawing patterns from one batch without enumerating them.

A draw picks an instance by table total, then a norm from that instance's
table, then a pattern of that norm. The result follows the exact batch law
m(x, B) / w(B); this script checks that empirically.

Run:  python3 notebooks/02_single_batch_draws.py
"""

import random

from rps import Batch, BaseMeasure, MeasureSpec, plain_itemset, sample_from_batch, sequence
from rps.oracle import batch_law, frequencies, total_variation

A, B, C = 0, 1, 2
rng = random.Random(7)

batch = Batch(1.0, (plain_itemset([A, B, C]), plain_itemset([A, C])))
spec = MeasureSpec(BaseMeasure.FREQ)

law = batch_law(batch, spec)
print(f"batch [{{A,B,C}}, {{A,C}}] under freq: {len(law)} patterns, weight 10")
print("exact law of one draw (patterns shared by both instances weigh double):")
for x, p in sorted(law.items(), key=lambda kv: -kv[1]):
    print(f"  {str(x.elements):20s} {p:.3f}")

draws = sample_from_batch(batch, spec, 200_000, rng)
emp = frequencies(draws)
print(f"200k draws, total variation vs exact law: {total_variation(emp, law):.4f}")

print()
print("The same machinery drives sequences; first-fit counting keeps")
print("repeated occurrences from inflating a pattern's probability:")
zz = Batch(1.0, (sequence([[A], [A], [B]]),))
law = batch_law(zz, spec)
draws = sample_from_batch(zz, spec, 100_000, rng)
emp = frequencies(draws)
for x, p in sorted(law.items(), key=lambda kv: -kv[1]):
    print(f"  {str(x.elements):24s} exact {p:.3f}  empirical {emp.get(x, 0.0):.3f}")
print(f"total variation: {total_variation(emp, law):.4f}")
