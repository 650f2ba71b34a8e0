"""Tour 4: framed quivers, green vertices, and sign coherence.

The framed quiver carries the c-vectors in its coframe columns; along any
green sequence every column stays sign coherent, and a maximal green
sequence ends with every vertex red.
"""

import random

from qcaw.quiver import (WeightedQuiver, coframe_column, framed_quiver,
                         is_green, is_red, mutate_quiver, sign_coherent)

q = WeightedQuiver(("1", "2"), ("1", "2"), {("1", "2"): 2, ("2", "1"): -2})
fq = framed_quiver(q)
print("A2 quiver 1->2, framed:", fq.vertices)

for word in (["1", "2", "1"], ["2", "1"]):
    state = framed_quiver(q)
    trace = []
    for k in word:
        trace.append(f"mu_{k}({'green' if is_green(state, k) else 'red'})")
        state = mutate_quiver(state, k)
    print(f"word {word}: {' '.join(trace)}; all red:",
          all(is_red(state, v) for v in ("1", "2")))

rng = random.Random(0)
checked = 0
for _ in range(40):
    ids = tuple(str(i) for i in range(rng.randint(2, 6)))
    adj = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            w = rng.randint(-2, 2) * 2
            if w:
                adj[(a, b)], adj[(b, a)] = w, -w
    state = framed_quiver(WeightedQuiver(ids, ids, adj))
    while True:
        greens = [v for v in ids if is_green(state, v)]
        if not greens or rng.random() < 0.2:
            break
        state = mutate_quiver(state, rng.choice(greens))
        assert sign_coherent(state)
        checked += 1
print(f"\nsign coherence held at {checked} random green-walk states")
print("a coframe column:", coframe_column(state, ids[0]))
