"""Covering numbers of random maximal families, and the dichotomy for tau = t+2.

Every maximal t-intersecting family has a t-intersecting family of minimum covers;
when tau_t(F) = t+2 those covers themselves have covering number t, t+1 or t+2.
"""
from collections import Counter

from tintersect.combinat import Params
from tintersect.family import is_t_intersecting, iterated_tau, min_covers
from tintersect.verify import random_maximal_family

p = Params(12, 4, 1)
seen = Counter()
for seed in range(60):
    f = random_maximal_family(p, seed)
    assert is_t_intersecting(min_covers(f).as_family())
    it = iterated_tau(f)
    seen[(it.tau, it.cover_tau if it.tau == p.t + 2 else None)] += 1

for (tau, cover_tau), count in sorted(seen.items(), key=str):
    extra = f", covers have tau {cover_tau}" if cover_tau is not None else ""
    print(f"tau={tau}{extra}: {count} families")
