"""The three construction sizes as functions of n, and which one wins.

For fixed (k, t) the three counts are polynomials in n of degree k-t-2, so their
ordering for small n can differ from the ordering for large n.
"""
from tintersect.combinat import Params, asymptotic_winner, max_f, theorem_threshold, eval_f1, eval_f2, eval_f3

k, t = 4, 1
print(f"k={k} t={t}: threshold n >= {theorem_threshold(k, t)}")
print(f"{'n':>6} {'f1':>10} {'f2':>10} {'f3':>10}  winner")
for n in (9, 10, 12, 16, 32, 100, 1536):
    p = Params(n, k, t)
    value, labels = max_f(p)
    print(f"{n:>6} {eval_f1(p):>10} {eval_f2(p):>10} {eval_f3(p):>10}  {'/'.join(sorted(labels))}")

# All three regimes show up once k - t is large enough.
for k, t in ((14, 6), (12, 6), (10, 6)):
    print(f"for large n at k={k} t={t} the largest is {sorted(asymptotic_winner(k, t))}")
