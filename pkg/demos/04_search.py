"""Exact values of f(n, k, t, s) by branch and bound, with budget and resume."""
from tintersect.combinat import Params, format_set
from tintersect.search import Budget, classify_extremal, exact_max

for n in (9, 10, 11):
    res = exact_max(Params(n, 3, 1), 3)
    print(f"f({n},3,1,3) = {res.value} [{res.status}] nodes={res.nodes} {res.seconds:.2f}s")

witness = res.witness
print("witness:", " ".join(format_set(m) for m in witness.members))
print("classified as:", classify_extremal(witness).label, classify_extremal(witness).signature)

# A tiny budget stops early; the checkpoint carries the search forward.
p = Params(10, 3, 1)
part = exact_max(p, 3, Budget(max_nodes=20_000))
print(f"after 20000 nodes: value={part.value} [{part.status}]")
rest = exact_max(p, 3, resume=part.checkpoint)
print(f"resumed: value={rest.value} [{rest.status}]")

# Erdos-Ko-Rado: with no covering requirement beyond t the star is optimal.
print("f(10,4,1,1) =", exact_max(Params(10, 4, 1), 1).value)
