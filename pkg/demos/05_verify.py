"""Run the property checks over a small grid and print a summary table."""
from tintersect.verify import run_suite, summarize

reports = run_suite([(13, 4, 1), (14, 4, 1), (13, 5, 2), (6, 2, 1)], seeds=30, cross_samples=20)
for name, counts in sorted(summarize(reports).items()):
    print(f"{name:<20} " + " ".join(f"{v}={c}" for v, c in sorted(counts.items())))

blocking = [r for r in reports if r.blocking]
print(f"{len(reports)} checks, {len(blocking)} blocking failures")

# A corrupted construction is caught by the maximality check.
broken = [r for r in run_suite([(12, 4, 1)], seeds=0, cross_samples=0, fault=True) if r.blocking]
print("with an injected fault:", sorted({r.name for r in broken}))
