"""Build the three extremal constructions and look at their covering structure."""
from tintersect.combinat import C1, C2, C3, FORMULAS, Params, format_set
from tintersect.constructions import build_default, default_params
from tintersect.family import is_maximal, is_t_intersecting, iterated_tau, min_covers

p = Params(12, 4, 1)
for label in (C1, C2, C3):
    f = build_default(p, label)
    it = iterated_tau(f)
    covers = min_covers(f)
    print(f"{label}: {default_params(p, label).describe()}")
    print(f"  |F| = {len(f)} (formula {FORMULAS[label](p)}), t-intersecting={is_t_intersecting(f)}, "
          f"maximal={is_maximal(f)}")
    print(f"  tau = {it.tau}, {len(covers)} minimum covers, their own tau = {it.cover_tau}")
    print("  covers:", " ".join(format_set(c) for c in covers.covers))
