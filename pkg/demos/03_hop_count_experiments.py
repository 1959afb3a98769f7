"""Reproduce the hop-count experiment grid on the in-process simulator.

Pin search cost tracks r/2 and ignores how many objects are stored.
Superset search cost falls as object density rises (the result limit
fills sooner) and climbs with network size. The full default grid runs
with `keycube experiment`; this demo runs a trimmed grid to stay quick.

Run:  python demos/03_hop_count_experiments.py
"""

from keycube import ExperimentPlan, run_experiment
from keycube.experiment import format_summary_table

plan = ExperimentPlan(node_counts=(8, 32, 128), object_counts=(10, 1000),
                      queries_per_cell=50, superset_limit=10, seed=2021)
report = run_experiment(plan)

print(format_summary_table(report.summaries))

print("\npin means vs r/2:")
for cell in report.summaries:
    if cell.op == "pin":
        print(f"  r={cell.r} objects={cell.objects:5d}: "
              f"{cell.mean_hops:5.2f} vs {cell.r / 2:.1f}")

print("\nsuperset means, 128 nodes: more objects, fewer hops")
for objects in (10, 1000):
    print(f"  {objects:5d} objects: {report.mean_hops(128, objects, 'superset'):6.2f}")
