"""Run the executable law suite over enumerated small instances.

Every stated algebraic law (3-for-2, pullback projection classes, skeleton
preservation, normalization idempotence, decomposition retraction, ...) runs
over a deterministic population of small group actions.  The same budget and
seed always produce byte-identical reports.

Run:  python demos/05_law_suite.py
"""

from gpdkit import InstanceBudget, enumerate_actions, generate_weak_equivalences, run_law_suite

budget = InstanceBudget(max_group_order=4, max_carrier_size=3)
print("budget:", budget)
print("enumerated actions:", sum(1 for _ in enumerate_actions(budget)))

generated = generate_weak_equivalences(budget)
by_kind = {}
for w in generated:
    by_kind[w.kind] = by_kind.get(w.kind, 0) + 1
print("generated weak equivalences:", by_kind)

report = run_law_suite(budget)
print()
for law in report.laws:
    marker = "PASS" if law.ok else "FAIL"
    print(f"  {marker}  {law.name}  [{law.instances} checks]")
    if not law.ok:
        print("        witness:", law.witness)
print("\nall laws hold:", report.all_ok)

again = run_law_suite(budget)
print("byte-identical on a second run:", report.to_bytes() == again.to_bytes())
