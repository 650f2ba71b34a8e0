"""Tour 5: the verification registry.

Every in-scope identity is registered under a stable id; run_suite replays
it on an exact grid. This is the same machinery behind `qcaw verify`.
"""

from qcaw.verify import Grid, run_suite, report_markdown

grid = Grid(ns=(2, 3), ks=(1, 2), samples=5, max_weight=1)

for pattern in ("eq-Q1", "flip", "lem-compatible", "d4-counts"):
    cases = run_suite(pattern, grid)
    failed = sum(c.status == "fail" for c in cases)
    print(f"{pattern:16s} {len(cases):3d} cases, {failed} failures")
    for c in cases[:2]:
        print(f"   {c.lemma_id} {c.params} -> {c.status} {c.detail}")

print()
print(report_markdown(run_suite("qc-seam", grid)))
