"""Walk through sparsity summaries and equivalence-class reduction.

A contrived 4x4 table with three mutually proportional rows collapses, step
by step, to a 2x2 diagonal table. Every table along the way carries the same
CA/TCA geometry but a different 7-number sparsity summary; the minimal one is
the summary that actually characterizes the data.
"""
from pathlib import Path

from taxica import (
    build_model,
    ca_decompose,
    classify,
    parse_table,
    reduce_to_minimal,
    serialize_table,
    seven_number,
    tca_decompose,
)

DATA = Path(__file__).resolve().parents[1] / "data"


def describe(tag, table):
    s = seven_number(table)
    print(f"{tag}: {table.shape[0]}x{table.shape[1]}  ave={s.ave:.4f}  "
          f"%zero={s.pct_zero:.1f}  MH1={s.mh1}")


table = parse_table((DATA / "toy_4x4.csv").read_text())
print(serialize_table(table))
describe("N", table)

trace = reduce_to_minimal(table)
print("\nmerge steps:")
for step in trace.steps:
    print(f"  {step.axis}s {step.merged_indices} -> '{step.new_label}'")

print("\nminimal representative:")
print(serialize_table(trace.minimal))
describe("M", trace.minimal)

verdict = classify(seven_number(trace.minimal))
print(f"\nclassification: {verdict.level.value}")
print(f"  {verdict.rationale}")

print("\nreduction preserves the geometry:")
for name, t in (("N", table), ("M", trace.minimal)):
    model = build_model(t)
    ca = ca_decompose(model)
    tca = tca_decompose(model)
    print(f"  {name}: CA sigma={[round(float(s), 6) for s in ca.sigmas]}"
          f"  TCA sigma={[round(float(s), 6) for s in tca.sigmas]}")
