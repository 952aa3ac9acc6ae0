"""Diagonal tables: the sparsest case, where CA and TCA split completely.

A diagonal I x I table attains the largest possible zero percentage,
100 (1 - 1/I). CA is blind to the cell masses there: it returns I - 1 unit
dispersions, saying only "there are I blocks". TCA instead reads the masses
through a subset-sum problem: sigma_1 = max over subsets S of 4 s (1 - s)
with s the mass of S, reaching 1 exactly when some subset of masses sums to
one half.
"""
import numpy as np

from taxica import (
    ContingencyTable,
    build_model,
    ca_decompose,
    classify,
    diagonal_sigma1,
    reduce_to_minimal,
    seven_number,
    tca_decompose,
)


def diagonal_table(values):
    labels = tuple(f"b{i + 1}" for i in range(len(values)))
    return ContingencyTable(labels, labels, np.diag(np.array(values, dtype=float)))


for diag in ([1, 2, 3, 4, 6], [1, 2, 3, 4, 5]):
    table = diagonal_table(diag)
    model = build_model(table)
    print(f"Diag{tuple(diag)}  (n = {int(table.n)})")
    verdict = classify(seven_number(reduce_to_minimal(table).minimal))
    print(f"  classification: {verdict.level.value}")

    ca = ca_decompose(model)
    print(f"  CA  sigma: {np.round(ca.sigmas, 5)}   (no structure beyond the blocks)")

    tca = tca_decompose(model)
    print(f"  TCA sigma: {np.round(tca.sigmas, 5)}")

    closed_form = diagonal_sigma1(model.r)
    print(f"  subset-sum sigma_1 = {closed_form:.5f}")
    total = sum(diag)
    best = None
    for mask in range(1, 1 << len(diag)):
        subset = [diag[i] for i in range(len(diag)) if mask >> i & 1]
        s = sum(subset) / total
        if best is None or abs(s - 0.5) < abs(best[0] - 0.5):
            best = (s, subset)
    print(f"  best split: {best[1]} vs rest "
          f"(mass {best[0]:.4f} -> 4s(1-s) = {4 * best[0] * (1 - best[0]):.5f})\n")
