"""Acceptance gate: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).

Expected values come from the published analyses of the bundled datasets and
from independent oracles (hand arithmetic on the worked 4x4 example, subset
and sign-vector enumeration); tolerances are pinned here and never loosened.
"""
import json
import subprocess
import sys
import time

import numpy as np
import pytest
from numpy.testing import assert_allclose

from taxica import (
    build_model,
    ca_decompose,
    contributions,
    cut_norm_bruteforce,
    diagonal_sigma1,
    explained_variation,
    map_similarity,
    parse_table,
    reduce_to_minimal,
    seven_number,
    tca_axis_exact,
    tca_axis_iterative,
    tca_decompose,
    verify,
)

from helpers import (
    DATA_DIR,
    load_table,
    make_table,
    max_abs_diff_up_to_sign,
    random_tables,
)


def report(criterion: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"\nACCEPTANCE {criterion}: {status}")
    assert not failures, "; ".join(failures)


def check(failures: list[str], ok: bool, message: str) -> None:
    if not ok:
        failures.append(message)


def test_criterion_1_worked_example_pipeline():
    failures: list[str] = []
    start = time.perf_counter()

    table = load_table("toy_4x4.csv")
    summary = seven_number(table)
    check(failures, summary.ave == 1.3125, f"ave(N)={summary.ave}")
    check(failures, summary.pct_zero == 50, f"%0(N)={summary.pct_zero}")
    check(failures, summary.mh1 == (1, 1.5, 2, 3.5, 6), f"MH1(N)={summary.mh1}")

    intermediate = make_table([[6, 12, 0, 0], [0, 0, 1, 2]])
    s1 = seven_number(intermediate)
    check(failures, s1.ave == 2.625, f"ave(N1)={s1.ave}")
    check(failures, s1.pct_zero == 50, f"%0(N1)={s1.pct_zero}")
    check(failures, s1.mh1 == (1, 1.5, 4, 9, 12), f"MH1(N1)={s1.mh1}")

    minimal = reduce_to_minimal(table).minimal
    check(
        failures,
        minimal.counts.tolist() == [[18, 0], [0, 3]],
        f"M={minimal.counts.tolist()}",
    )

    elapsed = time.perf_counter() - start
    check(failures, elapsed < 1.0, f"runtime {elapsed:.2f}s >= 1s")
    report("1 (worked 4x4 pipeline)", failures)


TV_C1 = [24, 83, 106, 45, 40, 1, 700]
TV_C2 = [128, 285, 63, 181, 330, 2, 11]
TV_SC1 = [-28, -96, -165, -137, -73, -2, 500]
TV_SC2 = [-82, -235, -173, 222, 278, -10, 0]


def test_criterion_2_tv_programs():
    failures: list[str] = []
    start = time.perf_counter()

    table = load_table("tv_programs.csv")
    model = build_model(table)
    ca = ca_decompose(model)
    tca = tca_decompose(model)
    expl_ca = explained_variation(ca)
    expl_tca = explained_variation(tca)

    check(failures, abs(expl_ca[0] - 70.7) <= 0.1, f"CA axis1 {expl_ca[0]:.4f} != 70.7+-0.1")
    check(failures, abs(expl_tca[0] - 78.0) <= 0.2, f"TCA axis1 {expl_tca[0]:.4f} != 78+-0.2")
    check(failures, abs(expl_tca[1] - 16.7) <= 0.2, f"TCA axis2 {expl_tca[1]:.4f} != 16.7+-0.2")

    c = contributions(ca).col_values
    sc = contributions(tca).col_values
    dk = table.col_labels.index("dontknow")
    check(failures, abs(c[dk, 0] - 700) <= 1, f"C1(dontknow)={c[dk, 0]:.2f}")
    check(failures, abs(abs(sc[dk, 0]) - 500) <= 1, f"|SC1(dontknow)|={abs(sc[dk, 0]):.2f}")
    check(failures, abs(sc[dk, 1]) <= 1, f"SC2(dontknow)={sc[dk, 1]:.2f}")

    check(failures, np.max(np.abs(c[:, 0] - TV_C1)) <= 1, "C1 row off by >1")
    check(failures, np.max(np.abs(c[:, 1] - TV_C2)) <= 1, "C2 row off by >1")
    check(failures, max_abs_diff_up_to_sign(sc[:, 0], TV_SC1) <= 1, "SC1 row off by >1")
    check(failures, max_abs_diff_up_to_sign(sc[:, 1], TV_SC2) <= 1, "SC2 row off by >1")

    elapsed = time.perf_counter() - start
    check(failures, elapsed < 5.0, f"runtime {elapsed:.2f}s >= 5s")
    report("2 (TV programs)", failures)


@pytest.mark.xfail(
    strict=True,
    reason="the published per-axis figure 21.6 contradicts the same source's "
    "cumulative 92.4: exact arithmetic on the printed table gives "
    "70.6413 + 21.7569 = 92.398, so axis 2 carries 21.76%, not 21.6%",
)
def test_criterion_2_tv_ca_axis2_explained_as_printed():
    table = load_table("tv_programs.csv")
    expl = explained_variation(ca_decompose(build_model(table)))
    ok = abs(expl[1] - 21.6) <= 0.1
    print(
        f"\nACCEPTANCE 2 (CA axis-2 explained = 21.6 +- 0.1): "
        f"{'PASS' if ok else 'FAIL'} (computed {expl[1]:.4f})"
    )
    assert ok


ROD_SIGMA_CA = [0.864, 0.678, 0.536, 0.391, 0.189, 0.157, 0.107, 0.045]
ROD_SIGMA_TCA = [0.478, 0.422, 0.347, 0.138, 0.120, 0.091, 0.061, 0.010]
ROD_SC1 = [-23, -196, 298, -221, 22, 135, -51, 44, -8]
ROD_SC2 = [-26, -238, 202, 224, 32, -139, 42, -95, -1]


def test_criterion_3_rodents():
    failures: list[str] = []
    start = time.perf_counter()

    table = load_table("rodents.csv")
    trace = reduce_to_minimal(table)
    check(failures, table.shape == (28, 9), f"N shape {table.shape}")
    check(failures, trace.minimal.shape == (21, 9), f"M shape {trace.minimal.shape}")

    model = build_model(table)
    ca = ca_decompose(model)
    tca = tca_decompose(model)
    check(
        failures,
        np.max(np.abs(ca.sigmas - ROD_SIGMA_CA)) <= 1e-3,
        f"CA sigmas {np.round(ca.sigmas, 4)}",
    )
    check(
        failures,
        np.max(np.abs(tca.sigmas - ROD_SIGMA_TCA)) <= 1e-3,
        f"TCA sigmas {np.round(tca.sigmas, 4)}",
    )

    c = contributions(ca).col_values
    sc = contributions(tca).col_values
    rod1 = table.col_labels.index("rod1")
    rod2 = table.col_labels.index("rod2")
    check(failures, abs(c[rod2, 0] - 750) <= 1, f"C1(rod2)={c[rod2, 0]:.2f}")
    check(failures, abs(c[rod1, 1] - 854) <= 1, f"C2(rod1)={c[rod1, 1]:.2f}")
    check(failures, max_abs_diff_up_to_sign(sc[:, 0], ROD_SC1) <= 1, "SC1 row off by >1")
    check(failures, max_abs_diff_up_to_sign(sc[:, 1], ROD_SC2) <= 1, "SC2 row off by >1")

    elapsed = time.perf_counter() - start
    check(failures, elapsed < 10.0, f"runtime {elapsed:.2f}s >= 10s")
    report("3 (rodents)", failures)


def test_criterion_4_diagonal_tables():
    failures: list[str] = []

    table_6 = make_table(np.diag([1.0, 2, 3, 4, 6]))
    model_6 = build_model(table_6)
    ca_6 = ca_decompose(model_6)
    check(
        failures,
        np.max(np.abs(ca_6.sigmas - np.ones(4))) <= 1e-9,
        f"CA sigmas {ca_6.sigmas}",
    )
    tca_6 = tca_decompose(model_6)
    want_6 = [1.0, 0.875, 0.85714, 0.18750]
    check(
        failures,
        np.max(np.abs(tca_6.sigmas - want_6)) <= 1e-5,
        f"TCA sigmas {np.round(tca_6.sigmas, 6)}",
    )
    check(
        failures,
        abs(diagonal_sigma1(model_6.r) - tca_6.sigmas[0]) <= 1e-9,
        "subset-sum sigma1 disagrees (1,2,3,4,6)",
    )

    table_5 = make_table(np.diag([1.0, 2, 3, 4, 5]))
    model_5 = build_model(table_5)
    tca_5 = tca_decompose(model_5)
    want_5 = [0.99556, 0.95714, 0.95522, 0.17778]
    check(
        failures,
        np.max(np.abs(tca_5.sigmas - want_5)) <= 1e-5,
        f"TCA sigmas {np.round(tca_5.sigmas, 6)}",
    )
    check(
        failures,
        abs(diagonal_sigma1(model_5.r) - tca_5.sigmas[0]) <= 1e-9,
        "subset-sum sigma1 disagrees (1,2,3,4,5)",
    )
    report("4 (diagonal tables)", failures)


def test_criterion_5_oracle_equivalence():
    failures: list[str] = []
    start = time.perf_counter()

    tables = random_tables(200, seed=20250811, max_rows=8, max_cols=10)
    agree = 0
    for idx, table in enumerate(tables):
        model = build_model(table)
        exact = tca_axis_exact(model.R0)
        cut = cut_norm_bruteforce(model.R0)
        check(
            failures,
            abs(exact.objective - 4 * cut) <= 1e-10,
            f"table {idx}: exact {exact.objective:.12f} != 4*cut {4 * cut:.12f}",
        )

        heuristic = tca_axis_iterative(model.R0)
        check(
            failures,
            heuristic.objective <= exact.objective + 1e-12,
            f"table {idx}: iterative exceeded exact",
        )
        if abs(heuristic.objective - exact.objective) <= 1e-10:
            agree += 1

        minimal = reduce_to_minimal(table).minimal
        model_m = build_model(minimal)
        ca_n, ca_m = ca_decompose(model), ca_decompose(model_m)
        check(
            failures,
            ca_n.rank_used == ca_m.rank_used
            and np.max(np.abs(ca_n.sigmas - ca_m.sigmas), initial=0.0) <= 1e-9,
            f"table {idx}: CA sigma changed under reduction",
        )
        tca_n, tca_m = tca_decompose(model), tca_decompose(model_m)
        check(
            failures,
            tca_n.rank_used == tca_m.rank_used
            and np.max(np.abs(tca_n.sigmas - tca_m.sigmas), initial=0.0) <= 1e-9,
            f"table {idx}: TCA sigma changed under reduction",
        )

    rate = 100.0 * agree / len(tables)
    check(failures, rate >= 95.0, f"iterative matched exact on only {rate:.1f}%")
    elapsed = time.perf_counter() - start
    check(failures, elapsed < 60.0, f"runtime {elapsed:.1f}s >= 60s")
    report(f"5 (oracle equivalence, {rate:.1f}% heuristic agreement)", failures)


def _tolerance_suite_tables():
    tables = [
        load_table("toy_4x4.csv"),
        reduce_to_minimal(load_table("toy_4x4.csv")).minimal,
        make_table([[6, 12, 0, 0], [0, 0, 1, 2]]),
        load_table("tv_programs.csv"),
        load_table("rodents.csv"),
        reduce_to_minimal(load_table("rodents.csv")).minimal,
        make_table(np.diag([1.0, 2, 3, 4, 6])),
        make_table(np.diag([1.0, 2, 3, 4, 5])),
    ]
    tables.extend(random_tables(20, seed=777))
    return tables


def test_criterion_6_property_suites():
    failures: list[str] = []
    tolerances = {
        "centering": 1e-10,
        "l2-norms": 1e-9,
        "orthogonality": 1e-9,
        "transition": 1e-9,
        "l1-norms": 1e-9,
        "conjugacy": 1e-9,
        "equivariability": 1e-9,
        "quadrant-balance": 1e-9,
        "reconstruction": 1e-9,
    }
    for idx, table in enumerate(_tolerance_suite_tables()):
        model = build_model(table)
        for decomp in (ca_decompose(model), tca_decompose(model)):
            for result in verify(decomp).checks:
                if not result.applicable or result.name not in tolerances:
                    continue
                check(
                    failures,
                    result.tolerance == tolerances[result.name]
                    and result.max_residual <= result.tolerance,
                    f"table {idx} {decomp.method} {result.name}: "
                    f"{result.max_residual:.2e} > {result.tolerance:.0e}",
                )
        summary = seven_number(reduce_to_minimal(table).minimal)
        check(
            failures,
            summary.pct_zero <= summary.bound + 1e-12,
            f"table {idx}: zero bound violated",
        )
    report("6 (invariant property suites)", failures)


def test_criterion_7_similarity_verdicts():
    failures: list[str] = []
    tv_model = build_model(load_table("tv_programs.csv"))
    tv = map_similarity(ca_decompose(tv_model), tca_decompose(tv_model), axes=2)
    check(failures, tv.verdict == "similar", f"TV verdict {tv.verdict}")

    rod_model = build_model(load_table("rodents.csv"))
    rod = map_similarity(ca_decompose(rod_model), tca_decompose(rod_model), axes=2)
    check(failures, rod.verdict == "dissimilar", f"rodents verdict {rod.verdict}")
    report("7 (similarity verdicts)", failures)


def test_criterion_8_determinism():
    failures: list[str] = []
    tv = str(DATA_DIR / "tv_programs.csv")
    toy = str(DATA_DIR / "toy_4x4.csv")
    invocations = [
        ["summarize", "--input", toy, "--format", "json"],
        ["reduce", "--input", toy, "--format", "json"],
        ["ca", "--input", tv, "--format", "json"],
        ["tca", "--input", tv, "--format", "json"],
        ["plot", "--input", tv, "--method", "tca"],
    ]

    def run(argv, threads):
        env = {
            "PATH": "/usr/bin:/bin:/usr/local/bin",
            "OMP_NUM_THREADS": threads,
            "OPENBLAS_NUM_THREADS": threads,
            "MKL_NUM_THREADS": threads,
        }
        return subprocess.run(
            [sys.executable, "-m", "taxica", *argv],
            capture_output=True,
            env=env,
            check=True,
        ).stdout

    for argv in invocations:
        first = run(argv, "1")
        check(failures, first == run(argv, "1"), f"rerun differs: {argv[0]}")
        check(failures, first == run(argv, "4"), f"thread count changes: {argv[0]}")

    # thread count must not change the decomposition itself either
    payloads = [json.loads(run(["tca", "--input", tv], t)) for t in ("1", "8")]
    check(
        failures,
        payloads[0]["tca"]["sigmas"] == payloads[1]["tca"]["sigmas"],
        "dispersions differ across thread counts",
    )
    report("8 (determinism)", failures)
