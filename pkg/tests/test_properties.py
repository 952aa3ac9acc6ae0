"""Property-based suites for the structural invariants."""
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from taxica import (
    build_model,
    ca_decompose,
    five_number,
    parse_table,
    proportional,
    reduce_to_minimal,
    serialize_table,
    seven_number,
    tca_decompose,
    verify,
)

from helpers import make_table


@st.composite
def count_matrices(draw, max_side=6, max_count=20):
    n_rows = draw(st.integers(2, max_side))
    n_cols = draw(st.integers(2, max_side))
    cells = draw(
        st.lists(
            st.integers(0, max_count),
            min_size=n_rows * n_cols,
            max_size=n_rows * n_cols,
        )
    )
    counts = np.array(cells, dtype=float).reshape(n_rows, n_cols)
    assume(np.all(counts.sum(axis=1) > 0) and np.all(counts.sum(axis=0) > 0))
    return counts


@st.composite
def positive_batches(draw):
    return draw(st.lists(st.integers(1, 500), min_size=1, max_size=40))


class TestTableProperties:
    @given(count_matrices())
    @settings(max_examples=60, deadline=None)
    def test_residual_margins_vanish(self, counts):
        model = build_model(make_table(counts))
        assert abs(model.P.sum() - 1) <= 1e-12
        assert np.max(np.abs(model.R0.sum(axis=0))) <= 1e-12
        assert np.max(np.abs(model.R0.sum(axis=1))) <= 1e-12

    @given(count_matrices(), st.sampled_from([2, 3, 5, 10, 16]))
    @settings(max_examples=40, deadline=None)
    def test_scale_invariance_is_exact_for_integer_tables(self, counts, k):
        base = build_model(make_table(counts))
        scaled = build_model(make_table(k * counts))
        assert np.array_equal(base.P, scaled.P)
        assert np.array_equal(base.R0, scaled.R0)

    @given(count_matrices())
    @settings(max_examples=40, deadline=None)
    def test_parse_serialize_round_trip(self, counts):
        table = make_table(counts)
        again = parse_table(serialize_table(table))
        assert again.row_labels == table.row_labels
        assert again.col_labels == table.col_labels
        assert np.array_equal(again.counts, table.counts)


class TestFiveNumberProperties:
    @given(positive_batches(), st.randoms())
    @settings(max_examples=50, deadline=None)
    def test_permutation_invariance(self, batch, rng):
        shuffled = list(batch)
        rng.shuffle(shuffled)
        for method in ("hinges", "interpolated"):
            assert five_number(shuffled, method=method) == five_number(
                batch, method=method
            )

    @given(positive_batches())
    @settings(max_examples=50, deadline=None)
    def test_appending_max_never_decreases_any_quantile(self, batch):
        before = five_number(batch)
        after = five_number(batch + [max(batch)])
        assert all(b2 >= b1 for b1, b2 in zip(before, after))

    @given(positive_batches())
    @settings(max_examples=50, deadline=None)
    def test_order_statistics_are_ordered(self, batch):
        lo, q1, med, q3, hi = five_number(batch)
        assert lo <= q1 <= med <= q3 <= hi


class TestProportionalityProperties:
    @given(
        st.lists(st.integers(0, 9), min_size=2, max_size=6),
        st.integers(1, 7),
        st.integers(1, 7),
    )
    @settings(max_examples=60, deadline=None)
    def test_integer_scalings_are_transitively_proportional(self, base, k1, k2):
        x = np.array(base, dtype=float)
        assume(x.sum() > 0)
        assert proportional(x, k1 * x, tol=0.0)
        assert proportional(k1 * x, k2 * x, tol=0.0)

    @given(count_matrices())
    @settings(max_examples=30, deadline=None)
    def test_reduction_idempotent_and_mass_preserving(self, counts):
        table = make_table(counts)
        trace = reduce_to_minimal(table)
        assert trace.minimal.n == table.n
        assert reduce_to_minimal(trace.minimal).is_already_minimal
        i0, j0 = table.shape
        i1, j1 = trace.minimal.shape
        assert table.n / (i0 * j0) <= trace.minimal.n / (i1 * j1) + 1e-12
        assert table.counts.max() <= trace.minimal.counts.max() + 1e-12

    @given(count_matrices())
    @settings(max_examples=30, deadline=None)
    def test_zero_share_of_minimal_never_exceeds_bound(self, counts):
        minimal = reduce_to_minimal(make_table(counts)).minimal
        s = seven_number(minimal)
        assert s.pct_zero <= s.bound + 1e-12

    @given(count_matrices())
    @settings(max_examples=30, deadline=None)
    def test_scaling_the_table_scales_the_summary(self, counts):
        base = seven_number(make_table(counts))
        scaled = seven_number(make_table(4.0 * counts))
        assert scaled.ave == pytest.approx(4 * base.ave, rel=1e-12)
        assert scaled.pct_zero == base.pct_zero
        assert scaled.mh1 == tuple(4 * v for v in base.mh1)


class TestDecompositionProperties:
    @given(count_matrices(max_side=5, max_count=12))
    @settings(max_examples=25, deadline=None)
    def test_every_invariant_holds_for_both_methods(self, counts):
        model = build_model(make_table(counts))
        for decomp in (ca_decompose(model), tca_decompose(model)):
            report = verify(decomp)
            assert report.passed, [
                (c.name, c.max_residual) for c in report.checks if not c.passed
            ]
