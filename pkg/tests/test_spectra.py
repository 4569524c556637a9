import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from negabent.boolfun import BooleanFunction
from negabent.errors import DimensionError, InternalInvariantError
from negabent.spectra import (
    GaussianInt,
    autocorrelation,
    format_value,
    fwht,
    nega_autocorrelation,
    nega_direct_batch,
    nega_fast_batch,
    nega_from_walsh,
    nega_transform_direct,
    nega_transform_fast,
    spectrum_histogram,
    walsh_batch,
    walsh_naive_batch,
    walsh_transform,
    walsh_transform_naive,
)


def functions(max_n=6):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n).map(BooleanFunction)
    )


# Reference values computed with the literal sums in tests/oracles.py.
AND2 = BooleanFunction([0, 0, 0, 1])
MAJ3 = BooleanFunction.from_hex("e8")


def test_frozen_walsh_values():
    assert walsh_transform(AND2).tolist() == [2, 2, 2, -2]
    assert walsh_transform(MAJ3).tolist() == [0, 4, 4, 0, 4, 0, 0, -4]


def test_frozen_nega_values():
    assert nega_transform_fast(AND2).tolist() == [[2, 2], [0, 0], [0, 0], [2, -2]]
    assert nega_transform_fast(BooleanFunction.zeros(2)).tolist() == [[0, 2], [2, 0], [2, 0], [0, -2]]
    assert nega_transform_fast(MAJ3).tolist() == [[4, 4]] + [[0, 0]] * 6 + [[4, -4]]
    assert nega_transform_fast(BooleanFunction.zeros(3)).values[0] == GaussianInt(-2, 2)


@settings(max_examples=80, deadline=None)
@given(functions(6))
def test_walsh_matches_literal_sum(f):
    ref = oracles.walsh(f.table.tolist(), f.n)
    assert walsh_transform(f).tolist() == ref
    assert walsh_transform_naive(f).tolist() == ref


@settings(max_examples=80, deadline=None)
@given(functions(6))
def test_nega_matches_literal_sum(f):
    ref = [list(p) for p in oracles.nega(f.table.tolist(), f.n)]
    assert nega_transform_fast(f).tolist() == ref
    assert nega_transform_direct(f).tolist() == ref


@settings(max_examples=60, deadline=None)
@given(functions(6))
def test_parseval(f):
    assert walsh_transform(f).energy() == 4 ** f.n
    assert nega_transform_fast(f).energy() == 4 ** f.n


@settings(max_examples=40, deadline=None)
@given(functions(5), st.data())
def test_autocorrelations_match_literal_sum(f, data):
    u = data.draw(st.integers(0, f.size - 1))
    t = f.table.tolist()
    assert nega_autocorrelation(f, u) == oracles.nega_autocorrelation(t, f.n, u)
    assert autocorrelation(f, u) == sum((-1) ** (t[x] ^ t[x ^ u]) for x in range(f.size))


def test_autocorrelation_vector_shift_and_errors():
    assert nega_autocorrelation(AND2, [1, 1]) == -4
    assert autocorrelation(AND2, 0) == 4
    with pytest.raises(DimensionError):
        autocorrelation(AND2, 4)
    with pytest.raises(DimensionError):
        nega_autocorrelation(AND2, [1, 0, 0])


@pytest.mark.parametrize("n", [7, 9, 13])
def test_batches_agree_beyond_property_sizes(n):
    rng = np.random.default_rng(n)
    tables = rng.integers(0, 2, (4, 1 << n), dtype=np.uint8)
    assert np.array_equal(walsh_batch(tables), walsh_naive_batch(tables))
    fr, fi = nega_fast_batch(tables)
    dr, di = nega_direct_batch(tables)
    assert np.array_equal(fr, dr) and np.array_equal(fi, di)


def test_fwht_batched_shape():
    a = np.array([[1, 1, 1, -1], [1, -1, 1, -1]])
    assert fwht(a).tolist() == [[2, 2, 2, -2], [0, 4, 0, 0]]


def test_nega_from_walsh_parity_guard():
    with pytest.raises(InternalInvariantError):
        nega_from_walsh(np.array([1, 0]))


def test_histograms_and_format():
    assert spectrum_histogram(walsh_transform(AND2)) == {2: 3, -2: 1}
    hist = spectrum_histogram(nega_transform_fast(BooleanFunction.zeros(2)))
    assert hist == {GaussianInt(0, 2): 1, GaussianInt(2, 0): 2, GaussianInt(0, -2): 1}
    assert [format_value(z) for z in (4, GaussianInt(2, 2), GaussianInt(0, -2), GaussianInt(2, -1), GaussianInt(0, 1))] == [
        "4", "2+2i", "-2i", "2-i", "i"
    ]
    assert str(GaussianInt(-2, 0)) == "-2"
    assert GaussianInt(3, 4).norm == 25
    assert -GaussianInt(1, -1) == GaussianInt(-1, 1)


def test_spectra_are_read_only():
    s = walsh_transform(AND2)
    with pytest.raises(ValueError):
        s.values[0] = 0
    assert s == walsh_transform_naive(AND2)
    assert nega_transform_fast(AND2) == nega_transform_direct(AND2)
    assert len(s) == 4 and s[3] == -2
