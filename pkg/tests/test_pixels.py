import numpy as np
import pytest

import regioncut as rc
from oracles import count_regional_minima


def _grid1(values):
    return rc.ScoreGrid(np.asarray(values, dtype=np.float64)[:, :, None])


def _dyadic(rng, shape, scale=64):
    # multiples of 1/64: float arithmetic on these is exact
    return rng.integers(0, 4096, shape) / scale


# --- watershed ---------------------------------------------------------------


def test_watershed_constant_map_single_region():
    spx = rc.watershed(_grid1(np.full((5, 7), 3.25)))
    assert spx.region_count == 1


def test_watershed_two_basins_ridge_joins_left():
    spx = rc.watershed(_grid1([[0.0, 0.0, 9.0, 0.0, 0.0]]))
    assert spx.region_count == 2
    assert spx.region_of.tolist() == [[0, 0, 0, 1, 1]]


def test_watershed_rejects_multichannel():
    with pytest.raises(rc.ValidationError):
        rc.watershed(rc.ScoreGrid(np.zeros((4, 4, 2))))
    with pytest.raises(rc.ValidationError):
        rc.watershed(_grid1(np.zeros((4, 4))), quantization_levels=1)


def test_watershed_partitions_and_matches_minima_count():
    for seed in range(25):
        rng = np.random.default_rng(seed)
        values = _dyadic(rng, (16, 16))
        spx = rc.watershed(_grid1(values))
        sizes = np.bincount(spx.region_of.ravel(), minlength=spx.region_count)
        assert sizes.sum() == 256
        assert (sizes > 0).all()
        assert spx.region_count == count_regional_minima(values, 256)


def test_watershed_region_ids_ordered_by_first_pixel():
    rng = np.random.default_rng(3)
    spx = rc.watershed(_grid1(_dyadic(rng, (12, 12))))
    firsts = []
    flat = spx.region_of.ravel()
    for rid in range(spx.region_count):
        firsts.append(int(np.flatnonzero(flat == rid)[0]))
    assert firsts == sorted(firsts)


def test_watershed_shift_invariant_bit_exact():
    rng = np.random.default_rng(8)
    values = _dyadic(rng, (16, 16))
    base = rc.watershed(_grid1(values))
    for offset in (7.25, -128.5, 1024.0):
        shifted = rc.watershed(_grid1(values + offset))
        assert np.array_equal(base.region_of, shifted.region_of)


def test_watershed_fewer_levels_fewer_regions():
    rng = np.random.default_rng(11)
    values = _dyadic(rng, (24, 24))
    fine = rc.watershed(_grid1(values), 256)
    coarse = rc.watershed(_grid1(values), 8)
    assert coarse.region_count <= fine.region_count


# --- derive_background -------------------------------------------------------


def test_derive_background_max_of_rest():
    grid = rc.ScoreGrid(np.array([[[-1.0, -3.0, -2.0]]]))  # road, sky, car
    out = rc.derive_background(grid, [2])
    assert out.channels == 2
    assert out.values[0, 0, 0] == -1.0  # max(road, sky)
    assert out.values[0, 0, 1] == -2.0  # car


def test_derive_background_single_rest_channel_verbatim():
    rng = np.random.default_rng(4)
    grid = rc.ScoreGrid(rng.normal(0, 1, (5, 6, 4)))
    out = rc.derive_background(grid, [1, 3, 2])
    assert np.array_equal(out.values[:, :, 0], grid.values[:, :, 0])
    assert np.array_equal(out.values[:, :, 1], grid.values[:, :, 1])
    assert np.array_equal(out.values[:, :, 2], grid.values[:, :, 3])
    assert np.array_equal(out.values[:, :, 3], grid.values[:, :, 2])


def test_derive_background_19_to_9_channels():
    # 19 semantic channels, 8 instance classes -> 9 output channels
    rng = np.random.default_rng(5)
    grid = rc.ScoreGrid(rng.normal(0, 1, (4, 4, 19)))
    instance_channels = [11, 12, 13, 14, 15, 16, 17, 18]
    out = rc.derive_background(grid, instance_channels)
    assert out.channels == 9
    excluded = [c for c in range(19) if c not in instance_channels]
    for c in excluded:
        assert (out.values[:, :, 0] >= grid.values[:, :, c]).all()


def test_derive_background_commutes_with_rest_permutation():
    rng = np.random.default_rng(6)
    grid = rc.ScoreGrid(rng.normal(0, 1, (3, 3, 5)))
    out = rc.derive_background(grid, [4])
    permuted = rc.ScoreGrid(grid.values[:, :, [2, 0, 3, 1, 4]])
    out2 = rc.derive_background(permuted, [4])
    assert np.array_equal(out.values, out2.values)


def test_derive_background_rejects_bad_subsets():
    grid = rc.ScoreGrid(np.zeros((2, 2, 3)))
    with pytest.raises(rc.ValidationError):
        rc.derive_background(grid, [])
    with pytest.raises(rc.ValidationError):
        rc.derive_background(grid, [0, 1, 2])
    with pytest.raises(rc.ValidationError):
        rc.derive_background(grid, [3])
    with pytest.raises(rc.ValidationError):
        rc.derive_background(grid, [1, 1])


# --- sigmoid_edge_probability ------------------------------------------------


def test_sigmoid_midpoint():
    assert rc.sigmoid_edge_probability(0.0) == 0.5


def test_sigmoid_saturation():
    assert rc.sigmoid_edge_probability(40.0) == pytest.approx(1.0, abs=1e-9)
    assert rc.sigmoid_edge_probability(-40.0) == pytest.approx(0.0, abs=1e-9)


def test_sigmoid_symmetry():
    for b in (-3.0, -1.0, 0.5, 2.0):
        total = rc.sigmoid_edge_probability(b) + rc.sigmoid_edge_probability(-b)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_sigmoid_monotone_and_bounded():
    xs = np.linspace(-30, 30, 201)
    ps = rc.sigmoid_edge_probability(xs)
    assert (np.diff(ps) > 0).all()
    assert (ps > 0).all() and (ps < 1).all()


def test_sigmoid_rejects_non_finite():
    with pytest.raises(rc.ValidationError):
        rc.sigmoid_edge_probability(float("nan"))
