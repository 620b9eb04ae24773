import math

import numpy as np
import pytest

from lr_horizon import (
    CouplingModel,
    LatticeSpec,
    chain,
    coupling,
    coupling_matrix,
    coupling_row,
    distance,
    distances_from,
    ring,
)


def test_site_count_is_power_of_linear_size():
    assert ring(6).site_count == 6
    assert LatticeSpec(dimension=2, linear_size=5, boundary="open").site_count == 25
    assert LatticeSpec(dimension=3, linear_size=4, boundary="periodic").site_count == 64


@pytest.mark.parametrize("bad", [0, -1, 1])
def test_linear_size_must_be_at_least_two(bad):
    with pytest.raises(ValueError):
        LatticeSpec(dimension=1, linear_size=bad, boundary="open")


def test_bad_boundary_rejected():
    with pytest.raises(ValueError):
        LatticeSpec(dimension=1, linear_size=4, boundary="twisted")


def test_index_coordinate_roundtrip():
    spec = LatticeSpec(dimension=2, linear_size=4, boundary="open")
    for i in range(spec.site_count):
        assert spec.coords_to_index(spec.index_to_coords(i)) == i


def test_ring_distance_wraps():
    spec = ring(6)
    assert distance(spec, 1, 5) == 2  # min(4, 2)
    assert distance(spec, 0, 3) == 3


def test_distance_identity_is_zero():
    for spec in (ring(6), chain(9), LatticeSpec(dimension=2, linear_size=3, boundary="open")):
        assert distance(spec, 2, 2) == 0.0


def test_open_2d_corner_to_corner():
    spec = LatticeSpec(dimension=2, linear_size=3, boundary="open")
    i = spec.coords_to_index((0, 0))
    j = spec.coords_to_index((2, 2))
    assert distance(spec, i, j) == pytest.approx(math.sqrt(8), rel=1e-12)


def test_distance_index_out_of_range():
    with pytest.raises(ValueError):
        distance(ring(4), 0, 4)


@pytest.mark.parametrize("spec", [ring(12), chain(12), LatticeSpec(dimension=2, linear_size=4, boundary="open")])
def test_distance_symmetry_and_triangle_inequality(spec):
    n = spec.site_count
    d = np.array([[distance(spec, i, j) for j in range(n)] for i in range(n)])
    assert np.allclose(d, d.T)
    assert np.all(d[~np.eye(n, dtype=bool)] >= 1.0)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert d[i, j] <= d[i, k] + d[k, j] + 1e-12


def test_coupling_examples():
    assert coupling(ring(6), CouplingModel(alpha=0.5), 1, 5) == pytest.approx(2**-0.5)
    assert coupling(ring(6), CouplingModel(alpha=0.0), 1, 5) == 1.0
    assert coupling(ring(8), CouplingModel(alpha=2.0), 0, 4) == pytest.approx(0.0625)


def test_self_coupling_rejected():
    with pytest.raises(ValueError):
        coupling(ring(6), CouplingModel(alpha=1.0), 3, 3)


def test_negative_alpha_rejected():
    with pytest.raises(ValueError):
        CouplingModel(alpha=-0.1)


@pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 1.0, 2.0, 3.0])
def test_coupling_symmetry_grid(alpha):
    spec = ring(20)
    model = CouplingModel(alpha=alpha)
    J = coupling_matrix(spec, model)
    assert np.allclose(J, J.T)
    assert np.all(J[~np.eye(20, dtype=bool)] > 0)
    assert np.all(np.diag(J) == 0)


def test_coupling_monotone_in_distance():
    spec = chain(15)
    model = CouplingModel(alpha=0.75)
    row = coupling_row(spec, model, 0)
    # distances from site 0 on an open chain increase with index
    assert all(row[j] > row[j + 1] for j in range(1, 14))


def test_ring_translational_invariance():
    spec = ring(10)
    model = CouplingModel(alpha=0.5)
    for shift in range(1, 10):
        assert coupling(spec, model, 0, shift) == pytest.approx(
            coupling(spec, model, 3, (3 + shift) % 10), rel=1e-14
        )


def test_distances_from_matches_pairwise():
    spec = LatticeSpec(dimension=2, linear_size=4, boundary="periodic")
    d = distances_from(spec, 5)
    assert d.shape == (16,)
    for j in range(16):
        assert d[j] == pytest.approx(distance(spec, 5, j), rel=1e-14)


def test_coupling_row_zero_self_entry():
    row = coupling_row(ring(8), CouplingModel(alpha=1.0), 3)
    assert row[3] == 0.0
    assert row.sum() == pytest.approx(1 + 1 + 0.5 + 0.5 + 1 / 3 + 1 / 3 + 0.25)


def test_specs_are_immutable():
    spec = ring(8)
    with pytest.raises(Exception):
        spec.linear_size = 9
