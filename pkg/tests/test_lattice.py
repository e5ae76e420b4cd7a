import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mbqcla.lattice import (EMPTY, PITCH, TILES, Basis, GateTile, MeasBasis, PlacementError, Role,
                            TileKind, _Canvas, Placement, breakdown, clustering_edges, fast_size,
                            layout, network_swaps, resource_report, swap_cost, table_height,
                            table_width, track_order)
from mbqcla.qcla import GateKind, Variant, build, hamming_weight, floor_log2


@pytest.fixture(scope="module")
def oop10():
    return layout(build(10, Variant.OUT_OF_PLACE))


@pytest.fixture(scope="module")
def ip10():
    return layout(build(10, Variant.IN_PLACE))


def test_tile_qubit_counts():
    assert TILES[TileKind.CNOT15].qubit_count == 15
    assert TILES[TileKind.TPG54].qubit_count == 54
    assert TILES[TileKind.SWAP12].qubit_count == 12


def test_tile_pattern_checked():
    with pytest.raises(AssertionError):
        GateTile(TileKind.WIRE, 2, 1, 1, ("x",))


def test_adaptive_only_basis_with_angle():
    MeasBasis(Basis.ADAPTIVE_XY, 0.5, (1,))
    with pytest.raises(ValueError):
        MeasBasis(Basis.X, 0.5)


def test_swap_counts_n10(oop10):
    sw = network_swaps(oop10)
    assert sw["Add"] == 30
    assert sw["P"] == 28
    assert sw["C"] == 38
    assert sw["G"] == 58
    assert sw["Add"] * TILES[TileKind.SWAP12].qubit_count == 360


def test_c_network_rounds_n10(oop10):
    per = oop10.swap_counts()
    c_rounds = [per[i] for i, r in enumerate(oop10.circuit.rounds) if r.kind.value == "C"]
    assert sorted(c_rounds) == [16, 22]


def test_g_network_rounds_n10(oop10):
    per = oop10.swap_counts()
    g = [per[i] for i, r in enumerate(oop10.circuit.rounds) if r.kind.value == "G"]
    assert g == [12, 20, 26]


@pytest.mark.parametrize("n", range(2, 65))
@pytest.mark.parametrize("v", list(Variant))
def test_height_and_width_laws(n, v):
    lay = layout(build(n, v))
    assert lay.height == 4 * (4 * n - hamming_weight(n) - floor_log2(n) + 1) - 3
    assert lay.height == table_height(n)
    assert lay.width == table_width(n, v)


@pytest.mark.parametrize("n", list(range(2, 40)) + [64, 100])
@pytest.mark.parametrize("v", list(Variant))
def test_fast_size_matches_enumeration(n, v):
    assert fast_size(n, v) == layout(build(n, v)).size


@given(st.integers(2, 40), st.sampled_from(list(Variant)))
@settings(max_examples=25, deadline=None)
def test_role_partition(n, v):
    lay = layout(build(n, v))
    b = breakdown(lay)
    assert b.total == lay.size
    assert sum(lay.role_counts().values()) == lay.size
    assert abs(sum(b.pct().values()) - 100.0) < 1e-9
    rep = resource_report(lay)
    assert rep.area == rep.width * rep.height >= rep.size_qubits


def test_sites_unique(ip10):
    coords = [(s.col, s.row) for s in ip10.sites()]
    assert len(coords) == len(set(coords)) == ip10.size


def test_tracks_at_pitch(oop10):
    for k in range(len(oop10.tracks)):
        row = oop10.track_row(k)
        assert row == PITCH * k
        assert (oop10.role[row] != EMPTY).all()


def test_inner_gap_rows_start_empty(oop10):
    # idle gap rows are never prepared
    for k in range(len(oop10.tracks) - 1):
        assert (oop10.role[PITCH * k + 2] == EMPTY).any()


def test_ports(oop10):
    rc = oop10.role_counts()
    assert rc[Role.INPUT_PORT] > 0 and rc[Role.OUTPUT_PORT] > 0


def test_overlap_is_hard_error():
    cv = _Canvas(20, 20)
    cv.stamp(Placement(TileKind.CNOT15, 0, 0, 0, 0), Role.COMPUTATION)
    with pytest.raises(PlacementError):
        cv.stamp(Placement(TileKind.CNOT15, 1, 0, 0, 1), Role.COMPUTATION)
    with pytest.raises(PlacementError):
        cv.stamp(Placement(TileKind.CNOT15, 19, 0, 0, 2), Role.COMPUTATION)


def test_clustering_edges_small():
    role = np.full((2, 3), EMPTY, dtype=np.int8)
    role[0, :] = 0
    role[1, 0] = 0
    assert clustering_edges(role) == 3


def test_monotone_size():
    for v in Variant:
        sizes = [fast_size(n, v) for n in range(2, 257)]
        assert all(a <= b for a, b in zip(sizes, sizes[1:])), v


@given(st.integers(2, 48), st.sampled_from(list(Variant)))
@settings(max_examples=25, deadline=None)
def test_swap_chains_span_track_distance(n, v):
    c = build(n, v)
    lay = layout(c)
    pos = {w: k for k, w in enumerate(lay.tracks)}
    tiles: dict[tuple[int, int], int] = {}
    for p in lay.placements:
        if p.tile is TileKind.SWAP12:
            tiles[(p.round_index, p.gate)] = tiles.get((p.round_index, p.gate), 0) + 1
    for idx, r in enumerate(c.rounds):
        for gi, g in enumerate(r.gates):
            if g.kind is GateKind.NOT:
                continue
            ps = sorted(pos[w] for w in g.wires)
            # one go and one back tile per missing neighbour
            want = 2 * sum(b - a - 1 for a, b in zip(ps, ps[1:]))
            assert tiles.get((idx, gi), 0) == want == swap_cost(pos, g)

def test_track_order_covers_wires():
    for n in (2, 10, 33):
        for v in Variant:
            assert set(track_order(n)) == set(build(n, v).wires)
