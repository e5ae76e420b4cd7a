"""Bent-network compaction of in-place layouts.

Where a contiguous group of tracks carries nothing but wire for a run of
consecutive Toffoli slots, that stretch of wire implements the identity.
Bending the group lets its qubits skip the stretch, so the wire sites go.
No tile moves, so every gate keeps its operands and neighbours.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .lattice import (EMPTY, PITCH, ROLES, WIRE_ROWS, LatticeLayout, Role, Slot, TileKind,
                      PlacementError)
from .qcla import (AbstractCircuit, GateKind, Round, Variant, circuit_to_dict)

_HW = ROLES.index(Role.HORIZ_WIRE)


@dataclass(frozen=True)
class SubregisterMove:
    first_track: int
    last_track: int
    first_slot: int  # index into layout.slots
    last_slot: int

    @property
    def A(self) -> int:
        return self.last_track - self.first_track + 1

    @property
    def C(self) -> int:
        return self.last_slot - self.first_slot + 1

    @property
    def track_group(self) -> range:
        return range(self.first_track, self.last_track + 1)


def reduction_estimate(moves: list[SubregisterMove] | list[tuple[int, int]], W: int) -> int:
    """Sum of C * A * W over the moves; plain (C, A) pairs are accepted too."""
    if W <= 0:
        raise ValueError("W must be positive")
    total = 0
    for m in moves:
        c, a = (m.C, m.A) if isinstance(m, SubregisterMove) else m
        total += c * a * W
    return total


def site_width(lay: LatticeLayout) -> int:
    """Wire sites one logical qubit spends crossing one Toffoli slot."""
    widths = {s.width for s in lay.slots if s.kind is GateKind.TOFFOLI}
    if len(widths) != 1:
        raise PlacementError("layout has no uniform Toffoli slot width")
    return widths.pop() * WIRE_ROWS


def _track_rows(k: int) -> tuple[int, int, int]:
    r = PITCH * k
    return (r - 1, r, r + 1)


def idle_matrix(lay: LatticeLayout) -> np.ndarray:
    """idle[k, s] is True when track k is pure wire across Toffoli slot s.

    The two boundary tracks have only one isolation row and never move.
    """
    ntr, nsl = len(lay.tracks), len(lay.slots)
    idle = np.zeros((ntr, nsl), dtype=bool)
    hw = lay.role == _HW
    # a track is idle where its row and both isolation rows are wire
    rows = np.arange(1, ntr - 1) * PITCH
    track_hw = hw[rows - 1] & hw[rows] & hw[rows + 1]
    for s, slot in enumerate(lay.slots):
        if slot.kind is GateKind.TOFFOLI:
            idle[1:ntr - 1, s] = track_hw[:, slot.start:slot.start + slot.width].all(axis=1)
    return idle


def _runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Inclusive (start, end) of each run of True."""
    d = np.diff(np.concatenate(([0], mask.astype(np.int8), [0])))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1) - 1
    return list(zip(starts.tolist(), ends.tolist()))


def plan_moves(lay: LatticeLayout) -> list[SubregisterMove]:
    """Greedy choice among maximal idle track-group x slot-run rectangles.

    Each track joins at most one subregister.  Larger C*A goes first; ties go
    to the outer (lower-index) track, then the earlier slot.
    """
    idle = idle_matrix(lay)
    ntr = idle.shape[0]
    cands: list[tuple[int, int, int, int, int]] = []
    for k0 in range(1, ntr - 1):
        col = idle[k0].copy()
        for k1 in range(k0, ntr - 1):
            col &= idle[k1]
            if not col.any():
                break
            c = k1 - k0 + 1
            for s0, s1 in _runs(col):
                cands.append((-c * (s1 - s0 + 1), k0, s0, -(s1 - s0 + 1), k1))
    cands.sort()
    used = bytearray(ntr)
    plan: list[SubregisterMove] = []
    for _, k0, s0, neg_a, k1 in cands:
        if used.find(1, k0, k1 + 1) != -1:
            continue
        used[k0:k1 + 1] = b"\x01" * (k1 - k0 + 1)
        plan.append(SubregisterMove(k0, k1, s0, s0 - neg_a - 1))
    plan.sort(key=lambda m: m.first_track)
    return plan


@dataclass
class BendResult:
    before: LatticeLayout
    after: LatticeLayout
    moves: list[SubregisterMove]
    W: int

    @property
    def removed(self) -> int:
        return self.before.size - self.after.size

    @property
    def relative(self) -> float:
        return self.removed / self.before.size if self.before.size else 0.0

    def plan_json(self) -> str:
        return json.dumps({"W": self.W, "moves": [
            {**asdict(m), "A": m.A, "C": m.C} for m in self.moves]}, indent=2)


def apply_moves(lay: LatticeLayout, moves: list[SubregisterMove]) -> LatticeLayout:
    out = lay.copy()
    seen: set[int] = set()
    for m in moves:
        if seen.intersection(m.track_group):
            raise PlacementError("a track may belong to only one subregister")
        seen.update(m.track_group)
        if m.first_track < 1 or m.last_track > len(lay.tracks) - 2:
            raise PlacementError("boundary tracks cannot be bent")
        for s in range(m.first_slot, m.last_slot + 1):
            slot: Slot = lay.slots[s]
            if slot.kind is not GateKind.TOFFOLI:
                raise PlacementError("moves span Toffoli slots only")
            cols = slice(slot.start, slot.start + slot.width)
            for k in m.track_group:
                rows = list(_track_rows(k))
                block = out.role[rows, cols]
                if not (block == _HW).all():
                    raise PlacementError(f"move over track {k} slot {s} would cut a tile")
                out.role[rows, cols] = EMPTY
    return out


def bend(lay: LatticeLayout, moves: list[SubregisterMove] | None = None) -> BendResult:
    if lay.variant is not Variant.IN_PLACE:
        raise ValueError("bending applies to in-place layouts")
    plan = plan_moves(lay) if moves is None else list(moves)
    after = apply_moves(lay, plan)
    return BendResult(lay, after, plan, site_width(lay))


def extract_circuit(lay: LatticeLayout) -> AbstractCircuit:
    """Rebuild the gate list from the layout's tiles and their tracks.

    Only placement records and the track map are read, so this catches any
    transformation that moved or lost a tile.
    """
    from .qcla import Gate, _finish
    src = lay.circuit
    found: dict[int, dict[int, Gate]] = {i: {} for i in range(len(src.rounds))}
    tile_of = {GateKind.TOFFOLI: TileKind.TPG54, GateKind.CNOT: TileKind.CNOT15,
               GateKind.NOT: TileKind.NOT5}
    pos = {w: k for k, w in enumerate(lay.tracks)}
    for p in lay.placements:
        if p.tile is TileKind.SWAP12:
            continue
        g = src.rounds[p.round_index].gates[p.gate]
        if tile_of[g.kind] is not p.tile:
            raise PlacementError("tile kind does not match gate")
        ps = sorted(pos[w] for w in g.wires)
        anchor = ps[0] if g.kind is GateKind.NOT else ps[1] - 1
        if p.row != PITCH * anchor:
            raise PlacementError("tile is not on its operand tracks")
        if lay.role[p.row, p.col] == EMPTY:
            raise PlacementError("tile sites were removed")
        found[p.round_index][p.gate] = g
    rounds = []
    for idx, r in enumerate(src.rounds):
        got = found[idx]
        rounds.append(Round(r.kind, r.t, tuple(got[i] for i in sorted(got))))
    return _finish(src.n, src.variant, rounds)


def same_logic(a: AbstractCircuit, b: AbstractCircuit) -> bool:
    return circuit_to_dict(a) == circuit_to_dict(b)
