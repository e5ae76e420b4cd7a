"""Place abstract adders on a 2D Manhattan cluster lattice.

Geometry
--------
Logical qubits run along horizontal tracks at a pitch of four rows.  A wire
is the track row (measured in X) plus one Z-measured isolation row on each
side; the middle row of every gap is left unprepared until a tile needs it.

Columns are grouped into slots.  A Toffoli slot is 15 columns and holds up
to two concurrent rounds, each in its own 6-column lane.  CNOT slots are 6
columns and NOT slots 5.  A gate gathers its operands onto adjacent tracks
with SWAP12 tiles (3 columns x 4 rows: the departing track row plus the gap
it crosses), runs its tile, and sends the operands back along a second SWAP
strip.  Both strips lie outside the gate's track window, so they share the
lane's columns with the gate tile.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

import numpy as np

from .qcla import (AbstractCircuit, Gate, GateKind, Register, Round, Variant, Wire,
                   floor_log2, floor_log2_ratio, hamming_weight)

PITCH = 4
TOFFOLI_SLOT = 15
CNOT_SLOT = 6
NOT_SLOT = 5
LANE = 6
LANE_OFFSETS = (1, 8)
WIRE_ROWS = 3


class Basis(str, Enum):
    X = "X"
    X_ROT_PI = "XRotPi"
    Y = "Y"
    Z = "Z"
    ADAPTIVE_XY = "AdaptiveXY"


@dataclass(frozen=True)
class MeasBasis:
    kind: Basis
    angle: float = 0.0
    depends: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is not Basis.ADAPTIVE_XY and (self.angle or self.depends):
            raise ValueError("only AdaptiveXY carries an angle")


class Role(str, Enum):
    COMPUTATION = "Computation"
    HORIZ_WIRE = "HorizWire"
    VERT_SWAP = "VertSwap"
    INPUT_PORT = "InputPort"
    OUTPUT_PORT = "OutputPort"


ROLES = list(Role)
BASES = list(Basis)
EMPTY = -1
_ROLE = {r: k for k, r in enumerate(ROLES)}
_BASIS = {b: k for k, b in enumerate(BASES)}


@dataclass(frozen=True)
class Site:
    col: int
    row: int
    basis: MeasBasis
    role: Role


class TileKind(str, Enum):
    CNOT15 = "CNOT15"
    TPG54 = "TPG54"
    SWAP12 = "SWAP12"
    NOT5 = "NOT5"
    WIRE = "WIRE"


@dataclass(frozen=True)
class GateTile:
    kind: TileKind
    qubit_count: int
    width_cols: int
    height_rows: int
    pattern: tuple[str, ...] = field(repr=False, default=())

    def __post_init__(self) -> None:
        if self.pattern:
            assert len(self.pattern) == self.height_rows
            assert all(len(r) == self.width_cols for r in self.pattern)
            assert sum(ch != "." for r in self.pattern for ch in r) == self.qubit_count


# per-site basis glyphs: x=X, g=X rotated by pi, y=Y, z=Z, t=adaptive XY(pi/4)
TILES = {
    TileKind.TPG54: GateTile(TileKind.TPG54, 54, 6, 9, (
        "xtxtxx",
        "yzyyzy",
        "yzyyzy",
        "yzyyzy",
        "xxtxtx",
        "yzyyzy",
        "yzyyzy",
        "yzyyzy",
        "xtxtxx",
    )),
    TileKind.CNOT15: GateTile(TileKind.CNOT15, 15, 3, 5, (
        "xxx", "zyz", "zyz", "zyz", "xxx")),
    TileKind.SWAP12: GateTile(TileKind.SWAP12, 12, 3, 4, (
        "xyx", "yyy", "yxy", "yyy")),
    TileKind.NOT5: GateTile(TileKind.NOT5, 5, 5, 1, ("xxgxx",)),
    TileKind.WIRE: GateTile(TileKind.WIRE, 1, 1, 1, ("x",)),
}
_GLYPH = {"x": Basis.X, "g": Basis.X_ROT_PI, "y": Basis.Y, "z": Basis.Z, "t": Basis.ADAPTIVE_XY}
# each tile replaces this many wire-row sites per column it spans
WIRE_ROWS_COVERED = {TileKind.TPG54: 7, TileKind.CNOT15: 4, TileKind.SWAP12: 3, TileKind.NOT5: 1}


class PlacementError(RuntimeError):
    pass


@dataclass(frozen=True)
class Placement:
    tile: TileKind
    col: int
    row: int
    round_index: int  # position of the round in circuit.rounds
    gate: int  # index of the gate within its round
    direction: str = ""  # "go" / "back" for SWAP tiles


@dataclass(frozen=True)
class Slot:
    kind: GateKind
    start: int
    width: int
    rounds: tuple[int, ...]  # indices into circuit.rounds


# ---------------------------------------------------------------- tracks

def _trailing_ones(j: int) -> int:
    c = 0
    while j & 1:
        c += 1
        j >>= 1
    return c


def track_order(n: int) -> list[Wire]:
    """Logical wire per track, top to bottom.

    Bit j contributes a_j, b_j, an optional propagate ancilla and z_{j+1};
    z_0 sits on top.  The ancilla P_t[m] rides in bit block 2^t m + 2^(t-1) - 1,
    the block just below the lower of the two wires it is built from.
    """
    top = floor_log2(n)
    out = [Wire(Register.Z, 0)]
    from .qcla import ancilla_index
    for j in range(n):
        out += [Wire(Register.A, j), Wire(Register.B, j)]
        t = _trailing_ones(j) + 1
        num = j - (1 << (t - 1)) + 1
        if t <= top - 1 and num % (1 << t) == 0:
            m = num >> t
            if 1 <= m < n >> t:
                out.append(Wire(Register.ANCILLA, ancilla_index(n, t, m)))
        out.append(Wire(Register.Z, j + 1))
    return out


def track_blocks(n: int) -> list[list[int]]:
    """Track indices of each bit block a_j, b_j, [ancilla], z_{j+1}."""
    order = track_order(n)
    blocks: list[list[int]] = []
    for k, w in enumerate(order):
        if w.register is Register.A:
            blocks.append([])
        if blocks:
            blocks[-1].append(k)
    return blocks


def swap_cost(pos: dict[Wire, int], g: Gate) -> int:
    ps = sorted(pos[w] for w in g.wires)
    return 2 * (ps[-1] - ps[0] + 1 - len(ps))


# ---------------------------------------------------------------- widths

def table_width(n: int, variant: Variant) -> int:
    lg, l3 = floor_log2(n), floor_log2_ratio(n, 3)
    if variant is Variant.OUT_OF_PLACE:
        return 15 * (lg + l3) + 85
    return 15 * (lg + floor_log2(n - 1) + l3 + floor_log2_ratio(n - 1, 3)) + 157


def table_height(n: int) -> int:
    return 4 * (4 * n - hamming_weight(n) - floor_log2(n) + 1) - 3


# ---------------------------------------------------------------- slots

def plan_slots(c: AbstractCircuit) -> list[Slot]:
    """Column slots in spatial order.

    Non-Toffoli rounds each get a slot of their own.  Between them, Toffoli
    rounds are layered as soon as possible; rounds sharing a layer touch
    disjoint wires and share one slot, first come in the left lane.
    """
    slots: list[Slot] = []
    x = 1  # column 0 holds the input ports
    segment: list[int] = []

    def flush() -> None:
        nonlocal x, segment
        if not segment:
            return
        ready: dict[Wire, int] = {}
        layers: list[list[int]] = []
        for idx in segment:
            r = c.rounds[idx]
            wires = {w for g in r.gates for w in g.wires}
            layer = max((ready.get(w, 0) for w in wires), default=0)
            while len(layers) <= layer:
                layers.append([])
            if len(layers[layer]) == len(LANE_OFFSETS):
                raise PlacementError(f"more than {len(LANE_OFFSETS)} rounds in one layer")
            layers[layer].append(idx)
            for w in wires:
                ready[w] = layer + 1
        for group in layers:
            slots.append(Slot(GateKind.TOFFOLI, x, TOFFOLI_SLOT, tuple(group)))
            x += TOFFOLI_SLOT
        segment = []

    for idx, r in enumerate(c.rounds):
        kind = r.gate_kind
        if kind is None:
            raise PlacementError(f"round {r.label} mixes gate kinds")
        if kind is GateKind.TOFFOLI:
            segment.append(idx)
            continue
        flush()
        width = CNOT_SLOT if kind is GateKind.CNOT else NOT_SLOT
        slots.append(Slot(kind, x, width, (idx,)))
        x += width
    flush()
    return slots


# ---------------------------------------------------------------- layout

@dataclass
class LatticeLayout:
    n: int
    variant: Variant
    tracks: list[Wire]
    width: int
    height: int
    role: np.ndarray  # int8 (height, width), EMPTY where no qubit is prepared
    basis: np.ndarray  # int8 (height, width)
    placements: list[Placement]
    slots: list[Slot]
    round_columns: dict[int, tuple[int, int]]  # round index -> [start, end)
    circuit: AbstractCircuit = field(repr=False)
    adaptive_angle: float = math.pi / 4

    def track_row(self, k: int) -> int:
        return PITCH * k

    @property
    def size(self) -> int:
        return int(np.count_nonzero(self.role != EMPTY))

    def sites(self) -> Iterator[Site]:
        rows, cols = np.nonzero(self.role != EMPTY)
        for r, col in zip(rows.tolist(), cols.tolist()):
            b = BASES[self.basis[r, col]]
            mb = MeasBasis(b, self.adaptive_angle) if b is Basis.ADAPTIVE_XY else MeasBasis(b)
            yield Site(col, r, mb, ROLES[self.role[r, col]])

    def role_counts(self) -> dict[Role, int]:
        codes, counts = np.unique(self.role[self.role != EMPTY], return_counts=True)
        out = {r: 0 for r in Role}
        for k, v in zip(codes.tolist(), counts.tolist()):
            out[ROLES[k]] = v
        return out

    def swap_counts(self) -> dict[int, int]:
        """SWAP tiles per round index."""
        out = {idx: 0 for idx in self.round_columns}
        for p in self.placements:
            if p.tile is TileKind.SWAP12:
                out[p.round_index] += 1
        return out

    def copy(self) -> "LatticeLayout":
        return LatticeLayout(self.n, self.variant, list(self.tracks), self.width, self.height,
                             self.role.copy(), self.basis.copy(), list(self.placements),
                             list(self.slots), dict(self.round_columns), self.circuit,
                             self.adaptive_angle)


class _Canvas:
    def __init__(self, height: int, width: int):
        self.role = np.full((height, width), EMPTY, dtype=np.int8)
        self.basis = np.zeros((height, width), dtype=np.int8)
        self.owner = np.zeros((height, width), dtype=bool)
        self.placements: list[Placement] = []

    def stamp(self, p: Placement, role: Role) -> None:
        tile = TILES[p.tile]
        r0, c0 = p.row, p.col
        r1, c1 = r0 + tile.height_rows, c0 + tile.width_cols
        if r0 < 0 or c0 < 0 or r1 > self.role.shape[0] or c1 > self.role.shape[1]:
            raise PlacementError(f"{p.tile.value} at ({c0},{r0}) leaves the lattice")
        window = self.owner[r0:r1, c0:c1]
        mask = np.array([[ch != "." for ch in row] for row in tile.pattern])
        if (window & mask).any():
            raise PlacementError(f"{p.tile.value} for round {p.round_index} overlaps at ({c0},{r0})")
        codes = np.array([[_BASIS[_GLYPH[ch]] if ch != "." else 0 for ch in row]
                          for row in tile.pattern], dtype=np.int8)
        self.owner[r0:r1, c0:c1] |= mask
        self.role[r0:r1, c0:c1][mask] = _ROLE[role]
        self.basis[r0:r1, c0:c1][mask] = codes[mask]
        self.placements.append(p)


def layout(c: AbstractCircuit) -> LatticeLayout:
    n = c.n
    tracks = track_order(n)
    if set(tracks) != set(c.wires):
        raise PlacementError("track order does not cover the circuit's wires")
    pos = {w: k for k, w in enumerate(tracks)}
    slots = plan_slots(c)
    natural = slots[-1].start + slots[-1].width + 1 if slots else 2
    width = max(table_width(n, c.variant), natural)
    height = PITCH * (len(tracks) - 1) + 1
    canvas = _Canvas(height, width)
    round_columns: dict[int, tuple[int, int]] = {}

    for slot in slots:
        for lane, idx in enumerate(slot.rounds):
            r = c.rounds[idx]
            if slot.kind is GateKind.TOFFOLI:
                x0 = slot.start + LANE_OFFSETS[lane]
                span = (x0, x0 + LANE)
            else:
                x0 = slot.start
                span = (x0, x0 + slot.width)
            round_columns[idx] = span
            for gi, g in enumerate(r.gates):
                _place_gate(canvas, pos, g, x0, idx, gi)

    _fill_wires(canvas, len(tracks), width)
    lay = LatticeLayout(n, c.variant, tracks, width, height, canvas.role, canvas.basis,
                        canvas.placements, slots, round_columns, c)
    return lay


def _place_gate(cv: _Canvas, pos: dict[Wire, int], g: Gate, x0: int, label: int, gi: int) -> None:
    ps = sorted(pos[w] for w in g.wires)
    if g.kind is GateKind.NOT:
        cv.stamp(Placement(TileKind.NOT5, x0, PITCH * ps[0], label, gi), Role.COMPUTATION)
        return
    if g.kind is GateKind.CNOT:
        top, bottom = ps
        anchor = bottom - 1  # the upper operand travels down next to the lower one
        upper = range(top, anchor)
        lower: range = range(0)
        cv.stamp(Placement(TileKind.CNOT15, x0, PITCH * anchor, label, gi), Role.COMPUTATION)
    else:
        top, mid, bottom = ps
        anchor = mid - 1
        upper = range(top, mid - 1)
        lower = range(mid + 1, bottom)
        cv.stamp(Placement(TileKind.TPG54, x0, PITCH * anchor, label, gi), Role.COMPUTATION)
    for j in upper:  # gap (j, j+1), tile includes track row j
        for col, d in ((x0, "go"), (x0 + 3, "back")):
            cv.stamp(Placement(TileKind.SWAP12, col, PITCH * j, label, gi, d), Role.VERT_SWAP)
    for j in lower:  # gap (j, j+1), tile includes track row j+1
        for col, d in ((x0, "go"), (x0 + 3, "back")):
            cv.stamp(Placement(TileKind.SWAP12, col, PITCH * j + 1, label, gi, d), Role.VERT_SWAP)


def _fill_wires(cv: _Canvas, ntracks: int, width: int) -> None:
    free = ~cv.owner
    for k in range(ntracks):
        row = PITCH * k
        line = free[row]
        cv.role[row, line] = _ROLE[Role.HORIZ_WIRE]
        cv.basis[row, line] = _BASIS[Basis.X]
        for lining in (row - 1, row + 1):
            if 0 <= lining < cv.role.shape[0]:
                m = free[lining]
                cv.role[lining, m] = _ROLE[Role.HORIZ_WIRE]
                cv.basis[lining, m] = _BASIS[Basis.Z]
        # ports sit on the track row at the outer columns
        for col, role in ((0, Role.INPUT_PORT), (width - 1, Role.OUTPUT_PORT)):
            if free[row, col]:
                cv.role[row, col] = _ROLE[role]


# ---------------------------------------------------------------- accounting

@dataclass(frozen=True)
class Breakdown:
    computation: int
    horiz_comm: int
    vert_comm: int

    @property
    def total(self) -> int:
        return self.computation + self.horiz_comm + self.vert_comm

    def pct(self) -> dict[str, float]:
        t = self.total or 1
        return {"computation": 100.0 * self.computation / t,
                "horiz_comm": 100.0 * self.horiz_comm / t,
                "vert_comm": 100.0 * self.vert_comm / t}


@dataclass(frozen=True)
class ResourceReport:
    n: int
    variant: Variant
    size_qubits: int
    width: int
    height: int
    area: int
    clustering_ops: int
    clustering_ops_table: int
    depth_rounds: int
    breakdown: Breakdown


def clustering_edges(role: np.ndarray) -> int:
    occ = role != EMPTY
    return int(np.count_nonzero(occ[:, 1:] & occ[:, :-1]) + np.count_nonzero(occ[1:, :] & occ[:-1, :]))


def breakdown(lay: LatticeLayout) -> Breakdown:
    rc = lay.role_counts()
    return Breakdown(
        computation=rc[Role.COMPUTATION],
        horiz_comm=rc[Role.HORIZ_WIRE] + rc[Role.INPUT_PORT] + rc[Role.OUTPUT_PORT],
        vert_comm=rc[Role.VERT_SWAP],
    )


def resource_report(lay: LatticeLayout) -> ResourceReport:
    from .estimates import clustering_ops_table, mbqc_depth
    b = breakdown(lay)
    return ResourceReport(
        n=lay.n, variant=lay.variant, size_qubits=b.total, width=lay.width,
        height=lay.height, area=lay.width * lay.height,
        clustering_ops=clustering_edges(lay.role),
        clustering_ops_table=clustering_ops_table(lay.n, lay.variant),
        depth_rounds=mbqc_depth(lay.n, lay.variant), breakdown=b)


def network_swaps(lay: LatticeLayout) -> dict[str, int]:
    """SWAP tiles grouped as addition, P, G, C, InvP (and the in-place inverses)."""
    out: dict[str, int] = {}
    per = lay.swap_counts()
    for idx, r in enumerate(lay.circuit.rounds):
        kind = r.kind.value
        if kind in ("InitialAdd", "FinalAdd", "CnotFixup", "NotFixup"):
            kind = "Add"
        out[kind] = out.get(kind, 0) + per[idx]
    return out


# per-tile change against the plain wire rows it replaces: qubits - covered
_TILE_DELTA = {kind: TILES[kind].qubit_count - WIRE_ROWS_COVERED[kind] * TILES[kind].width_cols
               for kind in WIRE_ROWS_COVERED}
_GATE_TILE = {GateKind.NOT: TileKind.NOT5, GateKind.CNOT: TileKind.CNOT15,
              GateKind.TOFFOLI: TileKind.TPG54}


def fast_size(n: int, variant: Variant | str) -> int:
    """Layout size by counting, without building the lattice.

    Tiles never overlap and have no holes, so the size is the plain wire
    count (three rows per track, two for the boundary tracks) adjusted by
    each tile's delta.  Agrees exactly with ``layout(build(n, v)).size``.
    """
    from .qcla import shared_build
    v = Variant.parse(variant) if isinstance(variant, str) else variant
    c = shared_build(n, v)
    tracks = track_order(n)
    pos = {w: k for k, w in enumerate(tracks)}
    slots = plan_slots(c)
    natural = slots[-1].start + slots[-1].width + 1 if slots else 2
    width = max(table_width(n, v), natural)
    total = (WIRE_ROWS * len(tracks) - 2) * width
    for g in c.gates():
        total += _TILE_DELTA[_GATE_TILE[g.kind]]
        if g.kind is not GateKind.NOT:
            total += swap_cost(pos, g) * _TILE_DELTA[TileKind.SWAP12]
    return total
