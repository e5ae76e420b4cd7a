"""SVG and ASCII drawings of lattice layouts."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .lattice import BASES, EMPTY, PITCH, Basis, LatticeLayout
from .qcla import NETWORK_KINDS, Register

SITE_PX = 6
COLORS = {
    Basis.X: "#f7a8c8",  # pink
    Basis.X_ROT_PI: "#7ccf7c",  # green
    Basis.Y: "#e04848",  # red
    Basis.Z: "#5b8fe0",  # blue
    Basis.ADAPTIVE_XY: "#7ccf7c",  # green, drawn with a frame
}
HIGHLIGHT = "#ffe14d"
GLYPHS = {Basis.X: "x", Basis.X_ROT_PI: "g", Basis.Y: "y", Basis.Z: "z", Basis.ADAPTIVE_XY: "t"}
_NETWORK = {k.value for k in NETWORK_KINDS}


def round_boxes(lay: LatticeLayout) -> list[tuple[str, int, int, int, int]]:
    """(label, col0, row0, col1, row1) for each carry-network round, ends exclusive."""
    pos = {w: k for k, w in enumerate(lay.tracks)}
    boxes = []
    for idx, (c0, c1) in sorted(lay.round_columns.items()):
        r = lay.circuit.rounds[idx]
        if r.kind.value not in _NETWORK:
            continue
        ks = [pos[w] for g in r.gates for w in g.wires]
        row0 = max(PITCH * min(ks) - 1, 0)
        row1 = min(PITCH * max(ks) + 2, lay.height)
        boxes.append((r.label, c0, row0, c1, row1))
    return boxes


def track_index(lay: LatticeLayout, name: str) -> int:
    """Track of a wire named like ``a3``, ``b0``, ``z10`` or ``x5``."""
    reg = {"a": Register.A, "b": Register.B, "z": Register.Z, "x": Register.ANCILLA}[name[0].lower()]
    idx = int(name[1:])
    for k, w in enumerate(lay.tracks):
        if w.register is reg and w.index == idx:
            return k
    raise KeyError(f"no track for wire {name}")


def render_svg(lay: LatticeLayout | None, highlight: int | None = None, boxes: bool = True) -> str:
    """One rect per prepared site; ``highlight`` is a track index to tint yellow."""
    if lay is None:
        return ('<svg xmlns="http://www.w3.org/2000/svg" width="0" height="0" '
                'viewBox="0 0 0 0"></svg>\n')
    s = SITE_PX
    w, h = lay.width * s, lay.height * s
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
           f'viewBox="0 0 {w} {h}">',
           f'<title>{escape(f"n={lay.n} {lay.variant.value}: {lay.size} qubits")}</title>',
           f'<rect width="{w}" height="{h}" fill="white"/>']
    hl_row = PITCH * highlight if highlight is not None else None
    rows, cols = np.nonzero(lay.role != EMPTY)
    for r, c in zip(rows.tolist(), cols.tolist()):
        b = BASES[lay.basis[r, c]]
        fill = HIGHLIGHT if r == hl_row else COLORS[b]
        frame = ' stroke="#1d5e1d" stroke-width="1"' if b is Basis.ADAPTIVE_XY else ""
        out.append(f'<rect x="{c * s}" y="{r * s}" width="{s - 1}" height="{s - 1}" '
                   f'fill="{fill}"{frame}/>')
    if boxes:
        for label, c0, r0, c1, r1 in round_boxes(lay):
            out.append(f'<rect class="round" x="{c0 * s - 1}" y="{r0 * s - 1}" '
                       f'width="{(c1 - c0) * s + 1}" height="{(r1 - r0) * s + 1}" fill="none" '
                       f'stroke="black" stroke-width="1"><title>{escape(label)}</title></rect>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(lay: LatticeLayout | None) -> str:
    """One character per site, '.' where nothing is prepared."""
    if lay is None:
        return ""
    lines = []
    for r in range(lay.height):
        row = []
        for c in range(lay.width):
            code = lay.role[r, c]
            row.append("." if code == EMPTY else GLYPHS[BASES[lay.basis[r, c]]])
        lines.append("".join(row))
    return "\n".join(lines) + "\n"
