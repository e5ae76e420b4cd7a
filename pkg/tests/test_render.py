import xml.etree.ElementTree as ET

import pytest

from mbqcla.lattice import layout
from mbqcla.qcla import Variant, build
from mbqcla.render import COLORS, HIGHLIGHT, render_ascii, render_svg, round_boxes, track_index

NS = "{http://www.w3.org/2000/svg}"


@pytest.mark.parametrize("v,boxes", [(Variant.OUT_OF_PLACE, 9), (Variant.IN_PLACE, 18)])
def test_round_boxes_n10(v, boxes):
    lay = layout(build(10, v))
    assert len(round_boxes(lay)) == boxes
    root = ET.fromstring(render_svg(lay))
    assert len([r for r in root.iter(NS + "rect") if r.get("class") == "round"]) == boxes


def test_one_rect_per_site():
    lay = layout(build(4, Variant.OUT_OF_PLACE))
    root = ET.fromstring(render_svg(lay, boxes=False))
    rects = list(root.iter(NS + "rect"))
    assert len(rects) == lay.size + 1  # plus the background
    assert {r.get("fill") for r in rects[1:]} <= set(COLORS.values())


def test_empty_layout():
    root = ET.fromstring(render_svg(None))
    assert root.tag == NS + "svg"
    assert list(root) == []
    assert render_ascii(None) == ""


def test_highlight():
    lay = layout(build(4, Variant.OUT_OF_PLACE))
    k = track_index(lay, "b3")
    svg = render_svg(lay, highlight=k)
    assert svg.count(HIGHLIGHT) == lay.width
    with pytest.raises(KeyError):
        track_index(lay, "b9")


def test_ascii_shape():
    lay = layout(build(3, Variant.IN_PLACE))
    lines = render_ascii(lay).splitlines()
    assert len(lines) == lay.height
    assert all(len(l) == lay.width for l in lines)
    assert sum(ch != "." for l in lines for ch in l) == lay.size
