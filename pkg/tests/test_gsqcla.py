import math

import pytest
from hypothesis import given, settings, strategies as st

from mbqcla.gsqcla import (GATE_MODELS, PRINTED_CNOT4_IO, Correction, Entangle, GraphCircuit,
                           Measure, MeasurementPattern, PatternError, WiringError, chain,
                           cnot4_pattern, cnot15_pattern, concatenate, gs_entanglement_ops,
                           gs_qubit_count, gsqcla_ratio, not5_pattern, q_sums, wire_pattern)
from mbqcla.qcla import Variant


def test_cnot4_resources_and_ops():
    p = cnot4_pattern()
    assert p.resources == {1, 2, 3, 4}
    assert p.entangling_ops == 3
    assert sorted(p.edges) == [(1, 3), (2, 3), (3, 4)]
    assert p.describe() == "X4^{s3} Z4^{s2} Z1^{s2} M3^X M2^X E1,3 E2,3 E3,4"


def test_printed_cnot4_io_is_rejected():
    ins, outs = PRINTED_CNOT4_IO
    with pytest.raises(PatternError):
        MeasurementPattern(frozenset({1, 2, 3, 4}), ins, outs, cnot4_pattern().commands)


def test_pattern_invariants():
    E, M = Entangle, Measure
    with pytest.raises(PatternError):
        MeasurementPattern(frozenset({1, 2}), (1,), (3,), ())
    with pytest.raises(PatternError):  # command outside the resources
        MeasurementPattern(frozenset({1, 2}), (1,), (2,), (E(1, 5), M(1)))
    with pytest.raises(PatternError):  # entangling after measurement
        MeasurementPattern(frozenset({1, 2}), (1,), (2,), (M(1), E(1, 2)))
    with pytest.raises(PatternError):  # correction before its outcome exists
        MeasurementPattern(frozenset({1, 2}), (1,), (2,), (E(1, 2), Correction("X", 2, (1,)), M(1)))
    with pytest.raises(PatternError):  # an unmeasured non-output
        MeasurementPattern(frozenset({1, 2, 3}), (1,), (2,), (E(1, 2), E(2, 3)))
    with pytest.raises(PatternError):
        Measure(1, "X", 0.3)
    with pytest.raises(PatternError):
        Entangle(2, 2)


def test_gate_models():
    assert (GATE_MODELS["TPG"].qubit_count, GATE_MODELS["TPG"].entangling_ops) == (39, 43)
    assert (GATE_MODELS["CNOT"].qubit_count, GATE_MODELS["CNOT"].entangling_ops) == (4, 3)
    assert (GATE_MODELS["NOT"].qubit_count, GATE_MODELS["NOT"].entangling_ops) == (5, 4)


def test_two_cnot4_on_one_wire():
    p = concatenate(chain([cnot4_pattern(), cnot4_pattern()], links=[(4, 2)]))
    assert p.qubit_count == 7
    assert p.entangling_ops == 6


def test_single_pattern_unchanged():
    p = not5_pattern()
    assert concatenate(GraphCircuit((p,))) == p


@pytest.mark.parametrize("k", [1, 2, 3, 7])
def test_not5_series(k):
    p = concatenate(chain([not5_pattern()] * k))
    assert p.qubit_count == 5 * k - (k - 1)
    assert p.entangling_ops == 4 * k
    assert len(p.inputs) == len(p.outputs) == 1


def test_wiring_errors():
    a, b = not5_pattern(), not5_pattern()
    with pytest.raises(WiringError):
        GraphCircuit((a, b), {(0, 1): (1, 1)})  # 1 is not an output
    with pytest.raises(WiringError):
        GraphCircuit((a, b), {(0, 5): (1, 5)})  # 5 is not an input
    with pytest.raises(WiringError):
        GraphCircuit((a, b), {(1, 5): (0, 1)})  # backwards
    with pytest.raises(WiringError):
        GraphCircuit((a,), {(0, 5): (3, 1)})  # missing pattern
    c = cnot4_pattern()
    with pytest.raises(WiringError):
        GraphCircuit((c, c, a), {(0, 1): (2, 1), (1, 1): (2, 1)})
    with pytest.raises(WiringError):
        concatenate(GraphCircuit(()))


def test_wire_patterns_odd_only():
    assert wire_pattern(5).qubit_count == 5
    with pytest.raises(PatternError):
        wire_pattern(4)


_GATES = [not5_pattern, cnot4_pattern, cnot15_pattern, lambda: wire_pattern(3)]


@given(st.lists(st.integers(0, len(_GATES) - 1), min_size=1, max_size=8), st.data())
@settings(max_examples=1000, deadline=None)
def test_random_chains_additive(picks, data):
    ps = [_GATES[i]() for i in picks]
    wiring = {}
    for k in range(len(ps) - 1):
        if data.draw(st.booleans()):
            o = data.draw(st.sampled_from(ps[k].outputs))
            i = data.draw(st.sampled_from(ps[k + 1].inputs))
            wiring[(k, o)] = (k + 1, i)
    merged = concatenate(GraphCircuit(tuple(ps), wiring))
    assert merged.entangling_ops == sum(p.entangling_ops for p in ps)
    assert merged.qubit_count == sum(p.qubit_count for p in ps) - len(wiring)
    assert len(merged.commands) == sum(len(p.commands) for p in ps)


def test_q_sums_n10():
    assert q_sums(10) == {"Q_P": 8 + 2, "Q_G": 3 * (5 + 2 + 1), "Q_C": 3 * 4}


def test_entanglement_closed_form_n10():
    e = gs_entanglement_ops(10, Variant.OUT_OF_PLACE)
    assert e.closed_form == 224 * 10 - 129 * (2 - 3) - 46 == 2323
    assert e.census == 34 * 43 + 29 * 3
    ip = gs_entanglement_ops(10, Variant.IN_PLACE)
    # w(9) = 2, floor(log2 9) = 3
    assert ip.closed_form == 4440 - 129 * (2 - 2 - 3 - 3) - 318
    assert ip.census == 63 * 43 + 35 * 3 + 18 * 4


@pytest.mark.parametrize("v", list(Variant))
def test_smallest_n_positive(v):
    assert gs_entanglement_ops(2, v).census > 0
    assert gs_entanglement_ops(2, v).closed_form > 0
    assert gs_qubit_count(2, v).census > 0


def test_residuals_reported():
    # the residuals are surfaced, not required to vanish
    res = {(n, v): gs_entanglement_ops(n, v).residual for n in range(2, 65) for v in Variant}
    assert all(isinstance(r, int) for r in res.values())
    assert res[(10, Variant.OUT_OF_PLACE)] == 1549 - 2323


def test_qubit_count_large_n():
    oop = gs_qubit_count(1024, Variant.OUT_OF_PLACE)
    ip = gs_qubit_count(1024, Variant.IN_PLACE)
    assert abs(oop.closed_form / 1024 - 201) <= 20.1
    assert abs(ip.closed_form / oop.closed_form - 2.0) <= 0.15


def test_q_add_is_residual():
    q = gs_qubit_count(10, Variant.IN_PLACE)
    assert q.census == q.unreduced - q.removed == 2575
    assert q.q_add == q.census - q.closed_form


def test_ratio_n10():
    r = gsqcla_ratio(10)
    assert r["mbqcla_size"] == 31189
    assert 0.07 <= r["ratio_census"] <= 0.12
    assert math.isclose(r["ratio_closed_form"], r["closed_form"] / 31189)
