"""Acceptance criteria 1 to 11, each at its stated tolerance.

Every test records a one-line PASS/FAIL summary that is printed at the
end of the run.  Criteria that the implementation does not meet fail here
on purpose, with the measured numbers in the summary line.
"""
import io
import time
from contextlib import redirect_stdout

import numpy as np

from mbqcla import cli
from mbqcla.estimates import mbqc_depth, short_size, swap_formulas, vbe_baseline
from mbqcla.gsqcla import (GraphCircuit, cnot4_pattern, cnot15_pattern, concatenate, gs_qubit_count,
                           gsqcla_ratio, not5_pattern, wire_pattern)
from mbqcla.lattice import (EMPTY, ROLES, TILES, Role, TileKind, breakdown, layout, network_swaps,
                            table_height, table_width)
from mbqcla.optimize import bend, extract_circuit, same_logic
from mbqcla.qcla import Variant, build
from mbqcla.revsim import exhaustive_check, random_check
from mbqcla.verify import CNOT, X, eigen_replay, verify_gate

OOP, IP = Variant.OUT_OF_PLACE, Variant.IN_PLACE


def test_criterion_01_adder_correctness(record):
    t0 = time.perf_counter()
    bad = []
    cases = 0
    for v in Variant:
        for n in range(2, 7):
            rep = exhaustive_check(v, n)
            cases += rep.cases
            if not rep.passed or rep.cases != 4 ** n:
                bad.append(f"{v.short} n={n}: {rep}")
        for n in (16, 32, 64):
            rep = random_check(v, n, pairs=10_000, seed=n)
            cases += rep.cases
            if not rep.passed or rep.cases != 10_000:
                bad.append(f"{v.short} n={n}: {rep}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    record(1, ok, f"{cases} input pairs, {len(bad)} failures, {dt:.1f} s (limit 30 s)")
    assert not bad, bad
    assert dt < 30


def test_criterion_02_printed_swap_counts(record):
    t0 = time.perf_counter()
    sw = network_swaps(layout(build(10, OOP)))
    f = swap_formulas(10)
    dt = time.perf_counter() - t0
    ok = (sw["Add"], sw["P"], sw["C"], sw["G"]) == (30, 28, 38, 58) and dt < 1
    record(2, ok, f"Add={sw['Add']} P={sw['P']} C={sw['C']} G={sw['G']} "
                  f"(formula G={f['G_formula']}, text G={f['G_text']}), {dt:.2f} s")
    assert (sw["Add"], sw["P"], sw["C"]) == (30, 28, 38)
    assert sw["G"] == f["G_text"] == 58
    assert f["G_formula"] == 60
    assert dt < 1


def test_criterion_03_swap_qubits(record):
    sw = network_swaps(layout(build(10, OOP)))
    qubits = sw["Add"] * TILES[TileKind.SWAP12].qubit_count
    record(3, qubits == 360, f"{sw['Add']} SWAP12 tiles -> {qubits} qubits")
    assert qubits == 360


def test_criterion_04_geometry_laws(record):
    bad = []
    for n in range(2, 65):
        for v in Variant:
            lay = layout(build(n, v))
            if lay.height != table_height(n) or lay.width != table_width(n, v):
                bad.append((n, v.short, lay.width, lay.height))
    record(4, not bad, f"height and width laws for 2 <= n <= 64, {len(bad)} mismatches")
    assert not bad


def test_criterion_05_size_scaling(record):
    rows = []
    ok = True
    for v in (IP, OOP):
        for n in (10, 20, 40, 80):
            size = layout(build(n, v)).size
            ref = short_size(n, v)
            dev = (size - ref) / ref
            ok &= abs(dev) <= 0.15
            rows.append(f"{v.short}{n}:{100 * dev:+.1f}%")
    record(5, ok, "deviation from short form (limit 15%): " + " ".join(rows))
    assert ok, rows


def test_criterion_06_breakdown_and_gsqcla_ratio(record):
    pct = breakdown(layout(build(10, IP))).pct()
    r = gsqcla_ratio(10, IP)
    checks = [abs(pct["horiz_comm"] - 77) <= 3, abs(pct["vert_comm"] - 11) <= 3,
              abs(pct["computation"] - 12) <= 3, 0.07 <= r["ratio_census"] <= 0.12]
    record(6, all(checks),
           f"horiz {pct['horiz_comm']:.2f}% vert {pct['vert_comm']:.2f}% comp "
           f"{pct['computation']:.2f}%; GSQCLA/MBQCLA {100 * r['ratio_census']:.2f}% "
           f"(closed form {100 * r['ratio_closed_form']:.2f}%)")
    assert all(checks)


def test_criterion_07_bend(record):
    lay = layout(build(10, IP))
    t0 = time.perf_counter()
    res = bend(lay)
    died = (lay.role != EMPTY) & (res.after.role == EMPTY)
    only_wire = bool((lay.role[died] == ROLES.index(Role.HORIZ_WIRE)).all())
    same = same_logic(extract_circuit(res.after), lay.circuit)
    dt = time.perf_counter() - t0
    ok = res.removed >= 3400 and res.relative >= 0.10 and only_wire and same and dt < 1
    record(7, ok, f"removed {res.removed} ({100 * res.relative:.2f}%), only HorizWire "
                  f"{only_wire}, logic unchanged {same}, {dt:.2f} s")
    assert res.removed >= 3400 and res.relative >= 0.10
    assert only_wire and same
    assert dt < 1


def test_criterion_08_depth_crossover(record):
    t0 = time.perf_counter()
    r128 = vbe_baseline(128)["depth"] / mbqc_depth(128, OOP)
    r512 = vbe_baseline(512)["depth"] / mbqc_depth(512, OOP)
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(["compare", "--max-n", "1024"])
    rows = [l.split(",") for l in buf.getvalue().splitlines()[1:]]
    depth = {(s, int(n)): int(d) for s, n, _, d, _ in rows}
    ns = sorted({n for s, n in depth if s == "vbe"})
    vbe_linear = all(depth[("vbe", n)] == 3 * n for n in ns)
    mb_log = all(depth[("out_of_place", n)] <= 4 * np.log2(n) + 13 for n in ns)
    ordered = all(depth[("vbe", n)] > depth[("in_place", n)] > depth[("out_of_place", n)]
                  for n in ns if n >= 32)
    dt = time.perf_counter() - t0
    ok = r128 >= 8 and r512 >= 9 and code == 0 and vbe_linear and mb_log and ordered and dt < 5
    record(8, ok, f"VBE/oop depth {r128:.2f} at 128, {r512:.2f} at 512; compare rows "
                  f"{len(rows)} up to n={ns[-1]}, ordering holds {ordered}, {dt:.1f} s")
    assert r128 >= 8 and r512 >= 9
    assert code == 0 and ns[0] == 2 and ns[-1] == 1024
    assert vbe_linear and mb_log and ordered
    assert dt < 5


def test_criterion_09_gsqcla_asymptotics(record):
    oop = gs_qubit_count(1024, OOP).closed_form
    ip = gs_qubit_count(1024, IP).closed_form
    per_n, ratio = oop / 1024, ip / oop
    rng = np.random.default_rng(0)
    lib = [not5_pattern, cnot4_pattern, cnot15_pattern, lambda: wire_pattern(3)]
    broken = 0
    for _ in range(1000):
        ps = [lib[i]() for i in rng.integers(0, len(lib), size=rng.integers(1, 9))]
        wiring = {}
        for k in range(len(ps) - 1):
            if rng.random() < 0.8:
                o = ps[k].outputs[rng.integers(len(ps[k].outputs))]
                i = ps[k + 1].inputs[rng.integers(len(ps[k + 1].inputs))]
                wiring[(k, o)] = (k + 1, i)
        m = concatenate(GraphCircuit(tuple(ps), wiring))
        broken += m.entangling_ops != sum(p.entangling_ops for p in ps)
    ok = 181 <= per_n <= 221 and 1.85 <= ratio <= 2.15 and broken == 0
    record(9, ok, f"oop qubits/n {per_n:.2f}, ip/oop {ratio:.3f}, "
                  f"additivity broken in {broken}/1000 chains")
    assert 181 <= per_n <= 221
    assert 1.85 <= ratio <= 2.15
    assert broken == 0


def test_criterion_10_pattern_verification(record):
    t0 = time.perf_counter()
    not5 = verify_gate(not5_pattern(), X)
    cnot4 = verify_gate(cnot4_pattern(), CNOT)
    eigen = eigen_replay()
    cnot15 = verify_gate(cnot15_pattern(), CNOT, seed=0)
    dt = time.perf_counter() - t0
    not5_ok = not5.passed and not5.branch_count == 8
    inputs = len({r.inputs for r in not5.results})
    eigen_ok = len(eigen) == 12 and all(ok for *_, ok in eigen)
    ok = not5_ok and cnot4.passed and cnot4.branch_count == 4 and eigen_ok and dt < 10
    record(10, ok, f"NOT5 vs X {'pass' if not5.passed else 'fail'} ({not5.branch_count} branches "
                   f"x {inputs} inputs, min fidelity {not5.min_fidelity:.3g}); CNOT4 "
                   f"{'pass' if cnot4.passed else 'fail'} ({cnot4.branch_count} branches); "
                   f"eigen equations {sum(ok for *_, ok in eigen)}/12; CNOT15 best effort "
                   f"{'pass' if cnot15.passed else 'fail'} ({cnot15.branch_count} sampled); "
                   f"{dt:.1f} s")
    assert cnot4.passed and cnot4.branch_count == 4
    assert eigen_ok
    assert dt < 10
    assert not5.branch_count == 8
    assert not5.passed


def test_criterion_11_determinism(record):
    runs = [["gen", "--n", "10", "--variant", "ip"], ["layout", "--n", "10", "--format", "svg"],
            ["layout", "--n", "10", "--variant", "ip", "--format", "json"],
            ["estimate", "--n", "10", "--variant", "ip"], ["compare", "--max-n", "64"]]
    same = []
    for argv in runs:
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            with redirect_stdout(buf):
                cli.main(argv)
            outs.append(buf.getvalue().encode("utf-8"))
        same.append(outs[0] == outs[1] and len(outs[0]) > 0)
    record(11, all(same), f"{sum(same)}/{len(runs)} commands byte-identical across two runs")
    assert all(same)
