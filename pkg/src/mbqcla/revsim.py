"""Basis-state simulation of reversible circuits.

Every wire holds one bit.  Batches of inputs are simulated together: each
wire becomes a numpy bool vector over the batch, so a gate is one vector
AND/XOR.  This is the correctness oracle for the generated adders.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .qcla import AbstractCircuit, Gate, Register, Variant, Wire


class MissingWireError(KeyError):
    pass


def apply_gate(s: Mapping[Wire, int], g: Gate) -> dict[Wire, int]:
    """Return a new bit assignment with ``g`` applied (empty AND is 1)."""
    out = dict(s)
    missing = [w for w in g.wires if w not in out]
    if missing:
        raise MissingWireError(f"wire {missing[0]} not in state")
    out[g.target] ^= int(all(out[c] for c in g.controls))
    return out


def run_bits(c: AbstractCircuit, s: Mapping[Wire, int], reverse: bool = False) -> dict[Wire, int]:
    """Run the circuit (or its gate-wise reverse) on one bit assignment."""
    gates = list(c.gates())
    if reverse:
        gates.reverse()
    out = dict(s)
    for g in gates:
        out = apply_gate(out, g)
    return out


def _bits(values: np.ndarray, n: int) -> np.ndarray:
    """(n, batch) bool matrix of the low n bits of uint64 ``values``."""
    shifts = np.arange(n, dtype=np.uint64)[:, None]
    return ((values[None, :] >> shifts) & np.uint64(1)).astype(bool)


def _pack(bits: np.ndarray) -> np.ndarray:
    """Inverse of :func:`_bits`; values returned as Python ints (n may be 65)."""
    out = np.zeros(bits.shape[1], dtype=object)
    for i in range(bits.shape[0]):
        out += bits[i].astype(object) * (1 << i)
    return out


def _simulate_batch(c: AbstractCircuit, a: np.ndarray, b: np.ndarray) -> dict[str, np.ndarray]:
    n = c.n
    index = {w: k for k, w in enumerate(c.wires)}
    state = np.zeros((len(c.wires), a.size), dtype=bool)
    a_bits, b_bits = _bits(a, n), _bits(b, n)
    for i in range(n):
        state[index[Wire(Register.A, i)]] = a_bits[i]
        state[index[Wire(Register.B, i)]] = b_bits[i]
    for g in c.gates():
        t = index[g.target]
        if not g.controls:
            state[t] ^= True
        elif len(g.controls) == 1:
            state[t] ^= state[index[g.controls[0]]]
        else:
            state[t] ^= state[index[g.controls[0]]] & state[index[g.controls[1]]]

    def reg(r: Register, size: int) -> np.ndarray:
        return _pack(np.stack([state[index[Wire(r, i)]] for i in range(size)]))

    anc = [index[w] for w in c.wires if w.register is Register.ANCILLA]
    return {
        "a_out": reg(Register.A, n),
        "b_out": reg(Register.B, n),
        "z_out": reg(Register.Z, n + 1),
        "ancilla_out": _pack(state[anc]) if anc else np.zeros(a.size, dtype=object),
    }


def simulate(c: AbstractCircuit, a: int, b: int) -> dict[str, int]:
    """Outputs for one input pair, plus ``sum`` read from the result register."""
    if not (0 <= a < 1 << c.n and 0 <= b < 1 << c.n):
        raise ValueError(f"inputs must lie in [0, 2^{c.n})")
    out = _simulate_batch(c, np.array([a], dtype=np.uint64), np.array([b], dtype=np.uint64))
    res = {k: int(v[0]) for k, v in out.items()}
    res["sum"] = _result(c, res)
    return res


def _result(c: AbstractCircuit, res: Mapping[str, int]) -> int:
    if c.variant is Variant.OUT_OF_PLACE:
        return res["z_out"]
    return res["b_out"] | (res["z_out"] >> c.n) << c.n


def _expected(c: AbstractCircuit, a: int, b: int) -> dict[str, int]:
    n = c.n
    if c.variant is Variant.OUT_OF_PLACE:
        return {"a_out": a, "b_out": b, "z_out": a + b, "ancilla_out": 0}
    # low carry bits Z[0..n-1] must come back clean; only Z[n] keeps the carry
    return {"a_out": a, "b_out": (a + b) & ((1 << n) - 1),
            "z_out": ((a + b) >> n) << n, "ancilla_out": 0}


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    cases: int
    counterexample: dict | None = field(default=None)

    def __str__(self) -> str:
        if self.passed:
            return f"pass ({self.cases} cases)"
        ce = self.counterexample
        return (f"FAIL at a={ce['a']} b={ce['b']}: expected {ce['expected']}, "
                f"got {ce['got']}")


def check_pairs(c: AbstractCircuit, a: Iterable[int], b: Iterable[int],
                chunk: int = 1 << 16) -> CheckReport:
    a_arr = np.asarray(list(a), dtype=np.uint64)
    b_arr = np.asarray(list(b), dtype=np.uint64)
    done = 0
    for lo in range(0, a_arr.size, chunk):
        aa, bb = a_arr[lo:lo + chunk], b_arr[lo:lo + chunk]
        out = _simulate_batch(c, aa, bb)
        av, bv = aa.astype(object), bb.astype(object)
        exp = {"a_out": av, "b_out": bv}
        if c.variant is Variant.OUT_OF_PLACE:
            exp["z_out"] = av + bv
        else:
            exp["b_out"] = (av + bv) & ((1 << c.n) - 1)
            exp["z_out"] = ((av + bv) >> c.n) << c.n
        exp["ancilla_out"] = np.zeros(aa.size, dtype=object)
        bad = np.zeros(aa.size, dtype=bool)
        for key, val in exp.items():
            bad |= out[key] != val
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            ai, bi = int(aa[k]), int(bb[k])
            return CheckReport(False, done + k + 1, {
                "a": ai, "b": bi, "expected": _expected(c, ai, bi),
                "got": {key: int(out[key][k]) for key in exp}})
        done += aa.size
    return CheckReport(True, done)


def exhaustive_check(variant: Variant | str, n: int) -> CheckReport:
    """All 4^n input pairs; limited to n <= 8."""
    from .qcla import build
    if n > 8:
        raise ValueError("exhaustive check is limited to n <= 8")
    c = build(n, variant)
    grid = np.arange(1 << n, dtype=np.uint64)
    a, b = np.meshgrid(grid, grid, indexing="ij")
    return check_pairs(c, a.ravel(), b.ravel())


def random_check(variant: Variant | str, n: int, pairs: int = 10_000, seed: int = 0) -> CheckReport:
    from .qcla import build
    c = build(n, variant)
    rng = np.random.default_rng(seed)
    hi = np.uint64((1 << n) - 1) if n < 64 else np.uint64(2**64 - 1)
    a = rng.integers(0, hi, size=pairs, dtype=np.uint64, endpoint=True)
    b = rng.integers(0, hi, size=pairs, dtype=np.uint64, endpoint=True)
    return check_pairs(c, a, b)
