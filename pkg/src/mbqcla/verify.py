"""Dense statevector checks for small measurement patterns.

Each qubit id owns one tensor axis.  Measurements project and remove the
axis, so a pattern's state only ever holds its live qubits.  Outcomes are
forced per branch; every branch of a pattern is enumerated when there are
at most 2^10 of them and sampled otherwise.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .gsqcla import Correction, Entangle, Measure, MeasurementPattern, PatternError

MAX_QUBITS = 20
FIDELITY_TOL = 1e-8
PROB_EPS = 1e-12

PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)
MINUS = np.array([1, -1], dtype=complex) / math.sqrt(2)
ZERO = np.array([1, 0], dtype=complex)
ONE = np.array([0, 1], dtype=complex)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


class CapacityError(RuntimeError):
    pass


class BranchError(RuntimeError):
    pass


@dataclass
class StateVector:
    """Amplitudes as a tensor with one axis per qubit, in ``order``."""
    amplitudes: np.ndarray
    order: list[int]

    def __post_init__(self) -> None:
        if len(self.order) > MAX_QUBITS:
            raise CapacityError(f"{len(self.order)} qubits exceeds {MAX_QUBITS}")
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape((2,) * len(self.order))

    @classmethod
    def product(cls, states: Mapping[int, np.ndarray]) -> "StateVector":
        if len(states) > MAX_QUBITS:
            raise CapacityError(f"{len(states)} qubits exceeds {MAX_QUBITS}")
        amp = np.ones((), dtype=complex)
        order = []
        for q, s in states.items():
            amp = np.multiply.outer(amp, np.asarray(s, dtype=complex))
            order.append(q)
        return cls(amp, order)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def axis(self, q: int) -> int:
        try:
            return self.order.index(q)
        except ValueError:
            raise PatternError(f"qubit {q} is not in the state") from None

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), list(self.order))

    def apply(self, u: np.ndarray, *qubits: int) -> "StateVector":
        k = len(qubits)
        axes = [self.axis(q) for q in qubits]
        t = np.tensordot(u.reshape((2,) * (2 * k)), self.amplitudes,
                         axes=(list(range(k, 2 * k)), axes))
        t = np.moveaxis(t, list(range(k)), axes)
        return StateVector(t, list(self.order))

    def cz(self, a: int, b: int) -> "StateVector":
        amp = self.amplitudes.copy()
        idx = [slice(None)] * len(self.order)
        idx[self.axis(a)] = 1
        idx[self.axis(b)] = 1
        amp[tuple(idx)] *= -1
        return StateVector(amp, list(self.order))

    def expectation(self, paulis: Mapping[int, str]) -> complex:
        s = self
        for q, p in paulis.items():
            s = s.apply(PAULI[p], q)
        return complex(np.vdot(self.amplitudes, s.amplitudes))

    def vector(self, order: Iterable[int]) -> np.ndarray:
        """Flat amplitudes with qubits in ``order``, first qubit most significant."""
        order = list(order)
        if sorted(order) != sorted(self.order):
            raise PatternError("order must list exactly the live qubits")
        return np.transpose(self.amplitudes, [self.axis(q) for q in order]).reshape(-1)


def build_cluster(edges: Iterable[tuple[int, int]], inputs: Mapping[int, np.ndarray] | None = None,
                  qubits: Iterable[int] = ()) -> StateVector:
    """Non-input qubits start in |+>, then one CZ per edge."""
    edges = list(edges)
    inputs = dict(inputs or {})
    ids = sorted(set(qubits) | {q for e in edges for q in e} | set(inputs))
    if len(ids) > MAX_QUBITS:
        raise CapacityError(f"{len(ids)} qubits exceeds {MAX_QUBITS}")
    s = StateVector.product({q: inputs.get(q, PLUS) for q in ids})
    for a, b in edges:
        s = s.cz(a, b)
    return s


def basis_vectors(plane: str, angle: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors for outcomes 0 (+1) and 1 (-1)."""
    if plane == "Z":
        return ZERO, ONE
    if plane == "X":
        angle = 0.0
    elif plane == "Y":
        angle = math.pi / 2
    ph = np.exp(1j * angle)
    return (np.array([1, ph]) / math.sqrt(2), np.array([1, -ph]) / math.sqrt(2))


def observable(plane: str, angle: float = 0.0) -> np.ndarray:
    """cos(angle) X + sin(angle) Y for the XY plane."""
    if plane == "Z":
        return Z
    if plane == "X":
        return X
    if plane == "Y":
        return Y
    return math.cos(angle) * X + math.sin(angle) * Y


def resolve_angle(m: Measure, outcomes: Mapping[int, int]) -> float:
    s = sum(outcomes[q] for q in m.s_domain) % 2
    t = sum(outcomes[q] for q in m.t_domain) % 2
    return (-1) ** s * m.angle + math.pi * t


def measure(s: StateVector, qubit: int, plane: str = "X", angle: float = 0.0,
            forced_outcome: int = 0) -> tuple[StateVector, int, float]:
    """Project ``qubit`` onto the forced outcome and drop its axis.

    Returns the renormalised state, the outcome and the branch probability.
    """
    vec = basis_vectors(plane, angle)[forced_outcome]
    ax = s.axis(qubit)
    amp = np.tensordot(vec.conj(), s.amplitudes, axes=([0], [ax]))
    p = float(np.vdot(amp, amp).real)
    if p < PROB_EPS:
        raise BranchError(f"outcome {forced_outcome} on qubit {qubit} has zero probability")
    order = [q for q in s.order if q != qubit]
    return StateVector(amp / math.sqrt(p), order), forced_outcome, p


@dataclass
class ByproductRecord:
    """Pending Pauli frame per output qubit: X-power and Z-power mod 2."""
    x: dict[int, int] = field(default_factory=dict)
    z: dict[int, int] = field(default_factory=dict)

    def add(self, pauli: str, qubit: int, power: int) -> None:
        book = self.x if pauli == "X" else self.z
        book[qubit] = (book.get(qubit, 0) + power) % 2

    def undo(self, s: StateVector) -> StateVector:
        # the frame is Z^z X^x acting after the gate; undo X first
        for q in s.order:
            if self.x.get(q):
                s = s.apply(X, q)
            if self.z.get(q):
                s = s.apply(Z, q)
        return s


@dataclass
class PatternRun:
    state: StateVector
    byproducts: ByproductRecord
    outcomes: dict[int, int]
    probability: float


def _correction_power(c: Correction, outcomes: Mapping[int, int]) -> int:
    return (sum(outcomes[q] for q in c.domain) + int(c.constant)) % 2


def run_pattern(p: MeasurementPattern, input_state: StateVector,
                branch: Mapping[int, int]) -> PatternRun:
    """Execute ``p`` with forced outcomes.

    Corrections on qubits that later commands still touch are applied at
    once; corrections on final outputs are recorded in the byproduct frame.
    """
    if p.qubit_count > MAX_QUBITS:
        raise CapacityError(f"{p.qubit_count} qubits exceeds {MAX_QUBITS}")
    if sorted(input_state.order) != sorted(p.inputs):
        raise PatternError("input state must cover exactly the pattern's inputs")
    missing = set(p.measured) - set(branch)
    if missing:
        raise PatternError(f"branch does not fix outcomes for {sorted(missing)}")
    s = input_state.copy()
    for q in sorted(p.resources - set(p.inputs)):
        s = StateVector(np.multiply.outer(s.amplitudes, PLUS), s.order + [q])
    last_use: dict[int, int] = {}
    for k, cmd in enumerate(p.commands):
        if not isinstance(cmd, Correction):
            for q in cmd.qubits:
                last_use[q] = k
    record = ByproductRecord()
    outcomes: dict[int, int] = {}
    prob = 1.0
    for k, cmd in enumerate(p.commands):
        if isinstance(cmd, Entangle):
            s = s.cz(cmd.i, cmd.j)
        elif isinstance(cmd, Measure):
            ang = resolve_angle(cmd, outcomes) if cmd.plane == "XY" else 0.0
            s, out, pk = measure(s, cmd.qubit, cmd.plane, ang, branch[cmd.qubit])
            outcomes[cmd.qubit] = out
            prob *= pk
        else:
            power = _correction_power(cmd, outcomes)
            if last_use.get(cmd.qubit, -1) > k:
                if power:
                    s = s.apply(X if cmd.pauli == "X" else Z, cmd.qubit)
            else:
                record.add(cmd.pauli, cmd.qubit, power)
    return PatternRun(s, record, outcomes, prob)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    return float(abs(np.vdot(a, b)) ** 2 / (np.vdot(a, a).real * np.vdot(b, b).real))


# ---------------------------------------------------------------- driver

SINGLE_INPUTS = {"0": ZERO, "1": ONE, "+": PLUS, "-": MINUS}


def basis_inputs(k: int) -> list[tuple[str, np.ndarray]]:
    """Products of computational and |+>/|-> states on ``k`` qubits."""
    out = []
    for combo in itertools.product(SINGLE_INPUTS, repeat=k):
        v = np.ones(1, dtype=complex)
        for c in combo:
            v = np.kron(v, SINGLE_INPUTS[c])
        out.append(("".join(combo), v))
    return out


def branches(p: MeasurementPattern, exhaustive: bool = False, samples: int = 64,
             seed: int = 0) -> list[dict[int, int]]:
    measured = list(p.measured)
    if exhaustive or len(measured) <= 10:
        return [dict(zip(measured, bits)) for bits in itertools.product((0, 1), repeat=len(measured))]
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, 2, size=(samples, len(measured)))
    return [dict(zip(measured, row.tolist())) for row in picks]


@dataclass
class BranchResult:
    inputs: str
    branch: dict[int, int]
    fidelity: float
    probability: float

    @property
    def passed(self) -> bool:
        return self.fidelity >= 1 - FIDELITY_TOL


@dataclass
class VerifyReport:
    pattern: str
    results: list[BranchResult]
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(r.passed for r in self.results)

    @property
    def branch_count(self) -> int:
        return len({tuple(sorted(r.branch.items())) for r in self.results})

    @property
    def min_fidelity(self) -> float:
        return min(r.fidelity for r in self.results)


def _input_state(p: MeasurementPattern, vec: np.ndarray) -> StateVector:
    return StateVector(vec.reshape((2,) * len(p.inputs)), list(p.inputs))


def verify_gate(p: MeasurementPattern, target: np.ndarray, exhaustive: bool = False,
                samples: int = 64, seed: int = 0) -> VerifyReport:
    """Compare the corrected output against ``target`` for every input and branch.

    Inputs are mapped to outputs positionally: ``p.inputs[k]`` carries the
    k-th tensor factor in, ``p.outputs[k]`` carries it out.
    """
    k = len(p.inputs)
    if target.shape != (2 ** k, 2 ** k):
        raise ValueError("target does not match the pattern's input count")
    bs = branches(p, exhaustive, samples, seed)
    results = []
    for name, vec in basis_inputs(k):
        want = target @ vec
        for b in bs:
            try:
                run = run_pattern(p, _input_state(p, vec), b)
            except BranchError:
                continue  # branch impossible for this input
            got = run.byproducts.undo(run.state).vector(p.outputs)
            results.append(BranchResult(name, b, fidelity(want, got), run.probability))
    sampled = not (exhaustive or len(p.measured) <= 10)
    return VerifyReport(p.name, results, seed if sampled else None)


def branch_probability_total(p: MeasurementPattern, vec: np.ndarray) -> float:
    total = 0.0
    for b in branches(p, exhaustive=True):
        try:
            total += run_pattern(p, _input_state(p, vec), b).probability
        except BranchError:
            pass
    return total


# ---------------------------------------------------------------- eigenvalue replay

def not5_after_wire_measurements(s2: int, s4: int) -> StateVector:
    """Five-qubit line after X measurements of qubits 2 and 4.

    The measured qubits are projected but kept, so the printed operators
    on qubits 1, 3 and 5 can be applied directly.
    """
    s = build_cluster([(1, 2), (2, 3), (3, 4), (4, 5)])
    for q, out in ((2, s2), (4, s4)):
        vec = basis_vectors("X")[out]
        proj = np.outer(vec, vec.conj())
        s = s.apply(proj, q)
    return StateVector(s.amplitudes / s.norm, s.order)


# printed eigenvalue equations after the two X measurements: operator, sign from (s2, s4)
NOT5_EIGEN_EQUATIONS = (
    ({1: "X", 3: "X", 5: "X"}, lambda s2, s4: 1),
    ({1: "Z", 3: "Z"}, lambda s2, s4: (-1) ** s2),
    ({3: "Z", 5: "Z"}, lambda s2, s4: (-1) ** s4),
)

# the five line-cluster correlations before measurement
LINE5_STABILIZERS = (
    {1: "X", 2: "Z"},
    {1: "Z", 2: "X", 3: "Z"},
    {2: "Z", 3: "X", 4: "Z"},
    {3: "Z", 4: "X", 5: "Z"},
    {4: "Z", 5: "X"},
)


def eigen_replay() -> list[tuple[str, int, int, bool]]:
    """Check each printed post-measurement equation for all (s2, s4)."""
    rows = []
    for s2, s4 in itertools.product((0, 1), repeat=2):
        st = not5_after_wire_measurements(s2, s4)
        for op, sign in NOT5_EIGEN_EQUATIONS:
            ev = st.expectation(op)
            ok = abs(ev - sign(s2, s4)) < 1e-10
            name = "".join(f"{p}{q}" for q, p in op.items())
            rows.append((name, s2, s4, ok))
    return rows


# ---------------------------------------------------------------- CNOT4 orientation

def orient_cnot4(commands=None) -> list[dict]:
    """Try every input/output assignment of the CNOT4 command list.

    Inputs are any ordered pair of distinct resources; outputs are an
    ordering of the unmeasured qubits.  Returns the assignments that
    implement CNOT (control first) across all branches.
    """
    from .gsqcla import cnot4_commands
    cmds = tuple(commands or cnot4_commands())
    measured = {c.qubit for c in cmds if isinstance(c, Measure)}
    res = frozenset({1, 2, 3, 4})
    unmeasured = sorted(res - measured)
    found = []
    for ins in itertools.permutations(sorted(res), 2):
        for outs in itertools.permutations(unmeasured):
            try:
                p = MeasurementPattern(res, ins, tuple(outs), cmds, "cnot4-candidate")
            except PatternError:
                continue
            rep = verify_gate(p, CNOT)
            if rep.passed:
                found.append({"inputs": list(ins), "outputs": list(outs),
                              "control": ins[0], "target_in": ins[1], "target_out": outs[1]})
    return found


def printed_cnot4_io_valid() -> bool:
    from .gsqcla import PRINTED_CNOT4_IO, cnot4_commands
    ins, outs = PRINTED_CNOT4_IO
    try:
        MeasurementPattern(frozenset({1, 2, 3, 4}), ins, outs, cnot4_commands())
    except PatternError:
        return False
    return True


def report_json(rep: VerifyReport) -> str:
    return json.dumps({"pattern": rep.pattern, "passed": rep.passed, "seed": rep.seed,
                       "branches": rep.branch_count, "cases": len(rep.results),
                       "min_fidelity": round(rep.min_fidelity, 12) if rep.results else None},
                      sort_keys=True)
