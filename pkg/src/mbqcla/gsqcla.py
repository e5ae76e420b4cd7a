"""Graph-state adder: measurement patterns and qubit/entanglement budgets.

Patterns follow the measurement-calculus layout: resources, inputs,
outputs and a command list of entanglements, measurements and Pauli
corrections, kept in execution order.  Only small library gates are
carried as full patterns.  The Toffoli phase gate is modelled by counts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .qcla import Variant, shared_build, floor_log2, floor_log2_ratio, gate_census, hamming_weight


class PatternError(ValueError):
    pass


class WiringError(PatternError):
    pass


@dataclass(frozen=True)
class Entangle:
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise PatternError("cannot entangle a qubit with itself")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.i, self.j)


@dataclass(frozen=True)
class Measure:
    """Measure ``qubit`` in ``plane`` ("X", "Y", "Z" or "XY").

    For the XY plane the effective angle is ``(-1)^s * angle + pi * t``
    where ``s`` and ``t`` are the parities of the outcomes listed in
    ``s_domain`` and ``t_domain``.  Outcome 0 is the +1 eigenvalue.
    """
    qubit: int
    plane: str = "X"
    angle: float = 0.0
    s_domain: tuple[int, ...] = ()
    t_domain: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.plane not in ("X", "Y", "Z", "XY"):
            raise PatternError(f"unknown measurement plane {self.plane!r}")
        if self.plane != "XY" and (self.angle or self.s_domain or self.t_domain):
            raise PatternError("only XY measurements carry an angle")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.qubit,)


@dataclass(frozen=True)
class Correction:
    """Pauli ``pauli`` on ``qubit`` raised to the parity of ``domain``.

    ``constant`` adds a fixed 1 to that parity.
    """
    pauli: str
    qubit: int
    domain: tuple[int, ...] = ()
    constant: bool = False

    def __post_init__(self) -> None:
        if self.pauli not in ("X", "Z"):
            raise PatternError("corrections are X or Z")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.qubit,)


Command = Entangle | Measure | Correction


def _label(cmd: Command) -> str:
    if isinstance(cmd, Entangle):
        return f"E{cmd.i},{cmd.j}"
    if isinstance(cmd, Measure):
        tag = cmd.plane if cmd.plane != "XY" else f"XY({cmd.angle:g})"
        return f"M{cmd.qubit}^{tag}"
    dom = "+".join(f"s{q}" for q in cmd.domain) + ("+1" if cmd.constant else "")
    return f"{cmd.pauli}{cmd.qubit}^{{{dom}}}"


@dataclass(frozen=True)
class MeasurementPattern:
    resources: frozenset[int]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    commands: tuple[Command, ...]
    name: str = ""

    def __post_init__(self) -> None:
        res = self.resources
        if not set(self.inputs) <= res or not set(self.outputs) <= res:
            raise PatternError("inputs and outputs must be resources")
        if len(set(self.inputs)) != len(self.inputs) or len(set(self.outputs)) != len(self.outputs):
            raise PatternError("repeated input or output qubit")
        measured: set[int] = set()
        for cmd in self.commands:
            if not set(cmd.qubits) <= res:
                raise PatternError(f"{_label(cmd)} references a qubit outside the resources")
            if any(q in measured for q in cmd.qubits):
                raise PatternError(f"{_label(cmd)} acts on an already measured qubit")
            deps: tuple[int, ...] = ()
            if isinstance(cmd, Measure):
                deps = cmd.s_domain + cmd.t_domain
            elif isinstance(cmd, Correction):
                deps = cmd.domain
            if not set(deps) <= measured:
                raise PatternError(f"{_label(cmd)} depends on an outcome not yet measured")
            if isinstance(cmd, Measure):
                measured.add(cmd.qubit)
        if measured & set(self.outputs):
            raise PatternError(f"measured qubits {sorted(measured & set(self.outputs))} listed as outputs")
        if (res - measured) != set(self.outputs):
            raise PatternError("every non-output qubit must be measured")

    @property
    def measured(self) -> tuple[int, ...]:
        return tuple(c.qubit for c in self.commands if isinstance(c, Measure))

    @property
    def entangling_ops(self) -> int:
        return sum(isinstance(c, Entangle) for c in self.commands)

    @property
    def qubit_count(self) -> int:
        return len(self.resources)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(c.i, c.j) for c in self.commands if isinstance(c, Entangle)]

    def relabel(self, mapping: dict[int, int]) -> "MeasurementPattern":
        f = mapping.get

        def one(cmd: Command) -> Command:
            if isinstance(cmd, Entangle):
                return Entangle(f(cmd.i, cmd.i), f(cmd.j, cmd.j))
            if isinstance(cmd, Measure):
                return Measure(f(cmd.qubit, cmd.qubit), cmd.plane, cmd.angle,
                               tuple(f(q, q) for q in cmd.s_domain),
                               tuple(f(q, q) for q in cmd.t_domain))
            return Correction(cmd.pauli, f(cmd.qubit, cmd.qubit),
                              tuple(f(q, q) for q in cmd.domain), cmd.constant)

        return MeasurementPattern(frozenset(f(q, q) for q in self.resources),
                                  tuple(f(q, q) for q in self.inputs),
                                  tuple(f(q, q) for q in self.outputs),
                                  tuple(one(c) for c in self.commands), self.name)

    def describe(self) -> str:
        # printed right to left, the way the calculus writes it
        return " ".join(_label(c) for c in reversed(self.commands))


# ---------------------------------------------------------------- library

# the I/O sets as printed next to the CNOT4 command string
PRINTED_CNOT4_IO = ((1, 4), (3, 4))


def cnot4_pattern() -> MeasurementPattern:
    """Four-qubit CNOT: X4^s3 Z4^s2 Z1^s2 M3^x M2^x E13 E23 E34.

    The printed input/output sets list qubit 3 as an output although it
    is measured, so they cannot be used as printed.  The unmeasured
    qubits are 1 and 4; the orientation used here (control 1, target
    entering on 2 and leaving on 4) is the one the statevector search in
    :func:`mbqcla.verify.orient_cnot4` finds.
    """
    cmds = (Entangle(3, 4), Entangle(2, 3), Entangle(1, 3),
            Measure(2, "X"), Measure(3, "X"),
            Correction("Z", 1, (2,)), Correction("Z", 4, (2,)), Correction("X", 4, (3,)))
    return MeasurementPattern(frozenset({1, 2, 3, 4}), (1, 2), (1, 4), cmds, "cnot4")


def cnot4_commands() -> tuple[Command, ...]:
    return cnot4_pattern().commands


def not5_pattern(eta: float = math.pi) -> MeasurementPattern:
    """Five-qubit wire with the middle qubit measured at (-1)^s2 (-eta).

    Qubits 1, 2 and 4 are measured in X.  The byproduct on the output is
    X^(s2+s4) Z^(s1+s3), the usual frame for a four-measurement wire.
    """
    cmds = (Entangle(1, 2), Entangle(2, 3), Entangle(3, 4), Entangle(4, 5),
            Measure(1, "X"), Measure(2, "X"), Measure(3, "XY", -eta, s_domain=(2,)),
            Measure(4, "X"),
            Correction("X", 5, (2, 4)), Correction("Z", 5, (1, 3)))
    return MeasurementPattern(frozenset(range(1, 6)), (1,), (5,), cmds, "not5")


def wire_pattern(length: int) -> MeasurementPattern:
    """Identity wire of ``length`` qubits, all but the last measured in X.

    Each X measurement teleports through a Hadamard, so only odd lengths
    give the identity.
    """
    if length < 1 or length % 2 == 0:
        raise PatternError("an identity wire needs an odd number of qubits")
    cmds: list[Command] = [Entangle(k, k + 1) for k in range(1, length)]
    cmds += [Measure(k, "X") for k in range(1, length)]
    if length > 1:
        cmds.append(Correction("X", length, tuple(range(length - 1, 0, -2))))
        zs = tuple(range(length - 2, 0, -2))
        if zs:
            cmds.append(Correction("Z", length, zs))
    return MeasurementPattern(frozenset(range(1, length + 1)), (1,), (length,), tuple(cmds),
                              f"wire{length}")


def cnot15_pattern() -> MeasurementPattern:
    """Fifteen-qubit CNOT between neighbouring logical qubits.

    Control runs along 1..7, target along 9..15, joined through qubit 8
    between 4 and 12.  Qubits 1, 9, 10, 11, 13, 14 are measured in X and
    2..6, 8, 12 in Y; no measurement is adaptive.
    """
    edges = [(k, k + 1) for k in range(1, 7)] + [(4, 8), (8, 12)] + \
            [(k, k + 1) for k in range(9, 15)]
    xs = (1, 9, 10, 11, 13, 14)
    ys = (2, 3, 4, 5, 6, 8, 12)
    cmds: list[Command] = [Entangle(i, j) for i, j in edges]
    cmds += [Measure(q, "X" if q in xs else "Y") for q in sorted(xs + ys)]
    cmds += [Correction("X", 7, (2, 3, 5, 6)),
             Correction("X", 15, (2, 3, 8, 10, 12, 14)),
             Correction("Z", 7, (1, 3, 4, 5, 8, 9, 11), constant=True),
             Correction("Z", 15, (9, 11, 13))]
    return MeasurementPattern(frozenset(range(1, 16)), (1, 9), (7, 15), tuple(cmds), "cnot15")


LIBRARY = {"not5": not5_pattern, "cnot4": cnot4_pattern, "cnot15": cnot15_pattern}


# ---------------------------------------------------------------- concatenation

@dataclass(frozen=True)
class GraphCircuit:
    """Patterns in execution order plus output-to-input identifications.

    ``wiring`` maps ``(i, output_qubit)`` of pattern ``i`` to
    ``(j, input_qubit)`` of a later pattern ``j``; ids are local.
    """
    patterns: tuple[MeasurementPattern, ...]
    wiring: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen_in: set[tuple[int, int]] = set()
        for (i, q), (j, r) in self.wiring.items():
            if not (0 <= i < len(self.patterns) and 0 <= j < len(self.patterns)):
                raise WiringError(f"identification ({i},{q})->({j},{r}) names a missing pattern")
            if q not in self.patterns[i].outputs:
                raise WiringError(f"qubit {q} is not an output of pattern {i}")
            if r not in self.patterns[j].inputs:
                raise WiringError(f"qubit {r} is not an input of pattern {j}")
            if j <= i:
                raise WiringError("identifications must run forward in execution order")
            if (j, r) in seen_in:
                raise WiringError(f"input ({j},{r}) identified twice")
            seen_in.add((j, r))


def concatenate(g: GraphCircuit) -> MeasurementPattern:
    """Merge the patterns of ``g`` into one, sharing identified qubits."""
    if not g.patterns:
        raise WiringError("nothing to concatenate")
    if len(g.patterns) == 1 and not g.wiring:
        return g.patterns[0]
    maps: list[dict[int, int]] = []
    next_id = 1
    into = {v: k for k, v in g.wiring.items()}  # (j, input) -> (i, output)
    for j, p in enumerate(g.patterns):
        m: dict[int, int] = {}
        for q in sorted(p.resources):
            src = into.get((j, q))
            if src is not None:
                m[q] = maps[src[0]][src[1]]
            else:
                m[q] = next_id
                next_id += 1
        maps.append(m)
    inputs: list[int] = []
    outputs: list[int] = []
    cmds: list[Command] = []
    for j, p in enumerate(g.patterns):
        rp = p.relabel(maps[j])
        inputs += [maps[j][q] for q in p.inputs if (j, q) not in into]
        outputs += [maps[j][q] for q in p.outputs if (j, q) not in g.wiring]
        cmds += rp.commands
    res = frozenset(v for m in maps for v in m.values())
    return MeasurementPattern(res, tuple(inputs), tuple(outputs), tuple(cmds), "concat")


def chain(patterns: list[MeasurementPattern], links: list[tuple[int, int]] | None = None) -> GraphCircuit:
    """Series chain: output ``links[k][0]`` of pattern k feeds input ``links[k][1]`` of k+1.

    Without links, the first output feeds the first input.
    """
    wiring: dict[tuple[int, int], tuple[int, int]] = {}
    for k in range(len(patterns) - 1):
        if links is None:
            o, i = patterns[k].outputs[0], patterns[k + 1].inputs[0]
        else:
            o, i = links[k]
        wiring[(k, o)] = (k + 1, i)
    return GraphCircuit(tuple(patterns), wiring)


# ---------------------------------------------------------------- gate models

@dataclass(frozen=True)
class GateModel:
    kind: str
    qubit_count: int
    entangling_ops: int


def _pattern_model(kind: str, p: MeasurementPattern) -> GateModel:
    return GateModel(kind, p.qubit_count, p.entangling_ops)


GATE_MODELS = {
    "TPG": GateModel("TPG", 39, 43),  # counts only, the graph is not carried
    "CNOT": _pattern_model("CNOT", cnot4_pattern()),
    "NOT": _pattern_model("NOT", not5_pattern()),
}


# ---------------------------------------------------------------- budgets

def _v(variant: Variant | str) -> Variant:
    return Variant.parse(variant) if isinstance(variant, str) else variant


def q_sums(n: int) -> dict[str, int]:
    """Removed-qubit sums for the P, G and C rounds."""
    lg = floor_log2(n)
    l23 = floor_log2_ratio(2 * n, 3)
    qp = sum(2 * ((n >> t) - 1) for t in range(1, lg))
    qg = sum(3 * (n >> t) for t in range(1, lg + 1))
    qc = sum(3 * ((n - (1 << (t - 1))) >> t) for t in range(1, l23))
    return {"Q_P": qp, "Q_G": qg, "Q_C": qc}


# how many times each network runs: out-of-place P twice (forward and inverse)
_MULTIPLICITY = {Variant.OUT_OF_PLACE: (2, 1, 1), Variant.IN_PLACE: (4, 2, 2)}


@dataclass(frozen=True)
class EntanglementOps:
    census: int
    closed_form: int

    @property
    def residual(self) -> int:
        return self.census - self.closed_form


@dataclass(frozen=True)
class QubitCount:
    unreduced: int  # sum over gates of gate qubits
    removed: int  # P, G and C removals
    closed_form: int

    @property
    def census(self) -> int:
        return self.unreduced - self.removed

    @property
    def q_add(self) -> int:
        """What the additional rounds would have to remove to reach the closed form."""
        return self.census - self.closed_form


def _census(n: int, variant: Variant):
    return gate_census(shared_build(n, variant))


def gs_entanglement_ops(n: int, variant: Variant | str) -> EntanglementOps:
    if n < 2:
        raise ValueError("n must be >= 2")
    v = _v(variant)
    g = _census(n, v)
    m = GATE_MODELS
    census = (g.toffoli_count * m["TPG"].entangling_ops + g.cnot_count * m["CNOT"].entangling_ops
              + g.not_count * m["NOT"].entangling_ops)
    w, lg = hamming_weight(n), floor_log2(n)
    if v is Variant.OUT_OF_PLACE:
        closed = 224 * n - 129 * (w - lg) - 46
    else:
        closed = 444 * n - 129 * (w - hamming_weight(n - 1) - lg - floor_log2(n - 1)) - 318
    return EntanglementOps(census, closed)


def gs_qubit_count(n: int, variant: Variant | str) -> QubitCount:
    if n < 2:
        raise ValueError("n must be >= 2")
    v = _v(variant)
    g = _census(n, v)
    m = GATE_MODELS
    unreduced = (g.toffoli_count * m["TPG"].qubit_count + g.cnot_count * m["CNOT"].qubit_count
                 + g.not_count * m["NOT"].qubit_count)
    q = q_sums(n)
    kp, kg, kc = _MULTIPLICITY[v]
    removed = kp * q["Q_P"] + kg * q["Q_G"] + kc * q["Q_C"]
    w, lg = hamming_weight(n), floor_log2(n)
    if v is Variant.OUT_OF_PLACE:
        closed = 201 * n - 117 * (w - lg) - removed - 43
    else:
        closed = 410 * n - 117 * (w - hamming_weight(n - 1) - lg - floor_log2(n - 1)) - removed - 261
    return QubitCount(unreduced, removed, closed)


def gsqcla_ratio(n: int, variant: Variant | str = Variant.IN_PLACE) -> dict[str, float]:
    """GSQCLA qubits over the enumerated MBQCLA size, for both counting methods."""
    from .lattice import fast_size
    v = _v(variant)
    mb = fast_size(n, v)
    q = gs_qubit_count(n, v)
    return {"mbqcla_size": mb, "census": q.census, "closed_form": q.closed_form,
            "ratio_census": q.census / mb, "ratio_closed_form": q.closed_form / mb}
