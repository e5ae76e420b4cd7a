"""Abstract carry-lookahead adder circuits.

Circuits are lists of rounds; every round is a depth-1 set of NOT, CNOT and
Toffoli gates over the registers ``A``, ``B``, ``Z`` and the propagate
ancillae.  Wires ``P_0[m]`` alias ``B[m]``; ``P_t[m]`` for ``t >= 1`` are
ancilla wires, ``G[j]`` and the carries live in ``Z[j]``.
"""
from __future__ import annotations

from functools import lru_cache

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator


class Register(str, Enum):
    A = "A"
    B = "B"
    Z = "Z"
    ANCILLA = "Ancilla"


class GateKind(str, Enum):
    NOT = "NOT"
    CNOT = "CNOT"
    TOFFOLI = "TOFFOLI"


class RoundKind(str, Enum):
    INITIAL_ADD = "InitialAdd"
    P = "P"
    G = "G"
    C = "C"
    INV_P = "InvP"
    INV_G = "InvG"
    INV_C = "InvC"
    CNOT_FIXUP = "CnotFixup"
    NOT_FIXUP = "NotFixup"
    FINAL_ADD = "FinalAdd"


class Variant(str, Enum):
    OUT_OF_PLACE = "OutOfPlace"
    IN_PLACE = "InPlace"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        key = text.strip().lower()
        if key in ("oop", "outofplace", "out-of-place", "out_of_place"):
            return cls.OUT_OF_PLACE
        if key in ("ip", "inplace", "in-place", "in_place"):
            return cls.IN_PLACE
        raise ValueError(f"unknown variant {text!r}")

    @property
    def short(self) -> str:
        return "oop" if self is Variant.OUT_OF_PLACE else "ip"


NETWORK_KINDS = (RoundKind.P, RoundKind.G, RoundKind.C, RoundKind.INV_P,
                 RoundKind.INV_G, RoundKind.INV_C)


@dataclass(frozen=True, order=True)
class Wire:
    register: Register
    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError("wire index must be non-negative")

    def __str__(self) -> str:
        tag = "X" if self.register is Register.ANCILLA else self.register.value
        return f"{tag}{self.index}"


_ARITY = {GateKind.NOT: 0, GateKind.CNOT: 1, GateKind.TOFFOLI: 2}


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    controls: tuple[Wire, ...]
    target: Wire

    def __post_init__(self) -> None:
        expected = _ARITY[self.kind]
        if len(self.controls) != expected:
            raise ValueError(f"{self.kind.value} takes {expected} controls")
        if self.target in self.controls or (expected == 2 and self.controls[0] == self.controls[1]):
            raise ValueError("gate wires must be distinct")

    @property
    def wires(self) -> tuple[Wire, ...]:
        return self.controls + (self.target,)


def NOT(t: Wire) -> Gate:
    return Gate(GateKind.NOT, (), t)


def CNOT(c: Wire, t: Wire) -> Gate:
    return Gate(GateKind.CNOT, (c,), t)


def TOFFOLI(c1: Wire, c2: Wire, t: Wire) -> Gate:
    return Gate(GateKind.TOFFOLI, (c1, c2), t)


@dataclass(frozen=True)
class Round:
    kind: RoundKind
    t: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        seen: set[Wire] = set()
        for g in self.gates:
            if seen.intersection(g.wires):
                raise ValueError(f"round {self.kind.value}{self.t} reuses a wire")
            seen.update(g.wires)

    @property
    def gate_kind(self) -> GateKind | None:
        kinds = {g.kind for g in self.gates}
        return kinds.pop() if len(kinds) == 1 else None

    @property
    def label(self) -> str:
        return f"{self.kind.value}{self.t}"


@dataclass(frozen=True)
class AbstractCircuit:
    n: int
    variant: Variant
    rounds: tuple[Round, ...]
    wires: tuple[Wire, ...] = field(repr=False)

    @property
    def logical_qubit_count(self) -> int:
        """Number of distinct wires the circuit touches (its register file)."""
        return len(self.wires)

    @property
    def table_variable_count(self) -> int:
        """Tabulated logical-qubit count ``4n - floor(log2 n) + 1``."""
        return 4 * self.n - floor_log2(self.n) + 1

    def gates(self) -> Iterator[Gate]:
        for r in self.rounds:
            yield from r.gates

    def ancilla_wire(self, t: int, m: int) -> Wire:
        return Wire(Register.ANCILLA, ancilla_index(self.n, t, m))


# ---------------------------------------------------------------- integers

def hamming_weight(n: int) -> int:
    if n < 0:
        raise ValueError("hamming weight is defined for n >= 0")
    return bin(n).count("1")


def floor_log2(n: int) -> int:
    if n < 1:
        raise ValueError("floor_log2 needs n >= 1")
    return n.bit_length() - 1


def floor_log2_ratio(p: int, q: int) -> int:
    """Exact floor(log2(p/q)) for positive integers, may be negative."""
    if p < 1 or q < 1:
        raise ValueError("floor_log2_ratio needs positive p and q")
    if p >= q:
        k = 0
        while (q << (k + 1)) <= p:
            k += 1
    else:
        k = -1
        while (p << -k) < q:
            k -= 1
    return k


def carry_round_top(n: int) -> int:
    """Highest C round index, floor(log2(2n/3))."""
    return floor_log2_ratio(2 * n, 3)


# ---------------------------------------------------------------- wiring

def ancilla_index(n: int, t: int, m: int) -> int:
    """Flat index of propagate ancilla ``P_t[m]`` (t >= 1, 1 <= m < n // 2^t)."""
    top = floor_log2(n)
    if not (1 <= t <= top - 1 and 1 <= m < n >> t):
        raise ValueError(f"no ancilla P_{t}[{m}] for n={n}")
    base = sum((n >> s) - 1 for s in range(1, t))
    return base + m - 1


def ancilla_coords(n: int) -> list[tuple[int, int]]:
    """All (t, m) pairs with an ancilla, in flat-index order."""
    top = floor_log2(n)
    return [(t, m) for t in range(1, top) for m in range(1, n >> t)]


def _pw(n: int, t: int, m: int) -> Wire:
    if t == 0:
        return Wire(Register.B, m)
    return Wire(Register.ANCILLA, ancilla_index(n, t, m))


def _z(j: int) -> Wire:
    return Wire(Register.Z, j)


def _a(j: int) -> Wire:
    return Wire(Register.A, j)


def _b(j: int) -> Wire:
    return Wire(Register.B, j)


# ---------------------------------------------------------------- networks

def carry_network(n: int, width: int | None = None) -> list[Round]:
    """P, G, C and InvP rounds computing the carries of a ``width``-bit block.

    ``n`` fixes the ancilla numbering; ``width`` defaults to ``n`` and is
    ``n - 1`` for the uncompute network of the in-place adder.
    """
    k = n if width is None else width
    rounds: list[Round] = []
    if k < 2:
        return rounds
    top = floor_log2(k)
    for t in range(1, top):
        rounds.append(Round(RoundKind.P, t, tuple(
            TOFFOLI(_pw(n, t - 1, 2 * m), _pw(n, t - 1, 2 * m + 1), _pw(n, t, m))
            for m in range(1, k >> t))))
    for t in range(1, top + 1):
        rounds.append(Round(RoundKind.G, t, tuple(
            TOFFOLI(_z((m << t) + (1 << (t - 1))), _pw(n, t - 1, 2 * m + 1),
                    _z((m << t) + (1 << t)))
            for m in range(k >> t))))
    for t in range(carry_round_top(k), 0, -1):
        hi = (k - (1 << (t - 1))) >> t
        rounds.append(Round(RoundKind.C, t, tuple(
            TOFFOLI(_z(m << t), _pw(n, t - 1, 2 * m), _z((m << t) + (1 << (t - 1))))
            for m in range(1, hi + 1))))
    for t in range(top - 1, 0, -1):
        rounds.append(Round(RoundKind.INV_P, t, tuple(
            TOFFOLI(_pw(n, t - 1, 2 * m), _pw(n, t - 1, 2 * m + 1), _pw(n, t, m))
            for m in range(1, k >> t))))
    return rounds


_INVERSE = {RoundKind.P: RoundKind.INV_P, RoundKind.G: RoundKind.INV_G,
            RoundKind.C: RoundKind.INV_C, RoundKind.INV_P: RoundKind.P}


def reversed_network(n: int, width: int) -> list[Round]:
    """Gate-wise reverse of :func:`carry_network`; round kinds are inverted."""
    out = []
    for r in reversed(carry_network(n, width)):
        out.append(Round(_INVERSE[r.kind], r.t, tuple(reversed(r.gates))))
    return out


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("n must be an integer")
    if n < 2:
        raise ValueError("adders need n >= 2")


def _finish(n: int, variant: Variant, rounds: list[Round]) -> AbstractCircuit:
    rounds = [r for r in rounds if r.gates]
    wires = {Wire(Register.A, i) for i in range(n)}
    wires |= {Wire(Register.B, i) for i in range(n)}
    wires |= {Wire(Register.Z, i) for i in range(n + 1)}
    wires |= {Wire(Register.ANCILLA, i) for i in range(len(ancilla_coords(n)))}
    for r in rounds:
        for g in r.gates:
            if g.target not in wires or any(c not in wires for c in g.controls):
                raise AssertionError(f"gate uses unknown wire in {r.label}")
    return AbstractCircuit(n, variant, tuple(rounds), tuple(sorted(wires)))


def build_out_of_place(n: int) -> AbstractCircuit:
    """|a, b, 0> -> |a, b, a+b> with the n+1 bit sum in Z."""
    _check_n(n)
    rounds = [
        Round(RoundKind.INITIAL_ADD, 0, tuple(TOFFOLI(_a(i), _b(i), _z(i + 1)) for i in range(n))),
        Round(RoundKind.INITIAL_ADD, 1, tuple(CNOT(_a(i), _b(i)) for i in range(1, n))),
    ]
    rounds += carry_network(n)
    rounds.append(Round(RoundKind.FINAL_ADD, 0, tuple(CNOT(_b(i), _z(i)) for i in range(n))))
    rounds.append(Round(RoundKind.FINAL_ADD, 1, (CNOT(_a(0), _z(0)),)
                        + tuple(CNOT(_a(i), _b(i)) for i in range(1, n))))
    return _finish(n, Variant.OUT_OF_PLACE, rounds)


def build_in_place(n: int) -> AbstractCircuit:
    """|a, b> -> |a, a+b>; the sum lands in B, the carry-out in Z[n]."""
    _check_n(n)
    low = range(n - 1)
    rounds = [
        Round(RoundKind.INITIAL_ADD, 0, tuple(TOFFOLI(_a(i), _b(i), _z(i + 1)) for i in range(n))),
        Round(RoundKind.INITIAL_ADD, 1, tuple(CNOT(_a(i), _b(i)) for i in range(n))),
    ]
    rounds += carry_network(n)
    rounds.append(Round(RoundKind.CNOT_FIXUP, 0, tuple(CNOT(_z(i), _b(i)) for i in range(1, n))))
    rounds.append(Round(RoundKind.NOT_FIXUP, 0, tuple(NOT(_b(i)) for i in low)))
    rounds.append(Round(RoundKind.CNOT_FIXUP, 1, tuple(CNOT(_a(i), _b(i)) for i in range(1, n - 1))))
    rounds += reversed_network(n, n - 1)
    rounds.append(Round(RoundKind.CNOT_FIXUP, 2, tuple(CNOT(_a(i), _b(i)) for i in range(1, n - 1))))
    rounds.append(Round(RoundKind.FINAL_ADD, 0, tuple(TOFFOLI(_a(i), _b(i), _z(i + 1)) for i in low)))
    rounds.append(Round(RoundKind.NOT_FIXUP, 1, tuple(NOT(_b(i)) for i in low)))
    return _finish(n, Variant.IN_PLACE, rounds)


def build(n: int, variant: Variant | str) -> AbstractCircuit:
    v = Variant.parse(variant) if isinstance(variant, str) else variant
    return build_out_of_place(n) if v is Variant.OUT_OF_PLACE else build_in_place(n)


@lru_cache(maxsize=256)
def _shared(n: int, v: Variant) -> AbstractCircuit:
    return build(n, v)


def shared_build(n: int, variant: Variant | str) -> AbstractCircuit:
    """Memoised :func:`build` for read-only callers; do not mutate the result."""
    v = Variant.parse(variant) if isinstance(variant, str) else variant
    return _shared(n, v)


# ---------------------------------------------------------------- census

@dataclass(frozen=True)
class GateCounts:
    not_count: int
    cnot_count: int
    toffoli_count: int
    per_network: dict[str, int]

    @property
    def carry_toffolis(self) -> int:
        return sum(v for k, v in self.per_network.items() if k in {x.value for x in NETWORK_KINDS})


def gate_census(c: AbstractCircuit) -> GateCounts:
    counts = {k: 0 for k in GateKind}
    per: dict[str, int] = {}
    for r in c.rounds:
        for g in r.gates:
            counts[g.kind] += 1
            if g.kind is GateKind.TOFFOLI:
                per[r.kind.value] = per.get(r.kind.value, 0) + 1
    return GateCounts(counts[GateKind.NOT], counts[GateKind.CNOT],
                      counts[GateKind.TOFFOLI], per)


def census_formulas(n: int) -> dict[str, int]:
    """Closed-form gate counts for both adders."""
    w, lg = hamming_weight(n), floor_log2(n)
    w1, lg1 = hamming_weight(n - 1), floor_log2(n - 1)
    return {
        "P": n - w - lg,
        "G": n - w,
        "C": n - lg - 1,
        "carry": 4 * n - 3 * w - 3 * lg - 1,
        "oop_toffoli": 5 * n - 3 * w - 3 * lg - 1,
        "oop_cnot": 3 * n - 1,
        "ip_toffoli": 10 * n - 3 * w - 3 * w1 - 3 * lg - 3 * lg1 - 7,
        "ip_cnot": 4 * n - 5,
        "ip_not": 2 * n - 2,
    }


# ---------------------------------------------------------------- depth

def toffoli_layers(c: AbstractCircuit) -> list[list[Gate]]:
    """As-soon-as-possible layering of the Toffoli gates.

    NOT and CNOT gates carry dependencies but add no Toffoli depth, so a
    P round and a G round that touch disjoint wires share one layer.
    """
    ready: dict[Wire, int] = {}
    layers: list[list[Gate]] = []
    for g in c.gates():
        start = max((ready.get(w, 0) for w in g.wires), default=0)
        if g.kind is GateKind.TOFFOLI:
            # a Toffoli occupies layer `start` (0-based) and frees at start + 1
            while len(layers) <= start:
                layers.append([])
            layers[start].append(g)
            end = start + 1
        else:
            end = start
        for w in g.wires:
            ready[w] = end
    return layers


def abstract_depth(c: AbstractCircuit) -> int:
    """Toffoli depth of the circuit under as-soon-as-possible scheduling."""
    return len(toffoli_layers(c))


def abstract_depth_formula(n: int, variant: Variant | str) -> int:
    v = Variant.parse(variant) if isinstance(variant, str) else variant
    if v is Variant.OUT_OF_PLACE:
        return floor_log2(n) + floor_log2_ratio(n, 3) + 4
    return (floor_log2(n) + floor_log2(n - 1) + floor_log2_ratio(n, 3)
            + floor_log2_ratio(n - 1, 3) + 8)


# ---------------------------------------------------------------- json

def _wire_json(w: Wire) -> dict:
    return {"register": w.register.value, "index": w.index}


def circuit_to_dict(c: AbstractCircuit) -> dict:
    return {
        "n": c.n,
        "variant": c.variant.value,
        "rounds": [
            {"kind": r.kind.value, "t": r.t,
             "gates": [{"kind": g.kind.value,
                        "controls": [_wire_json(w) for w in g.controls],
                        "target": _wire_json(g.target)} for g in r.gates]}
            for r in c.rounds
        ],
    }


def circuit_to_json(c: AbstractCircuit, indent: int | None = None) -> str:
    return json.dumps(circuit_to_dict(c), indent=indent, sort_keys=False)


def _wire_from(d: dict) -> Wire:
    return Wire(Register(d["register"]), int(d["index"]))


def circuit_from_dict(d: dict) -> AbstractCircuit:
    n = int(d["n"])
    variant = Variant(d["variant"])
    rounds = []
    for r in d["rounds"]:
        gates = tuple(Gate(GateKind(g["kind"]), tuple(_wire_from(w) for w in g["controls"]),
                           _wire_from(g["target"])) for g in r["gates"])
        rounds.append(Round(RoundKind(r["kind"]), int(r["t"]), gates))
    return _finish(n, variant, rounds)


def circuit_from_json(text: str) -> AbstractCircuit:
    return circuit_from_dict(json.loads(text))


def iter_wires(gates: Iterable[Gate]) -> set[Wire]:
    out: set[Wire] = set()
    for g in gates:
        out.update(g.wires)
    return out
