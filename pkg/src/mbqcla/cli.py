"""Command-line front end: ``mbqcla <subcommand> [flags]``.

Exit codes: 0 success, 1 a verification or simulation failed, 2 bad usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from functools import lru_cache

import numpy as np

from . import estimates, gsqcla, lattice, optimize, qcla, render, revsim, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ESTIMATE_COLUMNS = {
    "n": "register width",
    "variant": "oop or ip",
    "size_enumerated": "prepared lattice qubits in the generated layout",
    "size_formula": "short closed form (901n+224n*lg n out-of-place, 2896n+64n*lg n in-place)",
    "width": "layout columns",
    "height": "layout rows",
    "area": "width*height",
    "clustering_ops": "CZ bonds between neighbouring prepared sites",
    "depth_s34": "measurement-round depth with a Toffoli counting two",
    "depth_table": "tabulated depth",
    "pct_horiz": "percent of qubits in horizontal wires and ports",
    "pct_vert": "percent of qubits in SWAP tiles",
    "pct_comp": "percent of qubits in gate tiles",
}
COMPARE_COLUMNS = {
    "series": "in_place, optimized_in_place, out_of_place, vbe, gsqcla_in_place, optimal_in_place",
    "n": "register width",
    "size": "cluster qubits (blank when not computed)",
    "depth": "measurement-round depth",
    "size_method": "enumerated, counted, formula, census or not_enumerated",
}
GSQCLA_COLUMNS = {
    "n": "register width",
    "variant": "oop or ip",
    "qubits_census": "gate qubits minus the P, G and C removals",
    "qubits_closed_form": "printed closed form",
    "q_add_residual": "census minus closed form",
    "entangling_census": "sum of per-gate entangling operations",
    "entangling_closed_form": "printed closed form",
    "mbqcla_size": "enumerated cluster size of the same variant",
    "ratio_census": "qubits_census / mbqcla_size",
    "ratio_closed_form": "qubits_closed_form / mbqcla_size",
}
OPTIMIZE_COLUMNS = {
    "n": "register width",
    "size_before": "in-place layout size",
    "size_after": "size after bending",
    "removed": "qubits removed",
    "removed_pct": "removed as percent of size_before",
    "estimate": "sum over moves of C*A*W",
    "moves": "number of subregister moves",
}


class UsageError(Exception):
    pass


def _columns_help(title: str, cols: dict[str, str]) -> str:
    return title + " columns:\n" + "\n".join(f"  {k}: {v}" for k, v in cols.items())


def _csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _fmt(r.get(k)) for k in columns})
    return buf.getvalue()


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def _check_n(n: int | None, name: str = "--n") -> int:
    if n is None:
        raise UsageError(f"{name} is required")
    if n < 2:
        raise UsageError(f"{name} must be >= 2")
    return n


def _variant(v: str) -> qcla.Variant:
    return qcla.Variant.parse(v)


@lru_cache(maxsize=64)
def _layout(n: int, v: qcla.Variant) -> lattice.LatticeLayout:
    return lattice.layout(qcla.shared_build(n, v))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- subcommands

def cmd_gen(a) -> int:
    c = qcla.build(_check_n(a.n), _variant(a.variant))
    _emit(qcla.circuit_to_json(c, indent=1) + "\n", a.out)
    return EXIT_OK


def cmd_sim(a) -> int:
    if a.circuit:
        with open(a.circuit, encoding="utf-8") as fh:
            c = qcla.circuit_from_json(fh.read())
    else:
        c = qcla.build(_check_n(a.n), _variant(a.variant))
    n = c.n
    if a.exhaustive or (n <= 6 and not a.pairs):
        if n > 8:
            raise UsageError("exhaustive simulation is limited to n <= 8")
        grid = np.arange(1 << n, dtype=np.uint64)
        x, y = np.meshgrid(grid, grid, indexing="ij")
        rep = revsim.check_pairs(c, x.ravel(), y.ravel())
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(a.seed)
        hi = np.uint64((1 << n) - 1) if n < 64 else np.uint64(2**64 - 1)
        pairs = a.pairs or 10_000
        x = rng.integers(0, hi, size=pairs, dtype=np.uint64, endpoint=True)
        y = rng.integers(0, hi, size=pairs, dtype=np.uint64, endpoint=True)
        rep = revsim.check_pairs(c, x, y)
        mode = f"random seed={a.seed}"
    _emit(f"n={n} variant={c.variant.short} {mode}: {rep}\n", a.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _layout_json(lay: lattice.LatticeLayout) -> str:
    rep = lattice.resource_report(lay)
    b = rep.breakdown
    doc = {
        "n": lay.n, "variant": lay.variant.short, "width": lay.width, "height": lay.height,
        "size": lay.size, "area": rep.area, "clustering_ops": rep.clustering_ops,
        "clustering_ops_table": rep.clustering_ops_table,
        "breakdown": {"computation": b.computation, "horiz_comm": b.horiz_comm,
                      "vert_comm": b.vert_comm},
        "swaps": lattice.network_swaps(lay),
        "tracks": [f"{w.register.value}{w.index}" for w in lay.tracks],
        "sites": [[s.col, s.row, s.basis.kind.value, s.role.value] for s in lay.sites()],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def _highlight(lay, name: str | None) -> int | None:
    if name is None:
        return None
    try:
        return render.track_index(lay, name)
    except (KeyError, ValueError, IndexError):
        raise UsageError(f"unknown wire {name!r}") from None


def cmd_layout(a) -> int:
    lay = _layout(_check_n(a.n), _variant(a.variant))
    fmt = a.format or "json"
    if fmt == "svg":
        text = render.render_svg(lay, _highlight(lay, a.highlight))
    elif fmt == "ascii":
        text = render.render_ascii(lay)
    elif fmt == "json":
        text = _layout_json(lay)
    else:
        raise UsageError("layout supports --format svg, ascii or json")
    _emit(text, a.out)
    return EXIT_OK


def estimate_row(n: int, v: qcla.Variant) -> dict:
    lay = _layout(n, v)
    rep = lattice.resource_report(lay)
    pct = rep.breakdown.pct()
    return {"n": n, "variant": v.short, "size_enumerated": rep.size_qubits,
            "size_formula": estimates.short_size(n, v), "width": rep.width,
            "height": rep.height, "area": rep.area, "clustering_ops": rep.clustering_ops,
            "depth_s34": estimates.mbqc_depth(n, v), "depth_table": estimates.table_depth(n, v),
            "pct_horiz": pct["horiz_comm"], "pct_vert": pct["vert_comm"],
            "pct_comp": pct["computation"]}


def cmd_estimate(a) -> int:
    if (a.format or "csv") != "csv":
        raise UsageError("estimate writes CSV only")
    row = estimate_row(_check_n(a.n), _variant(a.variant))
    _emit(_csv([row], ESTIMATE_COLUMNS), a.out)
    return EXIT_OK


def cmd_optimize(a) -> int:
    n = _check_n(a.n)
    if _variant(a.variant) is not qcla.Variant.IN_PLACE:
        raise UsageError("only the in-place circuit is bent")
    res = optimize.bend(lattice.layout(qcla.build(n, qcla.Variant.IN_PLACE)))
    fmt = a.format or "csv"
    if fmt == "svg":
        _emit(render.render_svg(res.after), a.out)
    elif fmt == "json":
        _emit(res.plan_json() + "\n", a.out)
    elif fmt == "csv":
        row = {"n": n, "size_before": res.before.size, "size_after": res.after.size,
               "removed": res.removed, "removed_pct": 100 * res.relative,
               "estimate": optimize.reduction_estimate(res.moves, res.W), "moves": len(res.moves)}
        _emit(_csv([row], OPTIMIZE_COLUMNS), a.out)
    else:
        raise UsageError("optimize supports --format csv, json or svg")
    return EXIT_OK


def gsqcla_row(n: int, v: qcla.Variant) -> dict:
    q = gsqcla.gs_qubit_count(n, v)
    e = gsqcla.gs_entanglement_ops(n, v)
    mb = lattice.fast_size(n, v)
    return {"n": n, "variant": v.short, "qubits_census": q.census,
            "qubits_closed_form": q.closed_form, "q_add_residual": q.q_add,
            "entangling_census": e.census, "entangling_closed_form": e.closed_form,
            "mbqcla_size": mb, "ratio_census": q.census / mb,
            "ratio_closed_form": q.closed_form / mb}


def cmd_gsqcla(a) -> int:
    row = gsqcla_row(_check_n(a.n), _variant(a.variant))
    _emit(_csv([row], GSQCLA_COLUMNS), a.out)
    return EXIT_OK


_TARGETS = {"not5": ("X", verify.X), "cnot4": ("CNOT", verify.CNOT), "cnot15": ("CNOT", verify.CNOT)}


def cmd_verify(a) -> int:
    if a.pattern not in gsqcla.LIBRARY:
        raise UsageError(f"unknown pattern {a.pattern!r}")
    p = gsqcla.LIBRARY[a.pattern]()
    tname, target = _TARGETS[a.pattern]
    if a.target:
        tname = a.target.upper()
        table = {"X": verify.X, "Z": verify.Z, "I": verify.I2, "CNOT": verify.CNOT,
                 "I4": np.eye(4, dtype=complex)}
        if tname not in table:
            raise UsageError(f"unknown target {a.target!r}")
        target = table[tname]
    rep = verify.verify_gate(p, target, exhaustive=a.exhaustive, seed=a.seed)
    rows = []
    for r in rep.results:
        branch = "".join(str(r.branch[q]) for q in p.measured)
        rows.append({"input": r.inputs, "branch": branch, "fidelity": r.fidelity,
                     "probability": r.probability, "result": "pass" if r.passed else "FAIL"})
    text = _csv(rows, ["input", "branch", "fidelity", "probability", "result"])
    summary = (f"# {p.name} vs {tname}: {'PASS' if rep.passed else 'FAIL'} "
               f"({rep.branch_count} branches, {len(rep.results)} cases"
               + (f", sampled with seed {rep.seed}" if rep.seed is not None else "") + ")\n")
    _emit(text + summary, a.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def compare_ns(max_n: int) -> list[int]:
    """Every n up to 32, then 48, 64, 96, 100, 128 and powers of two up to max_n."""
    ns = set(range(2, min(max_n, 32) + 1))
    ns.update(x for x in (48, 64, 96, 100, 128) if x <= max_n)
    k = 256
    while k <= max_n:
        ns.add(k)
        k *= 2
    ns.add(max_n)
    return sorted(ns)


@lru_cache(maxsize=None)
def _optimized_size(n: int) -> int:
    return optimize.bend(_layout(n, qcla.Variant.IN_PLACE)).after.size


def compare_rows(max_n: int, optimize_max_n: int = 32) -> list[dict]:
    rows = []
    for n in compare_ns(max_n):
        ip, oop = qcla.Variant.IN_PLACE, qcla.Variant.OUT_OF_PLACE
        d_ip, d_oop = estimates.mbqc_depth(n, ip), estimates.mbqc_depth(n, oop)
        vbe = estimates.vbe_baseline(n)
        opt = _optimized_size(n) if n <= optimize_max_n else None
        rows += [
            {"series": "in_place", "n": n, "size": lattice.fast_size(n, ip), "depth": d_ip,
             "size_method": "counted"},
            {"series": "optimized_in_place", "n": n, "size": opt, "depth": d_ip,
             "size_method": "enumerated" if opt is not None else "not_enumerated"},
            {"series": "out_of_place", "n": n, "size": lattice.fast_size(n, oop), "depth": d_oop,
             "size_method": "counted"},
            {"series": "vbe", "n": n, "size": vbe["size"], "depth": vbe["depth"],
             "size_method": "formula"},
            {"series": "gsqcla_in_place", "n": n, "size": gsqcla.gs_qubit_count(n, ip).census,
             "depth": d_ip, "size_method": "census"},
            {"series": "optimal_in_place", "n": n,
             "size": estimates.optimal_in_place_size(n)["formula"], "depth": d_ip,
             "size_method": "formula"},
        ]
    return rows


def cmd_compare(a) -> int:
    max_n = _check_n(a.max_n, "--max-n")
    if (a.format or "csv") != "csv":
        raise UsageError("compare writes CSV only")
    _emit(_csv(compare_rows(max_n, a.optimize_max_n), COMPARE_COLUMNS), a.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, help="register width (>= 2)")
    common.add_argument("--variant", default="oop", choices=["oop", "ip"],
                        help="out-of-place (oop) or in-place (ip)")
    common.add_argument("--format", choices=["json", "csv", "svg", "ascii"])
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="mbqcla", description="Carry-lookahead adders on cluster and graph states.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)
    fmt = argparse.RawDescriptionHelpFormatter

    sub.add_parser("gen", parents=[common], help="abstract circuit as JSON")
    s = sub.add_parser("sim", parents=[common], help="reversible simulation check")
    s.add_argument("--circuit", help="circuit JSON written by gen")
    s.add_argument("--pairs", type=int, help="random input pairs (default 10000)")
    s.add_argument("--exhaustive", action="store_true", help="all 4^n pairs (n <= 8)")
    s = sub.add_parser("layout", parents=[common], help="lattice layout as json, svg or ascii")
    s.add_argument("--highlight", help="wire to tint yellow in SVG, e.g. b3")
    sub.add_parser("estimate", parents=[common], help="one CSV row of layout resources",
                   epilog=_columns_help("CSV", ESTIMATE_COLUMNS), formatter_class=fmt)
    sub.add_parser("optimize", parents=[common], help="bend the in-place layout",
                   epilog=_columns_help("CSV", OPTIMIZE_COLUMNS), formatter_class=fmt)
    sub.add_parser("gsqcla", parents=[common], help="graph-state budgets as CSV",
                   epilog=_columns_help("CSV", GSQCLA_COLUMNS), formatter_class=fmt)
    s = sub.add_parser("verify", parents=[common], help="statevector check of a pattern")
    s.add_argument("--pattern", required=True, choices=sorted(gsqcla.LIBRARY))
    s.add_argument("--target", help="override the target: X, Z, I, CNOT or I4")
    s.add_argument("--exhaustive", action="store_true", help="enumerate every branch")
    s = sub.add_parser("compare", parents=[common], help="size and depth series as CSV",
                       epilog=_columns_help("CSV", COMPARE_COLUMNS), formatter_class=fmt)
    s.add_argument("--max-n", type=int, default=128)
    s.add_argument("--optimize-max-n", type=int, default=32,
                   help="largest n whose optimized layout is enumerated")
    return p


COMMANDS = {"gen": cmd_gen, "sim": cmd_sim, "layout": cmd_layout, "estimate": cmd_estimate,
            "optimize": cmd_optimize, "gsqcla": cmd_gsqcla, "verify": cmd_verify,
            "compare": cmd_compare}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if not a.cmd:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return COMMANDS[a.cmd](a)
    except UsageError as e:
        sys.stderr.write(f"mbqcla: error: {e}\n")
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)


if __name__ == "__main__":
    sys.exit(main())
