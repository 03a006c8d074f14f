"""Command-line front end: build / reduce / spectrum / enumerate / count.

Every output file is written deterministically (sorted JSON keys, 17
significant digits for floats) and accompanied by a `<name>.manifest.json`
recording the command, arguments, input hashes, tool version and timestamp.
Validation failures exit with status 2 and a one-line JSON error on stderr.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .adiabatic import spectrum_trace, to_spin_hamiltonian
from .hamiltonian import PenaltyWeights, build_protein
from .lattice import LatticeInstance, layout
from .oracle import enumerate_native
from .pbf import PseudoBooleanFunction, from_terms_list, to_terms_list
from .presets import PRESETS
from .quadratize import quadratize
from .resources import resource_report


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_output(path: Path, text: str, command: str, args: dict, inputs: list[Path]) -> None:
    path.write_text(text)
    manifest = {
        "command": command,
        "arguments": {k: v for k, v in sorted(args.items()) if v is not None},
        "inputs": {
            str(p): hashlib.sha256(p.read_bytes()).hexdigest() for p in inputs
        },
        "tool_version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    Path(str(path) + ".manifest.json").write_text(_json_dumps(manifest))


def _load_polynomial(args) -> tuple[PseudoBooleanFunction, dict, list[Path]]:
    if getattr(args, "preset", None):
        if args.preset not in PRESETS:
            raise ValueError(f"unknown preset {args.preset!r}; available: {sorted(PRESETS)}")
        return PRESETS[args.preset](), {}, []
    if not getattr(args, "infile", None):
        raise ValueError("either --in or --preset is required")
    path = Path(args.infile)
    if not path.exists():
        raise ValueError(f"input file not found: {path}")
    payload = json.loads(path.read_text())
    f = from_terms_list(payload["terms"])
    return f, payload.get("metadata", {}), [path]


def _instance_from_args(args) -> LatticeInstance:
    if getattr(args, "instance", None):
        path = Path(args.instance)
        if not path.exists():
            raise ValueError(f"instance file not found: {path}")
        spec = json.loads(path.read_text())
        return LatticeInstance(sequence=spec["sequence"], dimension=spec["dimension"])
    if not args.sequence:
        raise ValueError("either --sequence or --instance is required")
    return LatticeInstance(sequence=args.sequence, dimension=args.dim)


def cmd_build(args) -> int:
    instance = _instance_from_args(args)
    weights = None
    if args.lambda0 is not None or args.lambda1 is not None:
        defaults = PenaltyWeights.default_for(instance)
        weights = PenaltyWeights(
            lambda0=args.lambda0 if args.lambda0 is not None else defaults.lambda0,
            lambda1=args.lambda1 if args.lambda1 is not None else defaults.lambda1,
        )
    protein = build_protein(instance, weights=weights, allow_large=args.allow_large)
    payload = {
        "terms": to_terms_list(protein.function),
        "metadata": {
            "sequence": instance.sequence,
            "dimension": instance.dimension,
            "lambda0": protein.weights.lambda0,
            "lambda1": protein.weights.lambda1,
            "n_vars": protein.n_free,
            "free_variable_map": {
                str(orig): new for orig, new in protein.renumbering.items()
            },
            "degree": protein.function.degree(),
            "term_census": {str(k): v for k, v in protein.function.term_census().items()},
        },
    }
    out = Path(args.out)
    _write_output(out, _json_dumps(payload), "build", vars(args), [])
    print(f"wrote {out} ({protein.n_free} free variables, degree {protein.function.degree()})")
    for row in layout(instance):
        lo, hi = row["variables"][0], row["variables"][-1]
        print(f"  residue {row['residue']} {row['axis']}: q{lo}..q{hi}")
    return 0


def cmd_reduce(args) -> int:
    f, _, inputs = _load_polynomial(args)
    result = quadratize(f, delta=args.delta)
    payload = {
        "terms": to_terms_list(result.reduced),
        "metadata": {
            "delta": result.delta,
            "original_vars": result.original_vars,
            "total_vars": result.total_vars,
            "n_vars": result.total_vars,
            "substitutions": len(result.substitutions),
        },
    }
    out = Path(args.out)
    _write_output(out, _json_dumps(payload), "reduce", vars(args), inputs)
    ledger = [
        {"a": a, "b": b, "ancilla": anc} for a, b, anc in result.substitutions
    ]
    ledger_path = Path(args.ledger)
    _write_output(ledger_path, _json_dumps(ledger), "reduce", vars(args), inputs)
    print(
        f"wrote {out} (degree {result.reduced.degree()}, "
        f"{len(result.substitutions)} substitutions, delta {result.delta})"
    )
    return 0


def cmd_spectrum(args) -> int:
    f, metadata, inputs = _load_polynomial(args)
    n_qubits = metadata.get("n_vars") or f.max_var()
    hamiltonian = to_spin_hamiltonian(f, n_qubits)
    levels = min(args.levels, 1 << n_qubits)
    trace = spectrum_trace(hamiltonian, s_points=args.points, levels=levels)

    lines = ["s," + ",".join(f"E{i}" for i in range(levels))]
    for p, s in enumerate(trace.s_grid):
        lines.append(",".join([_fmt(s)] + [_fmt(e) for e in trace.eigenvalues[p]]))
    _write_output(Path(args.out), "\n".join(lines) + "\n", "spectrum", vars(args), inputs)

    if args.snapshots:
        dim = 1 << n_qubits
        lines = ["s," + ",".join(f"p{i}" for i in range(dim))]
        for p, s in enumerate(trace.s_grid):
            lines.append(",".join([_fmt(s)] + [_fmt(x) for x in trace.snapshots[p]]))
        _write_output(
            Path(args.snapshots), "\n".join(lines) + "\n", "spectrum", vars(args), inputs
        )

    print(
        _json_dumps(
            {
                "g_min": float(trace.g_min),
                "epsilon": float(trace.epsilon),
                "degenerate_points": int(trace.gap_degenerate.sum()),
            }
        ).rstrip()
    )
    return 0


def cmd_enumerate(args) -> int:
    result = enumerate_native(
        args.sequence,
        dimension=args.dim,
        long_run=args.long_run,
        workers=int(os.environ.get("HPAQC_THREADS", "1")),
    )
    payload = {
        "min_energy": result.min_energy,
        "ground_walks": result.ground_walks,
        "witness": [list(p) for p in result.witness],
    }
    out = Path(args.out)
    _write_output(out, _json_dumps(payload), "enumerate", vars(args), [])
    print(f"wrote {out} (min energy {result.min_energy}, {result.ground_walks} ground walks)")
    return 0


def cmd_count(args) -> int:
    instance = _instance_from_args(args)
    report = resource_report(instance)
    payload = {
        "per_locality_bound": {str(k): v for k, v in report.per_locality_bound.items()},
        "per_locality_actual": {str(k): v for k, v in report.per_locality_actual.items()},
        "free_qubits": report.free_qubits,
        "ancilla_qubits": report.ancilla_qubits,
        "total_qubits": report.total_qubits,
        "deviations": report.deviations,
    }
    out = Path(args.out)
    _write_output(out, _json_dumps(payload), "count", vars(args), [])
    print(f"wrote {out} (total {report.total_qubits} qubits)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hpaqc",
        description="Compile HP folding instances to 2-local spin Hamiltonians "
        "and simulate the adiabatic spectrum.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="compile a folding instance to a polynomial")
    p.add_argument("--sequence", help="H/P string, length a power of two >= 4")
    p.add_argument("--dim", type=int, default=2, choices=(2, 3))
    p.add_argument("--instance", help="JSON file {sequence, dimension} instead of flags")
    p.add_argument("--lambda0", type=int, default=None)
    p.add_argument("--lambda1", type=int, default=None)
    p.add_argument("--allow-large", action="store_true", dest="allow_large")
    p.add_argument("--out", default="hamiltonian.json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("reduce", help="rewrite a polynomial to 2-local form")
    p.add_argument("--in", dest="infile")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--out", default="reduced.json")
    p.add_argument("--ledger", default="ledger.json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("spectrum", help="instantaneous spectrum along the sweep")
    p.add_argument("--in", dest="infile")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--levels", type=int, default=15)
    p.add_argument("--out", default="trace.csv")
    p.add_argument("--snapshots", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("enumerate", help="exhaustive classical fold enumeration")
    p.add_argument("--sequence", required=True)
    p.add_argument("--dim", type=int, default=2, choices=(2, 3))
    p.add_argument("--long-run", action="store_true", dest="long_run")
    p.add_argument("--out", default="result.json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="term and qubit resource report")
    p.add_argument("--sequence")
    p.add_argument("--dim", type=int, default=2, choices=(2, 3))
    p.add_argument("--instance")
    p.add_argument("--out", default="report.json")
    p.set_defaults(func=cmd_count)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(_json_dumps({"error": str(exc)}).rstrip() + "\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
