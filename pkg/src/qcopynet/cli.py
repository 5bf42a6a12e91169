"""Command-line interface: copy runs, sweeps, custom networks, verification.

Exit codes: 0 success, 1 verification/computation failure, 2 usage or
parse errors.  Angles are radians everywhere.  Human output rounds to 6
significant digits; machine formats carry 17.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, linalg
from .copier import (
    AngleSolverError,
    CopyVariant,
    InputQubit,
    PAIR_LABELS,
    QUBIT_LABELS,
    amplitudes_from_angles,
    run_copier,
    solve_preparation_angles,
)
from .gates import MAX_QUBITS, NetworkParseError, PureState, density_of, parse_network, run_network
from .report import (
    GridSpec,
    METRICS,
    SCHEMA_VERSION,
    SweepSpec,
    render_csv,
    render_json,
    sweep_document,
    sweep_rows,
)
from .separability import ppt_verdict
from .verify import GROUP_ORDER, render_human, run_verification, verification_document

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_NORMALIZATION_ERROR_TOL = 1e-6
_NORMALIZATION_WARN_TOL = 1e-12


class UsageError(Exception):
    pass


def _h(x: float) -> str:
    return format(float(x), ".6g")


def _hc(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.6g}{z.imag:+.6g}j"


def _matrix_lines(m: np.ndarray, indent: str = "    ") -> list[str]:
    return [indent + "[ " + "  ".join(f"{_hc(z):>22}" for z in row) + " ]" for row in m]


def _matrix_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": [[float(z.real) for z in row] for row in m],
            "im": [[float(z.imag) for z in row] for row in m]}


def _basis_labels(n: int) -> tuple[str, str]:
    kets = [format(i, f"0{n}b") for i in range(1 << n)]
    ascending = ", ".join(f"|{k}>" for k in kets)
    descending = ", ".join(f"|{k}>" for k in reversed(kets))
    return ascending, descending


def _parse_complex(text: str, what: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r} as a complex number") from None


def _normalized(values: np.ndarray, what: str) -> np.ndarray:
    norm = float(np.linalg.norm(values))
    if abs(norm - 1.0) > _NORMALIZATION_ERROR_TOL:
        raise UsageError(f"{what} are not normalizable: norm {norm!r} deviates by more than 1e-6")
    if abs(norm - 1.0) > _NORMALIZATION_WARN_TOL:
        print(f"warning: renormalizing {what} (norm deviated by {abs(norm - 1.0):.3e})", file=sys.stderr)
    return values / norm


def _input_from_args(args) -> InputQubit:
    has_angles = args.theta is not None or args.phi is not None
    has_amps = args.alpha is not None or args.beta is not None
    if has_angles and has_amps:
        raise UsageError("give either --theta/--phi or --alpha/--beta, not both")
    if has_amps:
        if args.alpha is None or args.beta is None:
            raise UsageError("--alpha and --beta must be given together")
        alpha = _parse_complex(args.alpha, "--alpha")
        beta = _parse_complex(args.beta, "--beta")
        amps = _normalized(np.array([alpha, beta], dtype=complex), "amplitudes")
        return InputQubit.from_amplitudes(amps[0], amps[1])
    if args.theta is None:
        raise UsageError("an input state is required: --theta [--phi] or --alpha --beta")
    return InputQubit(theta=args.theta, phi=args.phi if args.phi is not None else 0.0)


def _print_state_analysis(state: PureState) -> None:
    n = state.num_qubits
    print(f"final state ({n} qubit{'s' if n > 1 else ''}):")
    for i, amp in enumerate(state.amplitudes):
        print(f"  |{format(i, f'0{n}b')}>  {_hc(amp)}")
    rho = density_of(state)
    for q in range(n):
        reduced = linalg.partial_trace(rho, (q,)) if n > 1 else rho
        asc, desc = _basis_labels(1)
        print(f"qubit {q} reduction ({asc}):")
        print("\n".join(_matrix_lines(reduced)))
        print(f"qubit {q} reduction, reversed order ({desc}):")
        print("\n".join(_matrix_lines(linalg.reverse_basis(reduced))))
    if n >= 2:
        for qa in range(n):
            for qb in range(qa + 1, n):
                pair = linalg.partial_trace(rho, (qa, qb))
                verdict = ppt_verdict(pair)
                state_word = (
                    "inseparable" if verdict.inseparable
                    else "indeterminate" if verdict.indeterminate
                    else "separable"
                )
                spectrum = ", ".join(_h(x) for x in verdict.spectrum)
                print(f"pair ({qa},{qb}) partial-transpose spectrum: [{spectrum}] -> {state_word}")


def cmd_copy(args) -> int:
    qubit = _input_from_args(args)
    variant = CopyVariant(args.variant)
    report = run_copier(qubit, variant)

    if args.format == "json":
        doc = {
            "meta": {
                "schema_version": SCHEMA_VERSION,
                "generator": f"qcopynet {__version__}",
                "kind": "copy",
                "variant": variant.value,
            },
            "input": {
                "theta": qubit.theta,
                "phi": qubit.phi,
                "alpha": {"re": qubit.alpha.real, "im": qubit.alpha.imag},
                "beta": qubit.beta,
            },
            "output_amplitudes": {
                "re": [float(z.real) for z in report.output_state.amplitudes],
                "im": [float(z.imag) for z in report.output_state.amplitudes],
            },
            "reductions": {
                **{label: _matrix_json(report.qubit_reductions[label]) for label in QUBIT_LABELS},
                **{label: _matrix_json(report.pair_reductions[label]) for label in PAIR_LABELS},
            },
            "metrics": {
                "d1": dict(report.d1),
                "d2": dict(report.d2),
                "d3": report.d3,
                "scaling": dict(report.scaling),
                "fidelity": {k: list(v) for k, v in report.fidelity.items()},
            },
            "ppt": {
                label: {
                    "spectrum": list(verdict.spectrum),
                    "min_eigenvalue": verdict.min_eigenvalue,
                    "inseparable": verdict.inseparable,
                    "indeterminate": verdict.indeterminate,
                }
                for label, verdict in (
                    (label, ppt_verdict(report.pair_reductions[label])) for label in PAIR_LABELS
                )
            },
        }
        print(render_json(doc), end="")
        return EXIT_OK

    print(f"variant: {variant.value}")
    print(f"input: theta={_h(qubit.theta)} phi={_h(qubit.phi)} "
          f"alpha={_hc(qubit.alpha)} beta={_h(qubit.beta)}")
    asc1, desc1 = _basis_labels(1)
    for label in QUBIT_LABELS:
        print(f"{label} reduction ({asc1}):")
        print("\n".join(_matrix_lines(report.qubit_reductions[label])))
        print(f"{label} reduction, reversed order ({desc1}):")
        print("\n".join(_matrix_lines(linalg.reverse_basis(report.qubit_reductions[label]))))
    asc2, desc2 = _basis_labels(2)
    for label in PAIR_LABELS:
        print(f"{label} reduction ({asc2}):")
        print("\n".join(_matrix_lines(report.pair_reductions[label])))
        print(f"{label} reduction, reversed order ({desc2}):")
        print("\n".join(_matrix_lines(linalg.reverse_basis(report.pair_reductions[label]))))
    print("distances d1:", "  ".join(f"{k}={_h(v)}" for k, v in report.d1.items()))
    print("distances d2:", "  ".join(f"{k}={_h(v)}" for k, v in report.d2.items()))
    print(f"distance d3: {_h(report.d3) if report.d3 is not None else '-'}")
    print("scaling s:", "  ".join(
        f"{k}={_h(v) if v is not None else '-'}" for k, v in report.scaling.items()))
    print("fidelity split (ideal, orthogonal):", "  ".join(
        f"{k}=({_h(p)}, {_h(q)})" for k, (p, q) in report.fidelity.items()))
    for label in PAIR_LABELS:
        verdict = ppt_verdict(report.pair_reductions[label])
        state_word = (
            "inseparable" if verdict.inseparable
            else "indeterminate" if verdict.indeterminate
            else "separable"
        )
        spectrum = ", ".join(_h(x) for x in verdict.spectrum)
        print(f"PPT {label}: spectrum [{spectrum}] min={_h(verdict.min_eigenvalue)} -> {state_word}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    metrics = frozenset(m.strip() for m in args.metrics.split(",")) if args.metrics else METRICS
    unknown = metrics - METRICS
    if unknown:
        raise UsageError(f"unknown metrics {sorted(unknown)}; choose from {sorted(METRICS)}")
    def grid(values, name: str) -> GridSpec:
        start, stop, count = values
        if count != int(count):
            raise UsageError(f"{name} grid count must be an integer, got {count!r}")
        return GridSpec(start, stop, int(count))

    try:
        spec = SweepSpec(
            variant=CopyVariant(args.variant),
            theta_grid=grid(args.theta, "theta"),
            phi_grid=grid(args.phi, "phi"),
            metrics=metrics,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = sweep_rows(spec)
    document = sweep_document(spec, rows)
    text = render_csv(document) if args.format == "csv" else render_json(document)
    if args.out == "-":
        print(text, end="")
    else:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
        print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    groups = None
    if args.only:
        groups = [g.strip() for g in args.only.split(",")]
        try:
            checks = run_verification(groups, tolerance=args.tolerance)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        checks = run_verification(tolerance=args.tolerance)
    if args.format == "json":
        print(render_json(verification_document(checks, tolerance=args.tolerance)), end="")
    else:
        print(render_human(checks), end="")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILURE


def _state_from_spec(spec: str | None, needed_qubits: int) -> PureState:
    if spec is None:
        return PureState.computational(max(needed_qubits, 1), 0)
    spec = spec.strip()
    if set(spec) <= {"0", "1"} and spec:
        n = len(spec)
        if n > MAX_QUBITS:
            raise UsageError(f"at most {MAX_QUBITS} qubits are supported")
        return PureState.computational(n, int(spec, 2))
    parts = [p for p in spec.split(",")]
    amps = np.array([_parse_complex(p, "amplitude") for p in parts], dtype=complex)
    n = (amps.size - 1).bit_length()
    if amps.size < 2 or 2**n != amps.size or n > MAX_QUBITS:
        raise UsageError(f"amplitude count {amps.size} is not a power of two within 2..{1 << MAX_QUBITS}")
    amps = _normalized(amps, "amplitudes")
    return PureState(amps)


def cmd_network(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    try:
        net = parse_network(text)
    except NetworkParseError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    needed = net.max_qubit() + 1
    if needed > MAX_QUBITS:
        raise UsageError(f"{args.file}: network uses qubit {needed - 1}; at most {MAX_QUBITS} qubits are supported")
    state = _state_from_spec(args.state, needed)
    try:
        final = run_network(state, net)
    except ValueError as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    print(f"network: {len(net)} gates on {state.num_qubits} qubits")
    _print_state_analysis(final)
    return EXIT_OK


def cmd_angles(args) -> int:
    c = np.array(args.amplitudes, dtype=float)
    c = _normalized(c, "target amplitudes")
    try:
        angles = solve_preparation_angles(c)
    except AngleSolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    reproduced = amplitudes_from_angles(angles)
    residual = float(np.max(np.abs(reproduced - c)))
    if args.format == "json":
        doc = {
            "meta": {"schema_version": SCHEMA_VERSION, "generator": f"qcopynet {__version__}",
                     "kind": "angles"},
            "target": [float(x) for x in c],
            "angles": {"theta1": angles.theta1, "theta2": angles.theta2, "theta3": angles.theta3},
            "reproduced": [float(x) for x in reproduced],
            "residual": residual,
        }
        print(render_json(doc), end="")
    else:
        print(f"theta1 = {angles.theta1!r}")
        print(f"theta2 = {angles.theta2!r}")
        print(f"theta3 = {angles.theta3!r}")
        print(f"reproduced amplitudes: {', '.join(_h(x) for x in reproduced)}")
        print(f"max residual: {residual:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcopynet",
        description="Simulate quantum copying networks and verify their closed-form laws.",
    )
    parser.add_argument("--version", action="version", version=f"qcopynet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_copy = sub.add_parser("copy", help="run one copy job and print the full analysis")
    p_copy.add_argument("--theta", type=float, help="input angle theta in radians")
    p_copy.add_argument("--phi", type=float, help="input phase phi in radians (default 0)")
    p_copy.add_argument("--alpha", help="raw amplitude of |0> (complex, e.g. '0.6+0.2j')")
    p_copy.add_argument("--beta", help="raw amplitude of |1> (complex)")
    p_copy.add_argument("--variant", choices=[v.value for v in CopyVariant], default="duplicator")
    p_copy.add_argument("--format", choices=["human", "json"], default="human")
    p_copy.set_defaults(func=cmd_copy)

    p_sweep = sub.add_parser("sweep", help="evaluate metrics over a (theta, phi) grid")
    p_sweep.add_argument("--variant", choices=[v.value for v in CopyVariant], default="duplicator")
    p_sweep.add_argument("--theta", nargs=3, type=float, required=True,
                         metavar=("START", "STOP", "COUNT"), help="theta grid in radians")
    p_sweep.add_argument("--phi", nargs=3, type=float, required=True,
                         metavar=("START", "STOP", "COUNT"), help="phi grid in radians")
    p_sweep.add_argument("--metrics", help=f"comma list from {sorted(METRICS)} (default: all)")
    p_sweep.add_argument("--out", required=True, help="output path, or - for stdout")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the built-in verification suite")
    p_verify.add_argument("--tolerance", type=float, help="override every check's tolerance")
    p_verify.add_argument("--only", help=f"comma list of check groups from {list(GROUP_ORDER)}")
    p_verify.add_argument("--format", choices=["human", "json"], default="human")
    p_verify.set_defaults(func=cmd_verify)

    p_net = sub.add_parser("network", help="run a gate network from a text file")
    p_net.add_argument("file", help="network file: lines 'R <qubit> <theta>' or 'CNOT <c> <t>'")
    p_net.add_argument("--state", help="initial state: basis bits like '010', or comma-separated amplitudes")
    p_net.set_defaults(func=cmd_network)

    p_angles = sub.add_parser("angles", help="solve preparation angles for target amplitudes")
    p_angles.add_argument("amplitudes", nargs=4, type=float, metavar="C",
                          help="four real target amplitudes (normalized)")
    p_angles.add_argument("--format", choices=["human", "json"], default="human")
    p_angles.set_defaults(func=cmd_angles)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
