"""Command-line front end.

One subcommand per experiment: trace estimation with simulated shots, discord
of a state file, the X-Y measurement-angle scan for circuit/braid instances,
classicality and concordance tests, GF(2) enumerator evaluation and the two
sign promise problems, braid unitaries, target-side expectations, the
separable decomposition, and coupling-scheme counting. Exit codes: 0 success,
1 computation error, 2 usage or file-format error. All stochastic output is
reproducible from --seed and independent of --threads.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import braid as braid_mod
from . import discord as discord_mod
from . import engine, fileio, qswe
from .fileio import FileFormatError
from .linalg import DensityMatrix


class UsageError(Exception):
    """Invalid parameter values; reported with exit code 2 before computing."""


def catalan_counts(n: int) -> tuple[int, int]:
    """n-th Catalan number and the two-spin coupling-interaction count (n+1)! C_n^2."""
    if n < 0:
        raise UsageError("n must be >= 0")
    c = math.comb(2 * n, n) // (n + 1)
    return c, math.factorial(n + 1) * c * c


@dataclass(frozen=True)
class RunConfig:
    """Validated numeric parameters shared by the circuit-driven subcommands."""

    alpha: float
    theta: float
    delta: float
    seed: int
    threads: Optional[int]

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        alpha = getattr(args, "alpha", 1.0)
        if not 0.0 <= alpha <= 1.0:
            raise UsageError(f"--alpha must lie in [0, 1], got {alpha}")
        threads = getattr(args, "threads", None)
        if threads is not None and threads < 1:
            raise UsageError("--threads must be >= 1")
        seed = getattr(args, "seed", 0)
        if not 0 <= seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        return cls(
            alpha=alpha,
            theta=getattr(args, "theta", math.pi / 4),
            delta=getattr(args, "delta", math.pi),
            seed=seed,
            threads=threads if threads is not None else os.cpu_count(),
        )


def _fmt(x: float) -> str:
    return repr(float(x))


def _add_circuit_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=1.0, help="top-qubit polarization in [0,1] (default 1)")
    p.add_argument("--theta", type=float, default=math.pi / 4, help="rotation angle in radians (default pi/4)")
    p.add_argument("--delta", type=float, default=math.pi, help="phase angle phi+chi in radians (default pi)")


def _add_common(p: argparse.ArgumentParser, seed: bool = False, threads: bool = False) -> None:
    p.add_argument("--dry-run", action="store_true", help="validate inputs without computing")
    if seed:
        p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed (default 0)")
    if threads:
        p.add_argument(
            "--threads", type=int, default=None,
            help="worker threads (default: available parallelism); never affects results",
        )


def _load_unitary(path: str) -> np.ndarray:
    u = fileio.read_cmat(path)
    dim = u.shape[0]
    if dim & (dim - 1) or dim < 2:
        raise UsageError(f"{path}: unitary dimension {dim} is not a power of two >= 2")
    if np.abs(u.conj().T @ u - np.eye(dim)).max() > 1e-10:
        raise UsageError(f"{path}: matrix is not unitary within 1e-10")
    return u


def _circuit_unitary(args: argparse.Namespace) -> np.ndarray:
    if getattr(args, "braid", None):
        word = braid_mod.BraidWord.from_string(args.braid)
        u_path = braid_mod.braid_unitary(word, args.k)
        return braid_mod.embed_in_qubits(u_path).matrix
    if getattr(args, "unitary", None):
        return _load_unitary(args.unitary)
    raise UsageError("provide --unitary FILE or --braid SPEC")


def _split_of(args: argparse.Namespace, rho: DensityMatrix) -> discord_mod.Bipartition:
    if args.split is not None:
        da, db = args.split
        if da * db != rho.dim:
            raise UsageError(f"--split {da} {db} does not match state dimension {rho.dim}")
    elif rho.n_subsystems == 2:
        da, db = rho.dims
    else:
        raise UsageError("--split is required when the state has more than two subsystems")
    return discord_mod.Bipartition((da, db), measured_side=getattr(args, "measured", "A"))


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_trace_est(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    if args.shots < 1:
        raise UsageError("--shots must be >= 1")
    u = _circuit_unitary(args)
    if args.dry_run:
        print("dry-run ok")
        return 0
    state = engine.build_state(
        engine.Dqc1Config(alpha=cfg.alpha, theta=cfg.theta, delta=cfg.delta, unitary=u)
    )
    x, y, implied = engine.exact_trace_expectations(state)
    est_x = engine.sample_shots(state, "X", args.shots, cfg.seed)
    est_y = engine.sample_shots(state, "Y", args.shots, cfg.seed + 1)
    prefactor = -cfg.alpha * np.exp(1j * cfg.delta) * math.sin(2 * cfg.theta)
    sampled = (est_x.mean - 1j * est_y.mean) / prefactor
    print(f"exact_x {_fmt(x)}")
    print(f"exact_y {_fmt(y)}")
    print(f"mean_x {_fmt(est_x.mean)} stderr_x {_fmt(est_x.stderr)}")
    print(f"mean_y {_fmt(est_y.mean)} stderr_y {_fmt(est_y.stderr)}")
    print(f"sampled_trace {_fmt(sampled.real)} {_fmt(sampled.imag)}")
    print(f"exact_trace {_fmt(implied.real)} {_fmt(implied.imag)}")
    return 0


def _cmd_discord(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    if args.grid[0] < 2 or args.grid[1] < 2:
        raise UsageError("--grid sizes must be >= 2")
    rho = fileio.read_dmat(args.state)
    split = _split_of(args, rho)
    if args.dry_run:
        print("dry-run ok")
        return 0
    report = discord_mod.discord(rho, split, grid=tuple(args.grid), threads=cfg.threads)
    print(f"mutual_information {_fmt(report.mutual_information)}")
    print(f"classical_correlations {_fmt(report.classical_correlations)}")
    print(f"discord {_fmt(report.discord)}")
    print(f"theta_star {_fmt(report.optimal_angles[0])}")
    print(f"phi_star {_fmt(report.optimal_angles[1])}")
    print(f"converged {str(report.converged).lower()}")
    return 0


def _cmd_discord_scan(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    if args.grid < 16:
        raise UsageError("--grid must be >= 16 scan samples")
    u = _circuit_unitary(args)
    if args.dry_run:
        print("dry-run ok")
        return 0
    state = engine.build_state(
        engine.Dqc1Config(alpha=cfg.alpha, theta=cfg.theta, delta=cfg.delta, unitary=u)
    )
    report = discord_mod.discord_scan_xy(state, samples=args.grid, threads=cfg.threads)
    if args.out:
        fileio.write_csv(args.out, ["phi", "I_minus_J"], report.scan_curve)
    print(f"mutual_information {_fmt(report.mutual_information)}")
    print(f"classical_correlations {_fmt(report.classical_correlations)}")
    print(f"discord {_fmt(report.discord)}")
    print(f"phi_star {_fmt(report.optimal_angles[1])}")
    return 0


def _cmd_classical_test(args: argparse.Namespace) -> int:
    rho = fileio.read_dmat(args.state)
    split = _split_of(args, rho)
    if args.dry_run:
        print("dry-run ok")
        return 0
    classical, witness = discord_mod.is_classical_on(rho, split, args.side)
    print(f"classical {str(classical).lower()}")
    if classical and args.out:
        fileio.write_cmat(args.out, witness)
    return 0


def _cmd_concordant_test(args: argparse.Namespace) -> int:
    rho = fileio.read_dmat(args.state)
    if any(d != 2 for d in rho.dims):
        raise UsageError("concordance test requires a state with qubit subsystems")
    if args.dry_run:
        print("dry-run ok")
        return 0
    concordant, _ = discord_mod.is_concordant(rho)
    print(f"concordant {str(concordant).lower()}")
    return 0


def _parse_scalar(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"expected a number, got {text!r}") from None


def _cmd_qswe_eval(args: argparse.Namespace) -> int:
    a = fileio.read_gf2(args.a)
    b = fileio.read_gf2(args.b)
    x = _parse_scalar(args.x)
    y = _parse_scalar(args.y)
    inst = qswe.QsweInstance(a=a, b=b, x=x, y=y)
    if args.dry_run:
        print("dry-run ok")
        return 0
    result = qswe.qswe_eval(inst)
    print(f"value {result.value}")
    print(f"nullity {result.nullity}")
    print(f"terms {result.terms_enumerated}")
    if result.rounding_bound is not None:
        print(f"rounding_bound {_fmt(result.rounding_bound)}")
    return 0


def _cmd_qswe_sign(args: argparse.Namespace) -> int:
    a = fileio.read_gf2(args.a)
    if args.k < 1 or args.l < 1:
        raise UsageError("--k and --l must be positive integers")
    if args.dry_run:
        print("dry-run ok")
        return 0
    result = qswe.sign_problem(args.variant, a, k=args.k, l=args.l)
    print(f"sign {result.sign:+d}" if result.sign else "sign 0")
    print(f"value {result.value}")
    print(f"promise {str(result.promise_satisfied).lower()}")
    return 0


def _cmd_braid_unitary(args: argparse.Namespace) -> int:
    word = braid_mod.BraidWord.from_string(args.braid)
    if args.k < 3:
        raise UsageError("--k must be >= 3")
    if args.dry_run:
        print("dry-run ok")
        return 0
    u = braid_mod.braid_unitary(word, args.k)
    print(f"path_dimension {u.shape[0]}")
    tr = complex(np.trace(u))
    print(f"trace_path {_fmt(tr.real)} {_fmt(tr.imag)}")
    if args.embed:
        emb = braid_mod.embed_in_qubits(u)
        print(f"qubits {emb.n_qubits}")
        print(f"padding {emb.padding_dim}")
        print(f"trace_embedded {_fmt(emb.trace_embedded.real)} {_fmt(emb.trace_embedded.imag)}")
        if args.out:
            fileio.write_cmat(args.out, emb.matrix)
    elif args.out:
        fileio.write_cmat(args.out, u)
    return 0


def _cmd_bside_expect(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    u = _circuit_unitary(args)
    m = fileio.read_cmat(args.observable)
    if args.dry_run:
        print("dry-run ok")
        return 0
    state = engine.build_state(
        engine.Dqc1Config(alpha=cfg.alpha, theta=cfg.theta, delta=cfg.delta, unitary=u)
    )
    value = engine.b_side_expectation(state, m)
    closed = float(np.trace(m).real) / u.shape[0]
    print(f"expectation {_fmt(value)}")
    print(f"closed_form {_fmt(closed)}")
    return 0


def _cmd_separable_decomp(args: argparse.Namespace) -> int:
    cfg = RunConfig.from_args(args)
    u = _circuit_unitary(args)
    if args.dry_run:
        print("dry-run ok")
        return 0
    state = engine.build_state(
        engine.Dqc1Config(alpha=cfg.alpha, theta=cfg.theta, delta=cfg.delta, unitary=u)
    )
    ens = engine.separable_decomposition(state)
    residual = float(np.linalg.norm(ens.reconstruct() - state.dense.matrix))
    print(f"a {_fmt(ens.a)}")
    print(f"b {_fmt(ens.b)}")
    print(f"c {_fmt(ens.c)}")
    print(f"d {_fmt(ens.d)}")
    print(f"psi {_fmt(ens.psi)}")
    print(f"members {len(ens.members)}")
    print(f"reconstruction_residual {_fmt(residual)}")
    return 0


def _cmd_catalan(args: argparse.Namespace) -> int:
    if args.dry_run:
        print("dry-run ok")
        return 0
    c, interactions = catalan_counts(args.n)
    print(f"catalan {c}")
    print(f"coupling_interactions {interactions}")
    return 0


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqc1bench",
        description="One-clean-qubit trace estimation, discord, GF(2) enumerators, braid unitaries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace-est", help="estimate tr(U)/2^n by simulated shot sampling")
    p.add_argument("--unitary", help=".cmat file with the controlled unitary")
    p.add_argument("--braid", help="braid spec 'strands:letters' instead of --unitary")
    p.add_argument("--k", type=int, default=5, help="root order for --braid (default 5)")
    p.add_argument("--shots", type=int, default=1000, help="shots per basis (default 1000)")
    _add_circuit_params(p)
    _add_common(p, seed=True, threads=True)
    p.set_defaults(handler=_cmd_trace_est)

    p = sub.add_parser("discord", help="discord of a density-matrix file")
    p.add_argument("--state", required=True, help=".dmat file")
    p.add_argument("--split", type=int, nargs=2, default=None, metavar=("DA", "DB"))
    p.add_argument("--measured", choices=["A", "B"], default="A")
    p.add_argument("--grid", type=int, nargs=2, default=[32, 64], metavar=("NTHETA", "NPHI"))
    _add_common(p, threads=True)
    p.set_defaults(handler=_cmd_discord)

    p = sub.add_parser("discord-scan", help="scan I-J over X-Y plane measurements")
    p.add_argument("--unitary", help=".cmat file with the controlled unitary")
    p.add_argument("--braid", help="braid spec 'strands:letters', embedded into qubits")
    p.add_argument("--k", type=int, default=5, help="root order for --braid (default 5)")
    p.add_argument("--grid", type=int, default=256, help="number of phi samples (default 256)")
    p.add_argument("--out", help="CSV output path (columns phi,I_minus_J)")
    _add_circuit_params(p)
    _add_common(p, threads=True)
    p.set_defaults(handler=_cmd_discord_scan)

    p = sub.add_parser("classical-test", help="zero-discord (classical side) test")
    p.add_argument("--state", required=True, help=".dmat file")
    p.add_argument("--split", type=int, nargs=2, default=None, metavar=("DA", "DB"))
    p.add_argument("--side", choices=["A", "B"], default="A")
    p.add_argument("--out", help="write the witness basis to this .cmat file")
    _add_common(p)
    p.set_defaults(handler=_cmd_classical_test)

    p = sub.add_parser("concordant-test", help="product-basis diagonalizability test")
    p.add_argument("--state", required=True, help=".dmat file with qubit subsystems")
    _add_common(p)
    p.set_defaults(handler=_cmd_concordant_test)

    p = sub.add_parser("qswe", help="quadratically signed weight enumerators")
    qsub = p.add_subparsers(dest="qswe_command", required=True)
    pe = qsub.add_parser("eval", help="evaluate S(A, B, x, y) exactly")
    pe.add_argument("--a", required=True, help=".gf2 file for A")
    pe.add_argument("--b", required=True, help=".gf2 file for B")
    pe.add_argument("--x", default="4")
    pe.add_argument("--y", default="3")
    _add_common(pe)
    pe.set_defaults(handler=_cmd_qswe_eval)
    ps = qsub.add_parser("sign", help="sign promise problems (variants bqp, dqc1)")
    ps.add_argument("--a", required=True, help=".gf2 file for square A with unit diagonal")
    ps.add_argument("--variant", choices=["bqp", "dqc1"], default="dqc1")
    ps.add_argument("--k", type=int, default=4)
    ps.add_argument("--l", type=int, default=3)
    _add_common(ps)
    ps.set_defaults(handler=_cmd_qswe_sign)

    p = sub.add_parser("braid", help="braid-group unitaries on the path basis")
    bsub = p.add_subparsers(dest="braid_command", required=True)
    pb = bsub.add_parser("unitary", help="matrix of a braid word")
    pb.add_argument("--braid", required=True, help="braid spec 'strands:letters'")
    pb.add_argument("--k", type=int, default=5, help="root order (default 5)")
    pb.add_argument("--embed", action="store_true", help="pad to the next power of two")
    pb.add_argument("--out", help="write the matrix to this .cmat file")
    _add_common(pb)
    pb.set_defaults(handler=_cmd_braid_unitary)

    p = sub.add_parser("bside-expect", help="expectation of an observable on the target register")
    p.add_argument("--unitary", help=".cmat file with the controlled unitary")
    p.add_argument("--braid", help="braid spec instead of --unitary")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--observable", required=True, help=".cmat file, Hermitian, target dimension")
    _add_circuit_params(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_bside_expect)

    p = sub.add_parser("separable-decomp", help="explicit separable ensemble of the output state")
    p.add_argument("--unitary", help=".cmat file with the controlled unitary")
    p.add_argument("--braid", help="braid spec instead of --unitary")
    p.add_argument("--k", type=int, default=5)
    _add_circuit_params(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_separable_decomp)

    p = sub.add_parser("catalan", help="coupling-scheme counting")
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_catalan)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (UsageError, FileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
