"""Dense complex linear algebra and quantum-state primitives.

Density matrices carry an explicit tensor factorization (a list of subsystem
dimensions) so that partial traces and local measurements can be expressed by
subsystem index rather than by hand-rolled reshapes at every call site. All
operations are pure; matrices are treated as immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.linalg

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
DEGENERATE_PROB = 1e-14


def _as_complex_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on a labeled tensor space.

    ``dims`` lists the subsystem dimensions in tensor order; the matrix acts on
    the product space of dimension prod(dims). Construction validates
    Hermiticity and trace to 1e-10 and the spectrum down to -1e-10.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        mat = _as_complex_matrix(self.matrix)
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must each be >= 2, got {dims}")
        dim = math.prod(dims)
        if mat.shape != (dim, dim):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
        herm = np.abs(mat - mat.conj().T).max()
        if herm > HERMITIAN_TOL:
            raise ValueError(f"matrix is not Hermitian (max deviation {herm:.3e})")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr}, expected 1 within {TRACE_TOL}")
        lo = float(np.linalg.eigvalsh(mat).min())
        if lo < -PSD_TOL:
            raise ValueError(f"matrix has eigenvalue {lo:.3e} below -{PSD_TOL}")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    def allclose(self, other: "DensityMatrix", atol: float) -> bool:
        """Entrywise comparison with an explicit absolute tolerance."""
        return self.dims == other.dims and bool(
            np.abs(self.matrix - other.matrix).max() <= atol
        )


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    d = math.prod(dims)
    return DensityMatrix(np.eye(d, dtype=complex) / d, tuple(dims))


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @classmethod
    def of_hermitian(cls, matrix: np.ndarray) -> "EigenDecomposition":
        mat = _as_complex_matrix(matrix)
        if np.abs(mat - mat.conj().T).max() > HERMITIAN_TOL:
            raise ValueError("input is not Hermitian within tolerance")
        vals, vecs = np.linalg.eigh(mat)
        return cls(eigenvalues=vals[::-1].copy(), eigenvectors=vecs[:, ::-1].copy())

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def unitary_eigensystem(u: np.ndarray, tol: float = HERMITIAN_TOL):
    """Eigenphases and an orthonormal eigenbasis of a unitary matrix.

    Uses the complex Schur form, which is diagonal for normal input, so the
    returned eigenvectors stay orthonormal even on degenerate spectra.
    Returns (eigenvalues, eigenvectors) with eigenvalues[j] = u @ v_j / v_j.
    """
    mat = _as_complex_matrix(u)
    if np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])).max() > max(tol, 1e-8):
        raise ValueError("input is not unitary within tolerance")
    t, z = scipy.linalg.schur(mat, output="complex")
    vals = np.diag(t).copy()
    resid = np.abs((z * vals) @ z.conj().T - mat).max()
    if resid > 1e-9:
        raise RuntimeError(f"eigendecomposition residual {resid:.3e} exceeds 1e-9")
    return vals, z


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy -sum(p log2 p) of the spectrum, in bits, with 0 log 0 = 0.

    Eigenvalues in [-1e-10, 0) are clamped to zero and the spectrum is
    renormalized before taking logs; deeper negativity is rejected.
    """
    w = np.linalg.eigvalsh(rho.matrix)
    if w.min() < -PSD_TOL:
        raise ValueError(f"state has eigenvalue {w.min():.3e} below -{PSD_TOL}")
    w = np.clip(w, 0.0, None)
    w = w / w.sum()
    nz = w[w > 0.0]
    return max(float(-(nz * np.log2(nz)).sum()), 0.0)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every subsystem not listed in ``keep``."""
    keep_set = sorted(set(int(i) for i in keep))
    n = rho.n_subsystems
    if not keep_set:
        raise ValueError("keep set must be nonempty")
    if any(i < 0 or i >= n for i in keep_set):
        raise ValueError(f"keep indices {keep_set} out of range for {n} subsystems")
    if len(keep_set) == n:
        raise ValueError("keep set must be a proper subset of the subsystems")
    reduced = _partial_trace_matrix(rho.matrix, rho.dims, keep_set)
    return DensityMatrix(reduced, tuple(rho.dims[i] for i in keep_set))


def _partial_trace_matrix(mat: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    dims = tuple(dims)
    tensor = mat.reshape(dims + dims)
    n = len(dims)
    traced = [i for i in range(n) if i not in keep]
    # trace highest axes first so lower axis numbers stay valid
    live = list(dims)
    for i in sorted(traced, reverse=True):
        tensor = np.trace(tensor, axis1=i, axis2=i + len(live))
        live.pop(i)
    d = math.prod(live)
    return tensor.reshape(d, d)


def embed_operator(op: np.ndarray, dims: Sequence[int], side: Sequence[int]) -> np.ndarray:
    """Lift an operator on the ``side`` subsystems (ascending order) to the full space."""
    dims = tuple(dims)
    side = sorted(set(int(i) for i in side))
    op = _as_complex_matrix(op)
    d_side = math.prod(dims[i] for i in side)
    if op.shape != (d_side, d_side):
        raise ValueError(f"operator shape {op.shape} does not match side dims {d_side}")
    rest = [i for i in range(len(dims)) if i not in side]
    d_rest = math.prod(dims[i] for i in rest) if rest else 1
    full = np.kron(op, np.eye(d_rest, dtype=complex))
    order = side + rest
    if order == list(range(len(dims))):
        return full
    ordered_dims = tuple(dims[i] for i in order)
    tensor = full.reshape(ordered_dims + ordered_dims)
    inv = np.argsort(order)
    perm = list(inv) + [len(dims) + j for j in inv]
    d = math.prod(dims)
    return tensor.transpose(perm).reshape(d, d)


@dataclass(frozen=True)
class MeasurementOutcome:
    """One projective outcome: probability and the conditioned complement state.

    ``degenerate`` marks outcomes with probability below 1e-14, for which the
    conditional state is a placeholder (maximally mixed); entropy averages must
    skip these entries (their weight is negligible by construction).
    """

    probability: float
    state: DensityMatrix
    degenerate: bool = False


def measurement_update(
    rho: DensityMatrix,
    side: Iterable[int],
    projectors: Sequence[np.ndarray],
) -> list[MeasurementOutcome]:
    """Project onto each outcome of a complete orthogonal measurement on ``side``.

    Returns, per projector P_j, the outcome probability p_j = tr(P_j rho) and
    the complement state tr_side(P_j rho P_j) / p_j.
    """
    side = sorted(set(int(i) for i in side))
    n = rho.n_subsystems
    if not side or len(side) >= n:
        raise ValueError("measured side must be a nonempty proper subsystem subset")
    d_side = math.prod(rho.dims[i] for i in side)
    projs = [_as_complex_matrix(p) for p in projectors]
    _validate_projector_family(projs, d_side)

    keep = [i for i in range(n) if i not in side]
    keep_dims = tuple(rho.dims[i] for i in keep)
    outcomes = []
    for p in projs:
        full = embed_operator(p, rho.dims, side)
        sandwich = full @ rho.matrix @ full
        prob = float(sandwich.trace().real)
        if prob < DEGENERATE_PROB:
            outcomes.append(
                MeasurementOutcome(max(prob, 0.0), maximally_mixed(keep_dims), True)
            )
            continue
        reduced = _partial_trace_matrix(sandwich, rho.dims, keep)
        reduced = (reduced + reduced.conj().T) / 2.0
        # rounding-level negativity is clamped at the unnormalized scale, where
        # the noise lives; anything beyond tolerance propagates as an error
        vals, vecs = np.linalg.eigh(reduced)
        if vals.min() < -PSD_TOL:
            raise ValueError("conditioned state is not positive semidefinite")
        vals = np.clip(vals, 0.0, None)
        vals *= prob / vals.sum()
        cond = (vecs * (vals / prob)) @ vecs.conj().T
        outcomes.append(MeasurementOutcome(prob, DensityMatrix(cond, keep_dims), False))

    total = sum(o.probability for o in outcomes)
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"outcome probabilities sum to {total}, expected 1")
    return outcomes


def _validate_projector_family(projs: Sequence[np.ndarray], dim: int) -> None:
    if not projs:
        raise ValueError("projector list must be nonempty")
    acc = np.zeros((dim, dim), dtype=complex)
    for i, p in enumerate(projs):
        if p.shape != (dim, dim):
            raise ValueError(f"projector {i} has shape {p.shape}, expected {(dim, dim)}")
        if np.abs(p - p.conj().T).max() > HERMITIAN_TOL:
            raise ValueError(f"projector {i} is not Hermitian")
        if np.abs(p @ p - p).max() > HERMITIAN_TOL:
            raise ValueError(f"projector {i} is not idempotent")
        acc += p
    for i in range(len(projs)):
        for j in range(i + 1, len(projs)):
            if np.abs(projs[i] @ projs[j]).max() > HERMITIAN_TOL:
                raise ValueError(f"projectors {i} and {j} are not orthogonal")
    if np.abs(acc - np.eye(dim)).max() > HERMITIAN_TOL:
        raise ValueError("projectors do not sum to the identity on the measured side")


def haar_random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary, deterministic in ``seed``.

    QR of an i.i.d. standard complex Gaussian matrix with the diagonal phase
    correction (Mezzadri's construction).
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def phase_symmetry(u: np.ndarray, tol: float = 1e-10) -> Optional[complex]:
    """Return the phase k with u @ u = k*I when it exists, else None.

    For unitary u the condition u^2 = k I is equivalent to u = k u^dagger
    (right-multiply by u^dagger), so this detects self-adjointness up to phase.
    """
    mat = _as_complex_matrix(u)
    dim = mat.shape[0]
    if np.abs(mat.conj().T @ mat - np.eye(dim)).max() > max(tol, 1e-10):
        raise ValueError("input is not unitary within tolerance")
    sq = mat @ mat
    k = complex(sq.trace() / dim)
    if abs(k) < 0.5 or np.abs(sq - k * np.eye(dim)).max() > tol:
        return None
    return k / abs(k)
