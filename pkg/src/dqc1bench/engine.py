"""One-clean-qubit circuit engine.

Builds the exact output state of the generalized circuit in which a top qubit
of polarization alpha, rotated by a general 1-qubit unitary (angles theta and
delta = phi + chi), controls a unitary on n maximally mixed qubits. Provides
exact X/Y expectations of the top qubit, simulated shot sampling of those
measurements, the explicit separable product-state ensemble of the output, and
target-side expectation values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .linalg import DensityMatrix, unitary_eigensystem

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: alpha, theta, delta of the circuit whose output blocks are [[I, U], [U+, I]]/2^(n+1)
STANDARD_CIRCUIT = (1.0, math.pi / 4, math.pi)


class UninformativeCircuitError(ValueError):
    """The X/Y expectations carry no trace information (alpha*sin(2 theta) ~ 0)."""


@dataclass(frozen=True)
class Dqc1Config:
    """Circuit parameters: polarization, rotation angles, and the controlled unitary."""

    alpha: float
    theta: float
    delta: float
    unitary: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError("unitary must be a square matrix")
        dim = u.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise ValueError(f"unitary dimension {dim} is not a power of two >= 2")
        if np.abs(u.conj().T @ u - np.eye(dim)).max() > 1e-10:
            raise ValueError("matrix is not unitary within 1e-10")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        u = u.copy()
        u.flags.writeable = False
        object.__setattr__(self, "unitary", u)

    @property
    def n_qubits(self) -> int:
        return self.unitary.shape[0].bit_length() - 1

    @classmethod
    def standard(cls, unitary: np.ndarray) -> "Dqc1Config":
        """The canonical circuit with blocks [[I, U], [U+, I]]/2^(n+1)."""
        alpha, theta, delta = STANDARD_CIRCUIT
        return cls(alpha=alpha, theta=theta, delta=delta, unitary=unitary)


@dataclass
class Dqc1State:
    """Output state of the circuit, kept in block form.

    The density matrix, on the (top qubit) x (2^n target) factorization, is

        [[ (1 + a c2) I,  -a e^{i delta} s2 U ],
         [ -a e^{-i delta} s2 U+,  (1 - a c2) I ]] / 2^(n+1)

    with c2 = cos(2 theta), s2 = sin(2 theta). ``top_left_block`` and
    ``off_diag_coeff`` are the scalar block coefficients including the global
    1/2^(n+1); the dense matrix is materialized on demand.
    """

    config: Dqc1Config
    top_left_block: float
    off_diag_coeff: complex

    @cached_property
    def dense(self) -> DensityMatrix:
        cfg = self.config
        dim = cfg.unitary.shape[0]
        norm = 2 * dim
        c2 = math.cos(2 * cfg.theta)
        eye = np.eye(dim)
        mat = np.block(
            [
                [(1 + cfg.alpha * c2) * eye, self.off_diag_coeff * norm * cfg.unitary],
                [
                    np.conj(self.off_diag_coeff) * norm * cfg.unitary.conj().T,
                    (1 - cfg.alpha * c2) * eye,
                ],
            ]
        ) / norm
        return DensityMatrix(mat, (2, dim))


def build_state(config: Dqc1Config) -> Dqc1State:
    """Assemble the exact block-form output state for the given circuit."""
    dim = config.unitary.shape[0]
    norm = 2 * dim
    top_left = (1 + config.alpha * math.cos(2 * config.theta)) / norm
    coeff = -config.alpha * np.exp(1j * config.delta) * math.sin(2 * config.theta) / norm
    return Dqc1State(config=config, top_left_block=top_left, off_diag_coeff=complex(coeff))


def _exact_xy(state: Dqc1State) -> tuple[float, float]:
    # <X> = Re(c tau), <Y> = -Im(c tau) follow from the block form with
    # c = -alpha e^{i delta} sin(2 theta) and tau = tr(U)/2^n; cost O(2^n).
    cfg = state.config
    dim = cfg.unitary.shape[0]
    tau = complex(np.trace(cfg.unitary)) / dim
    c = -cfg.alpha * np.exp(1j * cfg.delta) * math.sin(2 * cfg.theta)
    prod = c * tau
    return float(prod.real), float(-prod.imag)


def exact_trace_expectations(state: Dqc1State) -> tuple[float, float, complex]:
    """Exact <X>, <Y> of the top qubit and the implied normalized trace.

    The implied estimate is (<X> - i <Y>) / prefactor with prefactor
    -alpha e^{i delta} sin(2 theta), which recovers tr(U)/2^n exactly.
    """
    cfg = state.config
    prefactor = -cfg.alpha * np.exp(1j * cfg.delta) * math.sin(2 * cfg.theta)
    if abs(prefactor) < 1e-14:
        raise UninformativeCircuitError(
            "off-diagonal prefactor vanishes; X/Y measurements carry no trace signal"
        )
    x, y = _exact_xy(state)
    implied = (x - 1j * y) / prefactor
    return x, y, complex(implied)


@dataclass(frozen=True)
class ShotEstimate:
    """Empirical mean of simulated +-1 measurement outcomes."""

    mean: float
    stderr: float
    shots: int
    basis: str
    seed: int


def shot_batch_seed(seed: int, batch_index: int) -> np.random.SeedSequence:
    """Child seed for one shot batch; deterministic in (seed, batch_index)."""
    return np.random.SeedSequence((int(seed) & (2**64 - 1), int(batch_index)))


def sample_shots(
    state: Dqc1State,
    basis: str,
    shots: int,
    seed: int,
    batch_size: int = 1 << 16,
) -> ShotEstimate:
    """Simulate ``shots`` independent +-1 measurements of X or Y on the top qubit.

    Each outcome is +1 with probability (1 + <basis>)/2, using the exact
    expectation as the Bernoulli parameter (equivalent in distribution to full
    state collapse for a single-qubit measurement). Batches draw from
    independently seeded child generators, so results do not depend on how
    batches are scheduled.
    """
    if basis not in ("X", "Y"):
        raise ValueError(f"basis must be 'X' or 'Y', got {basis!r}")
    if shots < 1:
        raise ValueError("shots must be >= 1")
    x, y = _exact_xy(state)
    expect = x if basis == "X" else y
    p_plus = min(max((1.0 + expect) / 2.0, 0.0), 1.0)

    n_plus = 0
    done = 0
    batch = 0
    while done < shots:
        take = min(batch_size, shots - done)
        rng = np.random.default_rng(shot_batch_seed(seed, batch))
        n_plus += int(rng.binomial(take, p_plus))
        done += take
        batch += 1

    mean = (2 * n_plus - shots) / shots
    if shots > 1:
        stderr = math.sqrt(max(0.0, 1.0 - mean * mean) / (shots - 1))
    else:
        stderr = 0.0
    return ShotEstimate(mean=mean, stderr=stderr, shots=shots, basis=basis, seed=seed)


@dataclass(frozen=True)
class SeparableEnsemble:
    """Explicit product-state ensemble reproducing the circuit output state.

    ``members`` holds (weight, top-qubit amplitude pair, target eigenvector
    index); the target-side vectors are the columns of ``b_eigenvectors``.
    The reals a, b, c, d solve a^2+c^2 = 1+alpha cos2theta,
    b^2+d^2 = 1-alpha cos2theta, ab+cd = alpha sin2theta, a^2+b^2 = c^2+d^2 = 1
    via 2u = 2theta + psi, 2v = 2theta - psi, cos psi = alpha.
    """

    a: float
    b: float
    c: float
    d: float
    psi: float
    members: tuple[tuple[float, np.ndarray, int], ...]
    b_eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Dense matrix of the ensemble average, for residual checks."""
        dim = self.b_eigenvectors.shape[0]
        out = np.zeros((2 * dim, 2 * dim), dtype=complex)
        for weight, top, j in self.members:
            vec = np.kron(top, self.b_eigenvectors[:, j])
            out += weight * np.outer(vec, vec.conj())
        return out


def separable_decomposition(state: Dqc1State) -> SeparableEnsemble:
    """Decompose the output state into 2*2^n pure product states."""
    cfg = state.config
    psi = math.acos(cfg.alpha)
    u_ang = cfg.theta + psi / 2.0
    v_ang = cfg.theta - psi / 2.0
    a, b = math.cos(u_ang), math.sin(u_ang)
    c, d = math.cos(v_ang), math.sin(v_ang)

    phases, vecs = unitary_eigensystem(cfg.unitary)
    dim = cfg.unitary.shape[0]
    weight = 1.0 / (2 * dim)
    members = []
    for j in range(dim):
        # phase chosen so the ensemble average reproduces the block form with
        # off-diagonal -alpha e^{i delta} sin(2 theta) U
        ph = np.conj(phases[j]) * np.exp(-1j * cfg.delta)
        members.append((weight, np.array([a, -b * ph], dtype=complex), j))
        members.append((weight, np.array([c, -d * ph], dtype=complex), j))
    return SeparableEnsemble(
        a=a, b=b, c=c, d=d, psi=psi, members=tuple(members), b_eigenvectors=vecs
    )


def b_side_expectation(state: Dqc1State, observable: np.ndarray) -> float:
    """Expectation of a Hermitian observable on the target register.

    Evaluated both by dense contraction and by the closed form tr(M)/2^n; the
    two must agree to 1e-10. The closed form is independent of alpha, theta,
    delta, and U: no information about the top qubit leaks into the target.
    """
    m = np.asarray(observable, dtype=complex)
    dim = state.config.unitary.shape[0]
    if m.shape != (dim, dim):
        raise ValueError(f"observable shape {m.shape} does not match target dim {dim}")
    if np.abs(m - m.conj().T).max() > 1e-10:
        raise ValueError("observable is not Hermitian within 1e-10")
    dense = float(
        np.trace(state.dense.matrix @ np.kron(np.eye(2), m)).real
    )
    closed = float(np.trace(m).real) / dim
    if abs(dense - closed) > 1e-10:
        raise RuntimeError(
            f"dense contraction {dense} disagrees with closed form {closed}"
        )
    return dense
