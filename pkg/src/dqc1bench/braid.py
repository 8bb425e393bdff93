"""Unitary braid-group representations on the Temperley-Lieb path basis.

The representation space at the k-th root of unity is spanned by height
sequences z_0 = 1, z_{i+1} = z_i +- 1 confined to 1 <= z <= k - 1 (one height
per strand boundary). The algebra generators act on at most two paths at a
time, through the ladder weights lambda_l = sin(pi l / k), and the braid
generators are Kauffman combinations A I + A^{-1} E_i, unitary for
A = i e^{-i pi / (2k)}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


def kauffman_parameter(k: int) -> complex:
    """Loop parameter A with d = -A^2 - A^{-2} = 2 cos(pi/k); makes sigma_i unitary."""
    return 1j * cmath.exp(-1j * math.pi / (2 * k))


@dataclass(frozen=True)
class PathBasis:
    """Ordered admissible height sequences for n strands at root order k."""

    strands: int
    root_order: int
    paths: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, strands: int, root_order: int = 5) -> "PathBasis":
        if strands < 2:
            raise ValueError("need at least 2 strands")
        if root_order < 3:
            raise ValueError("root order must be at least 3")
        found: list[tuple[int, ...]] = []

        def extend(prefix: list[int]):
            if len(prefix) == strands + 1:
                found.append(tuple(prefix))
                return
            for step in (-1, 1):
                z = prefix[-1] + step
                if 1 <= z <= root_order - 1:
                    prefix.append(z)
                    extend(prefix)
                    prefix.pop()

        extend([1])
        found.sort()
        return cls(strands=strands, root_order=root_order, paths=tuple(found))

    @property
    def dimension(self) -> int:
        return len(self.paths)

    def index(self, path: tuple[int, ...]) -> int:
        return self.paths.index(path)


@dataclass(frozen=True)
class BraidWord:
    """Signed generator letters; +i is sigma_i, -i its inverse (1-based)."""

    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("need at least 2 strands")
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise ValueError(
                    f"letter {letter} out of range for {self.strands} strands"
                )

    @classmethod
    def from_string(cls, spec: str) -> "BraidWord":
        """Parse "strands:letters", e.g. "4:+1,-2"; an empty letter list is allowed."""
        head, _, tail = spec.partition(":")
        try:
            strands = int(head)
        except ValueError as exc:
            raise ValueError(f"bad strand count in braid spec {spec!r}") from exc
        letters = tuple(int(tok) for tok in tail.split(",") if tok.strip())
        return cls(strands=strands, letters=letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))


def tl_generator(basis: PathBasis, i: int) -> np.ndarray:
    """Temperley-Lieb generator E_i on the path basis (real symmetric, E^2 = d E).

    E_i annihilates paths with z_{i-1} != z_{i+1}; on the pair of paths sharing
    every height except z_i, with z_{i-1} = z_{i+1} = l, it acts as

        (1 / lambda_l) [[lambda_{l-1}, sqrt(lambda_{l-1} lambda_{l+1})],
                        [sqrt(lambda_{l-1} lambda_{l+1}), lambda_{l+1}]]

    on the ordered sub-basis (z_i = l - 1, z_i = l + 1); out-of-range heights
    (lambda_0 = lambda_k = 0) truncate the block to 1 x 1.
    """
    if not 1 <= i <= basis.strands - 1:
        raise ValueError(f"generator index {i} out of range 1..{basis.strands - 1}")
    k = basis.root_order
    lam = lambda level: math.sin(math.pi * level / k)
    dim = basis.dimension
    index = {p: j for j, p in enumerate(basis.paths)}
    e = np.zeros((dim, dim))
    for path in basis.paths:
        if path[i - 1] != path[i + 1]:
            continue
        level = path[i - 1]
        row = index[path]
        e[row, row] = lam(path[i]) / lam(level)
        partner = list(path)
        partner[i] = 2 * level - path[i]
        col = index.get(tuple(partner))
        if col is not None:
            e[row, col] = math.sqrt(lam(level - 1) * lam(level + 1)) / lam(level)
    return e


def braid_generator(basis: PathBasis, i: int, sign: int = 1) -> np.ndarray:
    """Braid generator sigma_i^(+-1) as A I + A^{-1} E_i (or its inverse)."""
    a = kauffman_parameter(basis.root_order)
    mat = a * np.eye(basis.dimension, dtype=complex) + (1 / a) * tl_generator(basis, i)
    if sign < 0:
        mat = mat.conj().T
    return mat


def braid_unitary(word: BraidWord, root_order: int = 5) -> np.ndarray:
    """Ordered product of generator matrices for the word (left to right)."""
    basis = PathBasis.build(word.strands, root_order)
    mat = np.eye(basis.dimension, dtype=complex)
    for letter in word.letters:
        mat = mat @ braid_generator(basis, abs(letter), 1 if letter > 0 else -1)
    return mat


@dataclass(frozen=True)
class QubitEmbedding:
    """A path-space unitary padded with an identity block to the next power of two.

    ``trace_path`` is the trace of the original matrix, ``trace_embedded`` the
    trace of the padded one; they differ by exactly ``padding_dim``.
    """

    matrix: np.ndarray
    n_qubits: int
    padding_dim: int
    trace_path: complex
    trace_embedded: complex


def embed_in_qubits(u: np.ndarray) -> QubitEmbedding:
    """Extend a unitary to 2^m dimensions, acting as the identity on the padding."""
    mat = np.asarray(u, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    dim = mat.shape[0]
    m = (dim - 1).bit_length()
    full = np.eye(2**m, dtype=complex)
    full[:dim, :dim] = mat
    return QubitEmbedding(
        matrix=full,
        n_qubits=m,
        padding_dim=2**m - dim,
        trace_path=complex(np.trace(mat)),
        trace_embedded=complex(np.trace(full)),
    )
