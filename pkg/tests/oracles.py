"""Independent reference implementations used to check the package.

Everything here is deliberately written against plain numpy / stdlib, not the
package's own code paths, so tests compare two genuinely different routes.
"""

from __future__ import annotations

import math

import numpy as np


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def spectrum_entropy(mat: np.ndarray) -> float:
    """Entropy in bits from a raw eigendecomposition (no clamping logic shared)."""
    w = np.linalg.eigvalsh(mat)
    w = w[w > 1e-14]
    return float(-(w * np.log2(w)).sum())


def trace_out(mat: np.ndarray, d_a: int, d_b: int, keep: str) -> np.ndarray:
    t = mat.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("ajbj->ab", t)
    return np.einsum("iajb->ab", t)


def dense_mutual_information(mat: np.ndarray, d_a: int, d_b: int) -> float:
    h_a = spectrum_entropy(trace_out(mat, d_a, d_b, "A"))
    h_b = spectrum_entropy(trace_out(mat, d_a, d_b, "B"))
    return h_a + h_b - spectrum_entropy(mat)


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    r = rank or dim
    g = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_pure(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def random_unitary_dense(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# ---------------------------------------------------------------------------
# GF(2)
# ---------------------------------------------------------------------------


def gf2_rank_dense(entries: list[list[int]]) -> int:
    """Row reduction on a dense 0/1 array; independent of the bitmask code."""
    a = np.array(entries, dtype=np.int8) % 2
    if a.size == 0:
        return 0
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if a[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def brute_force_qswe(a_entries: list[list[int]], b_entries: list[list[int]], x, y):
    """All-2^n filter oracle: test A b = 0 per vector, accumulate exactly.

    Vectorized over candidate vectors with popcounts; sign and weight counts
    are tallied exactly before any multiplication by x and y powers.
    """
    n = len(b_entries)
    a_masks = [sum((int(v) & 1) << j for j, v in enumerate(row)) for row in a_entries]
    b_masks = [sum((int(v) & 1) << j for j, v in enumerate(row)) for row in b_entries]
    candidates = np.arange(1 << n, dtype=np.uint64)

    valid = np.ones(1 << n, dtype=bool)
    for mask in a_masks:
        valid &= (np.bitwise_count(candidates & np.uint64(mask)) & 1) == 0

    quad = np.zeros(1 << n, dtype=np.uint64)
    for i in range(n):
        bit_i = (candidates >> np.uint64(i)) & np.uint64(1)
        quad ^= bit_i & (np.bitwise_count(candidates & np.uint64(b_masks[i])) & np.uint64(1))
    weight = np.bitwise_count(candidates)

    total = 0 if isinstance(x, int) and isinstance(y, int) else 0.0
    for w in range(n + 1):
        sel = valid & (weight == w)
        plus = int((sel & (quad == 0)).sum())
        minus = int((sel & (quad == 1)).sum())
        if plus == minus:
            continue
        total += (plus - minus) * x**w * y ** (n - w)
    return total


def random_gf2_entries(m: int, n: int, rng: np.random.Generator) -> list[list[int]]:
    return rng.integers(0, 2, size=(m, n)).tolist()


def random_diag_one_entries(n: int, rng: np.random.Generator) -> list[list[int]]:
    entries = rng.integers(0, 2, size=(n, n))
    np.fill_diagonal(entries, 1)
    return entries.tolist()


# ---------------------------------------------------------------------------
# path counting
# ---------------------------------------------------------------------------


def count_admissible_paths(strands: int, k: int) -> int:
    """Exhaustive walk count for height sequences in [1, k-1] from height 1."""
    counts = {1: 1}
    for _ in range(strands):
        nxt: dict[int, int] = {}
        for z, c in counts.items():
            for step in (-1, 1):
                w = z + step
                if 1 <= w <= k - 1:
                    nxt[w] = nxt.get(w, 0) + c
        counts = nxt
    return sum(counts.values())
