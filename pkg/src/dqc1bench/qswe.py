"""Exact quadratically signed weight enumerators over GF(2).

Evaluates S(A, B, x, y) = sum over b with Ab = 0 of (-1)^(b^T B b) x^|b| y^(n-|b|),
with bit-packed GF(2) rows (one Python int per row, bit j = column j). The sum
walks the nullspace of A in Gray-code order over basis coefficients, so each
step flips a single basis vector into the running vector b and updates the
weight |b| and the quadratic form b^T B b incrementally:

    |b ^ v|        = |b| + |v| - 2 |b & v|
    q(b ^ v)       = q(b) ^ q(v) ^ parity(b & ((B + B^T) v))

with q(v) and (B + B^T) v precomputed per basis vector. Integer instances are
evaluated in exact arbitrary precision; with k = 4, l = 3 the sum reaches 7^n,
past 64-bit range near n = 22.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

MAX_NULLITY = 26  # desk-scale guard: at most 2^26 enumerated terms

Scalar = Union[int, float]


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense matrix over GF(2), one packed bitmask per row (bit j = column j)."""

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or len(self.rows) != self.m:
            raise ValueError("row count does not match shape")
        mask = (1 << self.n) - 1
        if any(r < 0 or r & ~mask for r in self.rows):
            raise ValueError(f"row bits exceed {self.n} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[int], n: int) -> "Gf2Matrix":
        return cls(m=len(rows), n=n, rows=tuple(int(r) for r in rows))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Gf2Matrix":
        if not entries:
            return cls(m=0, n=0, rows=())
        n = len(entries[0])
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("ragged rows")
            rows.append(sum((int(v) & 1) << j for j, v in enumerate(row)))
        return cls(m=len(entries), n=n, rows=tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(m=n, n=n, rows=tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, m: int, n: int) -> "Gf2Matrix":
        return cls(m=m, n=n, rows=(0,) * m)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.m)]

    def transpose(self) -> "Gf2Matrix":
        cols = [
            sum(((self.rows[i] >> j) & 1) << i for i in range(self.m))
            for j in range(self.n)
        ]
        return Gf2Matrix(m=self.n, n=self.m, rows=tuple(cols))

    def matvec(self, v: int) -> int:
        """A @ v over GF(2); v is an n-bit mask, result an m-bit mask."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= ((row & v).bit_count() & 1) << i
        return out

    def rank(self) -> int:
        work = list(self.rows)
        rank = 0
        for col in range(self.n):
            pivot = next(
                (r for r in range(rank, len(work)) if (work[r] >> col) & 1), None
            )
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            for r in range(len(work)):
                if r != rank and (work[r] >> col) & 1:
                    work[r] ^= work[rank]
            rank += 1
        return rank


def gf2_nullspace(a: Gf2Matrix) -> list[int]:
    """Basis of {b : A b = 0 mod 2}, as n-bit masks; size is n - rank(A)."""
    work = list(a.rows)
    pivot_cols: list[int] = []
    rank = 0
    for col in range(a.n):
        pivot = next((r for r in range(rank, len(work)) if (work[r] >> col) & 1), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and (work[r] >> col) & 1:
                work[r] ^= work[rank]
        pivot_cols.append(col)
        rank += 1
    free_cols = [c for c in range(a.n) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = 1 << f
        for r, p in enumerate(pivot_cols):
            if (work[r] >> f) & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def lower_triangular(a: Gf2Matrix) -> Gf2Matrix:
    """Strictly-below-diagonal part; entries on or above the diagonal zeroed."""
    if a.m != a.n:
        raise ValueError("lower_triangular requires a square matrix")
    return Gf2Matrix(m=a.m, n=a.n, rows=tuple(row & ((1 << i) - 1) for i, row in enumerate(a.rows)))


def stack(c: Gf2Matrix, d: Gf2Matrix) -> Gf2Matrix:
    """Rows of c placed above rows of d."""
    if c.n != d.n:
        raise ValueError(f"column mismatch: {c.n} vs {d.n}")
    return Gf2Matrix(m=c.m + d.m, n=c.n, rows=c.rows + d.rows)


@dataclass(frozen=True)
class QsweInstance:
    a: Gf2Matrix
    b: Gf2Matrix
    x: Scalar
    y: Scalar

    def __post_init__(self):
        if self.b.m != self.b.n:
            raise ValueError("B must be square")
        if self.a.n != self.b.n:
            raise ValueError(f"A has {self.a.n} columns but B is {self.b.n} x {self.b.n}")


@dataclass(frozen=True)
class QsweResult:
    value: Scalar
    nullity: int
    terms_enumerated: int
    rounding_bound: Optional[float] = None


def quadratic_form(b: Gf2Matrix, v: int) -> int:
    """v^T B v mod 2 for an n-bit mask v."""
    q = 0
    i = 0
    rest = v
    while rest:
        if rest & 1:
            q ^= (b.rows[i] & v).bit_count() & 1
        rest >>= 1
        i += 1
    return q


def _symmetrized_action(b: Gf2Matrix, v: int) -> int:
    """(B + B^T) v as an n-bit mask."""
    bv = b.matvec(v)
    btv = 0
    i = 0
    rest = v
    while rest:
        if rest & 1:
            btv ^= b.rows[i]
        rest >>= 1
        i += 1
    return bv ^ btv


def qswe_eval(
    inst: QsweInstance,
    on_step: Optional[Callable[[int, int, int, int], None]] = None,
) -> QsweResult:
    """Exact enumerator value by Gray-code walk over the nullspace of A.

    ``on_step(step, b, weight, quad)`` is invoked after every update when
    given; it exists so tests can audit the incremental bookkeeping against
    from-scratch recomputation.
    """
    basis = gf2_nullspace(inst.a)
    nullity = len(basis)
    if nullity > MAX_NULLITY:
        raise ValueError(
            f"nullity {nullity} exceeds the desk-scale guard of {MAX_NULLITY}"
        )
    n = inst.a.n
    bmat = inst.b

    basis_weight = [v.bit_count() for v in basis]
    basis_quad = [quadratic_form(bmat, v) for v in basis]
    basis_cross = [_symmetrized_action(bmat, v) for v in basis]

    # net[w] = (# of b with weight w, even quad form) - (# with odd quad form);
    # the value only depends on b through (|b|, b^T B b), so counting first keeps
    # the hot loop free of bignum arithmetic
    net = [0] * (n + 1)
    b = 0
    weight = 0
    quad = 0
    net[0] += 1
    if on_step is not None:
        on_step(0, b, weight, quad)
    terms = 1 << nullity
    for step in range(1, terms):
        j = (step & -step).bit_length() - 1
        v = basis[j]
        quad ^= basis_quad[j] ^ ((b & basis_cross[j]).bit_count() & 1)
        weight += basis_weight[j] - 2 * (b & v).bit_count()
        b ^= v
        net[weight] += 1 - 2 * quad
        if on_step is not None:
            on_step(step, b, weight, quad)

    exact = isinstance(inst.x, int) and isinstance(inst.y, int)
    if exact:
        value: Scalar = sum(
            c * inst.x**w * inst.y ** (n - w) for w, c in enumerate(net) if c
        )
        bound = None
        limit = (abs(inst.x) + abs(inst.y)) ** n
        if abs(value) > limit:
            raise RuntimeError(f"|S| = {abs(value)} exceeds the bound {limit}")
    else:
        terms_f = [c * float(inst.x) ** w * float(inst.y) ** (n - w) for w, c in enumerate(net)]
        value = math.fsum(terms_f)
        bound = (n + 2) * 2.3e-16 * math.fsum(abs(t) for t in terms_f)
    return QsweResult(value=value, nullity=nullity, terms_enumerated=terms, rounding_bound=bound)


@dataclass(frozen=True)
class SignResult:
    sign: int
    value: int
    promise_satisfied: bool


def sign_problem(variant: str, a: Gf2Matrix, k: int = 4, l: int = 3) -> SignResult:
    """Sign of the restricted enumerator of one of the two promise problems.

    ``variant`` selects the constraint matrix: "bqp" evaluates
    S(A, lower(A), k, l); "dqc1" evaluates S([A; A^T], lower(A), k, l). The
    promise |S| >= (k^2 + l^2)^(n/2) / 2 is decided exactly by comparing
    4 S^2 against (k^2 + l^2)^n in integers; the sign is returned either way
    (0 only if S = 0, which the promise excludes).
    """
    if variant not in ("bqp", "dqc1"):
        raise ValueError(f"variant must be 'bqp' or 'dqc1', got {variant!r}")
    if a.m != a.n:
        raise ValueError("A must be square")
    if not (isinstance(k, int) and isinstance(l, int)) or k <= 0 or l <= 0:
        raise ValueError("k and l must be positive integers")
    if any(not ((a.rows[i] >> i) & 1) for i in range(a.n)):
        raise ValueError("diag(A) must be all ones")

    b = lower_triangular(a)
    constraint = a if variant == "bqp" else stack(a, a.transpose())
    result = qswe_eval(QsweInstance(a=constraint, b=b, x=k, y=l))
    s = result.value
    assert isinstance(s, int)
    sign = (s > 0) - (s < 0)
    promise = 4 * s * s >= (k * k + l * l) ** a.n
    return SignResult(sign=sign, value=s, promise_satisfied=promise)
