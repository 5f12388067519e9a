"""Subspaces of F_q^n in canonical reduced row-echelon form.

A :class:`Subspace` is identified by its RREF rows, so equal point sets
give equal (and equally hashed) values, and the natural tuple order on
rows is the canonical order used by every enumeration in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import AmbientMismatch, BadDimension, LengthMismatch, NonCanonical
from .gfq import Field

Vector = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Subspace:
    rows: tuple[Vector, ...]
    n: int

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        body = " ".join("".join(str(x) for x in r) for r in self.rows)
        return f"<{body or '0'}>"


def zero(n: int) -> Subspace:
    return Subspace((), n)


def full(F: Field, n: int) -> Subspace:
    return Subspace(tuple(unit(n, i) for i in range(n)), n)


def unit(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def rref(F: Field, rows: Iterable[Sequence[int]], n: int) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    M = [list(r) for r in rows]
    for r in M:
        if len(r) != n:
            raise LengthMismatch(f"row of length {len(r)} in ambient of dimension {n}")
    pivots: list[int] = []
    r = 0
    m = len(M)
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if M[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        M[r], M[piv] = M[piv], M[r]
        lead = M[r][c]
        if lead != 1:
            scale = mul[inv[lead]]
            M[r] = [scale[x] for x in M[r]]
        pr = M[r]
        for i in range(m):
            if i != r and M[i][c]:
                f = mul[neg[M[i][c]]]
                M[i] = [add[x][f[y]] for x, y in zip(M[i], pr)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in M[:r]), tuple(pivots)


def reduce(F: Field, rows: Iterable[Sequence[int]], n: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``rows``."""
    rows = [tuple(r) for r in rows]
    if n is None:
        if not rows:
            raise LengthMismatch("cannot infer the ambient dimension of an empty row list")
        n = len(rows[0])
    basis, _ = rref(F, rows, n)
    return Subspace(basis, n)


def rank(F: Field, rows: Iterable[Sequence[int]], n: int) -> int:
    return len(rref(F, rows, n)[1])


def from_rows(F: Field, rows: Sequence[Sequence[int]], n: int) -> Subspace:
    """Parse rows that must already be canonical; rejects anything else."""
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    for r in rows:
        if len(r) != n:
            raise LengthMismatch(f"row of length {len(r)} in ambient of dimension {n}")
        if any(not 0 <= x < F.q for x in r):
            raise NonCanonical(f"entry outside [0,{F.q}) in row {r}")
    if rref(F, rows, n)[0] != rows:
        raise NonCanonical("rows are not in reduced row-echelon form")
    return Subspace(rows, n)


def _check(A: Subspace, B: Subspace) -> None:
    if A.n != B.n:
        raise AmbientMismatch(f"ambient dimensions {A.n} and {B.n} differ")


def residual(F: Field, A: Subspace, v: Sequence[int]) -> Vector:
    """``v`` reduced against the RREF basis of ``A``."""
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    v = list(v)
    for row, p in zip(A.rows, A.pivots):
        c = v[p]
        if c:
            f = mul[neg[c]]
            v = [add[x][f[y]] for x, y in zip(v, row)]
    return tuple(v)


def contains(F: Field, A: Subspace, B: Subspace) -> bool:
    """True iff ``B`` is a subspace of ``A``."""
    _check(A, B)
    if B.dim > A.dim:
        return False
    return all(not any(residual(F, A, r)) for r in B.rows)


def subspace_sum(F: Field, A: Subspace, B: Subspace) -> Subspace:
    _check(A, B)
    return Subspace(rref(F, A.rows + B.rows, A.n)[0], A.n)


def intersect(F: Field, A: Subspace, B: Subspace) -> Subspace:
    """Zassenhaus intersection."""
    _check(A, B)
    n = A.n
    if A.dim == 0 or B.dim == 0:
        return zero(n)
    z = (0,) * n
    rows = [a + a for a in A.rows] + [b + z for b in B.rows]
    basis, pivots = rref(F, rows, 2 * n)
    meet = [r[n:] for r, p in zip(basis, pivots) if p >= n]
    return Subspace(rref(F, meet, n)[0], n)


def meet_dim(F: Field, A: Subspace, B: Subspace) -> int:
    _check(A, B)
    return A.dim + B.dim - rank(F, A.rows + B.rows, A.n)


def null_space(F: Field, rows: Sequence[Sequence[int]], n: int) -> Subspace:
    """All ``v`` with ``sum_j r_j v_j == 0`` for every row ``r``."""
    basis, pivots = rref(F, rows, n)
    neg = F.neg_table
    pset = set(pivots)
    vecs = []
    for f in range(n):
        if f in pset:
            continue
        v = [0] * n
        v[f] = 1
        for row, p in zip(basis, pivots):
            v[p] = neg[row[f]]
        vecs.append(v)
    return Subspace(rref(F, vecs, n)[0], n)


def combine(F: Field, coeffs: Sequence[int], rows: Sequence[Vector], n: int) -> Vector:
    add, mul = F.add_table, F.mul_table
    v = [0] * n
    for c, r in zip(coeffs, rows):
        if c:
            mc = mul[c]
            v = [add[x][mc[y]] for x, y in zip(v, r)]
    return tuple(v)


def rref_matrices(q: int, d: int, k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Every k x d RREF matrix over GF(q) of full rank k."""
    for piv in combinations(range(d), k):
        pset = set(piv)
        free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, d) if j not in pset]
        for vals in product(range(q), repeat=len(free)):
            M = [[0] * d for _ in range(k)]
            for i, p in enumerate(piv):
                M[i][p] = 1
            for (i, j), x in zip(free, vals):
                M[i][j] = x
            yield tuple(tuple(r) for r in M)


def enumerate_subspaces(F: Field, within: Subspace, k: int) -> Iterator[Subspace]:
    """All k-subspaces of ``within``, in canonical order."""
    d = within.dim
    if not 0 <= k <= d:
        raise BadDimension(f"k={k} outside [0, {d}]")
    n = within.n
    out = []
    for C in rref_matrices(F.q, d, k):
        # C in RREF times an RREF basis is again RREF
        out.append(Subspace(tuple(combine(F, row, within.rows, n) for row in C), n))
    out.sort()
    return iter(out)


def points(F: Field, S: Subspace) -> Iterator[Vector]:
    """Normalized (leading entry 1) nonzero vectors of ``S``, one per 1-space."""
    rows = S.rows
    for i in range(len(rows)):
        tail = rows[i + 1:]
        for cs in product(range(F.q), repeat=len(tail)):
            yield combine(F, (1,) + cs, (rows[i],) + tail, S.n)


class PointIndex:
    """Numbering of the 1-spaces of F_q^n, for bitmask meet computations.

    ``mask(S)`` has bit ``i`` set iff point ``i`` lies in ``S``; the meet of
    subspaces is the AND of their masks, and its dimension is recovered
    from the popcount.
    """

    def __init__(self, F: Field, n: int):
        self.F = F
        self.n = n
        whole = full(F, n)
        self.index = {v: i for i, v in enumerate(points(F, whole))}
        self._dim_of = {(F.q**d - 1) // (F.q - 1): d for d in range(n + 1)}

    def mask(self, S: Subspace) -> int:
        idx = self.index
        m = 0
        for v in points(self.F, S):
            m |= 1 << idx[v]
        return m

    def dim_of(self, mask: int) -> int:
        return self._dim_of[mask.bit_count()]

    def npoints(self, d: int) -> int:
        return (self.F.q**d - 1) // (self.F.q - 1)
