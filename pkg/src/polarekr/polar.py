"""The symplectic polar space of rank nu over GF(q).

The form is fixed as ``f(u, v) = u^T J v`` with ``J = [[0, I], [-I, 0]]`` in
the ordered basis ``e_1..e_nu, f_1..f_nu``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterator, Sequence

from . import subspace as sa
from .errors import AmbientMismatch, BadDimension, LengthMismatch, NonIsotropicSeed, ZeroSubspace
from .gfq import Field, get_field
from .subspace import PointIndex, Subspace, Vector


class PolarSpace:
    def __init__(self, nu: int, field: Field | int):
        if nu < 1:
            raise BadDimension("nu must be at least 1")
        self.nu = nu
        self.field = get_field(field) if isinstance(field, int) else field
        self.n = 2 * nu

    def __repr__(self) -> str:
        return f"PolarSpace(nu={self.nu}, q={self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolarSpace) and (self.nu, self.q) == (other.nu, other.q)

    def __hash__(self) -> int:
        return hash((self.nu, self.q))

    @property
    def q(self) -> int:
        return self.field.q

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        nu, neg = self.nu, self.field.neg_table
        rows = []
        for i in range(self.n):
            row = [0] * self.n
            if i < nu:
                row[nu + i] = 1
            else:
                row[i - nu] = neg[1]
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def points(self) -> PointIndex:
        return PointIndex(self.field, self.n)

    # basis vectors, 1-based as in e_1..e_nu, f_1..f_nu
    def e(self, i: int) -> Vector:
        return sa.unit(self.n, i - 1)

    def f(self, i: int) -> Vector:
        return sa.unit(self.n, self.nu + i - 1)

    def span(self, rows: Sequence[Sequence[int]]) -> Subspace:
        return sa.reduce(self.field, rows, self.n)

    def zero(self) -> Subspace:
        return sa.zero(self.n)

    def whole(self) -> Subspace:
        return sa.full(self.field, self.n)

    def form(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != self.n or len(v) != self.n:
            raise LengthMismatch(f"vectors must have length {self.n}")
        F, nu = self.field, self.nu
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        s = 0
        for i in range(nu):
            s = add[s][mul[u[i]][v[nu + i]]]
            s = add[s][neg[mul[u[nu + i]][v[i]]]]
        return s

    def _check(self, W: Subspace) -> None:
        if W.n != self.n:
            raise AmbientMismatch(f"subspace lives in dimension {W.n}, not {self.n}")

    def gram_of(self, W: Subspace) -> list[list[int]]:
        return [[self.form(a, b) for b in W.rows] for a in W.rows]

    def is_isotropic(self, W: Subspace) -> bool:
        self._check(W)
        return self.rows_isotropic(W.rows)

    def rows_isotropic(self, rows: Sequence[Sequence[int]]) -> bool:
        """True iff the span of ``rows`` is totally isotropic."""
        return all(self.form(rows[i], rows[j]) == 0 for i in range(len(rows)) for j in range(i + 1, len(rows)))

    def type_of(self, W: Subspace) -> tuple[int, int]:
        """``(dim W, s)`` where the Gram matrix of ``W`` has rank ``2s``."""
        self._check(W)
        if W.dim == 0:
            raise ZeroSubspace("type is undefined for the zero subspace")
        r = sa.rank(self.field, self.gram_of(W), W.dim)
        return W.dim, r // 2

    def perp(self, W: Subspace) -> Subspace:
        self._check(W)
        nu, neg = self.nu, self.field.neg_table
        # f(v, w) = sum_i v_i w_{nu+i} - v_{nu+i} w_i
        eqs = [tuple(w[nu:]) + tuple(neg[x] for x in w[:nu]) for w in W.rows]
        return sa.null_space(self.field, eqs, self.n)

    def _extensions(self, W: Subspace, within: Subspace | None) -> Iterator[Subspace]:
        F = self.field
        pool = self.perp(W)
        if within is not None:
            pool = sa.intersect(F, pool, within)
        # one representative per point of pool / W
        comp = sa.reduce(F, [sa.residual(F, W, r) for r in pool.rows], self.n) if pool.rows else pool
        for v in sa.points(F, comp):
            yield Subspace(sa.rref(F, W.rows + (v,), self.n)[0], self.n)

    def enumerate_isotropic(
        self,
        m: int,
        containing: Subspace | None = None,
        within: Subspace | None = None,
    ) -> Iterator[Subspace]:
        """Totally isotropic m-subspaces meeting the constraints, in canonical order.

        Built level by level: each isotropic k-space is extended by one
        point of ``perp(W)/W`` (intersected with ``within``), and each level
        is deduplicated on canonical form.
        """
        if not 0 <= m <= self.nu:
            raise BadDimension(f"m={m} outside [0, {self.nu}]")
        start = self.zero() if containing is None else containing
        self._check(start)
        if within is not None:
            self._check(within)
        if containing is not None and not self.is_isotropic(containing):
            raise NonIsotropicSeed("the containing subspace is not totally isotropic")
        if start.dim > m:
            return iter(())
        if within is not None and not sa.contains(self.field, within, start):
            return iter(())
        level = {start}
        for _ in range(start.dim, m):
            nxt: set[Subspace] = set()
            for W in level:
                nxt.update(self._extensions(W, within))
            level = nxt
        return iter(sorted(level))

    def count_isotropic(self, m: int, containing: Subspace | None = None, within: Subspace | None = None) -> int:
        return sum(1 for _ in self.enumerate_isotropic(m, containing, within))
