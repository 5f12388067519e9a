"""Families of totally isotropic m-spaces and the predicates used on them.

Besides the explicit constructions (H1, H2, trivial stars, M(m; A)) this
module counts H1 without materializing it, by Moebius inversion over the
lattice of subspaces between T and T+U, and computes t-covers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from . import subspace as sa
from .errors import (
    BadDimension,
    EmptyFamily,
    NonIsotropicSeed,
    PolarError,
    PreconditionViolated,
    SeedShape,
    TooLarge,
    WrongTau,
)
from .polar import PolarSpace
from .qcount import anzahl, gaussian
from .subspace import PointIndex, Subspace

LATTICE_CAP = 20000
MAXIMALITY_CAP = 500000


@dataclass(frozen=True)
class Family:
    space: PolarSpace
    m: int
    t: int | None
    members: tuple[Subspace, ...] = field(repr=False)

    @classmethod
    def of(cls, space: PolarSpace, m: int, t: int | None, members: Iterable[Subspace], check: bool = True) -> "Family":
        ms = tuple(sorted(set(members)))
        if check:
            for F in ms:
                if F.dim != m or F.n != space.n:
                    raise BadDimension(f"member {F} is not an {m}-space of the ambient")
                if not space.is_isotropic(F):
                    raise NonIsotropicSeed(f"member {F} is not totally isotropic")
        return cls(space, m, t, ms)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, F: Subspace) -> bool:
        return F in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        pts = self.space.points
        return tuple(pts.mask(F) for F in self.members)

    def containing(self, A: Subspace) -> list[Subspace]:
        F = self.space.field
        return [G for G in self.members if sa.contains(F, G, A)]

    def to_json(self) -> dict:
        return {
            "q": self.space.q,
            "nu": self.space.nu,
            "m": self.m,
            "t": self.t,
            "members": [F.to_json() for F in self.members],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Family":
        try:
            sp = PolarSpace(int(data["nu"]), int(data["q"]))
            m = int(data["m"])
            t = None if data.get("t") is None else int(data["t"])
            members = [sa.from_rows(sp.field, rows, sp.n) for rows in data["members"]]
        except (KeyError, TypeError) as exc:
            raise PolarError(f"malformed family JSON: {exc}") from exc
        if len(set(members)) != len(members):
            raise PolarError("family JSON lists a member twice")
        return cls.of(sp, m, t, members)


# --- seeds and constructors -------------------------------------------------


def canonical_seeds(sp: PolarSpace, m: int, t: int, kind: str):
    """Standard seeds built from the e/f basis.

    ``isotropicJoin`` and ``hyperbolicJoin`` return ``(T, U)`` with
    ``dim(T & U) = t-1``; ``T+U`` is isotropic for the first and of type
    ``(m+1, 1)`` for the second.  ``zSeed`` returns ``Z = <e_1..e_{t+2}>``.
    """
    nu = sp.nu
    if not 1 <= t < m:
        raise BadDimension(f"need 1 <= t < m, got m={m} t={t}")
    T = sp.span([sp.e(i) for i in range(1, t + 1)])
    if kind == "isotropicJoin":
        if nu < m + 1:
            raise BadDimension(f"isotropicJoin needs nu >= m+1 = {m + 1}")
        return T, sp.span([sp.e(i) for i in range(2, m + 2)])
    if kind == "hyperbolicJoin":
        if nu < m:
            raise BadDimension(f"hyperbolicJoin needs nu >= m = {m}")
        return T, sp.span([sp.e(i) for i in range(2, m + 1)] + [sp.f(1)])
    if kind == "zSeed":
        if nu < t + 2:
            raise BadDimension(f"zSeed needs nu >= t+2 = {t + 2}")
        return sp.span([sp.e(i) for i in range(1, t + 3)])
    raise ValueError(f"unknown seed kind {kind!r}")


def m_set_within(sp: PolarSpace, m: int, A: Subspace, t: int | None = None) -> Family:
    """M(m; A): the isotropic m-spaces contained in ``A``."""
    if not 0 <= m <= min(A.dim, sp.nu):
        raise BadDimension(f"m={m} is not a possible dimension inside {A.dim}-space")
    return Family.of(sp, m, t, sp.enumerate_isotropic(m, within=A), check=False)


def _check_h1_seeds(sp: PolarSpace, T: Subspace, U: Subspace, t: int) -> None:
    if T.dim != t:
        raise SeedShape(f"T must have dimension t={t}")
    if not (sp.is_isotropic(T) and sp.is_isotropic(U)):
        raise NonIsotropicSeed("T and U must be totally isotropic")
    if not t < U.dim <= sp.nu:
        raise SeedShape("U must have dimension m with t < m <= nu")
    if sa.meet_dim(sp.field, T, U) != t - 1:
        raise SeedShape("dim(T & U) must be t-1")


def build_h1(sp: PolarSpace, T: Subspace, U: Subspace, t: int) -> Family:
    """H1(T, U): members through T meeting U in t dimensions, plus M(m; T+U)."""
    _check_h1_seeds(sp, T, U, t)
    F, m = sp.field, U.dim
    first = [G for G in sp.enumerate_isotropic(m, containing=T) if sa.meet_dim(F, G, U) >= t]
    second = sp.enumerate_isotropic(m, within=sa.subspace_sum(F, T, U))
    return Family.of(sp, m, t, list(first) + list(second), check=False)


def build_h2(sp: PolarSpace, Z: Subspace, m: int, t: int) -> Family:
    """H2(Z): members meeting the (t+2)-space Z in at least t+1 dimensions."""
    if Z.dim != t + 2 or Z.n != sp.n:
        raise SeedShape(f"Z must be a {t + 2}-space of the ambient")
    if not t + 1 <= m <= sp.nu:
        raise BadDimension(f"need t+1 <= m <= nu, got m={m}")
    members: set[Subspace] = set()
    # each member meets Z in an isotropic (t+1)-space
    for S in sp.enumerate_isotropic(t + 1, within=Z):
        members.update(sp.enumerate_isotropic(m, containing=S))
    return Family.of(sp, m, t, members, check=False)


def build_trivial(sp: PolarSpace, T: Subspace, m: int) -> Family:
    """All members of P_m through the isotropic space T."""
    if not sp.is_isotropic(T):
        raise SeedShape("T must be totally isotropic")
    if not T.dim <= m <= sp.nu:
        raise SeedShape(f"need dim T <= m <= nu, got dim T={T.dim}, m={m}")
    return Family.of(sp, m, T.dim, sp.enumerate_isotropic(m, containing=T), check=False)


# --- predicates ---------------------------------------------------------------


def is_t_intersecting(fam: Family, t: int) -> bool:
    pts = fam.space.points
    masks = fam.masks
    need = pts.npoints(t)
    for i in range(len(masks)):
        a = masks[i]
        for j in range(i + 1, len(masks)):
            if (a & masks[j]).bit_count() < need:
                return False
    return True


def meet_of(fam: Family) -> Subspace:
    """Intersection of all members."""
    if not fam.members:
        raise EmptyFamily("the meet of an empty family is undefined")
    F = fam.space.field
    acc = fam.members[0]
    for G in fam.members[1:]:
        if acc.dim == 0:
            break
        acc = sa.intersect(F, acc, G)
    return acc


def is_trivial(fam: Family, t: int) -> bool:
    return meet_of(fam).dim >= t


def _is_cover(pts: PointIndex, masks: tuple[int, ...], S: Subspace, need: int) -> bool:
    ms = pts.mask(S)
    return all((ms & g).bit_count() >= need for g in masks)


def _covers(fam: Family, t: int, s: int) -> list[Subspace]:
    """All isotropic s-dimensional t-covers of ``fam`` (s > t), sorted."""
    sp = fam.space
    pts = sp.points
    need = pts.npoints(t)
    found: set[Subspace] = set()
    seen: set[Subspace] = set()
    # a cover meets the first member in some t-space W, so it contains W
    for W in sa.enumerate_subspaces(sp.field, fam.members[0], t):
        for S in sp.enumerate_isotropic(s, containing=W):
            if S in seen:
                continue
            seen.add(S)
            if _is_cover(pts, fam.masks, S, need):
                found.add(S)
    return sorted(found)


def covering_number(fam: Family, t: int) -> tuple[int, Subspace]:
    """Smallest dimension of an isotropic t-cover, with the canonical-first witness."""
    if not fam.members:
        raise EmptyFamily("covering number of an empty family is undefined")
    core = meet_of(fam)
    if core.dim >= t:
        return t, next(sa.enumerate_subspaces(fam.space.field, core, t))
    for s in range(t + 1, fam.m + 1):
        covers = _covers(fam, t, s)
        if covers:
            return s, covers[0]
    raise AssertionError("a member is always a cover")  # pragma: no cover


def cover_set(fam: Family, t: int) -> tuple[list[Subspace], Subspace]:
    """All (t+1)-dimensional t-covers and their span, for families with tau = t+1."""
    tau, _ = covering_number(fam, t)
    if tau != t + 1:
        raise WrongTau(f"covering number is {tau}, not t+1={t + 1}")
    covers = _covers(fam, t, t + 1)
    F = fam.space.field
    X = fam.space.zero()
    for S in covers:
        X = sa.subspace_sum(F, X, S)
    return covers, X


def _candidates_meeting(sp: PolarSpace, G0: Subspace, m: int, t: int) -> Iterator[Subspace]:
    seen: set[Subspace] = set()
    for W in sa.enumerate_subspaces(sp.field, G0, t):
        for F in sp.enumerate_isotropic(m, containing=W):
            if F not in seen:
                seen.add(F)
                yield F


def is_maximal(fam: Family, t: int, cap: int = MAXIMALITY_CAP) -> bool:
    """No member of P_m outside ``fam`` t-intersects every member of ``fam``.

    Only members of P_m meeting the first member in dimension >= t can
    extend the family, so only those are streamed.
    """
    if not fam.members:
        return False
    sp, m = fam.space, fam.m
    estimate = gaussian(m, t, sp.q) * anzahl(sp.nu, m, t, sp.q)
    if estimate > cap:
        raise TooLarge(f"maximality check would stream about {estimate} candidates")
    pts = sp.points
    need = pts.npoints(t)
    masks = fam.masks
    for F in _candidates_meeting(sp, fam.members[0], m, t):
        if F in fam:
            continue
        mf = pts.mask(F)
        if all((mf & g).bit_count() >= need for g in masks):
            return False
    return True


# --- lattice counting -----------------------------------------------------


@dataclass(frozen=True)
class MeetCell:
    """Members of P_m through ``containing`` whose meet with the reference is exactly ``W``."""

    W: Subspace
    count: int


def meet_lattice(sp: PolarSpace, m: int, reference: Subspace, containing: Subspace | None = None) -> list[MeetCell]:
    """Exact-meet counts for members of P_m through ``containing``.

    For every W between ``containing & reference`` and ``reference`` (with
    ``containing + W`` isotropic of dimension <= m) the number of members
    F with ``F & reference == W`` is obtained from the anzahl numbers by
    downward recursion: E(W) = N(dim(C+W)) - sum of E over proper supersets.
    """
    F, q, nu = sp.field, sp.q, sp.nu
    C = sp.zero() if containing is None else containing
    if not sp.is_isotropic(C):
        raise NonIsotropicSeed("the containing subspace is not totally isotropic")
    if C.dim > m:
        return []
    K = sa.intersect(F, C, reference)
    comp = sa.reduce(F, [sa.residual(F, K, r) for r in reference.rows], sp.n) if reference.rows else reference
    d = comp.dim
    top = min(d, m - C.dim)
    size = sum(gaussian(d, k, q) for k in range(top + 1))
    if size > LATTICE_CAP:
        raise TooLarge(f"meet lattice would have {size} elements")
    qpts = PointIndex(F, d) if d else None
    levels: list[list[tuple[Subspace, int, int]]] = []  # per quotient dim: (W, mask, G)
    for k in range(top + 1):
        level = []
        for Qm in sa.rref_matrices(q, d, k):
            lifted = [sa.combine(F, row, comp.rows, sp.n) for row in Qm]
            if not sp.rows_isotropic(list(C.rows) + lifted):
                continue
            W = sa.reduce(F, list(K.rows) + lifted, sp.n)
            mask = qpts.mask(Subspace(Qm, d)) if k else 0
            level.append((W, mask, anzahl(nu, m, C.dim + k, q)))
        levels.append(level)
    npts = len(qpts.index) if qpts else 0

    def bits(level):
        arr = np.zeros((len(level), npts), dtype=np.float32)
        for i, (_, mask, _) in enumerate(level):
            for j in range(npts):
                if mask >> j & 1:
                    arr[i, j] = 1.0
        return arr

    E: list[list[int]] = [[] for _ in levels]
    higher_bits = np.zeros((0, npts), dtype=np.float32)
    higher_E: list[int] = []
    for k in range(top, -1, -1):
        level = levels[k]
        lb = bits(level)
        acc = [0] * len(level)
        if higher_E and len(level):
            # W below W' iff W has no point outside W'
            outside = lb @ (1.0 - higher_bits).T
            for i, j in zip(*np.nonzero(outside == 0)):
                acc[i] += higher_E[j]
        E[k] = [g - a for (_, _, g), a in zip(level, acc)]
        higher_bits = np.vstack([lb, higher_bits])
        higher_E = E[k] + higher_E
    cells = [MeetCell(W, e) for k in range(top + 1) for (W, _, _), e in zip(levels[k], E[k])]
    return sorted((c for c in cells if c.count), key=lambda c: c.W)


def profile_count(
    sp: PolarSpace,
    m: int,
    reference: Subspace,
    containing: Subspace | None = None,
    exclude_containing: Subspace | None = None,
) -> dict[int, int]:
    """Histogram ``j -> #{F in P_m : constraints, dim(F & reference) == j}``.

    ``containing`` forces C <= F; ``exclude_containing`` drops every F
    containing X.  Falls back to enumerating P_m when the lattice of the
    reference is too large and no containing constraint narrows it.
    """
    F = sp.field
    try:
        hist = _lattice_hist(sp, m, reference, containing)
        if exclude_containing is not None:
            C = containing if containing is not None else sp.zero()
            CX = sa.subspace_sum(F, C, exclude_containing)
            if sp.is_isotropic(CX) and CX.dim <= m:
                for j, c in _lattice_hist(sp, m, reference, CX).items():
                    hist[j] = hist.get(j, 0) - c
    except TooLarge:
        if containing is not None:
            raise
        hist = {}
        for G in sp.enumerate_isotropic(m):
            if exclude_containing is not None and sa.contains(F, G, exclude_containing):
                continue
            j = sa.meet_dim(F, G, reference)
            hist[j] = hist.get(j, 0) + 1
    return {j: c for j, c in sorted(hist.items()) if c}


def _lattice_hist(sp, m, reference, containing) -> dict[int, int]:
    hist: dict[int, int] = {}
    for cell in meet_lattice(sp, m, reference, containing):
        hist[cell.W.dim] = hist.get(cell.W.dim, 0) + cell.count
    return hist


def count_h1(sp: PolarSpace, T: Subspace, U: Subspace, t: int) -> int:
    """|H1(T, U)| without enumerating P_m."""
    _check_h1_seeds(sp, T, U, t)
    F, q, m = sp.field, sp.q, U.dim
    X = sa.subspace_sum(F, T, U)
    through_T = sum(c.count for c in meet_lattice(sp, m, X, T) if c.W.dim >= t + 1)
    if sp.is_isotropic(X):
        # hyperplanes of X not containing T
        inside = q ** (m - t + 1) * gaussian(t, 1, q)
    else:
        inside = sum(1 for G in sp.enumerate_isotropic(m, within=X) if not sa.contains(F, G, T))
    return through_T + inside


# --- intersection witness -----------------------------------------------------


def fs_witness(sp: PolarSpace, fam: Family, A: Subspace, Y: Subspace) -> tuple[Subspace | None, bool]:
    """Pick R >= A of dimension a+t-r inside A+Y maximizing |fam_R|.

    Returns ``(R, ok)`` where ``ok`` is ``|fam_A| <= [m-r, t-r] |fam_R|``.
    Ties go to the canonically smallest R.
    """
    F = sp.field
    t, m = fam.t, fam.m
    if t is None:
        raise PreconditionViolated("family has no t")
    if not sp.is_isotropic(A):
        raise PreconditionViolated("A must be totally isotropic")
    if A.dim > m - 1:
        raise PreconditionViolated("dim A must be at most m-1")
    if Y not in fam:
        raise PreconditionViolated("Y must be a member of the family")
    r = sa.meet_dim(F, A, Y)
    if r > t - 1:
        raise PreconditionViolated(f"dim(A & Y) = {r} must be at most t-1")
    fam_A = fam.containing(A)
    AY = sa.subspace_sum(F, A, Y)
    H = list(sp.enumerate_isotropic(A.dim + t - r, containing=A, within=AY))
    if not fam_A:
        return (H[0] if H else None), True
    if not H:
        return None, False
    best = min(H, key=lambda B: (-len(_members_containing(fam_A, B, F)), B))
    size_R = len(fam.containing(best))
    return best, len(fam_A) <= gaussian(m - r, t - r, sp.q) * size_R


def _members_containing(members: list[Subspace], B: Subspace, F) -> list[Subspace]:
    return [G for G in members if sa.contains(F, G, B)]
