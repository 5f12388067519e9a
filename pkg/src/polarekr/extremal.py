"""Exhaustive branch-and-bound search for maximum non-trivial t-intersecting families.

Vertices are the members of P_m in canonical order; two vertices are
adjacent when they meet in dimension >= t, so families are cliques.  Every
member is stored as a bitmask over the projective points of the ambient,
which turns meets into ANDs and dimension tests into popcounts.
"""

from __future__ import annotations

import json
import multiprocessing as mp
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import subspace as sa
from .errors import EmptyFamily, TooLarge
from .families import Family, build_h1, build_h2, cover_set, covering_number, is_trivial
from .polar import PolarSpace
from .qcount import anzahl

VERTEX_CAP = 5000


@dataclass
class SearchResult:
    max_size: int
    optima: list[Family]
    classifications: list[str]
    elapsed_ms: int = 0

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "maxSize": self.max_size,
            "count": len(self.optima),
            "optima": [f.to_json() for f in self.optima],
            "classifications": self.classifications,
        }
        if timing:
            out["elapsedMs"] = self.elapsed_ms
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True) + "\n"


class _Search:
    def __init__(self, masks, adj, need, all_optima, floor, prune=True, shared=None):
        self.masks = masks
        self.adj = adj
        self.need = need
        self.all_optima = all_optima
        self.prune = prune
        self.shared = shared
        self.best = floor
        self.archive: list[tuple[int, ...]] = []
        self._ticks = 0

    def _bound(self) -> int:
        if self.shared is not None:
            self._ticks += 1
            if self._ticks & 1023 == 0:
                self.best = max(self.best, self.shared.value)
        return self.best

    def _record(self, chosen: list[int]) -> None:
        size = len(chosen)
        if size < self.best:
            return
        # the archive can hold smaller families after the shared bound rose
        if size > self.best or not self.archive or len(self.archive[0]) != size:
            self.best = size
            self.archive = [tuple(chosen)]
            if self.shared is not None:
                with self.shared.get_lock():
                    if self.shared.value < size:
                        self.shared.value = size
        elif self.all_optima:
            self.archive.append(tuple(chosen))

    def branch(self, i: int) -> None:
        cand = self.adj[i] & ~((1 << (i + 1)) - 1)
        self._expand([i], self.masks[i], cand)

    def _expand(self, chosen: list[int], meet: int, cand: int) -> None:
        masks, need = self.masks, self.need
        if meet.bit_count() < need:
            self._record(chosen)
        if not cand:
            return
        size = len(chosen)
        if self.prune:
            if size + cand.bit_count() < self._bound():
                return
            # if every reachable vertex still shares a t-space, all completions are trivial
            total, c = meet, cand
            while c and total.bit_count() >= need:
                low = c & -c
                total &= masks[low.bit_length() - 1]
                c ^= low
            if total.bit_count() >= need:
                return
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            if self.prune and size + 1 + c.bit_count() < self._bound():
                return
            self._expand(chosen + [v], meet & masks[v], c & self.adj[v])


_WORKER: dict = {}


def _init_worker(masks, adj, need, all_optima, floor, prune, shared):
    _WORKER["args"] = (masks, adj, need, all_optima, floor, prune, shared)


def _run_chunk(branches: list[int]):
    masks, adj, need, all_optima, floor, prune, shared = _WORKER["args"]
    s = _Search(masks, adj, need, all_optima, floor, prune, shared)
    for i in branches:
        s.branch(i)
    return s.best, s.archive


def _graph(sp: PolarSpace, m: int, t: int, cap: int):
    size = anzahl(sp.nu, m, 0, sp.q)
    if size > cap:
        raise TooLarge(f"|P_{m}| = {size} exceeds the vertex cap {cap}")
    verts = list(sp.enumerate_isotropic(m))
    pts = sp.points
    masks = [pts.mask(V) for V in verts]
    need = pts.npoints(t)
    adj = [0] * len(verts)
    for i, j in combinations(range(len(verts)), 2):
        if (masks[i] & masks[j]).bit_count() >= need:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return verts, masks, adj, need


def _merge(results, all_optima: bool) -> tuple[int, list[tuple[int, ...]]]:
    best = max((len(a) for _, arch in results for a in arch), default=0)
    found = sorted({a for b, arch in results for a in arch if len(a) == best})
    if not all_optima:
        found = found[:1]
    return (best if found else 0), found


def max_nontrivial_search(
    sp: PolarSpace,
    m: int,
    t: int,
    all_optima: bool = False,
    lower_bound: int | None = None,
    workers: int = 1,
    vertex_cap: int = VERTEX_CAP,
    prune: bool = True,
    classify: bool = True,
) -> SearchResult:
    """Largest t-intersecting subfamilies of P_m whose members share no t-space.

    With ``all_optima`` every maximum family is returned in canonical
    order, otherwise only the canonically first one.  ``lower_bound`` only
    speeds up pruning; if no family reaches it the search is rerun without it.
    """
    start = time.perf_counter()
    verts, masks, adj, need = _graph(sp, m, t, vertex_cap)
    floor = lower_bound or 0

    def run(floor):
        if workers <= 1:
            s = _Search(masks, adj, need, all_optima, floor, prune)
            for i in range(len(verts)):
                s.branch(i)
            return [(s.best, s.archive)]
        shared = mp.Value("i", floor)
        chunks = [list(range(k, len(verts), workers * 4)) for k in range(workers * 4)]
        ctx = mp.get_context("fork")
        with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_init_worker,
                                 initargs=(masks, adj, need, all_optima, floor, prune, shared)) as ex:
            return list(ex.map(_run_chunk, chunks))

    best, found = _merge(run(floor), all_optima)
    if not found and floor:
        best, found = _merge(run(0), all_optima)
    optima = [Family.of(sp, m, t, [verts[i] for i in idx], check=False) for idx in found]
    labels = [classify_optimum(f, t) for f in optima] if classify else []
    elapsed = int((time.perf_counter() - start) * 1000)
    return SearchResult(best, optima, labels, elapsed)


def classify_optimum(fam: Family, t: int) -> str:
    """Label a family as ``H1``, ``H2``, ``trivial`` or ``other`` by reconstruction."""
    if not fam.members:
        raise EmptyFamily("cannot classify an empty family")
    if is_trivial(fam, t):
        return "trivial"
    sp, m, F = fam.space, fam.m, fam.space.field
    tau, _ = covering_number(fam, t)
    if tau != t + 1:
        return "other"
    covers, X = cover_set(fam, t)
    zs = {X} if X.dim == t + 2 else set()
    for a, b in combinations(covers, 2):
        S = sa.subspace_sum(F, a, b)
        if S.dim == t + 2:
            zs.add(S)
    pts = sp.points
    need = pts.npoints(t + 1)
    for Z in sorted(zs):
        if not sp.is_isotropic(Z):
            continue
        mz = pts.mask(Z)
        if all((mz & g).bit_count() >= need for g in fam.masks):
            if build_h2(sp, Z, m, t).members == fam.members:
                return "H2"
    core = covers[0]
    for S in covers[1:]:
        core = sa.intersect(F, core, S)
    if core.dim == t and X.dim == m + 1:
        for U in fam.members:
            if sa.contains(F, U, core) or not sa.contains(F, X, U):
                continue
            if sa.meet_dim(F, core, U) == t - 1 and build_h1(sp, core, U, t).members == fam.members:
                return "H1"
            break
    return "other"
