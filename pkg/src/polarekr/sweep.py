"""Grid sweeps that check the size inequalities numerically.

Every record is a dict ``{params, claim, status, lhs, rhs}``; ``lhs`` and
``rhs`` are exact integers, or ``"a/b"`` strings for non-integral ratios.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable

from .families import canonical_seeds, count_h1
from .polar import PolarSpace
from .qcount import ProblemParams, elementary_bounds, f0, h2_count


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _record(p: ProblemParams | dict, claim: str, ok: bool, lhs, rhs, **extra) -> dict:
    params = p.as_dict() if isinstance(p, ProblemParams) else p
    rec = {"params": params, "claim": claim, "status": "pass" if ok else "fail", "lhs": _num(lhs), "rhs": _num(rhs)}
    rec.update(extra)
    return rec


def sweep_bounds(m_max: int, qs: Iterable[int]) -> list[dict]:
    """All four elementary bounds for 1 <= i < m <= m_max."""
    out = []
    for q in sorted(qs):
        for m in range(2, m_max + 1):
            for i in range(1, m):
                for name, ok, lhs, rhs in elementary_bounds(m, i, q):
                    out.append(_record({"m": m, "i": i, "q": q}, f"bounds.{name}", ok, lhs, rhs))
    return out


def h1_value(p: ProblemParams, kind: str = "isotropicJoin") -> int:
    sp = PolarSpace(p.nu, p.q)
    T, U = canonical_seeds(sp, p.m, p.t, kind)
    return count_h1(sp, T, U, p.t)


def point_claims(p: ProblemParams) -> list[dict]:
    nu, m, t, q = p.nu, p.m, p.t, p.q
    out = []
    held = [ok for i in range(1, m) for _, ok, _, _ in elementary_bounds(m, i, q)]
    out.append(_record(p, "bounds", all(held), sum(held), len(held)))
    h1 = None
    if p.hyp_f0_split:
        threshold, _ = f0(p)
        h1 = h1_value(p)
        hyp = h1_value(p, "hyperbolicJoin")
        out.append(_record(p, "f0.isotropic", h1 > threshold, h1, threshold))
        out.append(_record(p, "f0.hyperbolic", hyp < threshold, hyp, threshold))
    if p.hyp_h1_h2:
        h1 = h1_value(p) if h1 is None else h1
        h2 = h2_count(p)
        if 2 * t <= m - 2:
            out.append(_record(p, "h1_over_h2", h1 > h2, h1, h2))
        elif t <= m - 2:
            equality_case = (m, t) == (3, 1)
            ok = h2 == h1 if equality_case else h2 > h1
            out.append(_record(p, "h2_over_h1", ok, h2, h1, equality=h2 == h1))
    return out


def sweep_lemmas(nus: Iterable[int], ms: Iterable[int], ts: Iterable[int], qs: Iterable[int]) -> list[dict]:
    """Claims at every grid point with 1 <= t < m <= nu, sorted by coordinates."""
    out = []
    for nu, m, t, q in product(sorted(set(nus)), sorted(set(ms)), sorted(set(ts)), sorted(set(qs))):
        if 1 <= t < m <= nu:
            out.extend(point_claims(ProblemParams(nu, m, t, q)))
    out.sort(key=lambda r: (r["params"]["nu"], r["params"]["m"], r["params"]["t"], r["params"]["q"], r["claim"]))
    return out


def failures(report: list[dict]) -> list[dict]:
    return [r for r in report if r["status"] != "pass"]
