"""Exact closed-form counts: Gaussian binomials, anzahl numbers, f0 and h2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadDimension


def _exact_div(num: int, den: int) -> int:
    quo, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{num} is not divisible by {den}")
    return quo


def gaussian(a: int, b: int, q: int) -> int:
    """The q-binomial coefficient [a b]_q (0 when b > a, 1 when b == 0)."""
    if a < 0 or b < 0:
        raise BadDimension("gaussian needs a, b >= 0")
    if b > a:
        return 0
    r = 1
    # after step k the partial product is [a k]_q, so every division is exact
    for k in range(b):
        r = _exact_div(r * (q ** (a - k) - 1), q ** (k + 1) - 1)
    return r


def anzahl(nu: int, m: int, m1: int, q: int) -> int:
    """Number of totally isotropic m-spaces through a fixed isotropic m1-space."""
    if not 0 <= m <= nu or m1 < 0:
        raise BadDimension(f"anzahl needs 0 <= m <= nu and m1 >= 0, got nu={nu} m={m} m1={m1}")
    if m1 > m:
        return 0
    r = 1
    # partial products are themselves anzahl numbers, hence integers
    for i in range(1, m - m1 + 1):
        r = _exact_div(r * (q ** (2 * (nu - m + i)) - 1), q**i - 1)
    return r


@dataclass(frozen=True, order=True)
class ProblemParams:
    nu: int
    m: int
    t: int
    q: int

    @property
    def hyp_f0_split(self) -> bool:
        """Range where |H1| lies above f0 for isotropic T+U and below it otherwise."""
        return self.m >= self.t + 2 and 2 * self.nu >= 3 * self.m - self.t + 3

    @property
    def hyp_h1_h2(self) -> bool:
        """Range where the sizes of H1 and H2 are compared."""
        return self.m >= self.t + 2 and 2 * self.nu >= 3 * self.m + 1

    @property
    def hyp_extremal(self) -> bool:
        """Range where H1 and H2 are the largest non-trivial families."""
        nu, m, t = self.nu, self.m, self.t
        small = nu >= m + 1 and m + 1 == t + 2
        large = 2 * nu >= max(3 * m + 2, 2 * m + 2 * t + 6) and m >= t + 2
        return small or large

    def as_dict(self) -> dict:
        return {"nu": self.nu, "m": self.m, "t": self.t, "q": self.q}


def _check_family_params(p: ProblemParams) -> None:
    if not (1 <= p.t and p.t + 1 <= p.m <= p.nu):
        raise BadDimension(f"need 1 <= t, t+1 <= m <= nu, got {p}")


def f0(p: ProblemParams) -> tuple[int, bool]:
    """Threshold separating the two cases of the H1 size dichotomy.

    Returns ``(value, warning)``; ``warning`` is set when the dichotomy's
    hypotheses fail for ``p``.
    """
    _check_family_params(p)
    nu, m, t, q = p.nu, p.m, p.t, p.q
    value = gaussian(m - t + 1, 1, q) * anzahl(nu, m, t + 1, q) - q * gaussian(m - t + 1, 2, q) * anzahl(nu, m, t + 2, q)
    return value, not p.hyp_f0_split


def h2_count(p: ProblemParams) -> int:
    """|H2(Z)| for an isotropic (t+2)-space Z."""
    _check_family_params(p)
    nu, m, t, q = p.nu, p.m, p.t, p.q
    if t + 2 > nu:
        raise BadDimension(f"no isotropic {t + 2}-space exists for nu={nu}")
    return gaussian(t + 2, 1, q) * anzahl(nu, m, t + 1, q) - q * gaussian(t + 1, 1, q) * anzahl(nu, m, t + 2, q)


def elementary_bounds(m: int, i: int, q: int) -> list[tuple[str, bool, Fraction | int, Fraction | int]]:
    """The four elementary bounds on (q^m-1)/(q^i-1) and [m i]_q for m > i >= 1.

    Each entry is ``(name, holds, lhs, rhs)`` for a claim ``lhs < rhs`` or
    ``lhs <= rhs``.
    """
    if not 1 <= i < m:
        raise BadDimension("need 1 <= i < m")
    ratio = Fraction(q**m - 1, q**i - 1)
    g = gaussian(m, i, q)
    lo1, hi1 = q ** (m - i), q ** (m - i + 1)
    lo2, hi2 = q ** (i * (m - i)), q ** (i * (m - i + 1))
    return [
        ("ratio_lower", lo1 < ratio, lo1, ratio),
        ("ratio_upper", ratio < hi1, ratio, hi1),
        ("gaussian_lower", lo2 <= g, lo2, g),
        ("gaussian_upper", g < hi2, g, hi2),
    ]
