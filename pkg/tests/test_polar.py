import itertools
import random

import pytest

from polarekr import subspace as sa
from polarekr.errors import AmbientMismatch, BadDimension, LengthMismatch, NonIsotropicSeed, ZeroSubspace
from polarekr.polar import PolarSpace
from polarekr.qcount import anzahl


def random_subspace(sp, k, rng):
    n = 2 * sp.nu
    while True:
        W = sp.span([[rng.randrange(sp.q) for _ in range(n)] for _ in range(k)])
        if W.dim == k:
            return W


def test_gram_is_standard():
    sp = PolarSpace(3, 3)
    J = sp.gram
    for i, j in itertools.product(range(6), repeat=2):
        assert J[i][j] == sp.field.neg(J[j][i])
    assert all(J[i][i] == 0 for i in range(6))


def test_form_examples():
    sp = PolarSpace(2, 2)
    assert sp.form(sp.e(1), sp.f(1)) == 1
    assert sp.form(sp.e(1), sp.e(2)) == 0
    sp3 = PolarSpace(2, 3)
    assert sp3.form(sp3.f(1), sp3.e(1)) == 2
    with pytest.raises(LengthMismatch):
        sp.form((1, 0), sp.e(1))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_form_alternating_and_bilinear(q):
    sp = PolarSpace(2, q)
    F = sp.field
    rng = random.Random(q)
    for _ in range(50):
        x = [rng.randrange(q) for _ in range(4)]
        y = [rng.randrange(q) for _ in range(4)]
        z = [rng.randrange(q) for _ in range(4)]
        a = rng.randrange(q)
        assert sp.form(x, x) == 0
        assert sp.form(x, y) == F.neg(sp.form(y, x))
        ay_z = [F.add(F.mul(a, yi), zi) for yi, zi in zip(y, z)]
        assert sp.form(x, ay_z) == F.add(F.mul(a, sp.form(x, y)), sp.form(x, z))


def test_isotropy_and_type_examples():
    sp = PolarSpace(3, 2)
    lag = sp.span([sp.e(1), sp.e(2), sp.e(3)])
    assert sp.is_isotropic(lag)
    assert not sp.is_isotropic(sp.span([sp.e(1), sp.f(1)]))
    assert sp.is_isotropic(sp.zero())
    assert sp.type_of(sp.span([sp.e(1), sp.e(2)])) == (2, 0)
    assert sp.type_of(sp.span([sp.e(1), sp.f(1)])) == (2, 1)
    assert sp.type_of(sp.span([sp.e(1), sp.e(2), sp.f(1)])) == (3, 1)
    assert sp.type_of(sp.whole()) == (6, 3)
    with pytest.raises(ZeroSubspace):
        sp.type_of(sp.zero())
    with pytest.raises(AmbientMismatch):
        sp.is_isotropic(sa.zero(4))


def test_perp_examples():
    sp = PolarSpace(2, 2)
    assert sp.perp(sp.zero()) == sp.whole()
    assert sp.perp(sp.span([sp.e(1)])) == sp.span([sp.e(1), sp.e(2), sp.f(2)])
    assert sp.perp(sp.whole()) == sp.zero()


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("nu", [2, 3])
def test_perp_properties(nu, q):
    sp = PolarSpace(nu, q)
    rng = random.Random(nu * q)
    for _ in range(20):
        W = random_subspace(sp, rng.randrange(0, 2 * nu + 1), rng)
        P = sp.perp(W)
        assert P.dim == 2 * nu - W.dim
        assert sp.perp(P) == W
        assert sp.is_isotropic(W) == sa.contains(sp.field, P, W)
        for u, v in itertools.product(W.rows, P.rows):
            assert sp.form(u, v) == 0


@pytest.mark.parametrize("nu,q,m,expected", [(2, 2, 1, 15), (2, 2, 2, 15), (2, 3, 2, 40), (3, 2, 2, 315), (3, 2, 3, 135)])
def test_enumeration_counts(nu, q, m, expected):
    sp = PolarSpace(nu, q)
    got = list(sp.enumerate_isotropic(m))
    assert len(got) == expected == anzahl(nu, m, 0, q)
    assert got == sorted(got)
    assert len(set(got)) == len(got)
    assert all(W.dim == m and sp.is_isotropic(W) for W in got)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("m", [0, 1, 2])
def test_enumeration_matches_filter_oracle(m, q):
    sp = PolarSpace(2, q)
    oracle = [W for W in sa.enumerate_subspaces(sp.field, sp.whole(), m) if sp.is_isotropic(W)]
    assert list(sp.enumerate_isotropic(m)) == sorted(oracle)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("nu", [2, 3])
def test_containing_counts(nu, q):
    sp = PolarSpace(nu, q)
    for m1 in range(nu + 1):
        seeds = list(sp.enumerate_isotropic(m1))
        for A in seeds[:: max(1, len(seeds) // 3)]:
            for m in range(m1, nu + 1):
                members = list(sp.enumerate_isotropic(m, containing=A))
                assert len(members) == anzahl(nu, m, m1, q)
                assert all(sa.contains(sp.field, F, A) for F in members)


def test_within_constraint():
    sp = PolarSpace(3, 3)
    Q = sp.span([sp.e(1), sp.e(2), sp.f(1)])
    inside = list(sp.enumerate_isotropic(2, within=Q))
    assert len(inside) == 4
    assert all(sa.contains(sp.field, Q, F) for F in inside)
    # containing something outside the window yields nothing
    assert list(sp.enumerate_isotropic(2, containing=sp.span([sp.e(3)]), within=Q)) == []


def test_enumeration_errors():
    sp = PolarSpace(2, 2)
    with pytest.raises(BadDimension):
        list(sp.enumerate_isotropic(3))
    with pytest.raises(BadDimension):
        list(sp.enumerate_isotropic(-1))
    with pytest.raises(NonIsotropicSeed):
        list(sp.enumerate_isotropic(2, containing=sp.span([sp.e(1), sp.f(1)])))


@pytest.mark.parametrize("q", [2, 3])
def test_extension_soundness(q):
    sp = PolarSpace(3, q)
    F = sp.field
    for W in list(sp.enumerate_isotropic(1))[:5]:
        P = sp.perp(W)
        for S in sp.enumerate_isotropic(2, containing=W):
            assert sa.contains(F, P, S)


def test_space_identity():
    assert PolarSpace(3, 2) == PolarSpace(3, 2)
    assert hash(PolarSpace(3, 2)) == hash(PolarSpace(3, 2))
    assert PolarSpace(3, 2) != PolarSpace(3, 3)
