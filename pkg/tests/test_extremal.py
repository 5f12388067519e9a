import pytest

from polarekr.errors import EmptyFamily, TooLarge
from polarekr.extremal import _graph, classify_optimum, max_nontrivial_search
from polarekr.families import (
    Family,
    build_h1,
    build_h2,
    build_trivial,
    canonical_seeds,
    is_t_intersecting,
    is_trivial,
)
from polarekr.polar import PolarSpace
from polarekr.qcount import anzahl


def naive_search(sp, m, t):
    """Grow every clique of the meet graph in canonical order, no pruning."""
    verts, masks, adj, need = _graph(sp, m, t, 10**6)
    best = [0, []]

    def grow(chosen, meet, cand):
        if meet.bit_count() < need:
            n = len(chosen)
            if n > best[0]:
                best[0], best[1] = n, [tuple(chosen)]
            elif n == best[0]:
                best[1].append(tuple(chosen))
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            chosen.append(v)
            grow(chosen, meet & masks[v], c & adj[v])
            chosen.pop()

    for i in range(len(verts)):
        grow([i], masks[i], adj[i] & ~((1 << (i + 1)) - 1))
    optima = sorted(tuple(verts[i] for i in idx) for idx in best[1])
    return best[0], optima


@pytest.fixture(scope="module")
def full_32():
    return max_nontrivial_search(PolarSpace(3, 2), 2, 1, all_optima=True)


def test_degenerate_instance():
    sp = PolarSpace(2, 2)
    res = max_nontrivial_search(sp, 2, 1, all_optima=True)
    assert (res.max_size, res.optima) == (0, [])
    assert naive_search(sp, 2, 1) == (0, [])


def test_smallest_instance(full_32):
    assert full_32.max_size == 7
    assert len(full_32.optima) == 135 == anzahl(3, 3, 0, 2)
    assert set(full_32.classifications) == {"H2"}
    for fam in full_32.optima:
        assert is_t_intersecting(fam, 1) and not is_trivial(fam, 1)


def test_matches_naive_oracle(full_32):
    size, optima = naive_search(PolarSpace(3, 2), 2, 1)
    assert size == full_32.max_size
    assert optima == [fam.members for fam in full_32.optima]


def test_first_optimum_only(full_32):
    res = max_nontrivial_search(PolarSpace(3, 2), 2, 1)
    assert res.max_size == 7
    assert [f.members for f in res.optima] == [full_32.optima[0].members]


@pytest.mark.parametrize("workers", [2, 8])
def test_worker_count_does_not_matter(full_32, workers):
    res = max_nontrivial_search(PolarSpace(3, 2), 2, 1, all_optima=True, workers=workers)
    assert res.dumps(timing=False) == full_32.dumps(timing=False)


def test_prune_safety(full_32):
    res = max_nontrivial_search(PolarSpace(3, 2), 2, 1, all_optima=True, prune=False, classify=False)
    assert res.max_size == full_32.max_size
    assert [f.members for f in res.optima] == [f.members for f in full_32.optima]


@pytest.mark.parametrize("bound", [3, 7, 8])
def test_lower_bound_hint(full_32, bound):
    res = max_nontrivial_search(PolarSpace(3, 2), 2, 1, all_optima=True, lower_bound=bound)
    assert res.dumps(timing=False) == full_32.dumps(timing=False)


def test_vertex_cap():
    with pytest.raises(TooLarge):
        max_nontrivial_search(PolarSpace(3, 2), 2, 1, vertex_cap=100)


def test_result_json(full_32):
    data = full_32.to_json()
    assert set(data) == {"maxSize", "count", "optima", "classifications", "elapsedMs"}
    assert "elapsedMs" not in full_32.to_json(timing=False)
    assert data["count"] == 135


def test_classify_constructions():
    sp = PolarSpace(3, 2)
    Z = canonical_seeds(sp, 2, 1, "zSeed")
    assert classify_optimum(build_h2(sp, Z, 2, 1), 1) == "H2"
    assert classify_optimum(build_h2(sp, Z, 3, 1), 1) == "H2"
    assert classify_optimum(build_trivial(sp, sp.span([sp.e(1)]), 2), 1) == "trivial"
    with pytest.raises(EmptyFamily):
        classify_optimum(Family.of(sp, 2, 1, []), 1)


def test_classify_h1_at_equality_point():
    sp = PolarSpace(5, 2)
    T, U = canonical_seeds(sp, 3, 1, "isotropicJoin")
    fam = build_h1(sp, T, U, 1)
    assert classify_optimum(fam, 1) == "H1"
    assert len(fam) == len(build_h2(sp, canonical_seeds(sp, 3, 1, "zSeed"), 3, 1))


def test_classify_other():
    sp = PolarSpace(3, 2)
    Z = canonical_seeds(sp, 2, 1, "zSeed")
    fam = build_h2(sp, Z, 2, 1)
    # dropping a line keeps tau = 2 but matches no construction
    assert classify_optimum(Family.of(sp, 2, 1, fam.members[:-1]), 1) == "other"
