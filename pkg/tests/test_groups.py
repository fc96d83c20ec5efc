import numpy as np
import pytest

from hypersym import groups as G
from hypersym.errors import GrowthError


def naive_closure(gens):
    """Plain set-of-tuples closure; independent of the engine's BFS."""
    mats = [np.asarray(m, dtype=np.int64) for m in gens]
    n = mats[0].shape[0]
    seen = {G.key_of(np.eye(n, dtype=np.int64)): np.eye(n, dtype=np.int64)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for a in frontier:
            for g in mats:
                b = a @ g
                k = G.key_of(b)
                if k not in seen:
                    seen[k] = b
                    nxt.append(b)
        frontier = nxt
    return seen


def naive_double_cosets(gens, left, right):
    els = naive_closure(gens)
    H = list(naive_closure(left).values())
    K = list(naive_closure(right).values())
    left_over = set(els)
    count = 0
    while left_over:
        g = els[left_over.pop()]
        orbit = {G.key_of(h @ g @ k) for h in H for k in K}
        left_over -= orbit
        count += 1
    return count


@pytest.mark.parametrize("fn,order", [(G.whipple_generators, 720), (G.rectangular_generators, 72),
                                      (G.triangular_generators, 8), (G.rect_elliptic_generators, 1440),
                                      (G.tri_elliptic_generators, 96)])
def test_orders_against_naive_closure(fn, order):
    gens = fn()
    assert G.Group(gens).order == order
    assert len(naive_closure(gens.values())) == order


def test_e6_order():
    assert G.Group(G.e6_generators()).order == 51840
    assert G.Group(G.e6_bourbaki()).order == 51840


def test_growth_cap():
    with pytest.raises(GrowthError):
        G.Group(G.e6_generators(), cap=1000)


def test_generators_are_involutions():
    for fn in (G.whipple_generators, G.rectangular_generators, G.e6_generators, G.rect_elliptic_generators):
        for m in fn().values():
            assert np.array_equal(m @ m, np.eye(len(m), dtype=np.int64))


def test_printed_relations():
    for row in G.relation_checks():
        assert row.passed, row.name


def test_key_relations():
    w = G.rectangular_generators()
    assert G.check_relation(G.PresentationCheck.of("s2 s1 s0 s1", 3), w)
    e = G.e6_generators()
    assert G.exact_order("s3 b", e) == 3
    for k in (1, 2, 4, 5):
        assert G.exact_order(f"s{k} b", e) == 2
    r = G.rect_elliptic_generators()
    assert G.exact_order("b1 s0", r) == 3 and G.exact_order("b1 t0", r) == 3
    for g in r.values():
        assert np.array_equal(r["b2"] @ g, g @ r["b2"])


def test_word_matrix_rejects_unknown_generator():
    with pytest.raises(KeyError):
        G.word_matrix("s9", G.whipple_generators())


@pytest.mark.parametrize("gens,sub,count", [
    (G.whipple_sigma, ("sigma1", "sigma2", "sigma4", "sigma5"), 4),
    (G.rectangular_generators, ("s0", "s2"), 8),
    (G.triangular_generators, ("s2",), 3),
])
def test_double_coset_counts_naive(gens, sub, count):
    g = gens()
    H = [g[k] for k in sub]
    assert naive_double_cosets(list(g.values()), H, H) == count
    assert G.double_cosets(G.Group(g), H, H).count == count


def test_coset_checks_all_pass():
    rows = G.coset_checks()
    counts = [r.observed for r in rows if r.name.endswith("orbit count")]
    assert counts == [4, 8, 3, 5, 8]
    assert all(r.passed for r in rows)


def test_translation_periodicity():
    assert all(r.passed for r in G.verify_translation_periodicity())


def test_correspondences_and_flagged_row():
    rows = G.verify_correspondences()
    flagged = [r for r in rows if r.flagged]
    assert [r.observed for r in flagged] == [1920]
    assert all(r.passed for r in rows if not r.flagged)
    assert flagged[0].status == "flagged"


def test_bfs_words_reproduce_elements():
    grp = G.Group(G.rectangular_generators())
    gens = G.rectangular_generators()
    for m in grp.elements[:: 7]:
        assert np.array_equal(G.word_matrix(grp.word(m), gens), m)
