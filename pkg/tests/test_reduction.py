import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oddchrom import reduction as R
from oddchrom.coloring import Coloring, verify_odd_coloring
from oddchrom.generators import (
    SHADOWED_TAGS,
    k7_torus,
    plant,
    plant_found,
    random_toroidal,
    torus_grid,
)
from oddchrom.graph import EmbeddedGraph, has_adjacent_triangles, subdivide_edge
from oddchrom.solver import find_odd_coloring


def path(n):
    return EmbeddedGraph([[u for u in (v - 1, v + 1) if 0 <= u < n] for v in range(n)])


def wheel(spokes):
    hub = spokes
    rots = [[(i - 1) % spokes, hub, (i + 1) % spokes] for i in range(spokes)]
    rots.append(list(range(spokes)))
    return EmbeddedGraph(rots)


def test_path_reports_adjacent_two_vertices():
    cfg = R.find_configuration(path(4))
    assert cfg.tag == R.ADJACENT_TWO_VERTICES and cfg.actors == (1, 2)


def test_three_vertex_comes_first():
    cfg = R.find_configuration(wheel(5))
    assert cfg.tag == R.THREE_VERTEX and cfg.actors[0] == 0


def test_grid_exhibits_adjacent_four_vertices():
    cfg = R.find_configuration(torus_grid(3, 4))
    assert cfg.tag == R.ADJACENT_FOUR_VERTICES and cfg.actors == (0, 1)


def test_three_vertex_reduction_drops_three_edges():
    g = wheel(5)
    inst = R.reduce(g, R.find_configuration(g))
    assert inst.reduced.edge_count == g.edge_count - 3
    assert inst.embedding_preserved


def test_adjacent_convenient_reduction_bookkeeping():
    g = plant(R.ADJACENT_CONVENIENT, 3)
    inst = R.reduce(g, R.find_configuration(g))
    assert inst.measure_after.four_plus_vertices == inst.measure_before.four_plus_vertices
    assert inst.measure_after.four_plus_adjacencies < inst.measure_before.four_plus_adjacencies


def test_adjacent_four_reduction_is_abstract():
    g = torus_grid(3, 4)
    inst = R.reduce(g, R.find_configuration(g))
    assert inst.measure_before.four_plus_vertices - inst.measure_after.four_plus_vertices == 2
    assert not inst.embedding_preserved
    assert not isinstance(inst.reduced, EmbeddedGraph)
    assert inst.reduced.n == g.n - 2 + 6


def test_missing_configuration_is_rejected():
    with pytest.raises(R.ConfigurationNotPresentError):
        R.reduce(torus_grid(3, 4), R.Configuration(R.THREE_VERTEX, (0, 1, 2, 3)))


def test_measure_is_lexicographic():
    assert R.Measure(3, 0, 0) > R.Measure(2, 9, 9)
    assert R.measure(torus_grid(3, 4)) == (12, 24, 24)


def test_three_face_with_two_vertex_extension_is_valid():
    g = plant(R.THREE_FACE_WITH_TWO_VERTEX, 0)
    cfg = R.find_configuration(g, only=R.THREE_FACE_WITH_TWO_VERTEX)
    inst = R.reduce(g, cfg)
    sub, _ = find_odd_coloring(inst.reduced, 8)
    ext = R.extend_with_report(g, cfg, sub)
    assert ext.recipe_ok and verify_odd_coloring(g, ext.coloring, 8).valid


def test_shadowed_tags_are_preceded():
    for tag in SHADOWED_TAGS:
        g = plant(tag, 1)
        assert R.find_configuration(g).tag != tag
        assert R.find_configuration(g, only=tag).tag == tag


def test_special_configuration_records_side():
    sides = set()
    for seed in range(12):
        g = plant(R.SPECIAL_SIX_NEIGHBOR, seed)
        cfg = R.find_configuration(g)
        assert cfg.tag == R.SPECIAL_SIX_NEIGHBOR
        sides.add(cfg.side)
    assert sides == {"v1", "v6"}


def test_five_path_end_to_end():
    g = plant(R.FIVE_PATH, 7)
    cfg = R.find_configuration(g)
    inst = R.reduce(g, cfg)
    sub, _ = find_odd_coloring(inst.reduced, 8)
    assert verify_odd_coloring(g, R.extend(g, cfg, sub), 8).valid


def test_extension_failure_carries_the_configuration():
    # an improper reduced coloring is refused instead of searched around
    g = subdivide_edge(subdivide_edge(torus_grid(3, 4), 0, 1), 4, 5)
    cfg = R.find_configuration(g)
    assert cfg.tag == R.ADJACENT_CONVENIENT
    inst = R.reduce(g, cfg)
    bad = Coloring(8, tuple([1] * inst.reduced.n))
    with pytest.raises(R.ExtensionFailure) as info:
        R.extend(g, cfg, bad)
    assert info.value.configuration == cfg


@pytest.mark.parametrize("seed", [62, 87])
def test_even_overloaded_vertex_needs_the_wider_search(seed):
    # a 4-vertex whose neighbours pair up their colors has no odd color after the recipe
    g = plant(R.OVERLOADED_K_VERTEX, seed)
    cfg = plant_found(g, R.OVERLOADED_K_VERTEX)
    sub, _ = find_odd_coloring(R.reduce(g, cfg).reduced, 8)
    perm = dict(zip(range(1, 9), (np.random.default_rng(seed).permutation(8) + 1).tolist()))
    ext = R.extend_with_report(g, cfg, sub.permuted({0: 0, **perm}))
    assert not ext.recipe_ok
    assert verify_odd_coloring(g, ext.coloring, 8).valid


def test_driver_on_grid_and_empty_graph():
    res = R.color_without_adjacent_triangles(torus_grid(3, 4))
    assert verify_odd_coloring(torus_grid(3, 4), res.coloring, 8).valid
    assert res.trace[0]["tag"] == R.ADJACENT_FOUR_VERTICES
    empty = R.color_without_adjacent_triangles(EmbeddedGraph([]))
    assert empty.coloring.colors == ()


def test_driver_on_subdivided_k7():
    g = k7_torus()
    for u, v in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 6), (5, 6), (6, 0), (1, 3)]:
        if g.has_edge(u, v):
            g = subdivide_edge(g, u, v)
    if has_adjacent_triangles(g):
        pytest.skip("subdivision pattern leaves adjacent triangles")
    res = R.color_without_adjacent_triangles(g)
    assert verify_odd_coloring(g, res.coloring, 8).valid


def test_driver_rejects_hypothesis_violations():
    with pytest.raises(R.HypothesisError):
        R.color_without_adjacent_triangles(k7_torus())


def test_driver_trace_decreases_measure():
    g = plant(R.THREE_VERTEX, 4)
    res = R.color_without_adjacent_triangles(g)
    assert res.trace[0]["tag"] == R.THREE_VERTEX
    for step in res.trace:
        assert tuple(step["measureAfter"]) < tuple(step["measureBefore"])


def test_embedding_genus_sums_components():
    g = EmbeddedGraph([list(r) for r in k7_torus().rotations] + [[(i + d) % 7 + 7 for d in (1, 3, 2, 6, 4, 5)] for i in range(7)])
    assert R.embedding_genus(g) == 2


# -- properties ------------------------------------------------------------


@given(st.sampled_from(R.TAGS), st.integers(0, 2**31 - 1), st.permutations(list(range(1, 9))))
def test_planted_extension_verifies(tag, seed, image):
    g = plant(tag, seed)
    cfg = plant_found(g, tag)
    inst = R.reduce(g, cfg)
    assert inst.measure_after < inst.measure_before
    sub, _ = find_odd_coloring(inst.reduced, 8)
    perm = dict(zip(range(1, 9), image))
    perm[0] = 0
    out = R.extend(g, cfg, sub.permuted(perm))
    assert verify_odd_coloring(g, out, 8).valid


@given(st.sampled_from(R.TAGS), st.integers(0, 2**31 - 1))
def test_reduction_keeps_triangle_freedom(tag, seed):
    g = plant(tag, seed)
    if has_adjacent_triangles(g):
        return
    inst = R.reduce(g, plant_found(g, tag))
    assert not has_adjacent_triangles(inst.reduced)


@given(st.integers(0, 2**31 - 1), st.integers(9, 12))
def test_driver_always_verifies(seed, n):
    g = random_toroidal(n, seed)
    res = R.color_without_adjacent_triangles(g)
    assert verify_odd_coloring(g, res.coloring, 8).valid
    assert len(res.trace) <= 4 * g.n
