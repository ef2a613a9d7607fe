import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import abstract_graphs
from oddchrom import _kernels
from oddchrom.coloring import Coloring, verify_odd_coloring
from oddchrom.generators import complete, cycle, torus_grid
from oddchrom.graph import AbstractGraph
from oddchrom.solver import (
    ImproperPartialError,
    SizeGuardError,
    brute_force_chi_odd,
    csr,
    degree_order,
    exact_chi_odd,
    extend_partial,
    find_odd_coloring,
)

# frozen from brute_force_chi_odd; odd cycles of length 3m need 3 colors, C5 needs 5
CYCLE_VALUES = {3: 3, 4: 4, 5: 5, 6: 3, 7: 4, 8: 4, 9: 3, 10: 4}


def chromatic_number(g: AbstractGraph) -> int:
    """Plain proper-coloring count, independent of the odd machinery."""
    edges = g.edges()
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in edges):
                return k
    return 0


def test_k2_and_c4():
    assert brute_force_chi_odd(complete(2)).chi_odd == 2
    assert exact_chi_odd(complete(2)).chi_odd == 2
    assert brute_force_chi_odd(cycle(4)).chi_odd == 4


def test_k7_is_seven():
    assert exact_chi_odd(complete(7)).chi_odd == 7
    assert brute_force_chi_odd(complete(7)).chi_odd == 7


@pytest.mark.parametrize("n", sorted(CYCLE_VALUES))
def test_cycles(n):
    exact = exact_chi_odd(cycle(n))
    assert exact.chi_odd == CYCLE_VALUES[n]
    assert brute_force_chi_odd(cycle(n)).chi_odd == CYCLE_VALUES[n]


def test_grid_within_eight():
    result = exact_chi_odd(torus_grid(3, 4))
    assert result.chi_odd is not None and result.chi_odd <= 8
    assert verify_odd_coloring(torus_grid(3, 4), result.witness, result.chi_odd).valid


def test_exceeding_kmax_reports_none():
    result = exact_chi_odd(complete(7), kmax=6)
    assert result.chi_odd is None and result.witness is None
    assert result.to_json()["chiOdd"] is None


def test_size_guard():
    with pytest.raises(SizeGuardError):
        brute_force_chi_odd(cycle(11))


def test_extend_partial_examples():
    k7 = complete(7)
    rainbow = Coloring(7, tuple(range(1, 8)))
    assert extend_partial(k7, rainbow, 7) == rainbow
    six = Coloring(7, (1, 2, 3, 4, 5, 6, 0))
    assert extend_partial(k7, six, 7)[6] == 7
    assert extend_partial(k7, Coloring(7, (1, 2, 3, 4, 5, 6, 0)), 6) is None
    with pytest.raises(ImproperPartialError):
        extend_partial(k7, Coloring(7, (1, 1, 0, 0, 0, 0, 0)), 7)


def test_degree_order_and_csr():
    g = AbstractGraph.from_edges(4, [(0, 1), (1, 2), (1, 3), (2, 3)])
    assert degree_order(g).tolist() == [1, 2, 3, 0]
    indptr, indices = csr(g)
    assert indptr.tolist() == [0, 1, 4, 6, 8]
    assert indices.tolist() == [1, 0, 2, 3, 1, 3, 1, 2]


def test_pure_and_compiled_kernels_agree():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(2, 12))
        g = AbstractGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        for k in (2, 3, 4, 5):
            a = find_odd_coloring(g, k, use_jit=True)
            b = find_odd_coloring(g, k, use_jit=False)
            assert a == b


def test_jit_flag_is_read_from_environment():
    import subprocess
    import sys

    code = "from oddchrom import _kernels; print(_kernels.JIT_ENABLED)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"ODDCHROM_DISABLE_JIT": "1", "PATH": ""},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "False"
    assert _kernels.odd_search_py is _kernels._odd_search


# -- properties ------------------------------------------------------------


@given(abstract_graphs(max_n=6))
def test_oracle_equivalence(g):
    assert exact_chi_odd(g).chi_odd == brute_force_chi_odd(g).chi_odd


@given(abstract_graphs(max_n=6))
def test_odd_chromatic_number_bounds_chromatic_number(g):
    chi_o = exact_chi_odd(g).chi_odd
    assert chi_o >= chromatic_number(g)


@given(abstract_graphs(max_n=8), st.randoms(use_true_random=False))
def test_relabeling_keeps_value(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert exact_chi_odd(g.relabel(perm)).chi_odd == exact_chi_odd(g).chi_odd


@given(abstract_graphs(max_n=9))
def test_witness_verifies_and_is_minimal(g):
    result = exact_chi_odd(g)
    assert verify_odd_coloring(g, result.witness, result.chi_odd).valid
    if result.chi_odd > 1:
        assert find_odd_coloring(g, result.chi_odd - 1)[0] is None
