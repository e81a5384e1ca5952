import random

import numpy as np
import pytest

from matchlab import kernels
from matchlab.errors import ContractViolation, ModelError
from matchlab.generators import gen_random_graph
from matchlab.local import (
    BOT,
    ColouredGraph,
    MatchingOutput,
    broken_lazy,
    build_algorithm,
    greedy,
    run_on_graph,
    simulate_rounds,
    verify_matching,
    view_tree,
)
from matchlab.systems import RootedBall
from matchlab.words import E, words_up_to


def naive_greedy(g: ColouredGraph, k: int) -> list[int]:
    """Global greedy straight from its definition: colour by colour over the edge list."""
    out = [BOT] * g.n
    for c in range(1, k + 1):
        for u, v, col in g.edges:
            if col == c and out[u] == BOT and out[v] == BOT:
                out[u] = out[v] = c
    return out


def walks(g: ColouredGraph, v: int, length: int) -> set:
    """Colour words of non-backtracking walks from v."""
    found = {E}
    frontier = [(E, v)]
    for _ in range(length):
        frontier = [(w + (c,), u) for w, x in frontier for c, u in g.adj[x].items() if not w or w[-1] != c]
        found |= {w for w, _ in frontier}
    return found


def graphs(count, seed, max_n=50, max_k=5):
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(1, max_k)
        yield k, gen_random_graph(rng.randint(1, max_n), k, rng.randrange(10**9))


PATH = ColouredGraph(3, 2, [(0, 1, 1), (1, 2, 2)])


def test_view_tree_on_path():
    assert set(view_tree(PATH, 1, 1).nodes) == {E, (1,), (2,)}
    assert set(view_tree(PATH, 0, 2).nodes) == {E, (1,), (1, 2)}


def test_view_tree_on_triangle_unfolds_the_cycle():
    tri = ColouredGraph(3, 3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    for v in range(3):
        view = set(view_tree(tri, v, 4).nodes)
        assert view == walks(tri, v, 4)
        assert len(view) == 1 + 2 * 4  # two rays that never close up


def test_view_tree_on_k4_is_full_ball():
    k4 = ColouredGraph(4, 3, [(0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2), (0, 3, 3), (1, 2, 3)])
    for v in range(4):
        assert view_tree(k4, v, 2).nodes == tuple(words_up_to(3, 2))


@pytest.mark.parametrize("k,g", list(graphs(30, 1)))
def test_view_tree_matches_walk_enumeration(k, g):
    for v in range(min(g.n, 5)):
        assert set(view_tree(g, v, 3).nodes) == walks(g, v, 3)


def test_improper_colouring_rejected():
    with pytest.raises(ModelError):
        ColouredGraph(3, 2, [(0, 1, 1), (1, 2, 1)])
    with pytest.raises(ModelError):
        ColouredGraph(2, 2, [(0, 1, 3)])
    with pytest.raises(ModelError):
        ColouredGraph(2, 2, [(0, 0, 1)])


def test_graph_json_round_trip():
    g = ColouredGraph(4, 3, [(0, 1, 1), (1, 2, 2), (2, 3, 1)])
    assert g.to_json() == {"k": 3, "n": 4, "edges": [[0, 1, 1], [1, 2, 2], [2, 3, 1]]}
    assert ColouredGraph.from_json(g.to_json()) == g
    assert MatchingOutput.from_json({"outputs": [1, 1, 0, 0]}).outputs == (1, 1, 0, 0)


def test_greedy_ball_examples():
    ball23 = RootedBall.from_words(3, [w for w in words_up_to(3, 3) if 1 not in w], 3)
    ball12 = RootedBall.from_words(3, [w for w in words_up_to(3, 3) if 3 not in w], 3)
    assert greedy(3, 2).eval(ball23) == 2
    assert greedy(3, 2).eval(ball12) == 1
    assert greedy(1, 0).eval(RootedBall.from_words(1, [E, (1,)], 1)) == 1


def test_eval_contract():
    ball = RootedBall.from_words(3, [E, (1,)], 2)
    with pytest.raises(ContractViolation):
        greedy(3, 2).eval(ball)
    with pytest.raises(ContractViolation):
        greedy(2, 1).eval(ball)
    with pytest.raises(ContractViolation):
        run_on_graph(greedy(2, 1), ColouredGraph(2, 3, [(0, 1, 3)]))


def test_single_edge_symmetry_and_colour_one_matching():
    edge = ColouredGraph(2, 1, [(0, 1, 1)])
    for a in (greedy(1, 0), broken_lazy(1)):
        out = run_on_graph(a, edge)
        assert out[0] == out[1]
    pm = ColouredGraph(6, 3, [(0, 1, 1), (2, 3, 1), (4, 5, 1), (1, 2, 2), (3, 4, 3)])
    assert run_on_graph(greedy(3, 2), pm).outputs == (1,) * 6


def test_single_node():
    g = ColouredGraph(1, 3, [])
    a = greedy(3, 2)
    assert simulate_rounds(a, g).outputs == run_on_graph(a, g).outputs == (a.eval(RootedBall.from_words(3, [E], 3)),)


def test_verify_matching_examples():
    edge = ColouredGraph(2, 1, [(0, 1, 1)])
    r = verify_matching(edge, [0, 0])
    assert (r.ok, r.condition, r.node) == (False, "M3", 0)
    r = verify_matching(edge, [1, 0])
    assert (r.ok, r.condition, r.node) == (False, "M2", 0)
    r = verify_matching(edge, [2, 0])
    assert (r.ok, r.condition) == (False, "M1")
    assert verify_matching(edge, [1, 1]).ok


@pytest.mark.parametrize("k,g", list(graphs(100, 2, max_n=200, max_k=6)))
def test_greedy_equals_global_greedy(k, g):
    a = greedy(k, k - 1)
    out = run_on_graph(a, g).outputs
    assert list(out) == naive_greedy(g, k)
    assert verify_matching(g, out).ok


@pytest.mark.parametrize("k,g", list(graphs(40, 3)))
def test_run_on_graph_equals_simulate_rounds(k, g):
    for r in range(k):
        a = greedy(k, r)
        slow = run_on_graph(a, g, use_kernel=False).outputs
        assert slow == simulate_rounds(a, g).outputs
        assert slow == run_on_graph(a, g).outputs


@pytest.mark.parametrize("k,g", list(graphs(20, 4)))
def test_equal_views_give_equal_outputs(k, g):
    r = max(0, k - 2)
    a = greedy(k, r)
    out = run_on_graph(a, g).outputs
    seen = {}
    for v in range(g.n):
        view = view_tree(g, v, r + 1)
        if view in seen:
            assert out[seen[view]] == out[v]
        seen.setdefault(view, v)


def test_build_algorithm_defaults():
    assert build_algorithm("greedy", 4).runtime == 3
    assert build_algorithm("broken-lazy", 4).runtime == 0
    with pytest.raises(KeyError):
        build_algorithm("nope", 3)


@pytest.mark.parametrize("name,impl", sorted(kernels.backends().items()))
@pytest.mark.parametrize("k,g", list(graphs(20, 5, max_n=120, max_k=6)))
def test_kernel_backends_agree(name, impl, k, g):
    adj = g.adjacency_array(k)
    assert list(impl.greedy_graph(adj, k)) == naive_greedy(g, k)
    for radius in range(1, k + 1):
        ref = [greedy(k, radius - 1).eval(view_tree(g, v, radius, k)) for v in range(g.n)]
        assert list(impl.greedy_views(adj, k, radius)) == ref


def test_compiled_backend_loaded():
    # the package build compiles the extension; the fallback stays importable
    assert "python" in kernels.backends()
    assert kernels.BACKEND in kernels.backends()
    assert isinstance(kernels.greedy_tree(np.array([-1, 0], dtype=np.int32), np.array([0, 1], dtype=np.int32), 1),
                      np.ndarray)
