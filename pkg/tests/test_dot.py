import pydot
import pytest

from matchlab import dot
from matchlab.adversary import run_induction
from matchlab.generators import find_worst_case_path
from matchlab.local import greedy, run_on_graph, view_tree
from matchlab.templates import random_template, realise


def parse(text):
    graphs = pydot.graph_from_dot_data(text)
    assert graphs and len(graphs) == 1
    return graphs[0]


def test_graph_dot():
    g = find_worst_case_path(4).graph
    parsed = parse(dot.graph_to_dot(g, run_on_graph(greedy(4, 3), g)))
    assert len(parsed.get_edges()) == len(g.edges)
    assert parsed.get_node("0")[0].get("label") == '"0\\n4"'


def test_ball_dot_marks_root_and_tail_colours():
    g = find_worst_case_path(3).graph
    ball = view_tree(g, 1, 2)
    parsed = parse(dot.system_to_dot(ball))
    root = parsed.get_node('"ve"')[0]
    assert root.get("shape") == "doublecircle"
    labels = sorted(e.get("label").strip('"') for e in parsed.get_edges())
    assert labels == sorted(str(w[-1]) for w in ball.nodes if w)


def test_template_dot_annotates_forbidden_colours():
    T = realise(random_template(3, 1, 5)).template
    parsed = parse(dot.template_to_dot(T, 2))
    assert all("τ=" in n.get("label") for n in parsed.get_nodes() if n.get_name() not in ("node",))


@pytest.mark.parametrize("k,r", [(3, 2), (4, 2)])
def test_certificate_dot(k, r):
    cert = run_induction(greedy(k, r))
    parsed = parse(dot.certificate_to_dot(cert))
    if cert.kind == "tightness":
        assert len(parsed.get_subgraphs()) == 2
    else:
        assert len(parsed.get_edges()) == len(cert.data["W"]) - 1


def test_infinite_system_needs_depth():
    with pytest.raises(ValueError):
        dot.system_to_dot(random_template(3, 1, 0).system)
