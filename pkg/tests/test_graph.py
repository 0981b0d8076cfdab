import pytest

from hypermotifs.graph import (
    DirectedGraph,
    EdgeListError,
    GraphError,
    degree_sequences,
    load_edge_list,
    load_edge_list_with_report,
    save_edge_list,
)


def write(tmp_path, text, name="g.tsv"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_load_basic(tmp_path):
    g = load_edge_list(write(tmp_path, "a b\nb c\n"))
    assert g.n_nodes == 3
    assert g.n_edges == 2
    assert g.has_edge("a", "b") and g.has_edge("b", "c")


def test_load_self_loop(tmp_path):
    g, report = load_edge_list_with_report(write(tmp_path, "a a\n"))
    assert g.n_nodes == 1
    assert g.n_edges == 1
    assert g.self_loop_nodes() == ["a"]
    assert report.self_loops == 1


def test_duplicates_collapsed_and_counted(tmp_path):
    g, report = load_edge_list_with_report(write(tmp_path, "a b\na b\n"))
    assert g.n_edges == 1
    assert report.duplicate_edges == 1


def test_comments_and_tabs(tmp_path):
    g = load_edge_list(write(tmp_path, "# header\na\tb\n\nb\tc extra tokens\n"))
    assert g.n_edges == 2


def test_malformed_line_reports_lineno(tmp_path):
    with pytest.raises(EdgeListError, match=":2:"):
        load_edge_list(write(tmp_path, "a b\nonly_one_token\n"))


def test_empty_file_rejected(tmp_path):
    with pytest.raises(EdgeListError, match="empty"):
        load_edge_list(write(tmp_path, "# nothing here\n"))


def test_unregistered_endpoint_rejected():
    with pytest.raises(GraphError, match="not a registered node"):
        DirectedGraph(["a"], [("a", "b")])


def test_self_loop_flag():
    with pytest.raises(GraphError, match="self-loop"):
        DirectedGraph(["a"], [("a", "a")], allows_self_loops=False)


def test_roundtrip_idempotent(tmp_path):
    src = write(tmp_path, "b a\na b\na c\nc c\n")
    g = load_edge_list(src)
    out1 = tmp_path / "o1.tsv"
    save_edge_list(g, out1)
    g2 = load_edge_list(out1)
    out2 = tmp_path / "o2.tsv"
    save_edge_list(g2, out2)
    assert g == g2
    assert out1.read_bytes() == out2.read_bytes()


def test_degree_sequences_cycle(three_cycle):
    ind, outd = degree_sequences(three_cycle)
    assert set(ind.values()) == {1} and set(outd.values()) == {1}


def test_degree_sequences_single_edge():
    g = DirectedGraph(["a", "b", "c"], [("a", "b")])
    ind, outd = degree_sequences(g)
    assert outd == {"a": 1, "b": 0, "c": 0}
    assert ind == {"a": 0, "b": 1, "c": 0}


def test_degree_handshake():
    import random

    rng = random.Random(3)
    nodes = [str(i) for i in range(20)]
    edges = {(nodes[rng.randrange(20)], nodes[rng.randrange(20)]) for _ in range(60)}
    g = DirectedGraph(nodes, edges)
    ind, outd = degree_sequences(g)
    assert sum(ind.values()) == g.n_edges
    assert sum(outd.values()) == g.n_edges


def test_induced_subgraph():
    g = DirectedGraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a"), ("a", "a")])
    sub = g.induced_subgraph({"a", "b"})
    assert sub.n_nodes == 2
    assert set(sub.edges()) == {("a", "b"), ("a", "a")}


def test_relabeled_preserves_structure(toy_ffl_graph):
    mapping = {"x": "u", "y": "v", "z": "w"}
    rel = toy_ffl_graph.relabeled(mapping)
    assert set(rel.edges()) == {("u", "v"), ("u", "w"), ("v", "w")}
