import pytest

from helpers import build, canon_cycles, cycles_oracle, load, random_graph

from lpakit.graph import (
    DuplicateName,
    EmptyGraph,
    Graph,
    MalformedLine,
    TooManyCycles,
    UnknownVertex,
    descendants,
    edges_between,
    enumerate_cycles,
    exitless_cycles,
    parse_graph,
    path_key,
    serialize_graph,
    sinks,
    sources,
    weak_components,
)


# -- parsing -------------------------------------------------------------------


def test_parse_round_trip():
    text = "vertex v\nvertex w\nedge c v v\nedge e v w\n"
    g = parse_graph(text)
    assert serialize_graph(g) == text
    assert parse_graph(serialize_graph(g)) == g


def test_parse_skips_comments_and_blank_lines():
    g = parse_graph("# a loop\n\nvertex v\n# more\nedge c v v\n")
    assert g.vertices == ("v",)
    assert [e.name for e in g.edges] == ["c"]


def test_parse_reports_offending_line_number():
    with pytest.raises(MalformedLine) as info:
        parse_graph("vertex v\nvertex w\nedg e v w\n")
    assert info.value.lineno == 3


def test_parse_rejects_bad_names():
    with pytest.raises(MalformedLine):
        parse_graph("vertex a-b\n")
    with pytest.raises(MalformedLine):
        parse_graph("vertex v\nedge e! v v\n")


def test_parse_rejects_wrong_arity():
    with pytest.raises(MalformedLine) as info:
        parse_graph("vertex v\nedge e v\n")
    assert info.value.lineno == 2


def test_empty_input_rejected():
    with pytest.raises(EmptyGraph):
        parse_graph("# nothing\n")


def test_duplicate_names_rejected():
    with pytest.raises(DuplicateName):
        parse_graph("vertex v\nvertex v\n")
    with pytest.raises(DuplicateName):
        parse_graph("vertex v\nedge v v v\n")  # edge reusing a vertex name
    with pytest.raises(DuplicateName):
        parse_graph("vertex v\nedge e v v\nedge e v v\n")


def test_unknown_endpoint_rejected():
    with pytest.raises(UnknownVertex):
        parse_graph("vertex v\nedge e v w\n")


# -- structure queries -----------------------------------------------------------


def test_out_and_in_edges_in_declaration_order():
    g = load("toeplitz")
    assert [e.name for e in g.out_edges("v")] == ["c", "e"]
    assert [e.name for e in g.in_edges("v")] == ["c"]
    assert g.is_sink("w") and not g.is_sink("v")
    assert g.is_source("v") is False  # the loop feeds it


def test_sources_sinks_components():
    g = load("fiber_plus_toeplitz")
    assert sources(g) == ["u"]
    assert sinks(g) == ["w", "w2"]
    assert weak_components(g) == [["u", "w"], ["v2", "w2"]]


def test_descendants_follow_edges():
    g = load("path2")
    assert descendants(g, "u") == ["u", "v", "w"]
    assert descendants(g, "w") == ["w"]


def test_edges_between():
    g = load("fork2")
    assert [e.name for e in edges_between(g, ["u"], ["w2"])] == ["e2"]


def test_subgraph_keeps_declaration_order():
    g = load("two_balloons")
    sub = g.subgraph(["q", "w"])
    assert sub.vertices == ("w", "q")
    assert [e.name for e in sub.edges] == ["cq", "g"]


def test_subgraph_unknown_vertex():
    g = load("loop")
    with pytest.raises(UnknownVertex):
        g.subgraph(["nope"])


def test_paths_and_keys():
    g = load("path2")
    p = g.path(["e1", "e2"])
    assert (p.source, p.target) == ("u", "w")
    assert len(p) == 2
    # vertex paths order before edge paths of any length
    assert path_key(g.vertex_path("w")) < path_key(p)
    with pytest.raises(UnknownVertex):
        g.vertex_path("zz")


def test_path_rejects_non_composable_edges():
    g = load("fork2")
    with pytest.raises(Exception):
        g.path(["e1", "e2"])  # e1 ends at w1, e2 starts at u


def test_graph_equality_is_structural():
    a = build(["v"], [("c", "v", "v")])
    b = parse_graph("vertex v\nedge c v v\n")
    assert a == b and hash(a) == hash(b)
    assert a != build(["v"])


# -- cycles ------------------------------------------------------------------


def test_exitless_cycle_found_on_bare_loop():
    g = load("loop")
    cyc = exitless_cycles(g)
    assert len(cyc) == 1
    assert cyc[0].edges == ("c",) and cyc[0].vertices == ("v",)


def test_exitless_cycles_empty_when_every_cycle_has_exit():
    for name in ("toeplitz", "double_edge_cycle", "loop_two_exits"):
        assert exitless_cycles(load(name)) == []


def test_exitless_two_cycle():
    g = build(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])
    cyc = exitless_cycles(g)
    assert len(cyc) == 1
    assert cyc[0].vertices == ("a", "b")


def test_enumerate_cycles_counts_parallel_edges_separately():
    g = load("double_edge_cycle")
    got = {c.edges for c in enumerate_cycles(g, 10)}
    assert got == {("x", "y"), ("z", "y")}


def test_enumerate_cycles_matches_oracle_on_corpus(corpus):
    for name, g in corpus.items():
        assert canon_cycles(enumerate_cycles(g, 10_000)) == cycles_oracle(g), name


def test_enumerate_cycles_matches_oracle_on_random_graphs(rng):
    for _ in range(150):
        g = random_graph(rng, max_vertices=6)
        assert canon_cycles(enumerate_cycles(g, 10_000)) == cycles_oracle(g)


def test_enumerate_cycles_cap():
    # complete-ish digraph has lots of cycles
    vs = [f"v{i}" for i in range(5)]
    es = []
    k = 0
    for a in vs:
        for b in vs:
            es.append((f"e{k}", a, b))
            k += 1
    g = Graph(vs, es)
    with pytest.raises(TooManyCycles):
        enumerate_cycles(g, 10)


def test_exitless_cycles_agree_with_filtered_enumeration(rng):
    for _ in range(100):
        g = random_graph(rng, max_vertices=6)
        allc = enumerate_cycles(g, 10_000)
        want = {
            c.edges
            for c in allc
            if all(len(g.out_edges(v)) == 1 for v in c.vertices)
        }
        assert {c.edges for c in exitless_cycles(g)} == want
