"""Tests for the ordered graph model, constructors and text format."""

from __future__ import annotations

from fractions import Fraction

import pytest

from ordered_turan.core.graph import (
    OrderedGraph,
    blow_up,
    is_monotone_path,
    make_clique,
    make_cycle,
    make_path,
    parse_pattern,
)
from ordered_turan.core.io import (
    dumps_graph,
    format_rational,
    loads_graph,
    parse_rational,
    read_graph,
    write_graph,
)
from ordered_turan.errors import GraphFormatError, PreconditionError


def _triangle() -> OrderedGraph:
    return OrderedGraph(3, frozenset({(1, 2), (1, 3), (2, 3)}))


def test_rejects_descending_or_out_of_range_edges():
    with pytest.raises(PreconditionError):
        OrderedGraph(3, frozenset({(2, 1)}))
    with pytest.raises(PreconditionError):
        OrderedGraph(3, frozenset({(1, 4)}))
    with pytest.raises(PreconditionError):
        OrderedGraph(0)


def test_from_edges_normalises_orientation_and_rejects_duplicates():
    graph = OrderedGraph.from_edges(4, [(3, 1), (2, 4)])
    assert graph.edges == frozenset({(1, 3), (2, 4)})

    with pytest.raises(PreconditionError):
        OrderedGraph.from_edges(4, [(1, 2), (2, 1)])
    with pytest.raises(PreconditionError):
        OrderedGraph.from_edges(4, [(2, 2)])


def test_neighbour_tables():
    graph = _triangle()
    assert graph.out_neighbors[1] == (2, 3)
    assert graph.in_neighbors[3] == (1, 2)
    assert graph.in_neighbors[1] == ()
    assert graph.has_edge(3, 1)


def test_subgraph_must_use_host_edges():
    graph = _triangle()
    sub = graph.subgraph([(1, 2)])
    assert sub.is_subgraph_of(graph)
    assert not graph.is_subgraph_of(sub)
    with pytest.raises(PreconditionError):
        make_path(2).subgraph([(1, 3)])


def test_standard_patterns():
    assert make_path(3).edges == frozenset({(1, 2), (2, 3), (3, 4)})
    assert make_cycle(4).edges == frozenset({(1, 2), (2, 3), (3, 4), (1, 4)})
    assert make_clique(4).e == 6
    with pytest.raises(PreconditionError):
        make_path(0)
    with pytest.raises(PreconditionError):
        make_cycle(2)


def test_blow_up_edge_and_vertex_counts():
    blown, layout = blow_up(make_path(2), 3)
    assert blown.n == 9
    assert blown.e == 2 * 9
    assert layout.intervals[1] == (4, 5, 6)
    assert layout.class_of(7) == 3
    # no edges inside a class
    assert all(layout.class_of(u) != layout.class_of(v) for u, v in blown.edges)


def test_blow_up_by_one_is_identity():
    blown, _ = blow_up(make_cycle(5), 1)
    assert blown == make_cycle(5)


def test_is_monotone_path():
    assert is_monotone_path(make_path(4)) == 4
    assert is_monotone_path(make_cycle(3)) is None
    assert is_monotone_path(OrderedGraph(3, frozenset({(1, 2), (1, 3)}))) is None


def test_parse_pattern_shorthand():
    assert parse_pattern("P3") == make_path(3)
    assert parse_pattern("c_5") == make_cycle(5)
    assert parse_pattern(" K4 ") == make_clique(4)
    with pytest.raises(PreconditionError):
        parse_pattern("Q3")


def test_text_format_example():
    text = dumps_graph(make_path(2))
    assert text == "ordgraph 1\nn 3\ne 1 2\ne 2 3\n"
    assert loads_graph(text) == make_path(2)


def test_text_format_edgeless_graph():
    assert loads_graph("ordgraph 1\nn 5\n") == OrderedGraph.empty(5)


@pytest.mark.parametrize(
    "text, line",
    [
        ("graph 1\nn 3\n", 1),
        ("ordgraph 1\nvertices 3\n", 2),
        ("ordgraph 1\nn 3\ne 2 1\n", 3),
        ("ordgraph 1\nn 3\ne 1 2\ne 1 2\n", 4),
        ("ordgraph 1\nn 3\ne 2 3\ne 1 2\n", 4),
        ("ordgraph 1\nn 3\ne 1 4\n", 3),
        ("ordgraph 1\nn 3\ne 1 \u00b2\n", 3),
        ("ordgraph 1\nn \u00b3\n", 2),
        ("ordgraph 1\nn 3\ne 1 -2\n", 3),
    ],
)
def test_text_format_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as excinfo:
        loads_graph(text)
    assert excinfo.value.line == line
    assert excinfo.value.exit_code == 2


def test_graph_file_round_trip(tmp_path):
    path = write_graph(_triangle(), tmp_path / "triangle.ordgraph")
    assert read_graph(path) == _triangle()


def test_read_graph_rejects_non_utf8_bytes(tmp_path):
    path = tmp_path / "bad.ordgraph"
    path.write_bytes(b"ordgraph 1\nn 3\ne 1 \xff\n")
    with pytest.raises(GraphFormatError) as excinfo:
        read_graph(path)
    assert excinfo.value.exit_code == 2
    assert excinfo.value.reason == "parse"


def test_read_graph_missing_file_is_precondition(tmp_path):
    with pytest.raises(PreconditionError) as excinfo:
        read_graph(tmp_path / "absent.ordgraph")
    assert excinfo.value.exit_code == 2
    assert excinfo.value.reason == "io"


def test_rationals():
    assert format_rational(Fraction(1, 4)) == "1/4"
    assert format_rational(3) == "3/1"
    assert parse_rational("2/4") == Fraction(1, 2)
    assert parse_rational("5") == Fraction(5)
    for bad in ("0.5", "1/0", "a/b", ""):
        with pytest.raises(PreconditionError):
            parse_rational(bad)
