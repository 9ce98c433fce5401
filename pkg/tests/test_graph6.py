import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qspec.errors import Graph6Error, ModeError
from qspec.graph6 import emit_graph6, iter_graph6_lines, parse_graph6, read_graph6_file
from qspec.graph_core import ApexFamily, Multigraph, build_atom, realize


def test_k2():
    assert emit_graph6(build_atom("path", 2)) == "A_"
    assert parse_graph6("A_") == build_atom("path", 2)


def test_single_vertex():
    assert emit_graph6(build_atom("empty", 1)) == "@"
    assert parse_graph6("@").n == 1


def test_known_encodings():
    # reference strings produced by networkx's graph6 writer
    import networkx as nx
    for g in (build_atom("cycle", 5), build_atom("complete", 4), realize(ApexFamily((3,), (2,)))):
        ref = nx.to_graph6_bytes(nx.from_numpy_array(g.adj.astype(int)), header=False)
        assert emit_graph6(g) == ref.decode().strip()


def test_c5_round_trip():
    c5 = build_atom("cycle", 5)
    assert parse_graph6(emit_graph6(c5)) == c5


@given(st.integers(0, 70), st.integers(0, 2 ** 32 - 1))
def test_round_trip_random(n, seed):
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < 0.3, 1).astype(np.int64)
    g = Multigraph(upper + upper.T)
    assert parse_graph6(emit_graph6(g)) == g


def test_large_order_field():
    g = build_atom("path", 100)
    s = emit_graph6(g)
    assert s.startswith("~") and parse_graph6(s) == g


def test_header_and_comments():
    text = ">>graph6<<A_\n\n>> comment\n@\n"
    lines = list(read_graph6_file(io.StringIO(text)))
    assert lines == [">>graph6<<A_", "@"]
    assert parse_graph6(lines[0]) == build_atom("path", 2)
    assert list(iter_graph6_lines([">>graph6<<", "A_"])) == ["A_"]


def test_multigraph_rejected():
    with pytest.raises(ModeError):
        emit_graph6(build_atom("cycle", 2))


@pytest.mark.parametrize("line,offset", [("", 0), ("A", 1), ("A__", 2), ("B!", 1), ("A`", 1)])
def test_malformed(line, offset):
    with pytest.raises(Graph6Error) as exc:
        parse_graph6(line)
    assert exc.value.offset == offset
