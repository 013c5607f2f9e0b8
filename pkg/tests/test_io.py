import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from admg.errors import (
    DirectedCycle,
    DuplicateRow,
    MissingRow,
    ParseError,
    SelfLoop,
    SlotMismatch,
    SumNotOne,
    UnknownVertex,
)
from admg.io import parse_graph, parse_q, parse_table, serialize_graph, serialize_q, serialize_table
from admg.oracles import random_admg
from admg.parametrization import as_vector, dimension, param_index

from .graphs import bidirected_pair, graph_l

L_TEXT = """\
admg v1
# the graph L
nodes 1 2 3 4
edge 1 -> 2
edge 2 -> 4
edge 2 <-> 3
edge 3 <-> 4
"""


class TestGraphFormat:
    def test_graph_l(self):
        assert parse_graph(L_TEXT) == graph_l()
        assert serialize_graph(graph_l()) == L_TEXT.replace("# the graph L\n", "")

    def test_self_loop(self):
        with pytest.raises(SelfLoop):
            parse_graph("admg v1\nnodes 1 2\nedge 1 -> 1\n")

    def test_cycle(self):
        with pytest.raises(DirectedCycle):
            parse_graph("admg v1\nnodes 1 2\nedge 1 -> 2\nedge 2 -> 1\n")

    def test_empty_nodes(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("admg v1\nnodes\n")
        assert exc.value.line == 2

    @pytest.mark.parametrize("text, line", [
        ("", 1),
        ("admg v2\nnodes a\n", 1),
        ("admg v1\nedges a\n", 2),
        ("admg v1\nnodes a b\nedge a => b\n", 3),
        ("admg v1\nnodes a b\nedge a ->\n", 3),
        ("admg v1\nnodes a b\nvertex c\n", 3),
    ])
    def test_syntax_errors(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_graph(text)
        assert exc.value.line == line and exc.value.column >= 1

    def test_column(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("admg v1\nnodes a b\nedge a => b\n")
        assert exc.value.column == 8


class TestTableFormat:
    def test_uniform(self):
        t = parse_table("ptable v1\nnodes a b\n00 0.25\n01 0.25\n10 0.25\n11 0.25\n")
        assert t.nodes == ("a", "b") and np.allclose(t.p, 0.25)

    def test_bit_order(self):
        # the first character is the first node, which is bit 0
        t = parse_table("ptable v1\nnodes a b\n00 0.1\n10 0.2\n01 0.3\n11 0.4\n")
        assert t.p[0b01] == 0.2 and t.p[0b10] == 0.3

    def test_missing_row(self):
        with pytest.raises(MissingRow):
            parse_table("ptable v1\nnodes a b\n00 0.25\n01 0.25\n10 0.5\n")

    def test_duplicate_row(self):
        with pytest.raises(DuplicateRow):
            parse_table("ptable v1\nnodes a\n0 0.5\n0 0.5\n1 0\n")

    def test_sum(self):
        with pytest.raises(SumNotOne):
            parse_table("ptable v1\nnodes a\n0 0.5\n1 0.6\n")

    def test_bad_bitstring(self):
        with pytest.raises(ParseError):
            parse_table("ptable v1\nnodes a\n2 0.5\n1 0.5\n")
        with pytest.raises(ParseError):
            parse_table("ptable v1\nnodes a\n0 x\n1 0.5\n")

    def test_node_mismatch(self):
        with pytest.raises(SlotMismatch):
            parse_table("ptable v1\nnodes b a\n00 0.25\n01 0.25\n10 0.25\n11 0.25\n",
                        bidirected_pair())


Q_PAIR = """\
qparam v1
nodes 1 2
q head=1 tail= ctx= value=0.5
q head=2 tail= ctx= value=0.5
q head=1,2 tail= ctx= value=0.4
"""


class TestQFormat:
    def test_pair(self):
        G = bidirected_pair()
        q = parse_q(Q_PAIR, G)
        assert list(as_vector(G, q)) == [0.5, 0.5, 0.4]
        assert serialize_q(G, q) == Q_PAIR

    def test_wrong_tail(self, L):
        text = serialize_q(L, {s: 0.5 for s in param_index(L)})
        bad = text.replace("head=3,4 tail=1,2", "head=3,4 tail=2", 1)
        with pytest.raises(SlotMismatch):
            parse_q(bad, L)

    def test_not_a_head(self, L):
        text = serialize_q(L, {s: 0.5 for s in param_index(L)})
        with pytest.raises(SlotMismatch):
            parse_q(text.replace("head=3,4 tail=1,2", "head=2,3,4 tail=1,2", 1), L)

    def test_bad_context(self):
        G = graph_l()
        text = serialize_q(G, {s: 0.5 for s in param_index(G)})
        with pytest.raises(SlotMismatch):
            parse_q(text.replace("head=2 tail=1 ctx=0", "head=2 tail=1 ctx=00"), G)

    def test_missing_and_duplicate(self):
        G = bidirected_pair()
        with pytest.raises(MissingRow):
            parse_q("\n".join(Q_PAIR.splitlines()[:-1]), G)
        with pytest.raises(DuplicateRow):
            parse_q(Q_PAIR + "q head=1 tail= ctx= value=0.5\n", G)

    def test_unknown_vertex_in_head(self):
        with pytest.raises(UnknownVertex):
            parse_q(Q_PAIR.replace("head=1 ", "head=7 "), bidirected_pair())


@st.composite
def instances(draw):
    n = draw(st.integers(1, 5))
    rng = np.random.default_rng(draw(st.integers(0, 2**32 - 1)))
    return random_admg(n, rng), rng


class TestRoundTrip:
    @given(instances())
    @settings(max_examples=150, deadline=None)
    def test_all_formats(self, inst):
        G, rng = inst
        assert parse_graph(serialize_graph(G)) == G
        p = rng.dirichlet(np.ones(1 << G.n))
        t = parse_table(serialize_table(G, p), G)
        assert t.nodes == G.vertices and np.array_equal(t.p, p)
        qv = rng.uniform(-1, 2, size=dimension(G))
        q = dict(zip(param_index(G), qv))
        back = parse_q(serialize_q(G, q), G)
        assert np.array_equal(as_vector(G, back), qv)
        text = serialize_q(G, back)
        assert serialize_q(G, parse_q(text, G)) == text
