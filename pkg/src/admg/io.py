"""Plain-text graph, probability-table and parameter file formats.

All three share a line-oriented layout: a versioned header, a ``nodes`` line
fixing the bit order, then one record per line.  ``#`` starts a comment.

Graph::

    admg v1
    nodes 1 2 3 4
    edge 1 -> 2
    edge 2 <-> 3

Table (rows cover all ``2**n`` bitstrings, first character = first node)::

    ptable v1
    nodes 1 2
    00 0.4
    01 0.1
    ...

Parameters (one row per slot; ``tail`` must equal the computed tail)::

    qparam v1
    nodes 1 2
    q head=1 tail= ctx= value=0.5
"""

import re
from typing import NamedTuple

import numpy as np

from .errors import DuplicateRow, MissingRow, ParseError, SlotMismatch, SumNotOne
from .graph import Admg, bits
from .heads import tails
from .parametrization import (
    Slot,
    assignment_string,
    context_string,
    param_index,
    table_order,
)

SUM_TOL = 1e-9
_TOKEN = re.compile(r"\S+")


class Table(NamedTuple):
    nodes: tuple
    p: np.ndarray


def _lines(text):
    """Yield ``(lineno, [(column, token), ...])`` for non-blank lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]
        if toks:
            yield no, toks


def _header(lines, kind, last_line):
    try:
        no, toks = next(lines)
    except StopIteration:
        raise ParseError(last_line + 1, 1, f"'{kind} v1' header") from None
    if [t for _, t in toks] != [kind, "v1"]:
        raise ParseError(no, toks[0][0], f"'{kind} v1' header")
    try:
        no, toks = next(lines)
    except StopIteration:
        raise ParseError(no + 1, 1, "'nodes' line") from None
    if toks[0][1] != "nodes":
        raise ParseError(no, toks[0][0], "'nodes' line")
    if len(toks) < 2:
        raise ParseError(no, len("nodes") + 2, "at least one vertex name")
    return [t for _, t in toks[1:]]


def _fmt(x, digits):
    x = float(x)
    if digits is None:
        return repr(x)
    s = format(x, f".{digits}g")
    return "0" if s == "-0" else s


def _float(tok, no, col):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(no, col, "a number") from None


# -- graphs --------------------------------------------------------------

def parse_graph(text: str) -> Admg:
    lines = _lines(text)
    names = _header(lines, "admg", 0)
    directed, bidirected = [], []
    for no, toks in lines:
        words = [t for _, t in toks]
        if words[0] != "edge":
            raise ParseError(no, toks[0][0], "'edge'")
        if len(words) != 4:
            col = toks[-1][0] + len(toks[-1][1]) if len(words) < 4 else toks[4][0]
            raise ParseError(no, col, "'edge <a> -> <b>' or 'edge <a> <-> <b>'")
        _, a, arrow, b = words
        if arrow == "->":
            directed.append((a, b))
        elif arrow == "<->":
            bidirected.append((a, b))
        else:
            raise ParseError(no, toks[2][0], "'->' or '<->'")
    return Admg.build(names, directed, bidirected)


def serialize_graph(G: Admg) -> str:
    out = ["admg v1", "nodes " + " ".join(G.vertices)]
    v = G.vertices
    out += [f"edge {v[a]} -> {v[b]}" for a, b in sorted(G.directed)]
    out += [f"edge {v[a]} <-> {v[b]}" for a, b in sorted(G.bidirected)]
    return "\n".join(out) + "\n"


# -- probability tables ----------------------------------------------------

def parse_table(text: str, G: Admg = None) -> Table:
    """Parse a table; with ``G`` given, its node list must match."""
    lines = _lines(text)
    names = _header(lines, "ptable", 0)
    if G is not None and tuple(names) != G.vertices:
        raise SlotMismatch(f"table nodes {names} differ from graph nodes {list(G.vertices)}")
    n = len(names)
    p = np.zeros(1 << n)
    seen = set()
    for no, toks in lines:
        if len(toks) != 2:
            raise ParseError(no, toks[0][0], "'<bitstring> <value>'")
        (c1, bs), (c2, val) = toks
        if len(bs) != n or set(bs) - {"0", "1"}:
            raise ParseError(no, c1, f"bitstring of length {n}")
        x = sum(1 << i for i, ch in enumerate(bs) if ch == "1")
        if x in seen:
            raise DuplicateRow(f"row {bs} (line {no})")
        seen.add(x)
        p[x] = _float(val, no, c2)
    missing = [assignment_string(n, x) for x in table_order(n) if x not in seen]
    if missing:
        raise MissingRow("missing rows " + ", ".join(missing))
    if abs(p.sum() - 1.0) > SUM_TOL:
        raise SumNotOne(f"table sums to {p.sum()!r}")
    return Table(tuple(names), p)


def serialize_table(nodes, p, digits=None) -> str:
    """Rows in ascending bitstring order; ``digits=None`` keeps full precision."""
    nodes = tuple(nodes.vertices if isinstance(nodes, Admg) else nodes)
    n = len(nodes)
    out = ["ptable v1", "nodes " + " ".join(nodes)]
    out += [f"{assignment_string(n, x)} {_fmt(p[x], digits)}" for x in table_order(n)]
    return "\n".join(out) + "\n"


# -- parameters ------------------------------------------------------------

def _names_field(G, tok, key, no, col):
    if not tok.startswith(key + "="):
        raise ParseError(no, col, f"'{key}=...'")
    body = tok[len(key) + 1:]
    return G.mask(body.split(",")) if body else 0


def parse_q(text: str, G: Admg) -> dict:
    """Parse parameters for ``G``; returns ``{Slot: value}``."""
    lines = _lines(text)
    names = _header(lines, "qparam", 0)
    if tuple(names) != G.vertices:
        raise SlotMismatch(f"q nodes {names} differ from graph nodes {list(G.vertices)}")
    t = tails(G)
    out = {}
    for no, toks in lines:
        if toks[0][1] != "q" or len(toks) != 5:
            raise ParseError(no, toks[0][0], "'q head=... tail=... ctx=... value=...'")
        H = _names_field(G, toks[1][1], "head", no, toks[1][0])
        T = _names_field(G, toks[2][1], "tail", no, toks[2][0])
        c, ctx_tok = toks[3]
        if not ctx_tok.startswith("ctx="):
            raise ParseError(no, c, "'ctx=<bitstring>'")
        bs = ctx_tok[4:]
        c, val_tok = toks[4]
        if not val_tok.startswith("value="):
            raise ParseError(no, c, "'value=<number>'")
        value = _float(val_tok[6:], no, c + 6)
        if H not in t:
            raise SlotMismatch(f"line {no}: {G.fmt(H)} is not a head")
        if T != t[H]:
            raise SlotMismatch(f"line {no}: tail of {G.fmt(H)} is {G.fmt(t[H])}, not {G.fmt(T)}")
        tpos = list(bits(T))
        if len(bs) != len(tpos) or set(bs) - {"0", "1"}:
            raise SlotMismatch(f"line {no}: ctx must be a bitstring of length {len(tpos)}")
        ctx = sum(1 << v for v, ch in zip(tpos, bs) if ch == "1")
        s = Slot(H, T, ctx)
        if s in out:
            raise DuplicateRow(f"line {no}: slot {s.format(G)}")
        out[s] = value
    missing = [s.format(G) for s in param_index(G) if s not in out]
    if missing:
        raise MissingRow("missing slots " + "; ".join(missing))
    return {s: out[s] for s in param_index(G)}


def serialize_q(G: Admg, q, digits=None) -> str:
    out = ["qparam v1", "nodes " + " ".join(G.vertices)]
    for s in param_index(G):
        if s in q:
            v = q[s]
        else:
            v = q[(s.head, s.ctx)]
        out.append(f"q head={','.join(G.names(s.head))} tail={','.join(G.names(s.tail))} "
                   f"ctx={context_string(G, s.tail, s.ctx)} value={_fmt(v, digits)}")
    return "\n".join(out) + "\n"
