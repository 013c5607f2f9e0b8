"""m-separation, Markov blankets and ordered local Markov statements."""

from dataclasses import dataclass

from .errors import NotAncestral, NotBarren, NotTopological, OverlappingSets
from .graph import (
    Admg,
    ENUMERATION_BOUND,
    ancestors,
    barren,
    bits,
    check_size,
    district,
    is_ancestral,
    is_topological,
    parents,
    submasks,
    topological_order,
)


@dataclass(frozen=True)
class CiStatement:
    """``left`` independent of ``right`` given ``given`` (all masks)."""

    left: int
    right: int
    given: int

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("left and right sets must be non-empty")
        if self.left & self.right or self.left & self.given or self.right & self.given:
            raise OverlappingSets("statement sets must be pairwise disjoint")

    def format(self, G: Admg) -> str:
        return f"{G.fmt(self.left)} _||_ {G.fmt(self.right)} | {G.fmt(self.given)}"


# Arrival marks: whether the edge used to reach a vertex has an arrowhead there.
_TAIL, _ARROW = 0, 1


def _moves(G, v):
    # (neighbour mask, mark at v, mark at neighbour)
    return ((G.ch(v), _TAIL, _ARROW),
            (G.pa(v), _ARROW, _TAIL),
            (G.sib(v), _ARROW, _ARROW))


def _reachable(G, A, C):
    """Vertices joined to ``A`` by an m-connecting walk given ``C``.

    A walk may pass a collider only if it lies in ``an(C)`` and a
    non-collider only if it lies outside ``C``.
    """
    anC = ancestors(G, C)
    seen = set()
    stack = []
    reached = 0

    for a in bits(A):
        for nbrs, at_v, at_w in _moves(G, a):
            for w in bits(nbrs):
                stack.append((w, at_w))
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        v, arrived = state
        reached |= 1 << v
        for nbrs, at_v, at_w in _moves(G, v):
            collider = arrived == _ARROW and at_v == _ARROW
            if collider:
                if not anC >> v & 1:
                    continue
            elif C >> v & 1:
                continue
            for w in bits(nbrs):
                if (w, at_w) not in seen:
                    stack.append((w, at_w))
    return reached


def is_m_separated(G: Admg, A, B, C=0) -> bool:
    A, B, C = G.mask(A), G.mask(B), G.mask(C)
    if A & B or A & C or B & C:
        raise OverlappingSets("A, B and C must be pairwise disjoint")
    if not A or not B:
        raise ValueError("A and B must be non-empty")
    return not _reachable(G, A, C) & B


def implied_independencies(G: Admg, bound=ENUMERATION_BOUND) -> list:
    """Every elementary m-separation ``a _||_ b | C`` with ``a < b``."""
    check_size(G, bound)
    out = []
    n = G.n
    for a in range(n):
        for b in range(a + 1, n):
            rest = G.full & ~(1 << a | 1 << b)
            for C in submasks(rest):
                if not _reachable(G, 1 << a, C) >> b & 1:
                    out.append(CiStatement(1 << a, 1 << b, C))
    return out


def markov_blanket(G: Admg, v, A) -> int:
    v = G.vertex(v)
    A = G.mask(A)
    if not is_ancestral(G, A):
        raise NotAncestral(G.fmt(A))
    if not barren(G, A) >> v & 1:
        raise NotBarren(f"{G.vertices[v]} is not in barren({G.fmt(A)})")
    D = district(G, v, A)
    return parents(G, D) | (D & ~(1 << v))


def ordered_local_statements(G: Admg, order=None) -> list:
    """Statements ``v _||_ A - mbl(v, A) - v | mbl(v, A)`` along ``order``.

    ``order`` is a sequence of vertex names or indices; it defaults to
    :func:`admg.graph.topological_order`.  One statement per vertex ``v``
    and ancestral ``A`` with ``v`` in ``A`` inside the prefix ending at
    ``v``; statements with nothing left to separate are dropped.
    """
    if order is None:
        order = topological_order(G)
    idx = [G.vertex(v) for v in order]
    if not is_topological(G, idx):
        raise NotTopological(str(list(order)))
    out = []
    pre = 0
    for v in idx:
        pre |= 1 << v
        for A in submasks(pre & ~(1 << v)):
            A |= 1 << v
            if not is_ancestral(G, A):
                continue
            mb = markov_blanket(G, v, A)
            rest = A & ~(mb | 1 << v)
            if rest:
                out.append(CiStatement(1 << v, rest, mb))
    return out
