"""Heads, tails and the head partition of vertex sets in an ADMG."""

from dataclasses import dataclass

from .errors import DisjointHeads, EmptySet, NotAHead
from .graph import (
    Admg,
    ENUMERATION_BOUND,
    ancestors,
    all_subsets,
    barren,
    check_size,
    district_of_set,
    parents,
)
from .partition import FamilyOrder, Partitioner, SetFamily


@dataclass(frozen=True)
class HeadTail:
    head: int
    tail: int

    def format(self, G: Admg) -> str:
        return f"{G.fmt(self.head)} | {G.fmt(self.tail)}"


def _single_district(G, H):
    v = (H & -H).bit_length() - 1
    return H & ~district_of_set(G, 1 << v, ancestors(G, H)) == 0


def is_head(G: Admg, H) -> bool:
    """Barren, and inside one district of the subgraph on ``an(H)``."""
    H = G.mask(H)
    if not H:
        raise EmptySet("heads are non-empty")
    return barren(G, H) == H and _single_district(G, H)


def heads(G: Admg, bound=ENUMERATION_BOUND) -> list:
    """All heads, by ascending size then lexicographically on vertex indices."""
    try:
        return G._memo["heads"]
    except KeyError:
        pass
    check_size(G, bound)
    out = []
    for H in all_subsets(G, min_size=1):
        if barren(G, H) == H and _single_district(G, H):
            out.append(H)
    G._memo["heads"] = out
    return out


def _tail(G, H):
    D = district_of_set(G, H, ancestors(G, H))
    return (D & ~H) | parents(G, D)


def tail(G: Admg, H) -> int:
    H = G.mask(H)
    if not H or not is_head(G, H):
        raise NotAHead(G.fmt(H))
    return _tail(G, H)


def tails(G: Admg) -> dict:
    """``{head: tail}`` for every head, computed once per graph."""
    try:
        return G._memo["tails"]
    except KeyError:
        t = G._memo["tails"] = {H: _tail(G, H) for H in heads(G)}
        return t


def head_tails(G: Admg) -> list:
    t = tails(G)
    return [HeadTail(H, t[H]) for H in heads(G)]


def _require_heads(G, *Hs):
    hs = set(heads(G))
    for H in Hs:
        if H not in hs:
            raise NotAHead(G.fmt(H))


def _prec(G, H1, H2):
    return H1 != H2 and H1 & ~ancestors(G, H2) == 0


def _prec_star(G, H1, H2):
    if not _prec(G, H1, H2):
        return False
    U = H1 | H2
    return U & ~district_of_set(G, H1, ancestors(G, U)) == 0


def prec(G: Admg, H1, H2) -> bool:
    """``H1`` precedes ``H2`` when it lies among the ancestors of ``H2``."""
    H1, H2 = G.mask(H1), G.mask(H2)
    _require_heads(G, H1, H2)
    return _prec(G, H1, H2)


def prec_star(G: Admg, H1, H2) -> bool:
    """``prec`` restricted to heads sharing a district of ``an(H1 | H2)``."""
    H1, H2 = G.mask(H1), G.mask(H2)
    _require_heads(G, H1, H2)
    return _prec_star(G, H1, H2)


def head_family(G: Admg) -> SetFamily:
    return SetFamily(heads(G), G.full)


def head_order(G: Admg, star=False, check=False) -> FamilyOrder:
    anc = {H: ancestors(G, H) for H in heads(G)}
    if star:
        def rel(H1, H2):
            return _prec_star(G, H1, H2)
    else:
        def rel(H1, H2):
            return H1 != H2 and H1 & ~anc[H2] == 0
    return FamilyOrder(head_family(G), rel, check=check)


def partitioner(G: Admg, star=False) -> Partitioner:
    key = "partitioner*" if star else "partitioner"
    try:
        return G._memo[key]
    except KeyError:
        p = G._memo[key] = Partitioner(head_family(G), head_order(G, star))
        return p


def partition_heads(G: Admg, W, star=False) -> list:
    """The head partition of ``W`` as a list of head masks."""
    return partitioner(G, star)(G.mask(W))


def partition_admg(G: Admg, W, star=False) -> list:
    """The head partition of ``W``, each block paired with its tail."""
    t = tails(G)
    return [HeadTail(H, t[H]) for H in partition_heads(G, W, star)]


def head_dominator(G: Admg, H1, H2) -> int:
    """The barren part of ``H1 | H2``: a head dominating both intersecting heads."""
    H1, H2 = G.mask(H1), G.mask(H2)
    _require_heads(G, H1, H2)
    if not H1 & H2:
        raise DisjointHeads(f"{G.fmt(H1)} and {G.fmt(H2)} do not intersect")
    return barren(G, H1 | H2)


def has_ancestrally_closed_districts(G: Admg, W) -> bool:
    W = G.mask(W)
    return district_of_set(G, W, ancestors(G, W)) == W
