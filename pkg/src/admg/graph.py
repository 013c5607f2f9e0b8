"""Acyclic directed mixed graphs and their primitive queries.

Vertex sets are plain ``int`` bitmasks: bit ``i`` stands for the vertex at
position ``i`` of the graph's canonical vertex order.  Every public query also
accepts an iterable of vertex names in place of a mask, so

>>> G = Admg.build(["1", "2", "3", "4"], [("1", "2"), ("2", "4")],
...                [("2", "3"), ("3", "4")])
>>> G.names(ancestors(G, ["4"]))
['1', '2', '4']
"""

from collections.abc import Iterable
from itertools import combinations

from .errors import (
    DirectedCycle,
    DuplicateEdge,
    DuplicateVertex,
    SelfLoop,
    TooLarge,
    UnknownVertex,
)

ENUMERATION_BOUND = 20


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int):
    """Yield the positions of the set bits of ``x`` in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def submasks(x: int):
    """Yield every submask of ``x`` in ascending numeric order."""
    s = 0
    while True:
        yield s
        if s == x:
            return
        s = (s - x) & x


class Admg:
    """An immutable ADMG over a fixed, ordered vertex list.

    ``directed`` holds index pairs ``(tail, head)`` and ``bidirected`` holds
    index pairs ``(i, j)`` with ``i < j``.  A pair may carry both a directed
    and a bidirected edge.  Use :meth:`Admg.build` to construct from names.
    """

    __slots__ = ("_names", "_index", "directed", "bidirected", "_pa", "_ch",
                 "_sib", "_an", "_de", "_memo")

    def __init__(self, names, directed=(), bidirected=()):
        names = tuple(names)
        index = {}
        for i, name in enumerate(names):
            if not isinstance(name, str) or not name or any(c.isspace() for c in name):
                raise ValueError(f"invalid vertex name {name!r}")
            if name in index:
                raise DuplicateVertex(name)
            index[name] = i
        n = len(names)

        pa = [0] * n
        ch = [0] * n
        sib = [0] * n
        dset = set()
        for a, b in directed:
            if not (0 <= a < n and 0 <= b < n):
                raise UnknownVertex(f"edge ({a}, {b})")
            if a == b:
                raise SelfLoop(names[a])
            if (a, b) in dset:
                raise DuplicateEdge(f"{names[a]} -> {names[b]}")
            dset.add((a, b))
            pa[b] |= 1 << a
            ch[a] |= 1 << b
        bset = set()
        for a, b in bidirected:
            if not (0 <= a < n and 0 <= b < n):
                raise UnknownVertex(f"edge ({a}, {b})")
            if a == b:
                raise SelfLoop(names[a])
            key = (min(a, b), max(a, b))
            if key in bset:
                raise DuplicateEdge(f"{names[a]} <-> {names[b]}")
            bset.add(key)
            sib[a] |= 1 << b
            sib[b] |= 1 << a

        self._names = names
        self._index = index
        self.directed = frozenset(dset)
        self.bidirected = frozenset(bset)
        self._pa = tuple(pa)
        self._ch = tuple(ch)
        self._sib = tuple(sib)
        self._memo = {}

        order = _kahn(n, pa, ch)
        if order is None:
            raise DirectedCycle(_find_cycle(n, ch, names))
        an = [0] * n
        for v in order:
            an[v] = 1 << v
            for p in bits(pa[v]):
                an[v] |= an[p]
        de = [0] * n
        for v in reversed(order):
            de[v] = 1 << v
            for c in bits(ch[v]):
                de[v] |= de[c]
        self._an = tuple(an)
        self._de = tuple(de)

    @classmethod
    def build(cls, names, directed=(), bidirected=()):
        """Construct from vertex names and edges given as name pairs."""
        names = [str(v) for v in names]
        seen = set()
        for v in names:
            if v in seen:
                raise DuplicateVertex(v)
            seen.add(v)
        index = {v: i for i, v in enumerate(names)}

        def lookup(v):
            try:
                return index[str(v)]
            except KeyError:
                raise UnknownVertex(str(v)) from None

        return cls(names,
                   [(lookup(a), lookup(b)) for a, b in directed],
                   [(lookup(a), lookup(b)) for a, b in bidirected])

    # -- identity -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._names)

    @property
    def vertices(self) -> tuple:
        return self._names

    @property
    def full(self) -> int:
        return (1 << len(self._names)) - 1

    def __len__(self):
        return len(self._names)

    def __eq__(self, other):
        if not isinstance(other, Admg):
            return NotImplemented
        return (self._names == other._names and self.directed == other.directed
                and self.bidirected == other.bidirected)

    def __hash__(self):
        return hash((self._names, self.directed, self.bidirected))

    def __repr__(self):
        parts = [f"{self._names[a]}->{self._names[b]}" for a, b in sorted(self.directed)]
        parts += [f"{self._names[a]}<->{self._names[b]}" for a, b in sorted(self.bidirected)]
        return f"Admg([{', '.join(self._names)}]; {', '.join(parts)})"

    # -- vertex/set conversion -------------------------------------------

    def index(self, v) -> int:
        try:
            return self._index[str(v)]
        except KeyError:
            raise UnknownVertex(str(v)) from None

    def mask(self, A) -> int:
        """Bitmask for ``A``: a mask, a single name, or an iterable of vertices.

        Inside an iterable, strings are names and ints are indices.
        """
        if isinstance(A, int):
            if A < 0 or A >> self.n:
                raise UnknownVertex(f"mask {A:#x} outside the vertex set")
            return A
        if isinstance(A, str):
            return 1 << self.index(A)
        m = 0
        for v in A:
            m |= 1 << self.vertex(v)
        return m

    def names(self, A) -> list:
        return [self._names[i] for i in bits(self.mask(A))]

    def fmt(self, A) -> str:
        return "{" + ",".join(self.names(A)) + "}"

    def vertex(self, v) -> int:
        """Index of a single vertex given by name or index."""
        if isinstance(v, int):
            if not 0 <= v < self.n:
                raise UnknownVertex(str(v))
            return v
        return self.index(v)

    # -- per-vertex neighbourhoods ---------------------------------------

    def pa(self, v: int) -> int:
        return self._pa[v]

    def ch(self, v: int) -> int:
        return self._ch[v]

    def sib(self, v: int) -> int:
        return self._sib[v]

    def an(self, v: int) -> int:
        return self._an[v]

    def de(self, v: int) -> int:
        return self._de[v]


def _kahn(n, pa, ch, prefer_high=False):
    indeg = [popcount(pa[v]) for v in range(n)]
    ready = [v for v in range(n) if indeg[v] == 0]
    order = []
    while ready:
        v = max(ready) if prefer_high else min(ready)
        ready.remove(v)
        order.append(v)
        for c in bits(ch[v]):
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
    return order if len(order) == n else None


def _find_cycle(n, ch, names):
    color = [0] * n
    stack = []

    def visit(v):
        color[v] = 1
        stack.append(v)
        for c in bits(ch[v]):
            if color[c] == 1:
                return stack[stack.index(c):] + [c]
            if color[c] == 0:
                found = visit(c)
                if found:
                    return found
        stack.pop()
        color[v] = 2
        return None

    for v in range(n):
        if color[v] == 0:
            cyc = visit(v)
            if cyc:
                return [names[i] for i in cyc]
    return []


def build_admg(names, directed=(), bidirected=()) -> Admg:
    return Admg.build(names, directed, bidirected)


def induced_subgraph(G: Admg, A) -> Admg:
    """The subgraph on ``A`` keeping every edge with both endpoints in ``A``."""
    A = G.mask(A)
    keep = list(bits(A))
    pos = {v: i for i, v in enumerate(keep)}
    directed = [(pos[a], pos[b]) for a, b in G.directed if a in pos and b in pos]
    bidirected = [(pos[a], pos[b]) for a, b in G.bidirected if a in pos and b in pos]
    return Admg([G.vertices[v] for v in keep], directed, bidirected)


def parents(G: Admg, A) -> int:
    out = 0
    for v in bits(G.mask(A)):
        out |= G.pa(v)
    return out


def children(G: Admg, A) -> int:
    out = 0
    for v in bits(G.mask(A)):
        out |= G.ch(v)
    return out


def ancestors(G: Admg, A) -> int:
    out = 0
    for v in bits(G.mask(A)):
        out |= G.an(v)
    return out


def descendants(G: Admg, A) -> int:
    out = 0
    for v in bits(G.mask(A)):
        out |= G.de(v)
    return out


def district(G: Admg, v, within=None) -> int:
    """Bidirected-connected component of ``v`` inside ``G_within``.

    ``within`` defaults to the whole vertex set; ``v`` must belong to it.
    """
    v = G.vertex(v)
    W = G.full if within is None else G.mask(within)
    if not W >> v & 1:
        raise UnknownVertex(f"{G.vertices[v]} not in the induced vertex set")
    comp = 1 << v
    frontier = comp
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= G.sib(u)
        nxt &= W & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def districts(G: Admg, within=None) -> list:
    """All districts of ``G_within``, ordered by their lowest vertex."""
    W = G.full if within is None else G.mask(within)
    out = []
    rest = W
    while rest:
        v = (rest & -rest).bit_length() - 1
        d = district(G, v, W)
        out.append(d)
        rest &= ~d
    return out


def district_of_set(G: Admg, S, within) -> int:
    """Union of the districts of ``G_within`` meeting ``S``."""
    S = G.mask(S)
    W = G.mask(within)
    out = 0
    for v in bits(S):
        if not out >> v & 1:
            out |= district(G, v, W)
    return out


def barren(G: Admg, B) -> int:
    B = G.mask(B)
    out = 0
    for v in bits(B):
        if G.de(v) & B == 1 << v:
            out |= 1 << v
    return out


def is_ancestral(G: Admg, A) -> bool:
    A = G.mask(A)
    return ancestors(G, A) == A


def check_size(G: Admg, bound=ENUMERATION_BOUND):
    if G.n > bound:
        raise TooLarge(f"{G.n} vertices exceeds the enumeration bound {bound}")


def ancestral_sets(G: Admg, bound=ENUMERATION_BOUND):
    """Yield every ancestral subset of ``G`` once, in ascending mask order."""
    check_size(G, bound)
    for A in range(1 << G.n):
        if ancestors(G, A) == A:
            yield A


def topological_order(G: Admg, prefer_high=False) -> list:
    """A topological order of vertex indices.

    Ties go to the lowest canonical index, or to the highest when
    ``prefer_high`` is set; the two coincide iff the order is unique.
    """
    return _kahn(G.n, list(G._pa), list(G._ch), prefer_high)


def topological_orders(G: Admg, limit=None):
    """Yield all topological orders (lexicographically), up to ``limit``."""
    n = G.n
    count = 0
    order = []
    placed = 0

    def rec():
        nonlocal placed, count
        if limit is not None and count >= limit:
            return
        if len(order) == n:
            count += 1
            yield list(order)
            return
        for v in range(n):
            if not placed >> v & 1 and G.pa(v) & ~placed == 0:
                order.append(v)
                placed |= 1 << v
                yield from rec()
                placed &= ~(1 << v)
                order.pop()
                if limit is not None and count >= limit:
                    return

    yield from rec()


def is_topological(G: Admg, order) -> bool:
    if sorted(order) != list(range(G.n)):
        return False
    seen = 0
    for v in order:
        if G.pa(v) & ~seen:
            return False
        seen |= 1 << v
    return True


def all_subsets(G: Admg, within=None, min_size=0) -> Iterable:
    """Subsets of ``within`` by ascending size, then lexicographic on indices."""
    W = G.full if within is None else G.mask(within)
    pos = list(bits(W))
    for k in range(min_size, len(pos) + 1):
        for combo in combinations(pos, k):
            m = 0
            for p in combo:
                m |= 1 << p
            yield m
