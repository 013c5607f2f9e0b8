"""Partitioning functions induced by a partial order on a set family.

Given a family of non-empty subsets of a ground set (containing every
singleton) and a strict partial order ``prec`` on it, ``phi(W)`` collects the
maximal members inside ``W`` and ``partition(W)`` peels those off repeatedly
until nothing is left.  Sets are ``int`` bitmasks throughout.

Nothing here knows about graphs; :mod:`admg.heads` instantiates it with heads
and ancestral containment.
"""

from itertools import product

from .errors import NotPartitionSuitable, NotStrictOrder, TooLarge
from .graph import bits, popcount

FAMILY_BOUND = 4096


class SetFamily:
    """An ordered collection of distinct non-empty masks over ``ground``."""

    def __init__(self, members, ground):
        members = list(dict.fromkeys(members))
        if any(m == 0 for m in members):
            raise ValueError("set family members must be non-empty")
        if any(m & ~ground for m in members):
            raise ValueError("set family member outside the ground set")
        present = set(members)
        for v in bits(ground):
            if 1 << v not in present:
                raise ValueError(f"singleton {{{v}}} missing from the family")
        self.members = tuple(members)
        self.ground = ground

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, H):
        return H in set(self.members)

    def within(self, W):
        return [H for H in self.members if H & ~W == 0]


class FamilyOrder:
    """A strict order on a :class:`SetFamily` given as a predicate.

    The predicate is checked exhaustively for irreflexivity, asymmetry and
    transitivity when ``check=True`` (families up to ``FAMILY_BOUND``).
    """

    def __init__(self, family, prec, check=True):
        self.family = family
        self.prec = prec
        if check:
            self.check()

    def __call__(self, H1, H2):
        return H1 != H2 and self.prec(H1, H2)

    def check(self):
        ms = self.family.members
        if len(ms) > FAMILY_BOUND:
            raise TooLarge(f"family of {len(ms)} members")
        rel = {(a, b) for a, b in product(ms, ms) if a != b and self.prec(a, b)}
        for H in ms:
            if self.prec(H, H):
                raise NotStrictOrder(f"reflexive at {H:#b}")
        for a, b in rel:
            if (b, a) in rel:
                raise NotStrictOrder(f"not asymmetric on {a:#b}, {b:#b}")
        succ = {}
        for a, b in rel:
            succ.setdefault(a, set()).add(b)
        for a, b in rel:
            for c in succ.get(b, ()):
                if c != a and (a, c) not in rel:
                    raise NotStrictOrder(f"not transitive on {a:#b}, {b:#b}, {c:#b}")


def is_partition_suitable(family, order) -> bool:
    """Every intersecting pair must be dominated by a member inside its union."""
    ms = family.members
    if len(ms) > FAMILY_BOUND:
        raise TooLarge(f"family of {len(ms)} members")
    for i, H1 in enumerate(ms):
        for H2 in ms[i + 1:]:
            if not H1 & H2:
                continue
            U = H1 | H2
            if not any(H & ~U == 0
                       and (H == H1 or order(H1, H))
                       and (H == H2 or order(H2, H))
                       for H in ms):
                return False
    return True


def _sort_blocks(blocks):
    return sorted(blocks, key=lambda b: (-popcount(b), b))


def phi(family, order, W) -> list:
    """Members of the family inside ``W`` that are maximal under ``order``."""
    inside = family.within(W)
    out = [H for H in inside if not any(order(H, K) for K in inside if K != H)]
    return _sort_blocks(out)


def psi(family, order, W) -> int:
    covered = 0
    for H in phi(family, order, W):
        covered |= H
    return W & ~covered


def partition(family, order, W) -> list:
    """Recursive partition of ``W``; blocks by descending size then mask."""
    blocks = []
    while W:
        top = phi(family, order, W)
        covered = 0
        for H in top:
            if covered & H:
                raise NotPartitionSuitable(
                    f"maximal members overlap inside {W:#b}")
            covered |= H
        if not covered:
            raise NotPartitionSuitable(f"no maximal member inside {W:#b}")
        blocks.extend(top)
        W &= ~covered
    return _sort_blocks(blocks)


class Partitioner:
    """Caches ``partition`` results for one family/order pair."""

    def __init__(self, family, order):
        self.family = family
        self.order = order
        self._cache = {}

    def phi(self, W):
        return phi(self.family, self.order, W)

    def psi(self, W):
        return psi(self.family, self.order, W)

    def __call__(self, W):
        try:
            return self._cache[W]
        except KeyError:
            blocks = self._cache[W] = partition(self.family, self.order, W)
            return blocks
