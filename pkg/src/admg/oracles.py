"""Brute-force reference checks used to verify the fast code paths.

These functions favour obviousness over speed: m-separation by enumerating
every path, conditional independence by comparing marginal tables cell by
cell, and the factorization by multiplying head-given-tail conditionals
directly.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveTable, TooLarge
from .graph import (
    Admg,
    ancestors,
    ancestral_sets,
    bits,
    topological_order,
)
from .heads import partition_admg
from .parametrization import p_from_q, q_from_p
from .separation import CiStatement, implied_independencies, ordered_local_statements

PATH_BOUND = 8
GMP_BOUND = 6
FLOAT_TOL = 1e-7


def _edges_at(G, v):
    """(neighbour, arrowhead at v, arrowhead at neighbour) for each edge at v."""
    out = []
    for w in bits(G.ch(v)):
        out.append((w, False, True))
    for w in bits(G.pa(v)):
        out.append((w, True, False))
    for w in bits(G.sib(v)):
        out.append((w, True, True))
    return out


def paths(G: Admg, a, b):
    """Yield every path from ``a`` to ``b`` as a list of edge triples
    ``(u, w, (arrow at u, arrow at w))``.  Parallel edges give distinct paths.
    """
    a, b = G.vertex(a), G.vertex(b)
    if G.n > PATH_BOUND:
        raise TooLarge(f"path enumeration limited to {PATH_BOUND} vertices")

    def rec(v, visited, acc):
        if v == b:
            yield list(acc)
            return
        for w, at_v, at_w in _edges_at(G, v):
            if visited >> w & 1:
                continue
            acc.append((v, w, (at_v, at_w)))
            yield from rec(w, visited | 1 << w, acc)
            acc.pop()

    yield from rec(a, 1 << a, [])


def is_blocked(G: Admg, path, C) -> bool:
    anC = ancestors(G, C)
    for (_, v, (_, into_v)), (_, _, (out_v, _)) in zip(path, path[1:]):
        collider = into_v and out_v
        if collider and not anC >> v & 1:
            return True
        if not collider and C >> v & 1:
            return True
    return False


def brute_force_m_separated(G: Admg, a, b, C=0) -> bool:
    a, b, C = G.vertex(a), G.vertex(b), G.mask(C)
    if a == b or C >> a & 1 or C >> b & 1:
        raise ValueError("need distinct endpoints outside the conditioning set")
    return all(is_blocked(G, pth, C) for pth in paths(G, a, b))


# -- conditional independence on tables -----------------------------------

def _marg(p, keep):
    return np.bincount(np.arange(len(p)) & keep, weights=p, minlength=len(p))


def ci_violation(p, s: CiStatement) -> float:
    """``max |P(a,b,c) - P(a,c) P(b,c) / P(c)|`` over all cells."""
    p = np.asarray(p, dtype=float)
    xs = np.arange(len(p))
    A, B, C = s.left, s.right, s.given
    abc = _marg(p, A | B | C)[xs & (A | B | C)]
    ac = _marg(p, A | C)[xs & (A | C)]
    bc = _marg(p, B | C)[xs & (B | C)]
    c = _marg(p, C)[xs & C]
    ok = c > 0
    dev = np.abs(abc[ok] - ac[ok] * bc[ok] / c[ok])
    return float(dev.max()) if dev.size else 0.0


def satisfies_ci(p, s: CiStatement, tol=FLOAT_TOL) -> bool:
    return ci_violation(p, s) <= tol


def _worst(p, statements):
    worst, witnesses = 0.0, []
    for s in statements:
        v = ci_violation(p, s)
        worst = max(worst, v)
        if v > 0:
            witnesses.append((v, s))
    return worst, witnesses


def _check_table(G, p):
    p = np.asarray(p, dtype=float)
    if p.shape != (1 << G.n,):
        raise ValueError(f"table must have {1 << G.n} cells")
    return p


def gmp_violation(G: Admg, p, bound=GMP_BOUND):
    if G.n > bound:
        raise TooLarge(f"global Markov check limited to {bound} vertices")
    return _worst(_check_table(G, p), implied_independencies(G))


def satisfies_gmp(G: Admg, p, tol=FLOAT_TOL, bound=GMP_BOUND) -> bool:
    return gmp_violation(G, p, bound)[0] <= tol


def ordered_local_violation(G: Admg, p, order=None):
    return _worst(_check_table(G, p), ordered_local_statements(G, order))


def satisfies_ordered_local(G: Admg, p, order=None, tol=FLOAT_TOL) -> bool:
    return ordered_local_violation(G, p, order)[0] <= tol


def factorization_violation(G: Admg, p, bound=GMP_BOUND):
    """Worst gap between ``P(X_A)`` and the product of head-given-tail terms."""
    p = _check_table(G, p)
    if G.n > bound:
        raise TooLarge(f"factorization check limited to {bound} vertices")
    if np.any(p <= 0):
        raise NonPositiveTable("factorization check needs a positive table")
    xs = np.arange(len(p))
    worst, witnesses = 0.0, []
    for A in ancestral_sets(G):
        lhs = _marg(p, A)[xs & A]
        rhs = np.ones(len(p))
        for ht in partition_admg(G, A):
            HT = ht.head | ht.tail
            rhs = rhs * (_marg(p, HT)[xs & HT] / _marg(p, ht.tail)[xs & ht.tail])
        gap = float(np.abs(lhs - rhs).max())
        worst = max(worst, gap)
        if gap > 0:
            witnesses.append((gap, A))
    return worst, witnesses


def satisfies_factorization(G: Admg, p, tol=FLOAT_TOL) -> bool:
    return factorization_violation(G, p)[0] <= tol


def roundtrip_violation(G: Admg, p) -> float:
    p = _check_table(G, p)
    return float(np.abs(p_from_q(G, q_from_p(G, p)) - p).max())


@dataclass
class VerificationReport:
    gmp_holds: bool
    factorization_holds: bool
    ordered_local_holds: dict
    parametrization_roundtrip_holds: bool
    worst_violation: float
    witnesses: list = field(default_factory=list)

    @property
    def verdicts(self) -> list:
        return [self.gmp_holds, self.factorization_holds,
                *self.ordered_local_holds.values(),
                self.parametrization_roundtrip_holds]

    @property
    def consistent(self) -> bool:
        return len(set(self.verdicts)) == 1

    @property
    def holds(self) -> bool:
        return all(self.verdicts)


def default_orders(G: Admg) -> list:
    """The low-tie and high-tie topological orders (one if they coincide)."""
    lo = topological_order(G)
    hi = topological_order(G, prefer_high=True)
    return [tuple(lo)] if lo == hi else [tuple(lo), tuple(hi)]


def equivalence_report(G: Admg, p, tol=FLOAT_TOL, orders=None) -> VerificationReport:
    """Run every characterization of model membership on ``p``."""
    p = _check_table(G, p)
    if np.any(p <= 0):
        raise NonPositiveTable("equivalence report needs a positive table")
    gmp, gw = gmp_violation(G, p)
    fac, fw = factorization_violation(G, p)
    local = {}
    worst = max(gmp, fac)
    witnesses = [("gmp", s.format(G), v) for v, s in gw if v > tol]
    witnesses += [("factorization", G.fmt(A), v) for v, A in fw if v > tol]
    for order in orders or default_orders(G):
        key = tuple(G.vertex(v) for v in order)
        lv, lw = ordered_local_violation(G, p, key)
        local[key] = lv <= tol
        worst = max(worst, lv)
        witnesses += [("ordered-local", s.format(G), v) for v, s in lw if v > tol]
    rt = roundtrip_violation(G, p)
    worst = max(worst, rt)
    if rt > tol:
        witnesses.append(("roundtrip", "p_from_q(q_from_p(p))", rt))
    return VerificationReport(gmp <= tol, fac <= tol, local, rt <= tol, worst, witnesses)


# -- latent DAG and random graphs ------------------------------------------

def latent_projection_dag(G: Admg) -> Admg:
    """DAG replacing each bidirected edge by a fresh latent common parent.

    Observed vertices keep their indices; latents are appended after them in
    sorted bidirected-edge order and named ``_u<k>`` (underscores are added
    if that clashes with an existing name).
    """
    names = list(G.vertices)
    taken = set(names)
    directed = sorted(G.directed)
    for k, (a, b) in enumerate(sorted(G.bidirected)):
        name = f"_u{k}"
        while name in taken:
            name = "_" + name
        taken.add(name)
        u = len(names)
        names.append(name)
        directed += [(u, a), (u, b)]
    return Admg(names, directed, ())


def random_admg(n, rng, p_directed=0.4, p_bidirected=0.4) -> Admg:
    """A random ADMG on vertices ``"0".."n-1"`` with a random causal order."""
    perm = rng.permutation(n)
    directed, bidirected = [], []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = int(perm[i]), int(perm[j])
            if rng.random() < p_directed:
                directed.append((a, b))
            if rng.random() < p_bidirected:
                bidirected.append((a, b))
    return Admg([str(i) for i in range(n)], directed, bidirected)
