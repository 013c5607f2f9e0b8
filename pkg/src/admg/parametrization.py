"""Binary parametrization of ADMG models by head-given-tail probabilities.

A parameter vector holds one value ``q_H(i_T) = P(X_H = 0 | X_T = i_T)`` per
*slot*: a head ``H`` together with an assignment ``i_T`` to its tail.  Joint
tables are recovered by the inclusion-exclusion (Moebius) sum

    p(x) = sum over C with zeros(x) <= C <= V of
           (-1)^|C - zeros(x)| * prod over H in [C] of q_H(x_T)

Probability tables are 1-d arrays of length ``2**n`` indexed by the integer
assignment ``x`` whose bit ``i`` is the value of vertex ``i``.  Tail contexts
are stored the same way: an ``int`` whose bits sit at the tail's vertex
positions.
"""

from fractions import Fraction
from typing import Mapping, NamedTuple

import numpy as np

from .errors import MissingSlot, NonPositiveTable, NotAncestral, TooLarge
from .graph import (
    Admg,
    ENUMERATION_BOUND,
    bits,
    check_size,
    is_ancestral,
    popcount,
    submasks,
)
from .heads import heads, partition_admg, tails

VALID_EPS = 1e-12
MOBIUS_BOUND = 14


class Slot(NamedTuple):
    head: int
    tail: int
    ctx: int

    def format(self, G: Admg) -> str:
        return f"{G.fmt(self.head)} | {context_string(G, self.tail, self.ctx)}"


def context_string(G: Admg, T: int, ctx: int) -> str:
    """Bitstring of ``ctx`` over ``T``, first character for the lowest vertex."""
    return "".join(str(ctx >> v & 1) for v in bits(T))


def contexts(T: int) -> list:
    """Assignments to ``T`` in ascending bitstring order."""
    pos = list(bits(T))
    k = len(pos)
    out = []
    for r in range(1 << k):
        ctx = 0
        for j, v in enumerate(pos):
            if r >> (k - 1 - j) & 1:
                ctx |= 1 << v
        out.append(ctx)
    return out


def table_order(n: int) -> list:
    """Full assignments in ascending bitstring order (vertex 0 first)."""
    return contexts((1 << n) - 1)


def assignment_string(n: int, x: int) -> str:
    return "".join(str(x >> i & 1) for i in range(n))


def param_index(G: Admg, bound=ENUMERATION_BOUND) -> list:
    """Slots in heads order, then tail contexts in ascending bitstring order."""
    check_size(G, bound)
    try:
        return G._memo["slots"]
    except KeyError:
        pass
    t = tails(G)
    out = [Slot(H, t[H], ctx) for H in heads(G) for ctx in contexts(t[H])]
    G._memo["slots"] = out
    return out


def dimension(G: Admg, bound=ENUMERATION_BOUND) -> int:
    check_size(G, bound)
    t = tails(G)
    return sum(1 << popcount(t[H]) for H in heads(G))


def _slot_positions(G):
    try:
        return G._memo["slotpos"]
    except KeyError:
        pos = G._memo["slotpos"] = {(s.head, s.ctx): i for i, s in enumerate(param_index(G))}
        return pos


def as_vector(G: Admg, q, exact=False) -> np.ndarray:
    """Parameter vector aligned with :func:`param_index`.

    ``q`` may be a mapping from :class:`Slot` (or ``(head, ctx)``) to value,
    or anything array-like with a trailing axis of length ``dimension(G)``.
    """
    slots = param_index(G)
    if isinstance(q, Mapping):
        vals = []
        for s in slots:
            if s in q:
                vals.append(q[s])
            elif (s.head, s.ctx) in q:
                vals.append(q[(s.head, s.ctx)])
            else:
                raise MissingSlot(s.format(G))
        arr = np.array(vals, dtype=object if exact else float)
    else:
        arr = np.asarray(q, dtype=object if exact else float)
        if arr.shape[-1:] != (len(slots),):
            raise MissingSlot(f"expected {len(slots)} parameters, got shape {arr.shape}")
    if exact:
        arr = np.vectorize(Fraction, otypes=[object])(arr)
    return arr


def as_mapping(G: Admg, qvec) -> dict:
    return {s: v for s, v in zip(param_index(G), list(qvec))}


def _ranks(xs, T):
    """Position of ``xs & T`` among :func:`contexts` of ``T``."""
    pos = list(bits(T))
    k = len(pos)
    r = np.zeros_like(xs)
    for j, v in enumerate(pos):
        r |= ((xs >> v) & 1) << (k - 1 - j)
    return r


def _compiled(G):
    """Per subset ``C``: the cells it contributes to, signs and slot columns."""
    try:
        return G._memo["mobius"]
    except KeyError:
        pass
    if G.n > MOBIUS_BOUND:
        raise TooLarge(f"Moebius map limited to {MOBIUS_BOUND} vertices")
    base = {}
    off = 0
    t = tails(G)
    for H in heads(G):
        base[H] = off
        off += 1 << popcount(t[H])
    full = G.full
    plan = []
    for C in range(1 << G.n):
        ys = np.fromiter(submasks(C), dtype=np.int64)
        xs = (full & ~C) | ys
        sign = np.where(np.fromiter((popcount(int(y)) & 1 for y in ys), dtype=np.int64, count=len(ys)),
                        -1, 1)
        cols = [base[ht.head] + _ranks(xs, ht.tail) for ht in partition_admg(G, C)]
        plan.append((xs, sign, cols))
    G._memo["mobius"] = plan
    return plan


def p_from_q(G: Admg, q, exact=False) -> np.ndarray:
    """Joint table from parameters; total for any real input.

    ``q`` may carry leading batch axes, in which case the table gains the
    same leading axes.  With ``exact=True`` values are ``Fraction`` objects.
    """
    qv = as_vector(G, q, exact)
    plan = _compiled(G)
    shape = qv.shape[:-1] + (1 << G.n,)
    p = np.zeros(shape, dtype=object if exact else float)
    if exact:
        p[...] = Fraction(0)
    for xs, sign, cols in plan:
        term = np.ones(qv.shape[:-1] + (len(xs),), dtype=p.dtype)
        for c in cols:
            term = term * qv[..., c]
        p[..., xs] += sign * term
    return p


def marginal_over_ancestral(G: Admg, q, A, iA):
    """``P(X_A = iA)`` summed directly over subsets of the ancestral set ``A``.

    ``iA`` is an assignment int (bits outside ``A`` are ignored) or a
    mapping from vertex names to 0/1.  Leading batch axes on ``q`` give an
    array of marginals.
    """
    A = G.mask(A)
    if not is_ancestral(G, A):
        raise NotAncestral(G.fmt(A))
    if isinstance(iA, Mapping):
        x = 0
        for v, val in iA.items():
            if val:
                x |= 1 << G.vertex(v)
    else:
        x = int(iA)
    x &= A
    qv = as_vector(G, q)
    pos = _slot_positions(G)
    zeros = A & ~x
    total = np.zeros(qv.shape[:-1])
    for extra in submasks(x):
        C = zeros | extra
        term = -1.0 if popcount(extra) & 1 else 1.0
        for ht in partition_admg(G, C):
            term = term * qv[..., pos[(ht.head, x & ht.tail)]]
        total = total + term
    return float(total) if total.ndim == 0 else total


def _marginals(p, keep):
    xs = np.arange(len(p))
    return np.bincount(xs & keep, weights=p, minlength=len(p))


def q_from_p(G: Admg, p, exact=False) -> dict:
    """Conditional probabilities ``P(X_H = 0 | X_T = ctx)`` for every slot."""
    if exact:
        p = [Fraction(v) for v in p]
        if any(v <= 0 for v in p):
            raise NonPositiveTable("table has non-positive cells")
        out = {}
        for s in param_index(G):
            num = sum(p[x] for x in range(len(p)) if x & s.head == 0 and x & s.tail == s.ctx)
            den = sum(p[x] for x in range(len(p)) if x & s.tail == s.ctx)
            out[s] = num / den
        return out
    p = np.asarray(p, dtype=float)
    if p.shape != (1 << G.n,):
        raise ValueError(f"table must have {1 << G.n} cells")
    if np.any(p <= 0):
        raise NonPositiveTable("table has non-positive cells")
    out = {}
    for s in param_index(G):
        joint = _marginals(p, s.head | s.tail)
        marg = _marginals(p, s.tail)
        out[s] = float(joint[s.ctx] / marg[s.ctx])
    return out


def validity(G: Admg, q, eps=VALID_EPS):
    """Classify ``q`` as ``"valid"``, ``"boundary"`` or ``"invalid"``.

    Returns ``(status, table)``; valid means every cell exceeds ``eps``,
    boundary means no cell is below ``-eps`` but some is within ``eps`` of 0.
    """
    p = p_from_q(G, q)
    lo = float(np.min(p))
    if lo > eps:
        return "valid", p
    if lo >= -eps:
        return "boundary", p
    return "invalid", p


def is_valid_q(G: Admg, q, eps=VALID_EPS) -> bool:
    return validity(G, q, eps)[0] == "valid"


def sample_valid_q(G: Admg, seed, low=0.1, high=0.9) -> dict:
    """Valid parameters drawn through a latent-variable DAG with ``G``'s margin."""
    return q_from_p(G, sample_model_table(G, seed, low, high))


def sample_model_table(G: Admg, seed, low=0.1, high=0.9) -> np.ndarray:
    """Strictly positive joint table satisfying ``G``'s global Markov property.

    Every bidirected edge becomes a latent common parent; conditional
    probabilities are drawn uniformly from ``[low, high]`` and the latents
    are summed out.
    """
    from .oracles import latent_projection_dag

    D = latent_projection_dag(G)
    m = D.n
    if m > 24:
        raise TooLarge(f"latent DAG with {m} vertices")
    rng = np.random.default_rng(seed)
    xs = np.arange(1 << m, dtype=np.int64)
    joint = np.ones(1 << m)
    for v in range(m):
        pa = list(bits(D.pa(v)))
        theta = rng.uniform(low, high, size=1 << len(pa))
        cfg = np.zeros_like(xs)
        for j, u in enumerate(pa):
            cfg |= ((xs >> u) & 1) << j
        one = theta[cfg]
        joint *= np.where((xs >> v) & 1, one, 1.0 - one)
    p = np.bincount(xs & G.full, weights=joint, minlength=1 << G.n)[: 1 << G.n]
    return p / p.sum()
