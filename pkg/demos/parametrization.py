"""
The binary parametrization
==========================

Maps head-given-tail probabilities to a joint table and back, and shows
what happens outside the valid region.
"""

import numpy as np

from admg import Admg, dimension, p_from_q, param_index, q_from_p, sample_valid_q, validity
from admg.parametrization import as_vector

G = Admg.build("1234", [("1", "2"), ("2", "4")], [("2", "3"), ("3", "4")])
print("dimension", dimension(G), "of a saturated", 2 ** G.n - 1)

q = sample_valid_q(G, seed=3)
for s in param_index(G):
    print(f"  q[{s.format(G)}] = {q[s]:.4f}")

p = p_from_q(G, q)
print("table sums to", p.sum(), "min cell", p.min().round(5))

back = as_vector(G, q_from_p(G, p))
print("round trip error", np.abs(back - as_vector(G, q)).max())

# the map is defined for any real vector, but only some give probabilities
pair = Admg.build("12", [], [("1", "2")])
for vec in ([0.5, 0.5, 0.4], [0.9, 0.9, 0.5]):
    status, table = validity(pair, vec)
    print(vec, "->", status, table.round(6))

# arbitrary real vectors still sum to one
rng = np.random.default_rng(1)
Q = rng.normal(size=(5, dimension(G)))
print("sums for random q:", p_from_q(G, Q).sum(axis=1).round(12))
