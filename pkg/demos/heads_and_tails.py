"""
Heads, tails and the head partition
===================================

Builds the four-vertex graph 1 -> 2 -> 4, 2 <-> 3 <-> 4 and walks through
the objects the factorization is built from.
"""

from admg import Admg, ancestors, head_tails, partition_admg, prec
from admg.heads import heads

G = Admg.build("1234", [("1", "2"), ("2", "4")], [("2", "3"), ("3", "4")])

# every head with its tail and ancestors
for ht in head_tails(G):
    print(f"{ht.format(G):18s} an = {G.fmt(ancestors(G, ht.head))}")

# heads are ordered by ancestry
H = heads(G)
print()
for a in H:
    above = [G.fmt(b) for b in H if prec(G, a, b)]
    print(G.fmt(a), "precedes", ", ".join(above) or "nothing")

# the partition of a set into heads, maximal heads first
print()
for W in ["2 3 4", "1 2 3 4", "1 3"]:
    blocks = partition_admg(G, W.split())
    print(f"[{{{W.replace(' ', ',')}}}] =", "  ".join(b.format(G) for b in blocks))
