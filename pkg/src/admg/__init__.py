# ruff: noqa: F401
"""Markov models on acyclic directed mixed graphs with binary variables.

Vertex sets are ``int`` bitmasks over a graph's canonical vertex order; most
functions also accept vertex names or iterables of names.  The functions
``heads`` and ``partition`` share their module's name, so import them from
``admg.heads`` and ``admg.partition``.
"""

from .errors import *  # noqa: F403
from .graph import (
    Admg,
    ancestors,
    ancestral_sets,
    barren,
    build_admg,
    children,
    descendants,
    district,
    districts,
    induced_subgraph,
    is_ancestral,
    parents,
    topological_order,
)
from .heads import (
    HeadTail,
    head_dominator,
    head_tails,
    is_head,
    partition_admg,
    prec,
    prec_star,
    tail,
    tails,
)
from .io import parse_graph, parse_q, parse_table, serialize_graph, serialize_q, serialize_table
from .oracles import (
    VerificationReport,
    brute_force_m_separated,
    equivalence_report,
    latent_projection_dag,
    satisfies_ci,
    satisfies_factorization,
    satisfies_gmp,
    satisfies_ordered_local,
)
from .parametrization import (
    Slot,
    dimension,
    is_valid_q,
    marginal_over_ancestral,
    p_from_q,
    param_index,
    q_from_p,
    sample_valid_q,
    validity,
)
from .partition import FamilyOrder, SetFamily, is_partition_suitable
from .separation import (
    CiStatement,
    implied_independencies,
    is_m_separated,
    markov_blanket,
    ordered_local_statements,
)

__version__ = "0.1.0"
