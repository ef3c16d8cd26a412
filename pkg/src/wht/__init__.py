"""Weak-homeomorphism toolkit for zero-dimensional sigma-Polish spaces.

Classify terms over the atoms 0, fin(n), w, 2^w, N^w, Q under topological
sum and product; infer topological property fingerprints; realize terms as
automaton-presented subsets of Baire space with exact deciders; construct
and verify explicit weak-homeomorphism certificates.
"""

from .algebra import (
    BaireSp,
    Cantor,
    Empty,
    Fin,
    Monomial,
    NormalForm,
    Omega,
    ParseError,
    Prod,
    Rationals,
    SpaceTerm,
    Sum,
    normalize,
    parse,
    parse_nf,
    render,
)
from .properties import (
    Cardinality,
    InvariantRecord,
    PropertyFingerprint,
    check_preservation,
    fingerprint,
    invariants,
    monomial_flag,
)
from .classifier import (
    ClassKind,
    WeakHomeoClass,
    canonical_term,
    classify,
    classify_by_tree,
    decompose,
    embeds_closed,
    prod_table,
    sum_table,
)

__all__ = [name for name in dir() if not name.startswith("_")]
