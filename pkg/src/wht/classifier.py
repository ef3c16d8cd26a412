"""Weak-homeomorphism classes and the two classification algorithms.

Every term falls into one of 11 classes: the empty space, the finite
discrete spaces, and the nine infinite classes

    w, 2^w, N^w, Q, Q+2^w, Q*2^w, Q+N^w, (Q*2^w)+N^w, Q*N^w.

Internally a class is a reduced antichain of "presence bits" over a small
poset; topological sum becomes the join (union followed by absorption)
and product is the table obtained by classifying products of canonical
representatives.  `classify` folds monomial buckets through that lattice;
`classify_by_tree` re-derives the answer by walking the case analysis on
property fingerprints, and the two must always agree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .algebra import Monomial, NormalForm, SpaceTerm, nf_prod, parse, normalize
from .properties import MONOMIAL_FLAGS, fingerprint, monomial_flag

__all__ = [
    "ClassKind",
    "WeakHomeoClass",
    "ClassBits",
    "classify",
    "classify_by_tree",
    "sum_table",
    "prod_table",
    "canonical_term",
    "embeds_closed",
    "decompose",
    "InvalidPredicate",
    "ALL_CLASS_NAMES",
    "INFINITE_CLASSES",
]


class ClassKind(enum.Enum):
    EMPTY = "0"
    FINITE = "fin(n)"
    OMEGA = "w"
    CANTOR = "2^w"
    BAIRE = "N^w"
    Q = "Q"
    Q_PLUS_CANTOR = "Q+2^w"
    Q_TIMES_CANTOR = "Q*2^w"
    Q_PLUS_BAIRE = "Q+N^w"
    QC_PLUS_BAIRE = "(Q*2^w)+N^w"
    Q_TIMES_BAIRE = "Q*N^w"


@dataclass(frozen=True)
class WeakHomeoClass:
    kind: ClassKind
    n: int = 0  # exact cardinality, FINITE only

    def __post_init__(self) -> None:
        if (self.kind is ClassKind.FINITE) != (self.n > 0):
            raise ValueError("size is carried by finite classes exactly")

    @property
    def name(self) -> str:
        if self.kind is ClassKind.FINITE:
            return f"fin({self.n})"
        return self.kind.value

    def __str__(self) -> str:
        return self.name


def _cls(kind: ClassKind, n: int = 0) -> WeakHomeoClass:
    return WeakHomeoClass(kind, n)


EMPTY_CLASS = _cls(ClassKind.EMPTY)

INFINITE_CLASSES = (
    ClassKind.OMEGA,
    ClassKind.CANTOR,
    ClassKind.BAIRE,
    ClassKind.Q,
    ClassKind.Q_PLUS_CANTOR,
    ClassKind.Q_TIMES_CANTOR,
    ClassKind.Q_PLUS_BAIRE,
    ClassKind.QC_PLUS_BAIRE,
    ClassKind.Q_TIMES_BAIRE,
)

ALL_CLASS_NAMES = ("0", "fin(n)") + tuple(k.value for k in INFINITE_CLASSES)


# ---------------------------------------------------------------------------
# Presence bits.
#
# f = nonempty finite, d = countable-discrete (w), c = uncountable-compact
# (2^w), n = Baire type (N^w), q = rational type (Q), qc = Q*2^w type,
# qn = Q*N^w type.  The covering relations below encode which summands a
# bigger building block absorbs; each is certified by one of the reduction
# steps in the classification proof (e.g. c below n: an uncountable compact
# summand dissolves into a Baire summand, and q,c,n join to q,n: a Cantor
# summand next to Q and N^w dissolves entirely).

F, D, C, N, Q, QC, QN = "f", "d", "c", "n", "q", "qc", "qn"

_COVERS = ((F, D), (D, C), (C, N), (D, Q), (Q, QC), (C, QC), (QC, QN), (N, QN), (Q, QN))


def _transitive_le() -> frozenset[tuple[str, str]]:
    le = {(a, a) for a in (F, D, C, N, Q, QC, QN)}
    le.update(_COVERS)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(le):
            for (b2, c) in list(le):
                if b == b2 and (a, c) not in le:
                    le.add((a, c))
                    changed = True
    return frozenset(le)


_LE = _transitive_le()


def _strictly_below(a: str, b: str) -> bool:
    return a != b and (a, b) in _LE


ClassBits = frozenset


def bits_join(*sets: ClassBits) -> ClassBits:
    """Union, then drop every bit strictly below another present bit."""
    u = set().union(*sets)
    return frozenset(a for a in u if not any(_strictly_below(a, b) for b in u))


_BITS_TO_KIND = {
    frozenset(): ClassKind.EMPTY,
    frozenset({F}): ClassKind.FINITE,
    frozenset({D}): ClassKind.OMEGA,
    frozenset({C}): ClassKind.CANTOR,
    frozenset({N}): ClassKind.BAIRE,
    frozenset({Q}): ClassKind.Q,
    frozenset({Q, C}): ClassKind.Q_PLUS_CANTOR,
    frozenset({QC}): ClassKind.Q_TIMES_CANTOR,
    frozenset({Q, N}): ClassKind.Q_PLUS_BAIRE,
    frozenset({QC, N}): ClassKind.QC_PLUS_BAIRE,
    frozenset({QN}): ClassKind.Q_TIMES_BAIRE,
}
_KIND_TO_BITS = {v: k for k, v in _BITS_TO_KIND.items()}


def class_to_bits(c: WeakHomeoClass) -> ClassBits:
    return _KIND_TO_BITS[c.kind]


def _bits_to_class(bits: ClassBits, fin_size: int) -> WeakHomeoClass:
    kind = _BITS_TO_KIND[bits]
    if kind is ClassKind.FINITE:
        return _cls(kind, fin_size)
    return _cls(kind)


# ---------------------------------------------------------------------------
# Monomial buckets


def monomial_bucket(m: Monomial) -> str:
    """The presence bit of a single monomial, by its atom flags."""
    if m.is_pure_fin:
        return F
    if not m.has_q:
        if not m.has_cantor and not m.has_baire:
            return D
        return N if m.has_baire else C
    if not m.has_cantor and not m.has_baire:
        return Q
    return QN if m.has_baire else QC


def classify(nf: NormalForm) -> WeakHomeoClass:
    """Class of a normal form by the bit-lattice fold."""
    bits: list[str] = []
    fin_size = 0
    for m in nf.monomials:
        b = monomial_bucket(m)
        bits.append(b)
        if b == F:
            fin_size += m.fin
    joined = bits_join(frozenset(bits)) if bits else frozenset()
    if joined == frozenset({F}):
        return _cls(ClassKind.FINITE, fin_size)
    return _bits_to_class(joined, 0)


def classify_term(term: SpaceTerm) -> WeakHomeoClass:
    return classify(normalize(term))


# ---------------------------------------------------------------------------
# Decision tree
#
# Walks the classification case split on fingerprints.  Containment of a
# closed copy of Q*2^w (resp. Q*N^w) is decided as nonemptiness of the
# kernel left over after splitting off the locally-countable/locally-Polish
# (resp. locally-sigma-compact/locally-Polish) parts; monomials are
# homogeneous, so "locally P" collapses to the monomial flag.


def classify_by_tree(nf: NormalForm) -> WeakHomeoClass:
    if nf.is_empty:
        return EMPTY_CLASS
    fp = fingerprint(nf)
    if fp.cardinality.level == 0:
        return _cls(ClassKind.FINITE, fp.cardinality.n)

    if fp.is_polish:
        if fp.is_countable:
            return _cls(ClassKind.OMEGA)
        if fp.is_sigma_compact:
            return _cls(ClassKind.CANTOR)
        return _cls(ClassKind.BAIRE)

    if fp.is_sigma_compact:
        if fp.is_countable:
            return _cls(ClassKind.Q)
        _, kernel = decompose(nf, ["countable", "polish"])
        if not kernel.is_empty:
            return _cls(ClassKind.Q_TIMES_CANTOR)
        return _cls(ClassKind.Q_PLUS_CANTOR)

    parts, kernel = decompose(nf, ["sigma_compact", "polish"])
    if not kernel.is_empty:
        return _cls(ClassKind.Q_TIMES_BAIRE)
    s_part = parts[0]  # sigma-compact, necessarily non-Polish here
    s_class = classify_by_tree(s_part)
    if s_class.kind is ClassKind.Q_TIMES_CANTOR:
        return _cls(ClassKind.QC_PLUS_BAIRE)
    return _cls(ClassKind.Q_PLUS_BAIRE)


# ---------------------------------------------------------------------------
# Tables and canonical terms

_CANONICAL_TEXT = {
    ClassKind.EMPTY: "0",
    ClassKind.OMEGA: "w",
    ClassKind.CANTOR: "2^w",
    ClassKind.BAIRE: "N^w",
    ClassKind.Q: "Q",
    ClassKind.Q_PLUS_CANTOR: "Q + 2^w",
    ClassKind.Q_TIMES_CANTOR: "Q*2^w",
    ClassKind.Q_PLUS_BAIRE: "Q + N^w",
    ClassKind.QC_PLUS_BAIRE: "Q*2^w + N^w",
    ClassKind.Q_TIMES_BAIRE: "Q*N^w",
}


def canonical_term(c: WeakHomeoClass) -> SpaceTerm:
    """The listed representative term of a class; classifies back to it."""
    if c.kind is ClassKind.FINITE:
        return parse(f"fin({c.n})")
    return parse(_CANONICAL_TEXT[c.kind])


def sum_table(c1: WeakHomeoClass, c2: WeakHomeoClass) -> WeakHomeoClass:
    """Class of a topological sum: join of the bit antichains."""
    if c1.kind is ClassKind.FINITE and c2.kind is ClassKind.FINITE:
        return _cls(ClassKind.FINITE, c1.n + c2.n)
    joined = bits_join(class_to_bits(c1), class_to_bits(c2))
    if joined == frozenset({F}):
        return _cls(ClassKind.FINITE, max(c1.n, c2.n))
    return _bits_to_class(joined, 0)


def prod_table(c1: WeakHomeoClass, c2: WeakHomeoClass) -> WeakHomeoClass:
    """Class of a product, via canonical representatives."""
    nf = nf_prod(normalize(canonical_term(c1)), normalize(canonical_term(c2)))
    return classify(nf)


# ---------------------------------------------------------------------------
# Closed-embedding order
#
# On the nine infinite classes this is the reflexive-transitive closure of
# the reference diagram of closed-subspace arrows between the canonical
# spaces.  The finite classes embed closedly into everything infinite and
# into each other by size; the empty space embeds everywhere.

_DIAGRAM_ARROWS = (
    (ClassKind.OMEGA, ClassKind.Q),
    (ClassKind.Q, ClassKind.Q_PLUS_CANTOR),
    (ClassKind.CANTOR, ClassKind.BAIRE),
    (ClassKind.CANTOR, ClassKind.Q_PLUS_CANTOR),
    (ClassKind.BAIRE, ClassKind.Q_PLUS_BAIRE),
    (ClassKind.Q_PLUS_CANTOR, ClassKind.Q_TIMES_CANTOR),
    (ClassKind.Q_PLUS_CANTOR, ClassKind.Q_PLUS_BAIRE),
    (ClassKind.Q_PLUS_BAIRE, ClassKind.QC_PLUS_BAIRE),
    (ClassKind.Q_PLUS_BAIRE, ClassKind.Q_TIMES_BAIRE),
    (ClassKind.Q_TIMES_CANTOR, ClassKind.QC_PLUS_BAIRE),
    (ClassKind.QC_PLUS_BAIRE, ClassKind.Q_TIMES_BAIRE),
)


@lru_cache(maxsize=1)
def _embedding_closure() -> frozenset[tuple[ClassKind, ClassKind]]:
    rel = {(k, k) for k in INFINITE_CLASSES}
    rel.update(_DIAGRAM_ARROWS)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (b2, c) in list(rel):
                if b == b2 and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return frozenset(rel)


def embeds_closed(c1: WeakHomeoClass, c2: WeakHomeoClass) -> bool:
    """Is the canonical space of c1 a closed subspace of that of c2?"""
    k1, k2 = c1.kind, c2.kind
    if k1 is ClassKind.EMPTY:
        return True
    if k2 is ClassKind.EMPTY:
        return False
    if k1 is ClassKind.FINITE:
        # finite subsets of T1 spaces are closed and discrete
        return c1.n <= c2.n if k2 is ClassKind.FINITE else True
    if k2 is ClassKind.FINITE:
        return False
    return (k1, k2) in _embedding_closure()


# ---------------------------------------------------------------------------
# Decomposition by local properties


class InvalidPredicate(ValueError):
    pass


def decompose(
    nf: NormalForm, props: Iterable[str]
) -> tuple[list[NormalForm], NormalForm]:
    """Split a sum by an ordered list of monomial predicates.

    parts[i] keeps the monomials satisfying predicate i and none earlier,
    the kernel keeps those satisfying none.  Valid predicates are the
    monomial-level fingerprint flags (monomials are homogeneous, so the
    local reading of each flag coincides with the flag itself).
    """
    names = list(props)
    for p in names:
        if p not in MONOMIAL_FLAGS:
            raise InvalidPredicate(
                f"{p!r} is not a monomial flag; choose from {MONOMIAL_FLAGS}"
            )
    buckets: list[list[Monomial]] = [[] for _ in names]
    kernel: list[Monomial] = []
    for m in nf.monomials:
        for i, p in enumerate(names):
            if monomial_flag(m, p):
                buckets[i].append(m)
                break
        else:
            kernel.append(m)
    parts = [NormalForm(tuple(b)) for b in buckets]
    return parts, NormalForm(tuple(kernel))
