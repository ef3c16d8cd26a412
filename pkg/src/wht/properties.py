"""Exact topological property fingerprints for normal forms.

Monomials are homogeneous: every nonempty open subset of a product of the
base atoms shares the product's property flags.  That makes each predicate
a simple function of which atoms occur, and sums fold by conjunction (the
"nowhere" predicates included, since one bad summand already provides a
witnessing open set).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Monomial, NormalForm

__all__ = [
    "Cardinality",
    "PropertyFingerprint",
    "InvariantRecord",
    "PreservationReport",
    "fingerprint",
    "invariants",
    "check_preservation",
    "monomial_flag",
    "MONOMIAL_FLAGS",
]


# ---------------------------------------------------------------------------
# Symbolic cardinalities: finite(n), aleph0, continuum.


@dataclass(frozen=True, order=True)
class Cardinality:
    # level 0 = finite (with exact n), 1 = aleph0, 2 = continuum
    level: int
    n: int = 0

    @staticmethod
    def finite(n: int) -> "Cardinality":
        return Cardinality(0, n)

    def __add__(self, other: "Cardinality") -> "Cardinality":
        if self.level == 0 and other.level == 0:
            return Cardinality(0, self.n + other.n)
        return max(self, other, key=lambda c: c.level)

    def __mul__(self, other: "Cardinality") -> "Cardinality":
        if self.level == 0 and other.level == 0:
            return Cardinality(0, self.n * other.n)
        if (self.level == 0 and self.n == 0) or (other.level == 0 and other.n == 0):
            return Cardinality(0, 0)
        return max(self, other, key=lambda c: c.level)

    def __str__(self) -> str:
        return {0: f"finite({self.n})", 1: "aleph0", 2: "continuum"}[self.level]


ALEPH0 = Cardinality(1)
CONTINUUM = Cardinality(2)


def monomial_cardinality(m: Monomial) -> Cardinality:
    if m.has_cantor or m.has_baire:
        return CONTINUUM
    if m.has_q or m.has_omega:
        return ALEPH0
    return Cardinality.finite(m.fin)


# ---------------------------------------------------------------------------
# Fingerprints


@dataclass(frozen=True)
class PropertyFingerprint:
    is_empty: bool
    is_countable: bool
    is_compact: bool
    is_polish: bool
    is_sigma_compact: bool
    is_perfect: bool
    is_scattered: bool
    is_k_scattered: bool
    is_locally_compact: bool
    is_nowhere_countable: bool
    is_nowhere_locally_compact: bool
    is_nowhere_polish: bool
    is_nowhere_sigma_compact: bool
    is_baire: bool
    is_hereditarily_baire: bool
    cardinality: Cardinality

    def flags(self) -> dict[str, bool]:
        return {
            k: getattr(self, k)
            for k in self.__dataclass_fields__
            if k != "cardinality"
        }


def _monomial_fingerprint(m: Monomial) -> PropertyFingerprint:
    q, c, n = m.has_q, m.has_cantor, m.has_baire
    return PropertyFingerprint(
        is_empty=False,
        is_countable=not c and not n,
        is_compact=not q and not n and not m.has_omega,
        is_polish=not q,
        is_sigma_compact=not n,
        is_perfect=q or c or n,
        is_scattered=not (q or c or n),
        is_k_scattered=not q and not n,
        is_locally_compact=not q and not n,
        is_nowhere_countable=c or n,
        is_nowhere_locally_compact=q or n,
        is_nowhere_polish=q,
        is_nowhere_sigma_compact=n,
        is_baire=not q,
        is_hereditarily_baire=not q,
        cardinality=monomial_cardinality(m),
    )


# The empty space: universal predicates hold vacuously (including
# perfectness AND scatteredness); "nowhere" flags are pinned false by
# convention to dodge vacuous-truth ambiguity.
_EMPTY_FP = PropertyFingerprint(
    is_empty=True,
    is_countable=True,
    is_compact=True,
    is_polish=True,
    is_sigma_compact=True,
    is_perfect=True,
    is_scattered=True,
    is_k_scattered=True,
    is_locally_compact=True,
    is_nowhere_countable=False,
    is_nowhere_locally_compact=False,
    is_nowhere_polish=False,
    is_nowhere_sigma_compact=False,
    is_baire=True,
    is_hereditarily_baire=True,
    cardinality=Cardinality.finite(0),
)


def fingerprint(nf: NormalForm) -> PropertyFingerprint:
    """Exact predicate values for the space denoted by a normal form.

    Normal forms are finite sums, so every universally quantified flag is
    a conjunction over the summands (compactness needs no extra finiteness
    side condition here).
    """
    if nf.is_empty:
        return _EMPTY_FP
    parts = [_monomial_fingerprint(m) for m in nf.monomials]
    merged = {
        name: all(getattr(p, name) for p in parts)
        for name in PropertyFingerprint.__dataclass_fields__
        if name != "cardinality"
    }
    merged["is_empty"] = False
    card = Cardinality.finite(0)
    for p in parts:
        card = card + p.cardinality
    return PropertyFingerprint(cardinality=card, **merged)


# Monomial-level predicate table, used by decompose(); each entry is a
# flag of the homogeneous monomial space.
MONOMIAL_FLAGS = (
    "countable",
    "compact",
    "polish",
    "sigma_compact",
    "perfect",
    "scattered",
    "k_scattered",
    "locally_compact",
)


def monomial_flag(m: Monomial, name: str) -> bool:
    if name not in MONOMIAL_FLAGS:
        raise KeyError(name)
    return getattr(_monomial_fingerprint(m), "is_" + name)


# ---------------------------------------------------------------------------
# Cardinal invariants


@dataclass(frozen=True)
class InvariantRecord:
    nw: str  # "finite" | "aleph0"
    hl: str
    hd: str
    psi: str
    dim: int  # -1 for the empty space, 0 otherwise
    cardinality: Cardinality


def invariants(nf: NormalForm) -> InvariantRecord:
    fp = fingerprint(nf)
    if fp.is_empty:
        return InvariantRecord("finite", "finite", "finite", "finite", -1, fp.cardinality)
    size = "finite" if fp.cardinality.level == 0 else "aleph0"
    return InvariantRecord(size, size, size, size, 0, fp.cardinality)


# ---------------------------------------------------------------------------
# Preservation report

# Properties a weak homeomorphism between these spaces must preserve
# (Baire-ness deliberately excluded: it is not preserved in general).
PRESERVED_PROPERTIES = (
    "is_countable",
    "is_polish",
    "is_sigma_compact",
    "is_hereditarily_baire",
)


@dataclass(frozen=True)
class PreservationReport:
    same_class: bool
    class_a: str
    class_b: str
    ok: bool
    shared: Optional[dict]
    distinguishing: tuple[str, ...]
    mismatches: tuple[str, ...]

    def __str__(self) -> str:
        if self.same_class:
            status = "OK" if self.ok else "INVARIANT MISMATCH: " + ", ".join(self.mismatches)
            return f"same class {self.class_a}: {status}"
        if self.distinguishing:
            return (
                f"classes differ ({self.class_a} vs {self.class_b}); "
                f"distinguished by: {', '.join(self.distinguishing)}"
            )
        return (
            f"classes differ ({self.class_a} vs {self.class_b}); "
            "no implemented invariant distinguishes them"
        )


def check_preservation(a: NormalForm, b: NormalForm) -> PreservationReport:
    """Compare two terms through the class-invariant properties.

    Equal classes must agree on every preserved property and on the
    invariant record; for distinct classes the report lists which
    preserved properties (if any) tell them apart.
    """
    from .classifier import classify  # local import, avoids a cycle

    ca, cb = classify(a), classify(b)
    fa, fb = fingerprint(a), fingerprint(b)
    ia, ib = invariants(a), invariants(b)
    diffs = [p for p in PRESERVED_PROPERTIES if getattr(fa, p) != getattr(fb, p)]
    if ia != ib:
        diffs.append("invariant_record")
    if fa.cardinality != fb.cardinality and "invariant_record" not in diffs:
        diffs.append("cardinality")
    if ca == cb:
        shared = {p: getattr(fa, p) for p in PRESERVED_PROPERTIES}
        shared["invariants"] = ia
        return PreservationReport(
            same_class=True,
            class_a=ca.name,
            class_b=cb.name,
            ok=not diffs,
            shared=None if diffs else shared,
            distinguishing=(),
            mismatches=tuple(diffs),
        )
    return PreservationReport(
        same_class=False,
        class_a=ca.name,
        class_b=cb.name,
        ok=True,
        shared=None,
        distinguishing=tuple(diffs),
        mismatches=(),
    )
