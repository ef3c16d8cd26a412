"""Constructive routes from any term to its canonical representative.

A derivation script certifies that a term's presentation is weakly
homeomorphic to the presentation of its class representative.  Three step
shapes cover the supported terms:

* the term already is its representative (empty script);
* a pure power of one of Q, 2^w, N^w denotes literally the same subset of
  Baire space as the atom (interleaving eventually-zero sequences is
  eventually zero, binary stays binary, free stays free), giving a
  single registered-homeomorphism step;
* otherwise one Cantor-Bernstein step built from a pair of explicit
  closed embeddings: every summand packs its coordinate streams into a
  region of a compatible summand of the representative, and each
  representative summand embeds back by filling the spare streams of a
  hosting summand with base points.

The embedding library covers every term except those in the classes of
2^w or Q+2^w that carry an omega factor next to a Cantor factor: a
noncompact countable discrete part cannot embed closedly into 2^w, and
the compactification trick behind that reduction is out of the library's
reach, so those terms raise UnsupportedWitness (their classification is
unaffected).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Monomial, NormalForm, normalize, render
from .classifier import ClassKind, WeakHomeoClass, canonical_term, classify
from .pointmaps import (
    HeadAffine,
    HeadAffineInv,
    HeadPair,
    Ident,
    MapPiece,
    MapSpec,
    PieceMap,
    PrefixSub,
    StreamArrange,
)
from .presentations import TreePresentation, present
from .regions import CylSpec, PeriodicPoint, SetSpec, UnionSpec, WholeSpec, zeros
from .witness import Certificate, cantor_bernstein, compose, identity_certificate

__all__ = [
    "UnsupportedWitness",
    "Step",
    "DerivationScript",
    "canonical_witness",
]


class UnsupportedWitness(Exception):
    """No constructive route in the embedding library (classification holds)."""


@dataclass(frozen=True)
class Step:
    kind: str  # "registered" | "cantor_bernstein"
    source: str
    target: str
    description: str
    certificate: Certificate


@dataclass(frozen=True)
class DerivationScript:
    source: str
    target: str
    class_name: str
    steps: tuple[Step, ...]
    composite: Optional[Certificate]

    def __str__(self) -> str:
        lines = [f"{self.source}  ~  {self.target}   [class {self.class_name}]"]
        if not self.steps:
            lines.append("  already canonical; empty script")
        for i, s in enumerate(self.steps):
            lines.append(f"  step {i}: {s.kind}: {s.source} -> {s.target} ({s.description})")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Stream bookkeeping for a monomial's flat presentation.  Stream order in
# present() is Q..., N^w..., 2^w..., w..., fin?; see algebra sort order.


@dataclass(frozen=True)
class _Streams:
    q: tuple[int, ...]
    n: tuple[int, ...]
    c: tuple[int, ...]
    w: tuple[int, ...]
    fin: Optional[int]
    fin_size: int

    @property
    def arity(self) -> int:
        return len(self.q) + len(self.n) + len(self.c) + len(self.w) + (
            1 if self.fin is not None else 0
        )


def _streams(m: Monomial) -> _Streams:
    idx = 0
    q = tuple(range(idx, idx + m.rationals)); idx += m.rationals
    n = tuple(range(idx, idx + m.baire)); idx += m.baire
    c = tuple(range(idx, idx + m.cantor)); idx += m.cantor
    w = tuple(range(idx, idx + m.omega)); idx += m.omega
    fin = None
    if m.fin > 1 or m.is_pure_fin:
        fin = idx
    return _Streams(q, n, c, w, fin, m.fin)


def _binary_block(*ks: int) -> tuple[int, ...]:
    """Prefix-free binary code 1^k 0 per component."""
    out: list[int] = []
    for k in ks:
        out.extend([1] * k)
        out.append(0)
    return tuple(out)


def _pack_into(
    st: _Streams, target: Monomial, region: Optional[int]
) -> MapSpec:
    """Closed embedding of one monomial space into a canonical monomial
    space, as a stream rearrangement (region-coded when shared)."""
    ev_zero = st.q + st.w + (() if st.fin is None else (st.fin,))
    closed_free = st.c + st.n

    if target == Monomial(fin=target.fin) and target.is_pure_fin:
        raise AssertionError("finite targets are range-mapped, not packed")

    if target == Monomial(omega=1):
        # every stream is head-then-zeros; collapse heads by pairing
        prims: list = [HeadPair(st.arity)] if st.arity > 1 else []
        if region is not None:
            prims.append(HeadAffine(region[0], region[1]))  # type: ignore[index]
        return tuple(prims) if prims else (Ident(),)

    if target == Monomial(rationals=1):
        pre = () if region is None else (region,)
        return (StreamArrange(st.arity, (("pack", ev_zero, pre),)),)

    if target == Monomial(cantor=1):
        pre = () if region is None else _binary_block(region)
        if st.fin is None:
            return (StreamArrange(st.arity, (("pack", st.c, pre),)),)
        raise AssertionError("fin factors into 2^w are split per value by the caller")

    if target == Monomial(baire=1):
        pre = () if region is None else (region,)
        order = st.w + st.c + st.n + (() if st.fin is None else (st.fin,))
        return (StreamArrange(st.arity, (("pack", order, pre),)),)

    if target == Monomial(rationals=1, cantor=1):
        pre = () if region is None else (region,)
        left = ("pack", ev_zero, pre) if ev_zero else ("const", PeriodicPoint(pre, (0,)))
        right = ("pack", st.c, ()) if st.c else ("const", zeros())
        return (StreamArrange(st.arity, (left, right)),)

    if target == Monomial(rationals=1, baire=1):
        pre = () if region is None else (region,)
        left = ("pack", ev_zero, pre) if ev_zero else ("const", PeriodicPoint(pre, (0,)))
        right = ("pack", closed_free, ()) if closed_free else ("const", zeros())
        return (StreamArrange(st.arity, (left, right)),)

    raise AssertionError(f"no packer for target {target}")


def _packable(m: Monomial, target: Monomial) -> bool:
    if target.is_pure_fin:
        return m.is_pure_fin
    if target == Monomial(omega=1):
        return not (m.has_q or m.has_cantor or m.has_baire)
    if target == Monomial(rationals=1):
        return not (m.has_cantor or m.has_baire)  # countable
    if target == Monomial(cantor=1):
        return not (m.has_q or m.has_baire or m.has_omega)  # compact
    if target == Monomial(baire=1):
        return not m.has_q  # Polish
    if target == Monomial(rationals=1, cantor=1):
        return not m.has_baire  # sigma-compact
    if target == Monomial(rationals=1, baire=1):
        return True  # sigma-Polish
    return False


def _hosts(m: Monomial, target: Monomial) -> bool:
    """Can the canonical monomial `target` embed into the space of m by
    filling m's spare streams with base points?"""
    if target.is_pure_fin:
        return m.is_pure_fin
    need_q = target.rationals > 0
    need_c = target.cantor > 0
    need_n = target.baire > 0
    need_w = target.omega > 0
    return (
        (not need_q or m.has_q)
        and (not need_c or m.has_cantor)
        and (not need_n or m.has_baire)
        and (not need_w or m.has_omega)
    )


def _fill_spec(st: _Streams, target: Monomial) -> MapSpec:
    """Embedding of a canonical monomial space into m's space: route its
    streams into m's first streams of each kind, constants elsewhere."""
    t = _streams(target)
    routing: dict[int, tuple[str, int]] = {}
    for kind, tidx, midx in (
        ("q", t.q, st.q),
        ("n", t.n, st.n),
        ("c", t.c, st.c),
        ("w", t.w, st.w),
    ):
        for pos, src in enumerate(tidx):
            routing[midx[pos]] = ("pack", src)
    out = []
    for j in range(st.arity):
        if j in routing:
            out.append(("pack", (routing[j][1],), ()))
        else:
            out.append(("const", zeros()))
    return (StreamArrange(t.arity, tuple(out)),)


# ---------------------------------------------------------------------------
# Forward / backward embeddings between a term and its representative


def _tagged(word_tag: Optional[int], prims: MapSpec, drop: bool) -> MapSpec:
    out: list = []
    if drop and word_tag is not None:
        out.append(PrefixSub((word_tag,), ()))
    out.extend(p for p in prims if not isinstance(p, Ident))
    return tuple(out) if out else (Ident(),)


def _with_tag(prims: MapSpec, tag: Optional[int]) -> MapSpec:
    if tag is None:
        return prims
    prims = tuple(p for p in prims if not isinstance(p, Ident))
    return prims + (PrefixSub((), (tag,)),)


def _build_forward(nf: NormalForm, tnf: NormalForm) -> PieceMap:
    X, T = present(nf), present(tnf)
    t_monos = list(tnf.monomials)
    assignment: list[int] = []
    for i, m in enumerate(nf.monomials):
        for j, tm in enumerate(t_monos):
            if _packable(m, tm):
                assignment.append(j)
                break
        else:
            raise UnsupportedWitness(
                f"summand {m} of {render(nf)} embeds closedly in no summand "
                f"of the representative {render(tnf)}"
            )

    multi_src = len(nf.monomials) > 1
    multi_tgt = len(t_monos) > 1
    # region indices within each target summand
    per_target: dict[int, list[int]] = {}
    regions: list[Optional[int]] = []
    for i, j in enumerate(assignment):
        sources = per_target.setdefault(j, [])
        regions.append(len(sources))
        sources.append(i)

    pieces: list[MapPiece] = []
    fin_targets = all(tm.is_pure_fin for tm in t_monos)
    offsets: dict[int, int] = {}
    if fin_targets:
        acc = 0
        for i, m in enumerate(nf.monomials):
            offsets[i] = acc
            acc += m.fin

    for i, m in enumerate(nf.monomials):
        j = assignment[i]
        tm = t_monos[j]
        st = _streams(m)
        shared = len(per_target[j]) > 1
        spec: SetSpec = CylSpec((i,)) if multi_src else WholeSpec()
        if fin_targets:
            prims: MapSpec = (HeadAffine(1, offsets[i]),)
        elif tm == Monomial(omega=1):
            reg = (len(per_target[j]), regions[i]) if shared else None
            prims = _pack_into(st, tm, reg)  # type: ignore[arg-type]
        elif tm == Monomial(cantor=1) and st.fin is not None:
            # split the finite factor into prefix-coded sub-pieces
            reg = regions[i] if shared else 0
            base = CylSpec((i,)) if multi_src else WholeSpec()
            from .regions import CoordSpec, IntersectSpec

            fin_pos = st.fin + (1 if multi_src else 0)
            for v in range(st.fin_size):
                sub = IntersectSpec((base, CoordSpec(fin_pos, v)))
                pre = _binary_block(reg, v)
                arr = StreamArrange(
                    st.arity,
                    (("pack", st.c, pre),),
                    dropped=((st.fin, PeriodicPoint((v,), (0,))),),
                )
                pieces.append(
                    MapPiece(sub, _with_tag(_tagged(i if multi_src else None, (arr,), multi_src), j if multi_tgt else None))
                )
            continue
        else:
            prims = _pack_into(st, tm, regions[i] if shared else None)
        pieces.append(
            MapPiece(
                spec,
                _with_tag(_tagged(i if multi_src else None, prims, multi_src), j if multi_tgt else None),
            )
        )
    return PieceMap(X, T, tuple(pieces))


def _build_backward(tnf: NormalForm, nf: NormalForm) -> PieceMap:
    T, X = present(tnf), present(nf)
    multi_src = len(tnf.monomials) > 1
    multi_tgt = len(nf.monomials) > 1
    pieces: list[MapPiece] = []
    used_hosts: set[int] = set()

    fin_sources = all(tm.is_pure_fin for tm in tnf.monomials)
    if fin_sources:
        # the representative fin(N) spreads back over the finite summands
        acc = 0
        for i, m in enumerate(nf.monomials):
            spec: SetSpec = UnionSpec(
                tuple(CylSpec((acc + v,)) for v in range(m.fin))
            )
            prims: MapSpec = (HeadAffineInv(1, acc),)
            pieces.append(MapPiece(spec, _with_tag(prims, i if multi_tgt else None)))
            acc += m.fin
        return PieceMap(T, X, tuple(pieces))

    for j, tm in enumerate(tnf.monomials):
        host = None
        for i, m in enumerate(nf.monomials):
            if i not in used_hosts and _hosts(m, tm):
                host = i
                break
        if host is None:
            raise UnsupportedWitness(
                f"no summand of {render(nf)} hosts the representative part {tm}"
            )
        used_hosts.add(host)
        st = _streams(nf.monomials[host])
        if tm == Monomial(omega=1):
            # head goes to the first omega stream, zeros elsewhere
            out = []
            for q in range(st.arity):
                if q == st.w[0]:
                    out.append(("pack", (0,), ()))
                else:
                    out.append(("const", zeros()))
            prims = (StreamArrange(1, tuple(out)),)
        else:
            prims = _fill_spec(st, tm)
        spec = CylSpec((j,)) if multi_src else WholeSpec()
        pieces.append(
            MapPiece(
                spec,
                _with_tag(
                    _tagged(j if multi_src else None, prims, multi_src),
                    host if multi_tgt else None,
                ),
            )
        )
    return PieceMap(T, X, tuple(pieces))


# ---------------------------------------------------------------------------
# The public constructor


def _registered_identity(nf: NormalForm, tnf: NormalForm, note: str) -> Step:
    X, T = present(nf), present(tnf)
    pmap = PieceMap(X, T, (MapPiece(WholeSpec(), (Ident(),)),))
    from .witness import CertPiece

    piece = (CertPiece(WholeSpec(), 0),)
    cert = Certificate(pmap, piece, piece, 1, 1, None, note)
    return Step("registered", render(nf), render(tnf), note, cert)


def _pure_power(nf: NormalForm) -> Optional[str]:
    if len(nf.monomials) != 1:
        return None
    m = nf.monomials[0]
    if m.fin != 1:
        return None
    kinds = [
        ("Q", m.rationals, m.baire + m.cantor + m.omega),
        ("N^w", m.baire, m.rationals + m.cantor + m.omega),
        ("2^w", m.cantor, m.rationals + m.baire + m.omega),
    ]
    for name, count, rest in kinds:
        if count >= 2 and rest == 0:
            return name
    return None


def canonical_witness(
    nf: NormalForm, depth: int = 8, bound: int = 2
) -> DerivationScript:
    """Certified derivation from a term to its class representative.

    Raises UnsupportedWitness when the embedding library has no closed
    embedding pair for the term (see the module docstring); the
    classification itself is independent of this construction.
    """
    cls = classify(nf)
    tnf = normalize(canonical_term(cls))
    src, tgt = render(nf), render(tnf)

    if nf == tnf:
        return DerivationScript(src, tgt, cls.name, (), None)

    power = _pure_power(nf)
    if power is not None:
        note = f"interleaved {power} power denotes the same subset as {power}"
        step = _registered_identity(nf, tnf, note)
        return DerivationScript(src, tgt, cls.name, (step,), step.certificate)

    f = _build_forward(nf, tnf)
    g = _build_backward(tnf, nf)
    h, cert = cantor_bernstein(f, g, depth=depth, bound=bound)
    step = Step(
        "cantor_bernstein",
        src,
        tgt,
        "mutual closed embeddings resolved by back-and-forth layering",
        cert,
    )
    return DerivationScript(src, tgt, cls.name, (step,), cert)
