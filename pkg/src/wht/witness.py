"""Certificates for piecewise maps and their depth-stamped verification.

A certificate covers the domain (and, through the inverses, the codomain)
with pieces on which the declared map composition is continuous, carrying
counts that bound the closed decomposition number of the map and of its
inverse.  Verification never claims a limit: every check samples admitted
prefixes and eventually-periodic residents to a requested depth, and a
clean report means "no violation visible at this depth".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .presentations import (
    MergedFamily,
    PieceFamily,
    TaggedFamily,
    TreePresentation,
    admits,
    enumerate_depth,
    tag_piece,
)
from .pointmaps import (
    INCOMPAT,
    Ident,
    MapPiece,
    MappedSpec,
    PieceMap,
    PrefixSub,
    PreimageSpec,
    spec_eval_point,
    spec_eval_prefix,
    spec_inverse,
    spec_modulus,
)
from .regions import (
    CylSpec,
    DiffSpec,
    EmptySpec,
    IntersectSpec,
    PeriodicPoint,
    PointSpec,
    SetSpec,
    UnionSpec,
    WholeSpec,
    closure_approx,
    point_admitted,
)

__all__ = [
    "CertPiece",
    "Certificate",
    "Violation",
    "VerificationReport",
    "verify",
    "layered_identity",
    "wdi_chain",
    "DerivativeChain",
    "cantor_bernstein",
    "compose",
    "NotDecreasing",
    "NotInjective",
    "ImageNotClosedAtDepth",
    "DomainMismatch",
    "image_of",
    "tagged_copies",
    "identity_certificate",
]

Word = tuple[int, ...]

OMEGA = None  # piece-count marker for countably many pieces


class NotDecreasing(ValueError):
    pass


class NotInjective(ValueError):
    pass


class ImageNotClosedAtDepth(ValueError):
    def __init__(self, depth: int, witness: Word, which: str):
        self.depth = depth
        self.witness = witness
        super().__init__(f"{which}: image not closed at depth {depth}, near {witness}")


class DomainMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class CertPiece:
    spec: SetSpec
    piece: int  # index into the subject map's pieces


@dataclass(frozen=True)
class Certificate:
    subject: PieceMap
    forward: tuple[CertPiece, ...]
    backward: tuple[CertPiece, ...]
    count_forward: Optional[int]  # None marks omega (countably many pieces)
    count_backward: Optional[int]
    image: Optional[SetSpec] = None  # None: onto the whole codomain
    note: str = ""


def image_of(pmap: PieceMap, inner: SetSpec) -> SetSpec:
    if len(pmap.pieces) == 1:
        return MappedSpec(pmap, inner, 0)
    return UnionSpec(
        tuple(MappedSpec(pmap, inner, i) for i in range(len(pmap.pieces)))
    )


def identity_certificate(pres: TreePresentation) -> Certificate:
    pmap = PieceMap(pres, pres, (MapPiece(WholeSpec(), (Ident(),)),))
    piece = (CertPiece(WholeSpec(), 0),)
    return Certificate(pmap, piece, piece, 1, 1, None, "identity")


def _is_identity_cert(c: Certificate) -> bool:
    return (
        len(c.subject.pieces) == 1
        and all(isinstance(p, Ident) for p in c.subject.pieces[0].prims)
        and isinstance(c.subject.pieces[0].spec, WholeSpec)
    )


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class Violation:
    kind: str
    word: Word
    piece: int
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    depth: int
    bound: int
    checked: int
    violations: tuple[Violation, ...]

    def __str__(self) -> str:
        head = "pass" if self.ok else f"FAIL ({len(self.violations)} violations)"
        lines = [
            f"verification at depth {self.depth} (bound {self.bound}): {head}; "
            f"{self.checked} prefixes checked"
        ]
        for v in self.violations[:20]:
            lines.append(f"  {v.kind} at {v.word} (piece {v.piece}): {v.detail}")
        if len(self.violations) > 20:
            lines.append(f"  ... and {len(self.violations) - 20} more")
        return "\n".join(lines)


def _common(a: Word, b: Word) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def _comparable(a: Word, b: Word) -> bool:
    n = min(len(a), len(b))
    return a[:n] == b[:n]


def _first_extensions(words: Sequence[Word]) -> dict[Word, Word]:
    """Map each proper prefix to one admitted full-depth extension."""
    out: dict[Word, Word] = {}
    for w in words:
        for j in range(len(w) + 1):
            out.setdefault(w[:j], w)
    return out


def _continuity_pairs(words, ext, bound):
    """Perturbation pairs: each word against a sibling behind every prefix."""
    for w in words:
        for j in range(len(w)):
            for lab in range(bound + 1):
                if lab == w[j]:
                    continue
                alt = ext.get(w[:j] + (lab,))
                if alt is not None:
                    yield w, alt, j


def _check_side(
    pieces: Sequence[CertPiece],
    get_prims,
    words: Sequence[Word],
    out_pres: TreePresentation,
    bound: int,
    side: str,
    violations: list[Violation],
) -> dict[Word, list[tuple[int, Word]]]:
    """Coverage, output admissibility and per-piece continuity for one
    direction.  Returns the determined outputs per input word."""
    ext = _first_extensions(words)
    outputs: dict[Word, list[tuple[int, Word]]] = {w: [] for w in words}

    for ci, cp in enumerate(pieces):
        prims = get_prims(cp)
        members = [w for w in words if cp.spec.meets(w)]
        outs: dict[Word, tuple] = {}
        for w in members:
            out = spec_eval_prefix(prims, w)
            if out is INCOMPAT:
                if cp.spec.contains_cyl(w):
                    violations.append(
                        Violation(side + "-region", w, cp.piece, "piece map undefined on covered cylinder")
                    )
                continue
            if out is None:
                continue
            outs[w] = out
            outputs[w].append((cp.piece, out))
            if out and not admits(out_pres, out):
                violations.append(
                    Violation(side + "-output", w, cp.piece, f"image prefix {out} not admitted")
                )
        member_set = set(members)
        moduli = [spec_modulus(prims, j) for j in range(len(words[0]) + 1)] if words else []
        for w, alt, j in _continuity_pairs(members, ext, bound):
            if alt not in member_set:
                continue
            o1 = outs.get(w)
            o2 = outs.get(alt)
            if o1 is None or o2 is None:
                continue
            need = min(moduli[j], len(o1), len(o2))
            if _common(o1, o2) < need:
                violations.append(
                    Violation(
                        side + "-continuity",
                        w,
                        cp.piece,
                        f"inputs agree to {j}, outputs {o1[:need]} vs {o2[:need]} "
                        f"break the declared modulus {need}",
                    )
                )
    return outputs


def verify(
    h: PieceMap, cert: Certificate, depth: int = 8, bound: int = 2
) -> VerificationReport:
    """Depth-stamped verification of a certificate against its map.

    Checks: forward cover of the domain, per-piece continuity through the
    declared moduli, admissibility of image prefixes, injectivity and
    surjectivity-onto-image on sampled prefixes, the same for the inverse
    direction, and exact agreement on the eventually-periodic sample
    points carried by the piece regions.  Findings are report entries,
    never exceptions; an empty list is a pass at this depth only.
    """
    violations: list[Violation] = []
    if h != cert.subject:
        violations.append(Violation("subject", (), -1, "certificate is for a different map"))

    dom_words = enumerate_depth(h.domain, depth, bound)
    cod_words = enumerate_depth(h.codomain, depth, bound)

    # (i) coverage of the domain by forward pieces
    for w in dom_words:
        if not any(cp.spec.meets(w) for cp in cert.forward):
            violations.append(Violation("coverage", w, -1, "no forward piece meets this prefix"))

    fwd_out = _check_side(
        cert.forward,
        lambda cp: h.pieces[cp.piece].prims,
        dom_words,
        h.codomain,
        bound,
        "forward",
        violations,
    )

    # (ii) injectivity on sampled periodic points (prefix truncation can
    # hide divergence, so only whole points give definite evidence)
    by_image: dict[PeriodicPoint, PeriodicPoint] = {}
    for p in _periodic_candidates(h.domain, bound):
        if not point_admitted(h.domain, p):
            continue
        res = h.apply_point(p)
        if res is None:
            continue
        _, q = res
        prev = by_image.get(q)
        if prev is not None and prev != p:
            violations.append(
                Violation("injectivity", p.prefix(depth), res[0], f"{prev} and {p} share the image {q}")
            )
        by_image.setdefault(q, p)

    # (iii) surjectivity onto the declared image
    image = cert.image if cert.image is not None else WholeSpec()
    out_set: set[Word] = set()
    out_prefixes: set[Word] = set()
    for outs in fwd_out.values():
        for _, o in outs:
            out_set.add(o)
            for j in range(len(o) + 1):
                out_prefixes.add(o[:j])
    out_lens = sorted({len(o) for o in out_set})
    for t in cod_words:
        if not image.meets(t):
            continue
        reached = t in out_prefixes or any(
            L <= len(t) and t[:L] in out_set for L in out_lens
        )
        if not reached:
            violations.append(Violation("surjectivity", t, -1, "no sampled output reaches this prefix"))

    # (iv) backward direction
    img_words = [t for t in cod_words if image.meets(t)]
    for t in img_words:
        if not any(cp.spec.meets(t) for cp in cert.backward):
            violations.append(Violation("backward-coverage", t, -1, "no backward piece meets this prefix"))
    _check_side(
        cert.backward,
        lambda cp: spec_inverse(h.pieces[cp.piece].prims),
        img_words,
        h.domain,
        bound,
        "backward",
        violations,
    )

    # (v) exact agreement on periodic sample points carried by the cover
    samples: list[PeriodicPoint] = []
    for cp in cert.forward:
        pts = cp.spec.sample_points()
        if pts:
            samples.extend(pts)
    for p in samples:
        if not point_admitted(h.domain, p):
            continue
        res = h.apply_point(p)
        if res is None:
            violations.append(Violation("point", p.prefix(depth), -1, f"{p} has no image"))
            continue
        _, q = res
        if not point_admitted(h.codomain, q):
            violations.append(Violation("point", p.prefix(depth), -1, f"{p} maps outside the codomain"))
        for cp in cert.forward:
            if not cp.spec.contains_point(p):
                continue
            qq = spec_eval_point(h.pieces[cp.piece].prims, p)
            if qq != q:
                violations.append(
                    Violation("point", p.prefix(depth), cp.piece, f"cover piece disagrees with the map at {p}")
                )

    return VerificationReport(
        ok=not violations,
        depth=depth,
        bound=bound,
        checked=len(dom_words) + len(cod_words),
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# Layered identity (sum decomposition along a closed filtration)


def tagged_copies(pres: TreePresentation, count: int) -> TreePresentation:
    pieces = tuple(
        tag_piece(p, i) for i in range(count) for p in pres.pieces
    )
    fams: list[PieceFamily] = []
    if pres.family is not None:
        fams = [TaggedFamily(i, pres.family) for i in range(count)]
    fam: Optional[PieceFamily] = None
    if len(fams) == 1:
        fam = fams[0]
    elif fams:
        fam = MergedFamily(tuple(fams))
    return TreePresentation(pieces, fam, f"{count} copies of ({pres.label})")


def layered_identity(
    pres: TreePresentation,
    chain: Sequence[SetSpec],
    depth: int = 8,
    bound: int = 2,
) -> tuple[PieceMap, Certificate]:
    """Identity onto the sum of the layers of a decreasing closed chain.

    chain = [F_0, ..., F_end] with F_0 the whole space and F_end empty;
    layer a is F_a minus F_(a+1), retagged with coordinate a.  The
    backward map (drop the tag) is continuous; the forward cover refines
    each layer into its closed shells, so its count is omega-marked as
    soon as a layer difference is nontrivial.
    """
    if len(chain) < 2:
        raise NotDecreasing("chain needs at least F_0 and a final empty set")
    if not isinstance(chain[0], WholeSpec):
        raise NotDecreasing("F_0 must be the whole space")
    if not isinstance(chain[-1], EmptySpec):
        raise NotDecreasing("the chain must end at the empty set")
    words = enumerate_depth(pres, depth, bound)
    for a in range(len(chain) - 1):
        for w in words:
            if chain[a + 1].meets(w) and not chain[a].meets(w):
                raise NotDecreasing(f"F_{a + 1} escapes F_{a} at {w}")

    layers: list[SetSpec] = []
    for a in range(len(chain) - 1):
        nxt = chain[a + 1]
        layers.append(chain[a] if isinstance(nxt, EmptySpec) else DiffSpec(chain[a], nxt))

    lam = len(layers)
    codomain = tagged_copies(pres, lam)
    pieces = tuple(
        MapPiece(layer, (PrefixSub((), (a,)),)) for a, layer in enumerate(layers)
    )
    pmap = PieceMap(pres, codomain, pieces)

    refined = any(isinstance(layer, DiffSpec) for layer in layers)
    cert = Certificate(
        subject=pmap,
        forward=tuple(CertPiece(layer, a) for a, layer in enumerate(layers)),
        backward=tuple(CertPiece(CylSpec((a,)), a) for a in range(lam)),
        count_forward=OMEGA if refined else lam,
        count_backward=lam,
        image=image_of(pmap, WholeSpec()),
        note=f"layered identity over {lam} layers",
    )
    return pmap, cert


# ---------------------------------------------------------------------------
# Derivative chains


@dataclass(frozen=True)
class DerivativeChain:
    supports: tuple[SetSpec, ...]
    slices: tuple[tuple[Word, ...], ...]  # depth-(d-1) prefix approximations
    wdi: int
    depth: int

    def __str__(self) -> str:
        lines = [f"derivative chain at depth {self.depth}: wdi = {self.wdi}"]
        for a, sl in enumerate(self.slices):
            shown = ", ".join(str(list(w)) for w in sl[:4])
            more = "" if len(sl) <= 4 else f", ... ({len(sl)} prefixes)"
            lines.append(f"  D_{a}: " + (f"[{shown}{more}]" if sl else "empty"))
        return "\n".join(lines)


def _support_meets(spec: SetSpec, w: Word) -> bool:
    pts = spec.sample_points()
    if pts is not None:
        return any(p.extends(w) for p in pts)
    return spec.meets(w)


def _piece_valid_in(support: SetSpec, piece_spec: SetSpec, w: Word) -> bool:
    pts = support.sample_points()
    if pts is not None:
        return any(p.extends(w) and piece_spec.contains_point(p) for p in pts)
    return piece_spec.meets(w)


def wdi_chain(h: PieceMap, depth: int = 8, bound: int = 2) -> DerivativeChain:
    """Iterated discontinuity supports of a piecewise map, at finite depth.

    A prefix is flagged when two of its one-step refinements inside the
    current support produce outputs that diverge before the declared
    modulus allows; the next support collects the closures of the involved
    piece regions under the flagged prefixes.  The chain stops when it
    stabilizes (empty or not), and wdi is the index of the stable tail.
    """
    words = enumerate_depth(h.domain, depth, bound)
    stems = enumerate_depth(h.domain, depth - 1, bound)
    children: dict[Word, list[Word]] = {}
    for w in words:
        children.setdefault(w[:-1], []).append(w)

    support: SetSpec = WholeSpec()
    supports = [support]
    slices = [tuple(s for s in stems if _support_meets(support, s))]

    while True:
        flagged: list[tuple[Word, int, int]] = []
        cur = supports[-1]
        for s in slices[-1]:
            interp: list[tuple[int, Word, Word]] = []
            for t in children.get(s, ()):
                if not _support_meets(cur, t):
                    continue
                for i, piece in enumerate(h.pieces):
                    if not _piece_valid_in(cur, piece.spec, t):
                        continue
                    out = spec_eval_prefix(piece.prims, t)
                    if isinstance(out, tuple):
                        interp.append((i, t, out))
            bad: set[tuple[int, int]] = set()
            for (i, t1, o1), (j, t2, o2) in itertools.combinations(interp, 2):
                if t1 == t2 and i == j:
                    continue
                m = _common(t1, t2)
                mu = min(
                    spec_modulus(h.pieces[i].prims, m),
                    spec_modulus(h.pieces[j].prims, m),
                )
                need = min(mu, len(o1), len(o2))
                if _common(o1, o2) < need:
                    bad.add((i, j))
            for i, j in sorted(bad):
                flagged.append((s, i, j))

        if not flagged:
            nxt: SetSpec = EmptySpec()
        else:
            parts = tuple(
                IntersectSpec(
                    (
                        closure_approx(cur),
                        closure_approx(h.pieces[i].spec),
                        closure_approx(h.pieces[j].spec),
                        CylSpec(s),
                    )
                )
                for s, i, j in flagged
            )
            nxt = parts[0] if len(parts) == 1 else UnionSpec(parts)
        nxt_slice = tuple(s for s in stems if _support_meets(nxt, s))
        if nxt_slice == slices[-1]:
            return DerivativeChain(
                tuple(supports), tuple(slices), len(supports) - 1, depth
            )
        supports.append(nxt)
        slices.append(nxt_slice)


# ---------------------------------------------------------------------------
# Cantor-Bernstein


def _is_total_identity(pmap: PieceMap) -> bool:
    return (
        len(pmap.pieces) == 1
        and isinstance(pmap.pieces[0].spec, WholeSpec)
        and all(isinstance(p, Ident) for p in pmap.pieces[0].prims)
    )


def _periodic_candidates(pres: TreePresentation, bound: int, cap: int = 160):
    """Eventually-periodic residents harvested from the automata."""
    out: list[PeriodicPoint] = []
    pieces = list(pres.pieces)
    if pres.family is not None:
        pieces.extend(pres.family.instance(k) for k in (0, 1, 2))
    for piece in pieces:
        # leftmost access word to each state
        access: dict[int, Word] = {piece.start: ()}
        queue = [piece.start]
        while queue:
            s = queue.pop(0)
            for lab, t in piece.trans[s]:
                if t not in access:
                    access[t] = access[s] + (lab.lo,)
                    queue.append(t)
        for s, acc in access.items():
            # simple cycles: one step out, leftmost path back
            for lab, t in piece.trans[s]:
                back = _leftmost_path(piece, t, s)
                if back is None:
                    continue
                for x in lab.bounded(bound) or [lab.lo]:
                    out.append(PeriodicPoint(acc, (x,) + back))
                    if len(out) >= cap:
                        return out
    return out


def _leftmost_path(piece, src: int, dst: int) -> Optional[Word]:
    if src == dst:
        return ()
    prev: dict[int, tuple[int, int]] = {}
    seen = {src}
    queue = [src]
    while queue:
        s = queue.pop(0)
        for lab, t in piece.trans[s]:
            if t in seen:
                continue
            prev[t] = (s, lab.lo)
            if t == dst:
                word = []
                cur = t
                while cur != src:
                    ps, x = prev[cur]
                    word.append(x)
                    cur = ps
                return tuple(reversed(word))
            seen.add(t)
            queue.append(t)
    return None


def _check_closed_embedding(
    emb: PieceMap, depth: int, bound: int, which: str
) -> None:
    # injectivity on sampled periodic residents (definite evidence only)
    by_image: dict[PeriodicPoint, PeriodicPoint] = {}
    for p in _periodic_candidates(emb.domain, bound):
        if not point_admitted(emb.domain, p):
            continue
        res = emb.apply_point(p)
        if res is None:
            continue
        prev = by_image.get(res[1])
        if prev is not None and prev != p:
            raise NotInjective(f"{which}: {prev} and {p} map to {res[1]}")
        by_image.setdefault(res[1], p)
    # image closedness against periodic candidates of the codomain
    image = emb.image_spec()
    for p in _periodic_candidates(emb.codomain, bound):
        if not point_admitted(emb.codomain, p):
            continue
        if image.contains_point(p):
            continue
        if all(image.meets(p.prefix(j)) for j in range(1, depth + 1)):
            raise ImageNotClosedAtDepth(depth, p.prefix(depth), which)


def cantor_bernstein(
    f: PieceMap, g: PieceMap, depth: int = 10, bound: int = 2
) -> tuple[PieceMap, Certificate]:
    """Back-and-forth bijection from mutual closed embeddings.

    With f: X -> Y and g: Y -> X, the layers X_{n+1} = g(Y_n) and
    Y_{n+1} = f(X_n) alternate; the result agrees with f on the even
    layer differences (and the everywhere-deep remainder) and with the
    inverse of g on the odd ones.  Layers are evaluated lazily to the
    requested depth and the covers are the omega-marked shell refinements
    of the layer differences.
    """
    if f.codomain != g.domain or g.codomain != f.domain:
        raise DomainMismatch("f and g must be mutually inverse-shaped embeddings")
    _check_closed_embedding(f, depth, bound, "f")
    _check_closed_embedding(g, depth, bound, "g")

    # Truncation depth for the layer chain; with surjective (identity)
    # embeddings the chain is constant and one layer suffices.  The cap is
    # kept even so the remainder (approximating X_infty and everything
    # deeper) is f-mapped consistently with the even layers.
    k = 0 if (_is_total_identity(f) and _is_total_identity(g)) else depth - depth % 2
    x_layers: list[SetSpec] = [WholeSpec()]
    y_layers: list[SetSpec] = [WholeSpec()]
    while len(x_layers) <= k:
        new_x = image_of(g, y_layers[-1])
        new_y = image_of(f, x_layers[-1])
        x_layers.append(new_x)
        y_layers.append(new_y)

    g_inv = g.inverse()
    pieces: list[MapPiece] = []
    cover: list[CertPiece] = []
    for n in range(k):
        layer = DiffSpec(x_layers[n], x_layers[n + 1])
        base = f if n % 2 == 0 else g_inv
        for bp in base.pieces:
            spec: SetSpec = IntersectSpec((layer, bp.spec))
            pieces.append(MapPiece(spec, bp.prims))
            cover.append(CertPiece(spec, len(pieces) - 1))
    remainder = x_layers[k]
    for bp in f.pieces:
        spec = (
            remainder
            if isinstance(bp.spec, WholeSpec) and k == 0
            else IntersectSpec((remainder, bp.spec))
        )
        pieces.append(MapPiece(spec, bp.prims))
        cover.append(CertPiece(spec, len(pieces) - 1))

    h = PieceMap(f.domain, f.codomain, tuple(pieces))
    backward = tuple(
        CertPiece(MappedSpec(h, pieces[i].spec, i), i) for i in range(len(pieces))
    )
    finite = k == 0
    cert = Certificate(
        subject=h,
        forward=tuple(cover),
        backward=backward,
        count_forward=len(pieces) if finite else OMEGA,
        count_backward=len(pieces) if finite else OMEGA,
        image=None,
        note=f"cantor-bernstein, {k} layers resolved at depth {depth}",
    )
    return h, cert


# ---------------------------------------------------------------------------
# Composition


def _mul_counts(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None or b is None:
        return OMEGA
    return a * b


def compose(c1: Certificate, c2: Certificate) -> Certificate:
    """Certificate for h2 after h1, with multiplied piece counts."""
    h1, h2 = c1.subject, c2.subject
    if h1.codomain != h2.domain:
        raise DomainMismatch("codomain of the first map must match the second's domain")
    if _is_identity_cert(c1) and h1.domain == h2.domain:
        return c2
    if _is_identity_cert(c2) and h2.codomain == h1.codomain:
        return replace(c1, subject=PieceMap(h1.domain, h2.codomain, h1.pieces))

    n2 = len(h2.pieces)
    pieces = []
    for p1 in h1.pieces:
        for p2 in h2.pieces:
            spec = IntersectSpec((p1.spec, PreimageSpec(p1.prims, p2.spec)))
            pieces.append(MapPiece(spec, p1.prims + p2.prims))
    h = PieceMap(h1.domain, h2.codomain, tuple(pieces))

    forward = tuple(
        CertPiece(
            IntersectSpec(
                (a.spec, PreimageSpec(h1.pieces[a.piece].prims, b.spec))
            ),
            a.piece * n2 + b.piece,
        )
        for a in c1.forward
        for b in c2.forward
    )
    backward = tuple(
        CertPiece(
            IntersectSpec(
                (b.spec, PreimageSpec(spec_inverse(h2.pieces[b.piece].prims), a.spec))
            ),
            a.piece * n2 + b.piece,
        )
        for a in c1.backward
        for b in c2.backward
    )
    image = None
    if c1.image is not None or c2.image is not None:
        image = image_of(h, WholeSpec())
    return Certificate(
        subject=h,
        forward=forward,
        backward=backward,
        count_forward=_mul_counts(c1.count_forward, c2.count_forward),
        count_backward=_mul_counts(c1.count_backward, c2.count_backward),
        image=image,
        note=f"({c1.note}) ; ({c2.note})",
    )
