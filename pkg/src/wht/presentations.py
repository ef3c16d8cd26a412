"""Concrete realizations of terms as subsets of Baire space.

Each piece is a pruned, deterministically-labelled automaton whose branch
set is a nonempty closed subset of N^w; a presentation is a finite list of
pieces plus at most one N-indexed family of pieces, and denotes the union
of all branch sets (an F_sigma set).  Canonical choices: 2^w is the binary
full shift, N^w the free shift, w and fin(n) are head-then-zeros, and Q is
the family of "free for k steps, then zeros" pieces, whose union is the
eventually-zero points (countable and without isolated points, hence a
copy of the rationals).

Products interleave coordinates; a monomial with r factors puts factor j
on the positions congruent to j mod r, and the binary product operation
uses even/odd positions.  Sums prefix a tag coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .algebra import Monomial, NormalForm, render

__all__ = [
    "LabelRange",
    "LabelFrom",
    "LabelSet",
    "PieceGen",
    "PieceFamily",
    "TreePresentation",
    "UnknownForFamily",
    "present",
    "sum_presentation",
    "product_presentation",
    "decide_compact",
    "resolve_compact",
    "decide_uncountable",
    "uncountable_witness",
    "enumerate_depth",
    "isolated_points_upto",
    "admits",
    "serialize_presentation",
    "pair",
    "unpair",
]

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# Label sets: finite ranges {a..b} and cofinite tails {n >= k}.


@dataclass(frozen=True)
class LabelRange:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not (0 <= self.lo <= self.hi):
            raise ValueError("bad label range")

    def contains(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    @property
    def finite(self) -> bool:
        return True

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def bounded(self, B: int) -> range:
        return range(self.lo, min(self.hi, B) + 1)

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


@dataclass(frozen=True)
class LabelFrom:
    lo: int

    def __post_init__(self) -> None:
        if self.lo < 0:
            raise ValueError("bad label tail")

    def contains(self, x: int) -> bool:
        return x >= self.lo

    @property
    def finite(self) -> bool:
        return False

    @property
    def size(self) -> float:
        return float("inf")

    def bounded(self, B: int) -> range:
        return range(self.lo, B + 1)

    def __str__(self) -> str:
        return f">={self.lo}"


LabelSet = Union[LabelRange, LabelFrom]


def _labels_disjoint(a: LabelSet, b: LabelSet) -> bool:
    a_hi = a.hi if isinstance(a, LabelRange) else None
    b_hi = b.hi if isinstance(b, LabelRange) else None
    if a_hi is None and b_hi is None:
        return False
    if a_hi is None:
        return b_hi < a.lo
    if b_hi is None:
        return a_hi < b.lo
    return a_hi < b.lo or b_hi < a.lo


# ---------------------------------------------------------------------------
# Pieces


Transition = tuple[LabelSet, int]


@dataclass(frozen=True)
class PieceGen:
    """Pruned automaton; state s admits the labels of trans[s]."""

    trans: tuple[tuple[Transition, ...], ...]
    start: int = 0

    def __post_init__(self) -> None:
        for s, ts in enumerate(self.trans):
            if not ts:
                raise ValueError(f"state {s} has no outgoing transition (not pruned)")
            for i in range(len(ts)):
                if not (0 <= ts[i][1] < len(self.trans)):
                    raise ValueError("dangling transition target")
                for j in range(i + 1, len(ts)):
                    if not _labels_disjoint(ts[i][0], ts[j][0]):
                        raise ValueError(f"overlapping label sets at state {s}")
        if not (0 <= self.start < len(self.trans)):
            raise ValueError("bad start state")

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def step(self, s: int, x: int) -> Optional[int]:
        for lab, t in self.trans[s]:
            if lab.contains(x):
                return t
        return None

    def admits(self, word: Sequence[int]) -> bool:
        s = self.start
        for x in word:
            s = self.step(s, x)
            if s is None:
                return False
        return True

    def enumerate(self, d: int, B: int) -> list[Word]:
        out: list[Word] = []
        stack: list[tuple[int, Word]] = [(self.start, ())]
        while stack:
            s, w = stack.pop()
            if len(w) == d:
                out.append(w)
                continue
            for lab, t in self.trans[s]:
                for x in lab.bounded(B):
                    stack.append((t, w + (x,)))
        return out

    def is_finitely_branching(self) -> bool:
        return all(lab.finite for ts in self.trans for lab, _ in ts)


def _bfs_canonical(trans_map: dict, start) -> PieceGen:
    """Renumber an arbitrary-keyed automaton in BFS order."""
    order = {start: 0}
    queue = [start]
    while queue:
        s = queue.pop(0)
        for _, t in trans_map[s]:
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    table: list[tuple[Transition, ...]] = [() for _ in order]
    for s, idx in order.items():
        table[idx] = tuple((lab, order[t]) for lab, t in trans_map[s])
    return PieceGen(tuple(table), 0)


# Atom pieces ---------------------------------------------------------------


def cantor_piece() -> PieceGen:
    return PieceGen(((((LabelRange(0, 1), 0),)),))


def baire_piece() -> PieceGen:
    return PieceGen(((((LabelFrom(0), 0),)),))


def omega_piece() -> PieceGen:
    return PieceGen((((LabelFrom(0), 1),), ((LabelRange(0, 0), 1),)))


def fin_piece(n: int) -> PieceGen:
    return PieceGen((((LabelRange(0, n - 1), 1),), ((LabelRange(0, 0), 1),)))


def q_instance(k: int) -> PieceGen:
    """Free for the first k steps, forced zero afterwards."""
    if k == 0:
        return PieceGen((((LabelRange(0, 0), 0),),))
    rows = [((LabelFrom(0), i + 1),) for i in range(k)]
    rows.append(((LabelRange(0, 0), k),))
    return PieceGen(tuple(rows))


def tag_piece(piece: PieceGen, tag: int) -> PieceGen:
    rows = [((LabelRange(tag, tag), piece.start + 1),)]
    for ts in piece.trans:
        rows.append(tuple((lab, t + 1) for lab, t in ts))
    return PieceGen(tuple(rows), 0)


def interleave_pieces(parts: Sequence[PieceGen]) -> PieceGen:
    """Flat product: factor j reads the positions congruent to j mod r."""
    r = len(parts)
    if r == 1:
        return parts[0]
    start = (0,) + tuple(p.start for p in parts)
    trans_map: dict = {}
    stack = [start]
    while stack:
        st = stack.pop()
        if st in trans_map:
            continue
        turn, states = st[0], st[1:]
        outs = []
        for lab, t in parts[turn].trans[states[turn]]:
            nxt_states = states[:turn] + (t,) + states[turn + 1 :]
            nxt = ((turn + 1) % r,) + nxt_states
            outs.append((lab, nxt))
            stack.append(nxt)
        trans_map[st] = outs
    return _bfs_canonical(trans_map, start)


# ---------------------------------------------------------------------------
# Families


def pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def unpair(m: int) -> tuple[int, int]:
    w = 0
    while (w + 1) * (w + 2) // 2 <= m:
        w += 1
    j = m - w * (w + 1) // 2
    return w - j, j


def tuple_encode(ks: Sequence[int]) -> int:
    out = ks[0]
    for k in ks[1:]:
        out = pair(out, k)
    return out


def tuple_decode(m: int, t: int) -> tuple[int, ...]:
    out = []
    for _ in range(t - 1):
        m, j = unpair(m)
        out.append(j)
    out.append(m)
    return tuple(reversed(out))


class PieceFamily:
    """N-indexed family of pieces with an exact finite depth cover."""

    def instance(self, k: int) -> PieceGen:
        raise NotImplementedError

    def depth_cover(self, d: int) -> tuple[int, ...]:
        """Indices whose depth-d prefixes exhaust the whole family's."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class QFamily(PieceFamily):
    def instance(self, k: int) -> PieceGen:
        return q_instance(k)

    def depth_cover(self, d: int) -> tuple[int, ...]:
        return (d,)  # P_d is free on all of the first d coordinates

    def describe(self) -> str:
        return "ev-zero family P_k (free k steps, then 0)"


@dataclass(frozen=True)
class MonomialFamily(PieceFamily):
    """Flat interleave of a monomial's atom pieces with Q slots parametric."""

    fixed: tuple[Optional[PieceGen], ...]  # None marks a Q slot
    q_slots: tuple[int, ...]

    def instance(self, k: int) -> PieceGen:
        ks = tuple_decode(k, len(self.q_slots))
        parts = list(self.fixed)
        for slot, ki in zip(self.q_slots, ks):
            parts[slot] = q_instance(ki)
        return interleave_pieces(parts)  # type: ignore[arg-type]

    def depth_cover(self, d: int) -> tuple[int, ...]:
        r = len(self.fixed)
        need = -(-d // r)  # ceil: letters each stream may consume
        return (tuple_encode([need] * len(self.q_slots)),)

    def describe(self) -> str:
        slots = ",".join(str(s) for s in self.q_slots)
        return f"monomial family: {len(self.fixed)} streams, Q at [{slots}]"


@dataclass(frozen=True)
class TaggedFamily(PieceFamily):
    tag: int
    base: PieceFamily

    def instance(self, k: int) -> PieceGen:
        return tag_piece(self.base.instance(k), self.tag)

    def depth_cover(self, d: int) -> tuple[int, ...]:
        return self.base.depth_cover(max(d - 1, 0))

    def describe(self) -> str:
        return f"tag {self.tag} . ({self.base.describe()})"


@dataclass(frozen=True)
class MergedFamily(PieceFamily):
    parts: tuple[PieceFamily, ...]

    def instance(self, k: int) -> PieceGen:
        r = k % len(self.parts)
        return self.parts[r].instance(k // len(self.parts))

    def depth_cover(self, d: int) -> tuple[int, ...]:
        n = len(self.parts)
        out = []
        for r, p in enumerate(self.parts):
            out.extend(i * n + r for i in p.depth_cover(d))
        return tuple(sorted(out))

    def describe(self) -> str:
        return " | ".join(p.describe() for p in self.parts)


@dataclass(frozen=True)
class ProductWithPiece(PieceFamily):
    """Binary (even/odd) product of a family with a fixed piece."""

    fam: PieceFamily
    piece: PieceGen
    fam_side: int  # 0: family reads even positions, 1: odd

    def instance(self, k: int) -> PieceGen:
        f = self.fam.instance(k)
        parts = (f, self.piece) if self.fam_side == 0 else (self.piece, f)
        return interleave_pieces(parts)

    def depth_cover(self, d: int) -> tuple[int, ...]:
        consumed = -(-d // 2) if self.fam_side == 0 else d // 2
        return self.fam.depth_cover(consumed)

    def describe(self) -> str:
        side = "even" if self.fam_side == 0 else "odd"
        return f"({self.fam.describe()}) x piece, family on {side}"


@dataclass(frozen=True)
class ProductFamilies(PieceFamily):
    left: PieceFamily
    right: PieceFamily

    def instance(self, k: int) -> PieceGen:
        i, j = unpair(k)
        return interleave_pieces((self.left.instance(i), self.right.instance(j)))

    def depth_cover(self, d: int) -> tuple[int, ...]:
        ls = self.left.depth_cover(-(-d // 2))
        rs = self.right.depth_cover(d // 2)
        return tuple(sorted(pair(i, j) for i in ls for j in rs))

    def describe(self) -> str:
        return f"({self.left.describe()}) x ({self.right.describe()})"


# ---------------------------------------------------------------------------
# Presentations


class UnknownForFamily(Exception):
    """An N-indexed family prevented an exact decision."""


@dataclass(frozen=True)
class TreePresentation:
    pieces: tuple[PieceGen, ...]
    family: Optional[PieceFamily] = None
    label: str = ""

    @property
    def is_empty(self) -> bool:
        return not self.pieces and self.family is None

    def family_instances(self, ks: Iterable[int]) -> list[PieceGen]:
        if self.family is None:
            return []
        return [family_instance(self.family, k) for k in ks]


def _monomial_presentation(m: Monomial) -> TreePresentation:
    parts: list[Optional[PieceGen]] = []
    q_slots: list[int] = []
    for _ in range(m.rationals):
        q_slots.append(len(parts))
        parts.append(None)
    parts.extend(baire_piece() for _ in range(m.baire))
    parts.extend(cantor_piece() for _ in range(m.cantor))
    parts.extend(omega_piece() for _ in range(m.omega))
    if m.fin > 1 or m.is_pure_fin:
        parts.append(fin_piece(m.fin))
    if not q_slots:
        return TreePresentation((interleave_pieces(parts),), None, str(m))
    if len(parts) == 1:
        return TreePresentation((), QFamily(), str(m))
    fam = MonomialFamily(tuple(parts), tuple(q_slots))
    return TreePresentation((), fam, str(m))


def present(nf: NormalForm) -> TreePresentation:
    """Canonical presentation of a normal form.

    Monomials interleave their factors over residue classes of positions;
    a sum prefixes each monomial's pieces with its index as a tag
    coordinate.  The result has at most one piece family (merged).
    """
    monos = [_monomial_presentation(m) for m in nf.monomials]
    if not monos:
        return TreePresentation((), None, "0")
    if len(monos) == 1:
        return TreePresentation(monos[0].pieces, monos[0].family, render(nf))
    pieces: list[PieceGen] = []
    fams: list[PieceFamily] = []
    for i, mp in enumerate(monos):
        pieces.extend(tag_piece(p, i) for p in mp.pieces)
        if mp.family is not None:
            fams.append(TaggedFamily(i, mp.family))
    fam: Optional[PieceFamily] = None
    if len(fams) == 1:
        fam = fams[0]
    elif fams:
        fam = MergedFamily(tuple(fams))
    return TreePresentation(tuple(pieces), fam, render(nf))


def sum_presentation(p: TreePresentation, q: TreePresentation) -> TreePresentation:
    """Disjoint sum: p's pieces behind tag 0, q's behind tag 1."""
    pieces = tuple(tag_piece(x, 0) for x in p.pieces) + tuple(
        tag_piece(x, 1) for x in q.pieces
    )
    fams: list[PieceFamily] = []
    if p.family is not None:
        fams.append(TaggedFamily(0, p.family))
    if q.family is not None:
        fams.append(TaggedFamily(1, q.family))
    fam: Optional[PieceFamily] = None
    if len(fams) == 1:
        fam = fams[0]
    elif fams:
        fam = MergedFamily(tuple(fams))
    return TreePresentation(pieces, fam, f"({p.label}) + ({q.label})")


def product_presentation(p: TreePresentation, q: TreePresentation) -> TreePresentation:
    """Coordinate interleaving: p on even positions, q on odd."""
    if p.is_empty or q.is_empty:
        return TreePresentation((), None, "0")
    pieces = tuple(
        interleave_pieces((a, b)) for a in p.pieces for b in q.pieces
    )
    fams: list[PieceFamily] = []
    if p.family is not None:
        fams.extend(ProductWithPiece(p.family, b, 0) for b in q.pieces)
    if q.family is not None:
        fams.extend(ProductWithPiece(q.family, a, 1) for a in p.pieces)
    if p.family is not None and q.family is not None:
        fams.append(ProductFamilies(p.family, q.family))
    fam: Optional[PieceFamily] = None
    if len(fams) == 1:
        fam = fams[0]
    elif fams:
        fam = MergedFamily(tuple(fams))
    return TreePresentation(pieces, fam, f"({p.label}) * ({q.label})")


# ---------------------------------------------------------------------------
# Deciders

_FAMILY_PROBE = (0, 1, 2, 3)


def decide_compact(p: TreePresentation) -> bool:
    """Exact compactness for family-free presentations.

    Branch sets are compact iff finitely branching, and a finite union of
    compact sets is compact; an N-indexed family forces UnknownForFamily.
    """
    if p.family is not None:
        raise UnknownForFamily(p.family.describe())
    return all(piece.is_finitely_branching() for piece in p.pieces)


def resolve_compact(p: TreePresentation, probe: Sequence[int] = _FAMILY_PROBE) -> bool:
    """Compactness wrapper that resolves families through probe instances.

    A noncompact probed instance is a closed noncompact subset, so the
    union is noncompact.  If every probe looks compact the family remains
    undecided and UnknownForFamily propagates.
    """
    if p.family is None:
        return decide_compact(p)
    if not all(piece.is_finitely_branching() for piece in p.pieces):
        return False
    if any(not g.is_finitely_branching() for g in p.family_instances(probe)):
        return False
    raise UnknownForFamily(p.family.describe())


def _sccs(piece: PieceGen) -> list[set[int]]:
    # Tarjan, iterative
    n = piece.n_states
    adj = [[t for _, t in ts] for ts in piece.trans]
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[set[int]] = []
    counter = [0]

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                out.append(comp)
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return out


def _piece_uncountable_scc(piece: PieceGen) -> Optional[set[int]]:
    """An SCC witnessing a perfect subtree, or None if countable.

    The branch set is uncountable iff some strongly connected component
    carries either a multi-label transition or a state with two distinct
    in-component exits; otherwise every path is a finite sequence of
    countable choices and the set is countable.
    """
    for comp in _sccs(piece):
        internal = [
            (s, lab, t)
            for s in comp
            for lab, t in piece.trans[s]
            if t in comp
        ]
        if not internal:
            continue
        if any(not lab.finite or lab.size >= 2 for _, lab, _ in internal):
            return comp
        exits: dict[int, int] = {}
        for s, _, _ in internal:
            exits[s] = exits.get(s, 0) + 1
        if any(cnt >= 2 for cnt in exits.values()):
            return comp
    return None


def piece_uncountable(piece: PieceGen) -> bool:
    return _piece_uncountable_scc(piece) is not None


def decide_uncountable(
    p: TreePresentation, probe: Sequence[int] = _FAMILY_PROBE
) -> bool:
    """Uncountability via perfect-subtree pumping, piece by piece.

    Families contribute countable unions, so with every probed instance
    countable (instances of our families are cardinality-uniform in the
    index) the family adds only countably many points.
    """
    if any(piece_uncountable(piece) for piece in p.pieces):
        return True
    return any(piece_uncountable(g) for g in p.family_instances(probe))


def uncountable_witness(piece: PieceGen) -> Optional[tuple[Word, Word, Word]]:
    """(access, u, v): u, v are prefix-incomparable pumping words at the
    state reached by access; every {u,v}-concatenation is admitted."""
    comp = _piece_uncountable_scc(piece)
    if comp is None:
        return None

    def min_label(lab: LabelSet) -> int:
        return lab.lo

    def path_word(src: int, dst: int, inside: set[int]) -> Optional[Word]:
        # BFS within `inside`; empty word when src == dst
        if src == dst:
            return ()
        prev: dict[int, tuple[int, int]] = {}
        queue = [src]
        seen = {src}
        while queue:
            s = queue.pop(0)
            for lab, t in piece.trans[s]:
                if t not in inside or t in seen:
                    continue
                prev[t] = (s, min_label(lab))
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

    # access word from the start into the component
    access: Optional[Word] = None
    base: Optional[int] = None
    prev: dict[int, tuple[int, int]] = {}
    queue = [piece.start]
    seen = {piece.start}
    if piece.start in comp:
        access, base = (), piece.start
    while queue and access is None:
        s = queue.pop(0)
        for lab, t in piece.trans[s]:
            if t in seen:
                continue
            prev[t] = (s, min_label(lab))
            seen.add(t)
            if t in comp:
                word = []
                cur = t
                while cur != piece.start:
                    ps, x = prev[cur]
                    word.append(x)
                    cur = ps
                access, base = tuple(reversed(word)), t
                break
            queue.append(t)
    assert access is not None and base is not None

    # two incomparable pumping words based at `base`
    for s in comp:
        multi = [
            (lab, t)
            for lab, t in piece.trans[s]
            if t in comp and (not lab.finite or lab.size >= 2)
        ]
        if multi:
            lab, t = multi[0]
            x0 = lab.lo
            x1 = lab.lo + 1
            into = path_word(base, s, comp)
            back = path_word(t, base, comp)
            u = into + (x0,) + back
            v = into + (x1,) + back
            return access, u, v
    for s in comp:
        inside = [(lab, t) for lab, t in piece.trans[s] if t in comp]
        if len(inside) >= 2:
            (la, ta), (lb, tb) = inside[0], inside[1]
            into = path_word(base, s, comp)
            u = into + (la.lo,) + path_word(ta, base, comp)
            v = into + (lb.lo,) + path_word(tb, base, comp)
            return access, u, v
    return None


# ---------------------------------------------------------------------------
# Finite-depth oracles


@lru_cache(maxsize=65536)
def family_instance(fam: PieceFamily, k: int) -> PieceGen:
    """Cached family member; instances are pure functions of (family, k)."""
    return fam.instance(k)


def _cover_pieces(p: TreePresentation, d: int) -> list[PieceGen]:
    pieces = list(p.pieces)
    if p.family is not None:
        pieces.extend(family_instance(p.family, k) for k in p.family.depth_cover(d))
    return pieces


def enumerate_depth(p: TreePresentation, d: int, B: int) -> list[Word]:
    """All admitted length-d label words with labels <= B, sorted."""
    if d < 0 or B < 0:
        raise ValueError("need d >= 0 and B >= 0")
    words: set[Word] = set()
    for piece in _cover_pieces(p, d):
        words.update(piece.enumerate(d, B))
    return sorted(words)


@lru_cache(maxsize=1 << 19)
def _admits_cached(p: TreePresentation, word: Word) -> bool:
    return any(piece.admits(word) for piece in _cover_pieces(p, len(word)))


def admits(p: TreePresentation, word: Sequence[int]) -> bool:
    """Does some piece (or family member) admit this prefix?"""
    return _admits_cached(p, tuple(word))


def isolated_points_upto(p: TreePresentation, d: int, B: int) -> list[Word]:
    """Prefixes (length < d) with exactly one admitted depth-d extension.

    Candidates for isolated points, valid at this depth and bound only;
    refuting perfectness needs the limit, so callers treat the output as
    depth-stamped evidence.
    """
    words = enumerate_depth(p, d, B)
    counts: dict[Word, int] = {}
    for w in words:
        for j in range(d):
            pre = w[:j]
            counts[pre] = counts.get(pre, 0) + 1
    return sorted(pre for pre, c in counts.items() if c == 1)


# ---------------------------------------------------------------------------
# Serialization (structured text; golden-tested)


def _piece_lines(piece: PieceGen, indent: str) -> list[str]:
    out = [f"{indent}states: {piece.n_states}", f"{indent}start: {piece.start}"]
    for s, ts in enumerate(piece.trans):
        for lab, t in ts:
            out.append(f"{indent}trans: {s} --{lab}--> {t}")
    return out


def serialize_presentation(
    p: TreePresentation, instances: Sequence[int] = (0, 1, 2)
) -> str:
    """Canonical text rendering of a presentation."""
    lines = ["presentation {"]
    if p.label:
        lines.append(f"  term: {p.label}")
    lines.append(f"  pieces: {len(p.pieces)}")
    for i, piece in enumerate(p.pieces):
        lines.append(f"  piece {i} {{")
        lines.extend(_piece_lines(piece, "    "))
        lines.append("  }")
    if p.family is not None:
        lines.append(f"  family: {p.family.describe()}")
        for k in instances:
            lines.append(f"  family instance (param k={k}) {{")
            lines.extend(_piece_lines(p.family.instance(k), "    "))
            lines.append("  }")
    lines.append("}")
    return "\n".join(lines)
