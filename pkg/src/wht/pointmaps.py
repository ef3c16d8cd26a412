"""Primitive point maps, their compositions, and piecewise maps.

Every primitive knows how to act on prefixes (returning the maximal
determined output prefix), on eventually-periodic points (exactly), and
carries a syntactic modulus of continuity: inputs from its domain region
agreeing to depth m produce outputs agreeing to depth modulus(m).  All
primitives are invertible on their images, so certificates can be checked
in both directions.

Prefix evaluation is three-valued: a word (determined output), SHALLOW
(not enough input yet), or INCOMPAT (no point under this prefix lies in
the primitive's domain/image).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from .presentations import TreePresentation, admits, tuple_decode, tuple_encode
from .regions import (
    IntersectSpec,
    PeriodicPoint,
    SetSpec,
    interleave_points,
    point_admitted,
)

__all__ = [
    "INCOMPAT",
    "MapPrim",
    "Ident",
    "PrefixSub",
    "HeadPair",
    "HeadUnpair",
    "HeadAffine",
    "HeadAffineInv",
    "StreamArrange",
    "StreamArrangeInv",
    "family_index_shift",
    "MapSpec",
    "spec_eval_prefix",
    "spec_eval_point",
    "spec_modulus",
    "spec_inverse",
    "MapPiece",
    "PieceMap",
    "MappedSpec",
    "PreimageSpec",
]

Word = tuple[int, ...]


class _Incompat:
    def __repr__(self) -> str:
        return "INCOMPAT"


INCOMPAT = _Incompat()

PrefixResult = Union[Word, None, _Incompat]  # None = too shallow


class MapPrim:
    def eval_prefix(self, w: Word) -> PrefixResult:
        raise NotImplementedError

    def eval_point(self, p: PeriodicPoint) -> Optional[PeriodicPoint]:
        raise NotImplementedError

    def modulus(self, m: int) -> int:
        raise NotImplementedError

    def inverse(self) -> "MapPrim":
        raise NotImplementedError

    def describe(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class Ident(MapPrim):
    def eval_prefix(self, w: Word) -> PrefixResult:
        return w

    def eval_point(self, p: PeriodicPoint) -> PeriodicPoint:
        return p

    def modulus(self, m: int) -> int:
        return m

    def inverse(self) -> "Ident":
        return self

    def describe(self) -> str:
        return "id"


@dataclass(frozen=True)
class PrefixSub(MapPrim):
    """Replace the admitted prefix u by v; defined on points extending u.

    With u empty and v a single coordinate this is the sum-tag retag and
    the family-index shift (prepending one free coordinate moves the
    ev-zero family index up by one).
    """

    u: Word
    v: Word

    def eval_prefix(self, w: Word) -> PrefixResult:
        k = len(self.u)
        if len(w) < k:
            return None if w == self.u[: len(w)] else INCOMPAT
        if w[:k] != self.u:
            return INCOMPAT
        return self.v + w[k:]

    def eval_point(self, p: PeriodicPoint) -> Optional[PeriodicPoint]:
        if not p.extends(self.u):
            return None
        return p.drop(len(self.u)).prepend(self.v)

    def modulus(self, m: int) -> int:
        return len(self.v) + max(0, m - len(self.u))

    def inverse(self) -> "PrefixSub":
        return PrefixSub(self.v, self.u)

    def describe(self) -> str:
        return f"prefix({list(self.u)}->{list(self.v)})"


def family_index_shift(a: int = 0) -> PrefixSub:
    """Prepend one coordinate: sends the ev-zero family piece P_k into P_{k+1}."""
    return PrefixSub((), (a,))


@dataclass(frozen=True)
class HeadPair(MapPrim):
    """Merge the first r coordinates into one by the pairing bijection."""

    r: int

    def eval_prefix(self, w: Word) -> PrefixResult:
        if len(w) < self.r:
            return None
        return (tuple_encode(w[: self.r]),) + w[self.r :]

    def eval_point(self, p: PeriodicPoint) -> PeriodicPoint:
        head = p.prefix(self.r)
        return p.drop(self.r).prepend((tuple_encode(head),))

    def modulus(self, m: int) -> int:
        return 0 if m < self.r else m - self.r + 1

    def inverse(self) -> "HeadUnpair":
        return HeadUnpair(self.r)

    def describe(self) -> str:
        return f"headpair({self.r})"


@dataclass(frozen=True)
class HeadUnpair(MapPrim):
    r: int

    def eval_prefix(self, w: Word) -> PrefixResult:
        if not w:
            return None
        return tuple_decode(w[0], self.r) + w[1:]

    def eval_point(self, p: PeriodicPoint) -> PeriodicPoint:
        return p.drop(1).prepend(tuple_decode(p.at(0), self.r))

    def modulus(self, m: int) -> int:
        return 0 if m < 1 else m + self.r - 1

    def inverse(self) -> HeadPair:
        return HeadPair(self.r)

    def describe(self) -> str:
        return f"headunpair({self.r})"


@dataclass(frozen=True)
class HeadAffine(MapPrim):
    """x0 -> a*x0 + b on the head coordinate (a >= 1)."""

    a: int
    b: int

    def eval_prefix(self, w: Word) -> PrefixResult:
        if not w:
            return None
        return (self.a * w[0] + self.b,) + w[1:]

    def eval_point(self, p: PeriodicPoint) -> PeriodicPoint:
        return p.drop(1).prepend((self.a * p.at(0) + self.b,))

    def modulus(self, m: int) -> int:
        return m

    def inverse(self) -> "HeadAffineInv":
        return HeadAffineInv(self.a, self.b)

    def describe(self) -> str:
        return f"head({self.a}x+{self.b})"


@dataclass(frozen=True)
class HeadAffineInv(MapPrim):
    a: int
    b: int

    def eval_prefix(self, w: Word) -> PrefixResult:
        if not w:
            return None
        y = w[0] - self.b
        if y < 0 or y % self.a:
            return INCOMPAT
        return (y // self.a,) + w[1:]

    def eval_point(self, p: PeriodicPoint) -> Optional[PeriodicPoint]:
        y = p.at(0) - self.b
        if y < 0 or y % self.a:
            return None
        return p.drop(1).prepend((y // self.a,))

    def modulus(self, m: int) -> int:
        return m

    def inverse(self) -> HeadAffine:
        return HeadAffine(self.a, self.b)

    def describe(self) -> str:
        return f"head((x-{self.b})/{self.a})"


# ---------------------------------------------------------------------------
# Stream rearrangement
#
# The input point is read as in_arity interleaved streams (stream j sits
# on the positions congruent to j mod in_arity); each output stream either
# carries a constant point or a word-prefixed flat interleaving of some of
# the input streams.  Every input stream must be routed exactly once, so
# the map is injective and invertible on its image.  This subsumes the
# coordinate interleave/deinterleave combinators: expanding a space into
# one factor of a product is packing against constant partners, and
# deinterleaving is its inverse.

PackEntry = tuple  # ("pack", (in_idx, ...), prefix_word) | ("const", PeriodicPoint)


@dataclass(frozen=True)
class StreamArrange(MapPrim):
    in_arity: int
    out: tuple[PackEntry, ...]
    # streams that are a known constant on the piece this map serves;
    # checked on the way in, re-inserted by the inverse
    dropped: tuple[tuple[int, PeriodicPoint], ...] = ()

    def __post_init__(self) -> None:
        used: list[int] = [i for i, _ in self.dropped]
        packs = 0
        for e in self.out:
            if e[0] == "pack":
                packs += 1
                used.extend(e[1])
                if len(e) != 3:
                    raise ValueError("pack entry is ('pack', idxs, prefix)")
            elif e[0] != "const":
                raise ValueError(f"bad stream entry {e!r}")
        if sorted(used) != list(range(self.in_arity)):
            raise ValueError("every input stream must be routed or dropped exactly once")
        if not packs:
            raise ValueError("at least one input stream must be packed")

    # -- shared plumbing

    def _out_value(self, streams: list[Word], s: int, i: int) -> Optional[int]:
        e = self.out[s]
        if e[0] == "const":
            return e[1].at(i)
        _, idxs, pre = e
        if i < len(pre):
            return pre[i]
        t = i - len(pre)
        src = streams[idxs[t % len(idxs)]]
        q = t // len(idxs)
        return src[q] if q < len(src) else None

    def eval_prefix(self, w: Word) -> PrefixResult:
        r = self.in_arity
        streams = [w[j::r] for j in range(r)]
        for idx, const in self.dropped:
            s = streams[idx]
            if s != const.prefix(len(s)):
                return INCOMPAT
        out: list[int] = []
        s_count = len(self.out)
        p = 0
        while True:
            v = self._out_value(streams, p % s_count, p // s_count)
            if v is None:
                return tuple(out)
            out.append(v)
            p += 1

    def eval_point(self, p: PeriodicPoint) -> Optional[PeriodicPoint]:
        streams = [p.stream(j, self.in_arity) for j in range(self.in_arity)]
        for idx, const in self.dropped:
            if streams[idx] != const:
                return None
        outs: list[PeriodicPoint] = []
        for e in self.out:
            if e[0] == "const":
                outs.append(e[1])
            else:
                _, idxs, pre = e
                outs.append(
                    interleave_points([streams[i] for i in idxs]).prepend(pre)
                )
        return interleave_points(outs)

    def modulus(self, m: int) -> int:
        r = self.in_arity
        lens = [max(0, -(-(m - j) // r)) for j in range(r)]
        streams = [(0,) * L for L in lens]
        out = 0
        s_count = len(self.out)
        while self._out_value(streams, out % s_count, out // s_count) is not None:
            out += 1
        return out

    def inverse(self) -> "StreamArrangeInv":
        return StreamArrangeInv(self)

    def describe(self) -> str:
        parts = []
        for e in self.out:
            if e[0] == "const":
                parts.append(f"const {e[1]}")
            else:
                pre = list(e[2])
                parts.append(f"pack{list(e[1])}+{pre}" if pre else f"pack{list(e[1])}")
        return f"arrange[{self.in_arity}->{len(self.out)}: " + "; ".join(parts) + "]"


@dataclass(frozen=True)
class StreamArrangeInv(MapPrim):
    fwd: StreamArrange

    def eval_prefix(self, w: Word) -> PrefixResult:
        s_count = len(self.fwd.out)
        o_streams = [w[s::s_count] for s in range(s_count)]
        collected: dict[int, Word] = {}
        for s, e in enumerate(self.fwd.out):
            o = o_streams[s]
            if e[0] == "const":
                if o != e[1].prefix(len(o)):
                    return INCOMPAT
                continue
            _, idxs, pre = e
            n = min(len(o), len(pre))
            if o[:n] != pre[:n]:
                return INCOMPAT
            body = o[len(pre):]
            for t, idx in enumerate(idxs):
                collected[idx] = body[t :: len(idxs)]
        dropped = dict(self.fwd.dropped)
        r = self.fwd.in_arity
        out: list[int] = []
        p = 0
        while True:
            j, q = p % r, p // r
            if j in dropped:
                out.append(dropped[j].at(q))
            else:
                src = collected.get(j, ())
                if q >= len(src):
                    return tuple(out)
                out.append(src[q])
            p += 1

    def eval_point(self, p: PeriodicPoint) -> Optional[PeriodicPoint]:
        s_count = len(self.fwd.out)
        streams: dict[int, PeriodicPoint] = dict(self.fwd.dropped)
        for s, e in enumerate(self.fwd.out):
            o = p.stream(s, s_count)
            if e[0] == "const":
                if o != e[1]:
                    return None
                continue
            _, idxs, pre = e
            if not o.extends(pre):
                return None
            body = o.drop(len(pre))
            for t, idx in enumerate(idxs):
                streams[idx] = body.stream(t, len(idxs))
        return interleave_points(
            [streams[j] for j in range(self.fwd.in_arity)]
        )

    def modulus(self, m: int) -> int:
        s_count = len(self.fwd.out)
        o_lens = [max(0, -(-(m - s) // s_count)) for s in range(s_count)]
        lens: dict[int, int] = {}
        for s, e in enumerate(self.fwd.out):
            if e[0] == "const":
                continue
            _, idxs, pre = e
            body = max(0, o_lens[s] - len(pre))
            for t, idx in enumerate(idxs):
                lens[idx] = max(0, -(-(body - t) // len(idxs)))
        dropped = {i for i, _ in self.fwd.dropped}
        r = self.fwd.in_arity
        out = 0
        while True:
            j, q = out % r, out // r
            if j not in dropped and q >= lens.get(j, 0):
                return out
            out += 1

    def inverse(self) -> StreamArrange:
        return self.fwd

    def describe(self) -> str:
        return f"inv {self.fwd.describe()}"


# ---------------------------------------------------------------------------
# Compositions


MapSpec = tuple[MapPrim, ...]


def spec_eval_prefix(spec: MapSpec, w: Word) -> PrefixResult:
    cur: PrefixResult = w
    for prim in spec:
        if cur is None or cur is INCOMPAT:
            return cur
        cur = prim.eval_prefix(cur)
    return cur


def spec_eval_point(spec: MapSpec, p: PeriodicPoint) -> Optional[PeriodicPoint]:
    cur: Optional[PeriodicPoint] = p
    for prim in spec:
        if cur is None:
            return None
        cur = prim.eval_point(cur)
    return cur


def spec_modulus(spec: MapSpec, m: int) -> int:
    for prim in spec:
        m = prim.modulus(m)
    return m


@lru_cache(maxsize=4096)
def spec_inverse(spec: MapSpec) -> MapSpec:
    return tuple(prim.inverse() for prim in reversed(spec))


def spec_describe(spec: MapSpec) -> str:
    return " ; ".join(p.describe() for p in spec) if spec else "id"


# ---------------------------------------------------------------------------
# Piecewise maps


@dataclass(frozen=True)
class MapPiece:
    spec: SetSpec
    prims: MapSpec


@dataclass(frozen=True)
class PieceMap:
    domain: TreePresentation
    codomain: TreePresentation
    pieces: tuple[MapPiece, ...]

    def eval_prefix(self, w: Word) -> list[tuple[int, PrefixResult]]:
        """Outputs of every piece whose region might contain points under w."""
        out = []
        for i, piece in enumerate(self.pieces):
            if piece.spec.meets(w):
                out.append((i, spec_eval_prefix(piece.prims, w)))
        return out

    def apply_point(self, p: PeriodicPoint) -> Optional[tuple[int, PeriodicPoint]]:
        for i, piece in enumerate(self.pieces):
            if piece.spec.contains_point(p):
                q = spec_eval_point(piece.prims, p)
                if q is not None:
                    return i, q
        return None

    def inverse(self) -> "PieceMap":
        """Inverse of an (assumed) bijective-onto-image piece map."""
        inv_pieces = tuple(
            MapPiece(MappedSpec(self, piece.spec, i), spec_inverse(piece.prims))
            for i, piece in enumerate(self.pieces)
        )
        return PieceMap(self.codomain, self.domain, inv_pieces)

    def image_spec(self) -> SetSpec:
        from .regions import UnionSpec

        if len(self.pieces) == 1:
            return MappedSpec(self, self.pieces[0].spec, 0)
        return UnionSpec(
            tuple(MappedSpec(self, p.spec, i) for i, p in enumerate(self.pieces))
        )


@dataclass(frozen=True)
class MappedSpec(SetSpec):
    """Image of (inner restricted to one piece region) under a piece map."""

    pmap: PieceMap
    inner: SetSpec
    piece: int

    def _inv(self) -> MapSpec:
        return spec_inverse(self.pmap.pieces[self.piece].prims)

    def meets(self, w: Word) -> bool:
        tau = spec_eval_prefix(self._inv(), w)
        if tau is INCOMPAT:
            return False
        if tau is None:
            return True  # too shallow to refute
        piece = self.pmap.pieces[self.piece]
        return (
            admits(self.pmap.domain, tau)
            and piece.spec.meets(tau)
            and self.inner.meets(tau)
        )

    def contains_cyl(self, w: Word) -> bool:
        return False

    def contains_point(self, p: PeriodicPoint) -> bool:
        q = spec_eval_point(self._inv(), p)
        if q is None:
            return False
        piece = self.pmap.pieces[self.piece]
        if not (
            point_admitted(self.pmap.domain, q)
            and piece.spec.contains_point(q)
            and self.inner.contains_point(q)
        ):
            return False
        back = spec_eval_point(piece.prims, q)
        return back == p

    def sample_points(self) -> Optional[tuple[PeriodicPoint, ...]]:
        pts = IntersectSpec(
            (self.inner, self.pmap.pieces[self.piece].spec)
        ).sample_points()
        if pts is None:
            return None
        out = []
        for q in pts:
            if not point_admitted(self.pmap.domain, q):
                continue
            img = spec_eval_point(self.pmap.pieces[self.piece].prims, q)
            if img is not None:
                out.append(img)
        return tuple(out)

    def describe(self) -> str:
        return f"image[{self.piece}]({self.inner.describe()})"


@dataclass(frozen=True)
class PreimageSpec(SetSpec):
    """Points whose image under a map spec lands in the target set."""

    prims: MapSpec
    target: SetSpec

    def meets(self, w: Word) -> bool:
        o = spec_eval_prefix(self.prims, w)
        if o is INCOMPAT:
            return False
        if o is None:
            return True
        return self.target.meets(o)

    def contains_cyl(self, w: Word) -> bool:
        o = spec_eval_prefix(self.prims, w)
        if o is None or o is INCOMPAT:
            return False
        return self.target.contains_cyl(o)

    def contains_point(self, p: PeriodicPoint) -> bool:
        q = spec_eval_point(self.prims, p)
        return q is not None and self.target.contains_point(q)

    def describe(self) -> str:
        return f"preimage({self.target.describe()})"
