"""Points and presentation-definable subsets used by the certificate layer.

Eventually-periodic points are the finitely-describable residents of a
presentation; set specs describe subsets of a presented space with three
depth-honest queries: `meets` (could a point of the set extend this
prefix), `contains_cyl` (does the set definitely contain every admitted
point under the prefix) and `contains_point` (exact membership for
eventually-periodic points).  `meets` may err on the side of True for
specs that are only enumerable in the limit; refutation-style checks only
ever use the sound directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .presentations import PieceGen, TreePresentation, family_instance

__all__ = [
    "PeriodicPoint",
    "interleave_points",
    "zeros",
    "point_admitted",
    "SetSpec",
    "WholeSpec",
    "EmptySpec",
    "CylSpec",
    "CoordSpec",
    "PointSpec",
    "UnionSpec",
    "IntersectSpec",
    "DiffSpec",
    "closure_approx",
]

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# Eventually periodic points


def _primitive_period(cycle: Word) -> Word:
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle == cycle[:p] * (n // p):
            return cycle[:p]
    return cycle


@dataclass(frozen=True)
class PeriodicPoint:
    """The point pre + cycle + cycle + ... of Baire space."""

    pre: Word
    cycle: Word

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        cyc = _primitive_period(self.cycle)
        pre = self.pre
        # canonical form: shortest preperiod, primitive rotation
        while pre and pre[-1] == cyc[-1]:
            pre = pre[:-1]
            cyc = cyc[-1:] + cyc[:-1]
        object.__setattr__(self, "pre", tuple(pre))
        object.__setattr__(self, "cycle", tuple(cyc))

    def prefix(self, n: int) -> Word:
        if n <= len(self.pre):
            return self.pre[:n]
        need = n - len(self.pre)
        reps = -(-need // len(self.cycle))
        return (self.pre + self.cycle * reps)[:n]

    def at(self, i: int) -> int:
        if i < len(self.pre):
            return self.pre[i]
        return self.cycle[(i - len(self.pre)) % len(self.cycle)]

    def extends(self, w: Word) -> bool:
        return self.prefix(len(w)) == w

    def drop(self, k: int) -> "PeriodicPoint":
        """The tail point after removing the first k coordinates."""
        if k <= len(self.pre):
            return PeriodicPoint(self.pre[k:], self.cycle)
        shift = (k - len(self.pre)) % len(self.cycle)
        return PeriodicPoint((), self.cycle[shift:] + self.cycle[:shift])

    def prepend(self, w: Word) -> "PeriodicPoint":
        return PeriodicPoint(tuple(w) + self.pre, self.cycle)

    def stream(self, j: int, arity: int) -> "PeriodicPoint":
        """The subsequence at positions congruent to j mod arity."""
        pre_len = max(0, -(-(len(self.pre) - j) // arity))
        cyc_len = len(self.cycle) // gcd(arity, len(self.cycle))
        pre = tuple(self.at(j + arity * t) for t in range(pre_len))
        cyc = tuple(
            self.at(j + arity * (pre_len + t)) for t in range(cyc_len)
        )
        return PeriodicPoint(pre, cyc)

    def __str__(self) -> str:
        pre = ",".join(map(str, self.pre))
        cyc = ",".join(map(str, self.cycle))
        return f"({pre})({cyc})^w" if pre else f"({cyc})^w"


def interleave_points(parts: Sequence[PeriodicPoint]) -> PeriodicPoint:
    """Flat interleaving of r points into one (stream j = part j)."""
    r = len(parts)
    if r == 1:
        return parts[0]
    pre_len = max(len(p.pre) for p in parts)
    cyc_len = 1
    for p in parts:
        cyc_len = cyc_len * len(p.cycle) // gcd(cyc_len, len(p.cycle))
    pre = tuple(parts[i % r].at(i // r) for i in range(r * pre_len))
    cyc = tuple(
        parts[i % r].at(pre_len + (i // r)) for i in range(r * cyc_len)
    )
    return PeriodicPoint(pre, cyc)


def zeros() -> PeriodicPoint:
    return PeriodicPoint((), (0,))


def _piece_admits_point(piece: PieceGen, p: PeriodicPoint) -> bool:
    # Surviving len(pre) + |cycle| * (n_states + 1) steps pins a repeating
    # (cycle-phase, state) pair, so the walk continues forever.
    horizon = len(p.pre) + len(p.cycle) * (piece.n_states + 1)
    return piece.admits(p.prefix(horizon))


@lru_cache(maxsize=1 << 16)
def point_admitted(pres: TreePresentation, p: PeriodicPoint) -> bool:
    """Exact membership of an eventually-periodic point in the denoted set.

    Families are probed through their depth cover at a horizon past the
    point's preperiod; the cover instances are index-monotone (each
    contains its predecessors), so admission by any member implies
    admission by the probed one.
    """
    if any(_piece_admits_point(piece, p) for piece in pres.pieces):
        return True
    if pres.family is None:
        return False
    horizon = len(p.pre) + len(p.cycle) * 64 + 8
    for k in pres.family.depth_cover(horizon):
        if _piece_admits_point(family_instance(pres.family, k), p):
            return True
    return False


# ---------------------------------------------------------------------------
# Set specs


def _compatible(a: Word, b: Word) -> bool:
    n = min(len(a), len(b))
    return a[:n] == b[:n]


class SetSpec:
    def meets(self, w: Word) -> bool:
        raise NotImplementedError

    def contains_cyl(self, w: Word) -> bool:
        raise NotImplementedError

    def contains_point(self, p: PeriodicPoint) -> bool:
        raise NotImplementedError

    def sample_points(self) -> Optional[tuple[PeriodicPoint, ...]]:
        """All points of the set when finitely enumerable, else None."""
        return None

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class WholeSpec(SetSpec):
    def meets(self, w: Word) -> bool:
        return True

    def contains_cyl(self, w: Word) -> bool:
        return True

    def contains_point(self, p: PeriodicPoint) -> bool:
        return True

    def describe(self) -> str:
        return "whole"


@dataclass(frozen=True)
class EmptySpec(SetSpec):
    def meets(self, w: Word) -> bool:
        return False

    def contains_cyl(self, w: Word) -> bool:
        return False

    def contains_point(self, p: PeriodicPoint) -> bool:
        return False

    def sample_points(self) -> tuple[PeriodicPoint, ...]:
        return ()

    def describe(self) -> str:
        return "empty"


@dataclass(frozen=True)
class CylSpec(SetSpec):
    """All points of the space extending a fixed prefix (relative clopen)."""

    word: Word

    def meets(self, w: Word) -> bool:
        return _compatible(w, self.word)

    def contains_cyl(self, w: Word) -> bool:
        return len(w) >= len(self.word) and w[: len(self.word)] == self.word

    def contains_point(self, p: PeriodicPoint) -> bool:
        return p.extends(self.word)

    def describe(self) -> str:
        return f"cyl({','.join(map(str, self.word))})"


@dataclass(frozen=True)
class PointSpec(SetSpec):
    points: tuple[PeriodicPoint, ...]

    def meets(self, w: Word) -> bool:
        return any(p.extends(w) for p in self.points)

    def contains_cyl(self, w: Word) -> bool:
        return False

    def contains_point(self, p: PeriodicPoint) -> bool:
        return any(p == q for q in self.points)

    def sample_points(self) -> tuple[PeriodicPoint, ...]:
        return self.points

    def describe(self) -> str:
        return "{" + ", ".join(str(p) for p in self.points) + "}"


@dataclass(frozen=True)
class CoordSpec(SetSpec):
    """Points with a fixed value at one coordinate."""

    pos: int
    value: int

    def meets(self, w: Word) -> bool:
        return len(w) <= self.pos or w[self.pos] == self.value

    def contains_cyl(self, w: Word) -> bool:
        return len(w) > self.pos and w[self.pos] == self.value

    def contains_point(self, p: PeriodicPoint) -> bool:
        return p.at(self.pos) == self.value

    def describe(self) -> str:
        return f"coord[{self.pos}]={self.value}"


@dataclass(frozen=True)
class UnionSpec(SetSpec):
    parts: tuple[SetSpec, ...]

    def meets(self, w: Word) -> bool:
        return any(s.meets(w) for s in self.parts)

    def contains_cyl(self, w: Word) -> bool:
        return any(s.contains_cyl(w) for s in self.parts)

    def contains_point(self, p: PeriodicPoint) -> bool:
        return any(s.contains_point(p) for s in self.parts)

    def sample_points(self) -> Optional[tuple[PeriodicPoint, ...]]:
        out: list[PeriodicPoint] = []
        for s in self.parts:
            pts = s.sample_points()
            if pts is None:
                return None
            out.extend(pts)
        return tuple(out)

    def describe(self) -> str:
        return " u ".join(s.describe() for s in self.parts)


@dataclass(frozen=True)
class IntersectSpec(SetSpec):
    parts: tuple[SetSpec, ...]

    def meets(self, w: Word) -> bool:
        if not all(s.meets(w) for s in self.parts):
            return False
        # exact refinement when one factor is point-enumerable
        for s in self.parts:
            pts = s.sample_points()
            if pts is not None:
                return any(
                    p.extends(w) and self.contains_point(p) for p in pts
                )
        return True

    def contains_cyl(self, w: Word) -> bool:
        return all(s.contains_cyl(w) for s in self.parts)

    def contains_point(self, p: PeriodicPoint) -> bool:
        return all(s.contains_point(p) for s in self.parts)

    def sample_points(self) -> Optional[tuple[PeriodicPoint, ...]]:
        for s in self.parts:
            pts = s.sample_points()
            if pts is not None:
                return tuple(p for p in pts if self.contains_point(p))
        return None

    def describe(self) -> str:
        return " n ".join(s.describe() for s in self.parts)


@dataclass(frozen=True)
class DiffSpec(SetSpec):
    """outer minus inner; stands for its countable closed-shell refinement
    (outer intersected with the minimal cylinders escaping the closed
    inner set), so a certificate piece of this shape carries an
    omega-marked count."""

    outer: SetSpec
    inner: SetSpec

    def meets(self, w: Word) -> bool:
        return self.outer.meets(w) and not self.inner.contains_cyl(w)

    def contains_cyl(self, w: Word) -> bool:
        return self.outer.contains_cyl(w) and not self.inner.meets(w)

    def contains_point(self, p: PeriodicPoint) -> bool:
        return self.outer.contains_point(p) and not self.inner.contains_point(p)

    def sample_points(self) -> Optional[tuple[PeriodicPoint, ...]]:
        pts = self.outer.sample_points()
        if pts is None:
            return None
        return tuple(p for p in pts if not self.inner.contains_point(p))

    def describe(self) -> str:
        return f"({self.outer.describe()}) \\ ({self.inner.describe()})"


def closure_approx(spec: SetSpec) -> SetSpec:
    """A closed overapproximation of the spec (exact for closed specs)."""
    if isinstance(spec, DiffSpec):
        return closure_approx(spec.outer)
    if isinstance(spec, UnionSpec):
        return UnionSpec(tuple(closure_approx(s) for s in spec.parts))
    if isinstance(spec, IntersectSpec):
        return IntersectSpec(tuple(closure_approx(s) for s in spec.parts))
    return spec
