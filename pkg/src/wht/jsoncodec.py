"""Kind-tagged JSON encoding for certificates and derivation scripts.

Every serializable value is a frozen dataclass whose fields are scalars,
tuples, or other serializable values; tuples become JSON arrays and come
back as tuples, so the codec is a faithful round trip.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Any

from . import derive, pointmaps, presentations, regions, witness

__all__ = ["to_jsonable", "from_jsonable", "dumps", "loads"]

_CLASSES = [
    regions.PeriodicPoint,
    regions.WholeSpec,
    regions.EmptySpec,
    regions.CylSpec,
    regions.CoordSpec,
    regions.PointSpec,
    regions.UnionSpec,
    regions.IntersectSpec,
    regions.DiffSpec,
    pointmaps.Ident,
    pointmaps.PrefixSub,
    pointmaps.HeadPair,
    pointmaps.HeadUnpair,
    pointmaps.HeadAffine,
    pointmaps.HeadAffineInv,
    pointmaps.StreamArrange,
    pointmaps.StreamArrangeInv,
    pointmaps.MapPiece,
    pointmaps.PieceMap,
    pointmaps.MappedSpec,
    pointmaps.PreimageSpec,
    presentations.LabelRange,
    presentations.LabelFrom,
    presentations.PieceGen,
    presentations.QFamily,
    presentations.MonomialFamily,
    presentations.TaggedFamily,
    presentations.MergedFamily,
    presentations.ProductWithPiece,
    presentations.ProductFamilies,
    presentations.TreePresentation,
    witness.CertPiece,
    witness.Certificate,
    derive.Step,
    derive.DerivationScript,
]

_BY_NAME = {cls.__name__: cls for cls in _CLASSES}


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (int, str, bool)):
        return obj
    if isinstance(obj, tuple):
        return [to_jsonable(x) for x in obj]
    cls = type(obj)
    if dataclasses.is_dataclass(obj) and cls.__name__ in _BY_NAME:
        out = {"k": cls.__name__}
        for f in dataclasses.fields(obj):
            out[f.name] = to_jsonable(getattr(obj, f.name))
        return out
    raise TypeError(f"not serializable: {obj!r}")


def from_jsonable(doc: Any) -> Any:
    if doc is None or isinstance(doc, (int, str, bool)):
        return doc
    if isinstance(doc, list):
        return tuple(from_jsonable(x) for x in doc)
    if isinstance(doc, dict):
        cls = _BY_NAME[doc["k"]]
        kwargs = {k: from_jsonable(v) for k, v in doc.items() if k != "k"}
        return cls(**kwargs)
    raise TypeError(f"not decodable: {doc!r}")


def dumps(obj: Any, **kwargs: Any) -> str:
    return json.dumps(to_jsonable(obj), **kwargs)


def loads(text: str) -> Any:
    return from_jsonable(json.loads(text))
