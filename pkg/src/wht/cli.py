"""Command-line interface.

Exit codes: 0 success / verification pass; 1 verification violations or a
symbolic-vs-presentation mismatch; 2 usage or parse errors; 3 witness not
constructible from the embedding library.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .algebra import NormalForm, ParseError, parse, normalize, render
from .classifier import (
    ClassKind,
    INFINITE_CLASSES,
    WeakHomeoClass,
    canonical_term,
    classify,
    embeds_closed,
    prod_table,
    sum_table,
)
from .derive import DerivationScript, UnsupportedWitness, canonical_witness
from .jsoncodec import from_jsonable, to_jsonable
from .presentations import (
    UnknownForFamily,
    decide_uncountable,
    enumerate_depth,
    isolated_points_upto,
    present,
    resolve_compact,
    serialize_presentation,
)
from .properties import CONTINUUM, fingerprint, invariants
from .witness import Certificate, verify

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3


def _parse_expr(text: str) -> NormalForm:
    return normalize(parse(text))


_CLASS_BY_NAME = {k.value: WeakHomeoClass(k) for k in INFINITE_CLASSES}
_CLASS_BY_NAME["0"] = WeakHomeoClass(ClassKind.EMPTY)


def _parse_class(name: str) -> WeakHomeoClass:
    if name in _CLASS_BY_NAME:
        return _CLASS_BY_NAME[name]
    if name.startswith("fin(") and name.endswith(")"):
        return WeakHomeoClass(ClassKind.FINITE, int(name[4:-1]))
    # also accept any expression and classify it
    return classify(_parse_expr(name))


def _fingerprint_doc(nf: NormalForm) -> dict:
    fp = fingerprint(nf)
    inv = invariants(nf)
    return {
        "term": render(nf),
        "class": classify(nf).name,
        "fingerprint": {k: v for k, v in fp.flags().items()},
        "cardinality": str(fp.cardinality),
        "invariants": {
            "nw": inv.nw,
            "hl": inv.hl,
            "hd": inv.hd,
            "psi": inv.psi,
            "dim": inv.dim,
            "cardinality": str(inv.cardinality),
        },
    }


def _cmd_classify(args: argparse.Namespace) -> int:
    nf = _parse_expr(args.expr)
    name = classify(nf).name
    if args.format == "json":
        print(json.dumps({"term": render(nf), "class": name}))
    else:
        print(name)
    return EXIT_OK


def _cmd_props(args: argparse.Namespace) -> int:
    nf = _parse_expr(args.expr)
    doc = _fingerprint_doc(nf)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(f"term: {doc['term']}")
    print(f"class: {doc['class']}")
    print(f"cardinality: {doc['cardinality']}")
    for key, val in doc["fingerprint"].items():
        print(f"{key[3:] if key.startswith('is_') else key}: {'yes' if val else 'no'}")
    inv = doc["invariants"]
    print(
        f"invariants: nw={inv['nw']} hl={inv['hl']} hd={inv['hd']} "
        f"psi={inv['psi']} dim={inv['dim']}"
    )
    return EXIT_OK


def _table_classes() -> list[WeakHomeoClass]:
    out = [WeakHomeoClass(ClassKind.EMPTY), WeakHomeoClass(ClassKind.FINITE, 1)]
    out.extend(WeakHomeoClass(k) for k in INFINITE_CLASSES)
    return out


def _cmd_table(args: argparse.Namespace) -> int:
    classes = _table_classes()
    names = [c.name for c in classes]
    tables = {
        "sum": [[sum_table(a, b).name for b in classes] for a in classes],
        "product": [[prod_table(a, b).name for b in classes] for a in classes],
    }
    if args.format == "json":
        print(json.dumps({"classes": names, **tables}, indent=2))
        return EXIT_OK
    width = max(len(n) for row in tables["sum"] + tables["product"] for n in row)
    width = max(width, max(len(n) for n in names))
    for title, rows in tables.items():
        print(f"{title} table:")
        header = " " * (width + 2) + " ".join(n.ljust(width) for n in names)
        print(header)
        for name, row in zip(names, rows):
            print(name.ljust(width + 2) + " ".join(e.ljust(width) for e in row))
        print()
    return EXIT_OK


def _cmd_embed(args: argparse.Namespace) -> int:
    c1 = _parse_class(args.cls1)
    c2 = _parse_class(args.cls2)
    ans = embeds_closed(c1, c2)
    if args.format == "json":
        print(json.dumps({"from": c1.name, "into": c2.name, "embeds_closed": ans}))
    else:
        print("yes" if ans else "no")
    return EXIT_OK


def _cmd_witness(args: argparse.Namespace) -> int:
    nf = _parse_expr(args.expr)
    script = canonical_witness(nf, depth=args.depth, bound=min(args.bound, 2))
    doc = {"format": "wht-witness/1", "script": to_jsonable(script)}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh)
    if args.format == "json":
        print(json.dumps(doc))
    else:
        print(script)
        if args.out:
            print(f"certificate document written to {args.out}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    with open(args.file) as fh:
        doc = json.load(fh)
    if isinstance(doc, dict) and doc.get("format") == "wht-witness/1":
        obj = from_jsonable(doc["script"])
    else:
        obj = from_jsonable(doc)
    certs: list[tuple[str, Certificate]] = []
    if isinstance(obj, DerivationScript):
        for i, step in enumerate(obj.steps):
            certs.append((f"step {i} ({step.kind})", step.certificate))
    elif isinstance(obj, Certificate):
        certs.append(("certificate", obj))
    else:
        print("error: file does not contain a certificate document", file=sys.stderr)
        return EXIT_USAGE
    ok = True
    reports = []
    for label, cert in certs:
        rep = verify(cert.subject, cert, depth=args.depth, bound=min(args.bound, 2))
        ok = ok and rep.ok
        reports.append((label, rep))
    if args.format == "json":
        print(
            json.dumps(
                {
                    "pass": ok,
                    "reports": [
                        {
                            "label": label,
                            "pass": rep.ok,
                            "depth": rep.depth,
                            "violations": [
                                {
                                    "kind": v.kind,
                                    "word": list(v.word),
                                    "piece": v.piece,
                                    "detail": v.detail,
                                }
                                for v in rep.violations
                            ],
                        }
                        for label, rep in reports
                    ],
                }
            )
        )
    else:
        for label, rep in reports:
            print(f"{label}: {rep}")
        if not certs:
            print("empty script: nothing to verify (pass)")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_present(args: argparse.Namespace) -> int:
    nf = _parse_expr(args.expr)
    p = present(nf)
    words = enumerate_depth(p, args.depth, args.bound)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "term": render(nf),
                    "depth": args.depth,
                    "bound": args.bound,
                    "prefixes": [list(w) for w in words],
                }
            )
        )
        return EXIT_OK
    print(serialize_presentation(p))
    print(f"prefixes (depth {args.depth}, bound {args.bound}): {len(words)}")
    for w in words:
        print(" ".join(map(str, w)))
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    nf = _parse_expr(args.expr)
    fp = fingerprint(nf)
    p = present(nf)
    checks = []

    try:
        compact = resolve_compact(p)
        checks.append(("compact", fp.is_compact, compact))
    except UnknownForFamily:
        checks.append(("compact", fp.is_compact, None))
    uncount = decide_uncountable(p)
    checks.append(("uncountable", fp.cardinality == CONTINUUM, uncount))
    isolated = isolated_points_upto(p, args.depth, args.bound)
    checks.append(("perfect", fp.is_perfect, not isolated if not nf.is_empty else True))

    ok = all(c[2] is not None and c[1] == c[2] for c in checks)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "term": render(nf),
                    "checks": [
                        {"name": n, "symbolic": s, "presentation": o, "agree": s == o}
                        for n, s, o in checks
                    ],
                    "pass": ok,
                }
            )
        )
    else:
        print(f"term: {render(nf)}")
        for name, sym, orc in checks:
            status = "agree" if sym == orc else "MISMATCH"
            print(f"{name}: symbolic={sym} presentation={orc} {status}")
        print("result: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="wht",
        description="classify zero-dimensional spaces up to weak homeomorphism",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p: argparse.ArgumentParser, depth_bound: bool = False) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")
        if depth_bound:
            p.add_argument("--depth", type=int, default=8)
            p.add_argument("--bound", type=int, default=4)

    p = sub.add_parser("classify", help="canonical class of an expression")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("props", help="property fingerprint and invariants")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=_cmd_props)

    p = sub.add_parser("table", help="full sum and product tables")
    common(p)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("embed", help="closed-embedding query between classes")
    p.add_argument("cls1")
    p.add_argument("cls2")
    common(p)
    p.set_defaults(fn=_cmd_embed)

    p = sub.add_parser("witness", help="derivation script to the class representative")
    p.add_argument("expr")
    p.add_argument("--out")
    common(p, depth_bound=True)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("verify", help="check a certificate document")
    p.add_argument("file")
    common(p, depth_bound=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("present", help="presentation and finite prefix tree")
    p.add_argument("expr")
    common(p, depth_bound=True)
    p.set_defaults(fn=_cmd_present)

    p = sub.add_parser("oracle", help="symbolic vs presentation cross-check")
    p.add_argument("expr")
    common(p, depth_bound=True)
    p.set_defaults(fn=_cmd_oracle)

    return ap


def run(argv: Optional[list[str]] = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedWitness as e:
        print(f"witness unavailable: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (OSError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
