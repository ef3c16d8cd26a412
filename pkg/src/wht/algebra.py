"""Term algebra of zero-dimensional spaces.

Terms are built from six atoms -- the empty space `0`, finite discrete
spaces `fin(n)`, the countable discrete space `w`, the Cantor set `2^w`,
the Baire space `N^w` and the rationals `Q` -- combined by topological
sum `+` and finite product `*`.  Every term normalizes to a finite sum
of monomials (products of atoms), which is the canonical currency of the
rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "SpaceTerm",
    "Empty",
    "Fin",
    "Omega",
    "Cantor",
    "BaireSp",
    "Rationals",
    "Sum",
    "Prod",
    "Monomial",
    "NormalForm",
    "ParseError",
    "parse",
    "normalize",
    "render",
    "nf_sum",
    "nf_prod",
]


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Empty:
    def __str__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Fin:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("fin(n) requires n >= 1")

    def __str__(self) -> str:
        return f"fin({self.n})"


@dataclass(frozen=True)
class Omega:
    def __str__(self) -> str:
        return "w"


@dataclass(frozen=True)
class Cantor:
    def __str__(self) -> str:
        return "2^w"


@dataclass(frozen=True)
class BaireSp:
    def __str__(self) -> str:
        return "N^w"


@dataclass(frozen=True)
class Rationals:
    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class Sum:
    parts: tuple["SpaceTerm", ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("Sum needs at least 2 children")

    def __str__(self) -> str:
        return " + ".join(
            f"({p})" if isinstance(p, Sum) else str(p) for p in self.parts
        )


@dataclass(frozen=True)
class Prod:
    parts: tuple["SpaceTerm", ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("Prod needs at least 2 children")

    def __str__(self) -> str:
        out = []
        for p in self.parts:
            out.append(f"({p})" if isinstance(p, (Sum, Prod)) else str(p))
        return "*".join(out)


SpaceTerm = Union[Empty, Fin, Omega, Cantor, BaireSp, Rationals, Sum, Prod]


# ---------------------------------------------------------------------------
# Parser
#
# Grammar (exact):
#   expr   := term ('+' term)*
#   term   := factor ('*' factor)*
#   factor := atom | '(' expr ')'
#   atom   := '0' | 'fin(' INT ')' | 'w' | '2^w' | 'N^w' | 'Q'
# Whitespace is ignored between tokens; everything is case-sensitive.


class ParseError(ValueError):
    """Malformed expression, with byte offset and the expected token set."""

    def __init__(self, offset: int, expected: Iterable[str], found: str):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        self.found = found
        exp = ", ".join(self.expected)
        super().__init__(f"at offset {offset}: expected {exp}, found {found!r}")


_ATOM_TOKENS = ("0", "fin(INT)", "w", "2^w", "N^w", "Q", "(")


class _Lexer:
    _LITERALS = ("2^w", "N^w", "fin", "Q", "w", "+", "*", "(", ")")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []  # (kind, value, offset)
        self._run()

    def _run(self) -> None:
        text = self.text
        n = len(text)
        i = 0
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            matched = False
            for lit in self._LITERALS:
                if text.startswith(lit, i):
                    # '2^w' wins over the digit rule; plain digits fall through
                    self.tokens.append((lit, lit, i))
                    i += len(lit)
                    matched = True
                    break
            if matched:
                continue
            if ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.tokens.append(("INT", text[i:j], i))
                i = j
                continue
            raise ParseError(i, ("token",), ch)
        self.tokens.append(("EOF", "", n))


class _Parser:
    def __init__(self, text: str):
        self.toks = _Lexer(text).tokens
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> tuple[str, str, int]:
        t = self.peek()
        if t[0] != kind:
            raise ParseError(t[2], (kind,), t[1] or "end of input")
        return self.take()

    def parse(self) -> SpaceTerm:
        e = self.expr()
        t = self.peek()
        if t[0] != "EOF":
            raise ParseError(t[2], ("+", "*", "end of input"), t[1])
        return e

    def expr(self) -> SpaceTerm:
        parts = [self.term()]
        while self.peek()[0] == "+":
            self.take()
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def term(self) -> SpaceTerm:
        parts = [self.factor()]
        while self.peek()[0] == "*":
            self.take()
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Prod(tuple(parts))

    def factor(self) -> SpaceTerm:
        kind, value, off = self.peek()
        if kind == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if kind == "w":
            self.take()
            return Omega()
        if kind == "Q":
            self.take()
            return Rationals()
        if kind == "2^w":
            self.take()
            return Cantor()
        if kind == "N^w":
            self.take()
            return BaireSp()
        if kind == "fin":
            self.take()
            self.expect("(")
            num = self.expect("INT")
            if int(num[1]) < 1:
                raise ParseError(num[2], ("positive integer",), num[1])
            self.expect(")")
            return Fin(int(num[1]))
        if kind == "INT":
            if value == "0":
                self.take()
                return Empty()
            raise ParseError(off, _ATOM_TOKENS, value)
        raise ParseError(off, _ATOM_TOKENS, value or "end of input")


def parse(text: str) -> SpaceTerm:
    """Parse an expression string into a SpaceTerm.

    Precedence `*` over `+`; sums and products at the same syntactic level
    come back as flat n-ary nodes, so the parse is unique.
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Normal form
#
# A monomial is a product of atoms: a merged finite factor `fin` (1 means
# "no finite factor") plus multiplicities for w, 2^w, N^w and Q.  The
# normal form of a term is a sorted multiset of monomials; the empty
# multiset denotes the empty space.
#
# Sorting uses one fixed total order on atoms throughout the package:
#     Q < N^w < 2^w < w < fin
# which makes canonical renderings come out as "Q*2^w + N^w" etc.

_Q, _N, _C, _W, _F = 0, 1, 2, 3, 4


@dataclass(frozen=True, order=True)
class Monomial:
    # multiplicities; fin is the merged finite-factor size (>= 1)
    rationals: int = 0
    baire: int = 0
    cantor: int = 0
    omega: int = 0
    fin: int = 1

    def __post_init__(self) -> None:
        if self.fin < 1 or min(self.rationals, self.baire, self.cantor, self.omega) < 0:
            raise ValueError("bad monomial multiplicities")

    @property
    def has_q(self) -> bool:
        return self.rationals > 0

    @property
    def has_baire(self) -> bool:
        return self.baire > 0

    @property
    def has_cantor(self) -> bool:
        return self.cantor > 0

    @property
    def has_omega(self) -> bool:
        return self.omega > 0

    @property
    def is_pure_fin(self) -> bool:
        return not (self.rationals or self.baire or self.cantor or self.omega)

    def sort_key(self) -> tuple:
        key: list[tuple[int, int]] = []
        key += [(_Q, 0)] * self.rationals
        key += [(_N, 0)] * self.baire
        key += [(_C, 0)] * self.cantor
        key += [(_W, 0)] * self.omega
        if self.fin > 1 or self.is_pure_fin:
            key.append((_F, self.fin))
        return tuple(key)

    def factors(self) -> list[str]:
        out = ["Q"] * self.rationals + ["N^w"] * self.baire
        out += ["2^w"] * self.cantor + ["w"] * self.omega
        if self.fin > 1 or self.is_pure_fin:
            out.append(f"fin({self.fin})")
        return out

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(
            rationals=self.rationals + other.rationals,
            baire=self.baire + other.baire,
            cantor=self.cantor + other.cantor,
            omega=self.omega + other.omega,
            fin=self.fin * other.fin,
        )

    def __str__(self) -> str:
        return "*".join(self.factors())


@dataclass(frozen=True)
class NormalForm:
    monomials: tuple[Monomial, ...]  # sorted, duplicates allowed

    @property
    def is_empty(self) -> bool:
        return not self.monomials

    @property
    def atom_count(self) -> int:
        return sum(len(m.sort_key()) for m in self.monomials)

    def __str__(self) -> str:
        return render(self)


def _nf(monomials: Iterable[Monomial]) -> NormalForm:
    return NormalForm(tuple(sorted(monomials, key=Monomial.sort_key)))


EMPTY_NF = NormalForm(())


def nf_sum(*parts: NormalForm) -> NormalForm:
    """Merge normal forms as a topological sum."""
    out: list[Monomial] = []
    for p in parts:
        out.extend(p.monomials)
    return _nf(out)


def nf_prod(a: NormalForm, b: NormalForm) -> NormalForm:
    """Distribute a product of normal forms over their monomials."""
    return _nf(m.times(n) for m in a.monomials for n in b.monomials)


_ATOM_NF = {
    Empty: EMPTY_NF,
    Omega: _nf([Monomial(omega=1)]),
    Cantor: _nf([Monomial(cantor=1)]),
    BaireSp: _nf([Monomial(baire=1)]),
    Rationals: _nf([Monomial(rationals=1)]),
}


def normalize(term: SpaceTerm) -> NormalForm:
    """Reduce a term to its sum-of-monomials normal form.

    The result denotes a space homeomorphic to the input: products are
    distributed over sums, empty summands vanish, an empty factor kills a
    product, fin(1) is the product identity, and the outcome is sorted.
    """
    t = type(term)
    if t in _ATOM_NF:
        return _ATOM_NF[t]
    if t is Fin:
        return _nf([Monomial(fin=term.n)])
    if t is Sum:
        return nf_sum(*(normalize(p) for p in term.parts))
    if t is Prod:
        out = normalize(term.parts[0])
        for p in term.parts[1:]:
            out = nf_prod(out, normalize(p))
        return out
    raise TypeError(f"not a SpaceTerm: {term!r}")


def render(nf: NormalForm) -> str:
    """Canonical text for a normal form; parses back to the same normal form."""
    if nf.is_empty:
        return "0"
    return " + ".join(str(m) for m in nf.monomials)


def parse_nf(text: str) -> NormalForm:
    return normalize(parse(text))
