import pytest
from hypothesis import given, strategies as st

from wht.algebra import (
    BaireSp,
    Cantor,
    Empty,
    Fin,
    Monomial,
    NormalForm,
    Omega,
    ParseError,
    Prod,
    Rationals,
    Sum,
    nf_prod,
    nf_sum,
    normalize,
    parse,
    render,
)


def test_parse_precedence():
    assert parse("Q*2^w + N^w") == Sum((Prod((Rationals(), Cantor())), BaireSp()))


def test_parse_atom():
    assert parse("fin(3)") == Fin(3)
    assert parse("0") == Empty()
    assert parse("w") == Omega()


def test_parse_parens():
    assert parse("Q*(2^w + N^w)") == Prod((Rationals(), Sum((Cantor(), BaireSp()))))


def test_parse_error_offset():
    with pytest.raises(ParseError) as exc:
        parse("Q**2^w")
    assert exc.value.offset == 2
    assert exc.value.expected  # nonempty expected-token set


@pytest.mark.parametrize(
    "text,offset",
    [("Q**", 2), ("", 0), ("fin(0)", 4), ("fin()", 4), ("2^w Q", 4), ("(Q", 2)],
)
def test_parse_error_cases(text, offset):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.offset == offset


def test_whitespace_insensitive():
    assert parse(" Q * 2^w+N^w ") == parse("Q*2^w + N^w")


def test_normalize_distributes():
    nf = normalize(parse("Q*(2^w + N^w)"))
    assert set(nf.monomials) == {
        Monomial(rationals=1, cantor=1),
        Monomial(rationals=1, baire=1),
    }


def test_normalize_identities():
    assert render(normalize(parse("0 + Q"))) == "Q"
    assert render(normalize(parse("fin(1)*N^w"))) == "N^w"
    assert render(normalize(parse("fin(2)*fin(3)"))) == "fin(6)"
    assert render(normalize(parse("0*Q + 0"))) == "0"


def test_render_examples():
    nf = normalize(parse("N^w + Q*2^w"))
    assert render(nf) == "Q*2^w + N^w"
    assert render(NormalForm(())) == "0"
    assert render(normalize(parse("fin(6)"))) == "fin(6)"


def test_fin_one_kept_when_alone():
    assert render(normalize(parse("fin(1)"))) == "fin(1)"
    assert render(normalize(parse("fin(1) + fin(1)"))) == "fin(1) + fin(1)"


# -- term strategies ---------------------------------------------------------

_atoms = st.sampled_from(
    [Empty(), Fin(1), Fin(2), Fin(3), Omega(), Cantor(), BaireSp(), Rationals()]
)


def _terms(depth: int = 3):
    return st.recursive(
        _atoms,
        lambda kids: st.one_of(
            st.lists(kids, min_size=2, max_size=3).map(lambda xs: Sum(tuple(xs))),
            st.lists(kids, min_size=2, max_size=3).map(lambda xs: Prod(tuple(xs))),
        ),
        max_leaves=6,
    )


@given(_terms())
def test_round_trip(t):
    nf = normalize(t)
    assert normalize(parse(render(nf))) == nf


@given(_terms(), _terms())
def test_sum_congruence(a, b):
    assert normalize(Sum((a, b))) == nf_sum(normalize(a), normalize(b))


@given(_terms(), _terms())
def test_prod_congruence(a, b):
    assert normalize(Prod((a, b))) == nf_prod(normalize(a), normalize(b))


@given(_terms(), _terms())
def test_reordering_determinism(a, b):
    assert normalize(Sum((a, b))) == normalize(Sum((b, a)))
    assert normalize(Prod((a, b))) == normalize(Prod((b, a)))


def test_normalize_idempotent_on_rendered_forms():
    for text in ["Q*2^w + N^w", "fin(2) + w", "Q*Q*Q", "2^w*N^w + fin(4)"]:
        nf = normalize(parse(text))
        assert normalize(parse(render(nf))) == nf
