import pytest

from wht.algebra import parse_nf
from wht.properties import (
    ALEPH0,
    CONTINUUM,
    Cardinality,
    check_preservation,
    fingerprint,
    invariants,
)


def fp(text):
    return fingerprint(parse_nf(text))


def test_rationals_clauses():
    f = fp("Q")
    assert f.is_countable and not f.is_polish and f.is_sigma_compact
    assert f.is_perfect and f.is_nowhere_locally_compact
    assert not f.is_baire and not f.is_hereditarily_baire


def test_baire_space_clauses():
    f = fp("N^w")
    assert f.is_polish and not f.is_sigma_compact and f.is_nowhere_locally_compact
    assert f.is_nowhere_countable and not f.is_compact


def test_q_times_cantor_clauses():
    f = fp("Q*2^w")
    assert f.is_sigma_compact and f.is_nowhere_countable
    assert f.is_nowhere_locally_compact and not f.is_polish


def test_omega_times_cantor():
    f = fp("w*2^w")
    assert f.is_polish and f.is_sigma_compact and f.is_locally_compact
    assert f.cardinality == CONTINUUM and f.is_perfect
    assert not f.is_compact  # the omega factor breaks compactness


def test_cantor_compact():
    f = fp("2^w")
    assert f.is_compact and f.is_polish and f.is_perfect
    f2 = fp("2^w + fin(3)")
    assert f2.is_compact and not f2.is_perfect and f2.is_scattered is False


def test_scattered_vs_perfect_on_monomials():
    assert fp("w").is_scattered and not fp("w").is_perfect
    assert fp("Q").is_perfect and not fp("Q").is_scattered
    # mixed sums are neither
    f = fp("w + Q")
    assert not f.is_scattered and not f.is_perfect


def test_empty_conventions():
    f = fp("0")
    assert f.is_empty and f.is_compact and f.is_polish and f.is_perfect
    assert f.is_scattered
    assert not f.is_nowhere_countable and not f.is_nowhere_polish
    assert f.cardinality == Cardinality.finite(0)
    inv = invariants(parse_nf("0"))
    assert inv.dim == -1 and inv.cardinality == Cardinality.finite(0)


def test_k_scattered_rule():
    assert fp("w*2^w").is_k_scattered
    assert not fp("Q").is_k_scattered
    assert not fp("N^w").is_k_scattered
    assert fp("fin(4)").is_k_scattered


def test_baire_iff_polish_in_algebra():
    for text in ["Q", "N^w", "2^w", "Q*2^w", "w + N^w", "Q + 2^w", "fin(2)", "0"]:
        f = fp(text)
        assert f.is_baire == f.is_polish == f.is_hereditarily_baire, text


def test_invariants_examples():
    inv = invariants(parse_nf("Q"))
    assert (inv.nw, inv.hl, inv.hd, inv.psi) == ("aleph0",) * 4
    assert inv.dim == 0 and inv.cardinality == ALEPH0
    inv2 = invariants(parse_nf("2^w*Q"))
    assert inv2.cardinality == CONTINUUM and inv2.nw == "aleph0"
    inv3 = invariants(parse_nf("fin(5)"))
    assert inv3.nw == "finite" and inv3.cardinality == Cardinality.finite(5)


def test_cardinal_arithmetic():
    assert ALEPH0 * CONTINUUM == CONTINUUM
    assert Cardinality.finite(3) + ALEPH0 == ALEPH0
    assert Cardinality.finite(0) * CONTINUUM == Cardinality.finite(0)
    assert Cardinality.finite(2) * Cardinality.finite(3) == Cardinality.finite(6)


def test_preservation_same_class():
    rep = check_preservation(parse_nf("Q + 2^w + N^w"), parse_nf("Q + N^w"))
    assert rep.same_class and rep.ok and rep.shared is not None


def test_preservation_distinguishing():
    rep = check_preservation(parse_nf("2^w"), parse_nf("N^w"))
    assert not rep.same_class
    assert "is_sigma_compact" in rep.distinguishing


def test_preservation_identical_terms():
    rep = check_preservation(parse_nf("fin(2)"), parse_nf("fin(2)"))
    assert rep.same_class and rep.ok


def test_preservation_can_be_empty():
    # Q+2^w vs Q*2^w share every implemented preserved property
    rep = check_preservation(parse_nf("Q + 2^w"), parse_nf("Q*2^w"))
    assert not rep.same_class and rep.distinguishing == ()


def test_psi_le_hl():
    order = {"finite": 0, "aleph0": 1}
    for text in ["0", "fin(3)", "Q", "N^w", "Q*N^w + 2^w"]:
        inv = invariants(parse_nf(text))
        assert order[inv.psi] <= order[inv.hl]
