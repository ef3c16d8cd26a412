import itertools
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from wht.algebra import parse_nf
from wht.pointmaps import (
    HeadAffine,
    HeadPair,
    Ident,
    MapPiece,
    MapPrim,
    PieceMap,
    PrefixSub,
    StreamArrange,
    spec_eval_point,
    spec_eval_prefix,
    spec_modulus,
)
from wht.presentations import present, enumerate_depth
from wht.regions import (
    CylSpec,
    EmptySpec,
    PeriodicPoint,
    PointSpec,
    WholeSpec,
    point_admitted,
    zeros,
)
from wht.witness import (
    CertPiece,
    Certificate,
    DomainMismatch,
    ImageNotClosedAtDepth,
    NotDecreasing,
    cantor_bernstein,
    compose,
    identity_certificate,
    layered_identity,
    verify,
    wdi_chain,
)


def P(text):
    return present(parse_nf(text))


# -- primitive laws ----------------------------------------------------------

_points = st.builds(
    PeriodicPoint,
    st.lists(st.integers(0, 3), max_size=4).map(tuple),
    st.lists(st.integers(0, 3), min_size=1, max_size=3).map(tuple),
)

_prims = st.sampled_from(
    [
        PrefixSub((0,), (1, 1)),
        PrefixSub((), (2,)),
        HeadPair(2),
        HeadAffine(3, 1),
        StreamArrange(1, (("pack", (0,), ()), ("const", zeros()))),
        StreamArrange(2, (("pack", (0, 1), (1,)),)),
        StreamArrange(2, (("pack", (1,), ()), ("pack", (0,), (0, 0)))),
    ]
)


@given(_prims, _points)
def test_prim_point_inverse_round_trip(prim, p):
    q = prim.eval_point(p)
    if q is not None:
        assert prim.inverse().eval_point(q) == p


@given(_prims, _points, st.integers(0, 12))
def test_prim_prefix_matches_point(prim, p, n):
    q = prim.eval_point(p)
    if q is None:
        return
    out = prim.eval_prefix(p.prefix(n))
    if isinstance(out, tuple):
        assert out == q.prefix(len(out))


@given(_prims, _points, _points, st.integers(0, 10))
def test_prim_modulus_sound(prim, p1, p2, m):
    q1, q2 = prim.eval_point(p1), prim.eval_point(p2)
    if q1 is None or q2 is None:
        return
    if p1.prefix(m) != p2.prefix(m):
        return
    mu = prim.modulus(m)
    assert q1.prefix(mu) == q2.prefix(mu)


def test_prefix_sub_shallow_vs_incompatible():
    from wht.pointmaps import INCOMPAT

    ps = PrefixSub((0, 1), (5,))
    assert ps.eval_prefix((0,)) is None  # too shallow
    assert ps.eval_prefix((1,)) is INCOMPAT
    assert ps.eval_prefix((0, 1, 7)) == (5, 7)


# -- verify on simple maps ----------------------------------------------------


def test_verify_identity():
    pres = P("2^w")
    cert = identity_certificate(pres)
    for d in (2, 5, 8):
        assert verify(cert.subject, cert, depth=d, bound=1).ok


def test_verify_coverage_violation():
    pres = P("2^w")
    h = PieceMap(pres, pres, (MapPiece(WholeSpec(), (Ident(),)),))
    cert = Certificate(
        h, (CertPiece(CylSpec((0,)), 0),), (CertPiece(WholeSpec(), 0),), 1, 1
    )
    rep = verify(h, cert, depth=5, bound=1)
    assert not rep.ok
    assert any(v.kind == "coverage" for v in rep.violations)


class SwapEnds(MapPrim):
    """Pointwise swap of the two constant ends of 2^w, claimed continuous
    with the identity modulus; the claim is false near both ends."""

    def eval_prefix(self, w):
        if w and all(x == 0 for x in w):
            return tuple(1 for _ in w)
        if w and all(x == 1 for x in w):
            return tuple(0 for _ in w)
        return w

    def eval_point(self, p):
        if p == PeriodicPoint((), (0,)):
            return PeriodicPoint((), (1,))
        if p == PeriodicPoint((), (1,)):
            return PeriodicPoint((), (0,))
        return p

    def modulus(self, m):
        return m

    def inverse(self):
        return self

    def __eq__(self, other):
        return isinstance(other, SwapEnds)

    def __hash__(self):
        return hash("SwapEnds")


def test_verify_false_continuity_claim():
    pres = P("2^w")
    h = PieceMap(pres, pres, (MapPiece(WholeSpec(), (SwapEnds(),)),))
    cert = Certificate(
        h, (CertPiece(WholeSpec(), 0),), (CertPiece(WholeSpec(), 0),), 1, 1
    )
    rep = verify(h, cert, depth=6, bound=1)
    assert not rep.ok
    bad = [v for v in rep.violations if v.kind == "forward-continuity"]
    assert bad
    # the witness pair sits near an end of the cube
    assert any(set(v.word) <= {0} or set(v.word) <= {1} for v in bad)


def test_swap_as_three_pieces_passes():
    from wht.regions import DiffSpec

    pres = P("2^w")
    zero, one = PeriodicPoint((), (0,)), PeriodicPoint((), (1,))
    rest = DiffSpec(WholeSpec(), PointSpec((zero, one)))
    h = PieceMap(
        pres,
        pres,
        (
            MapPiece(PointSpec((zero,)), (SwapEnds(),)),
            MapPiece(PointSpec((one,)), (SwapEnds(),)),
            MapPiece(rest, (Ident(),)),
        ),
    )
    # cover: two singletons (finite sets) and the closed shells of the rest
    cert = Certificate(
        h,
        (
            CertPiece(PointSpec((zero,)), 0),
            CertPiece(PointSpec((one,)), 1),
            CertPiece(rest, 2),
        ),
        (CertPiece(WholeSpec(), 2),),
        None,
        1,
    )
    rep = verify(h, cert, depth=6, bound=1)
    assert rep.ok


# -- layered identity and derivative chains ------------------------------------


def _layered_cantor(depth=8):
    pres = P("2^w")
    chain = [WholeSpec(), PointSpec((PeriodicPoint((), (0,)),)), EmptySpec()]
    return layered_identity(pres, chain, depth=depth, bound=1)


def test_layered_identity_verifies():
    h, cert = _layered_cantor()
    assert len(h.pieces) == 2
    assert cert.count_forward is None  # omega-marked shells
    assert cert.count_backward == 2
    assert verify(h, cert, depth=8, bound=1).ok


def test_layered_identity_trivial_chain():
    pres = P("2^w")
    h, cert = layered_identity(pres, [WholeSpec(), EmptySpec()], depth=6, bound=1)
    assert len(h.pieces) == 1 and cert.count_forward == 1
    assert verify(h, cert, depth=6, bound=1).ok


def test_layered_identity_discrete():
    pres = P("w")
    h, cert = layered_identity(pres, [WholeSpec(), EmptySpec()], depth=6, bound=3)
    assert verify(h, cert, depth=6, bound=3).ok


def test_layered_identity_not_decreasing():
    pres = P("2^w")
    with pytest.raises(NotDecreasing):
        layered_identity(
            pres,
            [WholeSpec(), EmptySpec(), PointSpec((PeriodicPoint((), (0,)),))],
            depth=5,
            bound=1,
        )
    with pytest.raises(NotDecreasing):
        layered_identity(pres, [CylSpec((0,)), EmptySpec()], depth=5, bound=1)


def test_wdi_chain_layered():
    h, _ = _layered_cantor()
    dc = wdi_chain(h, depth=8, bound=1)
    assert dc.wdi == 2
    assert dc.slices[0] == tuple(enumerate_depth(P("2^w"), 7, 1))
    assert dc.slices[1] == ((0,) * 7,)
    assert dc.slices[2] == ()


def test_wdi_chain_continuous():
    pres = P("2^w")
    h, _ = layered_identity(pres, [WholeSpec(), EmptySpec()], depth=8, bound=1)
    dc = wdi_chain(h, depth=8, bound=1)
    assert dc.wdi == 1
    assert dc.slices[1] == ()


def test_wdi_composed_map_bounded():
    # composing the layered map with a continuous retag keeps wdi at 2
    h, cert = _layered_cantor(depth=8)
    cod = h.codomain
    shift = PieceMap(cod, cod, (MapPiece(WholeSpec(), (Ident(),)),))
    cert2 = identity_certificate(cod)
    c = compose(cert, cert2)
    dc = wdi_chain(c.subject, depth=8, bound=1)
    assert dc.wdi == 2


# -- cantor-bernstein ----------------------------------------------------------


def _cb_cantor(depth=10):
    C = P("2^w")
    f = PieceMap(C, C, (MapPiece(WholeSpec(), (PrefixSub((), (0,)),)),))
    g = PieceMap(C, C, (MapPiece(WholeSpec(), (PrefixSub((), (1,)),)),))
    return cantor_bernstein(f, g, depth=depth, bound=1)


def test_cb_prefix_example():
    h, cert = _cb_cantor()
    rep = verify(h, cert, depth=10, bound=1)
    assert rep.ok
    # layer actions: X_infty and even layers by f, odd layers by g^-1
    assert h.apply_point(PeriodicPoint((), (1, 0)))[1] == PeriodicPoint((), (0, 1))
    assert h.apply_point(PeriodicPoint((0,), (1,)))[1] == PeriodicPoint((0, 0), (1,))
    assert h.apply_point(PeriodicPoint((1, 1), (0,)))[1] == PeriodicPoint((1,), (0,))
    assert h.apply_point(PeriodicPoint((1, 0, 1), (0,)))[1] == PeriodicPoint(
        (0, 1, 0, 1), (0,)
    )


def test_cb_identity_embeddings():
    C = P("2^w")
    ident = PieceMap(C, C, (MapPiece(WholeSpec(), (Ident(),)),))
    h, cert = cantor_bernstein(ident, ident, depth=8, bound=1)
    assert len(h.pieces) == 1
    assert cert.count_forward == 1
    assert verify(h, cert, depth=8, bound=1).ok


def test_cb_q_times_cantor_example():
    X = P("Q*2^w")
    Y = P("Q + Q*2^w")
    f = PieceMap(X, Y, (MapPiece(WholeSpec(), (PrefixSub((), (1,)),)),))
    g = PieceMap(
        Y,
        X,
        (
            MapPiece(
                CylSpec((0,)),
                (
                    PrefixSub((0,), ()),
                    StreamArrange(1, (("pack", (0,), ()), ("const", zeros()))),
                ),
            ),
            MapPiece(
                CylSpec((1,)),
                (
                    PrefixSub((1,), ()),
                    StreamArrange(2, (("pack", (0,), ()), ("pack", (1,), (1,)))),
                ),
            ),
        ),
    )
    h, cert = cantor_bernstein(f, g, depth=10, bound=2)
    assert verify(h, cert, depth=10, bound=2).ok


def test_cb_rejects_non_injective():
    from wht.witness import NotInjective

    C = P("2^w")
    # collapse everything onto the zero ray: not injective
    squash = StreamArrange(1, (("pack", (0,), ()), ("const", zeros())))

    class Collapse(MapPrim):
        def eval_prefix(self, w):
            return (0,) * len(w)

        def eval_point(self, p):
            return PeriodicPoint((), (0,))

        def modulus(self, m):
            return m

        def inverse(self):
            return self

    f = PieceMap(C, C, (MapPiece(WholeSpec(), (Collapse(),)),))
    g = PieceMap(C, C, (MapPiece(WholeSpec(), (Ident(),)),))
    with pytest.raises(NotInjective):
        cantor_bernstein(f, g, depth=6, bound=1)


def test_cb_rejects_non_closed_image():
    # the rationals sit densely but not closedly inside Baire space
    Q, N = P("Q"), P("N^w")
    f = PieceMap(Q, N, (MapPiece(WholeSpec(), (Ident(),)),))
    g = PieceMap(N, Q, (MapPiece(WholeSpec(), (Ident(),)),))
    with pytest.raises(ImageNotClosedAtDepth):
        cantor_bernstein(f, g, depth=8, bound=2)


def test_cb_corrupted_certificates():
    h, cert = _cb_cantor()
    # dropped piece: some prefixes lose their cover
    dropped = replace(cert, forward=cert.forward[1:])
    rep = verify(h, dropped, depth=10, bound=1)
    assert not rep.ok and any(v.kind == "coverage" for v in rep.violations)
    # false continuity claim: see test_verify_false_continuity_claim
    pres = P("2^w")
    bad = PieceMap(pres, pres, (MapPiece(WholeSpec(), (SwapEnds(),)),))
    badcert = Certificate(
        bad, (CertPiece(WholeSpec(), 0),), (CertPiece(WholeSpec(), 0),), 1, 1
    )
    assert not verify(bad, badcert, depth=6, bound=1).ok


# -- composition ---------------------------------------------------------------


def test_compose_identity_laws():
    h, cert = _cb_cantor(depth=6)
    ident = identity_certificate(h.domain)
    assert compose(ident, cert) == cert
    ident2 = identity_certificate(h.codomain)
    back = compose(cert, ident2)
    assert back.count_forward == cert.count_forward
    assert len(back.subject.pieces) == len(cert.subject.pieces)


def test_compose_count_bound():
    pres = P("2^w")
    zero = PeriodicPoint((), (0,))
    h1, c1 = layered_identity(pres, [WholeSpec(), PointSpec((zero,)), EmptySpec()], depth=6, bound=1)
    # finite-count certificate composed with itself-shaped map
    a = Certificate(h1.subject if hasattr(h1, "subject") else h1, c1.forward, c1.backward, 2, 3)
    b_map = PieceMap(h1.codomain, h1.codomain, (MapPiece(WholeSpec(), (Ident(),)),))
    b = Certificate(b_map, (CertPiece(WholeSpec(), 0),) * 3, (CertPiece(WholeSpec(), 0),) * 2, 3, 2)
    composed = compose(a, b)
    assert composed.count_forward <= 2 * 3
    assert composed.count_backward <= 3 * 2
    # omega absorbs (a non-Ident identity-shaped map avoids the shortcut)
    same = StreamArrange(1, (("pack", (0,), ()),))
    w_map = PieceMap(h1.codomain, h1.codomain, (MapPiece(WholeSpec(), (same,)),))
    c_omega = Certificate(w_map, (CertPiece(WholeSpec(), 0),), (CertPiece(WholeSpec(), 0),), None, 1)
    assert compose(a, c_omega).count_forward is None


def test_compose_domain_mismatch():
    c1 = identity_certificate(P("2^w"))
    c2 = identity_certificate(P("N^w"))
    with pytest.raises(DomainMismatch):
        compose(c1, c2)


def test_cb_composed_with_inverse_is_identity():
    h, cert = _cb_cantor(depth=8)
    h_inv = h.inverse()
    inv_cert = Certificate(
        subject=h_inv,
        forward=tuple(CertPiece(p.spec, i) for i, p in enumerate(h_inv.pieces)),
        backward=tuple(CertPiece(h.pieces[i].spec, i) for i in range(len(h.pieces))),
        count_forward=cert.count_backward,
        count_backward=cert.count_forward,
    )
    composed = compose(cert, inv_cert)
    full = composed.subject
    # some determined output restricts the input (piece regions only meet
    # optimistically at finite depth, so phantom pairings may add others)
    for w in enumerate_depth(h.domain, 8, 1):
        outs = [o for _, o in full.eval_prefix(w) if isinstance(o, tuple)]
        assert any(o[: min(len(o), len(w))] == w[: min(len(o), len(w))] for o in outs), w
    # and on periodic residents the composition is exactly the identity
    for p in [PeriodicPoint((), (1, 0)), PeriodicPoint((0,), (1,)), PeriodicPoint((1, 1), (0,))]:
        res = full.apply_point(p)
        assert res is not None and res[1] == p
