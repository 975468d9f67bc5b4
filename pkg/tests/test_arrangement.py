import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from splinetop import fixtures, polys
from splinetop.arrangement import (
    ArrangementError,
    Flat,
    edge_form,
    gamma_poset,
    intersection_lattice,
    lattice_complex_for_flat,
    minimal_flat,
    restriction_components,
    star_set,
    boundary_form,
)
from splinetop.forms import LinearForm


def names(P, comps):
    return sorted("".join(P.labels[i] for i in c) for c in comps)


def flat_of(P, *forms, homogenized=False):
    return Flat.from_forms([LinearForm.make(f).coeffs for f in forms], P.n, homogenized)


@pytest.fixture(scope="module")
def Q():
    return fixtures.Q()


def test_edge_forms(Q):
    assert str(edge_form(Q, [0, 3])) == "x - 1"
    assert str(edge_form(Q, [0, 4])) == "x - y"
    D = fixtures.delta_plus()
    assert str(edge_form(D, [0, 1])) == "y"
    with pytest.raises(ArrangementError):
        edge_form(Q, [0])


def test_q_lattice_counts(Q):
    assert intersection_lattice(Q).rank_counts == (1, 6, 5)
    assert intersection_lattice(Q, homogenized=True).rank_counts == (1, 6, 7, 1)


def test_qprime_lattice_counts():
    P = fixtures.fixture("Qprime")
    assert intersection_lattice(P).rank_counts == (1, 8, 12)
    assert intersection_lattice(P, homogenized=True).rank_counts == (1, 8, 14, 1)


def test_q_flats_at_infinity(Q):
    L = intersection_lattice(Q, homogenized=True)
    inf = [W for W in L.of_rank(2) if W.at_infinity]
    assert len(inf) == 2
    assert {names(Q, restriction_components(Q, W))[0] for W in inf} == {"ACE", "BDE"}


def test_two_lines():
    P = fixtures.fixture("two_squares")
    L = intersection_lattice(P)
    assert L.rank_counts[0] == 1 and L.rank_counts[1] == len({P.wall_form(w) for w in P.interior_walls})


@pytest.mark.parametrize("forms,homog,expected", [
    ([(1, 0, 0), (0, 1, 0)], False, ["ABCD", "E"]),     # the origin
    ([(1, -1, 0)], False, ["AD", "BC"]),
    ([(0, 1, 0), (0, 0, 1)], True, ["ACE"]),           # x-axis at infinity
    ([(1, 0, 1)], False, ["BE"]),
])
def test_components(Q, forms, homog, expected):
    W = flat_of(Q, *forms, homogenized=homog)
    comps = restriction_components(Q, W)
    got = names(Q, comps)
    # facets not touched by any wall on W are not in a component
    assert [g for g in got if len(g) > 1] == [e for e in expected if len(e) > 1]


def test_rank_zero_components(Q):
    assert names(Q, restriction_components(Q, Flat.whole(2))) == list("ABCDE")


def test_empty_affine_flat_rejected(Q):
    W = flat_of(Q, (1, 0, -1), (1, 0, 1))
    with pytest.raises(ArrangementError):
        restriction_components(Q, W)


def test_minimal_flat(Q):
    assert minimal_flat(Q, [0, 1, 2, 3]).point() == (0, 0)
    lc = lattice_complex_for_flat(Q, flat_of(Q, (1, -1, 0)))
    assert minimal_flat(Q, lc) == flat_of(Q, (1, -1, 0))
    # ACE has walls y=1 and y=-1 only: no common affine point
    with pytest.raises(ArrangementError):
        minimal_flat(Q, [0, 2, 4])
    assert minimal_flat(Q, [0, 2, 4], homogenized=True).at_infinity


@pytest.mark.parametrize("name", ["Q", "Qprime", "DeltaPlus", "T2", "T3"])
def test_lattice_closed_and_covers(name):
    P = fixtures.fixture(name)
    for homog in (False, True):
        L = intersection_lattice(P, homog)
        flats = set(L.flats)
        for W in L.flats:
            for H in L.hyperplanes:
                J = W.join(H)
                if homog or not J.contains_constant:
                    assert J in flats
        for a, b in L.covers:
            A, B = L.flats[a], L.flats[b]
            assert A.below(B) and B.rank == A.rank + 1


def test_flat_roundtrip_is_canonical(Q):
    W1 = flat_of(Q, (1, 0, -1), (0, 1, -1))
    W2 = flat_of(Q, (1, -1, 0), (2, 0, -2))
    assert W1 == W2 and W1.point() == (1, 1)


@given(st.permutations(range(6)))
def test_lattice_independent_of_form_order(perm):
    P = fixtures.Q()
    L = intersection_lattice(P, True)
    hs = [L.hyperplanes[i] for i in perm]
    assert Flat.from_forms([h.coeffs for h in hs[:2]], 2, True) in set(L.flats)


Q_RANK2 = {"ABE", "BCE", "CDE", "ADE", "ABCD", "ACE", "BDE"}
QP_RANK2 = {"ABE", "BCE", "CDE", "ADE", "ABC", "BCD", "ACD", "ABD", "ACE", "BDE"}


def test_gamma_q():
    P = fixtures.Q()
    G = gamma_poset(P, 2)
    assert G.row_sizes == (5, 8, 7)
    assert {v.label for v in G.of_rank(2)} == Q_RANK2
    assert {v.label for v in G.of_rank(1)} == {"AB", "BC", "CD", "AD", "AE", "BE", "CE", "DE"}
    assert len(G.edges) == 36


def test_gamma_qprime():
    G = gamma_poset(fixtures.fixture("Qprime"), 2)
    assert G.row_sizes == (5, 8, 10)
    assert {v.label for v in G.of_rank(2)} == QP_RANK2
    assert len(G.edges) == 40


def test_gamma_affine_maximal():
    G = gamma_poset(fixtures.Q(), 2, flats="affine")
    assert sorted(v.label for v in G.maximal()) == ["ABCD", "ABE", "ADE", "BCE", "CDE"]


@pytest.mark.parametrize("name", ["Q", "Qprime", "DeltaPlus", "T2"])
def test_gamma_hasse_is_cover_relation(name):
    G = gamma_poset(fixtures.fixture(name), 2)
    sets = [frozenset(v.facets) for v in G.nodes]
    covers = set()
    for i, j in combinations(range(len(sets)), 2):
        for a, b in ((i, j), (j, i)):
            if sets[a] < sets[b] and not any(sets[a] < s < sets[b] for s in sets):
                covers.add((a, b))
    assert covers == set(G.edges)
    # a larger node never has smaller gamma rank than a node strictly below it in a chain of covers
    for a, b in G.edges:
        assert len(sets[a]) < len(sets[b])


def test_gamma_rank_is_minimal():
    P = fixtures.Q()
    G = gamma_poset(P, 2)
    for v in G.nodes:
        for W in intersection_lattice(P, True).flats:
            if W.rank < v.rank:
                assert v.facets not in restriction_components(P, W)


def test_star_set_delta_plus():
    D = fixtures.delta_plus()
    S = star_set(D, flat_of(D, (1, 0, 0), (0, 1, 0)))
    assert [f.vertex_ids for f in S.faces] == [(0,)]
    assert S.pairing[0][1] == (0, 1, 2, 3)
    S1 = star_set(D, flat_of(D, (0, 1, 0)))
    assert sorted(f.vertex_ids for f, _ in S1.pairing) == [(0, 1), (0, 3)]


@settings(max_examples=50)
@given(st.integers(0, 100_000))
def test_star_set_random(seed):
    P = fixtures.random_triangulation(random.Random(seed))
    for W in intersection_lattice(P).flats:
        if W.rank:
            star_set(P, W)       # asserts the star description internally


def test_boundary_forms():
    P = fixtures.Q()
    assert boundary_form(P, [4]) == polys.mul(
        polys.mul(LinearForm.make((1, 0, 1)).poly(), LinearForm.make((0, 1, -1)).poly()),
        polys.mul(LinearForm.make((1, 0, -1)).poly(), LinearForm.make((0, 1, 1)).poly()))
    assert boundary_form(P, range(5)) == polys.const(1, 2)
    T = fixtures.build_tn(3)
    assert polys.degree(boundary_form(T, [1])) == 3


def test_dot_deterministic(Q):
    a = gamma_poset(Q, 2).to_dot()
    assert a == gamma_poset(fixtures.Q(), 2).to_dot()
    assert a.startswith("digraph gamma {") and "ABCD" in a
    assert intersection_lattice(Q).to_dot() == intersection_lattice(fixtures.Q()).to_dot()


@pytest.mark.parametrize("name", ["Q", "Qprime", "DeltaPlus", "T2", "T3"])
def test_gamma_rank_strictly_increases(name):
    G = gamma_poset(fixtures.fixture(name), 2)
    for a in G.nodes:
        for b in G.nodes:
            if set(a.facets) < set(b.facets):
                assert a.rank < b.rank


@pytest.mark.parametrize("name", ["Q", "Qprime", "DeltaPlus", "T2"])
@pytest.mark.parametrize("homog", [False, True])
def test_minimal_flat_roundtrip(name, homog):
    P = fixtures.fixture(name)
    L = intersection_lattice(P, homog)
    for W in L.flats:
        lc = lattice_complex_for_flat(P, W)
        if not lc.components:
            continue
        V = minimal_flat(P, lc, homogenized=homog)
        assert restriction_components(P, V) == restriction_components(P, W)
        for U in L.flats:
            if restriction_components(P, U) == restriction_components(P, W):
                assert V.span.issubspace(U.span)
