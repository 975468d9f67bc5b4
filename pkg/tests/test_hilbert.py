import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from splinetop import fixtures
from splinetop.hilbert import (
    HFTable,
    HilbertError,
    Selector,
    conjecture_report,
    default_dmax,
    free_hf,
    generator_degrees,
    hf_table,
    hp_fit,
    max_boundary_length,
)

FROZEN = json.loads((Path(__file__).parent / "data" / "frozen_dims.json").read_text())


@pytest.mark.parametrize("name,r", [("Q", 0), ("Q", 1), ("DeltaPlus", 1), ("T2", 2)])
def test_full_table_matches_frozen(name, r):
    t = hf_table(fixtures.fixture(name), "full", r, 7)
    assert all(t.oracle_ok)
    assert list(t.values) == [FROZEN[f"{name}|r={r}|d={d}|homogeneous"] for d in range(8)]


def test_q_c0_hp():
    fit = hp_fit(hf_table(fixtures.Q(), "full", 0, 6))
    assert fit.coeffs == (2, Fraction(-1, 2), Fraction(5, 2))
    assert fit.to_str() == "5/2*d^2 - 1/2*d + 2"
    assert fit.agreement_from == 1 and not fit.window_limited


@pytest.mark.parametrize("name,lead", [("Q", Fraction(5, 2)), ("Qprime", Fraction(5, 2)),
                                       ("DeltaPlus", 2), ("T2", 2)])
def test_hp_leading_is_half_facet_count(name, lead):
    P = fixtures.fixture(name)
    fit = hp_fit(hf_table(P, "full", 1, 9, check=False))
    assert fit.leading == lead == Fraction(P.num_facets, 2)


def test_hp_window_limited_flag():
    t = HFTable("full", 0, 2, (7, 2, 5, 10))
    fit = hp_fit(t)
    assert fit.window_limited and fit.agreement_from == 1
    with pytest.raises(HilbertError):
        hp_fit(HFTable("full", 0, 2, (1, 2, 3)))


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.integers(0, 4))
def test_hp_recovers_quadratics(c, shift):
    vals = tuple(c[0] + c[1] * d + c[2] * d * d for d in range(8))
    junk = tuple(v + 1 if d < shift else v for d, v in enumerate(vals))
    fit = hp_fit(HFTable("x", 0, 2, junk))
    assert fit.agreement_from == shift and all(fit(d) == vals[d] for d in range(8))


def test_ls_table_q():
    assert hf_table(fixtures.Q(), "ls:2", 0, 6).values == (0, 1, 11, 23, 40, 62, 89)


def test_selectors():
    P = fixtures.Q()
    assert Selector.parse("supported:BE", P).facets == (1, 4)
    assert Selector.parse("supported:4,1").facets == (1, 4)
    assert str(Selector.parse("ls:1")) == "ls:1"
    for bad in ("nope", "supported", "full:3"):
        with pytest.raises(HilbertError):
            Selector.parse(bad)
    with pytest.raises(HilbertError):
        hf_table(P, "full", 0, 2)


def test_free_hf():
    assert [free_hf(2, d) for d in range(-1, 4)] == [0, 1, 3, 6, 10]


def test_generators_q():
    assert generator_degrees(fixtures.Q(), 0, 6).values == (1, 1, 2, 1, 0, 0, 0)
    assert generator_degrees(fixtures.Q(), 1, 8).values == (1, 0, 0, 0, 4, 0, 0, 0, 0)


@pytest.mark.parametrize("name,r", [("Q", 0), ("Q", 1), ("DeltaPlus", 1), ("T2", 0)])
def test_generators_bound_hf(name, r):
    # the module is a quotient of the free module on the generators
    P = fixtures.fixture(name)
    g = generator_degrees(P, r, 8, check=False).values
    hf = hf_table(P, "full", r, 8, check=False).values
    for d, h in enumerate(hf):
        assert h <= sum(ge * free_hf(2, d - e) for e, ge in enumerate(g))
        assert g[d] <= h


@pytest.mark.parametrize("n,r", [(2, 0), (2, 1), (3, 0)])
def test_tn_supported_generator(n, r):
    T = fixtures.build_tn(n)
    prof = generator_degrees(T, r, n * (r + 1) + 1, facets=[1])
    assert prof.degrees[0] == n * (r + 1)


def test_default_dmax():
    assert max_boundary_length(fixtures.Q()) == 4
    assert default_dmax(fixtures.Q(), 1) == 9
    assert default_dmax(fixtures.delta_plus(), 0) == 6
    T3 = fixtures.build_tn(3)
    assert default_dmax(T3, 1) >= 3 * 2 + 2


def test_conjecture_report_fields():
    rep = conjecture_report(fixtures.Q(), 0, 6)
    assert rep.ls_equal_from == 2
    assert rep.ls_regularity_bound == 3 and rep.full_regularity_bound == 3
    assert rep.hp == "5/2*d^2 - 1/2*d + 2"
    assert "window-limited" in rep.note
    assert json.loads(rep.to_json())["max_generator_degree"] == 3
    assert any("HF = HP observed from d = 1" in line for line in rep.lines())


def test_csv_output():
    t = hf_table(fixtures.delta_plus(), "full", 0, 4)
    assert t.to_csv().splitlines()[:2] == ["d,hf,oracle", "0,1,ok"]
