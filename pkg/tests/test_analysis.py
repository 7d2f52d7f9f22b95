import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from triplehelix.analysis import (
    MissingValue,
    NoOverlap,
    bilateral_decomposition,
    bilateral_from_records,
    compare_scenarios,
    growth_series,
    rank_by_synergy,
    rank_records,
    record_series,
    sign_pattern,
    trend,
)
from triplehelix.dataset import CountryWindowRecord, CountsPayload, PayloadUnavailable, TPayload, reference_table1, reference_table2
from triplehelix.measures import UniversePolicy, from_bits
from triplehelix.overlap import ExclusiveCells, InclusiveCounts


def test_rank_table1_ends():
    ranking = rank_records(reference_table1())
    assert ranking[0].key == "INDIA"
    assert ranking[-1].key == "GERMANY"
    assert [e.position for e in ranking] == list(range(1, 17))
    assert next(e.position for e in ranking if e.key == "CHINA (CAS-as-U)") == 15


def test_rank_ties_alphabetical():
    ranking = rank_by_synergy({"B": -1.0, "A": -1.0, "C": -2.0})
    assert [e.key for e in ranking] == ["C", "A", "B"]


def test_rank_missing_value():
    with pytest.raises(MissingValue):
        rank_by_synergy({"A": None, "B": -1.0})


@given(st.dictionaries(st.text(min_size=1, max_size=4), st.floats(-500, 0, allow_nan=False), min_size=1, max_size=10), st.randoms())
def test_rank_is_total_and_order_independent(values, rnd):
    items = list(values.items())
    rnd.shuffle(items)
    a, b = rank_by_synergy(values), rank_by_synergy(dict(items))
    assert a == b
    assert sorted(e.position for e in a) == list(range(1, len(values) + 1))
    assert all(x.t_uig <= y.t_uig for x, y in zip(a, a[1:]))


def _series(country, scenario="default"):
    return list(record_series(reference_table2().series(country, scenario)).values())


@pytest.mark.parametrize(
    "country, scenario",
    [("USA", "default"), ("UK", "default"), ("JAPAN", "default"), ("BRAZIL", "default"), ("SOUTH AFRICA", "default"),
     ("CHINA", "CAS-as-G"), ("CHINA", "CAS-as-U")],
)
def test_trend_toward_zero(country, scenario):
    assert trend(_series(country, scenario)).classification == "toward-zero"


def test_trend_india():
    s = trend(_series("INDIA"), "INDIA")
    assert (s.first, s.last) == (-101.9, -118.7)
    assert s.classification in ("away-from-zero", "mixed")


def test_trend_usa_endpoints():
    s = trend(_series("USA"))
    assert (s.first, s.last) == (-82.03, -33.71)


def test_trend_constant_and_short():
    assert trend([-5.0] * 4).classification == "mixed"
    assert trend([None, -3.0]).classification == "insufficient-data"
    assert trend([]).classification == "insufficient-data"


def test_trend_skips_missing_windows():
    s = trend(_series("RUSSIA"))
    assert s.first == -61.54
    assert s.classification == "toward-zero"


@given(st.lists(st.one_of(st.none(), st.floats(-1000, -0.001)), max_size=10))
def test_trend_unit_invariant(values):
    bits = [None if v is None else v / 1000 for v in values]
    assert trend(values).classification == trend(bits).classification


def test_china_scenario_deltas():
    t2 = reference_table2()
    g = record_series(t2.series("CHINA", "CAS-as-G"))
    u = record_series(t2.series("CHINA", "CAS-as-U"))
    deltas = {d.window: d for d in compare_scenarios(g, u)}
    assert deltas[(2001, 2005)].difference == 14.95
    assert (deltas[(2001, 2005)].a, deltas[(2001, 2005)].b) == (-30.29, -15.34)
    assert deltas[(1971, 1975)].difference == 0
    assert sign_pattern(list(deltas.values())) == "0-++++++"


def test_identical_series_all_zero():
    s = {(2000, 2004): -1.25, (2005, 2009): None}
    assert [d.difference for d in compare_scenarios(s, s)] == [0.0]


def test_no_overlap():
    with pytest.raises(NoOverlap):
        compare_scenarios({(2000, 2004): -1.0}, {(2005, 2009): -1.0})


@given(st.dictionaries(st.sampled_from([(y, y + 4) for y in range(1971, 2011, 5)]), st.floats(-300, 0), min_size=1),
       st.floats(-50, 50))
def test_compare_antisymmetric(a, shift):
    b = {w: v + shift for w, v in a.items()}
    ab, ba = compare_scenarios(a, b), compare_scenarios(b, a)
    assert [d.difference for d in ab] == [-d.difference for d in ba]


def test_bilateral_single_cell():
    (p,) = bilateral_decomposition({(2000, 2000): ExclusiveCells(0, 0, 0, 0, 0, 0, 5)})
    assert (p.tUI, p.tUG, p.tIG) == (0.0, 0.0, 0.0)


def test_bilateral_disjoint_sectors():
    # U-only and I-only documents: membership of U determines I, 2x2 marginal [[0, .5], [.5, 0]]
    (p,) = bilateral_decomposition({(2000, 2000): ExclusiveCells(3, 3, 0, 0, 0, 0, 0)})
    assert p.tUI == pytest.approx(1.0, abs=1e-12)
    assert p.tUG == pytest.approx(0.0, abs=1e-12)


def test_bilateral_product_joint_is_zero():
    # P(U)=1/2, P(I)=1/4, P(G)=1/5 independent, 40 documents
    pu, pi, pg, n = 0.5, 0.25, 0.2, 40
    cell = {
        k: round(n * (pu if k[0] else 1 - pu) * (pi if k[1] else 1 - pi) * (pg if k[2] else 1 - pg))
        for k in itertools.product((0, 1), repeat=3)
    }
    cells = ExclusiveCells(
        cell[1, 0, 0], cell[0, 1, 0], cell[0, 0, 1], cell[1, 1, 0], cell[1, 0, 1], cell[0, 1, 1], cell[1, 1, 1]
    )
    assert cells.union + cell[0, 0, 0] == n
    (p,) = bilateral_decomposition({(2000, 2000): cells}, UniversePolicy.with_none(n))
    assert max(abs(p.tUI), abs(p.tUG), abs(p.tIG)) <= 1e-9


def _counts_record(window, c):
    return CountryWindowRecord("X", "default", window, CountsPayload(InclusiveCounts(*c)))


def test_bilateral_from_records_and_unavailable():
    recs = [_counts_record((2005, 2005), (11, 10, 6, 5, 2, 3, 1)), _counts_record((2000, 2000), (3, 3, 0, 0, 0, 0, 0))]
    pts = bilateral_from_records(recs, unit="mbit")
    assert [p.window for p in pts] == [(2000, 2000), (2005, 2005)]
    assert pts[0].tUI == pytest.approx(1000.0)
    assert all(v >= 0 for p in pts for v in (p.tUI, p.tUG, p.tIG))
    with pytest.raises(PayloadUnavailable):
        bilateral_from_records(reference_table2().series("USA"))


def test_growth_series():
    assert growth_series([]) == []
    recs = [_counts_record((2005, 2005), (1, 2, 3, 0, 0, 0, 0)), _counts_record((2000, 2000), (11, 10, 6, 5, 2, 3, 1))]
    g = growth_series(recs)
    assert [(p.u0, p.i0, p.g0) for p in g] == [(11, 10, 6), (1, 2, 3)]
    with pytest.raises(PayloadUnavailable):
        growth_series([CountryWindowRecord("X", "default", (2000, 2000), TPayload(-1.0))])
