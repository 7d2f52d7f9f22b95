import json
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from triplehelix.queries import EmptyCountry, InvalidYearRange, build_plan, country_groups, expand_country

UK = "(England OR Scotland OR Wales OR North Ireland)"
GOV = "(NATL* OR NACL* OR NAZL* OR GOVT* OR MINIST* OR ACAD* OR NIH*)"


def test_usa_2011_golden():
    plan = build_plan("USA", 2011, 2011)
    assert plan.to_text() == (
        "#1: PY=2011-2011 AND AD=(USA SAME (UNIV* OR COLL*))\n"
        "#2: PY=2011-2011 AND AD=(USA SAME (GMBH* OR CORP* OR LTD* OR AG*))\n"
        f"#3: PY=2011-2011 AND AD=(USA SAME {GOV})\n"
        f"#4: PY=2011-2011 AND AD=(USA SAME {GOV} SAME (UNIV* OR COLL*))\n"
        f"#5: PY=2011-2011 AND AD=(USA SAME {GOV} SAME (GMBH* OR CORP* OR LTD* OR AG*))\n"
        "#6: #3 NOT #4 NOT #5\n"
        "#7: #1 AND #2\n"
        "#8: #1 AND #6\n"
        "#9: #2 AND #6\n"
        "#10: #1 AND #2 AND #6\n"
    )


def test_uk_expansion():
    plan = build_plan("UK", 2011, 2011)
    assert plan.step(1).text == f"PY=2011-2011 AND AD=({UK} SAME (UNIV* OR COLL*))"


def test_china_window_g0():
    assert build_plan("CHINA", 2001, 2005).step(6).text == "#3 NOT #4 NOT #5"
    assert build_plan("CHINA", 2001, 2005).step(1).text.startswith("PY=2001-2005 AND ")


@pytest.mark.parametrize("name, out", [("UK", UK), ("uk", UK), (" Uk ", UK), ("FRANCE", "FRANCE")])
def test_expand_country(name, out):
    assert expand_country(name) == out


def test_errors():
    with pytest.raises(EmptyCountry):
        build_plan("  ", 2000, 2001)
    with pytest.raises(InvalidYearRange):
        build_plan("USA", 2011, 2010)


def test_bare_single_year_and_extra_terms():
    plan = build_plan("USA", 2011, 2011, bare_single_year=True, extra_terms={"g": ["INST*"]})
    assert plan.step(1).text.startswith("PY=2011 AND")
    assert "NIH* OR INST*)" in plan.step(3).text
    assert build_plan("USA", 2010, 2011, bare_single_year=True).step(1).text.startswith("PY=2010-2011")


def test_json_form():
    doc = json.loads(build_plan("JAPAN", 2006, 2010).to_json())
    assert [s["label"] for s in doc["steps"]] == [f"#{n}" for n in range(1, 11)]
    assert doc["steps"][9] == {"label": "#10", "kind": "boolean-combination", "text": "#1 AND #2 AND #6"}


def test_groups():
    g = country_groups()
    assert len(g["G7"]) == 7 and {"CANADA", "JAPAN"} <= set(g["G7"])
    assert g["BRICS"] == ("BRAZIL", "RUSSIA", "INDIA", "CHINA", "SOUTH AFRICA")
    assert g["INS"] == ("INDONESIA", "NETHERLANDS", "SOUTH KOREA")


@given(st.text(min_size=1, max_size=20).filter(lambda s: s.strip() and "\n" not in s), st.integers(1900, 2100), st.integers(0, 20))
def test_plan_structure(country, start, span):
    plan = build_plan(country, start, start + span)
    assert plan == build_plan(country, start, start + span)
    for step in plan.steps[:5]:
        assert step.kind == "direct-search"
        assert step.text.count("PY=") == 1 and step.text.count("AD=(") == 1
    for n, step in enumerate(plan.steps[5:], start=6):
        assert step.kind == "boolean-combination"
        assert all(int(ref) < n for ref in re.findall(r"#(\d+)", step.text))
    assert {ref for s in plan.steps[6:] for ref in re.findall(r"#\d+", s.text)} <= {"#1", "#2", "#6"}
