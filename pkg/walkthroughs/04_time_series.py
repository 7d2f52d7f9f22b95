"""
Five-year windows, 1971-2010
============================

Trend of |T(UIG)| per country, and the effect of counting the Chinese
Academy of Sciences as university or as government.
"""

# %%
from triplehelix import compare_scenarios, reference_table2, trend
from triplehelix.analysis import record_series, sign_pattern
from triplehelix.charts import line_chart
from triplehelix.dataset import fmt_window

table = reference_table2()

# %%
for country, scenario in table.keys():
    series = record_series(table.series(country, scenario))
    s = trend(list(series.values()), f"{country}/{scenario}")
    print(f"{s.key:22s} {s.first:8.2f} -> {s.last:8.2f}  slope(|T|) {s.slope:+7.2f}  {s.classification}")

# %%
as_g = record_series(table.series("CHINA", "CAS-as-G"))
as_u = record_series(table.series("CHINA", "CAS-as-U"))
deltas = compare_scenarios(as_g, as_u)
for d in deltas:
    print(fmt_window(d.window), d.a, d.b, d.difference)
print("sign pattern:", sign_pattern(deltas))

# %%
usa = record_series(table.series("USA"))
with open("china_usa.svg", "w") as fh:
    fh.write(
        line_chart(
            [fmt_window(w) for w in usa],
            {"USA": list(usa.values()), "CHINA (CAS as G)": list(as_g.values()), "CHINA (CAS as U)": list(as_u.values())},
            "T(UIG) 1971-2010",
            "mbit",
        )
    )
