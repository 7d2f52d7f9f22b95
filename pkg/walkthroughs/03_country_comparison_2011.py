"""
Static comparison of sixteen national systems, 2011
===================================================

The bundled 2011 table lists seven entropies per country (mbit).  T(UIG)
follows from them; the more negative, the more the three sectors are
integrated nationally.
"""

# %%
from triplehelix import rank_records, reference_table1
from triplehelix.charts import bar_chart
from triplehelix.dataset import rounding_budget
from triplehelix.measures import indicators_from_entropies

table = reference_table1()

# %%
# Recompute T(UIG) from the printed entropies and compare with the printed value
for rec in table:
    p = rec.payload
    t = indicators_from_entropies(p.entropies(), "mbit").get("tUIG", "mbit").value
    printed = p.reported_value("tUIG")
    budget = rounding_budget(list(p.entropies().values()) + [printed])
    print(f"{rec.label:18s} {t:8.2f} {printed:8.2f}  diff {t - printed:+.2f}  (rounding budget {budget:.2f})")

# %%
ranking = rank_records(table)
for e in ranking:
    print(f"{e.position:2d}  {e.key:18s} {e.t_uig:8.2f}")

# %%
with open("ranking_2011.svg", "w") as fh:
    fh.write(bar_chart([e.key for e in ranking], [e.t_uig for e in ranking], "T(UIG), 2011", "mbit"))
