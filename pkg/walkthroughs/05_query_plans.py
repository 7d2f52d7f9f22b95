"""
Search programs for new countries and periods
=============================================

The counts behind the indicators come from ten Web of Science steps.  The
strings are produced here; running them is left to the user.
"""

# %%
from triplehelix import build_plan, country_groups

# %%
print(build_plan("UK", 2006, 2010).to_text())

# %%
for group, countries in country_groups().items():
    print(group, ", ".join(countries))

# %%
# Extra abbreviations can be OR-ed into a sector pattern
plan = build_plan("NETHERLANDS", 2011, 2011, extra_terms={"G": ["RIJKSINST*"]})
print(plan.step(3).text)
print(plan.to_json())
