"""Triple-Helix synergy indicators from university, industry and government publication counts."""

from .analysis import compare_scenarios, rank_by_synergy, rank_records, trend
from .dataset import Dataset, load, parse, reference_table1, reference_table2, serialize
from .measures import (
    EntropyValue,
    UniversePolicy,
    cells_to_joint3,
    conditional_entropy,
    configurational_information,
    convert_unit,
    entropy,
    indicator_set,
    joint_entropy,
    transmission2,
)
from .overlap import ExclusiveCells, InclusiveCounts, to_exclusive, to_inclusive, validate
from .queries import build_plan, country_groups, expand_country

__version__ = "0.1.0"
