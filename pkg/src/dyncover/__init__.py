"""Dynamic set cover: a level-bucketed greedy core, four dynamic maintainers,
an exact oracle, and a benchmark harness with performance profiles."""

from dyncover.setsystem import SetSystem, load_instance, frequency_of
from dyncover.levels import (
    LevelState,
    PropertyReport,
    RebuildReport,
    check_properties,
    cover_of,
    level_of_size,
    nj_count,
    rebuild_below,
)
from dyncover.static_greedy import static_greedy
from dyncover.dynamizer import (
    DELETE,
    INSERT,
    SplitMix64,
    UpdateSequence,
    UpdateStep,
    dynamize,
    read_sequence,
    validate_sequence,
    write_sequence,
)
from dyncover.metrics import MetricsRecord, StepReport
from dyncover.oracle import OracleBudget, opt_cover

__version__ = "0.1.0"
