"""Cost-aware grouping of task-sorted design catalogs into standardized modules."""

from .catalog import (
    BaselineTotals,
    DesignCandidate,
    DesignCatalog,
    GeneratorProfile,
    baseline_aggregates,
    design_size,
    load_catalog,
    loads_catalog,
    save_catalog,
    synthesize_catalog,
)
from .cost import CostCurve, derive_kappa, saturation, sweep_bound
from .errors import (
    CatalogParseError,
    CatalogValidationError,
    ConstraintError,
    EnumerationCapError,
    ModgroupError,
    NormalizationError,
    ParameterError,
)
from .exhaustive import (
    DEFAULT_ENUMERATION_CAP,
    count_partitions,
    enumerate_partitions,
    exact_pareto,
)
from .nsga2 import (
    FrontEntry,
    GaConfig,
    ParetoArchive,
    crowding_distance,
    decode_cuts,
    encode_partition,
    non_dominated_sort,
    optimize_fixed_n,
)
from .objectives import (
    ObjectiveTriple,
    Partition,
    RatioTriple,
    evaluate,
    group_torque_ceiling,
    normalize,
    validate_partition,
)
from .sweep import (
    NFront,
    SweepReport,
    UtopiaRegion,
    closest_to_origin,
    derive_subseed,
    finite_differences,
    load_report,
    origin_distance,
    run_sweep,
    utopia_region,
    write_closest_csv,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineTotals",
    "CatalogParseError",
    "CatalogValidationError",
    "ConstraintError",
    "CostCurve",
    "DEFAULT_ENUMERATION_CAP",
    "DesignCandidate",
    "DesignCatalog",
    "EnumerationCapError",
    "FrontEntry",
    "GaConfig",
    "GeneratorProfile",
    "ModgroupError",
    "NFront",
    "NormalizationError",
    "ObjectiveTriple",
    "ParameterError",
    "ParetoArchive",
    "Partition",
    "RatioTriple",
    "SweepReport",
    "UtopiaRegion",
    "baseline_aggregates",
    "closest_to_origin",
    "count_partitions",
    "crowding_distance",
    "decode_cuts",
    "derive_kappa",
    "derive_subseed",
    "design_size",
    "encode_partition",
    "enumerate_partitions",
    "evaluate",
    "exact_pareto",
    "finite_differences",
    "group_torque_ceiling",
    "load_catalog",
    "load_report",
    "loads_catalog",
    "non_dominated_sort",
    "normalize",
    "optimize_fixed_n",
    "origin_distance",
    "run_sweep",
    "save_catalog",
    "saturation",
    "sweep_bound",
    "synthesize_catalog",
    "utopia_region",
    "validate_partition",
    "write_closest_csv",
    "write_report",
]
