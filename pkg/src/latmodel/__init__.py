"""Transfer systems, weak factorization systems and model structures on finite lattices."""

from .arrowsets import (
    ArrowSet,
    composition_closure,
    cts_join,
    cts_meet,
    generate_cotransfer,
    generate_transfer,
    is_composition_closed,
    is_cotransfer_system,
    is_decomposable,
    is_saturated,
    is_transfer_system,
    is_wide_decomposable,
    k_max,
    t_max,
    ts_join,
    ts_meet,
)
from .enumeration import (
    CountReport,
    EnumerationRequest,
    brute_force_filter,
    enumerate_cotransfer_systems,
    enumerate_model_structures,
    enumerate_transfer_systems,
    enumerate_weak_equivalence_sets,
    enumerate_wide_decomposable,
    expected_count,
)
from .lattice import (
    Arrow,
    Lattice,
    chain,
    diamond,
    from_cover_relations,
    grid,
    parallel_composition,
    pentagon,
    product,
)
from .lifting import (
    WFS,
    Diagnosis,
    downward_extension,
    left_lift,
    left_lifters_oracle,
    lifts_against,
    right_lift,
    right_lifters_oracle,
    upward_extension,
    validate_wfs,
    wfs_from_cotransfer,
    wfs_from_transfer,
)
from .model import (
    AFInterval,
    ModelStructure,
    ac_min,
    af_interval,
    af_min,
    assemble_model_structure,
    check_pair_acw,
    check_pair_afw,
    dual_map,
    is_weak_equivalence_set,
    satisfies_factorization_condition,
    verify_model_structure,
)

__version__ = "0.1.0"
