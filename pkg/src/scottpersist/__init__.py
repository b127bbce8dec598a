"""Persistence modules over continuous posets: way-below oracles, Scott-limit functors
and interleaving distances, computed exactly."""
from .cellmod import (
    CellComplex,
    CellModule,
    CellMorphism,
    cosections,
    direct_sum,
    from_grid_encoding,
    hom_space,
    indicator,
    isomorphic,
    module_from_json,
    module_to_json,
    sections,
    shift,
    zero_module,
)
from .errors import (
    CommutationError,
    ComplexMismatchError,
    DimensionError,
    NotComputableError,
    PreconditionError,
    ScottPersistError,
    TranslationError,
    UnsupportedPosetError,
)
from .functors import (
    FunctorReport,
    PosetModule,
    indicator_closed_form,
    is_ephemeral,
    is_lower_semicontinuous,
    is_upper_semicontinuous,
    jstar_representative,
    l1_top,
    overline,
    r1_socle,
    scott_radical,
    scott_socle,
    scott_top,
    underline,
)
from .metrics import (
    INF,
    InterleavingCertificate,
    SuperlinearFamily,
    canonical_interleaving,
    check_interleaving,
    distance_indicator,
    distance_scott,
    distance_to_zero,
    standard_family,
    tr_flags,
)
from .poset import (
    FinitePoset,
    Product,
    RnCone,
    RnNonNeg,
    RnStandard,
    interpolate,
    is_compact,
    join,
    le,
    meet,
    validate_cone,
    way_below,
)
from .regions import (
    ConvexRegion,
    Region,
    boundary,
    closure,
    contains,
    down_set,
    interior,
    interior_down,
    is_injective_indicator_region,
    is_meager,
    subset,
    up_set,
)

__version__ = "0.1.0"
