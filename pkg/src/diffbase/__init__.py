"""diffbase: exact difference bases and difference sizes for cyclic and
dihedral groups and integer intervals, plus certified bound constructions."""

__version__ = "0.1.0"

from .groups import (  # noqa: F401
    Basis,
    CoverageMask,
    GroupKind,
    GroupSpec,
    cyclic,
    dihedral,
    difference_cover,
    interval,
    inv,
    is_difference_basis,
    mul,
    split_dihedral_basis,
)
from .search import (  # noqa: F401
    SearchConfig,
    SearchOutcome,
    find_basis_of_size,
    kernel_name,
    max_additional_coverage,
    min_difference_basis,
    min_interval_basis,
)
from .bounds import (  # noqa: F401
    BoundReport,
    Characteristic,
    bound_report,
    characteristic,
    check_analytic_inequality,
    dihedral_lower_bound,
    exact_by_theorem,
    lower_bound_generic,
    prime_powers_up_to,
    verify_gap_inequality,
)
from .constructions import (  # noqa: F401
    CertifiedBasis,
    bose_chowla_set,
    cyclic_basis_from_interval,
    dihedral_basis_from_cyclic,
    is_perfect_difference_set,
    is_sidon_set,
    product_basis,
    singer_set,
    subgroup_transversal_basis,
)
from .cache import CacheRecord, ResultCache, make_record  # noqa: F401
