"""Exact differential-linear analysis of (n,n)-functions over GF(2^n).

The package computes differential-linear connectivity tables and their
uniformity/spectra, alongside difference, Walsh and boomerang engines, for
function families built over explicit finite-field models.  Everything is
integer-exact; a compiled extension accelerates the full-table scans with a
pure-numpy fallback selected automatically at import.
"""

from ._kernels import BACKEND
from .errors import (
    BudgetExceededError,
    DlctError,
    NotBijectiveError,
    ParameterError,
    TableFormatError,
)
from .field import CONWAY_POLY, FieldSpec, SubfieldIso, parse_field_file
from .functions import (
    CubicGold,
    CubicPlusQuadratic,
    Dillon,
    FunctionTable,
    GeneralizedCyclotomic,
    Inverse,
    Kasami,
    PointModified,
    Power,
    Quadratic,
    SubfieldBranchInverse,
    build,
    cosets,
    load_table,
    save_table,
    subfield_branch_inverse,
)
from .kloosterman import (
    KloostermanProfile,
    ValueCoverageReport,
    dillon_dlct_predict,
    dillon_dlu_predict,
    extrema_closed_form,
    kloosterman,
    kloosterman_of_norm,
    kloosterman_profile,
    unit_circle_sum,
    verify_value_surjectivity,
)
from .spectra import (
    DluLowerBound,
    SpectrumHistogram,
    boomerang_uniformity,
    ddt_spectrum,
    ddt_uniformity,
    dlct_entry,
    dlct_row,
    dlct_spectrum,
    dlct_table_naive,
    dlu,
    dlu_lower_bound,
    dlu_witness,
    extended_boomerang_uniformity,
    fwht,
    nonlinearity,
    walsh_spectrum,
)
from .theorems import (
    LinearizedOperator,
    TheoremReport,
    canonical_kasami_exponent,
    check_cubic_bound,
    check_cubic_plus_quadratic_bound,
    check_inverse_formula,
    check_kasami_bound,
    check_modified_inverse,
    check_modified_kasami,
    check_point_modification,
    cubic_kernel_operator,
    cubic_kernel_sizes,
    cubic_phase_form,
    modified_dlct,
    modified_inverse_dlct,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceededError",
    "CONWAY_POLY",
    "CubicGold",
    "CubicPlusQuadratic",
    "Dillon",
    "DlctError",
    "DluLowerBound",
    "FieldSpec",
    "FunctionTable",
    "GeneralizedCyclotomic",
    "Inverse",
    "Kasami",
    "KloostermanProfile",
    "LinearizedOperator",
    "NotBijectiveError",
    "ParameterError",
    "PointModified",
    "Power",
    "Quadratic",
    "SpectrumHistogram",
    "SubfieldBranchInverse",
    "SubfieldIso",
    "TableFormatError",
    "TheoremReport",
    "ValueCoverageReport",
    "boomerang_uniformity",
    "build",
    "canonical_kasami_exponent",
    "check_cubic_bound",
    "check_cubic_plus_quadratic_bound",
    "check_inverse_formula",
    "check_kasami_bound",
    "check_modified_inverse",
    "check_modified_kasami",
    "check_point_modification",
    "cosets",
    "cubic_kernel_operator",
    "cubic_kernel_sizes",
    "cubic_phase_form",
    "ddt_spectrum",
    "ddt_uniformity",
    "dillon_dlct_predict",
    "dillon_dlu_predict",
    "dlct_entry",
    "dlct_row",
    "dlct_spectrum",
    "dlct_table_naive",
    "dlu",
    "dlu_lower_bound",
    "dlu_witness",
    "extended_boomerang_uniformity",
    "extrema_closed_form",
    "fwht",
    "kloosterman",
    "kloosterman_of_norm",
    "kloosterman_profile",
    "load_table",
    "modified_dlct",
    "modified_inverse_dlct",
    "nonlinearity",
    "parse_field_file",
    "save_table",
    "subfield_branch_inverse",
    "unit_circle_sum",
    "verify_value_surjectivity",
    "walsh_spectrum",
]
