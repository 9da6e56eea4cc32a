"""Spectra, sign graphs, and nodal domains of Schrodinger operators on
weighted finite trees.

Build a tree, assemble A = L + r, decompose, and interrogate the sign
structure of the eigenvectors — with executable checks for the
summation-by-parts identity, the exact nodal-count law, and zero
interlacing between consecutive eigenvectors.
"""

from . import errors
from .charpoly import charpoly_oracle, fl_coefficients
from .errors import (
    BadSize,
    BadWeightRange,
    CertificationError,
    DimensionMismatch,
    DuplicateEdge,
    HasCycle,
    IndexMismatch,
    NoConvergence,
    NonPositiveWeight,
    NotASignGraph,
    NotConnected,
    NotSimple,
    ParseError,
    RootDegreeNotOne,
    RootIsolationFailure,
    TooLarge,
    TreeError,
    TreeNodalError,
)
from .eigensolve import (
    BACKEND,
    EPS_RES,
    MAX_SWEEPS,
    MultiplicityReport,
    Spectrum,
    decompose,
    multiplicity_groups,
)
from .nodal import (
    AT_CHILD_VERTEX,
    EPS_Z_DEFAULT,
    INTERIOR,
    EdgeZero,
    LinearExtension,
    NodalDecomposition,
    NodalDomain,
    SignGraph,
    decomposition_to_dot,
    extend,
    locate_zeros,
    nodal_domains,
    sign_graphs,
)
from .operator import (
    EdgeFunction,
    SchrodingerOperator,
    adjoint,
    assemble,
    derivative,
    edge_inner,
    matrix_text,
    vertex_inner,
)
from .tree import (
    GENERATOR_KINDS,
    WeightedTree,
    from_json,
    generate,
    random_potential,
    to_dot,
    to_json,
    validate_tree,
)
from .verify import (
    CourantReport,
    GreensCheckReport,
    InterlacingReport,
    batch,
    courant_check,
    eigenvector_decomposition,
    greens_check,
    interlacing_check,
    perron_check,
    run_all,
    zero_dichotomy_check,
)

__version__ = "0.1.0"

__all__ = [
    "AT_CHILD_VERTEX",
    "BACKEND",
    "BadSize",
    "BadWeightRange",
    "CertificationError",
    "CourantReport",
    "DimensionMismatch",
    "DuplicateEdge",
    "EPS_RES",
    "EPS_Z_DEFAULT",
    "EdgeFunction",
    "EdgeZero",
    "GENERATOR_KINDS",
    "GreensCheckReport",
    "HasCycle",
    "INTERIOR",
    "IndexMismatch",
    "InterlacingReport",
    "LinearExtension",
    "MAX_SWEEPS",
    "MultiplicityReport",
    "NoConvergence",
    "NodalDecomposition",
    "NodalDomain",
    "NonPositiveWeight",
    "NotASignGraph",
    "NotConnected",
    "NotSimple",
    "ParseError",
    "RootDegreeNotOne",
    "RootIsolationFailure",
    "SchrodingerOperator",
    "SignGraph",
    "Spectrum",
    "TooLarge",
    "TreeError",
    "TreeNodalError",
    "WeightedTree",
    "adjoint",
    "assemble",
    "batch",
    "charpoly_oracle",
    "courant_check",
    "decompose",
    "decomposition_to_dot",
    "derivative",
    "edge_inner",
    "eigenvector_decomposition",
    "errors",
    "extend",
    "fl_coefficients",
    "from_json",
    "generate",
    "greens_check",
    "interlacing_check",
    "locate_zeros",
    "matrix_text",
    "multiplicity_groups",
    "nodal_domains",
    "perron_check",
    "random_potential",
    "run_all",
    "sign_graphs",
    "to_dot",
    "to_json",
    "validate_tree",
    "vertex_inner",
    "zero_dichotomy_check",
]
