from ._core import (
    ConvergenceError,
    Expr,
    ModelParams,
    ParseError,
    QuantizationError,
    ValidationError,
    __version__,
    build_constraints,
    build_hamiltonian,
    canonical_angular_momentum,
    classify_constraints,
    dirac_bracket,
    eigen_lowest,
    kinetic_momenta,
    parse,
    poisson_bracket,
    quantize_quadratic,
    reduced_angular_momentum,
    reduced_j_spectrum,
    run,
    solve_spectrum,
)

__all__ = [
    "ConvergenceError",
    "Expr",
    "ModelParams",
    "ParseError",
    "QuantizationError",
    "ValidationError",
    "__version__",
    "build_constraints",
    "build_hamiltonian",
    "canonical_angular_momentum",
    "classify_constraints",
    "dirac_bracket",
    "eigen_lowest",
    "kinetic_momenta",
    "parse",
    "poisson_bracket",
    "quantize_quadratic",
    "reduced_angular_momentum",
    "reduced_j_spectrum",
    "run",
    "solve_spectrum",
]
