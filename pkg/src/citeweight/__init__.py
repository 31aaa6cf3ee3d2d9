"""Journal influence indicators from square citation matrices."""

__version__ = "0.1.0"

from .errors import CitationDataError, NumericalError
from .matrix import (
    DEFAULT_MAX_SIZE,
    ROWS_CITED,
    ROWS_CITING,
    CitationMatrix,
    JournalSet,
    MarginTotals,
    margins,
    matrix_power,
    parse_matrix_csv,
    serialize_matrix_csv,
    strip_self_citations,
    transpose,
)
from .fixtures import FIXTURES, load_fixture, price_matrix
from .metrics import (
    IterationStep,
    IterationTrace,
    NormalizedMatrix,
    PowerWeaknessResult,
    SelfCitationDiagnostics,
    WeightVector,
    impact_ratio,
    influence_weights,
    pinski_narin_normalize,
    power_iterate,
    power_weakness_ratio,
    raw_citation_counts,
    self_citation_diagnostics,
)
from .sensitivity import (
    INDICATORS,
    ConvergenceProfile,
    LinearFit,
    SensitivityReport,
    convergence_profile,
    linear_fit,
    self_citation_sensitivity,
)
from .report import FitReport, LabeledMatrix, Section, render_report, render_sections
from .cli import main

__all__ = [
    "CitationDataError",
    "NumericalError",
    "DEFAULT_MAX_SIZE",
    "ROWS_CITED",
    "ROWS_CITING",
    "CitationMatrix",
    "JournalSet",
    "MarginTotals",
    "margins",
    "matrix_power",
    "parse_matrix_csv",
    "serialize_matrix_csv",
    "strip_self_citations",
    "transpose",
    "FIXTURES",
    "load_fixture",
    "price_matrix",
    "IterationStep",
    "IterationTrace",
    "NormalizedMatrix",
    "PowerWeaknessResult",
    "SelfCitationDiagnostics",
    "WeightVector",
    "impact_ratio",
    "influence_weights",
    "pinski_narin_normalize",
    "power_iterate",
    "power_weakness_ratio",
    "raw_citation_counts",
    "self_citation_diagnostics",
    "INDICATORS",
    "ConvergenceProfile",
    "LinearFit",
    "SensitivityReport",
    "convergence_profile",
    "linear_fit",
    "self_citation_sensitivity",
    "FitReport",
    "LabeledMatrix",
    "Section",
    "render_report",
    "render_sections",
    "main",
    "__version__",
]
