"""Quantum cohomology of projective bundles over P^n, computed exactly."""

from .classical import (
    BundleError, BundleSpec, NormalForm, PresentationError, RingPresentation, chern_classes,
    classical_normal_form, classical_presentation, integrate_top, segre_classes,
)
from .exact_algebra import IntPoly, IntSeries, binomial_power_series
from .fano import (
    CurveClass, HypothesisError, anticanonical_degree, contributing_classes, extremal_classes,
    hypothesis_report, moduli_dimension,
)
from .gw import gw_table, known_invariants
from .quantum import (
    batyrev_presentation, quantum_normal_form, quantum_presentation, quantum_product,
    tangent_presentation, theoremB_shape, verify_presentation,
)
from .schubert import incident_line_class, integrate_grassmannian, integrate_mixed, obstruction_euler_class

__all__ = [
    "BundleError",
    "BundleSpec",
    "CurveClass",
    "HypothesisError",
    "IntPoly",
    "IntSeries",
    "NormalForm",
    "PresentationError",
    "RingPresentation",
    "anticanonical_degree",
    "batyrev_presentation",
    "binomial_power_series",
    "chern_classes",
    "classical_normal_form",
    "classical_presentation",
    "contributing_classes",
    "extremal_classes",
    "gw_table",
    "hypothesis_report",
    "incident_line_class",
    "integrate_grassmannian",
    "integrate_mixed",
    "integrate_top",
    "known_invariants",
    "moduli_dimension",
    "obstruction_euler_class",
    "quantum_normal_form",
    "quantum_presentation",
    "quantum_product",
    "segre_classes",
    "tangent_presentation",
    "theoremB_shape",
    "verify_presentation",
]
