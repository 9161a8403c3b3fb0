"""fermatvol: error-bounded Ceresa-cycle invariants of Fermat curves.

Layers, bottom up: exact cyclotomic arithmetic (``cyclotomic``),
bounded special functions and the unit-argument series engine
(``specfun``), curve periods and harmonic volume (``fermat``),
exterior-algebra permutation sums (``extalg``), invariant values and
verdicts (``ceresa``), and a CLI (``cli``).
"""

from .ceresa import (CeresaResult, ScanResult, f_value, klein_value,
                     multiples_scan, nonintegrality_check, table1)
from .cyclotomic import CycloElem, EmbeddingIndex, cyclo_from_power, embed, trace_to_rationals
from .fermat import (FermatCurve, FermatIndex, LoopIndex, TripleConfig,
                     assumption_check, delta_iterated_integral,
                     harmonic_volume_sigma, harmonic_volume_trace)
from .specfun import (AppellF3Params, BoundedComplex, BoundedReal, DivergenceError,
                      DomainError, Hyp3F2Params, PrecisionError, QuadratureSpec,
                      appell_f3_unit, dixon_family, euler_double_integral,
                      gamma_quotient, hyp3f2_unit, ln_gamma)

__version__ = "0.1.0"

__all__ = [
    "AppellF3Params", "BoundedComplex", "BoundedReal", "CeresaResult",
    "CycloElem", "DivergenceError", "DomainError", "EmbeddingIndex",
    "FermatCurve", "FermatIndex", "Hyp3F2Params", "LoopIndex",
    "PrecisionError", "QuadratureSpec", "ScanResult", "TripleConfig",
    "appell_f3_unit", "assumption_check", "cyclo_from_power",
    "delta_iterated_integral", "dixon_family", "embed",
    "euler_double_integral", "f_value", "gamma_quotient",
    "harmonic_volume_sigma", "harmonic_volume_trace", "hyp3f2_unit",
    "klein_value", "ln_gamma", "multiples_scan", "nonintegrality_check",
    "table1", "trace_to_rationals",
]
