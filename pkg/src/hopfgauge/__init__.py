"""Exact computations with Hopf algebras, Yetter-Drinfeld modules and gauge twists.

Everything is dense structure-constant tensors over Q or F_p; see
:mod:`hopfgauge.linalg` for the conventions.
"""
from .linalg import Field, InputError, QQ
from .structures import (AlgebraData, BialgebraData, CoalgebraData, HopfData, Report, ad_invariant_integral,
                         check_structure, convolution_inverse, convolve)
from .yd import YDCoalgebraData, YDModuleData
from .prebialgebra import PreBialgebraData, SplittingDatum, bosonize_cocycle, check_cocycle, extract_prebialgebra
from .dualquasi import (BraidedDualQuasiData, DualQuasiData, bosonize_braided_dq, map_F, map_G,
                        twist_dual_quasi, twist_prebialgebra)
from .pipeline import PipelineReport, run_pipeline
from .examples import make_example

__version__ = "0.1.0"

__all__ = [
    "Field", "InputError", "QQ",
    "AlgebraData", "BialgebraData", "CoalgebraData", "HopfData", "Report",
    "ad_invariant_integral", "check_structure", "convolution_inverse", "convolve",
    "YDCoalgebraData", "YDModuleData",
    "PreBialgebraData", "SplittingDatum", "bosonize_cocycle", "check_cocycle", "extract_prebialgebra",
    "BraidedDualQuasiData", "DualQuasiData", "bosonize_braided_dq", "map_F", "map_G",
    "twist_dual_quasi", "twist_prebialgebra",
    "PipelineReport", "run_pipeline", "make_example",
]
