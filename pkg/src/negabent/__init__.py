"""Nega-Hadamard analysis and bent-negabent constructions for Boolean functions."""

from .boolfun import AnfPolynomial, BooleanFunction, affine_compose, degree, sigma_d, weight
from .classify import (
    ClassificationReport,
    dual,
    extend_odd,
    is_bent,
    is_bent_negabent,
    is_negabent,
    is_semibent,
    odd_decompose,
)
from .construct import (
    ConstructionRecipe,
    build_bent_negabent,
    canonical_form,
    degree_targeted_construct,
    make_complete_linear_map,
    mm_function,
)
from .gf2 import Gf2Matrix
from .spectra import (
    GaussianInt,
    nega_transform_direct,
    nega_transform_fast,
    spectrum_histogram,
    walsh_transform,
)

__version__ = "0.1.0"
