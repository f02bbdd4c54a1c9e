"""Lie algebras: structure constants, graded bracket rules, constructions, checks."""
from .algebra import FiniteLieAlgebra, GradedBracketRule, LieElement, bracket, label_text
from .catalog import (
    AGEING_LABELS,
    ALT_LABELS,
    abelian,
    alt,
    alt_ageing,
    build_algebra,
    heis3,
    p3,
    sl2,
    vect,
    vir_plus_vir_window,
    vir_window,
    w_window,
)
from .checks import (
    JacobiReport,
    LieMorphism,
    MorphismReport,
    bracket_span_dimension,
    check_morphism,
    identity_morphism,
    jacobi_check,
)
from .constructions import change_basis, grassmann_double, semidirect_product
from .serialize import structure_dict, structure_json


def prop_phi(half=True):
    """The map from alt (ageing labels) onto sl2 (x) R[e]/e^2.

    With ``half=False`` the factor 1/2 on X1 is dropped, which breaks the bracket.
    """
    target = grassmann_double(sl2())
    images = {
        "V+": {"L1": 1},
        "D": {"L0": 1},
        "Y-1/2": {"L-1": 1},
        "X1": {"L1e": "1/2" if half else 1},
        "Y1/2": {"L0e": 1},
        "M0": {"L-1e": 1},
    }
    from fractions import Fraction

    images = {k: {t: Fraction(v) for t, v in img.items()} for k, img in images.items()}
    return LieMorphism(alt_ageing(), target, images)


__all__ = [
    "AGEING_LABELS", "ALT_LABELS", "FiniteLieAlgebra", "GradedBracketRule", "JacobiReport",
    "LieElement", "LieMorphism", "MorphismReport", "abelian", "alt", "alt_ageing", "bracket",
    "bracket_span_dimension", "build_algebra", "change_basis", "check_morphism", "grassmann_double",
    "heis3", "identity_morphism", "jacobi_check", "label_text", "p3", "prop_phi", "semidirect_product",
    "sl2", "structure_dict", "structure_json", "vect", "vir_plus_vir_window", "vir_window", "w_window",
]
