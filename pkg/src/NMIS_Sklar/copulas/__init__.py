from .compose import ComposedJoint, roundtrip_check, sklar_compose
from .extension import (
    Copula,
    CopulaKind,
    Fill,
    FunctionCopula,
    comonotone_copula,
    copula_integral,
    countermonotone_copula,
    extend_checkerboard,
    extend_patchwork,
    extensions_coincide,
    independence_copula,
    verify_copula_axioms,
    verify_grid_agreement,
)
from .registry import ExtensionRegistry, extensions
from .subcopula import Subcopula, extract, subcopula_is_copula, verify_representation, verify_subcopula_axioms

__all__ = [
    "Subcopula",
    "extract",
    "subcopula_is_copula",
    "verify_representation",
    "verify_subcopula_axioms",
    "Copula",
    "CopulaKind",
    "Fill",
    "FunctionCopula",
    "independence_copula",
    "comonotone_copula",
    "countermonotone_copula",
    "extend_checkerboard",
    "extend_patchwork",
    "verify_copula_axioms",
    "verify_grid_agreement",
    "extensions_coincide",
    "copula_integral",
    "ComposedJoint",
    "sklar_compose",
    "roundtrip_check",
    "ExtensionRegistry",
    "extensions",
]
