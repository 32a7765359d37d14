"""
Core package for HKLab: finite field arithmetic, Groebner bases and Hilbert-Kunz computations
"""

from .config import Config
from .constructions import (ConstructionReport, amalgamated_duplication,
                            fiber_product_over_k, ideal_module, idealization,
                            multi_fiber_product_over_k)
from .field import FieldElement, PrimeField, get_field
from .frobenius import (HKEstimate, HKSample, ModulePresentation,
                        bracket_power, hk_estimate, hk_function,
                        hk_module_function)
from .groebner import GroebnerBasis, buchberger, normal_form, syzygy_basis
from .monomial import GREVLEX, LEX, MonomialOrder
from .polynomial import Polynomial, RingPresentation

__all__ = [
    'Config', 'PrimeField', 'FieldElement', 'get_field', 'MonomialOrder', 'GREVLEX', 'LEX',
    'Polynomial', 'RingPresentation', 'GroebnerBasis', 'buchberger', 'normal_form', 'syzygy_basis',
    'ModulePresentation', 'HKSample', 'HKEstimate', 'bracket_power', 'hk_function',
    'hk_module_function', 'hk_estimate', 'ConstructionReport', 'fiber_product_over_k',
    'multi_fiber_product_over_k', 'amalgamated_duplication', 'idealization', 'ideal_module',
]
