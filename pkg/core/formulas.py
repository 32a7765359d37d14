"""
Closed-form Hilbert-Kunz values, lower bounds and verdicts against estimates
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import comb

from .config import Config
from .errors import BadDims
from .frobenius import HKEstimate, ModulePresentation, rank_mod_p

logger = logging.getLogger(__name__)

Number = Union[Fraction, int]

# Smallest e_HK of a fiber product over k of two non-regular rings of dimension >= 2
FIBER_PRODUCT_THRESHOLD = Fraction(8, 3)
# e_HK of the 3-dimensional quadric x^2 + y^2 + z^2 + w^2 in odd characteristic
QUADRIC_VALUE_D3 = Fraction(4, 3)

FIBER_CASES = ("both-regular", "one-nonregular", "both-nonregular", "strict-dims")
MULTI_FIBER_CASES = ("equal-dimT", "strict")


@dataclass(frozen=True)
class FormulaVerdict:
    """Comparison of a predicted value with an estimate"""

    predicted: Fraction
    estimated: Optional[HKEstimate]
    value: Fraction
    absolute_gap: Fraction
    relative_gap: Fraction
    tolerance: Fraction
    passed: bool
    citation: str
    note: str = ""


def _value(estimate: Union[HKEstimate, Number]) -> Fraction:
    return estimate.value if isinstance(estimate, HKEstimate) else Fraction(estimate)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise BadDims(message)


# ----- Hilbert-Kunz formulas -----

def fiber_formula(ehkR: Number, ehkS: Number, ehkT: Number, dimR: int, dimS: int, dimT: int) -> Fraction:
    """e_HK(R x_T S) from the components, with dim R >= dim S >= dim T"""
    _require(dimR >= dimS >= dimT >= 0, f"need dim R >= dim S >= dim T >= 0, got ({dimR}, {dimS}, {dimT})")
    if dimR == dimS == dimT:
        return Fraction(ehkR) + Fraction(ehkS) - Fraction(ehkT)
    if dimR == dimS:
        return Fraction(ehkR) + Fraction(ehkS)
    return Fraction(ehkR)


def order_fiber_inputs(first: Tuple[Number, int], second: Tuple[Number, int]) -> Tuple[Tuple[Number, int], Tuple[Number, int]]:
    """Put the (e_HK, dim) pair of larger dimension first"""
    return (first, second) if first[1] >= second[1] else (second, first)


def multi_fiber_formula(ehks: Sequence[Number], dims: Sequence[int], ehkT: Number, dimT: int) -> Fraction:
    """e_HK of an r-factor fiber product over T"""
    r = len(ehks)
    _require(r >= 2 and len(dims) == r, "need at least two components with one dimension each")
    _require(all(d >= dimT >= 0 for d in dims), f"component dimensions {list(dims)} must be >= dim T = {dimT}")
    top = max(dims)
    if top == dimT:
        return sum((Fraction(e) for e in ehks), Fraction(0)) - (r - 1) * Fraction(ehkT)
    return sum((Fraction(e) for e, d in zip(ehks, dims) if d == top), Fraction(0))


def duplication_formula(ehkR: Number, dimR: int, ehkRmodI: Number, dimRmodI: int) -> Fraction:
    """e_HK of the amalgamated duplication along I"""
    _require(dimR >= dimRmodI >= 0, f"need dim R >= dim R/I >= 0, got ({dimR}, {dimRmodI})")
    if dimR == dimRmodI:
        return 2 * Fraction(ehkR) - Fraction(ehkRmodI)
    return 2 * Fraction(ehkR)


def idealization_formula(ehkR: Number, ehk_mM: Number) -> Fraction:
    """e_HK(R x| M) = e_HK(R) + e_HK(m, M)"""
    return Fraction(ehkR) + Fraction(ehk_mM)


def small_module_idealization_formula(ehkR: Number) -> Fraction:
    """dim M < dim R: the module contributes nothing"""
    return Fraction(ehkR)


def ideal_idealization_formula(ehkR: Number) -> Fraction:
    """R x| I for a proper ideal with dim R/I < dim R"""
    return 2 * Fraction(ehkR)


def betti_formula(betti: Sequence[int], ehkIR: Number) -> Fraction:
    """(sum (-1)^i beta_i + 1) e_HK(I, R) for a module of finite projective dimension"""
    alternating = sum((-1) ** i * b for i, b in enumerate(betti))
    return (alternating + 1) * Fraction(ehkIR)


def rank_formula(rank: int, ehkIR: Number) -> Fraction:
    """(rank M + 1) e_HK(I, R) over a local domain"""
    return (rank + 1) * Fraction(ehkIR)


def mu_bound(mu: int, ehkIR: Number, ehkJ: Number) -> bool:
    """e_HK(I, R) <= e_HK(J, R x| M) <= (1 + mu(M)) e_HK(I, R)"""
    _require(mu >= 0, "mu(M) is a non-negative count")
    return Fraction(ehkIR) <= Fraction(ehkJ) <= (1 + mu) * Fraction(ehkIR)


def minimal_generator_count(M: ModulePresentation) -> int:
    """mu(M): generators minus the rank of the relations matrix at the origin"""
    if M.n == 0 or M.m == 0:
        return M.n
    constants = np.array([[entry.constant_term() for entry in row] for row in M.matrix], dtype=np.int64)
    return M.n - rank_mod_p(constants, M.ring.p)


def veronese_hk(r: int, d: int) -> Fraction:
    """e_HK of the r-th Veronese subring of a d-dimensional power series ring"""
    _require(r >= 1 and d >= 1, f"need r >= 1 and d >= 1, got r={r}, d={d}")
    return Fraction(int(comb(d + r - 1, r - 1, exact=True)), r)


def veronese_fiber_hk(r1: int, r2: int, d: int) -> Fraction:
    """Fiber product over k of two Veronese subrings of the same power series ring"""
    return veronese_hk(r1, d) + veronese_hk(r2, d)


def hypersurface_fiber_values(n: int) -> Tuple[Fraction, Fraction, Fraction]:
    """(e_HK(R), e_HK(S), e_HK(R x_k S)) for R = (xy + z^(n+1)), S = (w^2 + uv^2 + u^(n-1))"""
    _require(n >= 4, f"the D-type component needs n >= 4, got {n}")
    ehkR = 2 - Fraction(1, n + 1)
    ehkS = 2 - Fraction(1, 4 * (n - 2))
    total = 4 - Fraction(5 * n - 7, 4 * (n + 1) * (n - 2))
    return ehkR, ehkS, total


# ----- lower bounds -----

def aberbach_enescu_bound(d: int) -> Fraction:
    """1 + 1 / (d (d! (d-1) + 1)^d), the gap above 1 for non-regular unmixed rings"""
    _require(d >= 2, f"the bound needs d >= 2, got {d}")
    return 1 + Fraction(1, d * (math.factorial(d) * (d - 1) + 1) ** d)


def delta(d: int) -> Fraction:
    return aberbach_enescu_bound(d) - 1


def fiber_bound(case: str, d: int) -> Fraction:
    """Lower bound for e_HK(R x_k S) in each regularity / dimension case"""
    if case not in FIBER_CASES:
        raise ValueError(f"unknown fiber bound case '{case}'")
    gap = delta(d)
    if case == "both-regular":
        return Fraction(2)
    if case == "one-nonregular":
        return 2 + gap
    if case == "both-nonregular":
        return 2 * (1 + gap)
    return 1 + gap


def multi_fiber_bound(r: int, t: int, d: int, ehkT: Number, case: str) -> Fraction:
    """Lower bound for an r-factor fiber product with t non-regular components of top dimension"""
    _require(r >= 2 and 1 <= t <= r, f"need r >= 2 and 1 <= t <= r, got r={r}, t={t}")
    if case not in MULTI_FIBER_CASES:
        raise ValueError(f"unknown multi-fiber bound case '{case}'")
    base = aberbach_enescu_bound(d)
    if case == "equal-dimT":
        return r * base - (r - 1) * Fraction(ehkT)
    return t * base


def idealization_bound(lambda_count: int, d: int) -> Fraction:
    """(1 + #Lambda)(1 + delta(d))"""
    _require(lambda_count >= 0, "the count of primes is non-negative")
    return (1 + lambda_count) * aberbach_enescu_bound(d)


def idealization_rank_bound(rank: int, d: int) -> Fraction:
    """(rank M + 1)(1 + delta(d))"""
    _require(rank >= 0, "rank is non-negative")
    return (rank + 1) * aberbach_enescu_bound(d)


# ----- sec + tan series -----

@lru_cache(maxsize=None)
def _secant_tangent_series(length: int) -> Tuple[Fraction, ...]:
    """Coefficients of sec x + tan x up to x^(length-1), by exact series division"""
    cos = [Fraction(0)] * length
    sin = [Fraction(0)] * length
    for k in range(length):
        term = Fraction((-1) ** (k // 2), math.factorial(k))
        if k % 2 == 0:
            cos[k] = term
        else:
            sin[k] = term

    # sec = 1 / cos, solved term by term from cos * sec = 1
    sec = [Fraction(0)] * length
    sec[0] = 1 / cos[0]
    for k in range(1, length):
        sec[k] = -sum((cos[j] * sec[k - j] for j in range(1, k + 1)), Fraction(0)) / cos[0]

    tan = [sum((sin[j] * sec[k - j] for j in range(k + 1)), Fraction(0)) for k in range(length)]
    return tuple(s + t for s, t in zip(sec, tan))


def zigzag_m(d: int) -> Fraction:
    """m_d, the coefficient of x^d in sec x + tan x"""
    _require(1 <= d <= Config.ZIGZAG_MAX_DEGREE,
             f"m_d is tabulated for 1 <= d <= {Config.ZIGZAG_MAX_DEGREE}, got {d}")
    return _secant_tangent_series(Config.ZIGZAG_MAX_DEGREE + 1)[d]


def watanabe_yoshida_bound(d: int) -> Fraction:
    """1 + m_d"""
    return 1 + zigzag_m(d)


# ----- verdicts -----

def verify(prediction: Number, estimate: Union[HKEstimate, Number], tolerance: Number = Config.DEFAULT_TOLERANCE,
           citation: str = "") -> FormulaVerdict:
    """Two-sided check: |prediction - estimate| / max(prediction, 1) <= tolerance"""
    tolerance = Fraction(tolerance)
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    predicted = Fraction(prediction)
    value = _value(estimate)
    gap = abs(predicted - value)
    relative = gap / max(predicted, Fraction(1))
    passed = relative <= tolerance
    if not passed:
        logger.info("verification failed: predicted %s, estimated %s (%s)", predicted, value, citation)
    return FormulaVerdict(predicted, estimate if isinstance(estimate, HKEstimate) else None,
                          value, gap, relative, tolerance, passed, citation)


def bound_check(bound: Number, estimate: Union[HKEstimate, Number], citation: str = "",
                note: str = "") -> FormulaVerdict:
    """One-sided check value >= bound; the relative gap is the shortfall below the bound"""
    bound = Fraction(bound)
    value = _value(estimate)
    shortfall = max(bound - value, Fraction(0))
    relative = shortfall / max(bound, Fraction(1))
    return FormulaVerdict(bound, estimate if isinstance(estimate, HKEstimate) else None,
                          value, abs(value - bound), relative, Fraction(0), shortfall == 0, citation, note)


def wy_check(estimate: Union[HKEstimate, Number], d: int, quadric_estimate: Optional[HKEstimate] = None,
             tolerance: Number = Config.DEFAULT_TOLERANCE) -> FormulaVerdict:
    """Is the estimate at least 1 + m_d, and at least the quadric's estimate less tolerance?"""
    _require(d >= 2, f"the quadric comparison needs d >= 2, got {d}")
    threshold = watanabe_yoshida_bound(d)
    citation = f"e_HK >= 1 + m_{d} = {threshold}"
    if quadric_estimate is not None:
        quadric = _value(quadric_estimate) - Fraction(tolerance)
        if quadric > threshold:
            threshold = quadric
            citation += f", e_HK >= quadric estimate - tolerance = {quadric}"
    note = ""
    if _value(estimate) == 1:
        note = "regular rings are outside the hypothesis of the lower bound"
    return bound_check(threshold, estimate, citation, note)


def bound_table(d: int) -> List[Tuple[str, Fraction]]:
    """Every bound family evaluated at dimension d"""
    rows = [("aberbach-enescu", aberbach_enescu_bound(d))]
    rows.extend((f"fiber {case}", fiber_bound(case, d)) for case in FIBER_CASES)
    rows.append(("idealization #Lambda=1", idealization_bound(1, d)))
    rows.append(("idealization rank=1", idealization_rank_bound(1, d)))
    rows.append(("watanabe-yoshida 1+m_d", watanabe_yoshida_bound(d)))
    return rows
