"""
Frobenius bracket powers, Hilbert-Kunz functions and multiplicity estimates
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import Config
from .errors import (CharMismatch, InsufficientSamples, NotFrobeniusPower,
                     NotPrimary, ZeroDimensionalRing)
from .field import get_field
from .groebner import GroebnerBasis, buchberger, ideal_equal, normal_form
from .polynomial import Polynomial, RingPresentation
from .pool import map_ordered
from .staircase import is_artinian, standard_monomial_count, standard_monomials

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModulePresentation:
    """M = coker(A) for an n x m relations matrix A over a ring presentation"""

    ring: RingPresentation
    n: int
    matrix: Tuple[Tuple[Polynomial, ...], ...] = ()
    name: Optional[str] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("a module needs a non-negative generator count")
        if self.matrix and len(self.matrix) != self.n:
            raise ValueError(f"relations matrix has {len(self.matrix)} rows for {self.n} generators")
        widths = {len(row) for row in self.matrix}
        if len(widths) > 1:
            raise ValueError("relations matrix rows have different lengths")
        rows = tuple(tuple(self.ring.reduce(entry) for entry in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)

    @property
    def m(self) -> int:
        """Number of relation columns"""
        return len(self.matrix[0]) if self.matrix else 0

    def column(self, s: int) -> List[Polynomial]:
        return [row[s] for row in self.matrix]

    @classmethod
    def free(cls, ring: RingPresentation, n: int, name: Optional[str] = None) -> "ModulePresentation":
        return cls(ring, n, (), name)

    @classmethod
    def cyclic(cls, ring: RingPresentation, relations: Sequence[Polynomial],
               name: Optional[str] = None) -> "ModulePresentation":
        """R/K for K generated by relations"""
        return cls(ring, 1, (tuple(relations),) if relations else (), name)


@dataclass(frozen=True)
class HKSample:
    """One value l(M / J^[q] M) and its normalization by q^d"""

    e: int
    q: int
    length: int
    d: int
    seconds: float = field(default=0.0, compare=False)

    @property
    def normalized(self) -> Fraction:
        return Fraction(self.length, self.q ** self.d)


@dataclass(frozen=True)
class HKEstimate:
    """Extrapolated multiplicity with the samples it came from"""

    value: Fraction
    method: str
    samples: Tuple[HKSample, ...]
    error: Fraction = Fraction(0)
    lower_order: Fraction = Fraction(0)


# ----- bracket powers -----

def frobenius_exponent(q: int, p: int) -> int:
    """e with q = p^e, or NotFrobeniusPower"""
    if q < 1:
        raise NotFrobeniusPower(f"q={q} is not a power of {p}")
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise NotFrobeniusPower(f"q is not a power of the characteristic {p}")
    return e


def bracket_power(generators: Sequence[Polynomial], q: int) -> List[Polynomial]:
    """Generators of I^[q]: the q-th powers of the generators of I"""
    if not generators:
        return []
    p = generators[0].p
    frobenius_exponent(q, p)
    for g in generators:
        if g.p != p:
            raise CharMismatch(f"generators over GF({g.p}) and GF({p})")
    return [g.frobenius(q) for g in generators]


# ----- Hilbert-Kunz functions -----

def _is_primary(ring: RingPresentation, J: Sequence[Polynomial]) -> bool:
    """I + J defines the origin alone: Artinian, proper, and local at 0"""
    if any(g.constant_term() for g in list(ring.generators) + list(J)):
        return False
    gb = buchberger(list(ring.groebner().elements) + list(J), ring.order, ring.p, ring.nvars)
    if gb.is_unit() or not is_artinian(gb, ring.nvars):
        return False
    length = standard_monomial_count(gb, ring.nvars)
    # Every point other than the origin disappears after adding x_i^length
    powers = [Polynomial.monomial(ring.p, tuple(length if j == i else 0 for j in range(ring.nvars)), 1, ring.order)
              for i in range(ring.nvars)]
    local = buchberger(list(gb.elements) + powers, ring.order, ring.p, ring.nvars)
    return standard_monomial_count(local, ring.nvars) == length


def _prepare(ring: RingPresentation, J: Sequence[Polynomial]) -> int:
    J = [g.with_order(ring.order) for g in J]
    for g in J:
        if g.p != ring.p:
            raise CharMismatch(f"ideal over GF({g.p}) in a ring over GF({ring.p})")
    d = ring.dimension()
    if d == 0:
        raise ZeroDimensionalRing(f"{ring!r} has dimension 0")
    if not _is_primary(ring, J):
        raise NotPrimary("the ideal is not primary to the irrelevant maximal ideal")
    return d


def _bracket_basis(ring: RingPresentation, J: Sequence[Polynomial], q: int) -> GroebnerBasis:
    generators = list(ring.groebner().elements) + bracket_power([g.with_order(ring.order) for g in J], q)
    return buchberger(generators, ring.order, ring.p, ring.nvars)


def _ring_sample(e: int, ring: RingPresentation, J: Sequence[Polynomial], d: int) -> HKSample:
    started = time.perf_counter()
    q = ring.p ** e
    gb = _bracket_basis(ring, J, q)
    length = standard_monomial_count(gb, ring.nvars)
    elapsed = time.perf_counter() - started
    logger.info("e=%d q=%d length=%d (%.3fs)", e, q, length, elapsed)
    return HKSample(e, q, length, d, elapsed)


def hk_function(ring: RingPresentation, J: Sequence[Polynomial], e_max: int,
                workers: int = 1) -> List[HKSample]:
    """Samples l(R / (I + J^[q])) for q = p, ..., p^e_max"""
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    d = _prepare(ring, J)
    task = partial(_ring_sample, ring=ring, J=list(J), d=d)
    return map_ordered(task, list(range(1, e_max + 1)), workers)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over GF(p) by Gaussian elimination on int64 residues"""
    work = np.array(matrix, dtype=np.int64) % p
    rows, cols = work.shape
    field_ = get_field(p)
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(work[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        work[rank] = (work[rank] * field_.inv(int(work[rank, col]))) % p
        below = rank + 1 + np.nonzero(work[rank + 1:, col])[0]
        if below.size:
            factors = work[below, col][:, None]
            work[below] = (work[below] - factors * work[rank]) % p
        rank += 1
    return rank


def _module_sample(e: int, module: ModulePresentation, J: Sequence[Polynomial], d: int) -> HKSample:
    started = time.perf_counter()
    ring = module.ring
    q = ring.p ** e
    gb = _bracket_basis(ring, J, q)
    basis = standard_monomials(gb, ring.nvars)
    L = len(basis)
    n, m = module.n, module.m

    if n == 0:
        length = 0
    elif m == 0:
        length = n * L
    else:
        index: Dict[tuple, int] = {mono: k for k, mono in enumerate(basis)}
        relations = np.zeros((n * L, m * L), dtype=np.int64)
        for i in range(n):
            for s in range(m):
                entry = module.matrix[i][s]
                if entry.is_zero():
                    continue
                # Column (s, b) holds the coordinates of entry * b in B
                for k, mono in enumerate(basis):
                    product = normal_form(entry.mul_term(mono), gb)
                    for term, coeff in product.terms:
                        relations[i * L + index[term], s * L + k] = coeff
        length = n * L - rank_mod_p(relations, ring.p)

    elapsed = time.perf_counter() - started
    logger.info("module e=%d q=%d length=%d (%.3fs)", e, q, length, elapsed)
    return HKSample(e, q, length, d, elapsed)


def hk_module_function(module: ModulePresentation, J: Sequence[Polynomial], e_max: int,
                       workers: int = 1) -> List[HKSample]:
    """Samples l(M / J^[q] M), normalized by q^dim R"""
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    d = _prepare(module.ring, J)
    task = partial(_module_sample, module=module, J=list(J), d=d)
    return map_ordered(task, list(range(1, e_max + 1)), workers)


# ----- estimation -----

def _canonical_method(method: str) -> str:
    method = Config.FIT_METHODS.get(method, method)
    if method not in Config.FIT_METHODS.values():
        raise ValueError(f"unknown estimation method '{method}'")
    return method


def two_point_fit(first: HKSample, second: HKSample) -> Tuple[Fraction, Fraction]:
    """(a, b) with l = a q^d + b q^(d-1) at both samples"""
    d = second.d
    q1, q2 = first.q, second.q
    l1, l2 = first.length, second.length
    det = q2 ** d * q1 ** (d - 1) - q1 ** d * q2 ** (d - 1)
    a = Fraction(l2 * q1 ** (d - 1) - l1 * q2 ** (d - 1), det)
    b = Fraction(l1 * q2 ** d - l2 * q1 ** d, det)
    return a, b


def hk_estimate(samples: Sequence[HKSample], method: str = Config.DEFAULT_FIT) -> HKEstimate:
    """Estimate e_HK from samples by the last value or a two-term fit"""
    method = _canonical_method(method)
    samples = tuple(sorted(samples, key=lambda s: s.e))

    if method == "last-sample":
        if not samples:
            raise InsufficientSamples("last-sample needs at least one sample")
        return HKEstimate(samples[-1].normalized, method, samples[-1:])

    if len(samples) < 2:
        raise InsufficientSamples("two-point-fit needs at least two samples")
    value, lower = two_point_fit(samples[-2], samples[-1])
    if len(samples) >= 3:
        previous, _ = two_point_fit(samples[-3], samples[-2])
        error = abs(value - previous)
        if error:
            logger.warning("non-affine staircase detected: the fit moved from %s to %s between the "
                           "last two sample pairs", previous, value)
    else:
        error = abs(value - samples[-1].normalized)
        if error:
            logger.debug("two-point fit %s has error indicator %s", value, error)
    return HKEstimate(value, method, samples[-2:], error, lower)


def bracket_identity_check(ring: RingPresentation, I_lift: Sequence[Polynomial], q: int,
                           nilpotents: Sequence[Polynomial]) -> bool:
    """Compare (I + (y))^[q] with I^[q] extended to an idealization ring.

    nilpotents are the module variables y_i of the idealization, so
    I + (y) is the ideal I x| M.
    """
    if frobenius_exponent(q, ring.p) < 1:
        raise NotFrobeniusPower("the bracket identity needs q = p^e with e >= 1")
    I_lift = [g.with_order(ring.order) for g in I_lift]
    J = I_lift + [y.with_order(ring.order) for y in nilpotents]
    base = list(ring.groebner().elements)
    left = base + bracket_power(J, q)
    right = base + bracket_power(I_lift, q)
    return ideal_equal(left, right, ring.order)
