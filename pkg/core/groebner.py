"""
Groebner bases over GF(p): Buchberger with the product and chain criteria,
normal forms, syzygies and ideal comparison
"""

import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .config import Config
from .errors import ArityMismatch, CharMismatch, ExponentOverflow
from .field import get_field
from .monomial import (GREVLEX, Monomial, MonomialOrder, monomial_divides,
                       monomial_lcm)
from .polynomial import Polynomial

logger = logging.getLogger(__name__)

PolyDict = Dict[Monomial, int]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced monic Groebner basis, elements sorted by descending lead monomial"""

    p: int
    nvars: int
    order: MonomialOrder
    elements: Tuple[Polynomial, ...]

    @property
    def lead_monomials(self) -> List[Monomial]:
        return [g.lead_monomial for g in self.elements]

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.lead_monomials)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class SyzygyBasis:
    """Generators of the syzygy module of (f_1, ..., f_n)"""

    n: int
    rows: Tuple[Tuple[Polynomial, ...], ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.rows)


# ----- dictionary kernels -----

def _add_monos(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _reduce_dict(f: PolyDict, basis: Sequence[Tuple[Monomial, PolyDict]], order: MonomialOrder,
                 p: int, cofactors: Optional[List[PolyDict]] = None) -> PolyDict:
    """Fully reduce f against monic basis elements given as (lead, tail dict).

    When cofactors is given, cofactors[k] accumulates the multiplier of basis
    element k, so that f = sum(cofactors[k] * g_k) + remainder.
    """
    key = order.desc_key
    work = dict(f)
    heap = [(key(m), m) for m in work]
    heapq.heapify(heap)
    remainder: PolyDict = {}

    while heap:
        _, mono = heapq.heappop(heap)
        coeff = work.pop(mono, None)
        if coeff is None:
            continue
        for index, (lead, tail) in enumerate(basis):
            if monomial_divides(lead, mono):
                shift = tuple(x - y for x, y in zip(mono, lead))
                if cofactors is not None:
                    slot = cofactors[index]
                    slot[shift] = (slot.get(shift, 0) + coeff) % p
                    if not slot[shift]:
                        del slot[shift]
                for tmono, tcoeff in tail.items():
                    target = _add_monos(tmono, shift)
                    old = work.get(target)
                    value = ((old or 0) - coeff * tcoeff) % p
                    if value:
                        work[target] = value
                        if old is None:
                            heapq.heappush(heap, (key(target), target))
                    elif old is not None:
                        del work[target]
                break
        else:
            remainder[mono] = coeff
    return remainder


def _monic_split(f: PolyDict, order: MonomialOrder, p: int) -> Tuple[Monomial, PolyDict, int]:
    """Return (lead, monic tail, lead coefficient) of a nonzero dictionary polynomial"""
    lead = min(f, key=order.desc_key)
    lc = f[lead]
    inv = get_field(p).inv(lc)
    tail = {m: (c * inv) % p for m, c in f.items() if m != lead}
    return lead, tail, lc


def _common_ring(polys: Sequence[Polynomial], p: Optional[int], nvars: Optional[int]) -> Tuple[int, int]:
    if polys:
        p = polys[0].p if p is None else p
        nvars = polys[0].nvars if nvars is None else nvars
    if p is None or nvars is None:
        raise ValueError("an empty generator list needs an explicit characteristic and variable count")
    for f in polys:
        if f.p != p:
            raise CharMismatch(f"generators over GF({f.p}) and GF({p})")
        if f.nvars != nvars:
            raise ArityMismatch(f"generators over {f.nvars} and {nvars} variables")
    return p, nvars


# ----- public operations -----

def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by G; unique when G is reduced"""
    if f.p != G.p:
        raise CharMismatch(f"GF({f.p}) polynomial against a GF({G.p}) basis")
    if f.nvars != G.nvars:
        raise ArityMismatch(f"polynomial over {f.nvars} variables against a basis over {G.nvars}")
    basis = [(g.lead_monomial, {m: c for m, c in g.terms[1:]}) for g in G.elements]
    remainder = _reduce_dict(f.as_dict(), basis, G.order, G.p)
    return Polynomial.from_dict(G.p, G.nvars, remainder, G.order)


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder = GREVLEX,
               p: Optional[int] = None, nvars: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by generators.

    Pairs are processed by the normal strategy (smallest lcm degree first)
    and skipped by the product criterion or the chain criterion.
    """
    p, nvars = _common_ring(generators, p, nvars)
    basis: List[Tuple[Monomial, PolyDict]] = []
    pending: Set[Tuple[int, int]] = set()
    queue: List[Tuple[int, Tuple, int, int]] = []
    key = order.desc_key

    def add_element(poly: PolyDict) -> None:
        lead, tail, _ = _monic_split(poly, order, p)
        new = len(basis)
        basis.append((lead, tail))
        for old in range(new):
            lcm = monomial_lcm(basis[old][0], lead)
            if max(lcm, default=0) >= Config.EXPONENT_LIMIT:
                raise ExponentOverflow(f"S-polynomial lcm {lcm} exceeds the exponent limit")
            pending.add((old, new))
            heapq.heappush(queue, (sum(lcm), key(lcm), old, new))

    # Smallest generators first keeps early reductions cheap
    inputs = sorted((f.as_dict() for f in generators if not f.is_zero()),
                    key=lambda d: (min(map(key, d)), len(d)))
    for poly in inputs:
        reduced = _reduce_dict(poly, basis, order, p)
        if reduced:
            add_element(reduced)
    if any(sum(lead) == 0 for lead, _ in basis):
        unit = Polynomial.constant(p, nvars, 1, order)
        return GroebnerBasis(p, nvars, order, (unit,))

    processed = 0
    while queue:
        _, _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        lead_i, tail_i = basis[i]
        lead_j, tail_j = basis[j]
        lcm = monomial_lcm(lead_i, lead_j)

        # Product criterion: coprime leads
        if all(a == 0 or b == 0 for a, b in zip(lead_i, lead_j)):
            continue
        # Chain criterion
        if _chain_skip(i, j, lcm, basis, pending):
            continue

        spoly = _s_polynomial(lead_i, tail_i, lead_j, tail_j, lcm, p)
        remainder = _reduce_dict(spoly, basis, order, p)
        processed += 1
        if remainder:
            if all(x == 0 for x in min(remainder, key=key)):
                unit = Polynomial.constant(p, nvars, 1, order)
                return GroebnerBasis(p, nvars, order, (unit,))
            add_element(remainder)

    logger.debug("Buchberger finished: %d elements, %d reduced S-pairs", len(basis), processed)
    return GroebnerBasis(p, nvars, order, _interreduce(basis, order, p, nvars))


def _chain_skip(i: int, j: int, lcm: Monomial, basis, pending) -> bool:
    for k, (lead_k, _) in enumerate(basis):
        if k in (i, j) or not monomial_divides(lead_k, lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def _s_polynomial(lead_i, tail_i, lead_j, tail_j, lcm, p) -> PolyDict:
    shift_i = tuple(a - b for a, b in zip(lcm, lead_i))
    shift_j = tuple(a - b for a, b in zip(lcm, lead_j))
    result: PolyDict = {}
    for mono, coeff in tail_i.items():
        target = _add_monos(mono, shift_i)
        result[target] = (result.get(target, 0) + coeff) % p
    for mono, coeff in tail_j.items():
        target = _add_monos(mono, shift_j)
        result[target] = (result.get(target, 0) - coeff) % p
    return {m: c for m, c in result.items() if c}


def _interreduce(basis, order: MonomialOrder, p: int, nvars: int) -> Tuple[Polynomial, ...]:
    """Drop redundant leads, then reduce every tail against the rest"""
    key = order.desc_key
    minimal = []
    for index, (lead, tail) in enumerate(basis):
        redundant = False
        for other, (lead_o, _) in enumerate(basis):
            if other == index or not monomial_divides(lead_o, lead):
                continue
            # Equal leads: keep the earliest copy only
            if lead_o != lead or other < index:
                redundant = True
                break
        if not redundant:
            minimal.append((lead, tail))

    minimal.sort(key=lambda item: key(item[0]))
    elements = []
    for index, (lead, tail) in enumerate(minimal):
        others = [item for k, item in enumerate(minimal) if k != index]
        reduced_tail = _reduce_dict(tail, others, order, p)
        terms = dict(reduced_tail)
        terms[lead] = 1
        elements.append(Polynomial.from_dict(p, nvars, terms, order))
    return tuple(elements)


def syzygy_basis(generators: Sequence[Polynomial]) -> SyzygyBasis:
    """Generators of the syzygy module of the given polynomials.

    Runs Buchberger while tracking how each basis element is built from the
    inputs; every S-pair reduction yields a syzygy of the basis, coprime
    pairs contribute their Koszul syzygy, and all of them are pulled back to
    syzygies of the inputs.
    """
    if not generators:
        raise ValueError("syzygies need at least one generator")
    p, nvars = _common_ring(generators, None, None)
    order = generators[0].order
    key = order.desc_key
    n = len(generators)
    one = (0,) * nvars

    # basis[k] = (lead, tail, full monic dict); reps[k][s] expresses g_k via f_s
    basis: List[Tuple[Monomial, PolyDict]] = []
    full: List[PolyDict] = []
    reps: List[List[PolyDict]] = []
    basis_syzygies: List[Dict[int, PolyDict]] = []
    rows: List[Tuple[Polynomial, ...]] = []
    field_ = get_field(p)

    for s, f in enumerate(generators):
        if f.is_zero():
            unit_row = [Polynomial.zero(p, nvars, order) for _ in range(n)]
            unit_row[s] = Polynomial.constant(p, nvars, 1, order)
            rows.append(tuple(unit_row))
            continue
        lead, tail, lc = _monic_split(f.as_dict(), order, p)
        basis.append((lead, tail))
        full.append({**tail, lead: 1})
        rep = [{} for _ in range(n)]
        rep[s] = {one: field_.inv(lc)}
        reps.append(rep)

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        lead_i, tail_i = basis[i]
        lead_j, tail_j = basis[j]
        lcm = monomial_lcm(lead_i, lead_j)
        if max(lcm, default=0) >= Config.EXPONENT_LIMIT:
            raise ExponentOverflow(f"S-polynomial lcm {lcm} exceeds the exponent limit")

        if all(a == 0 or b == 0 for a, b in zip(lead_i, lead_j)):
            # Koszul: g_j * e_i - g_i * e_j
            basis_syzygies.append({i: dict(full[j]), j: {m: (-c) % p for m, c in full[i].items()}})
            continue

        shift_i = tuple(a - b for a, b in zip(lcm, lead_i))
        shift_j = tuple(a - b for a, b in zip(lcm, lead_j))
        spoly = _s_polynomial(lead_i, tail_i, lead_j, tail_j, lcm, p)
        cofactors: List[PolyDict] = [{} for _ in basis]
        remainder = _reduce_dict(spoly, basis, order, p, cofactors)

        # shift_i g_i - shift_j g_j - sum h_k g_k - lc(r) g_new = 0
        relation: Dict[int, PolyDict] = {}
        _accumulate(relation, i, {shift_i: 1}, p)
        _accumulate(relation, j, {shift_j: p - 1}, p)
        for k, h in enumerate(cofactors):
            if h:
                _accumulate(relation, k, {m: (-c) % p for m, c in h.items()}, p)

        if remainder:
            lead, tail, lc = _monic_split(remainder, order, p)
            # g_new = (S - sum h_k g_k) / lc, expressed through the inputs
            rep_new = [{} for _ in range(n)]
            _add_scaled(rep_new, reps[i], {shift_i: 1}, p)
            _add_scaled(rep_new, reps[j], {shift_j: p - 1}, p)
            for k, h in enumerate(cofactors):
                if h:
                    _add_scaled(rep_new, reps[k], {m: (-c) % p for m, c in h.items()}, p)
            inv = field_.inv(lc)
            rep_new = [{m: (c * inv) % p for m, c in entry.items()} for entry in rep_new]
            new = len(basis)
            basis.append((lead, tail))
            full.append({**tail, lead: 1})
            reps.append(rep_new)
            _accumulate(relation, new, {one: (-lc) % p}, p)
            pairs.extend((k, new) for k in range(new))
        basis_syzygies.append(relation)

    for relation in basis_syzygies:
        row: List[PolyDict] = [{} for _ in range(n)]
        for k, coeff in relation.items():
            _add_scaled(row, reps[k], coeff, p)
        if any(row):
            rows.append(tuple(Polynomial.from_dict(p, nvars, entry, order) for entry in row))

    unique = []
    seen = set()
    for row in rows:
        if row not in seen:
            seen.add(row)
            unique.append(row)
    logger.debug("syzygy basis: %d rows for %d generators", len(unique), n)
    return SyzygyBasis(n, tuple(unique))


def _dict_mul(a: PolyDict, b: PolyDict, p: int) -> PolyDict:
    result: PolyDict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = _add_monos(ma, mb)
            result[mono] = (result.get(mono, 0) + ca * cb) % p
    return {m: c for m, c in result.items() if c}


def _dict_add_into(target: PolyDict, addend: PolyDict, p: int) -> None:
    for mono, coeff in addend.items():
        value = (target.get(mono, 0) + coeff) % p
        if value:
            target[mono] = value
        else:
            target.pop(mono, None)


def _accumulate(relation: Dict[int, PolyDict], index: int, addend: PolyDict, p: int) -> None:
    slot = relation.setdefault(index, {})
    _dict_add_into(slot, addend, p)
    if not slot:
        del relation[index]


def _add_scaled(target: List[PolyDict], vector: List[PolyDict], factor: PolyDict, p: int) -> None:
    for s, entry in enumerate(vector):
        if entry:
            _dict_add_into(target[s], _dict_mul(entry, factor, p), p)


def ideal_equal(A: Sequence[Polynomial], B: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> bool:
    """True iff A and B generate the same ideal"""
    nonzero_a = [f.with_order(order) for f in A if not f.is_zero()]
    nonzero_b = [f.with_order(order) for f in B if not f.is_zero()]
    if not nonzero_a or not nonzero_b:
        return not nonzero_a and not nonzero_b
    p, nvars = _common_ring(nonzero_a + nonzero_b, None, None)
    return buchberger(nonzero_a, order, p, nvars).elements == buchberger(nonzero_b, order, p, nvars).elements


def ideal_contains(G: GroebnerBasis, f: Polynomial) -> bool:
    return normal_form(f.with_order(G.order), G).is_zero()
