"""
Monomial ideal combinatorics: Artinian test, staircase counting, Krull dimension
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Sequence, Union

from .config import Config
from .errors import InfiniteLength, UnitIdeal
from .groebner import GroebnerBasis
from .monomial import Monomial, monomial_divides

logger = logging.getLogger(__name__)

Leads = Union[GroebnerBasis, Sequence[Monomial]]


def _leads(source: Leads) -> List[Monomial]:
    if isinstance(source, GroebnerBasis):
        return source.lead_monomials
    return [tuple(m) for m in source]


def minimalize(monomials: Iterable[Monomial]) -> List[Monomial]:
    """Minimal generators of the monomial ideal spanned by monomials"""
    result: List[Monomial] = []
    for m in sorted(set(monomials), key=sum):
        if not any(monomial_divides(g, m) for g in result):
            result.append(m)
    return result


def pure_power_bounds(source: Leads, nvars: int) -> List[int]:
    """Smallest a_i with x_i^a_i in the ideal, 0 where no pure power exists"""
    bounds = [0] * nvars
    for m in _leads(source):
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] == 0 or m[i] < bounds[i]:
                bounds[i] = m[i]
    return bounds


def is_artinian(source: Leads, nvars: int) -> bool:
    """True iff every variable has a pure power among the lead monomials"""
    leads = _leads(source)
    if any(sum(m) == 0 for m in leads):
        return True
    return all(pure_power_bounds(leads, nvars))


def standard_monomial_count(source: Leads, nvars: int) -> int:
    """Number of monomials outside an Artinian monomial ideal.

    Splits on a pivot x_i^a: the staircase of I is the staircase of
    I + (x_i^a) plus x_i^a times the staircase of I : x_i^a.
    """
    leads = _leads(source)
    if not is_artinian(leads, nvars):
        raise InfiniteLength("the monomial ideal is not Artinian; its quotient has infinite length")
    memo: Dict[FrozenSet[Monomial], int] = {}
    return _count(frozenset(minimalize(leads)), nvars, memo)


def _count(gens: FrozenSet[Monomial], nvars: int, memo: Dict[FrozenSet[Monomial], int]) -> int:
    cached = memo.get(gens)
    if cached is not None:
        return cached

    if any(sum(m) == 0 for m in gens):
        return 0
    mixed = [m for m in gens if sum(1 for e in m if e) > 1]
    bounds = pure_power_bounds(list(gens), nvars)

    if not mixed:
        result = 1
        for b in bounds:
            result *= b
    elif len(mixed) == 1:
        box = 1
        shadow = 1
        for b, e in zip(bounds, mixed[0]):
            box *= b
            shadow *= b - e
        result = box - shadow
    else:
        # Pivot on the variable occurring in the most mixed generators
        counts = [sum(1 for m in mixed if m[i]) for i in range(nvars)]
        var = max(range(nvars), key=lambda i: (counts[i], -i))
        power = min(m[var] for m in mixed if m[var])
        pivot = tuple(power if i == var else 0 for i in range(nvars))

        with_pivot = frozenset(minimalize(list(gens) + [pivot]))
        colon = frozenset(minimalize(
            tuple(max(e - power, 0) if i == var else e for i, e in enumerate(m)) for m in gens))
        result = _count(with_pivot, nvars, memo) + _count(colon, nvars, memo)

    memo[gens] = result
    return result


def standard_monomials(source: Leads, nvars: int) -> List[Monomial]:
    """All monomials outside an Artinian monomial ideal, in a fixed enumeration order"""
    leads = minimalize(_leads(source))
    if not is_artinian(leads, nvars):
        raise InfiniteLength("the monomial ideal is not Artinian; its staircase is infinite")
    if any(sum(m) == 0 for m in leads):
        return []
    bounds = pure_power_bounds(leads, nvars)
    found: List[Monomial] = []

    def walk(prefix: List[int], index: int) -> None:
        if index == nvars:
            found.append(tuple(prefix))
            return
        for e in range(bounds[index]):
            prefix.append(e)
            # Only generators supported on the fixed prefix can already divide
            candidate = tuple(prefix) + (0,) * (nvars - index - 1)
            if any(monomial_divides(g, candidate) for g in leads):
                prefix.pop()
                break
            walk(prefix, index + 1)
            prefix.pop()

    walk([], 0)
    return found


def krull_dimension(source: Leads, nvars: int) -> int:
    """nvars minus the smallest set of variables meeting every generator's support"""
    leads = minimalize(_leads(source))
    if not leads:
        return nvars
    if any(sum(m) == 0 for m in leads):
        raise UnitIdeal("the unit ideal has no Krull dimension")
    if nvars > Config.MAX_COVER_VARIABLES:
        raise ValueError(f"dimension search supports at most {Config.MAX_COVER_VARIABLES} variables")

    supports = sorted({frozenset(i for i, e in enumerate(m) if e) for m in leads}, key=len)
    # A support containing another one is covered whenever the smaller one is
    edges = [s for s in supports if not any(t < s for t in supports)]
    best = [nvars]

    def search(chosen: FrozenSet[int]) -> None:
        if len(chosen) >= best[0]:
            return
        uncovered = next((e for e in edges if not (e & chosen)), None)
        if uncovered is None:
            best[0] = len(chosen)
            return
        for var in sorted(uncovered):
            search(chosen | {var})

    search(frozenset())
    return nvars - best[0]
