"""
Exponent-vector monomials and monomial orders
"""

from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

from .config import Config
from .errors import ArityMismatch, ExponentOverflow, NotDivisible

Monomial = Tuple[int, ...]


def check_arity(a: Monomial, b: Monomial) -> None:
    if len(a) != len(b):
        raise ArityMismatch(f"monomials over {len(a)} and {len(b)} variables")


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    product = tuple(x + y for x, y in zip(a, b))
    if product and max(product) >= Config.EXPONENT_LIMIT:
        raise ExponentOverflow(f"exponent {max(product)} exceeds {Config.EXPONENT_LIMIT - 1}")
    return product


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b"""
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    """a / b, requires b | a"""
    if not monomial_divides(b, a):
        raise NotDivisible(f"{b} does not divide {a}")
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_pow(a: Monomial, n: int) -> Monomial:
    power = tuple(x * n for x in a)
    if power and max(power) >= Config.EXPONENT_LIMIT:
        raise ExponentOverflow(f"exponent {max(power)} exceeds {Config.EXPONENT_LIMIT - 1}")
    return power


def monomial_ops(op: str, a: Monomial, b: Monomial) -> Union[Monomial, bool]:
    """Dispatch mul, divides, quotient or lcm on two monomials"""
    check_arity(a, b)
    if op == "mul":
        return monomial_mul(a, b)
    if op == "divides":
        return monomial_divides(a, b)
    if op == "quotient":
        return monomial_quotient(a, b)
    if op == "lcm":
        return monomial_lcm(a, b)
    raise ValueError(f"unknown monomial operation '{op}'")


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-x for x in reversed(m)))


def _lex_key(m: Monomial):
    return m


@dataclass(frozen=True)
class MonomialOrder:
    """Lex or graded reverse lex, optionally after permuting the variables"""

    kind: str = Config.DEFAULT_ORDER
    permutation: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in Config.MONOMIAL_ORDERS:
            raise ValueError(f"unsupported monomial order '{self.kind}'")
        if self.permutation is not None and sorted(self.permutation) != list(range(len(self.permutation))):
            raise ValueError(f"{self.permutation} is not a permutation")

    @property
    def key(self) -> Callable[[Monomial], tuple]:
        """Sort key: larger key means larger monomial"""
        base = _grevlex_key if self.kind == "grevlex" else _lex_key
        if self.permutation is None:
            return base
        perm = self.permutation
        return lambda m: base(tuple(m[i] for i in perm))

    @property
    def desc_key(self) -> Callable[[Monomial], tuple]:
        """Sort key that puts larger monomials first (also a min-heap key)"""
        if self.kind == "grevlex":
            base = lambda m: (-sum(m), tuple(reversed(m)))
        else:
            base = lambda m: tuple(-x for x in m)
        if self.permutation is None:
            return base
        perm = self.permutation
        return lambda m: base(tuple(m[i] for i in perm))

    def compare(self, a: Monomial, b: Monomial) -> int:
        check_arity(a, b)
        if self.permutation is not None and len(self.permutation) != len(a):
            raise ArityMismatch(f"order permutes {len(self.permutation)} variables, monomial has {len(a)}")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __str__(self):
        return self.kind if self.permutation is None else f"{self.kind}{list(self.permutation)}"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def monomial_cmp(order: MonomialOrder, a: Monomial, b: Monomial) -> str:
    """Compare two monomials, returning 'LT', 'EQ' or 'GT'"""
    return {-1: "LT", 0: "EQ", 1: "GT"}[order.compare(a, b)]
