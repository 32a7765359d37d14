"""
Prime field arithmetic GF(p)
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

from sympy import isprime

from .config import Config
from .errors import CharMismatch, DivisionByZero, NotPrime


class PrimeField:
    """The prime field GF(p) acting on plain integer residues"""

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or p >= Config.CHARACTERISTIC_LIMIT or not isprime(p):
            raise NotPrime(f"characteristic must be a prime below 2^31, got {p}")
        self.p = p
        self._inverses: Optional[List[int]] = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (get_field, (self.p,))

    def reduce(self, value: int) -> int:
        return value % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        """Multiplicative inverse; table lookup for small p, Fermat otherwise"""
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.p})")
        if self.p <= Config.INVERSE_TABLE_LIMIT:
            if self._inverses is None:
                self._inverses = self._build_inverse_table()
            return self._inverses[a]
        return pow(a, self.p - 2, self.p)

    def _build_inverse_table(self) -> List[int]:
        # inv(i) = -(p // i) * inv(p mod i)
        p = self.p
        table = [0, 1] + [0] * (p - 2)
        for i in range(2, p):
            table[i] = (p - (p // i) * table[p % i] % p) % p
        return table


@lru_cache(maxsize=None)
def get_field(p: int) -> PrimeField:
    """Shared PrimeField instance for p"""
    return PrimeField(p)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p), always fully reduced"""

    residue: int
    p: int

    def __post_init__(self):
        get_field(self.p)
        object.__setattr__(self, "residue", self.residue % self.p)

    def __str__(self):
        return str(self.residue)


def field_arith(op: str, a: FieldElement, b: Optional[FieldElement] = None) -> FieldElement:
    """Apply add, sub, mul, inv or neg to field elements"""
    field = get_field(a.p)
    if op in ("inv", "neg"):
        value = field.inv(a.residue) if op == "inv" else field.neg(a.residue)
        return FieldElement(value, a.p)

    if b is None:
        raise ValueError(f"operation '{op}' needs two operands")
    if a.p != b.p:
        raise CharMismatch(f"GF({a.p}) and GF({b.p}) elements cannot be combined")

    if op == "add":
        value = field.add(a.residue, b.residue)
    elif op == "sub":
        value = field.sub(a.residue, b.residue)
    elif op == "mul":
        value = field.mul(a.residue, b.residue)
    else:
        raise ValueError(f"unknown field operation '{op}'")
    return FieldElement(value, a.p)
