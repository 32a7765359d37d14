"""
Sparse multivariate polynomials over GF(p) and ring presentations
"""

import logging
import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .config import Config
from .errors import ArityMismatch, CharMismatch, ExponentOverflow, UnknownVariable
from .field import PrimeField, get_field
from .monomial import GREVLEX, Monomial, MonomialOrder, monomial_mul

logger = logging.getLogger(__name__)

Term = Tuple[Monomial, int]


class Polynomial:
    """Immutable sparse polynomial; terms sorted strictly descending in its order"""

    __slots__ = ("p", "nvars", "order", "terms", "_dict", "_hash")

    def __init__(self, p: int, nvars: int, terms: Union[Dict[Monomial, int], Iterable[Term]] = (),
                 order: MonomialOrder = GREVLEX):
        self.p = p
        self.nvars = nvars
        self.order = order
        items = terms.items() if isinstance(terms, dict) else terms

        collected: Dict[Monomial, int] = {}
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ArityMismatch(f"monomial {mono} in a ring with {nvars} variables")
            if mono and max(mono) >= Config.EXPONENT_LIMIT:
                raise ExponentOverflow(f"exponent {max(mono)} exceeds {Config.EXPONENT_LIMIT - 1}")
            collected[mono] = (collected.get(mono, 0) + int(coeff)) % p
        self._dict = {m: c for m, c in collected.items() if c}
        self.terms: Tuple[Term, ...] = tuple(
            sorted(self._dict.items(), key=lambda t: order.desc_key(t[0])))
        self._hash = None

    @classmethod
    def from_dict(cls, p: int, nvars: int, terms: Dict[Monomial, int],
                  order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Build from an already reduced {monomial: nonzero residue} dictionary"""
        poly = cls.__new__(cls)
        poly.p = p
        poly.nvars = nvars
        poly.order = order
        poly._dict = terms
        poly.terms = tuple(sorted(terms.items(), key=lambda t: order.desc_key(t[0])))
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, p: int, nvars: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls.from_dict(p, nvars, {}, order)

    @classmethod
    def constant(cls, p: int, nvars: int, value: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls(p, nvars, [((0,) * nvars, value)], order)

    @classmethod
    def monomial(cls, p: int, mono: Monomial, coeff: int = 1, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return cls(p, len(mono), [(tuple(mono), coeff)], order)

    @classmethod
    def variable(cls, p: int, nvars: int, index: int, order: MonomialOrder = GREVLEX) -> "Polynomial":
        exps = [0] * nvars
        exps[index] = 1
        return cls.monomial(p, tuple(exps), 1, order)

    # ----- basic properties -----

    @property
    def field(self) -> PrimeField:
        return get_field(self.p)

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self._dict)

    def is_zero(self) -> bool:
        return not self._dict

    @property
    def lead_monomial(self) -> Monomial:
        return self.terms[0][0]

    @property
    def lead_coeff(self) -> int:
        return self.terms[0][1]

    def constant_term(self) -> int:
        return self._dict.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._dict), default=-1)

    def support(self) -> List[int]:
        """Indices of variables that occur in some term"""
        return [i for i in range(self.nvars) if any(m[i] for m in self._dict)]

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.nvars == other.nvars and self._dict == other._dict

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self._dict.items())))
        return self._hash

    def __reduce__(self):
        return (Polynomial.from_dict, (self.p, self.nvars, self._dict, self.order))

    # ----- arithmetic -----

    def _check(self, other: "Polynomial") -> None:
        if other.p != self.p:
            raise CharMismatch(f"GF({self.p}) and GF({other.p}) polynomials cannot be combined")
        if other.nvars != self.nvars:
            raise ArityMismatch(f"polynomials over {self.nvars} and {other.nvars} variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial.constant(self.p, self.nvars, other, self.order)
        self._check(other)
        return other

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        result = dict(self._dict)
        for mono, coeff in other._dict.items():
            value = (result.get(mono, 0) + coeff) % self.p
            if value:
                result[mono] = value
            else:
                result.pop(mono, None)
        return Polynomial.from_dict(self.p, self.nvars, result, self.order)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.p, self.nvars, self.order)
        return Polynomial.from_dict(self.p, self.nvars,
                                    {m: (v * c) % self.p for m, v in self._dict.items()}, self.order)

    def mul_term(self, mono: Monomial, c: int = 1) -> "Polynomial":
        c %= self.p
        if c == 0:
            return Polynomial.zero(self.p, self.nvars, self.order)
        return Polynomial.from_dict(self.p, self.nvars,
                                    {monomial_mul(m, mono): (v * c) % self.p for m, v in self._dict.items()},
                                    self.order)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        result: Dict[Monomial, int] = {}
        for ma, ca in self._dict.items():
            for mb, cb in other._dict.items():
                mono = monomial_mul(ma, mb)
                result[mono] = (result.get(mono, 0) + ca * cb) % self.p
        return Polynomial.from_dict(self.p, self.nvars, {m: c for m, c in result.items() if c}, self.order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.p, self.nvars, 1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, q: int) -> "Polynomial":
        """f^q for q a power of p: raise every monomial to q, coefficients are fixed"""
        result = {}
        for mono, coeff in self._dict.items():
            power = tuple(x * q for x in mono)
            if power and max(power) >= Config.EXPONENT_LIMIT:
                raise ExponentOverflow(f"bracket power q={q} pushes an exponent past {Config.EXPONENT_LIMIT - 1}")
            result[power] = pow(coeff, q, self.p)
        return Polynomial.from_dict(self.p, self.nvars, result, self.order)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead_coeff))

    def with_order(self, order: MonomialOrder) -> "Polynomial":
        if order == self.order:
            return self
        return Polynomial.from_dict(self.p, self.nvars, self._dict, order)

    def embed(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Place this polynomial's variables at positions offset.. of a larger ring"""
        tail = nvars - offset - self.nvars
        if tail < 0:
            raise ArityMismatch(f"cannot embed {self.nvars} variables at offset {offset} into {nvars}")
        return Polynomial.from_dict(
            self.p, nvars,
            {(0,) * offset + m + (0,) * tail: c for m, c in self._dict.items()}, self.order)

    # ----- rendering -----

    def to_str(self, names: Sequence[str]) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for mono, coeff in self.terms:
            factors = []
            for name, exp in zip(names, mono):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            if not factors:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append("*".join(factors))
            else:
                pieces.append(f"{coeff}*" + "*".join(factors))
        return " + ".join(pieces)

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Polynomial(GF({self.p}), {self.to_str(names)})"


class RingPresentation:
    """GF(p)[variables] / (generators), with write-once Groebner basis and dimension caches"""

    def __init__(self, p: int, variables: Sequence[str], generators: Iterable[Polynomial] = (),
                 order: MonomialOrder = GREVLEX, name: Optional[str] = None):
        self.field = get_field(p)
        self.p = p
        self.variables: Tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.order = order
        self.name = name
        gens = []
        for g in generators:
            if g.p != p:
                raise CharMismatch(f"generator over GF({g.p}) in a ring over GF({p})")
            if g.nvars != len(self.variables):
                raise UnknownVariable(f"generator uses {g.nvars} variables, ring declares {len(self.variables)}")
            if not g.is_zero():
                gens.append(g.with_order(order))
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._gb = None
        self._dim = None
        self._lock = threading.Lock()

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __repr__(self):
        gens = ", ".join(g.to_str(self.variables) for g in self.generators)
        return f"GF({self.p})[{','.join(self.variables)}]/({gens})"

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    # ----- element constructors -----

    def var(self, name: str) -> Polynomial:
        if name not in self.variables:
            raise UnknownVariable(f"'{name}' is not a variable of {self!r}")
        return Polynomial.variable(self.p, self.nvars, self.variables.index(name), self.order)

    def gens(self) -> List[Polynomial]:
        return [Polynomial.variable(self.p, self.nvars, i, self.order) for i in range(self.nvars)]

    def constant(self, value: int) -> Polynomial:
        return Polynomial.constant(self.p, self.nvars, value, self.order)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.p, self.nvars, self.order)

    def maximal_ideal(self) -> List[Polynomial]:
        """The irrelevant maximal ideal, generated by all variables"""
        return self.gens()

    # ----- cached ideal data -----

    def groebner(self):
        """Reduced Groebner basis of the defining ideal, computed once"""
        if self._gb is None:
            from .groebner import buchberger
            with self._lock:
                if self._gb is None:
                    logger.debug("computing Groebner basis of %r", self)
                    self._gb = buchberger(list(self.generators), self.order,
                                          p=self.p, nvars=self.nvars)
        return self._gb

    def dimension(self) -> int:
        """Krull dimension of the presented ring, computed once"""
        if self._dim is None:
            from .staircase import krull_dimension
            gb = self.groebner()
            value = krull_dimension(gb.lead_monomials, self.nvars)
            with self._lock:
                if self._dim is None:
                    self._dim = value
        return self._dim

    def reduce(self, f: Polynomial) -> Polynomial:
        """Canonical representative of f in the quotient ring"""
        from .groebner import normal_form
        return normal_form(f.with_order(self.order), self.groebner())

    def extend(self, extra: Iterable[Polynomial], name: Optional[str] = None) -> "RingPresentation":
        """Same ambient ring, defining ideal enlarged by extra generators"""
        return RingPresentation(self.p, self.variables, list(self.generators) + list(extra),
                                self.order, name=name)

    def same_presentation(self, other: "RingPresentation") -> bool:
        return (self.p == other.p and self.variables == other.variables
                and set(self.generators) == set(other.generators))
