"""Shared fixtures and brute-force oracles for the test suite"""

import random
from typing import List, Optional, Sequence

import numpy as np
import pytest

from cli.spec_parser import parse_polynomial
from core.field import get_field
from core.polynomial import Polynomial, RingPresentation


def make_ring(p: int, names: str, *generators: str, name: str = "R") -> RingPresentation:
    """GF(p)[names] / (generators), generators written in the spec language"""
    variables = [v.strip() for v in names.split(",")]
    ambient = RingPresentation(p, variables, name=name)
    return RingPresentation(p, variables, [parse_polynomial(g, ambient) for g in generators], name=name)


def polys(ring: RingPresentation, *texts: str) -> List[Polynomial]:
    return [parse_polynomial(t, ring) for t in texts]


def brute_force_count(generators: Sequence[tuple], bounds: Sequence[int]) -> int:
    """Monomials inside the box that no generator divides"""
    grid = np.indices(tuple(bounds)).reshape(len(bounds), -1).T
    outside = np.ones(len(grid), dtype=bool)
    for g in generators:
        outside &= ~np.all(grid >= np.array(g), axis=1)
    return int(outside.sum())


def naive_groebner(generators: Sequence[Polynomial], max_pairs: int = 400) -> Optional[List[Polynomial]]:
    """Buchberger with every pair and plain division, no criteria.

    Pairs go smallest lcm degree first. Returns None once max_pairs
    S-polynomials have been reduced without finishing.
    """
    basis = [g for g in generators if not g.is_zero()]
    if any(sum(g.lead_monomial) == 0 for g in basis):
        return basis
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    field = get_field(basis[0].p) if basis else None
    done = 0
    while pairs:
        if done == max_pairs:
            return None
        done += 1
        pairs.sort(key=lambda ij: -sum(max(a, b) for a, b in zip(basis[ij[0]].lead_monomial,
                                                              basis[ij[1]].lead_monomial)))
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        lcm = tuple(max(a, b) for a, b in zip(f.lead_monomial, g.lead_monomial))
        s = (f.mul_term(tuple(a - b for a, b in zip(lcm, f.lead_monomial)), field.inv(f.lead_coeff))
             - g.mul_term(tuple(a - b for a, b in zip(lcm, g.lead_monomial)), field.inv(g.lead_coeff)))
        r = divide(s, basis)
        if r.is_zero():
            continue
        basis.append(r)
        if sum(r.lead_monomial) == 0:
            return basis
        pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return basis


def divide(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of f on plain multivariate division"""
    remainder = Polynomial.zero(f.p, f.nvars, f.order)
    while not f.is_zero():
        lead, coeff = f.lead_monomial, f.lead_coeff
        for g in basis:
            if all(a <= b for a, b in zip(g.lead_monomial, lead)):
                shift = tuple(b - a for a, b in zip(g.lead_monomial, lead))
                f = f - g.mul_term(shift, coeff * get_field(f.p).inv(g.lead_coeff))
                break
        else:
            term = Polynomial.monomial(f.p, lead, coeff, f.order)
            remainder = remainder + term
            f = f - term
    return remainder


def random_polynomial(rng: random.Random, p: int, nvars: int, terms: int = 3, degree: int = 3) -> Polynomial:
    monos = [tuple(rng.randint(0, degree) for _ in range(nvars)) for _ in range(terms)]
    return Polynomial(p, nvars, [(m, rng.randint(1, p - 1)) for m in monos])


@pytest.fixture
def rng():
    return random.Random(20240229)


@pytest.fixture
def nodal():
    return make_ring(3, "x,y", "x*y", name="nodal")


@pytest.fixture
def triple_line():
    return make_ring(3, "x,y,z", "x*y", "x*z", "y*z", name="triple")


@pytest.fixture
def line():
    return make_ring(3, "x", name="line")


@pytest.fixture
def plane():
    return make_ring(3, "x,y", name="plane")

