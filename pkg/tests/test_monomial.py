"""Tests for monomials and monomial orders"""

import pytest

from core.config import Config
from core.errors import ArityMismatch, ExponentOverflow, NotDivisible
from core.monomial import (GREVLEX, LEX, MonomialOrder, monomial_cmp,
                           monomial_divides, monomial_lcm, monomial_mul,
                           monomial_ops, monomial_pow, monomial_quotient)


def test_basic_operations():
    assert monomial_mul((1, 2, 0), (0, 1, 3)) == (1, 3, 3)
    assert monomial_divides((1, 0), (2, 1))
    assert not monomial_divides((0, 2), (2, 1))
    assert monomial_quotient((2, 1), (1, 0)) == (1, 1)
    assert monomial_lcm((2, 0, 1), (1, 3, 0)) == (2, 3, 1)
    assert monomial_pow((1, 2), 3) == (3, 6)


def test_quotient_requires_divisibility():
    with pytest.raises(NotDivisible):
        monomial_quotient((1, 0), (0, 1))


def test_exponent_overflow():
    half = Config.EXPONENT_LIMIT // 2
    with pytest.raises(ExponentOverflow):
        monomial_mul((half,), (half,))
    with pytest.raises(ExponentOverflow):
        monomial_pow((half, 0), 2)
    assert monomial_mul((half - 1,), (half,)) == (Config.EXPONENT_LIMIT - 1,)


def test_dispatch_checks_arity():
    assert monomial_ops("lcm", (1, 0), (0, 1)) == (1, 1)
    assert monomial_ops("divides", (1, 0), (1, 1)) is True
    with pytest.raises(ArityMismatch):
        monomial_ops("mul", (1, 0), (1,))
    with pytest.raises(ValueError):
        monomial_ops("gcd", (1,), (1,))


def test_grevlex_against_lex():
    xz, yy = (1, 0, 1), (0, 2, 0)
    assert monomial_cmp(GREVLEX, yy, xz) == "GT"
    assert monomial_cmp(LEX, yy, xz) == "LT"
    assert monomial_cmp(GREVLEX, (2, 0, 0), (1, 1, 0)) == "GT"
    assert monomial_cmp(GREVLEX, (0, 0, 3), (1, 0, 0)) == "GT"
    assert monomial_cmp(LEX, (1, 0), (1, 0)) == "EQ"


def test_permuted_order():
    order = MonomialOrder("lex", (1, 0))
    assert order.compare((0, 1), (1, 0)) == 1
    with pytest.raises(ValueError):
        MonomialOrder("lex", (0, 0))
    with pytest.raises(ValueError):
        MonomialOrder("deglex")


def test_descending_key_matches_order(rng):
    for order in (GREVLEX, LEX):
        monos = list({tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(60)})
        by_key = sorted(monos, key=order.key, reverse=True)
        by_desc = sorted(monos, key=order.desc_key)
        assert by_key == by_desc


def test_order_is_multiplicative(rng):
    for _ in range(100):
        a, b, c = (tuple(rng.randint(0, 5) for _ in range(3)) for _ in range(3))
        for order in (GREVLEX, LEX):
            assert order.compare(a, b) == order.compare(monomial_mul(a, c), monomial_mul(b, c))
