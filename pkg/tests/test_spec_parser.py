"""Tests for the ring specification language"""

import pytest

from cli.spec_parser import (format_declarations, parse_polynomial, parse_spec, split_top_level,
                             substitute)
from core.errors import (NotLocalInput, NotPrime, SpecSyntaxError, UnknownReference,
                         UnknownVariable)

SPEC = """\
# nodal curve and a module over it
ring R = GF(3)[x,y] / (x*y);
ring S = GF(5)[x,y,z] / (x*y + z^5);
ideal I = (x^2, y) in R;
module M = coker R [[x],[y]];
module F = free R 2;
"""


def test_ring_declarations():
    decls = parse_spec(SPEC)
    R = decls.ring("R")
    assert R.p == 3
    assert R.variables == ("x", "y")
    assert len(R.generators) == 1
    S = decls.ring("S")
    assert S.p == 5
    assert S.generators[0] == parse_polynomial("x*y + z^5", S)
    assert decls.last_ring() == "S"


def test_cokernel_columns_are_relations():
    decls = parse_spec(SPEC)
    M = decls.module("M")
    assert (M.n, M.m) == (1, 2)
    assert M.column(0) == [decls.ring("R").var("x")]
    assert M.column(1) == [decls.ring("R").var("y")]
    assert decls.module_rings["M"] == "R"


def test_free_module_and_ideal():
    decls = parse_spec(SPEC)
    F = decls.module("F")
    assert (F.n, F.m) == (2, 0)
    R = decls.ring("R")
    assert decls.ideal("I", "R") == [parse_polynomial("x^2", R), R.var("y")]
    assert decls.ideal("m", "R") == R.maximal_ideal()
    with pytest.raises(UnknownReference):
        decls.ideal("I", "S")


def test_round_trip():
    decls = parse_spec(SPEC)
    text = format_declarations(decls)
    again = parse_spec(text)
    for name, ring in decls.rings.items():
        assert again.ring(name).same_presentation(ring)
    assert again.ideals["I"][1] == decls.ideals["I"][1]
    assert again.module("M").matrix == decls.module("M").matrix
    assert format_declarations(again) == text


def test_comments_and_blank_statements():
    decls = parse_spec("# header\nring A = GF(7)[t];  # regular\n;\n")
    assert decls.ring("A").generators == ()


def test_coefficients_reduced_mod_p():
    decls = parse_spec("ring R = GF(3)[x,y] / (x - y, 4*x^2);")
    first, second = decls.ring("R").generators
    assert first.as_dict() == {(1, 0): 1, (0, 1): 2}
    assert second.as_dict() == {(2, 0): 1}


def test_missing_semicolon():
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("ring R = GF(3)[x,y];\nring S = GF(3)[z]")
    assert info.value.line == 2
    assert info.value.column == 1


def test_unknown_variable_is_located():
    with pytest.raises(UnknownVariable) as info:
        parse_spec("ring R = GF(3)[x,y];\nideal J = (x, w) in R;")
    assert str(info.value).startswith("2:15:")


@pytest.mark.parametrize("polynomial, name", [
    ("factorial(3)*x + y^2", "factorial"),
    ("exit()", "exit"),
    ("x + __import__", "__import__"),
    ("Symbol(x)*y", "Symbol"),
])
def test_only_ring_variables_reach_the_parser(polynomial, name):
    with pytest.raises(UnknownVariable) as info:
        parse_spec(f"ring R = GF(3)[x,y] / ({polynomial});")
    assert name in str(info.value)


def test_unknown_name_column_points_at_the_name():
    with pytest.raises(UnknownVariable) as info:
        parse_spec("ring R = GF(3)[x,y] / (x*y + factorial(3)*x);")
    assert str(info.value).startswith("1:30:")


def test_number_glued_to_a_name():
    with pytest.raises(SpecSyntaxError) as info:
        parse_spec("ring R = GF(3)[x,y] / (2x*y);")
    assert (info.value.line, info.value.column) == (1, 24)
    decls = parse_spec("ring R = GF(3)[x1,y1] / (x1*y1);")
    assert decls.ring("R").nvars == 2


def test_non_prime_characteristic():
    with pytest.raises(NotPrime):
        parse_spec("ring R = GF(4)[x];")


def test_unit_term_rejected():
    with pytest.raises(NotLocalInput):
        parse_spec("ring R = GF(3)[x] / (x + 1);")


def test_unit_entries_allowed_in_relations():
    decls = parse_spec("ring R = GF(3)[x];\nmodule Z = coker R [[1]];")
    assert decls.module("Z").matrix[0][0].constant_term() == 1


@pytest.mark.parametrize("text", [
    "ring R = GF(3)[x] / (x/2);",
    "ring R = GF(3)[x] / (x**);",
    "ring R = GF(3)[];",
    "ring R = GF(3)[x];\nmodule M = coker R [x];",
    "ring R = GF(3)[x,y];\nmodule M = coker R [[x],[x,y]];",
    "field K = GF(3);",
])
def test_syntax_errors(text):
    with pytest.raises(SpecSyntaxError):
        parse_spec(text)


def test_unknown_ring():
    with pytest.raises(UnknownReference):
        parse_spec("ideal J = (x) in R;")
    with pytest.raises(UnknownReference):
        parse_spec("ring R = GF(3)[x];").ring("S")


def test_split_top_level_keeps_offsets():
    assert split_top_level("a, (b, c), [d,e]", 10) == [(10, "a"), (13, "(b, c)"), (21, "[d,e]")]


def test_substitute():
    assert substitute("ring R = GF(3)[x,y] / (x^{n}*y - y^2);", "n", 4) == \
        "ring R = GF(3)[x,y] / (x^4*y - y^2);"
