"""
Parser and pretty-printer for the ring specification language
"""

import logging
import re
from dataclasses import dataclass, field
from tokenize import TokenError
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)
from sympy.polys.polyerrors import (CoercionFailed, GeneratorsNeeded,
                                    PolynomialError)

from core.errors import (HKLabError, NotLocalInput, NotPrime, SpecSyntaxError,
                         UnknownReference, UnknownVariable)
from core.field import get_field
from core.frobenius import ModulePresentation
from core.polynomial import Polynomial, RingPresentation

logger = logging.getLogger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor,)
NAME = r"[A-Za-z_]\w*"
POLY_CHARS = re.compile(r"^[\w\s+\-*^()]*$")
IDENTIFIER_RE = re.compile(NAME)
NUMBER_THEN_NAME = re.compile(r"(?<!\w)\d+[A-Za-z_]")

RING_RE = re.compile(rf"^ring\s+({NAME})\s*=\s*GF\(\s*(\d+)\s*\)\s*\[([^\]]*)\]\s*(?:/\s*\((.*)\))?\s*$", re.S)
IDEAL_RE = re.compile(rf"^ideal\s+({NAME})\s*=\s*\((.*)\)\s+in\s+({NAME})\s*$", re.S)
COKER_RE = re.compile(rf"^module\s+({NAME})\s*=\s*coker\s+({NAME})\s*(\[.*\])\s*$", re.S)
FREE_RE = re.compile(rf"^module\s+({NAME})\s*=\s*free\s+({NAME})\s+(\d+)\s*$", re.S)


@dataclass
class Declarations:
    """Rings, ideals and modules declared by a specification"""

    rings: Dict[str, RingPresentation] = field(default_factory=dict)
    ideals: Dict[str, Tuple[str, List[Polynomial]]] = field(default_factory=dict)
    modules: Dict[str, ModulePresentation] = field(default_factory=dict)
    module_rings: Dict[str, str] = field(default_factory=dict)

    def ring(self, name: str) -> RingPresentation:
        if name not in self.rings:
            raise UnknownReference(f"no ring named '{name}'")
        return self.rings[name]

    def ideal(self, name: str, ring_name: str) -> List[Polynomial]:
        """Generators of a declared ideal, or of m for the name 'm'"""
        ring = self.ring(ring_name)
        if name == "m" and name not in self.ideals:
            return ring.maximal_ideal()
        if name not in self.ideals:
            raise UnknownReference(f"no ideal named '{name}'")
        owner, gens = self.ideals[name]
        if owner != ring_name:
            raise UnknownReference(f"ideal '{name}' lives in ring '{owner}', not '{ring_name}'")
        return gens

    def module(self, name: str) -> ModulePresentation:
        if name not in self.modules:
            raise UnknownReference(f"no module named '{name}'")
        return self.modules[name]

    def last_ring(self) -> str:
        if not self.rings:
            raise UnknownReference("the specification declares no ring")
        return list(self.rings)[-1]


# ----- source positions -----

def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _strip_comments(text: str) -> str:
    """Blank out '#' comments, keeping every offset in place"""
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)


def _statements(text: str) -> List[Tuple[int, str]]:
    """(offset, statement) pairs of the ';'-terminated statements"""
    result = []
    start = 0
    for match in re.finditer(";", text):
        chunk = text[start:match.start()]
        if chunk.strip():
            lead = len(chunk) - len(chunk.lstrip())
            result.append((start + lead, chunk.strip()))
        start = match.end()
    tail = text[start:]
    if tail.strip():
        lead = len(tail) - len(tail.lstrip())
        line, column = _position(text, start + lead)
        raise SpecSyntaxError("statement is missing its terminating ';'", line, column)
    return result


def split_top_level(body: str, offset: int = 0) -> List[Tuple[int, str]]:
    """Split on commas outside parentheses and brackets, keeping offsets"""
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            pieces.append((start, body[start:i]))
            start = i + 1
    pieces.append((start, body[start:]))
    result = []
    for start, piece in pieces:
        lead = len(piece) - len(piece.lstrip())
        if piece.strip():
            result.append((offset + start + lead, piece.strip()))
    return result


# ----- polynomials -----

def parse_polynomial(expression: str, ring: RingPresentation) -> Polynomial:
    """Parse integer-coefficient polynomial text over the ring's variables"""
    if not POLY_CHARS.match(expression):
        raise SpecSyntaxError(f"unexpected character in polynomial '{expression}'")
    glued = NUMBER_THEN_NAME.search(expression)
    if glued:
        error = SpecSyntaxError(f"missing '*' between a number and a name in '{expression}'")
        error.offset = glued.start()
        raise error
    # only ring variables may appear, so parse_expr never sees a callable name
    for match in IDENTIFIER_RE.finditer(expression):
        if match.group() not in ring.variables:
            error = UnknownVariable(f"'{match.group()}' not among the variables {list(ring.variables)}")
            error.offset = match.start()
            raise error
    symbols = {v: sp.Symbol(v) for v in ring.variables}
    try:
        expr = parse_expr(expression, local_dict=symbols, transformations=TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError, ValueError, sp.SympifyError) as e:
        raise SpecSyntaxError(f"cannot parse polynomial '{expression}': {e}")

    unknown = sorted(str(s) for s in getattr(expr, "free_symbols", set()) if str(s) not in symbols)
    if unknown:
        raise UnknownVariable(f"'{', '.join(unknown)}' not among the variables {list(ring.variables)}")
    try:
        poly = sp.Poly(expr, *symbols.values(), domain="ZZ")
    except (PolynomialError, CoercionFailed, GeneratorsNeeded) as e:
        raise SpecSyntaxError(f"'{expression}' is not a polynomial with integer coefficients: {e}")
    terms = [(tuple(int(x) for x in mono), int(coeff)) for mono, coeff in poly.terms()]
    return Polynomial(ring.p, ring.nvars, terms, ring.order)


def _located(error: HKLabError, text: str, offset: int) -> HKLabError:
    """Attach line and column to an error raised while parsing a piece of text"""
    line, column = _position(text, offset + getattr(error, "offset", 0))
    if isinstance(error, SpecSyntaxError):
        return SpecSyntaxError(str(error), line, column)
    return type(error)(f"{line}:{column}: {error}")


def _polynomials(pieces: Sequence[Tuple[int, str]], ring: RingPresentation, text: str,
                 local: bool) -> List[Polynomial]:
    result = []
    for offset, piece in pieces:
        try:
            poly = parse_polynomial(piece, ring)
        except HKLabError as e:
            raise _located(e, text, offset) from e
        if local and poly.constant_term():
            line, column = _position(text, offset)
            raise NotLocalInput(f"{line}:{column}: generator '{piece}' has a nonzero constant term")
        result.append(poly)
    return result


# ----- statements -----

def parse_spec(text: str) -> Declarations:
    """Parse a whole specification into resolved declarations"""
    clean = _strip_comments(text)
    decls = Declarations()
    for offset, statement in _statements(clean):
        keyword = statement.split(None, 1)[0]
        if keyword == "ring":
            _parse_ring(statement, offset, clean, decls)
        elif keyword == "ideal":
            _parse_ideal(statement, offset, clean, decls)
        elif keyword == "module":
            _parse_module(statement, offset, clean, decls)
        else:
            line, column = _position(clean, offset)
            raise SpecSyntaxError(f"unknown declaration '{keyword}'", line, column)
    logger.debug("parsed %d rings, %d ideals, %d modules",
                 len(decls.rings), len(decls.ideals), len(decls.modules))
    return decls


def _parse_ring(statement: str, offset: int, text: str, decls: Declarations) -> None:
    match = RING_RE.match(statement)
    line, column = _position(text, offset)
    if not match:
        raise SpecSyntaxError("expected 'ring NAME = GF(P)[v1,...,vk] / (f1, ..., fs)'", line, column)
    name, p, variables, body = match.groups()
    try:
        get_field(int(p))
    except NotPrime as e:
        pos = _position(text, offset + match.start(2))
        raise NotPrime(f"{pos[0]}:{pos[1]}: {e}") from e

    names = [v.strip() for v in variables.split(",") if v.strip()]
    bad = [v for v in names if not re.fullmatch(NAME, v)]
    if bad or not names:
        raise SpecSyntaxError(f"invalid variable list [{variables}]", line, column)
    ring = RingPresentation(int(p), names, name=name)
    generators = []
    if body is not None:
        generators = _polynomials(split_top_level(body, offset + match.start(4)), ring, text, local=True)
    decls.rings[name] = RingPresentation(int(p), names, generators, name=name)


def _parse_ideal(statement: str, offset: int, text: str, decls: Declarations) -> None:
    match = IDEAL_RE.match(statement)
    line, column = _position(text, offset)
    if not match:
        raise SpecSyntaxError("expected 'ideal NAME = (f1, ...) in RING'", line, column)
    name, body, ring_name = match.groups()
    if ring_name not in decls.rings:
        pos = _position(text, offset + match.start(3))
        raise UnknownReference(f"{pos[0]}:{pos[1]}: no ring named '{ring_name}'")
    ring = decls.rings[ring_name]
    gens = _polynomials(split_top_level(body, offset + match.start(2)), ring, text, local=True)
    decls.ideals[name] = (ring_name, gens)


def _parse_module(statement: str, offset: int, text: str, decls: Declarations) -> None:
    line, column = _position(text, offset)
    free = FREE_RE.match(statement)
    if free:
        name, ring_name, rank = free.groups()
        ring = _module_ring(ring_name, text, offset + free.start(2), decls)
        decls.modules[name] = ModulePresentation.free(ring, int(rank), name)
        decls.module_rings[name] = ring_name
        return

    match = COKER_RE.match(statement)
    if not match:
        raise SpecSyntaxError("expected 'module NAME = coker RING [[...],...]' or 'module NAME = free RING n'",
                              line, column)
    name, ring_name, body = match.groups()
    ring = _module_ring(ring_name, text, offset + match.start(2), decls)
    body_offset = offset + match.start(3)
    columns = []
    for col_offset, column_text in split_top_level(body[1:-1], body_offset + 1):
        if not (column_text.startswith("[") and column_text.endswith("]")):
            pos = _position(text, col_offset)
            raise SpecSyntaxError("each relation must be a bracketed list", *pos)
        columns.append(_polynomials(split_top_level(column_text[1:-1], col_offset + 1), ring, text, local=False))
    if not columns:
        raise SpecSyntaxError("a cokernel needs at least one relation; use 'free RING n'", line, column)
    n = len(columns[0])
    if n == 0 or any(len(c) != n for c in columns):
        raise SpecSyntaxError("every relation needs one entry per module generator", line, column)
    matrix = tuple(tuple(c[i] for c in columns) for i in range(n))
    decls.modules[name] = ModulePresentation(ring, n, matrix, name)
    decls.module_rings[name] = ring_name


def _module_ring(ring_name: str, text: str, offset: int, decls: Declarations) -> RingPresentation:
    if ring_name not in decls.rings:
        line, column = _position(text, offset)
        raise UnknownReference(f"{line}:{column}: no ring named '{ring_name}'")
    return decls.rings[ring_name]


# ----- pretty printing -----

def format_ring(name: str, ring: RingPresentation) -> str:
    head = f"ring {name} = GF({ring.p})[{','.join(ring.variables)}]"
    if not ring.generators:
        return head + ";"
    gens = ", ".join(g.to_str(ring.variables) for g in ring.generators)
    return f"{head} / ({gens});"


def format_ideal(name: str, ring_name: str, ring: RingPresentation, gens: Sequence[Polynomial]) -> str:
    return f"ideal {name} = ({', '.join(g.to_str(ring.variables) for g in gens)}) in {ring_name};"


def format_module(name: str, ring_name: str, module: ModulePresentation) -> str:
    if module.m == 0:
        return f"module {name} = free {ring_name} {module.n};"
    names = module.ring.variables
    columns = ["[" + ",".join(entry.to_str(names) for entry in module.column(s)) + "]" for s in range(module.m)]
    return f"module {name} = coker {ring_name} [{','.join(columns)}];"


def format_declarations(decls: Declarations) -> str:
    lines = [format_ring(name, ring) for name, ring in decls.rings.items()]
    for name, (ring_name, gens) in decls.ideals.items():
        lines.append(format_ideal(name, ring_name, decls.rings[ring_name], gens))
    for name, module in decls.modules.items():
        lines.append(format_module(name, decls.module_rings[name], module))
    return "\n".join(lines) + "\n"


def substitute(template: str, param: str, value: int) -> str:
    """Replace {param} in a sweep template"""
    return template.replace("{" + param + "}", str(value))


def find_ring_name(decls: Declarations, preferred: Optional[str]) -> str:
    return preferred if preferred else decls.last_ring()
