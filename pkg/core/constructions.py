"""
Presentations of fiber products over k, amalgamated duplications and Nagata idealizations
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .errors import CharMismatch, NotLocalInput, UnitIdeal
from .frobenius import ModulePresentation
from .groebner import syzygy_basis
from .polynomial import Polynomial, RingPresentation

logger = logging.getLogger(__name__)


@dataclass
class ConstructionReport:
    """A constructed ring together with where its variables came from"""

    result: RingPresentation
    kind: str
    component_dimensions: List[int]
    provenance: Dict[str, Tuple[str, str]] = field(default_factory=dict)
    new_variables: List[str] = field(default_factory=list)
    degenerate: bool = False

    @property
    def dimension(self) -> int:
        return self.result.dimension()

    def nilpotents(self) -> List[Polynomial]:
        """The adjoined variables y_i of a duplication or idealization"""
        return [self.result.var(name) for name in self.new_variables]

    def component_variables(self, component: int) -> List[Polynomial]:
        label = f"component {component + 1}"
        return [self.result.var(name) for name, (source, _) in self.provenance.items() if source == label]


def _check_local(ring: RingPresentation) -> None:
    for g in ring.generators:
        if g.constant_term():
            raise NotLocalInput(f"generator {g.to_str(ring.variables)} of {ring!r} has a nonzero constant term")


def _fresh_names(prefix: str, count: int, taken: Sequence[str]) -> List[str]:
    taken = set(taken)
    while True:
        names = [f"{prefix}{i}" for i in range(1, count + 1)]
        if not taken.intersection(names):
            return names
        prefix += "_"


def _glue(components: Sequence[RingPresentation], kind: str) -> ConstructionReport:
    p = components[0].p
    for ring in components:
        if ring.p != p:
            raise CharMismatch(f"cannot glue rings over GF({p}) and GF({ring.p})")
        _check_local(ring)

    total = sum(ring.nvars for ring in components)
    names: List[str] = []
    provenance: Dict[str, Tuple[str, str]] = {}
    offsets = []
    for c, ring in enumerate(components, start=1):
        offsets.append(len(names))
        for v in ring.variables:
            new = f"{v}_{c}"
            names.append(new)
            provenance[new] = (f"component {c}", v)

    generators: List[Polynomial] = []
    for ring, offset in zip(components, offsets):
        generators.extend(g.embed(total, offset) for g in ring.generators)

    # x_i * y_j for variables of distinct components
    for a in range(len(components)):
        for b in range(a + 1, len(components)):
            for i in range(components[a].nvars):
                for j in range(components[b].nvars):
                    mono = [0] * total
                    mono[offsets[a] + i] = 1
                    mono[offsets[b] + j] = 1
                    generators.append(Polynomial.monomial(p, tuple(mono)))

    label = " x_k ".join(ring.name or "?" for ring in components)
    result = RingPresentation(p, names, generators, components[0].order, name=label)
    dims = [ring.dimension() for ring in components]
    logger.info("%s of %d components: %d variables, %d generators",
                kind, len(components), total, len(result.generators))
    return ConstructionReport(result, kind, dims, provenance)


def fiber_product_over_k(R: RingPresentation, S: RingPresentation) -> ConstructionReport:
    """R x_k S = k[x, y] / (I + J + (x_i y_j))"""
    return _glue([R, S], "fiber-product-k")


def multi_fiber_product_over_k(components: Sequence[RingPresentation]) -> ConstructionReport:
    """Iterated fiber product over k of r >= 2 rings"""
    if len(components) < 2:
        raise ValueError("a multi-factor fiber product needs at least two components")
    kind = "fiber-product-k" if len(components) == 2 else "multi-fiber-k"
    return _glue(list(components), kind)


def _relations_mod(R: RingPresentation, gens: Sequence[Polynomial]) -> List[Tuple[Polynomial, ...]]:
    """Relations among gens in R: f-parts of the syzygies of (gens, defining ideal)"""
    base = list(R.groebner().elements)
    syz = syzygy_basis(list(gens) + base)
    n = len(gens)
    rows = []
    for row in syz.rows:
        head = tuple(R.reduce(a) for a in row[:n])
        if any(not a.is_zero() for a in head) and head not in rows:
            rows.append(head)
    return rows


def _normalized_ideal(R: RingPresentation, gens: Sequence[Polynomial]) -> List[Polynomial]:
    reduced = [R.reduce(f) for f in gens]
    # A nonzero constant term is a unit of the local ring
    if any(f.constant_term() for f in reduced):
        raise UnitIdeal("the ideal is the unit ideal of the local ring")
    return [f for f in reduced if not f.is_zero()]


def amalgamated_duplication(R: RingPresentation, ideal_generators: Sequence[Polynomial]) -> ConstructionReport:
    """R joined with I: adjoin y_s for f_s with the syzygy forms and y_s y_t - f_s y_t"""
    _check_local(R)
    gens = _normalized_ideal(R, ideal_generators)
    if not gens:
        logger.warning("duplication along the zero ideal returns the ring itself")
        return ConstructionReport(R, "duplication", [R.dimension()], degenerate=True)

    n = len(gens)
    total = R.nvars + n
    ys = _fresh_names("y", n, R.variables)
    y_polys = [Polynomial.variable(R.p, total, R.nvars + s, R.order) for s in range(n)]
    lifted = [f.embed(total) for f in gens]

    generators = [g.embed(total) for g in R.generators]
    for row in _relations_mod(R, gens):
        form = Polynomial.zero(R.p, total, R.order)
        for a, y in zip(row, y_polys):
            form = form + a.embed(total) * y
        generators.append(form)
    for s in range(n):
        for t in range(n):
            generators.append(y_polys[s] * y_polys[t] - lifted[s] * y_polys[t])

    provenance = {name: ("ideal", f.to_str(R.variables)) for name, f in zip(ys, gens)}
    result = RingPresentation(R.p, list(R.variables) + ys, generators, R.order,
                              name=f"{R.name or 'R'} dup")
    return ConstructionReport(result, "duplication", [R.dimension()], provenance, ys)


def idealization(R: RingPresentation, M: ModulePresentation) -> ConstructionReport:
    """R x| M: adjoin y_i for the generators of M with y_i y_j = 0 and the relations of M"""
    if not M.ring.same_presentation(R):
        raise ValueError("the module is not presented over this ring")
    _check_local(R)
    n = M.n
    if n == 0:
        return ConstructionReport(R, "idealization", [R.dimension()], degenerate=True)

    total = R.nvars + n
    ys = _fresh_names("y", n, R.variables)
    y_polys = [Polynomial.variable(R.p, total, R.nvars + i, R.order) for i in range(n)]

    generators = [g.embed(total) for g in R.generators]
    for i in range(n):
        for j in range(i, n):
            generators.append(y_polys[i] * y_polys[j])
    for s in range(M.m):
        form = Polynomial.zero(R.p, total, R.order)
        for i in range(n):
            form = form + M.matrix[i][s].embed(total) * y_polys[i]
        generators.append(form)

    provenance = {name: ("module", f"generator {i + 1}") for i, name in enumerate(ys)}
    result = RingPresentation(R.p, list(R.variables) + ys, generators, R.order,
                              name=f"{R.name or 'R'} x| {M.name or 'M'}")
    return ConstructionReport(result, "idealization", [R.dimension()], provenance, ys)


def ideal_module(R: RingPresentation, ideal_generators: Sequence[Polynomial]) -> ModulePresentation:
    """The ideal (f_1..f_n)R presented as coker of its relation matrix"""
    gens = _normalized_ideal(R, ideal_generators)
    rows = _relations_mod(R, gens) if gens else []
    matrix = tuple(tuple(row[i] for row in rows) for i in range(len(gens))) if rows else ()
    return ModulePresentation(R, len(gens), matrix)
