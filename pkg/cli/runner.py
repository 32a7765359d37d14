"""
Job execution: turns a parsed specification and a command into a Report
"""

import hashlib
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import partial
from typing import List, Optional, Sequence, Tuple

from core import constructions, formulas
from core.config import Config
from core.errors import HKLabError, UnknownReference
from core.frobenius import (HKEstimate, HKSample, ModulePresentation,
                            hk_estimate, hk_function, hk_module_function)
from core.polynomial import Polynomial, RingPresentation
from core.pool import map_ordered

from .report import Report, rational
from .spec_parser import (Declarations, find_ring_name, format_declarations,
                          parse_spec, substitute)

logger = logging.getLogger(__name__)

COMMANDS = ("gb", "hk", "construct", "verify", "sweep", "bounds", "wy")
CONSTRUCT_KINDS = ("fiber", "multifiber", "dup", "ideal")


@dataclass
class JobSpec:
    """One command with its references and parameters"""

    command: str
    ring: Optional[str] = None
    ideal: str = "m"
    module: Optional[str] = None
    operands: List[str] = field(default_factory=list)
    e_max: Optional[int] = None
    method: str = Config.DEFAULT_FIT
    tolerance: Fraction = Config.DEFAULT_TOLERANCE
    against: Optional[str] = None
    case: Optional[str] = None
    d: Optional[int] = None
    r: int = 2
    t: int = 1
    ehkT: Fraction = Fraction(1)
    lambda_count: int = 1
    rank: int = 1
    quadric_ring: Optional[str] = None
    param: Optional[str] = None
    lo: int = 0
    hi: int = 0
    template: Optional[str] = None
    inner: Optional["JobSpec"] = None
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command '{self.command}'")
        if self.e_max is not None and self.e_max < 1:
            raise ValueError("e_max must be at least 1")


class JobError(HKLabError):
    """An error from an inner module with the job it happened in"""

    def __init__(self, job: JobSpec, cause: HKLabError, point: Optional[str] = None):
        self.job = job
        self.cause = cause
        self.point = point
        self.exit_code = cause.exit_code
        target = " ".join(filter(None, [job.command, job.ring] + list(job.operands)))
        where = f" at {point}" if point else ""
        super().__init__(f"{target}{where}: {type(cause).__name__}: {cause}")

    def __reduce__(self):
        # rebuilt from its parts when it crosses the worker pool
        return (JobError, (self.job, self.cause, self.point))


def input_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def run(job: JobSpec, decls: Optional[Declarations] = None, source: str = "") -> Report:
    """Execute a job against declarations parsed from source"""
    if decls is None:
        decls = parse_spec(source)
    try:
        handler = {
            "gb": _run_gb,
            "hk": _run_hk,
            "construct": _run_construct,
            "verify": _run_verify,
            "sweep": _run_sweep,
            "bounds": _run_bounds,
            "wy": _run_wy,
        }[job.command]
        report = handler(job, decls)
    except JobError:
        raise
    except HKLabError as e:
        raise JobError(job, e) from e

    canonical = format_declarations(decls) if decls.rings else source
    report.provenance = {"input_sha256": input_hash(canonical), **report.provenance}
    return report


def _provenance(ring: RingPresentation, e_max: int, method: str) -> dict:
    return {"order": str(ring.order), "e_max": e_max, "method": Config.FIT_METHODS.get(method, method)}


def _e_max(job: JobSpec, ring: RingPresentation) -> int:
    return job.e_max if job.e_max is not None else Config.default_e_max(ring.p)


def sample_ring(ring: RingPresentation, ideal: Sequence[Polynomial],
                job: JobSpec) -> Tuple[List[HKSample], HKEstimate]:
    samples = hk_function(ring, ideal, _e_max(job, ring), job.workers)
    return samples, hk_estimate(samples, job.method)


def estimate_ring(ring: RingPresentation, ideal: Sequence[Polynomial], job: JobSpec) -> HKEstimate:
    return sample_ring(ring, ideal, job)[1]


def estimate_module(module: ModulePresentation, job: JobSpec) -> HKEstimate:
    samples = hk_module_function(module, module.ring.maximal_ideal(), _e_max(job, module.ring), job.workers)
    return hk_estimate(samples, job.method)


# ----- gb / hk -----

def _run_gb(job: JobSpec, decls: Declarations) -> Report:
    name = find_ring_name(decls, job.ring)
    ring = decls.ring(name)
    gb = ring.groebner()
    report = Report("gb", provenance={"ring": name, "order": str(ring.order)})
    report.lines.append(f"Groebner basis of {name} ({len(gb.elements)} elements):")
    report.lines.extend(f"  {g.to_str(ring.variables)}" for g in gb.elements)
    report.lines.append(f"Krull dimension: {ring.dimension()}")
    report.lines.append("")
    return report


def _run_hk(job: JobSpec, decls: Declarations) -> Report:
    if job.module:
        module = decls.module(job.module)
        ring_name = decls.module_rings[job.module]
        ring = module.ring
        e_max = _e_max(job, ring)
        samples = hk_module_function(module, decls.ideal(job.ideal, ring_name), e_max, job.workers)
        target = {"module": job.module}
    else:
        ring_name = find_ring_name(decls, job.ring)
        ring = decls.ring(ring_name)
        e_max = _e_max(job, ring)
        samples = hk_function(ring, decls.ideal(job.ideal, ring_name), e_max, job.workers)
        target = {"ring": ring_name}
    report = Report("hk", samples=list(samples),
                    provenance={**target, "ideal": job.ideal, **_provenance(ring, e_max, job.method)})
    report.estimate = hk_estimate(samples, job.method)
    return report


# ----- constructions -----

def build(kind: str, operands: Sequence[str], decls: Declarations) -> constructions.ConstructionReport:
    """Construct the presentation named by kind from declared operands"""
    if kind not in CONSTRUCT_KINDS:
        raise UnknownReference(f"unknown construction '{kind}'")
    if kind == "fiber":
        _arity(kind, operands, 2)
        return constructions.fiber_product_over_k(decls.ring(operands[0]), decls.ring(operands[1]))
    if kind == "multifiber":
        if len(operands) < 2:
            raise UnknownReference("multifiber needs at least two rings")
        return constructions.multi_fiber_product_over_k([decls.ring(name) for name in operands])
    _arity(kind, operands, 2)
    ring = decls.ring(operands[0])
    if kind == "dup":
        return constructions.amalgamated_duplication(ring, decls.ideal(operands[1], operands[0]))
    return constructions.idealization(ring, _module_or_ideal(operands[1], operands[0], decls))


def _module_or_ideal(name: str, ring_name: str, decls: Declarations) -> ModulePresentation:
    """A declared module, or a declared ideal viewed as a module"""
    if name in decls.modules:
        return decls.module(name)
    return constructions.ideal_module(decls.ring(ring_name), decls.ideal(name, ring_name))


def _arity(kind: str, operands: Sequence[str], count: int) -> None:
    if len(operands) != count:
        raise UnknownReference(f"{kind} takes {count} operands, got {len(operands)}")


def _run_construct(job: JobSpec, decls: Declarations) -> Report:
    if not job.operands:
        raise UnknownReference(f"construct needs one of {', '.join(CONSTRUCT_KINDS)}")
    kind, operands = job.operands[0], job.operands[1:]
    built = build(kind, operands, decls)
    ring = built.result
    report = Report("construct", provenance={"kind": built.kind, "operands": " ".join(operands),
                                             "order": str(ring.order)})
    report.lines.append(f"ring = GF({ring.p})[{','.join(ring.variables)}]")
    report.lines.append(f"generators ({len(ring.generators)}):")
    report.lines.extend(f"  {g.to_str(ring.variables)}" for g in ring.generators)
    report.lines.append(f"dimension: {built.dimension}")
    report.lines.append(f"component dimensions: {built.component_dimensions}")
    for name, (source, original) in built.provenance.items():
        report.lines.append(f"  {name} <- {source}: {original}")
    if built.degenerate:
        report.lines.append("degenerate input: the construction returned the ring itself")
    report.lines.append("")
    return report


# ----- verification -----

def _run_verify(job: JobSpec, decls: Declarations) -> Report:
    against = job.against or ""
    report = Report("verify", provenance={"against": against})

    if against.startswith("value:"):
        target = Fraction(against.split(":", 1)[1])
        name = find_ring_name(decls, job.ring or (job.operands[0] if job.operands else None))
        ring = decls.ring(name)
        report.provenance.update({"ring": name, **_provenance(ring, _e_max(job, ring), job.method)})
        estimate = _record(report, sample_ring(ring, decls.ideal(job.ideal, name), job))
        report.verdicts.append(formulas.verify(target, estimate, job.tolerance, f"expected value {rational(target)}"))
        return report

    if against not in CONSTRUCT_KINDS:
        raise UnknownReference(f"cannot verify against '{against}'")
    built = build(against, job.operands, decls)
    ring = built.result
    report.provenance.update({"operands": " ".join(job.operands), **_provenance(ring, _e_max(job, ring), job.method)})
    estimate = _record(report, sample_ring(ring, ring.maximal_ideal(), job))

    prediction, citation = _predict(against, job, decls, report)
    report.verdicts.append(formulas.verify(prediction, estimate, job.tolerance, citation))
    if against == "fiber" and all(d >= 2 for d in built.component_dimensions):
        report.verdicts.append(formulas.bound_check(formulas.FIBER_PRODUCT_THRESHOLD, estimate,
                                                    "e_HK of a fiber product over k >= 8/3",
                                                    "applies when neither component is regular"))
    return report


def _record(report: Report, sampled: Tuple[List[HKSample], HKEstimate]) -> HKEstimate:
    samples, estimate = sampled
    report.samples = list(samples)
    report.estimate = estimate
    return estimate


def _component(name: str, job: JobSpec, decls: Declarations, report: Report) -> Tuple[Fraction, int]:
    ring = decls.ring(name)
    estimate = estimate_ring(ring, ring.maximal_ideal(), job)
    report.values.append((f"e_HK({name})", estimate.value))
    return estimate.value, ring.dimension()


def _predict(against: str, job: JobSpec, decls: Declarations, report: Report) -> Tuple[Fraction, str]:
    operands = job.operands
    if against == "fiber":
        first, second = formulas.order_fiber_inputs(*(_component(n, job, decls, report) for n in operands))
        return (formulas.fiber_formula(first[0], second[0], 1, first[1], second[1], 0),
                "e_HK(R x_k S) from the components")
    if against == "multifiber":
        parts = [_component(n, job, decls, report) for n in operands]
        return (formulas.multi_fiber_formula([e for e, _ in parts], [d for _, d in parts], 1, 0),
                f"e_HK of a {len(parts)}-factor fiber product over k")

    ehkR, dimR = _component(operands[0], job, decls, report)
    ring = decls.ring(operands[0])
    if against == "dup":
        quotient = ring.extend(decls.ideal(operands[1], operands[0]), name=f"{operands[0]}/{operands[1]}")
        dim_quotient = quotient.dimension()
        ehk_quotient = Fraction(0)
        if dim_quotient == dimR:
            ehk_quotient = estimate_ring(quotient, quotient.maximal_ideal(), job).value
            report.values.append((f"e_HK({quotient.name})", ehk_quotient))
        return (formulas.duplication_formula(ehkR, dimR, ehk_quotient, dim_quotient),
                "e_HK of the amalgamated duplication")

    module = _module_or_ideal(operands[1], operands[0], decls)
    ehk_module = estimate_module(module, job).value
    report.values.append((f"e_HK(m, {operands[1]})", ehk_module))
    return formulas.idealization_formula(ehkR, ehk_module), "e_HK(R x| M) = e_HK(R) + e_HK(m, M)"


# ----- bounds and the zigzag threshold -----

def _run_bounds(job: JobSpec, decls: Declarations) -> Report:
    d = job.d if job.d is not None else 2
    report = Report("bounds", provenance={"d": d})
    case = job.case
    if case is None:
        report.values.extend(formulas.bound_table(d))
    elif case in formulas.FIBER_CASES:
        report.values.append((f"fiber {case}", formulas.fiber_bound(case, d)))
    elif case in formulas.MULTI_FIBER_CASES:
        report.values.append((f"multi-fiber {case} r={job.r} t={job.t}",
                              formulas.multi_fiber_bound(job.r, job.t, d, job.ehkT, case)))
    elif case == "idealization":
        report.values.append((f"idealization #Lambda={job.lambda_count}",
                              formulas.idealization_bound(job.lambda_count, d)))
    elif case == "idealization-rank":
        report.values.append((f"idealization rank={job.rank}", formulas.idealization_rank_bound(job.rank, d)))
    elif case == "aberbach-enescu":
        report.values.append(("aberbach-enescu", formulas.aberbach_enescu_bound(d)))
    else:
        raise UnknownReference(f"unknown bound case '{case}'")
    return report


def _run_wy(job: JobSpec, decls: Declarations) -> Report:
    d = job.d if job.d is not None else 2
    report = Report("wy", provenance={"d": d})
    report.values.append((f"m_{d}", formulas.zigzag_m(d)))
    report.values.append((f"1 + m_{d}", formulas.watanabe_yoshida_bound(d)))
    if job.ring is None:
        return report

    ring = decls.ring(job.ring)
    report.provenance.update({"ring": job.ring, **_provenance(ring, _e_max(job, ring), job.method)})
    estimate = _record(report, sample_ring(ring, decls.ideal(job.ideal, job.ring), job))
    quadric = None
    if job.quadric_ring:
        q_ring = decls.ring(job.quadric_ring)
        quadric = estimate_ring(q_ring, q_ring.maximal_ideal(), job)
        report.values.append((f"e_HK({job.quadric_ring})", quadric.value))
    report.verdicts.append(formulas.wy_check(estimate, d, quadric, job.tolerance))
    return report


# ----- sweeps -----

def _sweep_point(value: int, job: JobSpec) -> Report:
    point = f"{job.param}={value}"
    text = substitute(job.template, job.param, value)
    try:
        decls = parse_spec(text)
        return run(job.inner, decls, text)
    except JobError as e:
        raise JobError(job.inner, e.cause, point) from e
    except HKLabError as e:
        raise JobError(job.inner, e, point) from e


def _run_sweep(job: JobSpec, decls: Declarations) -> Report:
    if job.template is None or job.param is None or job.inner is None:
        raise UnknownReference("sweep needs --param and --template")
    if job.hi < job.lo:
        raise ValueError(f"empty sweep range {job.lo}..{job.hi}")
    values = list(range(job.lo, job.hi + 1))
    # grid points run in the pool; samples inside a point stay serial
    inner = replace(job.inner, workers=1)
    point_job = replace(job, inner=inner)

    reports = map_ordered(partial(_sweep_point, job=point_job), values, job.workers)
    report = Report("sweep", provenance={"param": job.param, "range": f"{job.lo}..{job.hi}",
                                         "template_sha256": input_hash(job.template)})
    report.grid = list(zip(values, reports))
    return report
