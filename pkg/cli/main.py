"""
Command line entry point
"""

import argparse
import logging
import re
import sys
from fractions import Fraction
from typing import List, Optional

from core.config import Config
from core.errors import HKLabError

from .report import render, save_report
from .runner import JobSpec, run

logger = logging.getLogger(__name__)

RANGE_RE = re.compile(r"^([A-Za-z_]\w*)=(-?\d+)\.\.(-?\d+)$")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"'{text}' is not a rational number")


def _common(parser: argparse.ArgumentParser, needs_spec: bool = True) -> None:
    if needs_spec:
        parser.add_argument('--spec', '-f', help='Ring specification file (default: stdin)')
    parser.add_argument('--csv', dest='fmt', action='store_const', const='csv', help='Emit the samples table as CSV')
    parser.add_argument('--json', dest='fmt', action='store_const', const='json', help='Emit the full report as JSON')
    parser.add_argument('--out', '-o', help='Write the report to this file instead of stdout')
    parser.add_argument('--timings', action='store_true', help='Include wall-clock seconds per sample')
    parser.add_argument('--threads', '-j', type=int, default=0,
                        help=f'Worker pool size (default: ${Config.THREADS_ENV} or the core count)')
    parser.add_argument('--debug', action='store_true', help='Log progress to stderr')


def _sampling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--emax', type=int, help='Largest Frobenius exponent e (default: depends on p)')
    parser.add_argument('--fit', choices=sorted(Config.FIT_METHODS), default=Config.DEFAULT_FIT,
                        help=f'Estimation method (default: {Config.DEFAULT_FIT})')
    parser.add_argument('--ideal', default='m', help="Ideal to take bracket powers of (default: m)")
    parser.add_argument('--tol', type=_rational, default=Config.DEFAULT_TOLERANCE,
                        help=f'Relative tolerance for verdicts (default: {Config.DEFAULT_TOLERANCE})')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='hkl', description=Config.APP_NAME)
    parser.add_argument('--version', action='version', version=f'%(prog)s {Config.APP_VERSION}')
    sub = parser.add_subparsers(dest='command', required=True)

    gb = sub.add_parser('gb', help='Reduced Groebner basis and dimension of a ring')
    gb.add_argument('--ring', '-r', help='Ring name (default: last declared)')
    _common(gb)

    hk = sub.add_parser('hk', help='Hilbert-Kunz function samples and estimate')
    hk.add_argument('--ring', '-r', help='Ring name (default: last declared)')
    hk.add_argument('--module', '-m', help='Module name; samples l(M / J^[q] M)')
    _sampling(hk)
    _common(hk)

    construct = sub.add_parser('construct', help='Present a fiber product, duplication or idealization')
    construct.add_argument('kind', choices=['fiber', 'multifiber', 'dup', 'ideal'])
    construct.add_argument('operands', nargs='+', help='Rings, then an ideal or module where needed')
    _common(construct)

    verify = sub.add_parser('verify', help='Compare an estimate with a closed formula')
    verify.add_argument('--against', '-a', required=True,
                        help='fiber, multifiber, dup, ideal or value:Q')
    verify.add_argument('operands', nargs='*', help='Operands of the construction being checked')
    verify.add_argument('--ring', '-r', help='Ring for value:Q checks (default: last declared)')
    _sampling(verify)
    _common(verify)

    bounds = sub.add_parser('bounds', help='Exact lower bounds')
    bounds.add_argument('--case', help='Bound family (default: the whole table)')
    bounds.add_argument('--d', type=int, default=2, help='Dimension (default: 2)')
    bounds.add_argument('--r', type=int, default=2, help='Number of fiber product components')
    bounds.add_argument('--t', type=int, default=1, help='Non-regular components of top dimension')
    bounds.add_argument('--ehkT', type=_rational, default=Fraction(1), help='e_HK of the base ring T')
    bounds.add_argument('--lambda-count', type=int, default=1, help='Size of Lambda for idealizations')
    bounds.add_argument('--rank', type=int, default=1, help='Module rank for idealizations')
    _common(bounds, needs_spec=False)

    wy = sub.add_parser('wy', help='The 1 + m_d threshold, optionally checked against a ring')
    wy.add_argument('--d', type=int, default=2, help='Dimension (default: 2)')
    wy.add_argument('--ring', '-r', help='Ring to check')
    wy.add_argument('--quadric-ring', help='Quadric ring of the same dimension to compare with')
    _sampling(wy)
    _common(wy)

    sweep = sub.add_parser('sweep', help='Run hk or verify over a parameter grid')
    sweep.add_argument('--param', required=True, help='Grid as NAME=LO..HI')
    sweep.add_argument('--template', required=True, help='Specification file with {NAME} placeholders')
    sweep.add_argument('--ring', '-r', help='Ring name inside the template (default: last declared)')
    sweep.add_argument('--against', '-a', help='value:Q to verify at every grid point')
    _sampling(sweep)
    _common(sweep, needs_spec=False)
    return parser


def _read(path: Optional[str]) -> str:
    if path is None or path == '-':
        return sys.stdin.read()
    with open(path, encoding='utf-8') as f:
        return f.read()


def job_from_args(args: argparse.Namespace) -> JobSpec:
    """Translate parsed arguments into a JobSpec"""
    command = args.command
    common = dict(workers=args.threads)
    sampling = {}
    if hasattr(args, 'emax'):
        sampling = dict(e_max=args.emax, method=args.fit, ideal=args.ideal, tolerance=args.tol)

    if command == 'gb':
        return JobSpec('gb', ring=args.ring, **common)
    if command == 'hk':
        return JobSpec('hk', ring=args.ring, module=args.module, **sampling, **common)
    if command == 'construct':
        return JobSpec('construct', operands=[args.kind] + args.operands, **common)
    if command == 'verify':
        return JobSpec('verify', ring=args.ring, against=args.against, operands=args.operands,
                       **sampling, **common)
    if command == 'bounds':
        return JobSpec('bounds', case=args.case, d=args.d, r=args.r, t=args.t, ehkT=args.ehkT,
                       lambda_count=args.lambda_count, rank=args.rank, **common)
    if command == 'wy':
        return JobSpec('wy', d=args.d, ring=args.ring, quadric_ring=args.quadric_ring, **sampling, **common)

    match = RANGE_RE.match(args.param)
    if not match:
        raise ValueError(f"--param must look like n=LO..HI, got '{args.param}'")
    param, lo, hi = match.group(1), int(match.group(2)), int(match.group(3))
    inner_command = 'verify' if args.against else 'hk'
    inner = JobSpec(inner_command, ring=args.ring, against=args.against, **sampling)
    return JobSpec('sweep', param=param, lo=lo, hi=hi, template=_read(args.template), inner=inner, **common)


def _source(args: argparse.Namespace, job: JobSpec) -> str:
    """Specification text: --spec, else stdin for commands that need declarations"""
    path = getattr(args, 'spec', None)
    if path is not None:
        return _read(path)
    if job.command in ('bounds', 'sweep') or (job.command == 'wy' and job.ring is None):
        return ""
    return _read(None)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.WARNING,
        format='%(asctime)s %(name)s %(levelname)s: %(message)s',
        stream=sys.stderr,
    )

    try:
        job = job_from_args(args)
        report = run(job, source=_source(args, job))
    except HKLabError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return Config.EXIT_INPUT_ERROR
    except (MemoryError, RecursionError) as e:
        print(f"Error: out of resources ({type(e).__name__})", file=sys.stderr)
        return Config.EXIT_RESOURCE

    save_report(render(report, args.fmt or 'table', args.timings), args.out)
    if args.out:
        logger.info("report saved to %s", args.out)
    return Config.EXIT_OK if report.passed else Config.EXIT_VERIFY_FAILED


if __name__ == '__main__':
    sys.exit(main())
