"""
Report container and its table, CSV and JSON renderings
"""

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from core.config import Config
from core.formulas import FormulaVerdict
from core.frobenius import HKEstimate, HKSample


@dataclass
class Report:
    """Everything a job produced, in the order it was produced"""

    command: str
    samples: List[HKSample] = field(default_factory=list)
    estimate: Optional[HKEstimate] = None
    verdicts: List[FormulaVerdict] = field(default_factory=list)
    provenance: Dict[str, Any] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)
    values: List[Tuple[str, Fraction]] = field(default_factory=list)
    grid: List[Tuple[int, "Report"]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts) and all(r.passed for _, r in self.grid)


def rational(value: Fraction) -> str:
    """Exact text for a rational, 'num/den' or an integer"""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _approx(value: Fraction) -> str:
    return f"{float(value):.{Config.FLOAT_DIGITS}f}"


# ----- human table -----

def render_table(report: Report, timings: bool = False) -> str:
    out = []
    for key, value in report.provenance.items():
        out.append(f"{key}: {value}")
    if report.provenance:
        out.append("")
    out.extend(report.lines)

    if report.samples:
        header = f"{'e':>3} {'q':>8} {'length':>14} {'length/q^d':>22}"
        if timings:
            header += f" {'seconds':>10}"
        out.append(header)
        out.append("-" * len(header))
        for s in report.samples:
            row = f"{s.e:>3} {s.q:>8} {s.length:>14} {rational(s.normalized):>22}"
            if timings:
                row += f" {s.seconds:>10.3f}"
            out.append(row)
        out.append("")

    if report.estimate is not None:
        est = report.estimate
        out.append(f"Estimate ({est.method}): {rational(est.value)} ~ {_approx(est.value)}")
        out.append(f"Error indicator: {rational(est.error)}")

    for name, value in report.values:
        out.append(f"{name:<32} {rational(value):>24}  ~ {_approx(value)}")

    for verdict in report.verdicts:
        status = "PASS" if verdict.passed else "FAIL"
        out.append(f"[{status}] {verdict.citation}")
        out.append(f"       predicted {rational(verdict.predicted)}, estimated {rational(verdict.value)}, "
                   f"relative gap {rational(verdict.relative_gap)} (tolerance {rational(verdict.tolerance)})")
        if verdict.note:
            out.append(f"       note: {verdict.note}")

    for value, sub in report.grid:
        out.append("")
        out.append(f"=== {report.provenance.get('param', 'n')} = {value} ===")
        out.append(render_table(sub, timings).rstrip("\n"))

    return "\n".join(out).rstrip("\n") + "\n"


# ----- CSV -----

def render_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if report.grid:
        writer.writerow([report.provenance.get("param", "n")] + Config.CSV_HEADER)
        for value, sub in report.grid:
            for s in sub.samples:
                writer.writerow([value] + _csv_row(s))
    else:
        writer.writerow(Config.CSV_HEADER)
        for s in report.samples:
            writer.writerow(_csv_row(s))
    return buffer.getvalue()


def _csv_row(sample: HKSample) -> List[int]:
    value = sample.normalized
    return [sample.e, sample.q, sample.length, value.numerator, value.denominator]


# ----- JSON -----

def _sample_dict(sample: HKSample, timings: bool) -> Dict[str, Any]:
    entry = {"e": sample.e, "q": sample.q, "length": str(sample.length),
             "d": sample.d, "normalized": rational(sample.normalized)}
    if timings:
        entry["seconds"] = round(sample.seconds, 3)
    return entry


def _verdict_dict(verdict: FormulaVerdict) -> Dict[str, Any]:
    return {
        "predicted": rational(verdict.predicted),
        "estimated": rational(verdict.value),
        "absolute_gap": rational(verdict.absolute_gap),
        "relative_gap": rational(verdict.relative_gap),
        "tolerance": rational(verdict.tolerance),
        "passed": verdict.passed,
        "citation": verdict.citation,
        "note": verdict.note,
    }


def report_dict(report: Report, timings: bool = False) -> Dict[str, Any]:
    data: Dict[str, Any] = {"command": report.command, "provenance": report.provenance}
    if report.lines:
        data["lines"] = report.lines
    if report.samples:
        data["samples"] = [_sample_dict(s, timings) for s in report.samples]
    if report.estimate is not None:
        data["estimate"] = {
            "value": rational(report.estimate.value),
            "method": report.estimate.method,
            "error": rational(report.estimate.error),
            "lower_order": rational(report.estimate.lower_order),
        }
    if report.values:
        data["values"] = {name: rational(value) for name, value in report.values}
    if report.verdicts:
        data["verdicts"] = [_verdict_dict(v) for v in report.verdicts]
    if report.grid:
        data["grid"] = [{"value": value, "report": report_dict(sub, timings)} for value, sub in report.grid]
    data["passed"] = report.passed
    return data


def render_json(report: Report, timings: bool = False) -> str:
    return json.dumps(report_dict(report, timings), indent=2) + "\n"


def render(report: Report, fmt: str = "table", timings: bool = False) -> str:
    if fmt == "csv":
        return render_csv(report)
    if fmt == "json":
        return render_json(report, timings)
    return render_table(report, timings)


def save_report(text: str, filename: Optional[str]) -> None:
    """Write to a file, or to stdout when no filename is given"""
    if filename:
        with open(filename, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        print(text, end="")
