"""Certified checks of the comparison lemmas over explicit finite ranges.

Each check evaluates the bound formulas with :class:`~lambda_bound.fields.IntervalField`
and only counts an instance when the enclosures decide it.  Undecided
instances are retried at doubled precision up to ``max_bits``.
"""
from __future__ import annotations

import enum
import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import bounds, kernels
from .errors import TableFixtureMissing, Undecided
from .fields import FLOAT, MAX_PRECISION_BITS, default_precision_bits, refine


class Verdict(str, enum.Enum):
    CERTIFIED = "Certified"
    FALSIFIED = "Falsified"
    UNDECIDED = "Undecided"


@dataclass
class ClaimResult:
    claim_id: str
    range_checked: str
    verdict: Verdict
    witnesses: List[Tuple[int, int]] = field(default_factory=list)
    precision_used: int = 0
    instances: int = 0
    undecided: List[Tuple[int, int]] = field(default_factory=list)
    details: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict.value
        d["witnesses"] = [list(w) for w in self.witnesses]
        d["undecided"] = [list(w) for w in self.undecided]
        return d


class _Tally:
    def __init__(self):
        self.failed: List[Tuple[int, int]] = []
        self.undecided: List[Tuple[int, int]] = []
        self.bits = 0
        self.count = 0

    def check(self, key, predicate: Callable, start_bits: int, max_bits: int) -> Optional[bool]:
        self.count += 1
        try:
            ok, bits = refine(predicate, start_bits, max_bits)
        except Undecided:
            self.undecided.append(key)
            self.bits = max(self.bits, max_bits)
            return None
        self.bits = max(self.bits, bits)
        if not ok:
            self.failed.append(key)
        return ok

    def verdict(self, extra_ok: bool = True) -> Verdict:
        if self.failed or not extra_ok:
            return Verdict.FALSIFIED
        if self.undecided:
            return Verdict.UNDECIDED
        return Verdict.CERTIFIED

    def result(self, claim_id: str, range_checked: str, extra_ok: bool = True, **details) -> ClaimResult:
        return ClaimResult(
            claim_id=claim_id,
            range_checked=range_checked,
            verdict=self.verdict(extra_ok),
            witnesses=self.failed,
            precision_used=self.bits,
            instances=self.count,
            undecided=self.undecided,
            details=details,
        )


def _bits(start_bits: Optional[int], max_bits: int) -> int:
    return min(start_bits or default_precision_bits(), max_bits)


def _a_max_exceeds(n: int, g: int):
    return lambda f: f.less(bounds.endpoint(n, f), bounds.critical_points(n, g, field=f).a_max)


def _a_min_exceeds(n: int, g: int):
    return lambda f: f.less(bounds.endpoint(n, f), bounds.critical_points(n, g, field=f).a_min)


def _a_min_below(n: int, g: int):
    return lambda f: f.less(bounds.critical_points(n, g, field=f).a_min, bounds.endpoint(n, f))


def check_amax_exceeds_endpoint(
    n_range: Sequence[int] = range(2, 13),
    gamma_range: Sequence[int] = range(0, 301),
    start_bits: Optional[int] = None,
    max_bits: int = MAX_PRECISION_BITS,
) -> ClaimResult:
    """a_max(n, genus) > 1/sqrt(2n(n+1)) for every pair in the ranges."""
    n_range, gamma_range = list(n_range), list(gamma_range)
    if min(n_range) < 2 or max(n_range) > 12:
        raise ValueError("n_range must lie in [2, 12]")
    bits = _bits(start_bits, max_bits)
    tally = _Tally()
    for n in n_range:
        for g in gamma_range:
            tally.check((n, g), _a_max_exceeds(n, g), bits, max_bits)
    return tally.result(
        "amax_exceeds_endpoint",
        f"n in {_span(n_range)}, genus in {_span(gamma_range)}",
    )


def _eq1_holds(n: int, g0: int):
    """Sufficient condition for a_min < endpoint at every genus >= g0."""

    def pred(f):
        s = f.sqrt
        num = s(f.num(n)) * (n - 1) * (s(f.num(n * (n + 1))) - s(f.num(2)))
        den = n * s(f.num(2 * n)) - s(f.num(n + 1))
        rhs = f.num(1 + Fraction((n + 1) * (g0 - 1), n * g0 + (n + 1) * (n + 2)))
        return f.less(num / den, rhs)

    return pred


def scan_threshold(n: int, gamma_max: int = 500) -> int:
    """Smallest g0 with a_min(n, g) < endpoint for all g in [g0, gamma_max] (float scan)."""
    e = bounds.endpoint(n)
    g0 = gamma_max + 1
    while g0 > 0 and bounds.critical_points(n, g0 - 1).a_min < e:
        g0 -= 1
    return g0


MINIMAL_THRESHOLDS = {3: 3, 4: 30}
SUFFICIENT_THRESHOLDS = ((2, 0), (3, 4), (4, 40))


def check_endpoint_thresholds(
    gamma_max: int = 500, start_bits: Optional[int] = None, max_bits: int = MAX_PRECISION_BITS
) -> ClaimResult:
    """a_min beyond the endpoint for n >= 5; inside it past the stated genus thresholds.

    Parts are tallied separately and reported under ``details["parts"]``:
    ``beyond_endpoint_n_ge_5``, ``threshold_condition`` (the sufficient
    inequality at each stated (n, g0)), ``inside_endpoint_from_threshold``
    and ``scan_thresholds`` (the derived minimal thresholds for n = 3, 4).
    """
    bits = _bits(start_bits, max_bits)
    parts = {name: _Tally() for name in (
        "beyond_endpoint_n_ge_5", "threshold_condition", "inside_endpoint_from_threshold", "scan_thresholds",
    )}
    for n in range(5, 13):
        for g in range(0, gamma_max + 1):
            parts["beyond_endpoint_n_ge_5"].check((n, g), _a_min_exceeds(n, g), bits, max_bits)
    for n, g0 in SUFFICIENT_THRESHOLDS:
        parts["threshold_condition"].check((n, g0), _eq1_holds(n, g0), bits, max_bits)
        for g in range(g0, gamma_max + 1):
            parts["inside_endpoint_from_threshold"].check((n, g), _a_min_below(n, g), bits, max_bits)

    scans = {}
    scans_ok = True
    scan_tally = parts["scan_thresholds"]
    for n, expected in MINIMAL_THRESHOLDS.items():
        g0 = scan_threshold(n, gamma_max)
        scans[str(n)] = {"scan_threshold": g0, "expected": expected}
        # certify the scan: inside from g0 on, outside just below it
        for g in range(g0, gamma_max + 1):
            scan_tally.check((n, g), _a_min_below(n, g), bits, max_bits)
        if g0 > 0:
            scan_tally.check((n, g0 - 1), _a_min_exceeds(n, g0 - 1), bits, max_bits)
        scans_ok &= g0 == expected

    tally = _Tally()
    summary = {}
    for name, t in parts.items():
        tally.failed += t.failed
        tally.undecided += t.undecided
        tally.count += t.count
        tally.bits = max(tally.bits, t.bits)
        ok = scans_ok if name == "scan_thresholds" else True
        summary[name] = {
            "verdict": t.verdict(ok).value,
            "instances": t.count,
            "witnesses": [list(w) for w in t.failed],
        }
    return tally.result(
        "endpoint_thresholds",
        f"(i) n in [5, 12], genus in [0, {gamma_max}]; (ii) (n, g0) in {list(SUFFICIENT_THRESHOLDS)} up to genus "
        f"{gamma_max}; (iii) scan thresholds for n = 3, 4",
        extra_ok=scans_ok,
        parts=summary,
        scan_thresholds=scans,
    )


def _fn_exceeds_f5(n: int, g: int):
    def pred(f):
        fn = bounds.optimal_bound_for_n(n, g, f).over_8pi
        f5 = bounds.optimal_bound_for_n(5, g, f).over_8pi
        return f.less(f5, fn)

    return pred


DOMINANCE_RANGES = (
    (1, 25, 500),
    (2, 41, 500),
    (3, 109, 500),
    (4, 389, 1000),
) + tuple((n, 0, 500) for n in range(6, 13))

STATED_CROSSOVERS = {1: 25, 2: 41, 3: 109, 4: 389}


def crossover_scan(n: int, gamma_max: int) -> Dict[str, Optional[int]]:
    """First genus with F5 < Fn, and the genus from which F5 < Fn holds up to gamma_max (floats)."""
    g = np.arange(0, gamma_max + 1)
    _, fn, _ = kernels.optimal_sweep(n, g)
    _, f5, _ = kernels.optimal_sweep(5, g)
    wins = f5 < fn
    first = int(g[wins][0]) if wins.any() else None
    losing = np.flatnonzero(~wins)
    onward = int(losing[-1]) + 1 if losing.size else 0
    return {"first": first, "from": onward if onward <= gamma_max else None}


def _slope_intercept_checks(bits: int, max_bits: int, tally: _Tally) -> Dict[str, float]:
    """Linear lower bounds a_n*genus + b_n of F_n/(8 pi) dominate the F5 envelope for n in [6, 12]."""
    out = {}
    for n in range(6, 13):

        def coeffs(f, n=n):
            root = f.sqrt(f.num(2 * n * (n + 1)))
            den = n * n - root + 1
            a_n = f.num(Fraction(n, n + 1)) + f.num(2 * n - n * n + Fraction(1, n + 1)) / (2 * den)
            b_n = f.num(n) - f.num((n - 1) ** 2 * (n + 1)) / (2 * den)
            return a_n, b_n

        def pred(f, coeffs=coeffs):
            a_n, b_n = coeffs(f)
            slope, intercept = bounds.linear_envelope(f)
            return f.less(slope, a_n) and f.less(intercept, b_n)

        tally.check((n, -1), pred, bits, max_bits)
        a_n, b_n = coeffs(FLOAT)
        out[str(n)] = {"a_n": a_n, "b_n": b_n}
    return out


def check_f5_dominance(
    start_bits: Optional[int] = None, max_bits: int = MAX_PRECISION_BITS, ranges=DOMINANCE_RANGES
) -> ClaimResult:
    """F_n(genus) > F_5(genus) on the stated ranges, plus derived crossover scans."""
    bits = _bits(start_bits, max_bits)
    tally = _Tally()
    for n, lo, hi in ranges:
        for g in range(lo, hi + 1):
            tally.check((n, g), _fn_exceeds_f5(n, g), bits, max_bits)
    scans = {}
    consistent = True
    for n, threshold in STATED_CROSSOVERS.items():
        s = crossover_scan(n, 1000)
        s["stated_threshold"] = threshold
        scans[str(n)] = s
        consistent &= s["from"] is not None and s["from"] <= threshold
    slopes = _slope_intercept_checks(bits, max_bits, tally)
    return tally.result(
        "f5_dominance",
        "; ".join(f"F{n} > F5 on [{lo}, {hi}]" for n, lo, hi in ranges)
        + "; a_n > a and b_n > b for n in [6, 12]",
        extra_ok=consistent,
        crossover_scans=scans,
        linear_lower_bounds=slopes,
    )


_RANGE = re.compile(r"^(\d+)\s*(?:-+|\u2013|\u2014)\s*(\d+)$")


def parse_genus_list(text: str) -> List[int]:
    """Parse ``"25-27, 30, 33 -- 41"`` into the listed genera."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        m = _RANGE.match(tok)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            out.extend(range(a, b + 1))
        else:
            out.append(int(tok))
    return out


def load_table1(path: Optional[Path] = None) -> Dict[int, List[int]]:
    """Map genus -> list of n whose Table 1 row lists it (normally one entry)."""
    try:
        if path is None:
            text = resources.files("lambda_bound.data").joinpath("table1.json").read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise TableFixtureMissing(f"Table 1 fixture not found: {exc}") from None
    data = json.loads(text)
    table: Dict[int, List[int]] = {}
    for n, row in data["rows"].items():
        for g in parse_genus_list(row):
            table.setdefault(g, []).append(int(n))
    return table


def certified_argmin(genus: int, n_max: int, start_bits: int, max_bits: int) -> Tuple[int, int]:
    """Best n for ``genus`` decided with interval arithmetic; returns ``(n, bits)``."""
    report, bits = refine(lambda f: bounds.best_bound(genus, n_max, f), start_bits, max_bits)
    return report.chosen_n, bits


def reproduce_table1(
    start_bits: Optional[int] = None,
    max_bits: int = MAX_PRECISION_BITS,
    fixture: Optional[Path] = None,
    genus_range: Iterable[int] = range(3, 102),
) -> ClaimResult:
    table = load_table1(fixture)
    bits = _bits(start_bits, max_bits)
    tally = _Tally()
    ambiguous = {}
    computed = {}
    for g in genus_range:
        rows = table.get(g)
        if rows is None:
            raise TableFixtureMissing(f"genus {g} is not listed in the Table 1 fixture")
        if len(rows) > 1:
            ambiguous[str(g)] = sorted(rows)

        def pred(f, g=g, rows=rows):
            n = bounds.best_bound(g, 5, f).chosen_n
            computed[g] = n
            return n in rows

        tally.check((0, g), pred, bits, max_bits)
    # witnesses carry (computed n, genus)
    tally.failed = [(computed.get(g, 0), g) for _, g in tally.failed]
    genera = list(genus_range)
    return tally.result(
        "table1",
        f"genus in {_span(genera)} ({len(genera)} genera), n in [1, 5]",
        genera_checked=len(genera),
        listed_in_multiple_rows={k: {"rows": v, "computed": computed.get(int(k))} for k, v in ambiguous.items()},
    )


CLAIMS: Dict[str, Callable[..., ClaimResult]] = {
    "amax_exceeds_endpoint": check_amax_exceeds_endpoint,
    "endpoint_thresholds": check_endpoint_thresholds,
    "f5_dominance": check_f5_dominance,
    "table1": reproduce_table1,
}


def _run_one(claim_id: str, start_bits: Optional[int], max_bits: int) -> ClaimResult:
    return CLAIMS[claim_id](start_bits=start_bits, max_bits=max_bits)


def run_claims(
    claim_ids: Optional[Iterable[str]] = None,
    start_bits: Optional[int] = None,
    max_bits: int = MAX_PRECISION_BITS,
    jobs: int = 1,
) -> List[ClaimResult]:
    """Run the selected checks; results come back sorted by claim id."""
    ids = sorted(set(claim_ids) if claim_ids else CLAIMS)
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claim(s): {', '.join(unknown)}; known: {', '.join(sorted(CLAIMS))}")
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {c: pool.submit(_run_one, c, start_bits, max_bits) for c in ids}
            results = [futures[c].result() for c in ids]
    else:
        results = [_run_one(c, start_bits, max_bits) for c in ids]
    return sorted(results, key=lambda r: r.claim_id)


def _span(values: Sequence[int]) -> str:
    values = list(values)
    if values == list(range(values[0], values[-1] + 1)):
        return f"[{values[0]}, {values[-1]}]"
    return str(values)
