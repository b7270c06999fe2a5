"""Degree-growth scans under iterated half-twist insertion.

For a marked base diagram D0 the scan builds the family Dn (n extra positive
half-twists in the marked region), computes the full homology table and the
Jones polynomial of every member, and tracks two growth rates: the top
nonzero homological degree i_max, whose differences should stabilize at 1,
and the maximum t-degree Mdeg of the Jones polynomial, whose differences
should stabilize at 3/2.  Each row also carries the bookkeeping quantities

    f(Dn) = 2 Mdeg V_n + 1 - c_plus(Dn) + 2 c_minus(Dn)
    k(Dn) = (f(Dn) - 2 + s0(D0)) / 2

and is checked against the sandwich k(Dn) <= max{i : H^i(Dn) != 0} <= c(Dn)
on unnormalized degrees, plus the spanning bounds on every table entry.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .cube import resolve
from .diagram import crossing_counts, insert_half_twists, is_connected
from .errors import KhtwistError
from .homology import (i_max, jones_from_kh, khovanov_table, max_degree,
                       normalize)
from .jones import jones_polynomial
from .laurent import LaurentPoly

SPAN_TARGET_I = 1            # limiting slope of i_max per half-twist
MDEG_TARGET = Fraction(3, 2)  # limiting slope of Mdeg per half-twist


@dataclass
class TwistScanRow:
    n: int
    crossings: int = 0
    i_max: int = None
    max_h: int = None          # top unnormalized degree with H^{i,j} != 0
    mdeg: Fraction = None
    f: Fraction = None
    k: Fraction = None
    delta_i_max: int = None
    delta_mdeg: Fraction = None
    jones: object = None       # V_{L_n} from the state-sum oracle
    jones_match: bool = None   # state-sum oracle vs homology-derived
    sandwich_ok: bool = None
    spanning_ok: bool = None
    error: str = None


@dataclass
class ScanReport:
    rows: list
    stabilization_n: int = None       # first n of the trailing delta_i_max=1 run
    mdeg_stabilization_n: int = None  # first n of the trailing delta_mdeg=3/2 run
    verdicts: dict = field(default_factory=dict)

    def passed(self):
        return all(ok for ok, _ in self.verdicts.values())


def spanning_violations(diagram, table):
    """Entries of the unnormalized table violating the spanning bounds.

    For a connected diagram with at least one crossing, every nonzero
    H^{i,j} must satisfy s1 - 2 - c <= j - 2i <= 2 - s0 where s0/s1 count
    circles of the all-0 / all-1 smoothing.  Diagrams outside that scope
    report no violations.
    """
    c = len(diagram.crossings)
    if c == 0 or not is_connected(diagram):
        # the bounds presuppose a connected diagram with at least one
        # crossing; under disjoint union they add per component, so the
        # single-diagram form fails for split diagrams
        return []
    s0 = resolve(diagram, 0).circle_count
    s1 = resolve(diagram, (1 << c) - 1).circle_count
    bad = []
    for (i, j), r in sorted(table.ranks.items()):
        if r and not (s1 - 2 - c <= j - 2 * i <= 2 - s0):
            bad.append((i, j))
    return bad


def bounds_report(diagram, table):
    """Spanning bounds plus i_max(normalized) <= n_plus; (ok, first_violation)."""
    bad = spanning_violations(diagram, table)
    if bad:
        return False, ("spanning", bad[0])
    norm = table if table.normalized else normalize(table)
    if norm.ranks:
        n_plus, _, _ = crossing_counts(diagram)
        top = i_max(norm)
        if top > n_plus:
            return False, ("i_max", top)
    return True, None


def _trailing_run(deltas, target):
    """(start_n, length) of the maximal trailing run of deltas equal to target.

    deltas[n] is the difference at row n (n >= 1); absent entries break runs.
    """
    start = None
    length = 0
    for n in sorted(deltas):
        if deltas[n] == target:
            if length == 0:
                start = n
            length += 1
        else:
            start, length = None, 0
    return start, length


def twist_scan(base, n_max, budget=16, threads=1):
    """Scan the half-twist family of a marked base diagram, n = 0..n_max."""
    s0_base = resolve(base, 0).circle_count
    rows = []
    for n in range(n_max + 1):
        row = TwistScanRow(n=n)
        rows.append(row)
        try:
            diagram = insert_half_twists(base, n)
            row.crossings = len(diagram.crossings)
            table = khovanov_table(diagram, budget=budget, threads=threads)
            norm = normalize(table)
            row.i_max = i_max(norm)
            row.max_h = max_degree(table)
            row.jones = jones_polynomial(diagram)
            row.jones_match = jones_from_kh(norm) == row.jones
            row.mdeg = row.jones.mdeg()
            n_plus, n_minus, _ = crossing_counts(diagram)
            row.f = 2 * row.mdeg + 1 - n_plus + 2 * n_minus
            row.k = (row.f - 2 + s0_base) / 2
            # the sandwich presupposes at least one crossing
            row.sandwich_ok = (row.crossings == 0
                               or row.k <= row.max_h <= row.crossings)
            row.spanning_ok = not spanning_violations(diagram, table)
        except KhtwistError as exc:
            row.error = f"{type(exc).__name__}: {exc}"
            continue
        prev = rows[n - 1] if n else None
        if prev is not None and prev.error is None:
            row.delta_i_max = row.i_max - prev.i_max
            row.delta_mdeg = row.mdeg - prev.mdeg
    return _finish_report(rows, n_max)


def _finish_report(rows, n_max):
    window = ceil(n_max / 3) if n_max else 1
    d_imax = {r.n: r.delta_i_max for r in rows if r.delta_i_max is not None}
    d_mdeg = {r.n: r.delta_mdeg for r in rows if r.delta_mdeg is not None}
    report = ScanReport(rows=rows)

    start, length = _trailing_run(d_imax, SPAN_TARGET_I)
    if length >= window:
        report.stabilization_n = start
    start, length = _trailing_run(d_mdeg, MDEG_TARGET)
    if length >= window:
        report.mdeg_stabilization_n = start

    verdicts = report.verdicts
    verdicts["rows_computed"] = _verdict(
        (r.n for r in rows if r.error is not None))
    verdicts["jones_dual"] = _verdict(
        (r.n for r in rows if r.jones_match is False))
    verdicts["sandwich"] = _verdict(
        (r.n for r in rows if r.sandwich_ok is False))
    verdicts["spanning"] = _verdict(
        (r.n for r in rows if r.spanning_ok is False))
    verdicts["i_max_slope"] = (report.stabilization_n is not None, None)
    verdicts["mdeg_slope"] = (report.mdeg_stabilization_n is not None, None)
    verdicts["mdeg_step_bound"] = _verdict(
        (n for n, d in sorted(d_mdeg.items()) if d > MDEG_TARGET))
    verdicts["twist_skein"] = _verdict(_skein_failures(rows))
    verdicts["k_slope"] = _verdict(_k_slope_failures(rows, report))
    return report


def _verdict(failing_rows):
    first = next(iter(failing_rows), None)
    return (first is None, first)


def _skein_failures(rows):
    """Rows n where V_{n+1} = t^2 V_{n-1} + (t^{3/2} - t^{1/2}) V_n fails."""
    t_sq = LaurentPoly({4: 1}, "t", 2)
    bridge = LaurentPoly({3: 1, 1: -1}, "t", 2)
    for n in range(1, len(rows) - 1):
        prev, cur, nxt = rows[n - 1], rows[n], rows[n + 1]
        if any(r.jones is None for r in (prev, cur, nxt)):
            continue
        if nxt.jones != t_sq * prev.jones + bridge * cur.jones:
            yield n
    return


def _k_slope_failures(rows, report):
    """Once Mdeg stabilizes, k must step by exactly 1 per half-twist."""
    big_n = report.mdeg_stabilization_n
    if big_n is None:
        return
    for n in range(big_n, len(rows) - 1):
        cur, nxt = rows[n], rows[n + 1]
        if cur.k is None or nxt.k is None:
            continue
        if nxt.k - cur.k != 1:
            yield n
    return


def torus_scan(n_max, budget=16, threads=1):
    """Scan of T(2, n): half-twists on a coherently marked 2-component unlink."""
    from .diagram import LinkDiagram, TwistRegion
    base = LinkDiagram([], free_loops=2,
                       marked_region=TwistRegion(("L1", "L2")))
    return twist_scan(base, n_max, budget=budget, threads=threads)


def _frac_cells(value):
    if value is None:
        return ["", ""]
    f = Fraction(value)
    return [str(f.numerator), str(f.denominator)]


def report_to_csv(report):
    """Versioned CSV; rationals are split into numerator/denominator columns."""
    out = io.StringIO()
    out.write("# format=1\n")
    out.write("n,crossings,i_max,mdeg_num,mdeg_den,f_num,f_den,k_num,k_den,"
              "delta_i_max,delta_mdeg_num,delta_mdeg_den\n")
    for r in report.rows:
        cells = [str(r.n), str(r.crossings),
                 "" if r.i_max is None else str(r.i_max)]
        cells += _frac_cells(r.mdeg) + _frac_cells(r.f) + _frac_cells(r.k)
        cells.append("" if r.delta_i_max is None else str(r.delta_i_max))
        cells += _frac_cells(r.delta_mdeg)
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def report_to_text(report):
    """Structured text report: `key=value` lines, one `row` section per n."""
    out = io.StringIO()
    out.write("format=1\n")
    for r in report.rows:
        out.write(f"row n={r.n} crossings={r.crossings}\n")
        if r.error is not None:
            out.write(f"  error={r.error}\n")
            continue
        out.write(f"  i_max={r.i_max} max_h={r.max_h}\n")
        out.write(f"  mdeg={r.mdeg} f={r.f} k={r.k}\n")
        d_im = "-" if r.delta_i_max is None else r.delta_i_max
        d_md = "-" if r.delta_mdeg is None else r.delta_mdeg
        out.write(f"  delta_i_max={d_im} delta_mdeg={d_md}\n")
        out.write(f"  jones={r.jones.render()}\n")
        out.write(f"  jones_match={r.jones_match} sandwich={r.sandwich_ok} "
                  f"spanning={r.spanning_ok}\n")
    stab = "-" if report.stabilization_n is None else report.stabilization_n
    mstab = ("-" if report.mdeg_stabilization_n is None
             else report.mdeg_stabilization_n)
    out.write(f"stabilization_n={stab}\n")
    out.write(f"mdeg_stabilization_n={mstab}\n")
    for name in sorted(report.verdicts):
        ok, first = report.verdicts[name]
        tag = "pass" if ok else f"FAIL first={first}"
        out.write(f"verdict {name}={tag}\n")
    out.write(f"overall={'pass' if report.passed() else 'FAIL'}\n")
    return out.getvalue()
