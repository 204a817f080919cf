"""Scaled fractional vertices, graph covers, and the bridge between them.

A fractional LP optimum, cleared of denominators by the least common
multiple M of its coordinates, becomes an integer object (h, z): h
counts, out of M, how often each variable takes each nonzero value, and
z counts how often each check uses each of its local configurations.
The consistency equations tying h to z are validated exactly on every
construction path.

The same object has a combinatorial reading: an M-fold cover of the
Tanner graph together with a valid assignment on the cover.  build_cover
realizes it by explicit wiring, verify_cover checks a claimed cover
(fiber sizes, per-edge bijectivity, all lifted checks), and
cover_to_lppc projects a valid cover back down by counting.

All operations refuse codes whose Tanner graph is disconnected, since
cover semantics silently break apart there.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .channel import CostVector
from .codes import Code, enumerate_local_codewords, tanner_connected
from .polytope import LPProblem
from .simplex import LPSolution

__all__ = [
    "LPPseudocodeword",
    "GraphCover",
    "CoverReport",
    "extract",
    "pcw_cost",
    "build_cover",
    "verify_cover",
    "cover_to_lppc",
    "sample_valid_cover",
    "pcw_report_text",
    "pcw_report_json",
]


def _require_connected(code: Code) -> None:
    if not tanner_connected(code):
        raise ValueError("pseudocodeword operations require a connected Tanner graph")


@dataclass(eq=False)
class LPPseudocodeword:
    """Integer-scaled fractional point of the decoding polytope.

    h[i][a-1] counts copies of nonzero value a at position i, h0[i]
    counts zeros, z[j][s] counts uses of the s-th local configuration of
    check j (lexicographic order).  Every row of counts sums to M.
    """

    code: Code
    M: int
    h: list
    h0: list
    z: list

    def __post_init__(self):
        _require_connected(self.code)
        if self.M <= 0:
            raise ValueError("cover degree M must be positive")
        violations = _consistency_violations(self.code, self.M, self.h, self.h0, self.z)
        if violations:
            raise ValueError("inconsistent pseudocodeword: " + "; ".join(violations))

    @property
    def matrix(self) -> list:
        """n x q rows [h_i(0), h_i(1), ..., h_i(q-1)], each summing to M."""
        return [[self.h0[i]] + list(self.h[i]) for i in range(self.code.n)]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.h for v in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LPPseudocodeword):
            return NotImplemented
        return (
            self.code is other.code
            and self.M == other.M
            and self.h == other.h
            and self.h0 == other.h0
            and all(list(a) == list(b) for a, b in zip(self.z, other.z))
        )


def _consistency_violations(code: Code, M: int, h, h0, z) -> list:
    out = []
    n, m, q = code.n, code.m, code.ring.q
    if len(h) != n or len(h0) != n or len(z) != m:
        return [f"shape mismatch: need h:{n} h0:{n} z:{m}"]
    for i in range(n):
        if len(h[i]) != q - 1:
            return [f"h[{i}] must have {q - 1} entries"]
        if any(v < 0 for v in h[i]) or h0[i] < 0:
            out.append(f"negative count at position {i}")
        if h0[i] + sum(h[i]) != M:
            out.append(f"counts at position {i} sum to {h0[i] + sum(h[i])}, not M={M}")
    for j in range(m):
        local = enumerate_local_codewords(code, j)
        if len(z[j]) != len(local):
            return [f"z[{j}] must have {len(local)} entries"]
        if any(v < 0 for v in z[j]):
            out.append(f"negative configuration count at check {j}")
        tot = sum(z[j])
        if tot != M:
            out.append(f"configuration counts at check {j} sum to {tot}, not M={M}")
        support = local[0].support
        # value-marginal consistency per incident variable, all values
        for pos, i in enumerate(support):
            marg = [0] * q
            for s, cfg in enumerate(local):
                marg[cfg.values[pos]] += z[j][s]
            if marg[0] != h0[i]:
                out.append(
                    f"check {j} sees {marg[0]} zeros at position {i}, h0 says {h0[i]}"
                )
            for a in range(1, q):
                if marg[a] != h[i][a - 1]:
                    out.append(
                        f"check {j} sees value {a} {marg[a]} times at position {i},"
                        f" h says {h[i][a - 1]}"
                    )
    return out


def extract(lp: LPProblem, sol) -> LPPseudocodeword:
    """Clear denominators of an exact LP point into an LPPseudocodeword.

    sol is a rational LPSolution or a plain sequence of Fractions laid
    out like the LP variable vector.  Float solutions are rejected:
    denominator clearing is only meaningful in exact arithmetic.
    """
    code = lp.code
    _require_connected(code)
    if isinstance(sol, LPSolution):
        if sol.mode != "rational":
            raise TypeError("extract requires an exact rational solution")
        x = sol.x
    else:
        x = list(sol)
    layout = lp.layout
    if len(x) != layout.N:
        raise ValueError(f"point has {len(x)} coordinates, LP has {layout.N}")
    vals = [Fraction(v) for v in x]
    M = 1
    for v in vals:
        M = M * v.denominator // math.gcd(M, v.denominator)
    n, q = code.n, code.ring.q
    h = []
    for i in range(n):
        row = []
        for a in range(1, q):
            scaled = vals[layout.f_index(i, a)] * M
            row.append(int(scaled))
        h.append(row)
    z = []
    for j in range(code.m):
        sl = layout.w_slice(j)
        z.append([int(vals[k] * M) for k in range(sl.start, sl.stop)])
    h0 = [M - sum(h[i]) for i in range(n)]
    return LPPseudocodeword(code=code, M=M, h=h, h0=h0, z=z)


def pcw_cost(pcw: LPPseudocodeword, lam: CostVector | np.ndarray, exact: bool = False):
    """Cost sum_i sum_a lam_i(a) h_i(a); rational when exact=True."""
    code = pcw.code
    lam_arr = lam.lam if isinstance(lam, CostVector) else np.asarray(lam, dtype=float)
    lam_arr = lam_arr.reshape(code.n, code.ring.q - 1)
    if exact:
        total = Fraction(0)
        for i in range(code.n):
            for a in range(1, code.ring.q):
                c = pcw.h[i][a - 1]
                if c:
                    total += Fraction(float(lam_arr[i, a - 1])) * c
        return total
    return float(sum(float(lam_arr[i, a - 1]) * pcw.h[i][a - 1]
                     for i in range(code.n) for a in range(1, code.ring.q)))


@dataclass(eq=False)
class GraphCover:
    """M-fold cover of a Tanner graph with values on the variable copies.

    values[i] lists the ring value of each of the M copies of variable
    i.  wiring[(j, i)] lists, for each of the M copies of check j, which
    copy of variable i it connects to; a valid cover makes each such
    list a permutation of range(M).  labels, when present, records the
    local-configuration ordinal each check copy was built from.
    """

    code: Code
    M: int
    values: list
    wiring: dict
    labels: list | None = field(default=None)


def build_cover(pcw: LPPseudocodeword) -> GraphCover:
    """Construct an explicit valid M-cover realizing a pseudocodeword.

    Variable copies are grouped by value (zeros first, then each nonzero
    symbol in increasing order); check copies follow the lexicographic
    order of local configurations, repeated by their z counts.  Wiring
    assigns each check copy the next unused variable copy of the value
    its configuration demands; the consistency equations guarantee the
    supply matches exactly.
    """
    code = pcw.code
    q = code.ring.q
    M = pcw.M
    values = []
    starts = []
    for i in range(code.n):
        row = [0] * pcw.h0[i]
        block_starts = [0, pcw.h0[i]]
        for a in range(1, q):
            row.extend([a] * pcw.h[i][a - 1])
            block_starts.append(len(row))
        values.append(row)
        starts.append(block_starts)

    wiring = {}
    labels_per_check = []
    for j in range(code.m):
        local = enumerate_local_codewords(code, j)
        support = local[0].support
        labels = []
        for s, cnt in enumerate(pcw.z[j]):
            labels.extend([s] * cnt)
        labels_per_check.append(labels)
        # per incident variable, a moving pointer into each value block
        for pos, i in enumerate(support):
            ptr = list(starts[i][:q])
            col = []
            for s in labels:
                a = local[s].values[pos]
                col.append(ptr[a])
                ptr[a] += 1
            wiring[(j, i)] = col
    return GraphCover(code=code, M=M, values=values, wiring=wiring,
                      labels=labels_per_check)


@dataclass(eq=False)
class CoverReport:
    """Outcome of verify_cover: ok flag plus one line per finding."""

    ok: bool
    fiber_lines: list
    bijection_lines: list
    check_lines: list

    @property
    def lines(self) -> list:
        return self.fiber_lines + self.bijection_lines + self.check_lines

    def __str__(self) -> str:
        return "\n".join(self.lines)


def verify_cover(cover: GraphCover) -> CoverReport:
    """Check a claimed cover and report on each requirement.

    Reports (a) fiber sizes over every variable and check node, (b)
    bijectivity of the copy pairing along every Tanner edge, and (c)
    satisfaction of every lifted check.
    """
    code = cover.code
    _require_connected(code)
    ring = code.ring
    M = cover.M
    ok = True

    fiber = []
    if len(cover.values) != code.n:
        fiber.append(f"FAIL fibers: {len(cover.values)} variable fibers, code has {code.n}")
        return CoverReport(False, fiber, [], [])
    bad = [i for i in range(code.n) if len(cover.values[i]) != M]
    for i in bad:
        fiber.append(f"FAIL fiber over variable {i}: size {len(cover.values[i])}, want {M}")
    range_bad = [
        i for i in range(code.n)
        if any(not (0 <= v < ring.q) for v in cover.values[i])
    ]
    for i in range_bad:
        fiber.append(f"FAIL fiber over variable {i}: value outside ring")
    check_sizes_ok = True
    for j in range(code.m):
        sizes = {len(cover.wiring.get((j, i), [])) for i in code.row_supports[j]}
        if sizes != {M}:
            fiber.append(f"FAIL fiber over check {j}: edge lists sized {sorted(sizes)}, want {M}")
            check_sizes_ok = False
    if not bad and not range_bad and check_sizes_ok:
        fiber.append(f"ok fibers: every variable and check node lifts to {M} copies")
    else:
        ok = False

    bij = []
    bij_ok = True
    for j in range(code.m):
        for i in code.row_supports[j]:
            col = cover.wiring.get((j, i), [])
            if sorted(col) != list(range(M)):
                bij.append(f"FAIL edge ({i},{j}): copy pairing is not a bijection")
                bij_ok = False
    if bij_ok:
        bij.append("ok bijectivity: every edge lifts to a perfect matching of copies")
    else:
        ok = False

    checks = []
    checks_ok = True
    if not bad and not range_bad and check_sizes_ok:
        for j in range(code.m):
            support = code.row_supports[j]
            coeffs = [int(code.H[j, i]) for i in support]
            for t in range(M):
                acc = 0
                for c, i in zip(coeffs, support):
                    v = cover.values[i][cover.wiring[(j, i)][t]]
                    acc = ring.add_table[acc, ring.mul_table[c, v]]
                if acc != 0:
                    checks.append(f"FAIL lifted check {j} copy {t}: sums to {acc}")
                    checks_ok = False
        if checks_ok:
            checks.append("ok lifted checks: all satisfied")
        else:
            ok = False
    else:
        checks.append("skipped lifted checks: fiber sizes invalid")
    return CoverReport(ok, fiber, bij, checks)


def cover_to_lppc(cover: GraphCover) -> LPPseudocodeword:
    """Project a valid cover down to counts; rejects invalid covers."""
    report = verify_cover(cover)
    if not report.ok:
        raise ValueError("invalid cover:\n" + str(report))
    code = cover.code
    q = code.ring.q
    M = cover.M
    h = [[0] * (q - 1) for _ in range(code.n)]
    h0 = [0] * code.n
    for i in range(code.n):
        for v in cover.values[i]:
            if v == 0:
                h0[i] += 1
            else:
                h[i][v - 1] += 1
    z = []
    for j in range(code.m):
        local = enumerate_local_codewords(code, j)
        support = local[0].support
        ordinal = {cfg.values: s for s, cfg in enumerate(local)}
        counts = [0] * len(local)
        for t in range(M):
            vals = tuple(
                cover.values[i][cover.wiring[(j, i)][t]] for i in support
            )
            counts[ordinal[vals]] += 1
        z.append(counts)
    return LPPseudocodeword(code=code, M=M, h=h, h0=h0, z=z)


def sample_valid_cover(code: Code, M: int, rng, max_tries: int = 200000) -> GraphCover:
    """Rejection-sample a uniformly random valid M-cover of a small code.

    Draws independent uniform values on every variable copy and an
    independent uniform permutation on every edge, keeping the first
    draw whose lifted checks all pass.  Exponentially slow in code size;
    meant as an oracle on toy codes.
    """
    _require_connected(code)
    q = code.ring.q
    for _ in range(max_tries):
        values = [[int(rng.integers(q)) for _ in range(M)] for _ in range(code.n)]
        wiring = {}
        for j in range(code.m):
            for i in code.row_supports[j]:
                wiring[(j, i)] = [int(v) for v in rng.permutation(M)]
        cover = GraphCover(code=code, M=M, values=values, wiring=wiring)
        if verify_cover(cover).ok:
            return cover
    raise RuntimeError(f"no valid cover found in {max_tries} draws")


def pcw_report_text(pcw: LPPseudocodeword, lam=None) -> str:
    """Human-readable report: M, count matrix, cost, verification."""
    lines = [f"M = {pcw.M}"]
    lines.append("counts (rows = positions, columns = values 0..q-1):")
    for i, row in enumerate(pcw.matrix):
        lines.append(f"  {i}: " + " ".join(str(v) for v in row))
    if lam is not None:
        c = pcw_cost(pcw, lam, exact=True)
        lines.append(f"cost = {c} ({float(c):.9g})")
    report = verify_cover(build_cover(pcw))
    lines.append("cover verification:")
    lines.extend("  " + ln for ln in report.lines)
    return "\n".join(lines)


def pcw_report_json(pcw: LPPseudocodeword, lam=None) -> str:
    """JSON report with fields M, matrix_representation, cost, verification."""
    payload = {
        "M": pcw.M,
        "matrix_representation": [[int(v) for v in row] for row in pcw.matrix],
    }
    if lam is not None:
        c = pcw_cost(pcw, lam, exact=True)
        payload["cost"] = {
            "numerator": str(c.numerator),
            "denominator": str(c.denominator),
            "float": float(c),
        }
    payload["verification"] = verify_cover(build_cover(pcw)).lines
    return json.dumps(payload, indent=2)
