"""Primal simplex for the decoding LPs, in float and exact-rational modes.

The solver works on the bounded-variable form min c.x, A x = b,
0 <= x <= 1, with Bland's least-index rule throughout, so every solve is
deterministic and terminates.  Decoding LPs start from a crash basis at
the embedded all-zero codeword (each check's all-zero configuration
basic on its normalization row, each f variable basic on its first
linking row, pinned artificials elsewhere), which makes phase 1
unnecessary; problems without that structure go through a standard
two-phase start.

Float mode drives the Monte Carlo throughput.  Rational mode produces
exact vertices: small problems pivot directly on Fraction tableaus, and
large ones reuse the float solve's final basis, re-solving it in exact
arithmetic and verifying feasibility and optimality of the basis before
accepting it (with exact pivoting from the crash basis as the fallback
when float rounding picked a non-optimal basis).  Cost coefficients are
read exactly from their float representations, so both modes optimize
the same objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polytope import LPProblem

__all__ = ["LPSolution", "solve", "is_integral", "resolve_exact", "SimplexError"]

TOL = 1e-9
FEAS_TOL = 1e-7
DEFAULT_MAX_ITER = 200_000
RATIONAL_PIVOT_LIMIT = 500  # columns; larger problems go float-then-exact


class SimplexError(RuntimeError):
    """Internal solver failure (stall, lost feasibility, bad basis)."""


@dataclass(eq=False)
class LPSolution:
    """A vertex-optimal solution.

    ``x`` holds all structural variables (f block then w block) as a
    float array or a list of Fractions depending on mode.  ``basis``
    gives the basic column per row, artificials coded as -(row+1);
    ``var_status`` marks each column 0 nonbasic-lower, 1 nonbasic-upper,
    2 basic.
    """

    status: str
    x: object
    objective: object
    basis: np.ndarray
    var_status: np.ndarray
    iterations: int
    mode: str
    n_f: int


def is_integral(sol: LPSolution, tol: float = 1e-6) -> bool:
    """Whether every f coordinate is within tol of 0 or 1.

    Only the f block matters: the decoder's output criterion is
    integrality of the embedding, not of the auxiliary w block.
    """
    f = sol.x[: sol.n_f]
    return all(v <= tol or abs(v - 1) <= tol for v in map(float, f))


class _State:
    """Mutable tableau state shared by the float and exact pivot loops."""

    __slots__ = ("T", "bvals", "r", "obj", "basis", "status", "ub", "art_ub", "exact", "iters")

    def __init__(self, T, bvals, r, obj, basis, status, ub, art_ub, exact):
        self.T = T
        self.bvals = bvals
        self.r = r
        self.obj = obj
        self.basis = basis
        self.status = status
        self.ub = ub
        self.art_ub = art_ub
        self.exact = exact
        self.iters = 0


def _apply_step(st: _State, j: int, from_lower: bool, d, t, zero) -> None:
    if t > zero:
        st.bvals = st.bvals - d * t
        st.obj = st.obj + st.r[j] * (t if from_lower else -t)


def _pivot_float(st: _State, max_iter: int) -> str:
    """Vectorized Bland pivoting on a float64 tableau."""
    m = st.T.shape[0]
    while True:
        if st.iters >= max_iter:
            raise SimplexError(f"no convergence within {max_iter} pivots")
        cand = np.nonzero(
            ((st.status == 0) & (st.r < -TOL)) | ((st.status == 1) & (st.r > TOL))
        )[0]
        if cand.size == 0:
            return "optimal"
        j = int(cand[0])
        from_lower = st.status[j] == 0
        d = st.T[:, j] if from_lower else -st.T[:, j]

        ub_basic = np.where(st.basis >= 0, st.ub[np.maximum(st.basis, 0)], st.art_ub)
        limits = np.full(m, np.inf)
        pos = d > TOL
        neg = d < -TOL
        limits[pos] = st.bvals[pos] / d[pos]
        limits[neg] = (ub_basic[neg] - st.bvals[neg]) / -d[neg]
        np.maximum(limits, 0.0, out=limits)  # degenerate roundoff guard
        row_min = limits.min() if m else np.inf
        flip_t = st.ub[j]

        if not np.isfinite(row_min) and not np.isfinite(flip_t):
            return "unbounded"

        if flip_t < row_min:
            _apply_step(st, j, from_lower, d, flip_t, 0.0)
            st.status[j] = 1 if from_lower else 0
            st.iters += 1
            continue

        rows = np.nonzero(limits == row_min)[0]
        keys = st.basis[rows]
        leave_row = int(rows[np.argmin(keys)])
        if flip_t == row_min and j < keys.min():
            _apply_step(st, j, from_lower, d, flip_t, 0.0)
            st.status[j] = 1 if from_lower else 0
            st.iters += 1
            continue

        _apply_step(st, j, from_lower, d, row_min, 0.0)
        enter_val = row_min if from_lower else st.ub[j] - row_min
        _pivot_update(st, j, leave_row, d, enter_val, 0.0)


def _pivot_exact(st: _State, max_iter: int) -> str:
    """The same pivot rule on Fraction scalars, tolerances all zero."""
    m = st.T.shape[0]
    zero = Fraction(0)
    inf = float("inf")
    while True:
        if st.iters >= max_iter:
            raise SimplexError(f"no convergence within {max_iter} pivots")
        j = -1
        for k in range(len(st.r)):
            s = st.status[k]
            if (s == 0 and st.r[k] < zero) or (s == 1 and st.r[k] > zero):
                j = k
                break
        if j < 0:
            return "optimal"
        from_lower = st.status[j] == 0

        row_min = inf
        leave_row = -1
        leave_key = None
        d = [zero] * m
        for i in range(m):
            di = st.T[i, j] if from_lower else -st.T[i, j]
            d[i] = di
            if di > zero:
                limit = st.bvals[i] / di
            elif di < zero:
                ub_i = st.ub[st.basis[i]] if st.basis[i] >= 0 else st.art_ub
                if ub_i == inf:
                    continue
                limit = (ub_i - st.bvals[i]) / -di
            else:
                continue
            key = int(st.basis[i])
            if limit < row_min or (limit == row_min and key < leave_key):
                row_min = limit
                leave_row = i
                leave_key = key
        flip_t = st.ub[j]

        if row_min == inf and flip_t == inf:
            return "unbounded"

        d = np.array(d, dtype=object)
        if flip_t < row_min or (flip_t == row_min and j < leave_key):
            _apply_step(st, j, from_lower, d, Fraction(flip_t), zero)
            st.status[j] = 1 if from_lower else 0
            st.iters += 1
            continue

        _apply_step(st, j, from_lower, d, row_min, zero)
        enter_val = row_min if from_lower else Fraction(st.ub[j]) - row_min
        _pivot_update(st, j, leave_row, d, enter_val, zero)


def _pivot_update(st: _State, j: int, leave_row: int, d, enter_val, zero) -> None:
    piv = st.T[leave_row, j]
    leaving = int(st.basis[leave_row])
    if leaving >= 0:
        st.status[leaving] = 0 if d[leave_row] > zero else 1
    if piv != 1:
        st.T[leave_row] = st.T[leave_row] / piv
    factor = st.T[:, j].copy()
    factor[leave_row] = zero
    if st.exact:
        lr = st.T[leave_row]
        for i in np.nonzero(factor)[0]:
            st.T[i] = st.T[i] - factor[i] * lr
    else:
        st.T -= np.outer(factor, st.T[leave_row])
    st.r = st.r - st.r[j] * st.T[leave_row]
    st.bvals[leave_row] = enter_val
    st.basis[leave_row] = j
    st.status[j] = 2
    st.iters += 1


def _pivot_loop(st: _State, max_iter: int) -> str:
    return _pivot_exact(st, max_iter) if st.exact else _pivot_float(st, max_iter)


def _zero(exact: bool):
    return Fraction(0) if exact else 0.0


def _reprice(st: _State, c) -> None:
    if st.exact:
        cb = np.array(
            [c[b] if b >= 0 else Fraction(0) for b in st.basis], dtype=object
        )
    else:
        cb = np.where(st.basis >= 0, c[np.maximum(st.basis, 0)], 0.0)
    st.r = c - cb @ st.T
    st.obj = cb @ st.bvals
    at_upper = np.nonzero(st.status == 1)[0]
    if at_upper.size:
        # nonbasic columns at their upper bound still contribute cost
        st.obj = st.obj + (c[at_upper] * st.ub[at_upper]).sum()


def _check_final(st: _State, tol) -> None:
    ub_basic = np.where(st.basis >= 0, st.ub[np.maximum(st.basis, 0)], st.art_ub)
    if st.exact:
        for i in range(len(st.bvals)):
            if st.bvals[i] < -tol or st.bvals[i] > ub_basic[i] + tol:
                raise SimplexError(f"basic value out of bounds on row {i}: {st.bvals[i]}")
    else:
        if (st.bvals < -tol).any() or (st.bvals > ub_basic + tol).any():
            bad = int(np.argmax((st.bvals < -tol) | (st.bvals > ub_basic + tol)))
            raise SimplexError(f"basic value out of bounds on row {bad}: {st.bvals[bad]}")


def _assemble(st: _State, N: int):
    if st.exact:
        x = [Fraction(0)] * N
        for k in range(N):
            if st.status[k] == 1:
                x[k] = Fraction(st.ub[k])
        for i, b in enumerate(st.basis):
            if b >= 0:
                x[b] = Fraction(st.bvals[i])
        return x
    x = np.zeros(N)
    x[st.status == 1] = st.ub[st.status == 1]
    rows = st.basis >= 0
    x[st.basis[rows]] = st.bvals[rows]
    return x


def _dense_data(lp: LPProblem, exact: bool):
    """Dense A, b, c, ub in the requested arithmetic.

    The constraint part is cached per (code, arithmetic); the cost
    vector is rebuilt per call since it changes every trial.
    """
    layout = lp.layout
    key = "_dense_exact" if exact else "_dense_float"
    cached = getattr(lp.code, key, None)
    if cached is None or cached[2] is not layout:
        if exact:
            A = np.full((layout.n_rows, layout.N), Fraction(0), dtype=object)
            for rr, cc, vv in zip(lp.rows, lp.cols, lp.vals):
                A[rr, cc] = Fraction(int(vv))
            b = np.array([Fraction(int(v)) for v in lp.b], dtype=object)
        else:
            A = np.zeros((layout.n_rows, layout.N))
            A[lp.rows, lp.cols] = lp.vals
            b = lp.b.copy()
        cached = (A, b, layout)
        setattr(lp.code, key, cached)
    A, b, _ = cached
    if exact:
        c = np.array([Fraction(float(v)) for v in lp.c], dtype=object)
        ub = np.array([Fraction(1)] * layout.N, dtype=object)
    else:
        c = lp.c.astype(float)
        ub = np.ones(layout.N)
    return A, b, c, ub


def _crash_template(lp: LPProblem, exact: bool):
    """Crash-basis tableau for a decoding LP, cached per code.

    Returns (T0, bvals0, basis0, status0).  T0 is A expressed in the
    crash basis: every non-designated linking row has its (i,a)
    designated row subtracted, which is exactly the basis inverse
    applied, since the extra +1 entries of a basic f column sit in rows
    whose own basic column is an identity artificial.
    """
    key = "_crash_exact" if exact else "_crash_float"
    cached = getattr(lp.code, key, None)
    if cached is not None and cached[4] is lp.layout:
        return cached[:4]
    layout = lp.layout
    A, b, _, _ = _dense_data(lp, exact)
    T0 = A.copy()
    bvals0 = b.copy()
    basis0 = np.zeros(layout.n_rows, dtype=np.int64)
    status0 = np.zeros(layout.N, dtype=np.int8)
    designated: dict[tuple[int, int], int] = {}
    for row, kind in enumerate(lp.row_kinds):
        if kind[0] == "norm":
            j = kind[1]
            wz = layout.w_index(j, 0)  # all-zero config is lexicographically first
            basis0[row] = wz
            status0[wz] = 2
        else:
            _, j, i, a = kind
            fcol = layout.f_index(i, a)
            if (i, a) not in designated:
                designated[(i, a)] = row
                basis0[row] = fcol
                status0[fcol] = 2
            else:
                basis0[row] = -(row + 1)
    for row, kind in enumerate(lp.row_kinds):
        if kind[0] == "link":
            _, j, i, a = kind
            drow = designated[(i, a)]
            if row != drow:
                T0[row] = T0[row] - T0[drow]
                bvals0[row] = bvals0[row] - bvals0[drow]
    cached = (T0, bvals0, basis0, status0, lp.layout)
    setattr(lp.code, key, cached)
    return cached[:4]


def _finish(st: _State, lp: LPProblem, exact: bool, tol) -> LPSolution:
    _check_final(st, tol)
    return LPSolution(
        status="optimal",
        x=_assemble(st, lp.layout.N),
        objective=st.obj,
        basis=st.basis,
        var_status=st.status,
        iterations=st.iters,
        mode="rational" if exact else "float",
        n_f=lp.layout.nf,
    )


def _solve_crash(lp: LPProblem, exact: bool, max_iter: int) -> LPSolution:
    _, _, c, ub = _dense_data(lp, exact)
    T0, bvals0, basis0, status0 = _crash_template(lp, exact)
    st = _State(
        T=T0.copy(),
        bvals=bvals0.copy(),
        r=None,
        obj=_zero(exact),
        basis=basis0.copy(),
        status=status0.copy(),
        ub=ub,
        art_ub=_zero(exact),
        exact=exact,
    )
    _reprice(st, c)
    outcome = _pivot_loop(st, max_iter)
    if outcome == "unbounded":
        raise SimplexError("decoding LP reported unbounded; Q is a subset of [0,1]^N")
    return _finish(st, lp, exact, 0 if exact else FEAS_TOL)


def _solve_two_phase(lp: LPProblem, exact: bool, max_iter: int) -> LPSolution:
    layout = lp.layout
    A, b, c, ub = _dense_data(lp, exact)
    T = A.copy()
    bvals = b.copy()
    zero = _zero(exact)
    flip = np.nonzero(bvals < zero)[0]
    if flip.size:
        T[flip] = -T[flip]
        bvals[flip] = -bvals[flip]
    st = _State(
        T=T,
        bvals=bvals,
        r=-T.sum(axis=0),
        obj=bvals.sum(),
        basis=-(np.arange(layout.n_rows, dtype=np.int64) + 1),
        status=np.zeros(layout.N, dtype=np.int8),
        ub=ub,
        art_ub=float("inf"),
        exact=exact,
    )
    outcome = _pivot_loop(st, max_iter)
    if outcome == "unbounded":
        raise SimplexError("phase 1 unbounded; artificial objective is bounded below by 0")
    feas_tol = 0 if exact else FEAS_TOL
    if st.obj > feas_tol:
        return LPSolution(
            status="infeasible",
            x=None,
            objective=None,
            basis=st.basis,
            var_status=st.status,
            iterations=st.iters,
            mode="rational" if exact else "float",
            n_f=layout.nf,
        )
    st.art_ub = zero  # artificials pinned to 0 for phase 2
    _reprice(st, c)
    outcome = _pivot_loop(st, max_iter)
    if outcome == "unbounded":
        return LPSolution(
            status="unbounded",
            x=None,
            objective=None,
            basis=st.basis,
            var_status=st.status,
            iterations=st.iters,
            mode="rational" if exact else "float",
            n_f=layout.nf,
        )
    return _finish(st, lp, exact, feas_tol)


def _gauss_solve(B: list[list[Fraction]], rhs_cols: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact Gauss-Jordan: solve B X = RHS for several right-hand sides.

    Raises SimplexError on a singular matrix.
    """
    m = len(B)
    M = [row[:] + [col[i] for col in rhs_cols] for i, row in enumerate(B)]
    for c in range(m):
        piv = None
        for rr in range(c, m):
            if M[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            raise SimplexError("singular basis matrix")
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
        if M[c][c] != 1:
            inv = Fraction(1) / M[c][c]
            M[c] = [v * inv for v in M[c]]
        for rr in range(m):
            if rr != c and M[rr][c] != 0:
                fac = M[rr][c]
                row_c = M[c]
                M[rr] = [a - fac * bq for a, bq in zip(M[rr], row_c)]
    return [[M[i][m + t] for i in range(m)] for t in range(len(rhs_cols))]


def _exact_columns(lp: LPProblem) -> dict[int, list[tuple[int, Fraction]]]:
    cols: dict[int, list[tuple[int, Fraction]]] = {}
    for rr, cc, vv in zip(lp.rows, lp.cols, lp.vals):
        cols.setdefault(int(cc), []).append((int(rr), Fraction(int(vv))))
    return cols


def resolve_exact(lp: LPProblem, sol: LPSolution, max_iter: int | None = None) -> LPSolution:
    """Exact-rational solution at the basis a float solve produced.

    Solves the basis system in Fractions, then verifies basic
    feasibility and reduced-cost optimality exactly (costs read as the
    exact values of their floats).  If the float basis fails either
    check, the problem is re-solved by exact pivoting from the crash
    basis instead.
    """
    if sol.status != "optimal":
        raise ValueError("can only resolve an optimal float solution")
    layout = lp.layout
    m = layout.n_rows
    cols = _exact_columns(lp)
    c_exact = [Fraction(float(v)) for v in lp.c]
    one = Fraction(1)

    B: list[list[Fraction]] = [[Fraction(0)] * m for _ in range(m)]
    for slot, bcol in enumerate(sol.basis):
        if bcol >= 0:
            for rr, vv in cols[int(bcol)]:
                B[rr][slot] = vv
        else:
            B[-int(bcol) - 1][slot] = one

    rhs = [Fraction(int(v)) for v in lp.b]
    for k in np.nonzero(sol.var_status == 1)[0]:
        for rr, vv in cols.get(int(k), ()):
            rhs[rr] -= vv  # upper-bounded nonbasics sit at 1
    try:
        (xB,) = _gauss_solve(B, [rhs])
    except SimplexError:
        return _solve_crash(lp, exact=True, max_iter=max_iter or DEFAULT_MAX_ITER)

    ok = True
    for slot, bcol in enumerate(sol.basis):
        v = xB[slot]
        if bcol >= 0:
            if v < 0 or v > 1:
                ok = False
                break
        elif v != 0:
            ok = False
            break
    if ok:
        cB = [c_exact[int(b)] if b >= 0 else Fraction(0) for b in sol.basis]
        Bt = [[B[rr][slot] for rr in range(m)] for slot in range(m)]
        (y,) = _gauss_solve(Bt, [cB])
        for k in range(layout.N):
            stat = sol.var_status[k]
            if stat == 2:
                continue
            rk = c_exact[k] - sum(y[rr] * vv for rr, vv in cols.get(k, ()))
            if (stat == 1 and rk > 0) or (stat == 0 and rk < 0):
                ok = False
                break
    if not ok:
        return _solve_crash(lp, exact=True, max_iter=max_iter or DEFAULT_MAX_ITER)

    x = [Fraction(0)] * layout.N
    for k in np.nonzero(sol.var_status == 1)[0]:
        x[int(k)] = one
    for slot, bcol in enumerate(sol.basis):
        if bcol >= 0:
            x[int(bcol)] = xB[slot]
    objective = sum((ck * xk for ck, xk in zip(c_exact, x) if xk), Fraction(0))
    return LPSolution(
        status="optimal",
        x=x,
        objective=objective,
        basis=sol.basis.copy(),
        var_status=sol.var_status.copy(),
        iterations=sol.iterations,
        mode="rational",
        n_f=layout.nf,
    )


def solve(
    lp: LPProblem,
    mode: str = "float",
    use_crash: bool = True,
    max_iter: int | None = None,
) -> LPSolution:
    """Solve the LP to a vertex optimum.

    mode "float" runs the fast float64 engine (a stall triggers an
    automatic exact re-solve); mode "rational" returns exact Fractions,
    pivoting exactly when the problem is small and otherwise finishing a
    float solve exactly via ``resolve_exact``.
    """
    if mode not in ("float", "rational"):
        raise ValueError(f"unknown mode {mode!r}")
    limit = max_iter or DEFAULT_MAX_ITER
    if mode == "float":
        try:
            if use_crash:
                return _solve_crash(lp, exact=False, max_iter=limit)
            return _solve_two_phase(lp, exact=False, max_iter=limit)
        except SimplexError:
            # numerical stall: redo the whole solve on exact pivots
            if use_crash:
                return _solve_crash(lp, exact=True, max_iter=limit)
            return _solve_two_phase(lp, exact=True, max_iter=limit)
    if lp.layout.N <= RATIONAL_PIVOT_LIMIT:
        if use_crash:
            return _solve_crash(lp, exact=True, max_iter=limit)
        return _solve_two_phase(lp, exact=True, max_iter=limit)
    float_sol = (
        _solve_crash(lp, exact=False, max_iter=limit)
        if use_crash
        else _solve_two_phase(lp, exact=False, max_iter=limit)
    )
    if float_sol.status != "optimal":
        raise SimplexError(f"float presolve returned {float_sol.status}")
    return resolve_exact(lp, float_sol, max_iter=limit)
