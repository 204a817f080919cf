"""The relaxed decoding polytope Q and its LP representation.

Variables come in two blocks.  For every position i and nonzero symbol a
there is an indicator relaxation f[i,a] in [0,1]; for every check j and
every local configuration S in E_j there is a weight w[j,S] in [0,1].
The equality rows say that each check's weights form a probability
distribution over E_j (normalization) and that each f[i,a] equals the
total weight its neighboring checks put on configurations assigning a to
position i (linking, one row per check/position/symbol).

A word c embeds as f = xi(c), the one-hot encoding per position with 0
mapping to the all-zero block; integral points of Q are exactly the
embedded codewords, which is what makes the LP a decoder relaxation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .channel import CostVector
from .codes import Code, enumerate_local_codewords

__all__ = [
    "VariableLayout",
    "LPProblem",
    "embed_codeword",
    "unembed",
    "codeword_point",
    "build_lp",
    "integral_point_words",
    "point_in_Q",
    "derived_bounds_hold",
    "lp_debug_dump",
]


@dataclass(eq=False)
class VariableLayout:
    """Column and row indexing for the decoding LP of one code.

    Columns: f[i,a] at i*(q-1)+(a-1) for a in 1..q-1, then w-blocks per
    check in E_j order.  Rows: m normalization rows first, then linking
    rows ordered by (j, position within supp(H_j), a).
    """

    n: int
    q: int
    m: int
    e_sizes: tuple[int, ...]
    nf: int = field(init=False)
    N: int = field(init=False)
    w_starts: tuple[int, ...] = field(init=False)
    n_rows: int = field(init=False)
    row_kinds: list[tuple] = field(init=False)
    link_row: dict[tuple[int, int, int], int] = field(init=False)

    def __post_init__(self) -> None:
        self.nf = self.n * (self.q - 1)
        starts = []
        at = self.nf
        for size in self.e_sizes:
            starts.append(at)
            at += size
        self.w_starts = tuple(starts)
        self.N = at

    def f_index(self, i: int, a: int) -> int:
        if not 1 <= a < self.q:
            raise ValueError(f"symbol {a} has no f column (need 1 <= a < q)")
        return i * (self.q - 1) + (a - 1)

    def w_index(self, j: int, s: int) -> int:
        if not 0 <= s < self.e_sizes[j]:
            raise ValueError(f"config ordinal {s} out of range for check {j}")
        return self.w_starts[j] + s

    def w_slice(self, j: int) -> slice:
        return slice(self.w_starts[j], self.w_starts[j] + self.e_sizes[j])


@dataclass(eq=False)
class LPProblem:
    """min c.x over A x = b, 0 <= x <= 1, in sparse triplet form.

    ``row_kinds[r]`` is ("norm", j) or ("link", j, i, a), which downstream
    consumers (crash basis, debug dump, extraction) rely on.
    """

    code: Code
    layout: VariableLayout
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    b: np.ndarray
    c: np.ndarray
    row_kinds: list[tuple]

    def dense(self) -> np.ndarray:
        A = np.zeros((self.layout.n_rows, self.layout.N))
        A[self.rows, self.cols] = self.vals
        return A


def _layout_for(code: Code) -> VariableLayout:
    cached = getattr(code, "_lp_layout", None)
    if cached is not None:
        return cached
    e_sizes = tuple(len(enumerate_local_codewords(code, j)) for j in range(code.m))
    layout = VariableLayout(n=code.n, q=code.ring.q, m=code.m, e_sizes=e_sizes)
    kinds: list[tuple] = [("norm", j) for j in range(code.m)]
    link: dict[tuple[int, int, int], int] = {}
    for j in range(code.m):
        for i in map(int, code.row_supports[j]):
            for a in range(1, code.ring.q):
                link[(j, i, a)] = len(kinds)
                kinds.append(("link", j, i, a))
    layout.row_kinds = kinds
    layout.link_row = link
    layout.n_rows = len(kinds)
    code._lp_layout = layout
    return layout


def embed_codeword(code: Code, c) -> np.ndarray:
    """The embedding f = xi(c): one-hot per position, 0 to all-zeros."""
    c = np.asarray(c, dtype=np.int64)
    q = code.ring.q
    f = np.zeros((code.n, q - 1))
    hot = np.nonzero(c)[0]
    f[hot, c[hot] - 1] = 1.0
    return f.ravel()


def unembed(code: Code, f, tol: float = 1e-6) -> np.ndarray | None:
    """Invert the embedding if f is integral to within tol, else None."""
    f = np.asarray(f, dtype=float).reshape(code.n, code.ring.q - 1)
    word = np.zeros(code.n, dtype=np.int64)
    for i in range(code.n):
        ones = np.nonzero(np.abs(f[i] - 1.0) <= tol)[0]
        zeros = np.abs(f[i]) <= tol
        if ones.size == 1 and zeros.sum() == code.ring.q - 2:
            word[i] = ones[0] + 1
        elif zeros.all():
            word[i] = 0
        else:
            return None
    return word


def codeword_point(code: Code, c) -> tuple[np.ndarray, np.ndarray]:
    """The integral point (f, w) of Q that represents codeword c.

    w puts weight 1, at every check, on the single local configuration c
    induces on that check's support.
    """
    layout = _layout_for(code)
    f = embed_codeword(code, c)
    w = np.zeros(layout.N - layout.nf)
    c = np.asarray(c, dtype=np.int64)
    for j in range(code.m):
        configs = enumerate_local_codewords(code, j)
        key = tuple(int(c[i]) for i in configs[0].support)
        ordinals = _ordinal_map(code, j)
        if key not in ordinals:
            raise ValueError(f"word does not satisfy check {j}; not a codeword")
        w[layout.w_index(j, ordinals[key]) - layout.nf] = 1.0
    return f, w


def _ordinal_map(code: Code, j: int) -> dict[tuple[int, ...], int]:
    cache = getattr(code, "_ordinal_maps", None)
    if cache is None:
        cache = {}
        code._ordinal_maps = cache
    if j not in cache:
        cache[j] = {cfg.values: s for s, cfg in enumerate(enumerate_local_codewords(code, j))}
    return cache[j]


def build_lp(code: Code, lam: CostVector | np.ndarray) -> LPProblem:
    """Assemble the decoding LP min lam.f over Q for the given costs."""
    layout = _layout_for(code)
    lam_flat = lam.flat if isinstance(lam, CostVector) else np.asarray(lam, dtype=float).ravel()
    if lam_flat.size != layout.nf:
        raise ValueError(f"cost vector has {lam_flat.size} entries, layout needs {layout.nf}")

    structure = getattr(code, "_lp_structure", None)
    if structure is None:
        rows: list[int] = []
        cols: list[int] = []
        vals: list[float] = []
        for j in range(code.m):
            for s in range(layout.e_sizes[j]):
                rows.append(j)
                cols.append(layout.w_index(j, s))
                vals.append(1.0)
        for j in range(code.m):
            configs = enumerate_local_codewords(code, j)
            for i in map(int, code.row_supports[j]):
                for a in range(1, code.ring.q):
                    r = layout.link_row[(j, i, a)]
                    rows.append(r)
                    cols.append(layout.f_index(i, a))
                    vals.append(1.0)
                    for s, cfg in enumerate(configs):
                        if cfg.assignment[i] == a:
                            rows.append(r)
                            cols.append(layout.w_index(j, s))
                            vals.append(-1.0)
        b = np.zeros(layout.n_rows)
        b[: code.m] = 1.0
        structure = (
            np.array(rows, dtype=np.int64),
            np.array(cols, dtype=np.int64),
            np.array(vals),
            b,
        )
        code._lp_structure = structure

    c = np.zeros(layout.N)
    c[: layout.nf] = lam_flat
    return LPProblem(
        code=code,
        layout=layout,
        rows=structure[0],
        cols=structure[1],
        vals=structure[2],
        b=structure[3],
        c=c,
        row_kinds=layout.row_kinds,
    )


def integral_point_words(code: Code, guard: int = 2 * 10**6) -> list:
    """Words realized by 0/1 points of Q, by exhaustive enumeration.

    Candidate integral points are all 0/1 f vectors crossed with all w
    choices satisfying the normalization rows (a 0/1 w summing to 1 per
    check is one-hot, by arithmetic); each candidate is tested against
    every polytope row in integer arithmetic, which is exact.  Requires
    every position to appear in at least one check, so a returned word
    is pinned down completely.
    """
    from itertools import product as _product

    layout = _layout_for(code)
    covered = {int(i) for j in range(code.m) for i in code.row_supports[j]}
    if covered != set(range(code.n)):
        raise ValueError("integral-point enumeration needs every position checked")
    combos = 1
    for s in layout.e_sizes:
        combos *= s
    total = (1 << layout.nf) * combos
    if total > guard:
        raise ValueError(f"enumeration would visit {total} candidates (guard {guard})")

    lp = build_lp(code, np.zeros(layout.nf))
    A = np.zeros((layout.n_rows, layout.N), dtype=np.int64)
    A[lp.rows, lp.cols] = lp.vals.astype(np.int64)
    b = lp.b.astype(np.int64)
    nf = layout.nf
    F = ((np.arange(1 << nf)[:, None] >> np.arange(nf)[None, :]) & 1).astype(np.int64)
    base = A[:, :nf] @ F.T
    A_w = A[:, nf:]
    words = set()
    for combo in _product(*[range(s) for s in layout.e_sizes]):
        w_cols = [layout.w_index(j, s) - nf for j, s in enumerate(combo)]
        shift = A_w[:, w_cols].sum(axis=1)
        hits = np.nonzero(((base + shift[:, None]) == b[:, None]).all(axis=0))[0]
        for idx in hits:
            f = F[idx].reshape(code.n, code.ring.q - 1)
            word = []
            for i in range(code.n):
                hot = np.nonzero(f[i])[0]
                if hot.size > 1:
                    raise AssertionError(
                        "integral point of Q whose f block is not an embedding"
                    )
                word.append(0 if hot.size == 0 else int(hot[0]) + 1)
            words.add(tuple(word))
    return sorted(words)


def point_in_Q(lp: LPProblem, f, w, tol: float = 1e-9) -> bool:
    """Whether (f, w) satisfies every row and bound of Q within tol.

    Pass Fraction-valued sequences with tol = 0 for an exact test.
    """
    layout = lp.layout
    f = list(f)
    w = list(w)
    if len(f) != layout.nf or len(w) != layout.N - layout.nf:
        raise ValueError("point dimensions do not match the layout")
    x = f + w
    if any(v < -tol or v > 1 + tol for v in x):
        return False
    resid = [-bv for bv in _exactable(lp.b)]
    for r, cidx, v in zip(lp.rows, lp.cols, lp.vals):
        resid[r] += _exact_coeff(v) * x[cidx]
    return all(-tol <= rv <= tol for rv in resid)


def _exactable(b):
    return [Fraction(v) if v == int(v) else v for v in b]


def _exact_coeff(v: float):
    return int(v) if v == int(v) else v


def derived_bounds_hold(lp: LPProblem, f, w, tol: float = 1e-9) -> bool:
    """The inequalities implied by Q: 0 <= f <= 1 and sum_a f[i,a] <= 1."""
    layout = lp.layout
    f = list(f)
    if any(v < -tol or v > 1 + tol for v in f):
        return False
    q = layout.q
    for i in range(layout.n):
        if sum(f[i * (q - 1) : (i + 1) * (q - 1)]) > 1 + tol:
            return False
    return True


def lp_debug_dump(lp: LPProblem) -> str:
    """The LP in a human-readable linear-program text format, for
    cross-checking single instances against external solvers."""
    layout = lp.layout

    def colname(k: int) -> str:
        if k < layout.nf:
            i, rem = divmod(k, layout.q - 1)
            return f"f_{i}_{rem + 1}"
        for j in range(layout.m):
            sl = layout.w_slice(j)
            if sl.start <= k < sl.stop:
                return f"w_{j}_{k - sl.start}"
        raise IndexError(k)

    def term(v: float, name: str, first: bool) -> str:
        sign = "-" if v < 0 else ("" if first else "+")
        mag = abs(v)
        coeff = "" if mag == 1 else f"{mag:g} "
        return f"{sign} {coeff}{name}" if not first else f"{sign}{coeff}{name}"

    out = ["Minimize", " obj:"]
    parts = []
    for k in range(layout.nf):
        v = lp.c[k]
        if v != 0:
            parts.append(term(v, colname(k), not parts))
    out[1] += " " + (" ".join(parts) if parts else "0 f_0_1")
    out.append("Subject To")
    per_row: dict[int, list[tuple[int, float]]] = {}
    for r, cidx, v in zip(lp.rows, lp.cols, lp.vals):
        per_row.setdefault(int(r), []).append((int(cidx), float(v)))
    for r in range(layout.n_rows):
        kind = lp.row_kinds[r]
        label = f"norm_{kind[1]}" if kind[0] == "norm" else f"link_{kind[1]}_{kind[2]}_{kind[3]}"
        parts = []
        for cidx, v in sorted(per_row.get(r, [])):
            parts.append(term(v, colname(cidx), not parts))
        out.append(f" {label}: " + " ".join(parts) + f" = {lp.b[r]:g}")
    out.append("Bounds")
    for k in range(layout.N):
        out.append(f" 0 <= {colname(k)} <= 1")
    out.append("End")
    return "\n".join(out) + "\n"
