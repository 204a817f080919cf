"""Linear codes over a finite ring, given by a parity-check matrix.

A word c is a codeword iff sum_i H[j,i]*c_i = 0 in the ring for every
row j.  Each row j induces the set E_j of local configurations, the
assignments on supp(H_j) that satisfy that single check; these index the
auxiliary variables of the decoding LP.  Brute-force codeword enumeration
doubles as the ML and weight-enumerator oracle.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .rings import RingSpec, load_ring, make_zq, validate_ring_axioms

__all__ = [
    "Code",
    "LocalConfig",
    "load_code",
    "check_satisfied",
    "is_codeword",
    "enumerate_local_codewords",
    "enumerate_codewords",
    "weight_enumerator",
    "tanner_connected",
    "golay_code_path",
]

ENUM_GUARD = 10**7  # hard cap on assignments visited per local enumeration
WORD_GUARD = 2 * 10**7  # cap on words streamed by full enumeration


@dataclass(frozen=True)
class LocalConfig:
    """An assignment on supp(H_j) satisfying check j.

    ``support`` is the sorted tuple of positions with H[j,i] != 0 and
    ``values`` the assigned ring elements, aligned with ``support``.
    """

    j: int
    support: tuple[int, ...]
    values: tuple[int, ...]

    @property
    def assignment(self) -> dict[int, int]:
        return dict(zip(self.support, self.values))

    def value_sets(self, q: int) -> tuple[frozenset[int], ...]:
        """The equivalent tuple (S_1, .., S_{q-1}) of disjoint position sets,
        S_a = positions assigned the nonzero value a."""
        return tuple(
            frozenset(i for i, v in zip(self.support, self.values) if v == a)
            for a in range(1, q)
        )


@dataclass(eq=False)
class Code:
    """A length-n code over ``ring`` with m parity checks."""

    ring: RingSpec
    H: np.ndarray
    k_hint: int | None = None
    name: str = ""
    n: int = field(init=False)
    m: int = field(init=False)
    row_supports: list[np.ndarray] = field(init=False)
    d: int = field(init=False)

    def __post_init__(self) -> None:
        self.H = np.asarray(self.H, dtype=np.int64)
        if self.H.ndim != 2:
            raise ValueError("H must be a 2-d matrix")
        self.m, self.n = self.H.shape
        if self.m < 1 or self.n < 1:
            raise ValueError("need m >= 1 and n >= 1")
        if self.H.min() < 0 or self.H.max() >= self.ring.q:
            bad = np.argwhere((self.H < 0) | (self.H >= self.ring.q))[0]
            raise ValueError(
                f"H[{bad[0]},{bad[1]}] = {self.H[bad[0], bad[1]]} is not an element of the q={self.ring.q} ring"
            )
        self.row_supports = [np.nonzero(self.H[j])[0] for j in range(self.m)]
        for j, supp in enumerate(self.row_supports):
            if supp.size == 0:
                raise ValueError(f"row {j} of H is all-zero; its check constrains nothing")
        self.d = max(int(s.size) for s in self.row_supports)
        self._local_cache: dict[int, list[LocalConfig]] = {}


def tanner_connected(code: Code) -> bool:
    """True iff the bipartite check/variable graph is connected.

    Variable vertices with an all-zero column count as isolated vertices,
    so any such column makes the graph disconnected.
    """
    n, m = code.n, code.m
    var_adj = [[] for _ in range(n)]
    chk_adj = [list(map(int, s)) for s in code.row_supports]
    for j, supp in enumerate(code.row_supports):
        for i in supp:
            var_adj[int(i)].append(j)
    seen_v = np.zeros(n, dtype=bool)
    seen_c = np.zeros(m, dtype=bool)
    stack = [("v", 0)]
    seen_v[0] = True
    while stack:
        kind, x = stack.pop()
        if kind == "v":
            for j in var_adj[x]:
                if not seen_c[j]:
                    seen_c[j] = True
                    stack.append(("c", j))
        else:
            for i in chk_adj[x]:
                if not seen_v[i]:
                    seen_v[i] = True
                    stack.append(("v", i))
    return bool(seen_v.all() and seen_c.all())


def check_satisfied(code: Code, c, j: int) -> bool:
    """Whether word c satisfies parity check j."""
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (code.n,):
        raise ValueError(f"word must have length {code.n}")
    r = code.ring
    acc = 0
    for i in code.row_supports[j]:
        acc = r.add_table[acc, r.mul_table[code.H[j, i], c[i]]]
    return int(acc) == 0


def is_codeword(code: Code, c) -> bool:
    """Whether c satisfies every parity check."""
    return all(check_satisfied(code, c, j) for j in range(code.m))


def _syndrome_block(code: Code, j: int, words: np.ndarray) -> np.ndarray:
    """Check-j accumulator for a block of words, via table folds."""
    r = code.ring
    acc = np.zeros(len(words), dtype=np.int64)
    for i in code.row_supports[j]:
        acc = r.add_table[acc, r.mul_table[code.H[j, i], words[:, i]]]
    return acc


def enumerate_local_codewords(code: Code, j: int) -> list[LocalConfig]:
    """The set E_j of all assignments on supp(H_j) satisfying check j.

    Returned in lexicographic order of the value tuple over the sorted
    support, which fixes the LP variable layout reproducibly.  When some
    coefficient is a unit the other positions are enumerated freely and
    that one is solved; otherwise all q^d_j assignments are filtered.
    Enumerations beyond the guard size are rejected.
    """
    if j in code._local_cache:
        return code._local_cache[j]
    r = code.ring
    q = r.q
    supp = code.row_supports[j]
    dj = int(supp.size)
    coeffs = code.H[j, supp]

    unit_slots = [t for t in range(dj) if int(coeffs[t]) in r.units]
    if unit_slots:
        count = q ** (dj - 1)
        if count > ENUM_GUARD:
            raise ValueError(
                f"E_{j} enumeration would visit {count} assignments (guard {ENUM_GUARD})"
            )
        t_star = unit_slots[-1]
        free_slots = [t for t in range(dj) if t != t_star]
        grids = np.meshgrid(*([np.arange(q)] * (dj - 1)), indexing="ij") if dj > 1 else []
        free_vals = (
            np.stack([g.ravel() for g in grids], axis=1)
            if dj > 1
            else np.zeros((1, 0), dtype=np.int64)
        )
        acc = np.zeros(len(free_vals), dtype=np.int64)
        for t, col in zip(free_slots, free_vals.T):
            acc = r.add_table[acc, r.mul_table[int(coeffs[t]), col]]
        inv_c = r.inv_table[int(coeffs[t_star])]
        solved = r.mul_table[inv_c, r.neg_table[acc]]
        values = np.empty((len(free_vals), dj), dtype=np.int64)
        for pos, t in enumerate(free_slots):
            values[:, t] = free_vals[:, pos]
        values[:, t_star] = solved
    else:
        count = q**dj
        if count > ENUM_GUARD:
            raise ValueError(
                f"E_{j} enumeration would visit {count} assignments (guard {ENUM_GUARD})"
            )
        grids = np.meshgrid(*([np.arange(q)] * dj), indexing="ij")
        cand = np.stack([g.ravel() for g in grids], axis=1)
        acc = np.zeros(len(cand), dtype=np.int64)
        for t in range(dj):
            acc = r.add_table[acc, r.mul_table[int(coeffs[t]), cand[:, t]]]
        values = cand[acc == 0]

    order = np.lexsort(values.T[::-1])
    sup_t = tuple(int(i) for i in supp)
    out = [LocalConfig(j=j, support=sup_t, values=tuple(int(v) for v in values[idx])) for idx in order]
    code._local_cache[j] = out
    return out


def _is_zq(ring: RingSpec) -> bool:
    idx = np.arange(ring.q)
    return np.array_equal(ring.add_table, (idx[:, None] + idx) % ring.q) and np.array_equal(
        ring.mul_table, (idx[:, None] * idx) % ring.q
    )


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def gf_generator_matrix(H: np.ndarray, q: int) -> np.ndarray:
    """A k x n generator matrix for the null space of H over GF(q), q prime.

    Gauss-Jordan elimination with modular inverses; the k = n - rank(H)
    null-space basis vectors set one free column to 1 each.
    """
    A = np.array(H, dtype=np.int64) % q
    m, n = A.shape
    pivots = []
    row = 0
    for col in range(n):
        piv = None
        for rr in range(row, m):
            if A[rr, col] % q != 0:
                piv = rr
                break
        if piv is None:
            continue
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        inv_p = pow(int(A[row, col]), q - 2, q)
        A[row] = (A[row] * inv_p) % q
        for rr in range(m):
            if rr != row and A[rr, col] % q != 0:
                A[rr] = (A[rr] - A[rr, col] * A[row]) % q
        pivots.append(col)
        row += 1
        if row == m:
            break
    free = [c for c in range(n) if c not in pivots]
    G = np.zeros((len(free), n), dtype=np.int64)
    for t, fc in enumerate(free):
        G[t, fc] = 1
        for rr, pc in enumerate(pivots):
            G[t, pc] = (-A[rr, fc]) % q
    return G


def enumerate_codewords(code: Code, batch: int = 4096):
    """Yield every codeword exactly once, as int64 arrays of length n.

    Prime-field codes over Z_q go through a generator matrix and stream
    q^k message words; other rings stream all q^n words filtered by the
    checks, guarded to n <= 14 and a total word cap.
    """
    q = code.ring.q
    if _is_prime(q) and _is_zq(code.ring):
        G = gf_generator_matrix(code.H, q)
        k = G.shape[0]
        total = q**k
        if total > WORD_GUARD:
            raise ValueError(f"q^k = {total} codewords exceeds the enumeration cap")
        for start in range(0, total, batch):
            idx = np.arange(start, min(start + batch, total))
            msgs = np.empty((len(idx), k), dtype=np.int64)
            rem = idx.copy()
            for t in range(k - 1, -1, -1):
                msgs[:, t] = rem % q
                rem //= q
            words = msgs @ G % q
            yield from words
        return

    if code.n > 14:
        raise ValueError("full word enumeration is guarded to n <= 14 for non-field rings")
    total = q**code.n
    if total > WORD_GUARD:
        raise ValueError(f"q^n = {total} words exceeds the enumeration cap")
    for start in range(0, total, batch):
        idx = np.arange(start, min(start + batch, total))
        words = np.empty((len(idx), code.n), dtype=np.int64)
        rem = idx.copy()
        for t in range(code.n - 1, -1, -1):
            words[:, t] = rem % q
            rem //= q
        keep = np.ones(len(words), dtype=bool)
        for j in range(code.m):
            keep &= _syndrome_block(code, j, words) == 0
            if not keep.any():
                break
        yield from words[keep]


def weight_enumerator(code: Code) -> np.ndarray:
    """Coefficients A_0..A_n with A_w = number of codewords of Hamming weight w."""
    A = np.zeros(code.n + 1, dtype=np.int64)
    for c in enumerate_codewords(code):
        A[int(np.count_nonzero(c))] += 1
    return A


def load_code(path) -> Code:
    """Load a code from a text file.

    Format: ``q=<int>`` or ``ring=<path>`` (relative paths resolve against
    the code file), then ``n=<int>``, ``m=<int>``, then m lines of n
    space-separated element indices.  ``#`` comments and blank lines are
    ignored.  Warns if the Tanner graph is disconnected, since cover-based
    pseudocodeword tooling requires connectivity.
    """
    path = Path(path)
    lines = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
    kv = {}
    rows_at = None
    for pos, line in enumerate(lines):
        if "=" in line and not line.split("=", 1)[0].strip().lstrip("-").isdigit():
            key, val = (part.strip() for part in line.split("=", 1))
            if key in kv:
                raise ValueError(f"{path}: duplicate key {key!r}")
            kv[key] = val
        else:
            rows_at = pos
            break
    if rows_at is None:
        raise ValueError(f"{path}: no matrix rows found")

    if "ring" in kv:
        ring_path = Path(kv["ring"])
        if not ring_path.is_absolute():
            ring_path = path.parent / ring_path
        ring = load_ring(ring_path)
    elif "q" in kv:
        try:
            q = int(kv["q"])
        except ValueError:
            raise ValueError(f"{path}: malformed q value {kv['q']!r}") from None
        ring = make_zq(q)
    else:
        raise ValueError(f"{path}: need a 'q=' or 'ring=' line")
    try:
        n = int(kv["n"])
        m = int(kv["m"])
    except KeyError as missing:
        raise ValueError(f"{path}: missing {missing} line") from None
    except ValueError:
        raise ValueError(f"{path}: malformed n/m value") from None

    row_lines = lines[rows_at:]
    if len(row_lines) != m:
        raise ValueError(f"{path}: expected {m} matrix rows, found {len(row_lines)}")
    H = np.zeros((m, n), dtype=np.int64)
    for j, line in enumerate(row_lines):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ValueError(f"{path}: non-integer entry in row {j}") from None
        if len(row) != n:
            raise ValueError(f"{path}: row {j} has {len(row)} entries, expected n={n}")
        for i, v in enumerate(row):
            if not 0 <= v < ring.q:
                raise ValueError(f"{path}: H[{j},{i}] = {v} out of range for q={ring.q}")
            H[j, i] = v

    k_hint = int(kv["k"]) if "k" in kv else None
    code = Code(ring=ring, H=H, k_hint=k_hint, name=path.stem)
    if not tanner_connected(code):
        warnings.warn(
            f"{path}: Tanner graph is disconnected; pseudocodeword scale M is not "
            "well defined across components",
            stacklevel=2,
        )
    return code


def golay_code_path() -> Path:
    """Filesystem path of the shipped (11,6,5) ternary Golay code file."""
    return Path(resources.files(__package__) / "data" / "golay_11_6_3.code")
