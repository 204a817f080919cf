"""Finite commutative ring arithmetic backed by explicit operation tables.

Elements are integer indices ``0..q-1`` with ``0`` always the additive
identity.  Rings are defined entirely by their addition and multiplication
tables, so custom rings (product rings, non-unital tables) can be loaded
from files; ``make_zq`` builds the integers mod q.  Multiplication must be
commutative; a multiplicative identity is optional.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "RingSpec",
    "make_zq",
    "validate_ring_axioms",
    "load_ring",
    "add",
    "mul",
    "neg",
    "units",
    "inv",
]


@dataclass(eq=False)
class RingSpec:
    """A finite commutative ring on elements 0..q-1.

    Derived fields (negation table, units, inverse table, identity) are
    computed on construction.  Instances are immutable by convention and
    safe to share across worker processes.
    """

    q: int
    add_table: np.ndarray
    mul_table: np.ndarray
    one: int | None = field(init=False, default=None)
    units: frozenset[int] = field(init=False, default=frozenset())
    neg_table: np.ndarray = field(init=False, default=None)
    inv_table: dict[int, int] = field(init=False, default_factory=dict)

    def __post_init__(self) -> None:
        self.add_table = np.asarray(self.add_table, dtype=np.int64)
        self.mul_table = np.asarray(self.mul_table, dtype=np.int64)
        if self.add_table.shape != (self.q, self.q) or self.mul_table.shape != (self.q, self.q):
            raise ValueError(f"operation tables must be {self.q}x{self.q}")
        # Derived fields are computed permissively so that invalid tables can
        # still be inspected through validate_ring_axioms (report-only).
        in_range = self.add_table.min() >= 0 and self.add_table.max() < self.q
        neg = np.full(self.q, -1, dtype=np.int64)
        if in_range:
            for a in range(self.q):
                hits = np.nonzero(self.add_table[a] == 0)[0]
                if hits.size:
                    neg[a] = int(hits[0])
        self.neg_table = neg
        mul_ok = self.mul_table.min() >= 0 and self.mul_table.max() < self.q
        self.one = self._find_identity() if mul_ok else None
        u: dict[int, int] = {}
        if self.one is not None:
            for a in range(self.q):
                hits = np.nonzero(self.mul_table[a] == self.one)[0]
                if hits.size:
                    u[a] = int(hits[0])
        self.units = frozenset(u)
        self.inv_table = u

    def _find_identity(self) -> int | None:
        idx = np.arange(self.q)
        for e in range(self.q):
            if np.array_equal(self.mul_table[e], idx) and np.array_equal(self.mul_table[:, e], idx):
                return e
        return None


def _axiom_violations(q: int, add_t: np.ndarray, mul_t: np.ndarray) -> list[str]:
    out: list[str] = []
    for name, t in (("add_table", add_t), ("mul_table", mul_t)):
        if t.min() < 0 or t.max() >= q:
            bad = np.argwhere((t < 0) | (t >= q))[0]
            out.append(f"{name} not closed: entry [{bad[0]}][{bad[1]}] = {t[bad[0], bad[1]]}")
    if out:
        return out  # index-based checks below would be meaningless

    if not np.array_equal(add_t, add_t.T):
        a, b = np.argwhere(add_t != add_t.T)[0]
        out.append(f"addition not commutative: add({a},{b})={add_t[a, b]} != add({b},{a})={add_t[b, a]}")

    aa, bb, cc = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    if not np.array_equal(add_t[add_t[aa, bb], cc], add_t[aa, add_t[bb, cc]]):
        a, b, c = np.argwhere(add_t[add_t[aa, bb], cc] != add_t[aa, add_t[bb, cc]])[0]
        out.append(f"addition not associative at ({a},{b},{c})")
    if not np.array_equal(add_t[0], np.arange(q)):
        out.append("0 is not the additive identity")
    counts = (add_t == 0).sum(axis=1)
    if not np.all(counts == 1):
        a = int(np.nonzero(counts != 1)[0][0])
        out.append(f"element {a} lacks a unique additive inverse ({counts[a]} candidates)")

    if not np.array_equal(mul_t[mul_t[aa, bb], cc], mul_t[aa, mul_t[bb, cc]]):
        a, b, c = np.argwhere(mul_t[mul_t[aa, bb], cc] != mul_t[aa, mul_t[bb, cc]])[0]
        out.append(f"multiplication not associative at ({a},{b},{c})")
    if not np.array_equal(mul_t, mul_t.T):
        a, b = np.argwhere(mul_t != mul_t.T)[0]
        out.append(f"multiplication not commutative: mul({a},{b})={mul_t[a, b]} != mul({b},{a})={mul_t[b, a]}")
    if not np.array_equal(mul_t[aa, add_t[bb, cc]], add_t[mul_t[aa, bb], mul_t[aa, cc]]):
        a, b, c = np.argwhere(mul_t[aa, add_t[bb, cc]] != add_t[mul_t[aa, bb], mul_t[aa, cc]])[0]
        out.append(f"multiplication does not distribute over addition at ({a},{b},{c})")
    return out


def validate_ring_axioms(r: RingSpec) -> list[str]:
    """Exhaustively check the ring axioms; return a list of violations.

    An empty list means the tables define a finite commutative ring with
    additive identity 0.  The check is O(q^3) over all element triples.
    """
    return _axiom_violations(r.q, np.asarray(r.add_table), np.asarray(r.mul_table))


def make_zq(q: int) -> RingSpec:
    """The ring of integers modulo q."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    idx = np.arange(q)
    return RingSpec(q=q, add_table=(idx[:, None] + idx) % q, mul_table=(idx[:, None] * idx) % q)


def add(r: RingSpec, a, b):
    """Ring addition; accepts scalars or integer arrays."""
    return r.add_table[a, b]


def mul(r: RingSpec, a, b):
    """Ring multiplication; accepts scalars or integer arrays."""
    return r.mul_table[a, b]


def neg(r: RingSpec, a):
    """Additive inverse, the unique x with a + x = 0."""
    return r.neg_table[a]


def units(r: RingSpec) -> frozenset[int]:
    """Elements with a multiplicative inverse (empty if no identity exists)."""
    return r.units


def inv(r: RingSpec, a: int) -> int:
    """Multiplicative inverse of a unit."""
    try:
        return r.inv_table[int(a)]
    except KeyError:
        raise ValueError(f"element {a} is not a unit") from None


def load_ring(path) -> RingSpec:
    """Load a ring from a text file.

    Format: a line ``q=<int>``, a line ``add:`` followed by q rows of q
    space-separated entries, then ``mul:`` likewise.  Blank lines and
    ``#`` comments are ignored.  The tables are validated; invalid rings
    are rejected with the full violation list.
    """
    lines = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
    pos = 0
    if pos >= len(lines) or not lines[pos].replace(" ", "").startswith("q="):
        raise ValueError(f"{path}: expected 'q=<int>' on the first line")
    try:
        q = int(lines[pos].split("=", 1)[1])
    except ValueError:
        raise ValueError(f"{path}: malformed q value {lines[pos]!r}") from None
    if q < 2:
        raise ValueError(f"{path}: need q >= 2, got {q}")
    pos += 1

    def read_table(tag: str, at: int) -> tuple[np.ndarray, int]:
        if at >= len(lines) or lines[at] != f"{tag}:":
            raise ValueError(f"{path}: expected '{tag}:' block")
        at += 1
        rows = []
        for _ in range(q):
            if at >= len(lines):
                raise ValueError(f"{path}: {tag} table truncated, need {q} rows")
            try:
                row = [int(tok) for tok in lines[at].split()]
            except ValueError:
                raise ValueError(f"{path}: non-integer entry in {tag} row {len(rows)}") from None
            if len(row) != q:
                raise ValueError(f"{path}: {tag} row {len(rows)} has {len(row)} entries, need {q}")
            rows.append(row)
            at += 1
        return np.array(rows, dtype=np.int64), at

    add_t, pos = read_table("add", pos)
    mul_t, pos = read_table("mul", pos)
    if pos != len(lines):
        raise ValueError(f"{path}: trailing content after mul table")
    ring = RingSpec(q=q, add_table=add_t, mul_table=mul_t)
    violations = validate_ring_axioms(ring)
    if violations:
        raise ValueError(f"{path}: not a valid ring: " + "; ".join(violations))
    return ring
