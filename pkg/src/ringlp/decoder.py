"""LP decoding with ML-certificate classification, plus brute-force oracles.

The LP decoder minimizes the channel cost over the relaxed polytope Q.
An integral optimum is guaranteed to be the embedding of a codeword and,
because no point of Q costs less, that codeword is maximum-likelihood;
the result carries this certificate.  A fractional optimum is a decoding
failure in its own class, distinct from decoding to the wrong codeword.

The brute-force oracles enumerate the codebook, so they are usable
whenever full enumeration is (the ternary Golay's 729 words cost well
under a millisecond per query with the cached codebook).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channel import CostVector
from .codes import Code, enumerate_codewords, is_codeword
from .polytope import build_lp, unembed
from .simplex import LPSolution, is_integral, resolve_exact, solve

__all__ = [
    "DecodeResult",
    "lp_decode",
    "ml_decode_soft",
    "ml_decode_hard",
    "soft_cost",
    "codebook",
]

INTEGRALITY_TOL = 1e-6


@dataclass(eq=False)
class DecodeResult:
    """Outcome of one LP decode.

    outcome is "integral" (word is the ML codeword, ml_certificate True)
    or "fractional" (word is None; f holds the fractional vertex).  The
    full LPSolution is retained for extraction and diagnostics.
    """

    outcome: str
    word: np.ndarray | None
    objective: object
    f: object
    solution: LPSolution
    ml_certificate: bool
    lp: object = None

    @property
    def is_failure_against(self):
        raise AttributeError("compare against a transmitted word explicitly")


def lp_decode(
    code: Code,
    lam: CostVector | np.ndarray,
    mode: str = "float",
    tol: float = INTEGRALITY_TOL,
) -> DecodeResult:
    """Decode a cost vector by solving the relaxed LP.

    mode "float" and "rational" solve in the corresponding arithmetic;
    "recheck" solves in float and, when the float vertex looks
    fractional, re-solves exactly before classifying, ruling out
    tolerance artifacts.  Integral outputs are runtime-verified to be
    codewords; a violation would falsify the integral-points claim and
    raises AssertionError rather than returning a bogus word.
    """
    if mode not in ("float", "rational", "recheck"):
        raise ValueError(f"unknown decode mode {mode!r}")
    lp = build_lp(code, lam)
    sol = solve(lp, mode="rational" if mode == "rational" else "float")
    if mode == "recheck" and sol.mode == "float" and not is_integral(sol, tol):
        sol = resolve_exact(lp, sol)
    integral = is_integral(sol, 0 if sol.mode == "rational" else tol)
    f = sol.x[: sol.n_f]
    if integral:
        word = unembed(code, [float(v) for v in f], tol=0.5)
        assert word is not None and is_codeword(code, word), (
            "integral LP optimum did not decode to a codeword"
        )
        return DecodeResult(
            outcome="integral",
            word=word,
            objective=sol.objective,
            f=f,
            solution=sol,
            ml_certificate=True,
            lp=lp,
        )
    return DecodeResult(
        outcome="fractional",
        word=None,
        objective=sol.objective,
        f=f,
        solution=sol,
        ml_certificate=False,
        lp=lp,
    )


def codebook(code: Code) -> np.ndarray:
    """All codewords as a cached K x n array (enumeration order)."""
    cached = getattr(code, "_codebook", None)
    if cached is None:
        cached = np.array(list(enumerate_codewords(code)), dtype=np.int64)
        code._codebook = cached
    return cached


def soft_cost(code: Code, lam: CostVector | np.ndarray, words: np.ndarray):
    """Cost lam . xi(c) for each word in an array of words."""
    lam_arr = lam.lam if isinstance(lam, CostVector) else np.asarray(lam, dtype=float)
    lam_arr = lam_arr.reshape(code.n, code.ring.q - 1)
    table = np.concatenate([np.zeros((code.n, 1)), lam_arr], axis=1)
    return table[np.arange(code.n)[None, :], words].sum(axis=1)


def _lex_smallest(rows: np.ndarray) -> np.ndarray:
    return min(map(tuple, rows))


def ml_decode_soft(code: Code, lam: CostVector | np.ndarray, exact: bool = False):
    """Brute-force soft-decision ML: the codeword minimizing lam . xi(c).

    Ties (exactly equal costs) break to the lexicographically smallest
    codeword.  With exact=True the costs are accumulated in rational
    arithmetic on the exact float values, and the exact optimum cost is
    returned alongside the word.
    """
    book = codebook(code)
    costs = soft_cost(code, lam, book)
    if not exact:
        best = costs.min()
        cand = book[costs == best]
        return np.array(_lex_smallest(cand), dtype=np.int64)
    lam_arr = lam.lam if isinstance(lam, CostVector) else np.asarray(lam, dtype=float)
    lam_arr = lam_arr.reshape(code.n, code.ring.q - 1)
    exact_rows = [[Fraction(0)] + [Fraction(float(v)) for v in row] for row in lam_arr]
    # narrow with a float pre-pass: only near-minimal words need exact costs
    near = np.nonzero(costs <= costs.min() + 1e-6)[0]
    best_cost = None
    best_words = []
    for idx in near:
        w = book[idx]
        cost = sum(exact_rows[i][int(w[i])] for i in range(code.n))
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_words = [w]
        elif cost == best_cost:
            best_words.append(w)
    word = np.array(_lex_smallest(np.array(best_words)), dtype=np.int64)
    return word, best_cost


def ml_decode_hard(code: Code, y_hard) -> np.ndarray:
    """Brute-force hard-decision ML: minimum Hamming distance codeword.

    Ties break to the lexicographically smallest codeword.
    """
    y = np.asarray(y_hard, dtype=np.int64)
    if y.shape != (code.n,):
        raise ValueError(f"hard word must have length {code.n}")
    book = codebook(code)
    dist = (book != y[None, :]).sum(axis=1)
    best = dist.min()
    cand = book[dist == best]
    return np.array(_lex_smallest(cand), dtype=np.int64)
