"""Linear-programming decoding of linear codes over finite commutative rings.

The package provides table-driven ring arithmetic, parity-check code models
with check-local codeword sets, q-PSK/AWGN and q-ary symmetric channels,
the relaxed decoding polytope, a two-phase simplex solver with float and
exact-rational modes, LP and brute-force ML decoders, pseudocodeword
extraction with graph-cover verification, analytic WER reference curves,
and a reproducible Monte Carlo harness with a command-line front end.
"""

from .rings import RingSpec, make_zq, validate_ring_axioms, load_ring, add, mul, neg
from .codes import Code, LocalConfig, load_code, golay_code_path
from .channel import PskAwgnScheme, QarySymmetricScheme, CostVector, snr_to_noise
from .polytope import VariableLayout, LPProblem, build_lp, embed_codeword
from .simplex import LPSolution, solve, is_integral
from .decoder import DecodeResult, lp_decode, ml_decode_soft, ml_decode_hard
from .pseudocodewords import (
    LPPseudocodeword,
    GraphCover,
    CoverReport,
    extract,
    pcw_cost,
    build_cover,
    verify_cover,
    cover_to_lppc,
    sample_valid_cover,
)
from .analysis import (
    AnalyticCurve,
    psk_symbol_error,
    hard_decision_wer,
    union_bound_wer,
    analytic_gap_db,
)
from .harness import (
    ExperimentConfig,
    SweepResult,
    run_sweep,
    run_independence_test,
    emit_curves,
)

__version__ = "0.1.0"
