"""Small Monte Carlo sweep next to the analytic reference curves.

Runs 500 trials per SNR point on the shipped code (a real run wants
20000 or more; see the sweep CLI), then prints the simulated WER next
to the exact hard-decision WER and the union bound.  CSV output from
the full harness feeds the plotting tool in frontend/.

Equivalent CLI:
  ringlp sweep --code golay --snr-db 5,6,7 --trials 500 --seed 42 --out sweep.csv
  ringlp curves --code golay --snr-db 5,6,7 --out-dir curves --no-sim
"""

from ringlp.analysis import hard_decision_wer, union_bound_wer
from ringlp.codes import golay_code_path, load_code, weight_enumerator
from ringlp.harness import ExperimentConfig, binomial_ci, run_sweep

code = load_code(golay_code_path())
rate = code.k_hint / code.n
enum = weight_enumerator(code)

cfg = ExperimentConfig(code="golay", snr_db=(5.0, 6.0, 7.0), trials=500, seed=42)
result = run_sweep(cfg, write_csv=False)

print(f"{'snr_db':>7} {'lp_wer':>9} {'ci':>19} {'hard_decision':>13} {'union_bound':>11}")
for p in result.points:
    hd = hard_decision_wer(p.grid_value, code.n, 2, rate, code.ring.q)
    ub = union_bound_wer(p.grid_value, enum, rate)
    lo, hi = binomial_ci(p.word_errors, p.trials)
    ci = f"[{lo:.4f}, {hi:.4f}]"
    print(f"{p.grid_value:7.1f} {p.wer:9.4f} {ci:>19} {hd:13.5f} {ub:11.5f}")
