"""Catch a real decoding failure and dissect it.

At 1.5 dB the LP decoder fails often, and when it fails with the
all-zero word transmitted the optimum is a fractional vertex.  The
failure is not noise: rescaled by a common denominator M it becomes
an integer count matrix that lifts to a concrete M-fold cover of the
code's constraint graph.  This script collects one such failure,
extracts the pseudocodeword, prints its matrix representation, then
builds and verifies the explicit cover.
"""

from ringlp.codes import golay_code_path, load_code
from ringlp.harness import collect_fractional_failures
from ringlp.pseudocodewords import (build_cover, extract, pcw_report_text,
                                    verify_cover)

code = load_code(golay_code_path())
[(trial, lam, result)] = collect_fractional_failures(
    code, snr_db=1.5, master_seed=3, want=1, max_trials=200)

print(f"trial {trial} failed fractionally; objective {float(result.objective):.6f}")
pcw = extract(result.lp, result.solution)
print()
print(pcw_report_text(pcw, lam))

cover = build_cover(pcw)
report = verify_cover(cover)
print()
print(f"explicit {pcw.M}-cover verified: {report.ok}")
for line in report.lines[:6]:
    print(" ", line)
