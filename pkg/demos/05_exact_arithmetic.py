"""Float speed, rational certainty.

The decoder runs its simplex in floating point by default.  The same
pivoting machinery also runs over exact fractions, and the hybrid
mode rechecks only the suspicious outcomes.  Here the 3-cycle code's
fractional optimum comes out as an exact Fraction, and a noisy decode
of the shipped code gives identical answers in both arithmetics.
"""

import numpy as np

from ringlp.channel import PskAwgnScheme, snr_to_noise
from ringlp.codes import Code, golay_code_path, load_code
from ringlp.decoder import lp_decode
from ringlp.rings import make_zq

cycle = Code(ring=make_zq(3), H=np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]],
                                         dtype=np.int64))
res = lp_decode(cycle, -np.ones(6), mode="rational")
print("3-cycle, uniform negative costs")
print("  exact optimum:", res.objective, type(res.objective).__name__)
print("  exact vertex: ", [str(v) for v in res.f])

code = load_code(golay_code_path())
e_ch, n0 = snr_to_noise(4.0, code.k_hint / code.n)
scheme = PskAwgnScheme(3, e_ch, n0)
rng = np.random.default_rng(21)
y = scheme.transmit(scheme.modulate(np.zeros(code.n, dtype=np.int64)), rng)
lam = scheme.cost_vector(y)

fast = lp_decode(code, lam, mode="float")
safe = lp_decode(code, lam, mode="rational")
both = lp_decode(code, lam, mode="recheck")
print()
print("shipped code at 4 dB, one noisy transmission")
print("  float:   ", fast.outcome, f"objective {float(fast.objective):.9f}")
print("  rational:", safe.outcome, f"objective {float(safe.objective):.9f}")
print("  recheck: ", both.outcome, "solution kept in mode", both.solution.mode)
if fast.outcome == safe.outcome == "integral":
    print("  words agree:", bool((fast.word == safe.word).all()))
