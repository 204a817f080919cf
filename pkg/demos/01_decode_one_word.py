"""Decode one noisy transmission of the shipped (11,6,5) ternary code.

Picks a random codeword, sends it through 3-PSK over AWGN at 6 dB,
and runs the LP decoder.  An integral outcome carries an ML
certificate: the answer provably minimizes the soft cost over the
whole codebook, which we double check by brute force here.
"""

import numpy as np

from ringlp.channel import PskAwgnScheme, snr_to_noise
from ringlp.codes import golay_code_path, load_code
from ringlp.decoder import codebook, lp_decode, ml_decode_soft

code = load_code(golay_code_path())
rate = code.k_hint / code.n
e_ch, n0 = snr_to_noise(6.0, rate)
scheme = PskAwgnScheme(code.ring.q, e_ch, n0)

rng = np.random.default_rng(7)
book = codebook(code)
sent = book[int(rng.random() * len(book))]
received = scheme.transmit(scheme.modulate(sent), rng)
lam = scheme.cost_vector(received)

result = lp_decode(code, lam)
print("sent:    ", " ".join(map(str, sent)))
print("outcome: ", result.outcome)
if result.outcome == "integral":
    print("decoded: ", " ".join(map(str, result.word)))
    print("objective:", float(result.objective))
    print("certified ML:", result.ml_certificate)
    brute = ml_decode_soft(code, lam)
    print("brute-force ML agrees:", bool((brute == result.word).all()))
