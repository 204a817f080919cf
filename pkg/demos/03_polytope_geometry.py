"""Look at the relaxed polytope of two tiny codes.

First a single ternary check, where every vertex of Q is a codeword
and LP decoding is exact ML.  Then a length-3 cycle of checks whose
polytope has a non-integral vertex: the decoder can land on a point
that is not a codeword at all.  Small enough to enumerate everything.
"""

import numpy as np

from ringlp.codes import Code, enumerate_codewords
from ringlp.decoder import lp_decode
from ringlp.polytope import integral_point_words
from ringlp.rings import make_zq

single = Code(ring=make_zq(3), H=np.array([[1, 1, 1]], dtype=np.int64))
words = sorted(tuple(int(v) for v in w) for w in enumerate_codewords(single))
points = sorted(integral_point_words(single))
print("single check x1 + x2 + x3 = 0 over Z_3")
print("  codewords:      ", len(words))
print("  integral points:", len(points))
print("  identical:      ", words == points)

cycle = Code(ring=make_zq(3), H=np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]],
                                         dtype=np.int64))
print()
print("cycle of three pairwise checks over Z_3")
print("  codewords:", [tuple(int(v) for v in w) for w in enumerate_codewords(cycle)])

# a cost favoring nonzero symbols drives the LP to a fractional vertex
lam = -np.ones(6)
res = lp_decode(cycle, lam, mode="rational")
print("  uniform negative costs ->", res.outcome)
print("  optimum:", res.objective, "(zero codeword would cost 0)")
print("  f vertex:", [str(v) for v in res.f])
