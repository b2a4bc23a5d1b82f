"""A circle system whose odd prefixes stretch and whose even prefixes undo it.

Run with ``python demos/circle_blocks.py``.  Angles and thresholds are in turns.
"""

from fractions import Fraction as F

import nasens as ns
from nasens import corpus

h = corpus.circle_multipliers_system()

# %% Odd prefixes multiply angles by n, even prefixes are the identity.
for m in range(1, 9):
    print(f"prefix {m}: multiplier {ns.partial_composition(h, 1, m).multiplier}")

# %% An arc of length 1/8 only separates at odd times once the multiplier
# pushes its image past a quarter turn.
nset = ns.n_set(h, ns.Arc(0, F(1, 8)), F(1, 4), 16)
print("separation times:", nset.members)

# %% The second-iterate system sees only the even prefixes, so any arc no
# wider than the threshold is never separated and n-sensitivity is refuted.
cert = ns.n_sensitivity(h, 2, F(1, 8), 64)
print(cert.verdict, "-", cert.failure["statement"])
