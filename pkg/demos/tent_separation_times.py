"""Separation times of the tent map, computed exactly.

Run with ``python demos/tent_separation_times.py``.
"""

from fractions import Fraction as F

import nasens as ns
from nasens import corpus

tent = corpus.tent_system()

# %% A small window (3/10, 2/5) doubles in width at every step until it
# covers the whole interval; with threshold 1/2 the first separation is at n = 3.
V = ns.Span(F(3, 10), F(2, 5))
nset = ns.n_set(tent, V, F(1, 2), 10)
print("members:", nset.members)
for w in nset.witnesses[:3]:
    print(f"  n={w.n}: u={w.u}, v={w.v} end up {w.distance} apart")

# %% The images themselves, step by step.
for n in range(1, 5):
    image = ns.partial_composition(tent, 1, n).image(V)
    print(f"T^{n}(V) = {image}")

# %% Sensitivity over the default dyadic battery: the certificate records one
# common separation time per region together with a re-checkable witness pair.
cert = ns.sensitivity(tent, F(1, 2), 16)
print(cert.verdict, "over", cert.tuples_total, "regions")
print("first claim:", cert.claims[0])

# %% Stronger properties ask for one time that works for several iterate
# systems at once.
print("n-sensitive(3):", ns.n_sensitivity(tent, 3, F(2, 5), 32).verdict)
print("strong-multi {(1), (2,3), (1,1,4)}:",
      ns.strong_multi_sensitivity(tent, [(1,), (2, 3), (1, 1, 4)], F(2, 5), 64).verdict)

# %% Multi-transitivity: a single k such that T^(ik)(U_i) meets V_i for each i.
pairs = [(ns.Span(F(1, 10), F(1, 5)), ns.Span(F(4, 5), F(9, 10))),
         (ns.Span(F(2, 5), F(1, 2)), ns.Span(0, F(1, 10)))]
print("first k:", ns.multi_transitivity_witness(tent, pairs, 64).k,
      " count below 64:", ns.witness_count(tent, pairs, 64))
