"""Atomic measures, the Prohorov distance and Dirac lifts of separation witnesses.

Run with ``python demos/measure_lifts.py``.
"""

from fractions import Fraction as F

from nasens import corpus, measure
from nasens.metric import UNIT, Span

mu = measure.uniform(UNIT, [0, 1])
print("D(1/2(d0 + d1), d0) =", measure.prohorov_distance(mu, measure.dirac(UNIT, 0)))
print("D(d_1/5, d_1/2)     =", measure.prohorov_distance(measure.dirac(UNIT, F(1, 5)),
                                                           measure.dirac(UNIT, F(1, 2))))

# %% Pushing forward through the tent map merges atoms that collide.
tent = corpus.tent_map()
print(measure.pushforward(measure.uniform(UNIT, [F(1, 4), F(3, 4)]), tent))
print(measure.pushforward(measure.uniform(UNIT, [0, F(1, 2), 1]), tent))

# %% Large supports fall back to a certified bracket.
big = measure.uniform(UNIT, [F(j, 20) for j in range(14)])
print("bounds:", measure.prohorov_distance(big, measure.dirac(UNIT, 0), allow_bounds=True))

# %% Every separation witness of the base system lifts to Dirac measures at
# the same time, with distance min(d, 1).
report = measure.dirac_lift_sensitivity_bridge(corpus.tent_system(), [Span(F(3, 10), F(2, 5))], F(1, 2), 10)
for row in report.rows[:4]:
    print(f"n={row.n}: base {row.base_distance}, lifted {row.lifted_distance}")
print("all lifts hold:", report.holds)
