"""Systems that converge to a limit map, and which convergence hypotheses they meet.

Run with ``python demos/limits_and_hypotheses.py``.
"""

from fractions import Fraction as F

from nasens import corpus, detect
from nasens.metric import UNIT, Span
from nasens.nds import orbit
from nasens.plmap import sup_distance

# %% Two transient maps squeeze [0, 1/2] onto the fixed point 1/3 of the limit.
s = corpus.collapsing_limit_system()
print("orbit of 3/10:", [str(x) for x in orbit(s, F(3, 10), 6).points])
print("sup distance of the second map to the limit:", sup_distance(s.map(2), s.limit))
rep = detect.convergence_hypothesis_report(s, s.limit, 8, 4)
for row in rep.rows:
    print(f"  {row.name:<24} {'pass' if row.passed else 'fail'}  first violation: {row.first_violation}")

battery = detect.default_battery(UNIT, 5, within=Span(0, F(1, 2)))
print("sensitive inside (0, 1/2):", detect.sensitivity(s, F(1, 8), 64, battery).verdict)

# %% A quadratic first map on [0, 2]; every later map is a tent with a shift.
q = corpus.tent_quadratic_system()
rep = detect.convergence_hypothesis_report(q, q.limit, 8, 4)
print("surjective:", rep.row("surjective").passed, " feebly open:", rep.row("feebly-open").passed)
print("N-set of (1, 5/4) at 1/8:", detect.n_set(q, Span(F(1), F(5, 4)), F(1, 8), 8).members)
