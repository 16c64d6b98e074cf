"""
Opinion polarization and the diversity dial
===========================================

Recommending whatever matches a user's current opinion is a positive
feedback loop: everyone above the midpoint drifts to 1, everyone below
drifts to 0. Replacing a fraction of recommendations with uniform draws
breaks the loop. The trade-off sweep quantifies what that costs in
engagement and buys in depolarization.
"""

import numpy as np

from fairloop.opinions import OpinionParams, run_opinion_sim, tradeoff_sweep
from fairloop.rng import RandomSource

for eps in (0.0, 0.2):
    params = OpinionParams(alpha=0.1, epsilon=eps, n_users=100, horizon=200)
    traj = run_opinion_sim(params, RandomSource(7))
    final = traj.final_opinions
    print(f"epsilon={eps}: final opinions span "
          f"[{final.min():.3f}, {final.max():.3f}], "
          f"polarization {traj.polarization[-1]:.3f}, "
          f"mean engagement {traj.time_averaged_engagement:.3f}")

print("\nsweep over the diversity dial (200 trials per point):")
rows = tradeoff_sweep([0.0, 0.2, 0.4, 0.6, 0.8, 1.0], RandomSource(99),
                      trials=50)
print(f"{'eps':>5} {'engagement':>11} {'polarization':>13}")
for r in rows:
    print(f"{r['epsilon']:>5.1f} {r['mean_engagement']:>11.4f} "
          f"{r['mean_polarization']:>13.4f}")
