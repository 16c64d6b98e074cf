"""
Representation drift from a near-balanced start
===============================================

Users who receive no recommendation leave and are replaced by newcomers
who resemble the current population. A ten-point gap in service rates
(40% vs 50%) is enough to push an almost balanced population to a
heavily skewed equilibrium: the under-served group shrinks, newcomers
increasingly come from the majority, and the skew feeds itself.
"""

import numpy as np

from fairloop.population import PopulationParams, run_population_sim
from fairloop.rng import RandomSource

params = PopulationParams(n=1000, init_counts=(495, 505),
                          rec_prob=(0.40, 0.50), horizon=200)
traj = run_population_sim(params, RandomSource(555))

for t in (0, 10, 25, 50, 100, 200):
    n1, n2 = traj[t]
    bar = "#" * int(50 * n1 / params.n)
    print(f"t={t:>3}  group1 {n1:>4} ({n1 / params.n:5.1%}) {bar}")

shares = []
master = RandomSource(555)
for s in range(25):
    run = run_population_sim(params, master.spawn(s))
    shares.append(run[-1, 0] / params.n)
print(f"\nmedian final group-1 share over 25 seeds: {np.median(shares):.3f}")
