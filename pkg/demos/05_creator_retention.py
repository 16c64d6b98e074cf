"""
Creator retention and the price of fairness
===========================================

Three creators serve three user groups of very different sizes. The
utility-maximizing allocation sends almost everything to the broadly
appealing creator 1; creators 2 and 3 fall below the retention
threshold and are expected to leave, which wrecks the small group 3's
future options (its favorite is creator 2). Exposure floors keep
creators alive at a cost in immediate utility; opportunity floors scale
each creator's guarantee by demonstrated relevance, protecting the
valued niche creator without propping up the irrelevant one.
"""

import numpy as np

from fairloop.creators import (creator_exposure, epsilon_sweep, future_utility,
                               immediate_utility, niche_creator_market,
                               retention_probs, solve_allocation)

market = niche_creator_market()
print("relevance (user groups x creators):")
print(market.relevance)
print("group sizes:", market.group_sizes.astype(int))

alloc, _ = solve_allocation(market, "exposure_floor", 0.0)
print("\nunconstrained optimum:")
print("  exposures:", np.round(creator_exposure(alloc, market), 4))
print("  retention:", np.round(retention_probs(alloc, market), 4))
print("  immediate utility:", round(immediate_utility(alloc, market), 1))
print("  future utility per group:", np.round(future_utility(alloc, market), 3))

print("\nexposure-floor sweep:")
print(f"{'eps':>5} {'utility':>8} {'p2':>6} {'p3':>6} {'fut(g3)':>8}")
for rec in epsilon_sweep(market, "exposure_floor", [0.0, 0.05, 0.09, 0.11,
                                                    0.15, 0.25, 0.33]):
    print(f"{rec['epsilon']:>5.2f} {rec['utility']:>8.1f} "
          f"{rec['retention'][1]:>6.3f} {rec['retention'][2]:>6.3f} "
          f"{rec['future_utility'][2]:>8.3f}")

print("\nopportunity-floor sweep (creator 3 is never propped up):")
print(f"{'eps':>5} {'utility':>8} {'p2':>6} {'p3':>8} {'fut(g3)':>8}")
for rec in epsilon_sweep(market, "opportunity_floor", [0.0, 0.2, 0.4, 0.6,
                                                       0.8]):
    print(f"{rec['epsilon']:>5.2f} {rec['utility']:>8.1f} "
          f"{rec['retention'][1]:>6.3f} {rec['retention'][2]:>8.2e} "
          f"{rec['future_utility'][2]:>8.3f}")
