"""
Ranking fairness metrics
========================

A ranking gives each item a position, and positions carry different
amounts of attention. The four metrics below slice that attention by
item group: how much one user sees of a group (exposure), how much the
whole population sees (group exposure), how much engagement that
visibility plausibly produces (impact), and how visibility compares to
the group's underlying relevance (opportunity, a true-positive rate).
"""

import numpy as np

from fairloop import (GroupPartition, dcg_weights, group_exposure,
                      group_impact, group_tpr, user_exposure)

# Three users, five items. Items 0-2 are mainstream, items 3-4 niche.
relevance = np.array([
    [0.9, 0.8, 0.7, 0.2, 0.1],
    [0.8, 0.9, 0.6, 0.3, 0.2],
    [0.3, 0.2, 0.4, 0.9, 0.8],
])
groups = GroupPartition([1, 1, 1, 2, 2], m=2)
pi = dcg_weights(5)
print("position weights:", np.round(pi.pi, 4))

# Pure relevance ranking per user
rankings = [np.argsort(-row, kind="stable") for row in relevance]
for u, r in enumerate(rankings):
    print(f"user {u} ranking: {r.tolist()}, "
          f"niche exposure {user_exposure(r, groups, pi, 2):.3f}")

for j in (1, 2):
    print(f"group {j}: exposure {group_exposure(rankings, groups, pi, j):.3f}, "
          f"impact {group_impact(rankings, relevance, groups, pi, j):.3f}, "
          f"opportunity {group_tpr(rankings, relevance, groups, pi, j):.3f}")

# The two exposures always add up to the total attention budget
total = sum(group_exposure(rankings, groups, pi, j) for j in (1, 2))
print(f"exposure budget check: {total:.6f} == {pi.total:.6f}")
