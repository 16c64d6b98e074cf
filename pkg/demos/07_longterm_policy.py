"""
Exposure targets as a long-term control objective
=================================================

Per-step reward maximization serves whichever group is most engaged
right now. When a currently inactive group has higher potential value,
that policy permanently writes it off, while a farsighted search over
static exposure splits accepts early losses to revive it. Comparing
the two closed-loop trajectories makes the cost of myopia concrete.
"""

import numpy as np

from fairloop.longterm import compare, disadvantaged_group_spec

spec, v0 = disadvantaged_group_spec()
print(f"start: engagement {v0}, horizon {spec.T}, discount {spec.gamma}")
print(f"group sizes {spec.reward_params.group_sizes.astype(int)}, "
      f"base interest {spec.reward_params.base_interest}")

report = compare(spec, v0, h=0.05)
print(f"\nmyopic closed loop:  value {report['myopic_value']:.1f}, "
      f"terminal engagement {np.round(report['terminal_engagement_myopic'], 4)}")
print(f"farsighted (static beta={report['farsighted_beta']}): "
      f"value {report['farsighted_value']:.1f}, terminal engagement "
      f"{np.round(report['terminal_engagement_farsighted'], 4)}")

myo = report["myopic_trajectory"]["states"]
far = report["farsighted_trajectory"]["states"]
print("\ngroup-1 engagement trajectory (myopic vs farsighted):")
for t in (0, 5, 10, 20, 40, 60):
    print(f"  t={t:>2}: {myo[t][0]:.4f} vs {far[t][0]:.4f}")
