"""Walk through the closed-form side of the problem.

Pumping with unit flux at both ends makes the total mass climb at rate
2 * diffusivity; draining makes it fall at the same rate.  Starting from
zero mass, the first switch (mass reaches the upper threshold) happens at
upper / (2 * diffusivity), and every later switch follows after the same
fixed spacing (upper - lower) / (2 * diffusivity).  This script prints
those values for the small-diffusivity setup used throughout the package
and samples the piecewise-linear mass trace around the first few switches.

Usage:
    python demos/closed_form_switch_times.py
"""

import numpy as np

from massgate import ControlConfig, switch_spacing, switch_time, total_mass


def main():
    control = ControlConfig(lower=0.1, upper=0.2, diffusivity=0.05, horizon=10.0)
    print("thresholds:", control.lower, "/", control.upper, " diffusivity:", control.diffusivity)
    print(f"switch spacing: {switch_spacing(control):.6f}")
    print()
    print("  k      t_k   reaches")
    for k in range(1, 10):
        target = "upper" if k % 2 == 1 else "lower"
        print(f"{k:3d} {switch_time(k, control):8.4f}   {target}")

    print()
    print("mass trace around the first two switches:")
    for t in np.arange(1.6, 3.45, 0.2):
        bar = "#" * int(round(total_mass(t, control) * 200))
        print(f"  t={t:5.2f}  mass={total_mass(t, control):.4f}  {bar}")


if __name__ == "__main__":
    main()
