"""Analytic side of the package: edge-probability thresholds, the
log-space failure bound, and density exponents of target families."""

import math

from rainbowgraphs.bounds import riordan_condition, theorem1_threshold, theta
from rainbowgraphs.targets import (
    density_profile,
    make_cycle,
    make_grid,
    make_hypercube,
)


def main() -> None:
    print("threshold p_min for rainbow embedding, delta=2, eps=0.5:")
    for k in range(8, 17, 2):
        n = 2**k
        rep = theorem1_threshold(n, 2, 0.5)
        print(f"  n=2^{k}: p_min={rep.eq1_p_min:.4f} "
              f"(structural {rep.eq1_term_structural:.4f}, "
              f"colour {rep.eq1_term_colour:.4f})")

    print("\nlog failure bound along n=2^k (d=2, eps=0.5, kappa=3n):")
    for k in range(10, 17, 2):
        n = 2**k
        p1 = 40 * math.log(n) / n
        rep = theta(n, 2, 3 * n, 0.5, p1)
        print(f"  n=2^{k}: log theta = {rep.log_theta:10.2f}")

    print("\ndensity exponents gamma = max e_H(x)/(x-2):")
    for h in (make_cycle(10), make_grid(4), make_hypercube(4)):
        prof = density_profile(h)
        print(f"  {h.name}: gamma={prof.gamma:.3f} at x={prof.argmax_x}")
        rep = riordan_condition(1000, 0.3, prof.gamma, h.delta, h.e_total)
        print(f"    n p^gamma / delta^4 at n=1000, p=0.3: {rep.riordan_value:.3f}")


if __name__ == "__main__":
    main()
