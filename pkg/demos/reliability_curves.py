"""How much does dependence move a system's reliability curve?

Builds a two-component series system under an FGM copula and prints its
aging functions next to the independence-assumption twin.
"""

import numpy as np

from copreli import Exponential, Fgm, System


def main() -> None:
    marginals = (Exponential(1.0), Exponential(1.0))
    copula = Fgm(alpha=0.8)
    dep = System(marginals=marginals, structure="series", mode="dependent", copula=copula)
    ind = System(marginals=marginals, structure="series", mode="independent")

    grid = np.geomspace(0.05, 3.0, 10)
    print(f"series system, two exp(1) components, {copula}")
    print()
    print(f"{'t':>6}  {'sf dep':>9} {'sf ind':>9}  {'hr dep':>8} {'hr ind':>8}"
          f"  {'mrl dep':>8} {'mrl ind':>8}")
    print("-" * 66)
    for t in grid:
        t = float(t)
        print(f"{t:6.3f}  {dep.sf(t):9.5f} {ind.sf(t):9.5f}"
              f"  {dep.hazard(t):8.4f} {ind.hazard(t):8.4f}"
              f"  {dep.mrl(t):8.4f} {ind.mrl(t):8.4f}")

    print()
    print("Positive dependence keeps the weakest component alive longer than the")
    print("product model predicts: the true survival sits above the independent one,")
    print("so assuming independence UNDER-assesses series reliability here.")

    curve = dep.curve(grid)
    print()
    print("full curve as CSV (t,sf,hr,rhr,mrl,ai):")
    print(curve.to_csv())


if __name__ == "__main__":
    main()
