"""Over- or under-assessment: the signed cost of assuming independence.

For a few copulas, prints the dependent-minus-independent error of the
survival function and of the hazard-type rates on a grid, together with the
OA/UA verdict per point and the collapsed classification.
"""

import numpy as np

from copreli import Clayton, Exponential, Fgm, GumbelBarnet, SystemPair, classify_assessment

MARGINALS = (Exponential(1.0), Exponential(1.0))
GRID = np.geomspace(0.1, 2.5, 8)


def show(copula, structure: str) -> None:
    pair = SystemPair(copula=copula, marginals=MARGINALS, structure=structure)
    report = pair.error_report(GRID, measure="sf")
    print(f"{copula} | {structure} | survival-function error")
    print(f"{'t':>6} {'raw':>12} {'relative':>12} {'verdict':>8}")
    for t, raw, rel, v in zip(report.grid, report.raw, report.relative,
                              report.verdict_per_t):
        print(f"{t:6.3f} {raw:12.3e} {rel:12.3e} {v:>8}")
    print(f"classification: {classify_assessment(report)}")
    print()


def main() -> None:
    # FGM with positive alpha: UA for the series system, OA for the parallel one
    show(Fgm(alpha=0.5), "series")
    show(Fgm(alpha=0.5), "parallel")

    # Clayton (positively dependent): the parallel system is over-assessed
    show(Clayton(alpha=1.0), "parallel")

    # hazard-rate error of the Gumbel-Barnet series system has the closed
    # form 2 alpha t; the identity route reproduces it numerically
    alpha = 0.5
    pair = SystemPair(copula=GumbelBarnet(alpha=alpha), marginals=MARGINALS,
                      structure="series")
    print(f"{pair.copula} | series | hazard error vs closed form 2*alpha*t")
    print(f"{'t':>6} {'hr error':>12} {'2*alpha*t':>12}")
    for t in GRID:
        t = float(t)
        print(f"{t:6.3f} {pair.hr_error(t):12.6f} {2 * alpha * t:12.6f}")


if __name__ == "__main__":
    main()
