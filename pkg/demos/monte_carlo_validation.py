"""Monte Carlo cross-check of the analytic system survival functions.

Samples dependent lifetime pairs by conditional inversion and compares the
empirical series/parallel survival against the copula formulas, with
binomial error bars.
"""

from copreli import (
    Clayton,
    Exponential,
    Fgm,
    GumbelHougaard,
    System,
    empirical_system_sf,
    sample_bivariate,
)

MARGINALS = (Exponential(1.0), Exponential(1.0))
N = 50_000
SEED = 1234


def main() -> None:
    ts = [0.25, 0.75, 1.5]
    print(f"N = {N}, seed = {SEED}; z = (empirical - analytic) / stderr")
    print()
    print(f"{'copula':>24} {'structure':>9} {'t':>6} {'empirical':>10} "
          f"{'analytic':>10} {'z':>6}")
    print("-" * 72)
    for cop in (Fgm(alpha=0.5), Clayton(alpha=1.0), GumbelHougaard(alpha=2.0)):
        for structure, role in (("series", "survival"), ("parallel", "distribution")):
            batch = sample_bivariate(cop, MARGINALS, N, seed=SEED, role=role)
            system = System(marginals=MARGINALS, structure=structure,
                            mode="dependent", copula=cop)
            for t in ts:
                emp, se = empirical_system_sf(batch, structure, t)
                analytic = system.sf(t)
                z = (emp - analytic) / se
                print(f"{str(cop):>24} {structure:>9} {t:6.2f} {emp:10.5f} "
                      f"{analytic:10.5f} {z:+6.2f}")
    print()
    print("Every |z| should sit well inside 4; the sampler shares no formulas")
    print("with the survival functions it validates (numeric conditional")
    print("inversion, counter-based random stream).")


if __name__ == "__main__":
    main()
