import math

import numpy as np
import pytest

from copreli import (
    Amh,
    Clayton,
    DomainError,
    Exponential,
    Fgm,
    FischerKock,
    GumbelHougaard,
    Independence,
    MarshallOlkin,
    NelsenTen,
    RluExtended,
    System,
    build_ordering_report,
    check_lr_linear_spearman,
    check_radial_duality,
    classify_monotonicity,
    default_grid,
    infer_ordering,
    ratio_function,
    ratio_profile,
    verify_theorem1,
)

E1 = Exponential(1.0)
MARGINALS = (E1, E1)


# ---------------------------------------------------------------------------
# ratio profiles
# ---------------------------------------------------------------------------


def test_independence_ratios_are_one():
    grid = default_grid(MARGINALS, points=32)
    for kind in ("C_over_C1", "Chat_over_Chat1"):
        vals = ratio_profile(Independence(), MARGINALS, kind, grid)
        np.testing.assert_allclose(vals, 1.0, atol=1e-12)


def test_fgm_ratio_values():
    # C/C1 = 1 + alpha (1-u1)(1-u2); at u = (0.5, 0.5) this is 1.125
    t = math.log(2.0)
    val = ratio_profile(Fgm(alpha=0.5), MARGINALS, "C_over_C1", [t])[0]
    assert val == pytest.approx(1.125, abs=1e-12)
    # equal margins make u = uhat at the median, so C/Chat = 1 there
    val = ratio_profile(Fgm(alpha=0.5), MARGINALS, "C_over_Chat", [t])[0]
    assert val == pytest.approx(1.0, abs=1e-12)


def test_ratio_function_validation():
    with pytest.raises(DomainError):
        ratio_function(Fgm(alpha=0.5), MARGINALS, "C1_over_C")
    with pytest.raises(DomainError):
        ratio_function(Fgm(alpha=0.5, dim=3), MARGINALS, "C_over_C1")


# ---------------------------------------------------------------------------
# monotonicity classification
# ---------------------------------------------------------------------------


def test_classify_constant():
    grid = np.linspace(0.1, 2.0, 20)
    verdict = classify_monotonicity(lambda t: 1.0, grid)
    assert verdict.classification == "constant"
    assert verdict.increase_witness is None


def test_classify_needs_enough_points():
    with pytest.raises(DomainError):
        classify_monotonicity(lambda t: t, np.linspace(0.1, 1.0, 8))


def test_classify_fgm_profile_decreasing():
    fn = ratio_function(Fgm(alpha=0.5), MARGINALS, "C_over_C1")
    verdict = classify_monotonicity(fn, default_grid(MARGINALS))
    assert verdict.classification == "decreasing"


def test_classify_rlu_non_monotone_with_witnesses_straddling_threshold():
    cop = RluExtended(a=(2.0, 2.0), b=(3.0, 3.0), alpha=1.0)
    assert cop.ratio_thresholds() == (0.25, 0.25)
    threshold_t = E1.quantile(0.25)  # F^{-1}(k) = ln(4/3)
    fn = ratio_function(cop, MARGINALS, "C_over_C1")
    verdict = classify_monotonicity(fn, default_grid(MARGINALS))
    assert verdict.classification == "non_monotone"
    (ta, va), (tb, vb) = verdict.increase_witness
    (tc, vc), (td, vd) = verdict.decrease_witness
    assert ta < tb <= threshold_t + 1e-9       # rising leg sits left of the peak
    assert threshold_t - 1e-9 <= tc < td       # falling leg sits right of it
    # witnesses must replay against the ratio function
    for (t, v) in ((ta, va), (tb, vb), (tc, vc), (td, vd)):
        assert fn(t) == pytest.approx(v, abs=1e-9)
    assert vb > va and vd < vc


def test_rlu_monotone_on_either_side_of_thresholds():
    cop = RluExtended(a=(2.0, 2.0), b=(3.0, 3.0), alpha=1.0)
    k = cop.ratio_thresholds()
    fn = ratio_function(cop, MARGINALS, "C_over_C1")
    lo_grid = np.geomspace(1e-3, E1.quantile(min(k)) * 0.999, 24)
    hi_grid = np.geomspace(E1.quantile(max(k)) * 1.001, E1.quantile(0.999), 24)
    assert classify_monotonicity(fn, lo_grid).classification == "increasing"
    assert classify_monotonicity(fn, hi_grid).classification == "decreasing"


# ---------------------------------------------------------------------------
# order inference
# ---------------------------------------------------------------------------


def test_gumbel_hougaard_series_ordering():
    verdict = infer_ordering(GumbelHougaard(alpha=2.0), MARGINALS, "series")
    assert verdict.relation == "hr"
    assert verdict.direction == "D_ge_I"
    assert verdict.implied == ("mrl", "st")
    assert ">=_hr" in verdict.describe()


def test_amh_negative_parallel_ordering():
    verdict = infer_ordering(Amh(alpha=-0.5), MARGINALS, "parallel")
    assert verdict.relation == "rhr"
    assert verdict.direction == "D_ge_I"
    assert verdict.implied == ("st",)


def test_nelsen_ten_series_ordering():
    verdict = infer_ordering(NelsenTen(alpha=1.0), MARGINALS, "series")
    assert verdict.direction == "D_le_I"


def test_independence_ordering_is_equal():
    verdict = infer_ordering(Independence(), MARGINALS, "series")
    assert verdict.direction == "equal"
    assert verdict.implied == ()


def test_rlu_ordering_is_none_with_witnesses():
    verdict = infer_ordering(RluExtended(a=(2.0, 2.0), b=(3.0, 3.0), alpha=1.0),
                             MARGINALS, "parallel")
    assert verdict.direction == "none"
    assert verdict.monotonicity.increase_witness is not None


def test_defective_corner_blocks_weaker_orders():
    # the literal Fischer-Hinzmann form has C(1,1) < 1 for m > 1: the ratio
    # arrow is still reported, but no mrl/st claims may be derived from it
    from copreli import FischerHinzmann

    literal = infer_ordering(FischerHinzmann(m=2.0, alpha=0.5), MARGINALS, "parallel")
    assert literal.direction == "D_le_I"
    assert literal.proper is False
    assert literal.implied == ()
    assert "defective" in literal.describe()

    corrected = infer_ordering(FischerHinzmann(m=2.0, alpha=0.5, corrected=True),
                               MARGINALS, "parallel")
    assert corrected.proper is True
    assert corrected.implied == ("st",)
    # Marshall-Olkin is margin-exempt but normalises, so it keeps the chain
    mo = infer_ordering(MarshallOlkin(alpha=(0.5, 0.5)), MARGINALS, "parallel")
    assert mo.proper is True
    assert mo.implied == ("st",)


def test_certified_st_verdicts_survive_finer_grid():
    # soundness: a >=_st certificate must hold as pointwise sf dominance
    cases = [
        (GumbelHougaard(alpha=2.0), "series"),
        (Fgm(alpha=0.5), "series"),
        (Fgm(alpha=-0.5), "parallel"),
        (Clayton(alpha=1.0), "series"),
        (NelsenTen(alpha=1.0), "parallel"),
    ]
    for cop, structure in cases:
        verdict = infer_ordering(cop, MARGINALS, structure)
        assert "st" in verdict.implied
        dep = System(marginals=MARGINALS, structure=structure, mode="dependent", copula=cop)
        ind = System(marginals=MARGINALS, structure=structure, mode="independent")
        fine = default_grid(MARGINALS, points=640)
        sign = 1.0 if verdict.direction == "D_ge_I" else -1.0
        for t in fine:
            assert sign * (dep.sf(float(t)) - ind.sf(float(t))) >= -1e-9


# ---------------------------------------------------------------------------
# the four survival inequalities and duality
# ---------------------------------------------------------------------------


def test_verify_theorem1_examples():
    assert verify_theorem1(Independence(), MARGINALS).passed
    assert verify_theorem1(Fgm(alpha=-1.0), MARGINALS).passed
    result = verify_theorem1(MarshallOlkin(alpha=(0.5, 0.5)), MARGINALS)
    assert result.passed
    assert result.worst_slack >= -1e-10


def test_radial_duality():
    assert check_radial_duality(Fgm(alpha=0.5), MARGINALS).passed
    assert check_radial_duality(FischerKock(r=2.0, alpha=-0.5), MARGINALS).passed
    zero = check_radial_duality(Fgm(alpha=0.0), MARGINALS)
    assert zero.passed
    assert zero.parallel.classification == "constant"
    with pytest.raises(DomainError):
        check_radial_duality(Clayton(alpha=1.0), MARGINALS)


def test_fgm_parallel_dominates_series_in_hazard():
    # C/Chat increasing across the whole parameter range certifies
    # T_P^D >=_hr T_S^D
    grid = default_grid(MARGINALS)
    for alpha in (-1.0, -0.5, 0.0, 0.5, 1.0):
        fn = ratio_function(Fgm(alpha=alpha), MARGINALS, "C_over_Chat")
        assert classify_monotonicity(fn, grid).classification == "increasing"


def test_marshall_olkin_ratios_are_powered_minima():
    # C8 / C1 collapses to min_i u_i^(alpha_i): increasing on the
    # distribution scale, decreasing on the survival scale
    alphas = (0.5, 1.5)
    cop = MarshallOlkin(alpha=alphas)
    grid = default_grid(MARGINALS, points=32)
    for kind, coords in (("C_over_C1", "cdf"), ("Chat_over_Chat1", "sf")):
        vals = ratio_profile(cop, MARGINALS, kind, grid)
        for t, v in zip(grid, vals):
            base = [getattr(m, coords)(float(t)) for m in MARGINALS]
            expected = min(b**a for b, a in zip(base, alphas))
            assert v == pytest.approx(expected, rel=1e-12)
    assert classify_monotonicity(
        ratio_function(cop, MARGINALS, "C_over_C1"), grid).classification == "increasing"
    assert classify_monotonicity(
        ratio_function(cop, MARGINALS, "Chat_over_Chat1"), grid).classification == "decreasing"


def test_amh_interaction_derivative_sign():
    # d/dt of A + B with A = prod(1 - alpha + alpha u_i), B = -alpha prod u_i
    # is positive for alpha in (0, 1] and negative for alpha in [-1, 0)
    rng = np.random.default_rng(88)
    h = 1e-6
    for _ in range(50):
        alpha = rng.choice([rng.uniform(0.05, 1.0), rng.uniform(-1.0, -0.05)])
        t = rng.uniform(0.1, 2.5)

        def a_plus_b(x):
            u = np.array([m.cdf(x) for m in MARGINALS])
            return float(np.prod(1 - alpha + alpha * u) - alpha * np.prod(u))

        slope = (a_plus_b(t + h) - a_plus_b(t - h)) / (2 * h)
        if alpha > 0:
            assert slope >= -1e-9
        else:
            assert slope <= 1e-9


# ---------------------------------------------------------------------------
# linear Spearman likelihood-ratio check
# ---------------------------------------------------------------------------


def test_lr_check_theta_zero_is_constant_one():
    res = check_lr_linear_spearman(0.0, MARGINALS)
    np.testing.assert_allclose(res.ratio, 1.0, atol=1e-6)
    assert res.passed


def test_lr_check_decreasing_for_positive_theta():
    for theta in (0.25, 0.5, 0.9):
        res = check_lr_linear_spearman(theta, MARGINALS)
        assert res.passed, f"theta={theta}, worst increase {res.worst_increase}"
        assert res.ratio[0] > res.ratio[-1]


def test_lr_check_preconditions():
    with pytest.raises(DomainError):
        check_lr_linear_spearman(-0.2, MARGINALS)
    with pytest.raises(DomainError):
        check_lr_linear_spearman(0.5, (E1,))

    class IncreasingRhr:
        # stand-in lifetime whose reversed hazard rises on the grid
        def cdf(self, t):
            return min(float(t) / 10.0, 1.0)

        def sf(self, t):
            return 1.0 - self.cdf(t)

        def quantile(self, p):
            return 10.0 * p

        def reversed_hazard(self, t):
            return 0.1 + 0.05 * float(t)

    with pytest.raises(DomainError):
        check_lr_linear_spearman(0.5, (IncreasingRhr(), IncreasingRhr()))


# ---------------------------------------------------------------------------
# published-table report
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def report():
    return build_ordering_report(MARGINALS)


EXPECTED_MACHINE = {
    "fgm (alpha>0)": ("decreasing", "increasing"),
    "fgm (alpha<0)": ("increasing", "decreasing"),
    "fischer_kock (alpha>0)": ("decreasing", "increasing"),
    "fischer_kock (alpha<0)": ("increasing", "decreasing"),
    "clayton": ("decreasing", "increasing"),
    "gumbel_hougaard": ("decreasing", "increasing"),
    "gumbel_barnet": ("increasing", "decreasing"),
    "nelsen_ten": ("increasing", "decreasing"),
    "marshall_olkin": ("increasing", "decreasing"),
    "amh (alpha>0)": ("decreasing", "increasing"),
    "amh (alpha<0)": ("increasing", "decreasing"),
    "fischer_hinzmann": ("decreasing", "increasing"),
    "rlu_extended": ("non_monotone", "non_monotone"),
    "linear_spearman (theta>0)": ("decreasing", "increasing"),
    "linear_spearman (theta<0)": ("increasing", "decreasing"),
}

EXPECTED_CONFLICTS = {
    ("fischer_kock (alpha>0)", "series"),
    ("fischer_kock (alpha<0)", "series"),
    ("clayton", "parallel"),
    ("clayton", "series"),
    ("gumbel_barnet", "parallel"),
    ("gumbel_barnet", "series"),
}


def test_report_machine_verdicts(report):
    got = {row.label: (row.parallel.machine, row.series.machine) for row in report.rows}
    assert got == EXPECTED_MACHINE


def test_report_flags_exactly_the_paper_internal_conflicts(report):
    assert set(report.conflicted_cells()) == EXPECTED_CONFLICTS
    for row in report.rows:
        for cell in (row.parallel, row.series):
            if cell.agrees is False:
                assert cell.note, f"conflicted cell in {row.label} must carry a note"


def test_report_sound_rows_match_published(report):
    sound = {"fgm (alpha>0)", "fgm (alpha<0)", "gumbel_hougaard", "nelsen_ten",
             "marshall_olkin", "amh (alpha>0)", "amh (alpha<0)", "fischer_hinzmann",
             "rlu_extended"}
    for row in report.rows:
        if row.label in sound:
            assert row.parallel.agrees is True
            assert row.series.agrees is True


def test_report_serialisations(report):
    md = report.to_markdown()
    assert md.startswith("| family |")
    assert "non-monotone" in md
    csv = report.to_csv()
    assert csv.splitlines()[0] == "family,cell,machine,published,agrees,ordering,note"
    import json

    record = json.loads(report.to_json())
    assert len(record["rows"]) == len(EXPECTED_MACHINE)


def test_report_parallel_jobs_match_serial(report):
    two = build_ordering_report(MARGINALS, n_jobs=2)
    for a, b in zip(report.rows, two.rows):
        assert a.label == b.label
        assert a.parallel.machine == b.parallel.machine
        assert a.series.machine == b.series.machine


def test_report_thread_cap_env_var(report, monkeypatch):
    monkeypatch.setenv("COPRELI_THREADS", "3")
    capped = build_ordering_report(MARGINALS)
    assert [r.label for r in capped.rows] == [r.label for r in report.rows]
    assert all(a.parallel.machine == b.parallel.machine
               for a, b in zip(report.rows, capped.rows))


def test_report_arrows_stable_under_mixed_marginals(report):
    # the certified directions are properties of the families, not of the
    # equal-exponential diagonal; unequal rates and a Weibull margin must
    # reproduce them
    from copreli import Weibull

    for marginals in ((Exponential(1.0), Exponential(3.0)),
                      (Exponential(0.7), Weibull(1.0, 2.0))):
        other = build_ordering_report(marginals)
        for a, b in zip(report.rows, other.rows):
            assert (a.parallel.machine, a.series.machine) == \
                   (b.parallel.machine, b.series.machine), a.label


def test_lr_check_with_unequal_rates():
    # unequal rates exercise the off-diagonal branch of the copula
    for marginals in ((Exponential(1.0), Exponential(2.0)),
                      (Exponential(2.0), Exponential(1.0))):
        res = check_lr_linear_spearman(0.5, marginals)
        assert res.passed, res.worst_increase
