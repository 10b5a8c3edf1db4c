from fractions import Fraction

import pytest

from k3lat.fibration import (
    DeclaredCurve,
    DeclaredModel,
    SurfaceContext,
    UnsupportedContextError,
    budget_check,
    enumerate_uniform,
    extremal_lookup,
    fiber,
    profile,
    rational_component_bound,
    sd_bound,
    shioda_tate_rank,
    very_ample_check,
)


# -- budget ------------------------------------------------------------------


def test_budget_six_i4():
    report = budget_check(profile([("I4", 6)]))
    assert report.ok
    assert report.component_total == 24


def test_budget_quasi_elliptic_ten_iv():
    report = budget_check(profile([("IV", 10)], quasi_elliptic=True, characteristic=3))
    assert report.ok
    assert report.total == 24  # 4 + 10 * 2
    assert report.component_total == 30


def test_budget_quasi_elliptic_twenty_iii():
    report = budget_check(profile([("III", 20)], quasi_elliptic=True, characteristic=2))
    assert report.ok
    assert report.component_total == 40


def test_budget_failure_reports_discrepancy():
    report = budget_check(profile([("I4", 5)]))
    assert not report.ok
    assert report.total == 20
    assert any("off by -4" in m for m in report.messages)


def test_budget_wild_ramification():
    # an additive fiber may soak up extra Euler number in characteristic 2
    prof = profile([("III", 1, 1), ("I4", 5)], characteristic=2)
    assert budget_check(prof).ok  # 3 + 1 + 20 = 24


def test_budget_quasi_elliptic_rejects_multiplicative():
    prof = profile([("I4", 1), ("IV", 9)], quasi_elliptic=True, characteristic=3)
    report = budget_check(prof)
    assert not report.ok
    assert any("multiplicative" in m for m in report.messages)


def test_budget_quasi_elliptic_char3_reducible_types():
    prof = profile([("III", 20)], quasi_elliptic=True, characteristic=3)
    report = budget_check(prof)
    assert not report.ok
    assert any("characteristic 3" in m for m in report.messages)


def test_fiber_validation():
    with pytest.raises(ValueError):
        fiber("I4", delta=1)  # wild ramification needs an additive type
    with pytest.raises(ValueError):
        profile([("IV", 10)], quasi_elliptic=True, characteristic=5)
    with pytest.raises(ValueError):
        profile([("II", 1, 1)], characteristic=7)


# -- component bound and rank -------------------------------------------------


def test_component_bounds_attain_maxima():
    assert rational_component_bound(profile([("I4", 6)])) == 24
    assert (
        rational_component_bound(
            profile([("III", 20)], quasi_elliptic=True, characteristic=2)
        )
        == 40
    )
    assert (
        rational_component_bound(
            profile([("IV", 10)], quasi_elliptic=True, characteristic=3)
        )
        == 30
    )


def test_component_bound_counts_reducible_only():
    prof = profile(
        [("IV", 2), ("IV*", 3)], quasi_elliptic=True, characteristic=3
    )
    assert rational_component_bound(prof) == 25


def test_shioda_tate_examples():
    assert shioda_tate_rank(profile([("I4", 6)]), 0) == 20
    assert shioda_tate_rank(profile([("I6", 4)]), 0) == 22
    assert shioda_tate_rank(profile([("I8", 3)]), 0) == 23


def test_shioda_tate_additive_over_union():
    a = profile([("I4", 6)])
    b = profile([("I2", 3)])
    union = profile([("I4", 6), ("I2", 3)])
    assert (
        shioda_tate_rank(union, 0)
        == shioda_tate_rank(a, 0) + shioda_tate_rank(b, 0) - 2
    )


def test_shioda_tate_rejects_negative_mw():
    with pytest.raises(ValueError):
        shioda_tate_rank(profile([("I4", 6)]), -1)


# -- uniform enumeration --------------------------------------------------------


def test_enumerate_uniform_rho22():
    descs = [p.describe() for p in enumerate_uniform(22)]
    assert descs == ["12xI2", "8xI3", "6xI4", "4xI6"]


def test_enumerate_uniform_rho20():
    descs = [p.describe() for p in enumerate_uniform(20)]
    assert descs == ["12xI2", "8xI3", "6xI4"]


def test_enumerate_uniform_rho14():
    descs = [p.describe() for p in enumerate_uniform(14)]
    assert descs == ["12xI2"]


def test_enumerate_uniform_profiles_pass_budget():
    for prof in enumerate_uniform(22):
        report = budget_check(prof)
        assert report.ok
        assert all(
            not f.type.is_additive and f.type.component_count >= 2
            for f in prof.fibers
        )


# -- curve-count bounds -------------------------------------------------------------


def test_sd_bound_generic_characteristic():
    res = sd_bound(SurfaceContext(characteristic=5))
    assert (res.bound, res.count, res.h_threshold) == (24, "S_d", Fraction(42))


def test_sd_bound_char3_general():
    res = sd_bound(SurfaceContext(characteristic=3))
    assert (res.bound, res.count, res.h_threshold) == (30, "S_d'", Fraction(43))


def test_sd_bound_char2_general():
    res = sd_bound(SurfaceContext(characteristic=2))
    assert (res.bound, res.count, res.h_threshold) == (40, "S_d'", Fraction(185, 4))
    assert res.conjectural is not None


def test_sd_bound_char2_non_unirational():
    res = sd_bound(SurfaceContext(characteristic=2, unirational=False))
    assert (res.bound, res.count, res.h_threshold) == (24, "S_d", Fraction(42))


def test_sd_bound_char3_artin_invariant():
    res = sd_bound(SurfaceContext(characteristic=3, artin_invariant=7))
    assert (res.bound, res.count) == (24, "S_d")
    res = sd_bound(SurfaceContext(characteristic=3, artin_invariant=6))
    assert (res.bound, res.count) == (30, "S_d'")


def test_sd_bound_char2_unirational_note():
    res = sd_bound(SurfaceContext(characteristic=2, unirational=True))
    assert res.bound == 40
    assert any("unirational" in h for h in res.hypotheses)


def test_sd_bound_monotone_under_hypothesis_weakening():
    for p in (2, 3):
        general = sd_bound(SurfaceContext(characteristic=p)).bound
        stronger = sd_bound(
            SurfaceContext(characteristic=p, unirational=False)
        ).bound
        assert stronger <= general


def test_sd_bound_char0_unirational_unsupported():
    with pytest.raises(UnsupportedContextError):
        sd_bound(SurfaceContext(characteristic=0, unirational=True))


def test_surface_context_rho_max():
    assert SurfaceContext(characteristic=0).rho_max == 20
    assert SurfaceContext(characteristic=3).rho_max == 22


# -- extremal lookup -------------------------------------------------------------


def test_extremal_lookup_char7():
    prof = profile([("I7", 2), ("II*", 1)], characteristic=7)
    hits = extremal_lookup(prof)
    assert len(hits) == 1
    assert hits[0].mordell_weil == "trivial"
    assert budget_check(prof).ok


def test_extremal_lookup_wrong_characteristic():
    prof = profile([("I7", 2), ("II*", 1)], characteristic=7)
    assert extremal_lookup(prof, 5) == []


def test_extremal_lookup_quasi_elliptic_char3():
    prof = profile([("IV*", 3), ("IV", 1)], quasi_elliptic=True, characteristic=3)
    hits = extremal_lookup(prof)
    assert len(hits) == 3
    assert all(h.mordell_weil == "Z/3Z" for h in hits)
    assert budget_check(prof).ok


def test_extremal_lookup_needs_matching_kind():
    elliptic_twin = profile([("IV*", 3), ("IV", 1)], characteristic=3)
    assert extremal_lookup(elliptic_twin) == []


def test_extremal_entries_all_pass_budget():
    from k3lat.fibration import EXTREMAL_TABLE

    assert len(EXTREMAL_TABLE) == 7
    for entry in EXTREMAL_TABLE:
        prof = profile(
            [(t, 1) for t in entry.fiber_tags],
            quasi_elliptic=entry.quasi_elliptic,
            characteristic=entry.characteristic,
        )
        assert budget_check(prof).ok, entry.name


# -- very-ampleness criterion ------------------------------------------------------


def _model(curves, h_square=8, two_div=False):
    return DeclaredModel(h_square, two_div, tuple(curves))


def test_very_ample_pass():
    verdict = very_ample_check(
        _model([DeclaredCurve("C", 0, 1), DeclaredCurve("E", 1, 5)])
    )
    assert verdict.passed
    assert any("declared classes only" in n for n in verdict.notes)


def test_very_ample_genus_one_failure():
    verdict = very_ample_check(
        _model([DeclaredCurve("C", 0, 1), DeclaredCurve("E", 1, 2)])
    )
    assert not verdict.passed
    assert any("genus-one" in f for f in verdict.failed)


def test_very_ample_two_divisible_failure():
    verdict = very_ample_check(_model([DeclaredCurve("C", 0, 1)], 8, True))
    assert not verdict.passed
    assert any("2-divisible" in f for f in verdict.failed)


def test_very_ample_small_square_failure():
    verdict = very_ample_check(_model([DeclaredCurve("C", 0, 1)], 2))
    assert not verdict.passed


def test_very_ample_nonpositive_degree_failure():
    verdict = very_ample_check(_model([DeclaredCurve("C", 0, 0)]))
    assert not verdict.passed
    assert any("positivity" in f for f in verdict.failed)


def test_declared_model_validation():
    with pytest.raises(ValueError):
        DeclaredModel(7, False, ())
