import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cvschwinger.errors import DomainError
from cvschwinger.gaussian import TwoModeStdForm, symplectic_eigenvalues, tmsv
from cvschwinger.vn import (
    Direction,
    conditional_eigenvalue,
    discord_vn,
    f_vn,
    log_negativity,
    mutual_information_vn,
    ppt_minimum,
    state_spectrum,
    vn_report,
)
from helpers import pipeline_std, random_std_form


def test_f_vn_anchors():
    assert f_vn(1.0) == 0.0
    # base 2: ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2) at x = 3
    assert f_vn(3.0) == pytest.approx(2.0, rel=1e-14)


def test_f_vn_base_switch(monkeypatch):
    monkeypatch.setenv("CVS_LOG_BASE", "e")
    nats = f_vn(3.0)
    monkeypatch.setenv("CVS_LOG_BASE", "2")
    bits = f_vn(3.0)
    assert nats == pytest.approx(bits * math.log(2.0), rel=1e-14)
    monkeypatch.setenv("CVS_LOG_BASE", "10")
    with pytest.raises(DomainError):
        f_vn(3.0)


def test_f_vn_rejects_sub_vacuum_argument():
    with pytest.raises(DomainError):
        f_vn(0.99)
    # within the clamp band the function returns 0 instead
    assert f_vn(1.0 - 1e-12) == 0.0


def test_state_spectrum_anchors():
    assert state_spectrum(tmsv(0.9)) == pytest.approx((1.0, 1.0), abs=1e-12)
    prod = TwoModeStdForm(3.0, 2.0, 0.0, 0.0)
    assert sorted(state_spectrum(prod)) == pytest.approx([2.0, 3.0], rel=1e-14)


def test_spectra_match_dense_eigensolver(rng):
    for _ in range(60):
        std = random_std_form(rng)
        lo, hi = state_spectrum(std)
        dense = symplectic_eigenvalues(std.to_cm())
        assert lo == pytest.approx(dense[0], rel=1e-9, abs=1e-9)
        assert hi == pytest.approx(dense[1], rel=1e-9, abs=1e-9)
        # partial transpose flips the sign of c2
        pt = TwoModeStdForm(std.a, std.b, std.c1, -std.c2)
        assert ppt_minimum(std) == pytest.approx(
            min(symplectic_eigenvalues(pt.to_cm())), rel=1e-9, abs=1e-9
        )


def test_spectrum_stable_on_near_pure_pipeline_states():
    # tiny x leaves the state within ~1e-8 of pure; the factored
    # discriminant must keep nu- >= 1 to machine precision instead of
    # drifting sqrt(eps) below it
    for x in (0.01, 0.02, 0.05):
        std = pipeline_std("unilateral", 1.0, x, "pq")
        lo, _ = state_spectrum(std)
        assert lo >= 1.0 - 1e-12


@given(st.floats(min_value=0.01, max_value=2.5))
@settings(max_examples=30)
def test_tmsv_negativity_closed_form(s):
    # mu- of the partial transpose is exp(-2s); negativity = -log2 of it
    assert ppt_minimum(tmsv(s)) == pytest.approx(math.exp(-2.0 * s), rel=1e-12)
    assert log_negativity(tmsv(s)) == pytest.approx(2.0 * s / math.log(2.0), rel=1e-12)


def test_negativity_clamps_to_zero_for_separable(rng):
    for _ in range(20):
        std = random_std_form(rng, entangled=False)
        assert log_negativity(std) == 0.0


def test_mutual_information_nonnegative_and_zero_on_products(rng):
    for _ in range(40):
        std = random_std_form(rng)
        assert mutual_information_vn(std) >= 0.0
    prod = TwoModeStdForm(2.5, 1.7, 0.0, 0.0)
    assert mutual_information_vn(prod) == 0.0


@given(st.floats(min_value=0.05, max_value=2.0))
@settings(max_examples=25)
def test_pure_state_discord_equals_entropy_of_marginal(s):
    std = tmsv(s)
    target = f_vn(math.cosh(2.0 * s))
    for direction in Direction:
        assert discord_vn(std, direction) == pytest.approx(target, rel=1e-10)
    assert mutual_information_vn(std) == pytest.approx(2.0 * target, rel=1e-10)


def test_conditional_eigenvalue_matches_compact_form_on_its_domain(rng):
    # the compact printed expression (a + ab + c1 c2)/(b + 1) is derived for
    # c2 = -c1; the covariance (Schur-complement) route must reproduce it
    # exactly there
    for _ in range(40):
        a = 1.0 + 3.0 * rng.random()
        b = 1.0 + 3.0 * rng.random()
        cap = math.sqrt((a * b - 1.0) * min(1.0, (a * b - 1.0) / (a * b)))
        c = cap * rng.random() * 0.99
        try:
            std = TwoModeStdForm(a, b, c, -c)
        except DomainError:
            continue
        compact = (a + a * b + std.c1 * std.c2) / (b + 1.0)
        assert conditional_eigenvalue(std, Direction.A_GIVEN_B) == pytest.approx(
            compact, rel=1e-13
        )


def test_conditional_eigenvalue_directions(rng):
    std = random_std_form(rng)
    ab = conditional_eigenvalue(std, Direction.A_GIVEN_B)
    ba = conditional_eigenvalue(std, Direction.B_GIVEN_A)
    sw = conditional_eigenvalue(std.swapped(), Direction.A_GIVEN_B)
    assert ba == pytest.approx(sw, rel=1e-14)
    assert ab >= 1.0 - 1e-9 or ab > 0.0
    with pytest.raises(DomainError):
        conditional_eigenvalue(std, "sideways")


def test_discord_nonnegative_on_random_states(rng):
    for _ in range(50):
        std = random_std_form(rng)
        for direction in Direction:
            assert discord_vn(std, direction) >= -1e-10


def test_discord_zero_on_product_states():
    prod = TwoModeStdForm(2.0, 3.0, 0.0, 0.0)
    for direction in Direction:
        assert discord_vn(prod, direction) == 0.0


def test_unilateral_direct_pair_degrades_monotonically():
    xs = (0.5, 2.0, 8.0)
    reports = [vn_report(pipeline_std("unilateral", 1.0, x, "pq")) for x in xs]
    for lo, hi in zip(reports, reports[1:]):
        assert hi.negativity <= lo.negativity + 1e-12
        assert hi.mutual_info <= lo.mutual_info + 1e-12
        assert hi.discord_a_given_b <= lo.discord_a_given_b + 1e-12
        assert hi.discord_b_given_a <= lo.discord_b_given_a + 1e-12


def test_report_fields_consistent():
    std = pipeline_std("bilateral", 1.0, 1.0, "pq")
    rep = vn_report(std)
    assert rep.negativity == log_negativity(std)
    assert rep.mutual_info == mutual_information_vn(std)
    assert rep.discord_a_given_b == discord_vn(std, Direction.A_GIVEN_B)
    assert rep.discord_b_given_a == discord_vn(std, Direction.B_GIVEN_A)
