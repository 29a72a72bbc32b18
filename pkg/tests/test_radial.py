import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from floerkit.filtered import INF, validate
from floerkit.radial import (ExplicitPeriod, ModelError, RadialProfile, ReebSpectrumModel, annulus,
                             ball, build_complex, contract, enumerate_orbits, eta, h0a_compact,
                             h_delta_a_compact, k_window, make_H0A, make_H_delta_A, make_K, negate,
                             scale, separation_check, tau_extension, zero_profile)

ARITH = ReebSpectrumModel("arithmetic", F(1))


def brute_eta(a, t0=F(1), top=50):
    return min(abs(a - k * t0) for k in range(1, top))


def family_key(inv):
    return sorted((f.radius, f.period, f.copy, f.action, f.degrees) for f in inv.families)


def rationals(lo, hi, den=20):
    return st.integers(int(lo * den) + 1, int(hi * den) - 1).map(lambda k: F(k, den))


# --- eta --------------------------------------------------------------------

def test_eta_examples():
    assert eta(ARITH, F(1)) == 0
    assert eta(ARITH, F(5, 2)) == F(1, 2)
    assert eta(ARITH, F(3, 10)) == F(7, 10)


@given(rationals(0, 20, 37))
def test_eta_matches_brute(a):
    assert eta(ARITH, a) == brute_eta(a)


def test_eta_explicit():
    reeb = ReebSpectrumModel("explicit", periods=(ExplicitPeriod(F(3, 2)), ExplicitPeriod(F(4))))
    assert eta(reeb, F(2)) == F(1, 2)
    assert reeb.T0 == F(3, 2)
    assert [lv for lv, _, _ in reeb.levels_between(F(0), F(5))] == [1, 2]


# --- profiles ------------------------------------------------------------------

def test_profile_normalizes_collinear_points():
    h = RadialProfile((F(0), F(1, 2), F(1)), (F(-1), F(-1, 2), F(0)))
    assert h.radii == (F(0), F(1))
    assert h(F(1, 4)) == F(-3, 4)


def test_profile_rejects_unsorted():
    with pytest.raises(ModelError):
        RadialProfile((F(1), F(1, 2)), (F(0), F(0)))


def test_zero_profile_constants_only():
    inv = enumerate_orbits(annulus(), zero_profile())
    assert inv.families == ()
    assert [r.action for r in inv.regions] == [0]
    assert inv.regions[0].hi == INF


def test_degenerate_slope_rejected():
    h = RadialProfile((F(0), F(1)), (F(-1), F(0)))
    with pytest.raises(ModelError):
        enumerate_orbits(annulus(), h)


# --- H_{delta,A} ----------------------------------------------------------------

def test_h_delta_a_example():
    c = make_H_delta_A(annulus(), F(1, 10), F(5, 2))
    assert c.r_I == F(9, 4) and c.r_IV == 0
    assert c.actions("II") == [F(47, 20), F(49, 20)]
    assert c.window_II == (F(47, 20), F(49, 20))
    assert c.actions("III") == [1, 2]
    assert c.window_III == (1, 2)
    assert c.actions("I") == [F(9, 4)] and c.actions("IV") == [0]


@pytest.mark.parametrize("eps", [F(26, 100), F(3, 10), F(49, 100)])
def test_separation_holds_for_admissible_eps(eps):
    c = make_H_delta_A(annulus(), F(1, 10), F(5, 2))
    assert separation_check(c, eps) == []


def test_separation_fails_when_delta_too_large():
    c = make_H_delta_A(annulus(), F(3, 10), F(5, 2))  # delta*A = 3/4 >= eta = 1/2
    assert separation_check(c, F(2, 5))
    assert separation_check(c, F(4, 5))


def test_h_delta_a_preconditions():
    with pytest.raises(ModelError):
        make_H_delta_A(annulus(), F(1, 10), F(2))
    with pytest.raises(ModelError):
        make_H_delta_A(annulus(), F(1, 10), F(5, 2), sigma=F(3, 2))
    with pytest.raises(ModelError):
        make_H_delta_A(annulus(), F(0), F(5, 2))


@settings(max_examples=80, deadline=None)
@given(rationals(0, 1, 40), rationals(0, 12, 7))
def test_windows_symbolic(delta, A):
    """Realized actions sit in the four windows for random admissible (delta, A)."""
    assume(not ARITH.contains(A))
    c = make_H_delta_A(annulus(), delta, A)
    k_max = int(A)  # periods below A
    assert c.actions("II") == [delta * k + (1 - delta) * A for k in range(1, k_max + 1)]
    assert c.actions("III") == [F(k) for k in range(1, k_max + 1)]
    lo, hi = c.window_II
    assert all(lo <= x <= hi for x in c.actions("II"))
    lo, hi = c.window_III
    assert all(lo <= x <= hi for x in c.actions("III"))
    top = min(eta(ARITH, A), A)  # IV (action 0) must stay below A - eps
    if delta * A < top:
        eps = (delta * A + top) / 2
        assert separation_check(c, eps) == []


def test_annulus_h_delta_a_complex():
    c = make_H_delta_A(annulus(), F(1, 10), F(5, 2))
    cx = build_complex(annulus(), c.profile)
    assert len(cx) == 12
    assert cx.differential.is_zero()


# --- K_{r1,tau} -------------------------------------------------------------------

def test_make_k_examples():
    d = annulus()
    assert enumerate_orbits(d, make_K(d, 1, F(1, 2))).families == ()
    inv = enumerate_orbits(d, make_K(d, 1, F(5, 2)))
    assert sorted(f.action for f in inv.families) == [1, 2]
    assert k_window(d, 1, F(5, 2)) == (1, 2)
    inv = enumerate_orbits(d, make_K(d, 2, F(3, 2)))
    assert [f.action for f in inv.families] == [2]
    assert k_window(d, 2, F(3, 2)) == (2, 2)
    assert {r.tag for r in inv.regions} == {"I'"}
    with pytest.raises(ModelError):
        make_K(d, 1, F(2))


# --- tau extension -------------------------------------------------------------

def test_tau_extension_zero_profile():
    h = tau_extension(zero_profile(), F(1, 2), F(1, 2), annulus())
    assert h.final_slope == F(1, 2) and h.radii == (F(5, 4),)
    inv = enumerate_orbits(annulus(), h)
    assert inv.families == ()
    assert [r.action for r in inv.regions] == [0]


def test_tau_extension_rejects_large_tau():
    with pytest.raises(ModelError):
        tau_extension(zero_profile(), F(1), F(1, 2), annulus())


@settings(max_examples=50, deadline=None)
@given(rationals(0, 1, 10), rationals(0, 6, 7), rationals(0, 1, 5))
def test_tau_extension_keeps_inventory(delta, A, tau):
    assume(not ARITH.contains(A))
    h = h_delta_a_compact(delta, A)
    d = annulus()
    ext = tau_extension(h, tau, F(1, 3), d)
    inner = [(r.lo, r.value, r.kind, r.degrees) for r in enumerate_orbits(d, ext).regions]
    base = [(r.lo, r.value, r.kind, r.degrees) for r in enumerate_orbits(d, h).regions]
    assert inner == base
    assert family_key(enumerate_orbits(d, ext)) == family_key(enumerate_orbits(d, h))


# --- contraction ------------------------------------------------------------------

def test_contract_zero():
    assert contract(zero_profile(), F(1, 3)) == zero_profile()


def test_contract_halves_spectrum():
    d = annulus()
    h = h0a_compact(F(5, 2))
    base = enumerate_orbits(d, h).actions
    half = enumerate_orbits(d, contract(h, F(1, 2))).actions
    assert half == [a / 2 for a in base]


def test_contract_rejects_bad_factor():
    with pytest.raises(ModelError):
        contract(zero_profile(), F(1))


@settings(max_examples=40, deadline=None)
@given(rationals(0, 1, 10), rationals(0, 6, 7), rationals(0, 1, 9), rationals(0, 1, 11))
def test_contract_composes(delta, A, r, s):
    assume(not ARITH.contains(A))
    d = annulus()
    h = h_delta_a_compact(delta, A)
    twice = enumerate_orbits(d, contract(contract(h, r), s))
    once = enumerate_orbits(d, contract(h, r * s))
    assert family_key(twice) == family_key(once)
    assert [x.tag for x in twice.families] == [x.tag for x in enumerate_orbits(d, h).families]
    assert twice.actions == [r * s * a for a in enumerate_orbits(d, h).actions]


# --- action formula -------------------------------------------------------------------

def random_profile(rng):
    n = rng.randint(1, 4)
    radii = sorted({F(rng.randint(0, 40), 40) for _ in range(n)})
    values = [F(rng.randint(-30, 30), 10) for _ in radii[:-1]] + [F(0)]
    return RadialProfile(tuple(radii), tuple(values))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_action_formula_tangent_line(seed):
    """Family action equals the intercept of the supporting line of slope q at the corner."""
    rng = random.Random(seed)
    d = annulus()
    h = random_profile(rng)
    try:
        inv = enumerate_orbits(d, h)
    except ModelError:
        return
    slopes = h.slopes
    for f in inv.families:
        left, right = slopes[f.corner], slopes[f.corner + 1]
        assert min(left, right) < f.period < max(left, right)
        r = f.radius
        # line of slope q through (r, h(r)) meets r = 0 at h(r) - r q
        assert f.action == -(h(r) - r * f.period)
    for reg in inv.regions:
        assert reg.action == -h(reg.lo)


# --- complexes ----------------------------------------------------------------

def test_zero_hamiltonian_on_ball():
    cx = build_complex(ball(), zero_profile())
    assert [g.degree for g in cx.generators] == [0]
    assert cx.differential.is_zero()


def test_explicit_differential_rejected():
    d = annulus()
    c = make_H_delta_A(d, F(1, 10), F(5, 2))
    # R1:0 (plateau, action 0) -> degree-1 inner generator R0:1 (action 9/4) raises action
    with pytest.raises(ModelError):
        build_complex(d, c.profile, [("R1:0", "R0:1")])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_ball_preset_valid_on_random_profiles(seed):
    rng = random.Random(seed)
    h = random_profile(rng)
    for hh in (h, negate(h), scale(h, F(rng.randint(1, 9), 4))):
        try:
            cx = build_complex(ball(), hh)
        except ModelError as exc:
            assert "spectrum" in str(exc)
            continue
        assert validate(cx) == []


def test_h0a_ball_differential():
    d = ball()
    cx = build_complex(d, make_H0A(d, F(5, 2)))
    ids = {(cx.generators[j].id, cx.generators[i].id) for i, j in cx.differential.entries()}
    assert ids == {("F0:+1:0a", "F1:+1:0a"), ("F0:+1:0a", "R0:0")}
