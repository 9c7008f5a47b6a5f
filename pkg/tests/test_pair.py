import numpy as np
import pytest
from hypothesis import given, settings

from coinwalk.core import L, R, SYMMETRIC, evolve, hadamard_eigenbasis, position_distribution
from coinwalk.delta import evolve_delta, joint_distribution_of, product_coin
from coinwalk.pair import (
    JointDistribution,
    basis_walks,
    bell_state,
    boson_joint_distribution,
    fermion_joint_distribution,
    from_hadamard_coords2,
    interference_term,
    joint_distribution_distinguishable,
    p_same_side,
    product_state,
    ps_timeseries,
    to_hadamard_coords2,
)

from conftest import coin_states, random_state

S = 1 / np.sqrt(2)


def test_bell_states():
    np.testing.assert_allclose(bell_state("psi-"), [0, S, -S, 0])
    for k in ("psi+", "psi-", "phi+", "phi-"):
        assert np.linalg.norm(bell_state(k)) == pytest.approx(1, abs=1e-15)
    with pytest.raises(ValueError):
        bell_state("omega")


def test_hadamard_coords2_examples():
    chi_p, chi_m = hadamard_eigenbasis()
    np.testing.assert_allclose(to_hadamard_coords2(np.kron(chi_p, chi_p)), [1, 0, 0, 0], atol=1e-12)

    h = to_hadamard_coords2(bell_state("phi+"))
    np.testing.assert_allclose(np.abs(h), [S, 0, 0, S], atol=1e-12)

    h = to_hadamard_coords2(bell_state("psi-"))
    np.testing.assert_allclose(np.abs(h), [0, S, S, 0], atol=1e-12)

    h = to_hadamard_coords2(bell_state("psi+"))
    np.testing.assert_allclose(np.abs(h) ** 2, [0.25] * 4, atol=1e-12)


@given(coin_states(dim=4))
def test_hadamard_coords2_round_trip(c):
    h = to_hadamard_coords2(c)
    assert sum(abs(x) ** 2 for x in h) == pytest.approx(1, abs=1e-12)
    np.testing.assert_allclose(from_hadamard_coords2(h), c, atol=1e-12)


def test_zero_steps():
    for c in (bell_state("phi-"), product_state(L, R)):
        d = joint_distribution_distinguishable(c, 0)
        assert d.p.shape == (1, 1) and d[0, 0] == pytest.approx(1, abs=1e-15)
        assert p_same_side(d) == pytest.approx(1, abs=1e-15)


def test_p_same_side_of_point_mass():
    assert p_same_side(JointDistribution(0, np.ones((1, 1)))) == 1.0


def test_separable_factorizes(rng):
    for t in (1, 2, 9, 30):
        a, b = random_state(rng, 2), random_state(rng, 2)
        d = joint_distribution_distinguishable(product_state(a, b), t)
        p1 = position_distribution(evolve(a, t)).p
        p2 = position_distribution(evolve(b, t)).p
        np.testing.assert_allclose(d.p, np.outer(p1, p2), atol=1e-12)


def test_marginal_of_separable_state(rng):
    a, b = random_state(rng, 2), random_state(rng, 2)
    d = joint_distribution_distinguishable(product_state(a, b), 25)
    np.testing.assert_allclose(d.p.sum(axis=1), position_distribution(evolve(a, 25)).p, atol=1e-12)


@pytest.mark.parametrize("kind", ["psi+", "psi-", "phi+", "phi-"])
@pytest.mark.parametrize("t", range(7))
def test_bell_matches_plane_walk(kind, t):
    composed = joint_distribution_distinguishable(bell_state(kind), t).p
    plane = joint_distribution_of(evolve_delta(bell_state(kind), t, product_coin())).p
    np.testing.assert_allclose(composed, plane, atol=1e-12)


@pytest.mark.parametrize("t", [0, 1, 4, 11, 20])
def test_bell_decomposition(t):
    phi = basis_walks(t).real
    pl = np.sum(phi[0] ** 2, axis=1)
    pr = np.sum(phi[1] ** 2, axis=1)
    field = np.sum(phi[0] * phi[1], axis=1)
    cross = np.outer(field, field)
    expected = {
        "psi+": 0.5 * (np.outer(pl, pr) + np.outer(pr, pl)) + cross,
        "psi-": 0.5 * (np.outer(pl, pr) + np.outer(pr, pl)) - cross,
        "phi+": 0.5 * (np.outer(pl, pl) + np.outer(pr, pr)) + cross,
        "phi-": 0.5 * (np.outer(pl, pl) + np.outer(pr, pr)) - cross,
    }
    for kind, ref in expected.items():
        np.testing.assert_allclose(joint_distribution_distinguishable(bell_state(kind), t).p, ref, atol=1e-12)


def test_interference_at_origin():
    assert interference_term(0) == 0.0


def test_interference_identity():
    def ps(c, t):
        return p_same_side(joint_distribution_distinguishable(c, t))

    lr, ll, rr = product_state(L, R), product_state(L, L), product_state(R, R)
    for t in range(51):
        i_t = interference_term(t)
        assert ps(bell_state("psi+"), t) - ps(lr, t) == pytest.approx(i_t, abs=1e-12)
        assert ps(bell_state("psi-"), t) - ps(lr, t) == pytest.approx(-i_t, abs=1e-12)
        # the phi baseline is the LL/RR average; it tends to P(LL) only as t grows
        base = 0.5 * (ps(ll, t) + ps(rr, t))
        assert ps(bell_state("phi+"), t) - base == pytest.approx(i_t, abs=1e-12)
        assert ps(bell_state("phi-"), t) - base == pytest.approx(-i_t, abs=1e-12)


def test_interference_needs_real_amplitudes():
    coin = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
    with pytest.raises(ValueError, match="not real"):
        interference_term(5, coin)


def test_interference_large_t():
    vals = [interference_term(t) for t in range(300, 321, 2)]
    assert np.mean(vals) == pytest.approx(1 / 8, abs=0.005)


@pytest.mark.parametrize("build", [boson_joint_distribution, fermion_joint_distribution])
def test_indistinguishable_zero_steps(build):
    d = build(0)
    assert d.mode == "ordered" and d[0, 0] == pytest.approx(1, abs=1e-15)


@pytest.mark.parametrize("build", [boson_joint_distribution, fermion_joint_distribution])
def test_indistinguishable_normalized(build):
    for t in range(1, 51):
        d = build(t)
        assert d.total() == pytest.approx(1, abs=1e-10)
        assert np.all(np.triu(d.p, k=1) == 0)


@pytest.mark.parametrize("kind,twin", [("boson", "psi+"), ("fermion", "psi-")])
def test_indistinguishable_relations(kind, twin):
    build = boson_joint_distribution if kind == "boson" else fermion_joint_distribution
    for t in range(21):
        d = build(t).p
        ref = joint_distribution_distinguishable(bell_state(twin), t).p
        off = np.tril(np.ones_like(d, dtype=bool), k=-1)
        np.testing.assert_allclose(d[off], 2 * ref[off], atol=1e-12)
        np.testing.assert_allclose(np.diag(d), np.diag(ref), atol=1e-12)


def test_fermion_diagonal_formula():
    for t in range(21):
        phi = basis_walks(t)
        direct = np.abs(phi[0, :, 0] * phi[1, :, 1] - phi[0, :, 1] * phi[1, :, 0]) ** 2
        np.testing.assert_allclose(np.diag(fermion_joint_distribution(t).p), direct, atol=1e-15)


def test_ps_timeseries_zero():
    s = ps_timeseries(product_state(L, R), 0)
    assert s.t.tolist() == [0] and s.values[0] == pytest.approx(1, abs=1e-15)


def test_ps_timeseries_matches_joint_route(rng):
    for _ in range(5):
        c = random_state(rng, 4)
        series = ps_timeseries(c, 40)
        direct = [p_same_side(joint_distribution_distinguishable(c, t)) for t in range(41)]
        np.testing.assert_allclose(series.values, direct, atol=1e-12)


def test_ps_timeseries_indistinguishable():
    np.testing.assert_allclose(
        ps_timeseries("fermion", 30).values, ps_timeseries("psi-", 30).values, atol=1e-12
    )


def test_ps_tails():
    assert ps_timeseries(product_state(L, R), 200).tail_average(160) == pytest.approx(3 / 8, abs=0.01)
    assert ps_timeseries("psi-", 200).tail_average(160) == pytest.approx(1 / 4, abs=0.01)
    assert ps_timeseries("phi+", 200).tail_average(160) == pytest.approx(3 / 4, abs=0.01)
    ss = product_state(SYMMETRIC, SYMMETRIC)
    assert ps_timeseries(ss, 200).tail_average(160) == pytest.approx(1 / 2, abs=0.01)


@settings(max_examples=25, deadline=None)
@given(coin_states(dim=4))
def test_ps_range(c):
    s = ps_timeseries(c, 160)
    assert np.all((s.values >= -1e-12) & (s.values <= 1 + 1e-12))
    tail = s.values[100:]
    assert np.all((tail >= 0.25 - 0.05) & (tail <= 0.75 + 0.05))
