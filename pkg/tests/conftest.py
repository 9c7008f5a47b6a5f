import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


@st.composite
def coin_states(draw, dim=2):
    parts = draw(
        st.lists(st.floats(-1, 1, allow_nan=False), min_size=2 * dim, max_size=2 * dim)
    )
    v = np.array(parts[:dim]) + 1j * np.array(parts[dim:])
    n = np.linalg.norm(v)
    if n < 1e-3:
        v = np.eye(dim, dtype=complex)[0]
        n = 1.0
    return v / n


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def path_sum_walk(coin_state, t, coin=None):
    """Amplitudes psi[m + t, k] by summing over all 2^t coin/shift histories."""
    c = np.array([[1, 1], [1, -1]]) / np.sqrt(2) if coin is None else coin
    out = np.zeros((2 * t + 1, 2), dtype=complex)
    if t == 0:
        out[0] = coin_state
        return out
    for hist in itertools.product((0, 1), repeat=t):
        for start in (0, 1):
            amp = coin_state[start]
            prev = start
            for k in hist:
                amp *= c[k, prev]
                prev = k
            m = sum(-1 if k == 0 else 1 for k in hist)
            out[m + t, hist[-1]] += amp
    return out


def gauss_legendre_square(f, order=60):
    """Integrate f(q1, q2) times the two edge weights over a sub-square via q = sin(u)/sqrt2."""
    x, w = np.polynomial.legendre.leggauss(order)

    def rule(lo, hi):
        u = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        return u, 0.5 * (hi - lo) * w

    def integrate(u1_lim, u2_lim):
        u1, w1 = rule(*u1_lim)
        u2, w2 = rule(*u2_lim)
        U1, U2 = np.meshgrid(u1, u2, indexing="ij")
        q1, q2 = np.sin(U1) / np.sqrt(2), np.sin(U2) / np.sqrt(2)
        jac = (np.cos(U1) / np.sqrt(2)) * (np.cos(U2) / np.sqrt(2))
        return float(np.einsum("i,j,ij->", w1, w2, f(q1, q2) * jac))

    return integrate
