"""
Single-particle coined walk on the integer line.

Amplitudes live in a dense buffer indexed by ``m + t`` for positions
``m in [-t, t]``; column 0 holds the |L> component and column 1 the |R>
component.  One step applies the coin at every site and then shifts the
|L> component one site left and the |R> component one site right.

Half-line convention
--------------------
Position ``m = 0`` is counted on the *negative* half-line in every
half-line sum of this package.  At even ``t`` this makes ``P-`` and ``P+``
asymmetric even for a symmetric distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = [
    "NORM_ATOL",
    "CoinState",
    "CoinOperator",
    "WalkState",
    "ProbabilityDistribution",
    "HadamardCoords",
    "coin_state",
    "check_unitary",
    "hadamard_coin",
    "initial_walk",
    "step",
    "evolve",
    "iter_evolve",
    "position_distribution",
    "half_line_split",
    "hadamard_eigenbasis",
    "to_hadamard_coords",
    "from_hadamard_coords",
    "L",
    "R",
    "SYMMETRIC",
]

NORM_ATOL = 1e-12

CoinState = NDArray[np.complex128]
CoinOperator = NDArray[np.complex128]

_SQ2 = np.sqrt(2.0)
_COS = np.sqrt(2.0 + _SQ2) / 2.0  # <L|chi+>
_SIN = np.sqrt(2.0 - _SQ2) / 2.0  # <R|chi+>


class HadamardCoords(NamedTuple):
    """Coefficients of a coin state in the Hadamard eigenbasis."""

    h_plus: complex
    h_minus: complex


@dataclass(frozen=True)
class WalkState:
    """
    Amplitudes of a single walker after ``steps`` steps.

    Attributes
    ----------
    steps : int
        Number of steps taken from the origin.
    amps : NDArray[np.complex128]
        Array of shape ``(2*steps + 1, 2)``; row ``m + steps`` holds
        ``(psi_L(m), psi_R(m))``.
    """

    steps: int
    amps: NDArray[np.complex128]

    @property
    def positions(self) -> NDArray[np.int64]:
        return np.arange(-self.steps, self.steps + 1)

    def amplitude(self, m: int) -> NDArray[np.complex128]:
        if abs(m) > self.steps:
            return np.zeros(2, dtype=np.complex128)
        return self.amps[m + self.steps]

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Position distribution ``p[m + steps]`` over ``m in [-steps, steps]``."""

    steps: int
    p: NDArray[np.float64]

    @property
    def positions(self) -> NDArray[np.int64]:
        return np.arange(-self.steps, self.steps + 1)

    def __getitem__(self, m: int) -> float:
        if abs(m) > self.steps:
            return 0.0
        return float(self.p[m + self.steps])

    def as_dict(self, drop_zeros: bool = True) -> dict[int, float]:
        return {
            int(m): float(v)
            for m, v in zip(self.positions, self.p)
            if not (drop_zeros and v == 0.0)
        }


def coin_state(a: complex, b: complex, *, atol: float = NORM_ATOL) -> CoinState:
    """Build ``a|L> + b|R>``, rejecting vectors that are not normalized."""
    psi = np.array([a, b], dtype=np.complex128)
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > atol:
        raise ValueError(f"coin state is not normalized (|a|^2+|b|^2 = {norm!r})")
    return psi


def check_unitary(op: ArrayLike, atol: float = NORM_ATOL) -> NDArray[np.complex128]:
    """Return ``op`` as a complex array, raising ``ValueError`` unless unitary."""
    u = np.asarray(op, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"operator must be square, got shape {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if err > atol:
        raise ValueError(f"operator is not unitary (max |U^dag U - I| = {err:.3e})")
    return u


def hadamard_coin() -> CoinOperator:
    """
    Return the Hadamard coin ``(1/sqrt 2) [[1, 1], [1, -1]]``.

    Columns are images of the basis states, so ``H|L> = (|L> + |R>)/sqrt 2``
    and ``H|R> = (|L> - |R>)/sqrt 2``.
    """
    return np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / _SQ2


L = np.array([1.0, 0.0], dtype=np.complex128)
R = np.array([0.0, 1.0], dtype=np.complex128)
SYMMETRIC = np.array([1.0, 1.0j], dtype=np.complex128) / _SQ2


def initial_walk(coin: ArrayLike) -> WalkState:
    """Walker at the origin with coin state ``coin``, zero steps taken."""
    psi = np.asarray(coin, dtype=np.complex128).reshape(1, 2).copy()
    return WalkState(0, psi)


def step(state: WalkState, coin: CoinOperator | None = None) -> WalkState:
    """
    Advance a walk by one step: coin on every site, then the conditional shift.

    Parameters
    ----------
    state : WalkState
        Current state on ``[-t, t]``.
    coin : CoinOperator, optional
        Any 2x2 unitary; the Hadamard coin by default.

    Returns
    -------
    WalkState
        New state on ``[-(t+1), t+1]``.
    """
    c = hadamard_coin() if coin is None else coin
    flipped = state.amps @ c.T
    n = flipped.shape[0]
    out = np.zeros((n + 2, 2), dtype=np.complex128)
    # old index a = m + t maps to new index m -/+ 1 + (t + 1)
    out[:n, 0] = flipped[:, 0]
    out[2:, 1] = flipped[:, 1]
    return WalkState(state.steps + 1, out)


def iter_evolve(initial: ArrayLike, t: int, coin: CoinOperator | None = None):
    """Yield the walk state for every step ``0, 1, ..., t``."""
    if t < 0:
        raise ValueError(f"number of steps must be non-negative, got {t}")
    c = hadamard_coin() if coin is None else check_unitary(coin)
    state = initial_walk(initial)
    yield state
    for _ in range(t):
        state = step(state, c)
        yield state


def evolve(initial: ArrayLike, t: int, coin: CoinOperator | None = None) -> WalkState:
    """Evolve the walker from the origin with coin state ``initial`` for ``t`` steps."""
    state = None
    for state in iter_evolve(initial, t, coin):
        pass
    return state


def position_distribution(state: WalkState) -> ProbabilityDistribution:
    """Marginalize the coin: ``p(m) = |psi_L(m)|^2 + |psi_R(m)|^2``."""
    return ProbabilityDistribution(state.steps, np.sum(np.abs(state.amps) ** 2, axis=1))


def half_line_split(dist: ProbabilityDistribution) -> tuple[float, float]:
    """
    Return ``(P-, P+)``: the mass on ``m <= 0`` and on ``m >= 1``.

    The origin belongs to the negative side.
    """
    t = dist.steps
    p_minus = float(np.sum(dist.p[: t + 1]))
    p_plus = float(np.sum(dist.p[t + 1 :]))
    return p_minus, p_plus


def hadamard_eigenbasis() -> tuple[CoinState, CoinState]:
    """Eigenvectors ``(chi+, chi-)`` of the Hadamard coin for eigenvalues +1, -1."""
    chi_p = np.array([_COS, _SIN], dtype=np.complex128)
    chi_m = np.array([_SIN, -_COS], dtype=np.complex128)
    return chi_p, chi_m


def to_hadamard_coords(state: ArrayLike) -> HadamardCoords:
    """Project a coin state on ``chi+`` and ``chi-``."""
    psi = np.asarray(state, dtype=np.complex128)
    chi_p, chi_m = hadamard_eigenbasis()
    return HadamardCoords(complex(np.vdot(chi_p, psi)), complex(np.vdot(chi_m, psi)))


def from_hadamard_coords(coords: HadamardCoords) -> CoinState:
    """Inverse of :func:`to_hadamard_coords`."""
    hp, hm = coords
    a = _COS * hp + _SIN * hm
    b = _SIN * hp - _COS * hm
    return np.array([a, b], dtype=np.complex128)
