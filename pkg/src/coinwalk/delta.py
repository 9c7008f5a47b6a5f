"""
Two walkers evolved jointly on the (m, n) grid, optionally with a delta interaction.

Off the diagonal both coins flip independently (``C (x) C``); on cells with
``m == n`` the 4x4 interaction coin acts instead.  The same routine with the
interaction coin set to ``C (x) C`` is the plain two-particle walk and serves as
a brute-force reference for :mod:`coinwalk.pair`.

Memory: a state after ``t`` steps holds ``4 (2t+1)^2`` complex128 amplitudes,
about 64 bytes per grid cell; ``t = 1000`` needs roughly 256 MB per buffer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import CoinOperator, check_unitary, hadamard_coin
from .pair import JointDistribution, PsTimeSeries, p_same_side, two_coin_state

__all__ = [
    "DEFAULT_MAX_AMPS",
    "ResourceLimitError",
    "InteractionCoin",
    "JointWalkState",
    "delta_coin_default",
    "product_coin",
    "initial_joint",
    "required_amps",
    "step_delta",
    "iter_evolve_delta",
    "evolve_delta",
    "joint_distribution_of",
    "ps_timeseries_delta",
]

DEFAULT_MAX_AMPS = 2**28

InteractionCoin = NDArray[np.complex128]


class ResourceLimitError(MemoryError):
    """Raised when a requested evolution would exceed the amplitude cap."""


@dataclass(frozen=True)
class JointWalkState:
    """
    Joint amplitudes ``amps[m + t, n + t, 2*i + j]`` of two walkers.

    ``i`` is particle 1's coin and ``j`` particle 2's, with L = 0 and R = 1.
    """

    steps: int
    amps: NDArray[np.complex128]

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))


def delta_coin_default() -> InteractionCoin:
    """The entangling interaction coin, entered in (LL, LR, RL, RR) order."""
    return 0.5 * np.array(
        [
            [1, 1, 1, 1],
            [1, -1, -1, 1],
            [-1, 1, -1, 1],
            [-1, -1, 1, 1],
        ],
        dtype=np.complex128,
    )


def product_coin(single_coin: CoinOperator | None = None) -> InteractionCoin:
    """``C (x) C``; using it as the interaction coin switches the interaction off."""
    c = hadamard_coin() if single_coin is None else single_coin
    return np.kron(c, c)


def required_amps(t: int) -> int:
    return 4 * (2 * t + 1) ** 2


def initial_joint(state: ArrayLike) -> JointWalkState:
    c = two_coin_state(state, atol=1e-10)
    return JointWalkState(0, c.reshape(1, 1, 4).copy())


def step_delta(
    state: JointWalkState,
    single_coin: CoinOperator | None = None,
    delta_coin: InteractionCoin | None = None,
) -> JointWalkState:
    """
    One step of the interacting walk.

    Parameters
    ----------
    state : JointWalkState
        Amplitudes on ``[-t, t]^2``.
    single_coin : CoinOperator, optional
        Per-particle coin off the diagonal; Hadamard by default.
    delta_coin : InteractionCoin, optional
        Coin used on ``m == n``; :func:`delta_coin_default` by default.

    Returns
    -------
    JointWalkState
        Amplitudes on ``[-(t+1), t+1]^2``.
    """
    off = product_coin(single_coin)
    on = delta_coin_default() if delta_coin is None else delta_coin
    a = state.amps
    n = a.shape[0]

    flipped = a @ off.T
    diag = np.arange(n)
    flipped[diag, diag] = a[diag, diag] @ on.T

    # component (i, j) moves m by -1/+1 for i = L/R and n likewise for j;
    # in offset indices that is a slice starting at 0 (L) or 2 (R)
    out = np.zeros((n + 2, n + 2, 4), dtype=np.complex128)
    for i in (0, 1):
        for j in (0, 1):
            out[2 * i : 2 * i + n, 2 * j : 2 * j + n, 2 * i + j] = flipped[:, :, 2 * i + j]
    return JointWalkState(state.steps + 1, out)


def iter_evolve_delta(
    initial: ArrayLike,
    t: int,
    delta_coin: InteractionCoin | None = None,
    single_coin: CoinOperator | None = None,
    max_amps: int = DEFAULT_MAX_AMPS,
) -> Iterator[JointWalkState]:
    """Yield the joint state at every step ``0..t``."""
    if t < 0:
        raise ValueError(f"number of steps must be non-negative, got {t}")
    need = required_amps(t)
    if need > max_amps:
        raise ResourceLimitError(
            f"{t} steps need {need} amplitudes ({need * 16 / 2**20:.0f} MiB), "
            f"cap is {max_amps}"
        )
    sc = hadamard_coin() if single_coin is None else check_unitary(single_coin)
    dc = delta_coin_default() if delta_coin is None else check_unitary(delta_coin, atol=1e-10)
    if dc.shape != (4, 4):
        raise ValueError(f"interaction coin must be 4x4, got {dc.shape}")
    state = initial_joint(initial)
    yield state
    for _ in range(t):
        state = step_delta(state, sc, dc)
        yield state


def evolve_delta(
    initial: ArrayLike,
    t: int,
    delta_coin: InteractionCoin | None = None,
    single_coin: CoinOperator | None = None,
    max_amps: int = DEFAULT_MAX_AMPS,
) -> JointWalkState:
    """Evolve both walkers from the origin for ``t`` steps."""
    state = None
    for state in iter_evolve_delta(initial, t, delta_coin, single_coin, max_amps):
        pass
    return state


def joint_distribution_of(state: JointWalkState) -> JointDistribution:
    """Sum ``|amp|^2`` over the four coin components of every cell."""
    return JointDistribution(state.steps, np.sum(np.abs(state.amps) ** 2, axis=2))


def ps_timeseries_delta(
    initial: ArrayLike,
    t_max: int,
    delta_coin: InteractionCoin | None = None,
    single_coin: CoinOperator | None = None,
    max_amps: int = DEFAULT_MAX_AMPS,
) -> PsTimeSeries:
    vals = [
        p_same_side(joint_distribution_of(s))
        for s in iter_evolve_delta(initial, t_max, delta_coin, single_coin, max_amps)
    ]
    return PsTimeSeries(np.arange(t_max + 1), np.array(vals))
