"""
Two non-interacting walkers starting together at the origin.

Joint quantities are assembled from the two single-particle walks launched
from |L> and |R>; no two-dimensional state vector is ever evolved here.
Coin-pair basis order is (LL, LR, RL, RR) throughout the package, i.e. the
flat index is ``2*i + j`` for particle-1 coin ``i`` and particle-2 coin ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .core import (
    NORM_ATOL,
    CoinOperator,
    check_unitary,
    evolve,
    hadamard_eigenbasis,
    iter_evolve,
    L,
    R,
)

__all__ = [
    "TwoCoinState",
    "HadamardCoords2",
    "JointDistribution",
    "PsTimeSeries",
    "BELL_KINDS",
    "two_coin_state",
    "product_state",
    "bell_state",
    "to_hadamard_coords2",
    "from_hadamard_coords2",
    "basis_walks",
    "joint_distribution_distinguishable",
    "interference_term",
    "p_same_side",
    "boson_joint_distribution",
    "fermion_joint_distribution",
    "ps_timeseries",
]

TwoCoinState = NDArray[np.complex128]
Mode = Literal["distinguishable", "ordered"]

BELL_KINDS = ("psi+", "psi-", "phi+", "phi-")


class HadamardCoords2(NamedTuple):
    """Coefficients on ``chi^a (x) chi^b`` for ``(a, b)`` in (++, +-, -+, --)."""

    h_pp: complex
    h_pm: complex
    h_mp: complex
    h_mm: complex


@dataclass(frozen=True)
class JointDistribution:
    """
    Joint position distribution ``p[m + t, n + t]`` on ``[-t, t]^2``.

    In ``"ordered"`` mode (indistinguishable particles) only cells with
    ``m >= n`` carry probability; a doubly occupied site ``(m, m)`` holds
    its full probability once.
    """

    steps: int
    p: NDArray[np.float64]
    mode: Mode = "distinguishable"

    @property
    def positions(self) -> NDArray[np.int64]:
        return np.arange(-self.steps, self.steps + 1)

    def __getitem__(self, mn: tuple[int, int]) -> float:
        m, n = mn
        t = self.steps
        if abs(m) > t or abs(n) > t:
            return 0.0
        return float(self.p[m + t, n + t])

    def total(self) -> float:
        return float(self.p.sum())


@dataclass(frozen=True)
class PsTimeSeries:
    """Same-side probability ``values[k]`` at step ``t[k]``."""

    t: NDArray[np.int64]
    values: NDArray[np.float64]

    def tail_average(self, t_min: int, t_max: int | None = None, even_only: bool = True) -> float:
        mask = self.t >= t_min
        if t_max is not None:
            mask &= self.t <= t_max
        if even_only:
            mask &= self.t % 2 == 0
        if not mask.any():
            raise ValueError("empty averaging window")
        return float(self.values[mask].mean())


def two_coin_state(amps: ArrayLike, *, atol: float = NORM_ATOL) -> TwoCoinState:
    """Validate a 4-vector ``(c_LL, c_LR, c_RL, c_RR)``."""
    c = np.asarray(amps, dtype=np.complex128).reshape(-1)
    if c.shape != (4,):
        raise ValueError(f"two-coin state needs 4 amplitudes, got {c.shape[0]}")
    norm = float(np.vdot(c, c).real)
    if abs(norm - 1.0) > atol:
        raise ValueError(f"two-coin state is not normalized (norm^2 = {norm!r})")
    return c


def product_state(first: ArrayLike, second: ArrayLike) -> TwoCoinState:
    return np.kron(np.asarray(first, dtype=np.complex128), np.asarray(second, dtype=np.complex128))


def bell_state(kind: str) -> TwoCoinState:
    """
    Bell state by name: ``psi+``, ``psi-``, ``phi+`` or ``phi-``.

    ``psi`` states are ``(|LR> +/- |RL>)/sqrt 2``; ``phi`` states are
    ``(|LL> +/- |RR>)/sqrt 2``.
    """
    s = 1.0 / np.sqrt(2.0)
    table = {
        "psi+": (0.0, s, s, 0.0),
        "psi-": (0.0, s, -s, 0.0),
        "phi+": (s, 0.0, 0.0, s),
        "phi-": (s, 0.0, 0.0, -s),
    }
    try:
        return np.array(table[kind], dtype=np.complex128)
    except KeyError:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}") from None


def _hadamard_pair_basis() -> NDArray[np.complex128]:
    chi_p, chi_m = hadamard_eigenbasis()
    return np.stack([np.kron(a, b) for a in (chi_p, chi_m) for b in (chi_p, chi_m)])


def to_hadamard_coords2(state: ArrayLike) -> HadamardCoords2:
    c = np.asarray(state, dtype=np.complex128)
    return HadamardCoords2(*(complex(x) for x in _hadamard_pair_basis().conj() @ c))


def from_hadamard_coords2(coords: HadamardCoords2) -> TwoCoinState:
    return np.asarray(coords, dtype=np.complex128) @ _hadamard_pair_basis()


def basis_walks(t: int, coin: CoinOperator | None = None) -> NDArray[np.complex128]:
    """
    Amplitudes of the walks launched from |L> and |R>.

    Returns an array ``phi`` of shape ``(2, 2t+1, 2)`` with
    ``phi[i, m + t, k] = psi_k^{(i)}(m, t)``.
    """
    return np.stack([evolve(L, t, coin).amps, evolve(R, t, coin).amps])


def joint_distribution_distinguishable(
    state: ArrayLike, t: int, coin: CoinOperator | None = None
) -> JointDistribution:
    """
    Joint distribution of two distinguishable walkers with coin state ``state``.

    By linearity the two-particle amplitude is
    ``Psi_kl(m, n) = sum_ij c_ij psi_k^{(i)}(m) psi_l^{(j)}(n)``.
    """
    c = np.asarray(state, dtype=np.complex128).reshape(2, 2)
    phi = basis_walks(t, coin)
    psi = np.einsum("ij,imk,jnl->mnkl", c, phi, phi)
    return JointDistribution(t, np.sum(np.abs(psi) ** 2, axis=(2, 3)))


def _overlap_field(phi: NDArray[np.complex128]) -> NDArray[np.float64]:
    # phi(m) = psi_L^(L) psi_L^(R) + psi_R^(L) psi_R^(R); no conjugation.
    field = np.sum(phi[0] * phi[1], axis=1)
    imag = np.max(np.abs(field.imag), initial=0.0)
    if imag > 1e-12:
        raise ValueError(
            f"basis-walk amplitudes are not real (max imag {imag:.2e}); "
            "the interference decomposition needs a real coin"
        )
    return field.real


def interference_term(t: int, coin: CoinOperator | None = None) -> float:
    """
    Interference correction ``I(t) = (phi-)^2 + (phi+)^2``.

    ``phi-`` and ``phi+`` are the sums of the overlap field over ``m <= 0``
    and ``m >= 1``.  Bell-state same-side probabilities follow from it as
    ``P(psi+/-) = P(LR) +/- I`` and ``P(phi+/-) = P(LL) +/- I``.
    """
    if t < 0:
        raise ValueError(f"number of steps must be non-negative, got {t}")
    field = _overlap_field(basis_walks(t, coin))
    return float(field[: t + 1].sum() ** 2 + field[t + 1 :].sum() ** 2)


def p_same_side(dist: JointDistribution) -> float:
    """
    Probability that both walkers sit on the same half-line.

    The origin counts as negative.  Ordered-pair distributions are summed
    over their ``m >= n`` support only, so each physical outcome counts once.
    """
    t = dist.steps
    p = dist.p
    if dist.mode == "ordered":
        p = np.tril(p)  # rows index m, columns n: keep m >= n
    return float(p[: t + 1, : t + 1].sum() + p[t + 1 :, t + 1 :].sum())


def _indistinguishable(t: int, sign: int, coin: CoinOperator | None) -> JointDistribution:
    if t < 0:
        raise ValueError(f"number of steps must be non-negative, got {t}")
    phi = basis_walks(t, coin)
    a, b = phi[0], phi[1]  # walks from (0, L) and (0, R)
    amp = np.einsum("mk,nl->mnkl", a, b) + sign * np.einsum("mk,nl->mnkl", b, a)
    p = np.tril(np.sum(np.abs(amp) ** 2, axis=(2, 3)), k=-1)

    aL, aR, bL, bR = a[:, 0], a[:, 1], b[:, 0], b[:, 1]
    mixed = np.abs(aL * bR + sign * aR * bL) ** 2  # |1_(m,L) 1_(m,R)>
    if sign > 0:
        # bosons may also doubly occupy |m, L> or |m, R>
        diag = 2 * np.abs(aL * bL) ** 2 + 2 * np.abs(aR * bR) ** 2 + mixed
    else:
        diag = mixed
    p[np.diag_indices_from(p)] = diag
    return JointDistribution(t, p, "ordered")


def boson_joint_distribution(t: int, coin: CoinOperator | None = None) -> JointDistribution:
    """
    Ordered-pair distribution of two bosons created at ``(0, L)`` and ``(0, R)``.

    Off-diagonal cells are occupation probabilities of ``|1_(m,i) 1_(n,j)>``
    summed over coins; the diagonal collects ``|2_(m,L)>``, ``|2_(m,R)>`` and
    ``|1_(m,L) 1_(m,R)>``.
    """
    return _indistinguishable(t, +1, coin)


def fermion_joint_distribution(t: int, coin: CoinOperator | None = None) -> JointDistribution:
    """Fermionic counterpart of :func:`boson_joint_distribution`."""
    return _indistinguishable(t, -1, coin)


def _same_side_from_gram(c: NDArray[np.complex128], phi: NDArray[np.complex128], t: int) -> float:
    total = 0.0
    for sl in (slice(None, t + 1), slice(t + 1, None)):
        half = phi[:, sl, :]
        g = np.einsum("imk,jmk->ij", half, half.conj())
        total += np.einsum("ij,kl,ik,jl->", c, c.conj(), g, g).real
    return float(total)


def ps_timeseries(
    source: ArrayLike | str, t_max: int, coin: CoinOperator | None = None
) -> PsTimeSeries:
    """
    Same-side probability for every step ``0..t_max``.

    Parameters
    ----------
    source : array_like or str
        A two-coin state for distinguishable walkers, a Bell-state name,
        or ``"boson"`` / ``"fermion"`` for the indistinguishable pair
        started as ``|1_(0,L) 1_(0,R)>``.
    t_max : int
        Last step, inclusive.

    Notes
    -----
    For distinguishable walkers each half-line block of the joint
    distribution is summed through the 2x2 Gram matrices of the basis walks
    restricted to that half-line, which costs O(t) per step instead of
    O(t^2).  Indistinguishable pairs go through the ordered-pair
    distribution.
    """
    if t_max < 0:
        raise ValueError(f"t_max must be non-negative, got {t_max}")
    ts = np.arange(t_max + 1)

    if isinstance(source, str) and source in ("boson", "fermion"):
        build = boson_joint_distribution if source == "boson" else fermion_joint_distribution
        vals = np.array([p_same_side(build(t, coin)) for t in ts])
        return PsTimeSeries(ts, vals)

    state = bell_state(source) if isinstance(source, str) else np.asarray(source, np.complex128)
    c = two_coin_state(state, atol=1e-10).reshape(2, 2)
    c_op = None if coin is None else check_unitary(coin)
    vals = np.empty(t_max + 1)
    walks = zip(iter_evolve(L, t_max, c_op), iter_evolve(R, t_max, c_op))
    for t, (wl, wr) in enumerate(walks):
        vals[t] = _same_side_from_gram(c, np.stack([wl.amps, wr.amps]), t)
    return PsTimeSeries(ts, vals)

