"""
Long-time predictions for the Hadamard walk.

Every function here assumes the Hadamard coin.  Densities are expressed in
the scaled position ``x~ = x / t`` and integrate to one over the support
``|x~| < 1/sqrt 2``; multiply by ``1/t`` to get a density in ``x``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate

from .core import hadamard_coin, to_hadamard_coords
from .pair import to_hadamard_coords2

__all__ = [
    "EDGE",
    "AsymptoticCoefficients",
    "QuadratureError",
    "coin_bias",
    "konno_density",
    "asymptotic_half_line",
    "ps_separable",
    "ps_separable_standard",
    "ps_entangled",
    "density_coefficients",
    "joint_density",
    "plane_propagator",
    "plane_eigensystem",
    "cdf_by_quadrature",
]

EDGE = 1.0 / np.sqrt(2.0)
_IMAG_ATOL = 1e-12


class AsymptoticCoefficients(NamedTuple):
    c1: float
    c2: float
    c12: float


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested accuracy."""

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


def coin_bias(coin: ArrayLike) -> float:
    """
    Bias ``(a+b) conj(a) + (a-b) conj(b)`` of a coin state ``a|L> + b|R>``.

    Equals ``|a|^2 - |b|^2 + 2 Re(a conj(b))``; positive values push the walker left.
    """
    a, b = np.asarray(coin, dtype=np.complex128)
    bias = (a + b) * np.conj(a) + (a - b) * np.conj(b)
    if abs(bias.imag) > _IMAG_ATOL:
        raise ValueError(f"coin bias has imaginary part {bias.imag:.3e}; is the state normalized?")
    return float(bias.real)


def _edge_kernel(x: NDArray[np.float64]) -> NDArray[np.float64]:
    inside = np.abs(x) < EDGE
    out = np.zeros_like(x)
    xi = x[inside]
    out[inside] = 1.0 / (np.pi * np.sqrt(1.0 - 2.0 * xi**2) * (1.0 - xi**2))
    return out


def konno_density(x_tilde: ArrayLike, coin: ArrayLike) -> NDArray[np.float64] | float:
    """
    Limiting density of ``X_t / t`` for a walker started at the origin.

    ``f(x) = (1 - B x) / (pi sqrt(1 - 2x^2) (1 - x^2))`` inside the support
    and zero outside, ``B`` being :func:`coin_bias`.
    """
    x = np.asarray(x_tilde, dtype=np.float64)
    f = (1.0 - coin_bias(coin) * x) * _edge_kernel(np.atleast_1d(x)).reshape(x.shape)
    return float(f) if f.ndim == 0 else f


def asymptotic_half_line(coin: ArrayLike) -> tuple[float, float]:
    """Limits of ``(P-, P+)``: ``((2 + B)/4, (2 - B)/4)``."""
    b = coin_bias(coin)
    return (2.0 + b) / 4.0, (2.0 - b) / 4.0


def ps_separable_standard(coin1: ArrayLike, coin2: ArrayLike) -> float:
    """Same-side limit for a product coin state, from the standard-basis amplitudes."""
    return (4.0 + coin_bias(coin1) * coin_bias(coin2)) / 8.0


def ps_separable(coin1: ArrayLike, coin2: ArrayLike) -> float:
    """
    Same-side limit ``(2 + (2|h1+|^2 - 1)(2|h2+|^2 - 1)) / 4`` for a product state.

    The Hadamard-basis value is cross-checked against
    :func:`ps_separable_standard`.
    """
    w1 = abs(to_hadamard_coords(coin1).h_plus) ** 2
    w2 = abs(to_hadamard_coords(coin2).h_plus) ** 2
    value = (2.0 + (2.0 * w1 - 1.0) * (2.0 * w2 - 1.0)) / 4.0
    check = ps_separable_standard(coin1, coin2)
    if abs(value - check) > 1e-12:
        raise ArithmeticError(f"basis forms disagree: {value!r} vs {check!r}")
    return value


def ps_entangled(state: ArrayLike) -> float:
    """Same-side limit ``(1 + 2(|h++|^2 + |h--|^2)) / 4`` for any two-coin state."""
    h = to_hadamard_coords2(state)
    return (1.0 + 2.0 * (abs(h.h_pp) ** 2 + abs(h.h_mm) ** 2)) / 4.0


def density_coefficients(state: ArrayLike) -> AsymptoticCoefficients:
    """Coefficients of the bilinear numerator of the two-walker limiting density."""
    pp, pm, mp, mm = (abs(x) ** 2 for x in to_hadamard_coords2(state))
    s2 = np.sqrt(2.0)
    return AsymptoticCoefficients(
        c1=float(s2 * (pp + pm - mp - mm)),
        c2=float(s2 * (pp + mp - pm - mm)),
        c12=float(2.0 * (pp + mm - pm - mp)),
    )


def joint_density(
    x1: ArrayLike, x2: ArrayLike, coeffs: AsymptoticCoefficients
) -> NDArray[np.float64] | float:
    """
    Limiting joint density of ``(X1/t, X2/t)``.

    ``(1 - C1 x1 - C2 x2 + C12 x1 x2)`` times the product of the two
    single-walker edge kernels; zero outside the open square.
    """
    a, b = np.broadcast_arrays(np.asarray(x1, float), np.asarray(x2, float))
    c1, c2, c12 = coeffs
    ka = _edge_kernel(np.atleast_1d(a)).reshape(a.shape)
    kb = _edge_kernel(np.atleast_1d(b)).reshape(b.shape)
    f = (1.0 - c1 * a - c2 * b + c12 * a * b) * ka * kb
    return float(f) if f.ndim == 0 else f


def plane_propagator(k1: float, k2: float) -> NDArray[np.complex128]:
    """
    Fourier-space propagator of the two-walker plane walk at ``(k1, k2)``.

    Each factor is ``diag(e^{ik}, e^{-ik}) H``.  That phase convention is the
    one under which the eigen-phases ``arcsin(sin k / sqrt 2)`` and
    ``pi - arcsin(sin k / sqrt 2)`` go with the eigenvectors built in
    :func:`plane_eigensystem`.
    """
    h = hadamard_coin()

    def one(k):
        return np.diag([np.exp(1j * k), np.exp(-1j * k)]) @ h

    return np.kron(one(k1), one(k2))


def _line_eigensystem(k: float):
    w1 = np.arcsin(np.sin(k) / np.sqrt(2.0))
    w2 = np.pi - w1
    c = np.cos(k)
    root = np.sqrt(1.0 + c**2)
    n1 = 2.0 * (1.0 + c**2 - c * root)
    n2 = 2.0 * (1.0 + c**2 + c * root)
    e = np.exp(1j * k)
    v1 = np.array([e, np.sqrt(2.0) * np.exp(1j * w1) - e]) / np.sqrt(n1)
    v2 = np.array([-e, np.sqrt(2.0) * np.exp(-1j * w1) + e]) / np.sqrt(n2)
    return (w1, v1), (w2, v2)


def plane_eigensystem(k1: float, k2: float) -> list[tuple[complex, NDArray[np.complex128]]]:
    """
    Eigenpairs of :func:`plane_propagator` as tensor products of line eigenpairs.

    Returns ``[(lambda_ij, v_i(k1) (x) v_j(k2))]`` for ``ij`` in 11, 12, 21, 22.
    """
    first = _line_eigensystem(k1)
    second = _line_eigensystem(k2)
    return [
        (complex(np.exp(1j * (wi + wj))), np.kron(vi, vj))
        for wi, vi in first
        for wj, vj in second
    ]


def cdf_by_quadrature(
    x1: float,
    x2: float,
    coeffs: AsymptoticCoefficients,
    tol: float = 1e-9,
) -> float:
    """
    Limiting joint CDF ``F(x1, x2)`` by adaptive 2-D quadrature.

    The substitution ``q = sin(u)/sqrt 2`` turns ``dq / sqrt(1 - 2q^2)`` into
    ``du / sqrt 2`` and removes the inverse-square-root singularity at the
    edges of the support.

    Raises
    ------
    QuadratureError
        If the reported error estimate exceeds ``tol``.
    """
    c1, c2, c12 = coeffs
    u1 = np.arcsin(np.sqrt(2.0) * np.clip(x1, -EDGE, EDGE))
    u2 = np.arcsin(np.sqrt(2.0) * np.clip(x2, -EDGE, EDGE))
    lo = -np.pi / 2

    def integrand(v2, v1):
        q1 = np.sin(v1) * EDGE
        q2 = np.sin(v2) * EDGE
        num = 1.0 - c1 * q1 - c2 * q2 + c12 * q1 * q2
        return num / (2.0 * np.pi**2 * (1.0 - q1**2) * (1.0 - q2**2))

    if u1 <= lo or u2 <= lo:
        return 0.0
    value, err = integrate.dblquad(integrand, lo, u1, lo, u2, epsabs=tol / 10, epsrel=1e-12)
    if err > tol:
        raise QuadratureError(f"quadrature error estimate {err:.2e} exceeds {tol:.2e}", err)
    return float(value)
