"""Continuation of fundamental matrices of dY/dz = (U_hat + mu_hat / z) Y."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .spectral import U_hat, mu_hat


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Arc:
    radius: float
    start: float  # argument, radians
    stop: float

    def point(self, t: float) -> tuple[complex, complex]:
        th = self.start + t * (self.stop - self.start)
        z = self.radius * cmath.exp(1j * th)
        return z, 1j * z * (self.stop - self.start)

    @property
    def min_abs(self) -> float:
        return self.radius


@dataclass(frozen=True)
class Segment:
    z0: complex
    z1: complex

    def point(self, t: float) -> tuple[complex, complex]:
        return self.z0 + t * (self.z1 - self.z0), self.z1 - self.z0

    @property
    def min_abs(self) -> float:
        d = self.z1 - self.z0
        if d == 0:
            return abs(self.z0)
        t = min(1.0, max(0.0, -(self.z0 * d.conjugate()).real / abs(d) ** 2))
        return abs(self.z0 + t * d)


@dataclass(frozen=True)
class PathSpec:
    pieces: tuple = ()
    rtol: float = 1e-12
    atol: float = 1e-14

    def __post_init__(self):
        for p in self.pieces:
            if p.min_abs < 1e-8:
                raise ValueError("path passes through z = 0")

    @classmethod
    def arc(cls, radius: float, start: float, stop: float, **kw) -> "PathSpec":
        return cls((Arc(radius, start, stop),), **kw)

    def then(self, piece) -> "PathSpec":
        return PathSpec(self.pieces + (piece,), self.rtol, self.atol)

    def reversed(self) -> "PathSpec":
        rev = []
        for p in reversed(self.pieces):
            rev.append(Arc(p.radius, p.stop, p.start) if isinstance(p, Arc) else Segment(p.z1, p.z0))
        return PathSpec(tuple(rev), self.rtol, self.atol)


@dataclass
class OdeSystem:
    """Linear system dY/dz = A(z) Y, A = U + mu / z by default."""

    k: int
    U: np.ndarray = field(default=None)
    mu: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.U is None:
            self.U = U_hat(self.k)
        if self.mu is None:
            self.mu = np.diag(mu_hat(self.k)).astype(complex)

    def A(self, z: complex) -> np.ndarray:
        return self.U + self.mu / z


def ode_integrate(k: int, path: PathSpec, Y0: np.ndarray, system: OdeSystem | None = None, method: str = "DOP853") -> np.ndarray:
    """Continue the fundamental matrix Y0 along path and return the end value."""
    Y0 = np.asarray(Y0, dtype=complex)
    if Y0.shape != (k, k):
        raise ValueError("Y0 must be k x k")
    if abs(np.linalg.det(Y0)) == 0:
        raise ValueError("Y0 is singular")
    system = system or OdeSystem(k)
    Y = Y0
    for piece in path.pieces:

        def rhs(t, y, piece=piece):
            z, dz = piece.point(t)
            return (system.A(z) @ y.reshape(k, k)).ravel() * dz

        sol = solve_ivp(rhs, (0.0, 1.0), Y.ravel(), method=method, rtol=path.rtol, atol=path.atol)
        if not sol.success:
            raise IntegrationError(sol.message)
        Y = sol.y[:, -1].reshape(k, k)
        if not np.all(np.isfinite(Y)) or np.linalg.cond(Y) > 1e15:
            raise IntegrationError("fundamental matrix became singular along the path")
    return Y


def levelt_R(k: int) -> np.ndarray:
    return np.diag(np.full(k - 1, float(k)), 1).astype(complex)


def levelt_solution(k: int, z_abs: float, arg: float, terms: int = 200) -> np.ndarray:
    """Y_0(z) = Psi(z) z^mu z^R near the origin, Psi(0) = I.

    Psi = sum Psi_m z^m with
    (m + mu_b - mu_a) Psi_m[a, b] = (U Psi_{m-1} - Psi_{m-1} R)[a, b];
    at the resonances m = b - a the entry is set to zero.
    """
    U = U_hat(k)
    R = levelt_R(k)
    mu = mu_hat(k)
    z = z_abs * cmath.exp(1j * arg)
    logz = math.log(z_abs) + 1j * arg
    psi = np.eye(k, dtype=complex)
    P = np.eye(k, dtype=complex)
    zm = 1.0
    for m in range(1, terms):
        rhs = U @ P - P @ R
        den = m + mu[None, :] - mu[:, None]
        nxt = np.where(np.abs(den) > 0.5, rhs / np.where(den == 0, 1, den), 0)
        P = nxt
        zm *= z
        term = P * zm
        psi = psi + term
        if m > 10 and np.abs(term).max() < 1e-18 * np.abs(psi).max():
            break
    zmu = np.diag(np.exp(mu * logz))
    return psi @ zmu @ expm(R * logz)


def origin_monodromy(k: int) -> np.ndarray:
    """Counter-clockwise monodromy of Y_0: exp(2 pi i mu) exp(2 pi i R).

    mu and R do not commute, and the matrix exponential of the sum
    is a different matrix; continuing z^mu z^R gives the product.
    """
    return np.diag(np.exp(2j * np.pi * mu_hat(k))) @ expm(2j * np.pi * levelt_R(k))


def loop_monodromy(k: int, Y_start: np.ndarray, radius: float, arg: float, rtol: float = 1e-12) -> np.ndarray:
    """M with Y(continued once counter-clockwise around 0) = Y_start M."""
    Y_end = ode_integrate(k, PathSpec.arc(radius, arg, arg + 2 * math.pi, rtol=rtol, atol=rtol * 1e-2), Y_start)
    return np.linalg.solve(Y_start, Y_end)
