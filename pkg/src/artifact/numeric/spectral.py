"""Eigen-frame of the constant part of the system: U, X and V = X^-1 mu X."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np


def u_values(k: int) -> np.ndarray:
    return np.array([k * np.exp(2j * np.pi * n / k) for n in range(k)])


def U_hat(k: int) -> np.ndarray:
    """k times the cyclic shift: ones at (n, n+1) and at (k, 1)."""
    m = np.zeros((k, k), dtype=complex)
    for n in range(k - 1):
        m[n, n + 1] = k
    m[k - 1, 0] = k
    return m


def mu_hat(k: int) -> np.ndarray:
    return np.array([(k + 1 - 2 * n) / 2 for n in range(1, k + 1)])


def eta(k: int) -> np.ndarray:
    return np.fliplr(np.eye(k))


@dataclass(frozen=True)
class SpectralData:
    k: int
    u: np.ndarray
    X: np.ndarray
    V: np.ndarray

    @property
    def U(self) -> np.ndarray:
        return np.diag(self.u)

    def residuals(self) -> dict[str, float]:
        xi = np.linalg.inv(self.X)
        return {
            "X^-1 U_hat X - U": float(np.abs(xi @ U_hat(self.k) @ self.X - self.U).max()),
            "V + V^T": float(np.abs(self.V + self.V.T).max()),
            "X X^T - eta^-1": float(np.abs(self.X @ self.X.T - np.linalg.inv(eta(self.k))).max()),
        }


def spectral_data(k: int, tol: float = 1e-12) -> SpectralData:
    X = np.array(
        [[np.exp(1j * np.pi * (2 * j - 1) * (n - 1) / k) / np.sqrt(k) for n in range(1, k + 1)] for j in range(1, k + 1)]
    )
    V = np.linalg.solve(X, np.diag(mu_hat(k)) @ X)
    sd = SpectralData(k=k, u=u_values(k), X=X, V=V)
    bad = {name: r for name, r in sd.residuals().items() if r > tol}
    if bad:
        raise AssertionError(f"spectral invariants violated: {bad}")
    return sd


def spectral_data_mp(k: int) -> tuple[mp.matrix, mp.matrix, list]:
    """(X, V, u) at the current mpmath precision."""
    X = mp.matrix(k, k)
    for j in range(1, k + 1):
        for n in range(1, k + 1):
            X[j - 1, n - 1] = mp.expjpi(mp.mpf((2 * j - 1) * (n - 1)) / k) / mp.sqrt(k)
    mu = mp.diag([mp.mpf(k + 1 - 2 * n) / 2 for n in range(1, k + 1)])
    V = mp.inverse(X) * mu * X
    u = [k * mp.expjpi(mp.mpf(2 * (n - 1)) / k) for n in range(1, k + 1)]
    return X, V, u
