"""Formal solutions at infinity and the asymptotics of g^(n).

The formal fundamental matrix is X F(z) z^-mu e^{U z} with
F = I + F_1/z + ... ; its first row gives the formal expansions of the
scalar solutions

    phi^(j)(z) ~ z^(-(k-1)/2) e^(u_j z) sum_n (X F_n)_{1j} z^(-n).

The series diverges, so it is summed to the smallest term of its envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

from .mellin import QuadratureConfig, mellin_barnes_g, working_dps
from .spectral import spectral_data_mp


def formal_coefficients(k: int, order: int) -> tuple[list, list]:
    """(u, rows) with rows[n][j] = (X F_n)[0, j] for n = 0..order, at the
    current mpmath precision.

    F_{n+1} solves [U, F_{n+1}] = (V + n) F_n off the diagonal; the diagonal
    is fixed by requiring the diagonal of (V + n + 1) F_{n+1} to vanish.
    """
    return _formal_cached(k, order, mp.mp.prec)


@lru_cache(maxsize=32)
def _formal_cached(k: int, order: int, prec: int):
    X, V, u = spectral_data_mp(k)
    F = mp.eye(k)
    rows = [[(X * F)[0, j] for j in range(k)]]
    for n in range(order):
        VF = (V + n * mp.eye(k)) * F
        G = mp.matrix(k, k)
        for a in range(k):
            for b in range(k):
                if a != b:
                    G[a, b] = VF[a, b] / (u[b] - u[a])
        for a in range(k):
            G[a, a] = -mp.fsum(V[a, c] * G[c, a] for c in range(k) if c != a) / (n + 1)
        F = G
        rows.append([(X * F)[0, j] for j in range(k)])
    return u, rows


def orders_needed(k: int, z_abs: float) -> int:
    """Enough orders to pass the smallest term, which sits near
    n = |u_i - u_j| |z| for the closest pair of exponents."""
    return int(1.6 * 2 * k * math.sin(math.pi / k) * z_abs) + 10


@dataclass(frozen=True)
class FormalValue:
    value: object
    leading: object
    order: int  # number of the last term kept
    last_term: float  # size of the envelope at the cut, relative to the leading term


def phi_formal(k: int, j: int, z_abs, arg, rows=None, u=None) -> FormalValue:
    """Optimally truncated formal expansion of phi^(j) at z = z_abs e^(i arg)."""
    if rows is None:
        u, rows = formal_coefficients(k, orders_needed(k, float(z_abs)))
    logz = mp.log(z_abs) + 1j * mp.mpf(arg)
    pre = mp.exp(-(mp.mpf(k - 1) / 2) * logz + u[j - 1] * mp.exp(logz))
    t = [r[j - 1] * mp.exp(-n * logz) for n, r in enumerate(rows)]
    env = [max(abs(t[n]), abs(t[n + 1])) for n in range(len(t) - 1)]
    nopt = min(range(1, len(env)), key=lambda n: env[n])
    return FormalValue(
        value=pre * mp.fsum(t[: nopt + 1]),
        leading=pre * t[0],
        order=nopt,
        last_term=float(env[nopt] / abs(t[0])),
    )


def leading_asymptotic(k: int, n: int, z_abs, arg):
    """k^(-1/2) e^(i pi (n-1)/k) z^(-(k-1)/2) exp(u_n z), with the
    z power taken on the branch given by arg."""
    with mp.workdps(max(mp.mp.dps, 30)):
        logz = mp.log(z_abs) + 1j * mp.mpf(arg)
        u = k * mp.expjpi(mp.mpf(2 * (n - 1)) / k)
        return mp.expjpi(mp.mpf(n - 1) / k) / mp.sqrt(k) * mp.exp(
            -(mp.mpf(k - 1) / 2) * logz + u * mp.exp(logz)
        )


@dataclass(frozen=True)
class AsymptoticCheck:
    k: int
    n: int
    z_abs: float
    arg: float
    g: complex
    leading_error: float  # |g / leading - 1|
    full_error: float  # |g / optimally truncated series - 1|
    order: int


def asymptotic_check(k: int, n: int, z_abs: float, arg: float, cfg: QuadratureConfig | None = None) -> AsymptoticCheck:
    """Compare g^(n) from the line integral with its expansion at infinity.

    arg must lie in the sector where g^(n) is the exp(u_n z) solution.
    """
    cfg = cfg or QuadratureConfig()
    g = mellin_barnes_g(k, n, z_abs, arg, cfg)
    with mp.workdps(working_dps(k, z_abs, cfg.digits)):
        fv = phi_formal(k, n, mp.mpf(z_abs), arg)
        lead = leading_asymptotic(k, n, mp.mpf(z_abs), arg)
        return AsymptoticCheck(
            k=k,
            n=n,
            z_abs=z_abs,
            arg=arg,
            g=complex(g),
            leading_error=float(abs(g / lead - 1)),
            full_error=float(abs(g / fv.value - 1)),
            order=fv.order,
        )
