"""Numerical Stokes matrix and cyclic monodromy from the g^(n) solutions.

The canonical bases phi_L, phi_R are fitted as combinations of
g^(1)..g^(k) against their optimally truncated formal expansions,
sampled on the bisectors of the sub-sectors of S_L = (0, pi + pi/k) and
S_R = (-pi, pi/k) at several radii.  Bisectors keep the samples away from
the Stokes rays, where the exponentially small terms the formal series
misses would bias the fit.  Fundamental matrices are then assembled
column by column from

    Y_n^(j)(z) = k^(1-n) z^((k-1)/2 - n + 1) (z d/dz)^(n-1) phi^(j)(z)

and continued into the overlap 0 < arg z < pi/k by ode_integrate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from ..exact import Mat, mat_inv
from ..stokes import build_S, build_T, unit_column_index
from .formal import formal_coefficients, orders_needed, phi_formal
from .mellin import g_all_derivatives
from .ode import PathSpec, ode_integrate


class NumericToleranceError(RuntimeError):
    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class NumericConfig:
    tol: float | None = None  # None: 1e-5 for k <= 4, 1e-4 above
    precision_bits: int | None = None  # None: chosen from k and the radii
    radii: tuple[float, ...] = (9.0, 11.0, 13.0)
    seed_radius: float = 1.0
    rtol: float = 1e-12
    escalate: bool = True

    def tolerance(self, k: int) -> float:
        if self.tol is not None:
            return self.tol
        return 1e-5 if k <= 4 else 1e-4

    def dps(self, k: int) -> int:
        if self.precision_bits:
            return max(15, int(self.precision_bits * math.log10(2)))
        return int(30 + 2 * k * max(self.radii) / math.log(10))

    def escalated(self) -> "NumericConfig":
        radii = tuple(r + 2 for r in self.radii)
        bits = int(self.precision_bits * 1.5) if self.precision_bits else None
        return NumericConfig(self.tol, bits, radii, self.seed_radius, self.rtol, False)


def bisector_angles(k: int, lo, hi) -> list:
    out = []
    p = 0
    while lo + (2 * p + 1) * mp.pi / (2 * k) < hi:
        out.append(lo + (2 * p + 1) * mp.pi / (2 * k))
        p += 1
    return out


def derivative_table(k: int, z_abs, arg, nmax: int) -> mp.matrix:
    """D[r, m-1] = (z d/dz)^r g^(m)(z), r = 0..nmax, at the current precision."""
    D = mp.matrix(nmax + 1, k)
    for m in range(1, k + 1):
        vals = g_all_derivatives(k, m, mp.mpf(z_abs), arg, nmax)
        for r in range(nmax + 1):
            D[r, m - 1] = vals[r]
    return D


def fit_basis(k: int, lo, hi, radii) -> mp.matrix:
    """C with phi^(j) = sum_m C[m-1, j-1] g^(m) on the sector (lo, hi)."""
    u, rows = formal_coefficients(k, orders_needed(k, max(radii)))
    pts = [(mp.mpf(r), a) for r in radii for a in bisector_angles(k, lo, hi)]
    if len(pts) < k:
        raise ValueError("sector misconfiguration: fewer sample points than unknowns")
    basis = [derivative_table(k, r, a, 0) for r, a in pts]
    C = mp.matrix(k, k)
    for j in range(1, k + 1):
        A = mp.matrix(len(pts), k)
        b = mp.matrix(len(pts), 1)
        for i, (r, a) in enumerate(pts):
            f = phi_formal(k, j, r, a, rows, u).value
            w = 1 / abs(f)  # relative residuals
            for m in range(k):
                A[i, m] = basis[i][0, m] * w
            b[i] = f * w
        x, _ = mp.qr_solve(A, b)
        for m in range(k):
            C[m, j - 1] = x[m]
    return C


def fundamental_matrix(k: int, C: mp.matrix, z_abs, arg) -> np.ndarray:
    """Y(z) built from the basis phi = g C via the entries formula."""
    D = derivative_table(k, z_abs, arg, k - 1) * C
    logz = mp.log(z_abs) + 1j * mp.mpf(arg)
    Y = np.empty((k, k), dtype=complex)
    for n in range(1, k + 1):
        pref = mp.exp((mp.mpf(k - 1) / 2 - n + 1) * logz) / mp.mpf(k) ** (n - 1)
        for j in range(k):
            Y[n - 1, j] = complex(pref * D[n - 1, j])
    return Y


def _to_np(m: mp.matrix) -> np.ndarray:
    return np.array([[complex(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])


def exact_np(m: Mat) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m.tolist()], dtype=complex)


def _inf_err(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max())


@dataclass
class StokesResult:
    k: int
    S_num: np.ndarray
    err: float  # spread of S_num over the sample points
    error_vs_exact: float
    structural_error: float  # entries that are exactly 0 or 1 in S
    S_direct: np.ndarray  # C_R^-1 C_L, without the ODE step
    direct_error: float
    samples: list = field(default_factory=list)
    C_L: object = None
    C_R: object = None
    dps: int = 0

    def ok(self, tol: float) -> bool:
        return self.error_vs_exact <= tol


def _sample_args(k: int) -> list[float]:
    return [math.pi / (4 * k), math.pi / (2 * k), 3 * math.pi / (4 * k)]


def _stokes_once(k: int, cfg: NumericConfig) -> StokesResult:
    dps = cfg.dps(k)
    with mp.workdps(dps):
        C_L = fit_basis(k, mp.mpf(0), mp.pi + mp.pi / k, cfg.radii)
        C_R = fit_basis(k, -mp.pi, mp.pi / k, cfg.radii)
        S_direct = _to_np(mp.inverse(C_R) * C_L)
        rho = cfg.seed_radius
        seed_L = math.pi / 2 + math.pi / (2 * k)
        seed_R = -math.pi / 2 + math.pi / (2 * k)
        Y_L = fundamental_matrix(k, C_L, mp.mpf(rho), seed_L)
        Y_R = fundamental_matrix(k, C_R, mp.mpf(rho), seed_R)
    samples = []
    for a in _sample_args(k):
        yl = ode_integrate(k, PathSpec.arc(rho, seed_L, a, rtol=cfg.rtol, atol=cfg.rtol * 1e-2), Y_L)
        yr = ode_integrate(k, PathSpec.arc(rho, seed_R, a, rtol=cfg.rtol, atol=cfg.rtol * 1e-2), Y_R)
        samples.append(np.linalg.solve(yr, yl))
    S_num = samples[len(samples) // 2]
    spread = max(_inf_err(s, S_num) for s in samples)
    S_ex = exact_np(build_S(k))
    mask = (S_ex == 0) | (S_ex == 1)
    return StokesResult(
        k=k,
        S_num=S_num,
        err=spread,
        error_vs_exact=max(_inf_err(s, S_ex) for s in samples),
        structural_error=float(max(np.abs(s - S_ex)[mask].max() for s in samples)),
        S_direct=S_direct,
        direct_error=_inf_err(S_direct, S_ex),
        samples=samples,
        C_L=C_L,
        C_R=C_R,
        dps=dps,
    )


def numeric_stokes(k: int, cfg: NumericConfig | None = None, check: bool = True) -> StokesResult:
    """S_num = Y_R^-1 Y_L in the overlap sector, compared with the exact S."""
    if k < 3:
        raise ValueError("k must be >= 3")
    cfg = cfg or NumericConfig()
    res = _stokes_once(k, cfg)
    tol = cfg.tolerance(k)
    if not res.ok(tol) and cfg.escalate:
        res = _stokes_once(k, cfg.escalated())
    if check and not res.ok(tol):
        raise NumericToleranceError(
            f"k={k}: |S_num - S| = {res.error_vs_exact:.3g} > {tol:g} "
            f"(sample spread {res.err:.3g}, direct {res.direct_error:.3g}, {res.dps} digits)",
            res,
        )
    return res


@dataclass
class MonodromyResult:
    k: int
    T_num: np.ndarray
    error_vs_exact: float
    power_error: float  # (-1)^(k-1) T_num^k against S^-1 S^T
    loop_error: float  # ODE loop of Y_L against (-1)^(k-1) T_num^k
    loop_monodromy: np.ndarray = None

    def ok(self, tol: float) -> bool:
        return max(self.error_vs_exact, self.power_error, self.loop_error) <= tol


def numeric_cyclic_monodromy(
    k: int, cfg: NumericConfig | None = None, C_L=None, check: bool = True
) -> MonodromyResult:
    """T_num from Y_L(z)^-1 Y_L(z e^(2 pi i / k)), with the z power of the
    entries formula divided out, plus the full loop around the origin."""
    cfg = cfg or NumericConfig()
    dps = cfg.dps(k)
    rho = cfg.seed_radius * 2
    a0 = math.pi / (2 * k)
    with mp.workdps(dps):
        if C_L is None:
            C_L = fit_basis(k, mp.mpf(0), mp.pi + mp.pi / k, cfg.radii)
        W1 = derivative_table(k, mp.mpf(rho), a0, k - 1) * C_L
        W2 = derivative_table(k, mp.mpf(rho), a0 + 2 * mp.pi / k, k - 1) * C_L
        T_num = _to_np(mp.inverse(W1) * W2)
        Y_L = fundamental_matrix(k, C_L, mp.mpf(cfg.seed_radius), a0)
    T_ex = exact_np(build_T(k))
    S = build_S(k)
    target = exact_np(mat_inv(S) @ S.T)
    Tk = (-1) ** (k - 1) * np.linalg.matrix_power(T_num, k)
    path = PathSpec.arc(cfg.seed_radius, a0, a0 + 2 * math.pi, rtol=cfg.rtol, atol=cfg.rtol * 1e-2)
    M = np.linalg.solve(Y_L, ode_integrate(k, path, Y_L))
    res = MonodromyResult(
        k=k,
        T_num=T_num,
        error_vs_exact=_inf_err(T_num, T_ex),
        power_error=_inf_err(Tk, target) / max(1.0, float(np.abs(target).max())),
        loop_error=_inf_err(M, Tk) / max(1.0, float(np.abs(Tk).max())),
        loop_monodromy=M,
    )
    tol = cfg.tolerance(k)
    if check and res.error_vs_exact > tol:
        raise NumericToleranceError(f"k={k}: |T_num - T| = {res.error_vs_exact:.3g} > {tol:g}", res)
    return res


def unit_column_error(res: StokesResult) -> float:
    """Deviation of the column of S_num that must equal a basis vector."""
    n = unit_column_index(res.k)
    e = np.zeros(res.k)
    e[n - 1] = 1
    return float(np.abs(res.S_num[:, n - 1] - e).max())


def coverage_columns_k7() -> dict[int, list[int]]:
    """Integer coefficients of phi_R^(2), phi_R^(3) in the basis g^(1..7) for
    k = 7, from g = g^(4) and g(z e^(2 pi i m / 7)) = (-1)^m g^(4+m)(z):

        phi_R^(2) = g(z e^-4pi i/7) - 7 g(z e^-2pi i/7) + 21 g(z) - 35 g(z e^2pi i/7) + 35 g(z e^4pi i/7)
        phi_R^(3) = -g(z e^-2pi i/7) + 7 g(z) - 21 g(z e^2pi i/7)
    """

    def expand(terms):
        col = [0] * 7
        for m, c in terms:
            col[4 + m - 1] += c * (-1) ** abs(m)
        return col

    return {
        2: expand([(-2, 1), (-1, -7), (0, 21), (1, -35), (2, 35)]),
        3: expand([(-1, -1), (0, 7), (1, -21)]),
    }


def sector_coverage_k7(cfg: NumericConfig | None = None) -> dict[int, float]:
    """Max deviation of the fitted C_R columns 2 and 3 from the integer tables."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps(7)):
        C_R = fit_basis(7, -mp.pi, mp.pi / 7, cfg.radii)
    out = {}
    for j, col in coverage_columns_k7().items():
        out[j] = max(abs(complex(C_R[m, j - 1]) - col[m]) for m in range(7))
    return out
