"""The integral solutions g^(n)(z) of (z d/dz)^k phi = (k z)^k phi.

    g^(n)(z) = C_n * integral over Re s = -c of Gamma(-s)^k w^(k s) ds,
    log w = log|z| + i (arg z + pi (2n - 2 - k) / k),
    C_n = 1 / ((2 pi)^((k+1)/2) exp(i pi (k/2 - n - 1))).

The line integral converges for |arg w| < pi/2, i.e. arg z in
D_n = (pi/2 - 2(n-1)pi/k, 3pi/2 - 2(n-1)pi/k).  Closing the contour to the
right gives a residue series that converges for every branch of log z;
it is used both as a cross-check and as the continuation of g^(n) outside
D_n.  The argument of z is always passed explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import mpmath as mp


class SectorError(ValueError):
    """Requested point lies outside the convergence sector of the line integral."""


class TruncationError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureConfig:
    c: float = 0.5
    eta_max: float | None = None  # None: from the tail bound
    nodes: int | None = None  # None: from the strip-width estimate
    precision_bits: int | None = None  # None: chosen from k |z|
    method: str = "trapezoid"  # trapezoid | tanh-sinh | residue | auto
    digits: int = 30  # target accuracy of the result, in decimal digits

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.nodes is not None and self.nodes < 2:
            raise ValueError("need at least two nodes")
        if self.method not in ("trapezoid", "tanh-sinh", "residue", "auto"):
            raise ValueError(f"unknown method {self.method!r}")


def norm_const(k: int, n: int):
    return 1 / ((2 * mp.pi) ** (mp.mpf(k + 1) / 2) * mp.expjpi(mp.mpf(k) / 2 - n - 1))


def log_w(k: int, n: int, z_abs, arg):
    return mp.log(z_abs) + 1j * (mp.mpf(arg) + mp.pi * (2 * n - 2 - k) / k)


def in_domain(k: int, n: int, arg: float, margin: float = 0.0) -> bool:
    lo = math.pi / 2 - 2 * (n - 1) * math.pi / k
    return lo + margin < arg < lo + math.pi - margin


def working_dps(k: int, z_abs: float, digits: int = 30, nder: int = 0) -> int:
    """Decimal digits that absorb the cancellation between terms of size
    exp(k |z|) and results as small as exp(-k |z|)."""
    return int(digits + 10 + 2 * k * z_abs / math.log(10) + nder * math.log10(k * z_abs + 2))


def residue_series(k: int, lw, nders: Sequence[int] = (0,)) -> list:
    """Line integral of Gamma(-s)^k exp(k s lw) (k s)^m for each m in nders,
    summed as -2 pi i times the residues at s = 0, 1, 2, ...

    The residue at s = j is the coefficient of e^(k-1) in
    (-1)^(k(j+1)) (pi e / sin pi e)^k Gamma(1+j+e)^-k x^(j+e) (k(j+e))^m,
    with log x = k lw.
    """
    lx = k * lw
    A = mp.taylor(lambda e: (mp.pi * e / mp.sin(mp.pi * e)) ** k if e != 0 else mp.mpf(1), 0, k - 1)
    E = [lx**m / mp.factorial(m) for m in range(k)]
    AE = [mp.fsum(A[a] * E[m - a] for a in range(m + 1)) for m in range(k)]
    zeta = [None, None] + [mp.zeta(m) for m in range(2, k)]
    H = [mp.mpf(0)] * k  # H[p] = sum_{i <= j} i^-p
    totals = [mp.mpc(0) for _ in nders]
    biggest = mp.mpf(0)
    thresh = mp.mpf(10) ** (-mp.mp.dps - 3)
    lw_abs = abs(mp.exp(mp.re(lw)))
    logfact = mp.mpf(0)
    j = 0
    while True:
        c = [mp.mpf(0)] * k
        if k > 1:
            c[1] = -mp.euler + H[1]
        for m in range(2, k):
            c[m] = (-1) ** m * (zeta[m] - H[m]) / m
        B = [mp.mpf(1)] + [mp.mpf(0)] * (k - 1)
        for m in range(1, k):
            B[m] = mp.fsum(q * (-k * c[q]) * B[m - q] for q in range(1, m + 1)) / m
        pref = (-1) ** (k * (j + 1)) * mp.exp(j * lx - k * logfact)
        small = True
        for idx, nd in enumerate(nders):
            D = [mp.mpf(0)] * k
            for m in range(min(nd, k - 1) + 1):
                D[m] = math.comb(nd, m) * mp.mpf(k) ** nd * mp.mpf(j) ** (nd - m)
            BD = [mp.fsum(B[a] * D[m - a] for a in range(m + 1)) for m in range(k)]
            coef = mp.fsum(BD[a] * AE[k - 1 - a] for a in range(k))
            term = pref * coef
            totals[idx] += term
            biggest = max(biggest, abs(term))
            if abs(term) > thresh * biggest:
                small = False
        if small and j > lw_abs + 5:
            break
        j += 1
        if j > 100000:
            raise TruncationError("residue series did not converge")
        logfact += mp.log(j)
        for p in range(1, k):
            H[p] += mp.mpf(1) / mp.mpf(j) ** p
    return [-2j * mp.pi * t for t in totals]


def _integrand(k, lw, c, nder):
    def f(eta):
        s = -c + 1j * eta
        val = mp.exp(k * mp.loggamma(-s) + k * s * lw) * 1j
        if nder:
            val *= (k * s) ** nder
        return val

    return f


def _tail_height(k, lw, c, nder, digits) -> float:
    """Height beyond which the integrand is below 10^-digits of its scale.

    |Gamma(c - i eta)| <= sqrt(2 pi) (1+|eta|)^(c - 1/2) exp(-pi |eta| / 2) e^(1/6)
    and |exp(k s lw)| = |w|^(-k c) exp(-k eta Im lw).
    """
    th = float(mp.im(lw))
    alpha = k * (math.pi / 2 - abs(th))
    if alpha <= 0:
        raise SectorError("z outside the convergence sector of the line integral")
    target = digits * math.log(10) + k * 1.2
    h = target / alpha
    for _ in range(50):
        poly = k * max(c - 0.5, 0) * math.log1p(h) + nder * math.log(k * (h + c) + 1)
        h_new = (target + poly - math.log(alpha)) / alpha
        if abs(h_new - h) < 1e-6:
            break
        h = h_new
    return max(h, 1.0)


def line_integral(k: int, lw, cfg: QuadratureConfig, nder: int = 0, digits: float | None = None):
    """Integral along Re s = -c by the trapezoid rule or by tanh-sinh.

    ``digits`` is the absolute accuracy wanted, in decimal digits relative
    to |w|^(-k c); it defaults to the working precision.
    """
    th = float(mp.im(lw))
    if abs(th) >= math.pi / 2:
        raise SectorError("z outside the convergence sector of the line integral")
    c = mp.mpf(cfg.c)
    f = _integrand(k, lw, c, nder)
    digits = min(digits or mp.mp.dps, mp.mp.dps)
    eta_max = cfg.eta_max or _tail_height(k, lw, cfg.c, nder, digits)
    if cfg.method == "tanh-sinh":
        pts = [-eta_max] + [x for x in (-20, -5, 0, 5, 20) if abs(x) < eta_max] + [eta_max]
        return mp.quad(f, pts)
    if cfg.nodes:
        n = cfg.nodes
        h = mp.mpf(2 * eta_max) / (n - 1)
    else:
        # poles of Gamma(-s) sit at distance c below the line; the factor
        # |w|^(k y) bounds the growth inside the strip of half-width y
        width = 0.9 * cfg.c
        lnw = abs(float(mp.re(lw)))
        h = mp.mpf(2 * math.pi * width) / (digits * math.log(10) + k * width * lnw + 10)
        n = int(2 * eta_max / h) + 1
    total = mp.fsum(f(-eta_max + i * h) for i in range(n))
    ends = (f(-eta_max) + f(-eta_max + (n - 1) * h)) / 2
    return h * (total - ends)


def mellin_barnes_g(
    k: int,
    n: int,
    z_abs: float,
    arg: float,
    cfg: QuadratureConfig | None = None,
    nder: int = 0,
):
    """(z d/dz)^nder g^(n)(z) at z = z_abs * exp(i arg), as an mpmath complex.

    Uses the precision in cfg, or a precision chosen from k |z| if none is
    given.  With method "auto" the line integral is used inside D_n and the
    residue series elsewhere.
    """
    cfg = cfg or QuadratureConfig()
    dps = _dps(cfg, k, z_abs, nder)
    with mp.workdps(dps):
        lw = log_w(k, n, mp.mpf(z_abs), arg)
        method = cfg.method
        if method == "auto":
            method = "trapezoid" if abs(float(mp.im(lw))) < math.pi / 2 - 0.05 else "residue"
        if method == "residue":
            val = residue_series(k, lw, (nder,))[0]
        else:
            # the result can be exp(-k|z|) times the size of the integrand
            need = cfg.digits + k * z_abs / math.log(10) + 5
            val = line_integral(k, lw, replace(cfg, method=method), nder, need)
        return +(norm_const(k, n) * val)


def _dps(cfg: QuadratureConfig, k: int, z_abs: float, nder: int) -> int:
    if cfg.precision_bits:
        return max(15, int(cfg.precision_bits * math.log10(2)))
    return working_dps(k, z_abs, cfg.digits, nder)


def g_all_derivatives(k: int, n: int, z_abs, arg, nmax: int) -> list:
    """[(z d/dz)^m g^(n)(z) for m = 0..nmax] from one residue sweep, at the
    current mpmath precision."""
    lw = log_w(k, n, z_abs, arg)
    vals = residue_series(k, lw, tuple(range(nmax + 1)))
    cn = norm_const(k, n)
    return [cn * v for v in vals]


def cyclic_identity_terms(k: int, n: int, z_abs: float, arg: float, cfg: QuadratureConfig | None = None) -> list:
    """Terms (-1)^(m-k) C(k, m) g^(n)(z e^(2 pi i m / k)), m = 0..k."""
    cfg = cfg or QuadratureConfig(method="auto")
    out = []
    for m in range(k + 1):
        val = mellin_barnes_g(k, n, z_abs, arg + 2 * math.pi * m / k, cfg)
        out.append((-1) ** (m - k) * math.comb(k, m) * val)
    return out


def cyclic_identity_residual(k: int, n: int, z_abs: float, arg: float, cfg: QuadratureConfig | None = None) -> float:
    terms = cyclic_identity_terms(k, n, z_abs, arg, cfg)
    with mp.workdps(60):
        return float(abs(mp.fsum(terms)) / max(abs(t) for t in terms))
