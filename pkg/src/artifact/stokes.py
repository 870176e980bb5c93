"""Stokes factors, the k-th root of monodromy T and the Stokes matrix S.

Row and column labels in docstrings are 1-based to match the usual
matrix notation; storage in :class:`~artifact.exact.Mat` is 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Mat, anti_diagonal, binomial, mat_inv, permutation_matrix


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 3:
        raise ValueError(f"k must be an integer >= 3, got {k!r}")


@dataclass(frozen=True)
class StokesProblem:
    """Constant data of the system dY/dz = (U + mu_hat / z) Y for CP^{k-1}."""

    k: int
    d: int
    mu_hat: tuple[Fraction, ...]
    R_nilp: Mat
    eta: Mat

    @classmethod
    def for_k(cls, k: int) -> "StokesProblem":
        _check_k(k)
        mu = tuple(Fraction(k + 1 - 2 * n, 2) for n in range(1, k + 1))
        R = Mat([[k if j == i + 1 else 0 for j in range(k)] for i in range(k)])
        return cls(k=k, d=k - 1, mu_hat=mu, R_nilp=R, eta=anti_diagonal(k))

    def check(self) -> bool:
        mu = Mat.diag(self.mu_hat)
        return (
            sum(self.mu_hat) == 0
            and self.eta @ mu + mu @ self.eta == Mat.zeros(self.k)
            and self.R_nilp ** self.k == Mat.zeros(self.k)
        )


@lru_cache(maxsize=None)
def stokes_factors(k: int) -> tuple[Mat, Mat]:
    """The two seed factors (K_k2, K_k3)."""
    _check_k(k)
    top2 = (k + 1) // 2 if k % 2 else k // 2
    k2 = {(j - 1, k - j + 1): binomial(k, 2 * (j - 1)) for j in range(2, top2 + 1)}
    top3 = (k + 1) // 2 if k % 2 else k // 2 + 1
    k3 = {(j - 1, k - j + 2): binomial(k, 2 * j - 3) for j in range(3, top3 + 1)}
    k3[(1, 0)] = -k
    eye = Mat.identity(k)
    return eye.replace(k2), eye.replace(k3)


@lru_cache(maxsize=None)
def build_TF(k: int) -> Mat:
    """Formal cyclic matrix: 1 at (1, k) and -1 on the first subdiagonal."""
    _check_k(k)
    upd = {(0, k - 1): 1}
    upd.update({(j + 1, j): -1 for j in range(k - 1)})
    return Mat.zeros(k).replace(upd)


@lru_cache(maxsize=None)
def build_T(k: int) -> Mat:
    """T = (T_F^-1 K_k3 K_k2)^-1."""
    k2, k3 = stokes_factors(k)
    return mat_inv(mat_inv(build_TF(k)) @ k3 @ k2)


@lru_cache(maxsize=None)
def all_stokes_factors(k: int) -> tuple[Mat, ...]:
    """K_0 .. K_{k-1}, seeded by K_{k-1} = K_k2 and K_{k-2} = K_k3.

    The remaining factors follow from K_{m+2} = T_F^-1 K_m T_F.
    """
    k2, k3 = stokes_factors(k)
    tf = build_TF(k)
    tfi = mat_inv(tf)
    fac: dict[int, Mat] = {k - 1: k2, k - 2: k3}
    for m in range(k - 3, -1, -1):
        fac[m] = tf @ fac[m + 2] @ tfi
    return tuple(fac[m] for m in range(k))


def factor(k: int, m: int) -> Mat:
    """K_m for any integer m, extending the family by T_F conjugation."""
    base = all_stokes_factors(k)
    # r is whichever of k-2, k-1 has the parity of m
    r = k - 2 if (k - 2 - m) % 2 == 0 else k - 1
    p = (m - r) // 2
    tf = build_TF(k)
    return (tf ** (-p)) @ base[r] @ (tf**p)


def product(mats) -> Mat:
    it = iter(mats)
    acc = next(it)
    for m in it:
        acc = acc @ m
    return acc


def stokes_from_factors(k: int) -> Mat:
    return product(all_stokes_factors(k))


def closed_forms(k: int) -> tuple[Mat, Mat]:
    """The two equivalent closed expressions of S in terms of K_0, K_1 and
    of K_{k-2}, K_{k-1}, respectively."""
    fac = all_stokes_factors(k)
    tf = build_TF(k)
    tfi = mat_inv(tf)
    h = k // 2
    left = fac[0] @ fac[1] @ tfi
    right = tfi @ fac[k - 2] @ fac[k - 1]
    if k % 2 == 0:
        return left**h @ tf**h, tf**h @ right**h
    return left**h @ fac[0] @ tf**h, tf**h @ fac[k - 1] @ right**h


def _closed_S(k: int) -> Mat:
    tf = build_TF(k)
    t = build_T(k)
    k2, _ = stokes_factors(k)
    if k % 2 == 0:
        h = k // 2
        return tf**h @ t ** (-h)
    h = (k - 1) // 2
    return tf**h @ k2 @ t ** (-h)


@lru_cache(maxsize=None)
def build_S(k: int) -> Mat:
    """Stokes matrix S from the closed form.

    For k = 3 the product K_13 K_12 K_32 of the three individual factors is
    also formed and must agree.
    """
    s = _closed_S(k)
    if k == 3:
        k2, k3 = stokes_factors(3)
        k13 = Mat([[1, 0, 0], [0, 1, 0], [-3, 0, 1]])
        if k13 @ k3 @ k2 != s:
            raise AssertionError("k=3 factor product disagrees with closed form")
    return s


def precedes(k: int, i: int, j: int) -> bool:
    """Whether u_i comes before u_j in the order fixed by the admissible line.

    Uses the exact angle of R_ij in units of pi and eps = 1/(2k).
    """
    ang = Fraction(2 - i - j, k) + (1 if i > j else 0)
    ang %= 2
    eps = Fraction(1, 2 * k)
    return eps < ang < 1 + eps


@lru_cache(maxsize=None)
def lex_order(k: int) -> tuple[int, ...]:
    """1-based indices of u_1..u_k in lexicographic order."""
    _check_k(k)
    score = {i: sum(precedes(k, i, j) for j in range(1, k + 1) if j != i) for i in range(1, k + 1)}
    order = sorted(score, key=lambda i: -score[i])
    if sorted(score.values()) != list(range(k)):
        raise AssertionError("ordering relation is not total")
    return tuple(order)


def lex_permutation(k: int) -> Mat:
    return permutation_matrix(lex_order(k))


@lru_cache(maxsize=None)
def upper_S(k: int) -> Mat:
    p = lex_permutation(k)
    su = p @ build_S(k) @ p.T
    if not su.is_upper_unitriangular():
        raise AssertionError("P S P^-1 is not upper unitriangular")
    return su


def unit_column_index(k: int) -> int:
    """n(k), the 1-based index of the column of S equal to a basis vector."""
    _check_k(k)
    n = k // 2 + 1 if k % 2 == 0 else (k + 1) // 2
    s = build_S(k)
    if s.col(n - 1) != tuple(1 if i == n - 1 else 0 for i in range(k)):
        raise AssertionError(f"column {n} of S is not e_{n}")
    return n


@dataclass(frozen=True)
class Ray:
    r: int
    s: int
    angle_pi: Fraction  # exact part, in units of pi
    shift: float  # additional angle in radians from Im t^2

    @property
    def label(self) -> str:
        return f"R{self.r}{self.s}" if max(self.r, self.s) < 10 else f"R{self.r},{self.s}"

    @property
    def radians(self) -> float:
        a = float(self.angle_pi) * math.pi + self.shift
        a = math.remainder(a, 2 * math.pi)
        return math.pi if a <= -math.pi else a


@dataclass(frozen=True)
class RayDiagram:
    k: int
    epsilon_pi: Fraction
    im_t2: float
    rays: tuple[Ray, ...]

    def by_label(self) -> dict[tuple[int, int], Ray]:
        return {(r.r, r.s): r for r in self.rays}


def _normalize_pi(a: Fraction) -> Fraction:
    """Reduce an angle in units of pi into (-1, 1]."""
    a = a % 2
    return a - 2 if a > 1 else a


def stokes_rays(k: int, im_t2: float = 0.0) -> RayDiagram:
    """All ordered pairs (r, s), r != s.  For r < s the angle of R_rs is
    (2 - r - s) pi / k - im_t2 / k and R_sr is the opposite ray."""
    _check_k(k)
    rays = []
    shift = -float(im_t2) / k
    for r in range(1, k + 1):
        for s in range(1, k + 1):
            if r == s:
                continue
            base = Fraction(2 - r - s, k) + (1 if r > s else 0)
            rays.append(Ray(r, s, _normalize_pi(base), shift))
    return RayDiagram(k=k, epsilon_pi=Fraction(1, 2 * k), im_t2=float(im_t2), rays=tuple(rays))


def distinct_ray_angles(diagram: RayDiagram) -> list[Fraction]:
    """The 2k distinct directions (exact part only)."""
    return sorted({r.angle_pi for r in diagram.rays})


@dataclass(frozen=True)
class StokesData:
    problem: StokesProblem
    K_k2: Mat
    K_k3: Mat
    T_F: Mat
    T: Mat
    S: Mat
    P: Mat
    S_upper: Mat
    factors: tuple[Mat, ...]


@lru_cache(maxsize=None)
def stokes_data(k: int) -> StokesData:
    k2, k3 = stokes_factors(k)
    return StokesData(
        problem=StokesProblem.for_k(k),
        K_k2=k2,
        K_k3=k3,
        T_F=build_TF(k),
        T=build_T(k),
        S=build_S(k),
        P=lex_permutation(k),
        S_upper=upper_S(k),
        factors=all_stokes_factors(k),
    )
