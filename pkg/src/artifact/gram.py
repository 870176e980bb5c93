"""Euler-form Gram matrices on CP^d and the symmetric form G = (S + S^T)/2."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .braid import (
    alternating_signs,
    binomial_canonical,
    inverse_canonical,
    to_canonical,
    zaslow_identity_check,
)
from .exact import Mat, binomial, kernel_vector, mat_inv, rank


def gram_chi(d: int) -> Mat:
    """chi(O(i-1), O(j-1)) = C(d + j - i, j - i) for the collection O, ..., O(d)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = d + 1
    return Mat([[binomial(d + j - i, j - i) if j >= i else 0 for j in range(n)] for i in range(n)])


def gram_chi_inverse(d: int) -> Mat:
    n = d + 1
    inv = Mat([[(-1) ** (j - i) * binomial(d + 1, j - i) if j >= i else 0 for j in range(n)] for i in range(n)])
    if gram_chi(d) @ inv != Mat.identity(n):
        raise AssertionError("closed-form inverse is wrong")
    return inv


@dataclass(frozen=True)
class GramData:
    k: int
    G: Mat
    rank: int
    kernel: tuple[int, ...] | None = field(default=None)

    @property
    def two_G(self) -> Mat:
        return self.G * 2


def gram_from_stokes(s: Mat) -> GramData:
    g = (s + s.T) * Fraction(1, 2)
    r = rank(g)
    ker = kernel_vector(g) if r < s.n else None
    return GramData(k=s.n, G=g, rank=r, kernel=ker)


@dataclass
class Report:
    """Ordered list of named pass/fail checks."""

    title: str
    items: list[tuple[str, bool]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool) -> bool:
        self.items.append((name, bool(ok)))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.items)

    def lines(self) -> list[str]:
        out = [self.title]
        out += [f"  {name}: {'PASS' if v else 'FAIL'}" for name, v in self.items]
        out += [f"  note: {n}" for n in self.notes]
        return out


def verify_main_theorem(k: int) -> Report:
    """Chain S_upper ~ C(k, j-i) form ~ chi^-1 ~ chi under braids and signs."""
    rep = Report(f"canonical form, k={k}")
    target = binomial_canonical(k)
    s_can, cert, signs = to_canonical(k)
    rep.add("braid certificate A S A^T", cert.check())
    rep.add("forward form after sign change is C(k, j-i)", signs.conjugate(s_can) == target)
    s_inv, cert2, signs2 = inverse_canonical(k)
    rep.add("inverse braid certificate", cert2.check())
    rep.add("inverse form after sign change is C(k, j-i)", signs2.conjugate(s_inv) == target)
    alt = alternating_signs(k).conjugate(target)
    rep.add("alternating form equals chi^-1 for d=k-1", alt == gram_chi_inverse(k - 1))
    chi = gram_chi(k - 1)
    try:
        z = zaslow_identity_check(chi)
        rep.add("braided chi^-1 equals flipped chi^T", True)
        rep.add("braided chi^-1 equals chi", z.S_after == chi)
    except AssertionError:
        rep.add("braided chi^-1 equals flipped chi^T", False)
    rep.add("chi chi^-1 = I", chi @ mat_inv(chi) == Mat.identity(k))
    return rep
