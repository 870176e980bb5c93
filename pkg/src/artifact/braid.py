"""Braid group action on upper unitriangular Stokes matrices.

A generator (i, +1) is beta_{i,i+1} and (i, -1) is sigma_{i,i+1}, its
inverse.  Indices are 1-based.  A word is folded from the left: each
generator's elementary matrix is built from the current S, then
S <- a S a^T and A <- a A.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exact import Mat, anti_diagonal, binomial, mat_inv
from .stokes import upper_S


@dataclass(frozen=True)
class BraidGenerator:
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.index < 1:
            raise ValueError("generator index must be >= 1")

    def inverse(self) -> "BraidGenerator":
        return BraidGenerator(self.index, -self.sign)

    def token(self) -> str:
        i = self.index
        pair = f"{i}{i + 1}" if i + 1 < 10 else f"{i},{i + 1}"
        return ("b" if self.sign > 0 else "s") + pair


_TOKEN = re.compile(r"^([bsBS])(\d+)(?:[,_](\d+))?$")


class BraidParseError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    generators: tuple[BraidGenerator, ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "BraidWord":
        return cls(tuple(BraidGenerator(i, s) for i, s in pairs))

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        """Parse whitespace separated tokens such as ``b23 s45 b9,10``.

        The digits name the pair (i, i+1); a bare index ``b3`` is also
        accepted when it cannot be read as a pair.
        """
        gens = []
        for tok in text.replace("(", " ").replace(")", " ").split():
            m = _TOKEN.match(tok)
            if not m:
                raise BraidParseError(f"bad braid token {tok!r}")
            sign = 1 if m.group(1).lower() == "b" else -1
            a, b = m.group(2), m.group(3)
            if b is not None:
                i, j = int(a), int(b)
                if j != i + 1:
                    raise BraidParseError(f"token {tok!r} does not name adjacent indices")
            else:
                i = _split_pair(a)
                if i is None:
                    raise BraidParseError(f"token {tok!r} does not name adjacent indices")
            gens.append(BraidGenerator(i, sign))
        return cls(tuple(gens))

    def __str__(self) -> str:
        return " ".join(g.token() for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.generators + other.generators)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple(g.inverse() for g in reversed(self.generators)))


def _split_pair(digits: str) -> int | None:
    for cut in range(1, len(digits)):
        i, j = int(digits[:cut]), int(digits[cut:])
        if j == i + 1 and not digits[cut:].startswith("0"):
            return i
    if len(digits) == 1 and int(digits) >= 1:
        return int(digits)
    return None


@dataclass(frozen=True)
class BraidCertificate:
    word: BraidWord
    A: Mat
    S_before: Mat
    S_after: Mat

    def check(self) -> bool:
        return self.A @ self.S_before @ self.A.T == self.S_after


@dataclass(frozen=True)
class SignMatrix:
    diag: tuple[int, ...]

    def matrix(self) -> Mat:
        return Mat.diag(self.diag)

    def conjugate(self, s: Mat) -> Mat:
        m = self.matrix()
        return m @ s @ m


def elementary_matrix(s: Mat, i: int, sign: int) -> Mat:
    n = s.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    a, b = i - 1, i
    sij = s[a, b]
    upd = {(a, b): 1, (b, a): 1}
    if sign > 0:
        upd[(a, a)] = 0
        upd[(b, b)] = -sij
    else:
        upd[(a, a)] = -sij
        upd[(b, b)] = 0
    return Mat.identity(n).replace(upd)


def apply_braid(s: Mat, word: BraidWord | str | Sequence) -> BraidCertificate:
    if isinstance(word, str):
        word = BraidWord.parse(word)
    elif not isinstance(word, BraidWord):
        word = BraidWord.of(word)
    n = s.n
    cur = s.tolist()
    acc = Mat.identity(n).tolist()
    for g in word.generators:
        if not 1 <= g.index <= n - 1:
            raise ValueError(f"generator index {g.index} out of range for n={n}")
        a, b = g.index - 1, g.index
        x = cur[a][b]
        # rows a, b of e are (e_aa, 1) and (1, e_bb) on columns a, b
        eaa, ebb = (0, -x) if g.sign > 0 else (-x, 0)
        for m in (cur, acc):
            ra, rb = m[a], m[b]
            m[a] = [eaa * u + v for u, v in zip(ra, rb)]
            m[b] = [u + ebb * v for u, v in zip(ra, rb)]
        for r in cur:
            ca, cb = r[a], r[b]
            r[a] = eaa * ca + cb
            r[b] = ca + ebb * cb
    return BraidCertificate(word, Mat(acc), s, Mat(cur))


def canonical_braid(k: int) -> BraidWord:
    """Word bringing S_upper to the binomial canonical form."""
    pairs: list[tuple[int, int]] = []
    top = k // 2 - 2 if k % 2 == 0 else (k - 5) // 2
    for m in range(1, top + 1):
        pairs += [(i, 1) for i in range(k - 4 - m, m - 1, -1)]
    pairs += [(i, 1) for i in range(k - 3, 0, -1)]
    return BraidWord.of(pairs)


def inverse_braid(k: int) -> BraidWord:
    """Word bringing S_upper^-1 to the signed binomial form."""
    pairs: list[tuple[int, int]] = []
    if k % 2 == 0:
        s1, s0 = 3, k // 2 + 2
    else:
        pairs.append((1, 1))
        s1, s0 = 4, (k + 5) // 2
    r = 0
    while s1 + r <= k - 1 - r:
        pairs += [(i, -1) for i in range(s1 + r, k - r, 2)]
        r += 1
    for e in range(k - 1, s0 - 1, -1):
        pairs += [(i, -1) for i in range(s0, e + 1)]
    return BraidWord.of(pairs)


def canonical_braid_matrix(k: int) -> Mat:
    """A^beta written down directly from its binomial template."""
    upd: dict[tuple[int, int], int] = {}
    for m in range((k - 3) // 2 + 1):
        c = k - 2 - 2 * m
        for i in range(1 + m, k - 1 - m):
            upd[(i - 1, c - 1)] = binomial(k, i - 1 - m)
    for c in range(1, k - 2):
        if (c - (k - 2)) % 2:
            upd[((k + c) // 2 - 1, c - 1)] = 1
    upd[(k - 2, k - 2)] = 1
    upd[(k - 1, k - 1)] = 1
    return Mat.zeros(k).replace(upd)


def inverse_braid_matrix(k: int) -> Mat:
    """A^{beta'} written down directly from its binomial template."""
    upd: dict[tuple[int, int], int] = {}
    if k % 2 == 0:
        off = 2
        upd[(0, 0)] = upd[(1, 1)] = 1
    else:
        off = 3
        upd[(0, 1)] = upd[(1, 0)] = 1
        upd[(1, 1)] = k
        upd[(2, 2)] = 1
    n = k - off
    h = n // 2
    for p in range(1, h + 1):
        for r in range(p, n - p + 2):
            v = binomial(k, n - p + 1 - r)
            upd[(off + r - 1, off + 2 * p - 2)] = -v if r <= h else v
        upd[(off + p - 1, off + 2 * p - 1)] = 1
    return Mat.zeros(k).replace(upd)


def forward_signs(k: int) -> SignMatrix:
    return SignMatrix(tuple([1] * (k - 1) + [-1]))


def inverse_signs(k: int) -> SignMatrix:
    cut = k // 2 + 2 if k % 2 == 0 else (k + 5) // 2
    return SignMatrix(tuple(-1 if i >= cut else 1 for i in range(1, k + 1)))


def alternating_signs(k: int) -> SignMatrix:
    return SignMatrix(tuple(-1 if i % 2 == 0 else 1 for i in range(k)))


def binomial_canonical(k: int) -> Mat:
    """Upper unitriangular matrix with s_ij = C(k, j - i)."""
    return Mat([[binomial(k, j - i) if j >= i else 0 for j in range(k)] for i in range(k)])


def to_canonical(k: int) -> tuple[Mat, BraidCertificate, SignMatrix]:
    cert = apply_braid(upper_S(k), canonical_braid(k))
    signs = forward_signs(k)
    return cert.S_after, cert, signs


def inverse_canonical(k: int) -> tuple[Mat, BraidCertificate, SignMatrix]:
    cert = apply_braid(mat_inv(upper_S(k)), inverse_braid(k))
    signs = inverse_signs(k)
    return cert.S_after, cert, signs


def _same_parity_index(m: int, n: int) -> bool:
    # intermediate 1-based index m + 1 shares the parity of n
    return (m + 1) % 2 == n % 2


def factorize_upper(s: Mat) -> dict[tuple[int, int], object]:
    """Coefficients a_ij (1-based keys, i < j) of the factor decomposition.

    Solves s_ij = a_ij + sum a_im s_mj diagonal by diagonal, the sum
    running over i < m < j with m of the same parity as the dimension.
    """
    n = s.n
    a: dict[tuple[int, int], object] = {}
    for d in range(1, n):
        for i in range(n - d):
            j = i + d
            v = s[i, j]
            for m in range(i + 1, j):
                if _same_parity_index(m, n):
                    v -= a[(i + 1, m + 1)] * s[m, j]
            a[(i + 1, j + 1)] = v
    return a


def reconstruct_upper(a: dict[tuple[int, int], object], n: int) -> Mat:
    """Inverse of :func:`factorize_upper`."""
    s = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for d in range(1, n):
        for i in range(n - d):
            j = i + d
            v = a[(i + 1, j + 1)]
            for m in range(i + 1, j):
                if _same_parity_index(m, n):
                    v += a[(i + 1, m + 1)] * s[m][j]
            s[i][j] = v
    return Mat(s)


def zaslow_braid(n: int) -> BraidWord:
    """beta_12 (beta_23 beta_12) ... (beta_{n-1,n} ... beta_12)."""
    pairs = []
    for m in range(1, n):
        pairs += [(i, 1) for i in range(m, 0, -1)]
    return BraidWord.of(pairs)


def zaslow_identity_check(s: Mat) -> BraidCertificate:
    """Acts on S^-1 and asserts the result is F S^T F, F the flip."""
    cert = apply_braid(mat_inv(s), zaslow_braid(s.n))
    f = anti_diagonal(s.n)
    if cert.S_after != f @ s.T @ f:
        raise AssertionError("braided inverse differs from flipped transpose")
    return cert
