import random

import pytest

from artifact.braid import (
    BraidParseError,
    BraidWord,
    apply_braid,
    binomial_canonical,
    canonical_braid,
    canonical_braid_matrix,
    elementary_matrix,
    factorize_upper,
    inverse_braid,
    inverse_braid_matrix,
    inverse_canonical,
    reconstruct_upper,
    to_canonical,
    zaslow_identity_check,
)
from artifact.exact import Mat, det
from artifact.gram import gram_chi
from artifact.stokes import upper_S

S4 = Mat([[1, -4, -20, 10], [0, 1, 6, -4], [0, 0, 1, -4], [0, 0, 0, 1]])


def _random_unitriangular(rng, n):
    return Mat([[1 if i == j else (rng.randint(-6, 6) if j > i else 0) for j in range(n)] for i in range(n)])


def test_elementary_matrix_examples():
    s = Mat([[1, 0, 2], [0, 1, 5], [0, 0, 1]])
    assert elementary_matrix(s, 1, +1) == Mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert elementary_matrix(S4, 1, +1) == Mat([[0, 1, 0, 0], [1, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(ValueError):
        elementary_matrix(S4, 4, +1)


def test_apply_examples():
    cert = apply_braid(S4, BraidWord.parse(""))
    assert cert.A == Mat.identity(4) and cert.S_after == S4
    cert = apply_braid(S4, BraidWord.parse("b12"))
    assert cert.S_after == Mat([[1, 4, 6, -4], [0, 1, 4, -6], [0, 0, 1, -4], [0, 0, 0, 1]])
    assert cert.check()
    assert apply_braid(cert.S_after, "s12").S_after == S4


def test_apply_k6_word():
    cert = apply_braid(upper_S(6), BraidWord.parse("b12 b34 b23 b12"))
    expected = binomial_canonical(6)
    flipped = Mat([[expected[i, j] * (-1 if j == 5 and i < 5 else 1) for j in range(6)] for i in range(6)])
    assert cert.S_after == flipped


def test_group_action_composes():
    w1, w2 = BraidWord.parse("b12 b23"), BraidWord.parse("s34 b12")
    s = upper_S(5)
    c12 = apply_braid(s, w1 + w2)
    c1 = apply_braid(s, w1)
    c2 = apply_braid(c1.S_after, w2)
    assert c12.S_after == c2.S_after
    assert c12.A == c2.A @ c1.A


@pytest.mark.parametrize("k", range(3, 11))
def test_braid_relations_on_upper_S(k, golden):
    s = golden(k, "S_upper") if k not in (6, 7) else upper_S(k)
    assert s == upper_S(k)
    for i in range(1, k - 1):
        lhs = apply_braid(s, BraidWord.of([(i, 1), (i + 1, 1), (i, 1)])).S_after
        rhs = apply_braid(s, BraidWord.of([(i + 1, 1), (i, 1), (i + 1, 1)])).S_after
        assert lhs == rhs
    for i in range(1, k):
        for j in range(i + 2, k):
            a = apply_braid(s, BraidWord.of([(i, 1), (j, 1)])).S_after
            b = apply_braid(s, BraidWord.of([(j, 1), (i, 1)])).S_after
            assert a == b
        c = apply_braid(s, BraidWord.of([(i, 1), (i, -1)]))
        assert c.S_after == s
        once = apply_braid(s, BraidWord.of([(i, 1)])).S_after
        assert once.is_upper_unitriangular() and det(once) == 1


def test_canonical_words():
    assert str(canonical_braid(4)) == "b12"
    assert str(canonical_braid(7)) == "b23 b12 b45 b34 b23 b12"
    assert str(canonical_braid(8)) == "b34 b23 b12 b23 b56 b45 b34 b23 b12"
    assert str(inverse_braid(5)) == "b12 s45"


@pytest.mark.parametrize("k", range(4, 11))
def test_words_match_golden(k):
    from artifact.golden import golden_word

    fwd, inv = golden_word(k, "forward"), golden_word(k, "inverse")
    assert str(canonical_braid(k)) == fwd
    if inv is not None:
        assert str(inverse_braid(k)) == inv


@pytest.mark.parametrize("k", range(3, 11))
def test_templates_equal_fold(k):
    assert canonical_braid_matrix(k) == to_canonical(k)[1].A
    assert inverse_braid_matrix(k) == inverse_canonical(k)[1].A


def test_template_k5():
    assert canonical_braid_matrix(5) == Mat(
        [[0, 0, 1, 0, 0], [1, 0, 5, 0, 0], [0, 1, 10, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    )


def test_canonical_examples():
    s6, _, _ = to_canonical(6)
    assert s6.row(0) == (1, 6, 15, 20, 15, -6)
    s10, _, _ = to_canonical(10)
    assert s10.row(0) == (1, 10, 45, 120, 210, 252, 210, 120, 45, -10)
    s5, _, _ = inverse_canonical(5)
    assert s5.row(0) == (1, 5, 10, 10, -5)
    s8, _, _ = inverse_canonical(8)
    assert all(v < 0 for v in s8.row(0)[5:]) and all(v > 0 for v in s8.row(0)[:5])


@pytest.mark.parametrize("k", list(range(3, 21)) + [25, 30])
def test_canonical_pipeline(k):
    for fn in (to_canonical, inverse_canonical):
        s, cert, signs = fn(k)
        assert cert.check()
        assert signs.conjugate(s) == binomial_canonical(k)


def test_factorization_roundtrip():
    s = upper_S(4)
    a = factorize_upper(s)
    for i in range(1, 4):
        assert a[(i, i + 1)] == s[i - 1, i]
    assert reconstruct_upper(a, 4) == s
    rng = random.Random(3)
    for k in range(3, 11):
        s = upper_S(k)
        assert reconstruct_upper(factorize_upper(s), k) == s
    for _ in range(30):
        s = _random_unitriangular(rng, rng.randint(2, 6))
        assert reconstruct_upper(factorize_upper(s), s.n) == s


def test_zaslow_identity():
    for d in range(2, 10):
        assert zaslow_identity_check(gram_chi(d)).check()
    assert zaslow_identity_check(Mat.identity(4)).S_after == Mat.identity(4)
    rng = random.Random(11)
    for n in (4, 5):
        for _ in range(50):
            assert zaslow_identity_check(_random_unitriangular(rng, n)).check()


def test_word_parsing():
    w = BraidWord.parse("b23 b12  s45")
    assert str(w) == "b23 b12 s45"
    assert str(w.inverse()) == "b45 s12 s23"
    for bad in ("x12", "b13", "b", "b21", "b1 2"):
        with pytest.raises(BraidParseError):
            BraidWord.parse(bad)
