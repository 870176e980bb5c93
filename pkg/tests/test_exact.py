import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.exact import (
    Mat,
    anti_diagonal,
    binomial,
    det,
    kernel_vector,
    mat_inv,
    mat_mul,
    mat_vec,
    permutation_matrix,
    rank,
)
from artifact.gram import gram_chi, gram_chi_inverse, gram_from_stokes
from artifact.stokes import build_S, build_TF, stokes_factors


def _sym(m: Mat) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v for v in r] for r in m.rows])


def _rand_mat(rng, n, lo=-5, hi=5, frac=False):
    def entry():
        if frac:
            return Fraction(rng.randint(lo, hi), rng.randint(1, 4))
        return rng.randint(lo, hi)

    return Mat([[entry() for _ in range(n)] for _ in range(n)])


def test_binomial_examples():
    assert binomial(10, 5) == 252
    assert binomial(9, 0) == 1
    assert binomial(7, 2) == 21
    assert binomial(3, -1) == 0 and binomial(3, 4) == 0


def test_pascal_rule():
    for n in range(1, 65):
        for m in range(0, n + 1):
            assert binomial(n, m) == binomial(n - 1, m - 1) + binomial(n - 1, m)


def test_mul_identity_and_inverse():
    s = build_S(4)
    assert Mat.identity(4) @ s == s
    k2, _ = stokes_factors(3)
    assert mat_mul(k2, mat_inv(k2)) == Mat.identity(3)


def test_tf_power():
    for k in range(3, 12):
        tf = build_TF(k)
        assert tf**k == (-1) ** (k - 1) * Mat.identity(k)
        assert tf ** (2 * k) == Mat.identity(k)
        assert mat_inv(tf) @ tf == Mat.identity(k)


def test_inverse_of_stokes_matrix():
    s = build_S(3)
    assert s @ mat_inv(s) == Mat.identity(3)
    assert mat_inv(Mat.identity(5)) == Mat.identity(5)


def test_chi_inverse_d2():
    assert mat_inv(gram_chi(2)) == Mat([[1, -3, 3], [0, 1, -3], [0, 0, 1]])
    assert gram_chi_inverse(9) @ gram_chi(9) == Mat.identity(10)


def test_det_and_kernel_of_gram():
    assert det(Mat.identity(4)) == 1
    g4 = gram_from_stokes(build_S(4)).G
    assert det(g4) == 0
    assert det(gram_from_stokes(build_S(3)).G) != 0
    assert kernel_vector(Mat.identity(3)) is None
    for k in (4, 6):
        g = gram_from_stokes(build_S(k)).G
        z = kernel_vector(g)
        assert z is not None and any(z)
        assert mat_vec(g, z) == (0,) * k


def test_kernel_rejects_large_nullity():
    with pytest.raises(ValueError):
        kernel_vector(Mat.zeros(3))


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        mat_inv(Mat([[1, 2], [2, 4]]))


def test_against_sympy_random():
    rng = random.Random(7)
    for trial in range(120):
        n = rng.randint(1, 6)
        a = _rand_mat(rng, n, frac=trial % 3 == 0)
        sa = _sym(a)
        assert det(a) == sa.det()
        assert rank(a) == sa.rank()
        if sa.det() != 0:
            assert _sym(mat_inv(a)) == sa.inv()


def test_large_entries_stay_exact():
    from artifact.stokes import upper_S

    assert any(abs(v) == 177705 for r in upper_S(10).rows for v in r)
    big = max(abs(v) for r in upper_S(30).rows for v in r)
    assert isinstance(big, int) and big > 2**53


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.randoms(use_true_random=False))
def test_det_multiplicative(n, rnd):
    a = _rand_mat(rnd, n, -4, 4)
    b = _rand_mat(rnd, n, -4, 4)
    assert det(a @ b) == det(a) * det(b)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.randoms(use_true_random=False))
def test_unimodular_inverse(n, rnd):
    # product of random elementary matrices is unimodular
    m = Mat.identity(n)
    for _ in range(8):
        i, j = rnd.sample(range(n), 2)
        e = Mat.identity(n).replace({(i, j): rnd.randint(-3, 3)})
        m = m @ e
    assert abs(det(m)) == 1
    assert m @ mat_inv(m) == Mat.identity(n)


def test_helpers():
    p = permutation_matrix((3, 1, 2))
    assert p @ p.T == Mat.identity(3)
    f = anti_diagonal(4)
    assert f @ f == Mat.identity(4)
    assert Mat([[Fraction(4, 2)]])[0, 0] == 2 and isinstance(Mat([[Fraction(4, 2)]])[0, 0], int)
    with pytest.raises(ValueError):
        Mat([[1, 2]])
    with pytest.raises(TypeError):
        Mat([[0.5]])
