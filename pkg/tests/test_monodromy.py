import math

import pytest

from artifact.exact import Mat, mat_inv
from artifact.gram import gram_from_stokes
from artifact.monodromy import (
    MoebiusMap,
    PRINTED_RELATIONS,
    coxeter_product,
    generators,
    reduced_representation,
    reflections,
    triangle_generators,
    triangle_parametrization_check,
    upper_half_plane_samples,
    verify_reduced,
    verify_relations,
)
from artifact.stokes import build_S


def test_reflection_k3():
    R, _ = generators(3)
    assert R[0] == Mat([[-1, 3, 3], [0, 1, 0], [0, 0, 1]])


def test_reflection_row_k5():
    g = gram_from_stokes(build_S(5))
    r2 = reflections(g)[1]
    assert r2.row(1) == tuple(-1 if j == 1 else -2 * g.G[1, j] for j in range(5))
    for i in (0, 2, 3, 4):
        assert r2.row(i) == Mat.identity(5).row(i)


@pytest.mark.parametrize("k", range(3, 31))
def test_reflections_are_involutions(k):
    R, _ = generators(k)
    assert all(r @ r == Mat.identity(k) for r in R)


@pytest.mark.parametrize("k", range(3, 8))
def test_printed_relations(k):
    rep = verify_relations(k)
    assert rep.ok, rep.lines()
    assert len(rep.items) > 3
    assert k in PRINTED_RELATIONS


def test_named_relations():
    R, T = generators(3)
    eye = Mat.identity(3)
    assert (T @ R[0]) ** 3 == -1 * eye
    assert T**3 == -1 * (R[1] @ R[2] @ R[0])
    R, T = generators(4)
    assert (T @ R[0]) ** 4 == Mat.identity(4)
    assert T**4 == R[2] @ R[1] @ R[3] @ R[0]
    R, T = generators(7)
    w = T @ (T @ R[0]) ** 3
    assert R[5] == w @ R[1] @ mat_inv(w)


@pytest.mark.parametrize("k", range(3, 31))
def test_coxeter_matches_power(k):
    _, T = generators(k)
    s = build_S(k)
    assert T**k == (-1) ** k * coxeter_product(k)
    assert T**k == (-1) ** (k - 1) * (mat_inv(s) @ s.T)


def test_general_k_universal_only():
    rep = verify_relations(9)
    assert rep.ok
    assert rep.notes


def test_reduced_k4():
    red = reduced_representation(4)
    assert red.kernel == (1, -3, -1, 1)
    assert red.t == Mat([[0, 0, 1], [-1, 0, 3], [0, -1, 3]])
    # the sign of the last entry comes out negative from G
    assert red.r[0].row(0) == (-1, 4, -10)
    R, _ = generators(4)
    assert R[0][0, 2] == -10


def test_reduced_k6():
    red = reduced_representation(6)
    assert red.kernel == (1, -10, 5, 1, -1, 1)
    assert all(r @ r == Mat.identity(5) for r in red.r)
    assert verify_reduced(6).ok and verify_reduced(4).ok


def test_reduced_golden_blocks(golden):
    for k in (4, 6):
        assert reduced_representation(k).block(reduced_representation(k).t) == golden(k, "T_reduced")


def test_reduced_needs_even_k():
    with pytest.raises(ValueError):
        reduced_representation(5)


def test_triangle_generators():
    for k, c in ((3, 1.0), (4, math.sqrt(2))):
        X, Y = triangle_generators(k)
        tau = 0.3 + 1.7j
        assert abs(Y(tau) - 1 / (c - tau)) < 1e-14
        assert abs(X(tau) + 1 / tau) < 1e-14
        assert (X @ X).is_identity()
        assert (Y**k).is_identity(1e-10)
    with pytest.raises(ValueError):
        MoebiusMap(1, 2, 2, 4)


def test_triangle_identities():
    r3 = triangle_parametrization_check(3, [1j], [1.0])
    assert r3.identities_ok(1e-12)
    r4 = triangle_parametrization_check(4, [1 + 2j], [2.0])
    assert r4.identities_ok(1e-12)
    for k in (3, 4):
        r = triangle_parametrization_check(k, upper_half_plane_samples(40, seed=5))
        assert r.identities_ok(1e-10)
        assert r.quadratic_spread < 1e-10
    with pytest.raises(ValueError):
        triangle_parametrization_check(3, [1.0 + 0j])
    with pytest.raises(ValueError):
        triangle_parametrization_check(5, [1j])


@pytest.mark.xfail(strict=True, reason="the quadratic form evaluates to a^2/4 (k=3) and 4a^2/9 (k=4) with G = (S+S^T)/2")
def test_triangle_quadratic_form():
    for k in (3, 4):
        r = triangle_parametrization_check(k, upper_half_plane_samples(10))
        assert r.quadratic_ok(1e-10)
