"""Acceptance criteria 1-11.

Each test prints one line "criterion N: PASS|FAIL <measured>" to the
terminal, also under pytest's output capture.  Criteria that cannot be met
as stated are marked xfail(strict) and still print their measured values.
"""

import math
import random
import time

import numpy as np
import pytest

from artifact.braid import (
    BraidWord,
    alternating_signs,
    apply_braid,
    binomial_canonical,
    canonical_braid,
    factorize_upper,
    inverse_braid,
    inverse_canonical,
    reconstruct_upper,
    to_canonical,
    zaslow_identity_check,
)
from artifact.exact import Mat, det, kernel_vector, mat_inv, rank
from artifact.golden import GOLDEN_KS, compare_all, golden_word
from artifact.gram import gram_chi, gram_chi_inverse, gram_from_stokes
from artifact.monodromy import triangle_parametrization_check, upper_half_plane_samples, verify_relations
from artifact.stokes import build_S, build_T, closed_forms, stokes_from_factors, upper_S


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")

    return emit


def test_criterion_01_golden_exactness(report):
    t0 = time.perf_counter()
    results = compare_all()
    for k in GOLDEN_KS:
        for which, fn in (("forward", canonical_braid), ("inverse", inverse_braid)):
            w = golden_word(k, which)
            if w is not None:
                results.append((k, f"word_{which}", str(fn(k)) == w))
    elapsed = time.perf_counter() - t0
    failed = [(k, n) for k, n, ok in results if not ok]
    ok = not failed and elapsed < 1.0
    report(1, ok, f"{len(results) - len(failed)}/{len(results)} golden items equal, {elapsed:.2f}s")
    assert ok, failed


def test_criterion_02_canonical_form_at_scale(report):
    t0 = time.perf_counter()
    bad = []
    for k in range(3, 31):
        target = binomial_canonical(k)
        for fn in (to_canonical, inverse_canonical):
            s, cert, signs = fn(k)
            if not (cert.check() and signs.conjugate(s) == target):
                bad.append((k, fn.__name__))
        if alternating_signs(k).conjugate(target) != gram_chi_inverse(k - 1):
            bad.append((k, "alternating"))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10
    report(2, ok, f"k=3..30, {len(bad)} mismatches, {elapsed:.2f}s")
    assert ok, bad


def test_criterion_03_power_of_T(report):
    bad = []
    for k in range(3, 31):
        s = build_S(k)
        if build_T(k) ** k != (-1) ** (k - 1) * (mat_inv(s) @ s.T):
            bad.append(k)
    report(3, not bad, f"T^k = (-1)^(k-1) S^-1 S^T for k=3..30, failures {bad}")
    assert not bad


def test_criterion_04_factor_product_and_closed_forms(report):
    bad = []
    for k in range(3, 21):
        s = build_S(k)
        a, b = closed_forms(k)
        if not (stokes_from_factors(k) == s == a == b):
            bad.append(k)
    report(4, not bad, f"factor product = both closed forms for k=3..20, failures {bad}")
    assert not bad


def test_criterion_05_gram_rank(report):
    bad = []
    for k in range(3, 31):
        two_g = gram_from_stokes(build_S(k)).two_G
        if k % 2:
            good = det(two_g) != 0
        else:
            good = rank(two_g) == k - 1 and kernel_vector(two_g) is not None
        if not good:
            bad.append(k)
    report(5, not bad, f"det(2G) != 0 (k odd), rank k-1 with 1-dim kernel (k even), k=3..30, failures {bad}")
    assert not bad


def test_criterion_06_monodromy_relations(report):
    failed = []
    count = 0
    for k in range(3, 8):
        rep = verify_relations(k)
        count += len(rep.items)
        failed += [(k, name) for name, ok in rep.items if not ok]
    report(6, not failed, f"{count - len(failed)}/{count} relations for k=3..7")
    assert not failed


def _triangle_results():
    samples = upper_half_plane_samples(25)
    return {k: triangle_parametrization_check(k, samples) for k in (3, 4)}


def test_criterion_07_triangle_identities(report):
    res = _triangle_results()
    worst = max(max(r.identity_errors.values()) for r in res.values())
    ok = all(r.identities_ok(1e-10) for r in res.values())
    report("7 (identities)", ok, f"max error {worst:.2e} over 25 samples, k=3,4")
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="with G = (S+S^T)/2 the quadratic form evaluates to a^2/4 (k=3) and 4a^2/9 (k=4), not a^2 and 8a^2/9",
)
def test_criterion_07_triangle_quadratic_form(report):
    res = _triangle_results()
    ok = all(r.quadratic_ok(1e-10) for r in res.values())
    detail = ", ".join(
        f"k={k}: q/a^2 = {r.quadratic_ratio:.12g} (stated {r.quadratic_expected:.12g}, spread {r.quadratic_spread:.1e})"
        for k, r in res.items()
    )
    report("7 (quadratic form)", ok, detail)
    assert ok


def test_criterion_08_cyclic_identity(report):
    from artifact.numeric import cyclic_identity_residual

    t0 = time.perf_counter()
    worst = 0.0
    for k in (3, 4, 5):
        for arg in (0.3, 1.1, 2.0):
            worst = max(worst, cyclic_identity_residual(k, 1, 2.0, arg))
    ok = worst <= 1e-8
    report(8, ok, f"max relative residual {worst:.2e} (k=3,4,5, |z|=2, 3 arguments), {time.perf_counter() - t0:.1f}s")
    assert ok


# (k, n, arg z) with arg z inside the sector where g^(n) ~ exp(u_n z)
ASYMPTOTIC_POINTS = [(3, 2, math.pi / 6), (4, 3, 0.2), (4, 1, 2.5), (5, 3, 1.0), (5, 1, 2.0)]


def _asymptotics():
    from artifact.numeric import asymptotic_check

    return [asymptotic_check(k, n, 20.0, a) for k, n, a in ASYMPTOTIC_POINTS]


@pytest.mark.xfail(
    strict=True,
    reason="at |z|=20 the leading term alone differs from g by the first 1/z correction, about 1e-2",
)
def test_criterion_09_leading_asymptotics(report):
    checks = _asymptotics()
    worst = max(c.leading_error for c in checks)
    detail = ", ".join(f"(k={c.k},n={c.n}) {c.leading_error:.1e}" for c in checks)
    report(9, worst <= 1e-4, f"|g/leading - 1| at |z|=20: {detail}")
    assert worst <= 1e-4


def test_criterion_09_full_asymptotic_series(report):
    checks = _asymptotics()
    worst = max(c.full_error for c in checks)
    report("9 (optimally truncated series)", worst <= 1e-4, f"max |g/series - 1| = {worst:.1e} at |z|=20, k=3,4,5")
    assert worst <= 1e-4


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_criterion_10_numeric_stokes(report, k):
    from artifact.numeric import numeric_cyclic_monodromy, numeric_stokes

    tol = 1e-5 if k <= 4 else 1e-4
    t0 = time.perf_counter()
    st = numeric_stokes(k, check=False)
    mo = numeric_cyclic_monodromy(k, C_L=st.C_L, check=False)
    elapsed = time.perf_counter() - t0
    ok = st.error_vs_exact <= tol and mo.error_vs_exact <= tol and elapsed <= 120
    report(
        f"10 (k={k})",
        ok,
        f"|S_num - S| = {st.error_vs_exact:.1e}, |T_num - T| = {mo.error_vs_exact:.1e}, tol {tol:g}, {elapsed:.1f}s",
    )
    assert ok


def _random_unitriangular(rng, n):
    return Mat([[1 if i == j else (rng.randint(-9, 9) if j > i else 0) for j in range(n)] for i in range(n)])


def test_criterion_11_property_suites(report):
    rng = random.Random(2024)
    failures = []
    checks = 0
    for k in range(3, 11):
        s = upper_S(k)
        for i in range(1, k - 1):
            lhs = apply_braid(s, BraidWord.of([(i, 1), (i + 1, 1), (i, 1)])).S_after
            rhs = apply_braid(s, BraidWord.of([(i + 1, 1), (i, 1), (i + 1, 1)])).S_after
            checks += 1
            if lhs != rhs:
                failures.append(("braid relation", k, i))
        for i in range(1, k):
            for j in range(i + 2, k):
                checks += 1
                if apply_braid(s, BraidWord.of([(i, 1), (j, 1)])).S_after != apply_braid(s, BraidWord.of([(j, 1), (i, 1)])).S_after:
                    failures.append(("far commutation", k, i, j))
            checks += 1
            if apply_braid(s, BraidWord.of([(i, 1), (i, -1)])).S_after != s:
                failures.append(("inverse round trip", k, i))
        checks += 1
        if reconstruct_upper(factorize_upper(s), k) != s:
            failures.append(("factorization", k))
    for d in range(2, 10):
        checks += 1
        if not zaslow_identity_check(gram_chi(d)).check():
            failures.append(("zaslow chi", d))
    for n in (4, 5):
        for _ in range(100):
            m = _random_unitriangular(rng, n)
            checks += 2
            if not zaslow_identity_check(m).check():
                failures.append(("zaslow random", n))
            if reconstruct_upper(factorize_upper(m), n) != m:
                failures.append(("factorization random", n))
    report(11, not failures, f"{checks - len(failures)}/{checks} exact property checks")
    assert not failures
