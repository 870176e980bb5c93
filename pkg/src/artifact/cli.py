"""Command line front end.

Exit codes: 0 success, 2 usage error, 3 internal verification failure,
4 numeric tolerance not met.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from .braid import (
    BraidParseError,
    BraidWord,
    apply_braid,
    binomial_canonical,
    canonical_braid,
    inverse_braid,
    inverse_canonical,
    to_canonical,
)
from .golden import GOLDEN_KS, compare_all, golden_word
from .monodromy import (
    generators,
    reduced_representation,
    triangle_parametrization_check,
    upper_half_plane_samples,
    verify_reduced,
    verify_relations,
)
from .rays import rays
from .serialize import MatrixDocument, dumps
from .stokes import stokes_data, upper_S

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NUMERIC = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(args, docs: list[MatrixDocument], extra: dict | None = None, text: list[str] | None = None) -> None:
    if args.format == "json":
        print(dumps(docs, extra))
        return
    for line in text or []:
        print(line)
    for d in docs:
        print(d.pretty())
    if extra and not text:
        for key, val in extra.items():
            print(f"{key}: {val}")


def _check_k(k: int, lo: int = 3, hi: int | None = None) -> None:
    if k < lo or (hi is not None and k > hi):
        rng = f">= {lo}" if hi is None else f"in {lo}..{hi}"
        raise UsageError(f"--k must be {rng}, got {k}")


def cmd_stokes(args) -> int:
    _check_k(args.k)
    sd = stokes_data(args.k)
    mats = [("K_k2", sd.K_k2), ("K_k3", sd.K_k3), ("T_F", sd.T_F), ("T", sd.T), ("S", sd.S), ("P", sd.P), ("S_upper", sd.S_upper)]
    _emit(args, [MatrixDocument.from_matrix(n, args.k, m) for n, m in mats])
    return EXIT_OK


def cmd_canonical(args) -> int:
    _check_k(args.k)
    k = args.k
    s_can, cert, signs = to_canonical(k) if args.which == "forward" else inverse_canonical(k)
    final = signs.conjugate(s_can)
    verified = cert.check() and final == binomial_canonical(k)
    docs = [
        MatrixDocument.from_matrix("A", k, cert.A),
        MatrixDocument.from_matrix("S_canonical", k, s_can),
        MatrixDocument.from_matrix("signs", k, signs.matrix()),
        MatrixDocument.from_matrix("S_binomial", k, final),
    ]
    extra = {"which": args.which, "word": str(cert.word), "verified": verified}
    _emit(args, docs, extra, [f"word: {cert.word}", f"verified: {verified}"])
    return EXIT_OK if verified else EXIT_VERIFY


def cmd_braid(args) -> int:
    _check_k(args.k)
    try:
        word = BraidWord.parse(args.word or "")
    except BraidParseError as e:
        raise UsageError(str(e)) from None
    try:
        cert = apply_braid(upper_S(args.k), word)
    except ValueError as e:
        raise UsageError(str(e)) from None
    docs = [
        MatrixDocument.from_matrix("A", args.k, cert.A),
        MatrixDocument.from_matrix("S_before", args.k, cert.S_before),
        MatrixDocument.from_matrix("S_after", args.k, cert.S_after),
    ]
    ok = cert.check()
    _emit(args, docs, {"word": str(word), "verified": ok}, [f"word: {word}", f"verified: {ok}"])
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_monodromy(args) -> int:
    _check_k(args.k)
    k = args.k
    R, T = generators(k)
    docs = [MatrixDocument.from_matrix(f"R{j + 1}", k, r) for j, r in enumerate(R)]
    docs.append(MatrixDocument.from_matrix("T", k, T))
    reports = [verify_relations(k)]
    if k % 2 == 0:
        red = reduced_representation(k)
        docs.append(MatrixDocument.from_matrix("t_reduced", k, red.t))
        docs += [MatrixDocument.from_matrix(f"r{j + 1}_reduced", k, r) for j, r in enumerate(red.r)]
        reports.append(verify_reduced(k))
    extra: dict = {"relations": [{"title": r.title, "checks": [[n, v] for n, v in r.items], "notes": r.notes} for r in reports]}
    lines = [line for r in reports for line in r.lines()]
    if k in (3, 4):
        th = triangle_parametrization_check(k, upper_half_plane_samples(25))
        ident = max(th.identity_errors.values())
        extra["triangle_group"] = {
            "identity_error": ident,
            "moebius_relations": th.moebius_ok,
            "quadratic_form_over_a2": th.quadratic_ratio,
            "quadratic_form_stated": th.quadratic_expected,
        }
        lines += [
            f"triangle group [2,{k},inf] parametrization, k={k}",
            f"  identities: {'PASS' if th.identities_ok(1e-10) else 'FAIL'} (max error {ident:.2e})",
            f"  quadratic form / a^2 = {th.quadratic_ratio:.12g} (stated {th.quadratic_expected:.12g})",
        ]
    _emit(args, docs, extra, lines)
    return EXIT_OK


def cmd_verify_numeric(args) -> int:
    from .numeric import (
        NumericConfig,
        asymptotic_check,
        cyclic_identity_residual,
        numeric_cyclic_monodromy,
        numeric_stokes,
    )

    _check_k(args.k, 3, 7)
    k = args.k
    cfg = NumericConfig(tol=args.tol, precision_bits=args.precision_bits)
    tol = cfg.tolerance(k)
    st = numeric_stokes(k, cfg, check=False)
    mo = numeric_cyclic_monodromy(k, cfg, C_L=st.C_L, check=False)
    id60 = {f"{a:.2f}": cyclic_identity_residual(k, 1, 2.0, a) for a in (1.4, 1.6, 2.0)}
    asym = []
    for n in range(1, k + 1):
        arg = math.pi - 2 * (n - 1) * math.pi / k + 0.1  # inside D_n, off its bisector
        a = asymptotic_check(k, n, 20.0, arg)
        asym.append({"n": n, "arg": arg, "leading": a.leading_error, "full": a.full_error})
    ok = st.error_vs_exact <= tol and mo.error_vs_exact <= tol and mo.power_error <= max(tol, 1e-4)
    report = {
        "tol": tol,
        "S_error": st.error_vs_exact,
        "S_sample_spread": st.err,
        "S_direct_error": st.direct_error,
        "S_structural_error": st.structural_error,
        "T_error": mo.error_vs_exact,
        "T_power_error": mo.power_error,
        "loop_error": mo.loop_error,
        "cyclic_identity": id60,
        "asymptotics": asym,
        "digits": st.dps,
        "pass": ok,
    }
    docs = [MatrixDocument.from_matrix("S_num", k, st.S_num), MatrixDocument.from_matrix("T_num", k, mo.T_num)]
    lines = [f"numeric verification, k={k}, tol={tol:g}"]
    lines += [f"  {key}: {val:.3e}" for key, val in report.items() if isinstance(val, float) and key != "tol"]
    lines += [f"  cyclic identity at arg {a}: {v:.3e}" for a, v in id60.items()]
    lines += [f"  g^({r['n']}) at |z|=20: leading {r['leading']:.3e}, full series {r['full']:.3e}" for r in asym]
    lines.append(f"  {'PASS' if ok else 'FAIL'}")
    _emit(args, docs, {"report": report}, lines)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_rays(args) -> int:
    _check_k(args.k)
    table = rays(args.k, args.im_t2, args.out)
    if args.json or args.format == "json":
        print(json.dumps(table, indent=1))
    else:
        print(f"k={table['k']}  Im t2={table['im_t2']}  admissible line at {table['admissible_line_pi']} pi")
        for r in table["rays"]:
            print(f"  {r['label']:>8}  {r['angle']}")
        if "svg" in table:
            print(f"svg: {table['svg']}")
    return EXIT_OK


def cmd_golden_test(args) -> int:
    results = compare_all()
    for k in GOLDEN_KS:
        for which, fn in (("forward", canonical_braid), ("inverse", inverse_braid)):
            w = golden_word(k, which)
            if w is not None:
                results.append((k, f"word_{which}", str(fn(k)) == w))
    failed = [(k, n) for k, n, ok in results if not ok]
    if args.format == "json":
        print(json.dumps({"checked": len(results), "failed": failed}))
    else:
        for k, n, ok in results:
            print(f"k={k} {n}: {'PASS' if ok else 'FAIL'}")
        print(f"{len(results) - len(failed)}/{len(results)} match")
    return EXIT_OK if not failed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpstokes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "pretty"), default="pretty")
        sp.set_defaults(func=fn)
        return sp

    sp = add("stokes", cmd_stokes, "Stokes factors, T, S and its upper triangular form")
    sp.add_argument("--k", type=int, required=True)
    sp = add("canonical", cmd_canonical, "braid S_upper (or its inverse) to binomial form")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--which", choices=("forward", "inverse"), default="forward")
    sp = add("braid", cmd_braid, "apply a braid word to S_upper")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--word", required=True)
    sp = add("monodromy", cmd_monodromy, "reflections, relations and reduced representation")
    sp.add_argument("--k", type=int, required=True)
    sp = add("verify-numeric", cmd_verify_numeric, "numerical Stokes matrix and monodromy")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--precision-bits", type=int, default=None)
    sp = add("rays", cmd_rays, "Stokes ray table and SVG")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--im-t2", type=float, default=0.0)
    sp.add_argument("--out", default=None)
    sp.add_argument("--json", action="store_true")
    add("golden-test", cmd_golden_test, "compare against the shipped reference tables")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
