"""Command-line front end.

Exit codes: 0 success/valid, 1 mathematically invalid or infeasible,
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, certify, gram, io, numerics
from .combinatorics import DimensionCapError, monomial_str, set_max_dim, word_str
from .polynomials import rat_str

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


def _rat_arg(s: str) -> Fraction:
    try:
        return io.parse_rat(s)
    except io.FormatError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _print_matrix(M: gram.RatMatrix, label_fmt=word_str, out=None) -> None:
    out = out or sys.stdout
    strs = M.to_strings()
    labels = [label_fmt(w) for w in (M.labels or [])]
    width = max((len(x) for r in strs for x in r), default=1)
    lw = max((len(x) for x in labels), default=0)
    for i, r in enumerate(strs):
        head = f"{labels[i]:>{lw}} | " if labels else ""
        print(head + " ".join(f"{x:>{width}}" for x in r), file=out)


def cmd_gram(args) -> int:
    if args.which == "nc":
        M = gram.gram_nc(args.n, args.d)
    elif args.which == "c":
        M = gram.gram_c(args.n, args.d)
    elif args.which == "m":
        M = gram.projection_m(args.n, args.d)
    else:
        M = gram.matrix_b(args.n, args.d)
    text = io.matrix_to_text(M, {"which": args.which, "n": args.n, "d": args.d})
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    _print_matrix(M, monomial_str if args.which == "c" else word_str)
    return EXIT_OK


def _print_witness(e: certify.NotPositiveSemidefinite, n: int, d: int) -> None:
    print(f"not positive semidefinite: v*Av = {rat_str(e.value)}")
    v = e.witness
    try:
        print("witness:", gram.vector_poly(v, n, d))
    except ValueError:
        print("witness:", [rat_str(x) for x in v])


def cmd_sohs(args) -> int:
    mu = args.mu or Fraction(0)
    try:
        cert = certify.sohs_certificate(args.n, args.d, mu)
    except certify.NotPositiveSemidefinite as e:
        _print_witness(e, args.n, args.d)
        return EXIT_INVALID
    ok, _ = certify.verify_certificate(cert)
    print(f"target: H_{2 * args.d}(x1..x{args.n})" + (f" - {rat_str(mu)} * sum xj^{2 * args.d}" if mu else ""))
    print(f"terms: {len(cert)}")
    for lam, s in cert.terms:
        print(f"  {rat_str(lam):>12}  {s}")
    if args.out:
        text = io.write_certificate(cert, args.out)
        again = io.certificate_to_text(io.read_certificate(args.out))
        if again != text:
            print("round trip mismatch", file=sys.stderr)
            return EXIT_INVALID
        print(f"wrote {args.out}")
    print("verified" if ok else "VERIFICATION FAILED")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_verify(args) -> int:
    try:
        cert = io.read_certificate(args.path)
    except (OSError, io.FormatError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    ok, residual = certify.verify_certificate(cert)
    if ok:
        print(f"valid: {len(cert)} terms, n={cert.n}, d={cert.d}")
        return EXIT_OK
    print("invalid")
    if any(lam <= 0 for lam in cert.weights()):
        print("nonpositive weight present")
    print(f"residual: {residual}")
    return EXIT_INVALID


def cmd_mu(args) -> int:
    r = bounds.bound_report(args.n, args.d)
    doc = io.bound_report_dict(r)
    if args.json:
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(f"n={r.n} d={r.d}")
    print(f"mu           = {rat_str(r.mu_closed)} ~ {io.decimal_str(r.mu_closed)}")
    print(f"mu (Schur)   = {rat_str(r.mu_schur)}" + ("" if r.schur_checked else " (closed form; Schur route skipped)"))
    print(f"rho0, rho1   = {rat_str(r.rho0)}, {rat_str(r.rho1)}")
    print(f"delta        = {r.delta}")
    print(f"K            = {r.k_dim}")
    print(f"scalar bound = {rat_str(r.scalar_bound)} ~ {io.decimal_str(r.scalar_bound)}")
    print(f"hunter       = {rat_str(r.hunter_bound)} ~ {io.decimal_str(r.hunter_bound)}")
    print(f"limit        = {rat_str(r.limit_bound)} ~ {io.decimal_str(r.limit_bound)}")
    print("scalar bound beats hunter" if r.improves_hunter else "hunter bound is at least as strong")
    print(json.dumps(doc))
    return EXIT_OK


def _counter_noschur(args) -> int:
    M, lo = numerics.noschur_counterexample()
    expected = gram.RatMatrix([[Fraction(1, 6), Fraction(2, 6)], [Fraction(2, 6), Fraction(3, 6)]])
    print("sigma(x1^2 x2^2) at X1=[[0,0],[0,1]], X2=[[2,1],[1,0]]:")
    _print_matrix(M)
    print(f"min eigenvalue ~ {lo:.12g}")
    ok = M == expected and lo < 0
    print("indefinite" if lo < 0 else "positive semidefinite")
    return EXIT_OK if ok else EXIT_INVALID


def _counter_nobound(args) -> int:
    try:
        f = bounds.nobound_witness(args.n, args.d)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    Gf, Bf = bounds.nobound_check(args.n, args.d)
    in_g = not any(Gf)
    in_b = not any(Bf)
    print(f"f = {f}")
    print(f"G f = 0: {in_g}")
    print(f"B f = 0: {in_b}")
    if in_g and not in_b:
        print("f in ker G, f not in ker B")
        return EXIT_OK
    return EXIT_INVALID


def _counter_exa22(args) -> int:
    ts = args.t or [0.2, 0.1, 0.05, 0.025]
    print(f"{'t':>8} {'(X1^4+X2^4)11':>16} {'H4_11':>16} {'5/12(1+25t^4)':>16} {'gap11':>14} {'min eig gap':>14}")
    ok = True
    for t in ts:
        try:
            r = numerics.exa22_row(t)
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        ok &= abs(r.power11 - 1) <= 1e-6 and abs(r.h11 - r.predicted_h11) <= 1e-6 * r.predicted_h11
        print(f"{t:>8.4g} {r.power11:>16.12f} {r.h11:>16.12f} {r.predicted_h11:>16.12f} {r.gap11:>14.6e} {r.min_eig_gap:>14.6e}")
    return EXIT_OK if ok else EXIT_INVALID


def cmd_counterexamples(args) -> int:
    return {"noschur": _counter_noschur, "nobound": _counter_nobound, "exa22": _counter_exa22}[args.which](args)


def cmd_cp(args) -> int:
    G = gram.gram_nc(args.n, args.d)
    w = certify.cp_witness(G)
    if w is None:
        print("no witness found within budget")
        return EXIT_INVALID
    fac = w.factor
    print(f"nonnegative factorization found ({w.strategy}), {fac.rank} rows")
    for lam, s in zip(fac.weights, fac.rows):
        print(f"  {rat_str(lam):>12}  {gram.vector_poly(s, args.n, args.d)}")
    if args.show_matrix:
        _print_matrix(fac.S)
    return EXIT_OK


def cmd_eval(args) -> int:
    mu = args.mu if args.mu is not None else bounds.mu_closed(args.n, args.d)
    seeds = range(args.seed, args.seed + args.samples)
    print(f"{'seed':>6} {'min_eig_gap':>16} {'max_eig_power':>16} {'entry11_gap':>16} ok")
    failures = 0
    rows = []
    for s in seeds:
        X = numerics.random_sym_tuple(args.n, args.k, s)
        r = numerics.check_lower_bound(args.n, args.d, X, mu, param=s)
        good = r.passes(args.tol)
        failures += not good
        rows.append({"seed": s, "min_eig_gap": r.min_eig_gap, "max_eig_power": r.max_eig_power,
                     "entry11_gap": r.entry11_gap, "ok": good})
        print(f"{s:>6} {r.min_eig_gap:>16.9e} {r.max_eig_power:>16.9e} {r.entry11_gap:>16.9e} {'yes' if good else 'NO'}")
    print(f"mu = {rat_str(Fraction(mu))}, {len(rows) - failures}/{len(rows)} samples satisfy the bound")
    if args.json_out:
        Path(args.json_out).write_text(json.dumps({"n": args.n, "d": args.d, "k": args.k, "mu": rat_str(Fraction(mu)), "rows": rows}, indent=2) + "\n")
    return EXIT_OK if failures == 0 else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nchs", description=__doc__.splitlines()[0])
    p.add_argument("--cap", type=int, help="matrix-dimension cap (default 8192, env NCHS_MAX_DIM)")
    p.add_argument("--seed", type=int, default=0, help="first seed for sampling commands")
    p.add_argument("--samples", type=int, default=100, help="number of seeded samples")
    p.add_argument("--tol", type=float, default=numerics.PSD_TOL, help="relative PSD tolerance")
    sub = p.add_subparsers(dest="command", required=True)

    def nd(sp, d_default=None):
        sp.add_argument("--n", type=int, required=True)
        if d_default is None:
            sp.add_argument("--d", type=int, required=True)
        else:
            sp.add_argument("--d", type=int, default=d_default)

    sp = sub.add_parser("gram", help="print or write G, G~, M or B")
    nd(sp)
    sp.add_argument("--which", choices=["nc", "c", "m", "b"], default="nc")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gram)

    sp = sub.add_parser("sohs", help="build and verify an SOHS certificate")
    nd(sp)
    sp.add_argument("--mu", type=_rat_arg)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sohs)

    sp = sub.add_parser("verify", help="verify a certificate file")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("mu", help="report the sharp constant and related bounds")
    nd(sp)
    sp.add_argument("--json", action="store_true", help="print only the JSON report")
    sp.set_defaults(func=cmd_mu)

    sp = sub.add_parser("counterexamples", help="run the explicit counterexamples")
    sp.add_argument("--which", choices=["noschur", "nobound", "exa22"], required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--t", type=float, action="append")
    sp.set_defaults(func=cmd_counterexamples)

    sp = sub.add_parser("cp", help="search for a nonnegative factorization of G")
    nd(sp)
    sp.add_argument("--show-matrix", action="store_true")
    sp.set_defaults(func=cmd_cp)

    sp = sub.add_parser("eval", help="sample the lower bound on seeded random tuples")
    nd(sp)
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--mu", type=_rat_arg)
    sp.add_argument("--json-out")
    sp.set_defaults(func=cmd_eval)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is not None:
        set_max_dim(args.cap)
    try:
        return args.func(args)
    except (DimensionCapError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.cap is not None:
            set_max_dim(None)


if __name__ == "__main__":
    sys.exit(main())
