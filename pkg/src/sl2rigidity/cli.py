"""Command-line interface.

Exit codes: 0 when every record passes, 1 when any verification fails, 2 on
input or validation errors (including argparse usage errors).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .cohomology import h1_report
from .corpus import ReportDocument, load_entry
from .linalg import ContractError, InputError, ToleranceProfile
from .representations import (
    enumerate_lifts,
    invariant_pairing,
    is_positive_lift,
    peripheral_traces,
    principal_decomposition,
    sym_power_matrix,
)
from .rigidity import adjoint_rep, sym_rep, verify_manifold
from .weitzenbock import build_H

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _tolerances(args) -> ToleranceProfile:
    return ToleranceProfile(args.rank_tol, args.eig_tol, args.relator_tol)


def _parse_rep(text: str) -> tuple[str, int]:
    kind, _, n = text.partition(":")
    if kind not in ("sym", "adj") or not n.isdigit() or int(n) < 1:
        raise argparse.ArgumentTypeError(f"expected sym:N or adj:N, got {text!r}")
    if kind == "adj" and int(n) < 2:
        raise argparse.ArgumentTypeError("adj:N needs N >= 2")
    return kind, int(n)


def cmd_cohomology(args) -> int:
    tol = _tolerances(args)
    entry = load_entry(args.input, tol)
    lifts = enumerate_lifts(entry.presentation, entry.holonomy, tol)
    if not 0 <= args.lift < len(lifts):
        raise InputError(f"lift {args.lift} out of range; this group has {len(lifts)} lifts")
    eps, lift = lifts[args.lift]
    kind, n = args.rep
    rep = sym_rep(lift, n) if kind == "sym" else adjoint_rep(lift, n)
    report = h1_report(entry.presentation, rep, tol)
    out = {"corpus_entry": entry.presentation.name, "lift": args.lift, "sign_character": str(eps),
           "coefficients": f"{kind}:{n}", **report.to_dict()}
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    entry = load_entry(args.input, tol)
    if args.n_min < 2 or args.n_max < args.n_min:
        raise InputError("need 2 <= n-min <= n-max")
    n_max, notes = args.n_max, []
    if entry.reliable_n_max is not None and n_max > entry.reliable_n_max:
        notes.append(
            f"{entry.presentation.name}: n > {entry.reliable_n_max} is numerically ill-conditioned "
            f"for this holonomy; verifying n = {args.n_min}..{entry.reliable_n_max} only"
        )
        n_max = entry.reliable_n_max
    run = verify_manifold(entry.presentation, entry.holonomy, range(args.n_min, n_max + 1), tol, entry.kind)
    doc = ReportDocument.build(entry, run.records, notes + run.warnings, tol, n_min=args.n_min, n_max=n_max)
    print(doc.to_json() if args.format == "json" else doc.to_table())
    return EXIT_OK if doc.passed else EXIT_FAIL


def cmd_lifts(args) -> int:
    tol = _tolerances(args)
    entry = load_entry(args.input, tol)
    pres = entry.presentation
    for j, (eps, lift) in enumerate(enumerate_lifts(pres, entry.holonomy, tol)):
        print(f"lift {j}  sign character {eps}")
        for i, p in enumerate(pres.peripherals):
            traces = peripheral_traces(lift, p)
            if p.kind == "torus":
                status = "positive" if is_positive_lift(lift, p) else "nonpositive"
            else:
                status = f"genus {p.genus} end"
            print(f"  peripheral {i} ({p.kind}): {status}")
            for k, (w, t) in enumerate(zip(p.words, traces)):
                label = p.labels[k] if k < len(p.labels) else f"word {k}"
                print(f"    {label:<12} {str(w):<16} trace {t.real:+.12f} {t.imag:+.3e}i")
    return EXIT_OK


def cmd_weitzenbock(args) -> int:
    tol = _tolerances(args)
    if args.n < 1:
        raise InputError("n must be >= 1")
    op = build_H(args.n, args.degree, tol)
    positive = op.min_eigenvalue > tol.eig_abs_tol
    print(f"# H on V_{args.n} (x) Lambda^{args.degree} m*, dimension {op.matrix.shape[0]}")
    print(f"# eigenvalue floor eig_abs_tol = {tol.eig_abs_tol:g}")
    print("spectrum: " + " ".join(f"{x:.10g}" for x in op.spectrum))
    print(f"min eigenvalue: {op.min_eigenvalue:.10g}")
    print(f"positive: {str(positive).lower()}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    print(" ".join(str(d) for d in principal_decomposition(args.n, _tolerances(args))))
    return EXIT_OK


def random_sl2(rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return g / np.sqrt(np.linalg.det(g))


def pairing_invariance_residual(n: int, samples: int, seed: int = 0) -> float:
    """max over samples of |Sym(g)^T G Sym(g) - G| / |Sym(g)|^2, for random g in SL(2,C)."""
    gram = invariant_pairing(n).gram
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        s = sym_power_matrix(n, random_sl2(rng))
        scale = max(1.0, float(np.max(np.abs(s)))) ** 2
        worst = max(worst, float(np.max(np.abs(s.T @ gram @ s - gram))) / scale)
    return worst


def cmd_pairing(args) -> int:
    gram = invariant_pairing(args.n).gram
    print(f"# invariant pairing on V_{args.n} (monomial basis)")
    for row in gram:
        print(" ".join(f"{x.real:+.6f}" for x in row))
    if args.check_invariance:
        res = pairing_invariance_residual(args.n, args.check_invariance, args.seed)
        ok = res <= args.invariance_tol
        print(f"invariance residual over {args.check_invariance} samples: {res:.3e} "
              f"(tol {args.invariance_tol:.0e}) {'PASS' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl2rigidity", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank-tol", type=float, default=1e-8, help="relative singular-value cutoff")
    common.add_argument("--eig-tol", type=float, default=1e-10, help="absolute eigenvalue floor")
    common.add_argument("--relator-tol", type=float, default=1e-8, help="relative relator deviation bound")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[common], help="twisted cohomology dimensions")
    p.add_argument("--input", required=True, help="presentation file or bundled name")
    p.add_argument("--rep", required=True, type=_parse_rep, help="sym:N or adj:N")
    p.add_argument("--lift", type=int, default=0)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", parents=[common], help="predicted versus computed dimensions")
    p.add_argument("--input", required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lifts", parents=[common], help="sign lifts and peripheral traces")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_lifts)

    p = sub.add_parser("weitzenbock", parents=[common], help="spectrum of H on V_n-valued forms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True, choices=range(4))
    p.set_defaults(func=cmd_weitzenbock)

    p = sub.add_parser("decompose", parents=[common], help="principal decomposition of sl(n)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("pairing", parents=[common], help="invariant pairing on V_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check-invariance", type=int, default=0, metavar="S", help="number of random SL(2,C) samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--invariance-tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_pairing)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ContractError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
