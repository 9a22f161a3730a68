"""Command line front end: ``tightclose {hypersurface,sr,verify,gb}``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import filtrations as filt
from .idealops import Ideal, power
from .polyring import (
    GREVLEX,
    LEX,
    PolyRing,
    block_order,
    buchberger,
    format_polynomial,
    initial_ideal,
    minimalize,
)
from .quotient import length_of_quotient, maximal_power
from .simplicial import (
    FacetFileError,
    SimplicialComplex,
    eulerian_equivalences,
    face_ring,
    fh_vectors,
    is_eulerian,
    length_via_h,
)
from .tightclosure import (
    DiagonalRing,
    f_rationality_probe,
    tight_closure_power_diagonal,
    tight_reduction_number,
    verify_closed_form,
)

SCHEMA = "tightclose/1"


class UsageError(Exception):
    pass


def default_p(N: int) -> int:
    """7 for N=3, otherwise the first of 5, 7, 11, ... not dividing N."""
    if N == 3:
        return 7
    return next(p for p in (5, 7, 11, 13, 17, 19, 23) if N % p)


def parse_range(text: str) -> list[int]:
    """``3``, ``2..4`` or ``1,3,5``."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def parse_q_range(text: str) -> list[int]:
    """Frobenius exponents from ``p^1..p^2`` (or plain ``1..2``)."""
    return parse_range(str(text).replace("p^", ""))


def _diagonal(N: int, p: int | None) -> DiagonalRing:
    p = p or default_p(N)
    try:
        return DiagonalRing(N, p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- hypersurface ---------------------------------------------------------


def cmd_hypersurface(args) -> tuple[dict, int]:
    if args.N < 2:
        raise UsageError("N must be at least 2")
    D = _diagonal(args.N, args.p)
    F = filt.Filtration.tight_diagonal(D)
    ns = list(range(1, args.n_max + 1))
    values = filt.hilbert_values(F, ns)
    try:
        coeffs = filt.fit_hilbert_coefficients(values, ns, 2)
    except filt.NotYetStableError as exc:
        raise UsageError(f"{exc} (raise --n-max)") from None
    k_max = max(args.k_max, D.N - 1)
    r_star = tight_reduction_number(D, k_max)
    agreement = []
    for k in range(1, args.k_verify + 1):
        rep = verify_closed_form(D, k, args.e_max)
        agreement.append({"k": k, "disagreements": len(rep.disagreements), "records": rep.records})
    frat = f_rationality_probe(D, args.e_max)
    closures = {k: [str(g) for g in tight_closure_power_diagonal(D, k).gens] for k in range(1, 4)}
    report = {
        "schema": SCHEMA,
        "command": "hypersurface",
        "N": D.N,
        "p": D.p,
        "e_max": args.e_max,
        "lengths": filt.length_table(F, ns, coeffs),
        "e_star": list(coeffs.e),
        "stable_from": coeffs.stable_from,
        "r_star": r_star,
        "tight_closures": closures,
        "closed_form_agreement": agreement,
        "f_rational": frat.f_rational,
        "f_rationality": str(frat),
        "all_powers_tightly_closed": D.N == 2,
    }
    ok = all(a["disagreements"] == 0 for a in agreement) and frat.consistent
    ok = ok and all(row["residual"] == 0 for row in report["lengths"] if row["n"] >= coeffs.stable_from)
    return report, 0 if ok else 1


# -- stanley-reisner ------------------------------------------------------


def cmd_sr(args) -> tuple[dict, int]:
    try:
        delta = SimplicialComplex.load(args.facets)
    except FacetFileError as exc:
        raise UsageError(f"{args.facets}: {exc}") from None
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.facets}: {exc}") from None
    R = face_ring(delta, args.p)
    v = fh_vectors(delta)
    table = []
    for n in range(args.n_max + 1):
        counted = length_of_quotient(R, maximal_power(R.ambient, n + 1))
        formula = length_via_h(delta, n)
        table.append({"n": n, "counted": counted, "formula": formula, "agree": counted == formula})
    eq = eulerian_equivalences(delta, args.p, args.s_max, args.trials, args.seed)
    report = {
        "schema": SCHEMA,
        "command": "sr",
        "n_vertices": delta.n_vertices,
        "facets": [sorted(f) for f in delta.facets],
        "d": delta.d,
        "f": list(v.f),
        "h": list(v.h),
        "chi": v.chi,
        "eulerian": is_eulerian(delta),
        "ed_star": v.h[-1],
        "length_table": table,
        "equivalences": eq.as_dict(),
    }
    ok = all(r["agree"] for r in table) and eq.consistent
    return report, 0 if ok else 1


# -- verify suites --------------------------------------------------------


def suite_initial_ideal(cfg):
    for N in cfg.N:
        p = cfg.p or default_p(N)
        S = PolyRing.make(p, "X Y Z")
        X, Y, Z = S.gens()
        for e in cfg.q:
            q = p**e
            for k in cfg.k:
                YZk = power(Ideal(S, [Y**q, Z**q]), k)
                got = initial_ideal([X**N + Y**N + Z**N] + YZk.gens)
                want = minimalize([(N, 0, 0)] + [next(iter(g.terms)) for g in YZk.gens])
                yield {"N": N, "p": p, "q": q, "k": k}, sorted(got) == sorted(want)


def suite_binomial(cfg):
    for d in cfg.d:
        for k in cfg.k_binom:
            bad = [n for n in cfg.n if len(set(filt.binomial_expand(d, k, n))) > 1]
            yield {"d": d, "k": k, "n": f"{min(cfg.n)}..{max(cfg.n)}"}, not bad


def suite_tight_intersection(cfg):
    for N in cfg.N_tight:
        D = _diagonal(N, cfg.p)
        I_star = tight_closure_power_diagonal(D, 1)
        for n in range(1, cfg.n_max + 1):
            In = D.R.pow(D.I, n)
            lhs = D.R.intersect(In, tight_closure_power_diagonal(D, n + 1))
            yield {"N": N, "p": D.p, "n": n}, D.R.equals(lhs, D.R.mul(In, I_star))


def suite_watanabe(cfg):
    D = _diagonal(2, cfg.p)
    for k in range(1, 4):
        rep = verify_closed_form(D, k, cfg.e_max)
        yield {"N": 2, "p": D.p, "k": k}, rep.ok and D.R.equals(tight_closure_power_diagonal(D, k), D.R.pow(D.I, k))


def suite_itoh_integral(cfg):
    for N in cfg.N_tight:
        D = _diagonal(N, cfg.p)
        for n in range(1, cfg.n_max + 1):
            In = D.R.pow(D.I, n)
            lhs = D.R.intersect(maximal_power(D.S, n + 1), In)
            yield {"N": N, "p": D.p, "n": n}, D.R.equals(lhs, D.R.mul(D.m, In))


def suite_hi_p(cfg):
    for N in cfg.N_tight:
        D = _diagonal(N, cfg.p)
        F = filt.Filtration.tight_diagonal(D)
        r = filt.filtration_reduction_number(F, cfg.n_max)
        for p_cond in sorted({0, *range(max(r - 1, 0), r + 2)}):
            res = filt.hi_p_check(F, p_cond, cfg.n_max)
            yield {"N": N, "p": D.p, "HI_p": p_cond, "n_max": cfg.n_max}, res.holds


def suite_hspoly(cfg):
    for N in cfg.N_tight:
        D = _diagonal(N, cfg.p)
        F = filt.Filtration.tight_diagonal(D)
        ns = list(range(1, 8))
        fit = filt.fit_hilbert_coefficients(filt.hilbert_values(F, ns), ns, 2)
        r = filt.filtration_reduction_number(F, 5)
        yield {"N": N, "p": D.p, "r": r}, filt.hsp_coefficients(F, r).e == fit.e


def suite_closed_form(cfg):
    for N in cfg.N_tight:
        D = _diagonal(N, cfg.p)
        for k in cfg.k:
            yield {"N": N, "p": D.p, "k": k}, verify_closed_form(D, k, cfg.e_max).ok


def suite_reduction_number(cfg):
    for N in cfg.N_tight:
        D = _diagonal(N, cfg.p)
        yield {"N": N, "p": D.p}, tight_reduction_number(D, max(N - 1, 3)) == N - 2


SUITES = {
    "initial-ideal": suite_initial_ideal,
    "binomial": suite_binomial,
    "tight-intersection": suite_tight_intersection,
    "watanabe": suite_watanabe,
    "itoh-integral": suite_itoh_integral,
    "hi-p": suite_hi_p,
    "hspoly": suite_hspoly,
    "closed-form": suite_closed_form,
    "reduction-number": suite_reduction_number,
}


class _VerifyConfig:
    def __init__(self, args):
        self.N = parse_range(args.N or "2..4")
        self.N_tight = [n for n in (parse_range(args.N) if args.N else [3, 4]) if n >= 3] or [3]
        self.p = args.p
        self.q = parse_q_range(args.q)
        self.k = parse_range(args.k or "1..3")
        self.k_binom = parse_range(args.k or "1..6")
        self.d = parse_range(args.d)
        self.n = parse_range(args.n)
        self.n_max = args.n_max
        self.e_max = args.e_max


def _run_suite(name, cfg):
    rows = []
    for instance, passed in SUITES[name](cfg):
        rows.append({"suite": name, "instance": instance, "pass": bool(passed)})
    return rows


def cmd_verify(args) -> tuple[list, int]:
    names = []
    for s in args.suite or ["all"]:
        names.extend(x.strip() for x in s.split(",") if x.strip())
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    cfg = _VerifyConfig(args)
    jobs = int(os.environ.get("TIGHTCLOSE_JOBS") or args.jobs or 1)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(lambda n: _run_suite(n, cfg), names))
    rows = [row for chunk in results for row in chunk]
    return rows, 0 if all(r["pass"] for r in rows) else 1


# -- gb -------------------------------------------------------------------


def _parse_order(text: str):
    if text == "grevlex":
        return GREVLEX
    if text == "lex":
        return LEX
    if text.startswith("block:"):
        return block_order(int(text.split(":", 1)[1]))
    raise UsageError(f"unknown order {text!r}")


def cmd_gb(args) -> tuple[dict, int]:
    try:
        S = PolyRing.make(args.p, args.vars)
        gens = [S(g) for g in args.gens]
    except ValueError as exc:
        raise UsageError(f"cannot parse generators: {exc}") from None
    order = _parse_order(args.order)
    G = buchberger(gens, order)
    lead = initial_ideal(gens, order)
    report = {
        "schema": SCHEMA,
        "command": "gb",
        "p": args.p,
        "variables": list(S.variables),
        "order": args.order,
        "groebner_basis": [format_polynomial(g, order) for g in G],
        "initial_ideal": [str(S.monomial(m)) for m in lead],
    }
    return report, 0


# -- output ---------------------------------------------------------------


def _emit(report, fmt: str, out) -> None:
    if fmt == "json":
        if isinstance(report, list):
            for row in report:
                out.write(json.dumps(row, sort_keys=True) + "\n")
        else:
            out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        rows = report if isinstance(report, list) else report.get("lengths") or report.get("length_table")
        if rows is None:
            rows = [{k: v for k, v in report.items() if not isinstance(v, (list, dict))}]
        flat = [{k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()} for r in rows]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(flat[0]))
        writer.writeheader()
        writer.writerows(flat)
        out.write(buf.getvalue())
        return
    if isinstance(report, list):
        for row in report:
            status = "PASS" if row["pass"] else "FAIL"
            out.write(f"{status} {row['suite']} {json.dumps(row['instance'], sort_keys=True)}\n")
        return
    for key, value in report.items():
        if key in ("closed_form_agreement",):
            value = [{"k": a["k"], "disagreements": a["disagreements"]} for a in value]
        out.write(f"{key}: {json.dumps(value) if isinstance(value, (list, dict)) else value}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tightclose", description=__doc__.splitlines()[0])
    parser.add_argument("--emit", choices=["json", "csv", "text"], default="json")
    parser.add_argument("--jobs", type=int, default=1, help="parallel suites (TIGHTCLOSE_JOBS overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hypersurface", help="tight Hilbert data of F_p[x,y,z]/(x^N+y^N+z^N), I=(y,z)")
    h.add_argument("--N", type=int, required=True)
    h.add_argument("--p", type=int, default=None, help="default 7 for N=3, otherwise 5 (p must not divide N)")
    h.add_argument("--e-max", type=int, default=2)
    h.add_argument("--n-max", type=int, default=6)
    h.add_argument("--k-max", type=int, default=4, help="window for the tight reduction number")
    h.add_argument("--k-verify", type=int, default=2, help="check closed forms of (I^k)* for k <= this")

    s = sub.add_parser("sr", help="Stanley-Reisner invariants of a facet file",
                       description="Facet file: one facet per line, space-separated positive vertex "
                                   "indices, '#' starts a comment. JSON {\"n\": int, \"facets\": [[int]]} "
                                   "is also accepted.")
    s.add_argument("facets")
    s.add_argument("--p", type=int, default=101)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--s-max", type=int, default=3)
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--n-max", type=int, default=5)

    v = sub.add_parser("verify", help="run property suites",
                       description="Suites: " + ", ".join(SUITES) + ". Explicit filtrations extend "
                                   "by I_n = I^(n-k) I_k beyond the given list.")
    v.add_argument("--suite", action="append")
    v.add_argument("--N", default=None, help="range, e.g. 2..4")
    v.add_argument("--p", type=int, default=None)
    v.add_argument("--q", default="p^1..p^2")
    v.add_argument("--k", default=None, help="default 1..3 (1..6 for the binomial suite)")
    v.add_argument("--d", default="1..6")
    v.add_argument("--n", default="0..12")
    v.add_argument("--n-max", type=int, default=4)
    v.add_argument("--e-max", type=int, default=2)

    g = sub.add_parser("gb", help="print a reduced Groebner basis and initial ideal")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--vars", required=True, help='e.g. "x y z"')
    g.add_argument("--order", default="grevlex", help="grevlex, lex or block:K")
    g.add_argument("gens", nargs="+")
    return parser


COMMANDS = {"hypersurface": cmd_hypersurface, "sr": cmd_sr, "verify": cmd_verify, "gb": cmd_gb}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tightclose: error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.emit, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
