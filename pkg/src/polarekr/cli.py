"""Command-line entry point: ``polarekr count|enum|family|search|sweep``.

Exit status is 0 on success, 1 when a verification finds a violated
property, and 2 on invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import subspace as sa
from .errors import PolarError, TooLarge
from .extremal import VERTEX_CAP, max_nontrivial_search
from .families import (
    Family,
    build_h1,
    build_h2,
    build_trivial,
    canonical_seeds,
    count_h1,
    covering_number,
    is_maximal,
    is_t_intersecting,
    is_trivial,
)
from .gfq import MAX_ORDER, prime_power
from .polar import PolarSpace
from .qcount import ProblemParams, anzahl, f0, gaussian, h2_count
from .sweep import failures, sweep_lemmas


def _q(text: str) -> int:
    try:
        q = int(text)
        prime_power(q)
    except (ValueError, PolarError):
        raise argparse.ArgumentTypeError("q must be a prime power")
    if q > MAX_ORDER:
        raise argparse.ArgumentTypeError(f"q must be at most {MAX_ORDER}")
    return q


def _ints(text: str) -> list[int]:
    """``3``, ``2:6`` (inclusive) or ``2,3,5``."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_subspace(path: str, sp: PolarSpace) -> sa.Subspace:
    rows = json.loads(Path(path).read_text())
    return sa.from_rows(sp.field, rows, sp.n)


def cmd_count(args) -> int:
    q = args.q
    if args.what == "gaussian":
        value = gaussian(args.a, args.b, q)
    elif args.what == "anzahl":
        value = anzahl(args.nu, args.m, args.m1, q)
    else:
        p = ProblemParams(args.nu, args.m, args.t, q)
        if args.what == "f0":
            value, warn = f0(p)
            if warn:
                print(f"warning: f0 hypotheses (m >= t+2, 2nu >= 3m-t+3) fail at {p.as_dict()}", file=sys.stderr)
        elif args.what == "h2":
            value = h2_count(p)
        else:
            sp = PolarSpace(args.nu, q)
            T, U = canonical_seeds(sp, args.m, args.t, args.seed_kind)
            value = count_h1(sp, T, U, args.t)
    print(value)
    return 0


def cmd_enum(args) -> int:
    sp = PolarSpace(args.nu, args.q)
    containing = _read_subspace(args.containing, sp) if args.containing else None
    within = _read_subspace(args.within, sp) if args.within else None
    stream = sp.enumerate_isotropic(args.m, containing, within)
    if args.count_only:
        _emit(f"{sum(1 for _ in stream)}\n", args.out)
    else:
        _emit("".join(json.dumps(W.to_json()) + "\n" for W in stream), args.out)
    return 0


def cmd_family_build(args) -> int:
    sp = PolarSpace(args.nu, args.q)
    m, t = args.m, args.t
    if args.kind == "h1":
        T, U = canonical_seeds(sp, m, t, args.seed_kind)
        fam = build_h1(sp, T, U, t)
    elif args.kind == "h2":
        Z = _read_subspace(args.z, sp) if args.z else canonical_seeds(sp, m, t, "zSeed")
        fam = build_h2(sp, Z, m, t)
    else:
        T = sp.span([sp.e(i) for i in range(1, t + 1)])
        fam = build_trivial(sp, T, m)
    _emit(fam.dumps(), args.out)
    return 0


def verify_report(fam: Family, t: int) -> dict:
    try:
        maximal = is_maximal(fam, t)
    except TooLarge:
        maximal = None
    tau = covering_number(fam, t)[0] if fam.members else None
    return {
        "size": len(fam),
        "tIntersecting": is_t_intersecting(fam, t),
        "trivial": is_trivial(fam, t) if fam.members else None,
        "tau": tau,
        "maximal": maximal,
    }


def cmd_family_verify(args) -> int:
    fam = Family.from_json(json.loads(Path(args.file).read_text()))
    report = verify_report(fam, args.t)
    _emit(_dump(report), args.out)
    return 0 if report["tIntersecting"] else 1


def cmd_search(args) -> int:
    sp = PolarSpace(args.nu, args.q)
    res = max_nontrivial_search(
        sp, args.m, args.t,
        all_optima=args.all_optima,
        lower_bound=args.lower_bound,
        workers=args.workers,
        vertex_cap=args.vertex_cap,
    )
    _emit(res.dumps(timing=not args.no_timing), args.out)
    return 0


def cmd_sweep(args) -> int:
    report = sweep_lemmas(args.nu_range, args.m_range, args.t_range, args.q_list)
    _emit(_dump(report), args.out)
    bad = failures(report)
    for r in bad:
        print(f"FAIL {r['claim']} at {r['params']}: lhs={r['lhs']} rhs={r['rhs']}", file=sys.stderr)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polarekr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def params(p, nu=True, m=True, t=True):
        p.add_argument("--q", type=_q, required=True, help="field order, a prime power <= 64")
        if nu:
            p.add_argument("--nu", type=int, required=True, help="rank; the ambient space is F_q^(2nu)")
        if m:
            p.add_argument("--m", type=int, required=True, help="dimension of family members")
        if t:
            p.add_argument("--t", type=int, required=True, help="intersection parameter")

    count = sub.add_parser("count", help="closed-form counts").add_subparsers(dest="what", required=True)
    p = count.add_parser("gaussian", help="Gaussian binomial [a b]_q")
    params(p, nu=False, m=False, t=False)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = count.add_parser("anzahl", help="isotropic m-spaces through a fixed isotropic m1-space")
    params(p, t=False)
    p.add_argument("--m1", type=int, required=True)
    for name, text in [("f0", "threshold f0(nu,m,t)"), ("h2", "|H2(Z)| for isotropic Z"), ("h1", "|H1(T,U)| by lattice recursion")]:
        p = count.add_parser(name, help=text)
        params(p)
        if name == "h1":
            p.add_argument("--seed-kind", choices=["isotropicJoin", "hyperbolicJoin"], default="isotropicJoin")
    for p in count.choices.values():
        p.set_defaults(func=cmd_count)

    enum = sub.add_parser("enum", help="enumerations").add_subparsers(dest="what", required=True)
    p = enum.add_parser("isotropic", help="totally isotropic m-spaces as JSON lines")
    params(p, t=False)
    p.add_argument("--containing", metavar="FILE", help="subspace JSON every output must contain")
    p.add_argument("--within", metavar="FILE", help="subspace JSON every output must lie in")
    p.add_argument("--count-only", action="store_true", help="print only the number of subspaces")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_enum)

    fam = sub.add_parser("family", help="build or verify families").add_subparsers(dest="what", required=True)
    p = fam.add_parser("build", help="construct H1, H2 or a trivial family")
    p.add_argument("--kind", choices=["h1", "h2", "trivial"], required=True)
    params(p)
    p.add_argument("--seed-kind", choices=["isotropicJoin", "hyperbolicJoin"], default="isotropicJoin")
    p.add_argument("--z", metavar="FILE", help="subspace JSON for Z (default <e_1..e_{t+2}>)")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_family_build)
    p = fam.add_parser("verify", help="report size, t-intersection, triviality, tau, maximality")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--file", required=True, metavar="FILE")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_family_verify)

    search = sub.add_parser("search", help="exhaustive search").add_subparsers(dest="what", required=True)
    p = search.add_parser("max-nontrivial", help="maximum non-trivial t-intersecting families")
    params(p)
    p.add_argument("--all-optima", action="store_true", help="return every maximum family")
    p.add_argument("--lower-bound", type=int, help="known achievable size, used for pruning")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--vertex-cap", type=int, default=VERTEX_CAP)
    p.add_argument("--no-timing", action="store_true", help="omit elapsedMs for reproducible output")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_search)

    sweep = sub.add_parser("sweep", help="numeric lemma sweeps").add_subparsers(dest="what", required=True)
    p = sweep.add_parser("lemmas", help="check the size inequalities on a grid")
    p.add_argument("--nu-range", type=_ints, default=_ints("2:8"))
    p.add_argument("--m-range", type=_ints, default=_ints("2:5"))
    p.add_argument("--t-range", type=_ints, default=_ints("1:3"))
    p.add_argument("--q-list", type=_ints, default=[2, 3])
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PolarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
