"""Command-line front door: factor, construct, verify, search, harness.

Exit codes: 0 success or verdict true, 1 verdict false or violations found,
2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys

from . import constructors
from .algebra import field_of_order, is_prime
from .cyclotomy import cyclo_factor, verify_factor_system
from .groups import BudgetExceeded, enumerate_group, verify_p_base
from .search import DEFAULT_SYLOW_BUDGET, catalog, load_catalog, minimal_p_base, run_harness

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pbase", description="Construct, certify and search for p-bases of finite groups.")
    ap.add_argument("--budget", type=_positive, default=None,
                    help="enumeration cap in group elements (default: $PBASE_BUDGET or 2000000)")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factor", help="structured factorization of X^(p^n) - 1 over F_q")
    f.add_argument("--p", type=_prime, required=True)
    f.add_argument("--q", type=_positive, required=True)
    f.add_argument("--n", type=_positive, required=True)
    f.add_argument("--json", action="store_true")

    c = sub.add_parser("construct", help="build a p-base by an explicit recipe")
    c.add_argument("--family", choices=["sym", "alt", "gl", "sl", "psl"], required=True)
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--q", type=_positive)
    c.add_argument("--p", type=_prime, required=True)
    c.add_argument("--verify", action="store_true")
    c.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="certify a candidate p-base")
    v.add_argument("--group", required=True)
    v.add_argument("--p", type=_prime, required=True)
    v.add_argument("--delta", required=True, help="elements separated by '|'; empty string for the empty set")
    v.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="exhaustive minimal p-base search inside one Sylow subgroup")
    s.add_argument("--group", required=True)
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--max-size", type=_nonnegative, default=3)
    s.add_argument("--max-sylow", type=_positive, default=DEFAULT_SYLOW_BUDGET)
    s.add_argument("--json", action="store_true")

    h = sub.add_parser("harness", help="run the bound checks over a catalog")
    h.add_argument("--catalog", default="default", help="'default' or a JSON file of entries")
    h.add_argument("--out", help="write the JSON report here")
    h.add_argument("--max-size", type=_nonnegative, default=3)
    h.add_argument("--max-sylow", type=_positive, default=DEFAULT_SYLOW_BUDGET)
    h.add_argument("--workers", type=_positive, default=1)
    h.add_argument("--json", action="store_true")
    return ap


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


@contextlib.contextmanager
def _budget(cap):
    if cap is None:
        yield
        return
    old = os.environ.get("PBASE_BUDGET")
    os.environ["PBASE_BUDGET"] = str(cap)
    try:
        yield
    finally:
        if old is None:
            os.environ.pop("PBASE_BUDGET", None)
        else:
            os.environ["PBASE_BUDGET"] = old


def _field(q):
    try:
        return field_of_order(q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _group(text):
    try:
        return enumerate_group(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fmt_set(elements) -> str:
    return "{" + ", ".join(str(x) for x in elements) + "}"


def _print_certificate(cert, out):
    d = cert.to_dict()
    out.write(f"group {d['descriptor']}, p = {d['p']}\n")
    out.write(f"Δ = {_fmt_set(cert.delta)}\n")
    out.write(f"|P| = {d['sylow_order']}, |C(Δ)| = {d['centralizer_order']}, "
              f"p-nilpotent: {str(d['p_nilpotent']).lower()}, commutative: {str(d['commutative']).lower()}\n")
    out.write(f"certificate {str(cert.verdict).lower()}\n")


def cmd_factor(args, out) -> int:
    F = _field(args.q)
    if args.q % args.p == 0:
        raise UsageError(f"p = {args.p} divides q = {args.q}")
    try:
        fs = cyclo_factor(args.p, F, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = verify_factor_system(fs)
    if args.json:
        out.write(dumps(fs.to_dict()) + "\n")
    else:
        out.write(f"X^{args.p ** args.n} - 1 over F_{args.q}: e = {fs.e}, s = {fs.s}\n")
        for g in fs.gamma:
            out.write(f"  gamma[{g.level},{g.index}] = {g.poly}\n")
        out.write("verified\n" if ok else f"verification failed: {ok.reason}\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_construct(args, out) -> int:
    fam, n, p = args.family, args.n, args.p
    if fam in ("sym", "alt"):
        if args.q is not None:
            raise UsageError("--q applies only to gl, sl and psl")
        delta = constructors.symmetric_base(n, p) if fam == "sym" else constructors.alternating_base(n, p)
        desc = f"{'S' if fam == 'sym' else 'A'}:{n}"
    else:
        if args.q is None:
            raise UsageError(f"--q is required for {fam}")
        F = _field(args.q)
        delta = {"gl": constructors.gl_base, "sl": constructors.sl_base, "psl": constructors.psl_base}[fam](n, F, p)
        desc = f"{fam.upper()}:{n}:{args.q}"
    cert = verify_p_base(_group(desc), p, delta) if args.verify else None
    if args.json:
        doc = {"family": fam, "n": n, "q": args.q, "p": p, "group": desc, "delta": [str(x) for x in delta]}
        if cert is not None:
            doc["certificate"] = cert.to_dict()
        out.write(dumps(doc) + "\n")
    else:
        out.write(f"Δ = {_fmt_set(delta)}\n")
        if cert is not None:
            _print_certificate(cert, out)
    return EXIT_OK if cert is None or cert.verdict else EXIT_FALSE


def cmd_verify(args, out) -> int:
    G = _group(args.group)
    items = [t for t in args.delta.split("|") if t.strip()]
    try:
        delta = [G.parse_element(t) for t in items]
        idx = [G.index(x) for x in delta]
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad element: {exc}") from None
    try:
        cert = verify_p_base(G, args.p, idx)
    except ValueError as exc:
        # a non-p-element can never be part of a p-base
        if args.json:
            out.write(dumps({"descriptor": G.descriptor, "p": args.p, "verdict": False, "error": str(exc)}) + "\n")
        else:
            out.write(f"not a p-base: {exc}\n")
        return EXIT_FALSE
    if args.json:
        out.write(dumps(cert.to_dict()) + "\n")
    else:
        _print_certificate(cert, out)
    return EXIT_OK if cert.verdict else EXIT_FALSE


def cmd_search(args, out) -> int:
    G = _group(args.group)
    rep = minimal_p_base(G, args.p, max_size=args.max_size, budget=args.max_sylow)
    if args.json:
        out.write(dumps(rep.to_dict()) + "\n")
    else:
        if rep.size is None:
            out.write(f"no {args.p}-base of size <= {args.max_size} inside a Sylow subgroup of order {rep.sylow_order}\n")
        else:
            out.write(f"minimal size {rep.size}, witness {_fmt_set(rep.witness)}\n")
            if rep.commutative_witness is not None:
                out.write(f"commuting witness {_fmt_set(rep.commutative_witness)}\n")
        out.write(f"solvable: {str(rep.solvable).lower()}, abelian Sylow: {str(rep.abelian_sylow).lower()}, "
                  f"class {rep.nilpotency_class}\n")
    return EXIT_OK if rep.size is not None else EXIT_FALSE


def cmd_harness(args, out) -> int:
    if args.catalog == "default":
        entries = catalog()
    else:
        try:
            entries = load_catalog(args.catalog)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read catalog: {exc}") from None
    res = run_harness(entries, max_size=args.max_size, workers=args.workers, budget=args.max_sylow)
    doc = res.to_dict()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(doc) + "\n")
    if args.json:
        out.write(dumps(doc) + "\n")
    else:
        for r in res.reports:
            size = "none" if r.size is None else r.size
            out.write(f"{r.group:10} p={r.p:<3} |P|={r.sylow_order:<5} size={size} "
                      f"commutative={str(r.commutative).lower()} class={r.nilpotency_class}\n")
        out.write(f"{len(res.reports)} rows, {len(res.violations)} violations\n")
        for v in res.violations:
            out.write(f"VIOLATION {v['group']} p={v['p']} {v['rule']}: {v['detail']}\n")
    return EXIT_FALSE if res.violations else EXIT_OK


COMMANDS = {"factor": cmd_factor, "construct": cmd_construct, "verify": cmd_verify, "search": cmd_search,
            "harness": cmd_harness}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with _budget(args.budget):
            return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"pbase: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"pbase: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
