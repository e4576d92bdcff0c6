"""Command-line front end.

Exit codes: 0 success, 2 malformed input, 3 precondition violated,
4 result undetermined (an interval or partial answer is still printed).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .arrangement import (
    Arrangement,
    ArrangementError,
    PreconditionError,
    intersection_poset,
    load_arrangement,
)
from .charic import (
    UndeterminedError,
    cc_ic_dim2,
    cc_ic_dim3_equal,
    cc_pushforward,
    deltas,
    gammas,
    ih_dim2,
    ih_dim3_equal,
    ps_report,
)
from .exactmath import format_rational, parse_rational
from .length import exact_length, is_length_one, is_length_two
from .localcohom import (
    Strategy,
    beta3,
    chiF_over_r,
    delta_polynomials,
    eigenspace_dims,
    max_line_multiplicity,
    n3,
)
from .localsys import LocalSystem, LocalSystemError, check_length
from .salvetti import coned_cohomology, twisted_betti

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNDETERMINED = 0, 2, 3, 4


class Undetermined(Exception):
    """Carries a partial payload out of a command."""

    def __init__(self, payload):
        super().__init__("result undetermined")
        self.payload = payload


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="arrsheaf",
        description="Exact invariants of rank-one local systems on arrangement complements.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, ls=True, ls_required=False):
        sp.add_argument("file", help="arrangement JSON file")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        if ls:
            g = sp.add_mutually_exclusive_group(required=ls_required)
            g.add_argument("--ls", help="comma-separated exponents, e.g. 0,1/2,1/2")
            g.add_argument("--s", help="equal exponent on every hyperplane, e.g. 1/3")
            g.add_argument("--batch", help="JSON file with an array of local systems")
            sp.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
        sp.add_argument("--beta3", type=int, choices=(0, 1, 2), help="override the mod-3 invariant")
        sp.add_argument("--no-oracle", action="store_true", help="never call the Salvetti oracle")
        sp.add_argument("--decone", type=int, default=0, help="hyperplane sent to infinity by the oracle")

    common(sub.add_parser("arr", help="intersection lattice summary"), ls=False)
    sp = sub.add_parser("length", help="length bounds and decomposition factors")
    common(sp, ls_required=True)
    sp.add_argument("--user-dim", action="append", default=[], metavar="SUPPORT=VALUE",
                    help="local dimension for an edge given by its support, e.g. 0,1,2=1")
    sp.add_argument("--all-orders", action="store_true",
                    help="check every deletion order in the recursion")
    common(sub.add_parser("cc", help="characteristic cycles"), ls_required=True)
    common(sub.add_parser("ih", help="intersection cohomology Betti numbers"), ls_required=True)
    sp = sub.add_parser("ps", help="closed triple-point formulas against the general pipeline")
    sp.add_argument("file")
    sp.add_argument("--s", required=True)
    sp.add_argument("--beta3", type=int, choices=(0, 1, 2))
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp = sub.add_parser("milnor", help="Milnor fibre data")
    sp.add_argument("file")
    sp.add_argument("--s")
    sp.add_argument("--beta3", type=int, choices=(0, 1, 2))
    sp.add_argument("--no-oracle", action="store_true")
    sp.add_argument("--format", choices=("json", "text"), default="json")

    op = sub.add_parser("oracle", help="Salvetti-complex oracle")
    osub = op.add_subparsers(dest="oracle_command", required=True)
    sp = osub.add_parser("betti", help="twisted Betti numbers of a real line arrangement")
    sp.add_argument("file")
    sp.add_argument("--ls", required=True)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp = osub.add_parser("coned", help="cohomology of the projectivized complement")
    sp.add_argument("file")
    sp.add_argument("--ls", required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--decone", type=int, default=0)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    return p


# ---------------------------------------------------------------------------
# helpers


def _local_system(A: Arrangement, ls: str | None, s: str | None) -> LocalSystem:
    if s is not None:
        try:
            return LocalSystem.equal(A.r, parse_rational(s))
        except ValueError as exc:
            raise LocalSystemError(str(exc)) from None
    L = LocalSystem.parse(ls)
    check_length(A, L)
    return L


def _batch(A: Arrangement, path: str) -> list[LocalSystem]:
    try:
        with open(path, encoding="utf-8") as fh:
            items = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise LocalSystemError(f"cannot read batch file: {exc}") from None
    if not isinstance(items, list):
        raise LocalSystemError("a batch file holds a JSON array of local systems")
    out = []
    for item in items:
        L = LocalSystem.parse(item)
        check_length(A, L)
        out.append(L)
    return out


def _strategy(args) -> Strategy:
    return Strategy(
        use_oracle=not getattr(args, "no_oracle", False),
        beta3=getattr(args, "beta3", None),
        decone_index=getattr(args, "decone", 0),
    )


def _user_dims(items) -> dict:
    out = {}
    for item in items:
        try:
            sup, val = item.split("=")
            key = frozenset(int(x) for x in sup.split(",") if x.strip() != "")
            out[key] = int(val)
        except ValueError:
            raise LocalSystemError(f"bad --user-dim {item!r}; expected e.g. 0,1,2=1") from None
        if out[key] < 0:
            raise LocalSystemError("user dimensions must be non-negative")
    return out


# ---------------------------------------------------------------------------
# commands (each returns a JSON-ready payload or raises)


def cmd_arr(A: Arrangement, args) -> dict:
    out = {"arrangement": A.to_dict(), "r": A.r}
    out.update(intersection_poset(A).to_dict())
    return out


def cmd_length(A: Arrangement, L: LocalSystem, args) -> dict:
    rep = exact_length(A, L, _strategy(args), _user_dims(getattr(args, "user_dim", [])),
                       all_orders=getattr(args, "all_orders", False))
    out = {"local_system": L.to_list(), **rep.to_dict()}
    if A.central:
        out["length_one_criterion"] = is_length_one(A, L)
    ok, W, _ = is_length_two(A, L)
    out["length_two_criterion"] = ok
    out["length_two_witness"] = None if W is None else W.id
    if not rep.determined:
        raise Undetermined(out)
    return out


def cmd_cc(A: Arrangement, L: LocalSystem, args) -> dict:
    out = {"local_system": L.to_list(), "pushforward": cc_pushforward(A).to_dict()}
    if A.n == 2:
        out["ic"] = cc_ic_dim2(A, L).to_dict()
        out["gamma"] = [
            {"edge": intersection_poset(A).edge(sup).id, "gamma": g}
            for sup, g in gammas(A, L).items()
        ]
    elif A.n == 3:
        s = L.equal_value()
        if s is None or s == 0 or not A.central:
            raise PreconditionError(
                "the IC cycle in C^3 needs a central arrangement and equal non-trivial monodromy"
            )
        out["ic"] = cc_ic_dim3_equal(A, s, args.beta3, not args.no_oracle).to_dict()
        out["deltas"] = deltas(A, s)
    else:
        raise PreconditionError("cc is implemented for n = 2 and n = 3")
    return out


def cmd_ih(A: Arrangement, L: LocalSystem, args) -> dict:
    out = {"local_system": L.to_list()}
    if A.n == 2:
        out.update(ih_dim2(A, L, not args.no_oracle).to_dict())
    elif A.n == 3:
        s = L.equal_value()
        if s is None or s == 0 or not A.central:
            raise PreconditionError(
                "IH in C^3 needs a central arrangement and equal non-trivial monodromy"
            )
        out.update(ih_dim3_equal(A, s, args.beta3, not args.no_oracle).to_dict())
    else:
        raise PreconditionError("ih is implemented for n = 2 and n = 3")
    return out


def cmd_ps(A: Arrangement, args) -> dict:
    return ps_report(A, parse_rational(args.s), args.beta3)


def cmd_milnor(A: Arrangement, args) -> dict:
    if not (A.central and A.essential and A.n == 3):
        raise PreconditionError("Milnor data needs a central essential arrangement in C^3")
    out = {"chiF_over_r": chiF_over_r(A), "n3": n3(A), "r": A.r}
    if max_line_multiplicity(A) <= 3:
        md = delta_polynomials(A, args.beta3)
        out.update(md.to_dict())
    else:
        out.update({"beta3": "unknown", "beta3_provenance": "multiplicity above 3",
                    "delta0": [-1, 1], "delta1": None, "delta2": None})
    undetermined = False
    if args.s is not None:
        s = parse_rational(args.s)
        h1, h2 = eigenspace_dims(A, s, args.beta3, not args.no_oracle)
        out["s"] = format_rational(Fraction(s) % 1)
        out["eigenspace"] = {"h1": h1.to_dict(), "h2": h2.to_dict()}
        undetermined = not (h1.known and h2.known)
    if undetermined:
        raise Undetermined(out)
    return out


def cmd_oracle_betti(A: Arrangement, args) -> dict:
    L = _local_system(A, args.ls, None)
    if A.n != 2:
        raise PreconditionError("the oracle takes arrangements in the plane")
    b = twisted_betti(A, L)
    return {"local_system": L.to_list(), "betti": list(b)}


def cmd_oracle_coned(A: Arrangement, args) -> dict:
    L = _local_system(A, args.ls, None)
    if not A.essential:
        raise PreconditionError("deconing needs an essential arrangement")
    d = coned_cohomology(A, L, args.q, args.decone)
    return {"local_system": L.to_list(), "q": args.q, **d.to_dict()}


# ---------------------------------------------------------------------------
# rendering


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False)
    lines: list[str] = []
    _text(payload, lines, 0)
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _text(obj, lines: list[str], depth: int) -> None:
    pad = "  " * depth
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], (dict, list))):
                lines.append(f"{pad}{k}:")
                _text(v, lines, depth + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        if obj and all(isinstance(x, dict) for x in obj):
            keys = list(obj[0].keys())
            rows = [[_scalar(x.get(k)) for k in keys] for x in obj]
            widths = [max(len(k), *(len(r[i]) for r in rows)) for i, k in enumerate(keys)]
            lines.append(pad + "  ".join(k.ljust(w) for k, w in zip(keys, widths)))
            for r in rows:
                lines.append(pad + "  ".join(c.ljust(w) for c, w in zip(r, widths)))
        else:
            for x in obj:
                if isinstance(x, (dict, list)):
                    lines.append(f"{pad}-")
                    _text(x, lines, depth + 1)
                else:
                    lines.append(f"{pad}- {_scalar(x)}")
    else:
        lines.append(pad + _scalar(obj))


# ---------------------------------------------------------------------------
# dispatch


_PER_SYSTEM = {"length": cmd_length, "cc": cmd_cc, "ih": cmd_ih}


def _run_one(command: str, A: Arrangement, L: LocalSystem, args) -> tuple[int, dict]:
    try:
        return EXIT_OK, _PER_SYSTEM[command](A, L, args)
    except Undetermined as u:
        return EXIT_UNDETERMINED, u.payload
    except UndeterminedError as exc:
        return EXIT_UNDETERMINED, {"local_system": L.to_list(), "error": str(exc)}
    except PreconditionError as exc:
        return EXIT_PRECONDITION, {"local_system": L.to_list(), "error": str(exc)}


def _batch_worker(job):
    command, A, L, args = job
    return _run_one(command, A, L, args)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "json")
    try:
        A = load_arrangement(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except ArrangementError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE

    try:
        if args.command in _PER_SYSTEM:
            if getattr(args, "batch", None):
                systems = _batch(A, args.batch)
                jobs = [(args.command, A, L, args) for L in systems]
                if args.jobs > 1:
                    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                        results = list(pool.map(_batch_worker, jobs))
                else:
                    results = [_batch_worker(j) for j in jobs]
                print(render([p for _, p in results], fmt), file=out)
                return max((c for c, _ in results), default=EXIT_OK)
            L = _local_system(A, args.ls, args.s)
            code, payload = _run_one(args.command, A, L, args)
            if code == EXIT_PRECONDITION:
                print(f"error: {payload['error']}", file=err)
                return code
            if "error" in payload:
                print(f"undetermined: {payload['error']}", file=err)
            print(render(payload, fmt), file=out)
            return code
        if args.command == "arr":
            payload = cmd_arr(A, args)
        elif args.command == "ps":
            payload = cmd_ps(A, args)
        elif args.command == "milnor":
            payload = cmd_milnor(A, args)
        elif args.oracle_command == "betti":
            payload = cmd_oracle_betti(A, args)
        else:
            payload = cmd_oracle_coned(A, args)
    except Undetermined as u:
        print(render(u.payload, fmt), file=out)
        return EXIT_UNDETERMINED
    except UndeterminedError as exc:
        print(f"undetermined: {exc}", file=err)
        return EXIT_UNDETERMINED
    except (LocalSystemError, ArrangementError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECONDITION
    print(render(payload, fmt), file=out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
