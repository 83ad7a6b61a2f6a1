"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a check found violations,
2 usage, parse or budget errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import catalog, clifford, fileformat
from .classify import DEFAULT_BUDGET, BudgetExceeded, fingerprint, generate_constraints, grid_search
from .nlie import SupertraceError, induce, is_supertrace, series, supertrace_space, verify_axioms
from .scalar import GaussScalar
from .superspace import BasisSignature

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def format_vector(v, names) -> str:
    parts = []
    for c, name in zip(v, names):
        if not c:
            continue
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{c}*{name}")
    return " + ".join(parts) if parts else "0"


def _tuple_text(t, names):
    return "(" + ",".join(names[a] for a in t) + ")"


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path, lenient=False):
    return fileformat.load(path, strict=not lenient)


def _dims(text: str) -> BasisSignature:
    try:
        m, n = (int(p) for p in text.split(","))
        return BasisSignature(m, n)
    except ValueError:
        raise UsageError(f"--dim expects 'm,n', got {text!r}") from None


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    try:
        return max(1, int(os.environ.get("SUPERLIE_THREADS", "1")))
    except ValueError:
        return 1


def _report_lines(T, report):
    word = lambda ok: "ok" if ok else "FAILED"
    lines = [
        f"grading {word(report.grading_ok)}, skew {word(report.skew_ok)}, "
        f"filippov {word(report.filippov_ok)}"
    ]
    for w in report.witnesses:
        if w.kind == "filippov":
            lines.append(
                f"  filippov y={_tuple_text(w.y, T.names)} x={_tuple_text(w.x, T.names)} "
                f"residual: {format_vector(w.residual, T.names)}"
            )
        else:
            lines.append(
                f"  {w.kind} key={_tuple_text(w.x, T.names)} value: {format_vector(w.residual, T.names)}"
            )
    return lines


def _report_json(T, report):
    return {
        "grading_ok": report.grading_ok,
        "skew_ok": report.skew_ok,
        "filippov_ok": report.filippov_ok,
        "witnesses": [
            {
                "kind": w.kind,
                "y": [T.names[a] for a in w.y],
                "x": [T.names[a] for a in w.x],
                "residual": {T.names[k]: c.to_json() for k, c in enumerate(w.residual) if c},
            }
            for w in report.witnesses
        ],
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    T = _load(args.file, args.lenient)
    report = verify_axioms(T, workers=_threads(args), exhaustive=args.exhaustive)
    if args.json:
        print(json.dumps(_report_json(T, report), sort_keys=True))
    else:
        print("\n".join(_report_lines(T, report)))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_induce(args) -> int:
    T = _load(args.file)
    if args.supertrace == "auto":
        space = supertrace_space(T)
        if args.index is not None:
            if not 0 <= args.index < len(space):
                raise UsageError(f"--index {args.index} out of range; supertrace space has dimension {len(space)}")
            S = space[args.index]
        elif len(space) != 1:
            raise UsageError(
                f"supertrace space has dimension {len(space)}; pick a basis element with --index"
            )
        else:
            S = space[0]
    else:
        try:
            doc = json.loads(Path(args.supertrace).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise fileformat.AlgebraFormatError(f"cannot read supertrace: {exc}") from None
        S = fileformat.functional_from_document(doc, T)
    try:
        out = induce(T, S)
    except SupertraceError as exc:
        kind, where = exc.witness
        where = T.names[where] if kind == "odd" else _tuple_text(where, T.names)
        print(f"not a supertrace: nonzero on {kind} {where}", file=sys.stderr)
        return EXIT_FAIL
    _emit(fileformat.dumps(out), args.out)
    return EXIT_OK


def cmd_series(args) -> int:
    T = _load(args.file)
    res = series(T, kind=args.kind)
    sym = "D" if args.kind == "derived" else "C"
    m = T.sig.even_count
    flag = "solvable" if args.kind == "derived" else "nilpotent"
    if args.json:
        splits = [list(sub.parity_split(m)) for sub in res.terms]
        print(json.dumps({"kind": args.kind, "dims": list(res.dims), "splits": splits, flag: res.reaches_zero}))
        return EXIT_OK
    for p, sub in enumerate(res.terms):
        ev, od = sub.parity_split(m)
        print(f"{sym}^{p}: dim {sub.rank} ({ev}|{od})")
    print(f"{flag}: {'yes' if res.reaches_zero else 'no'}")
    return EXIT_OK


def _proposition_doc(n):
    basis = clifford.export_basis(n)
    names = [clifford.monomial_name(b, n) for b in basis]
    table = clifford.proposition_table(n)
    brackets = []
    for I in basis:
        for J in basis:
            for K in basis:
                x = table[(I, J, K)]
                if x:
                    brackets.append(
                        {
                            "args": [clifford.monomial_name(b, n) for b in (I, J, K)],
                            "value": {clifford.monomial_name(k, n): c.to_json() for k, c in x.terms.items()},
                        }
                    )
    return {"n": n, "basis": names, "brackets": brackets}


def _matrix_json(mat):
    return [[c.to_json() for c in row] for row in mat]


def cmd_clifford(args) -> int:
    n = args.n
    if args.emit in ("lie", "ternary"):
        text = fileformat.dumps(clifford.export(n, args.emit))
    elif args.emit == "proposition":
        if n > 6:
            raise UsageError("proposition table is limited to n <= 6")
        text = json.dumps(_proposition_doc(n), indent=2) + "\n"
    else:
        doc = {
            "n": n,
            "grading": _matrix_json(clifford.grading_operator(n)),
            "matrices": {
                clifford.monomial_name(b, n): _matrix_json(clifford.matrix_rep(n, b))
                for b in clifford.export_basis(n)
            },
        }
        text = json.dumps(doc, indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _grid(text):
    try:
        return [GaussScalar.parse(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_classify(args) -> int:
    sig = _dims(args.dim)
    grid = _grid(args.grid)
    system = generate_constraints(sig, args.arity)
    say = (lambda *a: None) if args.json else print
    say(f"signature {sig}, arity {args.arity}: {len(system.variables)} variables, "
          f"{len(system.constraints)} constraints")
    found = grid_search(sig, args.arity, grid, budget=args.budget, workers=_threads(args), system=system)
    say(f"{len(found)} solutions on grid [{', '.join(str(g) for g in dict.fromkeys(grid))}]")
    summary = []
    for k, T in enumerate(found):
        fp = fingerprint(T)
        rels = "; ".join(
            f"[{','.join(T.names[a] for a in key)}] = {format_vector(T.vector(key), T.names)}"
            for key in T.entries
        ) or "abelian"
        say(f"solution {k}: {rels}")
        say(f"  fingerprint {tuple(fp)}")
        summary.append({"algebra": fileformat.table_to_document(T), "fingerprint": list(fp)})
    if args.json:
        print(json.dumps({"signature": str(sig), "solutions": summary}, sort_keys=True))
    return EXIT_OK


def cmd_constraints(args) -> int:
    sig = _dims(args.dim)
    text = generate_constraints(sig, args.arity).to_text()
    _emit(text, args.out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name in catalog.list_names():
            print(name)
        return EXIT_OK
    if args.action == "dump":
        if not args.name:
            raise UsageError("catalog dump needs an entry name")
        entry = catalog.get_entry(args.name)
        _emit(json.dumps(entry.document, indent=2) + "\n", args.out)
        return EXIT_OK
    verdicts = catalog.verify_catalog(workers=_threads(args))
    status = EXIT_OK if all(v.ok for v in verdicts.values()) else EXIT_FAIL
    if args.json:
        doc = {}
        for name, v in verdicts.items():
            T = catalog.get_entry(name).raw_table
            doc[name] = dict(_report_json(T, v.report), ok=v.ok, expected=v.expected_status,
                             parse_error=v.parse_error)
        print(json.dumps(doc, sort_keys=True))
        return status
    for name, v in verdicts.items():
        T = catalog.get_entry(name).raw_table
        head = "pass" if v.ok else "FAIL"
        print(f"{name}: {head} [{v.expected_status}]")
        if v.parse_error:
            print(f"  rejected by parser: {v.parse_error}")
        for line in _report_lines(T, v.report):
            print("  " + line)
    return status


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="superlie", description="exact n-Lie superalgebra toolkit")
    p.add_argument("--threads", type=int, default=None, help="worker processes (default $SUPERLIE_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="verify the axioms of an algebra file")
    c.add_argument("file")
    c.add_argument("--lenient", action="store_true", help="load brackets as written, without canonicalising")
    c.add_argument("--exhaustive", action="store_true", help="check every ordered tuple")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("induce", help="build the induced (n+1)-bracket")
    c.add_argument("file")
    c.add_argument("--supertrace", required=True, help="functional file or 'auto'")
    c.add_argument("--index", type=int, default=None)
    c.add_argument("--out")
    c.set_defaults(func=cmd_induce)

    c = sub.add_parser("series", help="derived or central series of the whole algebra")
    c.add_argument("file")
    c.add_argument("--kind", choices=["derived", "central"], default="derived")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_series)

    c = sub.add_parser("clifford", help="Clifford superalgebra tables")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--emit", choices=["lie", "ternary", "proposition", "matrix"], default="lie")
    c.add_argument("--out")
    c.set_defaults(func=cmd_clifford)

    c = sub.add_parser("classify", help="grid search for structure constants")
    c.add_argument("--dim", required=True, help="m,n")
    c.add_argument("--grid", default="0,1,-1", help="comma-separated scalars, e.g. 0,1,-1,i")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--arity", type=int, default=3)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("constraints", help="export the quadratic constraint system")
    c.add_argument("--dim", required=True, help="m,n")
    c.add_argument("--arity", type=int, default=3)
    c.add_argument("--out")
    c.set_defaults(func=cmd_constraints)

    c = sub.add_parser("catalog", help="built-in algebras")
    c.add_argument("action", choices=["list", "dump", "verify"])
    c.add_argument("name", nargs="?")
    c.add_argument("--out")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "arity", 3) < 2:
            raise UsageError("--arity must be at least 2")
        return args.func(args)
    except UsageError as exc:
        print(f"superlie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"superlie: refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (fileformat.AlgebraFormatError, OSError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"superlie: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
