"""Command-line front end.

Exit status: 0 on success, 1 on domain errors, 2 on usage errors.  Output is
assembled in full before anything is written, so a failing run prints only
its error message to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Callable

from . import knotlang as kl
from .engine import EngineError, Result, UnverifiedRangeWarning, apoly, fig8_double_apoly, fig8_double_P
from .families import FamilyError, KnotTable, iterated_torus_apoly, torus_apoly
from .laurent import FactoredAPoly, L, M, PolynomialError, has_even_M, is_balanced
from .mahler import MahlerError, gq_membership, gz_membership, mahler_numeric, mahler_zero_symbolic
from .respipe import ResultantCapError, divide_out_square, iterated_resultant, pointwise_divisibility_evidence
from .slopes import bs_double, detected_slopes, format_slope, slope_to_json, sorted_slopes

DOMAIN_ERRORS = (EngineError, FamilyError, PolynomialError, MahlerError,
                 kl.KnotValidationError, ResultantCapError, ValueError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# Knot tables

def load_table(path: str, warn: Callable[[str], None] | None = None) -> dict[str, FactoredAPoly]:
    """Read a knot table; malformed files raise UsageError with the location."""
    warn = warn or (lambda msg: print(f"warning: {msg}", file=sys.stderr))

    def pairs(items):
        out = {}
        for k, v in items:
            if k in out:
                warn(f"{path}: duplicate key {k!r}, the last entry wins")
            out[k] = v
        return out

    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read table {path}: {exc.strerror}") from None
    if not text.strip():
        return {}
    try:
        raw = json.loads(text, object_pairs_hook=pairs)
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise UsageError(f"{path}: the table must be a JSON object")
    table: dict[str, FactoredAPoly] = {}
    for label, entry in raw.items():
        if not isinstance(entry, dict) or "factors" not in entry:
            raise UsageError(f"{path}: entry {label!r} needs a \"factors\" array")
        try:
            table[label] = FactoredAPoly.from_json(entry["factors"])
        except PolynomialError as exc:
            raise UsageError(f"{path}: entry {label!r}: {exc}") from None
    return table


# ---------------------------------------------------------------------------
# Rendering

@dataclass
class _Out:
    fmt: str
    lines: list[str]

    def text(self, s: str = ""):
        self.lines.append(s)

    def json(self, obj):
        self.lines.append(json.dumps(obj, indent=2, sort_keys=True))


def _slopes_json(slopes) -> list:
    return [slope_to_json(s) for s in sorted_slopes(slopes)]


def _slopes_text(slopes) -> str:
    return ", ".join(format_slope(s) for s in sorted_slopes(slopes))


def _all_slopes(A: FactoredAPoly) -> set:
    out: set = set()
    for f in A.distinct():
        out |= detected_slopes(f)
    return out


def _apoly_json(A: FactoredAPoly) -> dict:
    E = A.expand()
    return {
        "factored": A.to_text(),
        "factors": A.to_json(),
        "expanded": E.to_text(),
        "slopes": _slopes_json(_all_slopes(A)),
    }


# ---------------------------------------------------------------------------
# Commands

def _compute(args, table: KnotTable | None) -> Result:
    try:
        e = kl.parse(args.expr)
    except kl.KnotSyntaxError as exc:
        raise UsageError(f"bad expression: {exc}") from None
    return apoly(e, table=table, assume_conjecture=args.assume_conjecture)


def cmd_compute(args, out: _Out, table):
    res = _compute(args, table)
    if out.fmt == "json":
        obj = {"expr": args.expr, "conjectural": res.conjectural, "notes": res.notes}
        obj.update(_apoly_json(res.apoly))
        out.json(obj)
        return
    if res.conjectural:
        out.text("conjectural")
    out.text(res.apoly.expand().to_text() if args.expanded else res.apoly.to_text())


def cmd_slopes(args, out: _Out, table):
    res = _compute(args, table)
    per = [(f, detected_slopes(f)) for f in res.apoly.distinct()]
    total = _all_slopes(res.apoly)
    if out.fmt == "json":
        out.json({
            "expr": args.expr,
            "conjectural": res.conjectural,
            "slopes": _slopes_json(total),
            "factors": [{"factor": f.to_text(), "slopes": _slopes_json(s)} for f, s in per],
        })
        return
    out.text(_slopes_text(total))


def cmd_bs_double(args, out: _Out, table):
    s = bs_double(args.r, args.n)
    if out.fmt == "json":
        out.json({"r": args.r, "n": args.n, "slopes": _slopes_json(s)})
    else:
        out.text(_slopes_text(s))


def cmd_mahler(args, out: _Out, table):
    res = _compute(args, table)
    A = res.apoly
    symbolic = mahler_zero_symbolic(A) if args.symbolic else None
    est = None
    if not args.symbolic or args.nodes_given:
        est = mahler_numeric(A.expand(), args.nodes)
    if out.fmt == "json":
        obj = {"expr": args.expr, "conjectural": res.conjectural}
        if est is not None:
            obj.update(value=est.value, nodes=est.nodes_per_dim, convergence_gap=est.convergence_gap)
        if symbolic is not None:
            obj["symbolic_zero"] = symbolic
            obj["gq"] = gq_membership(A)
            obj["gz"] = gz_membership(A)
        out.json(obj)
        return
    if est is not None:
        out.text(f"m = {est.value:.6f} (nodes {est.nodes_per_dim}, gap {est.convergence_gap:.2e})")
    if symbolic is not None:
        out.text(f"symbolic zero: {'yes' if symbolic else 'no'}")


def identity_checks() -> list[tuple[str, Callable[[], bool]]]:
    """Exact identities between closed forms, one callable per identity."""
    def ap(src):
        return apoly(kl.parse(src)).apoly

    return [
        ("A(T(3,2)) = (L-1)(L*M^6+1)",
         lambda: ap("T(3,2)") == FactoredAPoly([L - 1, L * M**6 + 1])),
        ("A(T(-3,2)) = (L-1)(L+M^6)",
         lambda: ap("T(-3,2)") == FactoredAPoly([L - 1, L + M**6])),
        ("A(T(10,3)) = A(T(6,5))",
         lambda: torus_apoly(10, 3) == torus_apoly(6, 5)),
        ("A([(13,15),(11,7)]) = A([(65,3),(275,7)])",
         lambda: iterated_torus_apoly([(13, 15), (11, 7)]) == iterated_torus_apoly([(65, 3), (275, 7)])),
        ("A(T(15,7) # T(17,11)) = A(T(21,5) # T(17,11))",
         lambda: ap("T(15,7) # T(17,11)") == ap("T(21,5) # T(17,11)")),
    ]


_PROPERTY_EXAMPLES = (
    "U", "T(3,2)", "T(-5,2)", "T(5,3)", "K(2)", "K(-1)", "K(-3)",
    "cable(2,3; T(3,2))", "cable(-7,2; T(5,3))", "T(3,2) # T(7,2)",
    "T(3,2) # mirror(T(3,2))", "D[2](T(3,2))", "D[-1](T(5,3) # T(3,2))",
    "D[3](cable(5,2; T(3,2)))", "D[0](K(-1))", "mirror(D[1](T(5,2)))",
)


def property_checks() -> list[tuple[str, Callable[[], bool]]]:
    def check(src):
        A = apoly(kl.parse(src)).apoly
        E = A.expand()
        ok = (L - 1).divides(E) and is_balanced(E) and has_even_M(E)
        if gz_membership(A):
            ok = ok and gq_membership(A)
        if gq_membership(A):
            ok = ok and mahler_zero_symbolic(A)
        return ok

    return [(f"properties of {src}", (lambda s=src: check(s))) for src in _PROPERTY_EXAMPLES]


def cmd_verify(args, out: _Out, table):
    suite = identity_checks() if args.suite == "identities" else property_checks()
    rows = [(name, bool(fn())) for name, fn in suite]
    if out.fmt == "json":
        out.json({"suite": args.suite, "results": [{"check": n, "pass": ok} for n, ok in rows]})
    else:
        for name, ok in rows:
            out.text(f"{'PASS' if ok else 'FAIL'}  {name}")
    if not all(ok for _, ok in rows):
        return 1
    return 0


def cmd_fig8_double(args, out: _Out, table):
    r = args.r
    if args.pipeline is None:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", UnverifiedRangeWarning)
            A = fig8_double_apoly(r)
        notes = [str(w.message) for w in caught]
        if out.fmt == "json":
            obj = {"r": r, "notes": notes}
            obj.update(_apoly_json(A))
            out.json(obj)
        else:
            for n in notes:
                out.text(f"note: {n}")
            out.text(A.to_text())
        return 0
    if args.pipeline == "symbolic":
        res = iterated_resultant(r=r)
        Q = divide_out_square(res.resultant, fig8_double_P(r))
        obj = {
            "r": r,
            "terms": len(res.resultant),
            "deg_L": res.resultant.deg_L(),
            "deg_M": res.resultant.deg_M(),
            "steps": res.steps,
            "P_squared_divides": Q is not None,
            "cofactor_slopes": None if Q is None else _slopes_json(detected_slopes(Q)),
        }
        if out.fmt == "json":
            out.json(obj)
        else:
            for s in res.steps:
                out.text(s)
            out.text(f"resultant: {obj['terms']} terms, bidegree ({obj['deg_L']}, {obj['deg_M']})")
            out.text(f"P^2 divides: {'yes' if Q is not None else 'no'}")
            if Q is not None:
                out.text(f"cofactor slopes: {_slopes_text(detected_slopes(Q))}")
        return 0 if Q is not None else 1
    rep = pointwise_divisibility_evidence(r, trials=args.trials, seed=args.seed)
    if out.fmt == "json":
        out.json({"r": r, "trials": rep.trials, "passed": rep.passed, "failed": rep.failed,
                  "skipped": rep.skipped, "failures": [list(p) for p in rep.failures]})
    else:
        out.text(f"r={r}: {rep.passed}/{rep.trials} passed, {rep.skipped} skipped")
        for p in rep.failures:
            out.text(f"  failed at (L, M) = {p}")
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# Argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--format", choices=("text", "json"))
    common.add_argument("--table", help="knot-table JSON file")
    common.add_argument("--assume-conjecture", action="store_true",
                        help="allow doubles over non-graph companions whose A-polynomial is in G_Z")

    p = _Parser(prog="apolyknot", description="A-polynomials of satellite knots")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", parents=[common], help="A-polynomial of an expression")
    c.add_argument("expr")
    shape = c.add_mutually_exclusive_group()
    shape.add_argument("--factored", action="store_true")
    shape.add_argument("--expanded", action="store_true")
    c.set_defaults(fn=cmd_compute)

    s = sub.add_parser("slopes", parents=[common], help="detected boundary slopes")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_slopes)

    b = sub.add_parser("bs-double", parents=[common], help="boundary slopes of D_r(K(n))")
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.set_defaults(fn=cmd_bs_double)

    m = sub.add_parser("mahler", parents=[common], help="logarithmic Mahler measure")
    m.add_argument("expr")
    m.add_argument("--nodes", type=int, default=None)
    m.add_argument("--symbolic", action="store_true")
    m.set_defaults(fn=cmd_mahler)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=("identities", "properties"))
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("fig8-double", parents=[common], help="r-twisted double of the figure-eight")
    f.add_argument("--r", type=int, required=True)
    f.add_argument("--pipeline", choices=("symbolic", "pointwise"))
    f.add_argument("--trials", type=int, default=20)
    f.add_argument("--seed", type=int, default=0)
    f.set_defaults(fn=cmd_fig8_double)
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "nodes", None) is not None:
            args.nodes_given = True
        else:
            args.nodes, args.nodes_given = 512, False
        if args.nodes < 64 or args.nodes & (args.nodes - 1):
            raise UsageError("--nodes must be a power of two >= 64")
        if getattr(args, "trials", 1) < 1:
            raise UsageError("--trials must be at least 1")
        table = None
        if args.table:
            table = load_table(args.table, warn=lambda msg: print(f"warning: {msg}", file=stderr))
        out = _Out(args.format or "text", [])
        status = args.fn(args, out, table) or 0
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if out.lines:
        stdout.write("\n".join(out.lines) + "\n")
    return status


def main() -> None:
    sys.exit(run())
