"""Command-line interface: structure reports and reference-table verification.

Expressions follow the grammar::

    expr := atom ('*' atom)*
    atom := '{' INT (',' INT)* '}' | ('T' | 'B' | 'C') INT

and are whitespace-insensitive.  The one-letter families name the
simplex, cube, and cross-polytope of a given rank, so ``T5`` is
``{3,3,3,3}``, ``B5`` is ``{4,3,3,3}``, and ``C5`` is ``{3,3,3,4}``.
``parse_expression(str(expr))`` always round-trips.

Exit codes: 0 success, 1 mismatch (verification diff or oracle
disagreement), 2 undecided or budget exhausted, 3 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from polymix.analyzer import Analyzer, StructureReport, report
from polymix.catalog import FAMILIES
from polymix.errors import (
    BudgetExceeded,
    CapExceeded,
    InvalidSymbol,
    NotConvexSeed,
    ParseError,
    RankMismatch,
    TooLarge,
)
from polymix.mixer import Budgets, MixExpression, Workspace
from polymix.oracle import check_polytope
from polymix.tables import (
    RANK_N_COMBOS,
    polyhedron_mix_rows,
    rank4_mix_rows,
    rank_n_mix_expected,
)
from polymix.words import SchlafliSymbol

__all__ = ["parse_expression", "verify_tables", "RowResult", "main"]


# -- expression parsing ------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "{},*":
            kind = {"{": "lbrace", "}": "rbrace", ",": "comma", "*": "star"}[ch]
            tokens.append((kind, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch in FAMILIES:
            tokens.append(("family", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", position=i)
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self, kind: str, what: str) -> tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise ParseError(f"expected {what} at end of input", position=len(self.text))
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1]!r}", position=tok[2])
        self.pos += 1
        return tok

    def atom(self) -> SchlafliSymbol:
        tok = self._peek()
        if tok is None:
            raise ParseError("expected a symbol at end of input", position=len(self.text))
        if tok[0] == "family":
            self.pos += 1
            rank_tok = self._take("int", "a rank after the family letter")
            return FAMILIES[tok[1]](int(rank_tok[1]))
        if tok[0] == "lbrace":
            self.pos += 1
            entries = [int(self._take("int", "an integer entry")[1])]
            while True:
                nxt = self._peek()
                if nxt is not None and nxt[0] == "comma":
                    self.pos += 1
                    entries.append(int(self._take("int", "an integer entry")[1]))
                    continue
                break
            self._take("rbrace", "'}' or ','")
            return SchlafliSymbol(tuple(entries))
        raise ParseError(f"expected '{{' or a family letter, found {tok[1]!r}", position=tok[2])

    def expression(self) -> MixExpression:
        leaves = [self.atom()]
        while True:
            tok = self._peek()
            if tok is None:
                break
            if tok[0] != "star":
                raise ParseError(f"expected '*' between atoms, found {tok[1]!r}", position=tok[2])
            self.pos += 1
            leaves.append(self.atom())
        return MixExpression(tuple(leaves))


def parse_expression(text: str) -> MixExpression:
    """Parse a mix expression; inverse of ``str`` on :class:`MixExpression`."""
    return _Parser(text).expression()


# -- report rendering --------------------------------------------------------


def _rule_string(method: str, detail: str) -> str:
    return f"{method}: {detail}" if detail else method


def _report_document(
    rpt: StructureReport, polytopal: str, rule: str, timings: dict[str, float]
) -> dict:
    """The report as a JSON-ready mapping; every integer is a decimal string."""
    return {
        "expression": rpt.expression,
        "type": rpt.schlafli,
        "rank": str(rpt.rank),
        "flags": str(rpt.flag_count),
        "faces": [str(f) for f in rpt.face_vector],
        "polytopal": polytopal,
        "rule": rule,
        "timings": {name: f"{seconds:.6f}" for name, seconds in timings.items()},
    }


def _render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def _render_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    face_headers = [f"f{k}" for k in range(len(doc["faces"]))]
    writer.writerow(["expression", "type", "rank", "flags", *face_headers, "polytopal", "rule"])
    writer.writerow(
        [
            doc["expression"],
            doc["type"],
            doc["rank"],
            doc["flags"],
            *doc["faces"],
            doc["polytopal"],
            doc["rule"],
        ]
    )
    return buf.getvalue().rstrip("\n")


def _render_md(doc: dict) -> str:
    rows = [
        ("expression", doc["expression"]),
        ("type", doc["type"]),
        ("rank", doc["rank"]),
        ("flags", doc["flags"]),
        ("faces", ", ".join(doc["faces"])),
        ("polytopal", doc["polytopal"]),
        ("rule", doc["rule"]),
        ("time (s)", doc["timings"]["total"]),
    ]
    lines = ["| field | value |", "| --- | --- |"]
    lines += [f"| {name} | {value} |" for name, value in rows]
    return "\n".join(lines)


_RENDERERS = {"json": _render_json, "csv": _render_csv, "md": _render_md}


def _cmd_report(args: argparse.Namespace) -> int:
    expression = parse_expression(args.expression)
    workspace = Workspace(_budgets(args))
    analyzer = Analyzer(workspace)

    timings: dict[str, float] = {}
    start = time.perf_counter()
    analyzer.schlafli(expression)
    analyzer.face_vector(expression)
    timings["structure"] = time.perf_counter() - start

    start = time.perf_counter()
    verdict = analyzer.polytopality(expression)
    timings["polytopality"] = time.perf_counter() - start

    rpt = report(expression, analyzer)
    polytopal = rpt.polytopal
    rule = _rule_string(rpt.method, rpt.detail)

    mismatch = False
    if args.oracle:
        start = time.perf_counter()
        try:
            oracle = check_polytope(expression, workspace=workspace)
        except TooLarge as exc:
            print(f"oracle skipped: {exc}", file=sys.stderr)
            timings["total"] = sum(timings.values())
            print(_RENDERERS[args.format](_report_document(rpt, polytopal, rule, timings)))
            return 2
        timings["oracle"] = time.perf_counter() - start
        if oracle.face_counts != rpt.face_vector:
            print(
                f"oracle mismatch: face counts {oracle.face_counts} "
                f"!= {rpt.face_vector}",
                file=sys.stderr,
            )
            mismatch = True
        oracle_status = "Y" if oracle.polytopal else "N"
        if verdict.decided and oracle_status != polytopal:
            print(
                f"oracle mismatch: polytopality {oracle_status} != {polytopal}",
                file=sys.stderr,
            )
            mismatch = True
        elif not verdict.decided:
            polytopal = oracle_status
            rule = _rule_string("oracle", "; ".join(oracle.failures))
        else:
            print("oracle: agreed on face counts and polytopality", file=sys.stderr)

    timings["total"] = sum(timings.values())
    print(_RENDERERS[args.format](_report_document(rpt, polytopal, rule, timings)))
    if mismatch:
        return 1
    return 0 if polytopal in ("Y", "N") else 2


# -- table verification ------------------------------------------------------


@dataclass(frozen=True)
class RowResult:
    """Outcome of recomputing one reference-table row."""

    expression: str
    status: str  # "ok", "mismatch", "undecided", or "budget"
    diffs: tuple[str, ...] = ()


_ROW_ANALYZER: Analyzer | None = None


def _init_row_worker(budget_tuple: tuple[int, int, int]) -> None:
    global _ROW_ANALYZER
    _ROW_ANALYZER = Analyzer(Workspace(Budgets(*budget_tuple)))


def _check_row(spec: tuple[str, int, tuple[int, ...], str]) -> RowResult:
    """Recompute one row and diff it cell by cell against the expectation."""
    text, expected_flags, expected_faces, expected_verdict = spec
    analyzer = _ROW_ANALYZER
    assert analyzer is not None, "row worker used before initialization"
    try:
        rpt = report(parse_expression(text), analyzer)
    except (BudgetExceeded, CapExceeded, TooLarge) as exc:
        return RowResult(text, "budget", (f"{type(exc).__name__}: {exc}",))
    diffs = []
    if rpt.flag_count != expected_flags:
        diffs.append(f"flags: expected {expected_flags}, computed {rpt.flag_count}")
    for k, (expected, computed) in enumerate(zip(expected_faces, rpt.face_vector)):
        if computed != expected:
            diffs.append(f"f{k}: expected {expected}, computed {computed}")
    if len(rpt.face_vector) != len(expected_faces):
        diffs.append(
            f"face vector length: expected {len(expected_faces)}, "
            f"computed {len(rpt.face_vector)}"
        )
    undecided = False
    if rpt.polytopal == "?":
        undecided = True
        diffs.append(f"polytopality undecided ({_rule_string(rpt.method, rpt.detail)})")
    elif rpt.polytopal != expected_verdict:
        diffs.append(f"polytopal: expected {expected_verdict}, computed {rpt.polytopal}")
    if any(not d.startswith("polytopality undecided") for d in diffs):
        return RowResult(text, "mismatch", tuple(diffs))
    if undecided:
        return RowResult(text, "undecided", tuple(diffs))
    return RowResult(text, "ok")


def _table_specs(which: str, max_n: int) -> list[tuple[str, int, tuple[int, ...], str]]:
    if which == "polyhedra":
        return [(r.expression, r.flag_count, r.face_vector, "Y") for r in polyhedron_mix_rows()]
    if which == "rank4":
        return [
            (r.expression, r.flag_count, r.face_vector, r.polytopal) for r in rank4_mix_rows()
        ]
    assert which == "rankN"
    specs = []
    for n in range(5, max_n + 1):
        for combo in RANK_N_COMBOS:
            expression = "*".join(f"{letter}{n}" for letter in combo)
            flags, faces, verdict = rank_n_mix_expected(combo, n)
            specs.append((expression, flags, faces, verdict))
    return specs


def verify_tables(
    which: str,
    max_n: int = 6,
    budgets: Budgets | None = None,
    jobs: int = 1,
) -> list[RowResult]:
    """Recompute a reference table and diff every row against the stored values.

    ``which`` selects the table: ``polyhedra``, ``rank4``, or ``rankN``
    (the closed-form seed-family mixes for ranks 5 through ``max_n``).
    Rows are independent computations; ``jobs > 1`` fans them out to a
    process pool, each worker holding its own caches.  Results come back
    in table order either way.
    """
    specs = _table_specs(which, max_n)
    b = budgets or Budgets()
    budget_tuple = (b.cosets, b.elements, b.max_flags)
    if jobs <= 1:
        _init_row_worker(budget_tuple)
        return [_check_row(spec) for spec in specs]
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=_init_row_worker, initargs=(budget_tuple,)
    ) as pool:
        return list(pool.map(_check_row, specs))


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.table == "rankN" and args.max_n < 5:
        print("error: --max-n must be at least 5", file=sys.stderr)
        return 3
    results = verify_tables(args.table, max_n=args.max_n, budgets=_budgets(args), jobs=args.jobs)
    label = {"ok": "ok       ", "mismatch": "MISMATCH ", "undecided": "UNDECIDED", "budget": "BUDGET   "}
    counts = {"ok": 0, "mismatch": 0, "undecided": 0, "budget": 0}
    for row in results:
        counts[row.status] += 1
        print(f"{label[row.status]} {row.expression}")
        for diff in row.diffs:
            print(f"    {diff}")
    summary = ", ".join(f"{counts[s]} {s}" for s in label if counts[s])
    print(f"{len(results)} rows: {summary}")
    if counts["mismatch"]:
        return 1
    if counts["undecided"] or counts["budget"]:
        return 2
    return 0


# -- entry point -------------------------------------------------------------


def _budgets(args: argparse.Namespace) -> Budgets:
    return Budgets(
        cosets=args.budget_cosets,
        elements=args.budget_elements,
        max_flags=args.max_flags,
    )


def build_parser() -> argparse.ArgumentParser:
    defaults = Budgets()
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--budget-cosets",
        type=int,
        default=defaults.cosets,
        help="live-coset limit for any single coset enumeration",
    )
    shared.add_argument(
        "--budget-elements",
        type=int,
        default=defaults.elements,
        help="element cap for explicit enumeration and intersections",
    )
    shared.add_argument(
        "--max-flags",
        type=int,
        default=defaults.max_flags,
        help="largest flag graph the face-lattice oracle will build",
    )

    parser = argparse.ArgumentParser(
        prog="polymix",
        description="Mixes of regular convex polytopes: structure and polytopality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser(
        "report",
        parents=[shared],
        help="analyze one mix expression",
        description="Compute type, flag count, face vector, and polytopality of a mix.",
    )
    rep.add_argument("expression", help="mix expression, e.g. '{3,3}*{3,4}' or 'T5*C5'")
    rep.add_argument("--format", choices=("json", "csv", "md"), default="json")
    rep.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check the report against the explicit face-lattice oracle",
    )
    rep.set_defaults(func=_cmd_report)

    ver = sub.add_parser(
        "verify",
        parents=[shared],
        help="recompute a reference table and diff it",
        description="Recompute every row of a stored reference table and report diffs.",
    )
    ver.add_argument("table", choices=("polyhedra", "rank4", "rankN"))
    ver.add_argument(
        "--max-n",
        type=int,
        default=6,
        help="highest rank for the rankN closed-form table (default 6)",
    )
    ver.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker processes for row verification (default 1: in-process)",
    )
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        suffix = f" (position {exc.position})" if exc.position is not None else ""
        print(f"error: {exc}{suffix}", file=sys.stderr)
        return 3
    except (InvalidSymbol, NotConvexSeed, RankMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (BudgetExceeded, CapExceeded, TooLarge) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
