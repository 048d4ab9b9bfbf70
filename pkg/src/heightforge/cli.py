"""Command-line front end: problem files in, JSON certificates out.

Problem files are line oriented::

    task solve-system
    vars 2
    poly F1 = x1*x2 - 1
    index-set {1}

Other directives are ``linear-var j``, ``avoid <expr>``, ``subspace rows r``
followed by ``r`` rows of rationals, and ``vector <rationals>``.  ``#`` starts
a comment.

Exit codes: 0 every check holds, 2 some check fails, 3 the solver raised an
error (reported as a JSON error object), 1 usage or syntax errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .certificate import Certificate, height_certificate
from .errors import HeightForgeError, ProblemSyntaxError
from .exact import render_exact, to_fixed
from .linalg import Subspace
from .polynomial import MultiPoly, format_poly, parse_poly
from .siegel import small_basis, sparse_basis
from .solvers import (
    linear_form_zero_on_subspace,
    multilinear_zero,
    multilinear_zero_on_subspace,
    solve_on_line,
    solve_single_avoiding,
    solve_system,
)

SCHEMA_VERSION = "1.0"

TASKS = ("solve-system", "solve-single", "solve-line", "ml-zero", "ml-subspace",
         "linear-subspace", "sparse-basis", "small-basis", "height")

# directives each task needs, and how many polynomials it takes
REQUIRED = {
    "solve-system": ("vars", "index-set"),
    "solve-single": ("vars", "linear-var"),
    "solve-line": ("vars", "subspace"),
    "ml-zero": ("vars",),
    "ml-subspace": ("vars", "subspace"),
    "linear-subspace": ("vars", "subspace"),
    "sparse-basis": ("subspace",),
    "small-basis": ("subspace",),
    "height": ("vector",),
}
SINGLE_POLY = {"solve-single", "solve-line", "ml-zero", "ml-subspace", "linear-subspace"}
BASIS_TASKS = {"sparse-basis", "small-basis"}

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_EXPECT = re.compile(r"^#\s*expect-exit:\s*(\d+)\s*$", re.M)


@dataclass(frozen=True)
class ProblemFile:
    """Ordered ``(keyword, payload)`` directives; line numbers are kept for messages only."""

    directives: tuple[tuple[str, object], ...]
    lines: tuple[int, ...] = field(default=(), compare=False)

    def get(self, keyword: str, default=None):
        return next((p for k, p in self.directives if k == keyword), default)

    def line_of(self, keyword: str) -> int:
        for (k, _), line in zip(self.directives, self.lines):
            if k == keyword:
                return line
        return 1

    @property
    def task(self) -> str:
        return self.get("task")

    @property
    def nvars(self) -> int:
        n = self.get("vars")
        if n is None:
            v = self.get("vector") or (self.get("subspace") or [()])[0]
            n = len(v)
        return n

    @property
    def polys(self) -> list[tuple[str, MultiPoly]]:
        return [p for k, p in self.directives if k == "poly"]


def _rational(tok: str, line: int, col: int) -> Fraction:
    if not _RATIONAL.match(tok):
        raise ProblemSyntaxError(f"expected a rational number, got {tok!r}", line, col)
    return Fraction(tok)


def _tokens(text: str):
    """``(token, 1-based column)`` pairs of a whitespace separated line."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]


def _natural(tok: str, line: int, col: int, what: str) -> int:
    if not tok.isdigit():
        raise ProblemSyntaxError(f"{what} must be a natural number, got {tok!r}", line, col)
    return int(tok)


def parse_problem(text: str) -> ProblemFile:
    """Parse and validate a problem file; errors carry line and column."""
    raw = text.splitlines()
    directives: list[tuple[str, object]] = []
    lines: list[int] = []
    nvars: int | None = None
    i = 0

    def need_vars(line, col):
        if nvars is None:
            raise ProblemSyntaxError("'vars' must come before polynomials", line, col)
        return nvars

    while i < len(raw):
        lineno = i + 1
        body = raw[i].split("#", 1)[0]
        i += 1
        toks = _tokens(body)
        if not toks:
            continue
        key, kcol = toks[0]
        rest = body[kcol - 1 + len(key):]
        rest_col = kcol + len(key)
        args = toks[1:]
        if key == "task":
            if len(args) != 1:
                raise ProblemSyntaxError("usage: task <name>", lineno, kcol)
            name, col = args[0]
            if name not in TASKS:
                raise ProblemSyntaxError(f"unknown task {name!r}", lineno, col)
            if any(k == "task" for k, _ in directives):
                raise ProblemSyntaxError("duplicate 'task' directive", lineno, kcol)
            payload = name
        elif key == "vars":
            if len(args) != 1:
                raise ProblemSyntaxError("usage: vars <n>", lineno, kcol)
            if nvars is not None:
                raise ProblemSyntaxError("duplicate 'vars' directive", lineno, kcol)
            nvars = payload = _natural(args[0][0], lineno, args[0][1], "vars")
            if nvars == 0:
                raise ProblemSyntaxError("need at least one variable", lineno, args[0][1])
        elif key == "poly":
            m = re.match(r"\s*([^=\s]+)\s*=", rest)
            if m is None:
                raise ProblemSyntaxError("usage: poly <name> = <expr>", lineno, kcol)
            name = m.group(1)
            if not _NAME.match(name):
                raise ProblemSyntaxError(f"bad polynomial name {name!r}", lineno, rest_col + m.start(1))
            n = need_vars(lineno, kcol)
            expr_col = rest_col + m.end()
            payload = (name, parse_poly(rest[m.end():], n, lineno, expr_col))
        elif key == "avoid":
            if any(k == "avoid" for k, _ in directives):
                raise ProblemSyntaxError("duplicate 'avoid' directive", lineno, kcol)
            payload = parse_poly(rest, need_vars(lineno, kcol), lineno, rest_col)
        elif key == "index-set":
            m = re.match(r"\s*\{([^}]*)\}\s*$", rest)
            if m is None:
                raise ProblemSyntaxError("usage: index-set {i,j,...}", lineno, kcol)
            n = need_vars(lineno, kcol)
            items = []
            for piece in re.finditer(r"[^,]+", m.group(1)):
                tok = piece.group().strip()
                col = rest_col + m.start(1) + piece.start() + (len(piece.group()) - len(piece.group().lstrip()))
                j = _natural(tok, lineno, col, "index")
                if not 1 <= j <= n:
                    raise ProblemSyntaxError(f"index {j} out of range 1..{n}", lineno, col)
                if j in items:
                    raise ProblemSyntaxError(f"index {j} repeated", lineno, col)
                items.append(j)
            if not items:
                raise ProblemSyntaxError("empty index set", lineno, kcol)
            payload = tuple(sorted(items))
        elif key == "linear-var":
            if len(args) != 1:
                raise ProblemSyntaxError("usage: linear-var <j>", lineno, kcol)
            n = need_vars(lineno, kcol)
            payload = _natural(args[0][0], lineno, args[0][1], "linear-var")
            if not 1 <= payload <= n:
                raise ProblemSyntaxError(f"index {payload} out of range 1..{n}", lineno, args[0][1])
        elif key == "subspace":
            if len(args) != 2 or args[0][0] != "rows":
                raise ProblemSyntaxError("usage: subspace rows <r>", lineno, kcol)
            r = _natural(args[1][0], lineno, args[1][1], "row count")
            rows = []
            while len(rows) < r:
                if i >= len(raw):
                    raise ProblemSyntaxError(f"expected {r} subspace rows", lineno, kcol)
                row_line = i + 1
                row_toks = _tokens(raw[i].split("#", 1)[0])
                i += 1
                if not row_toks:
                    continue
                row = tuple(_rational(t, row_line, c) for t, c in row_toks)
                width = nvars if nvars is not None else len(rows[0]) if rows else len(row)
                if len(row) != width:
                    raise ProblemSyntaxError(
                        f"row has {len(row)} entries, expected {width}", row_line, row_toks[0][1])
                rows.append(row)
            if r == 0:
                raise ProblemSyntaxError("a subspace needs at least one row", lineno, args[1][1])
            payload = tuple(rows)
        elif key == "vector":
            if not args:
                raise ProblemSyntaxError("usage: vector <rationals>", lineno, kcol)
            payload = tuple(_rational(t, lineno, c) for t, c in args)
            if nvars is not None and len(payload) != nvars:
                raise ProblemSyntaxError(f"vector has {len(payload)} entries, expected {nvars}",
                                         lineno, args[0][1])
        else:
            raise ProblemSyntaxError(f"unknown directive {key!r}", lineno, kcol)
        directives.append((key, payload))
        lines.append(lineno)

    pf = ProblemFile(tuple(directives), tuple(lines))
    _validate(pf)
    return pf


def _validate(pf: ProblemFile) -> None:
    if pf.task is None:
        raise ProblemSyntaxError("missing 'task' directive", 1, 1)
    line = pf.line_of("task")
    for key in REQUIRED[pf.task]:
        if pf.get(key) is None:
            raise ProblemSyntaxError(f"task {pf.task} needs a '{key}' directive", line, 1)
    polys = pf.polys
    if pf.task == "solve-system" and not polys:
        raise ProblemSyntaxError("task solve-system needs at least one 'poly'", line, 1)
    if pf.task in SINGLE_POLY and len(polys) != 1:
        raise ProblemSyntaxError(f"task {pf.task} needs exactly one 'poly'", line, 1)
    rows = pf.get("subspace")
    n = pf.get("vars")
    if rows is not None and n is not None and len(rows[0]) != n:
        raise ProblemSyntaxError(f"subspace rows need {n} entries", pf.line_of("subspace"), 1)
    vec = pf.get("vector")
    if vec is not None and n is not None and len(vec) != n:
        raise ProblemSyntaxError(f"vector needs {n} entries", pf.line_of("vector"), 1)


def format_problem(pf: ProblemFile) -> str:
    """Canonical text of a problem; ``parse_problem`` reads it back unchanged."""
    out = []
    for key, payload in pf.directives:
        if key in ("task", "vars", "linear-var"):
            out.append(f"{key} {payload}")
        elif key == "poly":
            out.append(f"poly {payload[0]} = {format_poly(payload[1])}")
        elif key == "avoid":
            out.append(f"avoid {format_poly(payload)}")
        elif key == "index-set":
            out.append("index-set {" + ",".join(str(j) for j in payload) + "}")
        elif key == "subspace":
            out.append(f"subspace rows {len(payload)}")
            out.extend(" ".join(str(x) for x in row) for row in payload)
        elif key == "vector":
            out.append("vector " + " ".join(str(x) for x in payload))
    return "\n".join(out) + "\n"


def solve_problem(pf: ProblemFile, max_shell: int | None = None) -> Certificate:
    """Dispatch a parsed problem to the matching operation."""
    task = pf.task
    polys = [p for _, p in pf.polys]
    avoid = pf.get("avoid")
    rows = pf.get("subspace")
    V = Subspace.span(rows, len(rows[0])) if rows else None
    if task == "solve-system":
        return solve_system(polys, pf.get("index-set"), max_shell=max_shell)
    if task == "solve-single":
        return solve_single_avoiding(polys[0], pf.get("linear-var"), avoid, max_shell=max_shell)
    if task == "solve-line":
        return solve_on_line(polys[0], V, avoid)
    if task == "ml-zero":
        return multilinear_zero(polys[0])
    if task == "ml-subspace":
        return multilinear_zero_on_subspace(polys[0], V, avoid)
    if task == "linear-subspace":
        return linear_form_zero_on_subspace(polys[0], V, avoid)
    if task == "sparse-basis":
        return sparse_basis(V, max_shell=max_shell)[1]
    if task == "small-basis":
        return small_basis(V, max_shell=max_shell)[1]
    return height_certificate(pf.get("vector"))


def _height_json(h) -> dict:
    return {"kind": h.kind.value, "exact": render_exact(h.value), "approx": to_fixed(h.value)}


def emit_certificate(cert: Certificate, task: str, multi: bool | None = None,
                     indent: int | None = 2) -> str:
    """JSON text with a fixed key order; exact values are ``p/q`` strings.

    ``multi`` forces the list-of-vectors shape for ``witness`` and ``heights``;
    by default it is used whenever there is more than one witness.
    """
    if multi is None:
        multi = len(cert.witnesses) != 1
    vectors = [[str(x) for x in w] for w in cert.witnesses]
    heights = [_height_json(h) for h in cert.heights]
    obj = {
        "schema_version": SCHEMA_VERSION,
        "task": task,
        "claim": cert.claim,
        "witness": vectors if multi else vectors[0],
        "heights": heights if multi else heights[0],
        "bound": {"expression": cert.bound.expression, "approx": to_fixed(cert.bound.value)},
        "checks": [{"label": c.label, "lhs": render_exact(c.lhs),
                    "bound": c.bound.expression, "holds": c.holds} for c in cert.checks],
        "verdict": cert.verdict.value,
        "notes": list(cert.notes),
        "trace": list(cert.trace),
    }
    return json.dumps(obj, indent=indent, ensure_ascii=False)


def emit_error(err: HeightForgeError, task: str | None, indent: int | None = 2) -> str:
    obj = {"schema_version": SCHEMA_VERSION, "task": task,
           "error": {"code": err.code, "message": err.message}}
    return json.dumps(obj, indent=indent, ensure_ascii=False)


def solve_text(text: str, name: str, indent: int | None = 2,
               max_shell: int | None = None) -> tuple[int, str, str]:
    """``(exit code, stdout, stderr)`` for one problem file."""
    try:
        pf = parse_problem(text)
    except ProblemSyntaxError as e:
        return 1, "", f"{name}:{e.line}:{e.column}: error: {e.message}\n"
    try:
        cert = solve_problem(pf, max_shell)
    except HeightForgeError as e:
        return 3, emit_error(e, pf.task, indent) + "\n", ""
    multi = pf.task in BASIS_TASKS or (pf.task == "ml-subspace" and pf.get("avoid") is None)
    code = 0 if cert.satisfied else 2
    return code, emit_certificate(cert, pf.task, multi, indent) + "\n", ""


def expected_exit(text: str) -> int | None:
    m = _EXPECT.search(text)
    return int(m.group(1)) if m else None


def run_corpus(directory: Path, indent: int | None, max_shell: int | None,
               write: bool = False) -> int:
    """Check every ``*.prob`` against its ``.json`` / ``.err`` file and ``expect-exit`` line."""
    files = sorted(directory.glob("*.prob"))
    if not files:
        print(f"no .prob files in {directory}", file=sys.stderr)
        return 1
    failures = 0
    for path in files:
        text = path.read_text(encoding="utf-8")
        code, out, err = solve_text(text, path.name, indent, max_shell)
        ok = True
        want = expected_exit(text)
        if want is not None and want != code:
            ok = False
        for suffix, got in ((".json", out), (".err", err)):
            ref = path.with_suffix(suffix)
            if write:
                if got:
                    ref.write_text(got, encoding="utf-8")
            elif ref.exists() and ref.read_text(encoding="utf-8") != got:
                ok = False
            elif not ref.exists() and got:
                ok = False
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {path.name} exit {code}")
    print(f"{len(files) - failures} passed, {failures} failed")
    return 0 if failures == 0 else 1


def run_selftest() -> int:
    from .acceptance import run_all

    results = run_all()
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed} passed, {len(results) - passed} failed")
    return 0 if passed == len(results) else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heightforge",
                description="Find small rational solutions with exact height certificates.")
    p.add_argument("command", nargs="?", choices=["solve"], help="solve a problem file")
    p.add_argument("file", nargs="?", help="problem file for 'solve'")
    p.add_argument("--json-indent", type=int, default=2, metavar="N",
                   help="JSON indentation (negative for a single line)")
    p.add_argument("--max-shell", type=int, default=None, metavar="N",
                   help="cap the sup-norm search radius")
    p.add_argument("--corpus", type=Path, metavar="DIR", help="check every .prob file in DIR")
    p.add_argument("--write-expected", action="store_true",
                   help="with --corpus, record current outputs as the expected ones")
    p.add_argument("--selftest", action="store_true", help="run the acceptance suites")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        modes = (args.command is not None) + (args.corpus is not None) + args.selftest
        if modes != 1:
            parser.error("choose exactly one of: solve FILE, --corpus DIR, --selftest")
        if args.command == "solve" and not args.file:
            parser.error("solve needs a problem file")
        if args.max_shell is not None and args.max_shell < 0:
            parser.error("--max-shell must be non-negative")
    except _UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"heightforge: error: {e}", file=sys.stderr)
        return 1
    indent = args.json_indent if args.json_indent >= 0 else None
    if args.selftest:
        return run_selftest()
    if args.corpus is not None:
        return run_corpus(args.corpus, indent, args.max_shell, args.write_expected)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        print(f"heightforge: cannot read {args.file}: {e}", file=sys.stderr)
        return 1
    code, out, err = solve_text(text, args.file, indent, args.max_shell)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
