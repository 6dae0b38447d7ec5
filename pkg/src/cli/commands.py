"""Command-line entry: check, classify, oracle, builtin, normal-form, render.

Exit status: 0 on pass or conclusive results, 1 on usage and input errors,
2 on violations or disagreements, 3 when some verdict stays Unknown.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from ..config import settings
from ..oracle.compare import COMPARED, compare_with_classifier
from ..oracle.projections import ProjectionEngine
from ..oracle.window import build_window, check_relations_numeric
from ..representations.atomic import AtomicRep
from ..representations.builtins import BUILTIN_NAMES, make_builtin
from ..representations.rep_file import emit_rep_file, load_rep, parse_params
from ..representations.verify import is_nica_covariant, verify_relations
from ..semigroup.errors import OdometerError, UsageError
from ..semigroup.logger_config import set_console_level, setup_logger
from ..semigroup.odometer import format_element, format_left_form, parse_word, reduce, to_left_form
from ..wold.classifier import ClassificationSession
from .render import render_dot

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_UNKNOWN = 3

_TABLE_COLUMNS = ("uu", "us", "su", "ws", "ss")


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def split_vertices(text: str) -> List[str]:
    """Split on commas that are not inside brackets or parentheses"""
    parts, depth, current = [], 0, []
    for char in text:
        if char in "([{":
            depth += 1
        elif char in ")]}":
            depth -= 1
        if char == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(char)
    parts.append("".join(current).strip())
    return [p for p in parts if p]


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="run.py", description="Isometric representations of the odometer semigroup")
    parser.add_argument("--log-level", default=None, help="console log level (DEBUG, INFO, WARNING, ...)")
    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    sub.required = True

    check = sub.add_parser("check", help="verify the defining relations and Nica-covariance")
    check.add_argument("rep")
    check.add_argument("--depth", type=int, default=8)

    classify = sub.add_parser("classify", help="Wold-type classification of basis vectors")
    classify.add_argument("rep")
    classify.add_argument("--vertices", default=None, help="comma-separated vertex keys (default: canonical seeds)")
    classify.add_argument("--budget", type=int, default=settings.default_budget)
    classify.add_argument("--format", choices=("json", "table"), default="json")

    oracle = sub.add_parser("oracle", help="numerical window checks and projections")
    oracle.add_argument("rep")
    oracle.add_argument("--radius", type=int, default=6)
    oracle.add_argument("--depth", type=int, default=4)
    oracle.add_argument("--tol", type=float, default=settings.projection_tol)
    oracle.add_argument("--budget", type=int, default=settings.default_budget)
    oracle.add_argument("--compare", action="store_true")

    builtin = sub.add_parser("builtin", help="emit a finite patch of a builtin family")
    builtin.add_argument("name", choices=BUILTIN_NAMES)
    builtin.add_argument("--n", type=int, required=True)
    builtin.add_argument("--param", action="append", default=[], help="k=v, repeatable")
    builtin.add_argument("--radius", type=int, default=3)
    builtin.add_argument("--emit", default=None, help="output file (default: stdout)")

    normal = sub.add_parser("normal-form", help="right and left normal forms of a generator word")
    normal.add_argument("word")
    normal.add_argument("--n", type=int, required=True)

    render = sub.add_parser("render", help="DOT rendering of an explored patch")
    render.add_argument("rep")
    render.add_argument("--dot", required=True)
    render.add_argument("--radius", type=int, default=3)
    return parser


class CommandRunner:
    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.logger = setup_logger('cli')

    def write(self, text: str):
        self.out.write(text if text.endswith("\n") else text + "\n")

    def _positive(self, name: str, value: int, minimum: int = 1):
        if value < minimum:
            raise UsageError(f"--{name} must be at least {minimum}, got {value}")

    def run(self, args: argparse.Namespace) -> int:
        handler = getattr(self, "cmd_" + args.command.replace("-", "_"))
        self.logger.info(f"Running {args.command}")
        return handler(args)

    def cmd_check(self, args) -> int:
        self._positive("depth", args.depth, 0)
        rep = load_rep(args.rep)
        relations = verify_relations(rep, rep.seeds, args.depth)
        nica = is_nica_covariant(rep, rep.seeds, args.depth)
        self.write(dump_json({"rep": rep.name, "relations": relations.to_dict(), "nica": nica.to_dict()}))
        return EXIT_OK if relations.passed else EXIT_VIOLATION

    def _vertices(self, rep: AtomicRep, text: Optional[str]) -> list:
        if text is None:
            if not rep.seeds:
                raise UsageError("No --vertices given and the representation has no seeds")
            return list(rep.seeds)
        return [rep.parse_key(key) for key in split_vertices(text)]

    def cmd_classify(self, args) -> int:
        self._positive("budget", args.budget)
        rep = load_rep(args.rep)
        vertices = self._vertices(rep, args.vertices)
        session = ClassificationSession(rep, args.budget)
        results = [session.classify(v) for v in vertices]
        records = [cls.to_record(rep) for cls in results]
        if args.format == "json":
            self.write(dump_json({"rep": rep.name, "classifications": records}))
        else:
            self.write(self._table(records))
        unknown = sum(1 for cls in results if not cls.conclusive)
        self.logger.info(f"Classified {len(results)} vertices of {rep.name}, {unknown} unresolved")
        return EXIT_UNKNOWN if unknown else EXIT_OK

    @staticmethod
    def _table(records: Sequence[Dict]) -> str:
        width = max([len("vertex")] + [len(r["vertex"]) for r in records])
        header = "vertex".ljust(width) + "  " + "  ".join(c.ljust(7) for c in _TABLE_COLUMNS) + "  resolved"
        rows = [header]
        for record in records:
            cells = "  ".join((record.get(c) or "-").ljust(7) for c in _TABLE_COLUMNS)
            rows.append(f"{record['vertex'].ljust(width)}  {cells}  {record['resolved'] or 'unknown'}")
        return "\n".join(rows)

    def cmd_oracle(self, args) -> int:
        self._positive("radius", args.radius, 2)
        self._positive("depth", args.depth, 0)
        if args.depth > args.radius:
            raise UsageError(f"--depth {args.depth} exceeds --radius {args.radius}")
        if args.tol <= 0:
            raise UsageError(f"--tol must be positive, got {args.tol}")
        rep = load_rep(args.rep)
        win = build_window(rep, rep.seeds, args.radius, margin=args.depth)
        numeric = check_relations_numeric(win, settings.residual_tol)

        engine = ProjectionEngine(win)
        interior = [i for i, inside in enumerate(win.interior_mask) if inside]
        for c in COMPARED:
            values = engine.component(c, args.depth).values
            for i in interior:
                numeric.projections.setdefault(win.key(i), {})[c.value] = float(values[i])

        output = {"rep": rep.name, "numeric": numeric.to_dict()}
        status = EXIT_OK if numeric.passed else EXIT_VIOLATION
        if args.compare:
            agreement = compare_with_classifier(rep, rep.seeds, args.radius, args.depth, args.tol, args.budget)
            output["agreement"] = agreement.to_dict()
            if not agreement.passed:
                status = EXIT_VIOLATION
        self.write(dump_json(output))
        return status

    def cmd_builtin(self, args) -> int:
        self._positive("radius", args.radius, 0)
        params = parse_params(args.param)
        rep = make_builtin(args.name, args.n, params)
        text = emit_rep_file(rep, rep.seeds, args.radius)
        if args.emit:
            Path(args.emit).write_text(text)
            self.logger.info(f"Wrote {args.name} patch to {args.emit}")
        else:
            self.write(text)
        return EXIT_OK

    def cmd_normal_form(self, args) -> int:
        x = reduce(parse_word(args.word, args.n))
        self.write(format_element(x))
        self.write(format_left_form(to_left_form(x)))
        return EXIT_OK

    def cmd_render(self, args) -> int:
        self._positive("radius", args.radius, 0)
        rep = load_rep(args.rep)
        Path(args.dot).write_text(render_dot(rep, rep.seeds, args.radius))
        self.logger.info(f"Wrote DOT render of {rep.name} to {args.dot}")
        return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    logger = setup_logger('cli')
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            set_console_level(args.log_level)
        return CommandRunner(out).run(args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {str(e)}\n")
        return EXIT_USAGE
    except (OdometerError, ValueError, OSError) as e:
        logger.error(f"Error: {str(e)}")
        return EXIT_USAGE
