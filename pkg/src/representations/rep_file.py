"""Line-oriented representation files and `builtin:` arguments.

    odometer 2
    vertex a
    arrow w a b
    arrow v1 a c 1/3
    boundary c
    hint VBackwardTotal {a,b}
    builtin weak_shift 2
"""
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from ..semigroup.errors import PresentationError, RepSyntaxError
from ..semigroup.logger_config import setup_logger
from .atomic import Arrow, AtomicRep, FiniteRep, Gap
from .builtins import make_builtin
from .hints import Hint, HintKind, parse_region
from .phase import Phase
from .verify import explore

logger = setup_logger('rep_file')


def _parse_phase(token: str, line: int) -> Phase:
    try:
        p, q = token.split("/")
        return Phase(Fraction(int(p), int(q)))
    except (ValueError, ZeroDivisionError):
        raise RepSyntaxError(f"Bad phase {token!r}", line)


def _parse_generator(token: str, n: int, line: int) -> int:
    if token == "w":
        return 0
    if token.startswith("v") and token[1:].isdigit():
        k = int(token[1:])
        if not 1 <= k <= n:
            raise PresentationError("digit-range", f"v{k} outside [1, {n}]", line)
        return k
    raise RepSyntaxError(f"Unknown generator {token!r}", line)


def parse_params(tokens: Iterable[str], line: int = 0) -> Dict[str, str]:
    params = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise RepSyntaxError(f"Parameter {token!r} is not key=value", line)
        params[key] = value
    return params


def parse_rep_file(text: str) -> AtomicRep:
    """Parse and validate a representation file"""
    n: Optional[int] = None
    builtin: Optional[Tuple[str, int, Dict[str, str], int]] = None
    explicit_line = 0
    vertices: List[str] = []
    w_arrows: Dict[str, Arrow] = {}
    v_arrows: Dict[Tuple[int, str], Arrow] = {}
    w_targets: Dict[str, int] = {}
    v_targets: Dict[str, int] = {}  # target -> digit of the arrow into it
    boundary: List[str] = []
    hints: List[Hint] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        tokens = content.split()
        directive, args = tokens[0], tokens[1:]

        if directive == "odometer":
            if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
                raise RepSyntaxError("Expected 'odometer <n>' with n >= 1", number)
            if n is not None:
                raise RepSyntaxError("Repeated odometer header", number)
            n = int(args[0])
            continue

        if directive == "builtin":
            if len(args) < 2 or not args[1].isdigit():
                raise RepSyntaxError("Expected 'builtin <name> <n> [k=v ...]'", number)
            builtin = (args[0], int(args[1]), parse_params(args[2:], number), number)
            continue

        if n is None:
            raise RepSyntaxError("Missing 'odometer <n>' header", number)
        explicit_line = explicit_line or number

        if directive == "vertex":
            if len(args) != 1:
                raise RepSyntaxError("Expected 'vertex <key>'", number)
            vertices.append(args[0])
        elif directive == "arrow":
            if len(args) not in (3, 4):
                raise RepSyntaxError("Expected 'arrow <gen> <src> <dst> [p/q]'", number)
            gen = _parse_generator(args[0], n, number)
            src, dst = args[1], args[2]
            phase = _parse_phase(args[3], number) if len(args) == 4 else Phase()
            vertices.extend([src, dst])
            if gen == 0:
                if src in w_arrows:
                    raise PresentationError("duplicate-arrow", f"second W-arrow from {src}", number)
                if dst in w_targets:
                    raise PresentationError("non-injective", f"two W-arrows into {dst}", number)
                w_arrows[src] = Arrow(dst, phase)
                w_targets[dst] = number
            else:
                if (gen, src) in v_arrows:
                    raise PresentationError("duplicate-arrow", f"second V{gen}-arrow from {src}", number)
                if v_targets.get(dst) == gen:
                    raise PresentationError("non-injective", f"two V{gen}-arrows into {dst}", number)
                if dst in v_targets:
                    raise PresentationError("overlapping-ranges", f"ranges of V overlap at {dst}", number)
                v_arrows[(gen, src)] = Arrow(dst, phase)
                v_targets[dst] = gen
        elif directive == "boundary":
            if len(args) != 1:
                raise RepSyntaxError("Expected 'boundary <key>'", number)
            boundary.append(args[0])
            vertices.append(args[0])
        elif directive == "hint":
            if len(args) < 2:
                raise RepSyntaxError("Expected 'hint <kind> <region>'", number)
            try:
                kind = HintKind.parse(args[0])
                region = parse_region(" ".join(args[1:]))
            except ValueError as e:
                raise RepSyntaxError(str(e), number)
            hints.append(Hint(kind, region, f"line{number}:{kind.value}"))
        else:
            raise RepSyntaxError(f"Unknown directive {directive!r}", number)

    if builtin is not None:
        name, rank, params, number = builtin
        if explicit_line:
            raise PresentationError("mixed", "builtin cannot be combined with explicit arrows", explicit_line)
        if n is not None and n != rank:
            raise PresentationError("rank-mismatch", f"header says {n}, builtin says {rank}", number)
        return make_builtin(name, rank, params)

    if n is None:
        raise RepSyntaxError("Empty representation file", 1)
    rep = FiniteRep(n, vertices, w_arrows, v_arrows, boundary, hints)
    logger.debug(f"Parsed {len(rep.vertices())} vertices, {len(w_arrows)} W-arrows, {len(v_arrows)} V-arrows")
    return rep


def emit_rep_file(rep: AtomicRep, seeds: Iterable, radius: int) -> str:
    """Render the radius-ball around `seeds` as a finite representation file"""
    region = explore(rep, seeds, radius)
    order = sorted(region, key=rep.sort_key)
    inside = set(region)
    lines = [f"# {rep.name} patch, radius {radius}", f"odometer {rep.n}"]
    lines.extend(f"vertex {rep.format_key(v)}" for v in order)

    leaving = set()
    for v in order:
        for gen in rep.generators():
            step = rep.forward(gen, v)
            if isinstance(step, Arrow) and step.target in inside:
                label = "w" if gen == 0 else f"v{gen}"
                suffix = "" if step.phase.is_one else f" {step.phase}"
                lines.append(f"arrow {label} {rep.format_key(v)} {rep.format_key(step.target)}{suffix}")
            elif step is not Gap.ZERO:
                leaving.add(v)
            back = rep.backward(gen, v)
            if back is Gap.UNEXPLORED or (isinstance(back, Arrow) and back.target not in inside):
                leaving.add(v)

    lines.extend(f"boundary {rep.format_key(v)}" for v in order if v in leaving)
    return "\n".join(lines) + "\n"


def load_rep(argument: str) -> AtomicRep:
    """A file path or `builtin:<name>:<n>[:k=v,...]`"""
    if argument.startswith("builtin:"):
        parts = argument.split(":", 3)
        if len(parts) < 3 or not parts[2].isdigit():
            raise RepSyntaxError(f"Expected builtin:<name>:<n>[:k=v,...], got {argument!r}", 0)
        params = parse_params([p for p in parts[3].split(",") if p]) if len(parts) == 4 else {}
        return make_builtin(parts[1], int(parts[2]), params)
    path = Path(argument)
    logger.info(f"Reading representation file {path}")
    return parse_rep_file(path.read_text())
