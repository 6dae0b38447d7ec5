"""Builtin infinite families of atomic representations.

Every family is lazy: vertices are plain Python values and all four arrow maps
are pure functions of the key.
"""
import re
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from ..semigroup.errors import BadParam, BadRank, MissingParam, UnknownBuiltin, WordSyntaxError
from ..semigroup.logger_config import setup_logger
from ..semigroup.odometer import (
    W,
    OdometerElement,
    element_key,
    left_divide_v,
    left_divide_w,
    left_multiply,
    parse_element,
)
from .atomic import Arrow, AtomicRep, Gap, Step
from .hints import COORDINATE_KEY, AllRegion, Hint, HintKind, bound_region
from .induced import InducedRep
from .phase import Phase

logger = setup_logger('builtins')

BUILTIN_NAMES = (
    "left_regular_on",
    "left_regular_fn_unitary",
    "su_tree",
    "weak_shift",
    "inductive",
    "slocinski",
)

Word = Tuple[int, ...]


# Word keys: digits run together, "e" for the empty word, "." separators from n = 10

def format_word(mu: Word, n: int) -> str:
    if not mu:
        return "e"
    separator = "." if n >= 10 else ""
    return separator.join(str(d) for d in mu)


def parse_word_key(text: str, n: int) -> Word:
    text = text.strip()
    if text in ("e", ""):
        return ()
    parts = text.split(".") if n >= 10 else list(text)
    try:
        mu = tuple(int(part) for part in parts)
    except ValueError as e:
        raise WordSyntaxError(f"Not a word key: {text!r}") from e
    for d in mu:
        if not 1 <= d <= n:
            raise WordSyntaxError(f"Digit {d} outside [1, {n}] in {text!r}")
    return mu


def _is_word(v, n: int) -> bool:
    return isinstance(v, tuple) and all(isinstance(d, int) and 1 <= d <= n for d in v)


class LeftRegularRep(AtomicRep):
    """O_n acting on l^2(O_n) by left multiplication"""

    def __init__(self, n: int):
        super().__init__(n, "left_regular_on", seeds=(OdometerElement.identity(n),))

    def contains(self, v) -> bool:
        return isinstance(v, OdometerElement) and v.n == self.n

    def w_of(self, v) -> Step:
        return Arrow(left_multiply(W, v))

    def v_of(self, k: int, v) -> Step:
        return Arrow(left_multiply(k, v))

    def w_back(self, v) -> Step:
        source = left_divide_w(v)
        return Gap.ZERO if source is None else Arrow(source)

    def v_back(self, k: int, v) -> Step:
        source = left_divide_v(k, v)
        return Gap.ZERO if source is None else Arrow(source)

    def format_key(self, v) -> str:
        return element_key(v)

    def parse_key(self, text: str):
        return parse_element(text, self.n)


class FnUnitaryRep(InducedRep):
    """F_n^+ with V_k prepending k and W the level-preserving add-one.

    The carry out of the all-n word of length m lands on 1^m with phase lambda.
    """

    def __init__(self, n: int, lam: Phase):
        super().__init__(
            n,
            "left_regular_fn_unitary",
            hints=(Hint(HintKind.W_BACKWARD_TOTAL, AllRegion(), "fn_unitary:w-back:all"),),
            seeds=((),),
        )
        self.lam = lam
        self.wandering_unitary = {(): ((), lam)}

    def contains(self, v) -> bool:
        return _is_word(v, self.n)

    def v_of(self, k: int, v) -> Step:
        return Arrow((k,) + v)

    def v_back(self, k: int, v) -> Step:
        if v and v[0] == k:
            return Arrow(v[1:])
        return Gap.ZERO

    def format_key(self, v) -> str:
        return format_word(v, self.n)

    def parse_key(self, text: str):
        return parse_word_key(text, self.n)


class SuTreeRep(InducedRep):
    """Root with a V_1 loop and the n-ary tree hanging off it.

    Vertices are the empty word and the words without a trailing 1; e_mu = V_mu e_root.
    """

    def __init__(self, n: int):
        super().__init__(n, "su_tree", seeds=((),))

    def contains(self, v) -> bool:
        return _is_word(v, self.n) and (not v or v[-1] != 1)

    def v_of(self, k: int, v) -> Step:
        if not v and k == 1:
            return Arrow(())
        return Arrow((k,) + v)

    def v_back(self, k: int, v) -> Step:
        if not v:
            return Arrow(()) if k == 1 else Gap.ZERO
        if v[0] == k:
            return Arrow(v[1:])
        return Gap.ZERO

    def format_key(self, v) -> str:
        return format_word(v, self.n)

    def parse_key(self, text: str):
        return parse_word_key(text, self.n)


class WeakShiftRep(AtomicRep):
    """Vertices (r, t) with r >= 0 or t >= 0; W(r,t) = (r,t+1), V_k(r,t) = (r+1, n t + k - 1)"""

    def __init__(self, n: int, name: str = "weak_shift"):
        hints = (
            Hint(HintKind.V_BACKWARD_TOTAL, bound_region("t>=0"), f"{name}:v-back:t>=0"),
            Hint(HintKind.W_BACKWARD_TOTAL, bound_region("r>=0"), f"{name}:w-back:r>=0"),
        )
        super().__init__(n, name, hints=hints, seeds=((0, 0),))

    def contains(self, v) -> bool:
        return (
            isinstance(v, tuple)
            and len(v) == 2
            and all(isinstance(c, int) for c in v)
            and (v[0] >= 0 or v[1] >= 0)
        )

    def w_of(self, v) -> Step:
        return Arrow((v[0], v[1] + 1))

    def v_of(self, k: int, v) -> Step:
        return Arrow((v[0] + 1, self.n * v[1] + k - 1))

    def w_back(self, v) -> Step:
        source = (v[0], v[1] - 1)
        return Arrow(source) if self.contains(source) else Gap.ZERO

    def v_back(self, k: int, v) -> Step:
        t, remainder = divmod(v[1] - (k - 1), self.n)
        if remainder:
            return Gap.ZERO
        source = (v[0] - 1, t)
        return Arrow(source) if self.contains(source) else Gap.ZERO

    def format_key(self, v) -> str:
        return f"({v[0]},{v[1]})"

    def parse_key(self, text: str):
        match = COORDINATE_KEY.match(text.strip())
        if not match:
            raise WordSyntaxError(f"Not a coordinate key: {text!r}")
        return int(match.group(1)), int(match.group(2))


# Digit streams for the inductive family: k_m for m >= 1

def thue_morse_stream(n: int) -> Callable[[int], int]:
    def digit(m: int) -> int:
        value, total = m - 1, 0
        while value:
            value, r = divmod(value, n)
            total += r
        return total % n + 1
    return digit


def periodic_stream(word: Word) -> Callable[[int], int]:
    return lambda m: word[(m - 1) % len(word)]


_PERIODIC = re.compile(r"^periodic\((\d[\d.]*)\)$")


def parse_stream(text: str, n: int) -> Tuple[str, Callable[[int], int]]:
    text = text.strip()
    if text == "thue_morse":
        return text, thue_morse_stream(n)
    match = _PERIODIC.match(text)
    if not match:
        raise BadParam(f"Unknown digit stream: {text}")
    try:
        word = parse_word_key(match.group(1), n)
    except WordSyntaxError as e:
        raise BadParam(str(e)) from e
    if not word or all(d == 1 for d in word) or all(d == n for d in word):
        raise BadParam(f"Periodic word {match.group(1)} needs a digit other than 1 and one other than {n}")
    return text, periodic_stream(word)


class InductiveRep(InducedRep):
    """An infinite backward chain g_0 <- g_1 <- ... with V_{k_m} g_m = g_{m-1}, plus the
    free forest V_mu g_m.

    Vertex (m, mu) is V_mu g_m, kept canonical by forbidding mu to end in k_m (m >= 1).
    """

    def __init__(self, n: int, stream_id: str, stream: Callable[[int], int]):
        hints = tuple(
            Hint(kind, AllRegion(), f"inductive:{label}:all")
            for kind, label in (
                (HintKind.WV_BACKWARD_TOTAL, "wv-back"),
                (HintKind.V_BACKWARD_TOTAL, "v-back"),
                (HintKind.W_BACKWARD_TOTAL, "w-back"),
            )
        )
        super().__init__(n, "inductive", hints=hints, seeds=((0, ()),))
        self.stream_id = stream_id
        self.stream = stream

    def contains(self, v) -> bool:
        if not (isinstance(v, tuple) and len(v) == 2 and isinstance(v[0], int) and v[0] >= 0):
            return False
        m, mu = v
        if not _is_word(mu, self.n):
            return False
        return not (m >= 1 and mu and mu[-1] == self.stream(m))

    def v_of(self, k: int, v) -> Step:
        m, mu = v
        if not mu and m >= 1 and k == self.stream(m):
            return Arrow((m - 1, ()))
        return Arrow((m, (k,) + mu))

    def v_back(self, k: int, v) -> Step:
        m, mu = v
        if mu:
            return Arrow((m, mu[1:])) if mu[0] == k else Gap.ZERO
        return Arrow((m + 1, ())) if k == self.stream(m + 1) else Gap.ZERO

    def format_key(self, v) -> str:
        m, mu = v
        prefix = "" if not mu else format_word(mu, self.n)
        return f"{prefix}g{m}"

    def parse_key(self, text: str):
        head, sep, tail = text.strip().partition("g")
        if not sep or not tail.isdigit():
            raise WordSyntaxError(f"Not an inductive key: {text!r}")
        mu = parse_word_key(head, self.n) if head else ()
        return int(tail), mu


def _phase_param(params: Dict[str, str], name: str) -> Phase:
    if name not in params:
        raise MissingParam(f"Missing parameter: {name}")
    try:
        return Phase(Fraction(params[name]))
    except (ValueError, ZeroDivisionError) as e:
        raise BadParam(f"Bad phase {params[name]!r} for {name}") from e


def make_builtin(name: str, n: int, params: Optional[Dict[str, str]] = None) -> AtomicRep:
    """Construct a builtin family by name"""
    params = dict(params or {})
    if name not in BUILTIN_NAMES:
        raise UnknownBuiltin(f"Unknown builtin: {name}")
    if not isinstance(n, int) or n < 1:
        raise BadRank(f"Rank must be a positive integer, got {n!r}")

    logger.debug(f"Building {name} with n={n} params={params}")

    if name == "left_regular_on":
        return LeftRegularRep(n)
    if name == "left_regular_fn_unitary":
        return FnUnitaryRep(n, _phase_param(params, "lambda"))
    if name == "su_tree":
        if n < 2:
            raise BadRank("su_tree needs n >= 2")
        return SuTreeRep(n)
    if name == "weak_shift":
        return WeakShiftRep(n)
    if name == "slocinski":
        if n != 1:
            raise BadRank("slocinski is defined for n = 1 only")
        return WeakShiftRep(1, name="slocinski")
    # inductive
    if n < 2:
        raise BadRank("inductive needs n >= 2")
    if "stream" not in params:
        raise MissingParam("Missing parameter: stream")
    stream_id, stream = parse_stream(params["stream"], n)
    return InductiveRep(n, stream_id, stream)
