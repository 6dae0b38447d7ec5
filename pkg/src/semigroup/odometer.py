"""Exact arithmetic in the odometer semigroup O_n.

O_n is generated by w, v_1, ..., v_n subject to w v_k = v_{k+1} (k < n) and
w v_n = v_1 w.  Every element has exactly one normal form v_mu w^N, obtained by
pushing every w as far right as it goes, and exactly one left form w^p v_1^q.

Digit words mu are stored most-recently-applied first: mu = (mu_1, ..., mu_m)
stands for v_{mu_1} ... v_{mu_m}.  Read as a base-n numeral with mu_1 the least
significant digit (digit d contributes d - 1), left multiplication by w is
"add one".
"""
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from .errors import BadDigit, RankMismatch, WordSyntaxError

W = 0  # letter code for w; k >= 1 encodes v_k


def check_rank(n: int):
    if not isinstance(n, int) or n < 1:
        raise BadDigit(f"Rank must be a positive integer, got {n!r}")


def check_digits(mu: Sequence[int], n: int):
    for d in mu:
        if not 1 <= d <= n:
            raise BadDigit(f"Digit {d} outside [1, {n}]")


@dataclass(frozen=True)
class GeneratorWord:
    letters: Tuple[int, ...]
    n: int

    def __post_init__(self):
        check_rank(self.n)
        for letter in self.letters:
            if not 0 <= letter <= self.n:
                raise BadDigit(f"Letter v{letter} outside rank {self.n}")

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if self.n != other.n:
            raise RankMismatch(self.n, other.n)
        return GeneratorWord(self.letters + other.letters, self.n)

    def __str__(self) -> str:
        return " ".join("w" if letter == W else f"v{letter}" for letter in self.letters)


@dataclass(frozen=True, order=True)
class OdometerElement:
    n: int
    mu: Tuple[int, ...] = ()
    power: int = 0

    def __post_init__(self):
        check_rank(self.n)
        check_digits(self.mu, self.n)
        if self.power < 0:
            raise BadDigit(f"Negative w-power {self.power}")

    @classmethod
    def identity(cls, n: int) -> "OdometerElement":
        return cls(n, (), 0)

    @property
    def length(self) -> int:
        return len(self.mu) + self.power

    def __mul__(self, other: "OdometerElement") -> "OdometerElement":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class LeftForm:
    p: int
    q: int


# Odometer arithmetic

def digits_value(mu: Sequence[int], n: int) -> int:
    """Base-n value of mu, first digit least significant"""
    value = 0
    for d in reversed(mu):
        value = value * n + (d - 1)
    return value


def value_digits(value: int, length: int, n: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(length):
        value, r = divmod(value, n)
        digits.append(r + 1)
    return tuple(digits)


def add_one(mu: Sequence[int], n: int) -> Tuple[Tuple[int, ...], int]:
    """w v_mu = v_mu' w^carry, by the odometer's case table."""
    check_digits(mu, n)
    out = list(mu)
    for i, d in enumerate(out):
        if d != n:
            out[i] = d + 1
            return tuple(out), 0
        out[i] = 1
    return tuple(out), 1


def subtract_one(mu: Sequence[int], n: int) -> Tuple[Tuple[int, ...], int]:
    """Inverse of add_one: returns (mu', borrow) with v_mu = w v_mu' when borrow is 0."""
    check_digits(mu, n)
    out = list(mu)
    for i, d in enumerate(out):
        if d != 1:
            out[i] = d - 1
            return tuple(out), 0
        out[i] = n
    return tuple(out), 1


def shift_w(mu: Sequence[int], count: int, n: int) -> Tuple[Tuple[int, ...], int]:
    """w^count v_mu = v_mu' w^carry; count applications of add_one at once."""
    if not mu:
        return (), count
    total = digits_value(mu, n) + count
    carry, rest = divmod(total, n ** len(mu))
    return value_digits(rest, len(mu), n), carry


# Rewriting

def rewrite_step(letters: Sequence[int], n: int) -> Tuple[Tuple[int, ...], bool]:
    """Apply the leftmost applicable rule w v_k -> v_{k+1}, w v_n -> v_1 w."""
    for i in range(len(letters) - 1):
        if letters[i] == W and letters[i + 1] != W:
            k = letters[i + 1]
            if k < n:
                replacement = (k + 1,)
            else:
                replacement = (1, W)
            return tuple(letters[:i]) + replacement + tuple(letters[i + 2:]), True
    return tuple(letters), False


def reduce(word: GeneratorWord) -> OdometerElement:
    """Rewrite to the fixpoint v_mu w^N"""
    letters = word.letters
    while True:
        letters, changed = rewrite_step(letters, word.n)
        if not changed:
            break
    split = len(letters)
    while split > 0 and letters[split - 1] == W:
        split -= 1
    return OdometerElement(word.n, tuple(letters[:split]), len(letters) - split)


def to_word(x: OdometerElement) -> GeneratorWord:
    return GeneratorWord(tuple(x.mu) + (W,) * x.power, x.n)


def multiply(x: OdometerElement, y: OdometerElement) -> OdometerElement:
    if x.n != y.n:
        raise RankMismatch(x.n, y.n)
    # v_mu w^N v_nu w^M = v_mu v_nu' w^(carry + M)
    nu, carry = shift_w(y.mu, x.power, x.n)
    return OdometerElement(x.n, x.mu + nu, carry + y.power)


def left_multiply(letter: int, x: OdometerElement) -> OdometerElement:
    """Left action of a single generator"""
    if letter == W:
        mu, carry = add_one(x.mu, x.n)
        return OdometerElement(x.n, mu, x.power + carry)
    return OdometerElement(x.n, (letter,) + x.mu, x.power)


def act(word: GeneratorWord, x: OdometerElement) -> OdometerElement:
    """Left regular action of a generator word: e_x -> e_{word x}"""
    if word.n != x.n:
        raise RankMismatch(word.n, x.n)
    for letter in reversed(word.letters):
        x = left_multiply(letter, x)
    return x


def left_divide_w(x: OdometerElement):
    """y with x = w y, or None"""
    form = to_left_form(x)
    if form.p == 0:
        return None
    return from_left_form(form.p - 1, form.q, x.n)


def left_divide_v(k: int, x: OdometerElement):
    """y with x = v_k y, or None"""
    if not x.mu or x.mu[0] != k:
        return None
    return OdometerElement(x.n, x.mu[1:], x.power)


# Left form w^p v_1^q

def to_left_form(x: OdometerElement) -> LeftForm:
    # v_1 w^a = w^(n a) v_1, so v_mu w^N = w^(value(mu) + N n^|mu|) v_1^|mu|
    return LeftForm(digits_value(x.mu, x.n) + x.power * x.n ** len(x.mu), len(x.mu))


def from_left_form(p: int, q: int, n: int) -> OdometerElement:
    mu, carry = shift_w((1,) * q, p, n)
    return OdometerElement(n, mu, carry)


# Enumeration

def enumerate_words(n: int, max_len: int) -> Iterator[GeneratorWord]:
    for length in range(max_len + 1):
        for letters in itertools.product(range(n + 1), repeat=length):
            yield GeneratorWord(letters, n)


def enumerate_elements(n: int, max_len: int) -> Iterator[OdometerElement]:
    """All normal forms with |mu| + N <= max_len"""
    for m in range(max_len + 1):
        for mu in itertools.product(range(1, n + 1), repeat=m):
            for power in range(max_len - m + 1):
                yield OdometerElement(n, mu, power)


# Text forms

_TOKEN = re.compile(r"^(w|v(\d+))$")


def parse_word(text: str, n: int) -> GeneratorWord:
    """Parse whitespace-separated tokens `w`, `v1`..`vN`"""
    letters: List[int] = []
    for token in text.split():
        match = _TOKEN.match(token.strip().lower())
        if not match:
            raise WordSyntaxError(f"Unknown token {token!r}")
        letters.append(W if match.group(1) == "w" else int(match.group(2)))
    try:
        return GeneratorWord(tuple(letters), n)
    except BadDigit as e:
        raise WordSyntaxError(str(e)) from e


def format_element(x: OdometerElement) -> str:
    return f"v[{','.join(str(d) for d in x.mu)}] w^{x.power}"


def element_key(x: OdometerElement) -> str:
    return f"v[{','.join(str(d) for d in x.mu)}]w^{x.power}"


def format_left_form(form: LeftForm) -> str:
    return f"w^{form.p} v1^{form.q}"


_ELEMENT = re.compile(r"^v\[([\d,\s]*)\]\s*w\^(\d+)$")


def parse_element(text: str, n: int) -> OdometerElement:
    match = _ELEMENT.match(text.strip())
    if not match:
        raise WordSyntaxError(f"Not a normal form: {text!r}")
    body = match.group(1).replace(" ", "")
    mu = tuple(int(d) for d in body.split(",")) if body else ()
    try:
        return OdometerElement(n, mu, int(match.group(2)))
    except BadDigit as e:
        raise WordSyntaxError(str(e)) from e
