import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


@dataclass(frozen=True, order=True)
class Phase:
    """The unit scalar e^{2 pi i turn}, kept as an exact rational turn in [0, 1)"""
    turn: Fraction = Fraction(0)

    def __post_init__(self):
        turn = Fraction(self.turn)
        object.__setattr__(self, "turn", turn - (turn.numerator // turn.denominator))

    @classmethod
    def of(cls, value: Union["Phase", Fraction, int, str]) -> "Phase":
        if isinstance(value, Phase):
            return value
        return cls(Fraction(value))

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.turn + other.turn)

    def conj(self) -> "Phase":
        return Phase(-self.turn)

    def __truediv__(self, other: "Phase") -> "Phase":
        return self * other.conj()

    @property
    def is_one(self) -> bool:
        return self.turn == 0

    def to_complex(self) -> complex:
        if self.turn == 0:
            return 1 + 0j
        return cmath.exp(2j * cmath.pi * float(self.turn))

    def __str__(self) -> str:
        return f"{self.turn.numerator}/{self.turn.denominator}"


ONE = Phase()
