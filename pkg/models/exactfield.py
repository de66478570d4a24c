"""
Exact scalars: the rationals Q (fractions.Fraction) and the Eisenstein field Q(w), w^2 + w + 1 = 0.

Elements of Q(w) are stored on the basis {1, w}. Every constant the toolkit needs,
including sqrt(3)*i = 2w + 1, lives there.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from models.errors import (
    DivisionByZeroError,
    FieldMismatchError,
    ScalarParseError,
    ZeroDenominatorError,
)

Rational = Fraction


def rat_make(num: int, den: int = 1) -> Fraction:
    """Canonical rational num/den; the sign is carried by the numerator."""
    if den == 0:
        raise ZeroDenominatorError(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


@dataclass(frozen=True, eq=False)
class EisensteinScalar:
    """u + w*omega with rational u, w."""

    u: Fraction
    w: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "w", Fraction(self.w))

    @classmethod
    def _of(cls, u: Fraction, w: Fraction) -> "EisensteinScalar":
        """Skip normalisation; u and w are already Fractions."""
        x = object.__new__(cls)
        object.__setattr__(x, "u", u)
        object.__setattr__(x, "w", w)
        return x

    @staticmethod
    def _lift(other) -> "EisensteinScalar | None":
        if isinstance(other, EisensteinScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return EisensteinScalar(Fraction(other), Fraction(0))
        return None

    def is_rational(self) -> bool:
        return self.w == 0

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return EisensteinScalar._of(self.u + o.u, self.w + o.w)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinScalar._of(-self.u, -self.w)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return EisensteinScalar._of(self.u - o.u, self.w - o.w)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.u, self.w, o.u, o.w
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2, with w^2 = -1 - w
        return EisensteinScalar._of(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """N(a + bw) = a^2 - ab + b^2."""
        return self.u * self.u - self.u * self.w + self.w * self.w

    def conjugate(self) -> "EisensteinScalar":
        """Complex conjugation, w -> w^2 = -1 - w."""
        return EisensteinScalar._of(self.u - self.w, -self.w)

    def inverse(self) -> "EisensteinScalar":
        n = self.norm()
        if n == 0:
            raise DivisionByZeroError("inverse of zero in Q(w)")
        return EisensteinScalar._of((self.u - self.w) / n, -self.w / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = EisensteinScalar(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.u == o.u and self.w == o.w

    def __hash__(self):
        # agrees with hash(Fraction) on the rational subfield, since __eq__ does
        return hash(self.u) if self.w == 0 else hash((self.u, self.w))

    def __bool__(self):
        return bool(self.u) or bool(self.w)

    def __str__(self):
        return scalar_format(self)

    def __repr__(self):
        return f"EisensteinScalar('{scalar_format(self)}')"


FieldScalar = Union[Fraction, EisensteinScalar]

OMEGA = EisensteinScalar(0, 1)
OMEGA_SQUARED = EisensteinScalar(-1, -1)
SQRT3_I = EisensteinScalar(1, 2)  # 2w + 1 = i*sqrt(3)


# ---------------------------------------------------------------------------
# Field arithmetic on FieldScalar values
# ---------------------------------------------------------------------------

def field_add(x: FieldScalar, y: FieldScalar) -> FieldScalar:
    return x + y


def field_neg(x: FieldScalar) -> FieldScalar:
    return -x


def field_mul(x: FieldScalar, y: FieldScalar) -> FieldScalar:
    return x * y


def field_inv(x: FieldScalar) -> FieldScalar:
    if isinstance(x, EisensteinScalar):
        return x.inverse()
    if x == 0:
        raise DivisionByZeroError("inverse of zero in Q")
    return 1 / Fraction(x)


def norm(x: FieldScalar) -> Fraction:
    if isinstance(x, EisensteinScalar):
        return x.norm()
    return Fraction(x) * Fraction(x)


def conjugate(x: FieldScalar) -> FieldScalar:
    return x.conjugate() if isinstance(x, EisensteinScalar) else Fraction(x)


# ---------------------------------------------------------------------------
# Grammar
# ---------------------------------------------------------------------------

_RAT = r"-?[0-9]+(?:/[0-9]+)?"
_RATIONAL_RE = re.compile(rf"^{_RAT}$")
_EISENSTEIN_RE = re.compile(rf"^(?:(?P<u>{_RAT})(?P<op>[+-]))?(?P<w>-?(?:[0-9]+(?:/[0-9]+)?)?)w$")


def _parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise ScalarParseError(f"malformed rational literal: {text!r}")
    num, _, den = text.partition("/")
    try:
        return rat_make(int(num), int(den) if den else 1)
    except ZeroDenominatorError as exc:
        raise ScalarParseError(f"zero denominator in literal {text!r}") from exc


def scalar_parse(text: str) -> FieldScalar:
    """Parse `1/3+2/3w`, `-w`, `5`, ...; literals without `w` come back as Fraction."""
    if not isinstance(text, str):
        raise ScalarParseError(f"expected a scalar literal, got {type(text).__name__}")
    literal = text.strip().replace(" ", "")
    if not literal:
        raise ScalarParseError("empty scalar literal")
    if "w" not in literal:
        return _parse_rational(literal)

    match = _EISENSTEIN_RE.match(literal)
    if not match:
        raise ScalarParseError(f"malformed Eisenstein literal: {text!r}")
    u_text, op, w_text = match.group("u"), match.group("op"), match.group("w")
    # a signed coefficient may follow the operator (1+-2w), a bare sign may not (1+-w)
    if op and w_text == "-":
        raise ScalarParseError(f"sign without a coefficient after {op!r} in literal: {text!r}")
    if w_text in ("", "-"):
        w = Fraction(-1 if w_text == "-" else 1)
    else:
        w = _parse_rational(w_text)
    if op == "-":
        w = -w
    u = _parse_rational(u_text) if u_text else Fraction(0)
    return EisensteinScalar(u, w)


def scalar_format(x: FieldScalar) -> str:
    """Minimal-term rendering in the grammar accepted by scalar_parse."""
    if not isinstance(x, EisensteinScalar):
        return str(Fraction(x))
    if x.w == 0:
        return str(x.u)
    magnitude = abs(x.w)
    coefficient = "" if magnitude == 1 else str(magnitude)
    if x.u == 0:
        return f"{'-' if x.w < 0 else ''}{coefficient}w"
    return f"{x.u}{'-' if x.w < 0 else '+'}{coefficient}w"


def as_scalar(value) -> FieldScalar:
    """Accept int, Fraction, EisensteinScalar or a literal string."""
    if isinstance(value, (EisensteinScalar, Fraction)):
        return value
    if isinstance(value, bool):
        raise ScalarParseError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return scalar_parse(value)
    raise ScalarParseError(f"cannot interpret {value!r} as a scalar")


# ---------------------------------------------------------------------------
# Field descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """One of the two supported scalar fields; `name` is the CLI spelling."""

    name: str
    label: str

    @property
    def is_eisenstein(self) -> bool:
        return self.name == "qw"

    @property
    def zero(self) -> FieldScalar:
        return self.coerce(0)

    @property
    def one(self) -> FieldScalar:
        return self.coerce(1)

    def coerce(self, value) -> FieldScalar:
        x = as_scalar(value)
        if self.is_eisenstein:
            return x if isinstance(x, EisensteinScalar) else EisensteinScalar(x)
        if isinstance(x, EisensteinScalar):
            if not x.is_rational():
                raise FieldMismatchError(f"{scalar_format(x)} is not in {self.label}")
            return x.u
        return x

    def contains(self, value) -> bool:
        try:
            self.coerce(value)
        except (FieldMismatchError, ScalarParseError):
            return False
        return True

    def parse(self, text: str) -> FieldScalar:
        return self.coerce(scalar_parse(text))

    def random_scalar(self, rng: random.Random, bound: int) -> FieldScalar:
        """Numerators in [-bound, bound], denominators in [1, bound]."""
        u = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if not self.is_eisenstein:
            return u
        return EisensteinScalar(u, Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))


RATIONALS = Field("q", "Q")
EISENSTEIN = Field("qw", "Q(w)")


def field_by_name(name: str) -> Field:
    key = name.strip().lower()
    if key == RATIONALS.name:
        return RATIONALS
    if key == EISENSTEIN.name:
        return EISENSTEIN
    raise ValueError(f"unknown field {name!r}; expected 'q' or 'qw'")


def field_of(x: FieldScalar) -> Field:
    return EISENSTEIN if isinstance(x, EisensteinScalar) else RATIONALS


def join_fields(*fields: Field) -> Field:
    return EISENSTEIN if any(f.is_eisenstein for f in fields) else RATIONALS
