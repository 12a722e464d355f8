"""Exact coefficient field: rational functions in q over Q, or Q itself once q
has been specialized to a rational number.

Two concrete element types share the :class:`FieldElement` interface:

* :class:`QFunction` -- an element of Q(q), kept in the canonical form
  ``q^shift * num(q) / den(q)`` where ``num`` and ``den`` are coprime
  polynomials with nonzero constant terms and ``den`` is monic;
* :class:`QValue` -- a rational number tagged with the value of q it came from.

Mixing elements of different modes raises :class:`~spa.errors.ModeMismatch`.
Python ints and :class:`fractions.Fraction` are coerced into either mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from sympy.polys.domains import QQ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from .errors import DivisionByZero, IllegalQ, ModeMismatch, PoleAtQ

_R, _Q = ring("q", QQ)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    # gmpy2.mpq and friends
    return Fraction(int(x.numerator), int(x.denominator))


def _check_q(value: Fraction) -> None:
    if value == 0 or value ** 8 == 1:
        raise IllegalQ(f"q = {value} violates q != 0, q^8 != 1")


@dataclass(frozen=True)
class QMode:
    """Which coefficient field is in use: Q(q) (value None) or Q with q = value."""

    value: Fraction | None = None

    def __post_init__(self):
        if self.value is not None:
            v = _as_fraction(self.value)
            _check_q(v)
            object.__setattr__(self, "value", v)

    @classmethod
    def parse(cls, text: str) -> "QMode":
        text = text.strip()
        if text.startswith("q="):
            text = text[2:]
        if text in ("", "symbolic", "q"):
            return SYMBOLIC
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise IllegalQ(f"cannot read q value {text!r}") from exc
        return cls(value)

    @property
    def symbolic(self) -> bool:
        return self.value is None

    def __str__(self):
        return "symbolic" if self.value is None else str(self.value)

    # element factories

    def scalar(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.mode != self:
                raise ModeMismatch(f"{x!r} is not in mode {self}")
            return x
        x = _as_fraction(x)
        if self.value is None:
            return QFunction._from_parts(_R(QQ(x.numerator, x.denominator)), _R.one, 0)
        return QValue(x, self)

    @property
    def zero(self) -> "FieldElement":
        return self.scalar(0)

    @property
    def one(self) -> "FieldElement":
        return self.scalar(1)

    @property
    def q(self) -> "FieldElement":
        """The parameter q itself, as an element of this field."""
        if self.value is None:
            return QFunction._from_parts(_R.one, _R.one, 1)
        return QValue(self.value, self)


SYMBOLIC = QMode()


class LaurentPoly(Mapping[int, Fraction]):
    """Finite map from exponents of q to nonzero rationals."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            v = _as_fraction(v)
            if v:
                c[int(e)] = v
        self._c = c

    def __getitem__(self, e):
        return self._c[e]

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._c, reverse=True))

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    def evaluate(self, value) -> Fraction:
        value = _as_fraction(value)
        return sum((v * value ** e for e, v in self._c.items()), Fraction(0))

    @property
    def low(self) -> int:
        return min(self._c) if self._c else 0

    def __str__(self):
        return _laurent_str(self._c)

    def __repr__(self):
        return f"LaurentPoly({self})"


def _laurent_str(c: Mapping[int, Fraction]) -> str:
    if not c:
        return "0"
    out = []
    for e in sorted(c, reverse=True):
        v = c[e]
        neg = v < 0
        v = -v if neg else v
        if e == 0:
            body = str(v)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if v == 1 else f"{v}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class FieldElement:
    """Common arithmetic surface of :class:`QFunction` and :class:`QValue`."""

    __slots__ = ()

    mode: QMode

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.mode != self.mode:
                raise ModeMismatch(f"cannot combine {self.mode} and {other.mode} coefficients")
            return other
        if isinstance(other, (int, Fraction)):
            return self.mode.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._add(o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._add(o._neg())

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o._add(self._neg())

    def __neg__(self):
        return self._neg()

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._mul(o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self._mul(o.inverse())

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o._mul(self.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = self.mode.one
        for _ in range(abs(n)):
            result = result._mul(base)
        return result

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, FieldElement) else other
        if o is None:
            return NotImplemented
        if type(o) is not type(self) or o.mode != self.mode:
            return False
        return self._key() == o._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class QFunction(FieldElement):
    """Element of Q(q) in canonical form ``q^shift * num / den``."""

    __slots__ = ("num", "den", "shift", "_hash")

    mode = SYMBOLIC

    @classmethod
    def _from_parts(cls, num, den, shift: int) -> "QFunction":
        self = object.__new__(cls)
        self.num, self.den, self.shift = num, den, shift
        self._hash = None
        return self

    @classmethod
    def _canonical(cls, num, den, shift: int) -> "QFunction":
        if not num:
            return _QF_ZERO
        a = _low(num)
        if a:
            num = _shift_down(num, a)
        b = _low(den)
        if b:
            den = _shift_down(den, b)
        shift += a - b
        if den.degree() > 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = num.exquo(g)
                den = den.exquo(g)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.monic()
        return cls._from_parts(num, den, shift)

    @classmethod
    def from_laurent(cls, num: LaurentPoly, den: LaurentPoly | None = None) -> "QFunction":
        n, sn = _poly_from_laurent(num)
        if den is None:
            d, sd = _R.one, 0
        else:
            if not den:
                raise DivisionByZero("zero denominator")
            d, sd = _poly_from_laurent(den)
        return cls._canonical(n, d, sn - sd)

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.shift == 0 and self.num == 1 and self.den == 1

    @property
    def numerator(self) -> LaurentPoly:
        return LaurentPoly({e + self.shift: c for (e,), c in self.num.items()})

    @property
    def denominator(self) -> LaurentPoly:
        return LaurentPoly({e: c for (e,), c in self.den.items()})

    @property
    def is_laurent(self) -> bool:
        return self.den == 1

    def _key(self):
        return (tuple(sorted(self.num.items())), tuple(sorted(self.den.items())), self.shift)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __eq__(self, other):
        if isinstance(other, QFunction):
            return self.shift == other.shift and self.num == other.num and self.den == other.den
        return FieldElement.__eq__(self, other)

    def _neg(self):
        return QFunction._from_parts(-self.num, self.den, self.shift)

    def _add(self, o: "QFunction"):
        if not o.num:
            return self
        if not self.num:
            return o
        s = min(self.shift, o.shift)
        n1 = _shift_up(self.num, self.shift - s)
        n2 = _shift_up(o.num, o.shift - s)
        if self.den == o.den:
            return QFunction._canonical(n1 + n2, self.den, s)
        return QFunction._canonical(n1 * o.den + n2 * self.den, self.den * o.den, s)

    def _mul(self, o: "QFunction"):
        if not self.num or not o.num:
            return _QF_ZERO
        if self.den == 1 and o.den == 1:
            return QFunction._from_parts(self.num * o.num, _R.one, self.shift + o.shift)
        return QFunction._canonical(self.num * o.num, self.den * o.den, self.shift + o.shift)

    def inverse(self) -> "QFunction":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        lc = self.num.LC
        return QFunction._from_parts(self.den.quo_ground(lc), self.num.monic(), -self.shift)

    def exquo(self, d: "QFunction") -> "QFunction":
        """``self / d``; when both are Laurent polynomials and ``d`` divides
        ``self`` this avoids the gcd of a general quotient."""
        if self.den == 1 and d.den == 1 and d.num:
            try:
                return QFunction._from_parts(self.num.exquo(d.num), _R.one, self.shift - d.shift)
            except ExactQuotientFailed:  # not exact: fall back to the field quotient
                pass
        return self * d.inverse()

    def evaluate(self, value) -> Fraction:
        v = _as_fraction(value)
        d = _eval_poly(self.den, v)
        if d == 0 or (v == 0 and self.shift < 0):
            raise PoleAtQ(f"{self} has a pole at q = {v}")
        return _eval_poly(self.num, v) * v ** self.shift / d

    def specialize(self, value) -> "QValue":
        mode = QMode(value)
        return QValue(self.evaluate(mode.value), mode)

    def __str__(self):
        numer = _laurent_str({e + self.shift: _as_fraction(c) for (e,), c in self.num.items()})
        if self.den == 1:
            return numer
        denom = _laurent_str({e: _as_fraction(c) for (e,), c in self.den.items()})
        if len(self.num) > 1:
            numer = f"({numer})"
        return f"{numer}/({denom})"


class QValue(FieldElement):
    """A rational number in a specialized mode."""

    __slots__ = ("value", "mode")

    def __init__(self, value, mode: QMode):
        self.value = _as_fraction(value)
        self.mode = mode

    @property
    def is_zero(self) -> bool:
        return not self.value

    @property
    def is_one(self) -> bool:
        return self.value == 1

    @property
    def is_laurent(self) -> bool:
        return True

    def _key(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, QValue):
            return self.mode == other.mode and self.value == other.value
        return FieldElement.__eq__(self, other)

    def __hash__(self):
        return hash(self.value)

    def _neg(self):
        return QValue(-self.value, self.mode)

    def _add(self, o):
        return QValue(self.value + o.value, self.mode)

    def _mul(self, o):
        return QValue(self.value * o.value, self.mode)

    def inverse(self) -> "QValue":
        if not self.value:
            raise DivisionByZero("inverse of zero")
        return QValue(1 / self.value, self.mode)

    def evaluate(self, value) -> Fraction:
        return self.value

    def specialize(self, value) -> "QValue":
        if QMode(value) != self.mode:
            raise ModeMismatch(f"element already specialized at q = {self.mode.value}")
        return self

    def __str__(self):
        return str(self.value)


def _low(p) -> int:
    return min(e for (e,) in p.keys())


def _shift_down(p, a: int):
    return _R.from_dict({(e - a,): c for (e,), c in p.items()})


def _shift_up(p, a: int):
    if not a:
        return p
    return _R.from_dict({(e + a,): c for (e,), c in p.items()})


def _poly_from_laurent(lp: LaurentPoly):
    if not lp:
        return _R.zero, 0
    low = lp.low
    return _R.from_dict({(e - low,): QQ(v.numerator, v.denominator) for e, v in lp.items()}), low


def _eval_poly(p, v: Fraction) -> Fraction:
    return sum((_as_fraction(c) * v ** e for (e,), c in p.items()), Fraction(0))


_QF_ZERO = QFunction._from_parts(_R.zero, _R.one, 0)


def content(coeffs) -> QFunction:
    """A common factor ``c`` of nonzero elements of Q(q): every ``a / c`` is a
    Laurent polynomial, and the quotients have no common polynomial factor.
    (gcd of the numerators over lcm of the denominators.)"""
    num = den = None
    shift = None
    for a in coeffs:
        if not a.num:
            continue
        num = a.num if num is None else num.gcd(a.num)
        den = a.den if den is None else den.lcm(a.den)
        shift = a.shift if shift is None else min(shift, a.shift)
    if num is None:
        raise DivisionByZero("content of zero")
    return QFunction._canonical(num.monic(), den.monic(), shift)


# Functional surface

def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_specialize(a: FieldElement, value) -> QValue:
    """Evaluate ``a`` at ``q = value``; IllegalQ for value in {0, 1, -1}, PoleAtQ
    when a denominator vanishes."""
    return a.specialize(value)
