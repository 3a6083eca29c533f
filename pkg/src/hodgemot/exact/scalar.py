"""Exact arithmetic in the biquadratic field Q(i, sqrt(d)).

An element is stored as four rationals ``(a, b, c, e)`` standing for
``a + b*i + c*r + e*i*r`` where ``r = sqrt(d)``.  ``d`` is a square-free
positive integer; ``d == 1`` means the radical is absent and the element
lives in Q(i).

Plain ``int`` and ``Fraction`` values interoperate with :class:`ExactScalar`
everywhere, and most of the library keeps rational data as ``Fraction``
so that the (much slower) four-component arithmetic is only paid where
complex coefficients actually occur.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from ..errors import InvalidInput

__all__ = [
    "ExactScalar",
    "Scalar",
    "I",
    "sqrt_d",
    "as_scalar",
    "conj",
    "components",
    "from_components",
    "is_rational",
    "field_degree",
    "infer_d",
]


@lru_cache(maxsize=None)
def _check_squarefree(d: int) -> int:
    if not isinstance(d, int) or d < 1:
        raise InvalidInput(f"radicand must be a positive integer, got {d!r}")
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            raise InvalidInput(f"radicand {d} is not square-free")
        k += 1
    return d


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidInput(f"exact rationals required, got {type(x).__name__} {x!r}")


_ZERO = Fraction(0)


class ExactScalar:
    """Element ``a + b*i + c*sqrt(d) + e*i*sqrt(d)`` with rational coefficients."""

    __slots__ = ("a", "b", "c", "e", "d")

    def __init__(self, a=0, b=0, c=0, e=0, d: int = 1):
        a, b, c, e = _q(a), _q(b), _q(c), _q(e)
        if d != 1:
            _check_squarefree(d)
        elif c or e:
            # sqrt(1) = 1 folds into the rational part
            a, b, c, e = a + c, b + e, Fraction(0), Fraction(0)
        if not c and not e:
            d = 1
        self.a, self.b, self.c, self.e, self.d = a, b, c, e, d

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, c: Fraction, e: Fraction, d: int) -> "ExactScalar":
        # trusted constructor: Fraction components, d already square-free
        x = object.__new__(cls)
        if d == 1 or (not c and not e):
            if d == 1 and (c or e):
                a, b, c, e = a + c, b + e, Fraction(0), Fraction(0)
            d = 1
        x.a, x.b, x.c, x.e, x.d = a, b, c, e, d
        return x

    # -- coercion helpers -------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return ExactScalar(other)
        return None

    def _joint_d(self, other: "ExactScalar") -> int:
        if self.d == 1:
            return other.d
        if other.d == 1 or other.d == self.d:
            return self.d
        raise InvalidInput(f"cannot combine scalars over sqrt({self.d}) and sqrt({other.d})")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._joint_d(o)
        return ExactScalar._make(self.a + o.a, self.b + o.b, self.c + o.c, self.e + o.e, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._make(-self.a, -self.b, -self.c, -self.e, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._joint_d(o)
        return ExactScalar._make(self.a - o.a, self.b - o.b, self.c - o.c, self.e - o.e, d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if isinstance(other, int):
                other = Fraction(other)
            return ExactScalar._make(self.a * other, self.b * other, self.c * other,
                                     self.e * other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._joint_d(o)
        z = _ZERO
        ra = rb = rc = re = z
        # bilinear expansion over the Q-basis {1, i, r, i r}, skipping zeros
        for x, kx in ((self.a, 0), (self.b, 1), (self.c, 2), (self.e, 3)):
            if not x:
                continue
            for y, ky in ((o.a, 0), (o.b, 1), (o.c, 2), (o.e, 3)):
                if not y:
                    continue
                t = x * y
                k = kx ^ ky
                if kx & 1 and ky & 1:
                    t = -t
                if kx & 2 and ky & 2:
                    t = t * d
                if k == 0:
                    ra += t
                elif k == 1:
                    rb += t
                elif k == 2:
                    rc += t
                else:
                    re += t
        return ExactScalar._make(ra, rb, rc, re, d)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt d)")
        d = self.d
        if d == 1:
            n = self.a * self.a + self.b * self.b
            return ExactScalar(self.a / n, -self.b / n)
        # x * (al - be*r) = al^2 - d*be^2 =: N in Q(i)
        al = ExactScalar(self.a, self.b)
        be = ExactScalar(self.c, self.e)
        nrm = al * al - be * be * d
        n2 = nrm.a * nrm.a + nrm.b * nrm.b
        ninv = ExactScalar(nrm.a / n2, -nrm.b / n2)
        return ExactScalar(self.a, self.b, -self.c, -self.e, d) * ninv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return ExactScalar(self.a / other, self.b / other, self.c / other,
                               self.e / other, self.d)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self) -> "ExactScalar":
        """Complex conjugation: i -> -i, sqrt(d) fixed."""
        return ExactScalar(self.a, -self.b, self.c, -self.e, self.d)

    # -- predicates / comparison ------------------------------------------

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.e)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a == o.a and self.b == o.b and self.c == o.c and self.e == o.e
                and (self.d == o.d or not (self.c or self.e)))

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.e, self.d))

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.e)

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        parts = []
        for coeff, unit in ((self.a, ""), (self.b, "i"), (self.c, f"sqrt({self.d})"),
                            (self.e, f"i*sqrt({self.d})")):
            if not coeff:
                continue
            if unit and coeff == 1:
                parts.append(unit)
            elif unit and coeff == -1:
                parts.append("-" + unit)
            elif unit:
                parts.append(f"{coeff}*{unit}")
            else:
                parts.append(str(coeff))
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


Scalar = Union[int, Fraction, ExactScalar]

I = ExactScalar(0, 1)


def sqrt_d(d: int) -> ExactScalar:
    return ExactScalar(0, 0, 1, 0, d)


def as_scalar(x) -> Scalar:
    """Normalise ``x``: rational values become ``Fraction``."""
    if isinstance(x, ExactScalar):
        return x.a if x.is_rational() else x
    if isinstance(x, Fraction):
        return x
    return _q(x)


def conj(x: Scalar) -> Scalar:
    if isinstance(x, ExactScalar):
        return x.conjugate()
    return x


def components(x: Scalar) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    if isinstance(x, ExactScalar):
        return x.components()
    z = Fraction(0)
    return (Fraction(x), z, z, z)


def from_components(a, b, c, e, d: int = 1) -> Scalar:
    return as_scalar(ExactScalar(a, b, c, e, d))


def is_rational(x: Scalar) -> bool:
    return not isinstance(x, ExactScalar) or x.is_rational()


def infer_d(*collections) -> int:
    """Return the radicand used by any scalar in the (nested) collections."""
    found = 1
    stack = list(collections)
    while stack:
        item = stack.pop()
        if isinstance(item, ExactScalar):
            if item.d != 1:
                if found != 1 and found != item.d:
                    raise InvalidInput(
                        f"mixed radicands sqrt({found}) and sqrt({item.d}) in one computation")
                found = item.d
        elif isinstance(item, (list, tuple)):
            stack.extend(item)
    return found


def field_degree(d: int) -> int:
    """Dimension of Q(i, sqrt d) over Q."""
    return 2 if d == 1 else 4
