"""Exact scalar backends.

Everything structural in this package is checked with exact arithmetic, so
group elements and points carry entries from one of a few field towers:

* ``Fraction``            -- the rationals (stdlib, used as-is)
* ``QSqrt2``              -- a + b*sqrt(2), a,b rational
* ``QSqrt5``              -- a + b*sqrt(5), a,b rational
* ``GaussSqrt5``          -- (a + b*sqrt(5) + (c + d*sqrt(5))i) / den, integers
* ``Quaternion``          -- w + xi + yj + zk over any real backend above

plus plain ``float``/``complex``/float quaternions for the verification-only
float lane. Every scalar type supports ``+ - * /``, ``conjugate()`` and is
hashable, so generic linear algebra can stay backend-agnostic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import BackendMismatchError

Rational = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build a rational from {x!r}")


class QuadExt:
    """a + b*sqrt(D) with rational a, b. Subclasses pin D."""

    D = None  # set by subclass
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, *args):
        raise AttributeError("immutable")

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self)(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return type(self)(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return type(self)(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return type(self)(
            self.a * o.a + self.D * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def inverse(self):
        # (a + b sqrt D)^-1 = (a - b sqrt D) / (a^2 - D b^2); the norm is
        # nonzero for nonzero elements because sqrt(D) is irrational.
        n = self.a * self.a - self.D * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return type(self)(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self):
        return self  # real number: complex conjugation is trivial

    def galois_conjugate(self):
        return type(self)(self.a, -self.b)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_positive(self):
        """Sign of a + b*sqrt(D) as a real number, exactly."""
        a, b = self.a, self.b
        if b == 0:
            return a > 0
        if a == 0:
            return b > 0
        if a > 0 and b > 0:
            return True
        if a < 0 and b < 0:
            return False
        # opposite signs: compare a^2 vs D b^2
        if a > 0:
            return a * a > self.D * b * b
        return a * a < self.D * b * b

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.D, self.a, self.b))

    def __bool__(self):
        return not self.is_zero()

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __repr__(self):
        return f"{type(self).__name__}({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt{self.D}"


class QSqrt2(QuadExt):
    D = 2
    __slots__ = ()


class QSqrt5(QuadExt):
    D = 5
    __slots__ = ()


def _gcd5(*xs):
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g


class GaussSqrt5:
    """(a + b*sqrt(5) + (c + d*sqrt(5)) i) / den with integer entries.

    Canonical form: den > 0 and gcd(a, b, c, d, den) = 1. Products and sums
    of elements with 5-power denominators keep 5-power denominators, which is
    the shape generator words produce; inverses can introduce other
    denominators (the class is the full field Q(sqrt5, i)).
    """

    __slots__ = ("a", "b", "c", "d", "den")

    def __init__(self, a=0, b=0, c=0, d=0, den=1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = _gcd5(a, b, c, d, den)
        if g > 1:
            a, b, c, d, den = a // g, b // g, c // g, d // g, den // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("immutable")

    @classmethod
    def from_rational(cls, q):
        q = _frac(q)
        return cls(q.numerator, 0, 0, 0, q.denominator)

    @classmethod
    def from_parts(cls, re: QSqrt5, im: QSqrt5):
        lcm = 1
        for d in (re.a.denominator, re.b.denominator,
                  im.a.denominator, im.b.denominator):
            lcm = lcm * d // math.gcd(lcm, d)
        return cls(
            int(re.a * lcm), int(re.b * lcm),
            int(im.a * lcm), int(im.b * lcm), lcm,
        )

    def real_part(self) -> QSqrt5:
        return QSqrt5(Fraction(self.a, self.den), Fraction(self.b, self.den))

    def imag_part(self) -> QSqrt5:
        return QSqrt5(Fraction(self.c, self.den), Fraction(self.d, self.den))

    def is_real(self):
        return self.c == 0 and self.d == 0

    def five_power_exponent(self):
        """k with den = 5**k, or None if den is not a power of 5."""
        n, k = self.den, 0
        while n % 5 == 0:
            n //= 5
            k += 1
        return k if n == 1 else None

    def _coerce(self, other):
        if isinstance(other, GaussSqrt5):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussSqrt5.from_rational(other)
        if isinstance(other, QSqrt5):
            return GaussSqrt5.from_parts(other, QSqrt5(0, 0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussSqrt5(
            self.a * o.den + o.a * self.den,
            self.b * o.den + o.b * self.den,
            self.c * o.den + o.c * self.den,
            self.d * o.den + o.d * self.den,
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussSqrt5(-self.a, -self.b, -self.c, -self.d, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return GaussSqrt5(
            a1 * a2 + 5 * b1 * b2 - c1 * c2 - 5 * d1 * d2,
            a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
            a1 * c2 + c1 * a2 + 5 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
            self.den * o.den,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return GaussSqrt5(self.a, self.b, -self.c, -self.d, self.den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        x, y = self.real_part(), self.imag_part()
        n = x * x + y * y  # QSqrt5, nonzero for nonzero self
        ninv = n.inverse()
        return GaussSqrt5.from_parts(x * ninv, -(y * ninv))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.d, self.den) == \
               (o.a, o.b, o.c, o.d, o.den)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d, self.den))

    def __complex__(self):
        r5 = math.sqrt(5)
        return complex(
            (self.a + self.b * r5) / self.den,
            (self.c + self.d * r5) / self.den,
        )

    def __repr__(self):
        return (f"GaussSqrt5({self.a}, {self.b}, {self.c}, {self.d}, "
                f"{self.den})")


class Quaternion:
    """w + x i + y j + z k over a shared real component backend."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w, x, y, z):
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    def __setattr__(self, *args):
        raise AttributeError("immutable")

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            return other
        if isinstance(other, (int, Fraction, float, QuadExt)):
            zero = self.w - self.w
            return Quaternion(zero + other, zero, zero, zero)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x,
                          self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        w1, x1, y1, z1 = self.w, self.x, self.y, self.z
        w2, x2, y2, z2 = o.w, o.x, o.y, o.z
        return Quaternion(
            w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def conjugate(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self):
        return (self.w * self.w + self.x * self.x
                + self.y * self.y + self.z * self.z)

    def inverse(self):
        n = self.norm_sq()
        if not n:
            raise ZeroDivisionError("division by zero")
        if isinstance(n, float):
            inv = 1.0 / n
        elif isinstance(n, Fraction):
            inv = 1 / n
        else:
            inv = n.inverse()
        c = self.conjugate()
        return Quaternion(c.w * inv, c.x * inv, c.y * inv, c.z * inv)

    def __truediv__(self, other):
        # right division: self * other^-1 (matches elimination usage)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def is_zero(self):
        return not (self.w or self.x or self.y or self.z)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.w, self.x, self.y, self.z) == (o.w, o.x, o.y, o.z)

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


class Ring:
    """Handle bundling the identities and converters of one backend."""

    def __init__(self, name, zero, one, exact, from_rational, to_float):
        self.name = name
        self.zero = zero
        self.one = one
        self.exact = exact
        self.from_rational = from_rational
        self.to_float = to_float

    def __repr__(self):
        return f"Ring({self.name})"


def _quat_rational(q):
    q = _frac(q)
    return Quaternion(q, Fraction(0), Fraction(0), Fraction(0))


def _quat_sqrt5(q):
    z = QSqrt5(0, 0)
    return Quaternion(QSqrt5(_frac(q), 0), z, z, z)


def _quat_float(q):
    return Quaternion(float(q), 0.0, 0.0, 0.0)


def _quat_to_float(x):
    return Quaternion(float(x.w), float(x.x), float(x.y), float(x.z))


RING_RATIONAL = Ring("rational", Fraction(0), Fraction(1), True,
                     _frac, float)
RING_QSQRT2 = Ring("qsqrt2", QSqrt2(0), QSqrt2(1), True,
                   lambda q: QSqrt2(_frac(q), 0), float)
RING_QSQRT5 = Ring("qsqrt5", QSqrt5(0), QSqrt5(1), True,
                   lambda q: QSqrt5(_frac(q), 0), float)
RING_GAUSS_SQRT5 = Ring("gauss_sqrt5", GaussSqrt5(), GaussSqrt5(1), True,
                        GaussSqrt5.from_rational, complex)
RING_QUAT_RATIONAL = Ring("quat_rational", _quat_rational(0),
                          _quat_rational(1), True, _quat_rational,
                          _quat_to_float)
RING_QUAT_SQRT5 = Ring("quat_sqrt5", _quat_sqrt5(0), _quat_sqrt5(1), True,
                       _quat_sqrt5, _quat_to_float)
RING_FLOAT = Ring("float", 0.0, 1.0, False, float, float)
RING_COMPLEX = Ring("complex", complex(0), complex(1), False,
                    lambda q: complex(float(q)), complex)
RING_QUAT_FLOAT = Ring("quat_float", _quat_float(0), _quat_float(1), False,
                       _quat_float, lambda x: x)

RINGS = {r.name: r for r in (
    RING_RATIONAL, RING_QSQRT2, RING_QSQRT5, RING_GAUSS_SQRT5,
    RING_QUAT_RATIONAL, RING_QUAT_SQRT5, RING_FLOAT, RING_COMPLEX,
    RING_QUAT_FLOAT,
)}


def ring_of(x) -> Ring:
    if isinstance(x, Fraction):
        return RING_RATIONAL
    if isinstance(x, QSqrt2):
        return RING_QSQRT2
    if isinstance(x, QSqrt5):
        return RING_QSQRT5
    if isinstance(x, GaussSqrt5):
        return RING_GAUSS_SQRT5
    if isinstance(x, Quaternion):
        if isinstance(x.w, float):
            return RING_QUAT_FLOAT
        if isinstance(x.w, QSqrt5):
            return RING_QUAT_SQRT5
        return RING_QUAT_RATIONAL
    if isinstance(x, float):
        return RING_FLOAT
    if isinstance(x, complex):
        return RING_COMPLEX
    raise BackendMismatchError(f"unknown scalar backend for {x!r}")


_FLOAT_LANE = {
    "rational": "float", "qsqrt2": "float", "qsqrt5": "float",
    "gauss_sqrt5": "complex", "quat_rational": "quat_float",
    "quat_sqrt5": "quat_float", "float": "float",
    "complex": "complex", "quat_float": "quat_float",
}


def float_ring_of(ring: Ring) -> Ring:
    """Float lane counterpart of an exact ring."""
    return RINGS[_FLOAT_LANE[ring.name]]


def abs_float(x) -> float:
    """Magnitude of a scalar in any backend, as a float."""
    if isinstance(x, Quaternion):
        return math.sqrt(abs(to_float_scalar(x.norm_sq())))
    if isinstance(x, GaussSqrt5):
        return abs(complex(x))
    return abs(float(x)) if not isinstance(x, complex) else abs(x)


def scalar_to_json(x):
    """Serialize a scalar as exact decimal-string components."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QuadExt):
        return {"a": str(x.a), "b": str(x.b)}
    if isinstance(x, GaussSqrt5):
        return {"a": str(x.a), "b": str(x.b), "c": str(x.c),
                "d": str(x.d), "den": str(x.den)}
    if isinstance(x, Quaternion):
        return {"w": scalar_to_json(x.w), "x": scalar_to_json(x.x),
                "y": scalar_to_json(x.y), "z": scalar_to_json(x.z)}
    if isinstance(x, float):
        return x
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    raise BackendMismatchError(f"cannot serialize {x!r}")


def scalar_from_json(obj, ring: Ring):
    name = ring.name
    if name == "rational":
        return Fraction(obj)
    if name == "qsqrt2":
        return QSqrt2(Fraction(obj["a"]), Fraction(obj["b"]))
    if name == "qsqrt5":
        return QSqrt5(Fraction(obj["a"]), Fraction(obj["b"]))
    if name == "gauss_sqrt5":
        return GaussSqrt5(int(obj["a"]), int(obj["b"]), int(obj["c"]),
                          int(obj["d"]), int(obj["den"]))
    if name in ("quat_rational", "quat_sqrt5", "quat_float"):
        comp = {"quat_rational": RING_RATIONAL,
                "quat_sqrt5": RING_QSQRT5,
                "quat_float": RING_FLOAT}[name]
        return Quaternion(*(scalar_from_json(obj[k], comp)
                            for k in ("w", "x", "y", "z")))
    if name == "float":
        return float(obj)
    if name == "complex":
        return complex(obj["re"], obj["im"])
    raise BackendMismatchError(f"unknown ring {name}")


def to_float_scalar(x):
    """Map any exact scalar into its float-lane counterpart."""
    return ring_of(x).to_float(x)


def scalar_key(x):
    """Ring-independent hashable form of an exact scalar.

    Equal values land on equal keys even when they live in different exact
    backends (a rational inside QSqrt2 versus a bare Fraction, a real
    quaternion versus its real part, and so on).  Used wherever point keys
    built over one ring are looked up against keys built over another.
    """
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, QuadExt):
        if x.b == 0:
            return x.a
        return ("sqrt", x.D, x.a, x.b)
    if isinstance(x, GaussSqrt5):
        a = Fraction(x.a, x.den)
        b = Fraction(x.b, x.den)
        c = Fraction(x.c, x.den)
        d = Fraction(x.d, x.den)
        if c == 0 and d == 0:
            if b == 0:
                return a
            return ("sqrt", 5, a, b)
        return ("gauss5", a, b, c, d)
    if isinstance(x, Quaternion):
        parts = (scalar_key(x.w), scalar_key(x.x),
                 scalar_key(x.y), scalar_key(x.z))
        if parts[1] == 0 and parts[2] == 0 and parts[3] == 0:
            return parts[0]
        return ("quat",) + parts
    raise BackendMismatchError(f"no exact key for {x!r}")
