"""Exact arithmetic over GF(q), polynomials over GF(q) and rational functions in D.

Field elements are encoded as plain integers in ``[0, q)``: residues for GF(p),
bit vectors of polynomial coefficients for GF(2^m).  Multiplication goes
through exp/log tables built once per field and cached.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GF",
    "FieldElement",
    "FieldMismatchError",
    "Polynomial",
    "RationalField",
    "RationalFunction",
    "make_rng",
    "poly_gcd",
    "random_element",
    "spawn",
    "truncated_series_inverse",
]

# Default GF(2^m) moduli (primitive polynomials), bit i = coefficient of x^i.
BINARY_MODULI = {
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10000011,  # x^7 + x + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}

MAX_ORDER = 1 << 16


class FieldMismatchError(ValueError):
    """Operands live in different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _clmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible_binary(modulus: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2 over GF(2)."""
    deg = modulus.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(1 << d):
            if _clmod(modulus, (1 << d) | low) == 0:
                return False
    return True


def _bits_to_coeffs(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


@functools.lru_cache(maxsize=None)
def _tables(p: int, m: int, modulus: int) -> tuple[np.ndarray, np.ndarray, int]:
    """exp/log tables and the generator used to build them.

    ``exp`` has length 2(q-1) so that ``exp[log a + log b]`` needs no reduction.
    ``log[0]`` is unused (set to 0).
    """
    q = p**m
    order = q - 1
    factors = _prime_factors(order) if order > 1 else []
    if m == 1:
        mul = lambda a, b: (a * b) % p  # noqa: E731
    else:
        mul = lambda a, b: _clmod(_clmul(a, b), modulus)  # noqa: E731

    def power(a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    gen = None
    for g in range(1, q):
        if all(power(g, order // f) != 1 for f in factors):
            gen = g
            break
    assert gen is not None
    exp = np.zeros(2 * order if order else 2, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    x = 1
    for i in range(order):
        exp[i] = x
        log[x] = i
        x = mul(x, gen)
    exp[order : 2 * order] = exp[:order]
    exp.setflags(write=False)
    log.setflags(write=False)
    return exp, log, gen


class GF:
    """The finite field GF(p) (prime ``p < 2**16``) or GF(2^m) (``m <= 16``).

    ``modulus`` is the list of coefficients of the defining polynomial, lowest
    degree first; it defaults to a fixed primitive polynomial per ``m``.
    """

    __slots__ = ("p", "m", "q", "modulus", "_mod_int", "exp", "log", "generator")

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be positive")
        if m > 1 and p != 2:
            raise ValueError("only GF(p) and GF(2^m) are supported")
        if p**m > MAX_ORDER:
            raise ValueError(f"field order {p}^{m} exceeds 2^16")
        if m == 1:
            if modulus is not None and tuple(modulus) not in ((0, 1),):
                raise ValueError("prime fields take no modulus")
            mod_int = 0
            coeffs: tuple[int, ...] = (0, 1)
        else:
            if modulus is None:
                mod_int = BINARY_MODULI[m]
            else:
                coeffs = tuple(int(c) for c in modulus)
                if len(coeffs) != m + 1 or coeffs[-1] != 1 or any(c not in (0, 1) for c in coeffs):
                    raise ValueError(f"modulus must be {m + 1} binary coefficients ending in 1")
                mod_int = sum(c << i for i, c in enumerate(coeffs))
            if not is_irreducible_binary(mod_int):
                raise ValueError(f"modulus {mod_int:#x} is reducible over GF(2)")
            coeffs = _bits_to_coeffs(mod_int, m + 1)
        self.p, self.m, self.q = p, m, p**m
        self.modulus = coeffs
        self._mod_int = mod_int
        self.exp, self.log, self.generator = _tables(p, m, mod_int)

    @classmethod
    def from_order(cls, q: int) -> "GF":
        """Field of order ``q`` (a prime or a power of two) with the default modulus."""
        if q >= 2 and q & (q - 1) == 0:
            m = q.bit_length() - 1
            return cls(2, m)
        if is_prime(q):
            return cls(q)
        raise ValueError(f"unsupported field order {q}: need a prime or a power of two")

    # -- identity ---------------------------------------------------------
    def _key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self):
        return hash(("GF",) + self._key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF(2^{self.m})"

    def __getstate__(self):
        return self.to_dict()

    def __setstate__(self, state):
        other = GF.from_dict(state)
        for name in GF.__slots__:
            object.__setattr__(self, name, getattr(other, name))

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_dict(cls, d: dict) -> "GF":
        m = int(d.get("m", 1))
        modulus = d.get("modulus")
        if m == 1:
            modulus = None
        return cls(int(d["p"]), m, modulus)

    # -- scalar arithmetic on integer codes -------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} is not in {self!r}")
            return value
        return FieldElement(self, self.coerce(value))

    def coerce(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} is not in {self!r}")
            return value.value
        v = int(value)
        if self.m == 1:
            return v % self.p
        if not 0 <= v < self.q:
            raise ValueError(f"{v} is not an element code of {self!r}")
        return v

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return (-a) % self.p

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return int(self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    # -- vectorised arithmetic on integer arrays --------------------------
    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return (a + b) % self.p

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a
        return (-a) % self.p

    def vdot(self, a: np.ndarray, b: np.ndarray) -> int:
        prods = self.vmul(a, b)
        if self.p == 2:
            return int(np.bitwise_xor.reduce(prods)) if prods.size else 0
        return int(prods.sum() % self.p)

    def random(self, rng: np.random.Generator, size=None):
        """Uniform integer codes (a scalar int when ``size`` is None)."""
        if size is None:
            return int(rng.integers(0, self.q))
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(self, v) for v in range(self.q))

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (length m, over Z_p) of the element code ``a``."""
        if self.m == 1:
            return (a,)
        return _bits_to_coeffs(a, self.m)

    def format(self, a: int) -> str:
        return str(a)

    def embedding_into(self, big: "GF") -> np.ndarray:
        """Table mapping each element of this field into the larger field ``big``.

        Requires the same characteristic and ``self.m`` dividing ``big.m``; the
        image of x is the smallest root of this field's modulus in ``big``.
        """
        if big.p != self.p or big.m % self.m:
            raise ValueError(f"{self!r} does not embed in {big!r}")
        if big == self:
            return np.arange(self.q, dtype=np.int64)
        if self.m == 1:
            return np.arange(self.q, dtype=np.int64)
        elems = np.arange(big.q, dtype=np.int64)
        acc = np.zeros(big.q, dtype=np.int64)
        # Horner evaluation of the modulus at every element of big.
        for c in reversed(self.modulus):
            acc = big.vadd(big.vmul(acc, elems), np.full(big.q, c, dtype=np.int64))
        roots = np.nonzero(acc == 0)[0]
        r = int(roots[0])
        powers = [1]
        for _ in range(self.m - 1):
            powers.append(big.mul(powers[-1], r))
        table = np.zeros(self.q, dtype=np.int64)
        for a in range(self.q):
            v = 0
            for i, bit in enumerate(_bits_to_coeffs(a, self.m)):
                if bit:
                    v ^= powers[i]
            table[a] = v
        table.setflags(write=False)
        return table


class FieldElement:
    """An immutable element of a :class:`GF`."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", int(value))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.coerce(other)
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, int(e)))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            try:
                return self.value == self.field.coerce(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.value})"

    def __str__(self):
        return str(self.value)


def random_element(field: GF, rng: np.random.Generator) -> FieldElement:
    return FieldElement(field, field.random(rng))


def make_rng(seed: int | None | np.random.SeedSequence = None) -> np.random.Generator:
    """Counter-based (Philox) generator; ``spawn`` it for independent streams."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(seed))


def spawn(rng: np.random.Generator, n: int) -> list[np.random.Generator]:
    return rng.spawn(n)


# ---------------------------------------------------------------------------
# Polynomials in D over GF(q)
# ---------------------------------------------------------------------------


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Univariate polynomial in D over a :class:`GF`, lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable = ()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", _strip([field.coerce(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, field: GF, coeffs: Sequence[int]) -> "Polynomial":
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", _strip(coeffs))
        return obj

    @classmethod
    def constant(cls, field: GF, c) -> "Polynomial":
        return cls._raw(field, (field.coerce(c),))

    @classmethod
    def monomial(cls, field: GF, degree: int, coeff=1) -> "Polynomial":
        return cls._raw(field, (0,) * degree + (field.coerce(coeff),))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (FieldElement, int, np.integer)):
            return Polynomial.constant(self.field, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        f = self.field
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return Polynomial._raw(
            f, [f.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Polynomial._raw(f, [f.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial._raw(self.field, ())
        f = self.field
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = f.add(out[i + j], f.mul(x, y))
        return Polynomial._raw(f, out)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        f = self.field
        return Polynomial._raw(f, [f.mul(c, x) for x in self.coeffs])

    def shift(self, k: int) -> "Polynomial":
        """Multiply by D^k."""
        if not self.coeffs:
            return self
        return Polynomial._raw(self.field, (0,) * k + self.coeffs)

    def truncate(self, order: int) -> "Polynomial":
        """Reduce modulo D^order."""
        return Polynomial._raw(self.field, self.coeffs[:order])

    def __divmod__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = o.degree
        inv_lead = f.inv(o.lead)
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            t = f.mul(c, inv_lead)
            quot[k - db] = t
            for j, y in enumerate(o.coeffs):
                rem[k - db + j] = f.sub(rem[k - db + j], f.mul(t, y))
        return Polynomial._raw(f, quot), Polynomial._raw(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def __call__(self, x):
        """Evaluate at ``x`` (an int code or FieldElement); returns a FieldElement."""
        f = self.field
        xv = f.coerce(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, xv), c)
        return FieldElement(f, acc)

    def evaluate_codes(self, xs: np.ndarray) -> np.ndarray:
        """Vectorised evaluation at an array of element codes."""
        f = self.field
        acc = np.zeros(np.shape(xs), dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = f.vadd(f.vmul(acc, xs), np.full(np.shape(xs), c, dtype=np.int64))
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (FieldElement, int, np.integer)):
            return self == self._check(other)
        return NotImplemented

    def __hash__(self):
        return hash(("poly", self.field, self.coeffs))

    def __repr__(self):
        return f"Polynomial({self.field!r}, {list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = "D" if k == 1 else f"D^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def truncated_series_inverse(p: Polynomial, order: int) -> Polynomial:
    """Power-series inverse of ``p`` modulo D^order.

    Raises ZeroDivisionError when the constant term is zero.
    """
    f = p.field
    c0 = p.coeff(0)
    if c0 == 0:
        raise ZeroDivisionError("zero constant term: not invertible as a power series")
    inv0 = f.inv(c0)
    out = [0] * order
    for k in range(order):
        acc = 1 if k == 0 else 0
        for i in range(1, min(k, p.degree) + 1):
            acc = f.sub(acc, f.mul(p.coeffs[i], out[k - i]))
        out[k] = f.mul(acc, inv0)
    return Polynomial._raw(f, out)


# ---------------------------------------------------------------------------
# Rational functions GF(q)(D)
# ---------------------------------------------------------------------------


class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(num.field, 1)
        if num.field != den.field:
            raise FieldMismatchError("numerator and denominator fields differ")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = num, Polynomial.constant(num.field, 1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.lead
            if lead != 1:
                inv = num.field.inv(lead)
                num, den = num.scale(inv), den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def field(self) -> GF:
        return self.num.field

    def _check(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (FieldElement, int, np.integer)):
            return RationalFunction(Polynomial.constant(self.field, other))
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalFunction(Polynomial._raw(self.field, ()))
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __pow__(self, e: int) -> "RationalFunction":
        base = self if e >= 0 else self.inverse()
        out = RationalFunction(Polynomial.constant(self.field, 1))
        for _ in range(abs(int(e))):
            out = out * base
        return out

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        o = self._check(other)
        if o is NotImplemented:
            return NotImplemented
        return self == o

    def __hash__(self):
        return hash(("ratfn", self.num, self.den))

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, x) -> FieldElement:
        d = self.den(x)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at D={x}")
        return self.num(x) / d

    def series(self, order: int) -> Polynomial:
        """Power-series expansion modulo D^order."""
        return (self.num * truncated_series_inverse(self.den, order)).truncate(order)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        return f"({self.num})/({self.den})"


class RationalField:
    """The field GF(q)(D) of rational functions over ``base``."""

    __slots__ = ("base",)

    def __init__(self, base: GF):
        self.base = base

    def __eq__(self, other):
        return isinstance(other, RationalField) and other.base == self.base

    def __hash__(self):
        return hash(("RationalField", self.base))

    def __repr__(self):
        return f"{self.base!r}(D)"

    @property
    def zero(self) -> RationalFunction:
        return RationalFunction(Polynomial(self.base))

    @property
    def one(self) -> RationalFunction:
        return RationalFunction(Polynomial.constant(self.base, 1))

    @property
    def D(self) -> RationalFunction:
        return RationalFunction(Polynomial.monomial(self.base, 1))

    def __call__(self, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            if value.field != self.base:
                raise FieldMismatchError(f"{value!r} is not over {self.base!r}")
            return value
        if isinstance(value, Polynomial):
            return RationalFunction(value)
        return RationalFunction(Polynomial.constant(self.base, value))


def all_monic(field: GF, degree: int) -> Iterable[Polynomial]:
    """Every monic polynomial of the given degree (small fields only)."""
    for low in itertools.product(range(field.q), repeat=degree):
        yield Polynomial._raw(field, low + (1,))
