"""Integer and finite-field arithmetic: primality, F_p, and F_{p^2} = F_p[u]/(u^2 - nqr).

Every multiplication in F_p performed through this module (or charged by the
polynomial layer) is recorded in a per-thread counter, see :func:`op_counter`.
"""

from __future__ import annotations

import re
import threading
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterator, Union

import gmpy2

MR_ROUNDS = 40


class _OpTally(threading.local):
    n = 0


_ops = _OpTally()


def charge(k: int) -> None:
    """Add ``k`` F_p multiplications to the current thread's counter."""
    _ops.n += k


def field_ops() -> int:
    """Total F_p multiplications charged on this thread so far."""
    return _ops.n


class OpCount:
    __slots__ = ("start", "count")

    def __init__(self) -> None:
        self.start = _ops.n
        self.count = 0

    @property
    def so_far(self) -> int:
        return _ops.n - self.start


@contextmanager
def op_counter() -> Iterator[OpCount]:
    """Measure the F_p multiplications performed inside a ``with`` block."""
    c = OpCount()
    try:
        yield c
    finally:
        c.count = _ops.n - c.start


class NoSquareRoot(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return bool(gmpy2.is_prime(n, MR_ROUNDS))


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    if n < 2:
        return 2
    if n == 2:
        return 3
    c = n + 1 if n % 2 == 0 else n + 2
    while not is_prime(c):
        c += 2
    return c


def random_prime(bits: int, rng) -> int:
    if bits < 3:
        raise ValueError("need at least 3 bits for a prime p > 3")
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        p = next_prime(n - 1) if is_prime(n) else next_prime(n)
        if p > 3 and p.bit_length() == bits:
            return p


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def find_nqr(p: int) -> int:
    """Smallest quadratic non-residue modulo the odd prime ``p``."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks square root modulo an odd prime."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NoSquareRoot(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        charge(p.bit_length())
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = find_nqr(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    charge(3 * p.bit_length())
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
        charge(m + i + 3)
    return r


# --------------------------------------------------------------------------
# F_p


class PrimeField:
    __slots__ = ("p",)

    def __init__(self, p: int):
        if p <= 3 or not is_prime(p):
            raise ValueError(f"modulus must be a prime > 3, got {p}")
        self.p = p

    def __call__(self, v: int) -> "FpElem":
        return FpElem(self, v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class FpElem:
    __slots__ = ("field", "v")

    def __init__(self, field: PrimeField, v: int):
        self.field = field
        self.v = v % field.p

    def _coerce(self, other) -> int:
        if isinstance(other, FpElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElem(self.field, self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElem(self.field, self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FpElem(self.field, o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        charge(1)
        return FpElem(self.field, self.v * o)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(self.field, -self.v)

    def inverse(self) -> "FpElem":
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        charge(1)
        return FpElem(self.field, pow(self.v, -1, self.field.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * FpElem(self.field, o).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        charge(max(e.bit_length(), 1))
        return FpElem(self.field, pow(self.v, e, self.field.p))

    def sqrt(self) -> "FpElem":
        return FpElem(self.field, sqrt_mod(self.v, self.field.p))

    def is_square(self) -> bool:
        return legendre(self.v, self.field.p) >= 0

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.field == other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __int__(self):
        return self.v

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.field.p}"


# --------------------------------------------------------------------------
# F_{p^2}

_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(\*?\s*u)?\s*")


class Fp2:
    """The field F_{p^2}, realised as F_p[u]/(u^2 - nqr) with the smallest non-residue."""

    __slots__ = ("p", "nqr", "_nonsquare")

    def __init__(self, p: int):
        if p <= 3 or not is_prime(p):
            raise ValueError(f"characteristic must be a prime > 3, got {p}")
        self.p = p
        self.nqr = find_nqr(p)
        self._nonsquare = None

    @staticmethod
    @lru_cache(maxsize=None)
    def of(p: int) -> "Fp2":
        return Fp2(p)

    @property
    def q(self) -> int:
        return self.p * self.p

    def __call__(self, c0: int = 0, c1: int = 0) -> "FqElem":
        p = self.p
        return FqElem(self, c0 % p, c1 % p)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1, 0)

    @property
    def u(self) -> "FqElem":
        return FqElem(self, 0, 1)

    def random(self, rng) -> "FqElem":
        return FqElem(self, rng.randrange(self.p), rng.randrange(self.p))

    def random_nonzero(self, rng) -> "FqElem":
        while True:
            a = self.random(rng)
            if a:
                return a

    def elements(self) -> Iterator["FqElem"]:
        p = self.p
        for c1 in range(p):
            for c0 in range(p):
                yield FqElem(self, c0, c1)

    @property
    def nonsquare(self) -> "FqElem":
        """A fixed non-square of F_{p^2} (first of u, u+1, u+2, ...)."""
        if self._nonsquare is None:
            k = 0
            while FqElem(self, k, 1).is_square():
                k += 1
            self._nonsquare = FqElem(self, k, 1)
        return self._nonsquare

    def parse(self, text: str) -> "FqElem":
        """Parse ``"c0+c1*u"``; also accepts ``"c0"``, ``"c1*u"``, ``"u"`` and signs."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty field element")
        c0 = c1 = 0
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse field element {text!r}")
            sign, digits, has_u = m.groups()
            if not digits and not has_u:
                raise ValueError(f"cannot parse field element {text!r}")
            if digits == "" and has_u and has_u.startswith("*"):
                raise ValueError(f"cannot parse field element {text!r}")
            v = int(digits) if digits else 1
            if sign == "-":
                v = -v
            if has_u:
                c1 += v
            else:
                c0 += v
            pos = m.end()
            if pos < len(s) and s[pos] not in "+-":
                raise ValueError(f"cannot parse field element {text!r}")
        return self(c0, c1)

    def __eq__(self, other):
        return isinstance(other, Fp2) and other.p == self.p and other.nqr == self.nqr

    def __hash__(self):
        return hash(("Fp2", self.p, self.nqr))

    def __repr__(self):
        return f"Fp2({self.p})"

    def __reduce__(self):
        return (Fp2.of, (self.p,))


Scalar = Union["FqElem", int]


class FqElem:
    """c0 + c1*u in F_{p^2}; immutable."""

    __slots__ = ("field", "c0", "c1")

    def __init__(self, field: Fp2, c0: int, c1: int):
        self.field = field
        self.c0 = c0
        self.c1 = c1

    def _pair(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other.c0, other.c1
        if isinstance(other, int):
            return other % self.field.p, 0
        if isinstance(other, FpElem):
            if other.field.p != self.field.p:
                raise ValueError("elements of different fields")
            return other.v, 0
        return None

    def __add__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, (self.c0 + o[0]) % p, (self.c1 + o[1]) % p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, (self.c0 - o[0]) % p, (self.c1 - o[1]) % p)

    def __rsub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElem(self.field, (o[0] - self.c0) % p, (o[1] - self.c1) % p)

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, -self.c0 % p, -self.c1 % p)

    def __mul__(self, other):
        f = self.field
        p = f.p
        a0, a1 = self.c0, self.c1
        if isinstance(other, FqElem):
            b0, b1 = other.c0, other.c1
            if b1 == 0:
                _ops.n += 2
                return FqElem(f, a0 * b0 % p, a1 * b0 % p)
            if a1 == 0:
                _ops.n += 2
                return FqElem(f, a0 * b0 % p, a0 * b1 % p)
            _ops.n += 3
            t0 = a0 * b0
            t1 = a1 * b1
            return FqElem(f, (t0 + f.nqr * t1) % p, ((a0 + a1) * (b0 + b1) - t0 - t1) % p)
        o = self._pair(other)
        if o is None:
            return NotImplemented
        _ops.n += 2
        return FqElem(f, a0 * o[0] % p, a1 * o[0] % p)

    __rmul__ = __mul__

    def square(self) -> "FqElem":
        return self * self

    def norm(self) -> FpElem:
        """a^(p+1) = c0^2 - nqr*c1^2, an element of F_p."""
        p = self.field.p
        charge(2)
        return FpElem(PrimeField._unchecked(p), self.c0 * self.c0 - self.field.nqr * self.c1 * self.c1)

    def _norm_int(self) -> int:
        p = self.field.p
        return (self.c0 * self.c0 - self.field.nqr * self.c1 * self.c1) % p

    def frobenius(self) -> "FqElem":
        """a^p; u^p = -u because nqr^((p-1)/2) = -1."""
        return FqElem(self.field, self.c0, -self.c1 % self.field.p)

    def inverse(self) -> "FqElem":
        if not self:
            raise ZeroDivisionError("inverse of zero in F_{p^2}")
        p = self.field.p
        n = self._norm_int()
        charge(5)
        ninv = pow(n, -1, p)
        return FqElem(self.field, self.c0 * ninv % p, -self.c1 * ninv % p)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return self.field(other) * self.inverse()
        return NotImplemented

    def __pow__(self, e: int) -> "FqElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        for bit in bin(e)[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    def is_square(self) -> bool:
        """True for 0 and for squares; chi_q(a) = chi_p(norm(a))."""
        return legendre(self._norm_int(), self.field.p) >= 0

    def sqrt(self) -> "FqElem":
        """A square root, via the norm map down to F_p.

        Raises NoSquareRoot for the non-squares (half of F_q^*).
        """
        f = self.field
        p, nqr = f.p, f.nqr
        c0, c1 = self.c0, self.c1
        if c0 == 0 and c1 == 0:
            return self
        if c1 == 0:
            if legendre(c0, p) == 1:
                return FqElem(f, sqrt_mod(c0, p), 0)
            # c0/nqr is a residue, and (s*u)^2 = s^2*nqr
            return FqElem(f, 0, sqrt_mod(c0 * pow(nqr, -1, p), p))
        n = self._norm_int()
        if legendre(n, p) != 1:
            raise NoSquareRoot(f"{self} is not a square in F_{p}^2")
        s = sqrt_mod(n, p)
        half = pow(2, -1, p)
        t = (c0 + s) * half % p
        if legendre(t, p) != 1:
            t = (c0 - s) * half % p
        x0 = sqrt_mod(t, p)
        x1 = c1 * pow(2 * x0, -1, p) % p
        charge(4)
        return FqElem(f, x0, x1)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def __bool__(self):
        return self.c0 != 0 or self.c1 != 0

    def in_prime_field(self) -> bool:
        return self.c1 == 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.c0 == other.c0 and self.c1 == other.c1 and self.field == other.field
        if isinstance(other, int):
            return self.c1 == 0 and self.c0 == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.c0, self.c1))

    def sort_key(self):
        return (self.c1, self.c0)

    def __str__(self):
        return f"{self.c0}+{self.c1}*u"

    def __repr__(self):
        return f"FqElem({self.c0}+{self.c1}*u mod {self.field.p})"


def _unchecked_prime_field(p: int) -> PrimeField:
    f = PrimeField.__new__(PrimeField)
    f.p = p
    return f


PrimeField._unchecked = staticmethod(lru_cache(maxsize=None)(_unchecked_prime_field))
