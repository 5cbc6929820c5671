"""Dense univariate polynomials over F_{p^2}.

Coefficients are kept as two parallel lists of reduced integers ``c0`` and
``c1`` (the coordinates of each coefficient on the basis 1, u).  Large
products go through a single big-integer multiplication (Kronecker
substitution) handled by GMP; small ones use the schoolbook method.

Field-operation accounting charges every polynomial product by a size-only
cost model: ``min(3*m*n, 3*L*ceil(log2 L))`` F_p multiplications for an
``m`` by ``n`` product with ``L = m + n - 1``, i.e. the cheaper of the
Karatsuba-on-F_p^2 schoolbook count and a quasi-linear multiplier.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import gmpy2

from .arith import FpElem, Fp2, FqElem, charge, is_prime

Coeffs = Tuple[List[int], List[int]]

SCHOOLBOOK_CUTOFF = 3
BARRETT_CUTOFF = 8


def _trim(c0: List[int], c1: List[int]) -> Coeffs:
    n = len(c0)
    while n and c0[n - 1] == 0 and c1[n - 1] == 0:
        n -= 1
    if n != len(c0):
        return c0[:n], c1[:n]
    return c0, c1


def mul_cost(m: int, n: int) -> int:
    """F_p multiplications charged for an m-by-n coefficient product."""
    if m == 0 or n == 0:
        return 0
    L = m + n - 1
    return min(3 * m * n, 3 * L * max(1, (L - 1).bit_length()))


def _mul_school(p: int, nqr: int, a0, a1, b0, b1) -> Coeffs:
    la, lb = len(a0), len(b0)
    L = la + lb - 1
    s0 = [0] * L
    s1 = [0] * L
    s2 = [0] * L
    for i in range(la):
        x0 = a0[i]
        x1 = a1[i]
        if x0:
            for j in range(lb):
                s0[i + j] += x0 * b0[j]
                s1[i + j] += x0 * b1[j]
        if x1:
            for j in range(lb):
                s1[i + j] += x1 * b0[j]
                s2[i + j] += x1 * b1[j]
    return [(x + nqr * z) % p for x, z in zip(s0, s2)], [y % p for y in s1]


def _interleave(a0: Sequence[int], a1: Sequence[int]) -> List[int]:
    out = [0] * (3 * len(a0))
    out[0::3] = a0
    out[1::3] = a1
    return out


def _mul_kron(p: int, nqr: int, a0, a1, b0, b1) -> Coeffs:
    # A(y) = sum a0_i y^{3i} + a1_i y^{3i+1}; exponents of the product split
    # by residue mod 3 into a0*b0, the cross term, and a1*b1.
    la, lb = len(a0), len(b0)
    w = 2 * p.bit_length() + (2 * min(la, lb)).bit_length() + 1
    A = gmpy2.pack(_interleave(a0, a1), w)
    if a0 is b0 and a1 is b1:
        C = gmpy2.square(A)
    else:
        C = A * gmpy2.pack(_interleave(b0, b1), w)
    L = la + lb - 1
    vals = gmpy2.unpack(C, w)
    n = 3 * L
    if len(vals) < n:
        vals.extend([0] * (n - len(vals)))
    s0 = vals[0:n:3]
    s1 = vals[1:n:3]
    s2 = vals[2:n:3]
    return [int((x + nqr * z) % p) for x, z in zip(s0, s2)], [int(y % p) for y in s1]


def _mul_raw(field: Fp2, a0, a1, b0, b1) -> Coeffs:
    la, lb = len(a0), len(b0)
    if la == 0 or lb == 0:
        return [], []
    charge(mul_cost(la, lb))
    if min(la, lb) <= SCHOOLBOOK_CUTOFF:
        return _mul_school(field.p, field.nqr, a0, a1, b0, b1)
    return _mul_kron(field.p, field.nqr, a0, a1, b0, b1)


class Poly:
    """Immutable polynomial; ``degree`` of the zero polynomial is -1."""

    __slots__ = ("field", "c0", "c1")

    def __init__(self, field: Fp2, c0: List[int], c1: List[int]):
        # Trusts that values are already reduced mod p.
        self.field = field
        self.c0, self.c1 = _trim(c0, c1)

    # ---- constructors -------------------------------------------------
    @classmethod
    def from_coeffs(cls, field: Fp2, coeffs: Iterable) -> "Poly":
        """Build from low-to-high coefficients given as FqElem, FpElem or int."""
        p = field.p
        c0: List[int] = []
        c1: List[int] = []
        for c in coeffs:
            if isinstance(c, FqElem):
                c0.append(c.c0)
                c1.append(c.c1)
            elif isinstance(c, FpElem):
                c0.append(c.v % p)
                c1.append(0)
            else:
                c0.append(int(c) % p)
                c1.append(0)
        return cls(field, c0, c1)

    @classmethod
    def zero(cls, field: Fp2) -> "Poly":
        return cls(field, [], [])

    @classmethod
    def const(cls, field: Fp2, c) -> "Poly":
        return cls.from_coeffs(field, [c])

    @classmethod
    def x(cls, field: Fp2) -> "Poly":
        return cls(field, [0, 1], [0, 0])

    @classmethod
    def monomial(cls, field: Fp2, k: int, c=1) -> "Poly":
        return cls.from_coeffs(field, [0] * k + [c])

    # ---- inspection ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c0) - 1

    def __len__(self):
        return len(self.c0)

    def coeff(self, i: int) -> FqElem:
        if 0 <= i < len(self.c0):
            return FqElem(self.field, self.c0[i], self.c1[i])
        return self.field.zero

    def coeffs(self) -> List[FqElem]:
        f = self.field
        return [FqElem(f, a, b) for a, b in zip(self.c0, self.c1)]

    @property
    def lc(self) -> FqElem:
        if not self.c0:
            return self.field.zero
        return FqElem(self.field, self.c0[-1], self.c1[-1])

    def is_zero(self) -> bool:
        return not self.c0

    def __bool__(self):
        return bool(self.c0)

    def is_constant(self) -> bool:
        return len(self.c0) <= 1

    def is_monic(self) -> bool:
        return bool(self.c0) and self.c0[-1] == 1 and self.c1[-1] == 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c0 == other.c0 and self.c1 == other.c1 and self.field == other.field
        if isinstance(other, (int, FqElem)):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((tuple(self.c0), tuple(self.c1)))

    # ---- arithmetic ---------------------------------------------------
    def _lift(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, FqElem, FpElem)):
            return Poly.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly(self.field, *_add(self.field.p, self.c0, self.c1, o.c0, o.c1))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly(self.field, *_sub(self.field.p, self.c0, self.c1, o.c0, o.c1))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.field.p
        return Poly(self.field, [-x % p for x in self.c0], [-x % p for x in self.c1])

    def __mul__(self, other):
        if isinstance(other, (int, FqElem, FpElem)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly(self.field, *_mul_raw(self.field, self.c0, self.c1, other.c0, other.c1))

    def __rmul__(self, other):
        if isinstance(other, (int, FqElem, FpElem)):
            return self.scale(other)
        return NotImplemented

    def square(self) -> "Poly":
        return Poly(self.field, *_mul_raw(self.field, self.c0, self.c1, self.c0, self.c1))

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.field, 1)
        for bit in bin(e)[2:]:
            result = result.square()
            if bit == "1":
                result = result * self
        return result

    def scale(self, c) -> "Poly":
        f = self.field
        if isinstance(c, FqElem):
            s0, s1 = c.c0, c.c1
        elif isinstance(c, FpElem):
            s0, s1 = c.v, 0
        else:
            s0, s1 = int(c) % f.p, 0
        return Poly(f, *_scale(f, self.c0, self.c1, s0, s1))

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self.c0 or k == 0:
            return self
        return Poly(self.field, [0] * k + self.c0, [0] * k + self.c1)

    def monic(self) -> "Poly":
        if not self.c0:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        if self.is_monic():
            return self
        return self.scale(self.lc.inverse())

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            return NotImplemented
        if not other.c0:
            raise ZeroDivisionError("polynomial division by zero")
        q, r = _divmod(self.field, self.c0, self.c1, other.c0, other.c1)
        return Poly(self.field, *q), Poly(self.field, *r)

    def __mod__(self, other: "Poly") -> "Poly":
        if isinstance(other, Modulus):
            return other.reduce(self)
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __call__(self, x0) -> FqElem:
        return self.eval(x0)

    def eval(self, x0) -> FqElem:
        """Horner evaluation at ``x0`` in F_{p^2}."""
        f = self.field
        if not isinstance(x0, FqElem):
            x0 = f(int(x0))
        p, nqr = f.p, f.nqr
        u0, u1 = x0.c0, x0.c1
        r0 = r1 = 0
        for a, b in zip(reversed(self.c0), reversed(self.c1)):
            if u1:
                r0, r1 = (r0 * u0 + nqr * r1 * u1 + a) % p, (r0 * u1 + r1 * u0 + b) % p
            else:
                r0, r1 = (r0 * u0 + a) % p, (r1 * u0 + b) % p
        charge(3 * len(self.c0))
        return FqElem(f, r0, r1)

    def derivative(self) -> "Poly":
        p = self.field.p
        return Poly(
            self.field,
            [i * c % p for i, c in enumerate(self.c0)][1:],
            [i * c % p for i, c in enumerate(self.c1)][1:],
        )

    def truncate(self, k: int) -> "Poly":
        """Reduce modulo x^k."""
        return Poly(self.field, self.c0[:k], self.c1[:k])

    # ---- text ---------------------------------------------------------
    def __str__(self):
        if not self.c0:
            return "0"
        terms = []
        for i in range(len(self.c0) - 1, -1, -1):
            a, b = self.c0[i], self.c1[i]
            if a == 0 and b == 0:
                continue
            c = str(a) if b == 0 else f"({a}+{b}*u)"
            if i == 0:
                terms.append(c)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if (a == 1 and b == 0) else f"{c}*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly[{self.field.p}]({self})"

    @classmethod
    def parse(cls, field: Fp2, text: str) -> "Poly":
        """Inverse of ``str``: terms like ``c*x^k``, ``(c0+c1*u)*x``, ``x^3``, ``7``."""
        s = text.strip()
        if s == "0":
            return cls.zero(field)
        if not s:
            raise ValueError("empty polynomial")
        acc: dict = {}
        for raw in _split_terms(s):
            term = raw.strip()
            neg = False
            if term.startswith("-"):
                neg, term = True, term[1:].strip()
            m = _POLY_TERM.fullmatch(term)
            if not m:
                raise ValueError(f"cannot parse polynomial term {raw!r}")
            coef_txt, mono, exp = m.group("coef"), m.group("x"), m.group("exp")
            if coef_txt is None and mono is None:
                raise ValueError(f"cannot parse polynomial term {raw!r}")
            if coef_txt is None:
                c = field.one
            else:
                coef_txt = coef_txt.strip()
                if coef_txt.startswith("("):
                    coef_txt = coef_txt[1:-1]
                c = field.parse(coef_txt)
            k = 0 if mono is None else (int(exp) if exp is not None else 1)
            if neg:
                c = -c
            acc[k] = acc.get(k, field.zero) + c
        top = max(acc)
        return cls.from_coeffs(field, [acc.get(i, field.zero) for i in range(top + 1)])

    def __reduce__(self):
        return (Poly, (self.field, self.c0, self.c1))


_POLY_TERM = re.compile(
    r"(?:(?P<coef>\([^()]*\)|[0-9]+(?:\*?u)?|u)\s*\*?\s*)?(?P<x>x(?:\s*\^\s*(?P<exp>[0-9]+))?)?"
)


def _split_terms(s: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip():
            out.append(cur)
            cur = "-" if ch == "-" else ""
            continue
        cur += ch
    out.append(cur)
    return [t for t in out if t.strip()]


# --------------------------------------------------------------------------
# raw list kernels


def _add(p, a0, a1, b0, b1) -> Coeffs:
    if len(a0) < len(b0):
        a0, a1, b0, b1 = b0, b1, a0, a1
    n = len(b0)
    c0 = [(x + y) % p for x, y in zip(a0, b0)] + a0[n:]
    c1 = [(x + y) % p for x, y in zip(a1, b1)] + a1[n:]
    return c0, c1


def _sub(p, a0, a1, b0, b1) -> Coeffs:
    la, lb = len(a0), len(b0)
    if la >= lb:
        c0 = [(x - y) % p for x, y in zip(a0, b0)] + a0[lb:]
        c1 = [(x - y) % p for x, y in zip(a1, b1)] + a1[lb:]
    else:
        c0 = [(x - y) % p for x, y in zip(a0, b0)] + [-y % p for y in b0[la:]]
        c1 = [(x - y) % p for x, y in zip(a1, b1)] + [-y % p for y in b1[la:]]
    return c0, c1


def _scale(field: Fp2, a0, a1, s0: int, s1: int) -> Coeffs:
    p, nqr = field.p, field.nqr
    if s1 == 0:
        charge(2 * len(a0))
        return [x * s0 % p for x in a0], [y * s0 % p for y in a1]
    charge(3 * len(a0))
    return (
        [(x * s0 + nqr * y * s1) % p for x, y in zip(a0, a1)],
        [(x * s1 + y * s0) % p for x, y in zip(a0, a1)],
    )


def _inv_pair(field: Fp2, c0: int, c1: int) -> Tuple[int, int]:
    e = FqElem(field, c0, c1).inverse()
    return e.c0, e.c1


def _divmod_school(field: Fp2, a0, a1, b0, b1) -> Tuple[Coeffs, Coeffs]:
    p, nqr = field.p, field.nqr
    n = len(b0)
    r0, r1 = list(a0), list(a1)
    if len(r0) < n:
        return ([], []), (r0, r1)
    i0, i1 = _inv_pair(field, b0[-1], b1[-1])
    monic = i0 == 1 and i1 == 0
    qlen = len(r0) - n + 1
    q0 = [0] * qlen
    q1 = [0] * qlen
    bl0, bl1 = b0[:-1], b1[:-1]
    has_u = any(bl1)
    for k in range(qlen - 1, -1, -1):
        t0, t1 = r0[k + n - 1], r1[k + n - 1]
        if t0 == 0 and t1 == 0:
            continue
        if not monic:
            t0, t1 = (t0 * i0 + nqr * t1 * i1) % p, (t0 * i1 + t1 * i0) % p
        q0[k], q1[k] = t0, t1
        if has_u:
            for j in range(n - 1):
                x, y = bl0[j], bl1[j]
                r0[k + j] = (r0[k + j] - t0 * x - nqr * t1 * y) % p
                r1[k + j] = (r1[k + j] - t0 * y - t1 * x) % p
        else:
            for j in range(n - 1):
                x = bl0[j]
                r0[k + j] = (r0[k + j] - t0 * x) % p
                r1[k + j] = (r1[k + j] - t1 * x) % p
    charge(3 * qlen * n)
    return _trim(q0, q1), _trim(r0[: n - 1], r1[: n - 1])


def _divmod(field: Fp2, a0, a1, b0, b1) -> Tuple[Coeffs, Coeffs]:
    n = len(b0)
    if len(a0) < n:
        return ([], []), _trim(list(a0), list(a1))
    if n <= BARRETT_CUTOFF or len(a0) - n + 1 <= 8:
        return _divmod_school(field, a0, a1, b0, b1)
    m = Modulus(Poly(field, list(b0), list(b1)).monic())
    q, r = m.divmod_raw(a0, a1)
    if not (b0[-1] == 1 and b1[-1] == 0):
        # quotient by the non-monic divisor: q_monic / lc
        i0, i1 = _inv_pair(field, b0[-1], b1[-1])
        q = _scale(field, q[0], q[1], i0, i1)
    return q, r


# --------------------------------------------------------------------------
# moduli


class Modulus:
    """A monic modulus with a precomputed reduction strategy.

    ``kind`` is ``"cyclic"`` for x^n - 1, ``"allones"`` for 1 + x + ... + x^n,
    ``"school"`` for small degree, and ``"barrett"`` otherwise.
    """

    __slots__ = ("poly", "field", "n", "kind", "_inv", "_parent")

    def __init__(self, g: Poly):
        if g.degree < 1:
            raise ValueError("modulus must have degree at least 1")
        if not g.is_monic():
            g = g.monic()
        self.poly = g
        self.field = g.field
        self.n = g.degree
        self._inv: Optional[Coeffs] = None
        self._parent: Optional["Modulus"] = None
        p = self.field.p
        c0, c1 = g.c0, g.c1
        n = self.n
        if not any(c1):
            if c0[0] == p - 1 and not any(c0[1:n]):
                self.kind = "cyclic"
                return
            if all(c == 1 for c in c0):
                self.kind = "allones"
                self._parent = Modulus(Poly(self.field, [p - 1] + [0] * n + [1], [0] * (n + 2)))
                return
        self.kind = "school" if n <= BARRETT_CUTOFF else "barrett"

    @classmethod
    def cyclic(cls, field: Fp2, n: int) -> "Modulus":
        p = field.p
        return cls(Poly(field, [p - 1] + [0] * (n - 1) + [1], [0] * (n + 1)))

    def __eq__(self, other):
        return isinstance(other, Modulus) and other.poly == self.poly

    def __hash__(self):
        return hash(self.poly)

    def _series_inverse(self, k: int) -> Coeffs:
        """Power-series inverse of the reversed modulus, to precision k."""
        f = self.field
        p = f.p
        if self._inv is not None and len(self._inv[0]) >= k:
            return self._inv[0][:k], self._inv[1][:k]
        h0 = list(reversed(self.poly.c0))
        h1 = list(reversed(self.poly.c1))
        i0, i1 = [1], [0]
        prec = 1
        while prec < k:
            prec = min(2 * prec, k)
            e0, e1 = _mul_raw(f, h0[:prec], h1[:prec], i0, i1)
            e0, e1 = e0[:prec], e1[:prec]
            # 2 - h*I
            e0 = [-x % p for x in e0]
            e1 = [-x % p for x in e1]
            e0[0] = (e0[0] + 2) % p
            i0, i1 = _mul_raw(f, i0, i1, e0, e1)
            i0, i1 = i0[:prec], i1[:prec]
        i0 += [0] * (k - len(i0))
        i1 += [0] * (k - len(i1))
        self._inv = (i0, i1)
        return i0, i1

    def divmod_raw(self, a0, a1) -> Tuple[Coeffs, Coeffs]:
        n = self.n
        la = len(a0)
        if la <= n:
            return ([], []), _trim(list(a0), list(a1))
        if self.kind != "barrett":
            return _divmod_school(self.field, a0, a1, self.poly.c0, self.poly.c1)
        f = self.field
        qlen = la - n
        v0, v1 = self._series_inverse(qlen)
        ra0 = a0[::-1][:qlen]
        ra1 = a1[::-1][:qlen]
        t0, t1 = _mul_raw(f, ra0, ra1, v0, v1)
        q0 = t0[:qlen][::-1]
        q1 = t1[:qlen][::-1]
        # remainder from the low n coefficients only
        qg0, qg1 = _mul_raw(f, q0[:n], q1[:n], self.poly.c0, self.poly.c1)
        r0, r1 = _sub(f.p, a0[:n], a1[:n], qg0[:n], qg1[:n])
        return _trim(q0, q1), _trim(r0, r1)

    def reduce_raw(self, a0, a1) -> Coeffs:
        n = self.n
        if len(a0) <= n:
            return _trim(list(a0), list(a1))
        p = self.field.p
        if self.kind == "cyclic":
            r0 = list(a0[:n])
            r1 = list(a1[:n])
            for start in range(n, len(a0), n):
                chunk0 = a0[start : start + n]
                chunk1 = a1[start : start + n]
                for i in range(len(chunk0)):
                    r0[i] += chunk0[i]
                    r1[i] += chunk1[i]
            return _trim([x % p for x in r0], [x % p for x in r1])
        if self.kind == "allones":
            r0, r1 = self._parent.reduce_raw(a0, a1)
            if len(r0) == n + 1:
                t0, t1 = r0[n], r1[n]
                r0 = [(x - t0) % p for x in r0[:n]]
                r1 = [(x - t1) % p for x in r1[:n]]
            return _trim(r0, r1)
        if self.kind == "school":
            return _divmod_school(self.field, a0, a1, self.poly.c0, self.poly.c1)[1]
        return self.divmod_raw(a0, a1)[1]

    def reduce(self, a: Poly) -> Poly:
        return Poly(a.field, *self.reduce_raw(a.c0, a.c1))

    def mul(self, a: Poly, b: Poly) -> Poly:
        f = self.field
        return Poly(f, *self.reduce_raw(*_mul_raw(f, a.c0, a.c1, b.c0, b.c1)))

    def sqr(self, a: Poly) -> Poly:
        f = self.field
        return Poly(f, *self.reduce_raw(*_mul_raw(f, a.c0, a.c1, a.c0, a.c1)))

    def mulx(self, a: Poly) -> Poly:
        return Poly(self.field, *self.reduce_raw([0] + a.c0, [0] + a.c1))


def as_modulus(m) -> Modulus:
    return m if isinstance(m, Modulus) else Modulus(m)


# --------------------------------------------------------------------------
# functional interface


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_rem(a: Poly, m: Poly) -> Poly:
    return a % m


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    f = a.field
    r0 = (a.c0, a.c1)
    r1 = (b.c0, b.c1)
    while r1[0]:
        r0, r1 = r1, _divmod(f, r0[0], r0[1], r1[0], r1[1])[1]
    g = Poly(f, list(r0[0]), list(r0[1]))
    return g.monic() if g else g


def poly_xgcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(f, 1), Poly.zero(f)
    t0, t1 = Poly.zero(f), Poly.const(f, 1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = r0.lc.inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def powmod(base: Poly, e: int, m) -> Poly:
    """base^e mod m by left-to-right square-and-multiply."""
    mod = as_modulus(m)
    if e < 0:
        raise ValueError("negative exponent")
    f = mod.field
    result = Poly.const(f, 1)
    if mod.n == 0:
        return Poly.zero(f)
    if e == 0:
        return mod.reduce(result)
    b = mod.reduce(base)
    is_x = b.c0 == [0, 1] and b.c1 == [0, 0]
    for bit in bin(e)[2:]:
        result = mod.sqr(result)
        if bit == "1":
            result = mod.mulx(result) if is_x else mod.mul(result, b)
    return result


def compose_mod(a: Poly, h: Poly, m) -> Poly:
    """a(h) mod m by Horner's rule."""
    mod = as_modulus(m)
    acc = Poly.zero(a.field)
    for c in reversed(a.coeffs()):
        acc = mod.mul(acc, h) + c if acc else Poly.const(a.field, c)
    return mod.reduce(acc)


# --------------------------------------------------------------------------
# quotient rings


class QuotientRing:
    """F_{p^2}[x]/(g) for a monic g."""

    def __init__(self, g: Poly):
        self.mod = as_modulus(g)
        self.g = self.mod.poly
        self.field = self.g.field

    def __call__(self, a) -> "QuotElem":
        if not isinstance(a, Poly):
            a = Poly.const(self.field, a)
        return QuotElem(self, self.mod.reduce(a))

    @property
    def x(self) -> "QuotElem":
        return self(Poly.x(self.field))

    @property
    def one(self) -> "QuotElem":
        return self(1)

    def random(self, rng) -> "QuotElem":
        f = self.field
        n = self.g.degree
        p = f.p
        return QuotElem(self, Poly(f, [rng.randrange(p) for _ in range(n)], [rng.randrange(p) for _ in range(n)]))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.g == other.g

    def __hash__(self):
        return hash(self.g)


class QuotElem:
    __slots__ = ("ring", "rep")

    def __init__(self, ring: QuotientRing, rep: Poly):
        self.ring = ring
        self.rep = rep

    def _other(self, o) -> Poly:
        if isinstance(o, QuotElem):
            if o.ring != self.ring:
                raise ValueError("elements of different quotient rings")
            return o.rep
        return self.ring(o).rep

    def __add__(self, o):
        return QuotElem(self.ring, self.rep + self._other(o))

    __radd__ = __add__

    def __sub__(self, o):
        return QuotElem(self.ring, self.rep - self._other(o))

    def __rsub__(self, o):
        return QuotElem(self.ring, self._other(o) - self.rep)

    def __neg__(self):
        return QuotElem(self.ring, -self.rep)

    def __mul__(self, o):
        if o is self:
            return QuotElem(self.ring, self.ring.mod.sqr(self.rep))
        return QuotElem(self.ring, self.ring.mod.mul(self.rep, self._other(o)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QuotElem(self.ring, powmod(self.rep, e, self.ring.mod))

    def inverse(self) -> "QuotElem":
        g, s, _ = poly_xgcd(self.rep, self.ring.g)
        if g.degree != 0:
            raise ZeroDivisionError("element is not invertible modulo g")
        return QuotElem(self.ring, self.ring.mod.reduce(s))

    def __truediv__(self, o):
        other = o if isinstance(o, QuotElem) else self.ring(o)
        return self * other.inverse()

    def is_unit(self) -> bool:
        return poly_gcd(self.rep, self.ring.g).degree == 0

    def __eq__(self, o):
        if isinstance(o, QuotElem):
            return self.ring == o.ring and self.rep == o.rep
        return self.rep == self.ring(o).rep

    def __hash__(self):
        return hash(self.rep)

    def __bool__(self):
        return bool(self.rep)

    def __repr__(self):
        return f"[{self.rep}] mod ({self.ring.g})"


# --------------------------------------------------------------------------
# cyclotomic polynomials and factorisation


def cyclotomic(r: int, field: Fp2) -> Poly:
    """Phi_r = 1 + x + ... + x^(r-1) for an odd prime r != p."""
    if r < 3 or r % 2 == 0 or not is_prime(r):
        raise ValueError(f"r must be an odd prime, got {r}")
    if r == field.p:
        raise ValueError("r must differ from the characteristic")
    return Poly(field, [1] * r, [0] * r)


def cyclotomic_frobenius(r: int, q: int) -> Callable[[Poly, int], Poly]:
    """sigma^k for sigma(a) = a^q on F_q[x]/(m) whenever m divides x^r - 1.

    Since a(x)^q = a(x^q) and x^r = 1, sigma^k permutes exponents
    i -> i * q^k mod r. The result is reduced mod x^r - 1 only.
    """

    def frob(a: Poly, k: int) -> Poly:
        e = pow(q, k, r)
        n0 = [0] * r
        n1 = [0] * r
        for i, (x, y) in enumerate(zip(a.c0, a.c1)):
            j = (i * e) % r
            n0[j] = x
            n1[j] = y
        return Poly(a.field, n0, n1)

    return frob


class NotEqualDegree(ValueError):
    """The input is not a product of irreducibles of the stated degree."""


def _frob_iterate(f: Poly, mod: Modulus, d: int, frobenius) -> Poly:
    """x^(q^d) mod f."""
    x = Poly.x(f.field)
    if frobenius is not None:
        return mod.reduce(frobenius(x, d))
    h = mod.reduce(x)
    q = f.field.q
    for _ in range(d):
        h = powmod(h, q, mod)
    return h


def _norm_power(alpha: Poly, d: int, mod: Modulus, frobenius) -> Poly:
    """prod_{i<d} sigma^i(alpha) mod f, by doubling on d."""
    acc = alpha
    k = 1
    for bit in bin(d)[3:]:
        acc = mod.mul(acc, mod.reduce(frobenius(acc, k)))
        k *= 2
        if bit == "1":
            acc = mod.mul(alpha, mod.reduce(frobenius(acc, 1)))
            k += 1
    return acc


def _split_once(f: Poly, d: int, rng, frobenius, mod: Modulus) -> Poly:
    """One nontrivial monic factor of f (which has at least two degree-d factors)."""
    field = f.field
    q = field.q
    p = field.p
    n = f.degree
    one = Poly.const(field, 1)
    attempts = 0
    while True:
        attempts += 1
        if attempts > 200:
            raise NotEqualDegree("equal-degree splitting failed to make progress")
        alpha = Poly(field, [rng.randrange(p) for _ in range(n)], [rng.randrange(p) for _ in range(n)])
        if alpha.degree < 1:
            continue
        g = poly_gcd(alpha, f)
        if 0 < g.degree < n:
            return g
        if frobenius is not None:
            nrm = _norm_power(alpha, d, mod, frobenius)
            beta = powmod(nrm, (q - 1) // 2, mod)
        else:
            beta = powmod(alpha, (q**d - 1) // 2, mod)
        g = poly_gcd(beta - one, f)
        if 0 < g.degree < n:
            return g


def split_equal_degree(f: Poly, d: int, rng, frobenius=None) -> List[Poly]:
    """All monic irreducible factors (each of degree d) of f, in discovery order."""
    f = f.monic()
    if f.degree == d:
        return [f]
    out: List[Poly] = []
    stack = [f]
    while stack:
        h = stack.pop()
        if h.degree == d:
            out.append(h)
            continue
        mod = Modulus(h)
        g = _split_once(h, d, rng, frobenius, mod)
        stack.append(h // g)
        stack.append(g)
    return out


def factor_equal_degree(f: Poly, d: int, rng, frobenius=None) -> Poly:
    """One monic irreducible factor of degree d of a squarefree f whose factors all have degree d.

    ``frobenius(a, k)``, if given, must return a congruent of a^(q^k) modulo f;
    otherwise it is computed by powering. Raises NotEqualDegree if
    x^(q^d) != x mod f or deg f is not a multiple of d.
    """
    if d < 1 or f.degree < 1 or f.degree % d != 0:
        raise NotEqualDegree(f"degree {f.degree} is not a positive multiple of {d}")
    f = f.monic()
    mod = Modulus(f)
    if _frob_iterate(f, mod, d, frobenius) != mod.reduce(Poly.x(f.field)):
        raise NotEqualDegree("x^(q^d) differs from x modulo f")
    if f.degree == d:
        return f
    h = f
    while h.degree > d:
        g = _split_once(h, d, rng, frobenius, Modulus(h))
        other = h // g
        h = g if g.degree <= other.degree else other
    return h


def _prime_divisors(n: int) -> List[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_q."""
    n = f.degree
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return True
    f = f.monic()
    mod = Modulus(f)
    q = f.field.q
    x = mod.reduce(Poly.x(f.field))
    powers = {0: x}
    h = x
    for k in range(1, n + 1):
        h = powmod(h, q, mod)
        powers[k] = h
    if powers[n] != x:
        return False
    for ell in _prime_divisors(n):
        if poly_gcd(powers[n // ell] - x, f).degree != 0:
            return False
    return True


def roots(f: Poly, rng) -> List[FqElem]:
    """All roots of f in F_{p^2} with multiplicity, sorted by (c1, c0)."""
    if f.degree < 1:
        return []
    field = f.field
    f = f.monic()
    mod = Modulus(f)
    x = Poly.x(field)
    h = powmod(x, field.q, mod) - mod.reduce(x)
    g = poly_gcd(h, f)
    if g.degree < 1:
        return []
    found = [(-lin.coeff(0)) for lin in split_equal_degree(g, 1, rng)]
    out: List[FqElem] = []
    for r in found:
        lin = Poly.from_coeffs(field, [-r, 1])
        rest = f
        while True:
            qt, rem = divmod(rest, lin)
            if rem:
                break
            out.append(r)
            rest = qt
    out.sort(key=lambda e: e.sort_key())
    return out
