"""Short Weierstrass curves y^2 = x^3 + a x + b over F_{p^2}."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .arith import Fp2, FqElem, NoSquareRoot, is_prime
from .errors import NoRationalStep, PreconditionError, UnsupportedPrime
from .poly import Poly, roots

# Search over all j is in practice limited by the cost of point counting.
SUPERSINGULAR_SEARCH_LIMIT = 200


@dataclass(frozen=True)
class Curve:
    a: FqElem
    b: FqElem

    def __post_init__(self):
        if self.a.field != self.b.field:
            raise ValueError("coefficients from different fields")
        if not self.discriminant_factor():
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")

    @classmethod
    def from_ints(cls, p: int, a, b) -> "Curve":
        F = Fp2.of(p)
        a = a if isinstance(a, FqElem) else (F(*a) if isinstance(a, tuple) else F(a))
        b = b if isinstance(b, FqElem) else (F(*b) if isinstance(b, tuple) else F(b))
        return cls(a, b)

    @property
    def field(self) -> Fp2:
        return self.a.field

    @property
    def p(self) -> int:
        return self.a.field.p

    @property
    def q(self) -> int:
        return self.a.field.q

    def discriminant_factor(self) -> FqElem:
        """4a^3 + 27b^2; the discriminant is -16 times this."""
        return 4 * self.a * self.a * self.a + 27 * self.b * self.b

    @property
    def discriminant(self) -> FqElem:
        return -16 * self.discriminant_factor()

    def rhs(self, x: FqElem) -> FqElem:
        return x * x * x + self.a * x + self.b

    def contains(self, P: "Point") -> bool:
        if P.is_infinity:
            return True
        return P.y * P.y == self.rhs(P.x)

    def point(self, x, y) -> "Point":
        F = self.field
        x = x if isinstance(x, FqElem) else F(x)
        y = y if isinstance(y, FqElem) else F(y)
        P = Point(self, x, y)
        if not self.contains(P):
            raise ValueError(f"({x}, {y}) is not on the curve")
        return P

    @property
    def infinity(self) -> "Point":
        return Point(self, None, None)

    def __str__(self):
        return f"{self.p}; {self.a}; {self.b}"

    @classmethod
    def parse(cls, text: str) -> "Curve":
        """Parse ``"p; a; b"`` with coefficients in ``c0+c1*u`` syntax."""
        parts = [s.strip() for s in text.split(";")]
        if len(parts) != 3:
            raise ValueError(f"expected 'p; a; b', got {text!r}")
        try:
            p = int(parts[0])
        except ValueError:
            raise ValueError(f"bad characteristic {parts[0]!r}") from None
        if p <= 3 or not is_prime(p):
            raise ValueError(f"p must be a prime > 3, got {p}")
        F = Fp2.of(p)
        return cls(F.parse(parts[1]), F.parse(parts[2]))


@dataclass(frozen=True)
class Point:
    curve: Curve
    x: Optional[FqElem]
    y: Optional[FqElem]

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "Point":
        if self.is_infinity:
            return self
        return Point(self.curve, self.x, -self.y)

    def __add__(self, other: "Point") -> "Point":
        return point_add(self, other)

    def __sub__(self, other: "Point") -> "Point":
        return point_add(self, -other)

    def __rmul__(self, n: int) -> "Point":
        return scalar_mul(n, self)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return (self.x, self.y) == (other.x, other.y) and self.curve == other.curve

    def __hash__(self):
        return hash((self.x, self.y))

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


def point_add(P: Point, Q: Point) -> Point:
    if P.curve != Q.curve:
        raise ValueError("points on different curves")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    E = P.curve
    if P.x == Q.x:
        if P.y == -Q.y:
            return E.infinity
        lam = (3 * P.x * P.x + E.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(E, x3, y3)


def scalar_mul(n: int, P: Point) -> Point:
    """Double-and-add; negative n multiplies -P."""
    if n < 0:
        return scalar_mul(-n, -P)
    R = P.curve.infinity
    if n == 0 or P.is_infinity:
        return R
    for bit in bin(n)[2:]:
        R = point_add(R, R)
        if bit == "1":
            R = point_add(R, P)
    return R


def random_point(E: Curve, rng) -> Point:
    """Uniform random affine point.

    x is drawn uniformly and retried until x^3 + ax + b is a square; a zero
    right-hand side (one point over that x instead of two) is kept with
    probability 1/2 so that every affine point is equally likely.
    """
    F = E.field
    while True:
        x = F.random(rng)
        r = E.rhs(x)
        if not r:
            if rng.random() < 0.5:
                return Point(E, x, r)
            continue
        try:
            y = r.sqrt()
        except NoSquareRoot:
            continue
        if rng.random() < 0.5:
            y = -y
        return Point(E, x, y)


# --------------------------------------------------------------------------
# j-invariants


def j_invariant(E: Curve) -> FqElem:
    a3 = 4 * E.a * E.a * E.a
    return 1728 * a3 / (a3 + 27 * E.b * E.b)


def curve_from_j(j: FqElem, twist: bool = False) -> Curve:
    """A curve with j-invariant j, or its quadratic twist by a fixed non-square.

    j = 0 gives y^2 = x^3 + 1 and j = 1728 gives y^2 = x^3 + x; otherwise
    a = 3j(1728 - j), b = 2j(1728 - j)^2.
    """
    F = j.field
    if j == 0:
        a, b = F.zero, F.one
    elif j == 1728:
        a, b = F.one, F.zero
    else:
        k = 1728 - j
        a = 3 * j * k
        b = 2 * j * k * k
    if twist:
        c = F.nonsquare
        a, b = c * c * a, c * c * c * b
    return Curve(a, b)


# --------------------------------------------------------------------------
# level-2 modular polynomial

_PHI2 = {
    # coefficient of X^i Y^k
    (3, 0): 1, (0, 3): 1,
    (2, 2): -1,
    (2, 1): 1488, (1, 2): 1488,
    (2, 0): -162000, (0, 2): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000, (0, 1): 8748000000,
    (0, 0): -157464000000000,
}


def modular_poly_2(j: FqElem) -> Poly:
    """Phi_2(X, j) as a monic cubic in X."""
    F = j.field
    jp = [F.one, j, j * j, j * j * j]
    coeffs = [F.zero] * 4
    for (i, k), c in _PHI2.items():
        coeffs[i] = coeffs[i] + c * jp[k]
    return Poly.from_coeffs(F, coeffs)


def phi2_value(x: FqElem, y: FqElem) -> FqElem:
    return modular_poly_2(y).eval(x)


def two_isogenous_js(j: FqElem, rng) -> List[FqElem]:
    """Roots of Phi_2(X, j) in F_{p^2} with multiplicity."""
    return roots(modular_poly_2(j), rng)


def isogeny_step_2(j: FqElem, j_prev: Optional[FqElem], rng) -> FqElem:
    """One random non-backtracking step in the 2-isogeny graph.

    One copy of j_prev is removed from the roots of Phi_2(X, j); if nothing
    is left the step falls back to all roots.
    """
    rs = two_isogenous_js(j, rng)
    if not rs:
        raise NoRationalStep(f"Phi_2(X, {j}) has no root in F_p^2")
    forward = list(rs)
    if j_prev is not None and j_prev in forward:
        forward.remove(j_prev)
    pool = forward if forward else rs
    return pool[rng.randrange(len(pool))]


# --------------------------------------------------------------------------
# generation


def gen_ordinary(p: int, rng) -> Curve:
    """Random (a, b) with nonzero discriminant; ordinary with high probability."""
    if p <= 3 or not is_prime(p):
        raise PreconditionError(f"p must be a prime > 3, got {p}")
    F = Fp2.of(p)
    while True:
        a, b = F.random(rng), F.random(rng)
        if 4 * a * a * a + 27 * b * b:
            return Curve(a, b)


def default_walk_steps(p: int) -> int:
    return 2 * (p.bit_length() - 1)


def _initial_supersingular_j(p: int) -> FqElem:
    F = Fp2.of(p)
    if p % 3 == 2:
        return F.zero
    if p % 4 == 3:
        return F(1728)
    if p > SUPERSINGULAR_SEARCH_LIMIT:
        raise UnsupportedPrime(
            f"p = {p} is 1 mod 12 and above {SUPERSINGULAR_SEARCH_LIMIT}; "
            "no supersingular starting curve is available"
        )
    from .sstest.oracle import is_supersingular_by_count

    # Some supersingular j always lies in F_p; scan it first, then the rest.
    for c1 in range(p):
        for c0 in range(p):
            j = F(c0, c1)
            if is_supersingular_by_count(curve_from_j(j)):
                return j
    raise AssertionError("no supersingular j-invariant found")  # pragma: no cover


def gen_supersingular(p: int, rng, walk_steps: Optional[int] = None) -> Curve:
    """A supersingular curve: a known starting j followed by a random 2-isogeny walk."""
    if p <= 3 or not is_prime(p):
        raise PreconditionError(f"p must be a prime > 3, got {p}")
    if walk_steps is None:
        walk_steps = default_walk_steps(p)
    j = _initial_supersingular_j(p)
    prev = None
    for _ in range(walk_steps):
        j, prev = isogeny_step_2(j, prev, rng), j
    return curve_from_j(j)
