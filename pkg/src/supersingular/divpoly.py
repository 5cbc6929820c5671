"""Division polynomials in univariate form.

For a curve y^2 = x^3 + ax + b put F = 4(x^3 + ax + b) = psi_2^2 and
f_n = psi_n for odd n, f_n = psi_n / psi_2 for even n.  Then every f_n is a
polynomial in x alone and the classical doubling formulas become, with
S_i = f_{i-1} f_{i+1} and T_i = f_i^2,

    f_{2m+1} = T_m S_{m+1} - F^2 T_{m+1} S_m     (m odd)
    f_{2m+1} = F^2 T_m S_{m+1} - T_{m+1} S_m     (m even)
    f_{2m}   = T_{m-1} S_{m+1} - T_{m+1} S_{m-1}

A window of nine consecutive values f_{j-3}, ..., f_{j+5} is enough to
produce the window centred at 2j or 2j + 1, so f_m mod any modulus costs
O(log m) modular products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from .arith import FqElem
from .curve import Curve, Point
from .errors import PreconditionError
from .poly import Poly, as_modulus

WINDOW = 9
BASE_TOP = 10
EXPAND_DEGREE_LIMIT = 20000


def _f5_to_f10(f, F2, mul):
    """f_5..f_10 from f_0..f_4 by the doubling formulas at small indices."""
    f0, f1, f2, f3, f4 = f
    f3sq = mul(f3, f3)
    f4sq = mul(f4, f4)
    f5 = mul(F2, f4) - mul(f3sq, f3)
    f6 = mul(f5 - f4sq, f3)
    f7 = mul(f5, mul(f3sq, f3)) - mul(F2, mul(f4sq, f4))
    f8 = mul(mul(f6, f3sq) - mul(f5, f5), f4)
    f9 = mul(mul(F2, f6), mul(f4sq, f4)) - mul(f3, mul(mul(f5, f5), f5))
    f10 = mul(mul(f7, f4sq) - mul(f3, mul(f6, f6)), f5)
    return [f5, f6, f7, f8, f9, f10]


class CurveContext:
    """A curve with F and f_0..f_4; f_5..f_10 are expanded on first use."""

    __slots__ = ("curve", "F", "low", "_base")

    def __init__(self, curve: Curve, F: Poly, low: Tuple[Poly, ...]):
        self.curve = curve
        self.F = F
        self.low = low  # f_0 .. f_4
        self._base: Optional[Tuple[Poly, ...]] = None

    @property
    def base(self) -> Tuple[Poly, ...]:
        """f_0 .. f_10, unreduced."""
        if self._base is None:
            F2 = self.F * self.F
            more = _f5_to_f10(list(self.low), F2, lambda u, v: u * v)
            self._base = tuple(self.low) + tuple(more)
        return self._base

    def f(self, n: int) -> Poly:
        """Unreduced f_n for |n| <= 10 (f_{-n} = -f_n)."""
        if n < 0:
            return -self.base[-n]
        return self.base[n]


def base_polys(E: Curve) -> CurveContext:
    Fq = E.field
    a, b = E.a, E.b
    P = lambda cs: Poly.from_coeffs(Fq, cs)  # noqa: E731
    F = P([4 * b, 4 * a, 0, 4])
    f0 = Poly.zero(Fq)
    f1 = P([1])
    f2 = P([1])
    f3 = P([-a * a, 12 * b, 6 * a, 0, 3])
    f4 = P([
        2 * (-8 * b * b - a * a * a),
        2 * (-4 * a * b),
        2 * (-5 * a * a),
        2 * (20 * b),
        2 * (5 * a),
        0,
        2,
    ])
    return CurveContext(E, F, (f0, f1, f2, f3, f4))


@dataclass(frozen=True)
class DivPolyWindow:
    m: int
    entries: Tuple[Poly, ...]  # f_{m-3} .. f_{m+5}
    modulus: Optional[Poly]

    def __post_init__(self):
        if len(self.entries) != WINDOW:
            raise ValueError("a window holds exactly nine polynomials")

    @property
    def center(self) -> Poly:
        return self.entries[3]

    def __getitem__(self, n: int) -> Poly:
        """f_n for n in [m-3, m+5]."""
        k = n - self.m + 3
        if not 0 <= k < WINDOW:
            raise IndexError(f"f_{n} is outside the window centred at {self.m}")
        return self.entries[k]


def _step(win: Sequence, j: int, bit: int, F2, mul):
    """From f_{j-3..j+5} to f_{2j+bit-3 .. 2j+bit+5}."""

    def fi(i):
        return win[i - j + 3]

    S = {}
    T = {}
    for i in range(j - 2, j + 5):
        S[i] = mul(fi(i - 1), fi(i + 1))
        T[i] = mul(fi(i), fi(i))
    c = 2 * j + bit
    out = []
    for n in range(c - 3, c + 6):
        m, odd = divmod(n, 2)
        if odd:
            if m % 2:
                v = mul(T[m], S[m + 1]) - mul(F2, mul(T[m + 1], S[m]))
            else:
                v = mul(F2, mul(T[m], S[m + 1])) - mul(T[m + 1], S[m])
        else:
            v = mul(T[m - 1], S[m + 1]) - mul(T[m + 1], S[m - 1])
        out.append(v)
    return out


def _window(base: Sequence, F2, m: int, mul: Callable):
    """Window doubling ladder over any ring given f_0..f_10 and F^2 in it."""
    if m < 3:
        raise PreconditionError("window centre must be at least 3")
    bits = bin(m)[2:]
    if bits[1] == "1":
        j, rest = 3, bits[2:]
    elif bits[2] == "0":
        j, rest = 4, bits[3:]
    else:
        j, rest = 5, bits[3:]
    win = list(base[j - 3 : j + 6])
    for ch in rest:
        b = 1 if ch == "1" else 0
        win = _step(win, j, b, F2, mul)
        j = 2 * j + b
    assert j == m
    return win


def _ring_ops(ctx: CurveContext, modulus):
    """(mul, reduce, reduced base, reduced F^2) for a modulus, or exact mode for None."""
    if modulus is None:
        mul = lambda u, v: u * v  # noqa: E731
        red = lambda u: u  # noqa: E731
    else:
        mod = as_modulus(modulus)
        mul = mod.mul
        red = mod.reduce
    if modulus is None:
        return mul, red, list(ctx.base), ctx.F * ctx.F
    Fr = red(ctx.F)
    F2 = mul(Fr, Fr)
    low = [red(f) for f in ctx.low]
    return mul, red, low + _f5_to_f10(low, F2, mul), F2


def window_at(ctx: CurveContext, m: int, modulus=None) -> DivPolyWindow:
    """f_{m-3}, ..., f_{m+5} reduced modulo ``modulus`` (exact if None)."""
    if m < 3:
        raise PreconditionError(f"window centre must be at least 3, got {m}")
    mpoly = None
    if modulus is not None:
        mod = as_modulus(modulus)
        mpoly = mod.poly
        modulus = mod
    else:
        _check_expand_size(m + 5)
    mul, red, base, F2 = _ring_ops(ctx, modulus)
    return DivPolyWindow(m, tuple(_window(base, F2, m, mul)), mpoly)


def _check_expand_size(n: int):
    if n * n // 2 > EXPAND_DEGREE_LIMIT:
        raise PreconditionError(f"exact f_{n} would have degree about {n * n // 2}; too large")


def f_n(ctx: CurveContext, n: int, modulus=None) -> Poly:
    """f_n (mod modulus), for any integer n."""
    if n < 0:
        return -f_n(ctx, -n, modulus)
    if n <= BASE_TOP:
        return ctx.base[n] if modulus is None else as_modulus(modulus).reduce(ctx.base[n])
    return window_at(ctx, n, modulus).center


def expand_fn(ctx: CurveContext, n: int) -> Poly:
    """Fully expanded f_n; guarded by a degree limit."""
    _check_expand_size(n)
    return f_n(ctx, n, None)


def f_triple(ctx: CurveContext, p: int, g) -> Tuple[Poly, Poly, Poly]:
    """(f_{p-1}, f_p, f_{p+1}) mod g."""
    if p < 3:
        raise PreconditionError("index must be at least 3")
    w = window_at(ctx, p, g)
    return w[p - 1], w[p], w[p + 1]


# --------------------------------------------------------------------------
# scalar evaluation


def _scalar_base(ctx: CurveContext, x0: FqElem):
    base = [f.eval(x0) for f in ctx.low]
    Fv = ctx.F.eval(x0)
    F2 = Fv * Fv
    base += _f5_to_f10(base, F2, lambda u, v: u * v)
    return base, Fv, F2


def f_values_at(ctx: CurveContext, lo: int, hi: int, x0: FqElem) -> dict:
    """{n: f_n(x0)} for lo <= n <= hi, with hi - lo <= 8."""
    if hi - lo > WINDOW - 1:
        raise ValueError("at most nine consecutive values")
    base, _, F2 = _scalar_base(ctx, x0)

    def from_base(n):
        return -base[-n] if n < 0 else base[n]

    if hi <= BASE_TOP and lo >= -BASE_TOP:
        return {n: from_base(n) for n in range(lo, hi + 1)}
    centre = max(3, hi - 5, min(lo + 3, (lo + hi) // 2))
    win = _window(base, F2, centre, lambda u, v: u * v)
    return {n: win[n - centre + 3] for n in range(lo, hi + 1)}


def eval_fn_at(ctx: CurveContext, n: int, x0: FqElem) -> FqElem:
    """f_n(x0) with O(log n) field operations."""
    return f_values_at(ctx, n, n, x0)[n]


# --------------------------------------------------------------------------
# multiplication-by-n numerators


def _parts(ctx: CurveContext, s: int, modulus):
    """(f_{s-1}, f_s, f_{s+1}) mod modulus, for s >= 1."""
    if s + 1 <= BASE_TOP:
        red = (lambda u: u) if modulus is None else as_modulus(modulus).reduce
        return red(ctx.f(s - 1)), red(ctx.f(s)), red(ctx.f(s + 1))
    w = window_at(ctx, s, modulus)
    return w[s - 1], w[s], w[s + 1]


def phi_psi2(ctx: CurveContext, s: int, modulus=None) -> Tuple[Poly, Poly]:
    """(phi_s, psi_s^2) mod modulus, with psi_s^2 = f_s^2 (s odd) or f_s^2 F (s even)
    and psi_{s+1} psi_{s-1} = f_{s+1} f_{s-1} F (s odd) or f_{s+1} f_{s-1} (s even)."""
    if s < 1:
        raise PreconditionError("s must be positive")
    if modulus is None:
        mul = lambda u, v: u * v  # noqa: E731
        red = lambda u: u  # noqa: E731
        _check_expand_size(s + 1)
    else:
        mod = as_modulus(modulus)
        mul, red = mod.mul, mod.reduce
    fm, fs, fp = _parts(ctx, s, modulus)
    F = red(ctx.F)
    x = red(Poly.x(ctx.curve.field))
    sq = mul(fs, fs)
    nb = mul(fp, fm)
    if s % 2:
        psi2 = sq
        nb = mul(nb, F)
    else:
        psi2 = mul(sq, F)
    phi = mul(x, psi2) - nb
    return phi, psi2


def mult_by_n(ctx: CurveContext, n: int, P: Point) -> Point:
    """[n]P from division-polynomial values at x_P.

    x([n]P) = phi_n / psi_n^2.  With W = f_{n+2} f_{n-1}^2 - f_{n-2} f_{n+1}^2,
    y([n]P) = y W / f_n^3 for odd n and W / (16 y^3 f_n^3) for even n.
    """
    E = ctx.curve
    if n < 0:
        return -mult_by_n(ctx, -n, P)
    if n == 0 or P.is_infinity:
        return E.infinity
    x, y = P.x, P.y
    v = f_values_at(ctx, n - 2, n + 2, x)
    fm2, fm1, fn, fp1, fp2 = (v[n - 2], v[n - 1], v[n], v[n + 1], v[n + 2])
    Fx = ctx.F.eval(x)
    odd = n % 2 == 1
    if not fn or (not odd and not y):
        return E.infinity
    if odd:
        psi2 = fn * fn
        nb = fp1 * fm1 * Fx
    else:
        psi2 = fn * fn * Fx
        nb = fp1 * fm1
    xn = (x * psi2 - nb) / psi2
    W = fp2 * fm1 * fm1 - fm2 * fp1 * fp1
    if odd:
        yn = y * W / (fn * fn * fn)
    else:
        yn = W / (16 * y * y * y * fn * fn * fn)
    return Point(E, xn, yn)
