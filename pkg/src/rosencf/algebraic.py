"""Exact arithmetic in the real field Q(lambda_q), lambda_q = 2*cos(pi/q).

The ground field is described by a QContext: the minimal polynomial of
lambda_q over Q (computed from the 2q-th cyclotomic polynomial via the
palindromic substitution z + 1/z), together with a dyadic isolating
interval that selects lambda_q among the conjugate roots.  Field elements
are coordinate vectors in the power basis 1, lambda, ..., lambda^(d-1)
with a common denominator, kept in lowest terms so equality is syntactic.

q = 3 collapses to Q (lambda = 1) and q = INFINITY, the theta group case,
to Q with lambda = 2; both run through the same code paths with a
degree-one minimal polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from . import kernel
from .errors import ContextMismatchError, InternalError, InvalidParameterError

INFINITY = math.inf

_MAX_SIGN_BITS = 1 << 16
_FLOAT_SAFE_BITS = 500


# ----------------------------------------------------------------------
# minimal polynomial of 2*cos(pi/q)

@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    # Phi_n via exact division of z^n - 1 by the cyclotomics of proper divisors.
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(_cyclotomic(d)))
    return tuple(num)


def _poly_divexact(num, den):
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]  # den is monic
        out[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise InternalError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def two_cos_minimal_poly(q) -> tuple[int, ...]:
    """Monic integer minimal polynomial of 2*cos(pi/q), ascending coefficients."""
    if q == INFINITY:
        return (-2, 1)
    phi = _cyclotomic(2 * q)
    m = (len(phi) - 1) // 2
    # phi is palindromic of degree 2m; fold z^k + z^(-k) down to polynomials
    # in y = z + 1/z using p_(k+1) = y*p_k - p_(k-1), p_0 = 2, p_1 = y.
    g = [phi[m]] + [0] * m
    p_prev = [2] + [0] * m
    p_cur = [0, 1] + [0] * (m - 1)
    for k in range(1, m + 1):
        a = phi[m + k]
        if a:
            for j in range(m + 1):
                g[j] += a * p_cur[j]
        if k < m:
            p_next = [0] + p_cur[:-1]
            for j in range(m + 1):
                p_next[j] -= p_prev[j]
            p_prev, p_cur = p_cur, p_next
    return tuple(g)


# ----------------------------------------------------------------------
# Sturm chains, used once per context to certify the isolating interval

def _sturm_chain(poly):
    p0 = [Fraction(c) for c in poly]
    p1 = [Fraction(i * c) for i, c in enumerate(poly)][1:]
    chain = [p0, p1]
    while True:
        r = _poly_mod(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append([-c for c in r])


def _poly_mod(a, b):
    a = list(a)
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1] / b[-1]
        for j in range(db + 1):
            a[len(a) - 1 - db + j] -= c * b[j]
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _eval_frac(poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _sign_changes(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _eval_frac(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_roots(poly, lo: Fraction, hi: Fraction) -> int:
    chain = _sturm_chain(poly)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


# ----------------------------------------------------------------------

class QContext:
    """Ground-field data for a fixed q: minimal polynomial, reduction table,
    and a monotonically refined dyadic interval around lambda_q."""

    __slots__ = (
        "q", "degree", "min_poly", "red", "lambda_vec", "one_vec", "zero_vec",
        "lambda_float", "_ilo", "_ihi", "_ishift", "_sign_hi", "_lambda_inv",
    )

    def __init__(self, q):
        if q != INFINITY and not (isinstance(q, int) and q >= 3):
            raise InvalidParameterError(f"q must be an integer >= 3 or INFINITY, got {q!r}")
        self.q = q
        self.min_poly = two_cos_minimal_poly(q)
        d = len(self.min_poly) - 1
        self.degree = d
        self.red = self._reduction_rows()
        self.one_vec = (1,) + (0,) * (d - 1)
        self.zero_vec = (0,) * d
        if d == 1:
            lam = -self.min_poly[0]
            self.lambda_vec = (lam,)
            self.lambda_float = float(lam)
            self._ilo = self._ihi = lam
            self._ishift = 0
            self._sign_hi = 0
        else:
            self.lambda_vec = (0, 1) + (0,) * (d - 2)
            self.lambda_float = 2.0 * math.cos(math.pi / q)
            self._init_interval()
        self._lambda_inv = None

    def _reduction_rows(self):
        d = self.degree
        rows = []
        row = [-c for c in self.min_poly[:d]]  # lambda^d
        rows.append(tuple(row))
        for _ in range(max(d - 2, 0)):
            top = row[d - 1]
            row = [0] + row[: d - 1]
            if top:
                for j in range(d):
                    row[j] += top * rows[0][j]
            rows.append(tuple(row))
        return tuple(rows)

    def _init_interval(self):
        shift = 48
        scale = 1 << shift
        eps = 1e-12
        for _ in range(60):
            lo = math.floor((self.lambda_float - eps) * scale)
            hi = math.ceil((self.lambda_float + eps) * scale)
            hi = min(hi, 2 * scale)
            n = _count_roots(self.min_poly, Fraction(lo, scale), Fraction(hi, scale))
            if n == 1:
                break
            eps = eps * 8 if n == 0 else eps / 8
        else:
            raise InternalError(f"could not isolate lambda for q={self.q}")
        s_lo = kernel.dyadic_poly_sign(self.min_poly, lo, shift)
        s_hi = kernel.dyadic_poly_sign(self.min_poly, hi, shift)
        if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
            raise InternalError(f"bad isolating interval for q={self.q}")
        self._ilo, self._ihi, self._ishift, self._sign_hi = lo, hi, shift, s_hi
        self._refine_bits(16)

    def _refine_bits(self, k: int) -> None:
        if self.degree == 1:
            return
        lo, hi, shift = self._ilo, self._ihi, self._ishift
        for _ in range(k):
            mid = lo + hi  # midpoint at shift+1
            s = kernel.dyadic_poly_sign(self.min_poly, mid, shift + 1)
            if s == 0:
                raise InternalError("minimal polynomial vanished at a dyadic point")
            if s == self._sign_hi:
                lo, hi = lo << 1, mid
            else:
                lo, hi = mid, hi << 1
            shift += 1
        self._ilo, self._ihi, self._ishift = lo, hi, shift

    @property
    def lambda_approx(self) -> tuple[Fraction, Fraction]:
        scale = 1 << self._ishift
        return Fraction(self._ilo, scale), Fraction(self._ihi, scale)

    def sign_vec(self, vec) -> int:
        """Exact sign of sum(vec[i] * lambda^i) for an integer vector."""
        if kernel.vec_is_zero(vec):
            return 0
        s = kernel.ivec_sign(vec, self._ilo, self._ihi, self._ishift)
        while s == 0:
            if self._ishift >= _MAX_SIGN_BITS:
                raise InternalError("sign determination did not converge")
            self._refine_bits(self._ishift)
            s = kernel.ivec_sign(vec, self._ilo, self._ihi, self._ishift)
        return s

    def interval_vec(self, vec, bits: int) -> tuple[Fraction, Fraction]:
        """Enclosing interval of width <= 2^-bits for an integer vector."""
        goal = Fraction(1, 1 << bits)
        while True:
            lam_lo = Fraction(self._ilo, 1 << self._ishift)
            lam_hi = Fraction(self._ihi, 1 << self._ishift)
            rl = rh = Fraction(vec[-1])
            for i in range(len(vec) - 2, -1, -1):
                cands = (rl * lam_lo, rl * lam_hi, rh * lam_lo, rh * lam_hi)
                rl, rh = min(cands) + vec[i], max(cands) + vec[i]
            if rh - rl <= goal:
                return rl, rh
            if self._ishift >= _MAX_SIGN_BITS:
                raise InternalError("interval refinement did not converge")
            self._refine_bits(max(self._ishift, bits))

    def float_vec(self, vec):
        """Fast non-rigorous value of an integer vector; None when unsafe."""
        if max(abs(c) for c in vec).bit_length() > _FLOAT_SAFE_BITS:
            return None
        acc = 0.0
        for c in reversed(vec):
            acc = acc * self.lambda_float + c
        return acc

    def lambda_inverse_vec(self):
        if self._lambda_inv is None:
            self._lambda_inv = FieldElement.lambda_(self).invert()
        return self._lambda_inv

    def __repr__(self):
        return f"QContext(q={'inf' if self.q == INFINITY else self.q}, degree={self.degree})"


@lru_cache(maxsize=None)
def make_context(q) -> QContext:
    """Context for the Hecke group parameter q (integer >= 3, or INFINITY)."""
    return QContext(q)


# ----------------------------------------------------------------------

def _gcd_many(values):
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


class FieldElement:
    """Element of Q(lambda_q): integer coordinate vector over a common
    denominator, normalized so that equality is coordinate equality."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: QContext, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = kernel.vec_neg(tuple(num))
            den = -den
        num = tuple(num)
        g = math.gcd(_gcd_many(num), den)
        if g > 1:
            num = tuple(x // g for x in num)
            den //= g
        self.ctx = ctx
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, ctx: QContext, value) -> "FieldElement":
        f = Fraction(value)
        return cls(ctx, (f.numerator,) + (0,) * (ctx.degree - 1), f.denominator)

    @classmethod
    def from_coeffs(cls, ctx: QContext, coeffs) -> "FieldElement":
        """Build from per-power rational coordinates."""
        fracs = [Fraction(c) for c in coeffs]
        if len(fracs) > ctx.degree:
            raise InvalidParameterError("too many coordinates for this field")
        fracs += [Fraction(0)] * (ctx.degree - len(fracs))
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        return cls(ctx, tuple(f.numerator * (den // f.denominator) for f in fracs), den)

    @classmethod
    def zero(cls, ctx: QContext) -> "FieldElement":
        return cls(ctx, ctx.zero_vec)

    @classmethod
    def one(cls, ctx: QContext) -> "FieldElement":
        return cls(ctx, ctx.one_vec)

    @classmethod
    def lambda_(cls, ctx: QContext) -> "FieldElement":
        return cls(ctx, ctx.lambda_vec)

    # -- basic structure ----------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.num)

    def is_zero(self) -> bool:
        return kernel.vec_is_zero(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return Fraction(self.num[0], self.den)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ContextMismatchError("operands from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.from_rational(self.ctx, other)
        return None

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = kernel.vec_add(kernel.vec_scale(self.num, o.den), kernel.vec_scale(o.num, self.den))
        return FieldElement(self.ctx, num, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = kernel.vec_sub(kernel.vec_scale(self.num, o.den), kernel.vec_scale(o.num, self.den))
        return FieldElement(self.ctx, num, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.ctx, kernel.vec_neg(self.num), self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.ctx, kernel.vec_mul(self.num, o.num, self.ctx.red), self.den * o.den)

    __rmul__ = __mul__

    def invert(self) -> "FieldElement":
        """Multiplicative inverse via the extended Euclidean algorithm
        against the minimal polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(lambda)")
        if self.is_rational():
            return FieldElement.from_rational(self.ctx, 1 / self.as_rational())
        a = [Fraction(n, self.den) for n in self.num]
        while a and a[-1] == 0:
            a.pop()
        m = [Fraction(c) for c in self.ctx.min_poly]
        # invariants: r0 = u0*a mod m, r1 = u1*a mod m
        r0, r1 = m, a
        u0, u1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or (r1 and r1[0] != 0):
            q, r = _poly_divmod(r0, r1)
            u = _poly_sub(u0, _poly_mul(q, u1))
            r0, r1, u0, u1 = r1, r, u1, u
        if len(r0) != 1 or r0[0] == 0:
            raise InternalError("minimal polynomial is not coprime to the element")
        c = r0[0]
        inv = [ui / c for ui in u0]
        inv = _poly_mod_frac(inv, m)
        return FieldElement.from_coeffs(self.ctx, inv + [0] * (self.ctx.degree - len(inv)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.invert()

    # -- order and sign -------------------------------------------------

    def sign(self) -> int:
        """-1, 0 or +1 of the real embedding selected by the isolating interval."""
        return self.ctx.sign_vec(self.num)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_rational() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.q, self.num, self.den))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    # -- approximation and display ---------------------------------------

    def approximate(self, precision_bits: int) -> tuple[Fraction, Fraction]:
        """Interval of width <= 2^-precision_bits containing the value."""
        if precision_bits < 1:
            raise InvalidParameterError("precision_bits must be >= 1")
        extra = max(self.den.bit_length(), 1)
        lo, hi = self.ctx.interval_vec(self.num, precision_bits + extra)
        return lo / self.den, hi / self.den

    def __float__(self):
        f = self.ctx.float_vec(self.num)
        if f is None:
            lo, hi = self.approximate(53)
            return float((lo + hi) / 2)
        return f / self.den

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*lam")
            else:
                terms.append(f"{c}*lam^{i}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"<{body} : q={'inf' if self.ctx.q == INFINITY else self.ctx.q}>"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "q": "inf" if self.ctx.q == INFINITY else self.ctx.q,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FieldElement":
        q = obj["q"]
        ctx = make_context(INFINITY if q in ("inf", "INFINITY") else int(q))
        return cls.from_coeffs(ctx, [Fraction(c) for c in obj["coeffs"]])


# fraction-coefficient polynomial helpers for invert()

def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1] / b[-1]
        q[len(a) - 1 - db] = c
        for j in range(db + 1):
            a[len(a) - 1 - db + j] -= c * b[j]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_mod_frac(a, m):
    _, r = _poly_divmod(a, m)
    return r


# ----------------------------------------------------------------------
# rounding to multiples of lambda

def floor_lambda_units_proj(ctx: QContext, u, w) -> int:
    """floor((u/w) / lambda) for a projective pair with w != 0, exact."""
    sw = ctx.sign_vec(w)
    if sw == 0:
        raise ZeroDivisionError("floor of infinity")
    b = _floor_seed(ctx, u, w)
    for _ in range(128):
        lw = kernel.lambda_shift(w, ctx.red)
        s1 = ctx.sign_vec(kernel.vec_sub(u, kernel.vec_scale(lw, b))) * sw
        if s1 < 0:
            b -= 1
            continue
        s2 = ctx.sign_vec(kernel.vec_sub(u, kernel.vec_scale(lw, b + 1))) * sw
        if s2 >= 0:
            b += 1
            continue
        return b
    raise InternalError("floor search did not converge")


def _floor_seed(ctx: QContext, u, w) -> int:
    fu = ctx.float_vec(u)
    fw = ctx.float_vec(w)
    if fu is not None and fw is not None and fw != 0.0:
        t = fu / (fw * ctx.lambda_float)
        if abs(t) < 2**52:
            return math.floor(t)
    bits = 64
    while True:
        ul, uh = ctx.interval_vec(u, bits)
        wl, wh = ctx.interval_vec(w, bits)
        if wl > 0 or wh < 0:
            cands = [ul / wl, ul / wh, uh / wl, uh / wh]
            lam_lo, lam_hi = ctx.lambda_approx
            mid = (min(cands) + max(cands)) / 2 / ((lam_lo + lam_hi) / 2)
            return math.floor(mid)
        bits *= 2
        if bits > _MAX_SIGN_BITS:
            raise InternalError("could not separate denominator from zero")


def nearest_lambda_multiple(x: FieldElement) -> int:
    """Integer b minimizing |x - b*lambda|; exact ties resolve to the
    lesser integer."""
    ctx = x.ctx
    lam = FieldElement.lambda_(ctx)
    f = ctx.float_vec(x.num)
    if f is not None and abs(f / x.den) < 2**52:
        b = round(f / x.den / ctx.lambda_float)
    else:
        b = floor_lambda_units_proj(ctx, x.num, (x.den,) + (0,) * (ctx.degree - 1))
    two_x = x + x
    for _ in range(128):
        s_up = (two_x - (2 * b + 1) * lam).sign()
        if s_up > 0:
            b += 1
            continue
        s_dn = (two_x - (2 * b - 1) * lam).sign()
        if s_dn <= 0:
            b -= 1
            continue
        return b
    raise InternalError("rounding search did not converge")


def lambda_multiple_of(x: FieldElement):
    """k when x == k*lambda exactly, else None."""
    ctx = x.ctx
    if ctx.degree >= 2:
        if x.den != 1 or any(x.num[i] for i in range(ctx.degree) if i != 1):
            return None
        return x.num[1]
    lam = -ctx.min_poly[0]
    if x.den != 1 or x.num[0] % lam:
        return None
    return x.num[0] // lam
