"""Hecke group elements as exact 2x2 unit-determinant matrices over
Z[lambda], acting on the boundary circle R u {inf}, plus the cyclic-order
predicate for boundary triples.

Boundary points are kept both as canonical field values (or the infinity
marker) and as projective integer-vector pairs (u : w); the pair form is
what the hot loops transform.
"""

from __future__ import annotations

from . import kernel
from .algebraic import (
    FieldElement,
    QContext,
    floor_lambda_units_proj,
)
from .errors import ContextMismatchError, DomainError, InternalError, InvalidParameterError

CLOCKWISE = -1
ANTICLOCKWISE = 1
DEGENERATE = 0


class BoundaryPoint:
    """A point of R u {inf}: either the infinity marker or an exact field value."""

    __slots__ = ("ctx", "value", "proj")

    def __init__(self, ctx: QContext, value: FieldElement | None, proj=None):
        self.ctx = ctx
        self.value = value
        if proj is None:
            if value is None:
                proj = (ctx.one_vec, ctx.zero_vec)
            else:
                proj = (value.num, (value.den,) + (0,) * (ctx.degree - 1))
        self.proj = proj

    @classmethod
    def infinity(cls, ctx: QContext) -> "BoundaryPoint":
        return cls(ctx, None)

    @classmethod
    def from_value(cls, value: FieldElement) -> "BoundaryPoint":
        return cls(value.ctx, value)

    @classmethod
    def from_proj(cls, ctx: QContext, u, w) -> "BoundaryPoint":
        """Canonicalize a projective pair (division happens once, here)."""
        if kernel.vec_is_zero(w):
            if kernel.vec_is_zero(u):
                raise InvalidParameterError("(0 : 0) is not a boundary point")
            return cls(ctx, None)
        if ctx.degree == 1:
            return cls(ctx, FieldElement(ctx, (u[0],), w[0]))
        num = FieldElement(ctx, u)
        den = FieldElement(ctx, w)
        return cls(ctx, num / den)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, BoundaryPoint):
            return NotImplemented
        return self.ctx is other.ctx and self.value == other.value

    def __hash__(self):
        return hash((self.ctx.q, self.value))

    def negate(self) -> "BoundaryPoint":
        """The boundary action of the anticonformal reflection z -> -conj(z)."""
        if self.is_infinity:
            return self
        return BoundaryPoint(self.ctx, -self.value)

    def __repr__(self):
        return "<inf>" if self.is_infinity else repr(self.value)

    def to_json(self):
        if self.is_infinity:
            return "inf"
        return [str(c) for c in self.value.coeffs]


class GroupElement:
    """Matrix [[a, b], [c, d]] over Z[lambda] with determinant one; equality
    is projective (matrices agreeing up to global sign act identically)."""

    __slots__ = ("ctx", "m")

    def __init__(self, ctx: QContext, m, check: bool = True):
        self.ctx = ctx
        self.m = m
        if check:
            det = kernel.mat_det(m, ctx.red)
            if det != ctx.one_vec:
                raise InvalidParameterError(f"matrix determinant is not 1: {det}")

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, ctx: QContext) -> "GroupElement":
        return cls(ctx, (ctx.one_vec, ctx.zero_vec, ctx.zero_vec, ctx.one_vec), check=False)

    def __repr__(self):
        ents = [FieldElement(self.ctx, v) for v in self.m]
        return f"[[{ents[0]!r}, {ents[1]!r}], [{ents[2]!r}, {ents[3]!r}]]"

    # -- group operations -------------------------------------------------

    def compose(self, other: "GroupElement") -> "GroupElement":
        if other.ctx is not self.ctx:
            raise ContextMismatchError("composition across different fields")
        return GroupElement(self.ctx, kernel.mat_mul(self.m, other.m, self.ctx.red), check=False)

    __matmul__ = compose

    def inverse(self) -> "GroupElement":
        a, b, c, d = self.m
        return GroupElement(
            self.ctx, (d, kernel.vec_neg(b), kernel.vec_neg(c), a), check=False
        )

    def apply_proj(self, pair):
        return kernel.mat_apply(self.m, pair[0], pair[1], self.ctx.red)

    def apply(self, p: BoundaryPoint) -> BoundaryPoint:
        if p.ctx is not self.ctx:
            raise ContextMismatchError("point from a different field")
        u, w = self.apply_proj(p.proj)
        return BoundaryPoint.from_proj(self.ctx, u, w)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.ctx is other.ctx and projectively_equal(self, other)

    def __hash__(self):
        m = self.m
        flat = [x for v in m for x in v]
        lead = next((x for x in flat if x), 1)
        if lead < 0:
            m = tuple(kernel.vec_neg(v) for v in m)
        return hash((self.ctx.q, m))

    def entries(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.ctx, v) for v in self.m)

    def to_json(self):
        from .algebraic import INFINITY

        return {
            "q": "inf" if self.ctx.q == INFINITY else self.ctx.q,
            "matrix": [list(v) for v in self.m],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GroupElement":
        from .algebraic import INFINITY, make_context

        q = obj["q"]
        ctx = make_context(INFINITY if q in ("inf", "INFINITY") else int(q))
        return cls(ctx, tuple(tuple(v) for v in obj["matrix"]))


def projectively_equal(g: GroupElement, h: GroupElement) -> bool:
    """True when g == h or g == -h entrywise."""
    if g.ctx is not h.ctx:
        raise ContextMismatchError("comparison across different fields")
    if g.m == h.m:
        return True
    return all(g.m[i] == kernel.vec_neg(h.m[i]) for i in range(4))


# ----------------------------------------------------------------------
# generators

def sigma(ctx: QContext) -> GroupElement:
    """z -> -1/z."""
    one, zero = ctx.one_vec, ctx.zero_vec
    return GroupElement(ctx, (zero, kernel.vec_neg(one), one, zero), check=False)


def tau_pow(ctx: QContext, k: int = 1) -> GroupElement:
    """z -> z + k*lambda."""
    one, zero = ctx.one_vec, ctx.zero_vec
    return GroupElement(ctx, (one, kernel.vec_scale(ctx.lambda_vec, k), zero, one), check=False)


def tau(ctx: QContext) -> GroupElement:
    return tau_pow(ctx, 1)


def t_b(ctx: QContext, b: int) -> GroupElement:
    """T_b : z -> b*lambda - 1/z, i.e. tau^b sigma."""
    one, zero = ctx.one_vec, ctx.zero_vec
    return GroupElement(
        ctx, (kernel.vec_scale(ctx.lambda_vec, b), kernel.vec_neg(one), one, zero), check=False
    )


def rho(ctx: QContext) -> GroupElement:
    """z -> lambda - 1/z, the order-q rotation tau o sigma."""
    return t_b(ctx, 1)


def generator(ctx: QContext, name: str) -> GroupElement:
    if name == "sigma":
        return sigma(ctx)
    if name == "tau":
        return tau(ctx)
    if name == "rho":
        return rho(ctx)
    raise InvalidParameterError(f"unknown generator {name!r}")


def from_cf(ctx: QContext, coeffs) -> GroupElement:
    """Product T_{b_1} ... T_{b_n} of a coefficient sequence."""
    coeffs = list(coeffs)
    if not coeffs:
        raise InvalidParameterError("empty coefficient sequence")
    return GroupElement(ctx, kernel.eval_cf_matrix(coeffs, ctx.red, ctx.degree), check=False)


# ----------------------------------------------------------------------
# nearest-integer recursion on projective pairs

def nearest_lambda_units_proj(ctx: QContext, u, w) -> int:
    """Nearest integer b to (u/w)/lambda, exact ties to the lesser."""
    b = floor_lambda_units_proj(ctx, u, w)
    sw = ctx.sign_vec(w)
    lw = kernel.lambda_shift(w, ctx.red)
    # compare u/w against the midpoint (2b+1)/2 * lambda
    mid = ctx.sign_vec(
        kernel.vec_sub(kernel.vec_scale(u, 2), kernel.vec_scale(lw, 2 * b + 1))
    ) * sw
    return b if mid <= 0 else b + 1


def ni_expansion_proj(ctx: QContext, u, w, cap: int = 512):
    """Nearest-integer coefficients of the boundary point u/w.

    Terminates exactly when the point is a vertex of the Farey graph;
    raises DomainError at the cap otherwise.
    """
    coeffs = []
    while not kernel.vec_is_zero(w):
        if len(coeffs) >= cap:
            raise DomainError("nearest-integer expansion did not terminate (not a vertex?)")
        b = nearest_lambda_units_proj(ctx, u, w)
        coeffs.append(b)
        u, w = kernel.tb_inv_apply(u, w, b, ctx.red)
    return coeffs


# ----------------------------------------------------------------------
# cyclic order on the boundary circle

def _cross_sign(ctx: QContext, p, q) -> int:
    return ctx.sign_vec(kernel.cross(p[0], p[1], q[0], q[1], ctx.red))


def cyclic_order(a: BoundaryPoint, b: BoundaryPoint, c: BoundaryPoint) -> int:
    """Orientation of a boundary triple: ANTICLOCKWISE for finite a < b < c
    (the disc embedding convention), CLOCKWISE for the reverse, DEGENERATE
    when two of the points coincide.  Exact, and well defined on projective
    pairs regardless of representative signs."""
    if a.ctx is not b.ctx or b.ctx is not c.ctx:
        raise ContextMismatchError("points from different fields")
    ctx = a.ctx
    s1 = _cross_sign(ctx, b.proj, a.proj)
    s2 = _cross_sign(ctx, c.proj, b.proj)
    s3 = _cross_sign(ctx, c.proj, a.proj)
    if s1 == 0 or s2 == 0 or s3 == 0:
        return DEGENERATE
    return s1 * s2 * s3


def proj_lambda_multiple(ctx: QContext, u, w):
    """k when u/w == k*lambda exactly (w != 0), else None."""
    b = floor_lambda_units_proj(ctx, u, w)
    lw = kernel.lambda_shift(w, ctx.red)
    if ctx.sign_vec(kernel.vec_sub(u, kernel.vec_scale(lw, b))) == 0:
        return b
    return None
