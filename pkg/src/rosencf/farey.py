"""The Farey graph F_q: vertices (the orbit of infinity), adjacency, faces,
the face across a vertex pair, parents, the turn function, and chains of
q-gon faces between two vertices.

All constructions are generated on demand by group action on the
fundamental q-gon; nothing global is stored (the graph is infinite).  For
q = INFINITY the graph is a tree: adjacency uses the parity/determinant
criterion directly and the face machinery raises ThetaUnsupportedError.
"""

from __future__ import annotations

from . import kernel
from .algebraic import INFINITY, FieldElement, QContext, floor_lambda_units_proj, make_context
from .errors import (
    DomainError,
    EmptyChainError,
    InternalError,
    ThetaUnsupportedError,
    UndefinedParentsError,
)
from .moebius import (
    ANTICLOCKWISE,
    CLOCKWISE,
    DEGENERATE,
    BoundaryPoint,
    GroupElement,
    cyclic_order,
    ni_expansion_proj,
    proj_lambda_multiple,
    t_b,
    tau_pow,
)

_CHAIN_CAP = 4096
_VERTEX_CAP = 512


class Vertex:
    """A vertex of F_q: a boundary point in the orbit of infinity, carrying
    a lazily computed group element that maps it to infinity (the witness
    that it really is in the orbit)."""

    __slots__ = ("point", "_to_inf")

    def __init__(self, point: BoundaryPoint, to_inf: GroupElement | None = None):
        self.point = point
        self._to_inf = to_inf
        if point.ctx.q == INFINITY and not point.is_infinity:
            num, den = point.value.num[0], point.value.den
            if num % 2 == 1 and den % 2 == 1:
                raise DomainError(f"{num}/{den} is not a vertex of the theta-group graph")

    @classmethod
    def infinity(cls, ctx: QContext) -> "Vertex":
        return cls(BoundaryPoint.infinity(ctx), GroupElement.identity(ctx))

    @classmethod
    def from_value(cls, value: FieldElement) -> "Vertex":
        return cls(BoundaryPoint.from_value(value))

    @classmethod
    def from_rational(cls, ctx: QContext, value) -> "Vertex":
        return cls(BoundaryPoint.from_value(FieldElement.from_rational(ctx, value)))

    @classmethod
    def from_proj(cls, ctx: QContext, u, w, to_inf: GroupElement | None = None) -> "Vertex":
        return cls(BoundaryPoint.from_proj(ctx, u, w), to_inf)

    @property
    def ctx(self) -> QContext:
        return self.point.ctx

    @property
    def is_infinity(self) -> bool:
        return self.point.is_infinity

    @property
    def proj(self):
        return self.point.proj

    def __eq__(self, other):
        if not isinstance(other, Vertex):
            return NotImplemented
        return self.point == other.point

    def __hash__(self):
        return hash(self.point)

    def __repr__(self):
        return f"Vertex({self.point!r})"

    def sort_key(self) -> str:
        p = self.point
        return "inf" if p.is_infinity else ",".join(str(c) for c in p.value.coeffs)

    def to_json(self):
        return self.point.to_json()


def map_to_infinity(x: Vertex) -> GroupElement:
    """A group element g with g(x) = infinity, reconstructed from a
    nearest-integer expansion of x and cached on the vertex."""
    if x._to_inf is not None:
        return x._to_inf
    ctx = x.ctx
    coeffs = ni_expansion_proj(ctx, *x.proj, cap=_VERTEX_CAP)
    g = GroupElement.identity(ctx)
    for b in coeffs:  # (T_b1 ... T_bm)^(-1) = T_bm^(-1) ... T_b1^(-1)
        g = t_b(ctx, b).inverse() @ g
    _, w = g.apply_proj(x.proj)
    if not kernel.vec_is_zero(w):
        raise InternalError("witness does not map the vertex to infinity")
    x._to_inf = g
    return g


def adjacent(u: Vertex, v: Vertex) -> bool:
    """Edge test.  Conjugates u to infinity and asks whether the image of v
    is an integer multiple of lambda; the theta group uses its explicit
    determinant criterion instead."""
    if u.ctx is not v.ctx:
        raise DomainError("vertices from different graphs")
    if u == v:
        return False
    ctx = u.ctx
    if ctx.q == INFINITY:
        a, b = u.proj[0][0], u.proj[1][0]
        c, d = v.proj[0][0], v.proj[1][0]
        return abs(a * d - b * c) == 1
    g = map_to_infinity(u)
    pu, pw = g.apply_proj(v.proj)
    if kernel.vec_is_zero(pw):
        return False
    return proj_lambda_multiple(ctx, pu, pw) is not None


class Face:
    """An ideal q-gon face: its vertices in anticlockwise cyclic order,
    rotated so the lexicographically least serialized vertex comes first."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        vertices = tuple(vertices)
        keys = [v.sort_key() for v in vertices]
        i = keys.index(min(keys))
        self.vertices = vertices[i:] + vertices[:i]

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def __contains__(self, v: Vertex) -> bool:
        return any(v == w for w in self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Face):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(tuple(v.sort_key() for v in self.vertices))

    def __repr__(self):
        return f"Face({', '.join(v.sort_key() for v in self.vertices)})"

    def to_json(self):
        return [v.to_json() for v in self.vertices]


def _map_face(g: GroupElement, face: Face) -> Face:
    gi = g.inverse()
    out = []
    for v in face.vertices:
        witness = (v._to_inf @ gi) if v._to_inf is not None else None
        out.append(Vertex.from_proj(g.ctx, *g.apply_proj(v.proj), to_inf=witness))
    return Face(out)


def face_of_fundamental(ctx: QContext, b: int) -> Face:
    """The translate by b*lambda of the fundamental q-gon: vertices are
    infinity and the forward rho-orbit of infinity, shifted.  Anticlockwise
    order runs from infinity through 0 up to (b+1)*lambda."""
    if ctx.q == INFINITY:
        raise ThetaUnsupportedError("the theta-group graph is a tree and has no faces")
    shift = tau_pow(ctx, b)
    shift_inv = tau_pow(ctx, -b)
    r = t_b(ctx, 1)
    verts = [Vertex.infinity(ctx)]
    acc = r
    orbit = []
    for _ in range(ctx.q - 1):
        u, w = acc.m[0], acc.m[2]  # acc(inf) = first column
        orbit.append(Vertex.from_proj(ctx, *shift.apply_proj((u, w)), to_inf=acc.inverse() @ shift_inv))
        acc = acc @ r
    verts.extend(reversed(orbit))
    return Face(verts)


def _conjugated_gap(x: Vertex, y: Vertex):
    """Conjugate x to infinity; return (g, b) where the image of y lies
    strictly between b*lambda and (b+1)*lambda."""
    g = map_to_infinity(x)
    yu, yw = g.apply_proj(y.proj)
    if kernel.vec_is_zero(yw):
        raise InternalError("second vertex conjugated onto infinity")
    b = floor_lambda_units_proj(x.ctx, yu, yw)
    return g, b, (yu, yw)


def face_P(x: Vertex, y: Vertex) -> Face:
    """The unique face at x whose two x-neighbours separate y from x."""
    if x.ctx.q == INFINITY:
        raise ThetaUnsupportedError("the theta-group graph is a tree and has no faces")
    if x == y or adjacent(x, y):
        raise UndefinedParentsError("face lookup needs distinct, non-adjacent vertices")
    g, b, _ = _conjugated_gap(x, y)
    return _map_face(g.inverse(), face_of_fundamental(x.ctx, b))


def parents(x: Vertex, y: Vertex) -> tuple[Vertex, Vertex]:
    """The two y-parents (alpha, beta) of x.

    Conjugates x to infinity, where the parents are the multiples of lambda
    bracketing the image of y; alpha is the one on y's side of the opposite
    vertex of the face (equivalently: strictly nearest to the image, exact
    ties to the lesser).  Degenerate cases (x equal or adjacent to y) give
    (y, y); the tree case q = INFINITY has a single parent, returned twice.
    """
    ctx = x.ctx
    if x == y or adjacent(x, y):
        return (y, y)
    g, b, (yu, yw) = _conjugated_gap(x, y)
    lw = kernel.lambda_shift(yw, ctx.red)
    mid = ctx.sign_vec(
        kernel.vec_sub(kernel.vec_scale(yu, 2), kernel.vec_scale(lw, 2 * b + 1))
    ) * ctx.sign_vec(yw)
    alpha_b, beta_b = (b, b + 1) if mid <= 0 else (b + 1, b)
    gi = g.inverse()

    def pull_back(k: int) -> Vertex:
        lam_pair = (kernel.vec_scale(ctx.lambda_vec, k), ctx.one_vec)
        witness = t_b(ctx, k).inverse() @ g
        return Vertex.from_proj(ctx, *gi.apply_proj(lam_pair), to_inf=witness)

    alpha = pull_back(alpha_b)
    if ctx.q == INFINITY:
        return (alpha, alpha)
    return (alpha, pull_back(beta_b))


def phi(a: Vertex, b: Vertex, c: Vertex) -> int:
    """Turn number of the edge pair {a,b}, {b,c} around b: conjugate b to
    infinity and take the difference of the neighbour indices."""
    g = map_to_infinity(b)
    ctx = b.ctx
    ka = proj_lambda_multiple(ctx, *g.apply_proj(a.proj)) if not _maps_to_inf(g, a) else None
    kc = proj_lambda_multiple(ctx, *g.apply_proj(c.proj)) if not _maps_to_inf(g, c) else None
    if ka is None or kc is None:
        raise DomainError("turn number needs consecutive adjacent vertices")
    return kc - ka


def _maps_to_inf(g: GroupElement, v: Vertex) -> bool:
    return kernel.vec_is_zero(g.apply_proj(v.proj)[1])


class QChain:
    """The chain of faces separating two non-adjacent vertices, with the
    bridge edges crossed between consecutive faces."""

    __slots__ = ("faces", "bridges", "x", "y")

    def __init__(self, faces, bridges, x: Vertex, y: Vertex):
        self.faces = tuple(faces)
        self.bridges = tuple(bridges)
        self.x = x
        self.y = y

    def __len__(self):
        return len(self.faces)

    def vertex_set(self):
        seen = []
        for f in self.faces:
            for v in f.vertices:
                if v not in seen:
                    seen.append(v)
        return seen

    def to_json(self):
        return {
            "faces": [f.to_json() for f in self.faces],
            "bridges": [[u.to_json(), v.to_json()] for u, v in self.bridges],
            "x": self.x.to_json(),
            "y": self.y.to_json(),
        }


def _separating_edge(face: Face, y: Vertex):
    """The unique face edge whose endpoints cut y off from the rest of the
    face on the boundary circle (y is not a vertex of the face)."""
    for u, v in face.edges():
        t = next(w for w in face.vertices if w != u and w != v)
        side_y = cyclic_order(u.point, y.point, v.point)
        side_t = cyclic_order(u.point, t.point, v.point)
        if side_y != DEGENERATE and side_t != DEGENERATE and side_y != side_t:
            return u, v
    raise InternalError("no separating edge found")


def _face_across(face: Face, u: Vertex, v: Vertex) -> Face:
    """The other face incident to the edge {u, v}: map the edge onto the
    line between infinity and 0 and flip between the two faces there."""
    ctx = u.ctx
    g1 = map_to_infinity(u)
    k = proj_lambda_multiple(ctx, *g1.apply_proj(v.proj))
    if k is None:
        raise InternalError("bridge endpoints are not adjacent")
    h = tau_pow(ctx, -k) @ g1
    here = _map_face(h, face)
    f0 = face_of_fundamental(ctx, 0)
    fm1 = face_of_fundamental(ctx, -1)
    if here == f0:
        other = fm1
    elif here == fm1:
        other = f0
    else:
        raise InternalError("face does not touch its own edge after conjugation")
    return _map_face(h.inverse(), other)


def q_chain(x: Vertex, y: Vertex) -> QChain:
    """The unique chain of faces from x to y, built by repeatedly crossing
    the edge of the current face that separates y from it."""
    if x.ctx.q == INFINITY:
        raise ThetaUnsupportedError("the theta-group graph is a tree and has no face chains")
    if x == y or adjacent(x, y):
        raise EmptyChainError("chain needs distinct, non-adjacent endpoints")
    faces = [face_P(x, y)]
    bridges = []
    while y not in faces[-1]:
        if len(faces) > _CHAIN_CAP:
            raise InternalError("chain construction did not terminate")
        u, v = _separating_edge(faces[-1], y)
        bridges.append((u, v))
        faces.append(_face_across(faces[-1], u, v))
    return QChain(faces, bridges, x, y)


def chain_length_D(x: Vertex, y: Vertex) -> int:
    """0 for equal vertices, 1 for adjacent ones, otherwise the number of
    faces in the chain between them."""
    if x == y:
        return 0
    if adjacent(x, y):
        return 1
    return len(q_chain(x, y))
