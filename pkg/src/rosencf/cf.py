"""Rosen continued fractions: evaluation, convergents, the correspondence
with paths in the Farey graph, the nearest-integer algorithm, geodesic
pattern testing, value-preserving rewrites toward geodesic form,
enumeration of all geodesic expansions, and infinite-expansion utilities.

A finite expansion [b_1, ..., b_n] denotes b_1*lambda - 1/(b_2*lambda - ...),
i.e. the image of infinity under T_{b_1} ... T_{b_n}.  Infinite expansions
are specified either by (preperiod, period) integer lists or, for library
use, by an arbitrary restartable coefficient stream.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import kernel
from ._patterns import PatternAutomaton, build_pattern_automaton, symbol_of
from .algebraic import INFINITY, FieldElement, QContext, lambda_multiple_of, make_context
from .errors import DomainError, InternalError, InvalidParameterError, ParseError
from .farey import Vertex, adjacent, phi, q_chain
from .moebius import BoundaryPoint, GroupElement, from_cf, ni_expansion_proj, proj_lambda_multiple

__all__ = [
    "RosenCF", "PathOfConvergents", "PatternAutomaton", "build_pattern_automaton",
    "evaluate", "convergents", "path_to_cf", "nearest_integer_expansion",
    "is_geodesic", "find_forbidden", "remove_zero", "insert_zero",
    "rewrite_ones_block", "insert_ones_block", "rewrite_interleaved_block",
    "reduce_to_geodesic", "enumerate_geodesic_expansions", "fibonacci",
    "infinite_convergents", "is_geodesic_infinite_prefix", "convergence_estimate",
    "parse_cf", "format_cf",
]


class RosenCF:
    """A finite coefficient sequence, or an infinite one given by a
    (preperiod, period) pair or a restartable stream."""

    __slots__ = ("ctx", "coeffs", "preperiod", "period", "_stream")

    def __init__(self, ctx: QContext, coeffs):
        coeffs = tuple(int(b) for b in coeffs)
        if not coeffs:
            raise InvalidParameterError("a finite expansion needs at least one coefficient")
        self.ctx = ctx
        self.coeffs = coeffs
        self.preperiod = None
        self.period = None
        self._stream = None

    @classmethod
    def periodic(cls, ctx: QContext, preperiod, period) -> "RosenCF":
        period = tuple(int(b) for b in period)
        if not period:
            raise InvalidParameterError("period must be nonempty")
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = None
        obj.preperiod = tuple(int(b) for b in preperiod)
        obj.period = period
        obj._stream = None
        return obj

    @classmethod
    def from_stream(cls, ctx: QContext, factory: Callable[[], Iterator[int]]) -> "RosenCF":
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.coeffs = None
        obj.preperiod = None
        obj.period = None
        obj._stream = factory
        return obj

    @property
    def is_finite(self) -> bool:
        return self.coeffs is not None

    def __len__(self):
        if not self.is_finite:
            raise InvalidParameterError("infinite expansion has no length")
        return len(self.coeffs)

    def coefficient_iter(self) -> Iterator[int]:
        if self.coeffs is not None:
            return iter(self.coeffs)
        if self._stream is not None:
            return iter(self._stream())
        return itertools.chain(self.preperiod, itertools.cycle(self.period))

    def prefix(self, n: int) -> list[int]:
        return list(itertools.islice(self.coefficient_iter(), n))

    def __eq__(self, other):
        if not isinstance(other, RosenCF):
            return NotImplemented
        if self.ctx is not other.ctx:
            return False
        if self.is_finite and other.is_finite:
            return self.coeffs == other.coeffs
        return self is other

    def __hash__(self):
        return hash((self.ctx.q, self.coeffs))

    def __repr__(self):
        return format_cf(self)

    def to_json(self):
        q = "inf" if self.ctx.q == INFINITY else self.ctx.q
        if self.is_finite:
            return {"q": q, "coeffs": list(self.coeffs)}
        if self.period is not None:
            return {"q": q, "preperiod": list(self.preperiod), "period": list(self.period)}
        return {"q": q, "stream": True}


class PathOfConvergents:
    """A path <inf, v_1, ..., v_n> in the Farey graph."""

    __slots__ = ("vertices",)

    def __init__(self, vertices, validate: bool = False):
        vertices = tuple(vertices)
        if not vertices or not vertices[0].is_infinity:
            raise DomainError("a path of convergents starts at infinity")
        if validate:
            for u, v in zip(vertices, vertices[1:]):
                if not adjacent(u, v):
                    raise DomainError("consecutive path vertices must be adjacent")
        self.vertices = vertices

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    @property
    def target(self) -> Vertex:
        return self.vertices[-1]

    def to_json(self):
        return [v.to_json() for v in self.vertices]


# ----------------------------------------------------------------------
# evaluation and the path correspondence

def _require_finite(cf: RosenCF):
    if not cf.is_finite:
        raise InvalidParameterError("operation needs a finite expansion")


def evaluate(cf: RosenCF) -> BoundaryPoint:
    """Exact value; infinity is a legal result."""
    _require_finite(cf)
    m = kernel.eval_cf_matrix(cf.coeffs, cf.ctx.red, cf.ctx.degree)
    return BoundaryPoint.from_proj(cf.ctx, m[0], m[2])


def convergents(cf: RosenCF) -> PathOfConvergents:
    """The path <inf, v_1, ..., v_n> of partial values."""
    _require_finite(cf)
    ctx = cf.ctx
    verts = [Vertex.infinity(ctx)]
    acc = GroupElement.identity(ctx)
    from .moebius import t_b

    for b in cf.coeffs:
        acc = acc @ t_b(ctx, b)
        verts.append(Vertex.from_proj(ctx, acc.m[0], acc.m[2], to_inf=acc.inverse()))
    return PathOfConvergents(verts)


def path_to_cf(path: PathOfConvergents) -> RosenCF:
    """The unique expansion whose convergents are the path vertices: the
    first coefficient reads off v_1, the rest are turn numbers."""
    vs = path.vertices
    if len(vs) < 2:
        raise DomainError("path must have at least one edge")
    ctx = vs[0].ctx
    if vs[1].is_infinity:
        raise DomainError("second path vertex cannot be infinity")
    k = proj_lambda_multiple(ctx, *vs[1].proj)
    if k is None:
        raise DomainError("second path vertex must be a multiple of lambda")
    coeffs = [k]
    for i in range(2, len(vs)):
        coeffs.append(phi(vs[i - 2], vs[i - 1], vs[i]))
    return RosenCF(ctx, coeffs)


def nearest_integer_expansion(y) -> RosenCF:
    """Expansion produced by repeatedly rounding to the nearest multiple of
    lambda (ties to the lesser); terminates exactly on vertices."""
    if isinstance(y, FieldElement):
        y = Vertex.from_value(y)
    elif isinstance(y, BoundaryPoint):
        y = Vertex(y)
    if y.is_infinity:
        raise DomainError("infinity has no nearest-integer expansion")
    coeffs = ni_expansion_proj(y.ctx, *y.proj)
    return RosenCF(y.ctx, coeffs)


# ----------------------------------------------------------------------
# geodesic testing

@dataclass(frozen=True)
class Occurrence:
    """A forbidden-pattern occurrence at coefficient positions start..end
    (1-based, inclusive)."""

    kind: str  # "zero" | "ones" | "interleaved"
    start: int
    end: int
    sign: int

    def pattern(self, coeffs) -> tuple[int, ...]:
        return tuple(coeffs[self.start - 1 : self.end])


def _family_r(ctx: QContext) -> int:
    return ctx.q // 2


def _run_length(coeffs, pos: int, value: int, limit: int) -> int:
    n = len(coeffs)
    count = 0
    while count < limit and pos + count <= n and coeffs[pos + count - 1] == value:
        count += 1
    return count


def _parse_interleaved(ctx: QContext, coeffs, i: int, s: int):
    """Match the parity-specific interleaved family starting at position i
    with sign s; returns the end position (inclusive) or None."""
    r = _family_r(ctx)
    n = len(coeffs)
    one, two = s, 2 * s

    def ones(pos, count):
        return _run_length(coeffs, pos, one, count) >= count

    def at(pos):
        return coeffs[pos - 1] if pos <= n else None

    j = i
    if not ones(j, r - 1):
        return None
    j += r - 1
    if at(j) != two:
        return None
    j += 1
    if ctx.q % 2 == 0:
        while j <= n:
            if ones(j, r - 1):
                return j + r - 2
            if ones(j, r - 2) and at(j + r - 2) == two:
                j += r - 1
                continue
            return None
        return None
    if not ones(j, r - 1) or at(j + r - 1) != two:
        return None
    j += r
    while j <= n:
        if ones(j, r - 1):
            return j + r - 2
        if not (ones(j, r - 2) and at(j + r - 2) == two):
            return None
        j += r - 1
        if not ones(j, r - 1):
            return None
        j += r - 1
        if at(j) != two:
            return None
        j += 1
    return None


def find_forbidden(ctx: QContext, coeffs):
    """Leftmost forbidden occurrence in b_2..b_n, or None.  This direct
    matcher is kept independent of the automaton; the two must agree."""
    if ctx.q == 3:
        raise InvalidParameterError("no pattern characterization is used for q=3")
    n = len(coeffs)
    for i in range(2, n + 1):
        b = coeffs[i - 1]
        if b == 0:
            return Occurrence("zero", i, i, 0)
        if ctx.q == INFINITY or b not in (1, -1):
            continue
        s = b
        r = _family_r(ctx)
        if _run_length(coeffs, i, s, r) >= r:
            return Occurrence("ones", i, i + r - 1, s)
        end = _parse_interleaved(ctx, coeffs, i, s)
        if end is not None:
            return Occurrence("interleaved", i, end, s)
    return None


def is_geodesic(cf: RosenCF) -> bool:
    """Shortest-expansion test.  Uses the forbidden-pattern automaton for
    q >= 4 and for the theta group; q = 3 falls back to the length oracle."""
    _require_finite(cf)
    if cf.ctx.q == 3:
        from .oracle import is_geodesic_oracle

        return is_geodesic_oracle(cf)
    automaton = build_pattern_automaton(cf.ctx)
    return not automaton.scan(cf.coeffs[1:])


def is_geodesic_infinite_prefix(cf: RosenCF, n: int) -> bool:
    """Stream the automaton over the first n coefficients (skipping the
    first, which is never constrained)."""
    if cf.ctx.q == 3:
        raise InvalidParameterError("no pattern characterization is used for q=3")
    automaton = build_pattern_automaton(cf.ctx)
    return not automaton.scan(cf.prefix(n)[1:])


# ----------------------------------------------------------------------
# value-preserving rewrites

def remove_zero(coeffs, i: int):
    """(..., a, 0, c, ...) -> (..., a+c, ...) at 1-based position i of the
    zero, 2 <= i <= n-1."""
    coeffs = tuple(coeffs)
    n = len(coeffs)
    if not (2 <= i <= n - 1):
        raise InvalidParameterError("zero removal needs an interior position")
    if coeffs[i - 1] != 0:
        raise InvalidParameterError(f"coefficient at position {i} is not zero")
    return coeffs[: i - 2] + (coeffs[i - 2] + coeffs[i],) + coeffs[i + 1 :]


def insert_zero(coeffs, i: int, left: int):
    """Inverse of removal: split coefficient i as left + rest around a zero."""
    coeffs = tuple(coeffs)
    if not (1 <= i <= len(coeffs)):
        raise InvalidParameterError("position out of range")
    return coeffs[: i - 1] + (left, 0, coeffs[i - 1] - left) + coeffs[i:]


def _drop_trailing_backtrack(coeffs):
    # (..., a, 0) revisits the vertex two steps back; both coefficients go
    return tuple(coeffs)[:-2]


def rewrite_ones_block(ctx: QContext, coeffs, i: int, sign: int = 1):
    """Shorten around a block of r like-signed ones at positions i+1..i+r.

    Even q drops two coefficients, odd q drops one (the short way around a
    single face saves two edges when q = 2r but only one when q = 2r+1).
    The value is preserved exactly.
    """
    coeffs = tuple(coeffs)
    r = _family_r(ctx)
    n = len(coeffs)
    if i < 1 or i + r > n:
        raise InvalidParameterError("block out of range")
    if any(coeffs[k] != sign for k in range(i, i + r)):
        raise InvalidParameterError(f"no {sign:+d} ones block at positions {i + 1}..{i + r}")
    fill = r - 2 if ctx.q % 2 == 0 else r - 1
    head = coeffs[: i - 1] + (coeffs[i - 1] - sign,) + (-sign,) * fill
    if i + r == n:
        return head
    return head + (coeffs[i + r] - sign,) + coeffs[i + r + 1 :]


def insert_ones_block(ctx: QContext, coeffs, i: int, sign: int = 1):
    """Inverse of the ones-block rewrite; used to fuzz non-geodesic inputs."""
    coeffs = tuple(coeffs)
    r = _family_r(ctx)
    fill = r - 2 if ctx.q % 2 == 0 else r - 1
    n = len(coeffs)
    if i < 1 or i + fill > n:
        raise InvalidParameterError("block out of range")
    if any(coeffs[k] != -sign for k in range(i, i + fill)):
        raise InvalidParameterError("no fill block to expand")
    head = coeffs[: i - 1] + (coeffs[i - 1] + sign,) + (sign,) * r
    if i + fill == n:
        return head
    return head + (coeffs[i + fill] + sign,) + coeffs[i + fill + 1 :]


def rewrite_interleaved_block(ctx: QContext, coeffs, i: int, j: int, sign: int = 1):
    """Shorten around an interleaved pattern at positions i+1..j, replacing
    the long outer route of a face chain by the short one.  Value preserved
    exactly; even q shortens by two, odd q by one."""
    coeffs = tuple(coeffs)
    n = len(coeffs)
    if i < 1 or j > n:
        raise InvalidParameterError("block out of range")
    block = coeffs[i : j]
    probe = find_forbidden(ctx, (9,) + tuple(sign * b for b in block))
    if probe is None or probe.kind != "interleaved" or (probe.start, probe.end) != (2, j - i + 1):
        raise InvalidParameterError("no interleaved pattern at the given positions")
    r = _family_r(ctx)
    twos = sum(1 for b in block if b == 2 * sign)
    if ctx.q % 2 == 0:
        starred = ((( -sign,) * (r - 2)) + (-2 * sign,)) * twos + (-sign,) * (r - 2)
    else:
        k = (twos - 2) // 2
        unit = (-sign,) * (r - 1) + (-2 * sign,) + (-sign,) * (r - 2) + (-2 * sign,)
        starred = unit * (k + 1) + (-sign,) * (r - 1)
    head = coeffs[: i - 1] + (coeffs[i - 1] - sign,) + starred
    if j == n:
        return head
    return head + (coeffs[j] - sign,) + coeffs[j + 1 :]


def reduce_to_geodesic(cf: RosenCF) -> RosenCF:
    """Apply removal rewrites, leftmost first, until no forbidden pattern
    remains; the result is a geodesic expansion of the same value."""
    _require_finite(cf)
    ctx = cf.ctx
    if ctx.q == 3:
        raise InvalidParameterError("reduction uses the pattern families, unavailable for q=3")
    if evaluate(cf).is_infinity:
        raise DomainError("infinity has no geodesic expansion")
    coeffs = cf.coeffs
    for _ in range(2 * len(coeffs) + 4):
        occ = find_forbidden(ctx, coeffs)
        if occ is None:
            return RosenCF(ctx, coeffs)
        if occ.kind == "zero":
            if occ.start == len(coeffs):
                coeffs = _drop_trailing_backtrack(coeffs)
            else:
                coeffs = remove_zero(coeffs, occ.start)
        elif occ.kind == "ones":
            coeffs = rewrite_ones_block(ctx, coeffs, occ.start - 1, occ.sign)
        else:
            coeffs = rewrite_interleaved_block(ctx, coeffs, occ.start - 1, occ.end, occ.sign)
    raise InternalError("reduction did not terminate")


# ----------------------------------------------------------------------
# enumeration of geodesic expansions

def fibonacci(n: int) -> int:
    """Shifted Fibonacci sequence 1, 2, 3, 5, 8, ... used for path bounds."""
    if n < 0:
        raise InvalidParameterError("index must be nonnegative")
    a, b = 1, 2
    for _ in range(n):
        a, b = b, a + b
    return a


def enumerate_geodesic_expansions(y) -> list[RosenCF]:
    """All shortest expansions of a vertex, by exhaustive search over paths
    inside the chain of faces from infinity to the vertex (every geodesic
    path stays inside it).  The theta-group graph is a tree, so there the
    unique expansion is the nearest-integer one."""
    if isinstance(y, FieldElement):
        y = Vertex.from_value(y)
    ctx = y.ctx
    if y.is_infinity:
        raise DomainError("infinity has no geodesic expansion")
    if ctx.q == INFINITY:
        return [nearest_integer_expansion(y)]
    from .oracle import distance

    inf_v = Vertex.infinity(ctx)
    d = distance(inf_v, y)
    if d == 1:
        k = proj_lambda_multiple(ctx, *y.proj)
        if k is None:
            raise InternalError("vertex at distance one is not a multiple of lambda")
        return [RosenCF(ctx, (k,))]
    chain = q_chain(inf_v, y)
    verts = chain.vertex_set()
    index = {v.point: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = [[False] * n for _ in range(n)]
    for face in chain.faces:
        for u, v in face.edges():
            iu, iv = index[u.point], index[v.point]
            adj[iu][iv] = adj[iv][iu] = True
    for iu in range(n):
        for iv in range(iu + 1, n):
            if not adj[iu][iv] and adjacent(verts[iu], verts[iv]):
                adj[iu][iv] = adj[iv][iu] = True
    dist_y = [distance(v, y) for v in verts]
    start, goal = index[inf_v.point], index[y.point]
    found = []
    path = [start]
    on_path = {start}

    def dfs(i: int, budget: int) -> None:
        if budget == 0:
            if i == goal:
                found.append(tuple(path))
            return
        for j in range(n):
            if adj[i][j] and j not in on_path and dist_y[j] <= budget - 1:
                path.append(j)
                on_path.add(j)
                dfs(j, budget - 1)
                path.pop()
                on_path.remove(j)

    dfs(start, d)
    out = [path_to_cf(PathOfConvergents([verts[i] for i in p])) for p in found]
    out.sort(key=lambda c: c.coeffs)
    return out


# ----------------------------------------------------------------------
# infinite expansions

def infinite_convergents(cf: RosenCF, n: int) -> list[BoundaryPoint]:
    """First n convergents of an infinite (or finite) expansion, exact."""
    ctx = cf.ctx
    from .moebius import t_b

    out = []
    acc = GroupElement.identity(ctx)
    for b in itertools.islice(cf.coefficient_iter(), n):
        acc = acc @ t_b(ctx, b)
        out.append(BoundaryPoint.from_proj(ctx, acc.m[0], acc.m[2]))
    return out


@dataclass
class ConvergenceReport:
    converged: bool
    terms_used: int
    interval: tuple[Fraction, Fraction] | None
    repeated_convergent: tuple[int, int] | None  # 1-based indices of an exact repeat

    @property
    def diverged(self) -> bool:
        return not self.converged


def convergence_estimate(cf: RosenCF, tol, max_n: int = 1000) -> ConvergenceReport:
    """Walk convergents until two successive finite values agree within tol
    (exactly tested), reporting an enclosing interval for the last one, and
    flag any exactly repeated convergent seen on the way (the witness that
    the expansion cannot converge elsewhere)."""
    tol = Fraction(tol) if not isinstance(tol, float) else Fraction(str(tol))
    if tol <= 0:
        raise InvalidParameterError("tolerance must be positive")
    ctx = cf.ctx
    from .moebius import t_b

    bits = (tol.denominator // max(tol.numerator, 1)).bit_length() + 2
    acc = GroupElement.identity(ctx)
    prev: BoundaryPoint | None = None
    seen: dict = {}
    repeated = None
    count = 0
    for b in itertools.islice(cf.coefficient_iter(), max_n):
        acc = acc @ t_b(ctx, b)
        cur = BoundaryPoint.from_proj(ctx, acc.m[0], acc.m[2])
        count += 1
        if repeated is None:
            if cur in seen:
                repeated = (seen[cur], count)
            else:
                seen[cur] = count
        if prev is not None and not prev.is_infinity and not cur.is_infinity:
            diff = cur.value - prev.value
            if (diff - tol).sign() <= 0 and (diff + tol).sign() >= 0:
                lo1, hi1 = cur.value.approximate(bits)
                lo2, hi2 = prev.value.approximate(bits)
                return ConvergenceReport(True, count, (min(lo1, lo2), max(hi1, hi2)), repeated)
        prev = cur
    interval = None
    if prev is not None and not prev.is_infinity:
        interval = prev.value.approximate(bits)
    return ConvergenceReport(False, count, interval, repeated)


# ----------------------------------------------------------------------
# text format: "q=5 [1,2,-1]", "q=inf [2,0,2]", periodic "q=4 [2;(2)]"

_CF_RE = re.compile(
    r"^\s*q\s*=\s*(?P<q>inf|\d+)\s*(?P<body>\[.*\])\s*$", re.IGNORECASE
)


def parse_cf(text: str) -> RosenCF:
    m = _CF_RE.match(text)
    if not m:
        raise ParseError("expected 'q=<n> [coefficients]'", 0)
    qs = m.group("q").lower()
    ctx = make_context(INFINITY if qs == "inf" else int(qs))
    return parse_coeff_body(ctx, m.group("body"), offset=m.start("body"))


def parse_coeff_body(ctx: QContext, body: str, offset: int = 0) -> RosenCF:
    body = body.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("coefficients must be bracketed", offset)
    inner = body[1:-1].strip()
    if ";" in inner:
        pre_s, _, per_s = inner.partition(";")
        per_s = per_s.strip()
        if not (per_s.startswith("(") and per_s.endswith(")")):
            raise ParseError("period must be parenthesized", offset + body.find(";"))
        pre = _parse_int_list(pre_s, offset + 1, allow_empty=True)
        per = _parse_int_list(per_s[1:-1], offset + body.find("(") + 1)
        return RosenCF.periodic(ctx, pre, per)
    return RosenCF(ctx, _parse_int_list(inner, offset + 1))


def _parse_int_list(s: str, offset: int, allow_empty: bool = False) -> list[int]:
    s = s.strip()
    if not s:
        if allow_empty:
            return []
        raise ParseError("empty coefficient list", offset)
    out = []
    pos = offset
    for part in s.split(","):
        token = part.strip()
        try:
            out.append(int(token))
        except ValueError:
            raise ParseError(f"bad integer {token!r}", pos) from None
        pos += len(part) + 1
    return out


def format_cf(cf: RosenCF) -> str:
    q = "inf" if cf.ctx.q == INFINITY else str(cf.ctx.q)
    if cf.is_finite:
        return f"q={q} [{','.join(str(b) for b in cf.coeffs)}]"
    if cf.period is not None:
        pre = ",".join(str(b) for b in cf.preperiod)
        per = ",".join(str(b) for b in cf.period)
        return f"q={q} [{pre};({per})]"
    return f"q={q} [<stream>]"
