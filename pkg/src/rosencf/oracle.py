"""Independent brute-force ground truth: graph distances by iterating the
parent map, exhaustive geodesic-path enumeration inside face chains, and
the length-based geodesicity test.  Everything here avoids the pattern
machinery so it can arbitrate it."""

from __future__ import annotations

from .algebraic import INFINITY
from .errors import DomainError, InternalError, ThetaUnsupportedError
from .farey import QChain, Vertex, adjacent, parents, q_chain

_DIST_CAP = 1024
_CACHE_LIMIT = 3_000_000
_dist_cache: dict = {}


def distance(x: Vertex, y: Vertex, cap: int = _DIST_CAP) -> int:
    """Graph distance d_q(x, y): the number of alpha-parent steps needed to
    walk from x to y (0 when equal).  Memoized along the walk."""
    if x.ctx is not y.ctx:
        raise DomainError("vertices from different graphs")
    trail = []
    cur = x
    while True:
        if cur == y:
            base = 0
            break
        key = (cur.point, y.point)
        base = _dist_cache.get(key)
        if base is not None:
            break
        trail.append(key)
        if len(trail) > cap:
            raise InternalError("parent iteration exceeded the cap (bug or non-vertex)")
        cur = parents(cur, y)[0]
    if len(_dist_cache) > _CACHE_LIMIT:
        _dist_cache.clear()
    for i, key in enumerate(reversed(trail), start=1):
        _dist_cache[key] = base + i
    return base + len(trail)


class ChainGraph:
    """Finite plane graph of a face chain: deduplicated vertices, the union
    of the face boundary edges, and the endpoint indices."""

    __slots__ = ("vertices", "edges", "adjacency", "ix", "iy")

    def __init__(self, vertices, edges, ix: int, iy: int):
        self.vertices = vertices
        self.edges = edges
        self.adjacency = [[] for _ in vertices]
        for i, j in edges:
            self.adjacency[i].append(j)
            self.adjacency[j].append(i)
        self.ix = ix
        self.iy = iy

    def to_json(self):
        return {
            "vertices": [v.to_json() for v in self.vertices],
            "edges": sorted(self.edges),
            "endpoints": [self.ix, self.iy],
        }


def chain_graph(chain: QChain) -> ChainGraph:
    index: dict = {}
    vertices: list[Vertex] = []
    edges = set()
    for face in chain.faces:
        for v in face.vertices:
            if v.point not in index:
                index[v.point] = len(vertices)
                vertices.append(v)
        for u, v in face.edges():
            i, j = index[u.point], index[v.point]
            edges.add((min(i, j), max(i, j)))
    return ChainGraph(vertices, edges, index[chain.x.point], index[chain.y.point])


def all_geodesic_paths(x: Vertex, y: Vertex):
    """Every geodesic path from x to y, found by depth-first search over the
    chain graph with the exact remaining-distance bound as pruning."""
    if x.ctx.q == INFINITY:
        raise ThetaUnsupportedError("use the unique tree path for the theta group")
    if x == y:
        return [(x,)]
    if adjacent(x, y):
        return [(x, y)]
    graph = chain_graph(q_chain(x, y))
    d = distance(x, y)
    dist_y = [distance(v, y) for v in graph.vertices]
    paths = []
    path = [graph.ix]
    on_path = {graph.ix}

    def dfs(i: int, budget: int) -> None:
        if budget == 0:
            if i == graph.iy:
                paths.append(tuple(graph.vertices[k] for k in path))
            return
        for j in graph.adjacency[i]:
            if j not in on_path and dist_y[j] <= budget - 1:
                path.append(j)
                on_path.add(j)
                dfs(j, budget - 1)
                path.pop()
                on_path.remove(j)

    dfs(graph.ix, d)
    paths.sort(key=lambda p: tuple(v.sort_key() for v in p))
    return paths


def is_geodesic_oracle(cf) -> bool:
    """Minimality by definition: the expansion length equals the graph
    distance from infinity to the value."""
    from .cf import evaluate

    value = evaluate(cf)
    if value.is_infinity:
        return False  # any expansion of infinity revisits it
    ctx = cf.ctx
    return len(cf.coeffs) == distance(Vertex.infinity(ctx), Vertex(value))
