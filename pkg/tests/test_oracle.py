from fractions import Fraction

import pytest

from rosencf import oracle
from rosencf.algebraic import INFINITY, FieldElement, make_context
from rosencf.cf import RosenCF, evaluate, fibonacci
from rosencf.errors import ThetaUnsupportedError
from rosencf.farey import Vertex, adjacent, chain_length_D, q_chain
from rosencf.moebius import from_cf


def inf_vert(ctx):
    return Vertex.infinity(ctx)


def random_vertex(ctx, rnd, max_len=5, span=3):
    from rosencf import kernel

    while True:
        bs = [rnd.randint(-span, span) for _ in range(rnd.randint(1, max_len))]
        g = from_cf(ctx, bs)
        if not kernel.vec_is_zero(g.m[2]):
            return Vertex.from_proj(ctx, g.m[0], g.m[2])


def bracket_vertex(ctx, n):
    return Vertex.from_value(-(n * FieldElement.lambda_(ctx)).invert())


class TestDistance:
    def test_zero_and_one(self):
        for q in (3, 5, INFINITY):
            ctx = make_context(q)
            v = Vertex.from_value(2 * FieldElement.lambda_(ctx))
            assert oracle.distance(v, v) == 0
            assert oracle.distance(inf_vert(ctx), v) == 1

    def test_modular_example(self):
        ctx = make_context(3)
        assert oracle.distance(inf_vert(ctx), Vertex.from_rational(ctx, Fraction(5, 7))) == 3

    @pytest.mark.parametrize("q", [4, 5, INFINITY])
    def test_metric_axioms_sampled(self, q, rng):
        ctx = make_context(q)
        vs = [random_vertex(ctx, rng, max_len=4) for _ in range(6)] + [inf_vert(ctx)]
        for a in vs:
            for b in vs:
                dab = oracle.distance(a, b)
                assert dab == oracle.distance(b, a)
                assert (dab == 0) == (a == b)
                for c in vs:
                    assert dab <= oracle.distance(a, c) + oracle.distance(c, b)


class TestChainGraph:
    def test_single_square(self):
        ctx = make_context(4)
        lam = FieldElement.lambda_(ctx)
        chain = q_chain(inf_vert(ctx), Vertex.from_value(lam / 2))
        g = oracle.chain_graph(chain)
        assert len(g.vertices) == 4
        assert len(g.edges) == 4

    def test_two_squares(self):
        ctx = make_context(4)
        chain = q_chain(inf_vert(ctx), bracket_vertex(ctx, 2))
        assert len(chain) == 2
        g = oracle.chain_graph(chain)
        assert len(g.vertices) == 6
        assert len(g.edges) == 7

    def test_three_pentagons(self):
        ctx = make_context(5)
        chain = q_chain(inf_vert(ctx), bracket_vertex(ctx, 3))
        assert len(chain) == 3
        g = oracle.chain_graph(chain)
        assert len(g.vertices) == 3 * 5 - 2 * 2
        # faces pairwise share exactly the bridge edges
        for i in range(2):
            shared = set(chain.faces[i].vertices) & set(chain.faces[i + 1].vertices)
            assert shared == set(chain.bridges[i])

    @pytest.mark.parametrize("q", [4, 5, 6])
    def test_vertex_count_bound(self, q, rng):
        ctx = make_context(q)
        done = 0
        while done < 5:
            y = random_vertex(ctx, rng)
            x = inf_vert(ctx)
            if x == y or adjacent(x, y):
                continue
            done += 1
            chain = q_chain(x, y)
            g = oracle.chain_graph(chain)
            assert len(g.vertices) <= len(chain) * (q - 2) + 2


class TestAllGeodesicPaths:
    def test_unique_bracket_path(self):
        ctx = make_context(5)
        for n in (2, 4, 7):
            paths = oracle.all_geodesic_paths(inf_vert(ctx), bracket_vertex(ctx, n))
            assert len(paths) == 1
            assert len(paths[0]) == 3  # infinity, 0, target

    def test_opposite_vertex_two_paths(self):
        ctx = make_context(4)
        y = Vertex.from_value(FieldElement.lambda_(ctx) / 2)
        paths = oracle.all_geodesic_paths(inf_vert(ctx), y)
        assert len(paths) == 2

    def test_trivial_cases(self):
        ctx = make_context(4)
        v = Vertex.from_rational(ctx, 0)
        assert oracle.all_geodesic_paths(v, v) == [(v,)]
        assert len(oracle.all_geodesic_paths(inf_vert(ctx), v)) == 1

    @pytest.mark.parametrize("q", [4, 5])
    def test_path_properties(self, q, rng):
        ctx = make_context(q)
        x = inf_vert(ctx)
        done = 0
        while done < 6:
            y = random_vertex(ctx, rng)
            if x == y or adjacent(x, y):
                continue
            done += 1
            d = oracle.distance(x, y)
            chain_vs = set(v.point for v in q_chain(x, y).vertex_set())
            paths = oracle.all_geodesic_paths(x, y)
            assert 1 <= len(paths) <= fibonacci(chain_length_D(x, y))
            for p in paths:
                assert p[0] == x and p[-1] == y
                assert len(p) == d + 1
                assert all(v.point in chain_vs for v in p)
                assert all(adjacent(u, v) for u, v in zip(p, p[1:]))
            assert len(set(p for p in paths)) == len(paths)

    def test_theta_unsupported(self):
        ctx = make_context(INFINITY)
        with pytest.raises(ThetaUnsupportedError):
            oracle.all_geodesic_paths(inf_vert(ctx), Vertex.from_rational(ctx, Fraction(1, 2)))


class TestIsGeodesicOracle:
    def test_examples(self):
        assert not oracle.is_geodesic_oracle(RosenCF(make_context(4), [2, 1, 1]))
        assert oracle.is_geodesic_oracle(RosenCF(make_context(6), [7]))
        assert not oracle.is_geodesic_oracle(RosenCF(make_context(3), [1, 0]))  # value infinity
