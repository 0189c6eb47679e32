from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rosencf.algebraic import INFINITY, FieldElement, make_context
from rosencf.errors import ContextMismatchError, InvalidParameterError
from rosencf.moebius import (
    ANTICLOCKWISE,
    CLOCKWISE,
    DEGENERATE,
    BoundaryPoint,
    GroupElement,
    cyclic_order,
    from_cf,
    generator,
    ni_expansion_proj,
    projectively_equal,
    rho,
    sigma,
    t_b,
    tau,
    tau_pow,
    projectively_equal as proj_eq,
)


def pt(ctx, value):
    return BoundaryPoint.from_value(FieldElement.from_rational(ctx, Fraction(value)))


def inf(ctx):
    return BoundaryPoint.infinity(ctx)


def lam_pt(ctx, k=1):
    return BoundaryPoint.from_value(k * FieldElement.lambda_(ctx))


class TestGenerators:
    def test_t0_is_sigma(self):
        ctx = make_context(5)
        assert t_b(ctx, 0) == sigma(ctx)

    def test_rho_sends_infinity_to_lambda(self):
        ctx = make_context(7)
        image = rho(ctx).apply(inf(ctx))
        assert image.value == FieldElement.lambda_(ctx)

    @pytest.mark.parametrize("b", [-3, 0, 2, 11])
    def test_tb_determinant(self, b):
        ctx = make_context(4)
        from rosencf import kernel

        assert kernel.mat_det(t_b(ctx, b).m, ctx.red) == ctx.one_vec

    def test_generator_dispatch(self):
        ctx = make_context(4)
        assert generator(ctx, "rho") == tau(ctx) @ sigma(ctx)
        with pytest.raises(InvalidParameterError):
            generator(ctx, "nope")


class TestRelations:
    @pytest.mark.parametrize("q", [3, 4, 5, 6, 7, 8])
    def test_sigma_squared_is_projective_identity(self, q):
        ctx = make_context(q)
        s = sigma(ctx)
        assert projectively_equal(s @ s, GroupElement.identity(ctx))

    @pytest.mark.parametrize("q", [3, 4, 5, 6, 7, 8, 9, 12])
    def test_rho_order_q(self, q):
        ctx = make_context(q)
        r = rho(ctx)
        acc = GroupElement.identity(ctx)
        for _ in range(q):
            acc = acc @ r
        assert projectively_equal(acc, GroupElement.identity(ctx))
        # no smaller power is the identity
        acc = GroupElement.identity(ctx)
        for _ in range(q - 1):
            acc = acc @ r
            assert not projectively_equal(acc, GroupElement.identity(ctx))

    def test_inverse_tau_on_lambda(self):
        ctx = make_context(6)
        assert tau(ctx).inverse().apply(lam_pt(ctx)).value.is_zero()


class TestApply:
    def test_sigma_at_infinity(self):
        ctx = make_context(5)
        assert sigma(ctx).apply(inf(ctx)).value.is_zero()

    def test_tau_at_zero(self):
        ctx = make_context(5)
        assert tau(ctx).apply(pt(ctx, 0)) == lam_pt(ctx)

    def test_tb_at_infinity(self):
        ctx = make_context(4)
        assert t_b(ctx, 3).apply(inf(ctx)) == lam_pt(ctx, 3)

    def test_pole_maps_to_infinity(self):
        ctx = make_context(3)
        assert sigma(ctx).apply(pt(ctx, 0)).is_infinity

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=5),
           st.lists(st.integers(-3, 3), min_size=1, max_size=5),
           st.integers(-5, 5))
    def test_apply_is_homomorphism(self, bs1, bs2, x):
        ctx = make_context(5)
        g = from_cf(ctx, bs1)
        h = from_cf(ctx, bs2)
        p = pt(ctx, x)
        assert (g @ h).apply(p) == g.apply(h.apply(p))


class TestFromCf:
    def test_single(self):
        ctx = make_context(7)
        assert from_cf(ctx, [4]) == t_b(ctx, 4)

    def test_sqrt2_example(self):
        ctx = make_context(4)
        value = from_cf(ctx, [2, 1, 1]).apply(inf(ctx))
        assert value.value == FieldElement.lambda_(ctx)

    def test_rational_example(self):
        ctx = make_context(3)
        value = from_cf(ctx, [1, 3, -2]).apply(inf(ctx))
        assert value.value == FieldElement.from_rational(ctx, Fraction(5, 7))

    def test_empty_rejected(self):
        with pytest.raises(InvalidParameterError):
            from_cf(make_context(4), [])


class TestCyclicOrder:
    def test_examples(self):
        ctx = make_context(3)
        assert cyclic_order(pt(ctx, 0), pt(ctx, 1), inf(ctx)) == ANTICLOCKWISE
        assert cyclic_order(inf(ctx), pt(ctx, 1), pt(ctx, 0)) == CLOCKWISE
        assert cyclic_order(pt(ctx, 2), pt(ctx, 2), pt(ctx, 0)) == DEGENERATE

    def test_rotation_invariance(self):
        ctx = make_context(5)
        a, b, c = pt(ctx, -2), pt(ctx, Fraction(1, 3)), lam_pt(ctx)
        assert cyclic_order(a, b, c) == cyclic_order(b, c, a) == cyclic_order(c, a, b)
        assert cyclic_order(a, b, c) == -cyclic_order(c, b, a)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(-2, 2), min_size=1, max_size=4),
           st.integers(-4, 4), st.integers(-4, 4))
    def test_group_invariance(self, bs, x, y):
        ctx = make_context(4)
        g = from_cf(ctx, bs)
        trips = [pt(ctx, x), pt(ctx, y), inf(ctx)]
        before = cyclic_order(*trips)
        after = cyclic_order(*(g.apply(p) for p in trips))
        assert before == after

    def test_reflection_reverses(self):
        ctx = make_context(5)
        a, b, c = pt(ctx, -1), pt(ctx, 2), inf(ctx)
        assert cyclic_order(a.negate(), b.negate(), c.negate()) == -cyclic_order(a, b, c)

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatchError):
            cyclic_order(pt(make_context(4), 0), pt(make_context(5), 1), pt(make_context(5), 2))


class TestProjectiveEquality:
    def test_reflexive(self):
        g = from_cf(make_context(5), [1, 2])
        assert projectively_equal(g, g)

    def test_sigma_squared_vs_identity(self):
        ctx = make_context(8)
        assert projectively_equal(sigma(ctx) @ sigma(ctx), GroupElement.identity(ctx))

    def test_distinct(self):
        ctx = make_context(4)
        assert not projectively_equal(sigma(ctx), tau(ctx))


class TestWordIdentities:
    """Exact projective matrix identities behind the geodesic rewrites."""

    @pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
    def test_ones_block_even(self, r):
        ctx = make_context(2 * r)
        lhs = GroupElement.identity(ctx)
        for _ in range(r):
            lhs = lhs @ t_b(ctx, 1)
        rhs = sigma(ctx) @ tau_pow(ctx, -1) @ sigma(ctx)
        for _ in range(r - 2):
            rhs = rhs @ t_b(ctx, -1)
        rhs = rhs @ tau_pow(ctx, -1)
        assert projectively_equal(lhs, rhs)

    @pytest.mark.parametrize("r", [2, 3, 4])
    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_interleaved_block_even(self, r, k):
        ctx = make_context(2 * r)

        def tpow(b, n):
            acc = GroupElement.identity(ctx)
            for _ in range(n):
                acc = acc @ t_b(ctx, b)
            return acc

        lhs = tpow(1, r - 1)
        for _ in range(k):
            lhs = lhs @ t_b(ctx, 2) @ tpow(1, r - 2)
        lhs = lhs @ t_b(ctx, 2) @ tpow(1, r - 1)
        rhs = sigma(ctx) @ tau_pow(ctx, -1) @ sigma(ctx)
        for _ in range(k + 1):
            rhs = rhs @ tpow(-1, r - 2) @ t_b(ctx, -2)
        rhs = rhs @ tpow(-1, r - 2) @ tau_pow(ctx, -1)
        assert projectively_equal(lhs, rhs)

    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_ones_block_odd(self, r):
        ctx = make_context(2 * r + 1)
        lhs = GroupElement.identity(ctx)
        for _ in range(r):
            lhs = lhs @ t_b(ctx, 1)
        rhs = sigma(ctx) @ tau_pow(ctx, -1) @ sigma(ctx)
        for _ in range(r - 1):
            rhs = rhs @ t_b(ctx, -1)
        rhs = rhs @ tau_pow(ctx, -1)
        assert projectively_equal(lhs, rhs)

    @pytest.mark.parametrize("r", [2, 3, 4])
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_interleaved_block_odd(self, r, k):
        ctx = make_context(2 * r + 1)

        def tpow(b, n):
            acc = GroupElement.identity(ctx)
            for _ in range(n):
                acc = acc @ t_b(ctx, b)
            return acc

        lhs = tpow(1, r - 1)
        for _ in range(k):
            lhs = lhs @ t_b(ctx, 2) @ tpow(1, r - 1) @ t_b(ctx, 2) @ tpow(1, r - 2)
        lhs = lhs @ t_b(ctx, 2) @ tpow(1, r - 1) @ t_b(ctx, 2) @ tpow(1, r - 1)
        rhs = sigma(ctx) @ tau_pow(ctx, -1) @ sigma(ctx)
        for _ in range(k + 1):
            rhs = rhs @ tpow(-1, r - 1) @ t_b(ctx, -2) @ tpow(-1, r - 2) @ t_b(ctx, -2)
        rhs = rhs @ tpow(-1, r - 1) @ tau_pow(ctx, -1)
        assert projectively_equal(lhs, rhs)

    def test_zero_merge(self):
        ctx = make_context(5)
        lhs = t_b(ctx, 2) @ t_b(ctx, 0) @ t_b(ctx, 3)
        assert projectively_equal(lhs, t_b(ctx, 5))


class TestNiExpansionProj:
    def test_multiple_of_lambda(self):
        ctx = make_context(6)
        lam = FieldElement.lambda_(ctx)
        p = BoundaryPoint.from_value(4 * lam)
        assert ni_expansion_proj(ctx, *p.proj) == [4]

    def test_five_sevenths(self):
        ctx = make_context(3)
        p = pt(ctx, Fraction(5, 7))
        assert ni_expansion_proj(ctx, *p.proj) == [1, 3, -2]
