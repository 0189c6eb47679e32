import random
from fractions import Fraction

import pytest

from rosencf.algebraic import INFINITY, FieldElement, make_context


@pytest.fixture
def rng():
    return random.Random(20260810)


def random_element(ctx, rnd, span=10):
    num = tuple(rnd.randint(-span, span) for _ in range(ctx.degree))
    den = rnd.randint(1, span)
    return FieldElement(ctx, num, den)


def random_nonzero(ctx, rnd, span=10):
    while True:
        e = random_element(ctx, rnd, span)
        if not e.is_zero():
            return e


@pytest.fixture
def all_q():
    return [3, 4, 5, 6, 7, 8, INFINITY]


def frac_interval_contains(lo: Fraction, hi: Fraction, value: Fraction) -> bool:
    return lo <= value <= hi
