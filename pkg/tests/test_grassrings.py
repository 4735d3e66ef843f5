import pytest

from catsl2.exactpoly import Polynomial, homogeneous_degree
from catsl2.grassrings import (
    GrassContext,
    StepRing,
    bubble_value,
    check_series_identity,
    special_class,
)


def test_context_basics():
    ctx = GrassContext(4, 1)
    assert ctx.n == -2
    assert ctx.x(0) == Polynomial.one()
    assert ctx.x(2).is_zero()          # out of range for k=1
    assert ctx.y(3).render() == "y[3]@-2"
    assert ctx.y(4).is_zero()
    with pytest.raises(ValueError):
        GrassContext(3, 4)
    with pytest.raises(ValueError):
        GrassContext(0, 0)


def test_special_class_base_cases():
    ctx = GrassContext(3, 1)
    assert special_class(ctx, "X", 0) == Polynomial.one()
    assert special_class(ctx, "Y", 0) == Polynomial.one()
    assert special_class(ctx, "X", -2).is_zero()
    assert special_class(ctx, "Y", -1).is_zero()


def test_special_class_small_values():
    ctx = GrassContext(4, 3)
    x1, x2, x3 = ctx.x(1), ctx.x(2), ctx.x(3)
    assert special_class(ctx, "Y", 1) == -x1
    assert special_class(ctx, "Y", 2) == x1 ** 2 - x2
    assert special_class(ctx, "Y", 3) == 2 * x1 * x2 - x1 ** 3 - x3


def test_special_class_collapses_at_k0():
    ctx = GrassContext(2, 0)
    for beta in range(1, 6):
        assert special_class(ctx, "Y", beta).is_zero()
    # dually, X collapses when there are no y generators
    top = GrassContext(2, 2)
    for alpha in range(1, 6):
        assert special_class(top, "X", alpha).is_zero()


def test_special_class_homogeneous():
    for N in range(1, 5):
        for k in range(0, N + 1):
            ctx = GrassContext(N, k)
            for alpha in range(0, 2 * N + 5):
                for family in ("X", "Y"):
                    value = special_class(ctx, family, alpha)
                    assert value.is_zero() or homogeneous_degree(value) == 2 * alpha


def test_bubble_values():
    ctx = GrassContext(4, 2)
    assert bubble_value(ctx, "cw", 0) == Polynomial.one()
    assert bubble_value(ctx, "ccw", 0) == Polynomial.one()
    assert bubble_value(ctx, "cw", -1).is_zero()
    assert bubble_value(ctx, "ccw", -1).is_zero()
    # expand -(Y_1 + y_1 Y_0) by the recursion
    assert bubble_value(ctx, "cw", 1) == ctx.x(1) - ctx.y(1)
    assert bubble_value(ctx, "ccw", 1) == ctx.y(1) - ctx.x(1)


def test_bubble_degenerate_contexts():
    # k = N: no y generators, the clockwise degree-2 bubble is x_1
    top = GrassContext(3, 3)
    assert bubble_value(top, "cw", 1) == top.x(1)
    # k = 0: counterclockwise degree-2 bubble is y_1
    bottom = GrassContext(3, 0)
    assert bubble_value(bottom, "ccw", 1) == bottom.y(1)


def test_bubble_homogeneity():
    for N in (1, 2, 3):
        for k in range(0, N + 1):
            ctx = GrassContext(N, k)
            for alpha in range(0, 2 * N + 1):
                for orientation in ("cw", "ccw"):
                    value = bubble_value(ctx, orientation, alpha)
                    assert value.is_zero() or homogeneous_degree(value) == 2 * alpha


def test_series_identities():
    ok, report = check_series_identity(GrassContext(2, 1), "xY", 6)
    assert ok, report
    ok, report = check_series_identity(GrassContext(1, 0), "Xy", 4)
    assert ok, report
    ok, report = check_series_identity(GrassContext(3, 2), "bubble_product", 0)
    assert ok, report
    for N in (1, 2, 3, 4):
        for k in range(0, N + 1):
            ok, report = check_series_identity(GrassContext(N, k),
                                               "bubble_product", 2 * N)
            assert ok, report


def test_step_ring_embeddings():
    ring = StepRing(3, 1)          # pair {1, 2}, nu = -1
    # exchange relations for the two end rings
    assert ring.embed_upper_x(1) == ring.x(1) + ring.xi()
    assert ring.embed_upper_x(2) == ring.x(1) * ring.xi()   # x[2]@-1 vanishes
    assert ring.embed_lower_y(2) == ring.y(2) + ring.y(1) * ring.xi()
    assert ring.embed_lower_y(3) == ring.y(2) * ring.xi()   # top y of the lower ring
    with pytest.raises(ValueError):
        ring.embed_end(ring.x(1).symbols().pop(), "upper")


def test_step_ring_expansions_invert_embeddings():
    # substituting the exchange relation into the alternating expansion
    # recovers the generator
    for N in (2, 3):
        for j in range(0, N):
            ring = StepRing(N, j)
            for t in range(0, j + 1):
                expansion = ring.lower_x_expansion(t)
                table = {s: ring.embed_upper_x(s.index)
                         for s in expansion.symbols() if s.kind == 0}
                assert expansion.substitute(table) == ring.x(t)
