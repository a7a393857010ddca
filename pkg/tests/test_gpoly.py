import pytest
from hypothesis import given, settings, strategies as st

from ovaline.criteria import check_geometric
from ovaline.field_tower import make_field
from ovaline.fixtures import q16_example_coeffs
from ovaline.gpoly import (
    GCoeffs,
    SymmetryError,
    check_coeff_criterion,
    check_coeff_criterion_rho,
    circ_mul,
    circ_pow,
    corollary_support_filter,
    elementary_symmetric_check,
    evaluate_on_S,
    expand_circle_product,
    g_coeffs_to_table,
    g_table_to_coeffs,
    interpolate_on_S,
    rho_from_g,
)
from ovaline.plane import GTable, extract_g, monomial, normalize_g, opoly_k_points, points_from_g

from conftest import is_arc_bruteforce, k_mul


def horner(ctx, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = k_mul(ctx, acc, x) ^ c
    return acc


def naive_circ_mul(ctx, a, b):
    n = ctx.q + 1
    full = [0] * (2 * n)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            full[i + j] ^= k_mul(ctx, x, y)
    return [full[i] ^ full[i + n] for i in range(n)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_interpolation_roundtrip(m, data):
    ctx = make_field(m)
    vals = data.draw(st.lists(st.integers(0, ctx.q * ctx.q - 1), min_size=ctx.q + 1, max_size=ctx.q + 1))
    coeffs = interpolate_on_S(ctx, vals)
    assert [horner(ctx, coeffs, u) for u in ctx.unit_circle] == vals
    assert evaluate_on_S(ctx, coeffs) == vals


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_circulant_product_matches_convolution(m, data):
    ctx = make_field(m)
    n = ctx.q + 1
    elems = st.lists(st.integers(0, ctx.q * ctx.q - 1), min_size=n, max_size=n)
    a, b = data.draw(elems), data.draw(elems)
    assert circ_mul(ctx, a, b) == naive_circ_mul(ctx, a, b)


def test_circ_pow_matches_repeated_product():
    ctx = make_field(3)
    a = [3, 0, 17, 0, 0, 0, 5, 0, 9]
    p = [1] + [0] * 8
    for e in range(12):
        assert circ_pow(ctx, a, e) == p
        p = naive_circ_mul(ctx, p, a)
    with pytest.raises(ValueError):
        circ_pow(ctx, a, -1)


def test_circle_product_is_x_q1_minus_1(ctx):
    assert elementary_symmetric_check(ctx)
    p = expand_circle_product(ctx)
    assert p[0] == 1 and p[-1] == 1 and not any(p[1:-1])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_f_valued_tables_have_symmetric_coefficients(m, data):
    ctx = make_field(m)
    vals = tuple(data.draw(st.lists(st.integers(0, ctx.q - 1), min_size=ctx.q + 1, max_size=ctx.q + 1)))
    gc = g_table_to_coeffs(GTable(ctx, vals))  # validates symmetry on construction
    assert g_coeffs_to_table(gc).values == vals


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.data())
def test_symmetric_coefficients_give_f_values(m, data):
    ctx = make_field(m)
    a0 = data.draw(st.integers(0, ctx.q - 1))
    half = {t: data.draw(st.integers(0, ctx.q * ctx.q - 1)) for t in range(1, ctx.q // 2 + 1)}
    gc = GCoeffs.from_half(ctx, a0, half)
    vals = [horner(ctx, gc.a, u) for u in ctx.unit_circle]
    assert all(ctx.in_f(v) for v in vals)


def test_gcoeffs_validation():
    ctx = make_field(2)
    with pytest.raises(SymmetryError):
        GCoeffs(ctx, (1, 5, 0, 0, 5))
    with pytest.raises(SymmetryError):
        GCoeffs(ctx, (5, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        GCoeffs(ctx, (1, 0))
    with pytest.raises(ValueError):
        GCoeffs.from_half(ctx, 1, {3: 1})


def test_constant_one_coefficients(ctx):
    gc = g_table_to_coeffs(GTable.constant(ctx))
    assert gc.a == (1,) + (0,) * ctx.q
    assert check_coeff_criterion(gc).verdict


def test_coefficient_criteria_match_bruteforce(rng):
    for m in (2, 3):
        ctx = make_field(m)
        for _ in range(120):
            g = GTable(ctx, tuple(rng.randrange(1, ctx.q) for _ in range(ctx.q + 1)))
            truth = is_arc_bruteforce(ctx, points_from_g(g))
            assert check_coeff_criterion(g_table_to_coeffs(g)).verdict == truth
            assert check_coeff_criterion_rho(ctx, rho_from_g(g)).verdict == truth


@pytest.mark.parametrize("e", [2, 4, 6])
def test_hyperoval_coefficients_respect_support(e):
    ctx = make_field(3)
    g, _ = normalize_g(extract_g(ctx, opoly_k_points(ctx, monomial(e))))
    gc = g_table_to_coeffs(g)
    assert check_coeff_criterion(gc).verdict
    assert corollary_support_filter(gc)


def test_example_q16_fails_coefficient_criterion():
    ctx = make_field(4)
    gc = q16_example_coeffs(ctx)
    g = g_coeffs_to_table(gc)
    assert g.nonvanishing
    assert not check_coeff_criterion(gc).verdict
    assert not check_coeff_criterion_rho(ctx, rho_from_g(g)).verdict
    assert not corollary_support_filter(gc)
    assert not check_geometric(ctx, points_from_g(g)).verdict


def test_rho_requires_nonzero_values():
    ctx = make_field(2)
    with pytest.raises(ValueError):
        check_coeff_criterion_rho(ctx, [1, 0, 1, 1, 1])
