import math

import pytest
from hypothesis import given, settings, strategies as st

from ovaline.criteria import (
    check_bracket_power_sum,
    check_even_solution,
    check_geometric,
    check_power_sum,
    compute_exponent_sets,
    coset_min,
    is_super_vandermonde,
    is_vandermonde,
    power_sum,
    power_sum_reject,
)
from ovaline.field_tower import make_field
from ovaline.plane import (
    Affine,
    GTable,
    extract_g,
    monomial,
    normalize_g,
    opoly_k_points,
    points_from_g,
)

from conftest import is_arc_bruteforce, k_mul

TABLE = {
    4: [1],
    8: [1, 3, 5],
    16: [1, 3, 5, 7, 9, 11, 13, 37],
    32: [1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 69, 73, 77, 85, 89, 147],
    64: list(range(1, 62, 2)) + [133, 137, 141, 145, 149, 153, 157, 165, 169, 173, 177, 181, 185,
                                 275, 281, 283, 291, 297, 299, 307, 313, 409, 425, 661],
    128: list(range(1, 126, 2)) + [
        261, 265, 269, 273, 277, 281, 285, 289, 293, 297, 301, 305, 309, 313, 317, 325, 329, 333,
        337, 341, 345, 349, 353, 357, 361, 365, 369, 373, 377, 529, 531, 537, 539, 547, 553, 555,
        561, 563, 569, 571, 579, 585, 587, 593, 595, 601, 603, 611, 617, 619, 625, 627, 633, 785,
        793, 809, 817, 825, 841, 849, 857, 873, 881, 1093, 1095, 1107, 1109, 1111, 1123, 1125,
        1127, 1139, 1141, 1301, 1317, 1333, 1365, 1381, 1587, 1619, 2341, 2349, 2381, 2405],
}


def dset_bruteforce(q):
    n = q * q - 1
    D = {i * q + k - i for k in range(1, q - 1) for i in range((k - 1) // 2 + 1)
         if math.comb(k, i) % 2}
    reps = set()
    for d in D:
        orbit, x = set(), d
        while x not in orbit:
            orbit.add(x)
            x = 2 * x % n
        reps.add(min(orbit))
    return sorted(reps)


@pytest.mark.parametrize("q", [4, 8, 16, 32, 64, 128, 256])
def test_dset_matches_bruteforce(q):
    assert list(compute_exponent_sets(q).D_cal) == dset_bruteforce(q)


@pytest.mark.parametrize("q", [4, 8, 16, 32, 128])
def test_dset_published_rows(q):
    assert list(compute_exponent_sets(q).D_cal) == TABLE[q]
    assert len(TABLE[q]) == {4: 1, 8: 3, 16: 8, 32: 21, 128: 147}[q]


def test_dset_q64_has_one_class_beyond_published_row():
    got = set(compute_exponent_sets(64).D_cal)
    assert got - set(TABLE[64]) == {273}
    assert set(TABLE[64]) <= got
    assert 4 * 64 + 21 - 4 == 273 and math.comb(21, 4) % 2 == 1


def test_m_pairs_definition():
    q = 16
    es = compute_exponent_sets(q)
    expect = {(i, k) for k in range(1, q - 1) for i in range((k - 1) // 2 + 1) if math.comb(k, i) % 2}
    assert set(es.M_pairs) == expect
    assert set(es.D) == {i * q + k - i for i, k in expect}


def test_coset_min_is_rotation_minimum():
    for d in range(1, 255):
        assert coset_min(d, 8) == min((d << r | d >> (8 - r)) & 255 for r in range(8))


def naive_power_sum(ctx, elems, k):
    s = 0
    for y in elems:
        p = 1
        for _ in range(k):
            p = k_mul(ctx, p, y)
        s ^= p
    return s


def test_power_sum_matches_naive(ctx, rng):
    elems = [rng.randrange(ctx.q * ctx.q) for _ in range(ctx.q + 1)]
    for k in range(0, 3 * ctx.q):
        assert power_sum(ctx, elems, k) == naive_power_sum(ctx, elems, k)


def test_unit_circle_is_vandermonde(ctx):
    # sum of u^k over the circle vanishes unless (q+1) | k
    assert is_vandermonde(ctx, list(ctx.unit_circle)).verdict
    assert power_sum(ctx, ctx.unit_circle, ctx.q + 1) == (ctx.q + 1) % 2


def test_vandermonde_witness():
    ctx = make_field(3)
    assert is_vandermonde(ctx, [1, 2, 3]).verdict  # only pi_1 = 1 + 2 + 3 is tested
    rep = is_vandermonde(ctx, [1, 2, 4, 8])
    assert not rep.verdict and rep.witness["k"] == 1
    assert is_super_vandermonde(ctx, list(ctx.unit_circle)).verdict
    with pytest.raises(ValueError):
        is_vandermonde(ctx, [1, 1, 2])


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_geometric_matches_bruteforce(m, data):
    ctx = make_field(m)
    g = GTable(ctx, tuple(data.draw(st.lists(st.integers(0, ctx.q - 1),
                                             min_size=ctx.q + 1, max_size=ctx.q + 1))))
    pts = points_from_g(g)
    assert check_geometric(ctx, pts).verdict == is_arc_bruteforce(ctx, pts)


@pytest.mark.parametrize("e", [2, 4, 6])
def test_criteria_accept_monomial_hyperovals_q8(e):
    ctx = make_field(3)
    pts = opoly_k_points(ctx, monomial(e))
    assert check_geometric(ctx, pts).verdict
    g, _ = normalize_g(extract_g(ctx, pts))
    npts = points_from_g(g)
    assert is_arc_bruteforce(ctx, npts)
    assert check_power_sum(ctx, npts).verdict
    assert check_even_solution(g).verdict
    assert check_bracket_power_sum(g).verdict


def test_power_sum_needs_finite_points():
    ctx = make_field(3)
    with pytest.raises(ValueError):
        check_power_sum(ctx, opoly_k_points(ctx, monomial(2)))


def test_geometric_witness_is_bad_line():
    ctx = make_field(3)
    pts = [Affine(0)] + [Affine(z) for z in range(1, 10)]
    rep = check_geometric(ctx, pts)
    assert not rep.verdict
    assert rep.witness["count"] % 2 == 1 or rep.witness["count"] > 2


def test_nonvanishing_g_criteria_agree_random(rng):
    for m in (2, 3):
        ctx = make_field(m)
        for _ in range(150):
            g = GTable(ctx, tuple(rng.randrange(1, ctx.q) for _ in range(ctx.q + 1)))
            pts = points_from_g(g)
            truth = is_arc_bruteforce(ctx, pts)
            assert check_even_solution(g).verdict == truth
            assert check_bracket_power_sum(g).verdict == truth
            assert check_power_sum(ctx, pts).verdict == truth
            ys = [ctx.kmul(u, ctx.finv(v)) for u, v in g.items()]
            assert (power_sum_reject(ctx, ys) is None) == truth


def test_even_solution_witness():
    ctx = make_field(3)
    g = GTable(ctx, (1,) * 8 + (2,))
    rep = check_even_solution(g)
    assert not rep.verdict
    assert rep.witness["count"] % 2 == 1
