"""Polynomials over K modulo x^(q+1) - 1 and the coefficient form of g-functions.

A circulant polynomial is a list of q+1 packed K elements, index i holding
the coefficient of x^i.  Two polynomials agree on the unit circle exactly
when they agree modulo x^(q+1) - 1, so a g-function and its coefficient
vector carry the same information.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .criteria import compute_exponent_sets
from .field_tower import FieldCtx
from .plane import GTable
from .reports import CriterionReport

CircPoly = list


class SymmetryError(ValueError):
    pass


def circ_one(ctx: FieldCtx) -> CircPoly:
    p = [0] * (ctx.q + 1)
    p[0] = 1
    return p


def circ_monomial(ctx: FieldCtx, i: int, c: int = 1) -> CircPoly:
    p = [0] * (ctx.q + 1)
    p[i % (ctx.q + 1)] = c
    return p


def circ_add(a: CircPoly, b: CircPoly) -> CircPoly:
    return [x ^ y for x, y in zip(a, b)]


def circ_mul(ctx: FieldCtx, a: CircPoly, b: CircPoly) -> CircPoly:
    n = ctx.q + 1
    out = [0] * n
    kmul = ctx.kmul
    nz_b = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in nz_b:
            out[(i + j) % n] ^= kmul(x, y)
    return out


def circ_pow(ctx: FieldCtx, a: CircPoly, e: int) -> CircPoly:
    if e < 0:
        raise ValueError("negative exponent")
    result = circ_one(ctx)
    base = list(a)
    while e:
        if e & 1:
            result = circ_mul(ctx, result, base)
        e >>= 1
        if e:
            base = circ_mul(ctx, base, base)
    return result


def circ_eval(ctx: FieldCtx, a: CircPoly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = ctx.kmul(acc, x) ^ c
    return acc


def evaluate_on_S(ctx: FieldCtx, a: CircPoly) -> list[int]:
    return [circ_eval(ctx, a, u) for u in ctx.unit_circle]


def interpolate_on_S(ctx: FieldCtx, values: Sequence[int]) -> CircPoly:
    """The unique polynomial of degree <= q taking ``values`` on ctx.unit_circle.

    Uses the closed form: the coefficient of x^i is sum_u u^(-i) h(u).
    """
    if len(values) != ctx.q + 1:
        raise ValueError(f"need {ctx.q + 1} values, got {len(values)}")
    out = []
    for i in range(ctx.q + 1):
        c = 0
        for u, h in zip(ctx.unit_circle, values):
            if h:
                c ^= ctx.kmul(ctx.kpow(u, -i), h)
        out.append(c)
    return out


def expand_circle_product(ctx: FieldCtx) -> list[int]:
    """Coefficients (low degree first) of prod_{u in S} (x - u), an ordinary polynomial."""
    poly = [1]
    for u in ctx.unit_circle:
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] ^= c
            nxt[i] ^= ctx.kmul(c, u)
        poly = nxt
    return poly


def elementary_symmetric_check(ctx: FieldCtx) -> bool:
    """True iff prod_{u in S} (x - u) = x^(q+1) + 1, i.e. e_1 = ... = e_q = 0."""
    expected = [0] * (ctx.q + 2)
    expected[0] = expected[-1] = 1
    return expand_circle_product(ctx) == expected


# --- coefficient form of g ----------------------------------------------------------

@dataclass(frozen=True)
class GCoeffs:
    """g(u) = a_0 + a_1 u + ... + a_q u^q with a_{q+1-i} = conj(a_i)."""

    ctx: FieldCtx
    a: tuple[int, ...]

    def __post_init__(self):
        ctx, a = self.ctx, self.a
        if len(a) != ctx.q + 1:
            raise ValueError(f"need {ctx.q + 1} coefficients, got {len(a)}")
        if not ctx.in_f(a[0]):
            raise SymmetryError("a_0 must lie in F")
        for i in range(1, ctx.q // 2 + 1):
            if a[ctx.q + 1 - i] != ctx.conj(a[i]):
                raise SymmetryError(f"a_{ctx.q + 1 - i} is not the conjugate of a_{i}")

    @classmethod
    def from_half(cls, ctx: FieldCtx, a0: int, half: dict[int, int]) -> GCoeffs:
        """Build from a_0 and the coefficients a_t for 1 <= t <= q/2."""
        a = [0] * (ctx.q + 1)
        a[0] = a0
        for t, c in half.items():
            if not 1 <= t <= ctx.q // 2:
                raise ValueError(f"free coefficient index {t} outside 1..q/2")
            a[t] = c
            a[ctx.q + 1 - t] = ctx.conj(c)
        return cls(ctx, tuple(a))

    def poly(self) -> CircPoly:
        return list(self.a)


def g_table_to_coeffs(g: GTable) -> GCoeffs:
    return GCoeffs(g.ctx, tuple(interpolate_on_S(g.ctx, g.values)))


def g_coeffs_to_table(gc: GCoeffs) -> GTable:
    values = evaluate_on_S(gc.ctx, list(gc.a))
    if any(not gc.ctx.in_f(v) for v in values):
        raise SymmetryError("g takes values outside F")  # unreachable for valid GCoeffs
    return GTable(gc.ctx, tuple(values))


def _pairs_by_k(q: int) -> dict[int, list[int]]:
    grouped: dict[int, list[int]] = {}
    for i, k in compute_exponent_sets(q).M_pairs:
        grouped.setdefault(k, []).append(i)
    return grouped


def _coefficient_scan(ctx, powers, method) -> CriterionReport:
    """Check the x^(k-2i) coefficient of powers[k] over M, asserting conjugate duality."""
    n = ctx.q + 1
    for k, idx in _pairs_by_k(ctx.q).items():
        p = powers(k)
        for i in idx:
            t = k - 2 * i
            c = p[t]
            if ctx.conj(c) != p[n - t]:
                raise ArithmeticError(f"coefficients x^{t} and x^{n - t} of power {k} not conjugate")
            if c:
                return CriterionReport(False, method, {"i": i, "k": k, "coefficient": ctx.khex(c)})
    return CriterionReport(True, method)


def check_coeff_criterion(gc: GCoeffs) -> CriterionReport:
    """The x^(k-2i) coefficient of g^(q-1-k) mod x^(q+1) - 1 vanishes for all (i, k) in M."""
    ctx = gc.ctx
    g = gc.poly()
    return _coefficient_scan(ctx, lambda k: circ_pow(ctx, g, ctx.q - 1 - k), "coefficient")


def check_coeff_criterion_rho(ctx: FieldCtx, rho_values: Sequence[int]) -> CriterionReport:
    """Same test on rho^k where rho = 1/g is given by its values on the unit circle."""
    if any(v == 0 for v in rho_values):
        raise ValueError("rho must be nonzero on the unit circle")
    rho = interpolate_on_S(ctx, rho_values)
    cache = {0: circ_one(ctx)}

    def power(k):
        # M is scanned with k ascending, so each power is one multiplication away
        if k not in cache:
            cache[k] = circ_mul(ctx, power(k - 1), rho)
        return cache[k]

    return _coefficient_scan(ctx, power, "coefficient_rho")


def rho_from_g(g: GTable) -> list[int]:
    return [g.ctx.finv(v) for v in g.values]


def corollary_support_filter(gc: GCoeffs) -> bool:
    """Necessary condition for a hyperoval: a_t = 0 whenever t = 2, 3 (mod 4)."""
    return all(gc.a[t] == 0 for t in range(1, gc.ctx.q + 1) if t % 4 in (2, 3))
