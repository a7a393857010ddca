"""Power sums, the exponent sets M, D and D/~, and the point-set verifiers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .field_tower import FieldCtx, binom_odd
from .plane import Affine, GTable, Infinite, PointK, extract_g, make_line
from .reports import CriterionReport


def power_sum(ctx: FieldCtx, points: Sequence[int], k: int) -> int:
    total = 0
    for y in points:
        total ^= ctx.kpow(y, k)
    return total


def _running_power_sums(ctx: FieldCtx, elems: Sequence[int], top: int):
    """Yield (k, pi_k) for k = 1..top by stepping every power once."""
    cur = list(elems)
    for k in range(1, top + 1):
        if k > 1:
            cur = [ctx.kmul(c, y) for c, y in zip(cur, elems)]
        total = 0
        for c in cur:
            total ^= c
        yield k, total


def _vandermonde(ctx: FieldCtx, elems: Sequence[int], top: int) -> CriterionReport:
    t = len(elems)
    if len(set(elems)) != t:
        raise ValueError("Vandermonde sets need distinct elements")
    if not 1 < t < ctx.q * ctx.q:
        raise ValueError(f"set size {t} outside 1 < t < q^2")
    for k, pi in _running_power_sums(ctx, elems, top):
        if pi:
            return CriterionReport(False, "vandermonde", {"k": k, "pi": ctx.khex(pi)})
    return CriterionReport(True, "vandermonde")


def is_vandermonde(ctx: FieldCtx, elems: Sequence[int]) -> CriterionReport:
    """pi_k(T) = 0 for all 1 <= k <= |T| - 2."""
    return _vandermonde(ctx, elems, len(elems) - 2)


def is_super_vandermonde(ctx: FieldCtx, elems: Sequence[int]) -> CriterionReport:
    return _vandermonde(ctx, elems, len(elems) - 1)


# --- exponent sets ------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentSets:
    q: int
    M_pairs: tuple[tuple[int, int], ...]
    D: tuple[int, ...]
    D_cal: tuple[int, ...]


def coset_min(d: int, modulus_bits: int) -> int:
    """Smallest element of the 2-cyclotomic coset of d modulo 2^bits - 1."""
    n = (1 << modulus_bits) - 1
    d %= n
    best = x = d
    for _ in range(modulus_bits - 1):
        x = ((x << 1) | (x >> (modulus_bits - 1))) & n
        best = min(best, x)
    return best


@lru_cache(maxsize=None)
def compute_exponent_sets(q: int) -> ExponentSets:
    m = q.bit_length() - 1
    if q < 4 or q != 1 << m:
        raise ValueError(f"q={q} is not a power of 2 with q >= 4")
    pairs = []
    for k in range(1, q - 1):
        for i in range((k - 1) // 2 + 1):
            if binom_odd(k, i):
                pairs.append((i, k))
    D = sorted({i * q + k - i for i, k in pairs})
    D_cal = sorted({coset_min(d, 2 * m) for d in D})
    return ExponentSets(q, tuple(pairs), tuple(D), tuple(D_cal))


# --- verifiers -------------------------------------------------------------------

def _nonzero_affine(ctx: FieldCtx, points: Sequence[PointK]) -> list[int]:
    """Validate the u/g(u) shape (0 plus q+1 finite points, distinct directions)."""
    g = extract_g(ctx, points)
    if not g.nonvanishing:
        raise ValueError("point set has points at infinity; normalize the g-function first")
    return [p.z for p in points if p.z != 0]


def check_power_sum(ctx: FieldCtx, points: Sequence[PointK]) -> CriterionReport:
    """pi_d = 0 over the nonzero points for every d in D/~, smallest d first."""
    ys = _nonzero_affine(ctx, points)
    for d in compute_exponent_sets(ctx.q).D_cal:
        pi = power_sum(ctx, ys, d)
        if pi:
            return CriterionReport(False, "power_sum_D", {"d": d, "pi": ctx.khex(pi)})
    return CriterionReport(True, "power_sum_D")


def power_sum_reject(ctx: FieldCtx, ys: Sequence[int]) -> int | None:
    """First d in D/~ with pi_d != 0, or None; the search fast path."""
    for d in compute_exponent_sets(ctx.q).D_cal:
        if power_sum(ctx, ys, d):
            return d
    return None


def line_counts(ctx: FieldCtx, points: Sequence[PointK]):
    """Yield (line, count) over all lines in the order of plane.all_lines."""
    affine = [p.z for p in points if isinstance(p, Affine)]
    infinite = {p.u for p in points if isinstance(p, Infinite)}
    for v in ctx.unit_circle:
        counts = [0] * ctx.q
        for z in affine:
            counts[ctx.bform(v, z)] += 1
        # Infinite(u) lies on every L(v, mu) exactly when u = v
        extra = 1 if v in infinite else 0
        for mu in range(ctx.q):
            yield make_line(ctx, v, mu), counts[mu] + extra
    yield make_line(ctx, 0, 1), len(infinite)


def check_geometric(ctx: FieldCtx, points: Sequence[PointK]) -> CriterionReport:
    """Every line meets the q+2 points in 0 or 2 of them.

    For q+2 points this is the same as every line meeting them evenly; the
    witness is the first line met an odd number of times or more than twice.
    """
    if len(points) != ctx.q + 2 or len(set(points)) != len(points):
        raise ValueError(f"geometric check needs {ctx.q + 2} distinct points")
    for line, n in line_counts(ctx, points):
        if n % 2 or n > 2:
            return CriterionReport(False, "geometric", {
                "line": {"alpha": ctx.khex(line.alpha), "beta": hex(line.beta)},
                "count": n,
            })
    return CriterionReport(True, "geometric")


def check_even_solution(g: GTable) -> CriterionReport:
    """g(u) + <u, b> = 0 has an even number of solutions u for every b in K."""
    ctx = g.ctx
    if not g.nonvanishing:
        raise ValueError("even-solution check needs a nonvanishing g")
    pairs = list(g.items())
    for b in range(ctx.q * ctx.q):
        n = sum(1 for u, v in pairs if v == ctx.bform(u, b))
        if n % 2:
            return CriterionReport(False, "even_solution", {"b": ctx.khex(b), "count": n})
    return CriterionReport(True, "even_solution")


def check_bracket_power_sum(g: GTable) -> CriterionReport:
    """sum_u <v, u/g(u)>^k = 0 for every v on the unit circle and 1 <= k <= q."""
    ctx = g.ctx
    if not g.nonvanishing:
        raise ValueError("bracket power-sum check needs a nonvanishing g")
    ys = [ctx.kmul(u, ctx.finv(v)) for u, v in g.items()]
    for v in ctx.unit_circle:
        xs = [ctx.bform(v, y) for y in ys]
        for k in range(1, ctx.q + 1):
            total = 0
            for x in xs:
                total ^= ctx.fpow(x, k)
            if total:
                return CriterionReport(False, "bracket_power_sum",
                                       {"v": ctx.khex(v), "k": k, "sum": hex(total)})
    return CriterionReport(True, "bracket_power_sum")
