"""Gram matrices of the bilinear form over a point set, and exact linear algebra over F.

Matrices are lists of rows of F elements.  Polynomials over F are
coefficient lists, lowest degree first, with no trailing zeros (the zero
polynomial is ``[]``).
"""

from __future__ import annotations

from typing import Sequence

from .field_tower import FieldCtx
from .plane import Affine, DirectionCollision, PointK, extract_g
from .reports import CriterionReport

FMatrix = list


# --- polynomials over F ---------------------------------------------------------

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def fpoly_mul(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] ^= ctx.fmul(x, y)
    return _trim(out)


def fpoly_divmod(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _trim(list(a))
    if len(r) < len(b):
        return [], r
    quo = [0] * (len(r) - len(b) + 1)
    inv_lead = ctx.finv(b[-1])
    while len(r) >= len(b):
        shift = len(r) - len(b)
        c = ctx.fmul(r[-1], inv_lead)
        quo[shift] = c
        for j, y in enumerate(b):
            r[shift + j] ^= ctx.fmul(c, y)
        _trim(r)
    return _trim(quo), r


def fpoly_monic(ctx: FieldCtx, a: Sequence[int]) -> list[int]:
    a = _trim(list(a))
    if not a:
        return a
    inv = ctx.finv(a[-1])
    return [ctx.fmul(x, inv) for x in a]


def fpoly_gcd(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, fpoly_divmod(ctx, a, b)[1]
    return fpoly_monic(ctx, a)


def fpoly_lcm(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list[int]:
    g = fpoly_gcd(ctx, a, b)
    return fpoly_monic(ctx, fpoly_divmod(ctx, fpoly_mul(ctx, a, b), g)[0])


def fpoly_eval_matrix(ctx: FieldCtx, p: Sequence[int], A: FMatrix) -> FMatrix:
    """p(A) by Horner's rule."""
    n = len(A)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(p):
        acc = mat_mul(ctx, acc, A)
        for i in range(n):
            acc[i][i] ^= c
    return acc


# --- matrices --------------------------------------------------------------------

def mat_mul(ctx: FieldCtx, A: FMatrix, B: FMatrix) -> FMatrix:
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s ^= ctx.fmul(x, y)
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(ctx: FieldCtx, A: FMatrix, v: Sequence[int]) -> list[int]:
    out = []
    for row in A:
        s = 0
        for x, y in zip(row, v):
            s ^= ctx.fmul(x, y)
        out.append(s)
    return out


def rank_f(ctx: FieldCtx, A: FMatrix) -> int:
    rows = [list(r) for r in A]
    if not rows:
        return 0
    rank, ncols = 0, len(rows[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ctx.finv(rows[rank][col])
        prow = [ctx.fmul(x, inv) for x in rows[rank]]
        rows[rank] = prow
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                rows[r] = [x ^ ctx.fmul(f, y) for x, y in zip(rows[r], prow)]
        rank += 1
    return rank


def _require_square(A: FMatrix):
    if any(len(row) != len(A) for row in A):
        raise ValueError("matrix is not square")


def char_poly(ctx: FieldCtx, A: FMatrix) -> list[int]:
    """det(xI - A) via similarity reduction to upper Hessenberg form."""
    _require_square(A)
    n = len(A)
    H = [list(r) for r in A]
    fmul, finv = ctx.fmul, ctx.finv
    for j in range(n - 2):
        pivot = next((r for r in range(j + 1, n) if H[r][j]), None)
        if pivot is None:
            continue
        if pivot != j + 1:
            H[j + 1], H[pivot] = H[pivot], H[j + 1]
            for row in H:
                row[j + 1], row[pivot] = row[pivot], row[j + 1]
        inv = finv(H[j + 1][j])
        for r in range(j + 2, n):
            f = fmul(H[r][j], inv)
            if not f:
                continue
            # row_r -= f row_{j+1}, then col_{j+1} += f col_r keeps the similarity
            H[r] = [x ^ fmul(f, y) for x, y in zip(H[r], H[j + 1])]
            for row in H:
                row[j + 1] ^= fmul(f, row[r])
    # p_k = (x + h_kk) p_{k-1} + sum_i h_ik (prod_{l=i+1..k} h_{l,l-1}) p_{i-1}
    polys = [[1]]
    for k in range(n):
        p = fpoly_mul(ctx, [H[k][k], 1], polys[k])
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = fmul(prod, H[i + 1][i])
            if not prod:
                break
            c = fmul(H[i][k], prod)
            if c:
                term = [fmul(c, x) for x in polys[i]]
                p = _trim([x ^ y for x, y in zip(p, term + [0] * (len(p) - len(term)))])
        polys.append(p)
    return polys[n]


def min_poly(ctx: FieldCtx, A: FMatrix) -> list[int]:
    """Least common multiple of the Krylov minimal polynomials of the basis vectors."""
    _require_square(A)
    n = len(A)
    result = [1]
    for j in range(n):
        v = [0] * n
        v[j] = 1
        result = fpoly_lcm(ctx, result, _vector_min_poly(ctx, A, v))
    return result


def _vector_min_poly(ctx: FieldCtx, A: FMatrix, v: list[int]) -> list[int]:
    """Monic p of least degree with p(A) v = 0."""
    n = len(v)
    basis: list[tuple[int, list[int], list[int]]] = []  # (pivot, reduced vector, combination)
    w, t = v, 0
    while True:
        vec = list(w)
        comb = [0] * (t + 1)
        comb[t] = 1
        for pivot, bvec, bcomb in basis:
            f = vec[pivot]
            if f:
                vec = [x ^ ctx.fmul(f, y) for x, y in zip(vec, bvec)]
                for i, c in enumerate(bcomb):
                    comb[i] ^= ctx.fmul(f, c)
        pivot = next((i for i in range(n) if vec[i]), None)
        if pivot is None:
            return fpoly_monic(ctx, comb)
        inv = ctx.finv(vec[pivot])
        basis.append((pivot, [ctx.fmul(x, inv) for x in vec], [ctx.fmul(c, inv) for c in comb]))
        w = mat_vec(ctx, A, w)
        t += 1


# --- Gram matrices ----------------------------------------------------------------

def _finite_nonzero(points: Sequence[PointK]) -> list[int]:
    if Affine(0) not in points:
        raise ValueError("0 is not in the point set")
    if not all(isinstance(p, Affine) for p in points):
        raise ValueError("Gram matrices need every point affine")
    return [p.z for p in points if p.z != 0]


def gram_matrix(ctx: FieldCtx, points: Sequence[PointK], k: int = 1) -> FMatrix:
    """Entries <y_i, y_j>^k over the nonzero points in input order."""
    ys = _finite_nonzero(points)
    M = [[ctx.bform(a, b) for b in ys] for a in ys]
    if k != 1:
        M = [[ctx.fpow(x, k) for x in row] for row in M]
    return M


def check_gram_criterion(ctx: FieldCtx, points: Sequence[PointK]) -> CriterionReport:
    """Every row of every M_H(k), 1 <= k <= q, sums to zero."""
    ys = _finite_nonzero(points)
    try:
        extract_g(ctx, points)
    except DirectionCollision as exc:
        return CriterionReport(False, "gram", {
            "collision": [ctx.khex(exc.first.z), ctx.khex(exc.second.z)],
            "direction": ctx.khex(exc.direction),
        })
    M = gram_matrix(ctx, points)
    for i, row in enumerate(M):
        for k in range(1, ctx.q + 1):
            s = 0
            for x in row:
                s ^= ctx.fpow(x, k)
            if s:
                return CriterionReport(False, "gram", {"row": i, "point": ctx.khex(ys[i]), "k": k})
    return CriterionReport(True, "gram")


class SpectrumDefect(ArithmeticError):
    pass


def gram_spectrum_report(ctx: FieldCtx, points: Sequence[PointK]) -> dict:
    """Check the shape of M_H for a hyperoval through 0.

    The nonzero points are divided by the smallest of them so that 1 is in the
    set, then ordered with 1 and the unique point on the i-axis last.
    """
    ys = _finite_nonzero(points)
    q = ctx.q
    p = min(ys)
    pinv = ctx.kinv(p)
    scaled = [ctx.kmul(y, pinv) for y in ys]
    on_axis = [y for y in scaled if ctx.re(y) == 0]
    if len(on_axis) != 1:
        raise SpectrumDefect(f"expected one point on the i-axis, found {len(on_axis)}")
    last = on_axis[0]
    ordered = [y for y in scaled if y not in (1, last)] + [1, last]
    M = [[ctx.bform(a, b) for b in ordered] for a in ordered]
    n = q + 1

    trace = 0
    for i in range(n):
        trace ^= M[i][i]
    rank = rank_f(ctx, M)
    cp = char_poly(ctx, M)
    mp = min_poly(ctx, M)

    # char poly = x^(q-1) (x^2 + b) once the trace vanishes; mu0 = sqrt(b)
    b = cp[q - 1] if len(cp) == n + 1 else 0
    mu0 = ctx.fsqrt(b)
    expected_cp = [0] * (q - 1) + [ctx.fmul(mu0, mu0), 0, 1]
    expected_mp = [0, mu0, 1]

    s_last = ctx.im(last)
    inv_s = ctx.finv(s_last)
    eigen_ok = True
    for i in range(q - 1):
        v = [0] * n
        v[i] = 1
        v[q - 1] = ctx.re(ordered[i])
        v[q] = ctx.fmul(ctx.im(ordered[i]), inv_s)
        if any(mat_vec(ctx, M, v)):
            eigen_ok = False
            break

    checks = {
        "symmetric": all(M[i][j] == M[j][i] for i in range(n) for j in range(n)),
        "zero_diagonal": all(M[i][i] == 0 for i in range(n)),
        "zero_trace": trace == 0,
        "rank_2": rank == 2,
        "kernel_dim": n - rank == q - 1,
        "mu0_nonzero": mu0 != 0,
        "char_poly_shape": cp == expected_cp,
        "min_poly_shape": mp == expected_mp,
        "min_divides_char": not fpoly_divmod(ctx, cp, mp)[1],
        "eigenvectors": eigen_ok,
    }
    return {
        "trace": hex(trace),
        "rank": rank,
        "mu0": hex(mu0),
        "char_poly": [hex(c) for c in cp],
        "min_poly": [hex(c) for c in mp],
        "eigen_checks_passed": eigen_ok,
        "normalized_by": ctx.khex(p),
        "checks": checks,
        "all_passed": all(checks.values()),
    }
