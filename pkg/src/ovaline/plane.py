"""The two coordinate models of PG(2, q) and the g-function view of point sets.

Homogeneous model: points ``(x:y:z)`` over F.  Field model: affine points are
elements ``z`` of K, points at infinity are directions ``u`` on the unit
circle, and lines are ``[alpha:beta]`` with ``alpha`` in K, ``beta`` in F.
A point set containing 0 whose other q+1 points have distinct directions is
encoded by a function ``g`` on the unit circle: the point in direction ``u``
is ``u / g(u)``, or the point at infinity ``u`` when ``g(u) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from .field_tower import FieldCtx


@dataclass(frozen=True)
class Affine:
    z: int


@dataclass(frozen=True)
class Infinite:
    u: int


PointK = Union[Affine, Infinite]


class PointH(NamedTuple):
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class Line:
    """The line [alpha:beta]; ``alpha`` is on the unit circle or the line is [0:1]."""

    alpha: int
    beta: int


class ZeroNotInSet(ValueError):
    pass


class DirectionCollision(ValueError):
    """Two points of the set lie on one line through 0, so three are collinear."""

    def __init__(self, first: PointK, second: PointK, direction: int):
        super().__init__(f"{first} and {second} share direction {direction:#x} through 0")
        self.first = first
        self.second = second
        self.direction = direction


class NormalizationError(ValueError):
    pass


def point_key(p: PointK) -> tuple[int, int]:
    return (0, p.z) if isinstance(p, Affine) else (1, p.u)


def point_set(points: Iterable[PointK]) -> list[PointK]:
    pts = list(points)
    if len(set(pts)) != len(pts):
        raise ValueError("point set contains duplicates")
    return pts


# --- lines and incidence ------------------------------------------------------

def make_line(ctx: FieldCtx, alpha: int, beta: int) -> Line:
    """Canonical representative of [alpha:beta] up to F*-scaling."""
    if alpha == 0:
        if beta == 0:
            raise ValueError("[0:0] is not a line")
        return Line(0, 1)
    lam, u = ctx.polar(alpha)
    return Line(u, ctx.fmul(beta, ctx.finv(lam)))


def all_lines(ctx: FieldCtx) -> Iterator[Line]:
    """Every line L(v, mu) in unit-circle then F order, then the line at infinity."""
    for v in ctx.unit_circle:
        for mu in range(ctx.q):
            yield Line(v, mu)
    yield Line(0, 1)


def incident(ctx: FieldCtx, p: PointK, line: Line) -> bool:
    if isinstance(p, Affine):
        return ctx.bform(line.alpha, p.z) == line.beta
    return ctx.bform(line.alpha, p.u) == 0


def direction(ctx: FieldCtx, p: PointK) -> int:
    """The unit-circle direction of the line joining 0 and ``p``."""
    if isinstance(p, Infinite):
        return p.u
    if p.z == 0:
        raise ValueError("the origin has no direction")
    return ctx.polar(p.z)[1]


# --- homogeneous model ----------------------------------------------------------

def canonical_h(ctx: FieldCtx, x: int, y: int, z: int) -> PointH:
    """Scale so the last nonzero coordinate is 1."""
    for c in (z, y, x):
        if c:
            inv = ctx.finv(c)
            return PointH(ctx.fmul(x, inv), ctx.fmul(y, inv), ctx.fmul(z, inv))
    raise ValueError("(0:0:0) is not a point")


def homog_to_k(ctx: FieldCtx, p: PointH) -> PointK:
    x, y, z = p
    if z:
        inv = ctx.finv(z)
        return Affine(ctx.kelem(ctx.fmul(x, inv), ctx.fmul(y, inv)))
    w = ctx.kelem(x, y)
    if w == 0:
        raise ValueError("(0:0:0) is not a point")
    return Infinite(ctx.polar(w)[1])


def k_to_homog(ctx: FieldCtx, p: PointK) -> PointH:
    if isinstance(p, Affine):
        return PointH(ctx.re(p.z), ctx.im(p.z), 1)
    return canonical_h(ctx, ctx.re(p.u), ctx.im(p.u), 0)


def horner_f(ctx: FieldCtx, coeffs: Sequence[int], t: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.fmul(acc, t) ^ c
    return acc


def opoly_points(ctx: FieldCtx, f_coeffs: Sequence[int]) -> list[PointH]:
    """{(t : f(t) : 1)} together with (1:0:0) and (0:1:0); f given low degree first."""
    pts = [PointH(t, horner_f(ctx, f_coeffs, t), 1) for t in range(ctx.q)]
    pts += [PointH(1, 0, 0), PointH(0, 1, 0)]
    return pts


def monomial(e: int) -> list[int]:
    coeffs = [0] * (e + 1)
    coeffs[e] = 1
    return coeffs


def opoly_k_points(ctx: FieldCtx, f_coeffs: Sequence[int]) -> list[PointK]:
    """The o-polynomial frame set in the field model; (0:0:1) becomes the origin."""
    return [homog_to_k(ctx, p) for p in opoly_points(ctx, f_coeffs)]


def translate(ctx: FieldCtx, points: Sequence[PointK], b: int,
              strict: bool = False) -> list[PointK]:
    out = []
    for p in points:
        if isinstance(p, Affine):
            out.append(Affine(p.z ^ b))
        elif strict:
            raise ValueError(f"cannot translate point at infinity {p} in strict mode")
        else:
            out.append(p)
    return out


def scale(ctx: FieldCtx, points: Sequence[PointK], c: int) -> list[PointK]:
    """Multiply by c in K*; a collineation fixing 0 that rotates directions by c."""
    out = []
    for p in points:
        if isinstance(p, Affine):
            out.append(Affine(ctx.kmul(p.z, c)))
        else:
            out.append(Infinite(ctx.polar(ctx.kmul(p.u, c))[1]))
    return out


# --- g-functions ------------------------------------------------------------------

@dataclass(frozen=True)
class GTable:
    """Values of g: S -> F, listed in the order of ``ctx.unit_circle``."""

    ctx: FieldCtx
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.ctx.q + 1:
            raise ValueError(f"g-table needs {self.ctx.q + 1} values, got {len(self.values)}")
        if any(not 0 <= v < self.ctx.q for v in self.values):
            raise ValueError("g-table values must lie in F")

    @classmethod
    def from_function(cls, ctx: FieldCtx, fn) -> GTable:
        return cls(ctx, tuple(fn(u) for u in ctx.unit_circle))

    @classmethod
    def constant(cls, ctx: FieldCtx, c: int = 1) -> GTable:
        return cls(ctx, (c,) * (ctx.q + 1))

    def __call__(self, u: int) -> int:
        return self.values[self.ctx.unit_index[u]]

    def items(self) -> Iterator[tuple[int, int]]:
        return zip(self.ctx.unit_circle, self.values)

    @property
    def nonvanishing(self) -> bool:
        return all(self.values)

    def shifted(self, c: int) -> GTable:
        """g(u) + <c, u>."""
        bform = self.ctx.bform
        return GTable(self.ctx, tuple(v ^ bform(c, u) for u, v in self.items()))


def points_from_g(g: GTable) -> list[PointK]:
    ctx = g.ctx
    pts: list[PointK] = [Affine(0)]
    for u, v in g.items():
        pts.append(Affine(ctx.kmul(u, ctx.finv(v))) if v else Infinite(u))
    return pts


def extract_g(ctx: FieldCtx, points: Sequence[PointK]) -> GTable:
    """Recover g from a set containing 0 whose other points have distinct directions.

    Raises :class:`DirectionCollision` naming the offending pair when two
    points share a line through 0.
    """
    if Affine(0) not in points:
        raise ZeroNotInSet("0 is not in the point set; translate first")
    if len(points) != ctx.q + 2:
        raise ValueError(f"expected {ctx.q + 2} points, got {len(points)}")
    seen: dict[int, PointK] = {}
    values = [0] * (ctx.q + 1)
    for p in points:
        if p == Affine(0):
            continue
        if isinstance(p, Infinite):
            u, gv = p.u, 0
        else:
            lam, u = ctx.polar(p.z)
            gv = ctx.finv(lam)
        if u in seen:
            raise DirectionCollision(seen[u], p, u)
        seen[u] = p
        values[ctx.unit_index[u]] = gv
    return GTable(ctx, tuple(values))


def normalize_g(g: GTable) -> tuple[GTable, int]:
    """Find the first c (by bit encoding) with g(u) + <c, u> nonzero on S.

    Geometrically this moves an exterior line not through 0 to infinity.
    """
    if g.nonvanishing:
        return g, 0
    ctx = g.ctx
    pairs = list(g.items())
    for c in range(1, ctx.q * ctx.q):
        if all(v ^ ctx.bform(c, u) for u, v in pairs):
            return g.shifted(c), c
    raise NormalizationError("every line off the origin meets the point set")
