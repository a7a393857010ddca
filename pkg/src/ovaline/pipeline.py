"""Conversions between input representations and dispatch to the verifiers."""

from __future__ import annotations

from typing import Any, Iterable

from .consensus import DEFAULT_METHODS, verify_all, verify_points
from .field_tower import FieldCtx
from .gpoly import g_coeffs_to_table, g_table_to_coeffs
from .plane import (
    GTable,
    PointK,
    extract_g,
    homog_to_k,
    k_to_homog,
    normalize_g,
    opoly_k_points,
    points_from_g,
    translate,
)
from .reports import ConsensusReport

G_KINDS = ("gtable", "gcoeffs", "rho")
TARGETS = ("g", "coeffs", "rho", "points", "opoly-frame-points")


def _g_of(ctx: FieldCtx, kind: str, obj: Any) -> GTable:
    if kind == "gtable":
        return obj
    if kind == "gcoeffs":
        return g_coeffs_to_table(obj)
    if kind == "rho":
        if not all(obj):
            raise ValueError("rho must be nonzero on the unit circle")
        return GTable(ctx, tuple(ctx.finv(v) for v in obj))
    raise ValueError(f"{kind} is not a g-function form")


def to_points(ctx: FieldCtx, kind: str, obj: Any) -> list[PointK]:
    if kind == "points":
        return list(obj)
    if kind == "hpoints":
        return [homog_to_k(ctx, p) for p in obj]
    if kind == "opoly":
        return opoly_k_points(ctx, obj)
    return points_from_g(_g_of(ctx, kind, obj))


def to_gtable(ctx: FieldCtx, kind: str, obj: Any, translate_first: int | None = None,
              normalize: bool = False) -> GTable:
    if kind in G_KINDS and translate_first is None:
        g = _g_of(ctx, kind, obj)
    else:
        pts = to_points(ctx, kind, obj)
        if translate_first is not None:
            pts = translate(ctx, pts, translate_first)
        g = extract_g(ctx, pts)
    if normalize:
        g = normalize_g(g)[0]
    return g


def convert(ctx: FieldCtx, kind: str, obj: Any, target: str,
            translate_first: int | None = None, normalize: bool = False) -> tuple[str, Any]:
    """Return (output kind, object) for the requested target representation."""
    if target == "points":
        pts = to_points(ctx, kind, obj)
        if translate_first is not None:
            pts = translate(ctx, pts, translate_first)
        return "points", pts
    if target == "opoly-frame-points":
        pts = to_points(ctx, kind, obj)
        if translate_first is not None:
            pts = translate(ctx, pts, translate_first)
        return "hpoints", [k_to_homog(ctx, p) for p in pts]
    g = to_gtable(ctx, kind, obj, translate_first, normalize)
    if target == "g":
        return "gtable", g
    if target == "coeffs":
        return "gcoeffs", g_table_to_coeffs(g)
    if target == "rho":
        if not g.nonvanishing:
            raise ValueError("g vanishes somewhere on the unit circle; pass --normalize")
        return "rho", tuple(ctx.finv(v) for v in g.values)
    raise ValueError(f"unknown target {target!r}")


def verify_object(ctx: FieldCtx, kind: str, obj: Any,
                  methods: Iterable[str] = DEFAULT_METHODS) -> ConsensusReport:
    if kind in G_KINDS:
        return verify_all(_g_of(ctx, kind, obj), methods)
    return verify_points(ctx, to_points(ctx, kind, obj), methods)

