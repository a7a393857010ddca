"""JSON documents for fields, point sets, g-functions and exponent tables.

F elements are hex strings, K elements are ``[re, im]`` hex pairs.  Every
document is an object ``{"kind": ..., "field": {m, f_poly, delta}, ...}``;
the field may be omitted when the caller supplies one.
"""

from __future__ import annotations

import io
import csv
from typing import Any, Sequence

from .criteria import compute_exponent_sets
from .field_tower import FieldCtx, field_from_dict
from .gpoly import GCoeffs
from .plane import Affine, GTable, Infinite, PointH, PointK

KINDS = ("points", "hpoints", "gtable", "gcoeffs", "rho", "opoly")


class FormatError(ValueError):
    pass


def _fhex(ctx: FieldCtx, v) -> int:
    x = int(v, 16) if isinstance(v, str) else int(v)
    if not 0 <= x < ctx.q:
        raise FormatError(f"{v!r} is not an element of F for q={ctx.q}")
    return x


def points_to_json(ctx: FieldCtx, points: Sequence[PointK]) -> list[dict]:
    return [{"affine": ctx.khex(p.z)} if isinstance(p, Affine) else {"infinite": ctx.khex(p.u)}
            for p in points]


def points_from_json(ctx: FieldCtx, data: list) -> list[PointK]:
    pts: list[PointK] = []
    for item in data:
        if "affine" in item:
            pts.append(Affine(ctx.kparse(item["affine"])))
        elif "infinite" in item:
            u = ctx.kparse(item["infinite"])
            if u not in ctx.unit_index:
                raise FormatError(f"infinite direction {item['infinite']} is not on the unit circle")
            pts.append(Infinite(u))
        else:
            raise FormatError(f"point entry {item!r} needs 'affine' or 'infinite'")
    if len(set(pts)) != len(pts):
        raise FormatError("point list contains duplicates")
    return pts


def hpoints_to_json(points: Sequence[PointH]) -> list[list[str]]:
    return [[hex(c) for c in p] for p in points]


def hpoints_from_json(ctx: FieldCtx, data: list) -> list[PointH]:
    return [PointH(*(_fhex(ctx, c) for c in item)) for item in data]


def table_to_json(ctx: FieldCtx, values: Sequence[int]) -> dict[str, str]:
    """Values keyed by unit-circle index."""
    return {str(j): hex(v) for j, v in enumerate(values)}


def table_from_json(ctx: FieldCtx, data) -> tuple[int, ...]:
    if isinstance(data, dict):
        try:
            values = [data[str(j)] for j in range(ctx.q + 1)]
        except KeyError as exc:
            raise FormatError(f"table is missing unit-circle index {exc}") from None
    else:
        values = list(data)
    if len(values) != ctx.q + 1:
        raise FormatError(f"table needs {ctx.q + 1} values")
    return tuple(_fhex(ctx, v) for v in values)


def gcoeffs_to_json(gc: GCoeffs) -> list[list[str]]:
    return [gc.ctx.khex(a) for a in gc.a]


def gcoeffs_from_json(ctx: FieldCtx, data: list) -> GCoeffs:
    try:
        return GCoeffs(ctx, tuple(ctx.kparse(a) for a in data))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def document(ctx: FieldCtx, kind: str, payload) -> dict:
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}")
    return {"kind": kind, "field": ctx.to_dict(), "data": payload}


def encode(ctx: FieldCtx, kind: str, obj) -> dict:
    if kind == "points":
        payload = points_to_json(ctx, obj)
    elif kind == "hpoints":
        payload = hpoints_to_json(obj)
    elif kind in ("gtable", "rho"):
        payload = table_to_json(ctx, obj.values if isinstance(obj, GTable) else obj)
    elif kind == "gcoeffs":
        payload = gcoeffs_to_json(obj)
    elif kind == "opoly":
        payload = [hex(c) for c in obj]
    else:
        raise FormatError(f"unknown kind {kind!r}")
    return document(ctx, kind, payload)


def decode(doc: Any, ctx: FieldCtx | None = None) -> tuple[FieldCtx, str, Any]:
    """Parse a document into (field, kind, object).

    A bare list is read as a field-model point list, which then needs ``ctx``.
    """
    if isinstance(doc, list):
        doc = {"kind": "points", "data": doc}
    if not isinstance(doc, dict) or "kind" not in doc or "data" not in doc:
        raise FormatError("document needs 'kind' and 'data'")
    kind = doc["kind"]
    if "field" in doc:
        try:
            doc_ctx = field_from_dict(doc["field"])
        except (KeyError, ValueError, TypeError) as exc:
            raise FormatError(f"bad field description: {exc}") from None
        if ctx is not None and ctx != doc_ctx:
            raise FormatError(f"document field {doc_ctx} differs from requested {ctx}")
        ctx = doc_ctx
    if ctx is None:
        raise FormatError("no field given in the document or on the command line")
    data = doc["data"]
    try:
        if kind == "points":
            obj = points_from_json(ctx, data)
        elif kind == "hpoints":
            obj = hpoints_from_json(ctx, data)
        elif kind == "gtable":
            obj = GTable(ctx, table_from_json(ctx, data))
        elif kind == "rho":
            obj = table_from_json(ctx, data)
        elif kind == "gcoeffs":
            obj = gcoeffs_from_json(ctx, data)
        elif kind == "opoly":
            obj = [_fhex(ctx, c) for c in data]
        else:
            raise FormatError(f"unknown kind {kind!r}")
    except FormatError:
        raise
    except (ValueError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed {kind} data: {exc}") from None
    return ctx, kind, obj


# --- exponent tables ----------------------------------------------------------------

def dset_rows(qs: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    return [(q, compute_exponent_sets(q).D_cal) for q in qs]


def dset_csv(qs: Sequence[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["q", "elements", "cardinality"])
    for q, d in dset_rows(qs):
        w.writerow([q, ",".join(map(str, d)), len(d)])
    return buf.getvalue()


def dset_json(qs: Sequence[int]) -> list[dict]:
    return [{"q": q, "elements": list(d), "cardinality": len(d)} for q, d in dset_rows(qs)]


def dset_latex(qs: Sequence[int]) -> str:
    lines = [r"\begin{tabular}{|c|c|c|}", r"\hline", r"$q$ & Elements in $\mathcal{D}$ & $|\mathcal{D}|$ \\", r"\hline"]
    for q, d in dset_rows(qs):
        lines.append(f"{q} & {', '.join(map(str, d))} & {len(d)} \\\\")
        lines.append(r"\hline")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"
