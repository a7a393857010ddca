"""Run every verifier on one candidate and compare verdicts.

The criteria are theorems asserting the same property, so any disagreement
is a defect in this package rather than a property of the input.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .criteria import (
    check_bracket_power_sum,
    check_even_solution,
    check_geometric,
    check_power_sum,
)
from .field_tower import FieldCtx
from .gpoly import check_coeff_criterion, check_coeff_criterion_rho, g_table_to_coeffs, rho_from_g
from .gram import check_gram_criterion
from .plane import (
    Affine,
    DirectionCollision,
    GTable,
    NormalizationError,
    PointK,
    extract_g,
    normalize_g,
    points_from_g,
    translate,
)
from .reports import CriterionReport, ConsensusReport

DEFAULT_METHODS = (
    "geometric",
    "even_solution",
    "power_sum_D",
    "bracket_power_sum",
    "coefficient",
    "coefficient_rho",
    "gram",
)
# the five verifiers the equivalence suite compares
CORE_METHODS = ("geometric", "even_solution", "power_sum_D", "coefficient", "gram")


class VerifierDisagreement(AssertionError):
    pass


def _run(method: str, ctx: FieldCtx, g: GTable, points: list[PointK]) -> CriterionReport:
    if method == "geometric":
        return check_geometric(ctx, points)
    if method == "even_solution":
        return check_even_solution(g)
    if method == "power_sum_D":
        return check_power_sum(ctx, points)
    if method == "bracket_power_sum":
        return check_bracket_power_sum(g)
    if method == "coefficient":
        return check_coeff_criterion(g_table_to_coeffs(g))
    if method == "coefficient_rho":
        return check_coeff_criterion_rho(ctx, rho_from_g(g))
    if method == "gram":
        return check_gram_criterion(ctx, points)
    raise ValueError(f"unknown method {method!r}")


def verify_all(g: GTable, methods: Iterable[str] = DEFAULT_METHODS,
               strict: bool = False) -> ConsensusReport:
    """Normalize g to be nonvanishing, then run each requested verifier.

    With ``strict`` a split verdict raises :class:`VerifierDisagreement`.
    """
    ctx = g.ctx
    methods = tuple(methods)
    try:
        g2, c = normalize_g(g)
    except NormalizationError:
        # a hyperoval through 0 has an exterior line off 0, which normalization
        # would have moved to infinity
        reports = {}
        for m in methods:
            if m == "geometric":
                reports[m] = check_geometric(ctx, points_from_g(g))
            else:
                reports[m] = CriterionReport(False, m, {"reason": "no exterior line avoids the set"})
        report = ConsensusReport(reports, None, ["normalization failed"])
    else:
        points = points_from_g(g2)
        reports = {m: _run(m, ctx, g2, points) for m in methods}
        report = ConsensusReport(reports, ctx.khex(c))
    if strict and not report.unanimous:
        raise VerifierDisagreement(report.to_dict())
    return report


def _collision_report(ctx: FieldCtx, method: str, exc: DirectionCollision) -> CriterionReport:
    def enc(p):
        return {"affine": ctx.khex(p.z)} if isinstance(p, Affine) else {"infinite": ctx.khex(p.u)}

    return CriterionReport(False, method, {
        "collision": [enc(exc.first), enc(exc.second)],
        "direction": ctx.khex(exc.direction),
    })


def verify_points(ctx: FieldCtx, points: Sequence[PointK],
                  methods: Iterable[str] = DEFAULT_METHODS, strict: bool = False) -> ConsensusReport:
    """Verify an arbitrary set of q+2 points.

    The geometric verdict is computed on the set as given.  If 0 is missing the
    set is translated by its first affine point; two points on one line
    through 0 then refute every g-function method at once.
    """
    methods = tuple(methods)
    points = list(points)
    notes = []
    geo = check_geometric(ctx, points) if "geometric" in methods else None
    if Affine(0) not in points:
        b = next((p.z for p in points if isinstance(p, Affine)), None)
        if b is None:
            raise ValueError("the point set has no affine point")
        points = translate(ctx, points, b)
        notes.append(f"translated by {ctx.khex(b)}")
    try:
        g = extract_g(ctx, points)
    except DirectionCollision as exc:
        reports = {m: _collision_report(ctx, m, exc) for m in methods if m != "geometric"}
        if geo is not None:
            reports = {"geometric": geo, **reports}
        report = ConsensusReport(reports, None, notes + ["direction collision through 0"])
    else:
        report = verify_all(g, methods)
        report.notes = notes + report.notes
        if geo is not None:
            report.reports["geometric"] = geo
    if strict and not report.unanimous:
        raise VerifierDisagreement(report.to_dict())
    return report
