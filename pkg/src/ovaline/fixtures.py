"""Named reference inputs with frozen verdicts.

The bundled JSON files under ``data/fixtures`` are produced by
:func:`build_fixtures`; set ``OVALINE_FIXTURES`` to read another directory.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .field_tower import FieldCtx, make_field
from .formats import decode, encode
from .gpoly import GCoeffs, g_table_to_coeffs
from .pipeline import verify_object
from .plane import Affine, GTable, monomial

ENV_VAR = "OVALINE_FIXTURES"
SOURCES = ("published example", "classical construction", "search hit")


@dataclass
class Fixture:
    name: str
    q: int
    source: str
    payload: dict
    expected_verdict: bool
    report: dict | None = None

    def decode(self):
        return decode(self.payload)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "q": self.q,
            "source": self.source,
            "expected_verdict": self.expected_verdict,
            "payload": self.payload,
            "report": self.report,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Fixture:
        fx = cls(d["name"], int(d["q"]), d["source"], d["payload"], bool(d["expected_verdict"]),
                 d.get("report"))
        if fx.report is not None and fx.report.get("verdict") != fx.expected_verdict:
            raise ValueError(f"fixture {fx.name}: stored report contradicts expected verdict")
        return fx


def q16_example_coeffs(ctx: FieldCtx) -> GCoeffs:
    """u^16 + w u^12 + w u^11 + w u^6 + w u^5 + u + 1 with w the smallest cube root of 1 other than 1."""
    if ctx.q != 16:
        raise ValueError("the example lives in q = 16")
    w = min(x for x in range(2, ctx.q) if ctx.fmul(x, x) ^ x ^ 1 == 0)
    a = [0] * 17
    a[0] = a[1] = a[16] = 1
    for i in (5, 6, 11, 12):
        a[i] = w
    return GCoeffs(ctx, tuple(a))


def q8_example_points(ctx: FieldCtx) -> list[Affine]:
    """{0} and {1, lam, mu} times the cube roots of unity, with 1 + lam^3 + mu^3 = 0."""
    if ctx.q != 8:
        raise ValueError("the example lives in q = 8")
    w = next(u for u in ctx.unit_circle if u != 1 and ctx.kpow(u, 3) == 1)
    lam, mu = next((a, b) for a in range(1, 8) for b in range(1, 8)
                   if 1 ^ ctx.fpow(a, 3) ^ ctx.fpow(b, 3) == 0)
    roots = (1, w, ctx.conj(w))
    return [Affine(0)] + [Affine(ctx.kmul(x, r)) for x in (1, lam, mu) for r in roots]


def build_fixtures() -> list[Fixture]:
    out = []
    for m in (2, 3, 4, 5):
        ctx = make_field(m)
        gc = g_table_to_coeffs(GTable.constant(ctx))
        out.append(Fixture(f"regular_q{ctx.q}", ctx.q, "classical construction",
                           encode(ctx, "gcoeffs", gc), True))
    opolys = [
        ("conic_opoly_q4", 2, 2, True),
        ("translation_q8", 3, 4, True),
        ("segre_q8", 3, 6, True),
        ("identity_opoly_q8", 3, 1, False),
        ("cube_opoly_q8", 3, 3, False),
        ("translation_q16", 4, 8, True),
        ("translation_q32", 5, 4, True),
        ("segre_q32", 5, 6, True),
        ("glynn24_q32", 5, 24, True),
        ("glynn28_q32", 5, 28, True),
    ]
    for name, m, e, verdict in opolys:
        ctx = make_field(m)
        out.append(Fixture(name, ctx.q, "classical construction",
                           encode(ctx, "opoly", monomial(e)), verdict))
    ctx16 = make_field(4)
    out.append(Fixture("vandermonde_nonhyperoval_q16", 16, "published example",
                       encode(ctx16, "gcoeffs", q16_example_coeffs(ctx16)), False))
    ctx8 = make_field(3)
    out.append(Fixture("vandermonde_nonhyperoval_q8", 8, "published example",
                       encode(ctx8, "points", q8_example_points(ctx8)), False))
    return out


def check_fixture(fx: Fixture) -> tuple[bool, dict]:
    """Re-verify; passes when the verifiers are unanimous and match the frozen verdict."""
    ctx, kind, obj = fx.decode()
    report = verify_object(ctx, kind, obj).to_dict()
    return report["unanimous"] and report["verdict"] == fx.expected_verdict, report


def fixture_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("ovaline") / "data" / "fixtures"))


def load_fixtures(directory: Path | None = None) -> list[Fixture]:
    directory = Path(directory) if directory else fixture_dir()
    return [Fixture.from_dict(json.loads(p.read_text()))
            for p in sorted(directory.glob("*.json"))]


def write_fixtures(directory: Path, fixtures: list[Fixture] | None = None) -> list[Path]:
    """Verify and write fixtures; refuses to freeze one whose verdict disagrees."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for fx in fixtures if fixtures is not None else build_fixtures():
        ok, report = check_fixture(fx)
        if not ok:
            raise ValueError(f"fixture {fx.name} does not verify as {fx.expected_verdict}")
        fx.report = report
        path = directory / f"{fx.name}.json"
        path.write_text(json.dumps(fx.to_dict(), indent=1, sort_keys=True) + "\n")
        paths.append(path)
    return paths
