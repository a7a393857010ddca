"""Pruned enumeration of symmetric g-function coefficient vectors.

Candidates are a_0 plus free coefficients a_t for t <= q/2 with t = 0, 1
(mod 4); the upper half is fixed by a_{q+1-t} = conj(a_t).  Each candidate
passes through a filter cascade:

1. evaluate on the unit circle and drop tables with a zero,
2. power sums pi_d for d in D/~, smallest first, stopping at the first nonzero,
3. the full verifier consensus for survivors.

Work is split into shards by the value of the first free coefficient; shard
results merge in shard order, so thread count never changes the output.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator

from .consensus import verify_all
from .criteria import check_geometric, power_sum_reject
from .field_tower import FieldCtx, field_for_q
from .gpoly import GCoeffs
from .plane import GTable, point_key, points_from_g
from .reports import ConsensusReport

log = logging.getLogger(__name__)

STAGES = ("rejected_vanishing", "rejected_power_sum", "rejected_consensus", "disagreement", "hits")
RANDOM_CHUNKS = 16


class SearchSpaceTooLarge(ValueError):
    pass


@dataclass
class SearchConfig:
    q: int
    free_support: tuple[int, ...] = ()
    coefficient_domain: tuple[int, ...] | None = None  # None: all of K
    a0_domain: tuple[int, ...] = (0, 1)
    mode: str = "exhaustive"
    sample_count: int = 0
    seed: int = 0
    parallel_shards: int = 1
    max_space: int = 1 << 22
    recheck: int = 100
    checkpoint: str | None = None

    def __post_init__(self):
        self.free_support = tuple(sorted(self.free_support))
        self.a0_domain = tuple(self.a0_domain)
        if self.coefficient_domain is not None:
            self.coefficient_domain = tuple(self.coefficient_domain)
        for t in self.free_support:
            if not 1 <= t <= self.q // 2:
                raise ValueError(f"free index {t} outside 1..q/2")
            if t % 4 in (2, 3):
                raise ValueError(f"free index {t} is 2 or 3 mod 4; such coefficients vanish on hyperovals")
        if len(set(self.free_support)) != len(self.free_support):
            raise ValueError("repeated free index")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.q > 32 and self.mode == "exhaustive":
            raise SearchSpaceTooLarge("exhaustive mode is limited to q <= 32")

    @property
    def ctx(self) -> FieldCtx:
        return field_for_q(self.q)

    def domain(self) -> tuple[int, ...]:
        if self.coefficient_domain is None:
            return tuple(range(self.q * self.q))
        return self.coefficient_domain

    def space_size(self) -> int:
        return len(self.a0_domain) * len(self.domain()) ** len(self.free_support)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["free_support"] = list(self.free_support)
        d["a0_domain"] = list(self.a0_domain)
        if self.coefficient_domain is not None:
            d["coefficient_domain"] = list(self.coefficient_domain)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> SearchConfig:
        d = dict(d)
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown search config keys {sorted(unknown)}")
        q = int(d["q"])
        ctx = field_for_q(q)
        dom = d.get("coefficient_domain")
        if dom is not None and dom != "all":
            d["coefficient_domain"] = tuple(ctx.kparse(x) if isinstance(x, list) else int(x) for x in dom)
        else:
            d["coefficient_domain"] = None
        if "a0_domain" in d:
            d["a0_domain"] = tuple(int(x, 16) if isinstance(x, str) else int(x) for x in d["a0_domain"])
        return cls(**d)


@dataclass
class SearchResult:
    index: int
    g: GCoeffs
    report: ConsensusReport
    point_set_digest: str

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "coeffs": [self.g.ctx.khex(a) for a in self.g.a],
            "digest": self.point_set_digest,
            "verdicts": {k: r.verdict for k, r in self.report.reports.items()},
        }


@dataclass
class SearchOutcome:
    config: SearchConfig
    counters: dict[str, int]
    results: list[SearchResult]
    recheck: dict[str, int]
    disagreements: list[int] = field(default_factory=list)

    def manifest(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "field": self.config.ctx.to_dict(),
            "counters": self.counters,
            "recheck": self.recheck,
            "disagreements": self.disagreements,
            "hits": [r.to_dict() for r in self.results],
        }


def point_set_digest(g: GTable) -> str:
    ctx = g.ctx
    pts = sorted(points_from_g(g), key=point_key)
    enc = json.dumps([[kind, ctx.khex(v)] for kind, v in map(point_key, pts)])
    return hashlib.sha256(enc.encode()).hexdigest()


# --- enumeration -----------------------------------------------------------------

def _build(ctx: FieldCtx, support: tuple[int, ...], a0: int, values) -> GCoeffs:
    return GCoeffs.from_half(ctx, a0, dict(zip(support, values)))


def _shards(cfg: SearchConfig) -> list[tuple]:
    """Shard keys in merge order: one per first-coefficient value (exhaustive) or per chunk."""
    if cfg.mode == "random":
        return [(i,) for i in range(RANDOM_CHUNKS)]
    if cfg.free_support:
        return [(v,) for v in cfg.domain()]
    return [(a0,) for a0 in cfg.a0_domain]


def _shard_candidates(cfg: SearchConfig, shard: int) -> Iterator[tuple[int, GCoeffs]]:
    ctx = cfg.ctx
    support = cfg.free_support
    if cfg.mode == "random":
        samples = _random_samples(cfg)
        per = -(-len(samples) // RANDOM_CHUNKS)
        for idx in range(shard * per, min(len(samples), (shard + 1) * per)):
            a0, values = samples[idx]
            yield idx, _build(ctx, support, a0, values)
        return
    dom = cfg.domain()
    if not support:
        yield shard, _build(ctx, (), cfg.a0_domain[shard], ())
        return
    per_shard = len(cfg.a0_domain) * len(dom) ** (len(support) - 1)
    idx = shard * per_shard
    first = dom[shard]
    for a0 in cfg.a0_domain:
        for rest in itertools.product(dom, repeat=len(support) - 1):
            yield idx, _build(ctx, support, a0, (first,) + rest)
            idx += 1


def _random_samples(cfg: SearchConfig) -> list[tuple[int, tuple[int, ...]]]:
    rng = random.Random(cfg.seed)
    dom = cfg.domain()
    return [(rng.choice(cfg.a0_domain), tuple(rng.choice(dom) for _ in cfg.free_support))
            for _ in range(cfg.sample_count)]


def _check_space(cfg: SearchConfig):
    if cfg.mode == "exhaustive" and cfg.space_size() > cfg.max_space:
        raise SearchSpaceTooLarge(f"{cfg.space_size()} candidates exceeds max_space={cfg.max_space}")


def enumerate_candidates(cfg: SearchConfig, skip_vanishing: bool = True) -> Iterator[GCoeffs]:
    """All candidates in deterministic order; by default those vanishing somewhere on S are skipped."""
    _check_space(cfg)
    evaluator = _Evaluator(cfg.ctx, cfg.free_support)
    for shard in range(len(_shards(cfg))):
        for _, gc in _shard_candidates(cfg, shard):
            if skip_vanishing and not all(evaluator(gc)):
                continue
            yield gc


class _Evaluator:
    """g(u) = a_0 + sum_t T(a_t u^t) over the free indices, with u^t precomputed."""

    def __init__(self, ctx: FieldCtx, support: tuple[int, ...]):
        self.ctx = ctx
        self.support = support
        self.powers = [[ctx.kpow(u, t) for u in ctx.unit_circle] for t in support]

    def __call__(self, gc: GCoeffs) -> tuple[int, ...]:
        ctx = self.ctx
        vals = [gc.a[0]] * (ctx.q + 1)
        for t, pw in zip(self.support, self.powers):
            a = gc.a[t]
            if a:
                for j, ut in enumerate(pw):
                    vals[j] ^= ctx.trace(ctx.kmul(a, ut))
        return tuple(vals)


# --- running -----------------------------------------------------------------------

def _run_shard(cfg_dict: dict, shard: int) -> dict:
    cfg = SearchConfig.from_dict(cfg_dict)
    ctx = cfg.ctx
    evaluator = _Evaluator(ctx, cfg.free_support)
    counters = dict.fromkeys(("enumerated",) + STAGES, 0)
    hits, rejects, disagreements = [], [], []
    for idx, gc in _shard_candidates(cfg, shard):
        counters["enumerated"] += 1
        values = evaluator(gc)
        if not all(values):
            counters["rejected_vanishing"] += 1
            continue
        ys = [ctx.kmul(u, ctx.finv(v)) for u, v in zip(ctx.unit_circle, values)]
        if power_sum_reject(ctx, ys) is not None:
            counters["rejected_power_sum"] += 1
            if len(rejects) < cfg.recheck:
                rejects.append([idx, list(values)])
            continue
        report = verify_all(GTable(ctx, values))
        if not report.unanimous:
            counters["disagreement"] += 1
            disagreements.append(idx)
            log.error("verifiers disagree on candidate %d: %s", idx, report.to_dict())
        elif report.verdict:
            counters["hits"] += 1
            hits.append({"index": idx, "coeffs": list(gc.a), "values": list(values)})
        else:
            counters["rejected_consensus"] += 1
    return {"shard": shard, "counters": counters, "hits": hits, "rejects": rejects,
            "disagreements": disagreements}


def _space_key(cfg: SearchConfig) -> dict:
    """The part of the config that determines shard contents."""
    d = cfg.to_dict()
    del d["parallel_shards"], d["checkpoint"]
    return d


def _load_checkpoint(path: Path, cfg: SearchConfig) -> dict[int, dict]:
    done = {}
    if not path.exists():
        return done
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec.get("config") != _space_key(cfg):
            raise ValueError(f"checkpoint {path} was written for a different configuration")
        done[rec["result"]["shard"]] = rec["result"]
    return done


def run_search(cfg: SearchConfig) -> SearchOutcome:
    _check_space(cfg)
    ctx = cfg.ctx
    n_shards = len(_shards(cfg))
    cfg_dict = cfg.to_dict()
    ckpt = Path(cfg.checkpoint) if cfg.checkpoint else None
    done = _load_checkpoint(ckpt, cfg) if ckpt else {}
    todo = [s for s in range(n_shards) if s not in done]
    if done:
        log.info("resuming: %d of %d shards already complete", len(done), n_shards)

    def record(res):
        done[res["shard"]] = res
        if ckpt:
            with ckpt.open("a") as fh:
                fh.write(json.dumps({"config": _space_key(cfg), "result": res}) + "\n")

    if cfg.parallel_shards > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallel_shards) as pool:
            for res in pool.map(_run_shard, itertools.repeat(cfg_dict), todo):
                record(res)
    else:
        for s in todo:
            record(_run_shard(cfg_dict, s))

    counters = dict.fromkeys(("enumerated",) + STAGES, 0)
    results, rejects, disagreements = [], [], []
    for s in range(n_shards):
        res = done[s]
        for k, v in res["counters"].items():
            counters[k] += v
        rejects.extend(res["rejects"])
        disagreements.extend(res["disagreements"])
        for h in res["hits"]:
            g = GTable(ctx, tuple(h["values"]))
            results.append(SearchResult(h["index"], GCoeffs(ctx, tuple(h["coeffs"])),
                                        verify_all(g), point_set_digest(g)))
    rejects.sort(key=lambda r: r[0])
    sample = rejects[:cfg.recheck]
    confirmed = sum(1 for _, vals in sample
                    if not check_geometric(ctx, points_from_g(GTable(ctx, tuple(vals)))).verdict)
    unique = dedupe(results)
    counters["unique_hits"] = len(unique)
    return SearchOutcome(cfg, counters, unique,
                         {"sampled": len(sample), "confirmed_nonhyperoval": confirmed},
                         disagreements)


def dedupe(results: list[SearchResult]) -> list[SearchResult]:
    """Keep the first result for each distinct point set."""
    seen = set()
    out = []
    for r in results:
        if r.point_set_digest not in seen:
            seen.add(r.point_set_digest)
            out.append(r)
    return out
