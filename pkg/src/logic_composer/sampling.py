"""Seeded triangle sampling, slice solving and Monte-Carlo implication checks.

Every sample index draws from its own generator seeded by ``(seed, index)``,
so a run gives the same report whatever the execution order or worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable, Iterator, Optional

import numpy as np

from . import geometry as geo
from .formula import Formula, atoms, evaluate
from .text import parse, to_text

A0: geo.Point = (0.0, 0.0)
B0: geo.Point = (1.0, 0.0)

NOT_FALSIFIED = "not-falsified"
FALSIFIED = "falsified"

MAX_RECORDED_FAILURES = 10
THREADS_ENV = "LOGIC_COMPOSER_THREADS"


class SamplingError(RuntimeError):
    pass


class RejectionBudgetError(SamplingError):
    pass


class SolverBudgetError(SamplingError):
    pass


class NoSignChangeError(SamplingError):
    pass


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 42
    sample_count: int = 10_000
    tol_solve: float = 1e-12
    tol_verify: float = 1e-9
    min_area_ratio: float = geo.MIN_AREA_RATIO
    min_angle: float = geo.MIN_ANGLE
    # apex box (x_min, x_max, y_min, y_max) above the base A=(0,0), B=(1,0)
    box: tuple = (-1.0, 2.0, 0.0, 2.0)
    max_tries: int = 10_000
    slice_attempts: int = 50

    def __post_init__(self):
        object.__setattr__(self, "box", tuple(float(v) for v in self.box))
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")
        if not 0 < self.tol_solve < self.tol_verify:
            raise ValueError("need 0 < tol_solve < tol_verify")
        x0, x1, y0, y1 = self.box
        if x0 > x1 or y0 > y1:
            raise ValueError(f"malformed box {self.box}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["box"] = list(self.box)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SamplerConfig":
        return cls(**d)


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample ``index`` of a run seeded with ``seed``."""
    ss = np.random.SeedSequence(entropy=seed & 0xFFFF_FFFF_FFFF_FFFF, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss))


def _ok(C, cfg: SamplerConfig) -> bool:
    return geo.is_nondegenerate(A0, B0, C, cfg.min_area_ratio, cfg.min_angle)


def _box_apex(cfg: SamplerConfig, rng: np.random.Generator) -> geo.Point:
    x0, x1, y0, y1 = cfg.box
    for _ in range(cfg.max_tries):
        C = (float(rng.uniform(x0, x1)), float(rng.uniform(y0, y1)))
        if _ok(C, cfg):
            return C
    raise RejectionBudgetError(f"no nondegenerate apex in box {cfg.box} after {cfg.max_tries} tries")


def sample_triangle(cfg: SamplerConfig, rng: np.random.Generator) -> geo.Triangle:
    """Triangle with A=(0,0), B=(1,0) and a uniform apex from the config box."""
    return geo.Triangle(A0, B0, _box_apex(cfg, rng))


def _arc_apex(gamma: float, rng) -> geo.Point:
    # points above AB that see AB under the angle gamma
    R = 0.5 / math.sin(gamma)
    yc = 0.5 / math.tan(gamma)
    phi = rng.uniform(gamma - math.pi / 2, 3 * math.pi / 2 - gamma)
    return (0.5 + R * math.cos(phi), yc + R * math.sin(phi))


def _family_apex(group: str, kind: str, cfg: SamplerConfig, rng) -> geo.Point:
    ymax = cfg.box[3]
    if group == "I":
        if kind == "p":
            theta = rng.uniform(0.0, math.pi)
            return (math.cos(theta), math.sin(theta))
        if kind == "q":
            return (0.0, float(rng.uniform(0.0, ymax)))
        return (0.0, 1.0)
    if kind == "p":
        return (0.5, float(rng.uniform(0.0, ymax)))
    gamma = math.pi / 2 if group == "III" else math.pi / 3
    if kind == "q":
        return _arc_apex(gamma, rng)
    return (0.5, 0.5 / math.tan(gamma / 2))


def sample_family(group: str, kind: str, cfg: SamplerConfig, rng) -> geo.Triangle:
    """Constructive sample with premise ``kind`` in {"p", "q", "pq"} true by construction."""
    for _ in range(cfg.max_tries):
        C = _family_apex(group, kind, cfg, rng)
        if _ok(C, cfg):
            return geo.Triangle(A0, B0, C)
    raise RejectionBudgetError(f"family {group}.{kind}: no nondegenerate sample in budget")


def bisect_segment(f: Callable, C0, C1, tol: float):
    """Bisect ``f`` along C0 -> C1 down to floating-point resolution.

    Returns the apex with the smallest |f| seen, or None if it is not below ``tol``.
    """
    f0, f1 = f(C0), f(C1)
    if f0 == 0.0:
        return C0
    if f1 == 0.0:
        return C1
    if (f0 < 0) == (f1 < 0):
        raise NoSignChangeError("residual has the same sign at both endpoints")
    lo, hi = 0.0, 1.0
    best_val, best_s = abs(f0), 0.0
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = f(geo.lerp(C0, C1, mid))
        if abs(fm) < best_val:
            best_val, best_s = abs(fm), mid
        if fm == 0.0:
            break
        if (fm < 0) == (f0 < 0):
            lo, f0 = mid, fm
        else:
            hi = mid
    return geo.lerp(C0, C1, best_s) if best_val < tol else None


def _slice_apex(group: str, atom: str, cfg: SamplerConfig, rng, residual=None) -> geo.Point:
    f = residual or (lambda C: geo.signed_residual(group, atom, A0, B0, C))
    for _ in range(cfg.slice_attempts):
        C0 = _box_apex(cfg, rng)
        s0 = f(C0)
        for _ in range(cfg.max_tries):
            C1 = _box_apex(cfg, rng)
            if (f(C1) < 0) != (s0 < 0):
                break
        else:
            continue
        C = bisect_segment(f, C0, C1, cfg.tol_solve)
        if C is None or not _ok(C, cfg):
            continue
        if geo.raw_residual(group, atom, A0, B0, C) < cfg.tol_solve:
            return C
    raise SolverBudgetError(
        f"slice {group}.{atom}: no solution after {cfg.slice_attempts} endpoint pairs"
    )


def solve_on_slice(group: str, cfg: SamplerConfig, rng, atom: str = "r") -> geo.Triangle:
    """Triangle on which the ``atom`` predicate of ``group`` holds to ``cfg.tol_solve``."""
    return geo.Triangle(A0, B0, _slice_apex(group, atom, cfg, rng))


@dataclass(frozen=True)
class SampleRecord:
    index: int
    triangle: geo.Triangle
    residuals: dict


def premise_generator(premise) -> str:
    premise = frozenset(premise)
    unknown = premise - {"p", "q", "r"}
    if unknown:
        raise ValueError(f"premise atoms must be among p, q, r; got {sorted(unknown)}")
    if {"p", "q"} <= premise:
        return "pq"
    if "p" in premise:
        return "p"
    if "q" in premise:
        return "q"
    if "r" in premise:
        return "r"
    return "box"


def premise_sample(group: str, premise, cfg: SamplerConfig, index: int) -> Optional[SampleRecord]:
    """Sample ``index`` of a premise run; None if the premise fails on it."""
    rng = stream(cfg.seed, index)
    kind = premise_generator(premise)
    if kind == "box":
        tri = sample_triangle(cfg, rng)
    elif kind == "r":
        tri = solve_on_slice(group, cfg, rng)
    else:
        tri = sample_family(group, kind, cfg, rng)
    res = geo.residuals(group, *tri.points)
    if any(res[a] >= cfg.tol_verify for a in premise):
        return None
    return SampleRecord(index, tri, res)


def _chunk(group, premise, cfg, indices):
    return [premise_sample(group, premise, cfg, i) for i in indices]


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def premise_samples(group: str, premise, cfg: SamplerConfig, workers: Optional[int] = None) -> list:
    """All ``cfg.sample_count`` samples of a premise run, in index order (None for rejects)."""
    premise = frozenset(premise)
    workers = worker_count() if workers is None else workers
    indices = list(range(cfg.sample_count))
    if workers <= 1 or len(indices) < 2 * workers:
        return _chunk(group, premise, cfg, indices)
    chunks = [indices[k::workers] for k in range(workers)]
    out = [None] * len(indices)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk, part in zip(chunks, pool.map(partial(_chunk, group, premise, cfg), chunks)):
            for i, rec in zip(chunk, part):
                out[i] = rec
    return out


@dataclass
class VerificationReport:
    group: str
    premise: str
    conclusion: str
    attempted: int = 0
    accepted: int = 0
    near_threshold: int = 0
    evaluated: int = 0
    max_residual: float = 0.0
    failure_count: int = 0
    failures: list = field(default_factory=list)
    verdict: str = NOT_FALSIFIED
    label: str = ""
    problem: Optional[str] = None
    expected: Optional[str] = None

    @property
    def expectation_met(self) -> bool:
        return self.expected is None or self.verdict == self.expected

    def to_dict(self) -> dict:
        d = asdict(self)
        d["expectation_met"] = self.expectation_met
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        d = dict(d)
        d.pop("expectation_met", None)
        return cls(**d)


def failure_entry(rec: SampleRecord) -> dict:
    return {"index": rec.index, "triangle": rec.triangle.to_list(), "residuals": dict(rec.residuals)}


def evaluate_records(records, conclusion: Formula, tol: float, report: VerificationReport) -> VerificationReport:
    """Fold sample records into ``report`` for the given conclusion.

    Atom truth is ``residual < tol``. Samples where a conclusion atom sits within
    a decade of ``tol`` are counted as near-threshold and not judged.
    """
    names = atoms(conclusion)
    lo, hi = tol / 10, tol * 10
    for rec in records:
        report.attempted += 1
        if rec is None:
            continue
        report.accepted += 1
        res = rec.residuals
        if any(lo <= res[a] <= hi for a in names):
            report.near_threshold += 1
            continue
        truth = {a: res[a] < tol for a in res}
        report.evaluated += 1
        if evaluate(conclusion, truth):
            true_res = [res[a] for a in names if truth[a]]
            if true_res:
                report.max_residual = max(report.max_residual, max(true_res))
        else:
            report.failure_count += 1
            if len(report.failures) < MAX_RECORDED_FAILURES:
                report.failures.append(failure_entry(rec))
    report.verdict = FALSIFIED if report.failure_count else NOT_FALSIFIED
    return report


def _as_formula(x) -> Formula:
    return parse(x) if isinstance(x, str) else x


def _premise_text(premise) -> str:
    return " & ".join(["t"] + sorted(premise))


def check_implication(group: str, premise, conclusion, cfg: SamplerConfig, records=None, **meta) -> VerificationReport:
    """Monte-Carlo check of ``t & premise -> conclusion`` on ``group``."""
    if group not in geo.GROUPS:
        raise geo.UnknownPredicateError(f"unknown group {group!r}")
    conclusion = _as_formula(conclusion)
    extra = set(atoms(conclusion)) - set(geo.ATOMS)
    if extra:
        raise ValueError(f"conclusion uses unknown atoms {sorted(extra)}")
    premise = frozenset(premise)
    if records is None:
        records = premise_samples(group, premise, cfg)
    report = VerificationReport(group, _premise_text(premise), to_text(conclusion), **meta)
    return evaluate_records(records, conclusion, cfg.tol_verify, report)


def slice_records(group: str, cfg: SamplerConfig) -> Iterator[SampleRecord]:
    for i in range(cfg.sample_count):
        rec = premise_sample(group, {"r"}, cfg, i)
        if rec is not None:
            yield rec


def find_counterexample(group: str, claim, cfg: SamplerConfig, records=None):
    """First triangle on the t & r slice that falsifies ``claim``.

    Returns ``(triangle, residuals)`` or None when the budget finds nothing.
    """
    claim = _as_formula(claim)
    names = atoms(claim)
    tol = cfg.tol_verify
    for rec in (records if records is not None else slice_records(group, cfg)):
        if rec is None:
            continue
        if any(tol / 10 <= rec.residuals[a] <= tol * 10 for a in names):
            continue
        truth = {a: v < tol for a, v in rec.residuals.items()}
        if not evaluate(claim, truth):
            return rec.triangle, dict(rec.residuals)
    return None


def counterexample_report(group: str, claim, cfg: SamplerConfig, records=None, **meta) -> VerificationReport:
    """Report form of :func:`find_counterexample`; falsified means a witness was found."""
    claim = _as_formula(claim)
    report = VerificationReport(group, "t & r", to_text(claim), **meta)
    for rec in (records if records is not None else slice_records(group, cfg)):
        report.attempted += 1
        if rec is None:
            continue
        report.accepted += 1
        if find_counterexample(group, claim, cfg, records=[rec]) is not None:
            report.failure_count = 1
            report.failures.append(failure_entry(rec))
            break
    report.evaluated = report.accepted
    report.verdict = FALSIFIED if report.failure_count else NOT_FALSIFIED
    return report
