"""End-to-end acceptance criteria at full scale.

Each test prints one PASS/FAIL line. Run directly with
``python3 tests/test_acceptance.py`` for the summary alone.
"""

import math
import random
import sys
import time
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_assignment, random_formula  # noqa: E402
from logic_composer import catalog, composer  # noqa: E402
from logic_composer import geometry as geo  # noqa: E402
from logic_composer import report, sampling  # noqa: E402
from logic_composer.formula import are_equivalent, evaluate, is_tautology, normalize  # noqa: E402
from logic_composer.sampling import FALSIFIED, NOT_FALSIFIED, SamplerConfig  # noqa: E402
from logic_composer.text import parse, to_text  # noqa: E402

SAMPLES = 10_000
TOL = 1e-9
SLICE_TOL = 1e-12
CFG = SamplerConfig(seed=42, sample_count=SAMPLES, tol_verify=TOL, tol_solve=SLICE_TOL)
CAPSTONE_CFG = SamplerConfig(seed=7, sample_count=SAMPLES, tol_verify=TOL, tol_solve=SLICE_TOL)

GOLDEN = {
    "generating_p": "t & p -> r",
    "generating_q": "t & q -> r",
    "composed": "t & (p | q) -> r",
    "inverse": "t & r -> p | q",
    "conditional_p": "t & r & ~q -> p",
    "conditional_q": "t & r & ~p -> q",
    "homogenized": "t & r -> p ^ ~p & q",
}


# collected for the pytest terminal summary (see conftest.py)
ACCEPTANCE_LINES = []


def announce(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return ok


@lru_cache(maxsize=None)
def slice_records(group):
    return tuple(sampling.premise_samples(group, {"r"}, CFG))


def criterion_1():
    start = time.perf_counter()
    checks = [
        is_tautology(parse("((t & p -> r) & (t & q -> r)) <-> (t & (p | q) -> r)")),
        is_tautology(parse("(p | q) <-> (p ^ ~p & q)")),
        are_equivalent(parse("t & r & ~q -> p"), parse("t & r -> p | q")),
        are_equivalent(parse("t & r & ~p -> q"), parse("t & r -> p | q")),
    ]
    composed, inverse = parse("t & (p | q) -> r"), parse("t & r -> p | q")
    v = composer.classify(composed, inverse)
    checks.append(v.classification == composer.INDEPENDENT)
    fwd = {"t": True, "r": True, "p": False, "q": False}
    bwd = {"t": True, "p": True, "q": False, "r": False}
    for w, (a, b) in ((fwd, (composed, inverse)), (bwd, (inverse, composed)), (v.forward_witness, (composed, inverse)), (v.backward_witness, (inverse, composed))):
        checks.append(evaluate(a, w) and not evaluate(b, w))
    elapsed = time.perf_counter() - start
    ok = all(checks) and elapsed < 1.0
    return ok, f"propositional suite {sum(checks)}/{len(checks)} checks in {elapsed:.3f} s"


def criterion_2():
    start = time.perf_counter()
    bad, worst = [], 0.0
    for g in geo.GROUPS:
        for atom in ("p", "q"):
            rep = sampling.check_implication(g, {atom}, "r", CFG)
            worst = max(worst, rep.max_residual)
            if rep.verdict != NOT_FALSIFIED or rep.accepted != SAMPLES:
                bad.append(f"{g}:{atom}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60.0
    return ok, f"8 generating runs, failures {bad or 'none'}, max r residual {worst:.1e}, {elapsed:.1f} s"


def criterion_3():
    bad, worst = [], 0.0
    for g in geo.GROUPS:
        recs = slice_records(g)
        if any(r is None for r in recs):
            bad.append(f"{g}:rejected")
            continue
        worst = max(worst, max(r.residuals["r"] for r in recs))
        rep = sampling.check_implication(g, {"r"}, "p | q", CFG, records=recs)
        if rep.verdict != NOT_FALSIFIED:
            bad.append(f"{g}:p|q")
        for atom in ("p", "q"):
            found = sampling.find_counterexample(g, f"r -> {atom}", CFG, records=recs)
            if found is None or found[1][atom] < TOL:
                bad.append(f"{g}:r->{atom}")
    ok = not bad and worst < SLICE_TOL
    return ok, f"4 slices x {SAMPLES}, max slice residual {worst:.1e}, failures {bad or 'none'}"


def criterion_4():
    lhs, rhs = parse("p | q"), parse("p ^ ~p & q")
    mismatches = judged = 0
    for g in geo.GROUPS:
        for rec in slice_records(g):
            truth = {a: v < TOL for a, v in rec.residuals.items()}
            judged += 1
            mismatches += evaluate(lhs, truth) != evaluate(rhs, truth)
    return mismatches == 0, f"{judged} slice triangles, {mismatches} disagreements"


def criterion_5():
    (rep,) = catalog.verify("capstone", CAPSTONE_CFG)
    ok = rep.verdict == NOT_FALSIFIED and rep.accepted == 2 * SAMPLES and rep.near_threshold == 0
    return ok, (
        f"{rep.conclusion} on both r-slices: {rep.evaluated}/{rep.attempted} judged, "
        f"{rep.failure_count} failures"
    )


def criterion_6():
    wrong = []
    for g in geo.GROUPS:
        for e in catalog.derive_set(g).entries():
            if normalize(e.structure.formula) != normalize(parse(GOLDEN[e.kind])):
                wrong.append(f"{g}:{e.kind}")
    return not wrong, f"28 derived problems, mismatches {wrong or 'none'}"


def criterion_7():
    rng = random.Random(2024)
    round_trip = all(
        parse(to_text(f)) == f for f in (random_formula(rng) for _ in range(10_000))
    )
    sound = True
    for _ in range(10_000):
        f, a = random_formula(rng), random_assignment(rng)
        sound &= evaluate(f, a) == evaluate(normalize(f), a)
    worst = 0.0
    np_rng = sampling.stream(99, 0)
    for i in range(1000):
        tri = sampling.sample_triangle(CFG, sampling.stream(99, i))
        theta, scale = np_rng.uniform(0, 2 * math.pi), 10 ** np_rng.uniform(-3, 3)
        # shift in units of the triangle size; an absolute far shift of a tiny
        # triangle only measures rounding of the moved input coordinates
        dx, dy = scale * np_rng.uniform(-50, 50, size=2)
        c, s = math.cos(theta), math.sin(theta)
        moved = [(scale * (c * x - s * y) + dx, scale * (s * x + c * y) + dy) for x, y in tri.points]
        for g in geo.GROUPS:
            before, after = geo.residuals(g, *tri.points), geo.residuals(g, *moved)
            worst = max(worst, max(abs(before[a] - after[a]) for a in geo.ATOMS))
    docs = []
    for _ in range(2):
        reps = catalog.verify("II", CFG)
        docs.append(report.dumps(report.without_duration(report.build_document("verify", "II", CFG, reps, 0.0))))
    identical = docs[0] == docs[1]
    ok = round_trip and sound and worst < 1e-10 and identical
    return ok, (
        f"round trip {round_trip}, normalize sound {sound}, "
        f"similarity drift {worst:.1e}, repeat reports identical {identical}"
    )


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


@pytest.mark.parametrize("number", range(1, 8))
def test_acceptance(number):
    ok, detail = CRITERIA[number - 1]()
    assert announce(number, ok, detail), detail


if __name__ == "__main__":
    results = [announce(n, *fn()) for n, fn in enumerate(CRITERIA, 1)]
    sys.exit(0 if all(results) else 1)
