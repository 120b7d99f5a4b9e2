"""The four problem groups and the capstone biconditional, as data.

Each group binds the atoms p, q, r to geometric predicates; the context t is
the group's construction. :func:`derive_set` builds the whole problem family
from the two generating implications using only composer operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import composer
from . import geometry as geo
from . import sampling
from .composer import ImplicationStructure
from .sampling import FALSIFIED, NOT_FALSIFIED, SamplerConfig, VerificationReport
from .text import parse, to_text


class UnknownGroupError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemSchema:
    group: str
    context: str
    bindings: dict  # atom -> (group, atom) predicate id
    statements: dict  # atom -> readable statement
    problems: dict  # DerivedProblemSet field -> problem number or None

    def predicate_id(self, atom: str) -> str:
        g, a = self.bindings[atom]
        return f"{g}.{a}"


_CONTEXT = {
    "I": "AD is the median of triangle ABC, D on BC",
    "II": "AA1 and BB1 bisect angles CAB and CBA (A1 on BC, B1 on AC) and meet at J",
    "III": "CH is the altitude and CM the median of triangle ABC (H, M on AB), labeled so that alpha >= beta",
    "IV": "F, D, E are the midpoints of BC, CA, AB and G is the circumcenter of triangle FDE",
}

# generating-1, generating-2, composed, inverse, conditional-p, conditional-q, homogenized
_NUMBERS = {
    "I": ("4.1", "4.2", None, "4.3", "4.4", "4.5", "4.6"),
    "II": ("4.7", "4.8", None, "4.9", "4.11", "4.10", "4.12"),
    "III": ("4.13", "4.14", None, "4.15", None, None, "4.17"),
    "IV": ("4.18", "4.19", None, "4.20", "4.22", "4.21", "4.23"),
}

KINDS = (
    "generating_p",
    "generating_q",
    "composed",
    "inverse",
    "conditional_p",
    "conditional_q",
    "homogenized",
)


def _check_group(group: str):
    if group not in geo.GROUPS:
        raise UnknownGroupError(f"unknown group {group!r}; expected one of {', '.join(geo.GROUPS)}")


def schema(group: str) -> ProblemSchema:
    _check_group(group)
    return ProblemSchema(
        group=group,
        context=_CONTEXT[group],
        bindings={a: (group, a) for a in geo.ATOMS},
        statements={a: geo.PREDICATE_TEXT[(group, a)] for a in geo.ATOMS},
        problems=dict(zip(KINDS, _NUMBERS[group])),
    )


@dataclass(frozen=True)
class DerivedProblem:
    kind: str
    structure: ImplicationStructure
    problem: Optional[str]

    @property
    def text(self) -> str:
        return str(self.structure)

    @property
    def tag(self) -> str:
        return f"Problem {self.problem}" if self.problem else "implicit"


@dataclass(frozen=True)
class DerivedProblemSet:
    group: str
    generating_p: DerivedProblem
    generating_q: DerivedProblem
    composed: DerivedProblem
    inverse: DerivedProblem
    conditional_p: DerivedProblem
    conditional_q: DerivedProblem
    homogenized: DerivedProblem

    def entries(self) -> list:
        return [getattr(self, k) for k in KINDS]

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "problems": [
                {"kind": e.kind, "formula": e.text, "problem": e.problem} for e in self.entries()
            ],
        }


def derive_set(group: str) -> DerivedProblemSet:
    """Problem family of ``group`` derived from its two generating problems."""
    sch = schema(group)
    g1 = composer.structure("t & p -> r")
    g2 = composer.structure("t & q -> r")
    composed = composer.compose(g1, g2)
    # the inverse that moves only the context t keeps it next to r
    inverse = next(
        c.structure for c in composer.invert_all(composed) if [str(m) for m in c.moved] == ["t"]
    )
    made = {
        "generating_p": g1,
        "generating_q": g2,
        "composed": composed,
        "inverse": inverse,
        "conditional_p": composer.conditionalize(inverse, "p"),
        "conditional_q": composer.conditionalize(inverse, "q"),
        "homogenized": composer.homogenize(inverse),
    }
    return DerivedProblemSet(
        group=group, **{k: DerivedProblem(k, s, sch.problems[k]) for k, s in made.items()}
    )


def catalog_document() -> dict:
    """All groups and their derived problems as plain data."""
    groups = []
    for g in geo.GROUPS:
        sch = schema(g)
        groups.append(
            {
                "group": g,
                "context": sch.context,
                "atoms": {a: {"predicate": sch.predicate_id(a), "statement": sch.statements[a]} for a in geo.ATOMS},
                "problems": derive_set(g).to_dict()["problems"],
            }
        )
    return {
        "groups": groups,
        "capstone": {
            "left": "IV.r",
            "right": "II.r",
            "relation": "biconditional",
            "problem": "5.1",
        },
    }


def verify_group(group: str, cfg: SamplerConfig) -> list:
    """Run the full battery for ``group``; one report per expectation."""
    _check_group(group)
    ds = derive_set(group)
    records = {}

    def recs(premise):
        key = frozenset(premise)
        if key not in records:
            records[key] = sampling.premise_samples(group, key, cfg)
        return records[key]

    reports = []

    def run(label, problem, premise, conclusion):
        reports.append(
            sampling.check_implication(
                group, premise, conclusion, cfg, records=recs(premise),
                label=label, problem=problem, expected=NOT_FALSIFIED,
            )
        )

    run("generating-p", ds.generating_p.problem, {"p"}, ds.generating_p.structure.conclusion)
    run("generating-q", ds.generating_q.problem, {"q"}, ds.generating_q.structure.conclusion)
    run("inverse", ds.inverse.problem, {"r"}, ds.inverse.structure.conclusion)
    # conditional forms t & r & ~x -> y are checked on the t & r slice as ~x -> y
    for entry in (ds.conditional_p, ds.conditional_q):
        neg = [c for c in entry.structure.premise if str(c) not in ("t", "r")]
        run(entry.kind.replace("_", "-"), entry.problem, {"r"}, f"{to_text(neg[0])} -> {entry.structure.conclusion}")
    run("homogenized", ds.homogenized.problem, {"r"}, ds.homogenized.structure.conclusion)
    run(
        "homogenized-agreement", ds.homogenized.problem, {"r"},
        f"({ds.inverse.structure.conclusion}) <-> ({ds.homogenized.structure.conclusion})",
    )
    for atom in ("p", "q"):
        reports.append(
            sampling.counterexample_report(
                group, f"r -> {atom}", cfg, records=recs({"r"}),
                label=f"counterexample-r-{atom}",
                problem=ds.inverse.problem, expected=FALSIFIED,
            )
        )
    return reports


CAPSTONE_CLAIM = "(rII <-> rIV) & (p | q)"


def capstone_residuals(tri: geo.Triangle) -> dict:
    """Residuals of p, q (shared by groups II and IV) and of both r predicates."""
    res = geo.residuals("II", *tri.points)
    return {"p": res["p"], "q": res["q"], "rII": res["r"], "rIV": geo.raw_residual("IV", "r", *tri.points)}


def capstone_sides(tri: geo.Triangle, tol: float = 1e-9) -> tuple:
    """Truth of (G on the bisector of ACB, JA1 = JB1) on ``tri``."""
    res = capstone_residuals(tri)
    return res["rIV"] < tol, res["rII"] < tol


def _capstone_records(slice_group: str, cfg: SamplerConfig) -> list:
    out = []
    for rec in sampling.premise_samples(slice_group, {"r"}, cfg):
        if rec is not None:
            rec = sampling.SampleRecord(rec.index, rec.triangle, capstone_residuals(rec.triangle))
        out.append(rec)
    return out


def verify_capstone(cfg: SamplerConfig) -> VerificationReport:
    """Check G-on-bisector <-> JA1 = JB1 on both r-slices, plus the p | q dispatch."""
    claim = parse(CAPSTONE_CLAIM)
    report = VerificationReport(
        "capstone", "t & (rIV | rII)", to_text(claim),
        label="capstone", problem="5.1", expected=NOT_FALSIFIED,
    )
    for slice_group in ("IV", "II"):
        sampling.evaluate_records(_capstone_records(slice_group, cfg), claim, cfg.tol_verify, report)
    return report


def verify(target: str, cfg: SamplerConfig) -> list:
    if target == "capstone":
        return [verify_capstone(cfg)]
    return verify_group(target, cfg)
