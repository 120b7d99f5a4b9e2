"""Composition, inversion and rewriting of implication-shaped problems.

A problem is an :class:`ImplicationStructure`: a list of premise conjuncts and
a conclusion. Conjuncts are kept in the order they were written (so ``t & r``
stays ``t & r`` when printed) while every comparison goes through
:func:`~logic_composer.formula.normalize`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .formula import (
    And,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Xor,
    conj,
    disj,
    find_falsifying,
    is_tautology,
    normalize,
)
from .text import parse, to_text


class CompositionError(ValueError):
    pass


class ConclusionMismatchError(CompositionError):
    pass


class EmptyContextError(CompositionError):
    pass


class NotADisjunctionError(CompositionError):
    pass


def _negate(f: Formula) -> Formula:
    return f.child if isinstance(f, Not) else Not(f)


@dataclass(frozen=True)
class ImplicationStructure:
    premise: tuple
    conclusion: Formula

    def __post_init__(self):
        if not self.premise:
            raise CompositionError("premise needs at least one conjunct")
        parts = []
        seen = set()
        for p in self.premise:
            for c in _ordered_conjuncts(p):
                key = normalize(c)
                if key not in seen:
                    seen.add(key)
                    parts.append(c)
        object.__setattr__(self, "premise", tuple(parts))

    @property
    def premise_keys(self) -> tuple:
        return tuple(normalize(c) for c in self.premise)

    @classmethod
    def from_formula(cls, f: Union[Formula, str]) -> "ImplicationStructure":
        if isinstance(f, str):
            f = parse(f)
        if not isinstance(f, Implies):
            raise CompositionError(f"not an implication: {to_text(f)}")
        return cls(_ordered_conjuncts(f.left), f.right)

    @property
    def premise_formula(self) -> Formula:
        return conj(*self.premise)

    @property
    def formula(self) -> Formula:
        return Implies(self.premise_formula, self.conclusion)

    def canonical(self) -> Formula:
        return normalize(self.formula)

    def same_as(self, other: "ImplicationStructure") -> bool:
        """Structural equality up to conjunct order and duplicates."""
        return self.canonical() == other.canonical()

    def __str__(self):
        return to_text(self.formula)


def _ordered_conjuncts(f: Formula) -> tuple:
    # flatten And without sorting so the author's order survives
    if isinstance(f, And):
        out = []
        for c in f.children:
            out.extend(_ordered_conjuncts(c))
        return tuple(out)
    return (f,)


def structure(f: Union[Formula, str, ImplicationStructure]) -> ImplicationStructure:
    if isinstance(f, ImplicationStructure):
        return f
    return ImplicationStructure.from_formula(f)


def _check_equivalent(before: Formula, after: Formula, what: str):
    if not is_tautology(Iff(before, after)):
        raise CompositionError(f"internal check failed: {what} is not equivalent to its source")


def compose(g1, g2, allow_empty_context: bool = False) -> ImplicationStructure:
    """Combine ``t & p -> r`` and ``t & q -> r`` into ``t & (p | q) -> r``."""
    g1, g2 = structure(g1), structure(g2)
    if normalize(g1.conclusion) != normalize(g2.conclusion):
        raise ConclusionMismatchError(
            f"conclusions differ: {to_text(g1.conclusion)} vs {to_text(g2.conclusion)}"
        )
    shared = set(g1.premise_keys) & set(g2.premise_keys)
    context = [c for c, k in zip(g1.premise, g1.premise_keys) if k in shared]
    left = [c for c, k in zip(g1.premise, g1.premise_keys) if k not in shared]
    right = [c for c, k in zip(g2.premise, g2.premise_keys) if k not in shared]
    if not left or not right:
        raise CompositionError("each generating premise needs a conjunct outside the shared context")
    if not context and not allow_empty_context:
        raise EmptyContextError("generating problems share no premise conjunct")
    cases = disj(conj(*left), conj(*right))
    result = ImplicationStructure(tuple(context) + (cases,), g1.conclusion)
    _check_equivalent(And((g1.formula, g2.formula)), result.formula, "composition")
    return result


@dataclass(frozen=True)
class InverseCandidate:
    structure: ImplicationStructure
    moved: tuple  # premise conjuncts kept on the premise side next to the old conclusion

    def __str__(self):
        return str(self.structure)


def invert_all(src) -> list:
    """Every inverse of ``src``: for each proper subset S of premise conjuncts,
    ``S & r -> (remaining conjuncts)``. Subsets are visited in bit-mask order."""
    src = structure(src)
    n = len(src.premise)
    out = []
    for mask in range((1 << n) - 1):
        kept = tuple(c for i, c in enumerate(src.premise) if mask >> i & 1)
        swapped = [c for i, c in enumerate(src.premise) if not mask >> i & 1]
        inv = ImplicationStructure(kept + (src.conclusion,), conj(*swapped))
        out.append(InverseCandidate(inv, kept))
    return out


def _as_formula(x) -> Formula:
    if isinstance(x, Formula):
        return normalize(x)
    return normalize(parse(x))


def _binary_disjuncts(inv: ImplicationStructure) -> tuple:
    c = inv.conclusion
    if not isinstance(c, Or) or len(c.children) != 2:
        raise NotADisjunctionError(f"conclusion is not a binary disjunction: {to_text(c)}")
    return c.children


def conditionalize(inv, keep) -> ImplicationStructure:
    """Rewrite ``t & r -> p | q`` as ``t & r & ~q -> p`` (keep=p)."""
    inv = structure(inv)
    a, b = _binary_disjuncts(inv)
    key = _as_formula(keep)
    if key == normalize(a):
        keep, other = a, b
    elif key == normalize(b):
        keep, other = b, a
    else:
        raise CompositionError(f"{to_text(key)} is not a disjunct of {to_text(inv.conclusion)}")
    result = ImplicationStructure(inv.premise + (_negate(other),), keep)
    _check_equivalent(inv.formula, result.formula, "conditional form")
    return result


def homogenize(inv) -> ImplicationStructure:
    """Rewrite the conclusion ``p | q`` as ``p ^ ~p & q``."""
    inv = structure(inv)
    a, b = _binary_disjuncts(inv)
    result = ImplicationStructure(inv.premise, Xor(a, conj(_negate(a), b)))
    _check_equivalent(inv.formula, result.formula, "homogenized form")
    return result


TAUTOLOGICAL_EQUIVALENCE = "tautological-equivalence"
FORWARD_ONLY = "forward-only"
BACKWARD_ONLY = "backward-only"
INDEPENDENT = "independent"


@dataclass(frozen=True)
class RelationVerdict:
    classification: str
    forward_witness: Optional[dict] = None  # falsifies a -> b
    backward_witness: Optional[dict] = None  # falsifies b -> a

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "forward_witness": self.forward_witness,
            "backward_witness": self.backward_witness,
        }


def classify(a, b) -> RelationVerdict:
    fa = a.formula if isinstance(a, ImplicationStructure) else a
    fb = b.formula if isinstance(b, ImplicationStructure) else b
    fwd = find_falsifying(Implies(fa, fb))
    bwd = find_falsifying(Implies(fb, fa))
    if fwd is None and bwd is None:
        kind = TAUTOLOGICAL_EQUIVALENCE
    elif fwd is None:
        kind = FORWARD_ONLY
    elif bwd is None:
        kind = BACKWARD_ONLY
    else:
        kind = INDEPENDENT
    return RelationVerdict(kind, fwd, bwd)
