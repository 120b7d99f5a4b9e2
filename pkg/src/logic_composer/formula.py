"""Propositional formulas over named atoms.

Formulas are immutable dataclass trees. ``And``/``Or`` are n-ary, ``Xor``,
``Implies`` and ``Iff`` are binary. All decision procedures are exhaustive
truth-table enumerations in a fixed order: atoms sorted lexicographically,
first atom most significant, rows counted upward from all-false.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

MAX_ATOMS = 24

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class FormulaError(ValueError):
    pass


class EvaluationError(FormulaError):
    def __init__(self, atom: str):
        super().__init__(f"assignment has no value for atom {atom!r}")
        self.atom = atom


class AtomLimitError(FormulaError):
    def __init__(self, count: int, limit: int = MAX_ATOMS):
        super().__init__(f"{count} atoms exceeds the truth-table limit of {limit}")
        self.count = count
        self.limit = limit


class Formula:
    """Base class for formula nodes. Supports ``~ & | ^`` as constructors."""

    __slots__ = ()

    def __invert__(self) -> "Not":
        return Not(self)

    def __and__(self, other: "Formula") -> "And":
        return And((self, other))

    def __or__(self, other: "Formula") -> "Or":
        return Or((self, other))

    def __xor__(self, other: "Formula") -> "Xor":
        return Xor(self, other)

    def __str__(self) -> str:
        from .text import to_text

        return to_text(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _IDENT.match(self.name):
            raise FormulaError(f"invalid atom name {self.name!r}")

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Not(Formula):
    child: Formula

    def __repr__(self):
        return f"Not({self.child!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise FormulaError("And needs at least two children")

    def __repr__(self):
        return f"And{self.children!r}"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise FormulaError("Or needs at least two children")

    def __repr__(self):
        return f"Or{self.children!r}"


@dataclass(frozen=True, repr=False)
class Xor(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Xor({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Iff(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Iff({self.left!r}, {self.right!r})"


def conj(*parts: Formula) -> Formula:
    """Conjunction of ``parts``; a single part is returned as is."""
    if not parts:
        raise FormulaError("empty conjunction")
    flat = []
    for part in parts:
        flat.extend(part.children if isinstance(part, And) else (part,))
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*parts: Formula) -> Formula:
    if not parts:
        raise FormulaError("empty disjunction")
    flat = []
    for part in parts:
        flat.extend(part.children if isinstance(part, Or) else (part,))
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def children(f: Formula) -> tuple:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, Not):
        return (f.child,)
    if isinstance(f, (And, Or)):
        return f.children
    return (f.left, f.right)


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        try:
            return bool(assignment[f.name])
        except KeyError:
            raise EvaluationError(f.name) from None
    if isinstance(f, Not):
        return not evaluate(f.child, assignment)
    if isinstance(f, And):
        # evaluate every child so a missing atom is always reported
        values = [evaluate(c, assignment) for c in f.children]
        return all(values)
    if isinstance(f, Or):
        values = [evaluate(c, assignment) for c in f.children]
        return any(values)
    left = evaluate(f.left, assignment)
    right = evaluate(f.right, assignment)
    if isinstance(f, Xor):
        return left != right
    if isinstance(f, Implies):
        return (not left) or right
    if isinstance(f, Iff):
        return left == right
    raise TypeError(f"not a formula: {f!r}")


def atoms(f: Formula) -> tuple:
    """Sorted, duplicate-free atom names of ``f``."""
    found = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node.name)
        else:
            stack.extend(children(node))
    return tuple(sorted(found))


def assignments(names) -> Iterator[dict]:
    """All assignments over ``names`` in enumeration order."""
    names = tuple(names)
    if len(names) > MAX_ATOMS:
        raise AtomLimitError(len(names))
    for values in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


TAUTOLOGY = "tautology"
CONTRADICTION = "contradiction"
CONTINGENT = "contingent"


@dataclass(frozen=True)
class TruthTableReport:
    atoms: tuple
    rows: tuple  # of (values tuple, result)
    classification: str
    falsifying: Optional[dict] = None
    satisfying: Optional[dict] = None

    @property
    def row_count(self) -> int:
        return len(self.rows)


def truth_table(f: Formula) -> TruthTableReport:
    names = atoms(f)
    rows = []
    falsifying = satisfying = None
    for a in assignments(names):
        value = evaluate(f, a)
        rows.append((tuple(a[n] for n in names), value))
        if value and satisfying is None:
            satisfying = a
        if not value and falsifying is None:
            falsifying = a
    if falsifying is None:
        kind = TAUTOLOGY
    elif satisfying is None:
        kind = CONTRADICTION
    else:
        kind = CONTINGENT
    return TruthTableReport(names, tuple(rows), kind, falsifying, satisfying)


def find_falsifying(f: Formula) -> Optional[dict]:
    """First falsifying assignment in enumeration order, or None."""
    for a in assignments(atoms(f)):
        if not evaluate(f, a):
            return a
    return None


def find_satisfying(f: Formula) -> Optional[dict]:
    for a in assignments(atoms(f)):
        if evaluate(f, a):
            return a
    return None


def is_tautology(f: Formula) -> bool:
    return find_falsifying(f) is None


def is_satisfiable(f: Formula) -> bool:
    return find_satisfying(f) is not None


def are_equivalent(f: Formula, g: Formula) -> bool:
    return is_tautology(Iff(f, g))


_RANK = {"Atom": 0, "Not": 1, "And": 2, "Or": 3, "Xor": 4, "Implies": 5, "Iff": 6}


def sort_key(f: Formula) -> tuple:
    """Total order on formula structure used by :func:`normalize`."""
    rank = _RANK[type(f).__name__]
    if isinstance(f, Atom):
        return (rank, f.name)
    return (rank, tuple(sort_key(c) for c in children(f)))


def _flat_sorted(kind, parts):
    flat = []
    for part in parts:
        flat.extend(part.children if isinstance(part, kind) else (part,))
    unique = sorted(set(flat), key=sort_key)
    return unique[0] if len(unique) == 1 else kind(tuple(unique))


def normalize(f: Formula) -> Formula:
    """Flatten And/Or, drop duplicate children, sort them, remove double negation."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        inner = normalize(f.child)
        return inner.child if isinstance(inner, Not) else Not(inner)
    if isinstance(f, (And, Or)):
        return _flat_sorted(type(f), [normalize(c) for c in f.children])
    return type(f)(normalize(f.left), normalize(f.right))


def depth(f: Formula) -> int:
    return 1 + max((depth(c) for c in children(f)), default=0)
