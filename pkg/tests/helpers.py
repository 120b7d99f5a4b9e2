import random

from logic_composer.formula import And, Atom, Iff, Implies, Not, Or, Xor

NAMES = ("p", "q", "r", "t", "p1", "p2")


def random_formula(rng: random.Random, depth: int = 4, names=NAMES):
    if depth == 0 or rng.random() < 0.25:
        return Atom(rng.choice(names))
    kind = rng.randrange(6)
    sub = lambda: random_formula(rng, depth - 1, names)
    if kind == 0:
        return Not(sub())
    if kind == 1:
        return And(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == 2:
        return Or(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == 3:
        return Xor(sub(), sub())
    if kind == 4:
        return Implies(sub(), sub())
    return Iff(sub(), sub())


def random_assignment(rng: random.Random, names=NAMES):
    return {n: rng.random() < 0.5 for n in names}
