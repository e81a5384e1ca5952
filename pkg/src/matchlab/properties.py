"""Deterministic property sweeps over words, systems and templates.

Each check returns a :class:`PropertyResult` counting the cases it tried and
collecting counterexamples.  The test-suite runs the same laws through
hypothesis; these sweeps are the fixed, reproducible versions used by the
acceptance runner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .local import greedy
from .systems import equal_to_depth
from .templates import (
    ColourPicker,
    Extension,
    evaluate_on_template,
    random_picker,
    random_template,
)
from .words import E, Word, _mul, inverse

MAX_SHOWN = 5


@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, good: bool, example) -> None:
        self.cases += 1
        if not good and len(self.failures) < MAX_SHOWN:
            self.failures.append(example)

    def __str__(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)}+ counterexamples, e.g. {self.failures[0]}"
        return f"{self.name}: {self.cases} cases, {status}"


def random_word(rng: random.Random, k: int, max_len: int) -> Word:
    w: list[int] = []
    # G_1 has only the words e and 1
    for _ in range(rng.randint(0, max_len if k > 1 else 1)):
        w.append(rng.choice([c for c in range(1, k + 1) if not w or c != w[-1]]))
    return tuple(w)


def check_group_laws(cases: int = 1000, seed: int = 0) -> PropertyResult:
    """Group axioms, norm parity and additivity, and the triangle law for the word metric."""
    res = PropertyResult("group laws")
    rng = random.Random(seed)
    for _ in range(cases):
        k = rng.randint(1, 6)
        x, y, z = (random_word(rng, k, 12) for _ in range(3))
        c = rng.randint(1, k)
        xy = _mul(x, y)
        good = (
            _mul(xy, z) == _mul(x, _mul(y, z))
            and _mul(x, E) == x == _mul(E, x)
            and _mul(x, inverse(x)) == E
            and _mul((c,), (c,)) == E
            and len(xy) % 2 == (len(x) + len(y)) % 2
            and len(xy) <= len(x) + len(y)
            and len(inverse(x)) == len(x)
            and (len(xy) == len(x) + len(y)) == (not x or not y or x[-1] != y[0])
            and len(_mul(inverse(x), z)) <= len(_mul(inverse(x), y)) + len(_mul(inverse(y), z))
        )
        res.record(good, (k, x, y, z))
    return res


def check_translation(cases: int = 1000, seed: int = 0, depth: int = 3) -> PropertyResult:
    """x -> u^-1 x maps V onto u^-1 V and preserves incident colours."""
    res = PropertyResult("translation isomorphism")
    rng = random.Random(seed)
    while res.cases < cases:
        k = rng.randint(2, 4)
        h = rng.randint(1, k - 1)
        T = random_template(k, h, rng.randrange(10**6))
        nodes = list(T.system.iter_depth(depth))
        u = rng.choice(nodes)
        moved = T.system.translate(u)
        ui = inverse(u)
        for x in nodes:
            y = _mul(ui, x)
            good = moved.contains(y) and moved.incident_colours(y) == T.system.incident_colours(x)
            res.record(good, (k, h, u, x))
        for y in moved.iter_depth(depth):
            res.record(T.system.contains(_mul(u, y)), (k, h, u, y, "reverse"))
    return res


def _grid(max_k: int = 4, max_h: int = 2, seeds: int = 8):
    for k in range(2, max_k + 1):
        for h in range(0, min(max_h, k - 1) + 1):
            for seed in range(seeds):
                yield k, h, seed


def check_degree_formula(depth: int = 4, **grid) -> PropertyResult:
    """C(X,x) = C(T,p(x)) + P(p(x)), xi(x) outside C(X,x), on every x in X[depth]."""
    res = PropertyResult("extension degree formula")
    for k, h, seed in _grid(**grid):
        T = random_template(k, h, seed)
        for b in range(0, k - h):
            X = Extension(T, random_picker(T, b, seed))
            for x in X.system.iter_depth(depth):
                t = X.project(x)
                cols = X.system.incident_colours(x)
                good = (
                    cols == T.incident_colours(t) | X.picker(t)
                    and len(cols) == h + b
                    and X.forbidden(x) not in cols
                )
                res.record(good, (k, h, b, seed, x))
    return res


def check_class_symmetry(depth: int = 4, **grid) -> PropertyResult:
    """Nodes in the same class see the same translated extension."""
    res = PropertyResult("extension class symmetry")
    for k, h, seed in _grid(**grid):
        T = random_template(k, h, seed)
        for b in range(1, k - h):
            X = Extension(T, random_picker(T, b, seed))
            classes: dict[Word, list[Word]] = {}
            for x in X.system.iter_depth(depth):
                classes.setdefault(X.project(x), []).append(x)
            for members in classes.values():
                base = X.template.translate(members[0])
                for y in members[1:]:
                    other = X.template.translate(y)
                    good = equal_to_depth(base.system, other.system, depth) and all(
                        base.forbidden(w) == other.forbidden(w) for w in base.iter_depth(depth)
                    )
                    res.record(good, (k, h, b, seed, members[0], y))
    return res


def check_commutation(depth: int = 4, **grid) -> PropertyResult:
    """Extending by P then by Q equals extending by P + Q, projections included."""
    res = PropertyResult("extension commutation")
    for k, h, seed in _grid(**grid):
        T = random_template(k, h, seed)
        room = k - 1 - h
        for bp in range(0, room + 1):
            for bq in range(0, room - bp + 1):
                P = random_picker(T, bp, seed)
                Q = random_picker(T, bq, seed + 1, avoid=P)
                K = Extension(T, P)
                lifted = ColourPicker(K.template, bq, lambda x, K=K, Q=Q: Q(K.project(x)))
                L = Extension(K.template, lifted)
                both = Extension(T, ColourPicker(T, bp + bq, lambda t, P=P, Q=Q: P(t) | Q(t)))
                same = equal_to_depth(L.system, both.system, depth)
                res.record(same, (k, h, bp, bq, seed, "systems"))
                for x in both.system.iter_depth(depth):
                    res.record(K.project(L.project(x)) == both.project(x), (k, h, bp, bq, seed, x))
    return res


def check_projection_outputs(depth: int = 4, **grid) -> PropertyResult:
    """A(ext(T,P), x) = A(T, p(x)) for greedy with several runtimes."""
    res = PropertyResult("extension output projection")
    for k, h, seed in _grid(**grid):
        T = random_template(k, h, seed)
        for b in range(0, k - h):
            X = Extension(T, random_picker(T, b, seed))
            for r in sorted({0, k - 2, k - 1} - {-1}):
                a = greedy(k, r)
                for x in X.system.iter_depth(depth):
                    good = evaluate_on_template(a, X.template, x) == evaluate_on_template(a, T, X.project(x))
                    res.record(good, (k, h, b, seed, r, x))
    return res


TEMPLATE_CHECKS = (check_degree_formula, check_class_symmetry, check_commutation, check_projection_outputs)
