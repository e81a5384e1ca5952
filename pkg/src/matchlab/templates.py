"""Templates, colour pickers, extensions and realisations.

A template is an h-regular colour system with a forbidden colour at every
node.  Extending it by a picker unfolds the picked colours as self-loops;
the realisation uses every free colour and is a concrete (k-1)-regular
instance on which an algorithm can be run.  All of these are infinite, so
they are oracle compositions; a node's output on a template is evaluated on
the realisation ball around the node itself, which is always a
representative of its own class.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Mapping

from .errors import InvalidPickerError, NotANodeError, TemplateError
from .local import BOT, BallAlgorithm
from .systems import ColourSystem, FiniteColourSystem, cache_limit
from .words import E, Word, _mul, _step, check_alphabet

_MISSING = object()


class Template:
    """An h-template: system, forbidden-colour oracle and declared regularity.

    Regularity and the forbidden-colour condition are checked lazily, every
    time a node's free colours are computed.
    """

    def __init__(
        self,
        system: ColourSystem,
        forbidden: Callable[[Word], int],
        h: int,
        *,
        name: str | None = None,
    ):
        self.system = system
        self.k = system.k
        self.h = h
        self.name = name or system.name
        self._forbidden_fn = forbidden
        self._tau: dict[Word, int] = {}
        self._free: dict[Word, frozenset[int]] = {}
        self._outputs: dict[tuple, int] = {}
        self._realisation: Extension | None = None

    def __repr__(self) -> str:
        return f"<Template {self.name} k={self.k} h={self.h}>"

    def contains(self, t: Word) -> bool:
        return self.system.contains(t)

    __contains__ = contains

    def incident_colours(self, t: Word) -> frozenset[int]:
        return self.system.incident_colours(t)

    def forbidden(self, t: Word) -> int:
        tau = self._tau.get(t)
        if tau is None:
            if not self.system.contains(t):
                raise NotANodeError(f"{list(t)} is not a node of template {self.name}")
            tau = int(self._forbidden_fn(t))
            self._tau[t] = tau
        return tau

    def free_colours(self, t: Word) -> frozenset[int]:
        free = self._free.get(t)
        if free is None:
            cols = self.system.incident_colours(t)
            tau = self.forbidden(t)
            if len(cols) != self.h:
                raise TemplateError(
                    f"{self.name} declared {self.h}-regular but node {list(t)} has degree {len(cols)}"
                )
            if tau in cols or not 1 <= tau <= self.k:
                raise TemplateError(f"forbidden colour {tau} at {list(t)} is invalid")
            free = frozenset(range(1, self.k + 1)) - cols - {tau}
            self._free[t] = free
        return free

    def translate(self, u: Word) -> "Template":
        """``(u^-1 T, u^-1 tau)``: the template re-rooted at u."""
        if not u:
            return self
        system = self.system.translate(u)
        tau = self.forbidden
        return Template(system, lambda x: tau(_mul(u, x)), self.h, name=system.name)

    @property
    def realisation(self) -> "Extension":
        if self._realisation is None:
            self._realisation = realise(self)
        return self._realisation

    def iter_depth(self, depth: int):
        return self.system.iter_depth(depth)

    def validate(self, depth: int) -> None:
        """Eagerly check the template invariants on every node of norm <= depth."""
        for t in self.system.iter_depth(depth):
            self.free_colours(t)

    def dump(self, depth: int) -> dict:
        nodes = [{"w": list(t), "tau": self.forbidden(t)} for t in self.system.iter_depth(depth)]
        return {"k": self.k, "h": self.h, "nodes": nodes}

    @classmethod
    def from_dump(cls, data: dict) -> "Template":
        """Rebuild a finite template from :meth:`dump` output (regularity not re-checked)."""
        k = int(data["k"])
        taus = {tuple(n["w"]): int(n["tau"]) for n in data["nodes"]}
        system = FiniteColourSystem(k, taus)
        return cls(system, taus.__getitem__, int(data["h"]))


def zero_template(k: int, c: int) -> Template:
    """The one-node 0-template with forbidden colour c."""
    check_alphabet(k)
    if not 1 <= c <= k:
        raise TemplateError(f"forbidden colour {c} outside 1..{k}")
    return Template(FiniteColourSystem(k, [E], checked=True, name="Z"), lambda t: c, 0, name=f"Z^{c}")


def free_colours(template: Template, t: Word) -> frozenset[int]:
    return template.free_colours(t)


class ColourPicker:
    """Chooses b free colours at every template node; validated on each new node."""

    def __init__(
        self,
        template: Template,
        b: int,
        pick: Callable[[Word], Iterable[int]],
        *,
        name: str = "P",
    ):
        if b < 0 or b > template.k - 1 - template.h:
            raise InvalidPickerError(
                f"picker size {b} outside 0..{template.k - 1 - template.h} for an "
                f"{template.h}-template with k={template.k}"
            )
        self.template = template
        self.b = b
        self.name = name
        self._pick = pick
        self._memo: dict[Word, frozenset[int]] = {}

    def __call__(self, t: Word) -> frozenset[int]:
        got = self._memo.get(t)
        if got is None:
            got = frozenset(self._pick(t))
            if len(got) != self.b:
                raise InvalidPickerError(f"{self.name}({list(t)}) = {sorted(got)} is not of size {self.b}")
            if not got <= self.template.free_colours(t):
                raise InvalidPickerError(
                    f"{self.name}({list(t)}) = {sorted(got)} is not within the free colours "
                    f"{sorted(self.template.free_colours(t))}"
                )
            self._memo[t] = got
        return got


def canonical_picker(
    template: Template, b: int, override: Mapping[Word, Iterable[int]] | Callable | None = None
) -> ColourPicker:
    """Use ``override`` where it is defined, otherwise the b smallest free colours.

    ``override`` is a mapping or a callable returning None where undefined.
    """
    lookup: Callable[[Word], Iterable[int] | None]
    if override is None:
        lookup = lambda t: None  # noqa: E731
    elif callable(override):
        lookup = override
    else:
        lookup = override.get

    def pick(t: Word) -> Iterable[int]:
        chosen = lookup(t)
        if chosen is not None:
            return chosen
        return sorted(template.free_colours(t))[:b]

    return ColourPicker(template, b, pick)


def full_picker(template: Template) -> ColourPicker:
    b = template.k - 1 - template.h
    if b < 0:
        raise TemplateError(f"{template.h}-template has no realisation for k={template.k}")
    return ColourPicker(template, b, template.free_colours, name="F")


def union_picker(p: ColourPicker, q: ColourPicker) -> ColourPicker:
    if p.template is not q.template:
        raise InvalidPickerError("pickers belong to different templates")

    def pick(t: Word) -> frozenset[int]:
        a, b = p(t), q(t)
        if a & b:
            raise InvalidPickerError(f"pickers overlap at {list(t)}")
        return a | b

    return ColourPicker(p.template, p.b + q.b, pick, name=f"{p.name}∪{q.name}")


class Extension:
    """``ext(T, tau, P) = (X, xi, p)``.

    Membership and the projection p are computed by one letter walk: from
    t = e, a letter c moves to t*c if c is incident at t, stays put if c was
    picked at t, and falls out of X otherwise.
    """

    def __init__(self, base: Template, picker: ColourPicker, *, depth_budget: int | None = None, name=None):
        if picker.template is not base:
            raise InvalidPickerError("picker was built for a different template")
        self.base = base
        self.picker = picker
        self.k = base.k
        self._proj: dict[Word, Word | None] = {E: E}
        self._limit = cache_limit()
        budget = depth_budget if depth_budget is not None else base.system.depth_budget
        label = name or f"ext({base.name},{picker.name})"
        self.system = ColourSystem(
            base.k, lambda x: self.project(x) is not None, depth_budget=budget, name=label
        )
        tau = base.forbidden
        project = self.project
        self.template = Template(self.system, lambda x: tau(project(x)), base.h + picker.b, name=label)

    @property
    def forbidden(self) -> Callable[[Word], int]:
        return self.template.forbidden

    def project(self, x: Word) -> Word | None:
        memo = self._proj
        t = memo.get(x, _MISSING)
        if t is not _MISSING:
            return t
        if self._limit is not None and len(memo) >= self._limit:
            memo.clear()
            memo[E] = E
        i = len(x) - 1
        while i > 0 and x[:i] not in memo:
            i -= 1
        t = memo[x[:i]]
        base, picker = self.base, self.picker
        while i < len(x):
            if t is None:
                memo[x] = None
                return None
            c = x[i]
            if c in base.incident_colours(t):
                t = _step(t, c)
            elif c not in picker(t):
                t = None
            i += 1
            memo[x[:i]] = t
        return t


def extend(template: Template, picker: ColourPicker, **kw) -> Extension:
    return Extension(template, picker, **kw)


def realise(template: Template) -> Extension:
    """Extension by the full free-colour picker; always (k-1)-regular."""
    return Extension(template, full_picker(template), name=f"real({template.name})")


def evaluate_on_template(a: BallAlgorithm, template: Template, t: Word) -> int:
    """``A(T, tau, t)``: the output of any realisation node projecting to t."""
    key = (a.key, t)
    out = template._outputs.get(key)
    if out is None:
        if a.k != template.k:
            raise TemplateError(f"algorithm for k={a.k} applied to a k={template.k} template")
        if not template.contains(t):
            raise NotANodeError(f"{list(t)} is not a node of template {template.name}")
        real = template.realisation.system
        out = a.eval(real.extract_ball(t, a.runtime + 1))
        template._outputs[key] = out
    return out


def matched_edges(
    a: BallAlgorithm, template: Template, depth: int, within: set[Word] | None = None
) -> list[tuple[Word, Word, int]]:
    """Edges ``(pred(v), v, colour)`` of M(T, tau) with the child in T[depth]."""
    found = []
    for v in template.iter_depth(depth):
        if not v:
            continue
        u, c = v[:-1], v[-1]
        if within is not None and not (u in within and v in within):
            continue
        if evaluate_on_template(a, template, v) == c and evaluate_on_template(a, template, u) == c:
            found.append((u, v, c))
    return found


def is_matched_in_template(a: BallAlgorithm, template: Template, t: Word) -> bool:
    """Whether t's output names one of its own template edges."""
    out = evaluate_on_template(a, template, t)
    return out != BOT and out in template.incident_colours(t)


def _seeded(seed, w: Word) -> random.Random:
    return random.Random(f"{seed}:{','.join(map(str, w))}")


def random_template(k: int, h: int, seed: int) -> Template:
    """Seeded pseudo-random h-template; every node's choices depend only on (seed, node)."""
    check_alphabet(k)
    if not 0 <= h < k:
        raise TemplateError(f"an h-template needs 0 <= h < k, got h={h}, k={k}")

    def colours(w: Word) -> frozenset[int]:
        rng = _seeded(seed, w)
        keep = {w[-1]} if w else set()
        rest = sorted(set(range(1, k + 1)) - keep)
        return frozenset(keep | set(rng.sample(rest, h - len(keep))))

    def member(x: Word) -> bool:
        for i in range(len(x)):
            if x[i] not in colours(x[:i]):
                return False
        return True

    def tau(w: Word) -> int:
        rng = _seeded(f"tau{seed}", w)
        return rng.choice(sorted(set(range(1, k + 1)) - colours(w)))

    return Template(ColourSystem(k, member, name=f"R{seed}"), tau, h, name=f"R{k}.{h}.{seed}")


def random_picker(template: Template, b: int, seed: int, avoid: ColourPicker | None = None) -> ColourPicker:
    """Seeded picker of b free colours, disjoint from ``avoid`` where given."""

    def pick(t: Word) -> list[int]:
        free = set(template.free_colours(t)) - (avoid(t) if avoid is not None else set())
        return _seeded(f"pick{seed}", t).sample(sorted(free), b)

    return ColourPicker(template, b, pick, name=f"P{seed}")
