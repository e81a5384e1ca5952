"""Constructive lower bound against a given runtime-r algorithm.

:func:`run_induction` builds a 1-critical pair from zero-templates, then lifts
it level by level to a d-critical pair (d = k-1).  Every guarantee that
relies on the algorithm being a correct matching algorithm is checked on the
way; when one fails, the engine localises a concrete M1/M2/M3 breach on a
realisation and returns a violation certificate instead.  A check that
should hold for *every* algorithm raises :class:`InternalError`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .certificates import Certificate, tightness_certificate, violation_certificate
from .errors import InternalError, MatchlabError, TemplateError
from .local import BOT, BallAlgorithm
from .systems import ColourSystem, DepthBudget, FiniteColourSystem, equal_to_depth
from .templates import (
    ColourPicker,
    Extension,
    Template,
    evaluate_on_template,
    zero_template,
)
from .words import E, Word, _step

log = logging.getLogger(__name__)


@dataclass
class Breach:
    """An M1/M2/M3 failure at realisation node ``node`` of ``template``."""

    template: Template
    condition: str
    node: Word
    neighbour: Word | None
    colour: int | None
    stage: str


class ViolationFound(MatchlabError):
    def __init__(self, breach: Breach):
        super().__init__(f"{breach.condition} breach at {list(breach.node)} during {breach.stage}")
        self.breach = breach


@dataclass
class CriticalPair:
    h: int
    S: Template
    T: Template
    trace: dict = field(default_factory=dict)


@dataclass
class StepArtifacts:
    P: ColourPicker
    Q: ColourPicker
    K: Extension
    L: Extension
    chi: int
    X: Template
    y: Word
    case: str


def find_breach(a: BallAlgorithm, template: Template, depth: int, stage: str) -> Breach | None:
    """Scan template nodes up to ``depth`` for an M1-M3 breach in the realisation.

    Works at the level of classes: realisation node t has output A(T,t); its
    neighbour along an incident colour c is t*c, along a free colour it is a
    copy of t itself.
    """
    for t in template.iter_depth(depth):
        out = evaluate_on_template(a, template, t)
        cols = template.incident_colours(t)
        free = template.free_colours(t)
        if out != BOT and out not in cols and out not in free:
            return Breach(template, "M1", t, None, out, stage)
        if out != BOT:
            if out in cols and evaluate_on_template(a, template, _step(t, out)) != out:
                return Breach(template, "M2", t, _step(t, out), out, stage)
            continue
        for c in sorted(cols | free):
            other = evaluate_on_template(a, template, _step(t, c)) if c in cols else out
            if other == BOT:
                return Breach(template, "M3", t, _step(t, c), c, stage)
    return None


def _breach_or_internal(a: BallAlgorithm, templates, depth: int, stage: str, why: str):
    for tmpl in templates:
        found = find_breach(a, tmpl, depth, stage)
        if found is not None:
            raise ViolationFound(found)
    raise InternalError(f"{stage}: {why}, and no M1-M3 breach was found to depth {depth}")


def glue(K: Template, L: Template, chi: int, *, depth_budget=None) -> Template:
    """``prune(K, chi)`` joined with the chi-branch of L."""
    if K.k != L.k or K.h != L.h:
        raise TemplateError("glued templates must share k and h")
    if chi not in K.incident_colours(E) or chi not in L.incident_colours(E):
        raise TemplateError(f"{{e,{chi}}} must be an edge of both templates")
    kc, lc = K.contains, L.contains
    kf, lf = K.forbidden, L.forbidden
    system = ColourSystem(
        K.k,
        lambda x: not x or (kc(x) if x[0] != chi else lc(x)),
        depth_budget=depth_budget,
        name=f"glue({K.name},{L.name},{chi})",
    )
    return Template(system, lambda x: kf(x) if not x or x[0] != chi else lf(x), K.h, name=system.name)


def critical_pair_failures(a: BallAlgorithm, pair: CriticalPair, depth: int) -> list[str]:
    """Which of C1-C4 fail (C4 checked on S[depth])."""
    S, T, h = pair.S, pair.T, pair.h
    failed = []
    if not equal_to_depth(S.system, T.system, h):
        failed.append("C1")
    if any(S.forbidden(w) != T.forbidden(w) for w in S.iter_depth(h - 1)):
        failed.append("C2")
    out = evaluate_on_template(a, T, E)
    if out != BOT and out in T.incident_colours(E):
        failed.append("C3")
    for s in S.iter_depth(depth):
        out = evaluate_on_template(a, S, s)
        if out == BOT or out not in S.incident_colours(s):
            failed.append("C4")
            break
    return failed


class Adversary:
    """One run of the construction against ``a``; keeps the trace and budgets."""

    def __init__(
        self,
        a: BallAlgorithm,
        *,
        check_depth: int | None = None,
        eval_depth: int | None = None,
        depth_budget: int | None = None,
    ):
        self.a = a
        self.k = a.k
        self.d = a.k - 1
        self.r = a.runtime
        self.check_depth = check_depth if check_depth is not None else self.r + 3
        self.eval_depth = eval_depth if eval_depth is not None else self.r + 2
        base = max(self.check_depth + 1, self.eval_depth + self.r + 2, self.r + 3 + self.r + 2)
        self.budget = DepthBudget(base if depth_budget is None else depth_budget)
        self.trace: dict = {}

    def A(self, template: Template, t: Word) -> int:
        return evaluate_on_template(self.a, template, t)

    def base_case(self) -> CriticalPair:
        k, a = self.k, self.a
        if k < 3:
            raise ValueError("the template construction needs k >= 3")
        outputs = {}
        for c in range(1, k + 1):
            z = zero_template(k, c)
            out = self.A(z, E)
            if out == BOT or out == c:
                _breach_or_internal(a, [z], 0, "base-case", f"A(Z,{c},e) = {out}")
            outputs[c] = out
        self.trace["zero_outputs"] = {str(c): o for c, o in outputs.items()}
        h1 = outputs[1]
        if outputs[h1] != 1:
            case = "h(h(1))!=1"
            c1, c2, c3 = h1, outputs[h1], 1
        else:
            c = min(set(range(1, k + 1)) - {1, h1})
            if outputs[c] == h1:
                case = "h(h(1))=1,h(c)=h(1)"
                c1, c2, c3 = h1, 1, c
            else:
                case = "h(h(1))=1,h(c)!=h(1)"
                c1, c2, c3 = 1, h1, c
        c4 = outputs[c3]
        if len({c1, c2, c3}) != 3 or outputs[c1] != c2 or c4 == c2:
            raise InternalError(f"colour selection failed: {(c1, c2, c3, c4)} from {outputs}")

        two = FiniteColourSystem(k, [E, (c2,)], checked=True, name=f"{{e,{c2}}}")
        K = Template(two, lambda t: c1, 1, name="K0")
        L = Template(two, lambda t: c3, 1, name="L0")
        X = Template(two, lambda t: c1 if not t else c3, 1, name="X0")
        if self.A(X, E) != c2:
            branch = "i"
            S1, T1 = K, X
        else:
            branch = "ii"
            S1, T1 = X.translate((c2,)), L.translate((c2,))
        self.trace.update(base_case_kind=case, c=[c1, c2, c3, c4], base_branch=branch)
        log.info("base case: c=%s branch=%s", (c1, c2, c3, c4), branch)
        pair = CriticalPair(1, S1, T1, {"c": [c1, c2, c3, c4], "branch": branch})
        self._check_pair(pair, "base-case")
        return pair

    def _check_pair(self, pair: CriticalPair, stage: str) -> None:
        failed = critical_pair_failures(self.a, pair, self.eval_depth)
        if failed:
            _breach_or_internal(
                self.a, [pair.S, pair.T], self.eval_depth, stage, f"critical-pair checks {failed} failed"
            )

    def build_step_pickers(self, pair: CriticalPair) -> tuple[ColourPicker, ColourPicker]:
        S, T, h = pair.S, pair.T, pair.h
        a = self.a

        def q_pick(t: Word) -> set[int]:
            out = self.A(T, t)
            free = T.free_colours(t)
            if out in free:
                return {out}
            if out == BOT or out not in T.incident_colours(t):
                _breach_or_internal(a, [T], len(t), "step-pickers", f"A(T,{list(t)}) = {out}")
            return {min(free)}

        Q = ColourPicker(T, 1, q_pick, name=f"Q{h}")

        def p_pick(s: Word) -> frozenset[int] | set[int]:
            if len(s) <= h - 1:
                return Q(s)
            return {min(S.free_colours(s))}

        P = ColourPicker(S, 1, p_pick, name=f"P{h}")
        return P, Q

    def find_critical_node(self, X: Template) -> Word:
        """First y in X[r+2] (length-lex) whose output is not an incident colour."""
        for y in X.iter_depth(self.r + 2):
            out = self.A(X, y)
            if out == BOT or out not in X.incident_colours(y):
                return y
        _breach_or_internal(
            self.a, [X], self.r + 2, "critical-node", "no node of X[r+2] leaves its matching unmatched"
        )
        raise AssertionError("unreachable")

    def _observations(self, pair: CriticalPair, K: Extension, L: Extension, chi: int) -> list[str]:
        h, D, E_D = pair.h, self.check_depth, self.eval_depth
        Kt, Lt = K.template, L.template
        bad = []
        try:
            Kt.validate(D)
            Lt.validate(D)
        except TemplateError:
            bad.append("1")
        if not equal_to_depth(Kt.system, Lt.system, h) or any(
            Kt.forbidden(w) != Lt.forbidden(w) for w in Kt.iter_depth(h - 1)
        ):
            bad.append("2")
        if chi not in Kt.incident_colours(E) or chi not in Lt.incident_colours(E):
            bad.append("3")
            return bad
        cw = (chi,)
        if not (K.project(E) == K.project(cw) == E and L.project(E) == L.project(cw) == E):
            bad.append("4")
        for t in (Kt, Lt):
            moved = t.translate(cw)
            if not equal_to_depth(moved.system, t.system, D) or any(
                moved.forbidden(w) != t.forbidden(w) for w in t.iter_depth(D)
            ):
                bad.append("5")
                break
        for label, t in (("6", Kt), ("7", Lt)):
            for v in t.iter_depth(E_D):
                out = self.A(t, v)
                if out == BOT or out not in t.incident_colours(v):
                    bad.append(label)
                    break
        in_k = self.A(Kt, E) == chi and self.A(Kt, cw) == chi
        in_l = self.A(Lt, E) == chi and self.A(Lt, cw) == chi
        if in_k or not in_l:
            bad.append("8")
        return bad

    def inductive_step(self, pair: CriticalPair) -> tuple[CriticalPair, StepArtifacts]:
        h = pair.h
        if not 1 <= h < self.d:
            raise ValueError(f"inductive step needs 1 <= h < d, got h={h}")
        S, T = pair.S, pair.T
        chi = self.A(T, E)
        if chi == BOT or chi not in T.free_colours(E):
            _breach_or_internal(self.a, [T, S], self.eval_depth, "step-chi", f"chi = {chi}")
        P, Q = self.build_step_pickers(pair)
        K = Extension(S, P, depth_budget=self.budget, name=f"K{h}")
        L = Extension(T, Q, depth_budget=self.budget, name=f"L{h}")
        bad = self._observations(pair, K, L, chi)
        if bad:
            _breach_or_internal(
                self.a,
                [T, S, K.template, L.template],
                self.eval_depth,
                "step-observations",
                f"observations {bad} failed",
            )
        X = glue(K.template, L.template, chi, depth_budget=self.budget)
        try:
            X.validate(self.check_depth)
        except TemplateError as exc:
            raise InternalError(f"glued template is not an {h + 1}-template: {exc}") from exc
        y = self.find_critical_node(X)
        case = "K" if not y or y[0] != chi else "L"
        side = K.template if case == "K" else L.template
        S_next = side.translate(y)
        T_next = X.translate(y)
        # later queries shift by |y|, and the next level's pickers evaluate
        # the algorithm on balls of radius r+1 one layer further down
        self.budget.limit += len(y) + self.r + 2
        step = {"h": h, "chi": chi, "y": list(y), "case": case}
        log.info("step h=%d: chi=%d y=%s case=%s", h, chi, list(y), case)
        nxt = CriticalPair(h + 1, S_next, T_next, step)
        self._check_pair(nxt, "step-pair")
        return nxt, StepArtifacts(P, Q, K, L, chi, X, y, case)

    def run(self) -> Certificate:
        self.trace = {}
        try:
            if self.k <= 2:
                return self._small_k()
            pair = self.base_case()
            steps = []
            self.trace["steps"] = steps
            while pair.h < self.d:
                pair, _ = self.inductive_step(pair)
                steps.append(pair.trace)
            return self._tightness(pair.S.system, pair.T.system)
        except ViolationFound as found:
            br = found.breach
            self.trace["failed_stage"] = br.stage
            return violation_certificate(
                self.a, br.template.realisation.system, br.condition, br.node, br.neighbour,
                br.colour, br.stage, self.trace, regular_degree=self.d,
            )

    def _tightness(self, U: ColourSystem, V: ColourSystem, complete: bool = False) -> Certificate:
        a, d = self.a, self.d
        radius = self.r + 1
        ball_u = U.extract_ball(E, radius)
        ball_v = V.extract_ball(E, radius)
        out_u, out_v = a.eval(ball_u), a.eval(ball_v)
        if not equal_to_depth(U, V, d):
            raise InternalError("final pair disagrees within depth d")
        if out_v != BOT:
            # at level d the realisation is V itself, so a non-matching output is an M1 breach
            raise ViolationFound(Breach(_as_template(V, d), "M1", E, None, out_v, "final"))
        if out_u == BOT or out_u not in U.incident_colours(E):
            raise InternalError(f"A(U,e) = {out_u} is not an incident colour")
        if radius <= d and ball_u == ball_v:
            raise InternalError("equal balls produced different outputs: the algorithm is not local")
        return tightness_certificate(a, U, V, self.trace, complete=complete)

    def _small_k(self) -> Certificate:
        """k <= 2: the explicit instances of the trivial cases."""
        a, k = self.a, self.k
        if k == 1:
            instances = {"U": [E, (1,)], "V": [E]}
        else:
            instances = {"T": [E, (1,)], "U": [E, (2,)], "V": [E, (1,), (2,)]}
        systems = {n: FiniteColourSystem(k, w, name=n) for n, w in instances.items()}
        for name, system in systems.items():
            found = find_complete_breach(a, system)
            if found is not None:
                self.trace["failed_stage"] = f"small-k:{name}"
                cond, node, nb, col = found
                return violation_certificate(
                    a, system, cond, node, nb, col, f"small-k:{name}", self.trace, regular_degree=None
                )
        self.trace["small_k"] = True
        if k == 1:
            return self._tightness(systems["U"], systems["V"], complete=True)
        V = systems["V"]
        radius = a.runtime + 1
        if a.eval(V.extract_ball((1,), radius)) != 1:
            U, W = systems["T"].translate((1,)), V.translate((1,))
            self.trace["pair"] = "1T,1V"
        else:
            U, W = systems["U"].translate((2,)), V.translate((2,))
            self.trace["pair"] = "2U,2V"
        U = FiniteColourSystem(k, U.iter_depth(3), checked=True)
        W = FiniteColourSystem(k, W.iter_depth(3), checked=True)
        return self._tightness(U, W, complete=True)


def _as_template(system: ColourSystem, h: int) -> Template:
    """A d-template viewed through its system alone (no free colours remain)."""
    k = system.k

    def tau(t: Word) -> int:
        missing = set(range(1, k + 1)) - system.incident_colours(t)
        return min(missing)

    return Template(system, tau, h)


def find_complete_breach(a: BallAlgorithm, system: FiniteColourSystem):
    """First M1-M3 breach of ``a`` on a whole finite instance, or None."""
    radius = a.runtime + 1
    outs = {v: a.eval(system.extract_ball(v, radius)) for v in system.nodes}
    for v in system.nodes:
        o = outs[v]
        cols = system.incident_colours(v)
        if o != BOT and o not in cols:
            return "M1", v, None, o
        if o != BOT:
            if outs[_step(v, o)] != o:
                return "M2", v, _step(v, o), o
        else:
            for c in sorted(cols):
                if outs[_step(v, c)] == BOT:
                    return "M3", v, _step(v, c), c
    return None


def base_case(a: BallAlgorithm, **kw) -> CriticalPair:
    return Adversary(a, **kw).base_case()


def run_induction(a: BallAlgorithm, k: int | None = None, **kw) -> Certificate:
    """Tightness certificate for a correct algorithm, violation certificate otherwise."""
    if k is not None and k != a.k:
        raise ValueError(f"algorithm is defined for k={a.k}, not k={k}")
    return Adversary(a, **kw).run()
