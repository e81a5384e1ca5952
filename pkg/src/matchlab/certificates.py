"""Certificates and their independent verification.

Two kinds exist.  A *tightness* certificate holds two finite dumps U[d] and
V[d] that coincide, together with the radius-(r+1) root balls of U and V;
the algorithm matches the root of U and leaves the root of V unmatched.  A
*violation* certificate holds a finite piece W of a regular instance that
contains the full radius-(r+1) balls of a node and one neighbour, and shows
an M1/M2/M3 breach between them.

The verifier needs only the dumps and an algorithm registry.  When the dumps
are cut from an infinite regular instance it checks that every node the
balls depend on has full degree, so the balls are exactly those of any
regular extension of the dump.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from pathlib import Path

from .errors import CertificateError, NotPrefixClosed, InvalidWordError
from .local import ALGORITHMS, BOT, BallAlgorithm
from .systems import ColourSystem, FiniteColourSystem, RootedBall
from .words import E, Word, _mul, _step, words_up_to

SCHEMA = "matchlab-cert-1"

EXIT_TIGHT = 0
EXIT_INTERNAL = 1
EXIT_VIOLATION = 2


@dataclass
class Certificate:
    data: dict

    @property
    def kind(self) -> str:
        return self.data["kind"]

    @property
    def exit_code(self) -> int:
        return EXIT_TIGHT if self.kind == "tightness" else EXIT_VIOLATION

    def dumps(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=1) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls(json.loads(text))

    @classmethod
    def load(cls, path: str | Path) -> "Certificate":
        return cls.loads(Path(path).read_text())

    def summary(self) -> str:
        d = self.data
        alg = d["alg"]
        head = f"{d['kind']} certificate: k={d['k']} d={d['d']} alg={alg['name']} r={alg['r']}"
        if d["kind"] == "tightness":
            return f"{head}; |U[d]|={len(d['U_d'])} outputs U={d['outputs']['U']} V={d['outputs']['V']}"
        v = d["violation"]
        return (
            f"{head}; {v['condition']} at {v['node']} (neighbour {v['neighbour']}) "
            f"during {v['stage']}"
        )


def _words(system: ColourSystem | FiniteColourSystem, depth: int) -> list[list[int]]:
    return [list(w) for w in system.iter_depth(depth)]


def _alg_json(a: BallAlgorithm) -> dict:
    return a.to_json()


def tightness_certificate(
    a: BallAlgorithm, U: ColourSystem, V: ColourSystem, trace: dict, *, complete: bool = False
) -> Certificate:
    d = a.k - 1
    radius = a.runtime + 1
    ball_u = U.extract_ball(E, radius)
    ball_v = V.extract_ball(E, radius)
    data = {
        "schema": SCHEMA,
        "kind": "tightness",
        "k": a.k,
        "d": d,
        "alg": _alg_json(a),
        "trace": trace,
        "U_d": _words(U, d),
        "V_d": _words(V, d),
        "root_balls": {
            "radius": radius,
            "U": [list(w) for w in ball_u.nodes],
            "V": [list(w) for w in ball_v.nodes],
        },
        "outputs": {"U": a.eval(ball_u), "V": a.eval(ball_v)},
    }
    if complete:
        data["instances"] = {
            "U": [list(w) for w in FiniteColourSystem(a.k, U.iter_depth(radius + d + 2), checked=True)],
            "V": [list(w) for w in FiniteColourSystem(a.k, V.iter_depth(radius + d + 2), checked=True)],
        }
    return Certificate(data)


def _ball_around(system: ColourSystem, centre: Word, radius: int) -> list[Word]:
    return [_mul(centre, w) for w in system.extract_ball(centre, radius).nodes]


def violation_certificate(
    a: BallAlgorithm,
    system: ColourSystem,
    condition: str,
    node: Word,
    neighbour: Word | None,
    colour: int | None,
    stage: str,
    trace: dict,
    *,
    regular_degree: int | None,
) -> Certificate:
    radius = a.runtime + 1
    centres = [node] + ([neighbour] if neighbour is not None else [])
    if regular_degree is None:
        if not isinstance(system, FiniteColourSystem):
            raise CertificateError("a complete-instance witness must be finite")
        W = system
    else:
        words: set[Word] = set()
        for c in centres:
            for x in _ball_around(system, c, radius):
                words.update(x[:i] for i in range(len(x) + 1))
        W = FiniteColourSystem(a.k, words, checked=True)
    balls = {
        "node": [list(w) for w in W.extract_ball(node, radius).nodes],
        "neighbour": None if neighbour is None else [list(w) for w in W.extract_ball(neighbour, radius).nodes],
    }
    outputs = {
        "node": a.eval(W.extract_ball(node, radius)),
        "neighbour": None if neighbour is None else a.eval(W.extract_ball(neighbour, radius)),
    }
    data = {
        "schema": SCHEMA,
        "kind": "violation",
        "k": a.k,
        "d": a.k - 1,
        "alg": _alg_json(a),
        "trace": trace,
        "violation": {
            "condition": condition,
            "node": list(node),
            "neighbour": None if neighbour is None else list(neighbour),
            "colour": colour,
            "stage": stage,
        },
        "W": [list(w) for w in W.nodes],
        "regular_degree": regular_degree,
        "root_balls": {"radius": radius, **balls},
        "outputs": outputs,
    }
    return Certificate(data)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    kind: str
    detail: str

    def __bool__(self) -> bool:
        return self.ok


def resolve_algorithm(alg: Mapping, k: int, registry: Mapping[str, Callable] | None = None) -> BallAlgorithm:
    registry = ALGORITHMS if registry is None else registry
    name = alg.get("name")
    if name not in registry:
        raise CertificateError(f"unknown algorithm id {name!r}")
    params = {key: v for key, v in alg.items() if key not in ("name", "r")}
    return registry[name](k, int(alg["r"]), **params)


def _system(k: int, words, label: str) -> FiniteColourSystem:
    try:
        return FiniteColourSystem(k, (tuple(w) for w in words), name=label)
    except (NotPrefixClosed, InvalidWordError) as exc:
        raise CertificateError(f"malformed dump {label}: {exc}") from exc


def _first_difference(a: FiniteColourSystem, b: FiniteColourSystem) -> str:
    diff = sorted(a.node_set ^ b.node_set, key=lambda w: (len(w), w))
    w = diff[0]
    where = a.name if w in a.node_set else b.name
    return f"word {list(w)} only in {where}"


def _regularity_problem(system: FiniteColourSystem, degree: int, full_up_to: int) -> str | None:
    for v in system.nodes:
        deg = system.degree(v)
        if deg > degree or (len(v) < full_up_to and deg != degree):
            return f"{system.name}: node {list(v)} has degree {deg}, expected {degree}"
    return None


def _ball_from_dump(k: int, words, radius: int, label: str) -> FiniteColourSystem:
    sys_ = _system(k, words, label)
    if sys_.depth > radius:
        raise CertificateError(f"{label} reaches beyond radius {radius}")
    return sys_


def verify_certificate(cert: Certificate | dict, registry: Mapping[str, Callable] | None = None) -> VerificationReport:
    """Recompute every claim of ``cert`` from its finite dumps."""
    data = cert.data if isinstance(cert, Certificate) else cert
    if data.get("schema") != SCHEMA:
        raise CertificateError(f"unsupported schema {data.get('schema')!r}")
    k = int(data["k"])
    a = resolve_algorithm(data["alg"], k, registry)
    if data["kind"] == "tightness":
        return _verify_tightness(a, data)
    if data["kind"] == "violation":
        return _verify_violation(a, data)
    raise CertificateError(f"unknown certificate kind {data['kind']!r}")


def _verify_tightness(a: BallAlgorithm, data: dict) -> VerificationReport:
    k, d = a.k, int(data["d"])
    radius = a.runtime + 1
    fail = lambda why: VerificationReport(False, "tightness", why)  # noqa: E731
    if d != k - 1:
        return fail(f"d={d} but k={k}")
    U_d = _system(k, data["U_d"], "U_d")
    V_d = _system(k, data["V_d"], "V_d")
    if U_d.depth > d or V_d.depth > d:
        return fail("dumps reach beyond depth d")
    # membership agreement over every reduced word of norm <= d
    checked = 0
    for w in words_up_to(k, d):
        checked += 1
        if (w in U_d.node_set) != (w in V_d.node_set):
            return fail(f"U[d] != V[d]: {_first_difference(U_d, V_d)}")

    if "instances" in data:
        U = _system(k, data["instances"]["U"], "U")
        V = _system(k, data["instances"]["V"], "V")
        for whole, cut in ((U, U_d), (V, V_d)):
            if whole.restrict_depth(d).node_set != cut.node_set:
                return fail(f"{cut.name} is not the depth-{d} part of {whole.name}")
        ball_u, ball_v = U.extract_ball(E, radius), V.extract_ball(E, radius)
    else:
        for dump in (U_d, V_d):
            problem = _regularity_problem(dump, d, d)
            if problem:
                return fail(problem)
        balls = data["root_balls"]
        if int(balls["radius"]) != radius:
            return fail(f"root balls have radius {balls['radius']}, algorithm needs {radius}")
        bu = _ball_from_dump(k, balls["U"], radius, "ball_U")
        bv = _ball_from_dump(k, balls["V"], radius, "ball_V")
        for ball, dump in ((bu, U_d), (bv, V_d)):
            problem = _regularity_problem(ball, d, radius)
            if problem:
                return fail(problem)
            depth = min(d, radius)
            if ball.restrict_depth(depth).node_set != dump.restrict_depth(depth).node_set:
                return fail(f"{ball.name} disagrees with {dump.name} within depth {depth}")
        ball_u = RootedBall.from_words(k, bu, radius)
        ball_v = RootedBall.from_words(k, bv, radius)

    out_u, out_v = a.eval(ball_u), a.eval(ball_v)
    claimed = data["outputs"]
    if (out_u, out_v) != (claimed["U"], claimed["V"]):
        return fail(f"recomputed outputs U={out_u} V={out_v} differ from claimed {claimed}")
    if out_u == BOT or out_u not in ball_u.incident_colours(E):
        return fail(f"A(U,e) = {out_u} is not a colour of C(U,e)")
    if out_v != BOT:
        return fail(f"A(V,e) = {out_v}, expected unmatched")
    return VerificationReport(
        True,
        "tightness",
        f"U[{d}] = V[{d}] on all {checked} reduced words of norm <= {d} ({len(U_d)} members); "
        f"A(U,e)={out_u}, A(V,e)=⊥",
    )


def _verify_violation(a: BallAlgorithm, data: dict) -> VerificationReport:
    k = a.k
    radius = a.runtime + 1
    fail = lambda why: VerificationReport(False, "violation", why)  # noqa: E731
    W = _system(k, data["W"], "W")
    viol = data["violation"]
    node = tuple(viol["node"])
    nb = None if viol["neighbour"] is None else tuple(viol["neighbour"])
    cond = viol["condition"]
    if node not in W.node_set or (nb is not None and nb not in W.node_set):
        return fail("witness nodes are not in W")
    if nb is not None and len(_mul(tuple(reversed(node)), nb)) != 1:
        return fail("witness nodes are not adjacent")
    deg = data.get("regular_degree")
    centres = [node] + ([nb] if nb is not None else [])
    if deg is not None:
        for v in W.nodes:
            if W.degree(v) > deg:
                return fail(f"node {list(v)} of W has degree above {deg}")
        for c in centres:
            for x in _ball_around(W, c, radius - 1):
                if W.degree(x) != deg:
                    return fail(f"node {list(x)} near {list(c)} has degree {W.degree(x)}, expected {deg}")
    balls = {"node": W.extract_ball(node, radius)}
    if nb is not None:
        balls["neighbour"] = W.extract_ball(nb, radius)
    dumped = data["root_balls"]
    for label, ball in balls.items():
        if dumped.get(label) is not None and [list(w) for w in ball.nodes] != dumped[label]:
            return fail(f"dumped {label} ball differs from the ball recomputed from W")
    out_n = a.eval(balls["node"])
    out_nb = a.eval(balls["neighbour"]) if nb is not None else None
    claimed = data["outputs"]
    if (out_n, out_nb) != (claimed["node"], claimed["neighbour"]):
        return fail(f"recomputed outputs {out_n},{out_nb} differ from claimed {claimed}")
    cols = W.incident_colours(node)
    if cond == "M1":
        ok = out_n != BOT and out_n not in cols
    elif cond == "M2":
        ok = out_n != BOT and out_n in cols and nb == _step(node, out_n) and out_nb != out_n
    elif cond == "M3":
        c = viol["colour"]
        ok = out_n == BOT and c in cols and nb == _step(node, c) and out_nb == BOT
    else:
        return fail(f"unknown condition {cond!r}")
    if not ok:
        return fail(f"claimed {cond} breach does not hold: outputs {out_n}, {out_nb}")
    return VerificationReport(
        True, "violation", f"{cond} breach at {list(node)} (outputs {out_n}, {out_nb}); |W|={len(W)}"
    )
