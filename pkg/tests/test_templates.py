import pytest
from hypothesis import given, settings, strategies as st

from matchlab import properties
from matchlab.errors import InvalidPickerError, TemplateError
from matchlab.local import BOT, greedy
from matchlab.systems import ColourSystem, FiniteColourSystem
from matchlab.templates import (
    ColourPicker,
    Extension,
    Template,
    canonical_picker,
    evaluate_on_template,
    extend,
    free_colours,
    full_picker,
    is_matched_in_template,
    matched_edges,
    random_picker,
    random_template,
    realise,
    union_picker,
    zero_template,
)
from matchlab.words import E, _mul, words_up_to


def finite_template(k, h, words, tau):
    return Template(FiniteColourSystem(k, words), tau, h)


def S1():
    return finite_template(3, 1, [E, (2,)], lambda t: 1)


def X1():
    return finite_template(3, 1, [E, (2,)], lambda t: 1 if not t else 3)


# --- independent oracle: realisation membership and greedy on explicit trees ---


def oracle_project(template, x):
    """Letter walk from the definitions: incident colour moves, free colour stays."""
    k = template.k
    t = E
    for c in x:
        cols = {d for d in range(1, k + 1) if template.system.contains(_mul(t, (d,)))}
        free = set(range(1, k + 1)) - cols - {template.forbidden(t)}
        if c in cols:
            t = _mul(t, (c,))
        elif c not in free:
            return None
    return t


def oracle_output(template, t, r):
    """Greedy on the explicit radius-(r+1) realisation ball around t."""
    k = template.k
    ball = [w for w in words_up_to(k, r + 1) if oracle_project(template, _mul(t, w)) is not None]
    out = {}
    for c in range(1, k + 1):
        for w in ball:
            if w and w[-1] == c and w not in out and w[:-1] not in out:
                out[w] = out[w[:-1]] = c
    return out.get(E, BOT)


# --- examples ---


def test_zero_template_free_colours():
    assert free_colours(zero_template(3, 1), E) == {2, 3}
    assert free_colours(zero_template(3, 3), E) == {1, 2}
    assert free_colours(zero_template(1, 1), E) == set()
    with pytest.raises(TemplateError):
        zero_template(3, 4)


def test_free_colours_of_small_templates():
    assert S1().free_colours(E) == {3}
    full = finite_template(3, 2, list(words_up_to(3, 2)), lambda t: 1)
    two_reg = Template(ColourSystem(3, lambda x: all(c in (2, 3) for c in x)), lambda t: 1, 2)
    assert two_reg.free_colours((2, 3)) == set()
    with pytest.raises(TemplateError):
        full.free_colours(E)  # degree 3, declared 2


def test_invalid_forbidden_colour():
    bad = finite_template(3, 1, [E, (2,)], lambda t: 2)
    with pytest.raises(TemplateError):
        bad.free_colours(E)


def test_canonical_picker():
    z = zero_template(3, 1)
    assert canonical_picker(z, 1)(E) == {2}
    assert canonical_picker(z, 1, {E: {3}})(E) == {3}
    with pytest.raises(InvalidPickerError):
        canonical_picker(z, 3)
    with pytest.raises(InvalidPickerError):
        canonical_picker(z, 1, {E: {1}})(E)  # forbidden colour
    with pytest.raises(InvalidPickerError):
        canonical_picker(z, 1, {E: {2, 3}})(E)  # wrong size


def test_union_picker_requires_disjoint():
    z = zero_template(4, 1)
    p = canonical_picker(z, 1)
    assert union_picker(p, canonical_picker(z, 1, {E: {3}}))(E) == {2, 3}
    with pytest.raises(InvalidPickerError):
        union_picker(p, canonical_picker(z, 1))(E)


def test_extend_zero_template():
    z = zero_template(3, 1)
    X = extend(z, canonical_picker(z, 1))
    assert set(X.system.iter_depth(4)) == {E, (2,)}
    assert X.project((2,)) == E
    assert X.forbidden((2,)) == 1
    assert X.template.h == 1


def test_extend_one_template_alternates():
    S = S1()
    X = extend(S, canonical_picker(S, 1, lambda t: {3} if not t else None))
    # class e gets colour 3 picked; class [2] has only the forbidden 1 and free 3
    nodes = set(X.system.iter_depth(4))
    assert nodes == {w for w in words_up_to(3, 4) if set(w) <= {2, 3}}
    assert X.project((2,)) == (2,)
    assert X.project((2, 3)) == (2,)
    assert X.project((2, 3, 2)) == E
    assert X.project((3, 2)) == (2,)


def test_two_template_plus_one_picker_is_three_regular():
    T = random_template(4, 2, 11)
    X = extend(T, canonical_picker(T, 1))
    assert all(X.system.degree(x) == 3 for x in X.system.iter_depth(4))


def test_realisations():
    R = realise(zero_template(3, 1))
    assert all(R.system.incident_colours(x) == {2, 3} for x in R.system.iter_depth(5))
    # with tau = 1 everywhere both classes have free colour 3
    R = realise(S1())
    assert all(R.system.incident_colours(x) == {2, 3} for x in R.system.iter_depth(5))
    # with tau([2]) = 3 class [2] has free colour 1 instead
    R = realise(X1())
    for x in R.system.iter_depth(5):
        expected = {2, 3} if R.project(x) == E else {1, 2}
        assert R.system.incident_colours(x) == expected
    d_template = Template(ColourSystem(3, lambda x: all(c in (2, 3) for c in x)), lambda t: 1, 2)
    R = realise(d_template)
    assert all(R.project(x) == x for x in R.system.iter_depth(5))


def test_evaluate_examples():
    a = greedy(3, 2)
    assert evaluate_on_template(a, zero_template(3, 1), E) == 2
    assert evaluate_on_template(a, zero_template(3, 3), E) == 1
    assert evaluate_on_template(a, X1(), E) == 3
    assert evaluate_on_template(a, X1(), (2,)) == 1


def test_matched_edges_on_K():
    a = greedy(3, 2)
    K = S1()
    assert all(evaluate_on_template(a, K, t) == 2 for t in K.iter_depth(1))
    assert matched_edges(a, K, 1) == [(E, (2,), 2)]
    R = realise(K)
    edges = matched_edges(a, R.template, 5)
    ends = [u for u, v, _ in edges] + [v for u, v, _ in edges]
    assert len(ends) == len(set(ends))
    assert all(c == 2 for _, _, c in edges)


def test_no_matched_edge_at_unmatched_root():
    V = Template(ColourSystem(3, lambda x: all(c in (2, 3) for c in x)), lambda t: 1, 2)
    a = greedy(3, 2)
    # every node of the 2/3 path is matched; on a bare {e} 2-template there is nothing to match
    lone = Template(FiniteColourSystem(3, [E]), lambda t: 1, 0)
    assert is_matched_in_template(a, V, E)
    assert matched_edges(a, lone, 2) == []


def test_template_dump_round_trip():
    T = X1()
    dump = T.dump(2)
    assert dump == {"k": 3, "h": 1, "nodes": [{"w": [], "tau": 1}, {"w": [2], "tau": 3}]}
    assert Template.from_dump(dump).dump(2) == dump


def test_picker_for_other_template_rejected():
    z1, z2 = zero_template(3, 1), zero_template(3, 1)
    with pytest.raises(InvalidPickerError):
        Extension(z1, full_picker(z2))


# --- oracle comparisons ---


@pytest.mark.parametrize("k,h,seed", list(properties._grid(max_k=4, max_h=2, seeds=4)))
def test_evaluate_matches_explicit_oracle(k, h, seed):
    T = random_template(k, h, seed)
    for r in range(k):
        a = greedy(k, r)
        for t in T.iter_depth(2):
            assert evaluate_on_template(a, T, t) == oracle_output(T, t, r)


@pytest.mark.parametrize("k,h,seed", list(properties._grid(max_k=4, max_h=2, seeds=4)))
def test_projection_matches_oracle(k, h, seed):
    T = random_template(k, h, seed)
    R = realise(T)
    for w in words_up_to(k, 4):
        assert (R.project(w) if R.system.contains(w) else None) == oracle_project(T, w)


@pytest.mark.parametrize("k,h,seed", [(k, h, s) for k, h, s in properties._grid(max_k=5, max_h=3, seeds=4) if h < k - 1])
def test_full_greedy_never_unmatched_below_full_degree(k, h, seed):
    T = random_template(k, h, seed)
    a = greedy(k, k - 1)
    assert all(evaluate_on_template(a, T, t) != BOT for t in T.iter_depth(3))


# --- exhaustive sweeps (k <= 4, h <= 2, depth 4) ---


@pytest.mark.parametrize("check", properties.TEMPLATE_CHECKS, ids=lambda f: f.__name__)
def test_template_sweeps(check):
    res = check()
    assert res.ok, str(res)
    assert res.cases >= 1000


def test_sweeps_detect_a_broken_extension(monkeypatch):
    # a projection that forgets picked colours must be caught by the degree formula
    orig = Extension.project

    def wrong(self, x):
        t = orig(self, x)
        return None if t is not None and x and x[-1] in self.picker(t) and len(x) == 3 else t

    monkeypatch.setattr(Extension, "project", wrong)
    assert not properties.check_degree_formula().ok


@settings(max_examples=150)
@given(st.integers(2, 4), st.integers(0, 2), st.integers(0, 10**6), st.data())
def test_degree_formula_random(k, h, seed, data):
    h = min(h, k - 1)
    T = random_template(k, h, seed)
    b = data.draw(st.integers(0, k - 1 - h))
    X = Extension(T, random_picker(T, b, seed))
    for x in X.system.iter_depth(4):
        t = X.project(x)
        assert X.system.incident_colours(x) == T.incident_colours(t) | X.picker(t)
        assert X.forbidden(x) not in X.system.incident_colours(x)
