import copy
import json

import pytest

from matchlab.adversary import run_induction
from matchlab.certificates import SCHEMA, Certificate, verify_certificate
from matchlab.errors import CertificateError
from matchlab.local import greedy


@pytest.fixture(scope="module")
def tight():
    return run_induction(greedy(3, 2))


@pytest.fixture(scope="module")
def violation():
    return run_induction(greedy(4, 2))


def tampered(cert, fn):
    data = copy.deepcopy(cert.data)
    fn(data)
    return Certificate(data)


def test_tightness_layout(tight):
    d = tight.data
    assert d["schema"] == SCHEMA and d["kind"] == "tightness"
    assert (d["k"], d["d"], d["alg"]) == (3, 2, {"name": "greedy", "r": 2})
    assert set(d) >= {"trace", "U_d", "V_d", "root_balls", "outputs"}
    assert d["outputs"]["V"] == 0


def test_round_trip_through_file(tmp_path, tight, violation):
    for cert in (tight, violation):
        path = tmp_path / "c.json"
        cert.save(path)
        again = Certificate.load(path)
        assert again.dumps() == cert.dumps()
        assert verify_certificate(again).ok
    assert json.loads(tight.dumps()) == tight.data


def test_verify_passes(tight, violation):
    rep = verify_certificate(tight)
    assert rep.ok and "10 reduced words" in rep.detail
    assert verify_certificate(violation).ok


def test_removed_word_detected(tight):
    bad = tampered(tight, lambda d: d["U_d"].pop())
    rep = verify_certificate(bad)
    assert not rep.ok and "U[d] != V[d]" in rep.detail


def test_changed_output_detected(tight):
    rep = verify_certificate(tampered(tight, lambda d: d["outputs"].update(V=1)))
    assert not rep.ok and "recomputed" in rep.detail


def test_swapped_balls_detected(tight):
    def swap(d):
        b = d["root_balls"]
        b["U"], b["V"] = b["V"], b["U"]
        d["outputs"] = {"U": d["outputs"]["V"], "V": d["outputs"]["U"]}

    assert not verify_certificate(tampered(tight, swap)).ok


def test_irregular_dump_detected(tight):
    def cut(d):
        d["U_d"] = d["U_d"][:3]
        d["V_d"] = d["V_d"][:3]

    rep = verify_certificate(tampered(tight, cut))
    assert not rep.ok and "degree" in rep.detail


def test_non_prefix_closed_dump_rejected(tight):
    with pytest.raises(CertificateError):
        verify_certificate(tampered(tight, lambda d: d["U_d"].append([1, 2, 3, 1])))


def test_unknown_algorithm_rejected(tight):
    with pytest.raises(CertificateError):
        verify_certificate(tampered(tight, lambda d: d["alg"].update(name="nope")))
    with pytest.raises(CertificateError):
        verify_certificate(tampered(tight, lambda d: d.update(schema="other")))


def test_wrong_runtime_in_claim_detected(tight):
    # re-verifying under a weaker algorithm changes the outputs
    assert not verify_certificate(tampered(tight, lambda d: d["alg"].update(r=1))).ok


def test_violation_condition_tamper_detected(violation):
    other = {"M1": "M3", "M2": "M3", "M3": "M2"}[violation.data["violation"]["condition"]]
    bad = tampered(violation, lambda d: d["violation"].update(condition=other))
    assert not verify_certificate(bad).ok


def test_violation_witness_context_enforced(violation):
    node = violation.data["violation"]["node"]

    def drop_neighbour_of_node(d):
        # remove a leaf adjacent to the witness's ball interior
        victims = [w for w in d["W"] if len(w) == len(node) + 1 and w[: len(node)] == node]
        leaf = max(victims, key=len)
        d["W"] = [w for w in d["W"] if w[: len(leaf)] != leaf]

    rep = verify_certificate(tampered(violation, drop_neighbour_of_node))
    assert not rep.ok


def test_custom_registry(tight):
    calls = []

    def factory(k, r):
        calls.append((k, r))
        return greedy(k, r)

    assert verify_certificate(tight, {"greedy": factory}).ok
    assert calls == [(3, 2)]
