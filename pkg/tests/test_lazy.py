import random

import pytest
from hypothesis import given, settings, strategies as st

from gammoid_lab.dimaze import Dimaze, is_linkable, ml_oracle
from gammoid_lab.lazy import (
    COMB_KINDS,
    PatternCertificate,
    Truncation,
    detect_comb,
    detect_fan,
    eliminate_fan_centres,
    fan_centres,
    generator,
    is_left_locally_finite,
    left_degrees,
    tnd_left_nbrs,
    tnd_right_nbrs,
    tnd_truncation,
    topologically_linkable,
    truncate,
    verify_certificate,
    verify_top_result,
)
from gammoid_lab.sampling import dimazes_up_to, random_dimaze

from oracles import subsets

PATH = Dimaze(["a", "b", "c"], [("a", "b"), ("b", "c")], ["c"])


def _adj(name, v):
    g = generator(name)
    return list(g.out(v).take(2)), list(g.inn(v).take(2)), g.is_exit(v)


# golden adjacency: (vertex, out-neighbours, in-neighbours, exit?), infinite tails cut at 2
GOLDEN = {
    "RA": [("x1", [], ["x2"], False), ("x2", ["x1", "x3"], [], False), ("x3", [], ["x2", "x4"], False)],
    "RI": [("x1", [], ["x2"], True), ("x2", ["x1"], ["x3"], False)],
    "RO": [("x1", ["x2"], [], False), ("x2", ["x3"], ["x1"], False)],
    "CA": [("x1", [], ["x2"], True), ("x2", ["x1", "x3"], [], False), ("x5", [], ["x4", "x6"], True)],
    "CI": [("x1", [], ["x2"], True), ("x2", ["x1", "y2"], ["x3"], False), ("y3", [], ["x3"], True)],
    "CO": [("x1", ["x2"], [], False), ("x2", ["x3", "y2"], ["x1"], False), ("y2", [], ["x2"], True)],
    "FAN": [("v", ["v1", "v2"], [], False), ("v2", [], ["v"], True)],
    "TREE": [
        ("r", [], ["r.1", "r.2"], True),
        ("r.1", ["r", "r.1.1", "r.1.2"], [], False),
        ("r.1.2", [], ["r.1", "r.1.2.1", "r.1.2.2"], True),
    ],
}


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_generator_golden_adjacency(name):
    for v, out, inn, ex in GOLDEN[name]:
        assert _adj(name, v) == (out, inn, ex)


def test_tnd_golden():
    assert tnd_right_nbrs(1) == [1, 2]
    assert tnd_right_nbrs(2) == [1, 2, 3, 4]
    assert tnd_right_nbrs(3) == [1, 2, 3, 4, 5, 6]
    assert tnd_right_nbrs(5) == [7, 8, 9, 10]
    for j in range(1, 40):
        assert tnd_left_nbrs(j) == [i for i in range(1, 25) if j in tnd_right_nbrs(i)]


def test_tnd_left_locally_finite():
    degrees = left_degrees(tnd_left_nbrs, 30)
    assert degrees[1] == degrees[2] == 3
    assert all(degrees[j] == 2 for j in range(3, 31))
    assert is_left_locally_finite(tnd_left_nbrs, 30)
    assert not is_left_locally_finite(lambda j: None, 3)
    T = tnd_truncation(4)
    assert T.graph.right == ("A1", "A2", "A3", "A4")
    assert T.frontier == {"v7", "v8"}


def test_truncation_examples():
    T = truncate(generator("RO"), 5, 1)
    assert T.dimaze.vertices == ("x1", "x2", "x3", "x4", "x5")
    assert T.frontier == {"x5"} and not T.dimaze.exits
    T = truncate(generator("FAN"), 2, 4)
    assert T.dimaze.exits == {"v1", "v2", "v3", "v4"} and T.frontier == {"v"}
    assert len(T.dimaze.edges) == 4
    T = truncate(generator("CA"), 9, 2)
    assert T.dimaze.exits == {"x1", "x3", "x5", "x7", "x9"}


def test_tree_truncation_levels():
    T = truncate(generator("TREE"), 3, 2)
    D = T.dimaze
    assert D.exits == {v for v in D.vertices if v.count(".") % 2 == 0}
    assert "r" in D.exits
    assert T.frontier == {"r.1", "r.2"}
    for u, v in D.edges:
        assert u.count(".") % 2 == 1 and v in D.exits


def test_truncation_validation():
    with pytest.raises(ValueError):
        truncate(generator("RO"), 0, 1)
    with pytest.raises(ValueError):
        generator("XX")
    with pytest.raises(ValueError):
        Truncation(PATH, {"c"})


@pytest.mark.parametrize("k", range(1, 9))
def test_builtin_certificates(k):
    co = truncate(generator("CO"), 3 * k, 2)
    cert = detect_comb(co, "outgoing", k)
    assert cert and not verify_certificate(co, cert, k)
    ca = truncate(generator("CA"), 2 * k + 1, 2)
    cert = detect_comb(ca, "alternating", k)
    assert cert and not verify_certificate(ca, cert, k)
    ci = truncate(generator("CI"), 3 * k, 2)
    cert = detect_comb(ci, "incoming", k)
    assert cert and not verify_certificate(ci, cert, k)
    fan = truncate(generator("FAN"), 2, k)
    cert = detect_fan(fan, k)
    assert cert and cert.centre == "v" and not verify_certificate(fan, cert, k)
    ro = truncate(generator("RO"), 3 * k, 2)
    assert all(detect_comb(ro, kind, k) is None for kind in COMB_KINDS)
    assert detect_fan(ro, k) is None


def test_path_has_no_patterns():
    for kind in COMB_KINDS:
        assert detect_comb(PATH, kind, 2) is None
    assert detect_fan(PATH, 2) is None


def test_verifier_rejects_tampering():
    co = truncate(generator("CO"), 9, 2)
    cert = detect_comb(co, "outgoing", 3)
    bad = PatternCertificate("outgoing", cert.spine, None, cert.spikes[:2] + (("x2", "x3"),))
    assert verify_certificate(co, bad, 3)
    assert verify_certificate(co, PatternCertificate("outgoing", ("x2", "x1"), None, ()))
    assert verify_certificate(co, cert, len(cert.spikes) + 1)
    ca = truncate(generator("CA"), 7, 2)
    cert = detect_comb(ca, "alternating", 3)
    assert verify_certificate(ca, PatternCertificate("alternating", cert.spine[1:], None, cert.spikes[1:]))
    fan = truncate(generator("FAN"), 2, 3)
    assert verify_certificate(fan, PatternCertificate("fan", (), "v", (("v", "v1"), ("v", "v1"))))


def test_comb_monotone_in_k_and_depth():
    for name, kind in (("CO", "outgoing"), ("CA", "alternating"), ("CI", "incoming")):
        for depth in range(2, 12):
            T = truncate(generator(name), depth, 2)
            found = [detect_comb(T, kind, k) is not None for k in range(1, 7)]
            assert found == sorted(found, reverse=True)
            deeper = truncate(generator(name), depth + 1, 2)
            for k in range(1, 7):
                if found[k - 1]:
                    assert detect_comb(deeper, kind, k) is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 7), st.integers(1, 3))
def test_random_certificates_recheck(seed, n, k):
    D = random_dimaze(random.Random(seed), n)
    for kind in COMB_KINDS:
        cert = detect_comb(D, kind, k)
        if cert is not None:
            assert verify_certificate(D, cert, k) == []
    cert = detect_fan(D, k)
    if cert is not None:
        assert verify_certificate(D, cert, k) == []
    # a fan centre has k out-neighbours linkable avoiding it
    for c in fan_centres(D, k):
        assert len(D.succ[c]) >= k


def test_toplink_examples():
    res = topologically_linkable(truncate(generator("RO"), 5, 1), ["x1"], 5)
    assert res.status == "inconclusive" and res.frontier == {"x5"}
    T = truncate(generator("CO"), 9, 2)
    res = topologically_linkable(T, ["x1"], 3)
    assert res.status == "yes" and res.paths[0].path == ("x1", "x2", "y2")
    T = truncate(generator("FAN"), 2, 5)
    res = topologically_linkable(T, ["v"], 5)
    assert res.status == "yes" and res.paths[0].kind == "fan"
    assert not verify_top_result(T, ["v"], 5, res)
    # spine of an outgoing comb reaching the cut
    T = truncate(generator("CO"), 12, 2)
    I = ["x1"] + [f"y{i}" for i in range(2, 12) if f"y{i}" in T.dimaze.index]
    res = topologically_linkable(T, I, 3)
    assert res.status == "yes"
    kinds = {tp.path[0]: tp.kind for tp in res.paths}
    assert kinds["x1"] == "comb"
    assert not verify_top_result(T, I, 3, res)
    res = topologically_linkable(truncate(generator("RI"), 6, 1), ["x2", "x3"], 2)
    assert res.status == "no" and not verify_top_result(truncate(generator("RI"), 6, 1), ["x2", "x3"], 2, res)


SMALL = dimazes_up_to(3)


@pytest.mark.parametrize("D", SMALL, ids=lambda D: f"n{len(D.vertices)}")
def test_toplink_finite_equivalence(D):
    for I in subsets(D.vertices):
        for k in (1, 2, 5):
            res = topologically_linkable(D, I, k)
            assert (res.status == "yes") == is_linkable(D, I)
            assert res.status != "inconclusive"
            assert not verify_top_result(D, I, k, res)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(4, 6))
def test_toplink_finite_equivalence_random(seed, n):
    rng = random.Random(seed)
    D = random_dimaze(rng, n)
    for I in subsets(D.vertices):
        res = topologically_linkable(D, I, rng.randint(1, 4))
        assert (res.status == "yes") == is_linkable(D, I)


def fan_family(w):
    leaves = [f"e{i}" for i in range(1, w + 1)]
    return Dimaze(["u", "v"] + leaves, [("u", "v")] + [("v", e) for e in leaves], leaves)


def test_eliminate_example():
    D = fan_family(4)
    out = eliminate_fan_centres(D, 3).dimaze
    assert "v" in out.exits and not out.succ["v"]
    assert out.edge_set == {("u", "v")}
    assert eliminate_fan_centres(PATH, 2).dimaze == PATH
    with pytest.raises(ValueError):
        eliminate_fan_centres(PATH, 1)


@pytest.mark.parametrize("w", range(2, 7))
def test_eliminate_small_sets_agree(w):
    D = fan_family(w)
    k = max(2, w)
    after = eliminate_fan_centres(D, k).dimaze
    before_M, after_M = ml_oracle(D), ml_oracle(after)
    for I in subsets(D.vertices):
        if len(I) <= w - 2:
            assert before_M(I) == after_M(I)
