import random

import pytest
from hypothesis import given, settings, strategies as st

from gammoid_lab.bimaze import Bimaze, BipartiteGraph, mpt_oracle, mt_oracle
from gammoid_lab.dimaze import Dimaze, PathSystem, linkage_onto, ml_oracle
from gammoid_lab.duality import (
    DualityError,
    check_dagger,
    check_ddagger,
    linkage_to_matching,
    matching_to_linkage,
    star_naming,
    to_bimaze,
    to_dimaze,
)
from gammoid_lab.matroid import dual, same_matroid
from gammoid_lab.sampling import dimazes_up_to, random_dimaze

from oracles import subsets

PATH = Dimaze(["s", "x", "t"], [("s", "x"), ("x", "t")], ["t"])
SMALL = dimazes_up_to(4)


def test_one_edge_conversion():
    B = to_bimaze(Dimaze(["a", "b"], [("a", "b")], ["b"]))
    assert B.graph.left == ("a", "b") and B.graph.right == ("a*",)
    assert B.graph.edges == {("a", "a*"), ("b", "a*")}
    assert B.m0 == {"a": "a*"}


def test_edgeless_all_exits():
    B = to_bimaze(Dimaze(["a", "b"], [], ["a", "b"]))
    assert B.graph.right == () and B.m0 == {}
    assert to_dimaze(B) == Dimaze(["a", "b"], [], ["a", "b"])


def test_path_conversion_and_back():
    B = to_bimaze(PATH)
    assert B.graph.edges == {("s", "s*"), ("x", "x*"), ("x", "s*"), ("t", "x*")}
    assert to_dimaze(B) == PATH


def test_edgeless_beyond_m0():
    G = BipartiteGraph(["a", "b", "c"], ["a*"], {("a", "a*")})
    D = to_dimaze(Bimaze(G, {"a": "a*"}))
    assert not D.edges and D.exits == {"b", "c"}


def test_star_collision_renamed():
    D = Dimaze(["a", "a*"], [("a", "a*")], ["a*"])
    star = star_naming(D)
    assert star["a"] == "a**" and star.renamed == (("a", "a**"),)
    D = Dimaze(["a", "a*", "b"], [("a", "b"), ("a*", "b")], ["b"])
    star = star_naming(D)
    assert len(set(star.forward.values())) == 2
    assert not set(star.forward.values()) & set(D.vertices)
    assert to_dimaze(to_bimaze(D)) == D


def test_linkage_matching_examples():
    P = PathSystem((("s", "x", "t"),))
    m = linkage_to_matching(PATH, P)
    assert m == {"x": "s*", "t": "x*"}
    assert matching_to_linkage(PATH, m) == P
    triv = PathSystem((("t",),))
    D = Dimaze(["s", "x", "t"], [("s", "x"), ("x", "t")], ["t"])
    assert linkage_to_matching(D, triv) == to_bimaze(D).m0
    assert matching_to_linkage(D, to_bimaze(D).m0) == triv


def test_linkage_matching_errors():
    with pytest.raises(DualityError):
        linkage_to_matching(PATH, PathSystem((("s", "x"),)))
    with pytest.raises(DualityError):
        matching_to_linkage(PATH, {"x": "s*"})
    with pytest.raises(DualityError):
        matching_to_linkage(PATH, {"s": "x*", "t": "s*"})


def test_dagger_trivial():
    D = Dimaze(["a", "b"], [], [])
    assert check_dagger(D)
    assert check_ddagger(to_bimaze(D))


@pytest.mark.parametrize("D", SMALL, ids=lambda D: f"n{len(D.vertices)}")
def test_small_dimazes(D):
    B = to_bimaze(D)
    assert to_dimaze(B) == D
    assert same_matroid(dual(ml_oracle(D)), mt_oracle(B.graph))
    assert same_matroid(mt_oracle(B.graph), mpt_oracle(B))
    assert check_dagger(D) and check_ddagger(B)
    for I in subsets(D.vertices):
        P = linkage_onto(D, I)
        if P is None:
            continue
        m = linkage_to_matching(D, P)
        assert set(m) == set(D.vertices) - I
        back = matching_to_linkage(D, m)
        assert back.ini == I and back.ter == D.exits


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(5, 7))
def test_duality_random(seed, n):
    D = random_dimaze(random.Random(seed), n)
    B = to_bimaze(D)
    assert to_dimaze(B) == D
    assert same_matroid(dual(ml_oracle(D)), mt_oracle(B.graph))
    assert check_dagger(D) == check_ddagger(B)


def _star_bimazes(max_total):
    """Bimazes whose right vertices are named ``v*`` after their m0-partner."""
    for nl in range(1, max_total + 1):
        left = [f"v{i}" for i in range(nl)]
        for nr in range(0, min(nl, max_total - nl) + 1):
            matched = left[:nr]
            right = [f"{v}*" for v in matched]
            slots = [(v, w) for v in left for w in right if not (w == f"{v}*")]
            for bits in range(1 << len(slots)):
                extra = {slots[i] for i in range(len(slots)) if bits >> i & 1}
                G = BipartiteGraph(left, right, extra | {(v, f"{v}*") for v in matched})
                yield Bimaze(G, {v: f"{v}*" for v in matched})


def test_bimaze_involution_exact():
    count = 0
    for B in _star_bimazes(6):
        assert to_bimaze(to_dimaze(B)) == B
        count += 1
    assert count > 100
