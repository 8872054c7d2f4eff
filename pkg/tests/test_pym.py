import random

import pytest
from hypothesis import given, settings, strategies as st

from gammoid_lab.dimaze import Dimaze, LinkageError, PathSystem, check_linkage, link, ml_oracle
from gammoid_lab.matroid import enumerate_sets
from gammoid_lab.pym import (
    BackWalkError,
    back_walk,
    minor_walks,
    movement_points,
    pym_linkage,
    shifted_minor_linkage,
)
from gammoid_lab.sampling import random_dimaze, random_linkage
from gammoid_lab.dimaze import walks_disjoint

D_EX = Dimaze(["s", "i", "t1", "t2"], [("s", "t1"), ("i", "t1"), ("i", "t2")], {"t1", "t2"})
P_EX = PathSystem((("s", "t1"), ("i", "t2")))
Q_EX = PathSystem((("s", "t1"),))


def test_worked_example():
    tr = pym_linkage(D_EX, P_EX, Q_EX)
    assert set(tr.q_inf.paths) == {("s", "t1"), ("i", "t2")}
    assert tr.y_inf == {"t1", "t2"}
    assert tr.f[1] == {"s": "s", "i": "t2"}
    assert tr.t[1] == {"t1": "s"}


def test_back_walk_example():
    tr = pym_linkage(D_EX, P_EX, Q_EX)
    W = back_walk(tr, "t2")
    assert W.vertices == ("i", "t2")
    with pytest.raises(BackWalkError):
        back_walk(tr, "s")


def test_p_equal_q_is_fixed():
    tr = pym_linkage(D_EX, Q_EX, Q_EX)
    assert tr.q_inf.paths == Q_EX.paths


def test_rejects_q_not_inside_p():
    with pytest.raises(LinkageError):
        pym_linkage(D_EX, PathSystem((("i", "t2"),)), Q_EX)


def test_interior_start_still_moves_later():
    # x starts inside the Q-path, so round 1 moves nothing yet s must reroute
    D = Dimaze(["s", "x", "t1", "t2"], [("s", "x"), ("x", "t1"), ("s", "t2")], {"t1", "t2"})
    P = PathSystem((("s", "t2"), ("x", "t1")))
    Q = PathSystem((("s", "x", "t1"),))
    tr = pym_linkage(D, P, Q)
    assert set(tr.q_inf.paths) == {("x", "t1"), ("s", "t2")}
    W = back_walk(tr, "t2")
    assert W.vertices == ("x", "s", "t2")


def _random_instance(seed):
    rng = random.Random(seed)
    D = random_dimaze(rng, rng.randint(1, 7), rng.uniform(0.2, 0.6))
    P = random_linkage(rng, D)
    S = [x for x in P.ini if rng.random() < 0.5]
    Q = link(D, S)
    return D, P, Q


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_linkage_invariants(seed):
    D, P, Q = _random_instance(seed)
    tr = pym_linkage(D, P, Q)
    check_linkage(D, tr.q_inf)
    assert tr.q_inf.ini == P.ini
    assert Q.ter <= tr.q_inf.ter <= P.ter | Q.ter
    assert tr.rounds <= len(D.vertices) + 1
    for x in P.ini:
        path = P.starting_at(x)
        idx = [path.index(tr.f[i][x]) for i in range(len(tr.f))]
        assert idx == sorted(idx)
    for i in range(1, len(tr.t)):
        for y, v in tr.t[i].items():
            assert v in Q.paths[Q.path_of[y]]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_back_walk_claims(seed):
    D, P, Q = _random_instance(seed)
    tr = pym_linkage(D, P, Q)
    points = [(v, x, j) for v, x, j in movement_points(tr) if tr.first_move[v] == (x, j)]
    walks = {v: back_walk(tr, v) for v, _, _ in points}
    for W in walks.values():
        assert W.ini in tr.i_set
    for v, _, j in points:
        for v2, _, j2 in points:
            if v == v2:
                continue
            if j == j2:
                assert walks[v].ini != walks[v2].ini
            if walks[v].ini == walks[v2].ini:
                assert walks[v].is_prefix_of(walks[v2]) or walks[v2].is_prefix_of(walks[v])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_linkable_in_shifted_minor(seed):
    rng = random.Random(seed)
    D = random_dimaze(rng, rng.randint(1, 7), rng.uniform(0.2, 0.6))
    B1 = rng.choice(enumerate_sets(ml_oracle(D), "bases"))
    S, T = B1 - D.exits, D.exits - B1
    Q = link(D.with_exits(T), S)
    rest = [v for v in D.vertices if v not in S]
    I = set(rng.sample(rest, rng.randint(0, len(rest))))
    P = link(D, I | S)
    if not isinstance(P, PathSystem):
        return
    tr = pym_linkage(D, P, Q)
    walks = list(minor_walks(tr).values())
    for a in range(len(walks)):
        for b in range(a + 1, len(walks)):
            assert walks_disjoint(walks[a], walks[b], Q)
    SD, L = shifted_minor_linkage(tr)
    check_linkage(SD.d1.without(S), L)
    assert L.ini == I
    # the base exchange count
    assert len(I) <= len(tr.y_inf - Q.ter)
