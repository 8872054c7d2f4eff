
import pytest
from hypothesis import given, settings, strategies as st

from gammoid_lab.matroid import (
    IndependenceOracle,
    MinorInputError,
    TooLargeError,
    check_axioms,
    coloops,
    dual,
    enumerate_sets,
    first_difference,
    free,
    minor,
    minor_normalize,
    minor_stepwise,
    rank,
    same_matroid,
    uniform,
)

from oracles import subsets


def test_u12_passes_all_axioms():
    rep = check_axioms(uniform(1, ["a", "b"]))
    assert rep.passed
    assert rep.im.note == "finite ground set"


def test_empty_set_dependent_fails_i1():
    M = IndependenceOracle(["a"], lambda I: False)
    rep = check_axioms(M)
    assert not rep.i1.passed
    assert rep.i1.witness == (frozenset(),)
    assert not M(rep.i1.witness[0])


def test_i2_witness_recheckable():
    fam = [set(), {"a", "b"}, {"a"}]
    M = IndependenceOracle.from_family(["a", "b"], fam)
    rep = check_axioms(M)
    assert not rep.i2.passed
    J, I = rep.i2.witness
    assert J < I and M(I) and not M(J)


def test_i3_witness_recheckable():
    # {a} is not maximal but cannot grow towards the maximal {b, c}
    fam = [set(), {"a"}, {"b"}, {"c"}, {"b", "c"}]
    M = IndependenceOracle.from_family(["a", "b", "c"], fam)
    rep = check_axioms(M)
    assert not rep.i3.passed
    I, big = rep.i3.witness
    assert M(I) and M(big)
    assert not any(M(I | {x}) for x in big - I)


def test_cap_enforced(monkeypatch):
    with pytest.raises(TooLargeError, match="too large"):
        check_axioms(free(range(5)), cap=4)
    monkeypatch.setenv("GAMMOID_LAB_CAP", "3")
    with pytest.raises(TooLargeError):
        check_axioms(free(range(4)))


def test_stray_elements_rejected():
    with pytest.raises(ValueError):
        free(["a"])({"b"})


def test_dual_examples():
    d = dual(uniform(1, ["a", "b"]))
    assert enumerate_sets(d, "bases") == [frozenset("a"), frozenset("b")]
    d = dual(free(["a", "b"]))
    assert d.family() == {frozenset()}


def test_enumerate_examples():
    M = uniform(1, ["a", "b"])
    assert enumerate_sets(M, "circuits") == [frozenset("ab")]
    assert enumerate_sets(M, "cocircuits") == [frozenset("ab")]
    with pytest.raises(ValueError):
        enumerate_sets(M, "flats")


def test_coloops_examples():
    assert coloops(free(["a", "b"])) == {"a", "b"}
    assert coloops(uniform(1, ["a", "b"])) == frozenset()


def test_minor_normalize_example():
    M = uniform(1, ["s", "x", "t"])
    norm = minor_normalize(M, {"x"}, {"t"})
    assert norm.normalized_s == {"x"}
    assert norm.normalized_r == {"t"}
    N = minor(M, {"x"}, {"t"})
    assert list(N.ground) == ["s"]
    assert N.family() == {frozenset()}
    assert minor_normalize(M, (), ()).normalized_s == frozenset()


def test_minor_rejects_overlap():
    with pytest.raises(MinorInputError):
        minor(free("ab"), {"a"}, {"a"})


def test_first_difference_reports_subset():
    diff = first_difference(uniform(1, "ab"), free("ab"))
    assert diff == (frozenset("ab"), False, True)


def _random_matroid(data, n):
    """A transversal matroid from a random bipartite graph: always a matroid."""
    rights = data.draw(st.integers(0, 3))
    nbrs = {i: data.draw(st.sets(st.integers(0, max(rights - 1, 0)), max_size=rights)) if rights else set() for i in range(n)}
    from oracles import brute_matchable
    return IndependenceOracle(range(n), lambda I: brute_matchable(nbrs, I))


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(0, 6))
def test_dual_involution_and_axioms(data, n):
    M = _random_matroid(data, n)
    assert check_axioms(M).passed
    D = dual(M)
    assert check_axioms(D).passed
    assert same_matroid(dual(D), M)
    assert rank(M) + rank(D) == n


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(0, 6))
def test_minor_matches_stepwise(data, n):
    M = _random_matroid(data, n)
    labels = data.draw(st.lists(st.sampled_from("ckd"), min_size=n, max_size=n))
    C = {i for i in range(n) if labels[i] == "c"}
    D = {i for i in range(n) if labels[i] == "d"}
    norm = minor_normalize(M, C, D)
    assert M(norm.normalized_s)
    assert dual(M)(norm.normalized_r)
    assert norm.normalized_s <= C | D
    assert same_matroid(minor(M, C, D), minor_stepwise(M, C, D))
    assert check_axioms(minor(M, C, D)).passed


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(0, 6))
def test_coloops_are_in_no_circuit(data, n):
    M = _random_matroid(data, n)
    cl = coloops(M)
    in_circuit = set().union(*enumerate_sets(M, "circuits")) if enumerate_sets(M, "circuits") else set()
    assert cl == set(M.ground) - in_circuit


def test_memo_does_not_change_answers():
    calls = []
    M = IndependenceOracle("abc", lambda I: calls.append(I) or len(I) <= 2)
    first = [M(s) for s in subsets("abc")]
    second = [M(s) for s in subsets("abc")]
    assert first == second
    assert len(calls) == 8
