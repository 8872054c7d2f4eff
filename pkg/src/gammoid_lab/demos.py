"""Scripted runs on truncated versions of the standard infinite examples."""
from __future__ import annotations

from collections import Counter

from .bimaze import maximal_presentation, mt_oracle
from .dimaze import ml_oracle
from .lazy import generator, left_degrees, tnd_left_nbrs, tnd_truncation, truncate
from .matroid import enumerate_sets, same_matroid


def _check(name: str, passed: bool, detail) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _report(demo: str, checks: list, **data) -> dict:
    return {"demo": demo, "checks": checks, "passed": all(c["passed"] for c in checks), **data}


def ca_cotransversal(depth: int = 9) -> dict:
    """Exits of a truncated alternating comb sit in small cocircuits.

    For each exit ``b`` the set ``{b}`` plus its in-neighbours is checked to
    be a cocircuit, and ``(V \\ B0) + b`` to be a base.
    """
    T = truncate(generator("CA"), depth, 2)
    D = T.dimaze
    M = ml_oracle(D)
    cocircuits = set(enumerate_sets(M, "cocircuits"))
    bases = set(enumerate_sets(M, "bases"))
    non_exits = frozenset(D.vertices) - D.exits
    checks = []
    for b in D.ordered(D.exits):
        C = frozenset({b} | set(D.pred[b]))
        checks.append(_check(f"cocircuit at {b}", C in cocircuits, D.ordered(C)))
        checks.append(_check(f"base from non-exits plus {b}", non_exits | {b} in bases, D.ordered(non_exits | {b})))
    return _report(
        "ca-cotransversal",
        checks,
        vertices=len(D.vertices),
        exits=D.ordered(D.exits),
        frontier=D.ordered(T.frontier),
    )


def tnd(levels: int = 4) -> dict:
    """The bipartite example with left degrees 2 and 3, truncated at ``levels``.

    Left vertices have finite degree, and every truncation is already a
    maximal presentation of its transversal matroid.
    """
    checks = []
    degrees = left_degrees(tnd_left_nbrs, 2 * levels)
    finite = all(d is not None for d in degrees.values())
    checks.append(_check("left-locally finite", finite, {f"v{j}": d for j, d in degrees.items()}))
    stable = []
    for L in range(1, levels + 1):
        G = tnd_truncation(L).graph
        H = maximal_presentation(G)
        ok = H == G and same_matroid(mt_oracle(H), mt_oracle(G))
        stable.append(ok)
        checks.append(_check(f"levels {L}: maximal presentation is the truncation", ok, len(H.edges) - len(G.edges)))
    T = tnd_truncation(levels)
    return _report(
        "tnd",
        checks,
        degree_counts={str(d): c for d, c in sorted(Counter(degrees.values()).items())},
        edges=len(T.graph.edges),
        frontier=sorted(T.frontier, key=lambda v: int(v[1:])),
    )


def tree(depth: int = 3, width: int = 3) -> dict:
    """Truncation statistics for the tree with exits on even levels."""
    T = truncate(generator("TREE"), depth, width)
    D = T.dimaze
    per_level = Counter(v.count(".") for v in D.vertices)
    exit_levels = sorted({v.count(".") for v in D.exits})
    checks = [
        _check("root is an exit", "r" in D.exits, "r"),
        _check("exits are exactly the even levels", exit_levels == [lv for lv in sorted(per_level) if lv % 2 == 0], exit_levels),
        _check("edges run from odd to even levels", all(u.count(".") % 2 == 1 and v in D.exits for u, v in D.edges), len(D.edges)),
        _check("frontier is the odd levels", T.frontier == {v for v in D.vertices if v.count(".") % 2 == 1}, D.ordered(T.frontier)),
    ]
    return _report(
        "tree",
        checks,
        vertices_per_level={str(k): per_level[k] for k in sorted(per_level)},
        exits=len(D.exits),
        frontier=len(T.frontier),
    )


DEMOS = {"ca-cotransversal": ca_cotransversal, "tnd": tnd, "tree": tree}
