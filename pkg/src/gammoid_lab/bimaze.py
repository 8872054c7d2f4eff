"""Bipartite presentations: transversal and path-transversal oracles.

A bimaze is a bipartite graph ``G = (V, W)`` with a matching ``m0`` onto the
right class ``W``.  ``M_T(G)`` consists of the matchable subsets of ``V``;
``M_PT(G, m0)`` of those matchable by some ``m`` for which every component
of ``m ∪ m0`` is finite.  In a finite graph the two coincide.

Truncations of infinite bimazes carry a *frontier*: vertices whose
neighbourhood may have been cut.  A component of ``m ∪ m0`` through a
frontier vertex could continue past the cut, so only the trivial component
(the frontier vertex with its ``m0``-edge) is accepted there.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Optional

from .matroid import IndependenceOracle


class InvalidBimaze(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BipartiteGraph:
    left: tuple
    right: tuple
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        edges = [tuple(e) for e in self.edges]
        object.__setattr__(self, "edges", frozenset(edges))
        if len(set(self.left)) != len(self.left):
            raise InvalidBimaze("duplicate left vertex")
        if len(set(self.right)) != len(self.right):
            raise InvalidBimaze("duplicate right vertex")
        clash = set(self.left) & set(self.right)
        if clash:
            raise InvalidBimaze(f"vertices on both sides: {sorted(map(str, clash))}")
        if len(edges) != len(self.edges):
            raise InvalidBimaze("parallel edge")
        L, R = set(self.left), set(self.right)
        for e in edges:
            if len(e) != 2 or e[0] not in L or e[1] not in R:
                raise InvalidBimaze(f"edge {e!r} does not join a left vertex to a right vertex")

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.left, self.right, self.edges) == (other.left, other.right, other.edges)

    def __hash__(self):
        return hash((self.left, self.right, self.edges))

    def __repr__(self):
        return f"BipartiteGraph(left={list(self.left)!r}, right={list(self.right)!r}, edges={self.sorted_edges()!r})"

    @cached_property
    def left_index(self) -> dict:
        return {v: i for i, v in enumerate(self.left)}

    @cached_property
    def right_index(self) -> dict:
        return {w: i for i, w in enumerate(self.right)}

    @cached_property
    def nbrs(self) -> dict:
        """Left vertex to its right neighbours, in right order."""
        out = {v: [] for v in self.left}
        for v, w in self.edges:
            out[v].append(w)
        ri = self.right_index
        return {v: tuple(sorted(ws, key=ri.__getitem__)) for v, ws in out.items()}

    @cached_property
    def rnbrs(self) -> dict:
        out = {w: [] for w in self.right}
        for v, w in self.edges:
            out[w].append(v)
        li = self.left_index
        return {w: tuple(sorted(vs, key=li.__getitem__)) for w, vs in out.items()}

    def edge_key(self, e):
        return (self.left_index[e[0]], self.right_index[e[1]])

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=self.edge_key)

    def ordered_left(self, vs) -> list:
        return sorted(vs, key=self.left_index.__getitem__)

    def with_edges(self, edges) -> "BipartiteGraph":
        return BipartiteGraph(self.left, self.right, frozenset(edges))

    def without_right(self, ws) -> "BipartiteGraph":
        ws = set(ws)
        return BipartiteGraph(
            self.left,
            [w for w in self.right if w not in ws],
            frozenset(e for e in self.edges if e[1] not in ws),
        )

    def neighbourhood(self, vs) -> frozenset:
        return frozenset(w for v in vs for w in self.nbrs[v])


# ---------------------------------------------------------------------------
# matchings


def _augment(nbrs, v, match_r, seen) -> bool:
    for w in nbrs.get(v, ()):
        if w in seen:
            continue
        seen.add(w)
        if w not in match_r or _augment(nbrs, match_r[w], match_r, seen):
            match_r[w] = v
            return True
    return False


def matching_of(G: BipartiteGraph, I: Iterable[Hashable], nbrs: Optional[dict] = None) -> Optional[dict]:
    """A matching covering ``I`` as a dict left -> right, or ``None``.

    Augmenting paths, elements of ``I`` processed in left order.
    """
    nbrs = G.nbrs if nbrs is None else nbrs
    match_r = {}
    for v in G.ordered_left(I):
        if not _augment(nbrs, v, match_r, set()):
            return None
    return {v: w for w, v in match_r.items()}


def maximum_matching(G: BipartiteGraph, pool: Optional[Iterable] = None) -> dict:
    """A maximum matching of ``pool`` (default: all of ``V``), greedy in left order."""
    vs = G.left if pool is None else G.ordered_left(pool)
    match_r = {}
    for v in vs:
        _augment(G.nbrs, v, match_r, set())
    return {v: w for w, v in match_r.items()}


def mt_rank(G: BipartiteGraph, pool: Optional[Iterable] = None) -> int:
    return len(maximum_matching(G, pool))


def mt_oracle(G: BipartiteGraph) -> IndependenceOracle:
    """The transversal matroid: matchable subsets of the left class."""
    return IndependenceOracle(G.left, lambda I: matching_of(G, I) is not None, name="M_T")


def is_matching(G: BipartiteGraph, m: dict) -> bool:
    return len(set(m.values())) == len(m) and all((v, w) in G.edges for v, w in m.items())


# ---------------------------------------------------------------------------
# bimazes


@dataclass(frozen=True, eq=False)
class Bimaze:
    graph: BipartiteGraph
    m0: dict
    frontier: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "m0", dict(self.m0))
        object.__setattr__(self, "frontier", frozenset(self.frontier))
        G = self.graph
        if not is_matching(G, self.m0):
            raise InvalidBimaze("m0 is not a matching of the graph")
        if set(self.m0.values()) != set(G.right):
            missing = set(G.right) - set(self.m0.values())
            raise InvalidBimaze(f"m0 is not onto the right class; uncovered: {sorted(map(str, missing))}")
        stray = self.frontier - set(G.left) - set(G.right)
        if stray:
            raise InvalidBimaze(f"frontier vertices not in the graph: {sorted(map(str, stray))}")

    def __eq__(self, other):
        if not isinstance(other, Bimaze):
            return NotImplemented
        return (self.graph, self.m0, self.frontier) == (other.graph, other.m0, other.frontier)

    def __hash__(self):
        return hash((self.graph, frozenset(self.m0.items()), self.frontier))

    @cached_property
    def m0_right(self) -> dict:
        return {w: v for v, w in self.m0.items()}

    @property
    def m0_edges(self) -> frozenset:
        return frozenset(self.m0.items())

    def partner(self, z):
        if z in self.m0:
            return self.m0[z]
        return self.m0_right.get(z)


def _locked_nbrs(B: Bimaze) -> dict:
    """Neighbourhoods after fencing off the frontier.

    A frontier vertex and its ``m0``-partner may only use their shared
    ``m0``-edge; a frontier left vertex without a partner cannot be matched.
    """
    G = B.graph
    locked_left, locked_right, dead = set(), set(), set()
    for z in B.frontier:
        p = B.partner(z)
        if z in G.left_index:
            if p is None:
                dead.add(z)
            else:
                locked_left.add(z)
                locked_right.add(p)
        else:
            locked_right.add(z)
            locked_left.add(p)
    nbrs = {}
    for v in G.left:
        if v in dead:
            nbrs[v] = ()
        elif v in locked_left:
            nbrs[v] = (B.m0[v],)
        else:
            nbrs[v] = tuple(w for w in G.nbrs[v] if w not in locked_right)
    return nbrs


def m0_matching_of(B: Bimaze, I: Iterable[Hashable]) -> Optional[dict]:
    """An ``m0``-matching of ``I`` respecting the frontier, or ``None``."""
    if not B.frontier:
        return matching_of(B.graph, I)
    return matching_of(B.graph, I, _locked_nbrs(B))


def mpt_oracle(B: Bimaze) -> IndependenceOracle:
    """The path-transversal system ``M_PT(G, m0)`` (frontier-conservative)."""
    return IndependenceOracle(B.graph.left, lambda I: m0_matching_of(B, I) is not None, name="M_PT")


def components(B: Bimaze, m: dict) -> list:
    """Vertex sets of the components of ``m ∪ m0`` (isolated vertices omitted)."""
    adj = {}
    for v, w in itertools.chain(m.items(), B.m0.items()):
        adj.setdefault(v, set()).add(w)
        adj.setdefault(w, set()).add(v)
    seen, out = set(), []
    for start in adj:
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            z = stack.pop()
            if z in comp:
                continue
            comp.add(z)
            stack.extend(adj[z] - comp)
        seen |= comp
        out.append(frozenset(comp))
    return out


def frontier_safe(B: Bimaze, m: dict) -> bool:
    """Every component through a frontier vertex is a lone ``m0``-edge.

    A frontier vertex matched by ``m`` while having no ``m0``-partner also
    fails, since its component is a non-``m0`` edge.
    """
    if not B.frontier:
        return True
    for comp in components(B, m):
        if not comp & B.frontier:
            continue
        edges = {(v, w) for v, w in m.items() if v in comp} | {(v, w) for v, w in B.m0.items() if v in comp}
        if len(edges) > 1 or not edges <= B.m0_edges:
            return False
    return True


def extend_onto(B: Bimaze, m: dict) -> dict:
    """Flip ``m`` along the components of ``m ∪ m0`` meeting ``W - m``.

    The result covers ``W`` and matches a superset of the left vertices
    matched by ``m``.
    """
    G = B.graph
    if not is_matching(G, m):
        raise InvalidBimaze("not a matching")
    covered = set(m.values())
    m_edges = set(m.items())
    m0_edges = set(B.m0.items())
    flip = set()
    for comp in components(B, m):
        if any(w in comp and w not in covered for w in G.right):
            flip |= {e for e in m_edges | m0_edges if e[0] in comp}
    new = (m_edges - flip) | (m0_edges & flip)
    out = dict(new)
    if len(out) != len(new) or len(set(out.values())) != len(out) or set(out.values()) != set(G.right):
        raise InvalidBimaze("extension did not produce a matching onto the right class")
    return out


# ---------------------------------------------------------------------------
# presentations


def reduce_cover_rhs(G: BipartiteGraph) -> tuple:
    """Delete right vertices missed by a maximum matching.

    Returns ``(graph, coloops)`` where ``coloops`` is the neighbourhood of
    the deleted vertices; the transversal matroid is unchanged.
    """
    m = maximum_matching(G)
    missed = [w for w in G.right if w not in set(m.values())]
    coloops = frozenset(v for w in missed for v in G.rnbrs[w])
    return G.without_right(missed), coloops


def is_coloop_after_removing(G: BipartiteGraph, v, w) -> bool:
    """Whether ``v`` is a coloop of ``M_T(G)`` restricted to ``V \\ N(w)``."""
    X = set(G.left) - set(G.rnbrs[w])
    if v not in X:
        return False
    return mt_rank(G, X - {v}) < mt_rank(G, X)


def addable_edges(G: BipartiteGraph) -> list:
    """Non-edges whose addition leaves ``M_T(G)`` unchanged, in canonical order."""
    out = []
    for w in G.right:
        for v in G.left:
            if (v, w) not in G.edges and is_coloop_after_removing(G, v, w):
                out.append((v, w))
    return sorted(out, key=G.edge_key)


def maximal_presentation(G: BipartiteGraph) -> BipartiteGraph:
    """Add every matroid-preserving non-edge until none remains."""
    while True:
        extra = addable_edges(G)
        if not extra:
            return G
        G = G.with_edges(G.edges | set(extra))


def _mt_table(G: BipartiteGraph) -> list:
    return mt_oracle(G).table()


def minimal_presentation(G: BipartiteGraph) -> BipartiteGraph:
    """Greedily delete edges, in canonical order, while the matroid is unchanged."""
    target = _mt_table(G)
    changed = True
    while changed:
        changed = False
        for e in G.sorted_edges():
            H = G.with_edges(G.edges - {e})
            if _mt_table(H) == target:
                G = H
                changed = True
    return G


def right_signature(G: BipartiteGraph) -> Counter:
    """Multiset of right neighbourhoods after :func:`reduce_cover_rhs`.

    Two presentations are isomorphic by a map fixing ``V`` pointwise exactly
    when these multisets agree.
    """
    H, _ = reduce_cover_rhs(G)
    return Counter(frozenset(H.rnbrs[w]) for w in H.right)


def isomorphic_fixing_left(G: BipartiteGraph, H: BipartiteGraph) -> Optional[dict]:
    """A right-class bijection carrying ``G`` to ``H`` (after reduction), or ``None``."""
    G2, _ = reduce_cover_rhs(G)
    H2, _ = reduce_cover_rhs(H)
    if set(G2.left) != set(H2.left):
        return None
    pool = {}
    for w in H2.right:
        pool.setdefault(frozenset(H2.rnbrs[w]), []).append(w)
    out = {}
    for w in G2.right:
        bucket = pool.get(frozenset(G2.rnbrs[w]))
        if not bucket:
            return None
        out[w] = bucket.pop(0)
    if any(pool.values()):
        return None
    return out
