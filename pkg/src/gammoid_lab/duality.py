"""Conversions between dimazes and bimazes.

A dimaze ``(D, B0)`` becomes the bimaze with left class ``V``, one right
vertex ``v*`` per non-exit ``v``, the identity matching ``m0 = {v v*}`` and an
edge ``v u*`` for every edge ``(u, v)`` of ``D``.  The converse reads the
edges back off the non-``m0`` edges.  Linkages onto the exits correspond to
``m0``-matchings onto the right class, which is why the strict gammoid of a
finite dimaze is dual to the transversal matroid of its converted bimaze.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from .bimaze import Bimaze, BipartiteGraph, is_matching, m0_matching_of, mpt_oracle
from .dimaze import Dimaze, LinkageError, PathSystem, check_linkage, linkage_onto, ml_oracle
from .matroid import GroundSet, check_cap, enumerate_sets

log = logging.getLogger(__name__)

STAR = "*"


class DualityError(ValueError):
    pass


@dataclass(frozen=True)
class StarNaming:
    """Names ``v*`` for the non-exits of a dimaze, and their inverse.

    The name is ``str(v)`` followed by the suffix; when that collides with a
    vertex or an earlier star the suffix is repeated until it is fresh.
    """

    forward: dict
    inverse: dict
    renamed: tuple = field(default=())

    def __getitem__(self, v):
        return self.forward[v]


def star_naming(D: Dimaze) -> StarNaming:
    taken = {str(v) for v in D.vertices}
    forward, inverse, renamed = {}, {}, []
    for v in D.vertices:
        if v in D.exits:
            continue
        name = f"{v}{STAR}"
        while name in taken:
            name += STAR
        if name != f"{v}{STAR}":
            renamed.append((v, name))
            log.info("star name for %r renamed to %r to avoid a collision", v, name)
        taken.add(name)
        forward[v] = name
        inverse[name] = v
    return StarNaming(forward, inverse, tuple(renamed))


def to_bimaze_with_naming(D: Dimaze) -> tuple:
    star = star_naming(D)
    right = [star[v] for v in D.vertices if v in star.forward]
    edges = {(v, star[v]) for v in star.forward}
    edges |= {(v, star[u]) for u, v in D.edges}
    G = BipartiteGraph(D.vertices, right, frozenset(edges))
    return Bimaze(G, {v: star[v] for v in D.vertices if v in star.forward}), star


def to_bimaze(D: Dimaze) -> Bimaze:
    """The converted bimaze ``(D, B0)*``."""
    return to_bimaze_with_naming(D)[0]


def to_dimaze(B: Bimaze) -> Dimaze:
    """The converted dimaze: ``(v, w)`` for each non-``m0`` edge ``w m0(v)``."""
    G = B.graph
    owner = B.m0_right
    edges = []
    for w, x in G.sorted_edges():
        if B.m0.get(w) == x:
            continue
        edges.append((owner[x], w))
    exits = [v for v in G.left if v not in B.m0]
    return Dimaze(G.left, edges, exits)


def linkage_to_matching(D: Dimaze, P: PathSystem, star: Optional[StarNaming] = None) -> dict:
    """The ``m0``-matching ``{v u* : (u, v) ∈ E(P)} ∪ {w w* : w ∉ V(P)}``.

    ``P`` must link its initial vertices onto the exits; the result matches
    the other vertices onto the right class of :func:`to_bimaze`.
    """
    try:
        check_linkage(D, P, onto=D.exits)
    except LinkageError as exc:
        raise DualityError(f"not a linkage onto the exits: {exc}") from None
    star = star or star_naming(D)
    m = {v: star[u] for u, v in P.edge_set}
    for w in D.vertices:
        if w not in P.vertex_set:
            m[w] = star[w]
    return m


def matching_to_linkage(D: Dimaze, m: dict, star: Optional[StarNaming] = None) -> PathSystem:
    """Follow ``m0``-``m``-alternating walks from the vertices ``m`` misses.

    From ``v``: step to ``v*`` along ``m0``, then to the ``m``-partner ``u`` of
    ``v*``, which is the next vertex of the path since ``u v*`` encodes the
    edge ``(v, u)``.  The walk stops at an exit, which has no star.
    """
    star = star or star_naming(D)
    B = to_bimaze(D)
    if set(m) - set(D.vertices):
        raise DualityError("matching uses vertices outside the dimaze")
    if not is_matching(B.graph, m):
        raise DualityError("not a matching of the converted bimaze")
    if set(m.values()) != set(star.inverse):
        raise DualityError("matching is not onto the right class")
    by_right = {w: v for v, w in m.items()}
    paths = []
    for v in D.vertices:
        if v in m:
            continue
        path = [v]
        while path[-1] not in D.exits:
            path.append(by_right[star[path[-1]]])
            if len(path) > len(D.vertices):
                raise DualityError("alternating walk does not terminate")
        paths.append(tuple(path))
    P = PathSystem(tuple(paths))
    check_linkage(D, P, onto=D.exits)
    return P


def _all_subsets(ground: GroundSet):
    for mask in range(1 << len(ground)):
        yield ground.subset(mask)


def check_dagger(D: Dimaze, cap: Optional[int] = None) -> bool:
    """Brute force: the bases of ``M_L(D)`` are exactly the sets linkable onto ``B0``."""
    M = ml_oracle(D)
    check_cap(len(M.ground), cap)
    bases = set(enumerate_sets(M, "bases", cap))
    for I in _all_subsets(M.ground):
        if (I in bases) != (linkage_onto(D, I) is not None):
            return False
    return True


def _matchable_onto(B: Bimaze, I: frozenset) -> bool:
    if len(I) != len(B.graph.right):
        return False
    m = m0_matching_of(B, I)
    return m is not None and set(m.values()) == set(B.graph.right)


def check_ddagger(B: Bimaze, cap: Optional[int] = None) -> bool:
    """Brute force: the bases of ``M_PT`` are exactly the sets ``m0``-matchable onto ``W``."""
    M = mpt_oracle(B)
    check_cap(len(M.ground), cap)
    bases = set(enumerate_sets(M, "bases", cap))
    for I in _all_subsets(M.ground):
        if (I in bases) != _matchable_onto(B, I):
            return False
    return True
