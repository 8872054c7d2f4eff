"""Shifting a dimaze along a linkage, and the minor presentations built from it.

Shifting along a linkage ``Q`` from ``S`` onto ``T`` moves the tail of every
edge leaving a ``Q``-vertex one step forward along ``Q``, reverses the
``Q``-edges, and swaps the exits ``T`` for ``S``.  Paths in the shifted
dimaze correspond to ``Q``-alternating walks in the original, which is what
makes the two dimazes present the same matroid when the new exits form a
base.  Once ``S`` has become a set of exits, contracting it is the same as
deleting it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dimaze import (
    AltWalk,
    Dimaze,
    LinkageError,
    PathSystem,
    Separator,
    WalkError,
    check_linkage,
    is_linkable,
    link,
    ml_oracle,
    walk_violations,
    walks_disjoint,
)
from .matroid import IndependenceOracle, rank


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class ShiftedDimaze:
    d1: Dimaze
    forward: dict
    backward: dict
    source: Dimaze
    q: PathSystem

    @property
    def s(self) -> frozenset:
        return self.q.ini

    @property
    def t(self) -> frozenset:
        return self.q.ter


def shift(D: Dimaze, Q: PathSystem) -> ShiftedDimaze:
    """The ``Q``-shifted dimaze ``(D1, B1)`` with ``B1 = (B0 \\ T) ∪ S``."""
    check_linkage(D, Q)
    qv, qe, nxt, prv = Q.vertex_set, Q.edge_set, Q.next, Q.prev
    T, S = Q.ter, Q.ini
    forward = {v: (nxt[v] if v in qv else v) for v in D.vertices if v not in T}
    backward = {v: (prv[v] if v in qv else v) for v in D.vertices if v not in S}
    edges = []
    for v, u in D.sorted_edges():
        if (v, u) in qe:
            edges.append((u, v))
        else:
            edges.append((forward[v], u))
    exits = (D.exits - T) | S
    d1 = Dimaze(D.vertices, edges, exits)
    return ShiftedDimaze(d1, forward, backward, D, Q)


def walk_to_path(SD: ShiftedDimaze, W: AltWalk) -> tuple:
    """Image of a finite ``Q``-alternating walk ending in ``B1``: a path of ``D1``.

    Drops every edge, and every ``Q``-vertex that the walk leaves along an
    edge outside ``Q``.
    """
    Q = SD.q
    problems = walk_violations(W, Q, D=SD.source)
    if problems:
        raise WalkError("; ".join(problems))
    if W.ter not in SD.d1.exits:
        raise WalkError(f"walk ends at {W.ter!r}, outside the shifted exits")
    qv, qe = Q.vertex_set, Q.edge_set
    path = []
    for i, w in enumerate(W.vertices):
        if i < len(W.edges) and w in qv and W.edges[i] not in qe:
            continue
        path.append(w)
    return tuple(path)


def _check_d1_path(SD: ShiftedDimaze, P: tuple) -> None:
    if not P:
        raise WalkError("empty path")
    if len(set(P)) != len(P):
        raise WalkError("path repeats a vertex")
    es = SD.d1.edge_set
    for i in range(len(P) - 1):
        if (P[i], P[i + 1]) not in es:
            raise WalkError(f"({P[i]!r}, {P[i + 1]!r}) is not an edge of the shifted dimaze")


def path_to_walk(SD: ShiftedDimaze, P: Iterable) -> AltWalk:
    """Inverse of :func:`walk_to_path` on paths of ``D1``.

    Each edge ``(v, u)`` of the path is either a reversed ``Q``-edge (walk
    goes backwards along it), the image of an edge leaving a vertex off ``Q``
    (walk goes forwards), or the image of an edge ``(w, u)`` with ``w`` the
    ``Q``-predecessor of ``v`` (walk steps back to ``w`` and then forwards).
    """
    P = tuple(P)
    _check_d1_path(SD, P)
    Q = SD.q
    qe = Q.edge_set
    verts, edges = [P[0]], []
    for v, u in zip(P, P[1:]):
        if (u, v) in qe:
            edges.append((u, v))
            verts.append(u)
            continue
        w = SD.backward[v]
        if w == v:
            edges.append((v, u))
            verts.append(u)
        else:
            edges.append((w, v))
            verts.append(w)
            edges.append((w, u))
            verts.append(u)
    return AltWalk(tuple(verts), tuple(edges))


def symdiff_paths(D: Dimaze, Q: PathSystem, Ws: Iterable[AltWalk]) -> PathSystem:
    """Paths of ``E(Q) Δ E(Ws)`` from ``X = J ∪ (S \\ Ter(Ws))``, ``J = Ini(Ws)``.

    In a finite dimaze every such component is a path ending in
    ``Y = T ∪ (Ter(Ws) ∩ B0)``.
    """
    Ws = list(Ws)
    for i, W in enumerate(Ws):
        problems = walk_violations(W, Q, D=D)
        if problems:
            raise WalkError(f"walk {i}: " + "; ".join(problems))
        for W2 in Ws[i + 1:]:
            if not walks_disjoint(W, W2, Q):
                raise WalkError("walks are not disjoint")
    J = {W.ini for W in Ws}
    if J & Q.ini:
        raise WalkError("walks must start outside Ini(Q)")
    ters = {W.ter for W in Ws}
    X = J | (Q.ini - ters)
    edges = set(Q.edge_set)
    for W in Ws:
        edges ^= W.edge_set
    nxt = {}
    for u, v in edges:
        if u in nxt:
            raise WalkError(f"symmetric difference branches at {u!r}")
        nxt[u] = v
    paths = []
    for x in D.ordered(X):
        path = [x]
        while path[-1] in nxt:
            path.append(nxt[path[-1]])
            if len(path) > len(edges) + 1:
                raise WalkError("symmetric difference has a cycle")
        paths.append(tuple(path))
    return PathSystem(tuple(paths), linkage=False)


def max_pq_walk(P: PathSystem, Q: PathSystem, start) -> AltWalk:
    """The maximal ``P``-``Q``-alternating walk from ``start``.

    Only edges of ``E(P) Δ E(Q)`` are used: ``P``-edges forwards and
    ``Q``-edges backwards.  At every interior vertex one of the two incident
    walk edges determines the other, so the walk is unique.
    """
    pe, qe = P.edge_set, Q.edge_set
    pv, qv = P.vertex_set, Q.vertex_set
    verts, edges = [start], []
    used = set()
    seen = {start}
    last = None  # "P" or "Q" for the kind of the last edge
    while True:
        v = verts[-1]
        fwd = (v, P.next[v]) if v in P.next else None
        if fwd is not None and fwd in qe:
            fwd = None
        back = (Q.prev[v], v) if v in Q.prev else None
        if back is not None and back in pe:
            back = None
        if last is None or last == "P":
            kind = "Q" if v in qv else "P"
        else:
            kind = "P" if v in pv else "Q"
        step = back if kind == "Q" else fwd
        if step is None or step in used:
            break
        nxt = step[0] if kind == "Q" else step[1]
        if nxt in seen and nxt not in qv:
            break
        used.add(step)
        seen.add(nxt)
        edges.append(step)
        verts.append(nxt)
        last = kind
    return AltWalk(tuple(verts), tuple(edges))


def max_pq_walks(P: PathSystem, Q: PathSystem) -> dict:
    """Maximal ``P``-``Q``-alternating walks keyed by their start in ``Ini(P)``."""
    return {p[0]: max_pq_walk(P, Q, p[0]) for p in P.paths}


def _extend_within(D: Dimaze, S: frozenset, pool) -> frozenset:
    current = set(S)
    for b in D.ordered(pool):
        if b in current:
            continue
        current.add(b)
        if not is_linkable(D, current):
            current.discard(b)
    return frozenset(current)


@dataclass(frozen=True)
class MinorPresentation:
    dimaze: Dimaze
    ground: tuple
    shifted: ShiftedDimaze
    base: frozenset

    def oracle(self) -> IndependenceOracle:
        return ml_oracle(self.dimaze, self.ground)


def minor_presentation(D: Dimaze, S: Iterable, R: Iterable) -> MinorPresentation:
    """A dimaze presenting ``M_L(D) / S \\ R`` restricted to ``V \\ (S ∪ R)``.

    ``S`` must be independent and ``R`` coindependent.  ``S`` is extended by
    exits to a base ``B1``, linked onto the unused exits, and the dimaze is
    shifted so that ``S`` becomes a set of exits, which are then deleted.
    """
    S, R = frozenset(S), frozenset(R)
    stray = (S | R) - D.index.keys()
    if stray:
        raise PresentationError(f"not vertices: {sorted(map(str, stray))}")
    if S & R:
        raise PresentationError("contracted and deleted sets overlap")
    if not is_linkable(D, S):
        raise PresentationError("contracted set is dependent")
    M = ml_oracle(D)
    if rank(M, set(D.vertices) - R) != len(D.exits):
        raise PresentationError("deleted set is codependent")
    B1 = _extend_within(D, S, D.exits)
    T = D.exits - B1
    moving = S - D.exits
    found = link(D.with_exits(T), moving)
    if isinstance(found, Separator) or found.ter != T:
        # cannot happen for a base B1 of a finite dimaze
        raise LinkageError("no linkage from the contracted set onto the unused exits")
    Q = PathSystem(found.paths + tuple((s,) for s in D.ordered(S & D.exits)))
    SD = shift(D, Q)
    pres = SD.d1.without(S)
    ground = tuple(v for v in D.vertices if v not in S and v not in R)
    return MinorPresentation(pres, ground, SD, B1)
