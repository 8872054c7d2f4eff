"""Pym's linkage construction with its bookkeeping exposed.

Given a linkage ``P`` of ``S ∪ I`` and a linkage ``Q`` from ``S`` onto
``T``, every path ``P_x`` carries a marker ``f_x`` that advances to the next
vertex of the current linkage (or to the end of ``P_x``), and every path
``Q_y`` carries a marker ``t_y`` at the last marker ``f`` lying on it.
Gluing ``P_x`` up to ``f_x`` onto ``Q_y`` after ``t_y = f_x``, and keeping
the ``P_x`` whose marker reached a free exit, gives the next linkage.  On a
finite digraph the markers stop moving after at most ``|V|`` rounds.

Each marker move is explained by a walk that alternates forward segments
of ``P`` with backward segments of ``Q`` and starts in ``I``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from .dimaze import (
    AltWalk,
    Dimaze,
    LinkageError,
    PathSystem,
    check_linkage,
)
from .shift import ShiftedDimaze, max_pq_walk, shift, walk_to_path


class PymError(RuntimeError):
    """The construction did not stabilise; impossible on valid finite input."""


class BackWalkError(ValueError):
    pass


@dataclass(frozen=True)
class PymTrace:
    dimaze: Dimaze
    p: PathSystem
    q: PathSystem
    f: tuple  # f[i][x]
    t: tuple  # t[i][y], with t[0] empty
    b: tuple  # b[i]: glued paths of round i
    c: tuple  # c[i]: untouched P-paths of round i
    q_inf: PathSystem
    rounds: int
    first_move: dict = field(default_factory=dict, compare=False)

    @property
    def s(self) -> frozenset:
        return self.q.ini

    @property
    def i_set(self) -> frozenset:
        return self.p.ini - self.q.ini

    @property
    def y_inf(self) -> frozenset:
        return self.q_inf.ter

    @property
    def f_inf(self) -> dict:
        return self.f[-1]

    def marker_set(self, i: int) -> frozenset:
        return frozenset(self.f[i].values())


def _segment(path: tuple, a, b) -> tuple:
    i, j = path.index(a), path.index(b)
    return path[i : j + 1]


def _round(D, P, Q, f_prev, current):
    """One update: new markers, new t-markers, and the next linkage."""
    cv = current.vertex_set
    f_new = {}
    for p in P.paths:
        x = p[0]
        k = p.index(f_prev[x])
        pick = p[-1]
        for v in p[k:]:
            if v in cv:
                pick = v
                break
        f_new[x] = pick
    markers = {v: x for x, v in f_new.items()}
    t_new, glued = {}, []
    for q in Q.paths:
        y = q[-1]
        pick = q[0]
        for v in q:
            if v in markers:
                pick = v
        t_new[y] = pick
        if pick in markers:
            x = markers[pick]
            px = P.starting_at(x)
            head = px[: px.index(pick) + 1]
            glued.append(head + q[q.index(pick) + 1 :])
    free = D.exits - Q.ter
    kept = [p for p in P.paths if f_new[p[0]] in free]
    return f_new, t_new, tuple(glued), tuple(kept)


def pym_linkage(D: Dimaze, P: PathSystem, Q: PathSystem) -> PymTrace:
    """Run the marker iteration to its fixed point.

    ``P`` must link ``S ∪ I`` and ``Q`` must link ``S = Ini(Q)`` onto
    ``T = Ter(Q)``.  The result links ``S ∪ I`` onto a superset of ``T``.
    """
    check_linkage(D, P)
    check_linkage(D, Q)
    if not Q.ini <= P.ini:
        raise LinkageError("Ini(Q) must be contained in Ini(P)")
    f = [{p[0]: p[0] for p in P.paths}]
    t = [{}]
    bs, cs = [()], [()]
    current = Q
    first_move = {}
    limit = len(D.vertices) + 1
    # Q^0 = Q is not glued from markers, so a fixed point can only be
    # recognised from round 2 on
    for i in range(1, limit + 2):
        f_new, t_new, glued, kept = _round(D, P, Q, f[-1], current)
        if i >= 2 and f_new == f[-1]:
            break
        for x, v in f_new.items():
            if v != f[-1][x]:
                first_move[v] = (x, i - 1)
        f.append(f_new)
        t.append(t_new)
        bs.append(glued)
        cs.append(kept)
        try:
            current = PathSystem(glued + kept)
        except LinkageError as exc:
            raise PymError(f"round {i} produced overlapping paths: {exc}") from None
    else:
        raise PymError(f"markers still moving after {limit} rounds")
    order = D.index
    q_inf = PathSystem(tuple(sorted(current.paths, key=lambda p: order[p[0]])))
    check_linkage(D, q_inf)
    return PymTrace(D, P, Q, tuple(f), tuple(t), tuple(bs), tuple(cs), q_inf, len(f) - 1, first_move)


def movement_points(trace: PymTrace) -> list:
    """Pairs ``(v, x, j)`` with ``v = f[j+1][x] != f[j][x]``, in round order."""
    out = []
    for j in range(len(trace.f) - 1):
        for p in trace.p.paths:
            x = p[0]
            if trace.f[j][x] != trace.f[j + 1][x]:
                out.append((trace.f[j + 1][x], x, j))
    return out


def back_walk(trace: PymTrace, v) -> AltWalk:
    """The walk from ``I`` explaining how a marker first reached ``v``.

    Built backwards: from round ``j`` down to ``1``, step back along the
    ``Q``-path through the marker ``f[i][x_{i+1}]`` to the next marker on it,
    which identifies ``x_i``.  Forward ``P``-segments and backward
    ``Q``-segments then alternate from ``x_1`` to ``v``.

    The result is a walk of ``D`` but need not be ``Q``-alternating: when
    ``P`` and ``Q`` share an edge, a forward ``P``-segment may run along it.
    """
    if v not in trace.first_move:
        raise BackWalkError(f"{v!r} is not a vertex reached by a moving marker")
    x, j = trace.first_move[v]
    f, P, Q = trace.f, trace.p, trace.q
    xs = {j + 1: x}
    q_segments = {}
    for i in range(j, 0, -1):
        here = f[i][xs[i + 1]]
        if here not in Q.path_of:
            raise PymError(f"marker {here!r} of round {i} is not on Q")
        qi = Q.paths[Q.path_of[here]]
        markers = {f[i][y]: y for y in f[i]}
        nxt = None
        for u in qi[qi.index(here) + 1 :]:
            if u in markers:
                nxt = u
                break
        if nxt is None:
            raise PymError(f"no marker after {here!r} on its Q-path in round {i}")
        xs[i] = markers[nxt]
        q_segments[i] = _segment(qi, here, nxt)
    verts = [f[0][xs[1]]]
    edges = []

    def forward(seg):
        for a, b in zip(seg, seg[1:]):
            edges.append((a, b))
            verts.append(b)

    def backward(seg):
        rev = seg[::-1]
        for a, b in zip(rev, rev[1:]):
            edges.append((b, a))
            verts.append(b)

    forward(_segment(P.starting_at(xs[1]), f[0][xs[1]], f[1][xs[1]]))
    for i in range(1, j + 1):
        backward(q_segments[i])
        px = P.starting_at(xs[i + 1])
        forward(_segment(px, f[i][xs[i + 1]], f[i + 1][xs[i + 1]]))
    W = AltWalk(tuple(verts), tuple(edges))
    if W.ini not in trace.i_set:
        raise PymError(f"back walk starts at {W.ini!r}, outside I")
    return W


def minor_walks(trace: PymTrace) -> dict:
    """Maximal ``q_inf``-``Q``-alternating walks from each vertex of ``I``."""
    return {x: max_pq_walk(trace.q_inf, trace.q, x) for x in trace.dimaze.ordered(trace.i_set)}


def shifted_minor_linkage(trace: PymTrace) -> tuple:
    """Translate :func:`minor_walks` into paths of ``D1 - S``.

    Returns ``(shifted, linkage)``; the linkage lives in the dimaze
    ``shifted.d1.without(S)`` whose exits are ``B1 \\ S``.
    """
    SD: ShiftedDimaze = shift(trace.dimaze, trace.q)
    walks = minor_walks(trace)
    paths = tuple(walk_to_path(SD, walks[x]) for x in walks)
    return SD, PathSystem(paths)
