"""Dimazes, linkages and alternating-walk augmentation.

A dimaze is a finite digraph (no loops, no parallel edges) with a set of
exits, each of which must be a sink.  A set of vertices is *linkable* when it
is the set of initial vertices of pairwise disjoint paths ending in exits;
the linkable sets form the strict gammoid ``M_L``.

Linkability is decided by repeated augmentation along walks that traverse
edges of the current linkage backwards and every other edge forwards.  When
no such walk exists the search returns a separator with one vertex on each
path of the current linkage, which certifies dependence.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Optional, Sequence

from .matroid import IndependenceOracle

Vertex = Hashable
Edge = tuple


class InvalidDimaze(ValueError):
    pass


class LinkageError(ValueError):
    pass


class WalkError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Dimaze:
    """Digraph plus exits.  Validated on construction.

    ``vertices`` fixes the ground order used for every deterministic choice.
    """

    vertices: tuple
    edges: tuple
    exits: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "exits", frozenset(self.exits))
        validate(self)

    def __eq__(self, other):
        if not isinstance(other, Dimaze):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edge_set == other.edge_set
            and self.exits == other.exits
        )

    def __hash__(self):
        return hash((self.vertices, self.edge_set, self.exits))

    def __repr__(self):
        return f"Dimaze(vertices={list(self.vertices)!r}, edges={sorted(self.edges, key=self.edge_key)!r}, exits={self.ordered(self.exits)!r})"

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def succ(self) -> dict:
        out = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out[u].append(v)
        idx = self.index
        return {v: tuple(sorted(ws, key=idx.__getitem__)) for v, ws in out.items()}

    @cached_property
    def pred(self) -> dict:
        inn = {v: [] for v in self.vertices}
        for u, v in self.edges:
            inn[v].append(u)
        idx = self.index
        return {v: tuple(sorted(ws, key=idx.__getitem__)) for v, ws in inn.items()}

    def edge_key(self, e):
        return (self.index[e[0]], self.index[e[1]])

    def ordered(self, vs: Iterable[Vertex]) -> list:
        return sorted(vs, key=self.index.__getitem__)

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=self.edge_key)

    def sinks(self) -> frozenset:
        return frozenset(v for v in self.vertices if not self.succ[v])

    def without(self, removed: Iterable[Vertex]) -> "Dimaze":
        """Delete vertices (and incident edges); exits shrink accordingly."""
        removed = set(removed)
        return Dimaze(
            [v for v in self.vertices if v not in removed],
            [e for e in self.edges if e[0] not in removed and e[1] not in removed],
            self.exits - removed,
        )

    def with_exits(self, exits: Iterable[Vertex]) -> "Dimaze":
        return Dimaze(self.vertices, self.edges, exits)


def validate(D: Dimaze) -> None:
    """Raise :class:`InvalidDimaze` unless ``D`` is a well-formed dimaze."""
    seen = set()
    for v in D.vertices:
        if v in seen:
            raise InvalidDimaze(f"duplicate vertex {v!r}")
        seen.add(v)
    edges = set()
    for e in D.edges:
        if len(e) != 2:
            raise InvalidDimaze(f"edge {e!r} is not a pair")
        u, v = e
        if u not in seen or v not in seen:
            raise InvalidDimaze(f"edge {e!r} uses an unknown vertex")
        if u == v:
            raise InvalidDimaze(f"loop at {u!r}")
        if e in edges:
            raise InvalidDimaze(f"parallel edge {e!r}")
        edges.add(e)
    for b in D.exits:
        if b not in seen:
            raise InvalidDimaze(f"exit {b!r} is not a vertex")
    tails = {u for u, _ in edges}
    for b in D.exits:
        if b in tails:
            raise InvalidDimaze(f"exit not a sink: {b!r}")


# ---------------------------------------------------------------------------
# path systems


@dataclass(frozen=True)
class PathSystem:
    """Pairwise disjoint directed paths, each a tuple of vertices."""

    paths: tuple
    linkage: bool = True

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(tuple(p) for p in self.paths))
        seen = set()
        for p in self.paths:
            if not p:
                raise LinkageError("empty path")
            for v in p:
                if v in seen:
                    raise LinkageError(f"paths are not disjoint at {v!r}")
                seen.add(v)

    @property
    def ini(self) -> frozenset:
        return frozenset(p[0] for p in self.paths)

    @property
    def ter(self) -> frozenset:
        return frozenset(p[-1] for p in self.paths)

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(v for p in self.paths for v in p)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset((p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1))

    @cached_property
    def next(self) -> dict:
        return {p[i]: p[i + 1] for p in self.paths for i in range(len(p) - 1)}

    @cached_property
    def prev(self) -> dict:
        return {p[i + 1]: p[i] for p in self.paths for i in range(len(p) - 1)}

    @cached_property
    def path_of(self) -> dict:
        return {v: k for k, p in enumerate(self.paths) for v in p}

    def starting_at(self, v) -> tuple:
        for p in self.paths:
            if p[0] == v:
                return p
        raise KeyError(v)

    def __len__(self):
        return len(self.paths)


EMPTY = PathSystem(())


def check_paths(D: Dimaze, P: PathSystem) -> None:
    for p in P.paths:
        for i in range(len(p) - 1):
            if (p[i], p[i + 1]) not in D.edge_set:
                raise LinkageError(f"({p[i]!r}, {p[i + 1]!r}) is not an edge")
        if len(set(p)) != len(p):
            raise LinkageError(f"path {p!r} repeats a vertex")


def check_linkage(D: Dimaze, P: PathSystem, onto: Optional[Iterable[Vertex]] = None) -> None:
    """Raise :class:`LinkageError` unless ``P`` is a linkage of ``D``."""
    check_paths(D, P)
    for p in P.paths:
        if p[-1] not in D.exits:
            raise LinkageError(f"path {p!r} does not end in an exit")
    if onto is not None and P.ter != frozenset(onto):
        raise LinkageError("linkage is not onto the required set")


def trivial_linkage(vs: Iterable[Vertex]) -> PathSystem:
    return PathSystem(tuple((v,) for v in vs))


# ---------------------------------------------------------------------------
# alternating walks


@dataclass(frozen=True)
class AltWalk:
    """Walk ``w0 e0 w1 e1 ... wn``; ``edges[i]`` is the digraph edge joining ``w_i`` and ``w_{i+1}``."""

    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if not self.vertices:
            raise WalkError("a walk has at least one vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise WalkError("a walk has one edge fewer than vertices")

    @property
    def ini(self):
        return self.vertices[0]

    @property
    def ter(self):
        return self.vertices[-1]

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def __len__(self):
        return len(self.edges)

    def is_prefix_of(self, other: "AltWalk") -> bool:
        n = len(self.vertices)
        return other.vertices[:n] == self.vertices and other.edges[: n - 1] == self.edges


def walk_violations(W: AltWalk, Q: PathSystem, P: Optional[PathSystem] = None, D: Optional[Dimaze] = None) -> list:
    """Positional check of (W1)-(W3), and (W4) when ``P`` is given.

    Returns a list of human-readable violations; empty means valid.
    """
    problems = []
    qe, qv = Q.edge_set, Q.vertex_set
    ws, es = W.vertices, W.edges
    n = len(es)
    if len(set(es)) != n:
        problems.append("edges are not distinct")
    for i, e in enumerate(es):
        a, b = ws[i], ws[i + 1]
        if set(e) != {a, b} or a == b:
            problems.append(f"edge {i} {e!r} does not join {a!r} and {b!r}")
            continue
        if D is not None and e not in D.edge_set:
            problems.append(f"edge {i} {e!r} is not in the digraph")
        backwards = e == (b, a)
        if backwards != (e in qe):
            problems.append(f"(W1) fails at edge {i} {e!r}")
        if P is not None and (e in P.edge_set) == (e in qe):
            problems.append(f"edge {i} {e!r} is not in E(P) Δ E(Q)")
    counts = {}
    for v in ws:
        counts[v] = counts.get(v, 0) + 1
    for v, c in counts.items():
        if c > 1 and v not in qv:
            problems.append(f"(W2) fails: {v!r} repeats off Q")
    for i in range(n):
        v = ws[i]
        if v in qv:
            prev_e = es[i - 1] if i > 0 else es[0]
            if prev_e not in qe and es[i] not in qe:
                problems.append(f"(W3) fails at position {i}")
    if P is not None:
        pv, pe = P.vertex_set, P.edge_set
        for i in range(1, n):
            if ws[i] in pv and es[i - 1] not in pe and es[i] not in pe:
                problems.append(f"(W4) fails at position {i}")
    return problems


def walks_disjoint(W1: AltWalk, W2: AltWalk, Q: PathSystem) -> bool:
    """Edge disjoint, shared vertices on ``Q``, distinct terminal vertices."""
    if W1.edge_set & W2.edge_set:
        return False
    if (set(W1.vertices) & set(W2.vertices)) - Q.vertex_set:
        return False
    return W1.ter != W2.ter


@dataclass(frozen=True)
class Separator:
    """One vertex on each path of ``on``; ``witness`` maps vertex to path index."""

    vertices: frozenset
    witness: dict = field(hash=False, compare=False)
    on: PathSystem = field(default=EMPTY, hash=False, compare=False)

    def __len__(self):
        return len(self.vertices)


def _qmaps(Q: PathSystem):
    return Q.next, Q.prev, Q.vertex_set


def find_alt_walk(D: Dimaze, Q: PathSystem, X: Iterable[Vertex]):
    """Breadth-first search for a ``Q``-alternating walk from ``X \\ Ini(Q)`` to ``B0 \\ Ter(Q)``.

    Returns an :class:`AltWalk`, or a :class:`Separator` on ``Q`` when no such
    walk exists.  States are ``(vertex, arrived_backwards)``; sources are
    seeded in ground order and neighbours visited in ground order.
    """
    check_linkage(D, Q)
    X = frozenset(X)
    if not Q.ini <= X:
        raise LinkageError("Ini(Q) must be contained in X")
    qnext, qprev, qv = _qmaps(Q)
    qe = Q.edge_set
    exits = D.exits
    parent = {}
    queue = deque()
    for x in D.ordered(X - Q.ini):
        state = (x, False)
        parent[state] = None
        queue.append(state)
    found = None
    while queue:
        state = queue.popleft()
        v, back = state
        if v in exits and v not in qv:
            found = state
            break
        moves = []
        if v in qv and not back:
            u = qprev.get(v)
            if u is not None:
                moves.append(((u, True), (u, v)))
        else:
            for u in D.succ[v]:
                if (v, u) not in qe:
                    moves.append(((u, False), (v, u)))
            if back:
                u = qprev.get(v)
                if u is not None:
                    moves.append(((u, True), (u, v)))
        for nxt, edge in moves:
            if nxt not in parent:
                parent[nxt] = (state, edge)
                queue.append(nxt)
    if found is not None:
        verts, edges = [found[0]], []
        state = found
        while parent[state] is not None:
            state, edge = parent[state]
            verts.append(state[0])
            edges.append(edge)
        verts.reverse()
        edges.reverse()
        return AltWalk(tuple(verts), tuple(edges))

    reached = {v for v, _ in parent}
    chosen, witness = set(), {}
    for k, p in enumerate(Q.paths):
        pick = p[0]
        for v in p:
            if v in reached:
                pick = v
        chosen.add(pick)
        witness[pick] = k
    return Separator(frozenset(chosen), witness, Q)


def augment(Q: PathSystem, W: AltWalk, D: Optional[Dimaze] = None) -> PathSystem:
    """Reroute ``Q`` along ``W`` via the edge symmetric difference.

    The result links ``Ini(Q) + Ini(W)`` onto ``Ter(Q) + Ter(W)``.
    """
    problems = walk_violations(W, Q, D=D)
    if W.ini in Q.ini:
        problems.append("walk starts in Ini(Q)")
    if W.ter in Q.vertex_set:
        problems.append("walk ends on Q")
    if D is not None and W.ter not in D.exits:
        problems.append("walk does not end in an exit")
    if problems:
        raise WalkError("; ".join(problems))
    edges = Q.edge_set ^ W.edge_set
    nxt = {}
    for u, v in edges:
        if u in nxt:
            raise WalkError(f"symmetric difference branches at {u!r}")
        nxt[u] = v
    starts = [p[0] for p in Q.paths] + [W.ini]
    paths = []
    for s in starts:
        path = [s]
        while path[-1] in nxt:
            path.append(nxt[path[-1]])
            if len(path) > len(edges) + 1:
                raise WalkError("symmetric difference contains a cycle through a start")
        paths.append(tuple(path))
    result = PathSystem(tuple(paths))
    if result.ter != Q.ter | {W.ter}:
        raise WalkError("augmentation did not reach the expected terminal set")
    return result


def link(D: Dimaze, I: Iterable[Vertex]):
    """Link ``I`` to the exits, or return a separator certifying it cannot be.

    Starts from the empty linkage and augments once per element.  The
    separator, when returned, meets every ``I``-``B0`` path and has fewer
    than ``|I|`` vertices.
    """
    I = frozenset(I)
    stray = I - D.index.keys()
    if stray:
        raise ValueError(f"not vertices: {sorted(map(str, stray))}")
    Q = EMPTY
    while Q.ini != I:
        found = find_alt_walk(D, Q, I)
        if isinstance(found, Separator):
            return found
        Q = augment(Q, found)
    order = D.index
    return PathSystem(tuple(sorted(Q.paths, key=lambda p: order[p[0]])))


def is_linkable(D: Dimaze, I: Iterable[Vertex]) -> bool:
    return isinstance(link(D, I), PathSystem)


def is_separator(D: Dimaze, X: Iterable[Vertex], S: Iterable[Vertex]) -> bool:
    """True when every path from ``X`` to the exits meets ``S`` (plain reachability)."""
    S = frozenset(S)
    start = [x for x in X if x not in S]
    seen = set(start)
    queue = deque(start)
    while queue:
        v = queue.popleft()
        if v in D.exits:
            return False
        for u in D.succ[v]:
            if u not in S and u not in seen:
                seen.add(u)
                queue.append(u)
    return True


def ml_oracle(D: Dimaze, ground: Optional[Sequence[Vertex]] = None) -> IndependenceOracle:
    """The strict gammoid of ``D``; with ``ground`` the restriction to that set."""
    if ground is None:
        ground = D.vertices
    else:
        keep = set(ground)
        stray = keep - D.index.keys()
        if stray:
            raise ValueError(f"not vertices: {sorted(map(str, stray))}")
        ground = [v for v in D.vertices if v in keep] if not isinstance(ground, (list, tuple)) else list(ground)
    return IndependenceOracle(ground, lambda I: is_linkable(D, I), name="M_L")


def linkage_onto(D: Dimaze, I: Iterable[Vertex]) -> Optional[PathSystem]:
    """A linkage from ``I`` onto the exits, or ``None``.

    Exits in ``I`` are trivial paths.  The remaining vertices of ``I`` must be
    linked onto the remaining exits, which is a plain linkability question in
    the dimaze whose exits are ``B0 \\ I``.
    """
    I = frozenset(I)
    if len(I) != len(D.exits):
        return None
    rest = I - D.exits
    target = D.exits - I
    found = link(D.with_exits(target), rest)
    if isinstance(found, Separator):
        return None
    if found.ter != target:
        return None
    paths = list(found.paths) + [(b,) for b in I & D.exits]
    order = D.index
    return PathSystem(tuple(sorted(paths, key=lambda p: order[p[0]])))


def is_base_by_onto(D: Dimaze, I: Iterable[Vertex]) -> bool:
    return linkage_onto(D, I) is not None
