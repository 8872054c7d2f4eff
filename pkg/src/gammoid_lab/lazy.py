"""Lazily described infinite dimazes, their truncations, and pattern search.

A generator describes each vertex by its out- and in-neighbours, each given
as a finite list plus an optional infinite tail.  Truncation explores the
underlying graph breadth first from the roots, keeping every finite
neighbour and the first ``width`` tail entries.  Vertices whose
out-neighbourhood was cut form the *frontier*; they keep the out-edges that
survived but are never turned into exits.

Combs and fans are infinite, so searches look for prefixes with ``k``
spikes (or branches); ``k`` stands in for "infinitely many".  Every
certificate can be re-checked against the dimaze without trusting the search.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

from .bimaze import BipartiteGraph
from .dimaze import Dimaze, PathSystem, Separator, link

# ---------------------------------------------------------------------------
# generators

Tail = Optional[Callable[[], Iterator[str]]]


@dataclass(frozen=True)
class Adjacency:
    finite: tuple = ()
    tail: Tail = None

    def take(self, width: int) -> list:
        out = list(self.finite)
        if self.tail is not None:
            out.extend(itertools.islice(self.tail(), width))
        return out


@dataclass(frozen=True)
class DimazeGenerator:
    name: str
    roots: tuple
    out: Callable[[str], Adjacency]
    inn: Callable[[str], Adjacency]
    is_exit: Callable[[str], bool]


_X = re.compile(r"([a-z]+)(\d+)$")


def _index(v: str, prefix: str) -> int:
    m = _X.match(v)
    if not m or m.group(1) != prefix:
        raise ValueError(f"{v!r} is not a vertex of this generator")
    return int(m.group(2))


def _x(i: int) -> str:
    return f"x{i}"


def _y(i: int) -> str:
    return f"y{i}"


def _ray(kind: str, exits_odd: bool = False, exit_first: bool = False, spikes: bool = False) -> tuple:
    """The three ray orientations, optionally with spikes ``(x_i, y_i)`` for ``i >= 2``."""

    def out(v):
        if v.startswith("y"):
            return Adjacency()
        i = _index(v, "x")
        if kind == "A":
            nb = (_x(i - 1), _x(i + 1)) if i % 2 == 0 else ()
        elif kind == "I":
            nb = (_x(i - 1),) if i >= 2 else ()
        else:
            nb = (_x(i + 1),)
        if spikes and i >= 2:
            nb += (_y(i),)
        return Adjacency(nb)

    def inn(v):
        if v.startswith("y"):
            return Adjacency((_x(_index(v, "y")),))
        i = _index(v, "x")
        if kind == "A":
            nb = tuple(_x(j) for j in (i - 1, i + 1) if j >= 1) if i % 2 == 1 else ()
        elif kind == "I":
            nb = (_x(i + 1),)
        else:
            nb = (_x(i - 1),) if i >= 2 else ()
        return Adjacency(nb)

    def is_exit(v):
        if v.startswith("y"):
            return True
        i = _index(v, "x")
        return (exits_odd and i % 2 == 1) or (exit_first and i == 1)

    return out, inn, is_exit


def ray_generator(name: str) -> DimazeGenerator:
    table = {
        "RA": dict(kind="A"),
        "RI": dict(kind="I", exit_first=True),
        "RO": dict(kind="O"),
        "CA": dict(kind="A", exits_odd=True),
        "CI": dict(kind="I", exit_first=True, spikes=True),
        "CO": dict(kind="O", spikes=True),
    }
    out, inn, is_exit = _ray(**table[name])
    return DimazeGenerator(name, ("x1",), out, inn, is_exit)


def fan_generator() -> DimazeGenerator:
    """Centre ``v`` with out-neighbours ``v1, v2, ...``, which are the exits."""

    def out(v):
        if v == "v":
            return Adjacency((), lambda: (f"v{i}" for i in itertools.count(1)))
        return Adjacency()

    def inn(v):
        return Adjacency() if v == "v" else Adjacency(("v",))

    return DimazeGenerator("FAN", ("v",), out, inn, lambda v: v != "v")


def _tree_level(v: str) -> int:
    return v.count(".")


def _tree_parent(v: str) -> str:
    return v.rsplit(".", 1)[0]


def tree_generator() -> DimazeGenerator:
    """Rooted tree, infinitely many children each; root and even levels are exits.

    Edges run from odd levels to their neighbours on even levels.
    """

    def children(v):
        return lambda: (f"{v}.{i}" for i in itertools.count(1))

    def out(v):
        if _tree_level(v) % 2 == 0:
            return Adjacency()
        return Adjacency((_tree_parent(v),), children(v))

    def inn(v):
        if _tree_level(v) % 2 == 1:
            return Adjacency()
        parent = (_tree_parent(v),) if v != "r" else ()
        return Adjacency(parent, children(v))

    return DimazeGenerator("TREE", ("r",), out, inn, lambda v: _tree_level(v) % 2 == 0)


GENERATORS = {
    "RA": lambda: ray_generator("RA"),
    "RI": lambda: ray_generator("RI"),
    "RO": lambda: ray_generator("RO"),
    "CA": lambda: ray_generator("CA"),
    "CI": lambda: ray_generator("CI"),
    "CO": lambda: ray_generator("CO"),
    "FAN": fan_generator,
    "TREE": tree_generator,
}


def generator(name: str) -> DimazeGenerator:
    try:
        return GENERATORS[name]()
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS) + ['TND'])}") from None


# ---------------------------------------------------------------------------
# truncation


@dataclass(frozen=True)
class Truncation:
    dimaze: Dimaze
    frontier: frozenset = frozenset()
    depth: Optional[int] = None
    width: Optional[int] = None
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "frontier", frozenset(self.frontier))
        stray = self.frontier - self.dimaze.index.keys()
        if stray:
            raise ValueError(f"frontier vertices not in the dimaze: {sorted(map(str, stray))}")
        if self.frontier & self.dimaze.exits:
            raise ValueError("frontier vertices cannot be exits")


def truncate(g: DimazeGenerator, depth: int, width: int) -> Truncation:
    """Breadth-first closure from the roots over ``depth`` levels."""
    if depth < 1 or width < 1:
        raise ValueError("depth and width must be at least 1")
    level = {}
    order = []
    for r in g.roots:
        level[r] = 1
        order.append(r)
    edges = set()
    queue = list(order)
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        if level[v] >= depth:
            continue
        found = []
        for u in g.out(v).take(width):
            edges.add((v, u))
            found.append(u)
        for u in g.inn(v).take(width):
            edges.add((u, v))
            found.append(u)
        for u in found:
            if u not in level:
                level[u] = level[v] + 1
                order.append(u)
                queue.append(u)
    rank = {v: i for i, v in enumerate(order)}
    kept = sorted((e for e in edges if e[0] in level and e[1] in level), key=lambda e: (rank[e[0]], rank[e[1]]))
    frontier = set()
    for v in order:
        adj = g.out(v)
        if adj.tail is not None or any(u not in level for u in adj.finite):
            frontier.add(v)
    exits = [v for v in order if g.is_exit(v)]
    D = Dimaze(order, kept, exits)
    return Truncation(D, frozenset(frontier), depth, width, g.name)


def as_truncation(D) -> Truncation:
    return D if isinstance(D, Truncation) else Truncation(D)


# ---------------------------------------------------------------------------
# certificates

COMB_KINDS = ("outgoing", "incoming", "alternating")


@dataclass(frozen=True)
class PatternCertificate:
    kind: str  # outgoing | incoming | alternating | fan
    spine: tuple = ()
    centre: Optional[str] = None
    spikes: tuple = ()

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "spikes": [list(p) for p in self.spikes]}
        if self.kind == "fan":
            out["centre"] = self.centre
        else:
            out["spine"] = list(self.spine)
        return out

    @classmethod
    def from_dict(cls, doc: dict) -> "PatternCertificate":
        return cls(doc["kind"], tuple(doc.get("spine", ())), doc.get("centre"), tuple(tuple(p) for p in doc["spikes"]))


def _directed(D: Dimaze, path) -> bool:
    es = D.edge_set
    return all((a, b) in es for a, b in zip(path, path[1:]))


def _spike_problems(D: Dimaze, spikes, starts, avoid) -> list:
    problems = []
    used = set()
    for p in spikes:
        if len(p) < 2:
            problems.append(f"spike {list(p)} is trivial")
            continue
        if not _directed(D, p):
            problems.append(f"spike {list(p)} is not a directed path")
        if len(set(p)) != len(p):
            problems.append(f"spike {list(p)} repeats a vertex")
        if p[0] not in starts:
            problems.append(f"spike {list(p)} does not start at an allowed vertex")
        if set(p[1:]) & avoid:
            problems.append(f"spike {list(p)} meets the spine outside its initial vertex")
        if p[-1] not in D.exits:
            problems.append(f"spike {list(p)} does not end at an exit")
        if used & set(p):
            problems.append(f"spike {list(p)} meets another spike")
        used |= set(p)
    return problems


def _alt_sinks(D: Dimaze, spine) -> Optional[list]:
    """Spine vertices whose incident spine edges all point in; None if not a path."""
    es = D.edge_set
    into = []  # into[i]: the edge between spine[i] and spine[i+1] points at spine[i]
    for a, b in zip(spine, spine[1:]):
        if (b, a) in es:
            into.append(True)
        elif (a, b) in es:
            into.append(False)
        else:
            return None
    last = len(spine) - 1
    return [v for i, v in enumerate(spine) if (i == 0 or not into[i - 1]) and (i == last or into[i])]


def verify_certificate(D, cert: PatternCertificate, k: Optional[int] = None) -> list:
    """Problems with ``cert`` as a pattern of ``D``; empty when it is valid."""
    D = as_truncation(D).dimaze
    problems = []
    verts = set(D.vertices)
    mentioned = set(cert.spine) | {v for p in cert.spikes for v in p}
    if cert.centre is not None:
        mentioned.add(cert.centre)
    if mentioned - verts:
        return [f"unknown vertices {sorted(map(str, mentioned - verts))}"]
    if k is not None and len(cert.spikes) < k:
        problems.append(f"{len(cert.spikes)} spikes, fewer than {k}")
    if cert.kind == "fan":
        c = cert.centre
        if c is None or c in D.exits:
            problems.append("fan centre missing or an exit")
            return problems
        used = set()
        for p in cert.spikes:
            if len(p) < 2 or p[0] != c:
                problems.append(f"branch {list(p)} does not leave the centre")
                continue
            if not _directed(D, p) or len(set(p)) != len(p):
                problems.append(f"branch {list(p)} is not a directed path")
            if p[-1] not in D.exits:
                problems.append(f"branch {list(p)} does not end at an exit")
            if used & set(p[1:]):
                problems.append(f"branch {list(p)} meets another branch")
            used |= set(p[1:])
        return problems
    spine = tuple(cert.spine)
    if len(set(spine)) != len(spine) or not spine:
        problems.append("spine is empty or repeats a vertex")
        return problems
    if cert.kind == "outgoing":
        if not _directed(D, spine):
            problems.append("spine is not a directed path")
        problems += _spike_problems(D, cert.spikes, set(spine[1:]), set(spine))
    elif cert.kind == "incoming":
        if not _directed(D, spine[::-1]):
            problems.append("spine is not a directed path towards its first vertex")
        if spine[0] not in D.exits:
            problems.append("incoming spine must start at an exit")
        problems += _spike_problems(D, cert.spikes, set(spine[1:]), set(spine))
    elif cert.kind == "alternating":
        sinks = _alt_sinks(D, spine)
        if sinks is None:
            problems.append("spine is not a path of the underlying graph")
            return problems
        if spine[0] not in sinks:
            problems.append("alternating spine must start at a sink")
        bad = [v for v in sinks if v not in D.exits and v != spine[-1]]
        if bad:
            problems.append(f"spine sinks {bad} are not exits")
        expected = tuple((v,) for v in spine if v in D.exits)
        if tuple(cert.spikes) != expected:
            problems.append("spikes must be the exits on the spine, in spine order")
    else:
        problems.append(f"unknown pattern kind {cert.kind!r}")
    return problems


# ---------------------------------------------------------------------------
# searches


def _greedy_linkage(D: Dimaze, candidates, limit: int) -> PathSystem:
    chosen = []
    best = PathSystem(())
    for v in candidates:
        if len(chosen) >= limit:
            break
        found = link(D, chosen + [v])
        if isinstance(found, PathSystem):
            chosen.append(v)
            best = found
    return best


def _spikes(D: Dimaze, spine: tuple, starts, limit: int) -> tuple:
    """Up to ``limit`` disjoint spikes from ``starts`` avoiding the rest of the spine."""
    on = set(spine)
    keep = [v for v in D.vertices if v not in on or v in starts]
    starts = set(starts)
    edges = [(u, v) for u, v in D.edges if v not in on and (u not in on or u in starts)]
    exits = [b for b in D.exits if b not in on]
    sub = Dimaze(keep, edges, exits)
    order = [v for v in spine if v in starts]
    P = _greedy_linkage(sub, order, limit)
    rank = {v: i for i, v in enumerate(spine)}
    return tuple(sorted((p for p in P.paths if len(p) >= 2), key=lambda p: rank[p[0]]))


def _search_directed(D: Dimaze, k: int, kind: str, end: Optional[str] = None) -> Optional[PatternCertificate]:
    step = D.succ if kind == "outgoing" else D.pred
    if end is not None:
        # outgoing spines ending at ``end``: grow backwards, spine read reversed
        starts, step, reverse = [end], D.pred, True
    elif kind == "incoming":
        starts, reverse = D.ordered(D.exits), False
    else:
        starts, reverse = [v for v in D.vertices if v not in D.exits], False

    def spikes_of(path):
        spine = tuple(reversed(path)) if reverse else tuple(path)
        return spine, _spikes(D, spine, spine[1:], k)

    def dfs(path, seen):
        if len(path) >= 2:
            spine, sp = spikes_of(path)
            if len(sp) >= k:
                return PatternCertificate(kind, spine, None, sp)
        for u in step[path[-1]]:
            if u in seen or (u in D.exits and not reverse and kind == "outgoing"):
                continue
            path.append(u)
            seen.add(u)
            found = dfs(path, seen)
            if found:
                return found
            path.pop()
            seen.discard(u)
        return None

    for s in starts:
        found = dfs([s], {s})
        if found:
            return found
    return None


def _search_alternating(D: Dimaze, k: int) -> Optional[PatternCertificate]:
    def dfs(path, seen, forward, count):
        if count >= k:
            spine = tuple(path)
            return PatternCertificate("alternating", spine, None, tuple((v,) for v in spine if v in D.exits))
        c = path[-1]
        moves = []
        if forward:
            moves += [(u, True) for u in D.succ[c]]
            if c in D.exits:
                moves += [(u, False) for u in D.pred[c]]
        else:
            moves += [(u, False) for u in D.pred[c]]
            if len(path) > 1:
                moves += [(u, True) for u in D.succ[c]]
        for u, fwd in moves:
            if u in seen:
                continue
            path.append(u)
            seen.add(u)
            found = dfs(path, seen, fwd, count + (u in D.exits))
            if found:
                return found
            path.pop()
            seen.discard(u)
        return None

    for s in D.ordered(D.exits):
        found = dfs([s], {s}, False, 1)
        if found:
            return found
    return None


def detect_comb(D, kind: str, k: int) -> Optional[PatternCertificate]:
    """Backtracking search for a comb prefix with ``k`` spikes."""
    if k < 1:
        raise ValueError("k must be at least 1")
    D = as_truncation(D).dimaze
    if kind == "alternating":
        return _search_alternating(D, k)
    if kind not in COMB_KINDS:
        raise ValueError(f"unknown comb kind {kind!r}; expected one of {', '.join(COMB_KINDS)}")
    return _search_directed(D, k, kind)


def fan_at(D: Dimaze, c, k: int) -> Optional[PatternCertificate]:
    if c in D.exits:
        return None
    rest = D.without([c])
    P = _greedy_linkage(rest, list(D.succ[c]), k)
    if len(P) < k:
        return None
    branches = tuple((c,) + p for p in P.paths)
    return PatternCertificate("fan", (), c, branches)


def detect_fan(D, k: int) -> Optional[PatternCertificate]:
    """A centre with ``k`` internally disjoint paths to exits, or ``None``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    D = as_truncation(D).dimaze
    for c in D.vertices:
        cert = fan_at(D, c, k)
        if cert:
            return cert
    return None


def fan_centres(D, k: int) -> list:
    D = as_truncation(D).dimaze
    return [c for c in D.vertices if fan_at(D, c, k)]


def eliminate_fan_centres(T, k: int) -> Truncation:
    """Delete the out-edges of every ``k``-fan centre and make the centres exits."""
    if k < 2:
        raise ValueError("k must be at least 2")
    T = as_truncation(T)
    D = T.dimaze
    F = set(fan_centres(D, k))
    edges = [e for e in D.edges if e[0] not in F]
    out = Dimaze(D.vertices, edges, D.exits | F)
    return Truncation(out, T.frontier - F, T.depth, T.width, T.source)


# ---------------------------------------------------------------------------
# topological linkability


@dataclass(frozen=True)
class TopPath:
    path: tuple
    kind: str  # exit | fan | comb
    certificate: Optional[PatternCertificate] = None

    def as_dict(self) -> dict:
        out = {"path": list(self.path), "kind": self.kind}
        if self.certificate is not None:
            out["certificate"] = self.certificate.as_dict()
        return out


@dataclass(frozen=True)
class TopResult:
    status: str  # yes | no | inconclusive
    paths: tuple = ()
    separator: Optional[frozenset] = None
    frontier: frozenset = field(default_factory=frozenset)


def _sinks_at(D: Dimaze, targets) -> Dimaze:
    targets = set(targets)
    return Dimaze(D.vertices, [e for e in D.edges if e[0] not in targets], D.exits | targets)


def topologically_linkable(T, I: Iterable, k: int) -> TopResult:
    """Three-valued approximation of topological linkability of ``I``.

    ``yes`` uses paths to exits, to frontier centres of ``k``-fans, or to
    frontier ends of outgoing ``k``-comb spines.  ``no`` means ``I`` cannot
    even be linked to the exits together with the frontier, which no
    continuation beyond the cut can repair.  Anything else is inconclusive.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    T = as_truncation(T)
    D = T.dimaze
    I = list(dict.fromkeys(I))
    stray = set(I) - D.index.keys()
    if stray:
        raise ValueError(f"not vertices: {sorted(map(str, stray))}")
    certs = {}
    for z in D.ordered(T.frontier):
        cert = fan_at(D, z, k)
        if cert is None:
            cert = _search_directed(D, k, "outgoing", end=z)
        if cert is not None:
            certs[z] = cert
    found = link(_sinks_at(D, certs), I)
    if isinstance(found, PathSystem):
        paths = []
        for p in found.paths:
            cert = certs.get(p[-1])
            kind = "exit" if cert is None else ("fan" if cert.kind == "fan" else "comb")
            paths.append(TopPath(p, kind, cert))
        return TopResult("yes", tuple(paths))
    wide = link(_sinks_at(D, T.frontier), I)
    if isinstance(wide, Separator):
        return TopResult("no", separator=frozenset(wide.vertices))
    used = frozenset(p[-1] for p in wide.paths if p[-1] in T.frontier)
    return TopResult("inconclusive", frontier=used)


def verify_top_result(T, I, k: int, result: TopResult) -> list:
    """Re-check a ``yes`` or ``no`` answer positionally."""
    T = as_truncation(T)
    D = T.dimaze
    problems = []
    if result.status == "yes":
        starts = [tp.path[0] for tp in result.paths]
        if sorted(map(str, starts)) != sorted(map(str, set(I))):
            problems.append("paths do not start exactly at I")
        used = set()
        for tp in result.paths:
            p = tp.path
            if not _directed(D, p) or len(set(p)) != len(p):
                problems.append(f"{list(p)} is not a path")
            if used & set(p):
                problems.append(f"{list(p)} meets another path")
            used |= set(p)
            if tp.kind == "exit":
                if p[-1] not in D.exits:
                    problems.append(f"{list(p)} does not end at an exit")
            else:
                cert = tp.certificate
                if cert is None or verify_certificate(D, cert, k):
                    problems.append(f"{list(p)} has an invalid certificate")
                elif cert.kind == "fan" and cert.centre != p[-1]:
                    problems.append(f"{list(p)} does not end at its fan centre")
                elif cert.kind != "fan" and cert.spine[-1] != p[-1]:
                    problems.append(f"{list(p)} does not end at its spine's cut end")
                if p[-1] not in T.frontier:
                    problems.append(f"{list(p)} relies on a pattern that does not reach the frontier")
    elif result.status == "no":
        from .dimaze import is_separator

        wide = _sinks_at(D, T.frontier)
        if result.separator is None or len(result.separator) >= len(set(I)):
            problems.append("separator missing or too large")
        elif not is_separator(wide, I, result.separator):
            problems.append("separator does not separate I from the exits and frontier")
    return problems


# ---------------------------------------------------------------------------
# the bipartite generator with finitely many neighbours on the left


def tnd_left_nbrs(j: int) -> list:
    """Right neighbours ``A_i`` of ``v_j``."""
    if j < 1:
        raise ValueError("left vertices are v1, v2, ...")
    out = [i for i in range(max(2, (j + 1) // 2), (j + 3) // 2 + 1) if 2 * i - 3 <= j <= 2 * i]
    if j in (1, 2):
        out = sorted(set(out) | {1, 3})
    return out


def tnd_right_nbrs(i: int) -> list:
    if i < 1:
        raise ValueError("right vertices are A1, A2, ...")
    out = [] if i == 1 else [2 * i - 3, 2 * i - 2, 2 * i - 1, 2 * i]
    if i in (1, 3):
        out = sorted(set(out) | {1, 2})
    return out


@dataclass(frozen=True)
class BipartiteTruncation:
    graph: BipartiteGraph
    frontier: frozenset
    levels: int


def tnd_truncation(levels: int) -> BipartiteTruncation:
    """Right vertices ``A_1 .. A_levels`` with all their neighbours."""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    right = [f"A{i}" for i in range(1, levels + 1)]
    left_idx = sorted({j for i in range(1, levels + 1) for j in tnd_right_nbrs(i)})
    left = [f"v{j}" for j in left_idx]
    edges = {(f"v{j}", f"A{i}") for i in range(1, levels + 1) for j in tnd_right_nbrs(i)}
    frontier = {f"v{j}" for j in left_idx if any(i > levels for i in tnd_left_nbrs(j))}
    return BipartiteTruncation(BipartiteGraph(left, right, frozenset(edges)), frozenset(frontier), levels)


def left_degrees(nbrs: Callable[[int], Optional[list]], n: int) -> dict:
    """Degrees of ``v1 .. vn``; ``None`` where the enumerator reports an infinite neighbourhood."""
    out = {}
    for j in range(1, n + 1):
        nb = nbrs(j)
        out[j] = None if nb is None else len(nb)
    return out


def is_left_locally_finite(nbrs: Callable[[int], Optional[list]], n: int) -> bool:
    return all(d is not None for d in left_degrees(nbrs, n).values())
