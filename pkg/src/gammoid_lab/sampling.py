"""Random and exhaustive instance generators used by the sweeps."""
from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .dimaze import Dimaze, PathSystem, link


def names(n: int) -> list:
    return [f"v{i}" for i in range(n)]


def random_dimaze(rng: random.Random, n: int, p: float = 0.35, exit_p: float = 0.35) -> Dimaze:
    """Random digraph on ``n`` vertices; each chosen exit loses its out-edges."""
    vs = names(n)
    exits = {v for v in vs if rng.random() < exit_p}
    edges = []
    for u in vs:
        if u in exits:
            continue
        for v in vs:
            if u != v and rng.random() < p:
                edges.append((u, v))
    return Dimaze(vs, edges, exits)


def _canonical(n: int, edges: frozenset, exits: frozenset) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        e = tuple(sorted((perm[u], perm[v]) for u, v in edges))
        x = tuple(sorted(perm[b] for b in exits))
        key = (x, e)
        if best is None or key < best:
            best = key
    return best


def all_dimazes(n: int, dedupe: bool = True) -> Iterator[Dimaze]:
    """Every dimaze on ``n`` labelled vertices, optionally one per isomorphism class.

    For each exit set the exits are sinks, so only edges with a non-exit tail
    are enumerated.
    """
    vs = names(n)
    seen = set()
    for k in range(n + 1):
        for exits in itertools.combinations(range(n), k):
            ex = frozenset(exits)
            slots = [(u, v) for u in range(n) if u not in ex for v in range(n) if u != v]
            for bits in range(1 << len(slots)):
                edges = frozenset(slots[i] for i in range(len(slots)) if bits >> i & 1)
                if dedupe:
                    key = _canonical(n, edges, ex)
                    if key in seen:
                        continue
                    seen.add(key)
                yield Dimaze(vs, [(vs[u], vs[v]) for u, v in sorted(edges)], [vs[b] for b in ex])


def dimazes_up_to(n_max: int) -> list:
    out = []
    for n in range(n_max + 1):
        out.extend(all_dimazes(n))
    return out


def random_linkage(rng: random.Random, D: Dimaze, tries: int = 8) -> PathSystem:
    """A random linkage: link a random subset under a shuffled vertex order."""
    order = list(D.vertices)
    rng.shuffle(order)
    shuffled = Dimaze(order, D.edges, D.exits)
    for _ in range(tries):
        size = rng.randint(0, len(order))
        I = rng.sample(order, size)
        found = link(shuffled, I)
        if isinstance(found, PathSystem):
            return PathSystem(found.paths)
    return PathSystem(())


def random_subset(rng: random.Random, items, p: float = 0.5) -> set:
    return {x for x in items if rng.random() < p}


def seeded(seed: Optional[int] = None) -> random.Random:
    return random.Random(seed)


def random_bipartite(rng: random.Random, n_left: int, n_right: int, p: float = 0.4):
    from .bimaze import BipartiteGraph

    left = [f"a{i}" for i in range(n_left)]
    right = [f"w{j}" for j in range(n_right)]
    edges = {(v, w) for v in left for w in right if rng.random() < p}
    return BipartiteGraph(left, right, frozenset(edges))


def random_bimaze(rng: random.Random, n_left: int, n_right: int, p: float = 0.4, frontier_p: float = 0.0):
    """Random bimaze; ``m0`` matches every right vertex to a distinct left vertex."""
    from .bimaze import Bimaze, BipartiteGraph

    n_right = min(n_right, n_left)
    G = random_bipartite(rng, n_left, n_right, p)
    partners = rng.sample(list(G.left), n_right)
    m0 = dict(zip(partners, G.right))
    G = BipartiteGraph(G.left, G.right, G.edges | set(m0.items()))
    frontier = {z for z in G.left + G.right if rng.random() < frontier_p}
    return Bimaze(G, m0, frontier)
