"""Finite independence oracles checked by exhaustive enumeration.

Every structure in this package eventually reduces to an
:class:`IndependenceOracle`: a ground set plus a yes/no predicate on its
subsets.  The helpers here sweep all ``2**n`` subsets, so they refuse ground
sets above an enumeration cap (20 by default, overridable through the
``GAMMOID_LAB_CAP`` environment variable).

Subsets are handled as ``frozenset`` at the API boundary and as bit masks
(bit ``i`` is the ``i``-th ground element) inside the sweeps.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

DEFAULT_CAP = 20
CAP_ENV = "GAMMOID_LAB_CAP"


class TooLargeError(ValueError):
    """Raised when a ground set is too large for exhaustive checking."""


class MinorInputError(ValueError):
    pass


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw == "":
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


class GroundSet:
    """Ordered, duplicate-free tuple of element identifiers."""

    __slots__ = ("elements", "index", "members")

    def __init__(self, elements: Iterable[Hashable]):
        elements = tuple(elements)
        index = {}
        for i, e in enumerate(elements):
            if e in index:
                raise ValueError(f"duplicate ground element {e!r}")
            index[e] = i
        self.elements = elements
        self.index = index
        self.members = frozenset(elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self.index

    def __eq__(self, other):
        return isinstance(other, GroundSet) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"GroundSet({list(self.elements)!r})"

    def mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for e in subset:
            m |= 1 << self.index[e]
        return m

    def subset(self, mask: int) -> frozenset:
        return frozenset(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def ordered(self, subset: Iterable[Hashable]) -> tuple:
        """``subset`` sorted by ground order."""
        return tuple(sorted(subset, key=self.index.__getitem__))


def check_cap(n: int, cap: Optional[int]) -> None:
    cap = default_cap() if cap is None else cap
    if n > cap:
        raise TooLargeError(
            f"ground set of size {n} is too large for exhaustive check (cap {cap})"
        )


class IndependenceOracle:
    """A ground set together with a deterministic independence predicate.

    Answers are memoized per subset.  The memo only ever stores the value the
    predicate returned, so it cannot change what callers observe; concurrent
    readers may at worst evaluate the same subset twice.
    """

    def __init__(self, ground: Iterable[Hashable], predicate: Callable[[frozenset], bool], name: str = ""):
        self.ground = ground if isinstance(ground, GroundSet) else GroundSet(ground)
        self._predicate = predicate
        self._memo: dict = {}
        self._table: Optional[list] = None
        self.name = name

    @classmethod
    def from_table(cls, ground, table: Sequence[bool], name: str = "") -> "IndependenceOracle":
        ground = ground if isinstance(ground, GroundSet) else GroundSet(ground)
        if len(table) != 1 << len(ground):
            raise ValueError("table length must be 2**len(ground)")
        table = list(map(bool, table))
        oracle = cls(ground, lambda s: table[ground.mask(s)], name=name)
        oracle._table = table
        return oracle

    @classmethod
    def from_family(cls, ground, family: Iterable[Iterable[Hashable]], name: str = "") -> "IndependenceOracle":
        ground = ground if isinstance(ground, GroundSet) else GroundSet(ground)
        allowed = {frozenset(s) for s in family}
        return cls(ground, lambda s: s in allowed, name=name)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<IndependenceOracle{label} on {len(self.ground)} elements>"

    def __call__(self, subset: Iterable[Hashable]) -> bool:
        return self.is_independent(subset)

    def is_independent(self, subset: Iterable[Hashable]) -> bool:
        key = frozenset(subset)
        try:
            return self._memo[key]
        except KeyError:
            pass
        stray = key - self.ground.members
        if stray:
            raise ValueError(f"elements not in ground set: {sorted(map(str, stray))}")
        value = bool(self._predicate(key))
        self._memo[key] = value
        return value

    def table(self, cap: Optional[int] = None) -> list:
        """Independence flags for every subset, indexed by bit mask."""
        if self._table is None:
            n = len(self.ground)
            check_cap(n, cap)
            subset = self.ground.subset
            self._table = [self.is_independent(subset(m)) for m in range(1 << n)]
        return self._table

    def family(self, cap: Optional[int] = None) -> frozenset:
        tbl = self.table(cap)
        return frozenset(self.ground.subset(m) for m, ok in enumerate(tbl) if ok)


# ---------------------------------------------------------------------------
# mask-level helpers


def _maximal_masks(tbl: list, n: int) -> list:
    """Independent masks with no independent proper superset.

    Works for arbitrary set systems: it does not assume (I2).
    """
    full = (1 << n) - 1
    # reach[m]: some independent set contains m (m itself included)
    reach = list(tbl)
    for m in range(full, -1, -1):
        if reach[m]:
            continue
        free = full & ~m
        while free:
            low = free & -free
            if reach[m | low]:
                reach[m] = True
                break
            free ^= low
    result = []
    for m in range(full + 1):
        if not tbl[m]:
            continue
        free = full & ~m
        maximal = True
        while free:
            low = free & -free
            if reach[m | low]:
                maximal = False
                break
            free ^= low
        if maximal:
            result.append(m)
    return result


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _sorted_subsets(ground: GroundSet, masks: Iterable[int]) -> list:
    def key(m):
        return (_popcount(m), [i for i in range(len(ground)) if m >> i & 1])

    return [ground.subset(m) for m in sorted(masks, key=key)]


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomResult:
    passed: bool
    witness: Optional[tuple] = None
    note: str = ""

    def as_dict(self):
        wit = None
        if self.witness is not None:
            wit = [sorted(map(str, s)) for s in self.witness]
        return {"passed": self.passed, "witness": wit, "note": self.note}


@dataclass
class AxiomReport:
    i1: AxiomResult
    i2: AxiomResult
    i3: AxiomResult
    im: AxiomResult
    ground_size: int = 0

    @property
    def passed(self) -> bool:
        return self.i1.passed and self.i2.passed and self.i3.passed and self.im.passed

    def failures(self) -> list:
        return [name for name in ("i1", "i2", "i3", "im") if not getattr(self, name).passed]

    def as_dict(self):
        return {
            "ground_size": self.ground_size,
            "passed": self.passed,
            **{name: getattr(self, name).as_dict() for name in ("i1", "i2", "i3", "im")},
        }


def check_axioms(M: IndependenceOracle, cap: Optional[int] = None) -> AxiomReport:
    """Verify (I1), (I2), (I3) and (IM) by sweeping every subset.

    Witnesses are subsets of the ground set that can be fed back to ``M``:
    ``(∅,)`` for (I1), ``(J, I)`` with ``J ⊂ I`` for (I2) and
    ``(I, I_max)`` for (I3).
    """
    n = len(M.ground)
    tbl = M.table(cap)
    sub = M.ground.subset
    full = (1 << n) - 1

    i1 = AxiomResult(True) if tbl[0] else AxiomResult(False, (frozenset(),))

    i2 = AxiomResult(True)
    for m in range(full + 1):
        if not tbl[m]:
            continue
        bits = m
        while bits:
            low = bits & -bits
            if not tbl[m ^ low]:
                i2 = AxiomResult(False, (sub(m ^ low), sub(m)))
                break
            bits ^= low
        if not i2.passed:
            break

    maximal = _maximal_masks(tbl, n)
    maximal_set = set(maximal)
    i3 = AxiomResult(True)
    for m in range(full + 1):
        if not tbl[m] or m in maximal_set:
            continue
        extend = 0
        free = full & ~m
        while free:
            low = free & -free
            if tbl[m | low]:
                extend |= low
            free ^= low
        for big in maximal:
            if not (big & ~m & extend):
                i3 = AxiomResult(False, (sub(m), sub(big)))
                break
        if not i3.passed:
            break

    # A finite family always has maximal members: the set {I' : I ⊆ I' ⊆ X}
    # contains I itself, so it is non-empty and finite.
    im = AxiomResult(True, note="finite ground set")
    return AxiomReport(i1, i2, i3, im, ground_size=n)


# ---------------------------------------------------------------------------
# derived oracles


def _base_masks(M: IndependenceOracle, cap: Optional[int] = None) -> list:
    return _maximal_masks(M.table(cap), len(M.ground))


def dual(M: IndependenceOracle, cap: Optional[int] = None) -> IndependenceOracle:
    """The dual: independent sets are those avoiding some base of ``M``."""
    n = len(M.ground)
    full = (1 << n) - 1
    complements = [full & ~b for b in _base_masks(M, cap)]
    tbl = [False] * (full + 1)
    for c in complements:
        # every subset of a complement-of-base is dual-independent
        s = c
        while True:
            tbl[s] = True
            if s == 0:
                break
            s = (s - 1) & c
    name = f"dual({M.name})" if M.name else "dual"
    return IndependenceOracle.from_table(M.ground, tbl, name=name)


def restriction(M: IndependenceOracle, X: Iterable[Hashable]) -> IndependenceOracle:
    X = set(X)
    ground = [e for e in M.ground if e in X]
    return IndependenceOracle(ground, M.is_independent, name=f"{M.name}|X" if M.name else "")


def greedy_extend(M: IndependenceOracle, start: Iterable[Hashable], within: Iterable[Hashable]) -> frozenset:
    """Extend the independent set ``start`` greedily by elements of ``within``.

    Elements are tried in ground order, so the result is deterministic.
    """
    current = set(start)
    pool = set(within)
    for e in M.ground:
        if e in pool and e not in current:
            current.add(e)
            if not M.is_independent(current):
                current.discard(e)
    return frozenset(current)


@dataclass(frozen=True)
class MinorSpec:
    contract: frozenset
    delete: frozenset
    normalized_s: frozenset
    normalized_r: frozenset


def _check_minor_input(M, C, D):
    C, D = frozenset(C), frozenset(D)
    if C & D:
        raise MinorInputError(f"contract and delete sets overlap: {sorted(map(str, C & D))}")
    stray = (C | D) - M.ground.members
    if stray:
        raise MinorInputError(f"elements not in ground set: {sorted(map(str, stray))}")
    return C, D


def minor_normalize(M: IndependenceOracle, C: Iterable[Hashable], D: Iterable[Hashable]) -> MinorSpec:
    """Rewrite ``M / C \\ D`` as ``M / S \\ R`` with ``S`` independent, ``R`` coindependent.

    ``S`` is a base of ``M|C`` together with a base of ``M.D`` (the
    contraction of everything outside ``D``), and ``R = (C ∪ D) \\ S``.
    """
    C, D = _check_minor_input(M, C, D)
    base_c = greedy_extend(M, (), C)
    outside_d = M.ground.members - D
    base_out = greedy_extend(M, (), outside_d)
    base_d = greedy_extend(M, base_out, D) - base_out
    S = base_c | base_d
    return MinorSpec(C, D, S, (C | D) - S)


def minor(M: IndependenceOracle, C: Iterable[Hashable], D: Iterable[Hashable]) -> IndependenceOracle:
    """``M / C \\ D`` on ``E \\ (C ∪ D)``: ``I`` is independent iff ``I ∪ S`` is."""
    norm = minor_normalize(M, C, D)
    gone = norm.contract | norm.delete
    ground = [e for e in M.ground if e not in gone]
    S = norm.normalized_s
    return IndependenceOracle(ground, lambda I: M.is_independent(I | S), name="minor")


def minor_stepwise(M: IndependenceOracle, C: Iterable[Hashable], D: Iterable[Hashable]) -> IndependenceOracle:
    """Second route to ``M / C \\ D``: delete ``D``, then contract ``C`` one element at a time.

    A loop is contracted by deleting it; any other element ``e`` is contracted
    by the rule ``I`` independent in ``M/e`` iff ``I + e`` is independent.
    """
    C, D = _check_minor_input(M, C, D)
    current = restriction(M, M.ground.members - D)
    for e in M.ground:
        if e not in C:
            continue
        prev = current
        rest = [x for x in prev.ground if x != e]
        if prev.is_independent({e}):
            current = IndependenceOracle(rest, lambda I, prev=prev, e=e: prev.is_independent(I | {e}))
        else:
            current = IndependenceOracle(rest, prev.is_independent)
    return current


# ---------------------------------------------------------------------------
# enumeration


def enumerate_sets(M: IndependenceOracle, kind: str, cap: Optional[int] = None) -> list:
    """Bases, circuits or cocircuits of ``M`` sorted by size then ground order."""
    n = len(M.ground)
    if kind == "bases":
        return _sorted_subsets(M.ground, _base_masks(M, cap))
    if kind == "circuits":
        tbl = M.table(cap)
        found = []
        for m in range(1, 1 << n):
            if tbl[m]:
                continue
            bits = m
            minimal = True
            while bits:
                low = bits & -bits
                if not tbl[m ^ low]:
                    minimal = False
                    break
                bits ^= low
            if minimal:
                found.append(m)
        return _sorted_subsets(M.ground, found)
    if kind == "cocircuits":
        return enumerate_sets(dual(M, cap), "circuits", cap)
    raise ValueError(f"unknown kind {kind!r}; expected bases, circuits or cocircuits")


def coloops(M: IndependenceOracle, cap: Optional[int] = None) -> frozenset:
    """Elements lying in every base."""
    masks = _base_masks(M, cap)
    common = (1 << len(M.ground)) - 1
    for b in masks:
        common &= b
    return M.ground.subset(common)


def rank(M: IndependenceOracle, X: Optional[Iterable[Hashable]] = None) -> int:
    """Rank of ``X`` (the whole ground set by default), via greedy extension."""
    pool = M.ground.members if X is None else frozenset(X)
    return len(greedy_extend(M, (), pool))


# ---------------------------------------------------------------------------
# comparison


def first_difference(M1: IndependenceOracle, M2: IndependenceOracle, cap: Optional[int] = None):
    """``None`` when both oracles have the same independent sets.

    Otherwise returns ``(subset, in_first, in_second)`` for the first subset
    (in the first oracle's ground order) on which they disagree.  Ground sets
    must agree as sets; the order may differ.
    """
    if M1.ground.members != M2.ground.members:
        raise ValueError("oracles have different ground sets")
    t1 = M1.table(cap)
    sub = M1.ground.subset
    for m, a in enumerate(t1):
        s = sub(m)
        b = M2.is_independent(s)
        if a != b:
            return s, a, b
    return None


def same_matroid(M1: IndependenceOracle, M2: IndependenceOracle, cap: Optional[int] = None) -> bool:
    return first_difference(M1, M2, cap) is None


def uniform(r: int, elements: Sequence[Hashable]) -> IndependenceOracle:
    return IndependenceOracle(elements, lambda I: len(I) <= r, name=f"U{r},{len(elements)}")


def free(elements: Sequence[Hashable]) -> IndependenceOracle:
    return IndependenceOracle(elements, lambda I: True, name="free")
