"""Dart-based connected trivalent multigraphs.

A graph on 2k vertices is stored as a fixed-point-free involution on the
6k darts, with darts 3v, 3v+1, 3v+2 belonging to vertex v.  This module
provides validation, isomorphism machinery, minimal-code canonical forms,
and isomorph-free enumeration.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import MalformedPairing, NotConnected, NotTrivalent, ResourceLimit

DEFAULT_MAX_CLASSES = 1_000_000


class TadpolePolicy(Enum):
    """Whether self-loop edges are admitted in the generating set."""

    EXCLUDE = "exclude"
    INCLUDE = "include"


def max_classes_limit() -> int:
    return int(os.environ.get("AK_MAX_CLASSES", DEFAULT_MAX_CLASSES))


class DartGraph:
    """Immutable connected trivalent multigraph in dart form.

    `partner[d]` is the dart paired with dart `d`; each 2-cycle of the
    involution is one edge.  Edges are indexed by the sorted list of their
    dart pairs (min dart, max dart).
    """

    __slots__ = ("num_vertices", "partner", "connected", "_edges", "_edge_of_dart")

    def __init__(self, num_vertices: int, partner: Sequence[int], connected: bool):
        self.num_vertices = num_vertices
        self.partner = tuple(partner)
        self.connected = connected
        self._edges = tuple(
            sorted((d, p) for d, p in enumerate(self.partner) if d < p)
        )
        eod = [-1] * len(self.partner)
        for i, (a, b) in enumerate(self._edges):
            eod[a] = eod[b] = i
        self._edge_of_dart = tuple(eod)

    @property
    def k(self) -> int:
        return self.num_vertices // 2

    @property
    def num_darts(self) -> int:
        return 3 * self.num_vertices

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def vertex_of(self, dart: int) -> int:
        return dart // 3

    def darts_of(self, vertex: int) -> tuple[int, int, int]:
        return (3 * vertex, 3 * vertex + 1, 3 * vertex + 2)

    def edge_of_dart(self, dart: int) -> int:
        return self._edge_of_dart[dart]

    def is_loop(self, edge_index: int) -> bool:
        a, b = self._edges[edge_index]
        return a // 3 == b // 3

    @property
    def has_loop(self) -> bool:
        return any(self.is_loop(i) for i in range(self.num_edges))

    def loop_count(self, vertex: int) -> int:
        return sum(
            1
            for i in range(self.num_edges)
            if self.is_loop(i) and self._edges[i][0] // 3 == vertex
        )

    def code(self) -> tuple[int, ...]:
        return self.partner

    def code_str(self) -> str:
        return " ".join(str(p) for p in self.partner)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DartGraph)
            and self.num_vertices == other.num_vertices
            and self.partner == other.partner
        )

    def __hash__(self) -> int:
        return hash((self.num_vertices, self.partner))

    def __repr__(self) -> str:
        return f"DartGraph(2k={self.num_vertices}, edges={list(self._edges)})"


@dataclass(frozen=True)
class Isomorphism:
    """Dart-level map between two dart graphs (vertex map is determined)."""

    vertex_perm: tuple[int, ...]
    dart_perm: tuple[int, ...]

    @staticmethod
    def identity(num_vertices: int) -> "Isomorphism":
        return Isomorphism(
            tuple(range(num_vertices)), tuple(range(3 * num_vertices))
        )

    @staticmethod
    def from_dart_map(dart_perm: Sequence[int]) -> "Isomorphism":
        nv = len(dart_perm) // 3
        vp = tuple(dart_perm[3 * v] // 3 for v in range(nv))
        return Isomorphism(vp, tuple(dart_perm))

    def compose(self, other: "Isomorphism") -> "Isomorphism":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return Isomorphism(
            tuple(self.vertex_perm[v] for v in other.vertex_perm),
            tuple(self.dart_perm[d] for d in other.dart_perm),
        )

    def inverse(self) -> "Isomorphism":
        vp = [0] * len(self.vertex_perm)
        dp = [0] * len(self.dart_perm)
        for i, v in enumerate(self.vertex_perm):
            vp[v] = i
        for i, d in enumerate(self.dart_perm):
            dp[d] = i
        return Isomorphism(tuple(vp), tuple(dp))

    def is_identity(self) -> bool:
        return all(i == d for i, d in enumerate(self.dart_perm))


def _connected(num_vertices: int, partner: Sequence[int]) -> bool:
    seen = [False] * num_vertices
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for d in (3 * v, 3 * v + 1, 3 * v + 2):
            w = partner[d] // 3
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == num_vertices


def from_pairing(
    num_vertices: int,
    pairs: Iterable[tuple[int, int]],
    allow_disconnected: bool = False,
) -> DartGraph:
    """Build and validate a DartGraph from a list of dart pairs (one per edge)."""
    if num_vertices <= 0 or num_vertices % 2 != 0:
        raise NotTrivalent(f"num_vertices must be positive even, got {num_vertices}")
    nd = 3 * num_vertices
    partner = [-1] * nd
    for a, b in pairs:
        if not (0 <= a < nd and 0 <= b < nd):
            raise MalformedPairing(f"dart out of range in pair ({a}, {b})")
        if a == b:
            raise MalformedPairing(f"dart {a} paired with itself")
        if partner[a] != -1 or partner[b] != -1:
            raise MalformedPairing(f"dart repeated in pair ({a}, {b})")
        partner[a] = b
        partner[b] = a
    missing = [d for d in range(nd) if partner[d] == -1]
    if missing:
        raise MalformedPairing(f"unmatched darts: {missing}")
    conn = _connected(num_vertices, partner)
    if not conn and not allow_disconnected:
        raise NotConnected("graph is not connected")
    return DartGraph(num_vertices, partner, conn)


def from_partner_array(
    partner: Sequence[int], allow_disconnected: bool = False
) -> DartGraph:
    nv = len(partner) // 3
    return from_pairing(
        nv,
        [(d, p) for d, p in enumerate(partner) if d < p],
        allow_disconnected=allow_disconnected,
    )


def relabel(g: DartGraph, iso: Isomorphism) -> DartGraph:
    """Apply a dart-level relabelling, producing the image graph."""
    partner = [0] * g.num_darts
    dp = iso.dart_perm
    for d in range(g.num_darts):
        partner[dp[d]] = dp[g.partner[d]]
    return DartGraph(g.num_vertices, partner, g.connected)


def random_relabelling(g: DartGraph, rng: random.Random) -> Isomorphism:
    """Random vertex permutation plus random slot permutations."""
    nv = g.num_vertices
    vp = list(range(nv))
    rng.shuffle(vp)
    dp = [0] * g.num_darts
    for v in range(nv):
        slots = [0, 1, 2]
        rng.shuffle(slots)
        for i, s in enumerate(slots):
            dp[3 * v + i] = 3 * vp[v] + s
    return Isomorphism(tuple(vp), tuple(dp))


def _min_code_maps(
    g: DartGraph, collect_all: bool
) -> tuple[tuple[int, ...], list[list[int]]]:
    """Lexicographically least partner code over all relabellings.

    Returns the code and the dart maps (old dart -> new dart) achieving it;
    one map unless collect_all.  The search reveals vertices in discovery
    order; the only branch points are the seed and the order in which a
    partially revealed vertex exposes its remaining darts.
    """
    nv = g.num_vertices
    nd = g.num_darts
    partner = g.partner

    best: list[int] | None = None
    best_maps: list[list[int]] = []

    loop_vertices = [
        v for v in range(nv) if any(partner[d] // 3 == v for d in g.darts_of(v))
    ]
    seeds = loop_vertices if loop_vertices else list(range(nv))

    dmap = [-1] * nd  # old dart -> new slot
    dinv = [-1] * nd  # new slot -> old dart
    vmap = [-1] * nv  # old vertex -> new vertex

    def search(pos: int, vnext: int, code: list[int], tight: bool) -> None:
        nonlocal best, best_maps
        if pos == nd:
            if best is None or code < best:
                best = list(code)
                best_maps = [dmap.copy()]
            elif collect_all and code == best:
                best_maps.append(dmap.copy())
            return
        x = dinv[pos]
        if x == -1:
            # slot belongs to a partially revealed vertex; branch over its
            # unassigned darts
            w = -1
            for ov in range(nv):
                if vmap[ov] == pos // 3:
                    w = ov
                    break
            for y in g.darts_of(w):
                if dmap[y] == -1:
                    dmap[y] = pos
                    dinv[pos] = y
                    search(pos, vnext, code, tight)
                    dmap[y] = -1
                    dinv[pos] = -1
            return
        y = partner[x]
        if dmap[y] != -1:
            c = dmap[y]
            new_vnext = vnext
            reveal = -1
        else:
            w = y // 3
            if vmap[w] == -1:
                c = 3 * vnext
                reveal = w
                new_vnext = vnext + 1
            else:
                t = vmap[w]
                c = -1
                for s in (3 * t, 3 * t + 1, 3 * t + 2):
                    if dinv[s] == -1:
                        c = s
                        break
                reveal = -1
                new_vnext = vnext
        if tight and best is not None:
            if c > best[pos]:
                return
            if c < best[pos]:
                tight = False
        if reveal != -1:
            vmap[reveal] = vnext
        if dmap[y] == -1:
            dmap[y] = c
            dinv[c] = y
            assigned = True
        else:
            assigned = False
        code.append(c)
        search(pos + 1, new_vnext, code, tight)
        code.pop()
        if assigned:
            dmap[y] = -1
            dinv[c] = -1
        if reveal != -1:
            vmap[reveal] = -1

    for seed in seeds:
        darts = g.darts_of(seed)
        for order in permutations(darts):
            vmap[seed] = 0
            for i, d in enumerate(order):
                dmap[d] = i
                dinv[i] = d
            search(0, 1, [], best is not None)
            for i, d in enumerate(order):
                dmap[d] = -1
                dinv[i] = -1
            vmap[seed] = -1

    assert best is not None
    return tuple(best), best_maps


def canonical_form(g: DartGraph) -> tuple[DartGraph, Isomorphism]:
    """Canonical representative plus one witnessing isomorphism g -> canonical."""
    code, maps = _min_code_maps(g, collect_all=False)
    canon = DartGraph(g.num_vertices, code, g.connected)
    return canon, Isomorphism.from_dart_map(maps[0])


def canonical_code(g: DartGraph) -> tuple[int, ...]:
    return _min_code_maps(g, collect_all=False)[0]


def automorphisms(g: DartGraph) -> list[Isomorphism]:
    """The full automorphism group as dart-level maps (identity included)."""
    _, maps = _min_code_maps(g, collect_all=True)
    base_inv = Isomorphism.from_dart_map(maps[0]).inverse()
    autos = [base_inv.compose(Isomorphism.from_dart_map(m)) for m in maps]
    autos.sort(key=lambda a: a.dart_perm)
    return autos


def _pairing_dfs(k: int, include_loops: bool) -> Iterator[tuple[int, ...]]:
    """Connected pairings, one discovery-normalized presentation per slot orbit.

    Vertices are revealed in discovery order and each vertex's free darts
    are consumed smallest first, so every isomorphism class appears (possibly
    several times) while the bulk of the labelled redundancy is skipped.
    """
    nv = 2 * k
    nd = 6 * k
    partner = [-1] * nd

    def rec(touched: int):
        x = -1
        for d in range(3 * touched):
            if partner[d] == -1:
                x = d
                break
        if x == -1:
            if touched == nv:
                yield tuple(partner)
            return
        cands = []
        for w in range(touched):
            for y in g_darts(w):
                if partner[y] == -1 and y != x:
                    if w != x // 3 or include_loops:
                        cands.append(y)
                    break
        if touched < nv:
            cands.append(3 * touched)
        for y in cands:
            fresh = y >= 3 * touched
            partner[x] = y
            partner[y] = x
            yield from rec(touched + 1 if fresh else touched)
            partner[x] = -1
            partner[y] = -1

    def g_darts(v: int):
        return (3 * v, 3 * v + 1, 3 * v + 2)

    yield from rec(1)


def enumerate_trivalent(
    k: int,
    policy: TadpolePolicy = TadpolePolicy.EXCLUDE,
    max_classes: int | None = None,
) -> Iterator[DartGraph]:
    """One canonical representative per isomorphism class, in canonical-code order."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    limit = max_classes if max_classes is not None else max_classes_limit()
    include_loops = policy is TadpolePolicy.INCLUDE
    codes: set[tuple[int, ...]] = set()
    for pairing in _pairing_dfs(k, include_loops):
        g = DartGraph(2 * k, pairing, True)
        code = canonical_code(g)
        if code not in codes:
            codes.add(code)
            if len(codes) > limit:
                raise ResourceLimit(
                    f"class count exceeded AK_MAX_CLASSES={limit} at k={k}"
                )
    for code in sorted(codes):
        yield DartGraph(2 * k, code, True)


def all_pairings(k: int) -> Iterator[tuple[int, ...]]:
    """Every fixed-point-free involution on 6k darts (test oracle; exponential)."""
    nd = 6 * k
    partner = [-1] * nd

    def rec():
        x = -1
        for d in range(nd):
            if partner[d] == -1:
                x = d
                break
        if x == -1:
            yield tuple(partner)
            return
        for y in range(x + 1, nd):
            if partner[y] == -1:
                partner[x] = y
                partner[y] = x
                yield from rec()
                partner[x] = -1
                partner[y] = -1

    yield from rec()
