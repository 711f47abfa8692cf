"""Finite connected posets given by cover relations.

A poset is built from its Hasse diagram: an ordered list of labels plus a
set of cover pairs (a, b), read "b covers a".  The reflexive-transitive
order is derived; intervals, interval lengths, maximal chains, shortest
walks in the Hasse graph and a fundamental cycle basis are all precomputed
or cached, and every derived object is deterministic given the input order
of the elements.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    CycleDetected,
    NotConnected,
    RedundantCover,
    TrivialPoset,
    UnknownElement,
)

Label = object
Pair = tuple


@dataclass(frozen=True)
class Walk:
    """A sequence of poset elements in which consecutive entries are
    related by a cover (in either direction)."""

    vertices: tuple

    @property
    def is_closed(self) -> bool:
        return len(self.vertices) >= 1 and self.vertices[0] == self.vertices[-1]

    @property
    def step_count(self) -> int:
        return len(self.vertices) - 1

    def steps(self):
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)]

    def reversed(self) -> "Walk":
        return Walk(tuple(reversed(self.vertices)))

    def __iter__(self):
        return iter(self.vertices)


class Poset:
    """Finite connected poset with at least two elements.

    The element order given at construction is the canonical order used
    everywhere downstream: basis indexing, walk tie-breaking, chain and
    cycle enumeration.  Instances are immutable after construction and safe
    to share between threads.
    """

    def __init__(self, elements, covers):
        elements = tuple(elements)
        if len(elements) != len(set(elements)):
            raise UnknownElement("element labels must be distinct")
        if len(elements) <= 1:
            raise TrivialPoset(f"need at least 2 elements, got {len(elements)}")
        names = [str(e) for e in elements]
        if len(set(names)) != len(names):
            raise UnknownElement("element labels must have distinct string forms")
        if any("," in s for s in names):
            raise UnknownElement("element labels must not contain commas")

        self.elements = elements
        self.n = len(elements)
        self.index = {e: i for i, e in enumerate(elements)}

        cover_set = set()
        for a, b in covers:
            if a not in self.index or b not in self.index:
                raise UnknownElement(f"cover ({a!r}, {b!r}) refers to unknown labels")
            if a == b:
                raise CycleDetected(f"cover ({a!r}, {b!r}) is a loop")
            cover_set.add((a, b))
        self.covers = tuple(
            sorted(cover_set, key=lambda p: (self.index[p[0]], self.index[p[1]]))
        )

        n = self.n
        less = [[False] * n for _ in range(n)]
        for a, b in self.covers:
            less[self.index[a]][self.index[b]] = True
        for k in range(n):
            lk = less[k]
            for i in range(n):
                if less[i][k]:
                    li = less[i]
                    for j in range(n):
                        if lk[j]:
                            li[j] = True
        for i in range(n):
            if less[i][i]:
                raise CycleDetected(f"element {elements[i]!r} lies on a directed cycle")
        self._less = less

        for a, b in self.covers:
            ia, ib = self.index[a], self.index[b]
            if any(less[ia][k] and less[k][ib] for k in range(n)):
                raise RedundantCover(
                    f"cover ({a!r}, {b!r}) is implied by a longer chain"
                )

        up = [[] for _ in range(n)]
        down = [[] for _ in range(n)]
        for a, b in self.covers:
            up[self.index[a]].append(self.index[b])
            down[self.index[b]].append(self.index[a])
        self._up = [sorted(s) for s in up]
        self._down = [sorted(s) for s in down]
        self._neighbors = [sorted(set(up[i]) | set(down[i])) for i in range(n)]

        seen = [False] * n
        queue = deque([0])
        seen[0] = True
        count = 1
        while queue:
            i = queue.popleft()
            for j in self._neighbors[i]:
                if not seen[j]:
                    seen[j] = True
                    count += 1
                    queue.append(j)
        if count != n:
            missing = [elements[i] for i in range(n) if not seen[i]]
            raise NotConnected(f"Hasse graph is disconnected; unreachable: {missing}")

        self._lengths = self._interval_lengths()
        self.strict_pairs = tuple(
            (elements[i], elements[j])
            for i in range(n)
            for j in range(n)
            if less[i][j]
        )
        self.comparable_pairs = tuple(
            [(e, e) for e in elements] + list(self.strict_pairs)
        )
        self.pair_index = {p: k for k, p in enumerate(self.comparable_pairs)}
        self.minimal_elements = tuple(
            elements[i] for i in range(n) if not self._down[i]
        )
        self.maximal_elements = tuple(elements[i] for i in range(n) if not self._up[i])

        self._maximal_chains = None
        self._bfs_trees = {}
        self._fundamental_cycles = None
        self._hash = hash((self.elements, self.covers))

        # Chains, walk trees and the cycle basis are precomputed so that
        # instances are fully immutable and safe to share after this point.
        self.maximal_chains()
        for root in self.elements:
            self._bfs_tree(root)
        self.fundamental_cycles()

    # -- order queries -------------------------------------------------

    def less(self, x, y) -> bool:
        return self._less[self.index[x]][self.index[y]]

    def leq(self, x, y) -> bool:
        return x == y or self._less[self.index[x]][self.index[y]]

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def is_cover(self, x, y) -> bool:
        return self._is_cover(x, y)

    def _is_cover(self, x, y) -> bool:
        return self.index[y] in self._up[self.index[x]]

    def interval(self, x, y):
        """Elements z with x <= z <= y, in element order."""
        if not self.leq(x, y):
            return ()
        return tuple(z for z in self.elements if self.leq(x, z) and self.leq(z, y))

    def interval_length(self, x, y) -> int | None:
        """Longest chain length within [x, y]; None if x <= y fails."""
        return self._lengths[self.index[x]][self.index[y]]

    def up_covers(self, x):
        return tuple(self.elements[j] for j in self._up[self.index[x]])

    def down_covers(self, x):
        return tuple(self.elements[j] for j in self._down[self.index[x]])

    def hasse_neighbors(self, x):
        return tuple(self.elements[j] for j in self._neighbors[self.index[x]])

    def _interval_lengths(self):
        n = self.n
        order = self._topological_order()
        lengths = [[None] * n for _ in range(n)]
        for i in range(n):
            lengths[i][i] = 0
        for i in range(n):
            dist = {i: 0}
            for j in order:
                if j == i or not self._less[i][j]:
                    continue
                best = None
                for k in self._down[j]:
                    if k in dist:
                        cand = dist[k] + 1
                        if best is None or cand > best:
                            best = cand
                dist[j] = best
                lengths[i][j] = best
        return lengths

    def _topological_order(self):
        indeg = [len(self._down[i]) for i in range(self.n)]
        queue = deque(i for i in range(self.n) if indeg[i] == 0)
        order = []
        while queue:
            i = queue.popleft()
            order.append(i)
            for j in self._up[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
        return order

    # -- chains ----------------------------------------------------------

    def maximal_chains(self):
        """All maximal chains, each as an increasing element tuple.

        Chains are found by descending cover paths from minimal to maximal
        elements, which enumerates exactly the inclusion-maximal chains.
        """
        if self._maximal_chains is None:
            chains = []

            def extend(path):
                top = path[-1]
                ups = self._up[self.index[top]]
                if not ups:
                    chains.append(tuple(path))
                    return
                for j in ups:
                    path.append(self.elements[j])
                    extend(path)
                    path.pop()

            for m in self.minimal_elements:
                extend([m])
            self._maximal_chains = tuple(chains)
        return list(self._maximal_chains)

    def is_maximal_chain(self, seq) -> bool:
        seq = tuple(seq)
        if len(seq) < 2:
            return False
        if seq[0] not in self.minimal_elements or seq[-1] not in self.maximal_elements:
            return False
        return all(self._is_cover(a, b) for a, b in zip(seq, seq[1:]))

    def chains_through_pair(self, x, y):
        """Maximal chains containing both x and y."""
        return [ch for ch in self.maximal_chains() if x in ch and y in ch]

    # -- walks -----------------------------------------------------------

    def _bfs_tree(self, root):
        """Parent map of the BFS tree of the Hasse graph rooted at root.

        Neighbors are scanned in element order, so the tree (and every walk
        derived from it) is deterministic.
        """
        r = self.index[root]
        if r not in self._bfs_trees:
            parent = {r: None}
            queue = deque([r])
            while queue:
                i = queue.popleft()
                for j in self._neighbors[i]:
                    if j not in parent:
                        parent[j] = i
                        queue.append(j)
            self._bfs_trees[r] = parent
        return self._bfs_trees[r]

    def find_walk(self, u, v) -> Walk:
        """Shortest walk from u to v in the Hasse graph (BFS, ties broken
        by element order)."""
        parent = self._bfs_tree(u)
        path = [self.index[v]]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        path.reverse()
        return Walk(tuple(self.elements[i] for i in path))

    def tree_walk(self, root, u, v) -> Walk:
        """Walk from u to v inside the BFS tree rooted at root."""
        parent = self._bfs_tree(root)
        iu, iv = self.index[u], self.index[v]
        up_u = [iu]
        while parent[up_u[-1]] is not None:
            up_u.append(parent[up_u[-1]])
        up_v = [iv]
        while parent[up_v[-1]] is not None:
            up_v.append(parent[up_v[-1]])
        set_u = {k: pos for pos, k in enumerate(up_u)}
        meet_pos_v = next(pos for pos, k in enumerate(up_v) if k in set_u)
        meet = up_v[meet_pos_v]
        first = up_u[: set_u[meet] + 1]
        second = list(reversed(up_v[:meet_pos_v]))
        return Walk(tuple(self.elements[i] for i in first + second))

    def check_walk(self, walk: Walk) -> bool:
        """Whether consecutive entries are covers in either direction."""
        for a, b in walk.steps():
            if not (self._is_cover(a, b) or self._is_cover(b, a)):
                return False
        return all(x in self.index for x in walk.vertices)

    def fundamental_cycles(self):
        """Fundamental cycles of the Hasse graph with respect to the BFS
        spanning tree rooted at the first element.

        Empty exactly when the Hasse graph is a tree.  Each cycle is a
        closed walk; together they form a cycle basis, so a circulation
        that vanishes on all of them vanishes on every closed walk.
        """
        if self._fundamental_cycles is None:
            root = self.elements[0]
            parent = self._bfs_tree(root)
            tree_edges = {
                frozenset((i, parent[i])) for i in parent if parent[i] is not None
            }
            cycles = []
            for a, b in self.covers:
                ia, ib = self.index[a], self.index[b]
                if frozenset((ia, ib)) in tree_edges:
                    continue
                walk = self.tree_walk(root, a, b)
                cycles.append(Walk(walk.vertices + (a,)))
            self._fundamental_cycles = tuple(cycles)
        return list(self._fundamental_cycles)

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and other.elements == self.elements
            and other.covers == self.covers
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Poset({list(self.elements)}, covers={list(self.covers)})"


def from_cover_relations(elements, covers) -> Poset:
    """Build and validate a poset from labels and cover pairs."""
    return Poset(elements, covers)
