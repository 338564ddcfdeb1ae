"""Geometry of the dual triangular lattice of the hexagonal colour code.

Nodes are checks in axial coordinates (q, r); faces are the data-qubit
error sites (up/down triangles).  Everything here is pure and
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from ._accel import pairwise_distances

Node = tuple[int, int]
# Face encoded as (q, r, o) with o = 0 for Up, 1 for Down.
FaceT = tuple[int, int, int]

UP = 0
DOWN = 1


class Colour(IntEnum):
    RED = 0
    GREEN = 1
    BLUE = 2

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.name.lower()


#: The six dual-lattice neighbour steps.
NEIGHBOUR_STEPS: tuple[Node, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

#: Same-colour displacements realizable as the syndrome of an edge-sharing
#: face pair ("matched" pairs).  All have dual distance 2.
MATCH_STEPS: tuple[Node, ...] = ((1, 1), (-1, -1), (-2, 1), (2, -1), (1, -2), (-1, 2))


def colour_of(node: Node) -> Colour:
    q, r = node
    return Colour((q + 2 * r) % 3)


def dual_distance(u: Node, v: Node) -> int:
    dq = u[0] - v[0]
    dr = u[1] - v[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def neighbours(node: Node) -> list[Node]:
    q, r = node
    return [(q + dq, r + dr) for dq, dr in NEIGHBOUR_STEPS]


def bfs_distance(u: Node, v: Node, bound: int = 64) -> int:
    """Reference BFS distance, used as an oracle against the closed form."""
    if u == v:
        return 0
    frontier = {u}
    seen = {u}
    for depth in range(1, bound + 1):
        nxt = set()
        for w in frontier:
            for n in neighbours(w):
                if n == v:
                    return depth
                if n not in seen:
                    seen.add(n)
                    nxt.add(n)
        frontier = nxt
    raise RuntimeError(f"no path within {bound} steps")


def face_vertices(face: FaceT) -> tuple[Node, Node, Node]:
    q, r, o = face
    if o == UP:
        return ((q, r), (q + 1, r), (q, r + 1))
    return ((q + 1, r), (q, r + 1), (q + 1, r + 1))


def faces_of_node(node: Node) -> list[FaceT]:
    """The six faces containing a node, in canonical order."""
    q, r = node
    return sorted(
        [
            (q, r, UP),
            (q - 1, r, UP),
            (q, r - 1, UP),
            (q - 1, r, DOWN),
            (q, r - 1, DOWN),
            (q - 1, r - 1, DOWN),
        ]
    )


def matchable(u: Node, v: Node) -> bool:
    """True iff two distinct faces generate exactly the syndrome {u, v}."""
    if colour_of(u) != colour_of(v):
        return False
    return (v[0] - u[0], v[1] - u[1]) in MATCH_STEPS


def match_faces(u: Node, v: Node) -> tuple[FaceT, FaceT]:
    """The unique face pair whose syndrome is exactly {u, v}."""
    step = (v[0] - u[0], v[1] - u[1])
    if step not in MATCH_STEPS:
        raise ValueError(f"{u} and {v} are not matchable")
    if step in ((-1, -1), (2, -1), (-1, 2)):
        u, v = v, u
        step = (-step[0], -step[1])
    q, r = u
    if step == (1, 1):
        return ((q, r, UP), (q, r, DOWN))
    if step == (-2, 1):
        # u = (q, r) plays the (q'+1, r') role of the sym-diff pair.
        return ((q - 1, r, UP), (q - 2, r, DOWN))
    # step == (1, -2): u plays the (q', r'+1) role.
    return ((q, r - 1, UP), (q, r - 2, DOWN))


class Code:
    """A check region: the infinite bulk or a finite restriction."""

    def contains(self, node: Node) -> bool:  # pragma: no cover - interface
        raise NotImplementedError

    def face_valid(self, face: FaceT) -> bool:
        return any(self.contains(v) for v in face_vertices(face))

    def face_defects(self, face: FaceT) -> tuple[Node, ...]:
        return tuple(v for v in face_vertices(face) if self.contains(v))


class BulkCode(Code):
    """The infinite dual lattice; every node is a check."""

    def contains(self, node: Node) -> bool:
        return True

    def __repr__(self) -> str:
        return "BulkCode()"


BULK = BulkCode()


def faces_incident(node: Node, code: Code) -> list[FaceT]:
    """Valid error faces containing a node (empty if node is no check)."""
    if not code.contains(node):
        return []
    return [f for f in faces_of_node(node) if code.face_valid(f)]


def min_pairwise_distance(nodes: Iterable[Node]) -> int:
    arr = np.array(sorted(nodes), dtype=np.int64)
    if arr.shape[0] < 2:
        return 1 << 30
    d = pairwise_distances(arr)
    iu = np.triu_indices(arr.shape[0], k=1)
    return int(d[iu].min())


# Shrunk-lattice helpers.  Nodes of one colour form a triangular lattice
# under the matchable steps; basis e1 = (1, 1), e2 = (-1, 2) in dual coords.


def shrunk_to_dual(cell: tuple[int, int], base: Node = (0, 0)) -> Node:
    a, b = cell
    return (base[0] + a - b, base[1] + a + 2 * b)


def dual_to_shrunk(node: Node, base: Node = (0, 0)) -> tuple[int, int]:
    dq = node[0] - base[0]
    dr = node[1] - base[1]
    num_a = 2 * dq + dr
    num_b = dr - dq
    if num_a % 3 or num_b % 3:
        raise ValueError(f"{node} is not on the shrunk lattice of {base}")
    return (num_a // 3, num_b // 3)


@dataclass(frozen=True)
class NodeCoord:
    """Named wrapper for a check coordinate (plain tuples are used internally)."""

    q: int
    r: int

    @property
    def colour(self) -> Colour:
        return colour_of((self.q, self.r))

    def as_tuple(self) -> Node:
        return (self.q, self.r)


@dataclass(frozen=True)
class Face:
    """Named wrapper for an error site."""

    q: int
    r: int
    orientation: int  # UP or DOWN

    def as_tuple(self) -> FaceT:
        return (self.q, self.r, self.orientation)

    @property
    def vertices(self) -> tuple[Node, Node, Node]:
        return face_vertices(self.as_tuple())
