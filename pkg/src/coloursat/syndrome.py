"""Syndrome / error-set algebra and the canonical text file formats."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

import numpy as np

from ._accel import pairwise_distances
from .lattice import (
    BULK,
    DOWN,
    UP,
    Code,
    Colour,
    FaceT,
    Node,
    colour_of,
    dual_distance,
    face_vertices,
)

SYNDROME_HEADER = "colour-syndrome v1"
ERRORS_HEADER = "colour-errors v1"


def canon_nodes(nodes: Iterable[Node]) -> tuple[Node, ...]:
    return tuple(sorted(set(nodes)))


def canon_faces(faces: Iterable[FaceT]) -> tuple[FaceT, ...]:
    return tuple(sorted(set(faces)))


class Syndrome:
    """A set of defects, canonicalized (sorted, deduplicated)."""

    __slots__ = ("defects",)

    def __init__(self, defects: Iterable[Node] = ()):
        self.defects: tuple[Node, ...] = canon_nodes(defects)

    def __len__(self) -> int:
        return len(self.defects)

    def __iter__(self):
        return iter(self.defects)

    def __contains__(self, node: Node) -> bool:
        return node in set(self.defects)

    def __eq__(self, other) -> bool:
        return isinstance(other, Syndrome) and self.defects == other.defects

    def __hash__(self) -> int:
        return hash(self.defects)

    def __repr__(self) -> str:
        return f"Syndrome({list(self.defects)!r})"

    def symmetric_difference(self, other: "Syndrome") -> "Syndrome":
        return Syndrome(set(self.defects) ^ set(other.defects))


class ErrorSet:
    """A set of error faces, canonicalized."""

    __slots__ = ("faces",)

    def __init__(self, faces: Iterable[FaceT] = ()):
        self.faces: tuple[FaceT, ...] = canon_faces(faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __eq__(self, other) -> bool:
        return isinstance(other, ErrorSet) and self.faces == other.faces

    def __hash__(self) -> int:
        return hash(self.faces)

    def __repr__(self) -> str:
        return f"ErrorSet({list(self.faces)!r})"

    def symmetric_difference(self, other: "ErrorSet") -> "ErrorSet":
        return ErrorSet(set(self.faces) ^ set(other.faces))


def generate_syndrome(errors: ErrorSet, code: Code = BULK) -> Syndrome:
    """Checks meeting an odd number of errors."""
    counts: Counter[Node] = Counter()
    for face in errors:
        for v in face_vertices(face):
            if code.contains(v):
                counts[v] += 1
    return Syndrome(v for v, c in counts.items() if c % 2 == 1)


def is_separated(s: Syndrome) -> bool:
    """No pair of defects at dual distance one."""
    if len(s) < 2:
        return True
    arr = np.array(s.defects, dtype=np.int64)
    d = pairwise_distances(arr)
    iu = np.triu_indices(len(s), k=1)
    return int(d[iu].min()) >= 2


def error_components(errors: ErrorSet) -> list[ErrorSet]:
    """Connected components; two errors are connected if they share a vertex."""
    faces = list(errors)
    parent = list(range(len(faces)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_vertex: dict[Node, int] = {}
    for i, f in enumerate(faces):
        for v in face_vertices(f):
            if v in by_vertex:
                ri, rj = find(i), find(by_vertex[v])
                if ri != rj:
                    parent[ri] = rj
            else:
                by_vertex[v] = i
    groups: dict[int, list[FaceT]] = {}
    for i, f in enumerate(faces):
        groups.setdefault(find(i), []).append(f)
    return [ErrorSet(g) for _, g in sorted(groups.items())]


def colour_counts(s: Syndrome) -> dict[Colour, int]:
    out = {Colour.RED: 0, Colour.GREEN: 0, Colour.BLUE: 0}
    for node in s:
        out[colour_of(node)] += 1
    return out


def colour_parity_ok(errors: ErrorSet, code: Code = BULK) -> bool:
    """Per error component, the three defect-colour counts share one parity.

    Precondition: no component touches the code boundary (each face has all
    three vertices in the code).  A False return signals a bug upstream.
    """
    for comp in error_components(errors):
        for face in comp:
            if len(code.face_defects(face)) != 3:
                raise ValueError(f"component touches boundary at face {face}")
        counts = colour_counts(generate_syndrome(comp, code))
        parities = {c % 2 for c in counts.values()}
        if len(parities) != 1:
            return False
    return True


def diameter(s: Syndrome) -> int:
    """Max pairwise dual distance; requires a nonempty syndrome."""
    if len(s) == 0:
        raise ValueError("diameter of an empty syndrome is undefined")
    if len(s) == 1:
        return 0
    arr = np.array(s.defects, dtype=np.int64)
    d = pairwise_distances(arr)
    return int(d.max())


# Text formats (one record per line, versioned header).


def format_syndrome(s: Syndrome) -> str:
    lines = [SYNDROME_HEADER]
    lines += [f"node {q} {r}" for q, r in s.defects]
    return "\n".join(lines) + "\n"


def parse_syndrome(text: str) -> Syndrome:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].strip() != SYNDROME_HEADER:
        raise ValueError(f"expected header {SYNDROME_HEADER!r}")
    nodes = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "node":
            raise ValueError(f"bad syndrome line: {ln!r}")
        nodes.append((int(parts[1]), int(parts[2])))
    return Syndrome(nodes)


def format_errors(e: ErrorSet) -> str:
    lines = [ERRORS_HEADER]
    lines += [f"face {q} {r} {'U' if o == UP else 'D'}" for q, r, o in e.faces]
    return "\n".join(lines) + "\n"


def parse_errors(text: str) -> ErrorSet:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].strip() != ERRORS_HEADER:
        raise ValueError(f"expected header {ERRORS_HEADER!r}")
    faces = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4 or parts[0] != "face" or parts[3] not in ("U", "D"):
            raise ValueError(f"bad error line: {ln!r}")
        faces.append((int(parts[1]), int(parts[2]), UP if parts[3] == "U" else DOWN))
    return ErrorSet(faces)
