"""Gadget templates and the contract-verification harness.

Coordinates were designed on the "shrunk" lattices (one triangular lattice
per colour, edges = matchable pairs) and validated by the harness: the
achievable link-state sets below are enumerated with the exact-cover
solver, never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .lattice import (
    BULK,
    MATCH_STEPS,
    Code,
    Colour,
    Node,
    colour_of,
    dual_distance,
    matchable,
    shrunk_to_dual,
)
from .oracle import Box, exact_cover, enumerate_exact_covers
from .syndrome import ErrorSet, Syndrome, canon_nodes


class LinkState(Enum):
    TRUE = "T"
    FALSE = "F"
    FREE = "*"


@dataclass(frozen=True)
class Link:
    """A designated defect through which a gadget couples to a partner."""

    node: Node
    role: str
    partner: Node

    @property
    def colour(self) -> Colour:
        return colour_of(self.node)


@dataclass(frozen=True)
class Gadget:
    kind: str
    defects: tuple[Node, ...]
    links: tuple[Link, ...]
    boxes: tuple[Box, ...] = ()
    groups: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "defects", canon_nodes(self.defects))

    @property
    def red_defect_count(self) -> int:
        return sum(1 for d in self.defects if colour_of(d) == Colour.RED)

    def link(self, role: str) -> Link:
        for l in self.links:
            if l.role == role:
                return l
        raise KeyError(role)

    def translated(self, offset: Node) -> "Gadget":
        dq, dr = offset
        if (dq + 2 * dr) % 3:
            raise ValueError("offset must preserve colours")
        mv = lambda n: (n[0] + dq, n[1] + dr)
        return Gadget(
            self.kind,
            tuple(mv(d) for d in self.defects),
            tuple(Link(mv(l.node), l.role, mv(l.partner)) for l in self.links),
            tuple(Box(frozenset(mv(n) for n in b.region), b.budget) for b in self.boxes),
            dict(self.groups),
        )


class GadgetGeometryError(ValueError):
    pass


def validate_gadget(g: Gadget) -> None:
    """Structural checks: separation outside boxes, link/partner geometry."""
    box_nodes: set[Node] = set()
    for b in g.boxes:
        box_nodes |= set(b.region)
    defects = list(g.defects)
    for i, u in enumerate(defects):
        for v in defects[i + 1 :]:
            if dual_distance(u, v) < 2 and not (u in box_nodes and v in box_nodes):
                raise GadgetGeometryError(f"defects {u}, {v} at distance one")
    dset = set(defects)
    for l in g.links:
        if l.node not in dset:
            raise GadgetGeometryError(f"link {l.role} at {l.node} is not a defect")
        if not matchable(l.node, l.partner):
            raise GadgetGeometryError(f"link {l.role}: partner slot not matchable")
        if l.partner in dset:
            raise GadgetGeometryError(f"link {l.role}: partner slot is a defect")
        for v in defects:
            if v != l.node and dual_distance(l.partner, v) < 3:
                raise GadgetGeometryError(
                    f"link {l.role}: partner slot too close to defect {v}"
                )
    partners = [l.partner for l in g.links]
    if len(set(partners)) != len(partners):
        raise GadgetGeometryError("duplicate partner slots")
    for a, b in itertools.combinations(g.links, 2):
        if dual_distance(a.partner, b.partner) < 2:
            raise GadgetGeometryError("partner slots collide")


def _check_chain(nodes: Sequence[Node], allow_guarded: bool = False) -> None:
    """Wire-style path: consecutive matchable, non-consecutive far apart.

    A matchable non-consecutive pair at offset two ("guarded chord", from a
    parity detour) is harmless: its middle node would be stranded in any
    cover using the chord.
    """
    n = len(nodes)
    for i in range(n - 1):
        if not matchable(nodes[i], nodes[i + 1]):
            raise GadgetGeometryError(
                f"consecutive nodes {nodes[i]}, {nodes[i + 1]} not matchable"
            )
    for i in range(n):
        for j in range(i + 2, n):
            d = dual_distance(nodes[i], nodes[j])
            if d >= 3:
                continue
            if d < 2:
                raise GadgetGeometryError(f"nodes {nodes[i]}, {nodes[j]} at distance one")
            if matchable(nodes[i], nodes[j]) and not (allow_guarded and j == i + 2):
                raise GadgetGeometryError(
                    f"non-consecutive matchable pair {nodes[i]}, {nodes[j]}"
                )


# ---------------------------------------------------------------------------
# Wire


def make_wire(path: Sequence[Node]) -> Gadget:
    """A wire: an even path of red nodes whose ends are the links."""
    nodes = list(path)
    if len(nodes) < 2 or len(nodes) % 2:
        raise GadgetGeometryError("wire needs an even number of nodes (>= 2)")
    for v in nodes:
        if colour_of(v) != Colour.RED:
            raise GadgetGeometryError(f"wire node {v} is not red")
    _check_chain(nodes, allow_guarded=True)
    end0 = _outward_partner(nodes[0], nodes)
    end1 = _outward_partner(nodes[-1], nodes)
    links = (Link(nodes[0], "a", end0), Link(nodes[-1], "b", end1))
    g = Gadget("wire", tuple(nodes), links)
    validate_gadget(g)
    return g


def _outward_partner(end: Node, occupied: Iterable[Node]) -> Node:
    """A matchable slot for a wire end, clear of the wire body."""
    occ = set(occupied)
    for step in ((1, 1), (-1, -1), (-2, 1), (2, -1), (1, -2), (-1, 2)):
        cand = (end[0] + step[0], end[1] + step[1])
        if cand in occ:
            continue
        if all(v == end or dual_distance(cand, v) >= 3 for v in occ):
            return cand
    raise GadgetGeometryError(f"no free partner slot at wire end {end}")


def wire_between(partner_a: Node, partner_b: Node, path: Sequence[Node]) -> Gadget:
    """A wire whose link partners are the two given foreign link nodes."""
    nodes = list(path)
    if len(nodes) < 2 or len(nodes) % 2:
        raise GadgetGeometryError("wire needs an even number of nodes (>= 2)")
    for v in nodes:
        if colour_of(v) != Colour.RED:
            raise GadgetGeometryError(f"wire node {v} is not red")
    _check_chain(nodes, allow_guarded=True)
    if not matchable(nodes[0], partner_a) or not matchable(nodes[-1], partner_b):
        raise GadgetGeometryError("wire ends do not face their partners")
    links = (Link(nodes[0], "a", partner_a), Link(nodes[-1], "b", partner_b))
    return Gadget("wire", tuple(nodes), links)


# ---------------------------------------------------------------------------
# Shrunk-lattice helpers for the all-red templates.


def _red(cells: Iterable[tuple[int, int]], base: Node = (0, 0)) -> list[Node]:
    return [shrunk_to_dual(c, base) for c in cells]


def _shrunk_rot60(cell: tuple[int, int]) -> tuple[int, int]:
    a, b = cell
    return (-b, a + b)


def _rot_cells(cells, k: int):
    out = []
    for c in cells:
        for _ in range(k % 6):
            c = _shrunk_rot60(c)
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# XOR subgadget: an odd red triangle with three pendant links.
#   triangle z1=(0,0), z2=(1,0), z3=(0,1) (shrunk coords)
#   in1 - z1, out - z2, in2 - z3

_XOR_TRIANGLE = [(0, 0), (1, 0), (0, 1)]
_XOR_IN1 = (-1, 0)
_XOR_IN2 = (0, 2)
_XOR_OUT = (2, 0)
_XOR_IN1_PARTNER = (-2, 0)
_XOR_IN2_PARTNER = (0, 3)
_XOR_OUT_PARTNER = (3, 0)


def make_xor(anchor: Node = (0, 0)) -> Gadget:
    """Two-input XOR: in any exact cover, out = in1 xor in2."""
    cells = _XOR_TRIANGLE + [_XOR_IN1, _XOR_IN2, _XOR_OUT]
    nodes = _red(cells, anchor)
    links = (
        Link(shrunk_to_dual(_XOR_IN1, anchor), "in1", shrunk_to_dual(_XOR_IN1_PARTNER, anchor)),
        Link(shrunk_to_dual(_XOR_IN2, anchor), "in2", shrunk_to_dual(_XOR_IN2_PARTNER, anchor)),
        Link(shrunk_to_dual(_XOR_OUT, anchor), "out", shrunk_to_dual(_XOR_OUT_PARTNER, anchor)),
    )
    g = Gadget("xor", tuple(nodes), links)
    validate_gadget(g)
    return g


# ---------------------------------------------------------------------------
# Clause gadget.  Shrunk-coordinate graph (three-fold symmetric):
#   centre z; arms: z - b_i; b_i - a_i; b_i - l_i (input); a_i - g_i (GC link).
# Contract: exact cover iff >= 1 input TRUE; TRUE GC links = TRUE inputs - 1.

_CLAUSE_CELLS = {
    "z": (0, 0),
    "b1": (1, 0),
    "a1": (1, 1),
    "l1": (2, -1),
    "g1": (2, 1),
}


def _clause_layout(orientation: int) -> dict[str, tuple[int, int]]:
    cells = {}
    for i, rot in enumerate((0, 2, 4)):
        for name in ("b", "a", "l", "g"):
            c = _CLAUSE_CELLS[f"{name}1"]
            cells[f"{name}{i + 1}"] = _rot_cells([c], rot + orientation)[0]
    cells["z"] = (0, 0)
    return cells


def make_clause(anchor: Node = (0, 0), orientation: int = 0) -> Gadget:
    cells = _clause_layout(orientation)
    nodes = _red(cells.values(), anchor)
    links = []
    for i in (1, 2, 3):
        l = cells[f"l{i}"]
        gc = cells[f"g{i}"]
        b = cells[f"b{i}"]
        a = cells[f"a{i}"]
        l_part = (2 * l[0] - b[0], 2 * l[1] - b[1])  # away from the arm
        g_part = (2 * gc[0] - a[0], 2 * gc[1] - a[1])
        links.append(Link(shrunk_to_dual(l, anchor), f"in{i}", shrunk_to_dual(l_part, anchor)))
        links.append(Link(shrunk_to_dual(gc, anchor), f"gc{i}", shrunk_to_dual(g_part, anchor)))
    g = Gadget(
        "clause",
        tuple(nodes),
        tuple(links),
        groups={"inputs": ("in1", "in2", "in3"), "gc": ("gc1", "gc2", "gc3")},
    )
    validate_gadget(g)
    return g


# ---------------------------------------------------------------------------
# Verification harness.


def verify_gadget(
    g: Gadget,
    constraints: Optional[Mapping[str, LinkState]] = None,
    code: Code = BULK,
) -> set[tuple[tuple[str, bool], ...]]:
    """Enumerate achievable link-state assignments.

    For every completion of FREE links, a partner defect is placed at the
    partner slot of each TRUE link and the exact-cover solver decides
    achievability (with box budgets where declared).
    """
    constraints = dict(constraints or {})
    roles = [l.role for l in g.links]
    for r in constraints:
        if r not in roles:
            raise KeyError(f"unknown link role {r!r}")
    free = [r for r in roles if constraints.get(r, LinkState.FREE) == LinkState.FREE]
    achievable: set[tuple[tuple[str, bool], ...]] = set()
    for bits in itertools.product((False, True), repeat=len(free)):
        states = {
            r: constraints.get(r, LinkState.FREE) == LinkState.TRUE for r in roles
        }
        for r, v in zip(free, bits):
            states[r] = v
        defects = list(g.defects)
        for l in g.links:
            if states[l.role]:
                defects.append(l.partner)
        cover = exact_cover(Syndrome(defects), code, boxes=g.boxes)
        if cover is not None:
            achievable.add(tuple((r, states[r]) for r in roles))
    return achievable


def achievable_patterns(
    g: Gadget, roles: Sequence[str], code: Code = BULK
) -> set[tuple[bool, ...]]:
    """Achievable assignments projected onto the given roles (others FREE)."""
    out = set()
    for assignment in verify_gadget(g, None, code):
        d = dict(assignment)
        out.add(tuple(d[r] for r in roles))
    return out


@dataclass(frozen=True)
class LayoutViolation:
    kind: str
    nodes: tuple[Node, ...]
    detail: str


@dataclass(frozen=True)
class LayoutReport:
    ok: bool
    violations: tuple[LayoutViolation, ...]


def check_layout_rules(
    gadgets: Sequence[Gadget],
    partner_pairs: Sequence[tuple[Node, Node]],
) -> LayoutReport:
    """Inter-gadget spacing rules.

    Defects of different gadgets stay at distance >= 4 unless both are link
    nodes; every link node sees exactly one foreign node at distance < 4:
    its partner, at distance exactly 2.
    """
    violations: list[LayoutViolation] = []
    link_nodes: set[Node] = set()
    partner_of: dict[Node, Node] = {}
    for a, b in partner_pairs:
        partner_of[a] = b
        partner_of[b] = a
    for g in gadgets:
        for l in g.links:
            link_nodes.add(l.node)
    owner: dict[Node, int] = {}
    for gi, g in enumerate(gadgets):
        for d in g.defects:
            if d in owner:
                violations.append(
                    LayoutViolation("overlap", (d,), "two gadgets claim one node")
                )
            owner[d] = gi

    all_defects = sorted(owner)
    import numpy as np

    from ._accel import pairwise_distances

    arr = np.array(all_defects, dtype=np.int64)
    if len(all_defects) >= 2:
        dmat = pairwise_distances(arr)
        n = len(all_defects)
        close_count: dict[Node, list[Node]] = {d: [] for d in all_defects}
        for i in range(n):
            for j in range(i + 1, n):
                u, v = all_defects[i], all_defects[j]
                if owner[u] == owner[v]:
                    continue
                d = int(dmat[i, j])
                if d >= 4:
                    continue
                if not (u in link_nodes and v in link_nodes):
                    violations.append(
                        LayoutViolation(
                            "proximity", (u, v), f"foreign non-link nodes at distance {d}"
                        )
                    )
                    continue
                close_count[u].append(v)
                close_count[v].append(u)
        for l in sorted(link_nodes):
            if l not in partner_of:
                continue
            near = close_count.get(l, [])
            expected = partner_of[l]
            if near != [expected] and set(near) != {expected}:
                violations.append(
                    LayoutViolation(
                        "link-degree",
                        (l,),
                        f"link sees foreign nodes {sorted(near)}, expected only {expected}",
                    )
                )
            elif dual_distance(l, expected) != 2:
                violations.append(
                    LayoutViolation("partner-distance", (l, expected), "partner not at distance 2")
                )
    return LayoutReport(not violations, tuple(violations))


# ---------------------------------------------------------------------------
# Internal path routing on a colour's shrunk lattice (used to assemble the
# composite gadgets: duplicator joins, variable loops, crossing plumbing).

_SHRUNK_STEPS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def _placeable(u: Node, blocked: Iterable[Node], allow: frozenset[Node]) -> bool:
    for v in blocked:
        if v in allow:
            continue
        d = dual_distance(u, v)
        if d < 2:
            return False
        if d == 2 and matchable(u, v):
            return False
    return True


def route_colour_path(
    start_attach: Node,
    end_attach: Node,
    blocked: Sequence[Node],
    parity: int,
    bounds: tuple[int, int, int, int],
    max_len: int = 80,
) -> list[Node]:
    """A chain of same-colour nodes joining two attach points.

    The returned path p1..pm satisfies: p1 matchable to start_attach, pm
    matchable to end_attach, consecutive nodes matchable, m % 2 == parity,
    and every node keeps clearance from `blocked` (distance >= 2 and no
    unintended matchable adjacency).  Deterministic BFS, shortest first.
    """
    if colour_of(start_attach) != colour_of(end_attach):
        raise GadgetGeometryError("attach points differ in colour")
    from .lattice import dual_to_shrunk

    base = start_attach
    qmin, qmax, rmin, rmax = bounds
    blocked_t = tuple(blocked)
    allow_start = frozenset([start_attach])
    allow_end = frozenset([end_attach])
    allow_both = allow_start | allow_end

    def ok(node: Node, first: bool, last: bool) -> bool:
        if not (qmin <= node[0] <= qmax and rmin <= node[1] <= rmax):
            return False
        allow = allow_both if (first and last) else (allow_start if first else (allow_end if last else frozenset()))
        return _placeable(node, blocked_t, allow)

    from collections import deque

    def is_goal(node: Node, length: int, first: bool) -> bool:
        return (
            length % 2 == parity
            and matchable(node, end_attach)
            and ok(node, first, True)
        )

    # BFS over (node, length parity); parents for reconstruction.  Goal
    # nodes (adjacent to the end attach) need not be interior-placeable, so
    # they are tested at edge-expansion time.
    seen: dict[tuple[Node, int], Optional[tuple[Node, int]]] = {}
    dq = deque()
    goal_tail: Optional[tuple[Node, Optional[tuple[Node, int]]]] = None
    for step in MATCH_STEPS:
        cand = (start_attach[0] + step[0], start_attach[1] + step[1])
        if is_goal(cand, 1, True):
            goal_tail = (cand, None)
            break
        if ok(cand, True, False):
            key = (cand, 1)
            if key not in seen:
                seen[key] = None
                dq.append((cand, 1))
    while goal_tail is None and dq:
        node, length = dq.popleft()
        if length > max_len:
            break
        for step in MATCH_STEPS:
            nxt = (node[0] + step[0], node[1] + step[1])
            if is_goal(nxt, length + 1, False):
                goal_tail = (nxt, (node, length % 2))
                break
            key = (nxt, (length + 1) % 2)
            if key in seen:
                continue
            if not ok(nxt, False, False):
                continue
            seen[key] = (node, length % 2)
            dq.append((nxt, length + 1))
    if goal_tail is None:
        raise GadgetGeometryError(
            f"no {parity}-parity path from {start_attach} to {end_attach}"
        )
    path = [goal_tail[0]]
    cur = goal_tail[1]
    while cur is not None:
        path.append(cur[0])
        cur = seen[cur]
    path.reverse()
    _check_chain([start_attach] + path + [end_attach], allow_guarded=True)
    return path


# ---------------------------------------------------------------------------
# RGB-duplicator: pinwheel core {R,B,G} plus one string per colour.

_RGB_CORE = {"r": (0, 0), "b": (2, 0), "g": (0, 2)}
_RGB_STRINGS = {
    "r": [(1, -2), (2, -4)],   # south, vertical
    "g": [(-1, 4), (-2, 6)],   # north, vertical
    "b": [(3, 1), (4, 2)],     # north-east diagonal
}
_RGB_PARTNERS = {"r": (3, -6), "g": (-3, 8), "b": (5, 3)}


def make_rgb_duplicator(anchor: Node = (0, 0)) -> Gadget:
    """Three links, one per colour, all forced to one state ({TTT, FFF})."""
    dq, dr = anchor
    if (dq + 2 * dr) % 3:
        raise GadgetGeometryError("anchor must be a red node")
    mv = lambda n: (n[0] + dq, n[1] + dr)
    defects = [mv(c) for c in _RGB_CORE.values()]
    links = []
    for colour, string in _RGB_STRINGS.items():
        defects.extend(mv(n) for n in string)
        links.append(Link(mv(string[-1]), colour, mv(_RGB_PARTNERS[colour])))
    g = Gadget("rgb_duplicator", tuple(defects), tuple(links))
    validate_gadget(g)
    return g


# ---------------------------------------------------------------------------
# Duplicator and variable gadget: a row of pinwheel cores whose minority
# corners are chained by routed coloured paths.  An even-length join forces
# equal core states; an odd-length join inverts.

_CORE_PITCH = 15  # dual q-offset between adjacent cores (multiple of 3)


def _build_core_row(
    anchor: Node,
    n_cores: int,
    invert_after: Optional[int],
    link_prefix: Mapping[int, str],
) -> tuple[list[Node], list[Link], dict[str, Node]]:
    """Pinwheel cores in a row, red output strings pointing down.

    Each core carries the full three-string template; joins connect string
    ends, with blue joins in a mid band (r <= anchor+4) and green joins in
    a high band (r >= anchor+5), so they never contend for lanes.
    `invert_after` = index k such that the join between cores k and k+1 has
    odd length (the variable gadget's polarity flip); None for a plain
    duplicator.  Returns (defects, output links, spare stub ends).
    """
    aq, ar = anchor
    offsets = [(aq + _CORE_PITCH * k, ar) for k in range(n_cores)]
    defects: list[Node] = []
    links: list[Link] = []
    green_ends: list[Node] = []
    blue_ends: list[Node] = []
    for k, (oq, orr) in enumerate(offsets):
        mv = lambda n: (n[0] + oq, n[1] + orr)
        defects.extend(mv(c) for c in _RGB_CORE.values())
        for colour in ("r", "g", "b"):
            string = [mv(n) for n in _RGB_STRINGS[colour]]
            defects.extend(string)
            if colour == "r":
                links.append(Link(string[-1], link_prefix[k], mv(_RGB_PARTNERS["r"])))
            elif colour == "g":
                green_ends.append(string[-1])
            else:
                blue_ends.append(string[-1])
    reserved = [l.partner for l in links]
    qlo, qhi = aq - 14, aq + _CORE_PITCH * n_cores + 14
    # Blue joins first (mid band), then green joins (high band).
    join_order = [k for k in range(n_cores - 1) if k % 2 == 1] + [
        k for k in range(n_cores - 1) if k % 2 == 0
    ]
    for k in join_order:
        parity = 1 if invert_after == k else 0
        if k % 2 == 1:
            a, b = blue_ends[k], blue_ends[k + 1]
            bounds = (qlo, qhi, ar - 2, ar + 5)
        else:
            a, b = green_ends[k], green_ends[k + 1]
            bounds = (qlo, qhi, ar + 6, ar + 12)
        path = route_colour_path(a, b, defects + reserved, parity, bounds)
        defects.extend(path)
    spares = {"first": blue_ends[0], "last": blue_ends[-1]}
    if n_cores % 2 == 1:
        spares["last"] = green_ends[-1]
    if n_cores == 1:
        spares = {"first": blue_ends[0], "last": green_ends[0]}
    return defects, links, spares


def make_duplicator(anchor: Node = (0, 0), fanout: int = 2) -> Gadget:
    """Chained pinwheel cores: all red output links carry one state."""
    if fanout < 1:
        raise GadgetGeometryError("fanout must be >= 1")
    if fanout == 1:
        return make_rgb_duplicator(anchor)
    roles = {k: f"out{k}" for k in range(fanout)}
    defects, links, spares = _build_core_row(anchor, fanout, None, roles)
    # The two unused string ends become spare links (same forced state).
    for name, end in (("spare0", spares["first"]), ("spare1", spares["last"])):
        links.append(Link(end, name, _minority_partner(end)))
    g = Gadget(
        "duplicator",
        tuple(defects),
        tuple(links),
        groups={"outputs": tuple(roles.values())},
    )
    validate_gadget(g)
    return g


def _minority_partner(end: Node) -> Node:
    """Partner slot for a green/blue string end, pointing outward."""
    step = (-1, 2) if colour_of(end) == Colour.GREEN else (1, 1)
    return (end[0] + step[0], end[1] + step[1])


def _spare_stub(corner: Node, blocked: Sequence[Node]) -> tuple[list[Node], Node]:
    """A two-node stub hanging off a minority corner, plus its partner slot."""
    for s1_step in MATCH_STEPS:
        s1 = (corner[0] + s1_step[0], corner[1] + s1_step[1])
        if not _placeable(s1, blocked, frozenset([corner])):
            continue
        for s2_step in MATCH_STEPS:
            s2 = (s1[0] + s2_step[0], s1[1] + s2_step[1])
            if s2 == corner or dual_distance(s2, corner) < 3:
                continue
            if not _placeable(s2, blocked, frozenset([s1])):
                continue
            for p_step in MATCH_STEPS:
                p = (s2[0] + p_step[0], s2[1] + p_step[1])
                if dual_distance(p, s1) < 3 or dual_distance(p, corner) < 3:
                    continue
                if all(dual_distance(p, v) >= 3 for v in blocked):
                    return [s1, s2], p
    raise GadgetGeometryError(f"no room for spare stub at {corner}")


def make_variable(anchor: Node = (0, 0), n_a: int = 2, n_b: int = 2) -> Gadget:
    """Variable gadget: exactly two covers, A-outputs = X, B-outputs = not X.

    Built as one core row with an odd (inverting) join between the A and B
    blocks, plus an odd return loop joining the two end spare corners.
    """
    if n_a < 1 or n_b < 1:
        raise GadgetGeometryError("need at least one output per polarity")
    pad = (n_a + n_b) % 2  # even core count keeps both end spares blue
    n_b_eff = n_b + pad
    total = n_a + n_b_eff
    roles = {}
    for k in range(total):
        roles[k] = f"a{k}" if k < n_a else f"b{k - n_a}"
    defects, links, spares = _build_core_row(anchor, total, n_a - 1, roles)
    reserved = [l.partner for l in links]
    aq, ar = anchor
    bounds = (aq - 18, aq + _CORE_PITCH * total + 18, ar - 2, ar + 18)
    loop = route_colour_path(
        spares["first"], spares["last"], defects + reserved, 1, bounds
    )
    defects.extend(loop)
    g = Gadget(
        "variable",
        tuple(defects),
        tuple(links),
        groups={
            "A": tuple(roles[k] for k in range(n_a)),
            "B": tuple(roles[k] for k in range(n_a, total)),
        },
    )
    validate_gadget(g)
    return g


# ---------------------------------------------------------------------------
# Garbage collection: a chain of XOR subgadgets.  The first carry input has
# no partner (forced FALSE); the final output's partner is the optional pink
# node.  Achievable iff XOR(inputs) == pink.

_GC_PITCH = (4, 0)  # shrunk offset between consecutive XOR units


def make_garbage_collection(
    anchor: Node = (0, 0), n_inputs: int = 1, pink: bool = False
) -> Gadget:
    if n_inputs < 1:
        raise GadgetGeometryError("need at least one input")
    aq, ar = anchor
    defects: list[Node] = []
    links: list[Link] = []
    for k in range(n_inputs):
        off = (_GC_PITCH[0] * k, _GC_PITCH[1] * k)
        mv = lambda c: shrunk_to_dual((c[0] + off[0], c[1] + off[1]), (aq, ar))
        defects.extend(mv(c) for c in _XOR_TRIANGLE)
        defects.append(mv(_XOR_IN1))
        defects.append(mv(_XOR_OUT))
        in2 = mv(_XOR_IN2)
        defects.append(in2)
        links.append(Link(in2, f"in{k}", mv(_XOR_IN2_PARTNER)))
    last_out = shrunk_to_dual(
        (_XOR_OUT[0] + _GC_PITCH[0] * (n_inputs - 1), _XOR_OUT[1]), (aq, ar)
    )
    if pink:
        pink_node = shrunk_to_dual(
            (_XOR_OUT[0] + _GC_PITCH[0] * (n_inputs - 1) + 1, _XOR_OUT[1]), (aq, ar)
        )
        defects.append(pink_node)
    g = Gadget(
        "garbage_collection",
        tuple(defects),
        tuple(links),
        groups={"inputs": tuple(f"in{k}" for k in range(n_inputs))},
    )
    validate_gadget(g)
    return g
