"""Exact solvers used as ground truth throughout the package.

* exact_cover / enumerate_exact_covers: error sets with |E| = |S| (+ an
  optional slack), built as one face per defect with constraint
  propagation.  Defects at distance one (declared via syndrome boxes) may
  share a face; every shared face is compensated by a defect-free face, so
  |E| = |S| bookkeeping is preserved exactly.
* min_weight_decode: iterative-deepening search over bounded regions.
* dpll_sat: independent SAT oracle for the reduction's contracts.

All solvers are deterministic: canonical orderings, no randomness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .lattice import (
    BULK,
    Code,
    FaceT,
    Node,
    dual_distance,
    face_vertices,
    faces_incident,
    faces_of_node,
)
from .syndrome import ErrorSet, Syndrome, generate_syndrome, is_separated


@dataclass(frozen=True)
class Box:
    """A declared non-separated region with a certified error budget."""

    region: frozenset[Node]
    budget: int


@dataclass(frozen=True)
class DecodeResult:
    weight: int
    witness: ErrorSet
    logical_flip: int

    @staticmethod
    def from_witness(witness: ErrorSet) -> "DecodeResult":
        return DecodeResult(len(witness), witness, len(witness) % 2)


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Exact cover.


class _CoverSearch:
    """One face per defect; distance-one pairs inside declared boxes may
    merge onto a shared face, each merge (and each unit of slack) paying for
    one defect-free face near the free zone."""

    def __init__(
        self,
        s: Syndrome,
        code: Code,
        boxes: Sequence[Box] = (),
        slack: int = 0,
        window: Sequence[Node] = (),
        preset: Sequence[FaceT] = (),
        free_radius: int = 3,
    ):
        self.code = code
        self.slack = slack
        self.defects: list[Node] = list(s.defects)
        self.defect_set = set(self.defects)
        index = {d: i for i, d in enumerate(self.defects)}

        box_nodes: set[Node] = set()
        for b in boxes:
            box_nodes |= set(b.region)

        # Distance-one defect pairs must sit inside one declared box.
        self.pair_of: dict[int, int] = {}
        n = len(self.defects)
        for i in range(n):
            for j in range(i + 1, n):
                if dual_distance(self.defects[i], self.defects[j]) < 2:
                    u, v = self.defects[i], self.defects[j]
                    if not any(u in b.region and v in b.region for b in boxes):
                        raise PreconditionError(f"defects {u}, {v} at distance one")
                    if i in self.pair_of or j in self.pair_of:
                        raise PreconditionError("defect in two distance-one pairs")
                    self.pair_of[i] = j
                    self.pair_of[j] = i

        self.faces: list[FaceT] = []
        self.face_ids: dict[FaceT, int] = {}
        self.domains: list[list[int]] = []
        for d in self.defects:
            dom = sorted(self._face_id(f) for f in faces_incident(d, code))
            self.domains.append(dom)

        # Free-face zone: near merged pairs always; near every defect (and
        # the window) when slack is granted.
        zone: set[Node] = set()
        for i in self.pair_of:
            zone.add(self.defects[i])
        if slack > 0:
            zone |= self.defect_set
            zone |= set(window)
        free_faces: set[FaceT] = set()
        for a in sorted(zone):
            for dq in range(-free_radius - 1, free_radius + 2):
                for dr in range(-free_radius - 1, free_radius + 2):
                    for o in (0, 1):
                        f = (a[0] + dq, a[1] + dr, o)
                        if not self.code.face_valid(f):
                            continue
                        vs = face_vertices(f)
                        if any(v in self.defect_set for v in vs):
                            continue
                        if any(dual_distance(v, a) <= free_radius for v in vs):
                            free_faces.add(f)
        self.free_ids = sorted(self._face_id(f) for f in free_faces)

        self.preset_ids = [self._face_id(f) for f in preset]

        self.face_verts: list[tuple[Node, ...]] = [
            tuple(v for v in face_vertices(f) if code.contains(v)) for f in self.faces
        ]
        self.free_by_node: dict[Node, list[int]] = {}
        for fid in self.free_ids:
            for v in self.face_verts[fid]:
                self.free_by_node.setdefault(v, []).append(fid)

    def _face_id(self, f: FaceT) -> int:
        fid = self.face_ids.get(f)
        if fid is None:
            fid = len(self.faces)
            self.face_ids[f] = fid
            self.faces.append(f)
        return fid

    # -- search state ---------------------------------------------------

    def run(self, limit: int, on_solution: Callable[[list[int]], None]) -> bool:
        self.parity: dict[Node, int] = {}
        self.face_count: dict[int, int] = {}
        self.assigned: list[Optional[int]] = [None] * len(self.defects)
        self.active = [list(dom) for dom in self.domains]
        self.n_unassigned = len(self.defects)
        self.merged = 0
        self.free_used: list[int] = []
        self.fixers: dict[Node, set[int]] = {}
        for i, dom in enumerate(self.domains):
            for fid in dom:
                for v in self.face_verts[fid]:
                    self.fixers.setdefault(v, set()).add(i)
        self.emitted = 0
        self.limit = limit
        self.truncated = False
        self.on_solution = on_solution
        self.seen: set[tuple[int, ...]] = set()

        trail: list = []
        queue: list[Node] = []
        for fid in self.preset_ids:
            self.face_count[fid] = self.face_count.get(fid, 0) + 1
            self._toggle_face(fid, trail, queue)
        ok = self._propagate(queue, trail)
        if ok:
            self._dfs()
        self._undo(trail)
        return self.truncated

    def _slots_left(self) -> int:
        return self.merged + self.slack - len(self.free_used)

    def _toggle_face(self, fid: int, trail: list, queue: list[Node]) -> None:
        for v in self.face_verts[fid]:
            self.parity[v] = self.parity.get(v, 0) ^ 1
            trail.append((0, v, None))
            queue.append(v)

    def _undo(self, trail: list) -> None:
        for kind, a, b in reversed(trail):
            if kind == 0:
                self.parity[a] ^= 1
            elif kind == 1:
                self.fixers[b].add(a)
            elif kind == 2:
                self.active[a] = b
            elif kind == 3:
                self.assigned[a] = None
                self.n_unassigned += 1
            elif kind == 4:
                self.face_count[a] -= 1
            elif kind == 5:
                self.merged -= 1
            elif kind == 6:
                self.free_used.pop()

    def _assign(self, i: int, fid: int, trail: list, queue: list[Node]) -> bool:
        self.assigned[i] = fid
        self.n_unassigned -= 1
        trail.append((3, i, None))
        for g in self.active[i]:
            for v in self.face_verts[g]:
                fx = self.fixers.get(v)
                if fx and i in fx:
                    fx.discard(i)
                    trail.append((1, i, v))
                    queue.append(v)
        cnt = self.face_count.get(fid, 0)
        self.face_count[fid] = cnt + 1
        trail.append((4, fid, None))
        if cnt == 0:
            self._toggle_face(fid, trail, queue)
        else:
            # Partner already holds this face: a merge. The face stays in
            # the error set once; one free-face slot opens.
            j = self.pair_of.get(i)
            if j is None or self.assigned[j] != fid:
                return False
            self.merged += 1
            trail.append((5, None, None))
        return True

    def _restrict(self, i: int, keep, trail: list, queue: list[Node]) -> bool:
        old = self.active[i]
        new = [fid for fid in old if keep(fid)]
        if len(new) == len(old):
            if len(new) == 1 and self.assigned[i] is None:
                return self._assign(i, new[0], trail, queue)
            return True
        trail.append((2, i, old))
        self.active[i] = new
        if not new:
            return False
        lost: set[Node] = set()
        for fid in old:
            for v in self.face_verts[fid]:
                lost.add(v)
        for fid in new:
            for v in self.face_verts[fid]:
                lost.discard(v)
        for v in lost:
            fx = self.fixers.get(v)
            if fx and i in fx:
                fx.discard(i)
                trail.append((1, i, v))
                queue.append(v)
        if len(new) == 1 and self.assigned[i] is None:
            if not self._assign(i, new[0], trail, queue):
                return False
        return True

    def _want(self, v: Node) -> int:
        return 1 if v in self.defect_set else 0

    def _free_fixable(self, v: Node) -> bool:
        return bool(self.free_by_node.get(v))

    def _propagate(self, queue: list[Node], trail: list) -> bool:
        """Returns False on contradiction. Leaves `stuck` nodes (fixable
        only by a free face) for the DFS to branch on."""
        while queue:
            v = queue.pop()
            p = self.parity.get(v, 0)
            want = self._want(v)
            fx = self.fixers.get(v)
            n_fx = len(fx) if fx else 0
            freeable = self._free_fixable(v) and (
                self._slots_left() > 0 or any(self.assigned[k] is None for k in self.pair_of)
            )
            if p != want:
                if n_fx == 0 and not freeable:
                    return False
                if n_fx == 1 and not freeable:
                    (i,) = tuple(fx)
                    if self.assigned[i] is None:
                        # v needs one more toggle: i must pick a fresh face
                        # containing v (re-picking a chosen face is a merge
                        # and does not toggle).
                        if not self._restrict(
                            i,
                            lambda fid: v in self.face_verts[fid]
                            and not self.face_count.get(fid, 0),
                            trail,
                            queue,
                        ):
                            return False
            else:
                if n_fx == 1 and not freeable:
                    (i,) = tuple(fx)
                    if self.assigned[i] is None:
                        # v must not be toggled again: allow faces avoiding v
                        # and merges onto already-chosen faces through v.
                        if not self._restrict(
                            i,
                            lambda fid: v not in self.face_verts[fid]
                            or self.face_count.get(fid, 0) > 0,
                            trail,
                            queue,
                        ):
                            return False
        return True

    def _find_stuck(self) -> Optional[Node]:
        best: Optional[Node] = None
        for v, p in self.parity.items():
            if p != self._want(v):
                fx = self.fixers.get(v)
                if fx and len(fx) > 0:
                    continue
                if best is None or v < best:
                    best = v
        return best

    def _dfs(self) -> None:
        if self.emitted >= self.limit:
            return
        stuck = self._find_stuck()
        if stuck is not None:
            if self._slots_left() <= 0 and not any(
                self.assigned[k] is None for k in self.pair_of
            ):
                return
            if self._slots_left() > 0:
                for fid in self.free_by_node.get(stuck, ()):
                    if self.face_count.get(fid, 0):
                        continue
                    trail: list = []
                    queue: list[Node] = []
                    self.face_count[fid] = 1
                    trail.append((4, fid, None))
                    self.free_used.append(fid)
                    trail.append((6, None, None))
                    self._toggle_face(fid, trail, queue)
                    if self._propagate(queue, trail):
                        self._dfs()
                    self._undo(trail)
                    if self.emitted >= self.limit:
                        return
            # A pending pair merge may still open a slot; fall through to
            # defect branching only if an unassigned pair defect remains.
            if not any(self.assigned[k] is None for k in self.pair_of):
                return
        if self.n_unassigned == 0:
            if self._slots_left() != 0:
                return
            if self._find_stuck() is not None:
                return
            for v, p in self.parity.items():
                if p != self._want(v):
                    return
            sol = sorted(fid for fid, c in self.face_count.items() if c)
            key = tuple(sol)
            if key in self.seen:
                return
            self.seen.add(key)
            self.emitted += 1
            self.on_solution(sol)
            if self.emitted >= self.limit:
                self.truncated = True
            return
        # Branch on the most constrained unassigned defect; prefer pair
        # defects so merge slots resolve early.
        best, best_i = None, -1
        for i in range(len(self.defects)):
            if self.assigned[i] is None:
                key = (len(self.active[i]), 0 if i in self.pair_of else 1, i)
                if best is None or key < best:
                    best, best_i = key, i
        for fid in list(self.active[best_i]):
            trail = []
            queue: list[Node] = []
            ok = self._restrict(best_i, lambda g: g == fid, trail, queue)
            if ok:
                ok = self._propagate(queue, trail)
            if ok:
                self._dfs()
            self._undo(trail)
            if self.emitted >= self.limit:
                return


def _solve_cover(
    s: Syndrome,
    code: Code,
    boxes: Sequence[Box],
    limit: int,
    slack: int = 0,
    window: Sequence[Node] = (),
    preset: Sequence[FaceT] = (),
) -> tuple[list[ErrorSet], bool]:
    search = _CoverSearch(s, code, boxes, slack=slack, window=window, preset=preset)
    out: list[ErrorSet] = []

    def emit(face_ids: list[int]) -> None:
        witness = ErrorSet(search.faces[fid] for fid in face_ids)
        got = generate_syndrome(witness, code)
        assert got == Syndrome(s.defects), "witness does not regenerate syndrome"
        assert len(witness) == len(s.defects) + slack + len(preset)
        out.append(witness)

    truncated = search.run(limit, emit)
    out.sort(key=lambda e: e.faces)
    return out, truncated


def exact_cover(
    s: Syndrome,
    code: Code = BULK,
    boxes: Sequence[Box] = (),
    slack: int = 0,
    window: Sequence[Node] = (),
) -> Optional[ErrorSet]:
    """An error set with |E| = |S| + slack generating s, or None.

    With slack 0 this is the exact-cover decision: one error per defect,
    except that distance-one pairs inside declared boxes may share a face,
    compensated by a defect-free face (|E| = |S| is preserved).
    """
    if not boxes and not is_separated(s):
        raise PreconditionError("syndrome is not separated")
    sols, _ = _solve_cover(s, code, boxes, limit=1, slack=slack, window=window)
    return sols[0] if sols else None


def exact_cover_with_preset(
    s: Syndrome,
    code: Code,
    boxes: Sequence[Box],
    preset: Sequence[FaceT],
) -> Optional[ErrorSet]:
    """Exact cover of s given that `preset` faces are already in the error
    set (used by the weight-(|S|+1) refutation sweep)."""
    sols, _ = _solve_cover(s, code, boxes, limit=1, preset=preset)
    return sols[0] if sols else None


def enumerate_exact_covers(
    s: Syndrome,
    code: Code = BULK,
    limit: int = 10000,
    boxes: Sequence[Box] = (),
) -> tuple[list[ErrorSet], bool]:
    """All exact covers up to `limit`; second value flags truncation."""
    if not boxes and not is_separated(s):
        raise PreconditionError("syndrome is not separated")
    return _solve_cover(s, code, boxes, limit=limit)


# ---------------------------------------------------------------------------
# Bounded minimum-weight decoding.


def _candidate_faces(
    s: Syndrome,
    code: Code,
    region_radius: int,
    boundary_window: Sequence[Node] = (),
) -> list[FaceT]:
    anchors = list(s.defects) + list(boundary_window)
    seen: set[FaceT] = set()
    for a in anchors:
        q0, r0 = a
        rad = region_radius
        for dq in range(-rad - 1, rad + 2):
            for dr in range(-rad - 1, rad + 2):
                for o in (0, 1):
                    f = (q0 + dq, r0 + dr, o)
                    if f in seen:
                        continue
                    if any(dual_distance(v, a) <= rad for v in face_vertices(f)):
                        if code.face_valid(f):
                            seen.add(f)
    return sorted(seen)


def min_weight_decode(
    s: Syndrome,
    code: Code = BULK,
    cap: int = 10,
    region_radius: int = 2,
    boundary_window: Sequence[Node] = (),
    box_limit: Optional[tuple[Sequence[Node], int]] = None,
    collect: Optional[list] = None,
) -> Optional[DecodeResult]:
    """Minimum-weight witness within `cap`, or None.

    Candidate errors are faces within `region_radius` of a defect (or of a
    boundary-window node).  `box_limit = (region, k)` restricts covers to
    at most k errors meeting the region (used to refute box-lemma
    violations).  `collect`, if given, gathers every witness at the minimal
    weight.
    """
    if cap < 0:
        raise PreconditionError("cap must be nonnegative")
    cands = _candidate_faces(s, code, region_radius, boundary_window)
    verts = [tuple(v for v in face_vertices(f) if code.contains(v)) for f in cands]
    by_node: dict[Node, list[int]] = {}
    for i, vs in enumerate(verts):
        for v in vs:
            by_node.setdefault(v, []).append(i)
    box_region: frozenset[Node] = frozenset(box_limit[0]) if box_limit else frozenset()
    box_k = box_limit[1] if box_limit else 0
    meets_box = [any(v in box_region for v in vs) for vs in verts]

    parity: dict[Node, int] = {d: 1 for d in s.defects}
    chosen: list[int] = []
    in_set = [False] * len(cands)
    found: list[list[int]] = []
    find_all = collect is not None

    def dfs(remaining: int, box_used: int) -> bool:
        odd = sorted(v for v, p in parity.items() if p == 1)
        if not odd:
            found.append(sorted(chosen))
            return not find_all
        if remaining == 0:
            return False
        if (len(odd) + 2) // 3 > remaining:
            return False
        v = odd[0]
        for fid in by_node.get(v, ()):
            if in_set[fid]:
                continue
            if box_limit and meets_box[fid] and box_used >= box_k:
                continue
            in_set[fid] = True
            chosen.append(fid)
            for u in verts[fid]:
                parity[u] = parity.get(u, 0) ^ 1
            done = dfs(remaining - 1, box_used + (1 if meets_box[fid] else 0))
            for u in verts[fid]:
                parity[u] ^= 1
            chosen.pop()
            in_set[fid] = False
            if done:
                return True
        return False

    for w in range(0, cap + 1):
        found.clear()
        dfs(w, 0)
        if found:
            sols = sorted(ErrorSet(cands[i] for i in ids) for ids in found)
            if collect is not None:
                seen = set()
                for e in sols:
                    if e not in seen:
                        seen.add(e)
                        collect.append(e)
            best = sols[0]
            got = generate_syndrome(best, code)
            assert got == Syndrome(s.defects), "witness does not regenerate syndrome"
            return DecodeResult.from_witness(best)
    return None


# ---------------------------------------------------------------------------
# DPLL with unit propagation (independent oracle for the reduction).


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for cl in self.clauses:
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")


Assignment = dict[int, bool]


def evaluate(f: CnfFormula, assignment: Assignment) -> bool:
    for cl in f.clauses:
        if not any(assignment.get(abs(l), False) == (l > 0) for l in cl):
            return False
    return True


def dpll_sat(f: CnfFormula) -> Optional[Assignment]:
    """A satisfying assignment (verified before returning) or None."""

    def rec(clauses: list[list[int]], partial: Assignment) -> Optional[Assignment]:
        while True:
            unit = None
            for cl in clauses:
                if len(cl) == 1:
                    unit = cl[0]
                    break
            if unit is None:
                break
            partial = dict(partial)
            partial[abs(unit)] = unit > 0
            clauses = _reduce(clauses, unit)
            if clauses is None:
                return None
        if not clauses:
            return partial
        lit = min(min(abs(l) for l in cl) for cl in clauses)
        for value in (True, False):
            chosen = lit if value else -lit
            nxt = _reduce(clauses, chosen)
            if nxt is not None:
                sub = dict(partial)
                sub[lit] = value
                res = rec(nxt, sub)
                if res is not None:
                    return res
        return None

    result = rec([list(cl) for cl in f.clauses], {})
    if result is None:
        return None
    full = {v: result.get(v, False) for v in range(1, f.num_vars + 1)}
    assert evaluate(f, full), "dpll produced a non-satisfying assignment"
    return full


def _reduce(clauses: list[list[int]], lit: int) -> Optional[list[list[int]]]:
    out = []
    for cl in clauses:
        if lit in cl:
            continue
        nc = [l for l in cl if l != -lit]
        if not nc:
            return None
        out.append(nc)
    return out


def brute_force_sat(f: CnfFormula) -> Optional[Assignment]:
    """Truth-table oracle; only sensible for small formulas."""
    n = f.num_vars
    for bits in range(1 << n):
        assignment = {v: bool(bits >> (v - 1) & 1) for v in range(1, n + 1)}
        if evaluate(f, assignment):
            return assignment
    return None
