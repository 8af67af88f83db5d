"""Split circles, tangle flips, and tightening.

A split circle is described by the set of curve vertices it encloses. It is
a simple closed curve exactly when the enclosed vertices and the remaining
vertices each induce a connected piece of the curve; it then crosses the
curve once on every edge between the two sets. Crossings are listed as the
interior darts of those edges, in cyclic order around the circle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .curve import (
    HOMOTOPY,
    CurveMove,
    Multicurve,
    apply_move,
    components,
    enumerate_moves,
    opposite,
    rot,
    strand_next,
)
from .errors import (
    BadBoundaryCount,
    BoundaryForbidden,
    BudgetExceeded,
    EmptyInterior,
    NotApplicable,
    NotSimpleRegion,
    TooManyStrands,
)
from .maps import canonical_code_arrays

INTERIOR = "interior"
EXTERIOR = "exterior"


@dataclass(frozen=True)
class SplitCircle:
    crossed: tuple  # interior darts of crossed edges, cyclic order
    interior: frozenset

    def complement(self, c: Multicurve) -> "SplitCircle":
        return find_circle(c, set(range(c.num_vertices)) - self.interior)


@dataclass(frozen=True)
class Tangle:
    side: str
    strands: tuple  # each strand is a tuple of darts from one port to another


def _induced_connected(c, verts) -> bool:
    verts = set(verts)
    if not verts:
        return True
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for s in range(4):
            w = int(c.alpha[4 * v + s]) // 4
            if w in verts and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def find_circle(c: Multicurve, interior) -> SplitCircle:
    """The circle around ``interior``; it must cross the curve 2 or 4 times."""
    inside = frozenset(int(v) for v in interior)
    if not inside:
        raise EmptyInterior("interior vertex set is empty")
    if not inside <= set(range(c.num_vertices)):
        raise NotSimpleRegion("interior names a vertex that does not exist")
    ports = [d for v in sorted(inside) for d in range(4 * v, 4 * v + 4) if int(c.alpha[d]) // 4 not in inside]
    if len(ports) not in (2, 4):
        raise BadBoundaryCount(f"region is crossed {len(ports)} times; need 2 or 4")
    outside = set(range(c.num_vertices)) - inside
    if not _induced_connected(c, inside) or not _induced_connected(c, outside):
        raise NotSimpleRegion("interior and exterior must both be connected")
    port_set = set(ports)
    order = [ports[0]]
    p = ports[0]
    while True:
        # walk the face right of p through the exterior until the curve re-enters
        q = c.phi(p)
        while not (q // 4 not in inside and int(c.alpha[q]) // 4 in inside):
            q = c.phi(q)
        p = int(c.alpha[q])
        if p == order[0]:
            break
        if p not in port_set or p in order:
            raise NotSimpleRegion("crossings do not form a single circle")
        order.append(p)
    if len(order) != len(ports):
        raise NotSimpleRegion("crossings do not form a single circle")
    return SplitCircle(tuple(order), inside)


def enumerate_circles(c: Multicurve, max_crossings: int = 4, max_vertices: int = 14):
    """All split circles crossing at most ``max_crossings`` times.

    A circle and its complement describe the same curve on the sphere, so
    only interiors avoiding vertex 0 are listed unless the curve lies in an
    annulus, where the flipped side matters.
    """
    n = c.num_vertices
    if n > max_vertices:
        raise BudgetExceeded(f"{n} vertices is too many for exhaustive circle search")
    annulus = c.boundary is not None
    out = []
    verts = range(n) if annulus else range(1, n)
    for k in range(1, n):
        for sub in combinations(verts, k):
            cut = sum(1 for v in sub for s in range(4) if int(c.alpha[4 * v + s]) // 4 not in sub)
            if cut not in (2, 4) or cut > max_crossings:
                continue
            try:
                out.append(find_circle(c, sub))
            except (BadBoundaryCount, NotSimpleRegion):
                continue
    return out


def tangle(c: Multicurve, s: SplitCircle, side: str = INTERIOR) -> Tangle:
    """Strands of the tangle on one side of the circle."""
    if side == INTERIOR:
        ports = list(s.crossed)
    else:
        ports = [int(c.alpha[p]) for p in s.crossed]
    port_set = set(ports)
    strands = []
    seen = set()
    for p in ports:
        if p in seen:
            continue
        path = [p]
        d = opposite(p)
        while d not in port_set:
            path.append(d)
            d = strand_next(c, d)
        path.append(d)
        seen.update((p, d))
        strands.append(tuple(path))
    if len(strands) > 2:
        raise TooManyStrands(f"tangle has {len(strands)} strands")
    return Tangle(side, tuple(strands))


def _strand_vertices(strand) -> list[int]:
    return [d // 4 for d in strand[:-1]]


def _strands_from(c: Multicurve, anchors) -> list[list[int]]:
    """Vertex sequences of the strands entering the far side at ``anchors``."""
    aset = set(anchors)
    done = set()
    out = []
    for a in anchors:
        if a in done:
            continue
        verts = []
        d = int(c.alpha[a])
        while d not in aset:
            verts.append(d // 4)
            d = int(c.alpha[opposite(d)])
        done.update((a, d))
        out.append(verts)
    return out


def is_tight(c: Multicurve, s: SplitCircle, side: str = INTERIOR) -> bool:
    """Each strand is simple and each pair of strands crosses at most once."""
    t = tangle(c, s, side)
    inside = s.interior if side == INTERIOR else frozenset(range(c.num_vertices)) - s.interior
    vsets = []
    covered = set()
    for st in t.strands:
        vs = _strand_vertices(st)
        if len(vs) != len(set(vs)):
            return False
        vsets.append(set(vs))
        covered.update(vs)
    if covered != set(inside):
        return False  # closed curves inside the disk
    for a, b in combinations(vsets, 2):
        if len(a & b) > 1:
            return False
    return True


def flip(c: Multicurve, s: SplitCircle, axis: int | None = None) -> Multicurve:
    """Reflect the disk inside ``s``.

    The crossing at position ``i`` moves to position ``axis - i``; ``axis`` is
    odd so that no endpoint stays put. With 4 crossings both odd axes are
    legal; by default the first one keeping a single curve single is used.
    """
    k = len(s.crossed)
    if k not in (2, 4):
        raise TooManyStrands(f"{k} crossings; flips need 2 or 4")
    n = c.num_darts
    inside = s.interior
    if c.boundary is not None:
        fo = c.face_of
        for b in c.boundary:
            f = int(fo[b])
            if all(d // 4 in inside for d in range(n) if int(fo[d]) == f):
                raise BoundaryForbidden("the flipped disk contains a boundary face")
    if axis is None:
        before, _ = components(c)
        last = None
        for ax in (1, 3) if k == 4 else (1,):
            last = flip(c, s, ax)
            if components(last)[0] == before:
                return last
        return last
    if axis % 2 == 0:
        raise NotApplicable("flip axis must be odd")
    d = np.arange(n)
    rho = d.copy()
    for v in inside:
        for t in range(4):
            rho[4 * v + t] = 4 * v + (-t) % 4
    alpha = c.alpha.copy()
    outer = [int(c.alpha[p]) for p in s.crossed]
    port_set = set(s.crossed)
    for v in inside:
        for t in range(4):
            x = 4 * v + t
            if x in port_set:
                continue
            alpha[rho[x]] = rho[c.alpha[x]]
    for i, p in enumerate(s.crossed):
        j = (axis - i) % k
        alpha[rho[p]] = outer[j]
        alpha[outer[j]] = rho[p]
    boundary = None
    if c.boundary is not None:
        fo = c.face_of
        reps = []
        for b in c.boundary:
            f = int(fo[b])
            rep = next(x for x in range(n) if int(fo[x]) == f and x // 4 not in inside)
            reps.append(rep)
        boundary = tuple(reps)
    return Multicurve(alpha, boundary)


def _move_footprint(c, m):
    """Vertices a reducing move touches and the number of vertices it creates."""
    d = m.site[0]
    if m.kind in ("H1down", "M1down"):
        return {d // 4}, 0
    if m.kind in ("H2down", "M21"):
        return {d // 4, c.phi(d) // 4}, 0 if m.kind == "H2down" else 1
    if m.kind in ("H33", "M33"):
        return {d // 4, c.phi(d) // 4, c.phi(c.phi(d)) // 4}, 3
    raise NotApplicable(f"{m.kind} has no local footprint")


def _after(c, removed, created, inside):
    kept = [v for v in range(c.num_vertices) if v not in removed]
    rank = {v: i for i, v in enumerate(kept)}
    new = {rank[v] for v in inside if v in rank}
    new.update(range(len(kept), len(kept) + created))
    return frozenset(new)


def tighten(c: Multicurve, s: SplitCircle, side: str = INTERIOR, budget: int = 20000):
    """Tighten the tangle on one side by homotopy moves made inside it.

    Breadth-first over 1->0, 2->0 and 3->3 moves whose vertices all lie on
    the chosen side. The circle is carried along by the darts where it
    meets the untouched side, so the tightened side may fall apart into
    pieces. Returns ``(curve, circle)`` for the first tight state. The
    circle is None when the tightened side is empty or has a strand
    without vertices; the circle then crosses one edge twice, which a
    vertex set cannot describe.
    """
    if len(s.crossed) > 4:
        raise TooManyStrands("tighten handles at most two strands")
    everything = frozenset(range(c.num_vertices))
    side_set = s.interior if side == INTERIOR else everything - s.interior
    # darts on the fixed side where the curve enters the chosen side
    anchors = tuple(int(c.alpha[p]) for p in s.crossed) if side == INTERIOR else tuple(s.crossed)

    def circle_for(cur, verts, anch):
        inner = verts if side == INTERIOR else frozenset(range(cur.num_vertices)) - verts
        aset = set(anch)
        if not inner or not verts or any(int(cur.alpha[a]) in aset for a in anch):
            return None
        crossed = tuple(int(cur.alpha[a]) for a in anch) if side == INTERIOR else anch
        return SplitCircle(crossed, inner)

    def tight(cur, verts, anch):
        strands = _strands_from(cur, anch)
        covered = set()
        for st in strands:
            if len(st) != len(set(st)):
                return False
            covered.update(st)
        if covered != set(verts):
            return False
        return all(len(set(a) & set(b)) <= 1 for a, b in combinations(strands, 2))

    def key(cur, verts):
        lab = np.zeros(cur.num_darts, dtype=np.int64)
        for v in verts:
            lab[4 * v:4 * v + 4] = 1
        return canonical_code_arrays(cur.emap, (lab, lab), chiral=True)

    queue = deque([(c, side_set, anchors)])
    seen = {key(c, side_set)}
    while queue:
        cur, verts, anch = queue.popleft()
        if tight(cur, verts, anch):
            return cur, circle_for(cur, verts, anch)
        for m in enumerate_moves(cur, HOMOTOPY):
            removed, created = _move_footprint(cur, m)
            if not removed <= verts:
                continue
            try:
                nxt = apply_move(cur, m)
            except NotApplicable:
                continue
            nverts = _after(cur, removed, created, verts)
            k = key(nxt, nverts)
            if k in seen:
                continue
            seen.add(k)
            if len(seen) > budget:
                raise BudgetExceeded(f"tightening explored more than {budget} states")
            rank = {v: i for i, v in enumerate(v for v in range(cur.num_vertices) if v not in removed)}
            nanch = tuple(4 * rank[a // 4] + a % 4 for a in anch)
            queue.append((nxt, nverts, nanch))
    raise BudgetExceeded("no tight state reachable")


__all__ = [
    "INTERIOR",
    "EXTERIOR",
    "SplitCircle",
    "Tangle",
    "find_circle",
    "enumerate_circles",
    "tangle",
    "is_tight",
    "flip",
    "tighten",
    "CurveMove",
    "rot",
]
