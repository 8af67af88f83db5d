"""Plane graphs with zero or two terminals and their electrical moves.

Internally every structural change goes through :class:`_Rot`, a mutable
rotation-list view (vertex -> darts in ccw order, plus ``alpha``). Darts keep
their ids through an operation and are compacted, in increasing order, when
the result is frozen back into an :class:`EmbeddedMap`.

Medial slots of the edge with least dart ``d`` (``a = alpha(d)``), seen from
the midpoint of the edge drawn left to right::

      (d, sd)  1   0  (s^-1 a, a)
                 X
    (s^-1 d, d) 2   3  (a, sa)

Each slot heads to the named corner; smoothing ``A`` (slots 0-1, 2-3)
contracts the edge and ``B`` (slots 1-2, 3-0) deletes it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .curve import Multicurve, components, smooth
from .errors import (
    ContractLoop,
    EmptyGraph,
    EmptyInterior,
    InvalidMap,
    InvalidWedge,
    NonPlanarMoveRejected,
    NotACutVertex,
    NotApplicable,
    NotASplitPair,
    ParseError,
    ResultDisconnected,
    TerminalViolation,
)
from .maps import EmbeddedMap, canonical_code_arrays, find_isomorphism, parse_sections, serialize


class Planarity(enum.Enum):
    FACIAL = "Facial"
    PLANAR_NON_FACIAL = "PlanarNonFacial"
    NON_PLANAR = "NonPlanar"

    def __str__(self):
        return self.value


MOVE_KINDS = (
    "LeafContract",
    "LoopDelete",
    "SeriesReduce",
    "ParallelReduce",
    "YtoDelta",
    "DeltaToY",
    "TerminalLeafContract",
)


@dataclass(frozen=True)
class ElecMove:
    kind: str
    site: tuple
    face: int | None = field(default=None, compare=False)

    def __str__(self):
        return " ".join([self.kind] + [str(s) for s in self.site])


class PlaneGraph:
    """Connected plane graph; ``terminals`` is a sorted tuple of 0 or 2 vertices."""

    __slots__ = ("map", "terminals")

    def __init__(self, m: EmbeddedMap, terminals=()):
        self.map = m
        terminals = tuple(sorted(int(t) for t in terminals))
        if len(terminals) not in (0, 2):
            raise InvalidMap(f"need 0 or 2 terminals, got {len(terminals)}")
        if len(set(terminals)) != len(terminals):
            raise InvalidMap("terminals must be distinct vertices")
        if any(not 0 <= t < m.num_vertices for t in terminals):
            raise InvalidMap("terminal is not a vertex")
        self.terminals = terminals

    @property
    def num_vertices(self) -> int:
        return self.map.num_vertices

    @property
    def num_edges(self) -> int:
        return self.map.num_edges

    def vertex_darts(self, v: int) -> list[int]:
        """Darts of vertex ``v`` in ccw order, starting from the least."""
        if self.map.num_darts == 0:
            return []
        start = int(np.flatnonzero(self.map.vertex_of == v)[0])
        out = [start]
        d = int(self.map.sigma[start])
        while d != start:
            out.append(d)
            d = int(self.map.sigma[d])
        return out

    def degree(self, v: int) -> int:
        return len(self.vertex_darts(v))

    def edge_reps(self) -> list[int]:
        """Least dart of every edge, in increasing order (= medial vertex order)."""
        a = self.map.alpha
        return [d for d in range(self.map.num_darts) if d < a[d]]

    def key(self) -> bytes:
        """Canonical bytes up to relabeling and reflection, terminals marked."""
        m = self.map
        if m.num_darts == 0:
            return b"point"
        lab = np.zeros(m.num_darts, dtype=np.int64)
        for t in self.terminals:
            lab[m.vertex_of == t] = 1
        return canonical_code_arrays(m, (lab, lab))

    def key_chiral(self) -> bytes:
        m = self.map
        if m.num_darts == 0:
            return b"point"
        lab = np.zeros(m.num_darts, dtype=np.int64)
        for t in self.terminals:
            lab[m.vertex_of == t] = 1
        return canonical_code_arrays(m, (lab, lab), chiral=True)

    def abstract_edges(self) -> list[tuple[int, int]]:
        vo = self.map.vertex_of
        return sorted(tuple(sorted((int(vo[d]), int(vo[self.map.alpha[d]])))) for d in self.edge_reps())

    def __repr__(self):
        return f"PlaneGraph(V={self.num_vertices}, E={self.num_edges}, terminals={self.terminals})"


def single_vertex() -> PlaneGraph:
    return PlaneGraph(EmbeddedMap([], []))


def from_rotations(rotations, terminals=()) -> PlaneGraph:
    """Build from ``{vertex: [neighbor, ...]}`` lists in ccw order.

    Parallel edges are matched in order of appearance; a loop appears twice
    in its vertex's list. Vertex names may be any sortable values.
    """
    names = sorted(rotations)
    index = {v: i for i, v in enumerate(names)}
    darts = []
    slot_of = {}
    for v in names:
        for k, w in enumerate(rotations[v]):
            slot_of[(v, k)] = len(darts)
            darts.append((v, w))
    alpha = [-1] * len(darts)
    pending = {}
    for d, (v, w) in enumerate(darts):
        if v == w:
            key = ("loop", v)
        else:
            key = (min(index[v], index[w]), max(index[v], index[w]))
        lst = pending.setdefault(key, [])
        # pair with an open dart coming from the other end
        for j, e in enumerate(lst):
            if darts[e][0] == w and (v != w or e != d):
                alpha[d], alpha[e] = e, d
                del lst[j]
                break
        else:
            lst.append(d)
    if any(a < 0 for a in alpha):
        raise InvalidMap("rotation lists are not symmetric")
    sigma = [0] * len(darts)
    for v in names:
        k = len(rotations[v])
        for j in range(k):
            sigma[slot_of[(v, j)]] = slot_of[(v, (j + 1) % k)]
    if not darts:
        if len(names) != 1:
            raise InvalidMap("a graph without edges must have exactly one vertex")
        return PlaneGraph(EmbeddedMap([], []), ())
    m = EmbeddedMap(sigma, alpha)
    term = []
    for t in terminals:
        term.append(int(m.vertex_of[slot_of[(t, 0)]]))
    return PlaneGraph(m, term)


# -- mutable rotation view ----------------------------------------------------------


class _Rot:
    def __init__(self, g: PlaneGraph):
        m = g.map
        self.alpha = {d: int(m.alpha[d]) for d in range(m.num_darts)}
        self.rot = {}
        self.vert = {}
        if m.num_darts == 0:
            self.rot[0] = []
        for d in range(m.num_darts):
            v = int(m.vertex_of[d])
            if v in self.rot:
                continue
            lst = [d]
            e = int(m.sigma[d])
            while e != d:
                lst.append(e)
                e = int(m.sigma[e])
            self.rot[v] = lst
        for v, lst in self.rot.items():
            for d in lst:
                self.vert[d] = v
        self.terminals = list(g.terminals)
        self.next_dart = m.num_darts
        self.next_vertex = max(self.rot) + 1

    def new_dart(self) -> int:
        self.next_dart += 1
        return self.next_dart - 1

    def new_vertex(self) -> int:
        self.next_vertex += 1
        self.rot[self.next_vertex - 1] = []
        return self.next_vertex - 1

    def sigma(self, d):
        lst = self.rot[self.vert[d]]
        return lst[(lst.index(d) + 1) % len(lst)]

    def sigma_inv(self, d):
        lst = self.rot[self.vert[d]]
        return lst[lst.index(d) - 1]

    def phi(self, d):
        return self.sigma(self.alpha[d])

    def face(self, d):
        out = [d]
        e = self.phi(d)
        while e != d:
            out.append(e)
            e = self.phi(e)
        return out

    def remove_edge(self, d):
        a = self.alpha.pop(d)
        del self.alpha[a]
        for x in (d, a):
            v = self.vert.pop(x)
            self.rot[v].remove(x)

    def add_edge(self, u, iu, v, iv):
        """New edge; its darts are inserted at positions ``iu`` / ``iv``."""
        x, y = self.new_dart(), self.new_dart()
        self.alpha[x], self.alpha[y] = y, x
        self.rot[u].insert(iu, x)
        self.vert[x] = u
        self.rot[v].insert(iv, y)
        self.vert[y] = v
        return x, y

    def drop_vertex(self, v):
        if self.rot[v]:
            raise AssertionError("dropping a vertex that still has darts")
        del self.rot[v]

    def build(self, check=True) -> PlaneGraph:
        darts = sorted(self.alpha)
        if not darts:
            if len(self.rot) != 1:
                raise ResultDisconnected("result has isolated vertices")
            return PlaneGraph(EmbeddedMap([], []), ())
        if any(not lst for lst in self.rot.values()):
            raise ResultDisconnected("result has an isolated vertex")
        newid = {d: i for i, d in enumerate(darts)}
        n = len(darts)
        sigma = np.empty(n, dtype=np.int64)
        alpha = np.empty(n, dtype=np.int64)
        for lst in self.rot.values():
            for k, d in enumerate(lst):
                sigma[newid[d]] = newid[lst[(k + 1) % len(lst)]]
        for d, a in self.alpha.items():
            alpha[newid[d]] = newid[a]
        try:
            m = EmbeddedMap(sigma, alpha, check=check)
        except InvalidMap as exc:
            from .errors import Disconnected

            if isinstance(exc, Disconnected):
                raise ResultDisconnected(str(exc)) from exc
            raise
        term = [int(m.vertex_of[newid[self.rot[t][0]]]) for t in self.terminals]
        return PlaneGraph(m, term)


# -- electrical moves -----------------------------------------------------------------


def _vertex_lists(g):
    return _Rot(g).rot


def enumerate_elec_moves(g: PlaneGraph, include_terminal_leaf=False, include_nonplanar=True):
    """All forward electrical moves with their planarity class.

    Moves deleting a terminal are never listed. Terminal-leaf contractions
    are listed only when ``include_terminal_leaf`` is set.
    """
    if g.map.num_darts == 0:
        return []
    r = _Rot(g)
    m = g.map
    alpha = m.alpha
    vo = m.vertex_of
    fo = m.face_of
    phi = m.phi
    terms = set(g.terminals)
    out = []
    faces = {}
    for d in range(m.num_darts):
        faces.setdefault(int(fo[d]), []).append(d)
    for v, lst in sorted(r.rot.items()):
        deg = len(lst)
        loops_here = [d for d in lst if int(vo[alpha[d]]) == v]
        if deg == 1:
            d = lst[0]
            if v not in terms:
                out.append((ElecMove("LeafContract", (d,)), Planarity.FACIAL))
            elif include_terminal_leaf and int(vo[alpha[d]]) not in terms:
                out.append((ElecMove("TerminalLeafContract", (d,)), Planarity.FACIAL))
        if deg == 2 and v not in terms and not loops_here:
            out.append((ElecMove("SeriesReduce", (min(lst),)), Planarity.FACIAL))
        if deg == 3 and v not in terms and not loops_here:
            out.append((ElecMove("YtoDelta", (lst[0],)), Planarity.FACIAL))
    reps = g.edge_reps()
    for d in reps:
        a = int(alpha[d])
        if vo[d] == vo[a]:
            facial = phi[d] == d or phi[a] == a
            out.append((ElecMove("LoopDelete", (d,)), Planarity.FACIAL if facial else Planarity.PLANAR_NON_FACIAL))
    by_ends = {}
    for d in reps:
        u, w = int(vo[d]), int(vo[alpha[d]])
        if u != w:
            by_ends.setdefault((min(u, w), max(u, w)), []).append(d)
    for (u, w), es in sorted(by_ends.items()):
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                keep, drop = es[i], es[j]
                out.append((ElecMove("ParallelReduce", (keep, drop)), _parallel_class(m, keep, drop)))
    for tri in _triangles(g, by_ends):
        cls = _triangle_class(g, tri)
        if cls is Planarity.NON_PLANAR and not include_nonplanar:
            continue
        out.append((ElecMove("DeltaToY", tri), cls))
    return out


def _parallel_class(m, e, f):
    ea, fa = int(m.alpha[e]), int(m.alpha[f])
    for x in (e, ea):
        for y in (f, fa):
            if m.phi[x] == y and m.phi[y] == x:
                return Planarity.FACIAL
    return Planarity.PLANAR_NON_FACIAL


def _triangles(g, by_ends):
    """Edge triples forming 3-cycles on distinct vertices.

    Each triangle is reported as darts ``(t0, t1, t2)`` where ``t_i`` leaves
    ``u_i`` toward ``u_{i+1}`` and ``u_0 < u_1, u_2``.
    """
    m = g.map
    vo = m.vertex_of
    out = []
    verts = sorted({u for pair in by_ends for u in pair})
    for (u, v), e_uv in sorted(by_ends.items()):
        for w in verts:
            if w <= v:
                continue
            e_vw = by_ends.get((v, w))
            e_uw = by_ends.get((u, w))
            if not e_vw or not e_uw:
                continue
            for x in e_uv:
                for y in e_vw:
                    for z in e_uw:
                        t0 = x if vo[x] == u else int(m.alpha[x])
                        t1 = y if vo[y] == v else int(m.alpha[y])
                        t2 = z if vo[z] == w else int(m.alpha[z])
                        out.append((t0, t1, t2))
    return out


def _triangle_class(g, tri):
    m = g.map
    fo = m.face_of
    vo = m.vertex_of
    darts = set(tri) | {int(m.alpha[t]) for t in tri}
    for t in list(darts):
        f = [d for d in range(m.num_darts) if fo[d] == fo[t]]
        if len(f) == 3 and set(f) <= darts:
            return Planarity.FACIAL
    if _common_faces(g, [int(vo[t]) for t in tri]):
        return Planarity.PLANAR_NON_FACIAL
    return Planarity.NON_PLANAR


def _common_faces(g, verts):
    m = g.map
    sets = []
    for v in verts:
        sets.append({int(m.face_of[d]) for d in range(m.num_darts) if m.vertex_of[d] == v})
    common = set.intersection(*sets)
    return sorted(common)


def classify(g: PlaneGraph, mv: ElecMove) -> Planarity:
    for cand, cls in enumerate_elec_moves(g, include_terminal_leaf=True):
        if cand.kind == mv.kind and cand.site == tuple(mv.site):
            return cls
    raise NotApplicable(f"{mv} is not applicable")


def apply_elec(g: PlaneGraph, mv: ElecMove) -> PlaneGraph:
    """Apply a planar electrical move; non-planar Delta-Y is rejected."""
    site = tuple(int(s) for s in mv.site)
    if mv.kind not in MOVE_KINDS:
        raise NotApplicable(f"unknown move kind {mv.kind}")
    if g.map.num_darts == 0 or any(not 0 <= s < g.map.num_darts for s in site):
        raise NotApplicable(f"site {site} does not exist")
    m = g.map
    vo = m.vertex_of
    terms = set(g.terminals)
    r = _Rot(g)
    if mv.kind in ("LeafContract", "TerminalLeafContract"):
        (d,) = site
        v = int(vo[d])
        if len(r.rot[v]) != 1:
            raise NotApplicable("not a leaf")
        w = r.vert[r.alpha[d]]
        if mv.kind == "LeafContract":
            if v in terms:
                raise TerminalViolation("leaf is a terminal")
        else:
            if v not in terms:
                raise NotApplicable("leaf is not a terminal")
            if w in terms:
                raise TerminalViolation("the leaf's neighbor is the other terminal")
            r.terminals = [w if t == v else t for t in r.terminals]
        r.remove_edge(d)
        r.drop_vertex(v)
        return r.build()
    if mv.kind == "LoopDelete":
        (d,) = site
        if vo[d] != vo[m.alpha[d]]:
            raise NotApplicable("not a loop")
        r.remove_edge(d)
        return r.build()
    if mv.kind == "SeriesReduce":
        (d,) = site
        v = int(vo[d])
        lst = r.rot[v]
        if len(lst) != 2 or v in terms:
            raise (TerminalViolation if v in terms else NotApplicable)("not a reducible degree-2 vertex")
        a, b = lst
        if r.vert[r.alpha[a]] == v:
            raise NotApplicable("degree-2 vertex carries a loop")
        # keep the far ends; they become the two darts of a single edge
        x, y = r.alpha[a], r.alpha[b]
        for e in (a, b):
            del r.alpha[e]
            del r.vert[e]
        r.rot[v] = []
        r.drop_vertex(v)
        r.alpha[x], r.alpha[y] = y, x
        return r.build()
    if mv.kind == "ParallelReduce":
        keep, drop = site
        ends = lambda e: sorted((int(vo[e]), int(vo[m.alpha[e]])))
        if keep == drop or ends(keep) != ends(drop) or vo[keep] == vo[m.alpha[keep]]:
            raise NotApplicable("edges are not parallel")
        r.remove_edge(drop)
        return r.build()
    if mv.kind == "YtoDelta":
        (d,) = site
        v = int(vo[d])
        if v in terms:
            raise TerminalViolation("Y center is a terminal")
        lst = r.rot[v]
        if len(lst) != 3 or any(r.vert[r.alpha[x]] == v for x in lst):
            raise NotApplicable("not a degree-3 vertex without loops")
        k = lst.index(d)
        arms = lst[k:] + lst[:k]
        ends = [r.alpha[x] for x in arms]
        nbr = [r.vert[e] for e in ends]
        # replace each far dart by two new darts: toward n_{i+1} then n_{i-1}
        slots = {}
        for i, e in enumerate(ends):
            u = nbr[i]
            pos = r.rot[u].index(e)
            first, second = r.new_dart(), r.new_dart()
            r.rot[u][pos:pos + 1] = [first, second]
            r.vert[first] = r.vert[second] = u
            slots[(i, (i + 1) % 3)] = first
            slots[(i, (i - 1) % 3)] = second
        for i in range(3):
            x = slots[(i, (i + 1) % 3)]
            y = slots[((i + 1) % 3, i)]
            r.alpha[x], r.alpha[y] = y, x
        for x in arms:
            e = r.alpha.pop(x)
            del r.alpha[e]
            del r.vert[x]
            del r.vert[e]
        r.rot[v] = []
        r.drop_vertex(v)
        return r.build()
    if mv.kind == "DeltaToY":
        return _delta_to_y(g, r, site, mv.face)
    raise NotApplicable(f"unknown move kind {mv.kind}")


def _delta_to_y(g, r, tri, face=None):
    m = g.map
    vo = m.vertex_of
    fo = m.face_of
    if len(tri) != 3:
        raise NotApplicable("Delta-Y needs three darts")
    us = [int(vo[t]) for t in tri]
    if len(set(us)) != 3:
        raise NotApplicable("triangle vertices must be distinct")
    for i in range(3):
        if int(vo[m.alpha[tri[i]]]) != us[(i + 1) % 3]:
            raise NotApplicable("darts do not form a triangle")
    cls = _triangle_class(g, tri)
    if cls is Planarity.NON_PLANAR:
        raise NonPlanarMoveRejected("triangle vertices share no face")
    if face is None:
        darts = set(tri) | {int(m.alpha[t]) for t in tri}
        face = None
        for t in sorted(darts):
            f = [d for d in range(m.num_darts) if fo[d] == fo[t]]
            if len(f) == 3 and set(f) <= darts:
                face = int(fo[t])
                break
        if face is None:
            face = _common_faces(g, us)[0]
    elif face not in _common_faces(g, us):
        raise NotApplicable(f"face {face} does not touch all three triangle vertices")
    # walk the face and take the first corner at each triangle vertex
    start = min(d for d in range(m.num_darts) if fo[d] == face)
    walk = [start]
    e = int(m.phi[start])
    while e != start:
        walk.append(e)
        e = int(m.phi[e])
    corners = []
    taken = set()
    for y in walk:
        v = int(vo[y])
        if v in us and v not in taken:
            taken.add(v)
            corners.append(y)
    center = r.new_vertex()
    spokes = []
    for y in corners:
        u = r.vert[y]
        pos = r.rot[u].index(y)
        s = r.new_dart()
        r.rot[u].insert(pos, s)
        r.vert[s] = u
        c = r.new_dart()
        r.vert[c] = center
        r.alpha[s], r.alpha[c] = c, s
        spokes.append(c)
    r.rot[center] = spokes[::-1]
    for t in tri:
        r.remove_edge(t)
    return r.build()


# -- inverse moves used to grow random graphs --------------------------------------


def add_leaf(g: PlaneGraph, corner: int) -> PlaneGraph:
    """New degree-1 vertex hanging in the corner just before dart ``corner``."""
    r = _Rot(g)
    if g.map.num_darts == 0:
        v = next(iter(r.rot))
        w = r.new_vertex()
        r.add_edge(v, 0, w, 0)
        return r.build()
    u = r.vert[corner]
    w = r.new_vertex()
    r.add_edge(u, r.rot[u].index(corner), w, 0)
    return r.build()


def add_loop(g: PlaneGraph, corner: int) -> PlaneGraph:
    r = _Rot(g)
    if g.map.num_darts == 0:
        v = next(iter(r.rot))
        r.add_edge(v, 0, v, 1)
        return r.build()
    u = r.vert[corner]
    pos = r.rot[u].index(corner)
    r.add_edge(u, pos, u, pos + 1)
    return r.build()


def subdivide(g: PlaneGraph, d: int) -> PlaneGraph:
    r = _Rot(g)
    a = r.alpha[d]
    w = r.new_vertex()
    x, y = r.new_dart(), r.new_dart()
    r.rot[w] = [x, y]
    r.vert[x] = r.vert[y] = w
    r.alpha[d], r.alpha[x] = x, d
    r.alpha[a], r.alpha[y] = y, a
    return r.build()


def add_parallel(g: PlaneGraph, d: int) -> PlaneGraph:
    """Parallel copy of the edge of ``d`` inside the face right of ``d``."""
    r = _Rot(g)
    a = r.alpha[d]
    u, w = r.vert[d], r.vert[a]
    if u == w:
        raise NotApplicable("no parallel copies of loops")
    # face right of d: the corner before d at u and the corner after a at w
    r.add_edge(u, r.rot[u].index(d), w, r.rot[w].index(a) + 1)
    return r.build()


def add_chord(g: PlaneGraph, x: int, y: int) -> PlaneGraph:
    """Edge across a face joining the corners just before darts ``x`` and ``y``."""
    m = g.map
    if m.face_of[x] != m.face_of[y] or x == y:
        raise NotApplicable("corners must lie on one face")
    r = _Rot(g)
    u, w = r.vert[x], r.vert[y]
    if u == w:
        pu = r.rot[u].index(x)
        r.add_edge(u, pu, u, r.rot[u].index(y) + (1 if r.rot[u].index(y) >= pu else 0))
        return r.build()
    r.add_edge(u, r.rot[u].index(x), w, r.rot[w].index(y))
    return r.build()


# -- medial graph --------------------------------------------------------------------


def medial(g: PlaneGraph) -> Multicurve:
    """Medial multicurve; terminals become the two boundary faces."""
    m = g.map
    if m.num_darts == 0:
        raise EmptyGraph("the medial of a graph without edges is empty")
    reps = g.edge_reps()
    eidx = {}
    for i, d in enumerate(reps):
        eidx[d] = (i, True)
        eidx[int(m.alpha[d])] = (i, False)
    alpha = np.empty(4 * len(reps), dtype=np.int64)
    for x in range(m.num_darts):
        y = int(m.sigma[x])
        ex, rx = eidx[x]
        ey, ry = eidx[y]
        p = 4 * ex + (1 if rx else 3)
        q = 4 * ey + (2 if ry else 0)
        alpha[p] = q
        alpha[q] = p
    boundary = None
    if g.terminals:
        boundary = tuple(terminal_face_dart(g, t, eidx) for t in g.terminals)
    return Multicurve(alpha, boundary)


def terminal_face_dart(g, v, eidx=None):
    """A medial dart whose right side is the medial face around vertex ``v``."""
    m = g.map
    if eidx is None:
        eidx = {}
        for i, d in enumerate(g.edge_reps()):
            eidx[d] = (i, True)
            eidx[int(m.alpha[d])] = (i, False)
    x = int(np.flatnonzero(m.vertex_of == v)[0])
    e, is_rep = eidx[x]
    # slot heading to corner (x, sigma x); the vertex lies to its left, so
    # its face is right of the reverse medial dart: slot of the same corner
    # seen from edge(sigma x)
    y = int(m.sigma[x])
    ey, ry = eidx[y]
    return 4 * ey + (2 if ry else 0)


def is_unicursal(g: PlaneGraph) -> bool:
    if g.map.num_darts == 0:
        return False
    return components(medial(g))[0] == 1


def dual(g: PlaneGraph) -> PlaneGraph:
    """Dual map (terminals dropped): vertices are faces, ``sigma* = phi``."""
    m = g.map
    if m.num_darts == 0:
        return g
    return PlaneGraph(EmbeddedMap(m.phi, m.alpha))


# -- minors ----------------------------------------------------------------------------


def minor_of_smoothing(g: PlaneGraph, choices) -> PlaneGraph:
    """Minor whose medial is the given smoothing of ``medial(g)``.

    ``choices`` maps edge index (medial vertex) to ``"A"`` (contract) or
    ``"B"`` (delete). Loops cannot be contracted.
    """
    reps = g.edge_reps()
    r = _Rot(g)
    for e, ch in sorted(choices.items()):
        d = reps[int(e)]
        if ch == "B":
            r.remove_edge(d)
        elif ch == "A":
            a = r.alpha[d]
            u, w = r.vert[d], r.vert[a]
            if u == w:
                raise ContractLoop(f"edge {e} is a loop")
            lw = r.rot[w]
            k = lw.index(a)
            tail = lw[k + 1:] + lw[:k]
            lu = r.rot[u]
            p = lu.index(d)
            r.rot[u] = lu[:p] + tail + lu[p + 1:]
            for x in tail:
                r.vert[x] = u
            del r.alpha[d], r.alpha[a], r.vert[d], r.vert[a]
            r.rot[w] = []
            r.drop_vertex(w)
            r.terminals = [u if t == w else t for t in r.terminals]
            if len(set(r.terminals)) < len(r.terminals):
                raise TerminalViolation("contraction merges the two terminals")
        else:
            raise ValueError(f"choice must be 'A' or 'B', got {ch!r}")
    return r.build()


def smoothing_of_minor(g: PlaneGraph, choices) -> Multicurve:
    return smooth(medial(g), choices={int(e): c for e, c in choices.items()})


# -- embedding navigation ----------------------------------------------------------


def _pieces(r: _Rot, cut: set):
    """Components of the graph minus ``cut`` and direct edges inside ``cut``.

    Returns a map dart -> piece id for darts at cut vertices.
    """
    piece_of_vertex = {}
    pid = 0
    for v in r.rot:
        if v in cut or v in piece_of_vertex:
            continue
        stack = [v]
        piece_of_vertex[v] = pid
        while stack:
            x = stack.pop()
            for d in r.rot[x]:
                w = r.vert[r.alpha[d]]
                if w not in cut and w not in piece_of_vertex:
                    piece_of_vertex[w] = pid
                    stack.append(w)
        pid += 1
    piece = {}
    for c in cut:
        for d in r.rot[c]:
            w = r.vert[r.alpha[d]]
            if w in cut:
                # an edge between cut vertices (or a loop) is a piece by itself
                key = min(d, r.alpha[d])
                piece[d] = ("e", key)
            else:
                piece[d] = ("p", piece_of_vertex[w])
    return piece, piece_of_vertex


def _intervals(lst, members):
    """Maximal cyclic runs of positions in ``lst`` whose dart is in ``members``."""
    n = len(lst)
    inside = [d in members for d in lst]
    if all(inside):
        return [list(range(n))]
    start = next(i for i in range(n) if not inside[i])
    runs = []
    cur = []
    for k in range(1, n + 1):
        i = (start + k) % n
        if inside[i]:
            cur.append(i)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def _reflect(r: _Rot, interior_vertices, intervals_at):
    for v in interior_vertices:
        r.rot[v] = r.rot[v][::-1]
    for v, positions in intervals_at.items():
        lst = r.rot[v]
        vals = [lst[i] for i in positions][::-1]
        for i, d in zip(positions, vals):
            lst[i] = d


def _finish(g, r, err):
    try:
        h = r.build()
    except InvalidMap as exc:
        raise err(f"reflection does not give a plane embedding: {exc}") from exc
    if h.abstract_edges() != g.abstract_edges():
        raise AssertionError("reflection changed the abstract graph")
    return h


def split_reflection(g: PlaneGraph, x: int, y: int, wedge) -> PlaneGraph:
    """Reflect the part of the graph attached to ``x`` through the darts ``wedge``.

    The pieces of ``g - {x, y}`` reached from ``wedge`` must meet ``x`` in one
    contiguous interval and ``y`` in one contiguous interval.
    """
    if x == y:
        raise NotASplitPair("split pair needs two distinct vertices")
    r = _Rot(g)
    if x not in r.rot or y not in r.rot:
        raise NotASplitPair("no such vertex")
    piece, pv = _pieces(r, {x, y})
    wedge = set(int(d) for d in wedge)
    if not wedge or any(d not in piece or r.vert[d] != x for d in wedge):
        raise InvalidWedge("wedge must be darts at x")
    chosen = {piece[d] for d in wedge}
    members = {d for d, p in piece.items() if p in chosen}
    interior = {v for v, p in pv.items() if ("p", p) in chosen}
    if not interior:
        raise EmptyInterior("nothing lies strictly inside the split curve")
    at_x = [i for i, d in enumerate(r.rot[x]) if d in members]
    at_y = [i for i, d in enumerate(r.rot[y]) if d in members]
    if not at_y:
        raise NotASplitPair("the chosen pieces do not reach y")
    rx = _intervals(r.rot[x], members)
    ry = _intervals(r.rot[y], members)
    if len(rx) != 1 or len(ry) != 1:
        raise NotASplitPair("pieces are not contiguous at x and y")
    if len(rx[0]) == len(r.rot[x]) and len(ry[0]) == len(r.rot[y]):
        raise NotASplitPair("the split curve encloses the whole graph")
    _reflect(r, interior, {x: rx[0], y: ry[0]})
    return _finish(g, r, NotASplitPair)


def _is_cut_vertex(r, x):
    piece, _ = _pieces(r, {x})
    kinds = {p for p in piece.values()}
    return len(kinds) >= 2


def cut_reflection(g: PlaneGraph, x: int, wedge) -> PlaneGraph:
    """Reflect the pieces of ``g - x`` reached from ``wedge`` (a contiguous run)."""
    r = _Rot(g)
    if x not in r.rot or not _is_cut_vertex(r, x):
        raise NotACutVertex(f"vertex {x} is not a cut vertex")
    piece, pv = _pieces(r, {x})
    wedge = set(int(d) for d in wedge)
    if not wedge or any(r.vert.get(d) != x for d in wedge):
        raise InvalidWedge("wedge must be darts at x")
    chosen = {piece[d] for d in wedge}
    members = {d for d, p in piece.items() if p in chosen}
    runs = _intervals(r.rot[x], members)
    if len(runs) != 1 or len(runs[0]) == len(r.rot[x]):
        raise InvalidWedge("chosen pieces must form one proper interval at x")
    interior = {v for v, p in pv.items() if ("p", p) in chosen}
    _reflect(r, interior, {x: runs[0]})
    return _finish(g, r, InvalidWedge)


def cut_eversion(g: PlaneGraph, x: int, wedge, swap: bool = True) -> PlaneGraph:
    """Evert the pieces reached from ``wedge`` when they meet ``x`` in two runs.

    The piece is reflected and its two runs at ``x`` are exchanged (each
    reversed); with ``swap=False`` each run is reversed in place.
    """
    r = _Rot(g)
    if x not in r.rot or not _is_cut_vertex(r, x):
        raise NotACutVertex(f"vertex {x} is not a cut vertex")
    piece, pv = _pieces(r, {x})
    wedge = set(int(d) for d in wedge)
    if not wedge or any(r.vert.get(d) != x for d in wedge):
        raise InvalidWedge("wedge must be darts at x")
    chosen = {piece[d] for d in wedge}
    members = {d for d, p in piece.items() if p in chosen}
    runs = _intervals(r.rot[x], members)
    if len(runs) != 2:
        raise InvalidWedge("eversion needs the pieces to meet x in exactly two runs")
    interior = {v for v, p in pv.items() if ("p", p) in chosen}
    for v in interior:
        r.rot[v] = r.rot[v][::-1]
    lst = r.rot[x]
    i1, i2 = runs
    v1 = [lst[i] for i in i1]
    v2 = [lst[i] for i in i2]
    if swap:
        new1, new2 = v2[::-1], v1[::-1]
    else:
        new1, new2 = v1[::-1], v2[::-1]
    # runs may have different lengths; rebuild the rotation run by run
    out = []
    order = sorted([(i1[0], i1, new1), (i2[0], i2, new2)], key=lambda t: t[0])
    marks = {}
    for _, run, vals in order:
        marks[run[0]] = (set(run), vals)
    skip = set()
    for i, d in enumerate(lst):
        if i in skip:
            continue
        if i in marks:
            run, vals = marks[i]
            out.extend(vals)
            skip |= run
            continue
        out.append(d)
    r.rot[x] = out
    return _finish(g, r, InvalidWedge)


def embedding_neighbors(g: PlaneGraph):
    """Every embedding one reflection or eversion away (valid ones only)."""
    if g.map.num_darts == 0:
        return []
    r = _Rot(g)
    out = []
    verts = sorted(r.rot)
    for x in verts:
        lst = r.rot[x]
        k = len(lst)
        if k < 2:
            continue
        piece, _ = _pieces(r, {x})
        if len(set(piece.values())) >= 2:
            groups = {}
            for d in lst:
                groups.setdefault(piece[d], set()).add(d)
            for i in range(k):
                for length in range(1, k):
                    wedge = {lst[(i + j) % k] for j in range(length)}
                    chosen = {piece[d] for d in wedge}
                    if set().union(*(groups[p] for p in chosen)) != wedge:
                        continue
                    try:
                        out.append(cut_reflection(g, x, wedge))
                    except (InvalidWedge, NotACutVertex):
                        pass
            for p, ds in groups.items():
                if len(_intervals(lst, ds)) == 2:
                    for swap in (True, False):
                        try:
                            out.append(cut_eversion(g, x, ds, swap))
                        except (InvalidWedge, NotACutVertex):
                            pass
        for y in verts:
            if y <= x:
                continue
            piece2, pv2 = _pieces(r, {x, y})
            groups = {}
            for d in lst:
                groups.setdefault(piece2[d], set()).add(d)
            if len(groups) < 2:
                continue
            for i in range(k):
                for length in range(1, k):
                    wedge = {lst[(i + j) % k] for j in range(length)}
                    chosen = {piece2[d] for d in wedge}
                    if set().union(*(groups[p] for p in chosen)) != wedge:
                        continue
                    try:
                        out.append(split_reflection(g, x, y, wedge))
                    except (NotASplitPair, EmptyInterior, InvalidWedge):
                        pass
    return out


def enumerate_embeddings(g: PlaneGraph, budget: int = 6, limit: int = 5000):
    """Embeddings reachable within ``budget`` operations, one per canonical form."""
    seen = {g.key(): g}
    frontier = [g]
    for _ in range(max(budget, 0)):
        nxt = []
        for h in frontier:
            for k in embedding_neighbors(h):
                key = k.key()
                if key not in seen:
                    seen[key] = k
                    nxt.append(k)
                    if len(seen) >= limit:
                        return list(seen.values())
        if not nxt:
            break
        frontier = nxt
    return list(seen.values())


# -- terminal-leaf simulation ---------------------------------------------------------


def _terminal_labels(g):
    lab = np.zeros(g.map.num_darts, dtype=np.int64)
    for t in g.terminals:
        lab[g.map.vertex_of == t] = 1
    return lab


def _strip_marked(s: PlaneGraph, marked: int):
    """Drop ``marked`` pendant terminals from ``s``; yields ``(reduced, dart map reduced -> s, pseudo)``."""
    vo = s.map.vertex_of
    leaves = [t for t in s.terminals if s.degree(t) == 1]
    if marked == 0:
        yield s, np.arange(s.map.num_darts), {}
        return
    choices = [[t] for t in leaves] if marked == 1 else ([leaves] if len(leaves) == 2 else [])
    for pick in choices:
        r = _Rot(s)
        pseudo = {}
        gone = set()
        for t in pick:
            d = int(np.flatnonzero(vo == t)[0])
            u = int(vo[s.map.alpha[d]])
            if u in s.terminals:
                break
            pseudo[t] = u
            r.terminals = [u if x == t else x for x in r.terminals]
            gone.update((d, int(s.map.alpha[d])))
            r.remove_edge(d)
            r.drop_vertex(t)
        else:
            kept = np.array(sorted(set(range(s.map.num_darts)) - gone), dtype=np.int64)
            yield r.build(), kept, pseudo


def simulate_terminal_contractions(g: PlaneGraph, moves):
    """Rewrite a move sequence so it uses no terminal-leaf contraction.

    The first contraction at a terminal only marks it, and play continues as
    if its neighbor were the terminal. Later contractions at that neighbor
    become series reductions, and a last series reduction at the neighbor of
    each marked terminal finishes the job when its degree allows. Returns
    ``(moves, final)`` where ``moves`` apply to ``g`` and ``final`` is the
    resulting graph; some rewritten moves may be planar but not facial.
    """
    orig = g
    sim = g
    marked = 0
    out = []

    def locate(o, s):
        for red, kept, pseudo in _strip_marked(s, marked):
            f = find_isomorphism(o.map, red.map, _terminal_labels(o), _terminal_labels(red))
            if f is not None:
                return kept[f], pseudo
        raise NotApplicable("simulated graph lost track of the original")

    for mv in moves:
        nxt = apply_elec(orig, mv)
        to_sim, pseudo = locate(orig, sim)
        if mv.kind == "TerminalLeafContract":
            u_sim = int(sim.map.vertex_of[to_sim[mv.site[0]]])
            if u_sim in sim.terminals:
                marked += 1
            else:
                step = ElecMove("SeriesReduce", (min(sim.vertex_darts(u_sim)),))
                out.append(step)
                sim = apply_elec(sim, step)
            orig = nxt
            continue
        site = tuple(int(to_sim[d]) for d in mv.site)
        faces = [None]
        if mv.kind == "DeltaToY":
            us = sorted({int(sim.map.vertex_of[d]) for d in site})
            faces += _common_faces(sim, us)
        for face in faces:
            step = ElecMove(mv.kind, site, face)
            try:
                cand = apply_elec(sim, step)
                locate(nxt, cand)
            except NotApplicable:
                continue
            break
        else:
            raise NotApplicable(f"cannot simulate {mv}")
        out.append(step)
        sim = cand
        orig = nxt
    _, pseudo = locate(orig, sim)
    # vertex ids shift after each reduction, so track terminals by position
    slots = [sim.terminals.index(t) for t in pseudo]
    for i in slots:
        t = sim.terminals[i]
        leaf = int(np.flatnonzero(sim.map.vertex_of == t)[0])
        nbr = int(sim.map.vertex_of[sim.map.alpha[leaf]])
        if sim.degree(nbr) == 2 and nbr not in sim.terminals:
            step = ElecMove("SeriesReduce", (min(sim.vertex_darts(nbr)),))
            out.append(step)
            sim = apply_elec(sim, step)
    return out, sim


# -- text format --------------------------------------------------------------------


def serialize_graph(g: PlaneGraph) -> str:
    text = serialize(g.map)
    if g.terminals:
        reps = [int(np.flatnonzero(g.map.vertex_of == t)[0]) for t in g.terminals]
        text += f"terminals {reps[0]} {reps[1]}\n"
    return text


def parse_graph(text: str) -> PlaneGraph:
    m, found = parse_sections(text, extra=("terminals",))
    terms = ()
    if "terminals" in found:
        lineno, tok = found["terminals"]
        if len(tok) != 2:
            raise ParseError("expected 'terminals <dart> <dart>'", lineno)
        try:
            ds = [int(t) for t in tok]
        except ValueError:
            raise ParseError("terminal darts must be integers", lineno) from None
        if any(not 0 <= d < m.num_darts for d in ds):
            raise ParseError("terminal dart out of range", lineno)
        terms = tuple(int(m.vertex_of[d]) for d in ds)
        if terms[0] == terms[1]:
            raise ParseError("terminals must be distinct vertices", lineno)
    return PlaneGraph(m, terms)
