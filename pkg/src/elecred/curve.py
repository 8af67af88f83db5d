"""Multicurves on the sphere and in the annulus.

A multicurve with ``n`` vertices is stored as a 4-regular map in *slot form*:
the darts of vertex ``v`` are ``4v, 4v+1, 4v+2, 4v+3`` in counterclockwise
order, so ``sigma`` is implicit and only ``alpha`` is stored. The curve runs
straight through every vertex: the dart after ``d`` along the curve is
``sigma^2(alpha(d))``, the dart opposite ``alpha(d)``.

An annulus curve carries two boundary marks, each given by a dart whose right
side face holds that boundary. Both marks may sit in the same face (the curve
is then contractible in the annulus).

A vertex-free curve (a simple circle) has ``alpha`` of length 0 and
``circles == 1``. Its two faces are called side 0 and side 1 and boundary
marks refer to sides instead of darts.

Smoothing choice ``"A"`` joins slots 0-1 and 2-3, choice ``"B"`` joins slots
1-2 and 3-0::

          1                 1                 1
          |               __|                 |__
    2 ----+---- 0   A:  2 __   __ 0    B:  2 __   __ 0
          |                 |__             __|
          3                 3                 3
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    BoundaryForbidden,
    Disconnected,
    InvalidMap,
    MultiComponent,
    NoBoundary,
    NotApplicable,
    ParseError,
    UnrealizableCode,
)
from .maps import EmbeddedMap, canonical_code_arrays, parse_sections, serialize

CHECK = os.environ.get("ELECRED_CHECK", "") not in ("", "0")

HOMOTOPY = "homotopy"
MEDIAL = "medial"

DOWN_KINDS = {
    HOMOTOPY: ("H1down", "H2down", "H33"),
    MEDIAL: ("M1down", "M21", "M33"),
}
UP_KINDS = {
    HOMOTOPY: ("H1up", "H2up"),
    MEDIAL: ("M1up", "M12"),
}
# vertex-count change of each move kind
DELTA = {
    "H1down": -1, "M1down": -1, "H1up": 1, "M1up": 1,
    "H2down": -2, "H2up": 2, "M21": -1, "M12": 1,
    "H33": 0, "M33": 0,
}


def slot_sigma(n_darts: int) -> np.ndarray:
    d = np.arange(n_darts, dtype=np.int64)
    return d - d % 4 + (d + 1) % 4


def opposite(d: int) -> int:
    return d - d % 4 + (d + 2) % 4


def rot(d: int, k: int = 1) -> int:
    return d - d % 4 + (d + k) % 4


@dataclass(frozen=True)
class CurveMove:
    kind: str
    site: tuple

    def __str__(self):
        return " ".join([self.kind] + [str(s) for s in self.site])


class Multicurve:
    """Immutable connected multicurve (or a bundle of disjoint circles)."""

    __slots__ = ("alpha", "boundary", "basepoint", "circles", "_face_of", "_nf", "_key", "_emap")

    def __init__(self, alpha, boundary=None, basepoint=None, circles=0, check=CHECK):
        self.alpha = np.asarray(alpha, dtype=np.int64).reshape(-1)
        self.alpha.setflags(write=False)
        self.boundary = None if boundary is None else (int(boundary[0]), int(boundary[1]))
        self.basepoint = None if basepoint is None else (int(basepoint[0]), int(basepoint[1]))
        self.circles = int(circles)
        self._face_of = None
        self._key = None
        self._emap = None
        if self.alpha.shape[0] % 4:
            raise ValueError("slot form needs a multiple of 4 darts")
        if self.alpha.shape[0] and self.circles:
            raise Disconnected("free circles next to a curve with vertices")
        if not self.alpha.shape[0] and self.circles < 1:
            raise ValueError("a vertex-free multicurve needs at least one circle")
        if check:
            self.emap  # validates
            if self.boundary is not None and not self.alpha.shape[0]:
                if not set(self.boundary) <= {0, 1}:
                    raise ValueError("circle boundary marks must be sides 0 or 1")

    # -- basic structure -----------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return self.alpha.shape[0] // 4

    n = num_vertices

    @property
    def num_darts(self) -> int:
        return self.alpha.shape[0]

    @property
    def is_circle(self) -> bool:
        return self.num_darts == 0

    @property
    def connected(self) -> bool:
        return self.num_darts > 0 or self.circles == 1

    @property
    def emap(self) -> EmbeddedMap:
        if self._emap is None:
            self._emap = EmbeddedMap(slot_sigma(self.num_darts), self.alpha, check=CHECK or self.num_darts == 0)
        return self._emap

    @property
    def face_of(self) -> np.ndarray:
        if self._face_of is None:
            phi = slot_sigma(self.num_darts)[self.alpha]
            self._face_of, self._nf = _kernels.orbit_labels(phi)
        return self._face_of

    @property
    def num_faces(self) -> int:
        if self.is_circle:
            return self.circles + 1
        self.face_of
        return int(self._nf)

    def phi(self, d: int) -> int:
        return rot(int(self.alpha[d]))

    def face_darts(self, d: int) -> list[int]:
        out = [d]
        e = self.phi(d)
        while e != d:
            out.append(e)
            e = self.phi(e)
        return out

    def boundary_faces(self) -> tuple | None:
        if self.boundary is None:
            return None
        if self.is_circle:
            return self.boundary
        f = self.face_of
        return int(f[self.boundary[0]]), int(f[self.boundary[1]])

    def is_boundary_face(self, face: int) -> bool:
        bf = self.boundary_faces()
        return bf is not None and face in bf

    def with_boundary(self, boundary) -> "Multicurve":
        return Multicurve(self.alpha, boundary, self.basepoint, self.circles, check=False)

    def with_basepoint(self, basepoint) -> "Multicurve":
        return Multicurve(self.alpha, self.boundary, basepoint, self.circles, check=False)

    def forget_boundary(self) -> "Multicurve":
        return Multicurve(self.alpha, None, self.basepoint, self.circles, check=False)

    # -- canonical keys ---------------------------------------------------------
    def dart_labels(self):
        n = self.num_darts
        lab = np.zeros(n, dtype=np.int64)
        bf = self.boundary_faces()
        if bf is not None:
            f = self.face_of
            mark = 2 if bf[0] == bf[1] else 1
            lab[(f == bf[0]) | (f == bf[1])] = mark
        return lab, lab[self.alpha] if n else lab

    def key(self) -> bytes:
        """Canonical bytes; equal iff isomorphic up to reflection.

        Boundary marks count as an unordered pair of faces.
        """
        if self._key is None:
            if self.is_circle:
                tag = b"-" if self.boundary is None else (b"=" if self.boundary[0] == self.boundary[1] else b"|")
                self._key = b"circles%d" % self.circles + tag
            else:
                tag = b"" if self.boundary is None else b"@"
                self._key = tag + canonical_code_arrays(self.emap, self.dart_labels())
        return self._key

    def key_chiral(self) -> bytes:
        if self.is_circle:
            return self.key()
        tag = b"" if self.boundary is None else b"@"
        return tag + canonical_code_arrays(self.emap, self.dart_labels(), chiral=True)

    def mirror(self) -> "Multicurve":
        """Reflect by reversing every rotation (slot ``s`` becomes ``-s``)."""
        if self.is_circle:
            return self
        n = self.num_darts
        d = np.arange(n)
        perm = d - d % 4 + (4 - d % 4) % 4
        alpha = np.empty(n, dtype=np.int64)
        alpha[perm] = perm[self.alpha]
        # the face right of b is, after reflection, the face right of alpha(b)
        boundary = None
        if self.boundary is not None:
            boundary = tuple(int(perm[self.alpha[b]]) for b in self.boundary)
        basepoint = None
        if self.basepoint is not None:
            basepoint = (int(perm[self.basepoint[0]]), self.basepoint[1])
        return Multicurve(alpha, boundary, basepoint)

    def __eq__(self, other):
        if not isinstance(other, Multicurve):
            return NotImplemented
        return (
            np.array_equal(self.alpha, other.alpha)
            and self.boundary == other.boundary
            and self.circles == other.circles
        )

    def __hash__(self):
        return hash((self.alpha.tobytes(), self.boundary, self.circles))

    def __repr__(self):
        where = "annulus" if self.boundary is not None else "sphere"
        if self.is_circle:
            return f"Multicurve(circles={self.circles}, {where})"
        return f"Multicurve(n={self.num_vertices}, {where})"


def from_map(m: EmbeddedMap, boundary=None, basepoint=None) -> Multicurve:
    """Slot-form curve from any 4-regular map; darts are renamed."""
    if m.num_darts == 0:
        raise ValueError("a map with no darts is a point, not a curve")
    n = m.num_darts
    newid = np.full(n, -1, dtype=np.int64)
    for v, orbit in enumerate(m.vertices()):
        if len(orbit) != 4:
            raise ValueError(f"vertex of degree {len(orbit)}; multicurves are 4-regular")
    nv = 0
    for start in range(n):
        if newid[start] >= 0:
            continue
        d = start
        for k in range(4):
            newid[d] = 4 * nv + k
            d = int(m.sigma[d])
        nv += 1
    alpha = np.empty(n, dtype=np.int64)
    alpha[newid] = newid[m.alpha]
    bd = None if boundary is None else tuple(int(newid[b]) for b in boundary)
    bp = None if basepoint is None else (int(newid[basepoint[0]]), basepoint[1])
    return Multicurve(alpha, bd, bp)


def simple_circle(boundary=None) -> Multicurve:
    """The vertex-free closed curve; ``boundary`` is a pair of sides."""
    return Multicurve([], boundary, circles=1)


# -- traversal -------------------------------------------------------------------


def strand_next(c: Multicurve, d: int) -> int:
    """Out-dart following out-dart ``d`` along the curve."""
    return opposite(int(c.alpha[d]))


def components(c: Multicurve) -> tuple[int, np.ndarray]:
    """Number of closed curves and a component label for every dart.

    Both darts of an edge get the label of the curve running along it.
    """
    n = c.num_darts
    labels = np.full(n, -1, dtype=np.int64)
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        d = start
        while labels[d] < 0:
            labels[d] = count
            labels[int(c.alpha[d])] = count
            d = strand_next(c, d)
        count += 1
    return count + c.circles, labels


def traversal(c: Multicurve, start: int | None = None, direction: int = 1) -> list[tuple[int, int]]:
    """Passes through vertices along the component of ``start``.

    Leaving along ``start`` (or along ``alpha(start)`` when ``direction`` is
    negative), returns ``(in_dart, out_dart)`` for each vertex pass in order.
    """
    if c.is_circle:
        return []
    if start is None:
        start, direction = c.basepoint if c.basepoint is not None else (0, 1)
    d0 = int(start) if direction > 0 else int(c.alpha[start])
    passes = []
    d = d0
    while True:
        i = int(c.alpha[d])
        o = opposite(i)
        passes.append((i, o))
        d = o
        if d == d0:
            break
    return passes


# -- Gauss codes --------------------------------------------------------------------


@dataclass(frozen=True)
class GaussCode:
    """Signed Gauss code.

    ``passes`` holds one tuple per component; each entry is ``(vertex,
    pass_index)`` with ``pass_index`` 0 for the first visit. ``signs[v]`` is
    +1 when the first pass through ``v`` crosses the second from right to
    left.
    """

    passes: tuple
    signs: tuple

    def __str__(self):
        comps = []
        for comp in self.passes:
            comps.append(" ".join(f"{v + 1}{'+' if self.signs[v] > 0 else '-'}" for v, _ in comp))
        return " | ".join(comps)

    def unsigned(self) -> list[list[int]]:
        return [[v + 1 for v, _ in comp] for comp in self.passes]


def pass_table(c: Multicurve, basepoint=None):
    """Per-vertex first and second passes, in traversal order over components.

    Returns ``(order, first, second)`` where ``order`` is a list of
    per-component pass lists ``[(vertex, in, out), ...]`` and ``first[v]`` /
    ``second[v]`` are ``(in, out)`` dart pairs.
    """
    n = c.num_vertices
    first = [None] * n
    second = [None] * n
    order = []
    seen = np.zeros(c.num_darts, dtype=bool)
    starts = []
    bp = basepoint if basepoint is not None else (c.basepoint if c.basepoint is not None else (0, 1))
    if n:
        starts.append(bp)
        starts.extend((d, 1) for d in range(c.num_darts))
    for d, direction in starts:
        if seen[d]:
            continue
        comp = []
        for i, o in traversal(c, d, direction):
            seen[i] = seen[o] = True
            seen[int(c.alpha[i])] = seen[int(c.alpha[o])] = True
            v = i // 4
            if first[v] is None:
                first[v] = (i, o)
            else:
                second[v] = (i, o)
            comp.append((v, i, o))
        order.append(comp)
    return order, first, second


def crossing_sign(first, second) -> int:
    """+1 iff the first pass crosses the second from its right to its left.

    With counterclockwise rotations the left of out-dart ``b`` is
    ``sigma(b)``, so the test is ``first_out == sigma(second_out)``.
    """
    return 1 if first[1] == rot(second[1]) else -1


def gauss_code(c: Multicurve, basepoint=None) -> GaussCode:
    order, first, second = pass_table(c, basepoint)
    signs = tuple(crossing_sign(first[v], second[v]) for v in range(c.num_vertices))
    passes = []
    for comp in order:
        seen = set()
        out = []
        for v, _, _ in comp:
            out.append((v, 1 if v in seen else 0))
            seen.add(v)
        passes.append(tuple(out))
    return GaussCode(tuple(passes), signs)


def realize(code) -> Multicurve:
    """Build the curve of a signed Gauss code; raise if it is not planar.

    ``code`` is a :class:`GaussCode` or a pair ``(sequences, signs)`` where
    each sequence lists vertex numbers (any hashable labels) per component.
    """
    if isinstance(code, GaussCode):
        seqs = [[v for v, _ in comp] for comp in code.passes]
        signs = dict(enumerate(code.signs))
    else:
        seqs, signs = code
        seqs = [list(s) for s in seqs]
        if not isinstance(signs, dict):
            signs = dict(enumerate(signs))
    labels = []
    for s in seqs:
        for v in s:
            if v not in labels:
                labels.append(v)
    index = {v: i for i, v in enumerate(labels)}
    count = {}
    for s in seqs:
        for v in s:
            count[v] = count.get(v, 0) + 1
    if any(k != 2 for k in count.values()):
        raise UnrealizableCode("every vertex must appear exactly twice")
    if not labels:
        return simple_circle()
    n = len(labels)
    # pass p of vertex v uses slots; in/out darts per pass
    seen = {}
    io = []  # per component list of (in, out)
    for s in seqs:
        comp = []
        for v in s:
            k = seen.get(v, 0)
            seen[v] = k + 1
            comp.append((v, k))
        io.append(comp)
    slot = {}
    for v in labels:
        base = 4 * index[v]
        sg = signs.get(v, signs.get(index[v]))
        if sg not in (1, -1):
            raise UnrealizableCode(f"missing sign for vertex {v}")
        # ccw: second_out, first_out, second_in, first_in   (sign +1)
        #      second_out, first_in, second_in, first_out   (sign -1)
        if sg > 0:
            slot[(v, 1, "out")], slot[(v, 0, "out")], slot[(v, 1, "in")], slot[(v, 0, "in")] = range(base, base + 4)
        else:
            slot[(v, 1, "out")], slot[(v, 0, "in")], slot[(v, 1, "in")], slot[(v, 0, "out")] = range(base, base + 4)
    alpha = np.full(4 * n, -1, dtype=np.int64)
    for comp in io:
        for j, (v, k) in enumerate(comp):
            w, kk = comp[(j + 1) % len(comp)]
            a = slot[(v, k, "out")]
            b = slot[(w, kk, "in")]
            alpha[a] = b
            alpha[b] = a
    try:
        m = EmbeddedMap(slot_sigma(4 * n), alpha, check=True)
    except InvalidMap as exc:
        raise UnrealizableCode(f"code is not realizable on the sphere: {exc}") from exc
    del m
    return Multicurve(alpha)


# -- surgery ------------------------------------------------------------------------


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _surgery(c, removed, new_vertices=(), route=None, links=(), vanish=(), merges=()):
    """Rebuild ``c`` after replacing the vertices in ``removed``.

    ``new_vertices`` are 4-lists of slot tokens in ccw order: a non-negative
    token reuses an old port dart of a removed vertex, a negative token is a
    fresh dart. ``route`` maps a port of a removed vertex to the port where
    the curve leaves the removed region. ``links`` pairs tokens (or old darts
    at kept vertices) into edges and override ``alpha``. ``vanish`` lists old
    faces that disappear and ``merges`` pairs of old faces that become one.
    """
    route = route or {}
    alpha = c.alpha
    nv = c.num_vertices
    removed = set(removed)
    kept = [v for v in range(nv) if v not in removed]
    newid = {}
    for j, v in enumerate(kept):
        for s in range(4):
            newid[4 * v + s] = 4 * j + s
    nk = len(kept)
    reused = set()
    for j, slots in enumerate(new_vertices):
        for s, t in enumerate(slots):
            newid[t] = 4 * (nk + j) + s
            if t >= 0:
                reused.add(t)
    total = 4 * (nk + len(new_vertices))
    partner = {}
    for a, b in links:
        partner[a] = b
        partner[b] = a
    used_route = set()
    new_alpha = np.full(total, -1, dtype=np.int64)

    def resolve(y):
        steps = 0
        while y not in newid or (y >= 0 and y // 4 in removed and y not in reused):
            if y not in route:
                raise AssertionError(f"surgery reached dead dart {y}")
            used_route.add(y)
            z = route[y]
            used_route.add(z)
            y = int(alpha[z])
            steps += 1
            if steps > len(alpha) + 4:
                raise AssertionError("surgery route does not terminate")
        return newid[y]

    for tok, nd in newid.items():
        if tok in partner:
            new_alpha[nd] = newid[partner[tok]]
        elif tok < 0:
            raise AssertionError(f"fresh dart {tok} has no partner")
        else:
            new_alpha[nd] = resolve(int(alpha[tok]))
    # vertex-free loops left behind by the route
    circles = 0
    for p in route:
        if p in used_route:
            continue
        circles += 1
        y = p
        while True:
            used_route.add(y)
            z = route[y]
            used_route.add(z)
            y = int(alpha[z])
            if y in used_route:
                break
    if total and circles:
        raise Disconnected("surgery splits off a free circle")
    boundary = None
    if c.boundary is not None:
        boundary = _track_boundary(c, removed, reused, newid, vanish, merges, total)
    out = Multicurve(new_alpha, boundary, None, circles if not total else 0, check=False)
    if total and not _slot_connected(new_alpha):
        raise Disconnected("surgery disconnects the multicurve")
    if CHECK and total:
        out.emap
        EmbeddedMap(slot_sigma(total), new_alpha, check=True)
    return out


def _slot_connected(alpha) -> bool:
    n = alpha.shape[0]
    nv = n // 4
    seen = np.zeros(nv, dtype=bool)
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for s in range(4):
            w = int(alpha[4 * v + s]) // 4
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == nv


def _track_boundary(c, removed, reused, newid, vanish, merges, total):
    uf = _UF()
    bf = c.boundary_faces()
    if c.is_circle:
        raise NotApplicable("no local moves on a vertex-free curve")
    face_of = c.face_of
    for a, b in merges:
        uf.union(int(a), int(b))
    vanish = {int(f) for f in vanish}
    if vanish & set(bf):
        raise BoundaryForbidden("move deletes a boundary face")
    roots = [uf.find(f) for f in bf]
    if total:
        out = []
        for r in roots:
            rep = None
            for d in range(c.num_darts):
                if (d // 4 not in removed or d in reused) and uf.find(int(face_of[d])) == r:
                    rep = newid[d]
                    break
            if rep is None:
                raise AssertionError("boundary face lost during surgery")
            out.append(rep)
        return tuple(out)
    live = sorted({uf.find(int(f)) for f in range(c.num_faces) if int(f) not in vanish})
    if len(live) != 2:
        return None
    return tuple(live.index(r) for r in roots)


# -- local moves ----------------------------------------------------------------------


def _monogon(c, d):
    v, s = divmod(d, 4)
    if int(c.alpha[d]) != 4 * v + (s + 3) % 4:
        raise NotApplicable(f"dart {d} does not bound a monogon")
    p = 4 * v + (s + 1) % 4
    q = 4 * v + (s + 2) % 4
    return _surgery(c, {v}, route={p: q, q: p}, vanish={int(c.face_of[d])})


def _bigon_parts(c, d1):
    d2 = c.phi(d1)
    if d2 == d1 or c.phi(d2) != d1:
        raise NotApplicable(f"dart {d1} does not bound a bigon")
    u, v = d2 // 4, d1 // 4
    if u == v:
        raise NotApplicable("bigon with a repeated vertex")
    e1, e2 = rot(d2, 1), rot(d2, 2)
    f1, f2 = rot(d1, 1), rot(d1, 2)
    return u, v, e1, e2, f1, f2


def _bigon_remove(c, d1):
    u, v, e1, e2, f1, f2 = _bigon_parts(c, d1)
    fo = c.face_of
    return _surgery(
        c, {u, v},
        route={e1: f2, f2: e1, e2: f1, f1: e2},
        vanish={int(fo[d1])},
        merges=[(int(fo[e2]), int(fo[f2]))],
    )


def _bigon_collapse(c, d1):
    u, v, e1, e2, f1, f2 = _bigon_parts(c, d1)
    return _surgery(c, {u, v}, new_vertices=[[e1, e2, f1, f2]], vanish={int(c.face_of[d1])})


def _trigon_ports(c, d0):
    d1 = c.phi(d0)
    d2 = c.phi(d1)
    if c.phi(d2) != d0 or d1 == d0:
        raise NotApplicable(f"dart {d0} does not bound a trigon")
    verts = {d0 // 4, d1 // 4, d2 // 4}
    if len(verts) != 3:
        raise NotApplicable("trigon with a repeated vertex")
    ports = [rot(d1, 1), rot(d1, 2), rot(d0, 1), rot(d0, 2), rot(d2, 1), rot(d2, 2)]
    # each of the three strands must leave through antipodal ports
    for i, p in enumerate(ports):
        t = int(c.alpha[opposite(p)])
        if t // 4 not in verts:
            raise NotApplicable("trigon side is not a single strand segment")
        if opposite(t) != ports[(i + 3) % 6]:
            raise NotApplicable("trigon strands do not pairwise cross")
    return verts, ports


def _trigon_flip(c, d0):
    verts, p = _trigon_ports(c, d0)
    a, b, cc, d, e, f = -1, -2, -3, -4, -5, -6
    return _surgery(
        c, verts,
        new_vertices=[[p[1], p[2], a, b], [p[3], p[4], cc, d], [p[5], p[0], e, f]],
        links=[(a, d), (b, e), (cc, f)],
        vanish={int(c.face_of[d0])},
    )


def _loop_add(c, x):
    """0->1: new monogon inside the face right of dart ``x``."""
    if c.is_circle:
        if c.boundary is not None:
            raise NotApplicable("upward moves on an annulus circle are not supported")
        return Multicurve([1, 0, 3, 2])
    if c.is_boundary_face(int(c.face_of[x])):
        raise BoundaryForbidden("loop would be added inside a boundary face")
    y = int(c.alpha[x])
    A, B, C, D = -1, -2, -3, -4
    return _surgery(c, set(), new_vertices=[[A, B, C, D]], links=[(x, A), (B, C), (D, y)])


def _bigon_add(c, x, y):
    """0->2: push the edge of ``x`` across the edge of ``y``; both bound one face."""
    if c.is_circle:
        raise NotApplicable("0->2 needs two edges")
    fo = c.face_of
    if fo[x] != fo[y] or x == y or int(c.alpha[x]) == y:
        raise NotApplicable("darts must bound a common face on distinct edges")
    if c.is_boundary_face(int(fo[x])):
        raise BoundaryForbidden("move inside a boundary face")
    xp, yp = int(c.alpha[x]), int(c.alpha[y])
    PE, PN, PW, PS, QE, QN, QW, QS = range(-1, -9, -1)
    return _surgery(
        c, set(),
        new_vertices=[[PE, PN, PW, PS], [QE, QN, QW, QS]],
        links=[(x, PN), (yp, PW), (PE, QW), (PS, QS), (QN, xp), (QE, y)],
    )


def _vertex_split(c, v, k):
    """1->2: open vertex ``v`` into a bigon; ``k`` picks the pair of ends."""
    q = [4 * v + (s + k) % 4 for s in range(4)]
    t1, t2, s1, s2 = -1, -2, -3, -4
    return _surgery(c, {v}, new_vertices=[[t1, t2, q[0], q[1]], [s1, s2, q[2], q[3]]], links=[(t1, s2), (t2, s1)])


_APPLY = {
    "H1down": lambda c, s: _monogon(c, s[0]),
    "M1down": lambda c, s: _monogon(c, s[0]),
    "H2down": lambda c, s: _bigon_remove(c, s[0]),
    "M21": lambda c, s: _bigon_collapse(c, s[0]),
    "H33": lambda c, s: _trigon_flip(c, s[0]),
    "M33": lambda c, s: _trigon_flip(c, s[0]),
    "H1up": lambda c, s: _loop_add(c, s[0]),
    "M1up": lambda c, s: _loop_add(c, s[0]),
    "H2up": lambda c, s: _bigon_add(c, s[0], s[1]),
    "M12": lambda c, s: _vertex_split(c, s[0], s[1]),
}


def apply_move(c: Multicurve, m: CurveMove) -> Multicurve:
    try:
        fn = _APPLY[m.kind]
    except KeyError:
        raise NotApplicable(f"unknown move kind {m.kind}") from None
    site = tuple(int(s) for s in m.site)
    if not c.is_circle and any(not 0 <= s < c.num_darts for s in site[:1]):
        raise NotApplicable(f"site {site} outside the curve")
    if m.kind in ("H1down", "M1down", "H2down", "M21", "H33", "M33"):
        if c.is_circle:
            raise NotApplicable("a simple circle admits no reducing move")
        if c.is_boundary_face(int(c.face_of[site[0]])):
            raise BoundaryForbidden("move on a boundary face")
    try:
        return fn(c, site)
    except Disconnected as exc:
        raise NotApplicable(f"{m.kind} would disconnect the multicurve") from exc


def enumerate_moves(c: Multicurve, system: str = HOMOTOPY, upward: bool = False) -> list[CurveMove]:
    """Every applicable move of the system, boundary rules included.

    Reducing moves and 3->3 are always listed; upward moves only when
    ``upward`` is set. A homotopy 2->0 that would disconnect the multicurve
    is left out.
    """
    if system not in DOWN_KINDS:
        raise ValueError(f"unknown move system {system!r}")
    moves = []
    if c.is_circle:
        if upward and c.boundary is None:
            moves.append(CurveMove(UP_KINDS[system][0], (0,)))
        return moves
    k1, k2, k3 = DOWN_KINDS[system]
    for orbit in _face_orbits(c):
        f = int(c.face_of[orbit[0]])
        if c.is_boundary_face(f):
            continue
        d = min(orbit)
        if len(orbit) == 1:
            moves.append(CurveMove(k1, (d,)))
        elif len(orbit) == 2 and orbit[0] // 4 != orbit[1] // 4:
            if k2 == "H2down":
                try:
                    _bigon_remove(c, d)
                except Disconnected:
                    continue
            moves.append(CurveMove(k2, (d,)))
        elif len(orbit) == 3:
            try:
                _trigon_ports(c, d)
            except NotApplicable:
                continue
            moves.append(CurveMove(k3, (d,)))
    if upward:
        moves.extend(_upward_moves(c, system))
    return moves


def _upward_moves(c, system):
    out = []
    up1, up2 = UP_KINDS[system]
    for x in range(c.num_darts):
        if not c.is_boundary_face(int(c.face_of[x])):
            out.append(CurveMove(up1, (x,)))
    if system == MEDIAL:
        for v in range(c.num_vertices):
            out.extend(CurveMove(up2, (v, k)) for k in (0, 1))
    else:
        for orbit in _face_orbits(c):
            if c.is_boundary_face(int(c.face_of[orbit[0]])):
                continue
            for x in orbit:
                for y in orbit:
                    if x != y and int(c.alpha[x]) != y:
                        out.append(CurveMove(up2, (x, y)))
    return out


def _face_orbits(c):
    seen = np.zeros(c.num_darts, dtype=bool)
    out = []
    for d in range(c.num_darts):
        if seen[d]:
            continue
        orbit = c.face_darts(d)
        seen[orbit] = True
        out.append(orbit)
    return out


# -- smoothing ---------------------------------------------------------------------------


def smooth(c: Multicurve, vertex=None, choice="A", choices=None) -> Multicurve:
    """Smooth one vertex, or several given as ``choices={vertex: "A"|"B"}``.

    Raises :class:`Disconnected` when the result has a component with
    vertices next to another component; a result made only of circles is
    returned with ``circles`` set.
    """
    if choices is None:
        choices = {vertex: choice}
    if not choices:
        return c
    route = {}
    merges = []
    fo = c.face_of
    for v, ch in choices.items():
        v = int(v)
        if not 0 <= v < c.num_vertices:
            raise NotApplicable(f"no vertex {v}")
        b = 4 * v
        if ch == "A":
            pairs = ((b, b + 1), (b + 2, b + 3))
            merges.append((int(fo[b + 2]), int(fo[b])))
        elif ch == "B":
            pairs = ((b + 1, b + 2), (b + 3, b))
            merges.append((int(fo[b + 1]), int(fo[b + 3])))
        else:
            raise ValueError(f"smoothing choice must be 'A' or 'B', got {ch!r}")
        for p, q in pairs:
            route[p] = q
            route[q] = p
    return _surgery(c, set(int(v) for v in choices), route=route, merges=merges)


def is_connected_smoothing(c: Multicurve, choices) -> bool:
    try:
        return smooth(c, choices=choices).connected
    except Disconnected:
        return False


# -- annulus invariants ------------------------------------------------------------------


def depth(c: Multicurve) -> int:
    """Fewest crossings of a path between the two boundary faces."""
    if c.boundary is None:
        raise NoBoundary("depth needs an annulus curve")
    if c.is_circle:
        return 0 if c.boundary[0] == c.boundary[1] else 1
    f1, f2 = c.boundary_faces()
    dist = _kernels.dual_distances(c.face_of, c.alpha, f1, c.num_faces)
    return int(dist[f2])


def dual_path(c: Multicurve, avoid_first: bool = False) -> list[int]:
    """Darts crossed by a shortest boundary-to-boundary path.

    Crossing dart ``d`` moves from the face right of ``d`` to the face right
    of ``alpha(d)``. ``avoid_first`` explores darts in reverse order, which
    usually yields a different path of the same length.
    """
    if c.boundary is None:
        raise NoBoundary("dual paths join the two boundary faces")
    if c.is_circle:
        return []
    f1, f2 = c.boundary_faces()
    fo = c.face_of
    by_face = {}
    for d in range(c.num_darts):
        by_face.setdefault(int(fo[d]), []).append(d)
    if avoid_first:
        for v in by_face.values():
            v.reverse()
    parent = {f1: None}
    queue = [f1]
    for f in queue:
        if f == f2:
            break
        for d in by_face[f]:
            g = int(fo[c.alpha[d]])
            if g not in parent:
                parent[g] = d
                queue.append(g)
    path = []
    f = f2
    while parent[f] is not None:
        d = parent[f]
        path.append(d)
        f = int(fo[d])
    return path[::-1]


def winding_number(c: Multicurve, path=None) -> int:
    """Signed crossings of a path from the first boundary to the second.

    A crossing from the curve's left to its right counts +1. The curve is
    directed by its basepoint (least dart, forward, by default). ``path`` is a
    list of crossed darts as produced by :func:`dual_path`.
    """
    if c.boundary is None:
        raise NoBoundary("winding number needs an annulus curve")
    ncomp, _ = components(c)
    if ncomp != 1:
        raise MultiComponent(f"curve has {ncomp} components")
    if c.is_circle:
        if c.boundary[0] == c.boundary[1]:
            return 0
        sign = 1 if (c.basepoint is None or c.basepoint[1] > 0) else -1
        return sign if c.boundary[0] == 0 else -sign
    forward = np.zeros(c.num_darts, dtype=bool)
    for _, o in traversal(c):
        forward[o] = True
    if path is None:
        path = dual_path(c)
    fo = c.face_of
    f1, f2 = c.boundary_faces()
    face = f1
    total = 0
    for d in path:
        if int(fo[d]) != face:
            raise ValueError("path is not a walk in the dual graph")
        # the face right of d lies right of the curve exactly when d is forward
        total += -1 if forward[d] else 1
        face = int(fo[c.alpha[d]])
    if face != f2:
        raise ValueError("path does not end at the second boundary face")
    return total


def is_alpha(c: Multicurve) -> int | None:
    """``d`` when ``c`` is the reduced annulus curve with winding number ``d``."""
    if c.boundary is None:
        raise NoBoundary("is_alpha needs an annulus curve")
    if c.is_circle:
        if c.circles != 1:
            return None
        return 0 if c.boundary[0] == c.boundary[1] else 1
    from .generators import gen_alpha

    d = c.num_vertices + 1
    return d if gen_alpha(d).key() == c.key() else None


# -- text format -------------------------------------------------------------------
#
# ``.crv`` = ``.map`` plus optional lines
#   boundary <dart> <dart>     darts whose right faces hold the two boundaries
#   basepoint <dart> <+|->
#   circles <k>                vertex-free curves only; boundary darts are sides


def serialize_curve(c: Multicurve) -> str:
    text = serialize(c.emap)
    if c.is_circle:
        text += f"circles {c.circles}\n"
    if c.boundary is not None:
        text += f"boundary {c.boundary[0]} {c.boundary[1]}\n"
    if c.basepoint is not None:
        text += f"basepoint {c.basepoint[0]} {'+' if c.basepoint[1] >= 0 else '-'}\n"
    return text


def parse_curve(text: str) -> Multicurve:
    m, found = parse_sections(text, extra=("boundary", "basepoint", "circles"))
    boundary = basepoint = None
    if "boundary" in found:
        lineno, tok = found["boundary"]
        if len(tok) != 2:
            raise ParseError("expected 'boundary <dart> <dart>'", lineno)
        try:
            boundary = tuple(int(t) for t in tok)
        except ValueError:
            raise ParseError("boundary darts must be integers", lineno) from None
        limit = 2 if m.num_darts == 0 else m.num_darts
        if any(not 0 <= b < limit for b in boundary):
            raise ParseError("boundary dart out of range", lineno)
    if "basepoint" in found:
        lineno, tok = found["basepoint"]
        if len(tok) != 2 or tok[1] not in "+-" or not tok[0].isdigit():
            raise ParseError("expected 'basepoint <dart> <+|->'", lineno)
        basepoint = (int(tok[0]), 1 if tok[1] == "+" else -1)
        if basepoint[0] >= m.num_darts:
            raise ParseError("basepoint dart out of range", lineno)
    if m.num_darts == 0:
        k = 1
        if "circles" in found:
            lineno, tok = found["circles"]
            if len(tok) != 1 or not tok[0].isdigit() or int(tok[0]) < 1:
                raise ParseError("expected 'circles <count>'", lineno)
            k = int(tok[0])
        return Multicurve([], boundary, circles=k)
    if "circles" in found:
        raise ParseError("'circles' is only allowed without darts", found["circles"][0])
    sigma = m.sigma
    if np.array_equal(sigma, slot_sigma(m.num_darts)):
        return Multicurve(m.alpha, boundary, basepoint)
    return from_map(m, boundary, basepoint)
