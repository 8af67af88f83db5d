"""Named curves and graphs, and seeded random inputs.

Flat torus curves ``T(p, q)`` are drawn as the closure of the braid
``(s_1 s_2 ... s_{p-1})^q`` around an annulus: strand positions run outward,
the braid runs counterclockwise. Each crossing has slots NE, NW, SW, SE
(0..3); strands arrive from the south and leave to the north, so NE-SW and
NW-SE are the two strands through it.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .curve import (
    HOMOTOPY,
    MEDIAL,
    DELTA,
    Multicurve,
    apply_move,
    enumerate_moves,
    simple_circle,
)
from .errors import BadParam, NotApplicable
from .planegraph import (
    PlaneGraph,
    add_chord,
    add_leaf,
    add_loop,
    add_parallel,
    apply_elec,
    enumerate_elec_moves,
    from_rotations,
    single_vertex,
    subdivide,
)

NE, NW, SW, SE = 0, 1, 2, 3


def closed_braid(p: int, q: int, annulus: bool = True) -> Multicurve:
    """Closure of ``(s_1 ... s_{p-1})^q`` on ``p`` strands."""
    if p < 1 or q < 1:
        raise BadParam("need p >= 1 and q >= 1")
    if p == 1:
        return simple_circle((0, 1) if annulus else None)
    crossings = [(j, i) for j in range(q) for i in range(p - 1)]
    n = len(crossings)
    alpha = np.full(4 * n, -1, dtype=np.int64)
    open_end = [None] * p
    first_in = [None] * p

    def attach(dart, pos):
        if open_end[pos] is None:
            first_in[pos] = dart
        else:
            alpha[dart] = open_end[pos]
            alpha[open_end[pos]] = dart

    for v, (_, i) in enumerate(crossings):
        attach(4 * v + SW, i)
        attach(4 * v + SE, i + 1)
        open_end[i] = 4 * v + NW
        open_end[i + 1] = 4 * v + NE
    for pos in range(p):
        alpha[open_end[pos]] = first_in[pos]
        alpha[first_in[pos]] = open_end[pos]
    boundary = None
    if annulus:
        inner = 4 * crossings.index((0, 0)) + SW
        outer = 4 * crossings.index((0, p - 2)) + NE
        boundary = (inner, outer)
    return Multicurve(alpha, boundary)


def gen_alpha(d: int) -> Multicurve:
    """Annulus curve with ``d - 1`` vertices and winding number ``d``."""
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise BadParam(f"alpha needs d >= 1, got {d}")
    return closed_braid(int(d), 1, annulus=True)


def gen_flat_torus(p: int, q: int) -> Multicurve:
    """Sphere curve ``T(p, q)`` with ``q (p - 1)`` vertices.

    ``q = 1`` is allowed and gives the sphere version of ``alpha_p``.
    """
    if p < 2 or q < 1:
        raise BadParam("flat torus curve needs p >= 2 and q >= 1")
    if math.gcd(p, q) != 1:
        raise BadParam(f"gcd({p}, {q}) != 1 gives a multicurve with several components")
    return closed_braid(p, q, annulus=False)


def gen_bullseye(k: int) -> PlaneGraph:
    """Path of length ``k`` between terminals with a loop at each inner vertex.

    The loop at vertex ``i`` encloses the terminal ``t_0`` side: rotation at
    an inner vertex is ``[next, loop, previous, loop]``.
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise BadParam(f"bullseye needs k >= 1, got {k}")
    rot = {}
    for i in range(k + 1):
        if i == 0:
            rot[i] = [1]
        elif i == k:
            rot[i] = [k - 1]
        else:
            rot[i] = [i + 1, i, i - 1, i]
    return from_rotations(rot, terminals=(0, k))


def gen_random_curve(n: int, seed: int = 0, annulus: bool = False, max_steps: int | None = None) -> Multicurve:
    """Connected curve with ``n`` vertices grown by random upward and 3->3 moves.

    Annulus curves are built on the sphere and then get two distinct random
    faces as boundary marks.
    """
    if n < 0:
        raise BadParam("n must be non-negative")
    rng = random.Random(seed)
    c = simple_circle()
    steps = 0
    limit = max_steps if max_steps is not None else 50 * (n + 1)
    while c.num_vertices != n:
        steps += 1
        if steps > limit:
            # restart deterministically from the current state via downward moves
            limit += 50 * (n + 1)
        moves = enumerate_moves(c, HOMOTOPY if rng.random() < 0.5 else MEDIAL, upward=True)
        if c.num_vertices < n:
            moves = [m for m in moves if DELTA[m.kind] > 0 and c.num_vertices + DELTA[m.kind] <= n] or moves
        else:
            moves = [m for m in moves if DELTA[m.kind] < 0] or moves
        m = moves[rng.randrange(len(moves))]
        try:
            c = apply_move(c, m)
        except NotApplicable:
            continue
        # sprinkle 3->3 flips to avoid drifting toward one shape
        if rng.random() < 0.3:
            tri = [t for t in enumerate_moves(c, HOMOTOPY) if t.kind == "H33"]
            if tri:
                c = apply_move(c, tri[rng.randrange(len(tri))])
    if annulus:
        c = mark_random_boundary(c, rng)
    return c


def mark_random_boundary(c: Multicurve, rng: random.Random) -> Multicurve:
    if c.is_circle:
        return c.with_boundary((0, rng.randrange(2)))
    faces = {}
    for d in range(c.num_darts):
        faces.setdefault(int(c.face_of[d]), d)
    keys = sorted(faces)
    a, b = rng.sample(keys, 2)
    return c.with_boundary((faces[a], faces[b]))


def gen_random_plane_graph(e: int, seed: int = 0, terminals: bool = False) -> PlaneGraph:
    """Connected plane graph with ``e`` edges grown by random expansions."""
    if e < 0:
        raise BadParam("e must be non-negative")
    rng = random.Random(seed)
    g = single_vertex()
    while g.num_edges < e:
        nd = g.map.num_darts
        roll = rng.random()
        try:
            if nd == 0 or roll < 0.25:
                g = add_leaf(g, rng.randrange(nd) if nd else 0)
            elif roll < 0.35:
                g = add_loop(g, rng.randrange(nd))
            elif roll < 0.55:
                g = subdivide(g, rng.randrange(nd))
            elif roll < 0.65:
                g = add_parallel(g, rng.randrange(nd))
            else:
                x = rng.randrange(nd)
                face = [d for d in range(nd) if g.map.face_of[d] == g.map.face_of[x] and d != x]
                if not face:
                    continue
                g = add_chord(g, x, rng.choice(face))
        except NotApplicable:
            continue
        if rng.random() < 0.15:
            ys = [mv for mv, _ in enumerate_elec_moves(g) if mv.kind == "YtoDelta"]
            if ys and g.num_edges + 3 <= e:
                g = apply_elec(g, rng.choice(ys))
    if terminals and g.num_vertices >= 2:
        a, b = rng.sample(range(g.num_vertices), 2)
        g = PlaneGraph(g.map, (a, b))
    return g
