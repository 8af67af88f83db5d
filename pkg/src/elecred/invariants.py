"""Crossing signs, interleaving, and the defect of a closed curve.

For a closed curve with basepoint, ``sgn(x)`` is +1 when the first pass
through ``x`` crosses the second pass from its right to its left. Two
vertices interleave when they alternate ``x, y, x, y`` along the curve. The
defect is ``-2 * sum(sgn(x) * sgn(y))`` over interleaved pairs; it does not
depend on the basepoint or orientation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .curve import Multicurve, components, crossing_sign, pass_table
from .errors import BadBoundaryCount, MultiComponent


@dataclass(frozen=True)
class VertexSign:
    vertex: int
    sign: int


def _single(c: Multicurve):
    ncomp, _ = components(c)
    if ncomp != 1:
        raise MultiComponent(f"expected one closed curve, found {ncomp} components")


def positions(c: Multicurve, basepoint=None):
    """First and second position of every vertex along the curve, and signs."""
    _single(c)
    order, first, second = pass_table(c, basepoint)
    n = c.num_vertices
    pos1 = np.full(n, -1, dtype=np.int64)
    pos2 = np.full(n, -1, dtype=np.int64)
    for k, (v, _, _) in enumerate(order[0] if order else []):
        if pos1[v] < 0:
            pos1[v] = k
        else:
            pos2[v] = k
    sign = np.array([crossing_sign(first[v], second[v]) for v in range(n)], dtype=np.int64)
    return pos1, pos2, sign


def signs(c: Multicurve, basepoint=None) -> list[VertexSign]:
    _, _, sign = positions(c, basepoint)
    return [VertexSign(v, int(s)) for v, s in enumerate(sign)]


def interleaved(pos1, pos2, x, y) -> bool:
    a, b = pos1[x], pos2[x]
    return (a < pos1[y] < b) != (a < pos2[y] < b)


def interleaving_matrix(c: Multicurve) -> np.ndarray:
    """Symmetric boolean matrix of interleaved vertex pairs."""
    pos1, pos2, _ = positions(c)
    n = c.num_vertices
    lo, hi = pos1[:, None], pos2[:, None]
    one = (lo < pos1[None, :]) & (pos1[None, :] < hi)
    two = (lo < pos2[None, :]) & (pos2[None, :] < hi)
    out = one != two
    out[np.arange(n), np.arange(n)] = False
    return out


def defect(c: Multicurve, basepoint=None) -> int:
    if c.is_circle:
        _single(c)
        return 0
    pos1, pos2, sign = positions(c, basepoint)
    return -2 * int(_kernels.interleaved_sign_sum(pos1, pos2, sign))


def defect_reference(c: Multicurve, basepoint=None) -> int:
    """Defect from the interleaving matrix; slower, independent of the kernel."""
    if c.is_circle:
        return 0
    _, _, sign = positions(c, basepoint)
    inter = interleaving_matrix(c)
    return -int(sign @ inter @ sign)


@dataclass(frozen=True)
class DefectParts:
    interior: int
    exterior: int
    mixed: int
    mixed_product: int

    @property
    def total(self) -> int:
        return self.interior + self.exterior + self.mixed


def defect_decomposition(c: Multicurve, circle) -> DefectParts:
    """Split the defect sum by where the two vertices of each pair lie.

    ``circle`` is a :class:`~elecred.tangle.SplitCircle` crossing the curve
    four times, cutting it into interior strands ``a, b`` and exterior strands
    ``d, e``. ``mixed_product`` is ``-2 * (sum of sgn over a-b crossings) *
    (sum of sgn over d-e crossings)``, which equals ``mixed``.
    """
    if len(circle.crossed) != 4:
        raise BadBoundaryCount(f"decomposition needs 4 crossings, got {len(circle.crossed)}")
    pos1, pos2, sign = positions(c)
    inter = interleaving_matrix(c)
    inside = np.zeros(c.num_vertices, dtype=bool)
    inside[list(circle.interior)] = True
    prod = np.outer(sign, sign) * inter
    interior = -int(prod[np.ix_(inside, inside)].sum())
    exterior = -int(prod[np.ix_(~inside, ~inside)].sum())
    mixed = -2 * int(prod[np.ix_(inside, ~inside)].sum())

    # strand of every pass; the curve changes strand whenever it crosses the circle
    _single(c)
    order, _, _ = pass_table(c)
    ports = set(circle.crossed)
    outer = {int(c.alpha[p]) for p in ports}
    strand_of_pass = []
    strand = 0
    for v, i, o in order[0]:
        strand_of_pass.append((v, strand))
        if o in ports or o in outer:
            strand += 1
    # the traversal may start mid-strand; merge the wrap-around piece
    nstr = strand
    strands = {}
    for v, s in strand_of_pass:
        s = s % nstr if nstr else 0
        strands.setdefault(v, []).append(s)
    in_sum = 0
    out_sum = 0
    for v, (s1, s2) in strands.items():
        if s1 == s2:
            continue
        if inside[v]:
            in_sum += int(sign[v])
        else:
            out_sum += int(sign[v])
    return DefectParts(interior, exterior, mixed, -2 * in_sum * out_sum)
