"""Corpus and sweep checks behind ``verify-suite`` and the acceptance tests.

Each ``check_*`` function returns a :class:`CheckResult`; none of them
raise on a failed property, so a report always lists every check.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .curve import (
    HOMOTOPY,
    MEDIAL,
    Multicurve,
    apply_move,
    components,
    depth,
    enumerate_moves,
    is_alpha,
    simple_circle,
)
from .errors import NotApplicable
from .generators import (
    gen_alpha,
    gen_bullseye,
    gen_flat_torus,
    gen_random_curve,
    gen_random_plane_graph,
)
from .invariants import defect
from .planegraph import enumerate_elec_moves, enumerate_embeddings, is_unicursal, medial, Planarity
from .tangle import enumerate_circles, flip

logger = logging.getLogger(__name__)

FIGURE_EIGHT = Multicurve([1, 0, 3, 2])


@dataclass
class CheckResult:
    cid: int
    name: str
    passed: bool
    instances: int = 0
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.cid:2d} {self.name}: {self.instances} instances, {self.seconds:.1f}s. {self.detail}".rstrip()


def _dedupe(curves):
    seen = set()
    out = []
    for c in curves:
        k = c.key()
        if k not in seen:
            seen.add(k)
            out.append(c)
    return out


def single(c: Multicurve) -> bool:
    return components(c)[0] == 1


def sphere_corpus(max_vertices: int = 10, random_count: int = 200) -> list[Multicurve]:
    named = [simple_circle(), FIGURE_EIGHT]
    for p, q in [(2, 3), (2, 5), (3, 4), (2, 7), (3, 5), (4, 5), (2, 9), (3, 7)]:
        named.append(gen_flat_torus(p, q))
    for d in range(2, 9):
        named.append(gen_alpha(d).forget_boundary())
    rand = [gen_random_curve(seed % (max_vertices + 1), seed) for seed in range(random_count)]
    return _dedupe([c for c in named + rand if c.num_vertices <= max_vertices])


def annulus_corpus(max_vertices: int = 6, random_count: int = 60, graph_count: int = 30) -> list[Multicurve]:
    named = [gen_alpha(d) for d in range(1, max_vertices + 2)]
    named += [medial(gen_bullseye(k)) for k in range(1, (max_vertices + 1) // 2 + 1)]
    rand = [gen_random_curve(seed % (max_vertices + 1), seed, annulus=True) for seed in range(random_count)]
    graphs = []
    for seed in range(graph_count):
        g = gen_random_plane_graph(1 + seed % max_vertices, seed, terminals=True)
        if g.terminals and g.num_edges <= max_vertices:
            graphs.append(medial(g))
    return _dedupe([c for c in named + rand + graphs if c.num_vertices <= max_vertices])


def _timed(fn):
    def wrap(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrap.__name__ = fn.__name__
    wrap.__doc__ = fn.__doc__
    return wrap


TREFOIL_EXPECTED_ABS = 6


@_timed
def check_defect_sanity() -> CheckResult:
    """Simple circle and figure-eight have defect 0; the trefoil |defect| is 6."""
    trefoil = gen_flat_torus(2, 3)
    vals = {"simple": defect(simple_circle()), "figure-eight": defect(FIGURE_EIGHT), "trefoil": defect(trefoil)}
    ok = vals["simple"] == 0 and vals["figure-eight"] == 0 and abs(vals["trefoil"]) == TREFOIL_EXPECTED_ABS
    return CheckResult(1, "defect sanity", ok, 3, f"values {vals}; expected |trefoil| = {TREFOIL_EXPECTED_ABS}")


@_timed
def check_move_defect(corpus=None) -> CheckResult:
    """Every homotopy move (upward ones included) changes the defect by at most 2."""
    corpus = sphere_corpus() if corpus is None else corpus
    count = 0
    bad = []
    for c in corpus:
        if not single(c):
            continue
        d0 = defect(c)
        for m in enumerate_moves(c, HOMOTOPY, upward=True):
            try:
                c2 = apply_move(c, m)
            except NotApplicable:
                continue
            count += 1
            if abs(defect(c2) - d0) > 2:
                bad.append((c, m))
    return CheckResult(2, "homotopy moves change defect by <= 2", not bad, count,
                       f"{len(bad)} violations", failures=bad[:5])


@_timed
def check_flip_defect(corpus=None, max_vertices: int = 6) -> CheckResult:
    """Flipping any tangle with one or two strands preserves the defect."""
    corpus = sphere_corpus(max_vertices) if corpus is None else corpus
    count = 0
    bad = []
    for c in corpus:
        if c.is_circle or c.num_vertices > max_vertices or not single(c):
            continue
        d0 = defect(c)
        for s in enumerate_circles(c):
            for axis in ((1,) if len(s.crossed) == 2 else (1, 3)):
                f = flip(c, s, axis)
                count += 1
                if not single(f) or defect(f) != d0 or f.num_vertices != c.num_vertices:
                    bad.append((c, s, axis))
    return CheckResult(3, "tangle flips preserve defect", not bad, count, f"{len(bad)} violations", failures=bad[:5])


@_timed
def check_depth_invariance(corpus=None) -> CheckResult:
    """Medial electrical moves (upward ones included) never change depth."""
    corpus = annulus_corpus(8, 120) if corpus is None else corpus
    count = 0
    bad = []
    for c in corpus:
        d0 = depth(c)
        for m in enumerate_moves(c, MEDIAL, upward=True):
            try:
                c2 = apply_move(c, m)
            except NotApplicable:
                continue
            count += 1
            if depth(c2) != d0:
                bad.append((c, m))
    return CheckResult(4, "medial moves preserve depth", not bad, count, f"{len(bad)} violations", failures=bad[:5])


def unicursal_graphs(count: int = 50, max_edges: int = 12):
    out = []
    seed = 0
    while len(out) < count:
        g = gen_random_plane_graph(2 + seed % (max_edges - 1), seed)
        seed += 1
        if g.num_edges and g.num_edges <= max_edges and is_unicursal(g):
            out.append(g)
    return out


@_timed
def check_embedding_defect(count: int = 50, budget: int = 6, limit: int = 400) -> CheckResult:
    """All embeddings reachable by reflections and eversions share the medial defect."""
    graphs = unicursal_graphs(count)
    total = 0
    bad = []
    for g in graphs:
        d0 = defect(medial(g))
        for h in enumerate_embeddings(g, budget, limit=limit):
            total += 1
            if not is_unicursal(h) or defect(medial(h)) != d0:
                bad.append((g, h))
    return CheckResult(5, "medial defect is embedding independent", not bad, total,
                       f"{len(graphs)} graphs, {len(bad)} violations", failures=bad[:5])


@_timed
def check_reduced_unique(corpus=None, max_vertices: int = 6) -> CheckResult:
    """The X-oracle witness ends at alpha_d with d the depth of the input."""
    corpus = annulus_corpus(max_vertices) if corpus is None else corpus
    bad = []
    n = 0
    for c in corpus:
        if c.num_vertices > max_vertices:
            continue
        n += 1
        res = engine.oracle_X(c)
        final = res.witness.replay()
        if is_alpha(final) != depth(c) or final.key() != res.witness.final.key():
            bad.append(c)
    return CheckResult(6, "reduced annulus curves are alpha_depth", not bad, n, f"{len(bad)} violations",
                       failures=bad[:5])


@_timed
def check_inequalities(annulus=None, sphere=None, max_vertices: int = 6, validate_upto: int = 5) -> CheckResult:
    """X + depth/2 >= H (annulus); X >= H >= |defect|/2 and Xbar >= Hbar >= |defect|/2 (sphere)."""
    annulus = annulus_corpus(max_vertices) if annulus is None else annulus
    sphere = sphere_corpus(max_vertices) if sphere is None else sphere
    bad = []
    n = 0
    validated = 0
    for c in annulus:
        if c.num_vertices > max_vertices or not single(c):
            continue
        n += 1
        x, h, dp = engine.X(c), engine.H(c), depth(c)
        if not x + dp / 2 >= h:
            bad.append(("ineq", c, x, h, dp))
        if c.num_vertices <= validate_upto:
            validated += 1
            for system, val in ((MEDIAL, x), (HOMOTOPY, h)):
                if engine.validate_minimal(c, system, val) is not None:
                    bad.append(("not minimal", system, c))
    for c in sphere:
        if c.num_vertices > max_vertices or not single(c):
            continue
        n += 1
        x, h, df = engine.X(c), engine.H(c), defect(c)
        xb, hb = engine.Xbar(c), engine.Hbar(c)
        if not x >= h >= abs(df) / 2:
            bad.append(("XH", c, x, h, df))
        if not xb >= hb >= abs(df) / 2:
            bad.append(("XbarHbar", c, xb, hb, df))
        if not (xb <= x and hb <= h):
            bad.append(("bar above plain", c, x, xb, h, hb))
        if c.num_vertices <= validate_upto:
            validated += 1
            for system, val in ((MEDIAL, x), (HOMOTOPY, h)):
                if engine.validate_minimal(c, system, val) is not None:
                    bad.append(("not minimal", system, c))
    return CheckResult(7, "oracle inequalities", not bad, n, f"{validated} validated by deepening search, {len(bad)} violations",
                       failures=bad[:5])


@_timed
def check_smoothing(annulus=None, sphere=None, max_vertices: int = 6) -> CheckResult:
    """Connected proper smoothings: X + depth/2 does not grow (annulus), Xbar drops (sphere)."""
    annulus = annulus_corpus(max_vertices) if annulus is None else annulus
    sphere = sphere_corpus(max_vertices) if sphere is None else sphere
    bad = []
    n = 0
    for c in annulus:
        if c.num_vertices > max_vertices:
            continue
        lhs = engine.X(c) + depth(c) / 2
        for choices, s in engine.connected_smoothings(c):
            n += 1
            if engine.X(s) + depth(s) / 2 > lhs:
                bad.append(("annulus", c, choices))
    for c in sphere:
        if c.num_vertices > max_vertices:
            continue
        xb = engine.Xbar(c)
        for choices, s in engine.connected_smoothings(c):
            n += 1
            if not engine.Xbar(s) < xb:
                bad.append(("sphere", c, choices))
    return CheckResult(8, "smoothing inequalities", not bad, n, f"{len(bad)} violations", failures=bad[:5])


def torus_defects(ps=range(3, 13)):
    rows = []
    for p in ps:
        c = gen_flat_torus(p, p + 1)
        rows.append((p, c.num_vertices, defect(c)))
    return rows


def loglog_slope(rows) -> float:
    x = np.log([r[1] for r in rows])
    y = np.log([abs(r[2]) for r in rows])
    return float(np.polyfit(x, y, 1)[0])


@_timed
def check_defect_growth(threshold: float = 1.45) -> CheckResult:
    """|defect(T(p, p+1))| grows at least like n^1.45 for p = 3..12."""
    rows = torus_defects()
    slope = loglog_slope(rows)
    ok = all(r[2] != 0 for r in rows) and slope >= threshold
    return CheckResult(9, "defect growth of T(p,p+1)", ok, len(rows),
                       f"slope {slope:.4f} (threshold {threshold}); |defect| {[abs(r[2]) for r in rows]}")


@_timed
def check_bullseyes(kmax: int = 8) -> CheckResult:
    """medial(B_k) is alpha_2k and B_2 has no facial electrical move."""
    bad = []
    for k in range(1, kmax + 1):
        if medial(gen_bullseye(k)).key() != gen_alpha(2 * k).key():
            bad.append(k)
    facial = [m for m, cls in enumerate_elec_moves(gen_bullseye(2)) if cls is Planarity.FACIAL]
    ok = not bad and not facial
    return CheckResult(10, "bullseye identities", ok, kmax + 1,
                       f"mismatched k {bad}; facial moves on B_2: {[str(m) for m in facial]}")


CHECKS = {
    1: check_defect_sanity,
    2: check_move_defect,
    3: check_flip_defect,
    4: check_depth_invariance,
    5: check_embedding_defect,
    6: check_reduced_unique,
    7: check_inequalities,
    8: check_smoothing,
    9: check_defect_growth,
    10: check_bullseyes,
}


def run_suite(level: str = "fast", only=None) -> list[CheckResult]:
    """Run the acceptance checks; ``fast`` shrinks every corpus."""
    if level not in ("fast", "full"):
        raise ValueError("level must be 'fast' or 'full'")
    results = []
    fast = level == "fast"
    for cid, fn in CHECKS.items():
        if only and cid not in only:
            continue
        if fast:
            kwargs = {
                2: dict(corpus=sphere_corpus(8, 60)),
                3: dict(corpus=sphere_corpus(5, 40), max_vertices=5),
                4: dict(corpus=annulus_corpus(5, 30, 10)),
                5: dict(count=10, budget=3),
                6: dict(corpus=annulus_corpus(4, 20, 10), max_vertices=4),
                7: dict(annulus=annulus_corpus(4, 20, 10), sphere=sphere_corpus(4, 40), max_vertices=4, validate_upto=3),
                8: dict(annulus=annulus_corpus(4, 20, 10), sphere=sphere_corpus(4, 40), max_vertices=4),
            }.get(cid, {})
        else:
            kwargs = {}
        res = fn(**kwargs)
        logger.info(res.line())
        results.append(res)
    return results
