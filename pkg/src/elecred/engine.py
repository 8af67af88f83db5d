"""Reduction drivers, exhaustive oracles, and lower-bound certificates.

``X`` counts medial electrical moves and ``H`` homotopy moves needed to
reduce a connected multicurve as far as possible. The barred variants allow
free tangle flips. All oracles search only non-increasing moves (1->0, 2->1 or
2->0, and 3->3) over canonical forms; :func:`validate_minimal` re-checks the
answer with upward moves allowed.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field

from .curve import (
    DELTA,
    HOMOTOPY,
    MEDIAL,
    CurveMove,
    Multicurve,
    apply_move,
    components,
    depth,
    enumerate_moves,
    is_alpha,
    smooth,
    winding_number,
)
from .errors import BudgetExceeded, NoUnicursalSmoothing, NotApplicable, ParseError, TooLarge
from .invariants import defect
from .planegraph import ElecMove, PlaneGraph, apply_elec, medial
from .tangle import enumerate_circles, find_circle, flip

logger = logging.getLogger(__name__)

X_CAP = 9
BAR_CAP = 7
REDUCING = {"H1down", "H2down", "M1down", "M21"}


# -- traces ----------------------------------------------------------------------------


@dataclass(frozen=True)
class MoveEvent:
    """One step: a curve move, a tangle flip, or an electrical move.

    A flip is stored as ``("flip", (axis, *interior_vertices))``.
    """

    kind: str
    site: tuple

    @property
    def is_flip(self) -> bool:
        return self.kind == "flip"

    def __str__(self):
        return " ".join([self.kind] + [str(s) for s in self.site])

    @classmethod
    def parse(cls, line: str, lineno: int | None = None) -> "MoveEvent":
        tok = line.split()
        if not tok:
            raise ParseError("empty event", lineno)
        try:
            return cls(tok[0], tuple(int(t) for t in tok[1:]))
        except ValueError:
            raise ParseError(f"bad site in event '{line.strip()}'", lineno) from None


def apply_event(obj, ev: MoveEvent):
    if ev.kind == "flip":
        axis, *interior = ev.site
        return flip(obj, find_circle(obj, interior), axis)
    if isinstance(obj, PlaneGraph):
        return apply_elec(obj, ElecMove(ev.kind, ev.site))
    return apply_move(obj, CurveMove(ev.kind, ev.site))


def replay(initial, events):
    cur = initial
    for ev in events:
        cur = apply_event(cur, ev)
    return cur


@dataclass
class Trace:
    initial: object
    events: list = field(default_factory=list)
    final: object = None

    def __post_init__(self):
        if self.final is None:
            self.final = self.initial

    def charged(self) -> int:
        return sum(1 for e in self.events if not e.is_flip)

    def replay(self):
        return replay(self.initial, self.events)

    def to_text(self) -> str:
        return "".join(f"{e}\n" for e in self.events)

    @classmethod
    def from_text(cls, initial, text: str) -> "Trace":
        events = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                events.append(MoveEvent.parse(line, lineno))
        return cls(initial, events, replay(initial, events))

    def __len__(self):
        return len(self.events)


@dataclass
class OracleResult:
    value: int
    witness: Trace
    explored: int


# -- oracles ----------------------------------------------------------------------------


def _system_moves(c, system):
    return enumerate_moves(c, system)


def is_reduced(c: Multicurve, system: str) -> bool:
    return not _system_moves(c, system)


def _check_goal(c: Multicurve, system: str, count: int = 1):
    if c.boundary is None:
        # homotopy moves keep every closed curve, so a multicurve ends as disjoint circles
        want = count if system == HOMOTOPY else None
        if not (c.is_circle and (want is None or c.circles == want)):
            raise AssertionError(f"reduced sphere curve is not a set of simple circles: {c!r}")
        return
    d = is_alpha(c)
    if d is None:
        raise AssertionError(f"reduced annulus curve is not some alpha_d: {c!r}")


def _flip_neighbors(c: Multicurve):
    if c.is_circle:
        return
    for s in enumerate_circles(c):
        for axis in ((1,) if len(s.crossed) == 2 else (1, 3)):
            try:
                out = flip(c, s, axis)
            except NotApplicable:
                continue
            yield MoveEvent("flip", (axis, *sorted(s.interior))), out


_cache: dict = {}


def oracle(c: Multicurve, system: str = MEDIAL, cap: int | None = None, flips: bool = False,
           max_states: int = 2_000_000) -> OracleResult:
    """Fewest moves of ``system`` reducing ``c``; flips (if allowed) cost nothing."""
    if cap is None:
        cap = BAR_CAP if flips else X_CAP
    if c.num_vertices > cap:
        raise TooLarge(f"{c.num_vertices} vertices exceeds the cap of {cap}")
    start = c.key()
    dist = {start: 0}
    node = {start: c}
    parent = {start: None}
    dq = deque([start])
    done = set()
    while dq:
        k = dq.popleft()
        if k in done:
            continue
        done.add(k)
        cur = node[k]
        moves = _system_moves(cur, system)
        if not moves:
            _check_goal(cur, system, components(c)[0])
            return OracleResult(dist[k], _build_trace(c, k, node, parent), len(dist))
        dk = dist[k]
        if flips:
            for ev, nxt in _flip_neighbors(cur):
                nk = nxt.key()
                if nk not in dist or dist[nk] > dk:
                    dist[nk] = dk
                    node[nk] = nxt
                    parent[nk] = (k, ev)
                    dq.appendleft(nk)
        for m in moves:
            try:
                nxt = apply_move(cur, m)
            except NotApplicable:
                continue
            nk = nxt.key()
            if nk not in dist or dist[nk] > dk + 1:
                dist[nk] = dk + 1
                node[nk] = nxt
                parent[nk] = (k, MoveEvent(m.kind, m.site))
                dq.append(nk)
        if len(dist) > max_states:
            raise BudgetExceeded(f"explored more than {max_states} states")
    raise AssertionError("search space exhausted without reaching a reduced curve")


def _build_trace(c, k, node, parent):
    events = []
    while parent[k] is not None:
        pk, ev = parent[k]
        events.append(ev)
        k = pk
    events.reverse()
    return Trace(c, events, replay(c, events))


def oracle_value(c: Multicurve, system: str = MEDIAL, flips: bool = False, cap: int | None = None) -> int:
    """Memoized oracle value."""
    key = (system, flips, c.key())
    if key not in _cache:
        _cache[key] = oracle(c, system, cap, flips).value
    return _cache[key]


def oracle_X(c, cap=X_CAP):
    return oracle(c, MEDIAL, cap)


def oracle_H(c, cap=X_CAP):
    return oracle(c, HOMOTOPY, cap)


def oracle_Xbar(c, cap=BAR_CAP):
    return oracle(c, MEDIAL, cap, flips=True)


def oracle_Hbar(c, cap=BAR_CAP):
    return oracle(c, HOMOTOPY, cap, flips=True)


def X(c):
    return oracle_value(c, MEDIAL)


def H(c):
    return oracle_value(c, HOMOTOPY)


def Xbar(c):
    return oracle_value(c, MEDIAL, flips=True)


def Hbar(c):
    return oracle_value(c, HOMOTOPY, flips=True)


# -- independent minimality check -------------------------------------------------------


def _goal_vertices(c: Multicurve, system: str) -> int:
    if c.boundary is None:
        return 0
    if system == MEDIAL:
        return max(depth(c) - 1, 0)
    return max(abs(winding_number(c)) - 1, 0)


def validate_minimal(c: Multicurve, system: str, value: int, slack: int = 2, max_nodes: int = 2_000_000):
    """Look for a reduction shorter than ``value`` using every move, upward too.

    Iterative deepening with vertex count capped at ``n + slack`` and the
    admissible bound "each move removes at most one (medial) or two
    (homotopy) vertices". Returns a shorter witness trace, or ``None``.
    """
    vcap = c.num_vertices + slack
    goal_v = _goal_vertices(c, system)
    per = 1 if system == MEDIAL else 2
    nodes = 0

    def h(cur):
        return max(0, math.ceil((cur.num_vertices - goal_v) / per))

    best = {}

    def dfs(cur, budget, path):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded("validator node budget exhausted")
        if is_reduced(cur, system):
            return list(path)
        if h(cur) > budget or budget == 0:
            return None
        k = cur.key()
        if best.get(k, -1) >= budget:
            return None
        best[k] = budget
        for m in enumerate_moves(cur, system, upward=True):
            if cur.num_vertices + DELTA[m.kind] > vcap:
                continue
            try:
                nxt = apply_move(cur, m)
            except NotApplicable:
                continue
            path.append(MoveEvent(m.kind, m.site))
            found = dfs(nxt, budget - 1, path)
            path.pop()
            if found is not None:
                return found
        return None

    for limit in range(0, value):
        best.clear()
        found = dfs(c, limit, [])
        if found is not None:
            return Trace(c, found, replay(c, found))
    return None


# -- greedy reduction -----------------------------------------------------------------


def _priority(m):
    if m.kind.endswith("1down"):
        return 0
    if m.kind in ("H2down", "M21"):
        return 1
    return 2


def reduce_greedy(c: Multicurve, system: str = MEDIAL, max_steps: int = 10_000) -> Trace:
    """Apply reducing moves greedily; a 3->3 move is used only when it exposes a new reducing move."""
    cur = c
    events = []
    seen = {cur.key()}
    for _ in range(max_steps):
        moves = sorted(enumerate_moves(cur, system), key=lambda m: (_priority(m), m.site))
        reducing = [m for m in moves if m.kind in REDUCING]
        step = None
        for m in reducing:
            try:
                step = (m, apply_move(cur, m))
                break
            except NotApplicable:
                continue
        if step is None:
            before = {(m.kind, m.site) for m in reducing}
            for m in moves:
                if m.kind not in ("H33", "M33"):
                    continue
                nxt = apply_move(cur, m)
                if nxt.key() in seen:
                    continue
                after = [x for x in enumerate_moves(nxt, system) if x.kind in REDUCING]
                if len(after) > len(before):
                    step = (m, nxt)
                    break
        if step is None:
            break
        m, cur = step
        seen.add(cur.key())
        events.append(MoveEvent(m.kind, m.site))
    return Trace(c, events, cur)


# -- smoothings -----------------------------------------------------------------------


def connected_smoothings(c: Multicurve, max_vertices: int | None = None):
    """Every connected proper smoothing, as ``(choices, curve)`` pairs."""
    n = c.num_vertices
    verts = range(n)
    out = []
    for k in range(1, n + 1 if max_vertices is None else min(n, max_vertices) + 1):
        for sub in itertools.combinations(verts, k):
            for pick in itertools.product("AB", repeat=k):
                choices = dict(zip(sub, pick))
                try:
                    s = smooth(c, choices=choices)
                except Exception:
                    continue
                if s.connected:
                    out.append((choices, s))
    return out


def unicursal_smoothing(c: Multicurve):
    """Fewest-vertex smoothing leaving a single closed curve (``{}`` if already one)."""
    if components(c)[0] == 1:
        return {}, c
    for k in range(1, c.num_vertices + 1):
        for sub in itertools.combinations(range(c.num_vertices), k):
            for pick in itertools.product("AB", repeat=k):
                choices = dict(zip(sub, pick))
                try:
                    s = smooth(c, choices=choices)
                except Exception:
                    continue
                if s.connected and components(s)[0] == 1 and not s.is_circle:
                    return choices, s
    raise NoUnicursalSmoothing("no smoothing leaves a single non-simple closed curve")


# -- certificates -------------------------------------------------------------------


@dataclass
class Certificate:
    statement: str
    inputs: tuple
    values: dict
    verdict: bool
    note: str = ""

    def __str__(self):
        vals = " ".join(f"{k}={v}" for k, v in self.values.items())
        status = "PASS" if self.verdict else "FAIL"
        tail = f"  ({self.note})" if self.note else ""
        return f"{status} {self.statement}: {vals}{tail}"


FLIP_NOTE = "flips range over split circles with connected sides and at most 4 crossings"


def certify_curve(c: Multicurve, smoothings: bool = True) -> list[Certificate]:
    key = (c.key().hex()[:16],)
    out = []
    single = components(c)[0] == 1
    if c.boundary is not None:
        x, dp = X(c), depth(c)
        if single:
            h = H(c)
            out.append(Certificate("X + depth/2 >= H", key, {"X": x, "depth": dp, "H": h}, x + dp / 2 >= h))
        if smoothings:
            worst = None
            ok = True
            for choices, s in connected_smoothings(c):
                lhs = X(s) + depth(s) / 2
                if lhs > x + dp / 2:
                    ok = False
                    worst = choices
            out.append(Certificate("X(s) + depth(s)/2 <= X + depth/2 for connected smoothings s", key,
                                   {"X": x, "depth": dp, "violation": worst}, ok))
        return out
    if single:
        x, h, df = X(c), H(c), defect(c)
        out.append(Certificate("X >= H", key, {"X": x, "H": h}, x >= h))
        out.append(Certificate("H >= |defect|/2", key, {"H": h, "defect": df}, h >= abs(df) / 2))
        if c.num_vertices <= BAR_CAP:
            xb, hb = Xbar(c), Hbar(c)
            out.append(Certificate("Xbar >= Hbar >= |defect|/2", key, {"Xbar": xb, "Hbar": hb, "defect": df},
                                   xb >= hb >= abs(df) / 2, FLIP_NOTE))
    if smoothings and c.num_vertices <= BAR_CAP:
        xb = Xbar(c)
        ok = True
        worst = None
        for choices, s in connected_smoothings(c):
            if not Xbar(s) < xb:
                ok = False
                worst = choices
        out.append(Certificate("Xbar(s) < Xbar for connected smoothings s", key, {"Xbar": xb, "violation": worst},
                               ok, FLIP_NOTE))
    return out


def certify_graph(g: PlaneGraph) -> list[Certificate]:
    """Lower bounds on reducing ``g`` from a unicursal smoothing of its medial."""
    m = medial(g)
    choices, gamma = unicursal_smoothing(m)
    key = (g.key().hex()[:16],)
    out = []
    df = defect(gamma)
    vals = {"smoothed": len(choices), "defect": df, "bound": abs(df) // 2}
    verdict = True
    note = "bound from the defect of a unicursal smoothing"
    if m.num_vertices <= BAR_CAP and m.boundary is None:
        xb = Xbar(m)
        vals["Xbar(medial)"] = xb
        verdict = xb >= abs(df) / 2
        note = FLIP_NOTE
    out.append(Certificate("planar electrical moves >= |defect(smoothing)|/2", key, vals, verdict, note))
    if g.terminals:
        if gamma.num_vertices <= X_CAP:
            h, dp = H(gamma), depth(gamma)
            x = X(m) if m.num_vertices <= X_CAP else None
            bound = h - dp / 2
            verdict = x is None or x >= bound
            out.append(Certificate("facial electrical moves >= H(smoothing) - depth(smoothing)/2", key,
                                   {"H": h, "depth": dp, "bound": bound, "X(medial)": x}, verdict))
    return out


def certify_lower_bounds(obj, smoothings: bool = True) -> list[Certificate]:
    if isinstance(obj, PlaneGraph):
        return certify_graph(obj)
    return certify_curve(obj, smoothings)
