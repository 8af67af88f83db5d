"""Command-line front end.

Curves (``.crv``) and graphs (``.pg``) travel between subcommands as text, so
``elecred gen bullseye 4 | elecred medial | elecred depth`` works. Written
files start with a ``# elecred curve`` or ``# elecred graph`` comment; files
without one are read as curves when every vertex has degree 4 and no
``terminals`` line is present.

Exit codes: 0 success, 1 domain error (its class name is printed), 2 usage.
With ``--json`` every command prints one JSON object instead of text.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import engine, suite
from .curve import (
    HOMOTOPY,
    MEDIAL,
    CurveMove,
    Multicurve,
    apply_move,
    depth,
    dual_path,
    enumerate_moves,
    gauss_code,
    parse_curve,
    serialize_curve,
    winding_number,
)
from .errors import ElecredError
from .generators import (
    gen_alpha,
    gen_bullseye,
    gen_flat_torus,
    gen_random_curve,
    gen_random_plane_graph,
)
from .invariants import defect, interleaving_matrix, signs
from .planegraph import (
    ElecMove,
    PlaneGraph,
    apply_elec,
    enumerate_elec_moves,
    enumerate_embeddings,
    is_unicursal,
    medial,
    parse_graph,
    serialize_graph,
)
from .tangle import EXTERIOR, INTERIOR, find_circle, flip, is_tight, tighten

CURVE_HEADER = "# elecred curve\n"
GRAPH_HEADER = "# elecred graph\n"


class UsageError(Exception):
    pass


# -- io -----------------------------------------------------------------------------


def dump(obj) -> str:
    if isinstance(obj, PlaneGraph):
        return GRAPH_HEADER + serialize_graph(obj)
    return CURVE_HEADER + serialize_curve(obj)


def load_text(text: str):
    stripped = text.lstrip()
    if stripped.startswith("{"):
        text = json.loads(stripped)["text"]
    head = text.lstrip().splitlines()[0] if text.strip() else ""
    if head.startswith("# elecred graph"):
        return parse_graph(text)
    if head.startswith("# elecred curve"):
        return parse_curve(text)
    if any(line.split()[:1] == ["terminals"] for line in text.splitlines()):
        return parse_graph(text)
    g = parse_graph(text)
    if g.map.num_darts and all(g.degree(v) == 4 for v in range(g.num_vertices)):
        return parse_curve(text)
    if g.map.num_darts == 0 and any(line.split()[:1] == ["circles"] for line in text.splitlines()):
        return parse_curve(text)
    return g


def read_input(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    if not text.strip():
        raise UsageError("empty input")
    return load_text(text)


def want_curve(obj) -> Multicurve:
    if not isinstance(obj, Multicurve):
        raise UsageError("this command needs a curve; run 'medial' on a graph first")
    return obj


def want_graph(obj) -> PlaneGraph:
    if not isinstance(obj, PlaneGraph):
        raise UsageError("this command needs a plane graph")
    return obj


class Out:
    """Collects text lines and a JSON payload for one command."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines = []
        self.data = {}

    def obj(self, obj, path=None):
        text = dump(obj)
        if path:
            with open(path, "w") as fh:
                fh.write(text)
            self.lines.append(f"wrote {path}")
            self.data["path"] = path
        else:
            self.lines.append(text.rstrip("\n"))
        self.data["type"] = "graph" if isinstance(obj, PlaneGraph) else "curve"
        self.data["text"] = text

    def emit(self):
        if self.as_json:
            sys.stdout.write(json.dumps(self.data, sort_keys=True) + "\n")
        elif self.lines:
            sys.stdout.write("\n".join(self.lines) + "\n")


# -- commands ------------------------------------------------------------------------


def cmd_gen(a, out):
    kind = a.kind
    p = a.params
    need = {"alpha": 1, "bullseye": 1, "torus": 2, "random-curve": 1, "random-graph": 1}[kind]
    if len(p) != need:
        raise UsageError(f"gen {kind} takes {need} integer parameter(s), got {len(p)}")
    if kind == "alpha":
        obj = gen_alpha(p[0])
    elif kind == "bullseye":
        obj = gen_bullseye(p[0])
    elif kind == "torus":
        obj = gen_flat_torus(p[0], p[1])
    elif kind == "random-curve":
        obj = gen_random_curve(p[0], a.seed, annulus=a.annulus)
    else:
        obj = gen_random_plane_graph(p[0], a.seed, terminals=a.terminals)
    out.obj(obj, a.output)


def cmd_medial(a, out):
    out.obj(medial(want_graph(read_input(a.input))), a.output)


def cmd_moves(a, out):
    obj = read_input(a.input)
    rows = []
    if isinstance(obj, PlaneGraph):
        for m, cls in enumerate_elec_moves(obj, include_terminal_leaf=a.terminal_leaf):
            rows.append({"move": str(m), "class": str(cls)})
            out.lines.append(f"{m}\t{cls}")
    else:
        for m in enumerate_moves(obj, a.system, upward=a.upward):
            rows.append({"move": f"{m.kind} {' '.join(map(str, m.site))}"})
            out.lines.append(rows[-1]["move"])
    if not rows:
        out.lines.append("no moves")
    out.data["moves"] = rows


def cmd_apply(a, out):
    obj = read_input(a.input)
    if len(a.move) < 1:
        raise UsageError("apply needs a move kind")
    kind = a.move[0]
    try:
        site = tuple(int(t) for t in a.move[1:])
    except ValueError:
        raise UsageError(f"move site must be integers: {' '.join(a.move[1:])}") from None
    if isinstance(obj, PlaneGraph):
        res = apply_elec(obj, ElecMove(kind, site, a.face))
    elif kind == "flip":
        res = engine.apply_event(obj, engine.MoveEvent(kind, site))
    else:
        res = apply_move(obj, CurveMove(kind, site))
    out.obj(res, a.output)


def cmd_reduce(a, out):
    c = want_curve(read_input(a.input))
    tr = engine.reduce_greedy(c, a.system)
    if a.trace:
        with open(a.trace, "w") as fh:
            fh.write(tr.to_text())
    out.data.update(moves=len(tr), events=[str(e) for e in tr.events], reduced=engine.is_reduced(tr.final, a.system))
    if len(tr) == 0:
        out.lines.append("0 moves, already reduced")
    else:
        out.lines.extend(str(e) for e in tr.events)
        out.lines.append(f"{len(tr)} moves")
    if a.output:
        with open(a.output, "w") as fh:
            fh.write(dump(tr.final))
        out.data["path"] = a.output
    out.data["final"] = dump(tr.final)


def cmd_defect(a, out):
    c = want_curve(read_input(a.input))
    val = defect(c)
    out.data["defect"] = val
    out.lines.append(str(val))


def cmd_signs(a, out):
    c = want_curve(read_input(a.input))
    code = gauss_code(c)
    vs = signs(c)
    out.data.update(gauss=str(code), signs={str(s.vertex): s.sign for s in vs})
    out.lines.append(f"gauss {code}")
    out.lines.extend(f"{s.vertex} {'+' if s.sign > 0 else '-'}" for s in vs)


def cmd_interleaving(a, out):
    c = want_curve(read_input(a.input))
    mat = interleaving_matrix(c)
    out.data["matrix"] = mat.astype(int).tolist()
    out.lines.extend(" ".join(str(int(x)) for x in row) for row in mat)


def cmd_depth(a, out):
    c = want_curve(read_input(a.input))
    val = depth(c)
    out.data["depth"] = val
    out.lines.append(str(val))


def cmd_winding(a, out):
    c = want_curve(read_input(a.input))
    val = winding_number(c)
    out.data.update(winding=val, path=dual_path(c))
    out.lines.append(str(val))


def cmd_oracle(a, out):
    c = want_curve(read_input(a.input))
    fn = {"X": engine.oracle_X, "H": engine.oracle_H, "Xbar": engine.oracle_Xbar, "Hbar": engine.oracle_Hbar}[a.quantity]
    res = fn(c, a.cap) if a.cap is not None else fn(c)
    if a.trace:
        with open(a.trace, "w") as fh:
            fh.write(res.witness.to_text())
    out.data.update(quantity=a.quantity, value=res.value, explored=res.explored,
                    witness=[str(e) for e in res.witness.events])
    out.lines.append(f"{a.quantity} = {res.value}")
    out.lines.append(f"explored {res.explored} states")
    out.lines.extend(f"  {e}" for e in res.witness.events)


def cmd_tangle(a, out):
    c = want_curve(read_input(a.input))
    s = find_circle(c, a.interior)
    side = EXTERIOR if a.exterior else INTERIOR
    if a.action == "flip":
        res = flip(c, s, a.axis)
        out.obj(res, a.output)
        return
    if a.action == "tight":
        val = is_tight(c, s, side)
        out.data["tight"] = val
        out.lines.append("tight" if val else "not tight")
        return
    res, circ = tighten(c, s, side, a.budget)
    out.obj(res, a.output)
    out.data["interior"] = sorted(circ.interior) if circ else []


def cmd_embeddings(a, out):
    g = want_graph(read_input(a.input))
    embs = enumerate_embeddings(g, a.budget, limit=a.limit)
    rows = []
    for h in embs:
        row = {"unicursal": is_unicursal(h) if h.num_edges else False}
        if row["unicursal"]:
            row["defect"] = defect(medial(h))
        rows.append(row)
    defects = sorted({r["defect"] for r in rows if "defect" in r})
    out.data.update(count=len(embs), defects=defects)
    out.lines.append(f"{len(embs)} embeddings")
    if defects:
        out.lines.append("medial defects " + " ".join(map(str, defects)))
    if a.output_dir:
        os.makedirs(a.output_dir, exist_ok=True)
        for i, h in enumerate(embs):
            with open(os.path.join(a.output_dir, f"embedding{i:04d}.pg"), "w") as fh:
                fh.write(dump(h))
        out.lines.append(f"wrote {len(embs)} files to {a.output_dir}")


def cmd_certify(a, out):
    obj = read_input(a.input)
    certs = engine.certify_lower_bounds(obj, smoothings=not a.no_smoothings)
    out.data["certificates"] = [
        {"statement": c.statement, "values": {k: v for k, v in c.values.items()}, "verdict": c.verdict, "note": c.note}
        for c in certs
    ]
    out.lines.extend(str(c) for c in certs)
    out.failed = not all(c.verdict for c in certs)


def cmd_verify_suite(a, out):
    results = suite.run_suite(a.level, only=set(a.only) if a.only else None)
    if not results:
        logging.getLogger(__name__).warning("no checks selected; vacuous pass")
    out.data["results"] = [
        {"id": r.cid, "name": r.name, "passed": r.passed, "instances": r.instances, "detail": r.detail,
         "seconds": round(r.seconds, 3)}
        for r in results
    ]
    out.lines.extend(r.line() for r in results)
    passed = sum(r.passed for r in results)
    out.lines.append(f"{passed}/{len(results)} checks passed")
    out.failed = passed != len(results)


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elecred", description="Curves, plane graphs, and electrical reduction bounds.")
    p.add_argument("--json", action="store_true", help="print one JSON object per command")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_, inp=True, out_file=False):
        sp = sub.add_parser(name, help=help_, description=help_)
        if inp:
            sp.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
        if out_file:
            sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("gen", cmd_gen, "generate a named or random curve or graph", inp=False, out_file=True)
    sp.add_argument("kind", choices=["alpha", "bullseye", "torus", "random-curve", "random-graph"])
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--annulus", action="store_true", help="random-curve: mark two boundary faces")
    sp.add_argument("--terminals", action="store_true", help="random-graph: pick two terminals")

    add("medial", cmd_medial, "medial curve of a plane graph (terminals become boundary faces)", out_file=True)

    sp = add("moves", cmd_moves, "list applicable moves")
    sp.add_argument("--system", choices=[HOMOTOPY, MEDIAL], default=MEDIAL)
    sp.add_argument("--upward", action="store_true", help="also list vertex-creating moves")
    sp.add_argument("--terminal-leaf", action="store_true", help="graphs: list terminal-leaf contractions")

    sp = add("apply", cmd_apply, "apply one move, e.g. 'apply M21 5' or 'apply flip 1 0 2'", inp=False, out_file=True)
    sp.add_argument("-i", "--input", default="-", help="input file (default: stdin)")
    sp.add_argument("move", nargs="+", help="kind followed by site darts")
    sp.add_argument("--face", type=int, default=None, help="Delta-Y: face that receives the new vertex")

    sp = add("reduce", cmd_reduce, "greedy reduction with non-increasing moves")
    sp.add_argument("--system", choices=[HOMOTOPY, MEDIAL], default=MEDIAL)
    sp.add_argument("--trace", help="write the .trace file here")
    sp.add_argument("-o", "--output", help="write the reduced curve here")

    add("defect", cmd_defect, "defect of a closed curve")
    add("signs", cmd_signs, "Gauss code and vertex signs")
    add("interleaving", cmd_interleaving, "interleaving matrix of the vertices")
    add("depth", cmd_depth, "depth of an annulus curve")
    add("winding", cmd_winding, "winding number of an annulus curve")

    sp = add("oracle", cmd_oracle, "exact minimum move count by exhaustive search")
    sp.add_argument("--quantity", choices=["X", "H", "Xbar", "Hbar"], default="X")
    sp.add_argument("--cap", type=int, default=None, help="largest vertex count searched")
    sp.add_argument("--trace", help="write the witness .trace file here")

    sp = add("tangle", cmd_tangle, "flip, test, or tighten the tangle inside a split circle", inp=False)
    sp.add_argument("action", choices=["flip", "tight", "tighten"])
    sp.add_argument("input", nargs="?", default="-")
    sp.add_argument("--interior", type=int, nargs="+", required=True, help="vertices inside the circle")
    sp.add_argument("--axis", type=int, default=None, help="flip axis (1, or 1/3 with four crossings)")
    sp.add_argument("--exterior", action="store_true", help="work on the outer side")
    sp.add_argument("--budget", type=int, default=20000)
    sp.add_argument("-o", "--output")

    sp = add("embeddings", cmd_embeddings, "embeddings reachable by reflections and eversions")
    sp.add_argument("--budget", type=int, default=6)
    sp.add_argument("--limit", type=int, default=5000)
    sp.add_argument("--output-dir")

    sp = add("certify", cmd_certify, "check the lower-bound inequalities on one input")
    sp.add_argument("--no-smoothings", action="store_true")

    sp = add("verify-suite", cmd_verify_suite, "run the acceptance checks", inp=False)
    sp.add_argument("--level", choices=["fast", "full"], default="fast")
    sp.add_argument("--only", type=int, nargs="+", help="check ids to run")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    out = Out(a.json)
    out.failed = False
    try:
        a.func(a, out)
    except UsageError as exc:
        parser.error(str(exc))
    except (ElecredError, ValueError) as exc:
        name = type(exc).__name__
        if a.json:
            sys.stdout.write(json.dumps({"error": name, "message": str(exc)}) + "\n")
        print(f"error: {name}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out.emit()
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
