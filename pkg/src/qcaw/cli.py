"""Command-line front door and the newline-delimited JSON session protocol.

State between invocations lives in a JSON session file (default
qcaw-session.json in the working directory).  `serve --session` speaks the
protocol on stdin/stdout, one request and one response per line; all
numbers exchanged are exact (integers and Laurent term arrays).
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from dataclasses import dataclass, field

from . import polygon as pg
from . import sequences as sq
from .qseed import QuantumSeed, check_compatibility, enumerate_exchange_graph
from .quiver import (FrozenVertexError, is_frame_vertex, is_green,
                     quiver_to_dot)
from .sl3bigon import catalogue_json
from .verify import Grid, report_markdown, run_suite

DEFAULT_STATE = "qcaw-session.json"
SCHEMA = "qcaw/1"


def normalize_build(params: dict) -> dict:
    """Canonical build parameters so CLI and protocol snapshots agree."""
    return {
        "surface": params.get("surface", "polygon"),
        "n": int(params.get("n", 3)),
        "k": int(params.get("k", 0)),
        "variant": params.get("variant", "extended"),
        "diagonals": [list(d) for d in params.get("diagonals") or []],
    }


@dataclass
class SessionState:
    """Current seed plus the data needed to rebuild it from scratch."""
    build: dict
    history: list[str] = field(default_factory=list)
    labels: dict = field(default_factory=dict)
    _initial: QuantumSeed | None = None
    _current: QuantumSeed | None = None

    def __post_init__(self):
        self.build = normalize_build(self.build)

    @property
    def initial(self) -> QuantumSeed:
        if self._initial is None:
            self._initial = build_seed(**self.build)
        return self._initial

    @property
    def current(self) -> QuantumSeed:
        if self._current is None:
            self._current = self.initial.mutate_word(self.history)
        return self._current

    def mutate(self, vertex: str) -> None:
        self._current = self.current.mutate(vertex)
        self.history.append(vertex)

    def undo(self) -> bool:
        if not self.history:
            return False
        self.history.pop()
        self._current = None
        return True

    def reset(self) -> None:
        self.history.clear()
        self._current = None

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "build": self.build,
                "history": list(self.history)}

    @staticmethod
    def from_json(data: dict) -> "SessionState":
        return SessionState(build=data["build"],
                            history=list(data.get("history", [])))


def build_seed(surface: str = "polygon", n: int = 3, k: int = 0,
               variant: str = "extended", star: bool = True,
               diagonals: list | None = None) -> QuantumSeed:
    if surface != "polygon":
        raise ValueError(f"unknown surface {surface!r}")
    if variant == "extended":
        return pg.build_extended(k, n,
                                 diagonals or ()).extended_seed()
    if k < 1:
        raise ValueError("reduced and qc variants need k >= 1")
    if diagonals:
        tri = pg.PolygonTriangulation(k + 2, [tuple(d) for d in diagonals])
    else:
        tri = pg.PolygonTriangulation.star(k + 2)
    if variant == "reduced":
        return pg.reduced_seed(tri, n)
    if variant == "qc":
        seed, _, _ = pg.qc_star_data(k, n)
        return seed
    raise ValueError(f"unknown variant {variant!r}")


def seed_snapshot(state: SessionState) -> dict:
    seed = state.current
    vertices = []
    for v in seed.quiver.vertices:
        vertices.append({
            "id": v,
            "frozen": v not in seed.quiver.mutable,
            "green": (is_green(seed.framed, v)
                      if v in seed.quiver.mutable else None),
            "gvector": dict(sorted(seed.gvecs[v].items())),
        })
    arrows = [{"src": a, "dst": b, "weight2": w}
              for (a, b, w) in seed.quiver.arrows()]
    return {"schema": SCHEMA, "build": state.build,
            "history": list(state.history),
            "vertices": vertices, "arrows": arrows,
            "pi": sorted([a, b, w] for (a, b), w in seed.pi.items()
                         if seed.quiver._index[a] < seed.quiver._index[b])}


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def session_step(state: SessionState, request: dict
                 ) -> tuple[SessionState, dict]:
    """One protocol step; errors come back structured, never as crashes."""
    try:
        cmd = request.get("cmd")
        if cmd == "get_state":
            return state, {"ok": True, "state": seed_snapshot(state)}
        if cmd == "mutate":
            vertex = request.get("vertex")
            if not isinstance(vertex, str):
                return state, {"ok": False, "error": "mutate needs a vertex",
                               "echo": {"vertex": vertex}}
            try:
                state.mutate(vertex)
            except FrozenVertexError as ex:
                return state, {"ok": False, "error": str(ex),
                               "echo": {"vertex": vertex}}
            except KeyError:
                return state, {"ok": False, "error": f"no vertex {vertex!r}",
                               "echo": {"vertex": vertex}}
            return state, {"ok": True, "state": seed_snapshot(state)}
        if cmd == "undo":
            if not state.undo():
                return state, {"ok": False, "error": "history is empty"}
            return state, {"ok": True, "state": seed_snapshot(state)}
        if cmd == "reset":
            state.reset()
            return state, {"ok": True, "state": seed_snapshot(state)}
        if cmd == "gvector":
            v = request.get("vertex")
            seed = state.current
            if v not in seed.gvecs:
                return state, {"ok": False, "error": f"no vertex {v!r}",
                               "echo": {"vertex": v}}
            return state, {"ok": True, "vertex": v,
                           "gvector": dict(sorted(seed.gvecs[v].items()))}
        if cmd == "variable":
            v = request.get("vertex")
            seed = state.current
            if v not in seed.vars:
                return state, {"ok": False, "error": f"no vertex {v!r}",
                               "echo": {"vertex": v}}
            el = seed.vars[v]
            return state, {"ok": True, "vertex": v,
                           "terms": el.to_json(), "rendered": repr(el)}
        if cmd == "greenness":
            seed = state.current
            flags = {v: is_green(seed.framed, v)
                     for v in seed.quiver.mutable}
            return state, {"ok": True, "green": flags}
        if cmd == "run_named_sequence":
            return _run_named(state, request)
        return state, {"ok": False, "error": f"unknown cmd {cmd!r}",
                       "echo": {"cmd": cmd}}
    except Exception as ex:  # malformed input must not kill the session
        return state, {"ok": False, "error": f"{type(ex).__name__}: {ex}",
                       "echo": request}


def _run_named(state: SessionState, request: dict
               ) -> tuple[SessionState, dict]:
    name = request.get("name")
    if name == "flip":
        edge = tuple(request.get("edge", ()))
        build = state.build
        if build.get("variant") != "reduced":
            return state, {"ok": False,
                           "error": "flip runs on reduced polygon seeds"}
        k = build["k"]
        n = build["n"]
        tri = pg.PolygonTriangulation.star(k + 2) \
            if not build.get("diagonals") else \
            pg.PolygonTriangulation(k + 2,
                                    [tuple(d) for d in build["diagonals"]])
        try:
            word = pg.flip_sequence(tri, n, edge,
                                    labels=pg.auto_labels(tri, n))
        except pg.NotFlippable as ex:
            return state, {"ok": False, "error": str(ex),
                           "echo": {"edge": list(edge)}}
    else:
        try:
            word = sq.named_sequence(name, **request.get("params", {}))
        except (KeyError, pg.InvalidParams) as ex:
            return state, {"ok": False, "error": str(ex),
                           "echo": {"name": name}}
    frames = []
    for v in word:
        try:
            state.mutate(v)
        except (FrozenVertexError, KeyError) as ex:
            return state, {"ok": False, "error": str(ex),
                           "echo": {"vertex": v}, "frames": frames}
        frames.append(seed_snapshot(state))
    return state, {"ok": True, "word": list(word), "frames": frames}


def load_state(path: str) -> SessionState:
    with open(path) as fh:
        return SessionState.from_json(json.load(fh))


def save_state(state: SessionState, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(state.to_json(), fh, sort_keys=True)
        fh.write("\n")


def serve_session(instream=None, outstream=None) -> int:
    instream = instream or sys.stdin
    outstream = outstream or sys.stdout
    state: SessionState | None = None
    for line in instream:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except json.JSONDecodeError as ex:
            outstream.write(_dumps({"ok": False,
                                    "error": f"bad JSON: {ex}"}) + "\n")
            outstream.flush()
            continue
        if request.get("cmd") == "build":
            try:
                state = SessionState(build=request.get("params", {}))
                state.initial
                resp = {"ok": True, "state": seed_snapshot(state)}
            except Exception as ex:
                state = None
                resp = {"ok": False, "error": str(ex), "echo": request}
        elif request.get("cmd") == "quit":
            outstream.write(_dumps({"ok": True, "bye": True}) + "\n")
            outstream.flush()
            return 0
        elif state is None:
            resp = {"ok": False, "error": "no seed built yet"}
        else:
            state, resp = session_step(state, request)
        outstream.write(_dumps(resp) + "\n")
        outstream.flush()
    return 0


def serve_tcp(port: int) -> int:
    srv = socket.create_server(("127.0.0.1", port))
    print(f"listening on 127.0.0.1:{srv.getsockname()[1]}", flush=True)
    conn, _ = srv.accept()
    with conn:
        fin = conn.makefile("r")
        fout = conn.makefile("w")
        serve_session(fin, fout)
    return 0


# -- argparse plumbing ---------------------------------------------------------


def _add_state_arg(p):
    p.add_argument("--state", default=DEFAULT_STATE,
                   help="session state file")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcaw",
                                 description="quantum cluster algebra "
                                             "workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seed", help="seed operations")
    seed_sub = p.add_subparsers(dest="seed_command", required=True)
    b = seed_sub.add_parser("build", help="build an initial seed")
    b.add_argument("--surface", default="polygon", choices=["polygon"])
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--variant", default="extended",
                   choices=["reduced", "extended", "qc"])
    b.add_argument("--star", action="store_true", default=True)
    b.add_argument("--diagonals", default="",
                   help="semicolon list a,b;c,d overriding the star")
    _add_state_arg(b)

    m = sub.add_parser("mutate", help="mutate along a word")
    m.add_argument("--word", required=True, help="comma separated vertices")
    _add_state_arg(m)

    f = sub.add_parser("flip", help="run a flip mutation sequence")
    f.add_argument("--edge", required=True, help="a,b")
    _add_state_arg(f)

    g = sub.add_parser("gvectors", help="print tracked g-vectors")
    _add_state_arg(g)

    e = sub.add_parser("enumerate", help="exchange graph closure")
    e.add_argument("--max", type=int, default=None)
    _add_state_arg(e)

    v = sub.add_parser("verify", help="run the lemma suite")
    v.add_argument("--filter", default="all")
    v.add_argument("--json", action="store_true")

    bi = sub.add_parser("bigon", help="SL3 bigon data")
    bi.add_argument("bigon_command", choices=["catalogue"])

    x = sub.add_parser("export", help="export the current seed")
    x.add_argument("--format", default="json", choices=["json", "dot"])
    _add_state_arg(x)

    s = sub.add_parser("serve", help="serve the session protocol")
    s.add_argument("--session", action="store_true", required=True)
    s.add_argument("--tcp", type=int, default=None,
                   help="listen on a local TCP port instead of stdio")
    return ap


def export_dot(seed: QuantumSeed) -> str:
    return quiver_to_dot(seed.quiver)


def cli_main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "seed" and args.seed_command == "build":
            diagonals = []
            if args.diagonals:
                for part in args.diagonals.split(";"):
                    a, b = part.split(",")
                    diagonals.append((int(a), int(b)))
            build = {"surface": args.surface, "n": args.n, "k": args.k,
                     "variant": args.variant, "diagonals": diagonals}
            state = SessionState(build=build)
            state.initial  # fail fast on bad parameters
            save_state(state, args.state)
            rep = check_compatibility(state.initial)
            print(f"seed built: {len(state.initial.quiver.vertices)} vertices, "
                  f"{len(state.initial.quiver.mutable)} mutable, "
                  f"d = {sorted(set(rep.d.values()))}")
            return 0
        if args.command == "mutate":
            state = load_state(args.state)
            word = [w for w in args.word.split(",") if w]
            for v in word:
                state.mutate(v)
            save_state(state, args.state)
            print(f"mutated by {word}; history length {len(state.history)}")
            return 0
        if args.command == "flip":
            state = load_state(args.state)
            a, b = (int(x) for x in args.edge.split(","))
            build = state.build
            tri = pg.PolygonTriangulation.star(build["k"] + 2) \
                if not build.get("diagonals") else \
                pg.PolygonTriangulation(build["k"] + 2,
                                        [tuple(d) for d in build["diagonals"]])
            word = pg.flip_sequence(tri, build["n"], (a, b),
                                    labels=pg.auto_labels(tri, build["n"]))
            for v in word:
                state.mutate(v)
            save_state(state, args.state)
            print(f"flip at ({a},{b}): {len(word)} mutations: "
                  + ",".join(word))
            print(export_dot(state.current))
            return 0
        if args.command == "gvectors":
            state = load_state(args.state)
            for v in state.current.quiver.vertices:
                print(f"{v}: {dict(sorted(state.current.gvecs[v].items()))}")
            return 0
        if args.command == "enumerate":
            state = load_state(args.state)
            cap = args.max or int(os.environ.get("QCAW_MAX_SEEDS", "200"))
            g = enumerate_exchange_graph(state.current, max_seeds=cap)
            note = " (truncated)" if g.truncated else ""
            print(f"clusters: {g.num_clusters}, "
                  f"variables: {len(g.exchangeable_variables())}{note}")
            return 0
        if args.command == "verify":
            cases = run_suite(args.filter)
            if args.json:
                print(json.dumps([c.to_json() for c in cases], indent=1))
            else:
                print(report_markdown(cases))
            return 0 if all(c.status != "fail" for c in cases) else 1
        if args.command == "bigon":
            print(json.dumps(catalogue_json(), indent=1))
            return 0
        if args.command == "export":
            state = load_state(args.state)
            if args.format == "json":
                print(_dumps(seed_snapshot(state)))
            else:
                print(export_dot(state.current))
            return 0
        if args.command == "serve":
            if args.tcp is not None:
                return serve_tcp(args.tcp)
            return serve_session()
    except FileNotFoundError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (ValueError, FrozenVertexError, pg.NotFlippable, KeyError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
