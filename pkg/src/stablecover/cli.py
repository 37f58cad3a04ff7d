"""Command-line entry point: ``stablecover <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import covers, interpret, patterns, set_system, stability
from .errors import BadParams, FormatError, StableCoverError
from .graph_core import (
    SCHEMA_VERSION,
    Graph,
    are_isomorphic,
    grid_graph,
    random_graph,
    read_graph,
    semi_induced,
    to_edgelist,
    to_json,
)
from .rng import substream

BENCH_HEADER = ["family", "n", "r", "crossing", "overlap", "diameter", "wall_time"]
GROWTH_HEADER = ["size", "median_traces", "max_traces"]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _graph_text(g: Graph, fmt: str) -> str:
    return to_json(g) if fmt == "json" else to_edgelist(g)


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{what} is not valid JSON: {exc}") from None


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


# ------------------------------------------------------------- subcommands

def cmd_gen(a):
    g = patterns.generate_pattern(patterns.PatternDescriptor(a.kind, a.n, a.m, a.r))
    _emit(_graph_text(g, a.format), a.out)
    return 0


def cmd_flip(a):
    g = read_graph(a.input)
    colors = _json_arg(a.colors, "--colors")
    spec = patterns.FlipSpec.make(colors, _json_arg(a.R, "--R"))
    _emit(_graph_text(patterns.apply_flip(g, spec), a.format), a.out)
    return 0


def cmd_order(a):
    g = read_graph(a.input)
    sys_ = set_system.neighborhood_system(g)
    if a.method == "welzl":
        order = set_system.welzl_order(sys_, a.seed).order
    else:
        order = set_system.random_order(sys_, a.seed)
    obj = {"schema_version": SCHEMA_VERSION, "method": a.method, "seed": a.seed,
           "order": list(order.perm), "crossing": set_system.crossing_number(sys_, order)}
    _emit(_dump(obj), a.out)
    return 0


def _cover_obj(cover, report, timings=None):
    obj = {"schema_version": SCHEMA_VERSION, "clusters": [list(c) for c in cover.clusters],
           "report": report.as_dict()}
    obj.update({k: v for k, v in cover.source.items() if k in ("r", "seed", "order")})
    if timings is not None:
        obj["timings"] = {k: round(v, 6) for k, v in sorted(timings.items())}
    return obj


def cmd_cover(a):
    g = read_graph(a.input)
    timings = {} if a.timings else None
    cover, report = covers.distance_r_cover(g, a.r, a.seed, timings)
    obj = _cover_obj(cover, report, timings)
    if a.emit_report:
        rep = dict(obj["report"], clusters=obj["clusters"], schema_version=SCHEMA_VERSION)
        if timings is not None:
            rep["timings"] = obj["timings"]
        _emit(_dump(rep), None)
    if a.out or not a.emit_report:
        _emit(_dump(obj), a.out)
    return 0


def cmd_verify(a):
    g = read_graph(a.input)
    if a.cover:
        with open(a.cover) as fh:
            obj = json.load(fh)
        try:
            cover = covers.Cover(tuple(tuple(int(x) for x in c) for c in obj["clusters"]))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad cover JSON: {exc}") from None
        r = a.r if a.r is not None else int(obj.get("r", 1))
        rep = covers.verify_cover(g, cover, r)
        claimed = obj.get("report")
        consistent = claimed is None or all(claimed.get(k) == v for k, v in rep.as_dict().items() if k != "crossing")
    else:
        r = a.r if a.r is not None else 1
        cover, first = covers.distance_r_cover(g, r, a.seed)
        rep = covers.verify_cover(g, cover, r)
        consistent = first.as_dict() | {"crossing": None} == rep.as_dict()
    ok = rep.is_cover_at_r and rep.diameter <= 4 * r and consistent
    _emit(_dump({"schema_version": SCHEMA_VERSION, "ok": bool(ok), "consistent": bool(consistent),
                 "report": rep.as_dict(), "self_check": not a.cover}), a.out)
    return 0 if ok else 1


def _bipartite_from(g: Graph, a):
    if a.side_a:
        A = _json_arg(a.side_a, "--side-a")
        B = [v for v in range(g.n) if v not in set(A)]
    elif "side" in g.labels:
        A = [v for v in range(g.n) if g.labels["side"][v] == 0]
        B = [v for v in range(g.n) if g.labels["side"][v] != 0]
    else:
        raise BadParams("give --side-a or a graph with a 'side' label")
    return semi_induced(g, A, B)


def cmd_reduce(a):
    g = read_graph(a.input)
    bip = _bipartite_from(g, a)
    d = a.d if a.d is not None else stability.branching_index(bip)
    res = stability.reduce_neighborhoods(bip, int(d), seed=a.seed)
    obj = {"schema_version": SCHEMA_VERSION, **res.as_dict()}
    _emit(_dump(obj), a.out)
    return 0


def _layer_spec(a, r):
    if a.lc is not None:
        return _json_arg(a.lc, "--lc"), [tuple(p) for p in _json_arg(a.R or "[]", "--R")]
    if a.colors:
        return interpret.random_layer_spec(a.colors, r + 2, substream(a.seed, "layer-spec"))
    return None


def cmd_encode(a):
    G = read_graph(a.input)
    enc = interpret.encode_graph(G, a.r, a.t, a.variant)
    spec = _layer_spec(a, a.r)
    if spec is None:
        _emit(_graph_text(enc.host, a.format), a.out)
        return 0
    fi = interpret.flip_encoded(enc, spec[0], spec[1], a.s)
    if a.preflip:
        with open(a.preflip, "w") as fh:
            fh.write(_graph_text(enc.host, a.format))
    _emit(_graph_text(fi.flipped, a.format), a.out)
    return 0


def cmd_decode(a):
    H = read_graph(a.input)
    spec = _layer_spec(a, a.r)
    if spec is not None:
        lp, _ = interpret.canonical_flip(a.t, a.r, spec[0], spec[1], a.variant)
        offset = H.n - lp.graph.n
        if offset < 0:
            raise BadParams("host is smaller than the order-t pattern")
        probes = interpret.select_probes(lp, a.s).shifted(offset)
        H = interpret.decode_flip(H, probes, lp)
    g = interpret.decode_interpretation(H, a.r, a.t, a.variant)
    if a.expect:
        want = read_graph(a.expect)
        iso = bool(are_isomorphic(g, want, cap=None))
        sys.stderr.write(_dump({"isomorphic": iso}))
        if not iso:
            _emit(_graph_text(g, a.format), a.out)
            return 1
    _emit(_graph_text(g, a.format), a.out)
    return 0


def bench_rows(families, sizes, radii, seed, p=None):
    rows = []
    for fam in families:
        for n in sizes:
            if fam == "grid":
                g = grid_graph(n)
            elif fam == "random":
                prob = p if p is not None else min(1.0, 4.0 / max(n, 1))
                g = random_graph(n, prob, substream(seed, f"bench-{n}"))
            else:
                raise BadParams(f"unknown bench family {fam!r}")
            for r in radii:
                t0 = time.perf_counter()
                _, rep = covers.distance_r_cover(g, r, seed)
                wall = time.perf_counter() - t0
                diam = "inf" if rep.diameter == float("inf") else int(rep.diameter)
                rows.append([fam, g.n, r, rep.crossing, rep.overlap, diam, f"{wall:.6f}"])
    return rows


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_bench(a):
    rows = bench_rows(a.families.split(","), _int_list(a.sizes), _int_list(a.radii), a.seed, a.p)
    _emit(_csv_text(BENCH_HEADER, rows), a.out)
    return 0


def cmd_growth(a):
    g = read_graph(a.input)
    rows = set_system.trace_growth_sweep(set_system.neighborhood_system(g), _int_list(a.sizes), a.reps, a.seed)
    _emit(_csv_text(GROWTH_HEADER, [[k, f"{med:g}", mx] for k, med, mx in rows]), a.out)
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stablecover", description="Neighborhood covers, patterns and interpretations.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True, fmt=True):
        if needs_input:
            p.add_argument("--in", dest="input", required=True, help="input graph (edge list or JSON)")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        if fmt:
            p.add_argument("--format", choices=("edgelist", "json"), default="json")

    p = sub.add_parser("gen", help="generate a pattern graph")
    p.add_argument("kind", choices=patterns.KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    common(p, needs_input=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("flip", help="apply a k-flip")
    p.add_argument("--colors", required=True, help="JSON list, one colour per vertex")
    p.add_argument("--R", required=True, help="JSON list of colour pairs")
    common(p)
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("order", help="low-crossing vertex order")
    p.add_argument("--method", choices=("welzl", "random"), default="welzl")
    common(p, fmt=False)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("cover", help="distance-r neighborhood cover")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--emit-report", action="store_true", help="print the report JSON to stdout")
    p.add_argument("--timings", action="store_true", help="include stage timings (output no longer reproducible)")
    common(p, fmt=False)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="re-verify a cover, or self-check the pipeline")
    p.add_argument("--cover")
    p.add_argument("--r", type=int)
    common(p, fmt=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="neighborhood reduction on a bipartite graph")
    p.add_argument("--d", type=int)
    p.add_argument("--side-a", help="JSON list of A-side vertices (default: 'side' label == 0)")
    common(p, fmt=False)
    p.set_defaults(func=cmd_reduce)

    for name, func in (("encode", cmd_encode), ("decode", cmd_decode)):
        p = sub.add_parser(name, help=f"{name} a graph through a biweb or biclique host")
        p.add_argument("--variant", choices=interpret.VARIANTS, default="biweb")
        p.add_argument("--r", type=int, default=3)
        p.add_argument("--t", type=int, default=5)
        p.add_argument("--s", type=int, default=interpret.DEFAULT_S)
        p.add_argument("--lc", help="JSON list, colour of each layer")
        p.add_argument("--R", help="JSON list of colour pairs")
        p.add_argument("--colors", type=int, help="draw a random twin-free layer flip with this many colours")
        if name == "encode":
            p.add_argument("--preflip", help="also write the unflipped host here")
        else:
            p.add_argument("--expect", help="graph the decoded result must be isomorphic to")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("bench", help="cover quality sweep as CSV")
    p.add_argument("--families", default="grid,random")
    p.add_argument("--sizes", default="8,16,32")
    p.add_argument("--radii", default="1,2")
    p.add_argument("--p", type=float)
    common(p, needs_input=False, fmt=False)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("growth", help="trace-count growth sweep as CSV")
    p.add_argument("--sizes", default="4,8,16")
    p.add_argument("--reps", type=int, default=5)
    common(p, fmt=False)
    p.set_defaults(func=cmd_growth)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return int(args.func(args))
    except StableCoverError as exc:
        sys.stderr.write(_dump({"schema_version": SCHEMA_VERSION, "error": exc.code, "message": str(exc)}))
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(_dump({"schema_version": SCHEMA_VERSION, "error": "io_error", "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
