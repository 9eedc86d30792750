"""Batch command line: analyze graphs, find/verify Fulkerson covers,
re-verify certificates.

Certificates are emitted one JSON object per line with sorted keys, so
output is byte-identical across runs and thread counts.  Timing is only
recorded under --timing (and is then, of course, not reproducible).

Exit codes: 0 all results exact and all checks pass; 2 at least one
result was budget-limited; 1 errors or failed checks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import certificates as certs
from .colouring import is_snark, oddness, three_edge_colour
from .constructions import flower_snark, inflate_pair_theorem_check, inflate_to_triangle, petersen
from .defect_engine import (
    BudgetError,
    NONE_FOUND,
    SearchBudget,
    check_girth_bound,
    core_of,
    defect,
    regular_defect,
)
from .fano_flow import characteristic_flow, verify_flow
from .fulkerson import (
    FulkersonCover,
    complementary_to_flows,
    cover_to_complementary,
    find_cover,
    flows_to_cover,
    verify_cover,
)
from .graph_core import (
    CubicGraph,
    FormatError,
    GraphError,
    bipartite_double,
    girth,
    parse_edge_list,
    parse_graph6,
)

ENV_MAX_MATCHINGS = "SNARKDEFECT_MAX_MATCHINGS"
ENV_MAX_TRIPLES = "SNARKDEFECT_MAX_TRIPLES"


def build_descriptor(desc: str) -> CubicGraph:
    """petersen | flower:N | inflate:GRAPH:V | inflate-pair:GRAPH:U:V | double:GRAPH"""
    head, _, rest = desc.partition(":")
    try:
        if head == "petersen" and not rest:
            return petersen()
        if head == "flower":
            return flower_snark(int(rest))
        if head == "double":
            return bipartite_double(build_descriptor(rest))
        if head == "inflate":
            sub, _, v = rest.rpartition(":")
            return inflate_to_triangle(build_descriptor(sub), int(v))
        if head == "inflate-pair":
            sub, u, v = rest.rsplit(":", 2)
            gg, _ = inflate_pair_theorem_check(build_descriptor(sub), int(u), int(v))
            return gg
    except ValueError as exc:
        raise GraphError(f"bad construction descriptor {desc!r}: {exc}") from None
    raise GraphError(f"unknown construction descriptor {desc!r}")


def iter_inputs(args):
    """Yield (source_label, graph_or_error) in a stable order."""
    if args.graph6:
        name = args.graph6
        text = sys.stdin.read() if name == "-" else open(name, encoding="ascii").read()
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            src = f"{name}:{lineno}"
            try:
                yield src, parse_graph6(line)
            except (FormatError, GraphError) as exc:
                yield src, GraphError(f"parse error: {exc}")
    if args.edge_list:
        try:
            g = parse_edge_list(open(args.edge_list, encoding="ascii").read())
            if not isinstance(g, CubicGraph):
                g = g.to_graph()
            yield args.edge_list, g
        except (FormatError, GraphError) as exc:
            yield args.edge_list, GraphError(f"parse error: {exc}")
    for desc in args.construct or ():
        try:
            yield desc, build_descriptor(desc)
        except GraphError as exc:
            yield desc, exc


def budget_from(args) -> SearchBudget | None:
    def pick(flag_value, env_name):
        if flag_value is not None:
            return flag_value
        raw = os.environ.get(env_name)
        return int(raw) if raw else None

    mm = pick(args.max_matchings, ENV_MAX_MATCHINGS)
    mt = pick(args.max_triples, ENV_MAX_TRIPLES)
    if mm is None and mt is None:
        return None
    return SearchBudget(mm, mt)


class Emitter:
    def __init__(self, args):
        self.json_stdout = args.json
        self.quiet = args.quiet
        self.sink = open(args.output, "w", encoding="utf-8") if args.output else None

    def certificate(self, cert: dict) -> None:
        line = certs.dump_certificate(cert)
        if self.sink:
            self.sink.write(line + "\n")
        if self.json_stdout:
            print(line)

    def human(self, text: str) -> None:
        if not self.json_stdout and not self.quiet:
            print(text)

    def close(self) -> None:
        if self.sink:
            self.sink.close()


def _defect_word(sec: dict) -> str:
    v = sec["value"]
    return f"{v}" + ("" if sec["exhaustive"] else "?")


def analyze_graph(g: CubicGraph, budget, threads) -> tuple[dict, bool]:
    res: dict = {"girth": girth(g)}
    res["colourable"] = three_edge_colour(g) is not None
    res["snark"] = is_snark(g)
    res["oddness"] = oddness(g)
    d = defect(g, budget=budget, threads=threads)
    r = regular_defect(g, budget=budget, threads=threads)
    res["df"] = certs.defect_json(d)
    res["rdf"] = certs.defect_json(r)

    if r.witness is not None:
        core_arr, res["core_witness"] = r.witness, "rdf"
    elif d.witness is not None:
        core_arr, res["core_witness"] = d.witness, "df"
    else:
        core_arr, res["core_witness"] = None, None
    res["core"] = certs.core_json(core_of(g, core_arr)) if core_arr is not None else None

    if r.witness is not None:
        flow = characteristic_flow(g, r.witness)
        chk = verify_flow(g, flow)
        if not chk:
            raise GraphError(f"internal: characteristic flow failed: {chk.violation}")
        res["characteristic_flow"] = flow.serialize()
    else:
        res["characteristic_flow"] = None

    if r.exhaustive and isinstance(r.value, int) and (r.witness is not None or r.value == 0):
        res["girth_bound"] = check_girth_bound(g, r)
    else:
        res["girth_bound"] = None
    return res, d.exhaustive and r.exhaustive


def _human_analyze(src: str, res: dict, cert: dict) -> str:
    core = res["core"]
    if core is None:
        core_s = "n/a"
    elif not (core["uncovered"] or core["doubly"] or core["triply"]):
        core_s = "empty"
    else:
        core_s = (f"{len(core['uncovered'])}u/{len(core['doubly'])}d/"
                  f"{len(core['triply'])}t in {len(core['components'])} component(s)")
    gb = res["girth_bound"]
    parts = [
        f"{src}:",
        f"girth={res['girth']}",
        f"snark={'yes' if res['snark'] else 'no'}",
        f"oddness={res['oddness']}",
        f"df={_defect_word(res['df'])}",
        f"rdf={_defect_word(res['rdf'])}",
        f"core={core_s}",
        f"girth-bound={'n/a' if gb is None else ('ok' if gb else 'VIOLATED')}",
    ]
    if cert.get("timing"):
        parts.append(f"time={cert['timing']['seconds']}s")
    return " ".join(parts)


def cmd_analyze(args) -> int:
    emitter = Emitter(args)
    budget = budget_from(args)
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    any_error = False
    any_bounded = False
    try:
        for src, item in iter_inputs(args):
            if isinstance(item, GraphError):
                emitter.certificate(certs.error_certificate("analyze", src, str(item)))
                emitter.human(f"{src}: ERROR {item}")
                any_error = True
                continue
            t0 = time.perf_counter()
            try:
                res, exact = analyze_graph(item, budget, threads)
            except GraphError as exc:
                emitter.certificate(certs.error_certificate("analyze", src, str(exc)))
                emitter.human(f"{src}: ERROR {exc}")
                any_error = True
                continue
            dt = time.perf_counter() - t0 if args.timing else None
            cert = certs.make_certificate("analyze", src, item, res, exact, dt)
            emitter.certificate(cert)
            emitter.human(_human_analyze(src, res, cert))
            if not exact:
                any_bounded = True
    finally:
        emitter.close()
    return 1 if any_error else 2 if any_bounded else 0


def _load_cover_members(path: str):
    data = json.loads(open(path, encoding="utf-8").read().splitlines()[0])
    if isinstance(data, dict) and "matchings" in data:
        lists = data["matchings"]
    elif isinstance(data, dict) and data.get("schema") == certs.SCHEMA:
        lists = (data.get("result") or {}).get("cover")
    else:
        lists = None
    if not isinstance(lists, list):
        raise GraphError(f"{path}: expected a 'matchings' list or a fulkerson certificate")
    return [frozenset(x) for x in lists]


def cmd_fulkerson(args) -> int:
    emitter = Emitter(args)
    budget = budget_from(args)
    max_matchings = budget.max_matchings if budget else None
    any_error = False
    any_bounded = False
    any_fail = False
    try:
        for src, item in iter_inputs(args):
            if isinstance(item, GraphError):
                emitter.certificate(certs.error_certificate("fulkerson", src, str(item)))
                emitter.human(f"{src}: ERROR {item}")
                any_error = True
                continue
            g = item
            t0 = time.perf_counter()
            try:
                if args.verify:
                    members = _load_cover_members(args.verify)
                    chk = verify_cover(g, members)
                    res = {
                        "mode": "verify",
                        "cover": [sorted(mm) for mm in members],
                        "ok": bool(chk),
                        "violation": chk.violation,
                        "multiplicities": list(chk.multiplicities),
                    }
                    exact = True
                    if not chk:
                        any_fail = True
                    emitter.human(f"{src}: {'PASS' if chk else 'FAIL: ' + chk.violation}")
                elif args.roundtrip:
                    cover = find_cover(g, max_matchings, args.max_nodes)
                    if cover is NONE_FOUND:
                        res = {"mode": "roundtrip", "cover": "none_found"}
                        exact = True
                        emitter.human(f"{src}: no cover exists")
                    else:
                        pair = cover_to_complementary(cover)
                        p1, p2, f1, f2 = complementary_to_flows(g, pair)
                        rebuilt = flows_to_cover(g, p1, p2, f1, f2)
                        ok = sorted(cover.matchings, key=sorted) == sorted(
                            rebuilt.matchings, key=sorted)
                        res = {
                            "mode": "roundtrip",
                            "cover": certs.cover_json(cover),
                            "pair": [certs.array_json(pair.first), certs.array_json(pair.second)],
                            "p1": sorted(p1),
                            "p2": sorted(p2),
                            "flows": [certs.flow_json(f1), certs.flow_json(f2)],
                            "rebuilt": certs.cover_json(rebuilt),
                            "pass": ok,
                        }
                        exact = True
                        if not ok:
                            any_fail = True
                        emitter.human(f"{src}: roundtrip {'PASS' if ok else 'FAIL'}")
                else:
                    cover = find_cover(g, max_matchings, args.max_nodes)
                    if cover is NONE_FOUND:
                        res = {"mode": "find", "cover": "none_found"}
                        emitter.human(f"{src}: no cover exists")
                    else:
                        res = {"mode": "find", "cover": certs.cover_json(cover), "ok": True}
                        emitter.human(f"{src}: cover with {len(cover.matchings)} matchings")
                    exact = True
            except BudgetError as exc:
                res = {"mode": "find", "cover": "budget_exceeded", "detail": str(exc)}
                exact = False
                any_bounded = True
                emitter.human(f"{src}: budget exceeded ({exc})")
            except GraphError as exc:
                emitter.certificate(certs.error_certificate("fulkerson", src, str(exc)))
                emitter.human(f"{src}: ERROR {exc}")
                any_error = True
                continue
            dt = time.perf_counter() - t0 if args.timing else None
            emitter.certificate(certs.make_certificate("fulkerson", src, g, res, exact, dt))
    finally:
        emitter.close()
    return 1 if any_error or any_fail else 2 if any_bounded else 0


def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.certificates == "-" else open(
        args.certificates, encoding="utf-8").read()
    passed = failed = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        label = f"{args.certificates}:{lineno}"
        try:
            cert = json.loads(line)
        except json.JSONDecodeError as exc:
            print(f"FAIL {label}: bad JSON: {exc}")
            failed += 1
            continue
        problems = certs.verify_certificate(cert)
        src = cert.get("source", "?") if isinstance(cert, dict) else "?"
        if problems:
            print(f"FAIL {label} ({src}): " + "; ".join(problems))
            failed += 1
        else:
            if not args.quiet:
                print(f"PASS {label} ({src})")
            passed += 1
    print(f"verified {passed + failed} certificate(s): {passed} pass, {failed} fail")
    return 1 if failed else 0


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph6", metavar="FILE",
                   help="graph6 input, one graph per line ('-' for stdin)")
    p.add_argument("--edge-list", metavar="FILE", help="edge-list format input")
    p.add_argument("--construct", metavar="DESC", action="append",
                   help="construction descriptor: petersen, flower:N, inflate:GRAPH:V, "
                        "inflate-pair:GRAPH:U:V, double:GRAPH (repeatable)")
    p.add_argument("--json", action="store_true", help="print certificates (JSONL) to stdout")
    p.add_argument("--quiet", action="store_true", help="suppress human summary lines")
    p.add_argument("--output", metavar="FILE", help="also write certificates (JSONL) to FILE")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: machine parallelism)")
    p.add_argument("--timing", action="store_true",
                   help="record wall time (certificates stop being reproducible)")
    p.add_argument("--max-matchings", type=int, default=None,
                   help=f"matching enumeration cap (default ${ENV_MAX_MATCHINGS})")
    p.add_argument("--max-triples", type=int, default=None,
                   help=f"triple inspection cap (default ${ENV_MAX_TRIPLES})")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snarkdefect",
        description="Exact colouring-defect and Fulkerson-cover computations "
                    "for bridgeless cubic graphs.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    pa = sub.add_parser("analyze", help="defect, core and flow analysis per input graph")
    _add_input_flags(pa)
    pa.set_defaults(fn=cmd_analyze)

    pf = sub.add_parser("fulkerson", help="find/verify Fulkerson covers, run the roundtrip")
    _add_input_flags(pf)
    mode = pf.add_mutually_exclusive_group()
    mode.add_argument("--find", action="store_true", help="search for a cover (default)")
    mode.add_argument("--verify", metavar="COVERFILE",
                      help="check a cover (JSON {'matchings': [...]}, or a find certificate)")
    mode.add_argument("--roundtrip", action="store_true",
                      help="cover -> complementary pair -> flows -> cover, checked")
    pf.add_argument("--max-nodes", type=int, default=None, help="cover search node cap")
    pf.set_defaults(fn=cmd_fulkerson)

    pv = sub.add_parser("verify", help="re-check certificates produced by analyze/fulkerson")
    pv.add_argument("certificates", help="JSONL certificate file ('-' for stdin)")
    pv.add_argument("--quiet", action="store_true", help="print failures only")
    pv.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
