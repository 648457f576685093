"""Command line front end.

Subcommands: info, stages, enumerate, reduce, limit, check. Output is plain
text by default; --json switches every command to a single JSON object with
a stable schema (documented in the README). Exit codes: 0 success, 1 a
check reported failures, 2 parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .seqcolim import direct_limit
from .span import SpanError, parse_span, realize, component_of
from .stages import build_stages, cycle_diagnostic, stage_diagram, stage_word_bijection
from .words import WordError, enumerate_words, format_word, parse_word, reduce_word
from .oracle import pi1_rank


def _load_span(path):
    with open(path, encoding="utf-8") as handle:
        return parse_span(handle.read())


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_info(args):
    span = _load_span(args.file)
    graph = realize(span)
    remaining = set(graph.vertices)
    components = 0
    while remaining:
        seed = next(v for v in graph.vertices if v in remaining)
        comp, _ = component_of(graph, seed)
        remaining -= comp
        components += 1
    base_component, _ = component_of(graph, span.base_vertex)
    rank = pi1_rank(graph, span.base_vertex)
    payload = {
        "command": "info",
        "a_vertices": list(span.a_vertices),
        "b_vertices": list(span.b_vertices),
        "edges": [list(e) for e in span.edges],
        "basepoint": span.a_vertices[span.basepoint],
        "components": components,
        "basepoint_component_size": len(base_component),
        "pi1_rank": rank,
    }
    _emit(
        args,
        payload,
        [
            "|A| = %d, |B| = %d, |S| = %d" % (len(span.a_vertices), len(span.b_vertices), len(span.edges)),
            "basepoint: %s" % span.a_vertices[span.basepoint],
            "components: %d (basepoint component has %d vertices)"
            % (components, len(base_component)),
            "pi1 rank at basepoint: %d" % rank,
        ],
    )
    return 0


def _cmd_stages(args):
    span = _load_span(args.file)
    stages = build_stages(span, args.up_to)
    report = stage_word_bijection(stages, args.up_to)
    rows = []
    for n in range(args.up_to + 1):
        st = stages[n]
        cycles = cycle_diagnostic(stages, n)
        glue = 0
        if st.spans_a is not None:
            glue += sum(len(sp.middle) for sp in st.spans_a)
            glue += sum(len(sp.middle) for sp in st.spans_b)
        row = {
            "n": n,
            "a_fibers": {
                span.a_vertices[a]: st.pa_quot[a].class_count
                for a in range(len(span.a_vertices))
            },
            "b_fibers": {
                span.b_vertices[b]: st.pb_quot[b].class_count
                for b in range(len(span.b_vertices))
            },
            "glue": glue,
            "cycles": sum(cycles.values()),
            "bijection": "ok"
            if all(ok for stage, _v, _c, _w, ok in report.rows if stage == n)
            else "FAIL",
        }
        rows.append(row)
    payload = {"command": "stages", "rows": rows, "ok": report.ok}
    lines = []
    for row in rows:
        a_part = " ".join("%s=%d" % kv for kv in row["a_fibers"].items())
        b_part = " ".join("%s=%d" % kv for kv in row["b_fibers"].items())
        lines.append(
            "n=%d  |P_A|: %s  |P_B|: %s  glue=%d  cycles=%d  bijection=%s"
            % (row["n"], a_part or "-", b_part or "-", row["glue"], row["cycles"], row["bijection"])
        )
    if not report.ok:
        lines += ["mismatch: " + f for f in report.failures[:5]]
    _emit(args, payload, lines)
    return 0 if report.ok else 1


def _cmd_enumerate(args):
    span = _load_span(args.file)
    endpoint = span.lookup_vertex(args.endpoint)
    words = enumerate_words(span, endpoint, args.max_len)
    rendered = [format_word(span, w) for w in words]
    payload = {
        "command": "enumerate",
        "endpoint": args.endpoint,
        "max_len": args.max_len,
        "words": rendered,
    }
    _emit(args, payload, rendered)
    return 0


def _cmd_reduce(args):
    span = _load_span(args.file)
    word = parse_word(span, args.word)
    normal = reduce_word(span, word)
    rendered = format_word(span, normal)
    payload = {"command": "reduce", "input": args.word, "normal_form": rendered}
    _emit(args, payload, [rendered])
    return 0


def _cmd_limit(args):
    span = _load_span(args.file)
    endpoint = span.lookup_vertex(args.endpoint)
    stages = build_stages(span, args.up_to)
    report = stage_word_bijection(stages, args.up_to)
    limit = direct_limit(stage_diagram(stages, endpoint))
    reps = []
    for stage, rep in limit.representatives():
        entry = {"stage": stage}
        if report.ok:
            entry["word"] = format_word(span, report.word_maps[(stage, endpoint)][rep])
        reps.append(entry)
    payload = {
        "command": "limit",
        "endpoint": args.endpoint,
        "up_to": args.up_to,
        "classes": limit.class_count,
        "representatives": reps,
    }
    lines = ["classes: %d" % limit.class_count]
    lines += [
        "stage=%d %s" % (entry["stage"], entry.get("word", "?")) for entry in reps
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_check(args):
    span = _load_span(args.file)
    results = checks.run_all(
        span,
        seed=args.seed,
        max_len=args.max_len,
        stage_depth=args.stages,
        with_oracle=args.oracle,
    )
    ok = all(r.ok for r in results)
    payload = {
        "command": "check",
        "ok": ok,
        "results": [
            {"name": r.name, "ok": r.ok, "details": r.details} for r in results
        ],
    }
    lines = [
        "%s %s%s" % ("ok  " if r.ok else "FAIL", r.name, (": " + r.details) if r.details else "")
        for r in results
    ]
    lines.append("check: %s" % ("all suites passed" if ok else "FAILURES"))
    _emit(args, payload, lines)
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spanpaths",
        description="Staged pushout path spaces over finite span diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="span cardinalities, components, fundamental group rank")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_info)

    p = sub.add_parser("stages", help="stage table: fiber sizes, glue, cycles, word bijection")
    p.add_argument("file")
    p.add_argument("--up-to", type=int, default=3, metavar="N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_stages)

    p = sub.add_parser("enumerate", help="reduced words to an endpoint, canonical order")
    p.add_argument("file")
    p.add_argument("--endpoint", required=True, metavar="V")
    p.add_argument("--max-len", type=int, default=6, metavar="L")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("reduce", help="normal form of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("limit", help="direct limit classes of one fiber's stage diagram")
    p.add_argument("file")
    p.add_argument("--up-to", type=int, default=3, metavar="N")
    p.add_argument("--endpoint", required=True, metavar="V")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("check", help="run every module's invariant suite")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="add the graph-walk oracle suite")
    p.add_argument("--seed", type=int, default=0, metavar="K")
    p.add_argument("--max-len", type=int, default=8, metavar="L")
    p.add_argument("--stages", type=int, default=4, metavar="N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except (SpanError, WordError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
