"""Invariant suites aggregated by the CLI `check` command and the tests.

Each suite takes a span and returns CheckResult rows; nothing here raises on
a failed property, so one run reports everything. Randomized pieces draw
from an explicit seed and are byte-deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import idsys, oracle
from .seqcolim import (
    QuotientSet,
    SeqMorphism,
    compose_morphisms,
    direct_limit,
    half_shift,
    map_of_limits,
    shift_diagram,
    truncate_diagram,
    zigzag_equivalence,
    zigzag_to_morphism,
)
from .span import FiniteSpan, Vertex, realize
from .stages import (
    build_stages,
    construction_zigzag,
    cycle_diagnostic,
    stage_diagram,
    stage_word_bijection,
)
from .words import (
    BWD,
    FWD,
    Step,
    all_reduced_words,
    concat_bwd,
    concat_fwd,
    enumerate_words,
    format_word,
    is_reduced,
    parse_word,
    reduce_word,
    reduce_word_rightmost,
    word_endpoint,
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: str = ""


def _result(name, failures, detail_ok=""):
    if failures:
        return CheckResult(name, False, "; ".join(failures[:5]))
    return CheckResult(name, True, detail_ok)


# ---------------------------------------------------------------- words


def random_unreduced_word(span, rng, max_len=12):
    """A structurally valid, possibly backtracking word from the basepoint."""
    word = []
    at = span.base_vertex
    for _ in range(rng.randint(0, max_len)):
        options = span.edges_at(at)
        if not options:
            break
        s = rng.choice(options)
        if at.side == "A":
            word.append(Step(FWD, s))
            at = Vertex("B", span.b_end(s))
        else:
            word.append(Step(BWD, s))
            at = Vertex("A", span.a_end(s))
    return tuple(word)


def word_suite(span, max_len=8, seed=0, samples=1000):
    results = []
    rng = random.Random(seed)
    words = all_reduced_words(span, max_len)

    failures = []
    for w in words:
        end = word_endpoint(span, w)
        if (end.side == "A") != (len(w) % 2 == 0):
            failures.append("parity broken at %s" % format_word(span, w))
    results.append(_result("words.parity", failures))

    failures = []
    for w in words:
        end = word_endpoint(span, w)
        if end.side == "A":
            for s in span.edges_at(end):
                if concat_bwd(span, concat_fwd(span, w, s), s) != w:
                    failures.append("forward then backward moves %s" % format_word(span, w))
        else:
            for s in span.edges_at(end):
                if concat_fwd(span, concat_bwd(span, w, s), s) != w:
                    failures.append("backward then forward moves %s" % format_word(span, w))
    results.append(_result("words.mutual-inverse", failures))

    failures = []
    for length in range(max_len):
        lower = {w for w in words if len(w) <= length}
        upper = {w for w in words if len(w) <= length + 1}
        if not lower <= upper or any(len(w) != length + 1 for w in upper - lower):
            failures.append("window at %d is not monotone" % length)
    results.append(_result("words.window-monotone", failures))

    failures = []
    steps_ok = True
    for _ in range(samples):
        raw = random_unreduced_word(span, rng)
        left = reduce_word(span, raw)
        right = reduce_word_rightmost(span, raw)
        if left != right:
            failures.append("strategies disagree on %s" % format_word(span, raw))
        if not is_reduced(left):
            failures.append("normal form of %s is not reduced" % format_word(span, raw))
        if (len(raw) - len(left)) // 2 > len(raw) // 2:
            steps_ok = False
    if not steps_ok:
        failures.append("rewrite step count exceeded len/2")
    results.append(_result("words.reduce-confluence", failures, "%d samples" % samples))

    failures = []
    for w in words:
        if parse_word(span, format_word(span, w)) != w:
            failures.append("roundtrip broke %s" % format_word(span, w))
    results.append(_result("words.roundtrip", failures))
    return results


# ---------------------------------------------------------------- oracle


def oracle_suite(span, max_len=8):
    results = []
    graph = realize(span)

    failures = []
    total = 0
    for v in span.vertices():
        report = oracle.compare_words_walks(span, v, max_len)
        total += report.count
        if not report.ok:
            failures.append("%s: %s" % (span.vertex_label(v), report.mismatch))
    results.append(_result("oracle.walk-bijection", failures, "%d items" % total))

    rank = oracle.pi1_rank(graph, span.base_vertex)
    failures = []
    if rank < 0:
        failures.append("negative rank %d" % rank)
    reachable = [
        v for v in span.vertices() if enumerate_words(span, v, max_len)
    ]
    if rank == 0:
        for v in reachable:
            n = len(enumerate_words(span, v, max_len))
            if n != 1:
                failures.append(
                    "rank 0 but %d words reach %s" % (n, span.vertex_label(v))
                )
    else:
        counts = [
            sum(len(enumerate_words(span, v, k)) for v in reachable)
            for k in range(max_len + 1)
        ]
        if any(a >= b for a, b in zip(counts, counts[1:])):
            failures.append("rank %d but walk counts do not grow strictly" % rank)
    results.append(_result("oracle.rank-consistency", failures, "rank %d" % rank))
    return results


# ---------------------------------------------------------------- stages


def stage_suite(span, depth=4):
    results = []
    stages = build_stages(span, depth)

    failures = []
    for a in range(len(span.a_vertices)):
        size = stages[0].pa_quot[a].class_count
        if size != (1 if a == span.basepoint else 0):
            failures.append("stage 0 A fiber %s has %d classes" % (span.a_vertices[a], size))
    for b in range(len(span.b_vertices)):
        if stages[0].pb_quot[b].class_count != 0:
            failures.append("stage 0 B fiber %s is not empty" % (span.b_vertices[b],))
    results.append(_result("stages.zero-case", failures))

    report = stage_word_bijection(stages, depth)
    results.append(_result("stages.word-bijection", report.failures))

    failures = []
    for k in range(1, depth + 1):
        st = stages[k]
        for a in range(len(span.a_vertices)):
            images = [st.incl_a[a][p] for p in stages[k - 1].pa_classes(a)]
            if len(set(images)) != len(images):
                failures.append("stage %d A inclusion at %s not injective" % (k, span.a_vertices[a]))
        for b in range(len(span.b_vertices)):
            images = [st.incl_b[b][p] for p in stages[k - 1].pb_classes(b)]
            if len(set(images)) != len(images):
                failures.append("stage %d B inclusion at %s not injective" % (k, span.b_vertices[b]))
    results.append(_result("stages.incl-injective", failures))

    nonzero = []
    for k in range(depth + 1):
        for v, cycles in cycle_diagnostic(stages, k).items():
            if cycles:
                nonzero.append("stage %d %s: %d" % (k, span.vertex_label(v), cycles))
    results.append(
        CheckResult(
            "stages.cycle-report",
            True,
            "all gluing graphs are forests" if not nonzero else "nonzero: " + "; ".join(nonzero),
        )
    )

    failures = []
    if report.ok:
        for v in span.vertices():
            diagram = stage_diagram(stages, v)
            limit = direct_limit(diagram)
            bound = 2 * depth if v.side == "A" else 2 * depth - 1
            expected = enumerate_words(span, v, bound)
            class_words = set()
            for cls in limit.classes():
                labels = {report.word_maps[(k, v)][x] for k, x in cls}
                if len(labels) != 1:
                    failures.append("limit class at %s mixes words" % span.vertex_label(v))
                class_words.add(labels.pop())
            if class_words != set(expected):
                failures.append(
                    "limit of %s has %d classes, %d words"
                    % (span.vertex_label(v), limit.class_count, len(expected))
                )
    else:
        failures.append("skipped: word bijection failed")
    results.append(_result("stages.colimit-agreement", failures))
    return results


def zigzag_suite(span, depth=5):
    """Construction zigzags per edge: triangle conditions plus limit round trips."""
    results = []
    stages = build_stages(span, depth)
    failures = []
    checked = 0
    for s in range(len(span.edges)):
        try:
            equivalence = zigzag_equivalence(construction_zigzag(stages, s))
        except ValueError as exc:
            failures.append("edge %s: %s" % (span.edge_label(s), exc))
            continue
        checked += equivalence.checked
        if not equivalence.ok:
            failures.append(
                "edge %s: %s" % (span.edge_label(s), "; ".join(equivalence.failures[:3]))
            )
    results.append(
        _result("stages.zigzag-equivalence", failures, "%d round trips" % checked)
    )
    return results


# ---------------------------------------------------------------- seq_colim


def seqcolim_suite(span, depth=3, seed=0):
    results = []
    rng = random.Random(seed)
    stages = build_stages(span, depth)

    failures = []
    for v in span.vertices():
        diagram = stage_diagram(stages, v)
        elements = [(n, x) for n, level in enumerate(diagram.sets) for x in level]
        pairs = [((n, x), (n + 1, diagram.maps[n][x])) for n, level in enumerate(diagram.sets[:-1]) for x in level]
        reference = None
        for _ in range(3):
            q = QuotientSet(elements)
            shuffled = pairs[:]
            rng.shuffle(shuffled)
            for x, y in shuffled:
                q.union(x, y)
            if reference is None:
                reference = q.classes()
            elif q.classes() != reference:
                failures.append("union order changed classes at %s" % span.vertex_label(v))
    results.append(_result("seqcolim.union-order-determinism", failures))

    failures = []
    for v in span.vertices():
        diagram = stage_diagram(stages, v)
        injective = all(
            len(set(m.values())) == len(m) for m in diagram.maps
        )
        limit = direct_limit(diagram)
        if injective and limit.class_count != len(diagram.sets[-1]):
            failures.append(
                "injective chain at %s: %d classes, last level %d"
                % (span.vertex_label(v), limit.class_count, len(diagram.sets[-1]))
            )
    results.append(_result("seqcolim.injective-classes", failures))

    failures = []
    for v in span.vertices():
        diagram = stage_diagram(stages, v)
        shifted = shift_diagram(diagram)
        lim = direct_limit(diagram)
        lim_shift = direct_limit(shifted)
        image = {lim.find((n + 1, x)) for n, level in enumerate(shifted.sets) for x in level}
        if lim_shift.class_count != lim.class_count or len(image) != lim.class_count:
            failures.append("shift changed the limit at %s" % span.vertex_label(v))
    results.append(_result("seqcolim.shift-invariance", failures))

    failures = []
    for s in range(len(span.edges)):
        z = construction_zigzag(stages, s)
        first = zigzag_to_morphism(z)
        second = zigzag_to_morphism(half_shift(z))
        # composing through the half-shift needs the first morphism cut to size
        cut = len(second.source.sets)
        first_cut = SeqMorphism(
            truncate_diagram(first.source, cut - 1),
            truncate_diagram(first.target, cut - 1),
            first.levels[:cut],
        )
        composite = compose_morphisms(second, first_cut)
        lhs = map_of_limits(composite)
        inner = map_of_limits(first_cut)
        outer = map_of_limits(second)
        if any(outer[inner[rep]] != img for rep, img in lhs.items()):
            failures.append("composition law fails across edge %s" % span.edge_label(s))
    results.append(_result("seqcolim.map-composition", failures))
    return results


# ---------------------------------------------------------------- idsys


def idsys_suite(span, bound=6, seed=0):
    results = []
    rng = random.Random(seed)
    families = [("trivial", idsys.trivial_family(span, bound))]
    for s in range(len(span.edges)):
        families.append(("parity@%s" % span.edge_label(s), idsys.parity_family(span, bound, s)))
        families.append(("winding@%s" % span.edge_label(s), idsys.winding_family(span, bound, s)))
    for k in range(2):
        families.append(("random%d" % k, idsys.random_family(span, bound, rng)))

    failures = []
    for name, fam in families:
        q0 = 0  # every builder family keeps 0 in each fiber; winding is window-safe only from 0
        section = idsys.elim_section(fam, q0)
        if len(section.values) != len(all_reduced_words(span, bound)):
            failures.append("%s: fold missed words" % name)
        comp = idsys.check_computation(fam, q0, section)
        if not comp.ok:
            failures.append("%s: %s" % (name, comp.violations[0]))
        uniq = idsys.uniqueness_check(fam, q0, section)
        if not uniq.ok:
            failures.append("%s: %s" % (name, uniq.first_disagreement))
    results.append(_result("idsys.fold-families", failures, "%d families" % len(families)))

    report = idsys.encode_decode(span, bound)
    results.append(
        _result(
            "idsys.encode-decode",
            report.identity_mismatches + report.naturality_mismatches,
            "%d identities, %d squares" % (report.identity_checked, report.naturality_checked),
        )
    )

    failures = []
    fam = idsys.build_family(span, bound, lambda v: (0, 1), lambda s, w, x: x)
    q0 = fam.fibers[()][0]
    section = idsys.elim_section(fam, q0)
    # length <= bound - 1 keeps the flipped value inside check_computation's window
    words = all_reduced_words(span, bound - 1)
    target = words[-1]  # falls back to refl on edgeless spans
    corrupted = dict(section.values)
    corrupted[target] = corrupted[target] ^ 1
    bad = idsys.Section(fam, corrupted)
    if idsys.check_computation(fam, q0, bad).ok:
        failures.append("corrupted section passed check_computation")
    if idsys.uniqueness_check(fam, q0, bad).ok:
        failures.append("corrupted section passed uniqueness_check")
    results.append(
        _result(
            "idsys.negative-controls",
            failures,
            "corruption at %s detected" % format_word(span, target),
        )
    )
    return results


# ---------------------------------------------------------------- random spans


def _nbt_count(span, max_len):
    # walk counts by (last edge) state; cheap screen before any enumeration
    counts = {}
    for s in span.edges_at(span.base_vertex):
        counts[s] = counts.get(s, 0) + 1
    total = 1 + sum(counts.values())
    parity = 1
    for _ in range(max_len - 1):
        nxt = {}
        for e, c in counts.items():
            at = Vertex("B", span.b_end(e)) if parity % 2 == 1 else Vertex("A", span.a_end(e))
            for e2 in span.edges_at(at):
                if e2 == e:
                    continue
                nxt[e2] = nxt.get(e2, 0) + c
        counts = nxt
        parity += 1
        total += sum(counts.values())
        if not counts:
            break
    return total


def random_span(rng, max_side=5, max_edges=8, max_len=8, walk_budget=4000):
    """A seeded random span within the size bounds, screened for desk scale.

    Spans whose non-backtracking walk count up to max_len exceeds the budget
    are redrawn (deterministically, from the same stream); accepted spans
    still satisfy the |A|, |B| and |S| bounds.
    """
    while True:
        na = rng.randint(1, max_side)
        nb = rng.randint(1, max_side)
        ns = rng.randint(0, max_edges)
        span = FiniteSpan(
            tuple("a%d" % i for i in range(na)),
            tuple("b%d" % j for j in range(nb)),
            tuple(("s%d" % k, rng.randrange(na), rng.randrange(nb)) for k in range(ns)),
            rng.randrange(na),
        )
        if _nbt_count(span, max_len) <= walk_budget:
            return span


def random_span_suite(count=100, seed=0, max_len=8, stage_depth=4):
    """Walk-oracle and stage-bijection cross-check over seeded random spans."""
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        span = random_span(rng, max_len=max_len)
        for v in span.vertices():
            report = oracle.compare_words_walks(span, v, max_len)
            if not report.ok:
                failures.append("span %d at %s: %s" % (i, span.vertex_label(v), report.mismatch))
        bij = stage_word_bijection(build_stages(span, stage_depth), stage_depth)
        if not bij.ok:
            failures.append("span %d: %s" % (i, bij.failures[0]))
    return [_result("random-spans.cross-check", failures, "%d spans" % count)]


# ---------------------------------------------------------------- aggregate


def run_all(span, seed=0, max_len=8, stage_depth=4, with_oracle=False):
    """Every module's invariant suite on one span; the CLI `check` backend."""
    results = []
    results += word_suite(span, max_len=max_len, seed=seed)
    results += stage_suite(span, depth=stage_depth)
    results += zigzag_suite(span, depth=stage_depth + 1)
    results += seqcolim_suite(span, depth=min(stage_depth, 3), seed=seed)
    results += idsys_suite(span, bound=min(max_len, 6), seed=seed)
    if with_oracle:
        results += oracle_suite(span, max_len=max_len)
    return results
