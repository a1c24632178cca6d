"""Cycle adjacency graphs, rule-induced spanning trees, DOT export.

Vertices are CycleRecords; an adjacency edge exists for every conjugate pair
whose two states live in different cycles. A successor rule's fired pairs,
oriented by the rule's cycle relation, must form a spanning tree rooted at the
relation's extreme cycle; ``induced_tree`` builds that tree or explains why
the edge set is not one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fsr
from .bitword import Bits, max_zero_run, word_str
from .generator import fired_pairs
from .rules import (
    ORDER_LEX_REP,
    ORDER_MIXED,
    ORDER_NECKLACE,
    ORDER_RUN,
    ORDER_WEIGHT_DOWN,
    ORDER_WEIGHT_UP,
    RuleSpec,
    SuccessorRule,
    successor_rule,
)


class TreeStructureError(RuntimeError):
    """The fired pairs of a rule do not form a spanning tree."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class GraphEdge:
    a: fsr.CycleRecord
    b: fsr.CycleRecord
    state: Bits  # the zero-led member of the conjugate pair


@dataclass(frozen=True)
class AdjacencyGraph:
    vertices: tuple[fsr.CycleRecord, ...]
    edges: tuple[GraphEdge, ...]


@dataclass(frozen=True)
class TreeEdge:
    child: fsr.CycleRecord
    parent: fsr.CycleRecord
    state: Bits  # the fired state inside the child cycle


@dataclass(frozen=True)
class SpanningTree:
    root: fsr.CycleRecord
    vertices: tuple[fsr.CycleRecord, ...]
    edges: tuple[TreeEdge, ...]


def adjacency_graph(f: fsr.FeedbackFunction) -> AdjacencyGraph:
    """Every conjugate pair straddling two distinct cycles becomes an edge."""
    records, owner = fsr.cycle_map(f)
    half = 1 << (f.n - 1)
    edges = []
    for idx in range(half):
        pos_a = owner[idx]
        pos_b = owner[idx + half]
        if pos_a != pos_b:
            edges.append(
                GraphEdge(records[pos_a], records[pos_b], fsr.index_word(idx, f.n))
            )
    return AdjacencyGraph(records, tuple(edges))


def _cycle_representative(f: fsr.FeedbackFunction, record: fsr.CycleRecord) -> Bits:
    """Lexicographically least n-bit state of the cycle."""
    window = record.necklace
    if len(window) >= f.n:
        member = window[: f.n]
    else:
        repeats = -(-f.n // len(window))
        member = (window * repeats)[: f.n]
    best = start = fsr.word_index(member)
    idx = fsr.step_index(f, start)
    while idx != start:
        if idx < best:
            best = idx
        idx = fsr.step_index(f, idx)
    return fsr.index_word(best, f.n)


def parent_precedes(
    order: str,
    parent: fsr.CycleRecord,
    child: fsr.CycleRecord,
    reps: dict[fsr.CycleRecord, Bits] | None = None,
) -> bool:
    """Strict precedence of parent over child under the named cycle relation."""
    if order == ORDER_WEIGHT_UP:
        return parent.weight > child.weight
    if order == ORDER_WEIGHT_DOWN:
        return parent.weight < child.weight
    if order == ORDER_RUN:
        return max_zero_run(parent.necklace) > max_zero_run(child.necklace)
    if order == ORDER_NECKLACE:
        return parent.necklace < child.necklace
    if order == ORDER_MIXED:
        if parent.weight != child.weight:
            return parent.weight > child.weight
        return parent.necklace < child.necklace
    if order == ORDER_LEX_REP:
        if reps is None:
            raise ValueError("lex-rep comparisons need the representative map")
        return reps[parent] < reps[child]
    raise ValueError(f"unknown order {order!r}")


def expected_root(
    order: str,
    records: tuple[fsr.CycleRecord, ...],
    reps: dict[fsr.CycleRecord, Bits] | None = None,
) -> fsr.CycleRecord:
    """The unique cycle that precedes every other one under the relation."""
    if order == ORDER_WEIGHT_UP:
        return max(records, key=lambda r: r.weight)
    if order == ORDER_WEIGHT_DOWN:
        return min(records, key=lambda r: r.weight)
    if order == ORDER_RUN:
        return max(records, key=lambda r: (max_zero_run(r.necklace), r.necklace))
    if order == ORDER_NECKLACE:
        return min(records, key=lambda r: r.necklace)
    if order == ORDER_MIXED:
        return min(records, key=lambda r: (-r.weight, r.necklace))
    if order == ORDER_LEX_REP:
        return min(records, key=lambda r: reps[r])
    raise ValueError(f"unknown order {order!r}")


def induced_tree(spec: RuleSpec | SuccessorRule) -> SpanningTree:
    """Read the rule's fired pairs as directed edges and validate the tree.

    Each pair is oriented child -> parent so that the parent strictly precedes
    the child under the rule's cycle relation. Structured failures name the
    offending cycles.
    """
    rule = spec if isinstance(spec, SuccessorRule) else successor_rule(spec)
    f = rule.base_fsr
    records, owner = fsr.cycle_map(f)
    reps = None
    if rule.order == ORDER_LEX_REP:
        reps = {rec: _cycle_representative(f, rec) for rec in records}

    issues: list[str] = []
    edges: list[TreeEdge] = []
    outgoing: dict[fsr.CycleRecord, int] = {rec: 0 for rec in records}
    parent_of: dict[fsr.CycleRecord, fsr.CycleRecord] = {}
    for zero_state, one_state in fired_pairs(rule):
        rec_zero = records[owner[fsr.word_index(zero_state)]]
        rec_one = records[owner[fsr.word_index(one_state)]]
        if rec_zero == rec_one:
            issues.append(
                f"fired pair {word_str(zero_state)} joins cycle "
                f"{rec_zero} to itself"
            )
            continue
        zero_first = parent_precedes(rule.order, rec_one, rec_zero, reps)
        one_first = parent_precedes(rule.order, rec_zero, rec_one, reps)
        if zero_first == one_first:
            issues.append(
                f"cannot orient the pair {word_str(zero_state)} between "
                f"{rec_zero} and {rec_one}"
            )
            continue
        if zero_first:
            child, parent, state = rec_zero, rec_one, zero_state
        else:
            child, parent, state = rec_one, rec_zero, one_state
        edges.append(TreeEdge(child, parent, state))
        outgoing[child] += 1
        parent_of[child] = parent

    roots = [rec for rec, deg in outgoing.items() if deg == 0]
    for rec, deg in sorted(outgoing.items()):
        if deg > 1:
            issues.append(f"cycle {rec} has outdegree {deg}")
    if len(roots) != 1:
        issues.append(f"expected one root, found {len(roots)}: {roots}")
    if not issues:
        root = roots[0]
        for rec in records:
            hops = 0
            cur = rec
            while cur != root:
                cur = parent_of[cur]
                hops += 1
                if hops > len(records):
                    issues.append(f"cycle {rec} never reaches the root")
                    break
            if issues:
                break
    if issues:
        raise TreeStructureError(issues)
    return SpanningTree(roots[0], records, tuple(edges))


def _quoted(record: fsr.CycleRecord) -> str:
    return f'"{word_str(record.necklace)}"'


def to_dot(obj: AdjacencyGraph | SpanningTree) -> str:
    """DOT text; vertex names are necklace strings, edges carry state labels."""
    lines = []
    if isinstance(obj, SpanningTree):
        lines.append("digraph successor_rule_tree {")
        for rec in obj.vertices:
            lines.append(f"  {_quoted(rec)};")
        for edge in sorted(obj.edges, key=lambda e: e.child.necklace):
            lines.append(
                f"  {_quoted(edge.child)} -> {_quoted(edge.parent)}"
                f' [label="{word_str(edge.state)}"];'
            )
    else:
        lines.append("graph cycle_adjacency {")
        for rec in obj.vertices:
            lines.append(f"  {_quoted(rec)};")
        for edge in sorted(obj.edges, key=lambda e: (e.a.necklace, e.b.necklace, e.state)):
            lines.append(
                f"  {_quoted(edge.a)} -- {_quoted(edge.b)}"
                f' [label="{word_str(edge.state)}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(obj: AdjacencyGraph | SpanningTree) -> dict:
    """JSON-ready dump mirroring the DOT content."""
    vertices = [word_str(rec.necklace) for rec in obj.vertices]
    if isinstance(obj, SpanningTree):
        return {
            "root": word_str(obj.root.necklace),
            "vertices": vertices,
            "edges": [
                {
                    "child": word_str(e.child.necklace),
                    "parent": word_str(e.parent.necklace),
                    "state": word_str(e.state),
                }
                for e in obj.edges
            ],
        }
    return {
        "vertices": vertices,
        "edges": [
            {
                "a": word_str(e.a.necklace),
                "b": word_str(e.b.necklace),
                "state": word_str(e.state),
            }
            for e in obj.edges
        ],
    }
