"""End-to-end constructive run: from a dense graph avoiding one cycle
length to k verified cycles of consecutive even lengths.

The stages mirror a cascade of density guarantees, 96d -> 48d -> 24d -> 12d:
keep a bipartite half and its densest component, layer it by BFS, select a
dense consecutive-level pair, peel to a min-degree core, grow a long cycle
with a locked vertex (hence a theta), and finally turn theta paths of each
even length 2r into cycles of length 2h+2r through the BFS tree.

Every returned witness is re-verified edge by edge in the original input
graph; a stage that cannot deliver raises StageFailure naming itself, and
guarantee-mode inputs are vetted against the exact rational hypotheses
before any work starts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .engine import (
    BfsLayering,
    bfs_layering,
    bipartite_half,
    dense_layer_pair,
    densest_component,
    peel_min_degree,
    posa_long_cycle,
    theta_from_cycle,
)
from .errors import (
    BipartiteException,
    DegenerateU,
    EmptyCore,
    EmptyGraph,
    InternalInvariantViolation,
    InvalidInput,
    NoDenseLayer,
    NotLocked,
    PreconditionViolation,
    StageFailure,
    Stalled,
)
from .extremal import DEFAULT_MAX_K, d_bounds, d_closed_form_odd, d_exact
from .graphs import Graph, masked_host_graph
from .oracle import (
    DEFAULT_BUDGET,
    CycleWitness,
    ResidueQuery,
    contains_cycle_of_length,
    verify_witness,
)
from .theta import ThetaGraph, theta_path

MODE_GUARANTEE = "guarantee"
MODE_BEST_EFFORT = "best-effort"


def frac_str(x: Fraction) -> str:
    """Exact rational rendering used throughout traces and reports."""
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TheoremInput:
    """One run request: the graph, the modulus k, the forbidden length ell,
    and how strictly the hypotheses are policed.

    ``d_value`` of None means "resolve the exact extremal value for me";
    ``cl_free_provenance`` is a trusted girth declaration (e.g. "girth: 6")
    that can stand in for an oracle check on graphs too large to sweep.
    """

    graph: Graph
    k: int
    ell: int
    d_value: Fraction | None = None
    mode: str = MODE_BEST_EFFORT
    cl_free_provenance: str | None = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        if self.mode not in (MODE_GUARANTEE, MODE_BEST_EFFORT):
            raise InvalidInput(f"unknown mode {self.mode!r}")
        if self.k < 1:
            raise InvalidInput("k must be a positive integer")
        if self.ell < 3:
            raise InvalidInput("forbidden cycle length must be at least 3")
        if self.d_value is not None and self.d_value <= 0:
            raise InvalidInput("d_value must be positive")
        if self.budget < 1:
            raise InvalidInput("budget must be positive")


@dataclass(frozen=True)
class ConsecutiveCyclesResult:
    """k verified cycles of lengths 2h+2, 2h+4, ..., 2h+2k plus the
    per-stage trace that produced them."""

    h: int
    witnesses: tuple[CycleWitness, ...]
    trace: tuple[dict[str, Any], ...] = field(repr=False)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(w.length for w in self.witnesses)


def _provenance_girth(text: str) -> int | None:
    body = text.strip()
    if re.fullmatch(r"\d+", body):
        return int(body)
    hit = re.search(r"girth\D*?(\d+)", body, re.IGNORECASE)
    return int(hit.group(1)) if hit else None


def _authoritative_d(k: int, ell: int) -> Fraction | None:
    """The exact extremal value when it is computable at this size."""
    if ell % 2 == 1:
        return d_closed_form_odd(k, ell)
    if k <= DEFAULT_MAX_K:
        value = d_exact(k, ell).value
        assert value is not None
        return value
    return None


def _resolve_d(inp: TheoremInput) -> tuple[Fraction, str]:
    if inp.d_value is not None:
        return inp.d_value, "user"
    if inp.ell % 2 == 1:
        return d_closed_form_odd(inp.k, inp.ell), "closed-form"
    if inp.k <= DEFAULT_MAX_K:
        record = d_exact(inp.k, inp.ell)
        assert record.value is not None
        return record.value, "exact-search"
    if inp.mode == MODE_GUARANTEE:
        raise PreconditionViolation(
            f"no exact extremal value is computable for k={inp.k}; "
            "supply --d-value or use best-effort mode"
        )
    record = d_bounds(inp.k, inp.ell)
    assert record.bounds is not None
    return record.bounds[0], "bounds-lower"


def _cl_free_note(inp: TheoremInput, guarantee: bool) -> str:
    """Establish (or honestly decline to establish) that the input has no
    cycle of length ell; guarantee mode refuses to proceed otherwise."""
    ell = inp.ell
    girth = (
        _provenance_girth(inp.cl_free_provenance)
        if inp.cl_free_provenance
        else None
    )
    if girth is not None:
        if ell < girth:
            return f"provenance: girth {girth} rules out length {ell}"
        if ell == girth:
            note = f"provenance declares girth {girth}, so a cycle of length {ell} exists"
            if guarantee:
                raise PreconditionViolation(note)
            return note + "; proceeding"
    if not guarantee:
        return "not-checked (best-effort)"
    result = contains_cycle_of_length(inp.graph, ell, budget=inp.budget)
    if result.witness is not None:
        raise PreconditionViolation(
            f"graph contains a cycle of length {ell}: {result.witness.vertices}"
        )
    if not result.exhaustive:
        raise PreconditionViolation(
            f"cycle-freeness for length {ell} was not established within "
            f"budget {inp.budget}; supply girth provenance or raise --budget"
        )
    return "oracle-exhaustive"


def _validate_and_resolve(
    inp: TheoremInput, trace: list[dict[str, Any]]
) -> Fraction:
    """Gate order: hypothesis range, density (with exact deficit), supplied
    d-value cross-check, cycle-freeness.  Best-effort mode records the same
    facts but only ever raises for truly malformed input."""
    guarantee = inp.mode == MODE_GUARANTEE
    entry: dict[str, Any] = {
        "stage": "validate",
        "mode": inp.mode,
        "k": inp.k,
        "ell": inp.ell,
    }
    trace.append(entry)
    in_range = 3 <= inp.ell <= inp.k
    entry["hypothesisRange"] = (
        f"3 <= ell <= k holds (ell={inp.ell}, k={inp.k})"
        if in_range
        else f"ell={inp.ell} outside [3, k={inp.k}]; theorem range not met"
    )
    if guarantee and not in_range:
        raise PreconditionViolation(
            f"guarantee mode requires 3 <= ell <= k, got ell={inp.ell}, k={inp.k}"
        )
    d_value, source = _resolve_d(inp)
    entry["dValue"] = frac_str(d_value)
    entry["dSource"] = source
    avg = inp.graph.average_degree
    threshold = 96 * d_value
    entry["avg"] = frac_str(avg)
    entry["threshold96"] = frac_str(threshold)
    entry["meets96"] = bool(avg >= threshold)
    if guarantee and avg < threshold:
        deficit = threshold - avg
        entry["deficit"] = frac_str(deficit)
        raise PreconditionViolation(
            f"average degree {frac_str(avg)} is below 96*d = "
            f"{frac_str(threshold)} (deficit {frac_str(deficit)})",
            deficit=deficit,
        )
    if guarantee and inp.d_value is not None:
        exact = _authoritative_d(inp.k, inp.ell)
        if exact is None:
            raise PreconditionViolation(
                f"supplied d-value cannot be validated for k={inp.k} "
                f"(exact search is limited to k <= {DEFAULT_MAX_K})"
            )
        if exact != inp.d_value:
            raise PreconditionViolation(
                f"supplied d-value {frac_str(inp.d_value)} differs from the "
                f"exact value {frac_str(exact)}"
            )
        entry["dValidated"] = "matches exact value"
    entry["clFree"] = _cl_free_note(inp, guarantee)
    return d_value


def _audit_preconditions(inp: TheoremInput, d_value: Fraction) -> list[dict[str, Any]]:
    """Non-raising re-check of every hypothesis, for failure diagnostics."""
    checks: list[dict[str, Any]] = []
    in_range = 3 <= inp.ell <= inp.k
    checks.append(
        {
            "check": "hypothesis-range",
            "ok": in_range,
            "detail": f"ell={inp.ell}, k={inp.k}",
        }
    )
    avg = inp.graph.average_degree
    threshold = 96 * d_value
    checks.append(
        {
            "check": "average-degree",
            "ok": bool(avg >= threshold),
            "detail": f"avg {frac_str(avg)} vs 96*d {frac_str(threshold)}",
        }
    )
    exact = _authoritative_d(inp.k, inp.ell) if inp.d_value is not None else None
    if inp.d_value is not None:
        checks.append(
            {
                "check": "d-value",
                "ok": exact == inp.d_value,
                "detail": (
                    f"supplied {frac_str(inp.d_value)}, exact "
                    f"{frac_str(exact) if exact is not None else 'unavailable'}"
                ),
            }
        )
    try:
        note = _cl_free_note(inp, guarantee=True)
        checks.append({"check": "cycle-freeness", "ok": True, "detail": note})
    except PreconditionViolation as exc:
        checks.append({"check": "cycle-freeness", "ok": False, "detail": str(exc)})
    return checks


def steiner_top(
    lay: BfsLayering, members: list[int] | tuple[int, ...]
) -> tuple[int, dict[int, tuple[int, ...]], int]:
    """The deepest common ancestor u of a same-level vertex set, the grouping
    of the set by which child of u each vertex descends through, and the
    depth difference h.

    With at least two members all on one level, u lies strictly above and at
    least two groups are nonempty (otherwise u would not be deepest).
    """
    anchors = sorted(set(members))
    if len(anchors) < 2:
        raise DegenerateU(
            f"need at least two anchor vertices, got {len(anchors)}"
        )
    level = lay.depth_of(anchors[0])
    for v in anchors[1:]:
        if lay.depth_of(v) != level:
            raise InvalidInput("anchor vertices must share one BFS level")
    common = set(lay.tree_path_to_root(anchors[0]))
    for v in anchors[1:]:
        common &= set(lay.tree_path_to_root(v))
        if len(common) == 1:
            break
    u = max(common, key=lay.depth_of)
    h = level - lay.depth_of(u)
    if h < 1:
        raise InternalInvariantViolation(
            "common ancestor sits on the anchors' own level"
        )
    branches: dict[int, list[int]] = {}
    for v in anchors:
        chain = lay.tree_path_to_root(v)
        branches.setdefault(chain[h - 1], []).append(v)
    if len(branches) < 2:
        raise InternalInvariantViolation(
            f"all anchors descend through one child of {u}; "
            "u is then not the deepest common ancestor"
        )
    return u, {c: tuple(vs) for c, vs in sorted(branches.items())}, h


def assemble_cycle(
    lay: BfsLayering,
    u: int,
    a: int,
    b: int,
    theta_path_vertices: tuple[int, ...],
) -> CycleWitness:
    """Concatenate a theta path from a to b with the tree path a -> u -> b
    into one cycle of length 2h + (path length).

    The tree path's interior lives strictly above the endpoints' level while
    the theta path lives in the two bottom levels, so the two are disjoint;
    any collision is a broken invariant, never silently accepted.
    """
    path = tuple(theta_path_vertices)
    if len(path) < 2 or path[0] != a or path[-1] != b:
        raise InvalidInput("theta path must run from a to b")
    da, db = lay.depth_of(a), lay.depth_of(b)
    if da != db:
        raise InternalInvariantViolation(
            f"cycle ends at different depths ({da} vs {db})"
        )
    h = da - lay.depth_of(u)
    if h < 1:
        raise InternalInvariantViolation("tree top must lie above the ends")
    up_a = lay.tree_path_to_root(a)[: h + 1]
    up_b = lay.tree_path_to_root(b)[: h + 1]
    if up_a[-1] != u or up_b[-1] != u:
        raise InternalInvariantViolation(
            f"{u} is not the tree ancestor of both ends at height {h}"
        )
    shared = set(up_a[1:-1]) & set(up_b[1:-1])
    if shared:
        raise InternalInvariantViolation(
            f"tree branches meet below {u} at {sorted(shared)}"
        )
    interior = list(up_b[1:]) + list(reversed(up_a[1:-1]))
    collision = set(path) & set(interior)
    if collision:
        raise InternalInvariantViolation(
            f"tree path and theta path share vertices {sorted(collision)}"
        )
    sequence = list(path) + interior
    witness = CycleWitness.of(tuple(sequence))
    check = verify_witness(lay.graph, witness)
    if not check:
        raise InternalInvariantViolation(
            f"assembled cycle is not a cycle of the layered graph: {check.reason}"
        )
    return witness


def consecutive_even_cycles(inp: TheoremInput) -> ConsecutiveCyclesResult:
    """Run every stage in order and return k verified cycles of consecutive
    even lengths, or raise StageFailure naming the first stage whose
    guarantee did not materialize (with the trace so far attached)."""
    g = inp.graph
    if g.n == 0:
        raise EmptyGraph("cannot run on the empty graph")
    guarantee = inp.mode == MODE_GUARANTEE
    trace: list[dict[str, Any]] = []

    def fail(stage: str, reason: str, extra: dict[str, Any] | None = None) -> StageFailure:
        entry: dict[str, Any] = {"stage": stage, "failed": True, "reason": reason}
        if extra:
            entry.update(extra)
        diagnostics: dict[str, Any] = dict(extra or {})
        if guarantee:
            audit = _audit_preconditions(inp, d_value)
            entry["preconditionAudit"] = audit
            diagnostics["preconditionAudit"] = audit
        trace.append(entry)
        exc = StageFailure(stage, reason, diagnostics or None)
        exc.trace = tuple(trace)
        return exc

    try:
        d_value = _validate_and_resolve(inp, trace)
    except PreconditionViolation as exc:
        exc.trace = tuple(trace)
        raise

    half = bipartite_half(g)
    trace.append(
        {
            "stage": "bipartite-half",
            "cutEdges": half.edge_count,
            "totalEdges": g.m,
        }
    )

    comp = densest_component(half)
    gp = masked_host_graph(comp)
    avg_gp = comp.average_degree
    threshold48 = 48 * d_value
    meets48 = bool(avg_gp >= threshold48)
    trace.append(
        {
            "stage": "densest-component",
            "n": len(comp.vertices),
            "m": comp.edge_count,
            "avg": frac_str(avg_gp),
            "threshold48": frac_str(threshold48),
            "meets": meets48,
        }
    )
    if guarantee and not meets48:
        raise fail(
            "densest-component",
            f"average degree {frac_str(avg_gp)} is below 48*d = {frac_str(threshold48)}",
        )

    root = comp.vertices[0]
    lay = bfs_layering(gp, root)
    trace.append(
        {
            "stage": "bfs-layering",
            "root": root,
            "height": lay.height,
            "levelSizes": [len(level) for level in lay.levels],
        }
    )

    threshold24 = 24 * d_value
    try:
        i, dense_pair = dense_layer_pair(gp, lay, threshold24)
    except NoDenseLayer as exc:
        raise fail(
            "dense-layer-pair",
            str(exc),
            {
                "densities": [
                    {
                        "i": idx,
                        "crossEdges": cross,
                        "vertices": verts,
                        "avg": frac_str(Fraction(2 * cross, verts)),
                    }
                    for idx, cross, verts in exc.densities
                ]
            },
        )
    avg_f = dense_pair.average_degree
    trace.append(
        {
            "stage": "dense-layer-pair",
            "i": i,
            "n": len(dense_pair.vertices),
            "m": dense_pair.edge_count,
            "avg": frac_str(avg_f),
            "threshold24": frac_str(threshold24),
            "meets": bool(avg_f >= threshold24),
        }
    )

    threshold12 = 12 * d_value
    f_graph = masked_host_graph(dense_pair)
    try:
        core = peel_min_degree(f_graph, threshold12)
    except EmptyCore:
        raise fail(
            "peel",
            f"no nonempty subgraph of minimum degree {frac_str(threshold12)}",
            {"delta": frac_str(threshold12)},
        )
    core_graph = (
        f_graph if core.vertices == dense_pair.vertices else masked_host_graph(core)
    )
    min_degree = min(core_graph.degree(v) for v in core.vertices)
    if min_degree < threshold12:
        raise InternalInvariantViolation(
            f"peeled core has minimum degree {min_degree} < {frac_str(threshold12)}"
        )
    trace.append(
        {
            "stage": "peel",
            "delta": frac_str(threshold12),
            "n": len(core.vertices),
            "m": core.edge_count,
            "minDegree": min_degree,
            "meets": True,
        }
    )

    target = 2 * inp.k + 2
    try:
        cycle_witness, locked = posa_long_cycle(core_graph, target)
    except Stalled as exc:
        raise fail(
            "posa-theta",
            str(exc),
            {
                "target": target,
                "bestCycleLength": len(exc.best_cycle) if exc.best_cycle else 0,
            },
        )
    try:
        theta = theta_from_cycle(core_graph, cycle_witness, locked)
    except NotLocked as exc:
        raise InternalInvariantViolation(
            f"vertex {locked} reported locked but chord extraction failed: {exc}"
        )
    theta.validate()
    trace.append(
        {
            "stage": "posa-theta",
            "target": target,
            "cycleLength": cycle_witness.length,
            "locked": locked,
            "thetaSize": theta.n,
            "minThetaSize": target,
            "meets": bool(theta.n >= target),
            "chord": list(theta.chord_labels),
        }
    )
    if theta.n < target:
        raise fail("posa-theta", f"theta has {theta.n} vertices, fewer than {target}")

    members = [v for v in theta.cycle if lay.depth_of(v) == i - 1]
    try:
        u, branches, h = steiner_top(lay, members)
    except DegenerateU as exc:
        raise fail("steiner-top", str(exc), {"anchorCount": len(members)})
    branch_of = {v: child for child, vs in branches.items() for v in vs}
    side_a = branches[branch_of[min(members)]]
    a_set = set(side_a)
    side_b = tuple(v for v in theta.cycle if v not in a_set)
    trace.append(
        {
            "stage": "steiner-top",
            "i": i,
            "anchorCount": len(members),
            "u": u,
            "h": h,
            "branchSizes": sorted((len(vs) for vs in branches.values()), reverse=True),
            "sideA": len(side_a),
            "sideB": len(side_b),
        }
    )

    witnesses: list[CycleWitness] = []
    path_entries: list[dict[str, Any]] = []
    for r in range(1, inp.k + 1):
        try:
            path = theta_path(theta, side_a, side_b, 2 * r)
        except BipartiteException as exc:
            raise InternalInvariantViolation(
                f"side split coincided with the theta bipartition: {exc}"
            )
        a, b = path[0], path[-1]
        if a not in a_set:
            raise InternalInvariantViolation(f"path start {a} is outside side A")
        if b not in branch_of or branch_of[b] == branch_of[a]:
            raise InternalInvariantViolation(
                f"path end {b} is not an anchor in a different branch"
            )
        witness = assemble_cycle(lay, u, a, b, path)
        expected = 2 * h + 2 * r
        if witness.length != expected:
            raise InternalInvariantViolation(
                f"assembled length {witness.length}, expected {expected}"
            )
        check = verify_witness(g, witness)
        if not check:
            raise InternalInvariantViolation(
                f"witness for r={r} fails in the input graph: {check.reason}"
            )
        witnesses.append(witness)
        path_entries.append(
            {
                "r": r,
                "a": a,
                "b": b,
                "path": list(path),
                "cycleLength": witness.length,
            }
        )
    trace.append({"stage": "theta-paths", "count": inp.k, "paths": path_entries})
    return ConsecutiveCyclesResult(h=h, witnesses=tuple(witnesses), trace=tuple(trace))


def residue_witness_from_progression(
    res: ConsecutiveCyclesResult, query: ResidueQuery
) -> CycleWitness | None:
    """The shortest witness in the progression matching the residue query,
    or None (odd residues are unreachable: all lengths are even)."""
    for witness in res.witnesses:
        if query.matches(witness.length):
            return witness
    return None


def _trace_d_value(trace: tuple[dict[str, Any], ...] | list[dict[str, Any]], inp: TheoremInput) -> str | None:
    for entry in trace:
        if entry.get("stage") == "validate" and "dValue" in entry:
            return entry["dValue"]
    return frac_str(inp.d_value) if inp.d_value is not None else None


def build_report(
    inp: TheoremInput,
    trace: tuple[dict[str, Any], ...] | list[dict[str, Any]],
    *,
    result: ConsecutiveCyclesResult | None = None,
    failure_stage: str | None = None,
    failure_reason: str | None = None,
) -> dict[str, Any]:
    """The run report with fixed key order: input, stages, result."""
    report: dict[str, Any] = {
        "input": {
            "n": inp.graph.n,
            "m": inp.graph.m,
            "k": inp.k,
            "ell": inp.ell,
            "dValue": _trace_d_value(trace, inp),
            "mode": inp.mode,
        },
        "stages": list(trace),
    }
    if result is not None:
        report["result"] = {
            "h": result.h,
            "lengths": list(result.lengths),
            "witnesses": [list(w.vertices) for w in result.witnesses],
        }
    else:
        report["result"] = {
            "failure": {"stage": failure_stage, "reason": failure_reason}
        }
    return report


def run_to_report(inp: TheoremInput) -> tuple[dict[str, Any], int]:
    """Execute a run and package it as (report, exit_code): 0 success,
    4 stage failure, 5 precondition violation."""
    try:
        res = consecutive_even_cycles(inp)
    except PreconditionViolation as exc:
        trace = getattr(exc, "trace", ())
        report = build_report(
            inp, trace, failure_stage="validate", failure_reason=str(exc)
        )
        return report, 5
    except StageFailure as exc:
        trace = getattr(exc, "trace", ())
        report = build_report(
            inp, trace, failure_stage=exc.stage, failure_reason=exc.reason
        )
        return report, 4
    return build_report(inp, res.trace, result=res), 0
