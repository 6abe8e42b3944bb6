"""Detachment stage: split the amalgam one vertex at a time.

Each step peels one new vertex off the amalgam. A class (X, i) holding
lambda * C(q, i) copies (q = current amalgam weight) must donate exactly
lambda * C(q-1, i-1) of them to the new vertex, keeping lambda * C(q-1, i)
(a Pascal split), and the new vertex must end at degree r_j in every color.
The only freedom is how each class's donation distributes over colors:
an integral transportation problem with row supplies, column demands and
cell capacities. The fractional point x[c][j] = cap[c][j] * i_c / q always
satisfies it exactly, so an integral solution exists; it is found by a
deterministic max-flow and validated independently of the solver.
"""
from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import binom
from .errors import InfeasibleTransport, InternalInvariantViolation
from .model import Certificate, EdgeClass
from .amalgam import AmalgamState, ClassKey


@dataclass
class TransportationProblem:
    """One detachment step's donation constraints.

    ``rows[c]`` is a class key with amalgam multiplicity >= 1, ``supplies[c]``
    its forced donation count, ``demands[j-1]`` the new vertex's target
    degree r_j, and ``caps[c][j-1]`` the copies of that class currently
    colored j. Row supplies and column demands have equal totals.
    """

    rows: list[ClassKey]
    supplies: list[int]
    demands: list[int]
    caps: list[list[int]]


@dataclass
class DetachPlan:
    """Integral donation matrix: moves[c][j-1] copies of rows[c] take color j."""

    rows: list[ClassKey]
    moves: list[list[int]]


def build_transportation(state: AmalgamState) -> TransportationProblem:
    """Set up the donation problem for the next new vertex.

    Requires a fully colored state with amalgam degree r_j * q in every
    color. Row supplies are the Pascal-forced lambda * C(q-1, i-1); totals
    must balance at lambda * C(n-1, h-1) = sum_j r_j.
    """
    p = state.params
    q = state.weight
    if q < 1:
        raise InternalInvariantViolation("no amalgam weight left to detach")
    if state.level_done != p.h:
        raise InternalInvariantViolation("detachment before the coloring is complete")
    for j in range(p.k):
        if state.degrees.amalgam[j] != p.r[j] * q:
            raise InternalInvariantViolation(
                f"amalgam degree {state.degrees.amalgam[j]} in color {j + 1}, "
                f"expected {p.r[j] * q}")

    rows: list[ClassKey] = []
    supplies: list[int] = []
    caps: list[list[int]] = []
    for key in sorted(state.classes):
        cls = state.classes[key]
        if cls.amalgam < 1 or cls.total() == 0:
            continue
        rows.append(key)
        supplies.append(p.lam * binom(q - 1, cls.amalgam - 1))
        caps.append(list(cls.colors))

    total_supply = sum(supplies)
    total_demand = sum(p.r)
    if total_supply != total_demand or total_demand != p.lam * binom(p.n - 1, p.h - 1):
        raise InternalInvariantViolation(
            f"supply {total_supply} != demand {total_demand}")
    return TransportationProblem(rows=rows, supplies=supplies, demands=list(p.r), caps=caps)


class _Dinic:
    """Deterministic max-flow on an explicit arc list."""

    def __init__(self, num_nodes: int):
        self.adj: list[list[int]] = [[] for _ in range(num_nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        idx = len(self.to)
        self.adj[u].append(idx)
        self.to.append(v)
        self.cap.append(cap)
        self.adj[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0)
        return idx

    def max_flow(self, source: int, sink: int) -> int:
        flow = 0
        while True:
            level = [-1] * len(self.adj)
            level[source] = 0
            queue = [source]
            for u in queue:
                for idx in self.adj[u]:
                    v = self.to[idx]
                    if self.cap[idx] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[sink] < 0:
                return flow
            ptr = [0] * len(self.adj)

            def push(u: int, limit: int) -> int:
                if u == sink:
                    return limit
                while ptr[u] < len(self.adj[u]):
                    idx = self.adj[u][ptr[u]]
                    v = self.to[idx]
                    if self.cap[idx] > 0 and level[v] == level[u] + 1:
                        pushed = push(v, min(limit, self.cap[idx]))
                        if pushed > 0:
                            self.cap[idx] -= pushed
                            self.cap[idx ^ 1] += pushed
                            return pushed
                    ptr[u] += 1
                return 0

            while True:
                pushed = push(source, 1 << 62)
                if pushed == 0:
                    break
                flow += pushed


def solve_transportation(tp: TransportationProblem) -> DetachPlan:
    """Find an integral matrix with exact row sums, column sums, and caps.

    Built as a four-layer flow network source -> rows -> colors -> sink with
    a fixed arc order, so the plan is deterministic for a given problem.
    Raises InfeasibleTransport when the max flow falls short, and validates
    the extracted plan against the constraints afterwards.
    """
    num_rows = len(tp.rows)
    k = len(tp.demands)
    source = 0
    sink = 1 + num_rows + k
    net = _Dinic(sink + 1)

    for c in range(num_rows):
        net.add_arc(source, 1 + c, tp.supplies[c])
    cell_arcs: list[list[tuple[int, int]]] = []
    for c in range(num_rows):
        arcs = []
        for j in range(k):
            if tp.caps[c][j] > 0:
                arcs.append((j, net.add_arc(1 + c, 1 + num_rows + j, tp.caps[c][j])))
        cell_arcs.append(arcs)
    for j in range(k):
        net.add_arc(1 + num_rows + j, sink, tp.demands[j])

    want = sum(tp.supplies)
    got = net.max_flow(source, sink)
    if got != want:
        raise InfeasibleTransport(f"max flow {got} < required {want}", tp)

    moves = [[0] * k for _ in range(num_rows)]
    for c in range(num_rows):
        for j, idx in cell_arcs[c]:
            moves[c][j] = tp.caps[c][j] - net.cap[idx]

    for c in range(num_rows):
        if sum(moves[c]) != tp.supplies[c]:
            raise InternalInvariantViolation(f"row {tp.rows[c]} sum != supply")
        if any(moves[c][j] < 0 or moves[c][j] > tp.caps[c][j] for j in range(k)):
            raise InternalInvariantViolation(f"row {tp.rows[c]} violates a cap")
    for j in range(k):
        if sum(moves[c][j] for c in range(num_rows)) != tp.demands[j]:
            raise InternalInvariantViolation(f"column {j + 1} sum != demand")
    return DetachPlan(rows=tp.rows, moves=moves)


def _check_fractional_witness(state: AmalgamState, tp: TransportationProblem) -> None:
    """Assert the exact feasibility certificate of the donation problem.

    The point x[c][j] = caps[c][j] * i_c / q meets every constraint with
    equality; checked here in exact integer arithmetic with denominators
    cleared by q.
    """
    q = state.weight
    k = len(tp.demands)
    col_weighted = [0] * k
    for c, key in enumerate(tp.rows):
        level = key[1]
        if level > q:
            raise InternalInvariantViolation(f"class {key} outlived weight {q}")
        row_total = sum(tp.caps[c])
        if row_total * level != tp.supplies[c] * q:
            raise InternalInvariantViolation(f"witness row sum fails for {key}")
        for j in range(k):
            col_weighted[j] += level * tp.caps[c][j]
    for j in range(k):
        if col_weighted[j] != tp.demands[j] * q:
            raise InternalInvariantViolation(f"witness column sum fails for color {j + 1}")


def detach_step(state: AmalgamState, hook=None) -> AmalgamState:
    """Split one vertex off the amalgam, preserving all invariants.

    The new vertex takes id m + detached + 1. For every class (X, i) and
    color j, moves[c][j] copies become (X + {new}, i - 1) copies of the same
    color. Afterwards the new vertex has degree exactly r_j per color, the
    amalgam drops to r_j * (q - 1), and every class (S, i) holds
    lambda * C(q - 1, i) copies.
    """
    p = state.params
    q = state.weight
    tp = build_transportation(state)
    _check_fractional_witness(state, tp)
    plan = solve_transportation(tp)
    if hook is not None:
        hook(state, tp, plan)

    new_vertex = state.degrees.add_vertex()
    new_row = state.degrees.ordinary[new_vertex]
    for c, key in enumerate(plan.rows):
        cls = state.classes[key]
        target: EdgeClass | None = None
        for j, moved in enumerate(plan.moves[c]):
            if moved == 0:
                continue
            if target is None:
                support = tuple(sorted(key[0] + (new_vertex,)))
                target = state.get_class(support, key[1] - 1)
            cls.colors[j] -= moved
            target.colors[j] += moved
            new_row[j] += moved
            state.degrees.amalgam[j] -= moved
        if cls.total() == 0:
            del state.classes[key]

    state.detached += 1
    q -= 1
    for j in range(p.k):
        if new_row[j] != p.r[j]:
            raise InternalInvariantViolation(
                f"vertex {new_vertex} has degree {new_row[j]} in color {j + 1}")
        if state.degrees.amalgam[j] != p.r[j] * q:
            raise InternalInvariantViolation(
                f"amalgam degree {state.degrees.amalgam[j]} after step, expected {p.r[j] * q}")
    for (support, level), cls in state.classes.items():
        expected = p.lam * binom(q, level)
        if cls.total() != expected:
            raise InternalInvariantViolation(
                f"class {(support, level)} holds {cls.total()} copies, expected {expected}")
    return state


def detach_all(state: AmalgamState, trace=None, hook=None) -> Certificate:
    """Run every detachment step and assemble the extension certificate."""
    p = state.params
    while state.weight > 0:
        detach_step(state, hook=hook)
        if trace is not None:
            trace({
                "stage": "detach",
                "s": state.detached,
                "q": state.weight,
                "flow_value": p.lam * binom(p.n - 1, p.h - 1),
            })

    coloring = []
    for (support, level), cls in sorted(state.classes.items()):
        if level != 0:
            raise InternalInvariantViolation(f"class {(support, level)} kept amalgam slots")
        coloring.append(EdgeClass(support=support, amalgam=0, colors=list(cls.colors)))
    return Certificate(params=p, coloring=coloring, report=None)
