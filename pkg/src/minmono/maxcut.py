"""Minimum monochromatic counts via Max-Cut on the solution graph.

For a 2-coloring chi, the cut of the induced partition of the solution graph
equals exactly twice the number of non-monochromatic solutions, so

    min_chi mu_chi = T_E(n) - MAXCUT(G_{E,n}) / 2.

The exact solver is a combinatorial branch-and-bound (no LP subproblems);
the heuristic is multi-start greedy 1-flip descent with deterministic
seeding.  Model export writes the linearized 0/1 program, the +-1 quadratic
program, and the semidefinite relaxation as text documents (export only,
nothing here solves an SDP).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numba
import numpy as np

from .equations import Coloring, LinearEquation, solution_arrays, total_solutions

__all__ = [
    "SolutionGraph",
    "CutResult",
    "CutStatus",
    "MinMonoResult",
    "build_solution_graph",
    "cut_value_of",
    "max_cut_exact",
    "max_cut_heuristic",
    "min_monochromatic",
    "export_model",
]

EXACT_GUARD = 40


class CutStatus(enum.Enum):
    OPTIMAL = "OPTIMAL"
    HEURISTIC = "HEURISTIC"


@dataclass(frozen=True)
class SolutionGraph:
    """Weighted graph on [1,n]: w_ij counts co-occurrences of {i,j} in solutions."""

    n: int
    weights: np.ndarray

    def __post_init__(self):
        w = self.weights
        assert w.shape == (self.n, self.n)
        assert (w.diagonal() == 0).all() and (w == w.T).all() and (w >= 0).all()

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum()) // 2


@dataclass(frozen=True)
class CutResult:
    partition: Coloring
    cut_value: int
    status: CutStatus
    upper_bound_on_cut: int


@dataclass(frozen=True)
class MinMonoResult:
    value: int
    coloring: Coloring
    cut: CutResult


def build_solution_graph(eq: LinearEquation, n: int) -> SolutionGraph:
    """Each solution adds 1 to w_ij for every pair among {x,y},{x,z},{y,z}
    whose two values differ; e.g. (1,1,2) contributes 2 to w_{1,2}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    xs, ys, zs = solution_arrays(eq, n)
    w = np.zeros((n, n), dtype=np.int64)
    for i, j in ((xs, ys), (xs, zs), (ys, zs)):
        mask = i != j
        a, b = i[mask] - 1, j[mask] - 1
        np.add.at(w, (a, b), 1)
        np.add.at(w, (b, a), 1)
    return SolutionGraph(n, w)


def _partition_from_sides(sides: np.ndarray) -> Coloring:
    return Coloring(2, sides.astype(np.int8))


def cut_value_of(g: SolutionGraph, partition: Coloring) -> int:
    """Independent recomputation of the cut for a 2-partition."""
    if partition.k != 2 or partition.n != g.n:
        raise ValueError("partition must be a 2-coloring of the graph's vertex set")
    s = partition.assignment
    mask = s[:, None] != s[None, :]
    return int(g.weights[mask].sum()) // 2


def max_cut_heuristic(
    g: SolutionGraph,
    seed: int = 0,
    restarts: int = 32,
    initial: Coloring | None = None,
) -> CutResult:
    """Multi-start greedy 1-flip descent; deterministic for fixed (seed, restarts).

    Every returned partition is a 1-flip local optimum.  If `initial` is
    given it is used as an extra starting point, so the result is never worse
    than the cut of `initial`.
    """
    w = g.weights.astype(np.float64)
    rng = np.random.default_rng(seed)
    starts = []
    if initial is not None:
        starts.append(np.where(initial.assignment == 0, 1.0, -1.0))
    for _ in range(max(restarts, 1)):
        starts.append(rng.choice((1.0, -1.0), size=g.n))
    best_sides = None
    best_cut = -1
    for s in starts:
        t = w @ s
        while True:
            delta = s * t  # cut increase from flipping each vertex
            v = int(np.argmax(delta))
            if delta[v] <= 0:
                break
            t -= 2.0 * s[v] * w[v]
            s[v] = -s[v]
        sides = (s < 0).astype(np.int8)
        if sides[0] == 1:
            sides = 1 - sides
        cut = int(g.weights[sides[:, None] != sides[None, :]].sum()) // 2
        if cut > best_cut:
            best_cut = cut
            best_sides = sides
    return CutResult(
        _partition_from_sides(best_sides),
        best_cut,
        CutStatus.HEURISTIC,
        g.total_weight,
    )


@numba.njit(cache=True)
def _bb_kernel(w, fixed_sides, n_fixed, incumbent_cut, node_budget, stop_at_target):
    """Iterative DFS branch-and-bound for max cut.

    The prefix vertices 0..n_fixed-1 start on the sides given in fixed_sides.
    Prunes with the combinatorial bound

        cut_so_far + sum_free max(gain_to_side0, gain_to_side1) + free_weight,

    branching on the free vertex with the largest incident weight to the
    assigned set, better side first.  With stop_at_target >= 0 the search
    stops as soon as a cut > incumbent_cut is found (decision mode).

    Returns (best_cut, best_sides, completed, open_bound, nodes).
    """
    n = w.shape[0]
    assigned = np.zeros(n, dtype=np.bool_)
    sides = np.zeros(n, dtype=np.int8)
    w0 = np.zeros(n, dtype=np.int64)
    w1 = np.zeros(n, dtype=np.int64)
    free_total = np.int64(0)
    for i in range(n):
        for j in range(i + 1, n):
            free_total += w[i, j]
    cut = np.int64(0)
    for t in range(n_fixed):
        s = fixed_sides[t]
        cut += w1[t] if s == 0 else w0[t]
        assigned[t] = True
        sides[t] = s
        for u in range(n):
            if not assigned[u]:
                free_total -= w[t, u]
            if s == 0:
                w0[u] += w[t, u]
            else:
                w1[u] += w[t, u]

    best_cut = incumbent_cut
    best_sides = sides.copy()
    found_best = False

    max_depth = n - n_fixed
    vert_at = np.empty(max_depth + 1, dtype=np.int64)
    first_at = np.empty(max_depth + 1, dtype=np.int8)
    phase_at = np.zeros(max_depth + 1, dtype=np.int8)
    cut_at = np.empty(max_depth + 1, dtype=np.int64)
    bound_at = np.zeros(max_depth + 1, dtype=np.int64)

    nodes = np.int64(0)
    exhausted = False
    open_bound = np.int64(0)
    level = 0

    while level >= 0:
        phase = phase_at[level]
        if phase == 0:
            nodes += 1
            if node_budget >= 0 and nodes > node_budget:
                exhausted = True
                break
            if n_fixed + level == n:
                if cut > best_cut:
                    best_cut = cut
                    best_sides = sides.copy()
                    found_best = True
                    if stop_at_target >= 0 and best_cut >= stop_at_target:
                        break
                level -= 1
                continue
            bound = cut + free_total
            for u in range(n):
                if not assigned[u]:
                    bound += max(w0[u], w1[u])
            if bound <= best_cut:
                level -= 1
                continue
            bound_at[level] = bound
            v = -1
            inc = np.int64(-1)
            for u in range(n):
                if not assigned[u] and w0[u] + w1[u] > inc:
                    inc = w0[u] + w1[u]
                    v = u
            first = np.int8(0) if w1[v] >= w0[v] else np.int8(1)
            vert_at[level] = v
            first_at[level] = first
            cut_at[level] = cut
            # assign v to `first`
            cut += w1[v] if first == 0 else w0[v]
            assigned[v] = True
            sides[v] = first
            for u in range(n):
                if not assigned[u]:
                    free_total -= w[v, u]
                if first == 0:
                    w0[u] += w[v, u]
                else:
                    w1[u] += w[v, u]
            phase_at[level] = 1
            level += 1
            phase_at[level] = 0
        elif phase == 1:
            v = vert_at[level]
            first = first_at[level]
            # undo first child, assign the other side
            if first == 0:
                for u in range(n):
                    w0[u] -= w[v, u]
            else:
                for u in range(n):
                    w1[u] -= w[v, u]
            assigned[v] = False
            for u in range(n):
                if not assigned[u]:
                    free_total += w[v, u]
            cut = cut_at[level]
            other = np.int8(1) - first
            cut += w1[v] if other == 0 else w0[v]
            assigned[v] = True
            sides[v] = other
            for u in range(n):
                if not assigned[u]:
                    free_total -= w[v, u]
                if other == 0:
                    w0[u] += w[v, u]
                else:
                    w1[u] += w[v, u]
            phase_at[level] = 2
            level += 1
            phase_at[level] = 0
        else:
            v = vert_at[level]
            other = np.int8(1) - first_at[level]
            if other == 0:
                for u in range(n):
                    w0[u] -= w[v, u]
            else:
                for u in range(n):
                    w1[u] -= w[v, u]
            assigned[v] = False
            for u in range(n):
                if not assigned[u]:
                    free_total += w[v, u]
            cut = cut_at[level]
            phase_at[level] = 0
            level -= 1

    if exhausted:
        for l in range(level + 1):
            if bound_at[l] > open_bound:
                open_bound = bound_at[l]
    completed = not exhausted
    return best_cut, best_sides, completed, open_bound, found_best


def max_cut_exact(g: SolutionGraph, node_budget: int | None = None) -> CutResult:
    """Certified maximum cut by branch-and-bound.

    Without a node budget the graph must have at most EXACT_GUARD vertices.
    If a budget is given and exhausted, the best cut found is returned with
    status HEURISTIC together with a valid upper bound on the true maximum.
    The returned optimal partition is the lexicographically least one (with
    vertex 1 on side 0).
    """
    if node_budget is None and g.n > EXACT_GUARD:
        raise ValueError(
            f"n={g.n} exceeds the exact-solver guard ({EXACT_GUARD}); "
            "pass a node_budget to override"
        )
    warm = max_cut_heuristic(g, seed=0, restarts=min(4 * g.n, 128))
    budget = -1 if node_budget is None else node_budget
    fixed = np.zeros(1, dtype=np.int8)
    cut, sides, complete, open_bound, improved = _bb_kernel(
        g.weights, fixed, 1, warm.cut_value, budget, -1
    )
    if not improved:
        sides = warm.partition.assignment.copy()
    if not complete:
        ub = max(cut, int(open_bound))
        return CutResult(_partition_from_sides(sides), cut, CutStatus.HEURISTIC, ub)
    sides = _lex_least_optimal(g, cut)
    return CutResult(_partition_from_sides(sides), int(cut), CutStatus.OPTIMAL, int(cut))


def _lex_least_optimal(g: SolutionGraph, opt: int) -> np.ndarray:
    """Lexicographically least 0/1 assignment achieving the optimal cut."""
    n = g.n
    prefix = np.zeros(n, dtype=np.int8)
    for v in range(1, n):
        prefix[v] = 0
        _, _, _, _, ok = _bb_kernel(g.weights, prefix, v + 1, opt - 1, -1, opt)
        if not ok:
            prefix[v] = 1
    return prefix


def min_monochromatic(
    eq: LinearEquation,
    n: int,
    mode: str = "exact",
    seed: int = 0,
    restarts: int = 64,
    node_budget: int | None = None,
    initial: Coloring | None = None,
) -> MinMonoResult:
    """Minimize mu over 2-colorings of [1,n]: value is T_E(n) - cut/2.

    mode "exact" certifies optimality (subject to the solver guard/budget);
    mode "heuristic" returns a 1-flip local optimum, never worse than the
    optional `initial` coloring.
    """
    t = total_solutions(eq, n)
    g = build_solution_graph(eq, n)
    if mode == "exact":
        cut = max_cut_exact(g, node_budget)
    elif mode == "heuristic":
        cut = max_cut_heuristic(g, seed=seed, restarts=restarts, initial=initial)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    assert cut.cut_value % 2 == 0  # cut = 2 * (non-monochromatic count)
    return MinMonoResult(t - cut.cut_value // 2, cut.partition, cut)


def export_model(g: SolutionGraph, format: str) -> str:
    """Render the graph's max-cut model as a text document.

    Formats: "linearized-ip" (CPLEX-LP style sections), "quadratic-ip"
    (the +-1 quadratic objective), "sdp-relaxation" (sparse triplets plus
    the diagonal constraints X_ii = 1).
    """
    if format == "linearized-ip":
        return _export_linearized(g)
    if format == "quadratic-ip":
        return _export_quadratic(g)
    if format == "sdp-relaxation":
        return _export_sdp(g)
    raise ValueError(f"unknown export format {format!r}")


def _edges(g: SolutionGraph):
    for i in range(g.n):
        for j in range(i + 1, g.n):
            w = int(g.weights[i, j])
            if w:
                yield i + 1, j + 1, w


def _export_linearized(g: SolutionGraph) -> str:
    edges = list(_edges(g))
    obj = " + ".join(f"{w} e_{i}_{j}" for i, j, w in edges) or "0 x_1"
    lines = [
        "\\ max-cut linearized 0/1 integer program",
        "Maximize",
        f" obj: {obj}",
        "Subject To",
    ]
    for i, j, _ in edges:
        lines.append(f" c_{i}_{j}_a: e_{i}_{j} <= x_{i} + x_{j}")
        lines.append(f" c_{i}_{j}_b: e_{i}_{j} + x_{i} + x_{j} <= 2")
    lines.append("Binary")
    for v in range(1, g.n + 1):
        lines.append(f" x_{v}")
    for i, j, _ in edges:
        lines.append(f" e_{i}_{j}")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _export_quadratic(g: SolutionGraph) -> str:
    lines = [
        "\\ max-cut quadratic model over s_i in {-1,+1}",
        "\\ maximize (1/2) * sum_{i<j} w_ij * (1 - s_i*s_j)",
        f"vertices {g.n}",
        f"total_weight {g.total_weight}",
    ]
    for i, j, w in _edges(g):
        lines.append(f"term s_{i} s_{j} {w}")
    return "\n".join(lines) + "\n"


def _export_sdp(g: SolutionGraph) -> str:
    lines = [
        "\\ semidefinite relaxation of max cut",
        "\\ maximize (1/2) * sum_{i<j} w_ij * (1 - X_ij), X psd",
        f"dim {g.n}",
    ]
    for i, j, w in _edges(g):
        lines.append(f"obj {i} {j} {w}")
    for v in range(1, g.n + 1):
        lines.append(f"con X_{v}_{v} = 1")
    return "\n".join(lines) + "\n"
