"""Exact search for a second Hamiltonian cycle whose difference with C0 is one alternating cycle.

Edges carry four colours.  C0 edges are black (kept in C1) or red (dropped);
chords are blue (added to C1) or yellow (left out).  Red and blue edges form
the alternating path D that starts at the anchor with a red edge.  The search
grows D one red/blue pair at a time, branching only when both C0 edges at the
end of D are free.  It defers some of those choices via ambivalent quadruples:
4-cycles whose two colourings leave everything else identical.

Propagation uses one rule per vertex.  Every vertex keeps exactly two of its
three edges in C1.  So one dropped edge forces the other two in, and two kept
edges force the third out.  The anchor's chord is the exception.  It is only
coloured when D comes back to the anchor, which closes D.
"""
from __future__ import annotations

import math
import time
from collections import deque
from dataclasses import asdict, dataclass, field

from .graph import Color, Cycle, Edge, SmithInstance, canonical_cycle, is_hamiltonian_cycle, \
    symmetric_difference_components
from .reductions import (Reduced, find_triangles, find_x_certificate, lift_cycle, make_triangle_free,
                         second_cycle_from_x_certificate)

RED, BLACK, BLUE, YELLOW = Color.RED, Color.BLACK, Color.BLUE, Color.YELLOW
_OUT = (False, True, False, False, True)  # indexed by colour: red/yellow leave C1


class Contradiction(Exception):
    pass


class InternalExhaustion(RuntimeError):
    """The search finished without a cycle; impossible on valid input."""


class SolverTimeout(RuntimeError):
    pass


@dataclass
class SolverMetrics:
    n: int = 0
    leaves: int = 0
    max_depth: int = 0
    forced_edges_total: int = 0
    quads_created: int = 0
    contradictions: int = 0
    finalize_attempts: int = 0
    finalize_divergences: int = 0
    branch_nodes: int = 0
    anchors_tried: int = 0
    time_ms: float = 0.0
    method: str = ""

    @property
    def exponent_estimate(self) -> float:
        return math.log2(max(self.leaves, 1)) / max(self.n, 1)

    def merge(self, other: "SolverMetrics") -> None:
        for name in ("leaves", "forced_edges_total", "quads_created", "contradictions",
                     "finalize_attempts", "finalize_divergences", "branch_nodes", "anchors_tried"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.max_depth = max(self.max_depth, other.max_depth)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exponent_estimate"] = self.exponent_estimate
        return d


@dataclass(frozen=True)
class ForcingPath:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    # "c0" / "chord": ends at a vertex with three free edges, by that kind of edge;
    # "cycle": returned to the start; "blocked": ran into a vertex with two coloured edges
    kind: str

    @property
    def terminal(self) -> int:
        return self.vertices[-1]


@dataclass(frozen=True)
class Action:
    colorings: tuple[tuple[int, Color], ...]
    quad: tuple[int, ...] | None = None
    label: str = "branch"


@dataclass
class SolveResult:
    cycle: Cycle
    d: list[Edge]
    metrics: SolverMetrics


class SearchState:
    """Colour assignment with counters, an undo trail and the D endpoint."""

    def __init__(self, inst: SmithInstance, root: int = 1):
        n = inst.n
        if n < 6:
            raise ValueError("search needs n >= 6")
        self.inst = inst
        self.n = n
        self.root = root
        partner = inst.partner
        self.partner = partner
        m = 2 * n + 1
        self.ends: list[tuple[int, int]] = [(0, 0)] * m
        self.is_chord = [False] * m
        for i in range(1, n + 1):
            self.ends[i] = (i, i % n + 1)
            if i < partner[i]:
                self.ends[n + i] = (i, partner[i])
                self.is_chord[n + i] = True
        self.inc = [()] + [((v - 2) % n + 1, v, n + min(v, partner[v])) for v in range(1, n + 1)]
        self.color = [0] * m
        self.n_col = [0] * (n + 1)
        self.n_out = [0] * (n + 1)
        self.n_in = [0] * (n + 1)
        self.trail: list[int] = []
        self.end_log: list[tuple[int, bool]] = []
        self.quads: list[tuple[int, ...]] = []
        self.end = 0
        self.closed = False
        self.queue: deque[int] = deque()

    # ------------------------------------------------------------ edges
    def c0_edge(self, u: int, v: int) -> int:
        return u if v == u % self.n + 1 else v

    def chord_of(self, v: int) -> int:
        return self.n + min(v, self.partner[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.ends[e]
        return b if a == v else a

    def edge_pair(self, e: int) -> Edge:
        a, b = self.ends[e]
        return (a, b) if a < b else (b, a)

    # ------------------------------------------------------------ trail
    def mark(self) -> tuple[int, int, int]:
        return len(self.trail), len(self.end_log), len(self.quads)

    def undo(self, mark: tuple[int, int, int]) -> None:
        t, el, q = mark
        color, n_col, n_out, n_in, ends = self.color, self.n_col, self.n_out, self.n_in, self.ends
        while len(self.trail) > t:
            e = self.trail.pop()
            out = _OUT[color[e]]
            color[e] = 0
            for v in ends[e]:
                n_col[v] -= 1
                if out:
                    n_out[v] -= 1
                else:
                    n_in[v] -= 1
        while len(self.end_log) > el:
            self.end, self.closed = self.end_log.pop()
        del self.quads[q:]
        self.queue.clear()

    def copy(self) -> "SearchState":
        other = SearchState.__new__(SearchState)
        other.__dict__.update(self.__dict__)
        for name in ("color", "n_col", "n_out", "n_in", "trail", "end_log", "quads"):
            setattr(other, name, list(getattr(self, name)))
        other.queue = deque(self.queue)
        return other

    def snapshot(self) -> tuple:
        return tuple(self.color), self.end, self.closed

    # ------------------------------------------------------------ colouring
    def assign(self, e: int, c: Color) -> None:
        cur = self.color[e]
        if cur:
            if cur != c:
                raise Contradiction(f"edge {self.edge_pair(e)} is {Color(cur).name} and {Color(c).name}")
            return
        if self.is_chord[e] != (c in (BLUE, YELLOW)):
            raise ValueError(f"colour {Color(c).name} does not fit edge {self.edge_pair(e)}")
        self.color[e] = c
        self.trail.append(e)
        out = _OUT[c]
        for v in self.ends[e]:
            self.n_col[v] += 1
            if out:
                self.n_out[v] += 1
            else:
                self.n_in[v] += 1
            self.queue.append(v)

    def _set_end(self, w: int) -> None:
        self.end_log.append((self.end, self.closed))
        if w == self.root:
            self.closed = True
        self.end = w

    def seed(self, which: str) -> None:
        """Initial colouring: which='A' drops root-(root+1), which='B' drops root-(root-1)."""
        n, r = self.n, self.root
        nxt, prv = r % n + 1, (r - 2) % n + 1
        first, other_side = (nxt, prv) if which == "A" else (prv, nxt)
        far = first % n + 1 if which == "A" else (first - 2) % n + 1
        self.assign(self.c0_edge(r, first), RED)
        self.assign(self.chord_of(first), BLUE)
        self.assign(self.c0_edge(first, far), BLACK)
        self.assign(self.c0_edge(r, other_side), BLACK)
        self._set_end(self.partner[first])

    def propagate(self, order: str = "fifo") -> int:
        """Apply the vertex rules to a fixpoint; returns the number of edges coloured."""
        start = len(self.trail)
        queue = self.queue
        pop = queue.popleft if order == "fifo" else queue.pop
        color, n_col, n_out, n_in, inc = self.color, self.n_col, self.n_out, self.n_in, self.inc
        is_chord, root = self.is_chord, self.root
        while queue:
            v = pop()
            if n_out[v] >= 2:
                queue.clear()
                raise Contradiction(f"vertex {v} drops two edges")
            if n_in[v] >= 3:
                queue.clear()
                raise Contradiction(f"vertex {v} keeps three edges")
            if n_col[v] == 3:
                continue
            if n_out[v] == 1:
                for e in inc[v]:
                    if color[e]:
                        continue
                    if is_chord[e]:
                        if v == root:
                            continue
                        self.assign(e, BLUE)
                        self._set_end(self.other(e, v))
                    else:
                        self.assign(e, BLACK)
            elif n_in[v] == 2 and n_col[v] == 2:
                for e in inc[v]:
                    if not color[e]:
                        self.assign(e, YELLOW if is_chord[e] else RED)
                        break
        return len(self.trail) - start

    # ------------------------------------------------------------ branching
    def forcing_path(self, y: int, first: int) -> ForcingPath:
        verts = [y]
        edges = [first]
        u = self.other(first, y)
        came = first
        limit = 3 * self.n
        while True:
            if u == y:
                verts.append(y)
                return ForcingPath(tuple(verts), tuple(edges), "cycle")
            verts.append(u)
            c = self.n_col[u]
            if c == 0:
                kind = "chord" if self.is_chord[came] else "c0"
                return ForcingPath(tuple(verts), tuple(edges), kind)
            if c >= 2:
                return ForcingPath(tuple(verts), tuple(edges), "blocked")
            nxt = [e for e in self.inc[u] if e != came and not self.color[e]]
            if len(nxt) != 1 or len(edges) > limit:
                return ForcingPath(tuple(verts), tuple(edges), "blocked")
            came = nxt[0]
            edges.append(came)
            u = self.other(came, u)

    def actions(self) -> tuple[list[Action], tuple[ForcingPath, ForcingPath] | None]:
        """Children of the current fixpoint (D open at self.end)."""
        n, y = self.n, self.end
        e_next = self.c0_edge(y, y % n + 1)
        e_prev = self.c0_edge((y - 2) % n + 1, y)
        free_next, free_prev = not self.color[e_next], not self.color[e_prev]
        if not (free_next and free_prev):
            # only reachable before propagation has settled; let the rules act
            if free_next:
                return [Action(((e_next, RED),), None, "force")], None
            if free_prev:
                return [Action(((e_prev, RED),), None, "force")], None
            return [], None
        p_plus = self.forcing_path(y, e_next)
        p_minus = self.forcing_path(y, e_prev)
        blue_branch = [Action(((e_next, RED), (e_prev, BLACK)), None, "I1"),
                       Action(((e_prev, RED), (e_next, BLACK)), None, "I2")]
        kinds = {p_plus.kind, p_minus.kind}
        if kinds & {"cycle", "blocked"}:
            return blue_branch, (p_plus, p_minus)
        lp, lm = len(p_plus.edges), len(p_minus.edges)
        tp, tm = p_plus.terminal, p_minus.terminal
        if {lp, lm} == {1, 3} and tp == tm:
            quad = p_plus.edges + p_minus.edges
            return [Action(((e_next, RED), (e_prev, BLACK)), quad, "C4")], (p_plus, p_minus)
        if {lp, lm} == {1, 2} and tp != tm:
            link = self._edge_between(tp, tm)
            if link is not None and not self.is_chord[link]:
                quad = p_plus.edges + p_minus.edges + (link,)
                if lp == 1:
                    return [Action(((e_next, RED),), quad, "P4-I1"),
                            Action(((e_prev, RED), (link, BLACK)), None, "P4-I2")], (p_plus, p_minus)
                return [Action(((e_next, RED), (link, BLACK)), None, "P4-I1"),
                        Action(((e_prev, RED),), quad, "P4-I2")], (p_plus, p_minus)
        return blue_branch, (p_plus, p_minus)

    def _edge_between(self, u: int, v: int) -> int | None:
        for e in self.inc[u]:
            if self.other(e, u) == v:
                return e
        return None

    # ------------------------------------------------------------ finalisation
    def _in_c1(self, e: int) -> bool:
        c = self.color[e]
        if self.is_chord[e]:
            return c == BLUE
        return c != RED

    def finalize(self, mode: str = "tree") -> tuple[Cycle | None, bool]:
        """Turn a closed D into C1, flipping quadruples to merge components.

        Returns (cycle or None, divergence flag); the flag is set in mode
        "both" when the spanning-tree and greedy strategies disagree.
        """
        n = self.n
        in_c1 = [False] * len(self.color)
        for e in range(1, len(self.color)):
            if self.ends[e][0]:
                in_c1[e] = self._in_c1(e)
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in range(1, n + 1):
            if sum(in_c1[e] for e in self.inc[v]) != 2:
                return None, False
        for e in range(1, len(self.color)):
            if in_c1[e]:
                a, b = self.ends[e]
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        roots = {find(v) for v in range(1, n + 1)}
        flips: list[tuple[int, ...]] | None = []
        diverged = False
        if len(roots) > 1:
            links = []
            for q in self.quads:
                pair = [e for e in q if in_c1[e]]
                if len(pair) != 2:
                    return None, False
                links.append((q, find(self.ends[pair[0]][0]), find(self.ends[pair[1]][0])))
            tree = _spanning_tree_flips(roots, links) if mode in ("tree", "both") else None
            greedy = _greedy_flips(roots, links) if mode in ("greedy", "both") else None
            if mode == "both":
                diverged = (tree is None) != (greedy is None)
            flips = tree if mode in ("tree", "both") else greedy
            if flips is None:
                return None, diverged
        for q in flips:
            for e in q:
                in_c1[e] = not in_c1[e]
        nbr = [[] for _ in range(n + 1)]
        for e in range(1, len(self.color)):
            if in_c1[e]:
                a, b = self.ends[e]
                nbr[a].append(b)
                nbr[b].append(a)
        seq = [1]
        prev, cur = 1, nbr[1][0]
        while cur != 1 and len(seq) <= n:
            seq.append(cur)
            a, b = nbr[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(seq) != n:
            return None, diverged
        cyc = canonical_cycle(seq)
        if len(symmetric_difference_components(self.inst.c0, cyc)) != 1:
            return None, diverged
        return cyc, diverged

    def d_shape_problems(self) -> list[str]:
        """Red and blue edges must form an even alternating path from the root (debug check)."""
        adj: dict[int, list[int]] = {}
        total = 0
        for e in self.trail:
            if self.color[e] in (RED, BLUE):
                total += 1
                for v in self.ends[e]:
                    adj.setdefault(v, []).append(e)
        out = []
        cur, seen, t = self.root, set(), 0
        while True:
            nxt = [e for e in adj.get(cur, []) if e not in seen]
            if not nxt:
                break
            e = nxt[0]
            want = RED if t % 2 == 0 else BLUE
            if self.color[e] != want:
                out.append(f"edge {self.edge_pair(e)} breaks the red/blue alternation")
                break
            seen.add(e)
            t += 1
            cur = self.other(e, cur)
            if cur == self.root:
                break
        if t != total:
            out.append(f"D reaches {t} of {total} red/blue edges")
        if not self.closed and (t % 2 or cur != self.end):
            out.append("D does not end with a blue edge at the recorded end")
        return out


def _spanning_tree_flips(roots, links):
    """BFS spanning tree of the component graph H; None when H is disconnected."""
    adj: dict[int, list[tuple[int, tuple]]] = {r: [] for r in roots}
    for q, a, b in links:
        if a != b:
            adj[a].append((b, q))
            adj[b].append((a, q))
    start = next(iter(sorted(roots)))
    seen = {start}
    queue = deque([start])
    flips = []
    while queue:
        a = queue.popleft()
        for b, q in adj[a]:
            if b not in seen:
                seen.add(b)
                flips.append(q)
                queue.append(b)
    return flips if len(seen) == len(roots) else None


def _greedy_flips(roots, links):
    """Flip each quadruple in order when it joins two current components."""
    parent = {r: r for r in roots}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    flips, comps = [], len(roots)
    for q, a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            flips.append(q)
            comps -= 1
    return flips if comps == 1 else None


class ExactSolver:
    """Depth-first branch-and-force search rooted at one anchor vertex."""

    def __init__(self, inst: SmithInstance, root: int = 1, order: str = "fifo",
                 finalize_mode: str = "tree", deadline: float | None = None, debug: bool = False):
        if inst.n >= 8 and find_triangles(inst):
            raise ValueError("search expects a triangle-free instance")
        self.state = SearchState(inst, root)
        self.order = order
        self.finalize_mode = finalize_mode
        self.deadline = deadline
        self.debug = debug
        self.metrics = SolverMetrics(n=inst.n)

    def run_seed(self, which: str) -> Cycle | None:
        st = self.state
        mark = st.mark()
        try:
            st.seed(which)
            self.metrics.forced_edges_total += st.propagate(self.order)
        except Contradiction:
            self.metrics.contradictions += 1
            self.metrics.leaves += 1
            st.undo(mark)
            return None
        res = self._dfs(1)
        st.undo(mark)
        return res

    def _dfs(self, depth: int) -> Cycle | None:
        st, m = self.state, self.metrics
        if depth > m.max_depth:
            m.max_depth = depth
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise SolverTimeout("search deadline exceeded")
        if self.debug:
            problems = st.d_shape_problems()
            if problems:
                raise AssertionError("; ".join(problems))
        if st.closed:
            m.leaves += 1
            m.finalize_attempts += 1
            cyc, diverged = st.finalize(self.finalize_mode)
            m.finalize_divergences += diverged
            return cyc
        actions, _ = st.actions()
        if not actions:
            m.leaves += 1
            m.contradictions += 1
            return None
        if len(actions) > 1:
            m.branch_nodes += 1
        for act in actions:
            mark = st.mark()
            try:
                for e, c in act.colorings:
                    st.assign(e, c)
                if act.quad is not None:
                    st.quads.append(act.quad)
                    m.quads_created += 1
                m.forced_edges_total += st.propagate(self.order)
            except Contradiction:
                m.contradictions += 1
                m.leaves += 1
                st.undo(mark)
                continue
            res = self._dfs(depth + 1)
            st.undo(mark)
            if res is not None:
                return res
        return None


def _rotate(inst: SmithInstance, anchor: int) -> SmithInstance:
    n = inst.n
    f = lambda v: (v - anchor) % n + 1  # noqa: E731
    return SmithInstance.from_chords(n, [(f(a), f(b)) for a, b in inst.chords])


def _unrotate(cyc, anchor: int, n: int) -> Cycle:
    return canonical_cycle([(v + anchor - 2) % n + 1 for v in cyc])


def search(inst: SmithInstance, order: str = "fifo", finalize_mode: str = "tree",
           deadline: float | None = None, debug: bool = False, seeds=("A", "B"),
           all_anchors: bool = True) -> tuple[Cycle, SolverMetrics]:
    """Search anchored at vertex 1, then at 2, 3, ... if both seeds at 1 fail."""
    total = SolverMetrics(n=inst.n, method="search")
    anchors = range(1, inst.n + 1) if all_anchors else (1,)
    for anchor in anchors:
        work = inst if anchor == 1 else _rotate(inst, anchor)
        solver = ExactSolver(work, 1, order, finalize_mode, deadline, debug)
        total.anchors_tried += 1
        for which in seeds:
            cyc = solver.run_seed(which)
            if cyc is not None:
                total.merge(solver.metrics)
                return (cyc if anchor == 1 else _unrotate(cyc, anchor, inst.n)), total
        total.merge(solver.metrics)
    raise InternalExhaustion(f"no second Hamiltonian cycle found (n={inst.n}, leaves={total.leaves})")


def _oracle_pick(inst: SmithInstance) -> Cycle:
    from .oracle import second_cycles

    found = second_cycles(inst)
    if not found:
        raise InternalExhaustion("oracle found no second cycle with connected difference")
    return found[0]


def _seed_worker(args):
    inst, which, order, finalize_mode, timeout_s = args
    deadline = None if timeout_s is None else time.perf_counter() + timeout_s
    solver = ExactSolver(inst, 1, order, finalize_mode, deadline)
    cyc = solver.run_seed(which)
    return which, cyc, solver.metrics


def _parallel_search(inst, order, finalize_mode, timeout_s):
    """Explore the two seeds in separate processes; the first success wins."""
    import multiprocessing as mp

    total = SolverMetrics(n=inst.n, method="search-parallel", anchors_tried=1)
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    with ctx.Pool(2) as pool:
        for which, cyc, met in pool.imap_unordered(
                _seed_worker, [(inst, w, order, finalize_mode, timeout_s) for w in ("A", "B")]):
            total.merge(met)
            if cyc is not None:
                pool.terminate()
                return cyc, total
    # both seeds failed at anchor 1: fall back to the sequential anchor sweep
    cyc, rest = search(inst, order, finalize_mode,
                       None if timeout_s is None else time.perf_counter() + timeout_s)
    total.merge(rest)
    return cyc, total


def solve_second_cycle(inst: SmithInstance, *, use_x_certificate: bool = True,
                       reduce_triangles: bool = True, parallel: bool = False,
                       timeout_ms: float | None = None, order: str = "fifo",
                       finalize_mode: str = "tree", debug: bool = False) -> SolveResult:
    """Second Hamiltonian cycle C1 with C0 xor C1 a single cycle.

    Pipeline: X-certificate, triangle elimination, X-certificate on the reduced
    graph, then the search (or the oracle below 8 vertices); the cycle is lifted
    back and verified before it is returned.
    """
    t0 = time.perf_counter()
    deadline = None if timeout_ms is None else t0 + timeout_ms / 1000.0
    metrics = SolverMetrics(n=inst.n)
    cyc: Cycle | None = None
    if use_x_certificate:
        cert = find_x_certificate(inst)
        if cert is not None:
            cyc = second_cycle_from_x_certificate(inst, cert)
            metrics.method, metrics.leaves = "x_certificate", 1
    if cyc is None:
        work, trace = inst, None
        if reduce_triangles:
            red = make_triangle_free(inst)
            if isinstance(red, Reduced):
                work, trace = red.instance, red.trace
            else:
                cyc = red.cycle
                metrics.method, metrics.leaves = "triangle_reduction", 1
        if cyc is None:
            inner = None
            if use_x_certificate and trace is not None and trace.records:
                cert = find_x_certificate(work)
                if cert is not None:
                    inner = second_cycle_from_x_certificate(work, cert)
                    metrics.method, metrics.leaves = "x_certificate_reduced", 1
            if inner is None and work.n < 8:
                inner = _oracle_pick(work)
                metrics.method, metrics.leaves = "oracle", 1
            if inner is None:
                if parallel:
                    timeout_s = None if deadline is None else max(deadline - time.perf_counter(), 0.0)
                    inner, sm = _parallel_search(work, order, finalize_mode, timeout_s)
                else:
                    inner, sm = search(work, order, finalize_mode, deadline, debug)
                sm.n = inst.n
                metrics = sm
            cyc = lift_cycle(inner, trace) if trace is not None and trace.records else inner
    metrics.time_ms = (time.perf_counter() - t0) * 1000.0
    metrics.n = inst.n
    if not is_hamiltonian_cycle(inst, cyc) or cyc == inst.c0:
        raise InternalExhaustion(f"solver produced an invalid cycle {cyc}")
    comps = symmetric_difference_components(inst.c0, cyc)
    if len(comps) != 1:
        raise InternalExhaustion(f"solver produced a cycle with {len(comps)} difference components")
    return SolveResult(cyc, comps[0], metrics)
