"""Colouring defect and regular defect via exact search over matching triples.

A 3-array is a multiset of three perfect matchings.  Its defect is the
number of edges covered by no member; df(g) minimizes this over all
3-arrays, rdf(g) over regular ones (no edge in all three members).

Search contract
---------------

Matchings are enumerated once in lexicographic order; triples (i, j, k)
with i <= j <= k are scanned in lexicographic index order, which equals
lexicographic order on the sorted triples of sorted edge lists.  The
reported witness is the first triple attaining the minimum, i.e. the
lexicographically least optimal 3-array.  Sound pruning (a pair bound on
the uncovered count, and early stop once a proven global lower bound is
attained: 0 for colourable graphs, 3 for snarks) never changes the
value or the witness.  Worker threads split the scan by first index and
merge candidates by (value, i, j, k), so results are independent of
thread count and timing.  When a triple budget is set the scan runs on
a single thread so the cutoff point is reproducible.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .colouring import enumerate_perfect_matchings, is_perfect_matching, three_edge_colour
from .graph_core import CubicGraph, GraphError, bridges, girth, is_bridgeless


class BudgetError(GraphError):
    """An exact search ran out of its configured budget."""


class _Sentinel:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


#: No admissible 3-array was inspected before the budget ran out.
UNKNOWN = _Sentinel("UNKNOWN")
#: Exhaustive search proved that no regular 3-array exists at all.
NONE_FOUND = _Sentinel("NONE_FOUND")


@dataclass(frozen=True)
class SearchBudget:
    """Caps for defect searches; None means unlimited."""

    max_matchings: int | None = None
    max_triples: int | None = None


@dataclass(frozen=True)
class ThreeArray:
    """A multiset of three perfect matchings, stored in canonical order."""

    matchings: tuple[frozenset[int], frozenset[int], frozenset[int]]

    @staticmethod
    def of(m1, m2, m3) -> "ThreeArray":
        members = sorted((frozenset(m1), frozenset(m2), frozenset(m3)),
                         key=lambda s: tuple(sorted(s)))
        return ThreeArray(tuple(members))

    def multiplicity(self, e: int) -> int:
        return sum(1 for mm in self.matchings if e in mm)

    @property
    def is_regular(self) -> bool:
        a, b, c = self.matchings
        return not (a & b & c)

    def sorted_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(mm)) for mm in self.matchings)


@dataclass(frozen=True)
class CoverageProfile:
    multiplicity: tuple[int, ...]
    counts: tuple[int, int, int, int]  # (n0, n1, n2, n3)

    @property
    def uncovered(self) -> frozenset[int]:
        return frozenset(e for e, k in enumerate(self.multiplicity) if k == 0)

    @property
    def doubly(self) -> frozenset[int]:
        return frozenset(e for e, k in enumerate(self.multiplicity) if k == 2)

    @property
    def triply(self) -> frozenset[int]:
        return frozenset(e for e, k in enumerate(self.multiplicity) if k == 3)


EVEN_ALTERNATING_CIRCUIT = "EVEN_ALTERNATING_CIRCUIT"
CUBIC_SUBDIVISION = "CUBIC_SUBDIVISION"


@dataclass(frozen=True)
class CoreComponent:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    kind: str


@dataclass(frozen=True)
class Core:
    edges: frozenset[int]
    uncovered: frozenset[int]
    doubly: frozenset[int]
    triply: frozenset[int]
    components: tuple[CoreComponent, ...]


@dataclass(frozen=True)
class DefectResult:
    value: object  # int, UNKNOWN, or NONE_FOUND
    witness: ThreeArray | None
    exhaustive: bool
    regular_required: bool

    @property
    def status(self) -> str:
        if isinstance(self.value, int):
            return "EXACT" if self.exhaustive else "UPPER_BOUND"
        return repr(self.value)


def coverage(g: CubicGraph, a: ThreeArray) -> CoverageProfile:
    """Per-edge multiplicities of a 3-array plus the counts n0..n3."""
    for idx, mm in enumerate(a.matchings):
        if not is_perfect_matching(g, mm):
            raise GraphError(f"array member {idx} is not a perfect matching of the graph")
    mult = [0] * g.edge_count
    for mm in a.matchings:
        for e in mm:
            mult[e] += 1
    counts = tuple(mult.count(k) for k in range(4))
    assert sum(counts) == g.edge_count
    assert counts[1] + 2 * counts[2] + 3 * counts[3] == 3 * g.vertex_count // 2
    return CoverageProfile(tuple(mult), counts)


def core_of(g: CubicGraph, a: ThreeArray) -> Core:
    """Subgraph of not-simply-covered edges, with component classification.

    The local structure is asserted: a core vertex meets either one
    doubly covered and one uncovered edge-end, or one triply covered and
    two uncovered edge-ends; circuit components alternate and have even
    length.  A violation is a bug, not an input condition.
    """
    prof = coverage(g, a)
    mult = prof.multiplicity
    core_edges = frozenset(e for e in range(g.edge_count) if mult[e] != 1)

    ends_at: dict[int, list[int]] = {}
    for e in core_edges:
        for slot in g.endpoints(e):
            ends_at.setdefault(slot, []).append(e)
    for v, inc in ends_at.items():
        kinds = sorted(mult[e] for e in inc)
        assert kinds in ([0, 2], [0, 0, 3]), \
            f"core vertex {v} has multiplicity pattern {kinds}"

    comps: list[CoreComponent] = []
    seen: set[int] = set()
    for start in sorted(core_edges):
        if start in seen:
            continue
        stack = [start]
        comp_edges = {start}
        seen.add(start)
        while stack:
            e = stack.pop()
            for slot in g.endpoints(e):
                for f in ends_at[slot]:
                    if f not in comp_edges:
                        comp_edges.add(f)
                        seen.add(f)
                        stack.append(f)
        verts = sorted({s for e in comp_edges for s in g.endpoints(e)})
        degree = {v: 0 for v in verts}
        for e in comp_edges:
            for slot in g.endpoints(e):
                degree[slot] += 1
        if all(d == 2 for d in degree.values()):
            kind = EVEN_ALTERNATING_CIRCUIT
            zeros = sum(1 for e in comp_edges if mult[e] == 0)
            twos = sum(1 for e in comp_edges if mult[e] == 2)
            assert zeros == twos and len(comp_edges) % 2 == 0, \
                "circuit component fails to alternate"
        else:
            kind = CUBIC_SUBDIVISION
        comps.append(CoreComponent(tuple(verts), tuple(sorted(comp_edges)), kind))

    return Core(core_edges, prof.uncovered, prof.doubly, prof.triply, tuple(comps))


def is_induced_circuit(g: CubicGraph, comp: CoreComponent) -> bool:
    """True when the component's vertex set induces exactly its edges in g."""
    if comp.kind != EVEN_ALTERNATING_CIRCUIT:
        return False
    inside = set(comp.vertices)
    induced = [e for e, (x, y) in enumerate(g.edges) if x in inside and y in inside]
    return sorted(induced) == list(comp.edges)


# ---------------------------------------------------------------------------
# triple scan
# ---------------------------------------------------------------------------

def _scan_full(masks: list[int], m: int, half: int, regular: bool,
               lower: int, threads: int | None):
    """Exact scan; returns (value, (i,j,k)) or (None, None) if nothing admissible.

    Early-stops once `lower` is attained (the bound must be globally
    valid); the witness is still the lexicographically least optimum.
    """
    n = len(masks)
    state = {"best": m + 1, "earliest_hit": n}
    lock = threading.Lock()

    def task(i: int):
        mi = masks[i]
        local_val = m + 1
        local_wit = None
        for j in range(i, n):
            if state["earliest_hit"] < i:
                break
            mj = masks[j]
            u = mi | mj
            if m - u.bit_count() - half > state["best"]:
                continue
            mij = mi & mj
            for k in range(j, n):
                if regular and (mij & masks[k]):
                    continue
                val = m - (u | masks[k]).bit_count()
                if val < local_val:
                    local_val = val
                    local_wit = (i, j, k)
                    if val < state["best"]:
                        with lock:
                            if val < state["best"]:
                                state["best"] = val
                    if val <= lower:
                        with lock:
                            if i < state["earliest_hit"]:
                                state["earliest_hit"] = i
                        return local_val, local_wit
        return local_val, local_wit

    if threads is None or threads <= 1:
        results = []
        for i in range(n):
            results.append(task(i))
            if state["earliest_hit"] <= i:
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(task, range(n)))

    best = None
    for i, (val, wit) in enumerate(results):
        if wit is None:
            continue
        key = (val,) + wit
        if best is None or key < best:
            best = key
    if best is None:
        return None, None
    return best[0], best[1:]


def _scan_budget(masks: list[int], m: int, half: int, regular: bool,
                 lower: int, max_triples: int):
    """Budgeted sequential scan; returns (value, wit, completed)."""
    n = len(masks)
    best_val = m + 1
    best_wit = None
    left = max_triples
    for i in range(n):
        mi = masks[i]
        for j in range(i, n):
            mj = masks[j]
            u = mi | mj
            if m - u.bit_count() - half > best_val:
                continue
            mij = mi & mj
            for k in range(j, n):
                if left <= 0:
                    wit = None if best_wit is None else best_wit
                    return (best_val if wit else None), wit, False
                left -= 1
                if regular and (mij & masks[k]):
                    continue
                val = m - (u | masks[k]).bit_count()
                if val < best_val:
                    best_val = val
                    best_wit = (i, j, k)
                    if val <= lower:
                        return best_val, best_wit, True
    return (best_val if best_wit else None), best_wit, True


def _defect_impl(g: CubicGraph, regular: bool, budget: SearchBudget | None,
                 threads: int | None) -> DefectResult:
    if not is_bridgeless(g):
        bad = bridges(g)
        raise GraphError(
            f"defect is undefined for graphs with bridges (found {bad or 'disconnected'})")
    colourable = three_edge_colour(g) is not None
    lower = 0 if colourable else 3  # snark lower bound; bridgeless + uncolourable = snark

    cap = budget.max_matchings if budget else None
    if cap is not None and cap < 1:
        raise GraphError("max_matchings must be at least 1")
    matchings = enumerate_perfect_matchings(g, None if cap is None else cap + 1)
    complete = cap is None or len(matchings) <= cap
    if not complete:
        matchings = matchings[:cap]
    if not matchings:
        raise GraphError("graph has no perfect matching")

    masks = [sum(1 << e for e in mm) for mm in matchings]
    m, half = g.edge_count, g.vertex_count // 2
    mt = budget.max_triples if budget else None
    if mt is not None:
        val, wit, scanned_all = _scan_budget(masks, m, half, regular, lower, mt)
    else:
        val, wit = _scan_full(masks, m, half, regular, lower, threads)
        scanned_all = True

    # a witness attaining the proven lower bound is exact even if the
    # matching list was truncated
    exhaustive = (complete and scanned_all) or (wit is not None and val == lower)
    if wit is None:
        if regular and complete and scanned_all:
            return DefectResult(NONE_FOUND, None, True, True)
        return DefectResult(UNKNOWN, None, False, regular)
    witness = ThreeArray.of(matchings[wit[0]], matchings[wit[1]], matchings[wit[2]])
    return DefectResult(val, witness, exhaustive, regular)


def defect(g: CubicGraph, budget: SearchBudget | None = None,
           threads: int | None = None) -> DefectResult:
    """df(g): minimum uncovered count over all 3-arrays, with witness."""
    return _defect_impl(g, False, budget, threads)


def regular_defect(g: CubicGraph, budget: SearchBudget | None = None,
                   threads: int | None = None) -> DefectResult:
    """rdf(g): as defect but restricted to regular 3-arrays."""
    return _defect_impl(g, True, budget, threads)


def enumerate_optimal_arrays(g: CubicGraph, regular: bool, target: int | None = None,
                             threads: int | None = None) -> list[ThreeArray]:
    """Every 3-array (regular ones if requested) attaining the optimum.

    Runs the full scan with no early stop; `target` defaults to the
    exhaustively computed df/rdf.  Output in lexicographic order.
    """
    if target is None:
        res = regular_defect(g) if regular else defect(g)
        if not isinstance(res.value, int):
            raise GraphError(f"no optimum to enumerate: {res.value!r}")
        target = res.value
    matchings = enumerate_perfect_matchings(g)
    masks = [sum(1 << e for e in mm) for mm in matchings]
    m, half = g.edge_count, g.vertex_count // 2
    n = len(masks)

    def task(i: int):
        found = []
        mi = masks[i]
        for j in range(i, n):
            mj = masks[j]
            u = mi | mj
            if m - u.bit_count() - half > target:
                continue
            mij = mi & mj
            for k in range(j, n):
                if regular and (mij & masks[k]):
                    continue
                if m - (u | masks[k]).bit_count() == target:
                    found.append((i, j, k))
        return found

    if threads is None or threads <= 1:
        chunks = [task(i) for i in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(task, range(n)))
    return [ThreeArray.of(matchings[i], matchings[j], matchings[k])
            for chunk in chunks for (i, j, k) in chunk]


# ---------------------------------------------------------------------------
# structural checks built on defect results
# ---------------------------------------------------------------------------

def check_girth_bound(g: CubicGraph, r: DefectResult) -> bool:
    """Verify rdf >= girth/2 and the core circuits are even of length >= girth.

    Vacuously true for an empty core (colourable case).  A False return
    signals a hard bug somewhere: the bound is a theorem.
    """
    if not r.regular_required or r.witness is None or not isinstance(r.value, int):
        raise GraphError("check_girth_bound needs a regular-defect result with a witness")
    if r.value == 0:
        return True
    gi = girth(g)
    if 2 * r.value < gi:
        return False
    core = core_of(g, r.witness)
    for comp in core.components:
        if comp.kind != EVEN_ALTERNATING_CIRCUIT:
            raise GraphError("regular witness produced a non-circuit core component")
        if len(comp.edges) % 2 or len(comp.edges) < gi:
            return False
    return True


def verify_corollary_rdf3(g: CubicGraph) -> bool:
    """(df = 3) iff (rdf = 3), both computed exhaustively."""
    d = defect(g)
    r = regular_defect(g)
    if not (d.exhaustive and r.exhaustive):
        raise GraphError("corollary check requires exhaustive searches")
    return (d.value == 3) == (r.value == 3)
