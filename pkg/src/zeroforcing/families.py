"""Gadget-injection graph families with large zero forcing number.

The families replace degree-<=1 vertices of a base graph (complete binary
trees, hairy cycles, random trees) by a 5-vertex gadget: K4 with one edge
subdivided, attached through its degree-2 subdivision vertex.  The resulting
connected graphs have maximum degree 3 yet need forcing sets of size linear
in the order, with ratio approaching 4/9 for the tree family.

Vertex layout of every built family is deterministic: surviving base vertices
first in their original (DFS, for trees) order, then one 5-vertex block per
replaced vertex in ``a, b, c, e, d`` order, so witnesses and serializations
are stable across runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from itertools import combinations
from typing import Callable, Iterable, Optional

from .errors import BudgetExceededError, DegreeOverflowError, DomainError, VertexRangeError
from .forcing import closure_within, is_zero_forcing_set
from .graph import Graph, from_edge_list, is_connected
from .solver import SolverResult, verify_no_smaller

GADGET_NAMES = ("a", "b", "c", "e", "d")


@dataclass(frozen=True)
class GadgetAttachment:
    """A gadget graph plus the vertex through which it attaches."""

    gadget: Graph
    attach: int


@dataclass(frozen=True)
class FamilyGraph:
    """A graph plus named special vertices and named vertex regions."""

    graph: Graph
    landmarks: dict[str, int]
    regions: dict[str, frozenset[int]]

    def landmark_vertices(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.landmarks[name] for name in names)


def subdivided_k4() -> GadgetAttachment:
    """K4 with one edge subdivided: 5 vertices, 7 edges.

    The subdivision vertex ``d`` has degree 2 and is the attachment point;
    the other four vertices have degree 3.  Removing ``d`` leaves K4 minus
    one edge on ``{a, b, c, e}``.
    """
    edges = [(0, 2), (2, 1), (0, 3), (3, 1), (2, 3), (0, 4), (4, 1)]
    labels = dict(enumerate(GADGET_NAMES))
    return GadgetAttachment(from_edge_list(5, edges, labels), 4)


def _label_rank(name: str) -> tuple[int, int, str]:
    if name[0] in "ry" and len(name) >= 2 and name[1].isdigit():
        return (0, len(name), name)
    if name.startswith("g") and "_" in name:
        return (2, len(name), name)
    return (1, len(name), name)


def _labels_from_landmarks(landmarks: dict[str, int]) -> Optional[dict[int, str]]:
    if not landmarks:
        return None
    labels: dict[int, str] = {}
    for name, v in sorted(landmarks.items(), key=lambda kv: _label_rank(kv[0])):
        labels.setdefault(v, name)
    return labels


# ---------------------------------------------------------------------------
# Base graphs
# ---------------------------------------------------------------------------


def binary_tree(depth: int) -> FamilyGraph:
    """Complete binary tree on 2^depth - 1 vertices, preorder-indexed.

    Landmark ``root`` is vertex 0; region ``leaves`` holds the 2^(depth-1)
    leaves (for depth 1 the root itself).
    """
    if depth < 1:
        raise DomainError("tree depth must be >= 1")
    sizes = [2**k - 1 for k in range(depth + 1)]
    edges: list[tuple[int, int]] = []
    leaves: list[int] = []
    stack = [(0, depth)]
    while stack:
        idx, k = stack.pop()
        if k == 1:
            leaves.append(idx)
            continue
        left, right = idx + 1, idx + 1 + sizes[k - 1]
        edges.append((idx, left))
        edges.append((idx, right))
        stack.append((right, k - 1))
        stack.append((left, k - 1))
    leaves.sort()
    graph = from_edge_list(sizes[depth], edges, {0: "root"})
    return FamilyGraph(graph, {"root": 0}, {"leaves": frozenset(leaves)})


def hairy_cycle(k: int) -> FamilyGraph:
    """Cycle on k vertices with one pendant leaf attached to each."""
    if k < 3:
        raise DomainError("cycle length must be >= 3")
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k + i) for i in range(k)]
    regions = {
        "cycle": frozenset(range(k)),
        "leaves": frozenset(range(k, 2 * k)),
    }
    return FamilyGraph(from_edge_list(2 * k, edges), {}, regions)


def random_tree_max3(size: int, rng: Random) -> FamilyGraph:
    """Random tree with maximum degree 3 (uniform attachment among open slots)."""
    if size < 1:
        raise DomainError("tree size must be >= 1")
    edges: list[tuple[int, int]] = []
    degree = [0] * size
    for v in range(1, size):
        open_slots = [u for u in range(v) if degree[u] < 3]
        parent = rng.choice(open_slots)
        edges.append((parent, v))
        degree[parent] += 1
        degree[v] += 1
    graph = from_edge_list(size, edges)
    leaves = frozenset(v for v in range(size) if degree[v] <= 1)
    return FamilyGraph(graph, {}, {"leaves": leaves})


def random_cubic(size: int, rng: Random, max_attempts: int = 2000) -> Graph:
    """Random connected 3-regular graph by repeated stub pairing."""
    if size < 4 or size % 2:
        raise DomainError("a cubic graph needs an even order >= 4")
    for _ in range(max_attempts):
        stubs = [v for v in range(size) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if any(u == v for u, v in pairs):
            continue
        if len({(min(u, v), max(u, v)) for u, v in pairs}) != len(pairs):
            continue
        g = from_edge_list(size, pairs)
        if is_connected(g):
            return g
    raise BudgetExceededError(f"no simple connected cubic graph found in {max_attempts} pairings")


# ---------------------------------------------------------------------------
# Gadget injection
# ---------------------------------------------------------------------------


def inject_gadget(
    base: FamilyGraph, targets: Iterable[int], gadget: GadgetAttachment
) -> FamilyGraph:
    """Replace each target vertex by a fresh gadget copy.

    The attach vertex inherits the target's edges, so a target of degree t
    ends with degree t + deg(attach); the result must stay subcubic, hence
    targets of degree > 3 - deg(attach) are rejected.  Landmarks pointing at
    a target move to its attach vertex; regions absorb whole gadget blocks.
    """
    g = base.graph
    tset = frozenset(targets)
    for v in tset:
        if not 0 <= v < g.n:
            raise VertexRangeError(f"target {v} outside [0, {g.n})")
    attach_deg = gadget.gadget.degree(gadget.attach)
    for v in sorted(tset):
        if g.degree(v) + attach_deg > 3:
            raise DegreeOverflowError(
                f"target {v} has degree {g.degree(v)}; replacement would reach "
                f"{g.degree(v) + attach_deg} > 3"
            )
    survivors = [v for v in range(g.n) if v not in tset]
    new_of = {v: i for i, v in enumerate(survivors)}
    target_list = sorted(tset)
    gn = gadget.gadget.n
    base_off = len(survivors)
    block_of = {t: base_off + gn * k for k, t in enumerate(target_list)}

    def mapped(v: int) -> int:
        return new_of[v] if v in new_of else block_of[v] + gadget.attach

    edges = [(mapped(u), mapped(v)) for u, v in g.edges()]
    for t in target_list:
        off = block_of[t]
        edges.extend((off + u, off + v) for u, v in gadget.gadget.edges())

    landmarks = {name: mapped(v) for name, v in base.landmarks.items()}
    glabels = gadget.gadget.labels or {}
    for k, t in enumerate(target_list):
        off = block_of[t]
        for gv in range(gn):
            landmarks[f"g{k}_{glabels.get(gv, gv)}"] = off + gv

    regions: dict[str, frozenset[int]] = {}
    for name, reg in base.regions.items():
        out: set[int] = set()
        for v in reg:
            if v in new_of:
                out.add(new_of[v])
            else:
                out.update(range(block_of[v], block_of[v] + gn))
        regions[name] = frozenset(out)
    for k, t in enumerate(target_list):
        regions[f"gadget{k}"] = frozenset(range(block_of[t], block_of[t] + gn))

    graph = from_edge_list(base_off + gn * len(target_list), edges, _labels_from_landmarks(landmarks))
    return FamilyGraph(graph, landmarks, regions)


# ---------------------------------------------------------------------------
# The binary-tree family
# ---------------------------------------------------------------------------


def core_seed_bound(level: int) -> int:
    """Value of the recurrence s(1) = 2, s(m+1) = 4 s(m) + 2.

    Every zero forcing set of a graph containing the level-m core (with no
    outside edges except at the root) places at least this many vertices in
    the core; the family's zero forcing number is this plus one.  Closed form:
    s(m) + 1 == (8 * 4^(m-1) + 1) / 3.
    """
    if level < 1:
        raise DomainError("level must be >= 1")
    val = 2
    for _ in range(level - 1):
        val = 4 * val + 2
    return val


def family_order(level: int, pendant: bool = False) -> int:
    """Order of the level-n tree family graph: 6*4^(n-1) - 1, plus the pendant."""
    return 6 * 4 ** (level - 1) - 1 + (1 if pendant else 0)


def _level_counts(level: int) -> tuple[int, int]:
    # internal vertices and leaves of the underlying tree of depth 2*level - 1
    return 2 ** (2 * level - 2) - 1, 2 ** (2 * level - 2)


def _copy_maps(level: int) -> list[Callable[[int], int]]:
    """Index maps embedding the four level-(n-1) copies into the level-n layout.

    Internal tree vertices keep their DFS rank plus a per-copy offset; gadget
    blocks shift by the copy's leaf-range offset.
    """
    i_prev, l_prev = _level_counts(level - 1)
    i_cur, _ = _level_counts(level)
    base_int = [2, 2 + i_prev, 3 + 2 * i_prev, 3 + 3 * i_prev]
    maps: list[Callable[[int], int]] = []
    for c in range(4):
        bi, lb = base_int[c], c * l_prev

        def mp(x: int, bi: int = bi, lb: int = lb) -> int:
            if x < i_prev:
                return bi + x
            return i_cur + 5 * lb + (x - i_prev)

        maps.append(mp)
    return maps


_COPY_KEYS = ("11", "12", "21", "22")


def tree_gadget_family(level: int, pendant: bool = False) -> FamilyGraph:
    """Every leaf of the depth-(2*level - 1) complete binary tree replaced by
    the subdivided K4; with ``pendant`` a new leaf ``y{level}`` hangs off the
    root.

    Landmarks: root ``r{level}``; for level >= 2 the root's neighbors
    ``y{level}_1`` / ``y{level}_2`` and the four sub-family roots
    ``r{level}_11 .. r{level}_22``; each gadget's five vertices as
    ``g{k}_a .. g{k}_d``; at level 1 also the bare names ``a, b, c, e, d``.
    Regions: the core ``g{level}``; for level >= 2 the two root-deleted
    components ``h{level}_1`` / ``h{level}_2`` and the four sub-family copies
    ``g{level}_11 .. g{level}_22``; each gadget block as ``gadget{k}``.
    """
    if level < 1:
        raise DomainError("level must be >= 1")
    tree = binary_tree(2 * level - 1)
    fg = inject_gadget(tree, tree.regions["leaves"], subdivided_k4())

    lm = dict(fg.landmarks)
    root = lm.pop("root")
    lm[f"r{level}"] = root
    rg = dict(fg.regions)
    del rg["leaves"]
    rg[f"g{level}"] = frozenset(range(fg.graph.n))
    if level == 1:
        for i, name in enumerate(GADGET_NAMES):
            lm[name] = i
    else:
        child_int = 2 ** (2 * level - 3) - 1
        child1, child2 = 1, 1 + child_int
        lm[f"y{level}_1"], lm[f"y{level}_2"] = child1, child2
        prev_root = 0 if level - 1 >= 2 else 4
        prev_order = family_order(level - 1)
        copies = []
        for key, mp in zip(_COPY_KEYS, _copy_maps(level)):
            region = frozenset(mp(x) for x in range(prev_order))
            rg[f"g{level}_{key}"] = region
            lm[f"r{level}_{key}"] = mp(prev_root)
            copies.append(region)
        rg[f"h{level}_1"] = frozenset({child1}) | copies[0] | copies[1]
        rg[f"h{level}_2"] = frozenset({child2}) | copies[2] | copies[3]

    n_core = fg.graph.n
    if pendant:
        edges = list(fg.graph.edges()) + [(root, n_core)]
        lm[f"y{level}"] = n_core
        graph = from_edge_list(n_core + 1, edges, _labels_from_landmarks(lm))
    else:
        graph = fg.graph.relabeled(_labels_from_landmarks(lm))
    return FamilyGraph(graph, lm, rg)


def canonical_forcing_set(level: int) -> frozenset[int]:
    """The deterministic minimum zero forcing set of the level-n tree family.

    Level 1 seeds the attach vertex plus two branch vertices ``{d, a, c}``.
    Each later level seeds the root plus the four copied sets, dropping the
    roots of the second copy on either side; the size is core_seed_bound + 1,
    and the root never has to force inside the core.
    """
    if level < 1:
        raise DomainError("level must be >= 1")
    cur = frozenset({4, 0, 2})  # d, a, c in the level-1 layout
    for m in range(2, level + 1):
        prev_root = 0 if m - 1 >= 2 else 4
        nxt = {0}
        for c, mp in enumerate(_copy_maps(m)):
            nxt.update(mp(v) for v in cur)
            if c in (1, 3):
                nxt.discard(mp(prev_root))
        cur = frozenset(nxt)
    return cur


# ---------------------------------------------------------------------------
# Core-intersection verification (exhaustive at small levels)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoreIntersectionReport:
    """Outcome of checking that forcing sets meet the core seed bound.

    Part (i): every zero forcing set of the pendant graph has at least
    core_seed_bound(level) vertices inside the core.  Part (ii): sets meeting
    the bound with equality avoid the root, and their core part does not
    force the root within the core.
    """

    level: int
    method: str
    max_size_enumerated: Optional[int]
    zero_forcing_sets_seen: int
    min_core_intersection: Optional[int]
    part_i_ok: bool
    part_ii_ok: Optional[bool]
    violations: tuple[tuple[str, tuple[int, ...]], ...]
    elapsed_secs: float

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "method": self.method,
            "max_size_enumerated": self.max_size_enumerated,
            "zero_forcing_sets_seen": self.zero_forcing_sets_seen,
            "min_core_intersection": self.min_core_intersection,
            "part_i_ok": self.part_i_ok,
            "part_ii_ok": self.part_ii_ok,
            "violations": [list(v) for _, v in self.violations],
            "elapsed_secs": round(self.elapsed_secs, 6),
        }


def core_intersection_check(
    level: int,
    budget_secs: Optional[float] = None,
    threads: int = 1,
) -> CoreIntersectionReport:
    """Verify the core seed bound on the pendant tree family at small levels.

    Level 1 enumerates every subset up to size core_seed_bound + 2 of the
    6-vertex graph and checks both parts directly.  Level 2 refutes all
    forcing sets of size <= core_seed_bound(2) = 10 by enumeration; since the
    pendant is the only vertex outside the core, any forcing set then has at
    least 11 - 1 = 10 core vertices, which settles part (i).  Larger levels
    are out of enumeration reach.
    """
    t0 = time.monotonic()
    if level == 1:
        fam = tree_gadget_family(1, pendant=True)
        g = fam.graph
        core = fam.regions["g1"]
        root = fam.landmarks["r1"]
        bound = core_seed_bound(1)
        cap = bound + 2
        seen = 0
        min_inter: Optional[int] = None
        violations: list[tuple[str, tuple[int, ...]]] = []
        for size in range(1, cap + 1):
            for combo in combinations(range(g.n), size):
                if not is_zero_forcing_set(g, combo):
                    continue
                seen += 1
                inter = len(core.intersection(combo))
                min_inter = inter if min_inter is None else min(min_inter, inter)
                if inter < bound:
                    violations.append(("part-i", combo))
                elif inter == bound:
                    if root in combo:
                        violations.append(("part-ii-root-seeded", combo))
                    within = closure_within(g, core, core.intersection(combo))
                    if root in within.black:
                        violations.append(("part-ii-root-forced", combo))
        part_i = not any(tag == "part-i" for tag, _ in violations)
        part_ii = not any(tag.startswith("part-ii") for tag, _ in violations)
        return CoreIntersectionReport(
            level=1,
            method="exhaustive-subsets",
            max_size_enumerated=cap,
            zero_forcing_sets_seen=seen,
            min_core_intersection=min_inter,
            part_i_ok=part_i,
            part_ii_ok=part_ii,
            violations=tuple(violations),
            elapsed_secs=time.monotonic() - t0,
        )
    if level == 2:
        fam = tree_gadget_family(2, pendant=True)
        bound = core_seed_bound(2)
        ok = verify_no_smaller(fam.graph, bound, budget_secs=budget_secs, threads=threads)
        return CoreIntersectionReport(
            level=2,
            method="min-size-refutation",
            max_size_enumerated=bound,
            zero_forcing_sets_seen=0,
            min_core_intersection=None,
            part_i_ok=ok,
            part_ii_ok=None,
            violations=(),
            elapsed_secs=time.monotonic() - t0,
        )
    raise BudgetExceededError(f"exhaustive core check is infeasible beyond level 2 (got {level})")


# ---------------------------------------------------------------------------
# The hairy-cycle family and ratio reporting
# ---------------------------------------------------------------------------


def cycle_gadget_family(k: int) -> FamilyGraph:
    """Hairy cycle with each pendant leaf replaced by the subdivided K4.

    For k divisible by 6 this yields a connected 3-regular graph on 6k
    vertices whose forcing ratio stays above 5/12.
    """
    if k < 6 or k % 6:
        raise DomainError(f"cycle length must be a positive multiple of 6, got {k}")
    base = hairy_cycle(k)
    fg = inject_gadget(base, base.regions["leaves"], subdivided_k4())
    rg = dict(fg.regions)
    del rg["leaves"]
    return FamilyGraph(fg.graph, fg.landmarks, rg)


@dataclass(frozen=True)
class RatioReport:
    """Exact-rational forcing ratio of a graph against the known thresholds."""

    order: int
    lower: int
    upper: Optional[int]
    exact: bool
    ratio_lower: Fraction
    ratio_upper: Optional[Fraction]
    conjecture_cap: Fraction
    violates_conjecture: bool
    at_least_four_ninths: bool
    at_least_five_twelfths: bool
    at_least_half: bool

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "ratio_lower": str(self.ratio_lower),
            "ratio_upper": str(self.ratio_upper) if self.ratio_upper is not None else None,
            "conjecture_cap": str(self.conjecture_cap),
            "violates_conjecture": self.violates_conjecture,
            "at_least_four_ninths": self.at_least_four_ninths,
            "at_least_five_twelfths": self.at_least_five_twelfths,
            "at_least_half": self.at_least_half,
        }


def ratio_report(fg: FamilyGraph, result: SolverResult) -> RatioReport:
    """Z/|V| as an exact rational, compared against n/3 + 2, 4/9, 5/12 and 1/2.

    Timeout results use the proven interval: the lower end drives the >=
    comparisons and the conjecture-violation flag.
    """
    n = fg.graph.n
    if n == 0:
        raise DomainError("ratio undefined for the empty graph")
    rl = Fraction(result.lower, n)
    ru = Fraction(result.upper, n) if result.upper is not None else None
    cap = Fraction(n, 3) + 2
    return RatioReport(
        order=n,
        lower=result.lower,
        upper=result.upper,
        exact=result.exact,
        ratio_lower=rl,
        ratio_upper=ru,
        conjecture_cap=cap,
        violates_conjecture=Fraction(result.lower) > cap,
        at_least_four_ninths=rl >= Fraction(4, 9),
        at_least_five_twelfths=rl >= Fraction(5, 12),
        at_least_half=rl >= Fraction(1, 2),
    )
