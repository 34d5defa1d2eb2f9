"""Exact computation of the zero forcing number and the classic degree bounds.

Two exact algorithms are provided: plain enumeration by ascending cardinality
(:func:`z_exhaustive`) and a branch-and-bound search (:func:`z_branch_and_bound`)
that branches on forts -- vertex sets no outside vertex sees exactly once, which
every zero forcing set must intersect.  Both return the same number wherever
they complete; timeouts yield a proven interval, never a guess.

Bounds are evaluated in exact rational arithmetic so tightness cases compare
by equality; only the girth-5 bound is inherently irrational and flagged
approximate.
"""

from __future__ import annotations

import itertools
import math
import multiprocessing
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import BudgetExceededError, DomainError
from .forcing import _closure_mask
from .graph import Graph

_BUDGET_CHECK_EVERY = 4096


class Certificate(str, Enum):
    """How minimality of a solver result was established."""

    EXHAUSTED_BELOW = "exhausted-below"
    BNB_CLOSED = "bnb-closed"
    FORMULA_ORACLE = "formula-oracle"
    TIMEOUT = "timeout"


@dataclass
class SearchStats:
    sets_examined: int = 0
    closures_run: int = 0
    nodes: int = 0
    elapsed_secs: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "sets_examined": self.sets_examined,
            "closures_run": self.closures_run,
            "nodes": self.nodes,
            "elapsed_secs": round(self.elapsed_secs, 6),
        }


@dataclass(frozen=True)
class SolverResult:
    """Exact value with witness, or a proven interval on timeout.

    Exact results have ``z == lower == upper`` and a forcing ``witness`` of
    size ``z``.  Timeouts carry ``z is None`` plus the proven ``[lower, upper]``
    interval; the witness, when present, attains ``upper``.
    """

    z: Optional[int]
    witness: Optional[frozenset[int]]
    certificate: Certificate
    lower: int
    upper: Optional[int]
    stats: SearchStats = field(compare=False, default_factory=SearchStats)

    @property
    def exact(self) -> bool:
        return self.z is not None

    def to_json_dict(self) -> dict:
        return {
            "z": self.z,
            "witness": sorted(self.witness) if self.witness is not None else None,
            "certificate": self.certificate.value,
            "lower": self.lower,
            "upper": self.upper,
            "stats": self.stats.to_json_dict(),
        }


def _mask_of(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# ---------------------------------------------------------------------------
# Greedy upper bound and fort machinery (shared by the exact searches)
# ---------------------------------------------------------------------------


def _greedy_zfs(masks: tuple[int, ...], full: int, n: int) -> int:
    """Repeatedly add the vertex maximizing closure growth; ties to lowest index."""
    chosen = 0
    black = 0
    while black != full:
        best_v = -1
        best_gain = -1
        best_cl = 0
        for v in range(n):
            if black >> v & 1:
                continue
            cl = _closure_mask(masks, full, black | 1 << v)
            gain = cl.bit_count()
            if gain > best_gain:
                best_gain, best_v, best_cl = gain, v, cl
        chosen |= 1 << best_v
        black = best_cl
    return chosen


def _is_fort(masks: tuple[int, ...], n: int, fort: int) -> bool:
    """A nonempty set is a fort when no outside vertex has exactly one neighbor in it."""
    if not fort:
        return False
    for u in range(n):
        if fort >> u & 1:
            continue
        x = masks[u] & fort
        if x and x & (x - 1) == 0:
            return False
    return True


def _minimal_fort(masks: tuple[int, ...], n: int, fort: int) -> int:
    """Shrink a fort to an inclusion-minimal one (deterministic order).

    Repeated ascending passes, since removing a late vertex can unlock
    earlier ones (e.g. a gadget's attachment vertex blocks its neighbors).
    """
    changed = True
    while changed:
        changed = False
        for v in _bits(fort):
            cand = fort & ~(1 << v)
            if cand and _is_fort(masks, n, cand):
                fort = cand
                changed = True
    return fort


def _fort_packing(
    masks: tuple[int, ...], full: int, n: int, seed: int = 0
) -> list[int]:
    """Greedy pairwise-disjoint forts avoiding ``seed``; each needs its own hit.

    The complement of any closure is a fort, so repeatedly closing the union
    of the forts found so far and shrinking the white remainder yields
    disjoint forts.  Their count lower-bounds how many vertices any forcing
    set must place outside ``seed``.
    """
    taken = seed
    packed: list[int] = []
    while True:
        cl = _closure_mask(masks, full, taken)
        if cl == full:
            return packed
        fort = _minimal_fort(masks, n, full & ~cl)
        taken |= fort
        packed.append(fort)


# ---------------------------------------------------------------------------
# Exhaustive search
# ---------------------------------------------------------------------------


def _scan_size_chunk(args) -> tuple[Optional[tuple[int, ...]], int]:
    """Test all size-k subsets extending a fixed prefix.

    Returns the lexicographically first forcing subset in the chunk (or None)
    and the number of subsets examined.
    """
    masks, full, n, k, prefix = args
    closure = _closure_mask
    base = 0
    for v in prefix:
        base |= 1 << v
    rest_len = k - len(prefix)
    examined = 0
    if rest_len == 0:
        examined = 1
        if closure(masks, full, base) == full:
            return prefix, examined
        return None, examined
    for rest in itertools.combinations(range(prefix[-1] + 1, n), rest_len):
        black = base
        for v in rest:
            black |= 1 << v
        examined += 1
        if closure(masks, full, black) == full:
            return prefix + rest, examined
    return None, examined


def _scan_size(
    g: Graph,
    k: int,
    threads: int,
    deadline: Optional[float],
    stats: SearchStats,
    progress: Optional[Callable[[int, int], None]] = None,
) -> Optional[tuple[int, ...]]:
    """First (lexicographically least) forcing set of size exactly k, if any.

    Raises BudgetExceededError past the deadline.  With several workers the
    enumeration splits by first element and merges in order, so the outcome is
    identical to the serial scan.
    """
    masks, full, n = g.neighbor_masks, g.full_mask, g.n
    total = math.comb(n, k)
    if threads > 1 and total >= 1 << 15:
        ctx = multiprocessing.get_context("fork")
        plen = min(2, k)
        jobs = [
            (masks, full, n, k, prefix)
            for prefix in itertools.combinations(range(n), plen)
            if n - 1 - prefix[-1] >= k - plen
        ]
        with ctx.Pool(threads) as pool:
            for hit, examined in pool.imap(_scan_size_chunk, jobs):
                stats.sets_examined += examined
                stats.closures_run += examined
                if progress is not None:
                    progress(stats.sets_examined, total)
                if hit is not None:
                    return hit
                if deadline is not None and time.monotonic() > deadline:
                    raise BudgetExceededError(f"budget exhausted at size {k}")
        return None
    closure = _closure_mask
    examined = 0
    for combo in itertools.combinations(range(n), k):
        black = 0
        for v in combo:
            black |= 1 << v
        examined += 1
        if closure(masks, full, black) == full:
            stats.sets_examined += examined
            stats.closures_run += examined
            return combo
        if examined % _BUDGET_CHECK_EVERY == 0:
            if deadline is not None and time.monotonic() > deadline:
                stats.sets_examined += examined
                stats.closures_run += examined
                raise BudgetExceededError(f"budget exhausted at size {k}")
            if progress is not None:
                progress(stats.sets_examined + examined, total)
    stats.sets_examined += examined
    stats.closures_run += examined
    return None


def z_exhaustive(
    g: Graph,
    hint: Optional[tuple[int, int]] = None,
    budget_secs: Optional[float] = None,
    threads: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> SolverResult:
    """Minimum zero forcing set by enumeration in ascending cardinality.

    The first admitting size wins, so the witness is the lexicographically
    least forcing set of optimal size.  ``hint=(lo, hi)`` starts the scan at
    ``lo`` (the certificate then covers sizes from ``lo`` up).  On budget
    exhaustion the result is a proven interval, never a guess.
    """
    t0 = time.monotonic()
    stats = SearchStats()
    if g.n == 0:
        return SolverResult(0, frozenset(), Certificate.EXHAUSTED_BELOW, 0, 0, stats)
    deadline = t0 + budget_secs if budget_secs is not None else None
    start = max(hint[0], 1) if hint is not None else 1
    size = start
    try:
        for size in range(start, g.n + 1):
            combo = _scan_size(g, size, threads, deadline, stats, progress)
            if combo is not None:
                stats.elapsed_secs = time.monotonic() - t0
                return SolverResult(
                    size, frozenset(combo), Certificate.EXHAUSTED_BELOW, size, size, stats
                )
    except BudgetExceededError:
        upper_mask = _greedy_zfs(g.neighbor_masks, g.full_mask, g.n)
        stats.elapsed_secs = time.monotonic() - t0
        return SolverResult(
            None,
            frozenset(_bits(upper_mask)),
            Certificate.TIMEOUT,
            size,
            upper_mask.bit_count(),
            stats,
        )
    raise AssertionError("unreachable: the full vertex set always forces")


def verify_no_smaller(
    g: Graph,
    k: int,
    budget_secs: Optional[float] = None,
    threads: int = 1,
    progress: Optional[Callable[[int, int], None]] = None,
) -> bool:
    """True iff no vertex subset of size <= k forces the whole graph.

    Supersets of forcing sets force, so scanning size exactly k covers all
    smaller sizes.  Raises BudgetExceededError when the scan cannot finish
    inside the budget.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    if k >= g.n:
        return False  # the full vertex set always forces
    if k == 0:
        return g.n > 0
    stats = SearchStats()
    deadline = time.monotonic() + budget_secs if budget_secs is not None else None
    combo = _scan_size(g, k, threads, deadline, stats, progress)
    return combo is None


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------


def z_branch_and_bound(
    g: Graph,
    budget_secs: Optional[float] = None,
    node_limit: Optional[int] = None,
) -> SolverResult:
    """Exact zero forcing number by fort-hitting branch and bound.

    State is a pair (chosen, excluded).  When the chosen set does not close,
    the white remainder contains a fort; every admissible solution must hit
    every fort disjoint from the chosen set, so one child is created per
    available vertex of a smallest such fort.  A node is pruned when |chosen|
    plus a packing of pairwise disjoint forts avoiding it (each needs its own
    seed) reaches the incumbent.  Forts are discovered incrementally and kept
    in a pool shared across nodes, so most nodes cost one closure plus a scan
    of the pool.  On budget or node exhaustion a proven interval is returned.
    """
    t0 = time.monotonic()
    stats = SearchStats()
    if g.n == 0:
        return SolverResult(0, frozenset(), Certificate.BNB_CLOSED, 0, 0, stats)
    masks, full, n = g.neighbor_masks, g.full_mask, g.n
    deadline = t0 + budget_secs if budget_secs is not None else None

    best_mask = _greedy_zfs(masks, full, n)
    best_size = best_mask.bit_count()
    min_deg = min(len(g.adjacency[v]) for v in range(n))

    pool = _fort_packing(masks, full, n)
    pool_seen = set(pool)
    pool.sort(key=lambda f: (f.bit_count(), f))
    global_lb = max(min_deg, len(pool), 1)

    # stack holds (chosen, excluded, inherited lower bound for the subproblem)
    stack: list[tuple[int, int, int]] = [(0, 0, global_lb)]
    aborted = False
    while stack:
        if best_size <= global_lb:
            stack.clear()
            break
        stats.nodes += 1
        if node_limit is not None and stats.nodes > node_limit:
            aborted = True
            break
        if deadline is not None and stats.nodes % 64 == 0 and time.monotonic() > deadline:
            aborted = True
            break
        chosen, excluded, lb = stack.pop()
        if lb >= best_size:
            continue
        cl = _closure_mask(masks, full, chosen)
        stats.closures_run += 1
        if cl == full:
            sz = chosen.bit_count()
            if sz < best_size:
                best_size, best_mask = sz, chosen
            continue
        # pack disjoint pool forts avoiding the chosen set (they cannot
        # intersect its closure either), then try to discover one more
        packed = []
        region = cl
        infeasible = False
        for fort in pool:
            if fort & region == 0:
                if fort & ~excluded == 0:
                    infeasible = True
                    break
                packed.append(fort)
                region |= fort
        if infeasible:
            continue
        cl2 = _closure_mask(masks, full, region)
        stats.closures_run += 1
        if cl2 != full:
            fresh = _minimal_fort(masks, n, full & ~cl2)
            packed.append(fresh)
            if fresh not in pool_seen:
                pool_seen.add(fresh)
                pool.append(fresh)
                pool.sort(key=lambda f: (f.bit_count(), f))
            if fresh & ~excluded == 0:
                continue
        node_lb = max(lb, chosen.bit_count() + len(packed), global_lb)
        if node_lb >= best_size:
            continue
        avail = min((f & ~excluded for f in packed), key=lambda f: (f.bit_count(), f))
        children = []
        acc = 0
        for v in _bits(avail):
            children.append((chosen | 1 << v, excluded | acc, node_lb))
            acc |= 1 << v
        stack.extend(reversed(children))

    stats.elapsed_secs = time.monotonic() - t0
    if aborted:
        lower = min([best_size] + [lb for _, _, lb in stack])
        lower = max(lower, global_lb)
        return SolverResult(
            None,
            frozenset(_bits(best_mask)),
            Certificate.TIMEOUT,
            lower,
            best_size,
            stats,
        )
    return SolverResult(
        best_size,
        frozenset(_bits(best_mask)),
        Certificate.BNB_CLOSED,
        best_size,
        best_size,
        stats,
    )


# ---------------------------------------------------------------------------
# Closed-form values for standard families
# ---------------------------------------------------------------------------


def z_formula(family: str, *sizes: int) -> int:
    """Known zero forcing numbers: path 1, cycle 2, K_n -> n-1, K_{a,b} -> a+b-2.

    The complete and complete-bipartite formulas bottom out at 1 for the
    one- and two-vertex degenerate cases (K_1, K_{1,1}).
    """
    fam = family.lower().replace("-", "_")
    if fam == "path":
        (n,) = sizes
        if n < 1:
            raise DomainError("path needs n >= 1")
        return 1
    if fam == "cycle":
        (n,) = sizes
        if n < 3:
            raise DomainError("cycle needs n >= 3")
        return 2
    if fam == "complete":
        (n,) = sizes
        if n < 1:
            raise DomainError("complete graph needs n >= 1")
        return max(1, n - 1)
    if fam in ("complete_bipartite", "completebipartite"):
        a, b = sizes
        if a < 1 or b < 1:
            raise DomainError("complete bipartite graph needs a, b >= 1")
        return max(1, a + b - 2)
    raise DomainError(f"unknown family {family!r}")


def z_formula_result(family: str, *sizes: int) -> SolverResult:
    z = z_formula(family, *sizes)
    return SolverResult(z, None, Certificate.FORMULA_ORACLE, z, z, SearchStats())


# ---------------------------------------------------------------------------
# Degree bounds, in exact rational arithmetic
# ---------------------------------------------------------------------------


class BoundFormula(str, Enum):
    AMOS = "amos"
    GENTNER_RAUTENBACH = "gentner-rautenbach"
    CONJECTURE_THIRD = "conjecture-third"
    GIRTH_FIVE = "girth-five"


@dataclass(frozen=True)
class BoundValue:
    value: Union[Fraction, float]
    formula: BoundFormula
    approximate: bool = False

    def to_json_dict(self) -> dict:
        val = str(self.value) if isinstance(self.value, Fraction) else self.value
        return {"value": val, "formula": self.formula.value, "approximate": self.approximate}


def bound_amos(n: int, delta: int) -> BoundValue:
    """((delta-2)*n + 2) / (delta-1): attained by K_{delta+1}, K_{delta,delta}, cycles."""
    if delta < 2:
        raise DomainError("the bound needs maximum degree >= 2")
    if n < 1:
        raise DomainError("the bound needs n >= 1")
    value = Fraction(delta - 2, delta - 1) * n + Fraction(2, delta - 1)
    return BoundValue(value, BoundFormula.AMOS)


def bound_gr(n: int, delta: int) -> BoundValue:
    """(delta-2)/(delta-1) * n, without the additive constant; needs delta >= 3.

    The handful of exceptional graphs attaining more are not detected here;
    callers must not apply this bound to them.
    """
    if delta < 3:
        raise DomainError("the constant-free bound needs maximum degree >= 3")
    if n < 0:
        raise DomainError("n must be nonnegative")
    return BoundValue(Fraction(delta - 2, delta - 1) * n, BoundFormula.GENTNER_RAUTENBACH)


def bound_conjecture_third(n: int) -> BoundValue:
    """n/3 + 2, the conjectured (and refuted) cap for connected subcubic graphs."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return BoundValue(Fraction(n, 3) + 2, BoundFormula.CONJECTURE_THIRD)


def bound_girth5(n: int) -> BoundValue:
    """n/2 - n/(24*log2(n) + 6) + 2, evaluated in floats and flagged approximate.

    Report-only: contains log2(n), so it is never used as an exactness oracle.
    """
    if n < 2:
        raise DomainError("n must be >= 2")
    value = n / 2 - n / (24 * math.log2(n) + 6) + 2
    return BoundValue(value, BoundFormula.GIRTH_FIVE, approximate=True)
