"""Family constructions: gadget, trees, injections, canonical sets, ratios."""

from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import oracle_closure, oracle_is_zfs
from zeroforcing.errors import BudgetExceededError, DegreeOverflowError, DomainError
from zeroforcing.families import (
    _copy_maps,
    binary_tree,
    canonical_forcing_set,
    core_intersection_check,
    core_seed_bound,
    cycle_gadget_family,
    family_order,
    hairy_cycle,
    inject_gadget,
    random_cubic,
    random_tree_max3,
    ratio_report,
    subdivided_k4,
    tree_gadget_family,
)
from zeroforcing.forcing import closure, closure_within, is_zero_forcing_set
from zeroforcing.graph import degree_profile, from_edge_list, is_connected
from zeroforcing.solver import SearchStats, SolverResult, Certificate, z_exhaustive

from random import Random


class TestGadget:
    def test_shape(self):
        ga = subdivided_k4()
        assert ga.gadget.n == 5 and ga.gadget.m == 7

    def test_degrees(self):
        ga = subdivided_k4()
        assert ga.gadget.degree(ga.attach) == 2
        assert sorted(ga.gadget.degree(v) for v in range(5)) == [2, 3, 3, 3, 3]

    def test_removing_attach_leaves_k4_minus_edge(self):
        ga = subdivided_k4()
        rest = [v for v in range(5) if v != ga.attach]
        present = {
            (u, v)
            for u in rest
            for v in ga.gadget.adjacency[u]
            if v in rest and u < v
        }
        assert len(present) == 5  # K4 has 6 edges; exactly one is missing
        missing = [
            (u, v)
            for i, u in enumerate(rest)
            for v in rest[i + 1:]
            if (u, v) not in present
        ]
        # the missing pair is the attach vertex's two neighbors
        assert set(missing[0]) == set(ga.gadget.adjacency[ga.attach])


class TestBinaryTree:
    def test_depth1(self):
        fg = binary_tree(1)
        assert fg.graph.n == 1 and fg.regions["leaves"] == {0}
        assert fg.landmarks["root"] == 0

    def test_depth3(self):
        fg = binary_tree(3)
        assert fg.graph.n == 7 and len(fg.regions["leaves"]) == 4

    def test_depth5(self):
        fg = binary_tree(5)
        assert fg.graph.n == 31 and len(fg.regions["leaves"]) == 16

    def test_domain(self):
        with pytest.raises(DomainError):
            binary_tree(0)


class TestInjectGadget:
    def test_single_vertex_base_gives_the_gadget(self):
        base = binary_tree(1)
        fg = inject_gadget(base, base.regions["leaves"], subdivided_k4())
        assert fg.graph == subdivided_k4().gadget
        assert fg.landmarks["root"] == 4  # landmark moved to the attach vertex

    def test_four_leaves(self):
        base = binary_tree(3)
        fg = inject_gadget(base, base.regions["leaves"], subdivided_k4())
        assert fg.graph.n == 23 and degree_profile(fg.graph)[1] == 3

    def test_degree_overflow(self):
        base = binary_tree(3)
        internal = next(
            v for v in range(7) if v not in base.regions["leaves"] and v != 0
        )
        with pytest.raises(DegreeOverflowError):
            inject_gadget(base, {internal}, subdivided_k4())


class TestSeedBoundSequence:
    def test_values(self):
        assert core_seed_bound(1) == 2
        assert core_seed_bound(2) == 10
        assert core_seed_bound(3) == 42

    def test_closed_form(self):
        for n in range(1, 12):
            assert 3 * (core_seed_bound(n) + 1) == 8 * 4 ** (n - 1) + 1

    def test_domain(self):
        with pytest.raises(DomainError):
            core_seed_bound(0)


class TestTreeFamily:
    def test_counting_identities(self):
        for n in range(1, 9):
            assert family_order(n) == 6 * 4 ** (n - 1) - 1
            assert family_order(n, pendant=True) == 6 * 4 ** (n - 1)
        for n in range(1, 6):
            fam = tree_gadget_family(n)
            assert fam.graph.n == family_order(n)
            assert fam.graph.m == 9 * 4 ** (n - 1) - 2
            hat = tree_gadget_family(n, pendant=True)
            assert hat.graph.n == family_order(n, pendant=True)
            assert hat.graph.m == 9 * 4 ** (n - 1) - 1

    def test_degree_caps(self):
        for n in range(1, 5):
            fam = tree_gadget_family(n)
            hat = tree_gadget_family(n, pendant=True)
            root = fam.landmarks[f"r{n}"]
            assert degree_profile(fam.graph)[1] == 3
            assert fam.graph.degree(root) == 2
            assert hat.graph.degree(hat.landmarks[f"r{n}"]) == 3
            assert is_connected(hat.graph)

    def test_region_partition(self):
        for n in range(2, 5):
            fam = tree_gadget_family(n)
            root = fam.landmarks[f"r{n}"]
            h1, h2 = fam.regions[f"h{n}_1"], fam.regions[f"h{n}_2"]
            assert h1.isdisjoint(h2) and root not in h1 | h2
            assert {root} | h1 | h2 == frozenset(range(fam.graph.n))
            copies = [fam.regions[f"g{n}_{k}"] for k in ("11", "12", "21", "22")]
            for i, a in enumerate(copies):
                for b in copies[i + 1:]:
                    assert a.isdisjoint(b)

    def test_pendant_touches_only_root(self):
        for n in range(1, 4):
            hat = tree_gadget_family(n, pendant=True)
            y = hat.landmarks[f"y{n}"]
            assert hat.graph.adjacency[y] == {hat.landmarks[f"r{n}"]}

    def test_recursive_self_similarity(self):
        # the explicit index maps are edge-preserving bijections onto the copies
        for n in range(2, 6):
            prev = tree_gadget_family(n - 1).graph
            cur = tree_gadget_family(n)
            for key, mp in zip(("11", "12", "21", "22"), _copy_maps(n)):
                region = cur.regions[f"g{n}_{key}"]
                image = {mp(x) for x in range(prev.n)}
                assert image == region
                mapped_edges = {
                    (min(mp(u), mp(v)), max(mp(u), mp(v))) for u, v in prev.edges()
                }
                induced = {
                    (u, v)
                    for u, v in cur.graph.edges()
                    if u in region and v in region
                }
                assert mapped_edges == induced

    def test_root_landmark_at_level1_is_attach(self):
        fam = tree_gadget_family(1)
        assert fam.landmarks["r1"] == fam.landmarks["d"] == 4

    def test_copy_root_landmarks(self):
        fam = tree_gadget_family(2)
        assert [fam.landmarks[f"r2_{k}"] for k in ("11", "12", "21", "22")] == [7, 12, 17, 22]


class TestCanonicalSet:
    def test_sizes(self):
        for n in range(1, 9):
            assert len(canonical_forcing_set(n)) == core_seed_bound(n) + 1

    def test_forces_and_root_idle(self):
        for n in range(1, 5):
            p = canonical_forcing_set(n)
            fam = tree_gadget_family(n)
            hat = tree_gadget_family(n, pendant=True)
            root = fam.landmarks[f"r{n}"]
            assert root in p
            state, chron = closure(fam.graph, p)
            assert state.black == frozenset(range(fam.graph.n))
            assert all(ev.forcer != root for ev in chron.events)
            assert is_zero_forcing_set(hat.graph, p)

    def test_level1_matches_oracle(self):
        p = canonical_forcing_set(1)
        assert p == {0, 2, 4}
        assert oracle_is_zfs(tree_gadget_family(1).graph, p)

    def test_side_intersection_counts(self):
        # each root-deleted component receives 2*s(n-1) + 1 canonical seeds
        for n in range(2, 6):
            p = canonical_forcing_set(n)
            fam = tree_gadget_family(n)
            for i in (1, 2):
                side = fam.regions[f"h{n}_{i}"]
                assert len(p & side) == 2 * core_seed_bound(n - 1) + 1


class TestCoreIntersectionCheck:
    def test_level1_both_parts(self):
        report = core_intersection_check(1)
        assert report.part_i_ok and report.part_ii_ok
        assert report.min_core_intersection == core_seed_bound(1) == 2
        assert report.violations == ()
        assert report.method == "exhaustive-subsets"

    def test_level1_tight_example(self):
        fam = tree_gadget_family(1, pendant=True)
        g = fam.graph
        p = fam.landmark_vertices(["y1", "a", "c"])
        core = fam.regions["g1"]
        root = fam.landmarks["r1"]
        assert is_zero_forcing_set(g, p)
        assert len(p & core) == 2 and root not in p
        assert root not in closure_within(g, core, p & core).black
        # same conclusion from the naive oracle on the induced core subgraph
        order = sorted(core)
        idx = {v: i for i, v in enumerate(order)}
        induced = from_edge_list(
            len(order), [(idx[u], idx[v]) for u, v in g.edges() if u in core and v in core]
        )
        assert idx[root] not in oracle_closure(induced, {idx[v] for v in p & core})

    def test_level3_out_of_reach(self):
        with pytest.raises(BudgetExceededError):
            core_intersection_check(3)


class TestCycleFamily:
    def test_structure(self):
        fam = cycle_gadget_family(6)
        mn, mx, _ = degree_profile(fam.graph)
        assert fam.graph.n == 36 and fam.graph.m == 54
        assert mn == mx == 3
        assert is_connected(fam.graph)

    def test_order_scales(self):
        assert cycle_gadget_family(12).graph.n == 72

    def test_divisibility(self):
        with pytest.raises(DomainError):
            cycle_gadget_family(7)
        with pytest.raises(DomainError):
            cycle_gadget_family(0)

    def test_hairy_cycle_base(self):
        base = hairy_cycle(6)
        assert base.graph.n == 12 and base.graph.m == 12


class TestGenerators:
    def test_random_tree_respects_cap(self):
        rng = Random(1)
        for _ in range(20):
            fg = random_tree_max3(rng.randint(1, 25), rng)
            assert degree_profile(fg.graph)[1] <= 3
            assert fg.graph.m == fg.graph.n - 1

    def test_random_cubic(self):
        rng = Random(2)
        g = random_cubic(12, rng)
        assert degree_profile(g) == (3, 3, {3: 12})
        assert is_connected(g)

    def test_random_cubic_domain(self):
        with pytest.raises(DomainError):
            random_cubic(7, Random(0))


class TestRatioReport:
    @staticmethod
    def _exact(z: int) -> SolverResult:
        return SolverResult(z, frozenset(), Certificate.BNB_CLOSED, z, z, SearchStats())

    def test_level2_violates_conjecture(self):
        fam = tree_gadget_family(2, pendant=True)
        rep = ratio_report(fam, self._exact(11))
        assert rep.ratio_lower == Fraction(11, 24) > Fraction(4, 9)
        assert rep.conjecture_cap == Fraction(10)
        assert rep.violates_conjecture
        assert rep.at_least_four_ninths and not rep.at_least_half

    def test_level1_half(self):
        fam = tree_gadget_family(1, pendant=True)
        rep = ratio_report(fam, self._exact(3))
        assert rep.ratio_lower == Fraction(1, 2)
        assert rep.at_least_half and not rep.violates_conjecture

    def test_interval_input(self):
        fam = cycle_gadget_family(6)
        res = SolverResult(None, None, Certificate.TIMEOUT, 15, 18, SearchStats())
        rep = ratio_report(fam, res)
        assert not rep.exact
        assert rep.ratio_lower == Fraction(15, 36) == Fraction(5, 12)
        assert rep.at_least_five_twelfths


def test_exact_small_value_level1():
    assert z_exhaustive(tree_gadget_family(1).graph).z == core_seed_bound(1) + 1 == 3
