"""Star graph construction, mismatch repair, and the solver itself."""

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from symmarriage import (
    Assignment,
    BipartiteGraph,
    Matching,
    SmpInstance,
    Unsolvable,
    assignment_violations,
    build_star_graph,
    cmp_to_smp,
    extract_assignment,
    find_mismatches,
    gen_tournament,
    hall_condition_cmp,
    max_matching,
    oracle_solve,
    repair_mismatches,
    solve,
    solve_via_subproblems,
    unsolvable_violator,
)

from .conftest import random_instance, smp_instances


def star_edges(star):
    """Symbolic (left, right) edge labels, e.g. ('g1', 'Lb1')."""
    inst = star.instance
    n_g, n_b = len(inst.girls), len(inst.boys)

    def left_name(u):
        return inst.girls[u] if u < n_g else "L" + inst.girls[star.listed_girls[u - n_g]]

    def right_name(v):
        return inst.boys[v] if v < n_b else "L" + inst.boys[star.listed_boys[v - n_b]]

    return {
        (left_name(u), right_name(v))
        for u, row in enumerate(star.graph.adjacency)
        for v in row
    }


def star_matching(star, named_pairs):
    """Build a Matching from symbolic pairs like ('g1', 'Lb1')."""
    inst = star.instance
    gi, bi = inst.girl_index, inst.boy_index
    n_g, n_b = len(inst.girls), len(inst.boys)

    def left_id(name):
        return star.lg_node[gi[name[1:]]] if name.startswith("L") else gi[name]

    def right_id(name):
        return star.lb_node[bi[name[1:]]] if name.startswith("L") else bi[name]

    return Matching(tuple(sorted((left_id(a), right_id(b)) for a, b in named_pairs)))


class TestBuildStarGraph:
    def test_i1_edges(self, i1):
        star = build_star_graph(i1)
        assert star_edges(star) == {("g1", "b2"), ("g2", "b1")}
        # One list node exists per listed member, both isolated here.
        assert star.listed_girls == (0,) and star.listed_boys == (0,)

    def test_i3_edges(self, i3):
        star = build_star_graph(i3)
        expected = set()
        for g in ("g1", "g2"):
            for b in ("b1", "b2"):
                expected.add((g, "L" + b))
                expected.add(("L" + g, b))
        assert star_edges(star) == expected

    def test_all_wildcards_has_no_edges(self):
        inst = SmpInstance.build(["g1"], ["b1"], {}, {})
        star = build_star_graph(inst)
        assert star_edges(star) == set()
        assert star.target_size == 0

    @given(smp_instances())
    @settings(deadline=None, max_examples=300)
    def test_edge_rules(self, inst):
        star = build_star_graph(inst)
        edges = star_edges(star)
        listed_g = {inst.girls[i] for i in star.listed_girls}
        listed_b = {inst.boys[i] for i in star.listed_boys}
        for g in inst.girls:
            for b in inst.boys:
                direct = (b in inst.girl_lists[g] and b not in listed_b) or (
                    g in inst.boy_lists[b] and g not in listed_g
                )
                compatible = b in inst.girl_lists[g] and g in inst.boy_lists[b]
                assert ((g, b) in edges) == direct
                assert (((g, "L" + b) in edges) == compatible) and (
                    (("L" + g, b) in edges) == compatible
                )

    @given(smp_instances())
    @settings(deadline=None, max_examples=300)
    def test_vertex_cover_bound(self, inst):
        star = build_star_graph(inst)
        assert len(max_matching(star.graph)) <= star.target_size


class TestSolve:
    def test_i1_unique_solution(self, i1):
        assert solve(i1) == Assignment((("g1", "b2"), ("g2", "b1")))

    def test_two_girls_one_boy(self, two_girls_one_boy):
        result = solve(two_girls_one_boy)
        assert isinstance(result, Unsolvable)
        assert result.side == "girls"
        assert result.violator.members == ("g1", "g2")
        assert result.violator.union_size == 1

    def test_i3_deterministic_valid(self, i3):
        result = solve(i3)
        assert result == Assignment((("g1", "b1"), ("g2", "b2")))
        assert solve(i3) == result

    def test_empty_instance(self):
        assert solve(SmpInstance.build([], [], {}, {})) == Assignment(())

    def test_cmp_shaped_agrees_with_matching_coverage(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            n_l = int(rng.integers(1, 6))
            n_r = int(rng.integers(1, 6))
            rows = []
            for _ in range(n_l):
                k = int(rng.integers(1, n_r + 1))
                rows.append(tuple(int(x) for x in sorted(rng.choice(n_r, size=k, replace=False))))
            graph = BipartiteGraph(n_l, n_r, tuple(rows))
            inst = SmpInstance.build(
                [f"g{i}" for i in range(n_l)],
                [f"b{j}" for j in range(n_r)],
                {f"g{i}": tuple(f"b{j}" for j in rows[i]) for i in range(n_l)},
                {},
            )
            covered = len(max_matching(graph)) == n_l
            assert isinstance(solve(inst), Assignment) == covered

    def test_tournament_cmp_roundtrip(self):
        for seed in range(10):
            cmp = gen_tournament(2, seed)
            via_cmp = hall_condition_cmp(cmp) is None
            via_smp = isinstance(solve(cmp_to_smp(cmp)), Assignment)
            assert via_cmp == via_smp


class TestFindMismatches:
    def test_direct_only_matching_has_none(self, i1):
        star = build_star_graph(i1)
        m = star_matching(star, [("g1", "b2"), ("g2", "b1")])
        assert find_mismatches(star, m).count == 0

    def test_i3_crossed_matching_has_four(self, i3):
        star = build_star_graph(i3)
        m = star_matching(
            star, [("g1", "Lb1"), ("g2", "Lb2"), ("Lg2", "b1"), ("Lg1", "b2")]
        )
        report = find_mismatches(star, m)
        assert report.count == 4
        assert len(report.mismatched) == 4

    def test_i3_mutual_matching_has_none(self, i3):
        star = build_star_graph(i3)
        m = star_matching(
            star, [("g1", "Lb1"), ("Lg1", "b1"), ("g2", "Lb2"), ("Lg2", "b2")]
        )
        assert find_mismatches(star, m).count == 0


class TestRepairMismatches:
    def test_identity_when_clean(self, i1):
        star = build_star_graph(i1)
        m = star_matching(star, [("g1", "b2"), ("g2", "b1")])
        assert repair_mismatches(star, m) == m

    def test_i3_cycle_case(self, i3):
        star = build_star_graph(i3)
        crossed = star_matching(
            star, [("g1", "Lb1"), ("g2", "Lb2"), ("Lg2", "b1"), ("Lg1", "b2")]
        )
        stats = {}
        repaired = repair_mismatches(star, crossed, stats)
        expected = star_matching(
            star, [("g1", "Lb1"), ("Lg1", "b1"), ("g2", "Lb2"), ("Lg2", "b2")]
        )
        assert repaired == expected
        assert stats == {"initial_mismatches": 4, "iterations": 1}
        assert extract_assignment(star, repaired) == Assignment(
            (("g1", "b1"), ("g2", "b2"))
        )

    def test_free_list_node_case(self):
        # One listed boy, two listed girls; rewiring b1 onto the free Lg1
        # clears both mismatches in a single pass.
        inst = SmpInstance.build(
            ["g1", "g2"],
            ["b1", "b2"],
            {"g1": ["b1", "b2"], "g2": ["b1", "b2"]},
            {"b1": ["g1", "g2"]},
        )
        star = build_star_graph(inst)
        m = star_matching(star, [("g1", "Lb1"), ("Lg2", "b1"), ("g2", "b2")])
        assert find_mismatches(star, m).count == 2
        stats = {}
        repaired = repair_mismatches(star, m, stats)
        assert find_mismatches(star, repaired).count == 0
        assert len(repaired.pairs) == 3
        assert stats["iterations"] <= stats["initial_mismatches"] == 2
        assignment = extract_assignment(star, repaired)
        assert assignment_violations(inst, assignment) == []

    def test_crossed_mutual_square(self, i3):
        star = build_star_graph(i3)
        m = star_matching(
            star, [("Lg1", "b1"), ("Lg2", "b2"), ("g1", "Lb2"), ("g2", "Lb1")]
        )
        repaired = repair_mismatches(star, m)
        assert find_mismatches(star, repaired).count == 0
        assert assignment_violations(i3, extract_assignment(star, repaired)) == []

    def test_boy_side_start(self):
        # Both girls are direct-matched, so the only mismatched edge is
        # (Lg1, b1) and the mirrored chain orientation must run.
        inst = SmpInstance.build(
            ["g1", "g2"],
            ["b1", "b2", "b3"],
            {"g1": ["b1", "b2"], "g2": ["b3"]},
            {"b1": ["g1"]},
        )
        star = build_star_graph(inst)
        m = star_matching(star, [("g1", "b2"), ("g2", "b3"), ("Lg1", "b1")])
        report = find_mismatches(star, m)
        assert report.count == 1
        assert report.mismatched[0].present == "boy-to-girl-list"
        repaired = repair_mismatches(star, m)
        assert repaired == star_matching(
            star, [("g1", "Lb1"), ("g2", "b3"), ("Lg1", "b1")]
        )
        assert extract_assignment(star, repaired) == Assignment(
            (("g1", "b1"), ("g2", "b3"))
        )

    def test_rejects_undersized_matching(self, i3):
        star = build_star_graph(i3)
        m = star_matching(star, [("g1", "Lb1"), ("Lg1", "b1")])
        with pytest.raises(ValueError, match="size"):
            repair_mismatches(star, m)

    def test_rejects_non_edge(self, i1):
        star = build_star_graph(i1)
        with pytest.raises(ValueError, match="not an edge"):
            repair_mismatches(star, star_matching(star, [("g1", "b1"), ("g2", "b2")]))


class TestExtractAssignment:
    def test_i1_direct_edges(self, i1):
        star = build_star_graph(i1)
        m = star_matching(star, [("g1", "b2"), ("g2", "b1")])
        assert extract_assignment(star, m) == Assignment((("g1", "b2"), ("g2", "b1")))

    def test_empty(self):
        inst = SmpInstance.build(["g1"], ["b1"], {}, {})
        star = build_star_graph(inst)
        assert extract_assignment(star, Matching(())) == Assignment(())

    def test_rejects_mismatched_input(self, i3):
        star = build_star_graph(i3)
        m = star_matching(
            star, [("g1", "Lb1"), ("g2", "Lb2"), ("Lg2", "b1"), ("Lg1", "b2")]
        )
        with pytest.raises(ValueError, match="mismatched"):
            extract_assignment(star, m)


class TestSolveViaSubproblems:
    def test_agrees_on_i1(self, i1):
        assert solve_via_subproblems(i1) == solve(i1)

    def test_unsolvable_reports_girls_side(self, two_girls_one_boy):
        result = solve_via_subproblems(two_girls_one_boy)
        assert isinstance(result, Unsolvable) and result.side == "girls"

    def test_i3_solvable_and_valid(self, i3):
        result = solve_via_subproblems(i3)
        assert isinstance(result, Assignment)
        assert assignment_violations(i3, result) == []

    @given(smp_instances())
    @settings(deadline=None, max_examples=300)
    def test_agreement_with_single_run_solver(self, inst):
        a = solve(inst)
        b = solve_via_subproblems(inst)
        assert isinstance(a, Assignment) == isinstance(b, Assignment)
        if isinstance(a, Assignment):
            assert assignment_violations(inst, a) == []
            assert assignment_violations(inst, b) == []


class TestSolverAgainstOracle:
    @given(smp_instances())
    @settings(deadline=None, max_examples=400)
    def test_solvability_matches_backtracking(self, inst):
        result = solve(inst)
        expected = oracle_solve(inst)
        assert isinstance(result, Assignment) == (expected is not None)
        if isinstance(result, Assignment):
            assert assignment_violations(inst, result) == []
        else:
            assert unsolvable_violator(inst) is not None

    def test_random_repair_metrics(self):
        rng = np.random.default_rng(11)
        exercised = 0
        for _ in range(400):
            inst = random_instance(rng)
            star = build_star_graph(inst)
            m = max_matching(star.graph)
            if len(m) != star.target_size:
                continue
            stats = {}
            repaired = repair_mismatches(star, m, stats)
            assert stats["iterations"] <= stats["initial_mismatches"]
            assert len(repaired.pairs) == star.target_size
            assert find_mismatches(star, repaired).count == 0
            if stats["initial_mismatches"]:
                exercised += 1
        assert exercised > 20

    def test_repair_survives_adversarial_matchings(self):
        # Dense mutual lists plus shuffled tie-breaking produce maximum
        # matchings with long mismatch chains that the canonical matcher
        # rarely emits.
        rng = np.random.default_rng(77)
        exercised = 0
        for _ in range(600):
            n = int(rng.integers(2, 8))
            girls = tuple(f"g{i}" for i in range(n))
            boys = tuple(f"b{j}" for j in range(n))
            girl_lists = {}
            boy_lists = {}
            for g in girls:
                k = int(rng.integers(max(1, n - 2), n + 1))
                girl_lists[g] = tuple(
                    boys[j] for j in sorted(rng.choice(n, size=k, replace=False))
                )
            for b in boys:
                k = int(rng.integers(max(1, n - 2), n + 1))
                boy_lists[b] = tuple(
                    girls[i] for i in sorted(rng.choice(n, size=k, replace=False))
                )
            inst = SmpInstance.build(girls, boys, girl_lists, boy_lists)
            star = build_star_graph(inst)
            rows = []
            for row in star.graph.adjacency:
                row = list(row)
                rng.shuffle(row)
                rows.append(tuple(row))
            shuffled = BipartiteGraph(
                star.graph.left_count, star.graph.right_count, tuple(rows)
            )
            m = max_matching(shuffled)
            if len(m) != star.target_size:
                continue
            stats = {}
            repaired = repair_mismatches(star, m, stats)
            assert stats["iterations"] <= stats["initial_mismatches"]
            assert len(repaired.pairs) == star.target_size
            assert find_mismatches(star, repaired).count == 0
            assignment = extract_assignment(star, repaired)
            assert assignment_violations(inst, assignment) == []
            if stats["initial_mismatches"]:
                exercised += 1
        assert exercised > 100


class TestTriangleFixture:
    def test_odd_mutual_cycle_defeats_repair(self):
        """Three people who all list each other, with no girl/boy split.

        Duplicating each member into a core node and a list node gives a
        graph whose maximum matching covers all three cores (a 3-cycle
        through the list nodes), yet no matching does so mismatch-free:
        a mutual pairing couples members two at a time, which is impossible
        for an odd set.  The repair argument is therefore specific to the
        two-sided setting and is not offered for one-sided ("anyone can
        marry anyone") instances.
        """
        # Core u_i on the left, list node L_{u_j} on the right; an edge
        # (u_i, L_{u_j}) exists iff i != j (everyone lists everyone else).
        rows = tuple(tuple(j for j in range(3) if j != i) for i in range(3))
        graph = BipartiteGraph(3, 3, rows)
        assert len(max_matching(graph)) == 3
        all_edges = [(i, j) for i in range(3) for j in rows[i]]
        mismatch_free_full = []
        for triple in combinations(all_edges, 3):
            lefts = {u for u, _ in triple}
            rights = {v for _, v in triple}
            if len(lefts) != 3 or len(rights) != 3:
                continue
            # Mutual means u holds L_v exactly when v holds L_u.
            pairing = dict(triple)
            if all(pairing[pairing[u]] == u for u in pairing):
                mismatch_free_full.append(triple)
        assert mismatch_free_full == []
