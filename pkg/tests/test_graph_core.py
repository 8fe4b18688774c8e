import pytest

from raagvcd.graph_core import (
    DefiningGraph,
    GraphError,
    ParseError,
    domination_order,
    gamma_zero,
    parse_graph,
    pieces,
    validate,
)
from raagvcd.corpus import eligible_trees, cycle_tree_fixtures


def _simple_cycles_edge_sets(g: DefiningGraph) -> list[frozenset]:
    """Edge sets of all simple cycles, by DFS from each start node."""
    cycles = set()

    def walk(path, used_edges):
        head = path[-1]
        for nbr in sorted(g.adjacency[head]):
            e = frozenset((head, nbr))
            if e in used_edges:
                continue
            if nbr == path[0] and len(path) >= 3:
                cycles.add(frozenset(used_edges | {e}))
            elif nbr not in path:
                walk(path + [nbr], used_edges | {e})

    for start in g.nodes:
        walk([start], frozenset())
    return list(cycles)


def _piece_partition_by_cycles(g: DefiningGraph) -> set[frozenset]:
    """Union-find closure of 'share a simple cycle'; bridges stay single."""
    parent = {e: e for e in g.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for cycle in _simple_cycles_edge_sets(g):
        cycle = sorted(cycle, key=sorted)
        for other in cycle[1:]:
            parent[find(other)] = find(cycle[0])
    groups = {}
    for e in g.edges:
        groups.setdefault(find(e), set()).add(e)
    return {frozenset(group) for group in groups.values()}


class TestParse:
    def test_path(self):
        g = parse_graph("edge a b\nedge b c")
        assert g.nodes == ("a", "b", "c")
        assert g.num_edges == 2

    def test_self_loop_reports_line(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("edge a a")
        assert exc.value.line == 1

    def test_duplicate_edge(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("edge a b\nedge b a")
        assert exc.value.line == 2

    def test_unknown_directive(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("edge a b\nvertex c")
        assert exc.value.line == 2

    def test_bad_name(self):
        with pytest.raises(ParseError):
            parse_graph("edge a b-c")

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_graph("# nothing here\n")

    def test_node_predeclaration_and_comments(self):
        g = parse_graph("# fixture\nnode z\nedge a b\n\nedge b z\n")
        assert g.nodes == ("z", "a", "b")

    def test_c5l_fixture_counts(self):
        text = "\n".join(
            f"edge v{i} v{i % 5 + 1}" for i in range(1, 6)
        ) + "\nedge v1 u"
        g = parse_graph(text)
        assert g.num_nodes == 6
        assert g.num_edges == 6


class TestValidate:
    def test_triangle(self):
        g = DefiningGraph.from_edges([("a", "b"), ("b", "c"), ("c", "a")])
        report = validate(g)
        assert not report.triangle_free
        assert not report.eligible

    def test_star(self, g_star):
        report = validate(g_star)
        assert report.is_star
        assert not report.eligible

    def test_single_edge_is_star(self):
        report = validate(DefiningGraph.from_edges([("a", "b")]))
        assert report.is_star

    def test_p5(self, g_p5):
        report = validate(g_p5)
        assert report.eligible
        assert report.square_free

    def test_square_detected(self, g_square):
        report = validate(g_square)
        assert report.eligible
        assert not report.square_free

    def test_disconnected(self):
        g = DefiningGraph.from_edges([("a", "b"), ("c", "d")])
        assert not validate(g).is_connected
        assert not validate(g).eligible


class TestDomination:
    def test_square_classes(self, g_square):
        order = domination_order(g_square)
        assert set(order.classes) == {frozenset("ac"), frozenset("bd")}
        assert set(order.maximal_classes) == set(order.classes)

    def test_p5(self, g_p5):
        order = domination_order(g_p5)
        assert order.leq("a", "c")
        assert order.leq("e", "c")
        assert not order.leq("c", "a")
        assert order.maximal_nodes() == frozenset("bcd")
        assert all(len(cls) == 1 for cls in order.classes)

    def test_leaf_dominated_by_common_neighbors(self, g_c5l):
        order = domination_order(g_c5l)
        # lk(u) = {v1}; u <= w exactly when w is adjacent to v1
        for w in ("v2", "v5"):
            assert order.leq("u", w)
        assert not order.leq("u", "v3")

    def test_functorial_under_renaming(self, g_c5l):
        mapping = {n: f"node_{n}" for n in g_c5l.nodes}
        renamed = g_c5l.renamed(mapping)
        order = domination_order(g_c5l)
        order2 = domination_order(renamed)
        relabeled = {frozenset(mapping[v] for v in cls) for cls in order.classes}
        assert relabeled == set(order2.classes)
        relabeled_max = {
            frozenset(mapping[v] for v in cls) for cls in order.maximal_classes
        }
        assert relabeled_max == set(order2.maximal_classes)


class TestCoreSubgraph:
    def test_p5(self, g_p5):
        core = gamma_zero(g_p5)
        assert core.nodes == frozenset("bcd")
        assert core.edges == frozenset({frozenset("bc"), frozenset("cd")})
        assert core.unique_maximal == frozenset("bcd")
        assert core.pruned_leaves
        assert core.spans_connected

    def test_c5l(self, g_c5l):
        core = gamma_zero(g_c5l)
        assert core.nodes == frozenset({"v1", "v2", "v3", "v4", "v5"})
        assert core.unique_maximal == core.nodes
        assert core.pruned_leaves

    def test_square(self, g_square):
        core = gamma_zero(g_square)
        assert core.nodes == frozenset("ab")
        assert core.edges == frozenset({frozenset("ab")})
        assert core.unique_maximal == frozenset()
        assert not core.pruned_leaves

    def test_tie_break_override(self, g_square):
        core = gamma_zero(g_square, tie_break=max)
        assert core.nodes == frozenset("cd")

    def test_core_never_contains_leaves(self):
        for g in eligible_trees(7):
            core = gamma_zero(g)
            assert not (core.nodes & g.leaves)

    def test_leaf_neighbor_unique_maximal(self):
        for g in list(eligible_trees(7)) + cycle_tree_fixtures((5,))[:10]:
            core = gamma_zero(g)
            for u in g.leaves:
                (nbr,) = g.link(u)
                assert nbr in core.unique_maximal


class TestPieces:
    def test_p5(self, g_p5):
        dec = pieces(g_p5)
        assert dec.count == 4
        assert all(len(p) == 1 for p in dec.pieces)
        assert dec.delta_c["c"] == 2
        assert {"b", "c", "d"} <= set(dec.hubs)

    def test_c5l(self, g_c5l):
        dec = pieces(g_c5l)
        assert dec.count == 2
        sizes = sorted(len(p) for p in dec.pieces)
        assert sizes == [1, 5]
        assert "v1" not in dec.hubs
        assert dec.delta_c["v1"] == 2

    def test_square_is_single_piece(self, g_square):
        dec = pieces(g_square)
        assert dec.count == 1
        assert dec.hubs == frozenset("abcd")

    def test_partition_and_overlap_on_corpus(self):
        graphs = list(eligible_trees(7)) + cycle_tree_fixtures((5, 6))[:40]
        for g in graphs:
            dec = pieces(g)
            seen = set()
            for p in dec.pieces:
                assert not (seen & p)
                seen |= p
            assert seen == g.edges
            node_sets = [frozenset(v for e in p for v in e) for p in dec.pieces]
            for i in range(len(node_sets)):
                for j in range(i + 1, len(node_sets)):
                    assert len(node_sets[i] & node_sets[j]) <= 1

    def test_excess_identity_on_corpus(self):
        graphs = list(eligible_trees(7)) + cycle_tree_fixtures((5,))[:40]
        for g in graphs:
            dec = pieces(g)
            core = gamma_zero(g)
            excess = sum(dec.delta_c[v] - 1 for v in core.nodes)
            assert excess == dec.count - 1

    def test_tree_interior_nodes_are_hubs(self):
        for g in eligible_trees(7):
            dec = pieces(g)
            assert dec.count == g.num_edges
            for v in g.nodes:
                if g.degree(v) >= 2:
                    assert v in dec.hubs

    def test_pieces_against_cycle_sharing_oracle(self):
        # Two edges belong to the same piece exactly when some simple cycle
        # contains both (or they are equal); brute-force the cycles.
        graphs = list(eligible_trees(6)) + cycle_tree_fixtures((5,))[:12]
        graphs.append(
            DefiningGraph.from_edges(
                [("a0", "a1"), ("a1", "a2"), ("a2", "a3"), ("a3", "a4"),
                 ("a4", "a0"), ("a0", "m"), ("m", "b0"), ("b0", "b1"),
                 ("b1", "b2"), ("b2", "b3"), ("b3", "b4"), ("b4", "b0")]
            )
        )
        for g in graphs:
            oracle = _piece_partition_by_cycles(g)
            dec = pieces(g)
            assert set(dec.pieces) == oracle

    def test_pruned_leaves_biconditional(self, g_square, g_p5, g_c5l):
        graphs = [g_square, g_p5, g_c5l] + list(eligible_trees(6))
        for g in graphs:
            core = gamma_zero(g)
            non_leaves = frozenset(g.nodes) - g.leaves
            assert core.pruned_leaves == (non_leaves <= core.unique_maximal)


class TestGraphValue:
    def test_rejects_duplicate_nodes(self):
        with pytest.raises(GraphError):
            DefiningGraph(("a", "a"), frozenset())

    def test_rejects_unknown_edge_node(self):
        with pytest.raises(GraphError):
            DefiningGraph(("a",), frozenset({frozenset(("a", "b"))}))

    def test_components_without(self, g_p5):
        comps = g_p5.components(without="c")
        assert set(comps) == {frozenset("ab"), frozenset("de")}
