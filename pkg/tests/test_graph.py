import pytest

from latticestick.arcs import presentation
from latticestick.errors import NoValidRoot, UnlabeledEndpoint
from latticestick.fixtures import CHAIN, DEMOS, SPLIT_PAIR
from latticestick.graph import (
    ComponentClass,
    ComponentSpec,
    CutAttachment,
    SpatialGraphSpec,
    build_cut_tree,
    census,
    classify_component,
    derive_edges,
    validate_spec,
)
from latticestick.io import spec_from_document


def spec_of(doc):
    return spec_from_document(doc)


def lone(pres_pairs, labels, comp_id="c"):
    return SpatialGraphSpec((ComponentSpec(comp_id, presentation(pres_pairs, labels)),))


U2 = lone([(1, 2), (1, 2)], {1: "v"}, "u")
TH3 = lone([(1, 2)] * 3, {1: "v1", 2: "v2"}, "th")


class TestDeriveEdges:
    def test_knot_loop(self):
        edges = derive_edges(U2.components[0])
        assert len(edges) == 1
        assert edges[0].is_loop and edges[0].pages in ((1, 2), (2, 1))

    def test_theta_three_edges(self):
        edges = derive_edges(TH3.components[0])
        assert len(edges) == 3
        assert all(not e.is_loop and len(e.pages) == 1 for e in edges)

    def test_unlabeled_high_degree_rejected(self):
        comp = lone([(1, 2), (1, 2), (1, 2)], {1: "v"}).components[0]
        with pytest.raises(UnlabeledEndpoint):
            derive_edges(comp)


class TestClassify:
    def test_knot(self):
        assert classify_component(U2, U2.components[0]) is ComponentClass.KNOT

    def test_theta(self):
        assert classify_component(TH3, TH3.components[0]) is ComponentClass.THETA

    def test_arc(self):
        spec = spec_of(CHAIN)
        assert classify_component(spec, spec.component("mid")) is ComponentClass.ARC

    def test_attached_loop_is_bouquet_not_knot(self):
        spec = spec_of(DEMOS["theta-composite"])
        assert classify_component(spec, spec.component("loop")) is ComponentClass.BOUQUET

    def test_bouquet(self):
        spec = spec_of(DEMOS["bouquet3"])
        assert classify_component(spec, spec.components[0]) is ComponentClass.BOUQUET


class TestValidateSpec:
    def test_demos_valid(self):
        for name, doc in DEMOS.items():
            assert validate_spec(spec_of(doc)) == [], name
        assert validate_spec(spec_of(CHAIN)) == []
        assert validate_spec(spec_of(SPLIT_PAIR)) == []

    def test_degree_out_of_range(self):
        # seven loop-ends at one vertex
        bad = lone(
            [(1, 2), (1, 2), (1, 3), (1, 3), (1, 4), (1, 4), (1, 5), (1, 5)],
            {1: "v", 5: "w"},
        )
        problems = validate_spec(bad)
        assert any("degree 8 out of range" in p for p in problems)

    def test_lone_degree2_knot_vertex_ok(self):
        assert validate_spec(U2) == []

    def test_attached_degree2_rejected(self):
        two_arcs = SpatialGraphSpec(
            (
                ComponentSpec("a", presentation([(1, 2)], {1: "x", 2: "y"})),
                ComponentSpec("b", presentation([(1, 2)], {1: "y", 2: "z"})),
            ),
            (CutAttachment("a", "b", "y"),),
        )
        problems = validate_spec(two_arcs)
        assert any("out of range" in p for p in problems)

    def test_siblings_sharing_cut_vertex(self):
        loop = [(1, 2), (1, 2)]
        spec = SpatialGraphSpec(
            (
                ComponentSpec("b0", presentation(loop * 1 + [(1, 3), (1, 3)], {1: "v"})),
                ComponentSpec("b1", presentation(loop, {1: "v"})),
                ComponentSpec("b2", presentation(loop, {1: "v"})),
            ),
            (CutAttachment("b0", "b1", "v"), CutAttachment("b0", "b2", "v")),
        )
        problems = validate_spec(spec)
        assert any("share cut vertex" in p for p in problems)

    def test_shared_label_needs_attachment(self):
        spec = SpatialGraphSpec(
            (
                ComponentSpec("a", presentation([(1, 2)] * 3, {1: "v1", 2: "v2"})),
                ComponentSpec("b", presentation([(1, 2)] * 3, {1: "v1", 2: "v3"})),
            )
        )
        problems = validate_spec(spec)
        assert any("without attachments" in p for p in problems)

    def test_attachment_cycle_rejected(self):
        spec = SpatialGraphSpec(
            (
                ComponentSpec("a", presentation([(1, 2)] * 3, {1: "v1", 2: "v2"})),
                ComponentSpec("b", presentation([(1, 2)] * 3, {1: "v1", 2: "v2"})),
            ),
            (CutAttachment("a", "b", "v1"), CutAttachment("b", "a", "v2")),
        )
        assert validate_spec(spec)


class TestCutTree:
    def test_composite_root(self):
        spec = spec_of(DEMOS["theta-composite"])
        tree = build_cut_tree(spec)
        assert tree.roots == ("th",)
        assert tree.parent["loop"] == ("th", "v2")

    def test_chain_depth_first(self):
        spec = spec_of(CHAIN)
        tree = build_cut_tree(spec)
        assert tree.order == ("th1", "mid", "th2")
        assert tree.parent["mid"][0] == "th1"
        for branch, (stem, _) in tree.parent.items():
            assert tree.order.index(stem) < tree.order.index(branch)

    def test_forest_two_roots(self):
        spec = spec_of(SPLIT_PAIR)
        tree = build_cut_tree(spec)
        assert len(tree.roots) == 2

    def test_arc_root_rerooted(self):
        # arc listed first; the theta must still become the root
        spec = SpatialGraphSpec(
            (
                ComponentSpec("a", presentation([(1, 2)], {1: "v2", 2: "v3"})),
                ComponentSpec("th", presentation([(1, 2)] * 3, {1: "v1", 2: "v2"})),
                ComponentSpec("b", presentation([(1, 2), (1, 2)], {1: "v3"})),
            ),
            (CutAttachment("a", "th", "v2"), CutAttachment("a", "b", "v3")),
        )
        tree = build_cut_tree(spec)
        assert tree.roots == ("th",)
        assert tree.parent["a"] == ("th", "v2")
        assert tree.parent["b"] == ("a", "v3")

    def test_all_arcs_rejected(self):
        spec = SpatialGraphSpec(
            (ComponentSpec("a", presentation([(1, 2)], {1: "x", 2: "y"})),)
        )
        with pytest.raises(NoValidRoot):
            build_cut_tree(spec)


class TestCensus:
    def test_lone_knot(self):
        c = census(U2)
        assert (c.e, c.v, c.s, c.b, c.k) == (1, 1, 1, 1, 1)

    def test_theta(self):
        c = census(TH3)
        assert (c.e, c.v, c.s, c.b, c.k) == (3, 2, 1, 0, 0)

    def test_composite(self):
        c = census(spec_of(DEMOS["theta-composite"]))
        assert (c.e, c.v, c.s, c.b, c.k) == (4, 2, 2, 1, 0)
        assert c.alpha_total == 6
        assert c.degrees["v2"] == 5

    def test_degree_sum_is_twice_edges(self):
        for doc in list(DEMOS.values()) + [CHAIN, SPLIT_PAIR]:
            c = census(spec_of(doc))
            assert sum(c.degrees.values()) == 2 * c.e

    def test_forest_attachment_count(self):
        for doc in list(DEMOS.values()) + [CHAIN, SPLIT_PAIR]:
            spec = spec_of(doc)
            tree = build_cut_tree(spec)
            assert len(spec.attachments) == census(spec).s - len(tree.roots)

    def test_knot_counts_within_bouquets(self):
        for doc in list(DEMOS.values()) + [CHAIN, SPLIT_PAIR]:
            c = census(spec_of(doc))
            assert c.k <= c.b <= c.s
