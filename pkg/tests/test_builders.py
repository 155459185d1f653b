"""Builder outputs: censuses, product counts, gluing errors, transpose."""

import itertools

import pytest

from conftest import closure_class_count
from kfock import builders
from kfock.errors import ConstructionError
from kfock.kgraph import validate


def test_every_builder_output_validates(sv11, sv22_cyclic, cycle32, chain3, f2, f2xf3):
    for g in (sv11, sv22_cyclic, cycle32, chain3, f2, f2xf3):
        assert validate(g, max_grading=6).ok


def test_single_loop_digraph_counts():
    g = builders.from_digraph(builders.cycle_digraph(1))
    for n in range(8):
        assert len(g.paths_of_degree((n,))) == 1


def test_two_edge_chain_digraph_has_six_paths():
    g = builders.from_digraph(builders.chain_digraph(3))
    total = sum(len(g.paths_of_degree((n,))) for n in range(7))
    assert total == 6  # three vertices, two edges, one length-2 path


def test_edgeless_digraph_only_identities():
    g = builders.from_digraph(builders.Digraph(vertices=("u", "v"), edges=()))
    assert len(g.paths_of_degree((0,))) == 2
    assert len(g.paths_of_degree((3,))) == 0


def test_direct_product_counts_factor(f2xf3):
    for m, n in itertools.product(range(3), range(3)):
        assert len(f2xf3.paths_of_degree((m, n))) == 2 ** m * 3 ** n


def test_direct_product_with_edgeless_factor_adds_dead_color():
    g = builders.direct_product([
        builders.from_digraph(builders.bouquet_digraph(2)),
        builders.from_digraph(builders.Digraph(vertices=("w",), edges=())),
    ])
    assert g.k == 2
    assert len(g.paths_of_degree((2, 0))) == 4
    assert len(g.paths_of_degree((0, 1))) == 0


def test_product_of_single_loops_matches_single_vertex(sv11):
    prod = builders.direct_product([
        builders.from_digraph(builders.cycle_digraph(1)),
        builders.from_digraph(builders.cycle_digraph(1)),
    ])
    for n in itertools.product(range(4), range(4)):
        assert len(prod.paths_of_degree(n)) == len(sv11.paths_of_degree(n)) == 1


def _chain_factors():
    a = builders.from_digraph(builders.chain_digraph(3))
    b = builders.relabel_edges(a, lambda eid: eid.replace("a", "b"))
    return a, b


def test_theta_product_builds_ten_path_graph():
    a, b = _chain_factors()
    g = builders.theta_product(a, b, {("a2", "b1"): ("b2", "a1")})
    assert validate(g, 6).ok
    got = {n: len(g.paths_of_degree(n)) for n in
           [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]}
    assert got == {(0, 0): 3, (1, 0): 2, (0, 1): 2, (1, 1): 1, (2, 0): 1, (0, 2): 1}
    assert sum(len(g.paths_of_degree(n, max_grading=6))
               for t in range(7)
               for n in [(i, t - i) for i in range(t + 1)]) == 10
    # matches the dedicated builder
    ch = builders.chain(3)
    assert {e.id for e in g.edges} == {e.id for e in ch.edges}
    assert set(g.squares) == set(ch.squares)


def test_theta_product_rejects_cardinality_mismatch():
    a = builders.from_digraph(builders.Digraph(
        vertices=("u", "v", "w"), edges=(("a1", "u", "v"), ("a2", "v", "w"))))
    # second factor runs the other way: mixed pairs compose in one order only
    b = builders.from_digraph(builders.Digraph(
        vertices=("u", "v", "w"), edges=(("b1", "w", "v"),)))
    with pytest.raises(ConstructionError, match="sizes"):
        builders.theta_product(a, b, {})


def test_theta_product_rejects_endpoint_mismatch():
    a, b = _chain_factors()
    with pytest.raises(ConstructionError):
        builders.theta_product(a, b, {("a2", "b1"): ("b1", "a2")})


def test_theta_product_requires_disjoint_ids():
    a = builders.from_digraph(builders.chain_digraph(3))
    with pytest.raises(ConstructionError, match="disjoint"):
        builders.theta_product(a, a, {})


def test_cycle_rank_shapes(cycle32):
    assert len(cycle32.edges_of_color(1)) == 3
    assert len(cycle32.edges_of_color(2)) == 3
    assert len(cycle32.squares) == 3
    for p, q in itertools.product(range(4), range(4)):
        assert len(cycle32.paths_of_degree((p, q))) == 3


def test_cycle_rank_lattice_one_path_per_source(cycle32):
    for n in [(2, 1), (3, 2)]:
        sources = [p.src for p in cycle32.paths_of_degree(n)]
        assert sorted(sources) == ["x1", "x2", "x3"]


def test_cycle_rank_k1_matches_digraph():
    c = builders.cycle_rank(4, 1)
    d = builders.from_digraph(builders.cycle_digraph(4))
    for n in range(6):
        assert len(c.paths_of_degree((n,))) == len(d.paths_of_degree((n,)))


def test_cycle_theta_is_forced():
    """Gluing a cycle with itself admits exactly one pair bijection."""
    for n in (2, 3, 4):
        a = builders.from_digraph(builders.cycle_digraph(n))
        b = builders.relabel_edges(a, lambda eid: eid.replace("e", "f"))
        cells = {}
        for ea in a.edges:
            for eb in b.edges:
                if ea.src == eb.dst:
                    cells.setdefault((ea.dst, eb.src), []).append((ea.id, eb.id))
        assert all(len(v) == 1 for v in cells.values())
        theta = {}
        for eb in b.edges:
            for ea in a.edges:
                if eb.src == ea.dst:
                    key = next(iter(cells[(eb.dst, ea.src)]))
                    theta[key] = (eb.id, ea.id)
        g = builders.theta_product(a, b, theta)
        assert validate(g, 4).ok
        ref = builders.cycle_rank(n, 2)
        for deg in [(1, 1), (2, 1)]:
            assert len(g.paths_of_degree(deg)) == len(ref.paths_of_degree(deg))


def test_single_vertex_edge_counts():
    g = builders.single_vertex((3, 2), theta=builders.identity_table((3, 2)))
    assert len(g.edges_of_color(1)) == 3
    assert len(g.edges_of_color(2)) == 2


def test_single_vertex_rejects_short_table():
    with pytest.raises(ConstructionError, match="permutation"):
        builders.single_vertex((2, 2), theta={(1, 2): (0, 1, 2)})
    with pytest.raises(ConstructionError, match="missing"):
        builders.single_vertex((2, 2), theta={})


def test_sv11_word_classes_collapse(sv11):
    # mixed words of one degree all collapse to a single class
    for n, m in itertools.product(range(4), range(4)):
        assert closure_class_count(sv11, (n, m)) == 1


def test_transpose_involution(chain3, cycle32):
    for g in (chain3, cycle32):
        gtt = builders.transpose(builders.transpose(g))
        assert {e for e in gtt.edges} == {e for e in g.edges}
        assert set(gtt.squares) == set(g.squares)


def test_transpose_reverses_endpoints(chain3):
    gt = builders.transpose(chain3)
    for e in chain3.edges:
        et = gt.edge(e.id)
        assert (et.src, et.dst) == (e.dst, e.src)
    assert validate(gt, 4).ok


def test_transpose_nc_matches(chain3, cycle32):
    from kfock.structure import nc_edges

    for g in (chain3, cycle32):
        assert nc_edges(builders.transpose(g)) == nc_edges(g)


def test_builtin_registry():
    g = builders.builtin_graph(["single-vertex", "2", "2", "cyclic"])
    assert g.k == 2 and len(g.edges) == 4
    assert builders.builtin_graph(["cycle", "3", "2"]).k == 2
    assert builders.builtin_graph(["product", "f2", "c3"]).k == 2
    with pytest.raises(ConstructionError):
        builders.builtin_graph(["mystery"])
