from fractions import Fraction

import pytest

import coarse


def test_z2_golden_prefix():
    host = coarse.cayley_ball("zpower", 8, dim=2)
    curve = coarse.exact_isoperimetric_profile(host, 6, root=0)
    assert [p[1] for p in curve] == [Fraction(1, 4), Fraction(1, 3), Fraction(3, 8),
                                     Fraction(1, 2), Fraction(1, 2), Fraction(3, 5)]
    assert all(p[2] == "exact" for p in curve)


def test_named_cuts():
    assert coarse.cut_exact(coarse.path_graph(5))[0] == 1
    removed, separator, comps = coarse.cut_exact(coarse.cycle_graph(8))
    assert removed == 2 and separator == [0, 3]
    assert coarse.cut_spectral(coarse.grid_graph(4, 4))[0] >= coarse.cut_exact(coarse.grid_graph(4, 4))[0]


def test_graph_from_edges():
    g = coarse.Graph(3, [(0, 1), (1, 2)])
    assert g.vertex_count == 3 and g.edge_count == 2
    with pytest.raises(coarse.InputError):
        coarse.Graph(2, [(0, 0)])


def test_growth_and_pipeline():
    assert coarse.growth("lamplighter", 1)[:2] == [1, 4]
    r = coarse.theorem_pipeline("zpower", dim=3, targets=[(3, 1)], growth_radius=10, profile_radius=4)
    assert r["targets"][(3, 1)] == "admissible"


def test_embedding_and_fit():
    r = coarse.horospherical_embedding(2, 0, 16)
    assert r["lipschitz"] == 1 and r["multiplicity"] == 1
    assert coarse.fit_power([4, 16, 64, 256], [2, 4, 8, 16]) == pytest.approx(0.5)


def test_budget_error():
    with pytest.raises(coarse.ResourceError):
        coarse.cut_exact(coarse.grid_graph(6, 6), max_vertices=10)
