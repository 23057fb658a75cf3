"""Dual cells, the induced cell structure, its cellular chain complex, the
identification with the dual of cochains, and induced maps of cell
structures."""

import pytest

from rkdual.linalg import homology
from rkdual.rings import ZZ
from rkdual.rkcore import RKMap, delta_complexes
from rkdual.simplicial import (InputError, SimplicialComplex,
                               barycentric_subdivision, control_map,
                               kspace_identity, validate_kspace)
from rkdual.ballcomplex import (BallComplex, OrientationPair,
                                cellular_chain_complex, cellular_iso,
                                dual_cell, dual_cone, induced_cell_map,
                                induced_chain_map, verify_boundary_display,
                                verify_cellular_homology)
from rkdual.duality import Dualizer
from rkdual.rkcore import dual_star_map


def build(*maximal):
    return SimplicialComplex.build(None, [list(s) for s in maximal])


# --------------------------------------------------------------- dual cells

def test_dual_cone_of_a_vertex_in_the_edge():
    derived = barycentric_subdivision(build("ab"))
    got = set(dual_cone(("a",), derived))
    assert got == {(("a",),), (("a", "b"),), (("a", "b"), ("a",))}


def test_dual_cell_on_the_diagonal_is_one_vertex():
    derived = barycentric_subdivision(build("abc"))
    for tau in [("a",), ("a", "b"), ("a", "b", "c")]:
        assert dual_cell(tau, tau, derived) == ((tau,),)


def test_dual_cell_empty_when_not_a_face():
    derived = barycentric_subdivision(build("ab", "bc"))
    assert dual_cell(("a", "b"), ("b", "c"), derived) == ()


# --------------------------------------------------------------- structure

def test_cell_census_identity_edge(edge_ks):
    ball = BallComplex(edge_ks)
    assert ball.census() == {0: 3, 1: 2}
    assert sorted(c.name for c in ball.cells.values()) == [
        "(a.b|a)", "(a.b|a.b)", "(a.b|b)", "(a|a)", "(b|b)"]
    assert not ball.check()


def test_cell_census_identity_triangle(id2_ks):
    ball = BallComplex(id2_ks)
    assert ball.census() == {0: 7, 1: 9, 2: 3}
    assert ball.euler_characteristic() == 1
    assert not ball.check()


def test_cell_census_hexagon(hex_ks):
    ball = BallComplex(hex_ks)
    assert ball.census() == {0: 12, 1: 12}
    assert len(ball.cells) == 24
    assert ball.euler_characteristic() == 0
    assert not ball.check()


def test_cell_census_collapsed_triangle(tri_ks):
    ball = BallComplex(tri_ks)
    assert not ball.check()
    # the fiber over the edge keeps one 2-cell per vertex of the edge image
    assert ball.census()[2] == 2


def test_dimension_formula_and_interior_partition(corpus):
    for name, ks in corpus.items():
        ball = BallComplex(ks)
        for (T, sigma), cell in ball.cells.items():
            assert cell.dim == (len(T) - 1) - (len(sigma) - 1)
            assert cell.top_dim_reached()
        interiors = {}
        for cell in ball.cells.values():
            for c in cell.interior:
                assert c not in interiors
                interiors[c] = cell
        assert len(interiors) == sum(
            1 for _ in ball.derived.prime.all_simplices())


def test_identity_control_zero_cells_biject_with_simplices(id2_ks):
    ball = BallComplex(id2_ks)
    zero_cells = [c for c in ball.cells.values() if c.dim == 0]
    assert len(zero_cells) == sum(1 for _ in id2_ks.K.all_simplices())
    for cell in zero_cells:
        assert cell.T == cell.sigma


# --------------------------------------------------------------- orientation

def test_standard_orientation_satisfies_the_identity(corpus):
    for ks in corpus.values():
        OrientationPair.standard(ks).validate()


def test_lexicographic_orientation_fails_on_identity_edge(edge_ks):
    with pytest.raises(InputError):
        OrientationPair.lexicographic(edge_ks).validate()


def test_standard_orientation_twists_odd_fibers(edge_ks):
    orient = OrientationPair.standard(edge_ks)
    assert orient.bx[("a", "b")] == -1
    assert orient.bx[("a",)] == 1


# --------------------------------------------------------------- cell chains

def test_cellular_point(corpus):
    orient = OrientationPair.standard(corpus["pt"])
    cx = cellular_chain_complex(corpus["pt"], ZZ, orient)
    assert {q: cx.rk.rank(q) for q in cx.rk.degrees()} == {0: 1}


def test_cellular_hexagon_ranks_and_homology(hex_ks):
    orient = OrientationPair.standard(hex_ks)
    cx = cellular_chain_complex(hex_ks, ZZ, orient)
    assert {q: cx.rk.rank(q) for q in cx.rk.degrees()} == {0: 12, 1: 12}
    ok, cell_h, _ = verify_cellular_homology(hex_ks, cx)
    assert ok
    assert (cell_h[0].betti, cell_h[1].betti) == (1, 1)
    assert cell_h[0].torsion == () and cell_h[1].torsion == ()


def test_cellular_identity_triangle_ranks_and_homology(id2_ks):
    orient = OrientationPair.standard(id2_ks)
    cx = cellular_chain_complex(id2_ks, ZZ, orient)
    assert {q: cx.rk.rank(q) for q in cx.rk.degrees()} == {0: 7, 1: 9, 2: 3}
    ok, cell_h, _ = verify_cellular_homology(id2_ks, cx)
    assert ok
    assert cell_h[0].betti == 1
    assert all(cell_h[q].is_trivial() for q in cell_h if q != 0)


def test_cellular_boundary_display_and_units(corpus):
    for name, ks in corpus.items():
        orient = OrientationPair.standard(ks)
        cx = cellular_chain_complex(ks, ZZ, orient, check_display=False)
        assert not verify_boundary_display(ks, cx), name
        cx.rk.validate()


def test_cellular_boundary_of_a_half_edge(edge_ks):
    orient = OrientationPair.standard(edge_ks)
    cx = cellular_chain_complex(edge_ks, ZZ, orient)
    rk = cx.rk
    j = rk.index_of(1, "<a.b>⊗<a>*")
    col = {rk.gens_at(0)[i].name: v
           for (i, jj), v in rk.d(1).entries() if jj == j}
    # the boundary hits the vertex cell and the barycenter cell, units only
    assert set(col) == {"<a>⊗<a>*", "<a.b>⊗<a.b>*"}
    assert sorted(col.values()) == [-1, 1]


# --------------------------------------------------------------- the iso

def test_identification_on_a_point_is_a_signed_identity(corpus):
    orient = OrientationPair.standard(corpus["pt"])
    iso = cellular_iso(corpus["pt"], ZZ, orient)
    assert iso.map.component(0).to_rows() in ([[1]], [[-1]])


def test_identification_is_bijective_chain_map_on_corpus(corpus):
    for name, ks in corpus.items():
        orient = OrientationPair.standard(ks)
        iso = cellular_iso(ks, ZZ, orient)
        iso.map.validate()
        assert iso.map.is_bijection_on_bases(), name


def test_dual_homology_matches_base_homology(corpus):
    # ranks through the duality functor recover the homology of X
    expected = {
        "hex": {0: 1, 1: 1},
        "id2": {0: 1},
        "circ3": {0: 1, 1: 1},
    }
    for name, want in expected.items():
        ks = corpus[name]
        dc = delta_complexes(ks, ZZ)
        dz = Dualizer(ks.K, ZZ)
        tc = dz.object(dc.dstar_x).tc
        got = {q: h.betti for q, h in homology(tc.underlying()).items()
               if not h.is_trivial()}
        assert got == want, name
        assert all(h.torsion == () for h in homology(tc.underlying()).values())


# --------------------------------------------------------------- naturality

def test_identity_map_induces_the_identity(hex_ks):
    orient = OrientationPair.standard(hex_ks)
    fid = induced_cell_map(kspace_identity(hex_ks), ZZ, orient, orient)
    cx = cellular_chain_complex(hex_ks, ZZ, orient, check_display=False)
    assert fid == RKMap.identity(cx.rk)


def test_hexagon_covering_sends_one_cells_to_one_cells(hex_ks):
    fmap = control_map(hex_ks)
    or_src = OrientationPair.standard(hex_ks)
    or_tgt = OrientationPair.standard(fmap.tgt)
    fk = induced_cell_map(fmap, ZZ, or_src, or_tgt)
    fk.validate()
    for q in fk.src.degrees():
        mat = fk.component(q)
        cols = {}
        for (i, j), v in mat.entries():
            cols.setdefault(j, []).append(v)
            assert v in (1, -1)
        assert len(cols) == fk.src.rank(q)     # nothing degenerates


def test_collapsing_map_kills_degenerate_cells(tri_ks):
    # collapse the solid triangle onto its image edge over the same control
    fmap_src = tri_ks
    target = validate_kspace(tri_ks.K, tri_ks.K,
                             {v: v for v in tri_ks.K.vertices})
    from rkdual.simplicial import KSpaceMap, SimplicialMap
    f = KSpaceMap(fmap_src, target,
                  SimplicialMap(tri_ks.X, tri_ks.K, tri_ks.pi.mapping))
    or_src = OrientationPair.standard(fmap_src)
    or_tgt = OrientationPair.standard(target)
    fk = induced_cell_map(f, ZZ, or_src, or_tgt)
    fk.validate()
    # the triangle itself degenerates, so its cells map to zero
    dead = [j for j, g in enumerate(fk.src.gens_at(2))]
    for q in fk.src.degrees():
        hit = set(j for (_, j), _ in fk.component(q).entries())
        for j, g in enumerate(fk.src.gens_at(q)):
            T = g.data[1].data[1]
            if not f.f.is_injective_on(T):
                assert j not in hit
            else:
                assert j in hit


def test_naturality_square_for_control_and_identity(corpus):
    for name in ("hex", "edge", "tri"):
        ks = corpus[name]
        or_src = OrientationPair.standard(ks)
        fmap = control_map(ks)
        or_tgt = OrientationPair.standard(fmap.tgt)
        iso_x = cellular_iso(ks, ZZ, or_src)
        iso_y = cellular_iso(fmap.tgt, ZZ, or_tgt)
        fk = induced_cell_map(fmap, ZZ, or_src, or_tgt)
        pullback = dual_star_map(induced_chain_map(fmap, ZZ, or_src, or_tgt))
        lhs = iso_y.map.compose(iso_x.dualizer.map(pullback))
        rhs = fk.compose(iso_x.map)
        assert lhs == rhs, name
