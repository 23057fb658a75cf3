"""Labeled complexes: duals, evaluation, Hom, assembly, geometric complexes."""

import pytest

from rkdual.linalg import Matrix
from rkdual.rings import ZZ
from rkdual.rkcore import (Generator, RKComplex, check_lemma_clem,
                           delta_chain, delta_complexes, delta_star_k,
                           dual_star, dual_star_map, double_dual, epsilon,
                           hom_rk, is_full, maximal_label_ses,
                           simplex_generator)
from rkdual.simplicial import InputError, SimplicialComplex
from rkdual.ballcomplex import OrientationPair, induced_chain_map
from rkdual.simplicial import control_map

from oracles import count_decreasing_chains


def build(*maximal):
    return SimplicialComplex.build(None, [list(s) for s in maximal])


def point_complex(ring, degrees_and_diffs):
    """A complex over the one-point control complex, for sign tests."""
    K = build("p")
    gens, diff = {}, {}
    for q, n in degrees_and_diffs["ranks"].items():
        gens[q] = tuple(Generator(f"c{q}.{i}", ("p",), ("simplex", ("p",)))
                        for i in range(n))
    for q, rows in degrees_and_diffs.get("diffs", {}).items():
        diff[q] = Matrix.from_rows(ring, rows)
    return RKComplex(ring, K, False, gens, diff)


# ---------------------------------------------------------------- fullness

def test_full_subsets_of_the_edge():
    K = build("ab")
    assert is_full(K, set(K.all_simplices()))
    for sigma in K.all_simplices():
        assert is_full(K, set(K.star(sigma)))
    # two incomparable vertices: the between-sets are empty, so it is full
    assert is_full(K, {("a",), ("b",)})
    # a vertex together with the edge of a triangle is not full
    K2 = build("abc")
    assert not is_full(K2, {("a",), ("a", "b", "c")})


def test_assemble_whole_complex_and_star(edge_ks):
    dx = delta_chain(edge_ks, ZZ)
    whole = dx.restrict(set(edge_ks.K.all_simplices()))
    assert whole.total_rank() == dx.total_rank()
    star = dx.restrict(set(edge_ks.K.star(("a",))))
    assert star.total_rank() == 2          # the vertex a and the edge
    star.validate()


def test_assemble_incomparable_vertices_has_zero_cross_terms(edge_ks):
    dx = delta_chain(edge_ks, ZZ)
    sub = dx.restrict({("a",), ("b",)})
    assert sub.total_rank() == 2
    assert all(sub.d(q).is_zero() for q in sub.degrees())


def test_assemble_rejects_non_full_subsets(id2_ks):
    dx = delta_chain(id2_ks, ZZ)
    with pytest.raises(InputError):
        dx.restrict({("a",), ("a", "b", "c")})


# ---------------------------------------------------------------- dual star

def test_dual_of_unit_differential_picks_up_a_sign():
    C = point_complex(ZZ, {"ranks": {0: 1, 1: 1}, "diffs": {1: [[1]]}})
    C.validate()
    Cs = dual_star(C)
    assert Cs.degrees() == [-1, 0]
    assert Cs.d(0).to_rows() == [[-1]]


def test_dual_of_zero_complex():
    C = point_complex(ZZ, {"ranks": {}})
    assert dual_star(C).total_rank() == 0


def test_double_dual_with_epsilon_recovers_the_complex():
    C = point_complex(ZZ, {"ranks": {0: 2, 1: 1}, "diffs": {1: [[1], [2]]}})
    C.validate()
    eps = epsilon(C)
    eps.validate()
    assert eps.is_bijection_on_bases()
    # conjugating the double dual differential by epsilon gives d back
    dd = double_dual(C)
    for q in C.degrees():
        lhs = eps.component(q - 1) * dd.d(q)
        rhs = C.d(q) * eps.component(q)
        assert lhs == rhs


def test_epsilon_signs():
    C0 = point_complex(ZZ, {"ranks": {0: 1}})
    assert epsilon(C0).component(0).to_rows() == [[1]]
    C1 = point_complex(ZZ, {"ranks": {1: 1}})
    assert epsilon(C1).component(1).to_rows() == [[-1]]


def test_epsilon_is_a_chain_map_on_hexagon_chains(hex_ks):
    dx = delta_chain(hex_ks, ZZ)
    epsilon(dx).validate()


def test_epsilon_naturality_along_the_control_map(hex_ks):
    fmap = control_map(hex_ks)
    or_src = OrientationPair.standard(hex_ks)
    or_tgt = OrientationPair.standard(fmap.tgt)
    push = induced_chain_map(fmap, ZZ, or_src, or_tgt)
    push.validate()
    fss = dual_star_map(dual_star_map(push))
    lhs = push.compose(epsilon(push.src))
    rhs = epsilon(push.tgt).compose(fss)
    assert lhs == rhs


def test_dual_of_a_null_homotopy_is_a_null_homotopy():
    # identity of [Z --1--> Z] is null-homotopic via h = (1)
    C = point_complex(ZZ, {"ranks": {0: 1, 1: 1}, "diffs": {1: [[1]]}})
    h = Matrix.from_rows(ZZ, [[1]])                     # C_0 -> C_1
    assert C.d(1) * h == Matrix.identity(ZZ, 1)
    assert h * C.d(1) == Matrix.identity(ZZ, 1)
    Cs = dual_star(C)
    hs = h.transpose().scale(-1)                        # (C*)_{-1} -> (C*)_0
    # homotopy identity for the dual: d* h* + h* d* = 1 in both degrees
    assert (hs * Cs.d(0)).to_rows() == [[1]]
    assert (Cs.d(0) * hs).to_rows() == [[1]]


# ---------------------------------------------------------------- hom

def test_hom_rank_one_iff_labels_compare():
    K = build("ab")

    def atom(label, q):
        gens = {q: (Generator("g", label, ("simplex", label)),)}
        return RKComplex(ZZ, K, False, gens, {})

    a, b, e = ("a",), ("b",), ("a", "b")
    assert hom_rk(atom(a, 0), atom(e, 0)).total_rank() == 1
    assert hom_rk(atom(a, 0), atom(b, 0)).total_rank() == 0
    assert hom_rk(atom(e, 0), atom(a, 0)).total_rank() == 0


def test_hom_contains_the_identity_as_a_zero_cycle(edge_ks):
    dstark = delta_star_k(edge_ks.K, ZZ)
    H = hom_rk(dstark, dstark)
    H.validate()
    # the identity: sum of the diagonal generators in degree 0
    idx = {g.name: i for i, g in enumerate(H.gens_at(0))}
    vec = {}
    for g in H.gens_at(0):
        _, _, ga, gb = g.data
        if ga.name == gb.name:
            vec[idx[g.name]] = 1
    col = Matrix(ZZ, H.rank(0), 1, {(i, 0): v for i, v in vec.items()})
    assert (H.d(0) * col).is_zero()


def test_hom_census_for_edge_cochains(edge_ks):
    # three label-diagonal generators in degree 0, and the two
    # edge-over-vertex generators sit in degree -1: five in total.
    dstark = delta_star_k(edge_ks.K, ZZ)
    H = hom_rk(dstark, dstark)
    assert {q: H.rank(q) for q in H.degrees()} == {-1: 2, 0: 3}
    assert H.total_rank() == 5


# ---------------------------------------------------------------- deltas

def test_delta_complexes_point(corpus):
    dc = delta_complexes(corpus["pt"], ZZ)
    for cx in (dc.dx, dc.dstar_x):
        assert cx.total_rank() == 1
    assert dc.dx.gens_at(0)[0].label == ("p",)


def test_delta_complexes_hexagon_label_census(hex_ks):
    dc = delta_complexes(hex_ks, ZZ)
    assert {q: dc.dx.rank(q) for q in dc.dx.degrees()} == {0: 6, 1: 6}
    census = {}
    for q in dc.dx.degrees():
        for g in dc.dx.gens_at(q):
            census[g.label] = census.get(g.label, 0) + 1
    for sigma, n in census.items():
        assert n == 2


def test_delta_prime_top_rank_for_identity_triangle(id2_ks):
    dc = delta_complexes(id2_ks, ZZ)
    simplices = list(id2_ks.X.all_simplices())
    assert count_decreasing_chains(simplices, 3) == 6
    assert dc.dx_prime.rank(2) == 6
    assert all(len(g.label) == 1 for g in dc.dx_prime.gens_at(2))


def test_delta_complexes_validate_on_corpus(corpus):
    for ks in corpus.values():
        dc = delta_complexes(ks, ZZ)
        dc.dx.validate()
        dc.dstar_x.validate()
        dc.dx_prime.validate()


# ---------------------------------------------------------------- lemma

def test_contractible_star_for_the_edge():
    K = build("ab")
    rep = check_lemma_clem(K, ("a", "b"), ZZ)
    assert rep.passed
    assert rep.verdicts[("a",)][0] == "acyclic"
    assert rep.verdicts[("a", "b")][0] == "rank one at top degree"


def test_contractible_star_zero_off_the_simplex():
    K = build("ab", "bc")
    rep = check_lemma_clem(K, ("a", "b"), ZZ)
    assert rep.passed
    assert rep.verdicts[("c",)][0] == "zero"
    assert rep.verdicts[("b", "c")][0] == "zero"


def test_contractible_star_requires_maximal():
    K = build("abc")
    with pytest.raises(InputError):
        check_lemma_clem(K, ("a", "b"), ZZ)


def test_contractible_star_triangle_all_labels():
    K = build("abc")
    rep = check_lemma_clem(K, ("a", "b", "c"), ZZ)
    assert rep.passed


# ---------------------------------------------------------------- sequences

def test_star_splitting_is_exact(hex_ks):
    dx = delta_chain(hex_ks, ZZ)
    K = hex_ks.K
    everything = set(K.all_simplices())
    for sigma in K.all_simplices():
        star = set(K.star(sigma))
        rest = everything - star
        assert is_full(K, star) and is_full(K, rest)
        sub = dx.restrict(rest)
        quo = dx.restrict(star)
        assert sub.total_rank() + quo.total_rank() == dx.total_rank()


def test_maximal_label_split_validates(hex_ks):
    dc = delta_complexes(hex_ks, ZZ)
    ses, top = maximal_label_ses(dc.dstar_x)
    assert len(top) == 2                      # an edge of the control complex
    ses.validate()


def test_support_condition_enforced():
    from rkdual.linalg import ChainComplexError
    K = build("ab")
    # an edge-labeled generator mapping onto a vertex label violates the
    # support condition over the standard order
    gens = {0: (simplex_generator(("a",), ("a",)),),
            1: (simplex_generator(("a", "b"), ("a", "b")),)}
    diff = {1: Matrix.from_rows(ZZ, [[1]])}
    with pytest.raises(ChainComplexError, match="support"):
        RKComplex(ZZ, K, False, gens, diff).validate()
