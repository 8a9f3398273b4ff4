"""Structural checks on the pair constructions."""

import pytest

from projpair.abelian import FinAbGroup, identity_matrix
from projpair.construct import (
    Block,
    MultiOrbitSpec,
    SingleOrbitIngredients,
    connected_pair,
    general_xx_hat_pair,
    multi_orbit_glue,
    scalar_blocks,
    single_orbit_pair,
    type2_pair,
    xx_hat_pair,
)
from projpair.cyclo import span_of_matrices
from projpair.errors import (
    EmptyDecomposition,
    InputNotDualPair,
    NotIsomorphism,
    PreconditionViolated,
)
from projpair.matrep import projective_equal

TRIV = FinAbGroup.trivial()
Z2 = FinAbGroup.cyclic(2)
Z3 = FinAbGroup.cyclic(3)


def test_connected_pair_shapes():
    g, h = connected_pair([(3, 1)])
    assert g.ambient.dim == 3
    assert g.identity_component_dim() == 9
    assert h.identity_component_dim() == 1
    assert g.component_count() == 1 == h.component_count()
    g, h = connected_pair([(2, 2)])
    assert g.identity_component_dim() == 4 == h.identity_component_dim()
    g, h = connected_pair([(1, 1), (1, 1)])
    assert g.ambient.dim == 2
    assert g.identity_component_dim() == 2
    with pytest.raises(EmptyDecomposition):
        connected_pair([])


def test_connected_pair_blocks_commute():
    g, h = connected_pair([(2, 3), (1, 2)])
    n = g.ambient.dim
    for bg in g.algebra_basis():
        for bh in h.algebra_basis():
            assert bg @ bh == bh @ bg


def test_xx_hat_pair_structure():
    g, h = xx_hat_pair(Z2)
    assert g.component_group == FinAbGroup((2, 2))
    assert g.identity_component_dim() == 1
    # both sides have identical generator sets
    assert set(g.generators) == set(h.generators)
    for coords in g.generators:
        assert g.generator(coords) == h.generator(coords)
    g3, _ = xx_hat_pair(Z3)
    assert g3.component_group.order == 9
    gt, ht = xx_hat_pair(TRIV)
    assert gt.ambient.dim == 1 and gt.component_group.is_trivial()


def test_spec_validation():
    g, h = xx_hat_pair(Z2)
    g.validate(deep=True)
    h.validate(deep=True)
    for ing in [
        SingleOrbitIngredients(2, 1, Z2, TRIV, Z2),
        SingleOrbitIngredients(1, 1, Z2, Z2, TRIV),
        SingleOrbitIngredients(1, 2, TRIV, Z3, TRIV),
    ]:
        a, b = single_orbit_pair(ing)
        a.validate(deep=True)
        b.validate(deep=True)


def test_single_orbit_dimensions_and_components():
    ing = SingleOrbitIngredients(2, 3, Z2, Z2, Z3)
    assert ing.ambient_dim == 2 * 3 * 2 * 2 * 3
    g, h = single_orbit_pair(ing)
    assert g.ambient.dim == 72
    # component groups: L x L-hat x J-hat x K and L x L-hat x J x K-hat
    assert g.component_group == FinAbGroup.from_factors([2, 2, 2, 3])
    assert h.component_group == FinAbGroup.from_factors([2, 2, 2, 3])
    assert g.component_group.order == (
        ing.L_group.order ** 2 * ing.J_group.order * ing.K_group.order
    )
    # identity components: GL(b) per K index, GL(e) per J index
    assert g.identity_component_dim() == ing.K_group.order * ing.b ** 2
    assert h.identity_component_dim() == ing.J_group.order * ing.e ** 2


def test_single_orbit_trivial_groups_is_connected():
    g, h = single_orbit_pair(SingleOrbitIngredients(2, 2, TRIV, TRIV, TRIV))
    gc, hc = connected_pair([(2, 2)])
    assert g.component_group.is_trivial()
    assert g.algebra_span().equals(gc.algebra_span())
    assert h.algebra_span().equals(hc.algebra_span())


def test_generator_extension_closure():
    """Products of generators land in the coset-sum component projectively."""
    ing = SingleOrbitIngredients(1, 1, Z2, Z2, TRIV)
    g, _ = single_orbit_pair(ing)
    group = g.component_group
    span = g.algebra_span()
    for a in group.elements():
        for b in group.elements():
            prod = g.generator(a.coords) @ g.generator(b.coords)
            target = g.generator((a + b).coords)
            shifted = prod @ target.inverse()
            assert span.contains(shifted.flatten())


def test_generators_scalars_are_roots_of_unity():
    for ing in [
        SingleOrbitIngredients(1, 1, Z2, TRIV, TRIV),
        SingleOrbitIngredients(1, 1, TRIV, Z3, Z2),
    ]:
        g, h = single_orbit_pair(ing)
        for spec in (g, h):
            for coords, mat in spec.generators.items():
                first = next(
                    mat.entry(i, j)
                    for i in range(mat.rows)
                    for j in range(mat.cols)
                    if not mat.entry(i, j).is_zero()
                )
                assert first.as_root_of_unity() is not None


def test_general_xx_hat_requires_dual_pair():
    g, _ = connected_pair([(2, 2)])
    bad = g  # (g, g) is not a dual pair
    with pytest.raises(InputNotDualPair):
        general_xx_hat_pair(bad, bad, Z2)


def test_general_xx_hat_component_groups():
    h1, h2 = connected_pair([(2, 2)])
    g, h = general_xx_hat_pair(h1, h2, Z2)
    assert g.ambient.dim == 8
    assert g.component_group == FinAbGroup((2, 2))
    assert h.component_group == FinAbGroup((2, 2))
    # trivial X: same pair up to the appended trivial slot
    g0, h0 = general_xx_hat_pair(h1, h2, TRIV)
    assert g0.ambient.dim == 4
    assert g0.component_group.is_trivial()


def test_general_xx_hat_degenerate_case_is_heisenberg():
    """Starting from the trivial pair in PGL(1), the tensor construction
    reduces to the plain translation-character pair."""
    h1, h2 = connected_pair([(1, 1)])
    g, h = general_xx_hat_pair(h1, h2, Z2)
    ref_g, ref_h = xx_hat_pair(Z2)
    assert g.ambient.dim == 2
    assert g.component_group == ref_g.component_group
    assert g.algebra_span().equals(ref_g.algebra_span())
    matched = 0
    for mat in g.generators.values():
        if any(projective_equal(mat, other) for other in ref_g.generators.values()):
            matched += 1
    assert matched == 4


def test_glue_two_heisenberg_summands_diagonal():
    ing = SingleOrbitIngredients(1, 1, Z2, TRIV, TRIV)
    gamma = FinAbGroup((2, 2))
    q = tuple(tuple(r) for r in identity_matrix(gamma))
    g, h = multi_orbit_glue(MultiOrbitSpec(gamma, ((ing, q), (ing, q))))
    assert g.ambient.dim == 4
    assert g.component_group == gamma
    # generators are the same operator on both summands
    for coords, mat in g.generators.items():
        top = [[mat.entry(i, j) for j in range(2)] for i in range(2)]
        bottom = [[mat.entry(i + 2, j + 2) for j in range(2)] for i in range(2)]
        assert top == bottom
        for i in range(2):
            for j in range(2):
                assert mat.entry(i, j + 2).is_zero()
                assert mat.entry(i + 2, j).is_zero()


def test_type2_preconditions():
    a, b = connected_pair([(2, 1)])
    with pytest.raises(PreconditionViolated):
        type2_pair(a, b, Z2, "i")  # identity component is GL(2), not scalars
    xa, xb = xx_hat_pair(Z2)
    with pytest.raises(PreconditionViolated):
        type2_pair(xa, xb, Z2, "ii")  # not a connected mutual-commutant pair
    with pytest.raises(ValueError):
        type2_pair(a, b, Z2, "iii")


def test_type2_component_groups():
    a, b = connected_pair([(2, 1)])
    g, h = type2_pair(a, b, Z2, "ii")
    assert g.component_group == Z2 and h.component_group == Z2
    assert g.identity_component_dim() == 8  # GL(2) x GL(2)
    assert h.identity_component_dim() == 1
    xa, xb = xx_hat_pair(Z2)
    g, h = type2_pair(xa, xb, Z2, "i")
    assert g.component_group.order == 8
    assert g.identity_component_dim() == 2  # torus on the appended slot
    assert h.component_group.order == 8


def test_glue_requires_isomorphism():
    ing = SingleOrbitIngredients(1, 1, Z2, TRIV, TRIV)
    gamma = FinAbGroup((2, 2))
    bad_q = ((1, 0), (1, 0))  # not invertible
    spec = MultiOrbitSpec(gamma, ((ing, tuple(tuple(r) for r in identity_matrix(gamma))),
                                  (ing, bad_q)))
    with pytest.raises(NotIsomorphism):
        multi_orbit_glue(spec)


def test_glue_single_summand_matches_single_orbit():
    ing = SingleOrbitIngredients(1, 1, Z2, TRIV, TRIV)
    gamma = FinAbGroup((2, 2))
    q = tuple(tuple(r) for r in identity_matrix(gamma))
    g1, h1 = multi_orbit_glue(MultiOrbitSpec(gamma, ((ing, q),)))
    g2, h2 = single_orbit_pair(ing)
    assert g1.algebra_span().equals(g2.algebra_span())
    assert set(g1.generators) == set(g2.generators)
    for coords in g1.generators:
        assert projective_equal(g1.generator(coords), g2.generator(coords))


def test_glue_with_nonidentity_isomorphism_verifies():
    from projpair.verify import verify_dual_pair

    ing = SingleOrbitIngredients(1, 1, Z2, TRIV, TRIV)
    gamma = FinAbGroup((2, 2))
    ident = tuple(tuple(r) for r in identity_matrix(gamma))
    swap_q = ((0, 1), (1, 0))
    g, h = multi_orbit_glue(MultiOrbitSpec(gamma, ((ing, ident), (ing, swap_q))))
    report = verify_dual_pair(g, h)
    assert report.is_dual_pair, report.failure_codes()


def test_glue_blocks_are_block_diagonal():
    triv_ing = SingleOrbitIngredients(1, 1, TRIV, TRIV, TRIV)
    spec = MultiOrbitSpec(TRIV, ((triv_ing, ()), (triv_ing, ())))
    g, h = multi_orbit_glue(spec)
    assert g.ambient.dim == 2
    assert len(g.blocks) == 2
    assert g.identity_component_dim() == 2


def test_block_matrix_units():
    blk = Block(2, ((0, 2), (1, 3)))
    units = blk.matrix_units(4)
    assert len(units) == 4
    total = units[0] + units[3]
    assert total.is_identity()  # E_00 + E_11 with multiplicity = identity
    assert span_of_matrices(units).dim == 4


def test_scalar_blocks_span():
    blocks = scalar_blocks(3)
    assert len(blocks) == 1
    basis = blocks[0].matrix_units(3)
    assert len(basis) == 1
    assert basis[0].is_identity()
