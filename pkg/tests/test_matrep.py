"""Translation and character operators, embeddings, commutator scalars."""

import random

import pytest

from projpair.abelian import FinAbGroup, char_eval, enumerate_abelian_groups
from projpair.cyclo import CycMatrix, CycNum, MINUS_ONE, ONE
from projpair.errors import (
    DimensionMismatch,
    GroupMismatch,
    NotProjectivelyCommuting,
    UnknownLabel,
)
from projpair.matrep import (
    Monomial,
    TensorShape,
    character_matrix,
    character_monomial,
    commutator_scalar,
    embed_factor,
    embed_factor_monomial,
    heisenberg_monomial,
    projective_equal,
    translation_matrix,
    translation_monomial,
)


def test_translation_examples():
    z2 = FinAbGroup.cyclic(2)
    assert translation_matrix(z2, z2.identity()).is_identity()
    assert translation_matrix(z2, z2.element((1,))) == CycMatrix([[0, 1], [1, 0]])
    z3 = FinAbGroup.cyclic(3)
    t = translation_matrix(z3, z3.element((1,)))
    assert (t @ t @ t).is_identity()
    assert not (t @ t).is_identity()


def test_character_examples():
    z2 = FinAbGroup.cyclic(2)
    assert character_matrix(z2, z2.trivial_character()).is_identity()
    assert character_matrix(z2, z2.character((1,))) == CycMatrix.diagonal([1, -1])
    z4 = FinAbGroup.cyclic(4)
    z = CycNum.root_of_unity(4)
    assert character_matrix(z4, z4.character((1,))) == CycMatrix.diagonal(
        [ONE, z, MINUS_ONE, z ** 3]
    )
    with pytest.raises(GroupMismatch):
        character_matrix(z2, z4.character((1,)))


def test_operators_are_homomorphisms():
    """tau and sigma are group homomorphisms into GL, exhaustively."""
    for n in range(1, 13):
        for g in enumerate_abelian_groups(n):
            for x in g.elements():
                for y in g.elements():
                    lhs = translation_monomial(g, x) @ translation_monomial(g, y)
                    assert lhs == translation_monomial(g, x + y)
            chars = list(g.characters())
            for xi in chars[:4]:
                for eta in chars[:4]:
                    lhs = character_monomial(g, xi) @ character_monomial(g, eta)
                    assert lhs == character_monomial(g, xi + eta)


def test_commutation_relation_small():
    """The conjugation relations between sigma and tau, exact, order <= 8."""
    for n in range(1, 9):
        for g in enumerate_abelian_groups(n):
            for x in g.elements():
                tx = translation_monomial(g, x)
                tx_inv = tx.inverse()
                for xi in g.characters():
                    sx = character_monomial(g, xi)
                    assert sx @ tx @ sx.inverse() == tx.scale_by(char_eval(xi, x))
                    assert tx @ sx @ tx_inv == sx.scale_by(char_eval(xi, -x))


def test_commutator_scalar_examples():
    z2 = FinAbGroup.cyclic(2)
    t = translation_monomial(z2, z2.element((1,)))
    s = character_monomial(z2, z2.character((1,)))
    assert commutator_scalar(Monomial.identity(2), t) == ONE
    assert commutator_scalar(s, t) == MINUS_ONE
    with pytest.raises(NotProjectivelyCommuting):
        commutator_scalar(CycMatrix.diagonal([1, 2]), CycMatrix([[1, 1], [0, 1]]))


def test_commutator_scalar_is_bimultiplicative():
    g = FinAbGroup.cyclic(4)
    ops = [heisenberg_monomial(g, x, xi)
           for x in g.elements() for xi in list(g.characters())[:2]]
    for a in ops[:4]:
        for b in ops[:4]:
            for c in ops[:4]:
                left = commutator_scalar(a, c) * commutator_scalar(b, c)
                assert left == commutator_scalar(a @ b, c)


def test_commutator_scalar_order_divides_dimension():
    for n in [2, 3, 4, 6]:
        g = FinAbGroup.cyclic(n)
        for x in g.elements():
            for xi in g.characters():
                c = commutator_scalar(
                    character_monomial(g, xi), translation_monomial(g, x)
                )
                assert (c ** n) == ONE


def test_monomial_roundtrip_and_products():
    g = FinAbGroup((2, 4))
    rng = random.Random(3)
    ops = []
    for _ in range(5):
        x = g.element(tuple(rng.randrange(d) for d in g.invariant_factors))
        xi = g.character(tuple(rng.randrange(d) for d in g.invariant_factors))
        ops.append(heisenberg_monomial(g, x, xi))
    for a in ops:
        assert Monomial.from_matrix(a.to_matrix()) == a
        assert a.inverse().to_matrix() == a.to_matrix().inverse()
        for b in ops:
            assert (a @ b).to_matrix() == a.to_matrix() @ b.to_matrix()
    assert Monomial.from_matrix(CycMatrix([[1, 1], [0, 1]])) is None
    assert Monomial.from_matrix(CycMatrix([[1, 0], [1, 0]])) is None


def test_projective_equal():
    g = CycMatrix([[1, 2], [3, 4]])
    z3 = CycNum.root_of_unity(3)
    assert projective_equal(g, g)
    assert projective_equal(g.scale(z3), g)
    assert not projective_equal(CycMatrix.diagonal([1, -1]), CycMatrix([[0, 1], [1, 0]]))
    assert not projective_equal(g, CycMatrix([[1, 2], [3, 5]]))


def test_embed_factor():
    shape = TensorShape((("A", 2), ("B", 3)))
    assert shape.dim == 6
    assert embed_factor(CycMatrix.identity(2), shape, "A").is_identity()
    swap = CycMatrix([[0, 1], [1, 0]])
    assert embed_factor(swap, shape, "A") == swap.kron(CycMatrix.identity(3))
    with pytest.raises(UnknownLabel):
        embed_factor(swap, shape, "C")
    with pytest.raises(DimensionMismatch):
        embed_factor(swap, shape, "B")


def test_embeds_at_distinct_labels_commute():
    rng = random.Random(9)
    shape = TensorShape((("A", 2), ("B", 3)))
    for _ in range(6):
        m = CycMatrix([[rng.randrange(-2, 3) for _ in range(2)] for _ in range(2)])
        n = CycMatrix([[rng.randrange(-2, 3) for _ in range(3)] for _ in range(3)])
        em = embed_factor(m, shape, "A")
        en = embed_factor(n, shape, "B")
        assert em @ en == en @ em


def test_embed_monomial_matches_dense():
    z2 = FinAbGroup.cyclic(2)
    mono = heisenberg_monomial(z2, z2.element((1,)), z2.character((1,)))
    shape = TensorShape((("L", 2), ("K", 3)))
    assert embed_factor_monomial(mono, shape, "L").to_matrix() == embed_factor(
        mono.to_matrix(), shape, "L"
    )
    assert embed_factor_monomial(mono, shape, "K" if False else "L").n == 6


def test_tensor_shape_indexing():
    shape = TensorShape((("A", 2), ("B", 3), ("C", 2)))
    seen = set()
    for i in range(2):
        for j in range(3):
            for k in range(2):
                idx = shape.flatten((i, j, k))
                assert shape.unflatten(idx) == (i, j, k)
                seen.add(idx)
    assert seen == set(range(12))
    with pytest.raises(ValueError):
        shape.flatten((2, 0, 0))
