"""Finite abelian groups, characters, and hyperbolic decomposition."""

import random
from fractions import Fraction

import pytest

from projpair.abelian import (
    Character,
    FinAbGroup,
    SymplecticPairing,
    apply_matrix,
    automorphisms,
    canonical_factors,
    char_eval,
    direct_product,
    dual_isomorphism_transport,
    enumerate_abelian_groups,
    partition_count,
    product_embedding,
    smith_normal_form,
    subgroup_from_elements,
    symplectic_decompose,
)
from projpair.cyclo import CycNum, MINUS_ONE, ONE, prime_factors
from projpair.errors import DegeneratePairing, GroupMismatch, NotAlternating, NotIsomorphism


def test_canonical_factors():
    assert canonical_factors([1, 1]) == ()
    assert canonical_factors([2, 3]) == (6,)
    assert canonical_factors([4, 2]) == (2, 4)
    assert canonical_factors([2, 2, 3]) == (2, 6)
    assert canonical_factors([12, 2]) == (2, 12)
    with pytest.raises(ValueError):
        FinAbGroup((4, 2))


def test_group_basics():
    g = FinAbGroup((2, 4))
    assert g.order == 8 and g.exponent == 4 and g.rank == 2
    els = list(g.elements())
    assert len(els) == 8
    assert els[0].is_identity()
    assert [g.index_of(e) for e in els] == list(range(8))
    x = g.element((1, 3))
    assert (x + x).coords == (0, 2)
    assert (-x).coords == (1, 1)
    assert x.order() == 4


def test_char_eval_examples():
    triv = FinAbGroup.trivial()
    assert char_eval(triv.trivial_character(), triv.identity()) == ONE
    z2 = FinAbGroup.cyclic(2)
    assert char_eval(z2.character((1,)), z2.element((1,))) == MINUS_ONE
    g = FinAbGroup((4, 4))
    assert char_eval(g.character((1, 0)), g.element((3, 2))) == CycNum.root_of_unity(4, 3)
    with pytest.raises(GroupMismatch):
        char_eval(z2.character((1,)), g.element((0, 0)))


def test_char_eval_multiplicative():
    g = FinAbGroup((2, 6))
    for xi in g.characters():
        for x in list(g.elements())[:6]:
            for y in list(g.elements())[:6]:
                assert char_eval(xi, x) * char_eval(xi, y) == char_eval(xi, x + y)


def test_double_dual_injective():
    """The map x -> (xi -> xi(x)) is injective: characters separate points."""
    for factors in [(2,), (4,), (2, 2), (8,), (2, 4), (3, 3), (2, 2, 2), (12,)]:
        g = FinAbGroup(factors)
        assert g.order <= 64
        seen = set()
        for x in g.elements():
            key = tuple(xi.exponent_at(x) for xi in g.characters())
            assert key not in seen
            seen.add(key)


def test_enumerate_abelian_groups_examples():
    assert enumerate_abelian_groups(1) == [FinAbGroup.trivial()]
    assert [g.invariant_factors for g in enumerate_abelian_groups(8)] == [
        (2, 2, 2), (2, 4), (8,),
    ]
    assert [g.invariant_factors for g in enumerate_abelian_groups(12)] == [
        (2, 6), (12,),
    ]


def _count_oracle(n):
    c = 1
    m = n
    for p in prime_factors(n):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        c *= partition_count(e)
    return c


def test_enumerate_count_matches_partition_product():
    for n in range(1, 201):
        got = enumerate_abelian_groups(n)
        assert len(got) == _count_oracle(n), n
        assert len({g.invariant_factors for g in got}) == len(got)
        for g in got:
            assert g.order == n


def test_direct_product_embeddings():
    groups = [FinAbGroup.cyclic(2), FinAbGroup.cyclic(3), FinAbGroup((2, 4))]
    product, combine, split = product_embedding(groups)
    assert product.order == 2 * 3 * 8
    # combine/split are mutually inverse bijections
    import itertools

    count = 0
    for combo in itertools.product(*(g.elements() for g in groups)):
        total = combine(combo)
        assert split(total) == tuple(combo)
        count += 1
    assert count == product.order
    # combine is a homomorphism factorwise
    a = combine([FinAbGroup.cyclic(2).element((1,)),
                 FinAbGroup.cyclic(3).element((1,)),
                 FinAbGroup((2, 4)).element((0, 0))])
    assert a.order() == 6


def test_dual_transport_examples():
    z4 = FinAbGroup.cyclic(4)
    assert dual_isomorphism_transport([[1]], z4, z4) == [[1]]
    assert dual_isomorphism_transport([[3]], z4, z4) == [[3]]
    k4 = FinAbGroup((2, 2))
    assert dual_isomorphism_transport([[0, 1], [1, 0]], k4, k4) == [[0, 1], [1, 0]]
    with pytest.raises(NotIsomorphism):
        dual_isomorphism_transport([[2]], z4, z4)


def test_dual_transport_defining_relation_exhaustive():
    g = FinAbGroup((2, 4))
    for q in list(automorphisms(g))[:6]:
        u = dual_isomorphism_transport([list(r) for r in q], g, g)
        for delta_coords in [(0, 1), (1, 0), (1, 3)]:
            delta = Character(g, delta_coords)
            u_delta = Character(
                g,
                tuple(sum(u[i][j] * delta.coords[j] for j in range(2)) for i in range(2)),
            )
            for x in g.elements():
                qx = apply_matrix([list(r) for r in q], x.coords, g)
                assert u_delta.exponent_at(qx) == delta.exponent_at(x)


def test_automorphism_counts():
    assert len(automorphisms(FinAbGroup((2, 2)))) == 6
    assert len(automorphisms(FinAbGroup.cyclic(4))) == 2
    assert len(automorphisms(FinAbGroup.cyclic(8))) == 4
    assert len(automorphisms(FinAbGroup((2, 2, 2)))) == 168
    assert len(automorphisms(FinAbGroup.trivial())) == 1


# -- symplectic pairings -----------------------------------------------------


def test_standard_pairing_klein():
    pairing = SymplecticPairing.standard_hyperbolic(FinAbGroup.cyclic(2))
    assert pairing.group.invariant_factors == (2, 2)
    assert pairing.is_alternating()
    assert pairing.is_nondegenerate()
    dec = symplectic_decompose(pairing)
    assert len(dec.pairs) == 1
    assert dec.lagrangian == FinAbGroup.cyclic(2)


def test_decompose_z4_example():
    pairing = SymplecticPairing.standard_hyperbolic(FinAbGroup.cyclic(4))
    dec = symplectic_decompose(pairing)
    assert dec.lagrangian == FinAbGroup.cyclic(4)
    assert len(dec.pairs) == 1
    lam, lam_p, r = dec.pairs[0]
    assert r == 4
    assert pairing.value(lam, lam_p).denominator == 4


def test_decompose_trivial():
    pairing = SymplecticPairing.standard_hyperbolic(FinAbGroup.trivial())
    dec = symplectic_decompose(pairing)
    assert dec.pairs == ()
    assert dec.lagrangian.is_trivial()


def test_decompose_rejects_degenerate():
    g = FinAbGroup((2, 2))
    zero = SymplecticPairing(g, ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))))
    with pytest.raises(DegeneratePairing):
        symplectic_decompose(zero)


def test_decompose_rejects_non_alternating():
    g = FinAbGroup((2, 2))
    sym = SymplecticPairing(
        g, ((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(1, 2)))
    )
    with pytest.raises(NotAlternating):
        symplectic_decompose(sym)


def random_nondegenerate_pairing(rng):
    """Seeded sampler: a standard hyperbolic pairing pulled back along a
    random automorphism (stays alternating and nondegenerate)."""
    from projpair.abelian import random_automorphism

    lagrangians = [
        FinAbGroup.cyclic(2), FinAbGroup.cyclic(3), FinAbGroup.cyclic(4),
        FinAbGroup((2, 2)), FinAbGroup.cyclic(5), FinAbGroup.cyclic(6),
        FinAbGroup.cyclic(7), FinAbGroup.cyclic(8), FinAbGroup((2, 4)),
        FinAbGroup((2, 2, 2)),
    ]
    lag = rng.choice(lagrangians)
    pairing = SymplecticPairing.standard_hyperbolic(lag)
    alpha = random_automorphism(pairing.group, rng)
    return pairing.conjugate(alpha), lag


def test_decompose_reconstructs_random_pairings():
    rng = random.Random(2024)
    for _ in range(20):
        pairing, lag = random_nondegenerate_pairing(rng)
        assert pairing.group.order <= 64
        dec = symplectic_decompose(pairing)
        assert dec.lagrangian.order ** 2 == pairing.group.order
        assert dec.reconstructs_pairing()


# -- subgroup extraction ------------------------------------------------------


def test_smith_normal_form_random():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randrange(1, 4)
        m = rng.randrange(1, 4)
        mat = [[rng.randrange(-6, 7) for _ in range(m)] for _ in range(n)]
        d, u, v = smith_normal_form(mat)
        # U mat V == D
        prod = [[sum(u[i][k] * mat[k][j] for k in range(n)) for j in range(m)]
                for i in range(n)]
        prod = [[sum(prod[i][k] * v[k][j] for k in range(m)) for j in range(m)]
                for i in range(n)]
        for i in range(n):
            for j in range(m):
                assert prod[i][j] == (d[i][j] if i == j else 0)
        diag = [d[i][i] for i in range(min(n, m))]
        for a, b in zip(diag, diag[1:]):
            if a and b:
                assert b % a == 0


def test_subgroup_from_elements():
    g, conv = subgroup_from_elements([2, 2, 2], [(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)])
    assert g.invariant_factors == (2, 2)
    images = {conv(c) for c in [(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 0, 1)]}
    assert len(images) == 4
    g2, conv2 = subgroup_from_elements([8], [(0,), (2,), (4,), (6,)])
    assert g2.invariant_factors == (4,)
    g3, _ = subgroup_from_elements([4, 4], [(0, 0)])
    assert g3.is_trivial()


def test_subgroup_map_is_homomorphism():
    rng = random.Random(13)
    for _ in range(10):
        moduli = rng.choice([[4, 4], [2, 6], [8], [2, 2, 2]])
        ambient = FinAbGroup.from_factors(moduli)
        # random subgroup: generated by two random elements
        import itertools

        gens = [tuple(rng.randrange(d) for d in moduli) for _ in range(2)]
        elems = {tuple(0 for _ in moduli)}
        frontier = list(elems)
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = tuple((a + b) % d for a, b, d in zip(cur, g, moduli))
                if nxt not in elems:
                    elems.add(nxt)
                    frontier.append(nxt)
        group, conv = subgroup_from_elements(moduli, sorted(elems))
        assert group.order == len(elems)
        for a in list(sorted(elems))[:8]:
            for b in list(sorted(elems))[:8]:
                s = tuple((x + y) % d for x, y, d in zip(a, b, moduli))
                ca, cb, cs = conv(a), conv(b), conv(s)
                added = tuple(
                    (x + y) % d for x, y, d in zip(ca, cb, group.invariant_factors)
                )
                assert added == cs
