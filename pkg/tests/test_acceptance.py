"""Acceptance suite: the end-to-end guarantees of the package.

Each test prints one PASS/FAIL line.  Everything is exact arithmetic;
there are no tolerances anywhere.  The full pipeline fixture enumerates
every classification row for dimensions 1 through 8 (multi-part rows up
to four summands), constructs each pair, and verifies it from first
principles; several criteria then interrogate the collected reports.
"""

import math
import random
import time

import pytest

from projpair.abelian import (
    FinAbGroup,
    SymplecticPairing,
    enumerate_abelian_groups,
    random_automorphism,
    symplectic_decompose,
)
from projpair.classify import (
    component_group_of,
    enumerate_multi_orbit,
    enumerate_single_orbit,
)
from projpair.construct import (
    Ambient,
    GroupSpec,
    SingleOrbitIngredients,
    connected_pair,
    scalar_blocks,
    single_orbit_pair,
    type2_pair,
    xx_hat_pair,
)
from projpair.cyclo import CycMatrix, ONE, prime_factors
from projpair.matrep import (
    Monomial,
    TensorShape,
    character_monomial,
    translation_monomial,
)
from projpair.abelian import char_eval
from projpair.verify import (
    projective_centralizer,
    specs_equal,
    verify_dual_pair,
)

TRIV = FinAbGroup.trivial()
Z2 = FinAbGroup.cyclic(2)
Z3 = FinAbGroup.cyclic(3)

MAX_DIM = 8
MAX_PARTS = 4


def _report(label: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{label}] {status}{suffix}")


@pytest.fixture(scope="module")
def pipeline():
    """Construct and verify every enumerated row for n = 1..8."""
    results = []
    start = time.time()
    for n in range(1, MAX_DIM + 1):
        for row in enumerate_multi_orbit(n, min(MAX_PARTS, n)):
            g, h = row.build()
            report = verify_dual_pair(g, h)
            results.append((row, g, h, report))
    elapsed = time.time() - start
    return results, elapsed


def test_criterion_1_heisenberg_self_duality():
    """Translation-character pairs verify as self-dual with component
    groups of order |X|^2, for the six listed groups, within ten seconds."""
    groups = [(2,), (3,), (4,), (2, 2), (5,), (6,)]
    start = time.time()
    ok = True
    for factors in groups:
        x_group = FinAbGroup(factors)
        g, h = xx_hat_pair(x_group)
        report = verify_dual_pair(g, h)
        if not report.is_dual_pair:
            ok = False
        if report.g_components != x_group.order ** 2:
            ok = False
        if report.h_components != x_group.order ** 2:
            ok = False
    elapsed = time.time() - start
    ok = ok and elapsed < 10.0
    _report("criterion 1", ok, f"{elapsed:.2f}s for {len(groups)} groups")
    assert ok


def test_criterion_2_commutation_relation():
    """sigma_xi tau_x sigma_xi^-1 = xi(x) tau_x and the mirrored relation,
    exactly, for all (x, xi) over every abelian group of order <= 12."""
    checked = 0
    ok = True
    for n in range(1, 13):
        for group in enumerate_abelian_groups(n):
            for x in group.elements():
                tx = translation_monomial(group, x)
                tx_inv = tx.inverse()
                for xi in group.characters():
                    sx = character_monomial(group, xi)
                    lhs1 = sx @ tx @ sx.inverse()
                    if lhs1 != tx.scale_by(char_eval(xi, x)):
                        ok = False
                    lhs2 = tx @ sx @ tx_inv
                    if lhs2 != sx.scale_by(char_eval(xi, -x)):
                        ok = False
                    checked += 1
    _report("criterion 2", ok, f"{checked} pairs, zero tolerance")
    assert ok


def test_criterion_3_full_pipeline(pipeline):
    """Every enumerated row for n = 1..8 (multi-orbit rows up to four
    parts) constructs and verifies, well under the time budget."""
    results, elapsed = pipeline
    failures = [
        (row.sort_key(), report.failure_codes())
        for row, _, _, report in results
        if not report.is_dual_pair
    ]
    ok = not failures and elapsed < 15 * 60
    _report(
        "criterion 3",
        ok,
        f"{len(results)} rows, {len(failures)} failures, {elapsed:.1f}s",
    )
    assert ok, failures[:5]


def test_criterion_4_component_group_duality(pipeline):
    """For every verified pair: the pairing table is a nondegenerate
    bicharacter, both component groups have the same order, and the
    component group of a single-orbit row is L x L-hat x J-hat x K in
    canonical form."""
    results, _ = pipeline
    ok = True
    checked = 0
    for row, g, h, report in results:
        table = report.pairing
        if table is None or not table.is_nondegenerate():
            ok = False
            continue
        if g.component_count() != h.component_count():
            ok = False
        if not table.is_bicharacter():
            ok = False
        if row.kind == "single":
            expected = component_group_of(row.single)
            if g.component_group != expected:
                ok = False
        checked += 1
    _report("criterion 4", ok, f"{checked} pairing tables")
    assert ok


def test_criterion_5_root_of_unity_scalars(pipeline):
    """Every commutator scalar across every pairing table is an exact
    n-th root of unity for the ambient dimension n.  (The scalar
    extraction itself also rejects any non-root internally.)"""
    results, _ = pipeline
    ok = True
    total = 0
    for row, g, h, report in results:
        n = g.ambient.dim
        for table_row in report.pairing.values:
            for order, expo in table_row:
                total += 1
                if n % order:
                    ok = False
    _report("criterion 5", ok, f"{total} scalars checked")
    assert ok


def _random_pairing(rng):
    lagrangians = [
        FinAbGroup.cyclic(2), FinAbGroup.cyclic(3), FinAbGroup.cyclic(4),
        FinAbGroup((2, 2)), FinAbGroup.cyclic(5), FinAbGroup.cyclic(6),
        FinAbGroup.cyclic(7), FinAbGroup.cyclic(8), FinAbGroup((2, 4)),
        FinAbGroup((2, 2, 2)),
    ]
    lag = rng.choice(lagrangians)
    pairing = SymplecticPairing.standard_hyperbolic(lag)
    alpha = random_automorphism(pairing.group, rng)
    return pairing.conjugate(alpha)


def test_criterion_6_symplectic_decomposition():
    """Fifty seeded nondegenerate alternating pairings on groups of order
    at most 64 decompose into hyperbolic pairs whose bilinear extension
    reconstructs the input exactly, with |L|^2 = |Omega|."""
    rng = random.Random(20250811)
    ok = True
    cases = 0
    for _ in range(50):
        pairing = _random_pairing(rng)
        if pairing.group.order > 64:
            ok = False
            continue
        dec = symplectic_decompose(pairing)
        if dec.lagrangian.order ** 2 != pairing.group.order:
            ok = False
        if not dec.reconstructs_pairing():
            ok = False
        cases += 1
    ok = ok and cases >= 50
    _report("criterion 6", ok, f"{cases} pairings")
    assert ok


def _involution_spec(n, matrix):
    ambient = Ambient.single(TensorShape((("A", n),)))
    return GroupSpec(
        ambient, scalar_blocks(n), Z2,
        {(0,): CycMatrix.identity(n), (1,): matrix},
    )


def _battery():
    """Twenty-plus deterministic specs in PGL(n), n <= 6, including
    specs that are not members of any dual pair."""
    specs = []
    specs.append(("swap2", _involution_spec(2, CycMatrix([[0, 1], [1, 0]]))))
    specs.append(("diag2", _involution_spec(2, CycMatrix.diagonal([1, -1]))))
    specs.append(("diag3", _involution_spec(3, CycMatrix.diagonal([1, -1, 1]))))
    g, h = connected_pair([(2, 3)])
    specs.append(("gl2x3_g", g))
    specs.append(("gl2x3_h", h))
    g, h = connected_pair([(1, 1), (1, 1)])
    specs.append(("torus2", g))
    g, h = connected_pair([(2, 2)])
    specs.append(("gl2sq_g", g))
    g, h = connected_pair([(2, 1), (1, 2)])
    specs.append(("mixed_sum_g", g))
    specs.append(("mixed_sum_h", h))
    g, h = xx_hat_pair(Z2)
    specs.append(("heis2", g))
    g, h = xx_hat_pair(Z3)
    specs.append(("heis3", g))
    g, h = xx_hat_pair(FinAbGroup.cyclic(4))
    specs.append(("heis4", g))
    g, h = xx_hat_pair(FinAbGroup((2, 2)))
    specs.append(("heis22", g))
    g, h = single_orbit_pair(SingleOrbitIngredients(1, 1, TRIV, Z2, TRIV))
    specs.append(("so_j2_g", g))
    specs.append(("so_j2_h", h))
    g, h = single_orbit_pair(SingleOrbitIngredients(1, 1, TRIV, Z2, Z2))
    specs.append(("so_j2k2_g", g))
    g, h = single_orbit_pair(SingleOrbitIngredients(1, 1, TRIV, Z3, TRIV))
    specs.append(("so_j3_g", g))
    g, h = single_orbit_pair(SingleOrbitIngredients(2, 1, TRIV, Z2, TRIV))
    specs.append(("so_b2j2_g", g))
    a, b = connected_pair([(2, 1)])
    g, h = type2_pair(a, b, Z2, "ii")
    specs.append(("type2ii_g", g))
    specs.append(("type2ii_h", h))
    # cyclic shift of order 4 in PGL(4): strictly smaller than its double
    # centralizer's centralizer
    z4 = FinAbGroup.cyclic(4)
    shift = translation_monomial(z4, z4.element((1,))).to_matrix()
    ambient = Ambient.single(TensorShape((("A", 4),)))
    gens = {}
    for k in range(4):
        power = CycMatrix.identity(4)
        for _ in range(k):
            power = power @ shift
        gens[(k,)] = power
    specs.append(("shift4", GroupSpec(ambient, scalar_blocks(4), z4, gens)))
    # order-3 permutation pair in PGL(6)
    perm = Monomial((1, 2, 0, 4, 5, 3), [ONE] * 6).to_matrix()
    ambient6 = Ambient.single(TensorShape((("A", 6),)))
    gens6 = {(0,): CycMatrix.identity(6), (1,): perm, (2,): perm @ perm}
    specs.append(("perm6", GroupSpec(ambient6, scalar_blocks(6), Z3, gens6)))
    return specs


def test_criterion_7_triple_centralizer_idempotence():
    """Z(Z(Z(S))) = Z(S) as computed spec equality, for a battery of at
    least twenty specs in PGL(n), n <= 6, dual-pair members or not."""
    battery = _battery()
    ok = len(battery) >= 20
    for name, spec in battery:
        z1 = projective_centralizer(spec)
        z2 = projective_centralizer(z1)
        z3 = projective_centralizer(z2)
        if not specs_equal(z1, z3):
            ok = False
            print(f"  triple centralizer failed for {name}")
    _report("criterion 7", ok, f"{len(battery)} specs")
    assert ok


def test_criterion_8_negative_control_failure_code():
    """The pair (swap image, swap image) in PGL(2) fails verification and
    the mismatch is reported as a strictly larger centralizer."""
    spec = _involution_spec(2, CycMatrix([[0, 1], [1, 0]]))
    report = verify_dual_pair(spec, spec)
    ok = (not report.is_dual_pair) and (
        "CENTRALIZER_LARGER" in report.failure_codes()
    )
    _report("criterion 8a", ok, ",".join(report.failure_codes()))
    assert ok


def test_criterion_8_centralizer_equals_heisenberg_spec_as_stated():
    """Pins the expectation that the computed centralizer of a lone swap
    image equals the order-16 translation-character group of Z/2.

    Exact computation refutes this identification: the centralizer of a
    single involution image contains the full rank-two torus spanned by I
    and the involution (e.g. [[2, 1], [1, 2]] commutes with the swap on
    the nose), so it is positive-dimensional with two components, and the
    translation-character group is a proper subgroup.  The assertion is
    kept as stated rather than weakened; the companion checks above pin
    the mathematically correct behaviour.
    """
    spec = _involution_spec(2, CycMatrix([[0, 1], [1, 0]]))
    computed = projective_centralizer(spec)
    klein, _ = xx_hat_pair(Z2)
    ok = specs_equal(computed, klein)
    _report(
        "criterion 8b",
        ok,
        f"computed identity dim {computed.identity_component_dim()}, "
        f"components {computed.component_count()}; "
        f"expected the order-16 group over scalars",
    )
    assert ok


def test_criterion_9_enumeration_cross_check():
    """Single-orbit row counts match the independent factorization /
    partition-product oracle for every n <= 30."""

    def abelian_count(n):
        c = 1
        m = n
        for p in prime_factors(n):
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            parts = _partition_count(e)
            c *= parts
        return c

    def _partition_count(k):
        table = [1] + [0] * k
        for part in range(1, k + 1):
            for s in range(part, k + 1):
                table[s] += table[s - part]
        return table[k]

    def oracle(n):
        total = 0
        for b in range(1, n + 1):
            if n % b:
                continue
            for e in range(1, n + 1):
                if (n // b) % e:
                    continue
                rest = n // b // e
                for lo in range(1, rest + 1):
                    if rest % lo:
                        continue
                    rest2 = rest // lo
                    for jo in range(1, rest2 + 1):
                        if rest2 % jo:
                            continue
                        total += (
                            abelian_count(lo)
                            * abelian_count(jo)
                            * abelian_count(rest2 // jo)
                        )
        return total

    ok = True
    for n in range(1, 31):
        if len(enumerate_single_orbit(n)) != oracle(n):
            ok = False
    _report("criterion 9", ok, "n <= 30 against the independent oracle")
    assert ok
