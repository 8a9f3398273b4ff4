"""Enumeration of classification ingredients for a given ambient dimension.

Single-orbit rows are the ordered tuples (b, e, L, J, K) with
b * e * |L| * |J| * |K| = n, groups running over all isomorphism classes
of each order.  Multi-orbit rows glue single-orbit rows with isomorphic
component groups along a diagonal; gluing maps are reduced to canonical
representatives (simultaneous composition with a common automorphism,
plus permutation of identical summands), and such rows are flagged as
gluing-class representatives rather than asserted to be pairwise
non-conjugate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .abelian import (
    FinAbGroup,
    automorphisms,
    enumerate_abelian_groups,
    identity_matrix,
    invert_isomorphism,
)
from .construct import MultiOrbitSpec, SingleOrbitIngredients

GLUING_CLASS_FLAG = "gluing-class-representative"


def component_group_of(ing: SingleOrbitIngredients) -> FinAbGroup:
    """The canonical component group L x L-hat x J-hat x K."""
    fs = (
        list(ing.L_group.invariant_factors) * 2
        + list(ing.J_group.invariant_factors)
        + list(ing.K_group.invariant_factors)
    )
    return FinAbGroup.from_factors(fs)


def dual_component_group_of(ing: SingleOrbitIngredients) -> FinAbGroup:
    fs = (
        list(ing.L_group.invariant_factors) * 2
        + list(ing.J_group.invariant_factors)
        + list(ing.K_group.invariant_factors)
    )
    return FinAbGroup.from_factors(fs)


@dataclass(frozen=True)
class ClassificationRow:
    """One enumerated pair, either a single ingredient tuple or a glued
    multi-orbit specification."""

    kind: str  # "single" | "multi"
    single: SingleOrbitIngredients | None
    multi: MultiOrbitSpec | None
    gamma: FinAbGroup
    gamma_hat: FinAbGroup
    ambient_dim: int
    flags: tuple[str, ...] = ()

    @property
    def parts(self) -> int:
        return 1 if self.kind == "single" else len(self.multi.summands)

    def sort_key(self):
        if self.kind == "single":
            return (self.ambient_dim, 0, self.single.sort_key(), ())
        summand_keys = tuple(ing.sort_key() for ing, _ in self.multi.summands)
        q_keys = tuple(q for _, q in self.multi.summands)
        return (self.ambient_dim, self.parts, summand_keys, q_keys)

    def build(self):
        """Construct the (G, H) pair this row describes."""
        from .construct import multi_orbit_glue, single_orbit_pair

        if self.kind == "single":
            return single_orbit_pair(self.single)
        return multi_orbit_glue(self.multi)


def single_row(ing: SingleOrbitIngredients, flags=()) -> ClassificationRow:
    gamma = component_group_of(ing)
    return ClassificationRow(
        kind="single",
        single=ing,
        multi=None,
        gamma=gamma,
        gamma_hat=dual_component_group_of(ing),
        ambient_dim=ing.ambient_dim,
        flags=tuple(flags),
    )


def multi_row(spec: MultiOrbitSpec, flags=(GLUING_CLASS_FLAG,)) -> ClassificationRow:
    return ClassificationRow(
        kind="multi",
        single=None,
        multi=spec,
        gamma=spec.gamma,
        gamma_hat=spec.gamma,
        ambient_dim=spec.ambient_dim,
        flags=tuple(flags),
    )


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_single_orbit(n: int) -> list[ClassificationRow]:
    """All ordered ingredient tuples with product n, in lexicographic order.

    Both orientations of a pair appear; orientation normalization happens
    only in canonicalize_row.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    rows = []
    for b in _divisors(n):
        rest_b = n // b
        for e in _divisors(rest_b):
            rest_e = rest_b // e
            for l_ord in _divisors(rest_e):
                rest_l = rest_e // l_ord
                for j_ord in _divisors(rest_l):
                    k_ord = rest_l // j_ord
                    for L in enumerate_abelian_groups(l_ord):
                        for J in enumerate_abelian_groups(j_ord):
                            for K in enumerate_abelian_groups(k_ord):
                                rows.append(
                                    single_row(SingleOrbitIngredients(b, e, L, J, K))
                                )
    return rows


def _partitions_bounded(n: int, max_parts: int):
    """Partitions of n into at most max_parts parts, weakly decreasing."""

    def rec(remaining, maximum, parts_left, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        if parts_left == 0:
            return
        for part in range(min(remaining, maximum), 0, -1):
            yield from rec(remaining - part, part, parts_left - 1, prefix + [part])

    yield from rec(n, n, max_parts, [])


def _mat_mod(a, b, group: FinAbGroup):
    """Product of coordinate matrices, reduced modulo the invariant factors."""
    r = group.rank
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = sum(a[i][k] * b[k][j] for k in range(r))
            row.append(acc % group.invariant_factors[i])
        out.append(tuple(row))
    return tuple(out)


_AUT_INVERSE_CACHE: dict = {}


def _reduce_matrix(mat, gamma: FinAbGroup):
    return tuple(
        tuple(x % gamma.invariant_factors[i] for x in row)
        for i, row in enumerate(mat)
    )


def _aut_inverse(mat, gamma: FinAbGroup):
    key = (gamma.invariant_factors, mat)
    if key not in _AUT_INVERSE_CACHE:
        inv = invert_isomorphism([list(r) for r in mat], gamma, gamma)
        _AUT_INVERSE_CACHE[key] = _reduce_matrix(inv, gamma)
    return _AUT_INVERSE_CACHE[key]


def _canonical_gluing(summand_keys, qs, gamma: FinAbGroup):
    """Lexicographically least representative of a gluing tuple.

    Equivalences applied: reparameterization of the shared group (pins the
    first map to the identity), simultaneous composition of the remaining
    maps with one automorphism (pins the second map too), and permutation
    of summands with equal ingredient keys.
    """
    r = len(qs)
    ident = tuple(tuple(row) for row in identity_matrix(gamma))
    if gamma.is_trivial() or r == 1:
        return tuple([ident] * r)
    qs = [_reduce_matrix(q, gamma) for q in qs]
    blocks = []
    start = 0
    for i in range(1, r + 1):
        if i == r or summand_keys[i] != summand_keys[start]:
            blocks.append(list(range(start, i)))
            start = i
    perms_per_block = [list(itertools.permutations(b)) for b in blocks]
    best = None
    for combo in itertools.product(*perms_per_block):
        perm = [i for block in combo for i in block]
        permuted = [qs[p] for p in perm]
        pin = _aut_inverse(permuted[0], gamma)
        pinned = [_mat_mod(q, pin, gamma) for q in permuted]
        if r >= 2:
            alpha = _aut_inverse(pinned[1], gamma)
            cand = tuple([pinned[0]] + [_mat_mod(alpha, q, gamma) for q in pinned[1:]])
        else:
            cand = tuple(pinned)
        if best is None or cand < best:
            best = cand
    return best


def canonicalize_row(row: ClassificationRow) -> ClassificationRow:
    """Idempotent normal form: orientation, summand order, gluing maps."""
    if row.kind == "single":
        ing = row.single
        swapped = ing.swapped()
        if swapped.sort_key() < ing.sort_key():
            ing = swapped
        return single_row(ing, row.flags)

    flags = tuple(sorted(set(row.flags) | {GLUING_CLASS_FLAG}))
    gamma = row.multi.gamma

    def normal_form(summands):
        order = sorted(range(len(summands)), key=lambda i: summands[i][0].sort_key())
        ings = [summands[i][0] for i in order]
        qs = [summands[i][1] for i in order]
        keys = [ing.sort_key() for ing in ings]
        canon_qs = _canonical_gluing(keys, qs, gamma)
        return tuple(zip(ings, canon_qs))

    direct = normal_form(row.multi.summands)
    mirrored = normal_form(tuple(
        (ing.swapped(), _dual_gluing_matrix(ing, q, gamma))
        for ing, q in row.multi.summands
    ))

    def data_key(summands):
        return tuple((ing.sort_key(), q) for ing, q in summands)

    chosen = min([direct, mirrored], key=data_key)
    return multi_row(MultiOrbitSpec(gamma, chosen), flags)


_PHI_INV_CACHE: dict = {}


def _dual_gluing_matrix(ing: SingleOrbitIngredients, q, gamma: FinAbGroup):
    """The gluing map of the mirrored row: transport q to character space
    and identify the mirrored summand's component group through the
    commutator pairing."""
    from .abelian import dual_isomorphism_transport
    from .construct import single_orbit_pair
    from .verify import pairing_coset_character_matrix

    if ing not in _PHI_INV_CACHE:
        g_i, h_i = single_orbit_pair(ing)
        _PHI_INV_CACHE[ing] = (
            tuple(tuple(r) for r in pairing_coset_character_matrix(g_i, h_i)),
            g_i.component_group,
        )
    phi_inv, gamma_i = _PHI_INV_CACHE[ing]
    u = dual_isomorphism_transport([list(r) for r in q], gamma, gamma_i)
    return _mat_mod(phi_inv, tuple(tuple(r) for r in u), gamma)


def enumerate_multi_orbit(n: int, max_parts: int | None = None) -> list[ClassificationRow]:
    """Single-orbit rows plus glued multisets with matching component groups.

    Multi-part rows are deduplicated through canonicalize_row, so each
    gluing class appears once.
    """
    if max_parts is None:
        max_parts = n
    if max_parts < 1:
        raise ValueError("max_parts must be positive")
    rows = list(enumerate_single_orbit(n))
    singles_by_dim: dict[int, list[ClassificationRow]] = {}
    for d in range(1, n):
        if d <= n - 1:
            singles_by_dim[d] = enumerate_single_orbit(d)
    seen = set()
    out = list(rows)
    for partition in _partitions_bounded(n, max_parts):
        if len(partition) < 2:
            continue
        # group candidate summands by their component group
        by_gamma: dict[tuple, dict[int, list[SingleOrbitIngredients]]] = {}
        for d in set(partition):
            for srow in singles_by_dim[d]:
                key = srow.gamma.invariant_factors
                by_gamma.setdefault(key, {}).setdefault(d, []).append(srow.single)
        counts: dict[int, int] = {}
        for d in partition:
            counts[d] = counts.get(d, 0) + 1
        for gamma_key, per_dim in by_gamma.items():
            if any(d not in per_dim for d in counts):
                continue
            gamma = FinAbGroup(gamma_key)
            ident = tuple(tuple(r) for r in identity_matrix(gamma))
            r = len(partition)
            # common reparameterization pins the first map; simultaneous
            # composition with one automorphism pins the second, so orbit
            # representatives have identity maps in the first two slots
            if r <= 2:
                tails = [()]
            else:
                autos = [tuple(tuple(int(x) for x in row) for row in a)
                         for a in automorphisms(gamma)]
                tails = list(itertools.product(autos, repeat=r - 2))
            choices = []
            for d in sorted(counts, reverse=True):
                choices.append(
                    list(
                        itertools.combinations_with_replacement(per_dim[d], counts[d])
                    )
                )
            for combo in itertools.product(*choices):
                ings = [ing for block in combo for ing in block]
                for tail in tails:
                    q_tuple = (ident,) * min(2, r) + tail
                    if len(q_tuple) != r:
                        raise AssertionError("gluing tuple length mismatch")
                    spec = MultiOrbitSpec(gamma, tuple(zip(ings, q_tuple)))
                    canon = canonicalize_row(multi_row(spec))
                    key = _row_key(canon)
                    if key not in seen:
                        seen.add(key)
                        out.append(canon)
    out.sort(key=lambda r: r.sort_key())
    return out


def _row_key(row: ClassificationRow):
    if row.kind == "single":
        return ("single", row.single.sort_key())
    return (
        "multi",
        row.gamma.invariant_factors,
        tuple((ing.sort_key(), q) for ing, q in row.multi.summands),
    )
