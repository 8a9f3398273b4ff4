"""Explicit subgroup specifications and every pair construction.

A GroupSpec pins down a reductive subgroup of GL(U) up to scalars: the
ambient space (a direct sum of labeled tensor products), the identity
component (a product of GL blocks, each given by an explicit index grid,
or a raw spanning set for computed centralizers), a finite abelian
component group, and one generator matrix per component.

The canonical generator section multiplies per-factor operators with
translations before characters, slots in shape order, so every spec is
bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .abelian import (
    Character,
    FinAbGroup,
    apply_matrix,
    dual_isomorphism_transport,
    is_isomorphism_matrix,
    product_embedding,
)
from .cyclo import ONE, CycMatrix, VectorSpan, span_of_matrices
from .errors import (
    EmptyDecomposition,
    IncompatibleGluing,
    InputNotDualPair,
    NotIsomorphism,
    PreconditionViolated,
)
from .matrep import (
    Monomial,
    TensorShape,
    commutator_scalar,
    heisenberg_monomial,
    character_monomial,
    translation_monomial,
)


@dataclass(frozen=True)
class Block:
    """One GL factor of an identity component, as an explicit index grid.

    grid[r][c] is the ambient basis index carrying row r of the block in
    its c-th multiplicity copy.  The algebra spanned by the block is
    {A (x) I_mult} under this identification.
    """

    dim: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(int(i) for i in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        if len(grid) != self.dim:
            raise ValueError("grid must have one row per block dimension")
        width = len(grid[0]) if grid else 0
        if any(len(row) != width for row in grid):
            raise ValueError("ragged block grid")

    @property
    def mult(self) -> int:
        return len(self.grid[0])

    def indices(self):
        return [i for row in self.grid for i in row]

    def unit_matrix(self, r: int, s: int, n: int) -> CycMatrix:
        """The embedded matrix unit E_rs (x) I_mult."""
        cells = {}
        for c in range(self.mult):
            cells[(self.grid[r][c], self.grid[s][c])] = ONE
        return CycMatrix.from_entries(n, n, cells)

    def matrix_units(self, n: int) -> list[CycMatrix]:
        return [
            self.unit_matrix(r, s, n) for r in range(self.dim) for s in range(self.dim)
        ]

    def shift(self, offset: int) -> "Block":
        return Block(self.dim, tuple(tuple(i + offset for i in row) for row in self.grid))

    def tensor_extend(self, n_x: int) -> "Block":
        """Diagonal extension to U (x) X: multiplicity grows by a factor n_x."""
        return Block(
            self.dim,
            tuple(
                tuple(g * n_x + x for g in row for x in range(n_x)) for row in self.grid
            ),
        )

    def replicate(self, n_x: int) -> list["Block"]:
        """Independent copies on U (x) X, one per basis vector of X."""
        return [
            Block(self.dim, tuple(tuple(g * n_x + x for g in row) for row in self.grid))
            for x in range(n_x)
        ]


def scalar_blocks(n: int) -> tuple[Block, ...]:
    """The identity component of a group whose connected part is scalars."""
    return (Block(1, (tuple(range(n)),)),)


@dataclass(frozen=True)
class Ambient:
    """A direct sum of labeled tensor products; the home of every matrix."""

    summands: tuple[TensorShape, ...]

    def __post_init__(self):
        if not self.summands:
            raise EmptyDecomposition("ambient space needs at least one summand")
        object.__setattr__(self, "summands", tuple(self.summands))

    @staticmethod
    def single(shape: TensorShape) -> "Ambient":
        return Ambient((shape,))

    @property
    def dim(self) -> int:
        return sum(s.dim for s in self.summands)

    def offsets(self) -> list[int]:
        out = [0]
        for s in self.summands[:-1]:
            out.append(out[-1] + s.dim)
        return out

    def summand_dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.summands)

    def compatible_with(self, other: "Ambient") -> bool:
        return self.summand_dims() == other.summand_dims()


class GroupSpec:
    """A reductive subgroup of GL(U) up to scalars, with explicit generators."""

    def __init__(self, ambient, blocks, component_group, generators, algebra_basis=None):
        self.ambient = ambient
        self.blocks = tuple(blocks) if blocks is not None else None
        self.component_group = component_group
        self.generators = dict(generators)
        self._algebra_basis = tuple(algebra_basis) if algebra_basis is not None else None
        self._monomials: dict = {}
        self._span = None
        n = self.ambient.dim
        ident = self.component_group.identity().coords
        if ident not in self.generators:
            raise ValueError("missing generator for the identity coset")
        if len(self.generators) != self.component_group.order:
            raise ValueError("need exactly one generator per coset")
        if not self.generators[ident].is_identity():
            raise ValueError("identity-coset generator must be the identity matrix")
        for coords, mat in self.generators.items():
            if mat.shape != (n, n):
                raise ValueError("generator has the wrong shape")
        if self.blocks is None and self._algebra_basis is None:
            raise ValueError("need either blocks or an algebra basis")

    # -- identity component ------------------------------------------------

    def algebra_basis(self) -> list[CycMatrix]:
        """Matrices spanning the algebra generated by the identity component."""
        if self._algebra_basis is not None:
            return list(self._algebra_basis)
        n = self.ambient.dim
        out = []
        for b in self.blocks:
            out.extend(b.matrix_units(n))
        return out

    def algebra_span(self) -> VectorSpan:
        if self._span is None:
            self._span = span_of_matrices(self.algebra_basis())
        return self._span

    def identity_component_dim(self) -> int:
        if self.blocks is not None:
            return sum(b.dim * b.dim for b in self.blocks)
        return self.algebra_span().dim

    def block_dims(self):
        return sorted((b.dim, b.mult) for b in self.blocks) if self.blocks else None

    # -- generators ----------------------------------------------------------

    def generator(self, coords) -> CycMatrix:
        return self.generators[tuple(coords)]

    def monomial_generator(self, coords):
        coords = tuple(coords)
        if coords not in self._monomials:
            self._monomials[coords] = Monomial.from_matrix(self.generators[coords])
        return self._monomials[coords]

    def generating_cosets(self) -> list[tuple[int, ...]]:
        return [g.coords for g in self.component_group.generators()]

    def component_count(self) -> int:
        return self.component_group.order

    def validate(self, deep: bool = False) -> None:
        """Check the structural invariants; deep also checks normalization
        of the identity component and the extension closure of generators."""
        for coords, mat in self.generators.items():
            if not mat.is_invertible():
                raise ValueError(f"generator at {coords} is singular")
        if not deep:
            return
        span = self.algebra_span()
        n = self.ambient.dim
        basis = self.algebra_basis()
        for coords, mat in self.generators.items():
            inv = mat.inverse()
            for b in basis:
                if not span.contains((mat @ b @ inv).flatten()):
                    raise ValueError(f"generator at {coords} does not normalize the blocks")
        group = self.component_group
        for a in self.generators:
            for b in self.generators:
                s = group.element(a) + group.element(b)
                prod = self.generators[a] @ self.generators[b]
                target = self.generators[s.coords]
                # prod must equal (identity-component element) * target
                cand = prod @ target.inverse()
                if not span.contains(cand.flatten()):
                    raise ValueError("generator products leave the extension")

    def __repr__(self):
        blocks = self.block_dims()
        return (
            f"GroupSpec(dim={self.ambient.dim}, blocks={blocks}, "
            f"components={self.component_group})"
        )


# ---------------------------------------------------------------------------
# ingredients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingleOrbitIngredients:
    """The data determining one single-orbit pair: two multiplicity
    dimensions and three finite abelian groups."""

    b: int
    e: int
    L_group: FinAbGroup
    J_group: FinAbGroup
    K_group: FinAbGroup

    def __post_init__(self):
        if self.b < 1 or self.e < 1:
            raise ValueError("multiplicity dimensions must be positive")

    @property
    def ambient_dim(self) -> int:
        return self.b * self.e * self.L_group.order * self.J_group.order * self.K_group.order

    def swapped(self) -> "SingleOrbitIngredients":
        """The mirror-image ingredient tuple describing the pair in the
        opposite order."""
        return SingleOrbitIngredients(self.e, self.b, self.L_group, self.K_group, self.J_group)

    def sort_key(self):
        return (
            self.ambient_dim,
            self.b,
            self.e,
            self.L_group.invariant_factors,
            self.J_group.invariant_factors,
            self.K_group.invariant_factors,
        )


@dataclass(frozen=True)
class MultiOrbitSpec:
    """A shared component group plus per-summand ingredients and gluing maps.

    Each q_i is an integer matrix on coordinates giving an isomorphism from
    gamma onto the i-th summand's component group.
    """

    gamma: FinAbGroup
    summands: tuple[tuple[SingleOrbitIngredients, tuple[tuple[int, ...], ...]], ...]

    def __post_init__(self):
        summands = tuple(
            (ing, tuple(tuple(int(x) for x in row) for row in q))
            for ing, q in self.summands
        )
        object.__setattr__(self, "summands", summands)
        if not summands:
            raise EmptyDecomposition("need at least one summand")

    @property
    def ambient_dim(self) -> int:
        return sum(ing.ambient_dim for ing, _ in self.summands)


# ---------------------------------------------------------------------------
# basic constructions
# ---------------------------------------------------------------------------


def _trivial_generators(n: int):
    return {(): CycMatrix.identity(n)}


def connected_pair(decomposition) -> tuple[GroupSpec, GroupSpec]:
    """The product-of-GL pair attached to a decomposition U = sum V_i (x) W_i."""
    decomposition = [(int(v), int(w)) for v, w in decomposition]
    if not decomposition:
        raise EmptyDecomposition("decomposition must be nonempty")
    if any(v < 1 or w < 1 for v, w in decomposition):
        raise ValueError("summand dimensions must be positive")
    shapes = [TensorShape((("V", v), ("W", w))) for v, w in decomposition]
    ambient = Ambient(tuple(shapes))
    offsets = ambient.offsets()
    g_blocks = []
    h_blocks = []
    for (v, w), off in zip(decomposition, offsets):
        g_blocks.append(
            Block(v, tuple(tuple(off + r * w + c for c in range(w)) for r in range(v)))
        )
        h_blocks.append(
            Block(w, tuple(tuple(off + r * w + c for r in range(v)) for c in range(w)))
        )
    n = ambient.dim
    trivial = FinAbGroup.trivial()
    g = GroupSpec(ambient, g_blocks, trivial, _trivial_generators(n))
    h = GroupSpec(ambient, h_blocks, trivial, _trivial_generators(n))
    return g, h


def _side_generators(b, e, L, J, K, side):
    """Generator monomials of one side of a single-orbit pair, keyed by the
    product coordinates (lambda, xi, eta-or-j, k-or-chi)."""
    groups = [L, L, J, K]
    product, combine, split = product_embedding(groups)
    gens = {}
    id_b = Monomial.identity(b)
    id_e = Monomial.identity(e)
    for coset in product.elements():
        lam, xi, third, fourth = split(coset)
        l_op = heisenberg_monomial(L, lam, Character(L, xi.coords))
        if side == "g":
            j_op = character_monomial(J, Character(J, third.coords))
            k_op = translation_monomial(K, fourth)
        else:
            j_op = translation_monomial(J, third)
            k_op = character_monomial(K, Character(K, fourth.coords))
        mono = id_b.kron(id_e).kron(l_op).kron(j_op).kron(k_op)
        gens[coset.coords] = mono.to_matrix()
    return product, gens


def single_orbit_pair(ing: SingleOrbitIngredients) -> tuple[GroupSpec, GroupSpec]:
    """The pair in PGL(B x E x L x J x K) built from one ingredient tuple.

    The first spec has blocks GL(B) per K-index, Heisenberg operators on the
    L slot, character operators on J and translations on K; the second is
    the mirror image with E and J in place of B and K.
    """
    b, e = ing.b, ing.e
    L, J, K = ing.L_group, ing.J_group, ing.K_group
    l, j, k = L.order, J.order, K.order
    shape = TensorShape((("B", b), ("E", e), ("L", l), ("J", j), ("K", k)))
    ambient = Ambient.single(shape)
    n = ambient.dim

    g_blocks = []
    for k0 in range(k):
        grid = []
        for r in range(b):
            row = []
            for e0 in range(e):
                for l0 in range(l):
                    for j0 in range(j):
                        row.append(shape.flatten((r, e0, l0, j0, k0)))
            grid.append(tuple(row))
        g_blocks.append(Block(b, tuple(grid)))
    h_blocks = []
    for j0 in range(j):
        grid = []
        for r in range(e):
            row = []
            for b0 in range(b):
                for l0 in range(l):
                    for k0 in range(k):
                        row.append(shape.flatten((b0, r, l0, j0, k0)))
            grid.append(tuple(row))
        h_blocks.append(Block(e, tuple(grid)))

    gamma, g_gens = _side_generators(b, e, L, J, K, "g")
    delta, h_gens = _side_generators(b, e, L, J, K, "h")
    g = GroupSpec(ambient, g_blocks, gamma, g_gens)
    h = GroupSpec(ambient, h_blocks, delta, h_gens)
    return g, h


def xx_hat_pair(x_group: FinAbGroup) -> tuple[GroupSpec, GroupSpec]:
    """The self-dual translation-character pair on L^2 of a finite abelian
    group: both sides coincide, with component group of order |X|^2."""
    ing = SingleOrbitIngredients(
        1, 1, x_group, FinAbGroup.trivial(), FinAbGroup.trivial()
    )
    return single_orbit_pair(ing)


# ---------------------------------------------------------------------------
# tensor-with-X constructions on top of an existing pair
# ---------------------------------------------------------------------------


def _fresh_label(shape: TensorShape, base: str) -> str:
    if base not in shape.labels:
        return base
    i = 2
    while f"{base}{i}" in shape.labels:
        i += 1
    return f"{base}{i}"


def _extend_ambient(ambient: Ambient, n_x: int, base_label: str):
    shapes = []
    for s in ambient.summands:
        lbl = _fresh_label(s, base_label)
        shapes.append(TensorShape(s.factors + ((lbl, n_x),)))
    return Ambient(tuple(shapes))


def _product_generators(parts, builders, n: int):
    """Generators over a direct product of coset groups.

    parts: list of FinAbGroup; builders: function taking one element per
    part and returning the generator matrix.
    """
    product, combine, split = product_embedding(parts)
    gens = {}
    for coset in product.elements():
        gens[coset.coords] = builders(split(coset))
    return product, gens


def general_xx_hat_pair(h1: GroupSpec, h2: GroupSpec, x_group: FinAbGroup,
                        check: bool = True) -> tuple[GroupSpec, GroupSpec]:
    """Tensor a verified pair with the self-dual translation-character pair.

    Component groups multiply by X x X-hat on both sides.
    """
    if check:
        from .verify import verify_dual_pair

        report = verify_dual_pair(h1, h2)
        if not report.is_dual_pair:
            raise InputNotDualPair(f"input pair fails verification: {report.failures}")
    n_x = x_group.order
    ambient = _extend_ambient(h1.ambient, n_x, "X")
    n = ambient.dim

    def build_side(side: GroupSpec) -> GroupSpec:
        blocks = tuple(b.tensor_extend(n_x) for b in side.blocks)

        def builder(parts):
            gamma1, lam, xi = parts
            op = heisenberg_monomial(x_group, lam, Character(x_group, xi.coords))
            base = side.generator(gamma1.coords)
            mono = Monomial.from_matrix(base)
            if mono is not None:
                return mono.kron(op).to_matrix()
            return base.kron(op.to_matrix())

        comp, gens = _product_generators(
            [side.component_group, x_group, x_group], builder, n
        )
        return GroupSpec(ambient, blocks, comp, gens)

    return build_side(h1), build_side(h2)


def _is_scalar_component(spec: GroupSpec) -> bool:
    return spec.identity_component_dim() == 1


def _is_connected_gl_pair(h1: GroupSpec, h2: GroupSpec) -> bool:
    if not (h1.component_group.is_trivial() and h2.component_group.is_trivial()):
        return False
    from .verify import untwisted_commutant_basis

    basis = untwisted_commutant_basis(h1)
    return span_of_matrices(basis).equals(h2.algebra_span())


def type2_pair(h1: GroupSpec, h2: GroupSpec, x_group: FinAbGroup,
               variant: str) -> tuple[GroupSpec, GroupSpec]:
    """The two semidirect constructions on W (x) X.

    Variant "i" requires the first input's identity component to be the
    scalars; it contributes the full diagonal torus on the X slot and the
    component group grows by X.  Variant "ii" takes a connected mutual
    commutant pair in GL(W); the first side is replicated per X basis
    vector and twisted by translations, the second is tensored diagonally
    and twisted by characters.
    """
    if variant not in ("i", "ii"):
        raise ValueError("variant must be 'i' or 'ii'")
    n_x = x_group.order
    ambient = _extend_ambient(h1.ambient, n_x, "X")
    n = ambient.dim
    dim_w = h1.ambient.dim
    if variant == "i":
        if not _is_scalar_component(h1):
            raise PreconditionViolated(
                "variant i needs the first group's identity component to be scalars"
            )
        torus = tuple(
            Block(1, (tuple(g * n_x + x for g in range(dim_w)),)) for x in range(n_x)
        )

        def build_g(parts):
            gamma1, xx = parts
            op = translation_monomial(x_group, xx)
            base = h1.generator(gamma1.coords)
            mono = Monomial.from_matrix(base)
            if mono is not None:
                return mono.kron(op).to_matrix()
            return base.kron(op.to_matrix())

        comp_g, gens_g = _product_generators([h1.component_group, x_group], build_g, n)
        g_spec = GroupSpec(ambient, torus, comp_g, gens_g)

        def build_h(parts):
            gamma2, xi = parts
            op = character_monomial(x_group, Character(x_group, xi.coords))
            base = h2.generator(gamma2.coords)
            mono = Monomial.from_matrix(base)
            if mono is not None:
                return mono.kron(op).to_matrix()
            return base.kron(op.to_matrix())

        comp_h, gens_h = _product_generators([h2.component_group, x_group], build_h, n)
        h_blocks = tuple(b.tensor_extend(n_x) for b in h2.blocks)
        h_spec = GroupSpec(ambient, h_blocks, comp_h, gens_h)
        return g_spec, h_spec

    if not _is_connected_gl_pair(h1, h2):
        raise PreconditionViolated(
            "variant ii needs a connected mutual-commutant pair in GL(W)"
        )
    g_blocks = tuple(nb for b in h1.blocks for nb in b.replicate(n_x))
    gens_g = {}
    for x in x_group.elements():
        op = Monomial.identity(dim_w).kron(translation_monomial(x_group, x))
        gens_g[x.coords] = op.to_matrix()
    g_spec = GroupSpec(ambient, g_blocks, x_group, gens_g)
    h_blocks = tuple(b.tensor_extend(n_x) for b in h2.blocks)
    gens_h = {}
    for xi in x_group.characters():
        op = Monomial.identity(dim_w).kron(character_monomial(x_group, xi))
        gens_h[xi.coords] = op.to_matrix()
    h_spec = GroupSpec(ambient, h_blocks, x_group, gens_h)
    return g_spec, h_spec


# ---------------------------------------------------------------------------
# gluing across a direct sum
# ---------------------------------------------------------------------------


def _component_pairing_exponent(g_spec: GroupSpec, h_spec: GroupSpec, g_coords,
                                h_coords) -> Fraction:
    c = commutator_scalar(
        g_spec.monomial_generator(g_coords) or g_spec.generator(g_coords),
        h_spec.monomial_generator(h_coords) or h_spec.generator(h_coords),
    )
    root = c.as_root_of_unity()
    if root is None:
        raise IncompatibleGluing("commutator scalar is not a root of unity")
    return Fraction(root[1], root[0])


def _character_of_component(g_spec: GroupSpec, h_spec: GroupSpec, h_coords):
    """The character of the first side's component group cut out by pairing
    against one component of the second side."""
    gamma = g_spec.component_group
    coords = []
    for a, d in enumerate(gamma.invariant_factors):
        e_a = tuple(1 if t == a else 0 for t in range(gamma.rank))
        f = _component_pairing_exponent(g_spec, h_spec, e_a, h_coords)
        val = f * d
        if val.denominator != 1:
            raise IncompatibleGluing("pairing value incompatible with the coset order")
        coords.append(int(val) % d)
    return tuple(coords)


def monomial_direct_sum(monos) -> Monomial:
    perm = []
    scales = []
    offset = 0
    for m in monos:
        perm.extend(p + offset for p in m.perm)
        scales.extend(m.scales)
        offset += m.n
    return Monomial(perm, scales)


def multi_orbit_glue(spec: MultiOrbitSpec) -> tuple[GroupSpec, GroupSpec]:
    """Glue single-orbit pairs diagonally across their component groups.

    Each summand's component group is identified with the shared group via
    its gluing map; the dual maps are derived from the duality transport
    and the compatibility of all the commutator pairings is checked before
    assembling block-diagonal generators.
    """
    gamma = spec.gamma
    sides = []
    for ing, q in spec.summands:
        g_i, h_i = single_orbit_pair(ing)
        if not is_isomorphism_matrix(list(map(list, q)), gamma, g_i.component_group):
            raise NotIsomorphism(
                f"gluing map is not an isomorphism onto {g_i.component_group}"
            )
        u = dual_isomorphism_transport(list(map(list, q)), gamma, g_i.component_group)
        # identify the second side's cosets with characters of the first side
        char_of = {}
        for delta in h_i.component_group.elements():
            char_of[_character_of_component(g_i, h_i, delta.coords)] = delta.coords
        if len(char_of) != h_i.component_group.order:
            raise IncompatibleGluing("summand pairing is degenerate")
        sides.append((g_i, h_i, q, u, char_of))

    # pairing compatibility across summands, exhaustively on coset pairs
    for gamma_el in gamma.elements():
        for delta in gamma.characters():
            values = []
            for g_i, h_i, q, u, char_of in sides:
                gi_coords = apply_matrix(list(map(list, q)), gamma_el.coords,
                                         g_i.component_group).coords
                u_delta = tuple(
                    sum(u[r][c] * delta.coords[c] for c in range(gamma.rank))
                    % g_i.component_group.invariant_factors[r]
                    for r in range(g_i.component_group.rank)
                )
                hi_coords = char_of.get(u_delta)
                if hi_coords is None:
                    raise IncompatibleGluing("transported character misses every coset")
                values.append(
                    _component_pairing_exponent(g_i, h_i, gi_coords, hi_coords)
                )
            if any(v != values[0] for v in values[1:]):
                raise IncompatibleGluing(
                    f"pairings disagree at {gamma_el.coords}, {delta.coords}: {values}"
                )

    ambient = Ambient(tuple(g_i.ambient.summands[0] for g_i, *_ in sides))
    offsets = ambient.offsets()
    n = ambient.dim

    g_blocks = []
    h_blocks = []
    for (g_i, h_i, *_), off in zip(sides, offsets):
        g_blocks.extend(b.shift(off) for b in g_i.blocks)
        h_blocks.extend(b.shift(off) for b in h_i.blocks)

    g_gens = {}
    for gamma_el in gamma.elements():
        parts = []
        for g_i, h_i, q, u, char_of in sides:
            gi_coords = apply_matrix(list(map(list, q)), gamma_el.coords,
                                     g_i.component_group).coords
            parts.append(g_i.monomial_generator(gi_coords))
        g_gens[gamma_el.coords] = monomial_direct_sum(parts).to_matrix()

    h_gens = {}
    for delta in gamma.characters():
        parts = []
        for g_i, h_i, q, u, char_of in sides:
            u_delta = tuple(
                sum(u[r][c] * delta.coords[c] for c in range(gamma.rank))
                % g_i.component_group.invariant_factors[r]
                for r in range(g_i.component_group.rank)
            )
            parts.append(h_i.monomial_generator(char_of[u_delta]))
        h_gens[delta.coords] = monomial_direct_sum(parts).to_matrix()

    g = GroupSpec(ambient, tuple(g_blocks), gamma, g_gens)
    h = GroupSpec(ambient, tuple(h_blocks), gamma, h_gens)
    return g, h
