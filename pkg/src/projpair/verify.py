"""First-principles verification of the mutual-centralizer axioms.

The centralizer of a specified subgroup, taken in PGL(U), is computed
exactly: a matrix centralizes the image projectively iff it commutes with
the identity-component algebra on the nose and commutes with each
component generator up to a root-of-unity scalar.  For each admissible
scalar tuple the twisted commutant is an exact linear solve; a tuple
contributes one component of the centralizer iff its solution space
contains an invertible element.

Generators produced by the constructions are monomial matrices and the
identity components are coordinate-aligned block algebras, so the default
solver chases position orbits with a ratio union-find in O(n^2) per
generator.  A dense path over a stacked linear system handles arbitrary
inputs (and re-centralizing computed centralizers); the two agree exactly
and the tests cross-check them.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .abelian import FinAbGroup, subgroup_from_elements
from .construct import GroupSpec
from .cyclo import (
    ONE,
    ZERO,
    CycMatrix,
    CycNum,
    VectorSpan,
    span_of_matrices,
)
from .errors import (
    IdentityComponentNotSemisimpleBlocks,
    NotProjectivelyCommuting,
    ShapeMismatch,
)
from .matrep import Monomial, commutator_scalar


# ---------------------------------------------------------------------------
# ratio union-find over solution unknowns
# ---------------------------------------------------------------------------


class _RatioUnionFind:
    """Union-find where each element carries value[u] = ratio[u] * value[root];
    inconsistent relations collapse a class to zero."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.ratio: list[CycNum] = [ONE] * n
        self.dead = [False] * n

    def find(self, u: int) -> int:
        chain = []
        while self.parent[u] != u:
            chain.append(u)
            u = self.parent[u]
        acc = ONE
        for v in reversed(chain):
            acc = acc * self.ratio[v]
            self.parent[v] = u
            self.ratio[v] = acc
        return u

    def _root_and_ratio(self, u: int):
        root = self.find(u)
        return (root, ONE) if root == u else (root, self.ratio[u])

    def set_zero(self, u: int):
        root, _ = self._root_and_ratio(u)
        self.dead[root] = True

    def is_zero(self, u: int) -> bool:
        root, _ = self._root_and_ratio(u)
        return self.dead[root]

    def relate(self, u: int, v: int, mult: CycNum):
        """Impose value[v] = mult * value[u]."""
        ru, qu = self._root_and_ratio(u)
        rv, qv = self._root_and_ratio(v)
        if ru == rv:
            if qv != mult * qu:
                self.dead[ru] = True
            return
        # attach rv below ru: value[rv] = (mult*qu/qv) * value[ru]
        self.parent[rv] = ru
        self.ratio[rv] = mult * qu / qv
        self.dead[ru] = self.dead[ru] or self.dead[rv]

    def classes(self):
        """root -> list of (member, ratio); dead roots omitted."""
        out: dict[int, list] = {}
        for u in range(len(self.parent)):
            root, q = self._root_and_ratio(u)
            if self.dead[root]:
                continue
            out.setdefault(root, []).append((u, q))
        return out


# ---------------------------------------------------------------------------
# the commutant engine
# ---------------------------------------------------------------------------


class CommutantEngine:
    """Solves {X : X b = b X for the identity-component algebra,
    X h_i = c_i h_i X for the component generators} for many scalar tuples
    against one fixed target."""

    def __init__(self, n: int, blocks=None, algebra_basis=None, gens=(), gen_monos=None):
        self.n = n
        self.gens = list(gens)
        self.gen_monos = list(gen_monos) if gen_monos is not None else [
            Monomial.from_matrix(g) for g in self.gens
        ]
        self.grid_model = False
        if blocks is not None and self._blocks_partition(blocks, n):
            self.grid_model = True
            self.pos_unknown: dict = {}
            self.unknown_positions: list[list[tuple[int, int]]] = []
            for blk in blocks:
                for c1 in range(blk.mult):
                    for c2 in range(blk.mult):
                        idx = len(self.unknown_positions)
                        positions = [
                            (blk.grid[r][c1], blk.grid[r][c2]) for r in range(blk.dim)
                        ]
                        self.unknown_positions.append(positions)
                        for p in positions:
                            self.pos_unknown[p] = idx
            self.base_basis = None
        else:
            if algebra_basis is None:
                raise ValueError("need blocks or an algebra basis")
            self.base_basis = _untwisted_base(n, algebra_basis)

    @staticmethod
    def _blocks_partition(blocks, n: int) -> bool:
        seen = set()
        for blk in blocks:
            for i in blk.indices():
                if i in seen:
                    return False
                seen.add(i)
        return seen == set(range(n))

    @staticmethod
    def from_spec(target: GroupSpec, gen_cosets=None):
        n = target.ambient.dim
        cosets = gen_cosets if gen_cosets is not None else target.generating_cosets()
        gens = [target.generator(c) for c in cosets]
        monos = [target.monomial_generator(c) for c in cosets]
        return CommutantEngine(n, blocks=target.blocks,
                               algebra_basis=target.algebra_basis(),
                               gens=gens, gen_monos=monos)

    # -- solving -----------------------------------------------------------

    def solve(self, scalars) -> list[CycMatrix]:
        """Exact basis of the twisted commutant for one scalar tuple."""
        scalars = [s for s in scalars]
        if len(scalars) != len(self.gens):
            raise ValueError("need one scalar per generator")
        if self.grid_model and all(m is not None for m in self.gen_monos):
            return self._solve_monomial(scalars)
        basis = self._pattern_basis() if self.grid_model else list(self.base_basis)
        for h, c in zip(self.gens, scalars):
            if not basis:
                return []
            basis = _apply_twist_constraint(basis, h, c)
        return basis

    def _pattern_basis(self) -> list[CycMatrix]:
        out = []
        for positions in self.unknown_positions:
            out.append(
                CycMatrix.from_entries(self.n, self.n, {p: ONE for p in positions})
            )
        return out

    def _solve_monomial(self, scalars) -> list[CycMatrix]:
        uf = _RatioUnionFind(len(self.unknown_positions))
        for mono, c in zip(self.gen_monos, scalars):
            for a in range(self.n):
                sa = mono.scales[a]
                pa = mono.perm[a]
                for b in range(self.n):
                    # X[perm a, perm b] = (c * s_a / s_b) X[a, b]
                    src = self.pos_unknown.get((a, b))
                    tgt = self.pos_unknown.get((pa, mono.perm[b]))
                    if src is None and tgt is None:
                        continue
                    if src is None:
                        uf.set_zero(tgt)
                    elif tgt is None:
                        uf.set_zero(src)
                    else:
                        uf.relate(src, tgt, c * sa / mono.scales[b])
        basis = []
        classes = uf.classes()
        for root in sorted(classes):
            cells = {}
            for u, ratio in classes[root]:
                for p in self.unknown_positions[u]:
                    cells[p] = ratio
            basis.append(CycMatrix.from_entries(self.n, self.n, cells))
        return basis

    # -- invertible witnesses ------------------------------------------------

    def witness(self, basis, scalars) -> CycMatrix | None:
        """A deterministic invertible element of the span, or None (exact)."""
        if not basis:
            return None
        if all(_scalar_is_one(c) for c in scalars):
            return CycMatrix.identity(self.n)
        return _invertible_in_span(basis, self.n,
                                   fallback=lambda: self._conjugate_basis(scalars))

    def _conjugate_basis(self, scalars):
        inv = [as_scalar_inverse(c) for c in scalars]
        return self.solve(inv)


def as_scalar_inverse(c: CycNum) -> CycNum:
    return c.inverse()


def _scalar_is_one(c) -> bool:
    return c.is_one() if isinstance(c, CycNum) else c == 1


def _untwisted_base(n: int, algebra_basis) -> list[CycMatrix]:
    """Commutant of a spanned algebra: iterate X a = a X over a basis."""
    basis = [
        CycMatrix.from_entries(n, n, {(i, j): ONE})
        for i in range(n)
        for j in range(n)
    ]
    for a in algebra_basis:
        if not basis:
            return []
        basis = _apply_twist_constraint(basis, a, ONE)
    return basis


def _apply_twist_constraint(basis, h: CycMatrix, c) -> list[CycMatrix]:
    """Cut a solution basis down by X h = c h X."""
    c = c if isinstance(c, CycNum) else CycNum.from_rational(c)
    images = [(x @ h) - (h @ x).scale(c) for x in basis]
    rows = set()
    for img in images:
        for i in range(img.rows):
            for j in range(img.cols):
                if not img.entry(i, j).is_zero():
                    rows.add((i, j))
    if not rows:
        return list(basis)
    rows = sorted(rows)
    mat = CycMatrix(
        [[img.entry(i, j) for img in images] for (i, j) in rows]
    )
    kern = mat.kernel()
    out = []
    for vec in kern:
        acc = None
        for k, x in enumerate(basis):
            coeff = vec.entry(k, 0)
            if coeff.is_zero():
                continue
            term = x.scale(coeff)
            acc = term if acc is None else acc + term
        if acc is not None:
            out.append(acc)
    return out


# -- invertible-element search ------------------------------------------------


def _det_nonzero(mat: CycMatrix) -> bool:
    return mat.rank() == mat.rows


def _combine(basis, coeffs) -> CycMatrix | None:
    acc = None
    for x, c in zip(basis, coeffs):
        if c == 0:
            continue
        term = x.scale(CycNum.from_rational(c))
        acc = term if acc is None else acc + term
    return acc


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
           67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
           139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
           211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277,
           281, 283, 293, 307, 311]


def _sample_vectors(dim: int, n: int):
    """Deterministic coefficient samples; the fast path of the witness search."""
    for k in range(dim):
        yield tuple(1 if i == k else 0 for i in range(dim))
    yield (1,) * dim
    yield tuple(_PRIMES[i % len(_PRIMES)] for i in range(dim))
    yield tuple(pow(2, i, n * dim + 3) for i in range(dim))
    state = dim * 2654435761 % (2 ** 32)
    produced = dim + 3
    while produced < 64:
        vec = []
        for _ in range(dim):
            state = (1103515245 * state + 12345) % (2 ** 31)
            vec.append(state % (dim * n + 1))
        produced += 1
        yield tuple(vec)


def _invertible_in_span(basis, n: int, fallback=None) -> CycMatrix | None:
    """Exact search for an invertible element of a matrix span.

    Deterministic samples first; if they all fail, a product grid of size
    n+1 per coordinate decides existence exactly (the determinant has
    degree at most n in each coordinate, so it cannot vanish on the whole
    grid unless it is identically zero).  A cheap necessary condition via
    the conjugate space prunes the common no-witness case first.
    """
    dim = len(basis)
    tried = set()
    for coeffs in _sample_vectors(dim, n):
        if coeffs in tried:
            continue
        tried.add(coeffs)
        cand = _combine(basis, coeffs)
        if cand is not None and _det_nonzero(cand):
            return cand
    if fallback is not None:
        conj = fallback()
        if conj is not None:
            products = VectorSpan(n * n)
            ident = CycMatrix.identity(n).flatten()
            found = False
            for x in basis:
                for y in conj:
                    products.add((x @ y).flatten())
                    if products.contains(ident):
                        found = True
                        break
                if found:
                    break
            if not found:
                # an invertible w in the span would put I = w w^{-1} here
                return None
    if (n + 1) ** dim > 2_000_000:
        raise RuntimeError(
            "invertibility undecided by sampling and the grid bound is "
            f"impractical (dim {dim}, ambient {n})"
        )
    for coeffs in itertools.product(range(n + 1), repeat=dim):
        if coeffs in tried:
            continue
        cand = _combine(basis, coeffs)
        if cand is not None and _det_nonzero(cand):
            return cand
    return None


# ---------------------------------------------------------------------------
# the public twisted-commutant operation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistedCommutantProblem:
    """Block-span commutation plus scalar-twisted generator commutation.

    Scalars are validated at construction: each c_i must satisfy
    c_i^{m_i} = 1 where m_i is the least power of h_i lying projectively
    in the spanned algebra.
    """

    block_span: tuple[CycMatrix, ...]
    comp_gens: tuple[CycMatrix, ...]
    scalars: tuple[CycNum, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_span", tuple(self.block_span))
        object.__setattr__(self, "comp_gens", tuple(self.comp_gens))
        object.__setattr__(self, "scalars", tuple(self.scalars))
        if not self.block_span:
            raise ValueError("block span must be nonempty (scalars at least)")
        n = self.block_span[0].rows
        for m in self.block_span + self.comp_gens:
            if m.shape != (n, n):
                raise ValueError("all matrices must share the ambient dimension")
        if len(self.comp_gens) != len(self.scalars):
            raise ValueError("need one scalar per generator")
        span = span_of_matrices(self.block_span)
        for h, c in zip(self.comp_gens, self.scalars):
            m = projective_order(h, span, bound=n * n)
            if (c ** m) != ONE:
                raise ValueError(
                    f"scalar {c!r} does not satisfy c^{m} = 1 for its generator"
                )

    @property
    def dim(self) -> int:
        return self.block_span[0].rows


def projective_order(h: CycMatrix, span: VectorSpan, bound: int) -> int:
    """Least m >= 1 with h^m inside the spanned algebra (up to scalar)."""
    power = h
    for m in range(1, bound + 1):
        if span.contains(power.flatten()):
            return m
        power = power @ h
    raise ValueError("generator power never enters the identity component")


def twisted_commutant(problem: TwistedCommutantProblem):
    """Exact basis of the twisted commutant, with an invertible witness.

    Returns (basis, has_invertible, witness); the basis may be empty.
    """
    n = problem.dim
    engine = CommutantEngine(
        n, blocks=None, algebra_basis=list(problem.block_span),
        gens=list(problem.comp_gens),
    )
    basis = engine.solve(list(problem.scalars))
    witness = engine.witness(basis, list(problem.scalars))
    if witness is not None:
        witness = _normalize_projective(witness)
    return basis, witness is not None, witness


def untwisted_commutant_basis(spec: GroupSpec) -> list[CycMatrix]:
    """Commutant of a spec's identity-component algebra (no twists)."""
    engine = CommutantEngine(
        spec.ambient.dim, blocks=spec.blocks,
        algebra_basis=None if spec.blocks is not None else spec.algebra_basis(),
    )
    return engine.solve([])


def _normalize_projective(mat: CycMatrix) -> CycMatrix:
    for i in range(mat.rows):
        for j in range(mat.cols):
            v = mat.entry(i, j)
            if not v.is_zero():
                return mat.scale(v.inverse())
    return mat


# ---------------------------------------------------------------------------
# projective centralizers
# ---------------------------------------------------------------------------


@dataclass
class CentralizerData:
    """The computed centralizer plus the bookkeeping linking its components
    to scalar tuples against the target's generating cosets."""

    spec: GroupSpec
    target: GroupSpec
    ref_cosets: list
    moduli: list[int]
    tuple_to_coset: dict
    algebra_span: VectorSpan


def _scalar_tuple(x, ref_monos, ref_mats, moduli):
    """Commutator scalars of x against the reference generators, as
    exponents in the tuple moduli.  Raises NotProjectivelyCommuting."""
    out = []
    x_mono = Monomial.from_matrix(x) if isinstance(x, CycMatrix) else x
    for mono, mat, g in zip(ref_monos, ref_mats, moduli):
        left = x_mono if x_mono is not None else x
        right = mono if (mono is not None and x_mono is not None) else mat
        c = commutator_scalar(left, right)
        root = c.as_root_of_unity()
        if root is None or g % root[0]:
            raise NotProjectivelyCommuting(
                f"scalar {c!r} has order {root} outside modulus {g}"
            )
        order, expo = root
        out.append((expo * (g // order)) % g)
    return tuple(out)


def _solve_tuple_batch(engine, tuples, moduli):
    out = []
    for exps in tuples:
        scalars = [
            CycNum.root_of_unity(g, t) if g > 1 else ONE
            for g, t in zip(moduli, exps)
        ]
        basis = engine.solve(scalars)
        if not basis:
            out.append((exps, None))
            continue
        witness = engine.witness(basis, scalars)
        out.append((exps, witness))
    return out


def compute_centralizer(target: GroupSpec, workers: int = 1) -> CentralizerData:
    """The full preimage in GL(U) of the centralizer of the target's image.

    Scalar tuples run over roots of unity whose order divides both the
    generator's projective order modulo the identity component and the
    ambient dimension (an invertible solution forces c^n = 1 by taking
    determinants); each surviving tuple contributes one component.
    """
    n = target.ambient.dim
    engine = CommutantEngine.from_spec(target)
    ref_cosets = target.generating_cosets()
    span = target.algebra_span()
    moduli = []
    for coords, d in zip(ref_cosets, target.component_group.invariant_factors):
        mono = target.monomial_generator(coords)
        mat = target.generator(coords)
        m = _projective_order_bounded(mat, mono, span, d)
        moduli.append(math.gcd(m, n))
    all_tuples = list(itertools.product(*(range(g) for g in moduli)))
    if workers > 1 and len(all_tuples) > 1:
        chunk = max(1, len(all_tuples) // (workers * 4))
        batches = [all_tuples[i:i + chunk] for i in range(0, len(all_tuples), chunk)]
        results = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_solve_tuple_batch, itertools.repeat(engine),
                                 batches, itertools.repeat(moduli)):
                results.extend(part)
    else:
        results = _solve_tuple_batch(engine, all_tuples, moduli)

    identity_basis = engine.solve([ONE] * len(moduli)) if moduli else engine.solve([])
    if not identity_basis:
        raise IdentityComponentNotSemisimpleBlocks("untwisted commutant is empty")
    _check_semisimple(identity_basis)

    surviving = {exps: w for exps, w in results if w is not None}
    zero_tuple = tuple(0 for _ in moduli)
    surviving[zero_tuple] = CycMatrix.identity(n)
    comp_group, to_canonical = subgroup_from_elements(moduli, list(surviving))
    if comp_group.order != len(surviving):
        raise AssertionError("surviving scalar tuples do not form a group")
    generators = {}
    tuple_to_coset = {}
    for exps, w in surviving.items():
        coords = to_canonical(exps)
        generators[coords] = _normalize_projective(w)
        tuple_to_coset[exps] = coords
    spec = GroupSpec(
        target.ambient,
        None,
        comp_group,
        generators,
        algebra_basis=identity_basis,
    )
    return CentralizerData(
        spec=spec,
        target=target,
        ref_cosets=ref_cosets,
        moduli=moduli,
        tuple_to_coset=tuple_to_coset,
        algebra_span=span_of_matrices(identity_basis),
    )


def projective_centralizer(target: GroupSpec, workers: int = 1) -> GroupSpec:
    return compute_centralizer(target, workers=workers).spec


def _projective_order_bounded(mat, mono, span: VectorSpan, coset_order: int) -> int:
    if mono is not None:
        power = mono
        for m in range(1, coset_order + 1):
            if span.contains(power.to_matrix().flatten()):
                return m
            power = power @ mono
    else:
        power = mat
        for m in range(1, coset_order + 1):
            if span.contains(power.flatten()):
                return m
            power = power @ mat
    raise ValueError(
        "generator's projective order does not divide its coset order; "
        "the spec violates its extension invariant"
    )


def _check_semisimple(basis) -> None:
    """Trace-form nondegeneracy: exact criterion for a direct sum of full
    matrix algebras over an algebraically closed field."""
    dim = len(basis)
    gram = []
    for a in basis:
        row = []
        for b in basis:
            acc = ZERO
            for i in range(a.rows):
                for j in range(a.cols):
                    va = a.entry(i, j)
                    if va.is_zero():
                        continue
                    vb = b.entry(j, i)
                    if not vb.is_zero():
                        acc = acc + va * vb
            row.append(acc)
        gram.append(row)
    if CycMatrix(gram).rank() != dim:
        raise IdentityComponentNotSemisimpleBlocks(
            "untwisted commutant is not a direct sum of full matrix algebras"
        )


# ---------------------------------------------------------------------------
# pairing tables and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairingTable:
    """Commutator scalars on component pairs as (order, exponent) roots of
    unity, rows and columns in element-enumeration order."""

    gamma: FinAbGroup
    delta: FinAbGroup
    values: tuple[tuple[tuple[int, int], ...], ...]

    def value_at(self, i: int, j: int) -> tuple[int, int]:
        return self.values[i][j]

    def is_nondegenerate(self) -> bool:
        rows = set(self.values)
        if len(rows) != len(self.values):
            return False
        cols = set()
        for j in range(len(self.values[0])):
            cols.add(tuple(self.values[i][j] for i in range(len(self.values))))
        return len(cols) == len(self.values[0])

    def is_bicharacter(self) -> bool:
        gamma_elems = list(self.gamma.elements())
        delta_elems = list(self.delta.elements())
        idx_g = {e.coords: i for i, e in enumerate(gamma_elems)}
        idx_d = {e.coords: i for i, e in enumerate(delta_elems)}

        def frac(v):
            return Fraction(v[1], v[0])

        for a in gamma_elems:
            for b in gamma_elems:
                s = (a + b).coords
                for j in range(len(delta_elems)):
                    lhs = frac(self.values[idx_g[s]][j])
                    rhs = (frac(self.values[idx_g[a.coords]][j])
                           + frac(self.values[idx_g[b.coords]][j])) % 1
                    if lhs != rhs:
                        return False
        for a in delta_elems:
            for b in delta_elems:
                s = (a + b).coords
                for i in range(len(gamma_elems)):
                    lhs = frac(self.values[i][idx_d[s]])
                    rhs = (frac(self.values[i][idx_d[a.coords]])
                           + frac(self.values[i][idx_d[b.coords]])) % 1
                    if lhs != rhs:
                        return False
        return True

    def to_json_dict(self):
        return {
            "gamma": {"invariant_factors": list(self.gamma.invariant_factors)},
            "delta": {"invariant_factors": list(self.delta.invariant_factors)},
            "values": [[list(v) for v in row] for row in self.values],
        }


def pairing_table(g: GroupSpec, h: GroupSpec) -> PairingTable:
    """The table of commutator scalars over all component pairs.

    Well-defined on components: scalars cancel in commutators, so the
    choice of generator representatives does not matter.
    """
    n = g.ambient.dim
    rows = []
    for ge in g.component_group.elements():
        gm = g.monomial_generator(ge.coords)
        gmat = g.generator(ge.coords)
        row = []
        for he in h.component_group.elements():
            hm = h.monomial_generator(he.coords)
            if gm is not None and hm is not None:
                c = commutator_scalar(gm, hm)
            else:
                c = commutator_scalar(gmat, h.generator(he.coords))
            root = c.as_root_of_unity()
            if root is None:
                raise NotProjectivelyCommuting("commutator scalar is not a root of unity")
            if n % root[0]:
                raise NotProjectivelyCommuting(
                    f"scalar order {root[0]} does not divide the ambient dimension {n}"
                )
            row.append(root)
        rows.append(tuple(row))
    return PairingTable(g.component_group, h.component_group, tuple(rows))


def component_pairing_character_matrix(g: GroupSpec, h: GroupSpec):
    """Matrix of the map from the second component group to characters of
    the first, delta -> commutator pairing with delta, on canonical coords."""
    gamma = g.component_group
    delta = h.component_group
    cols = []
    for e in delta.generators():
        h_mono = h.monomial_generator(e.coords)
        h_mat = h.generator(e.coords)
        col = []
        for a, d in enumerate(gamma.invariant_factors):
            coords_a = tuple(1 if t == a else 0 for t in range(gamma.rank))
            g_mono = g.monomial_generator(coords_a)
            if g_mono is not None and h_mono is not None:
                c = commutator_scalar(g_mono, h_mono)
            else:
                c = commutator_scalar(g.generator(coords_a), h_mat)
            order, expo = c.as_root_of_unity()
            val = Fraction(expo, order) * d
            if val.denominator != 1:
                raise NotProjectivelyCommuting(
                    "pairing value incompatible with the coset order"
                )
            col.append(int(val) % d)
        cols.append(col)
    return [[cols[j][i] for j in range(delta.rank)] for i in range(gamma.rank)]


def pairing_coset_character_matrix(g: GroupSpec, h: GroupSpec):
    """Inverse of the pairing identification: characters of the first
    component group (self-dual coords) back to cosets of the second."""
    from .abelian import invert_isomorphism

    phi = component_pairing_character_matrix(g, h)
    char_space = FinAbGroup(g.component_group.invariant_factors)
    return invert_isomorphism(phi, h.component_group, char_space)


FAIL_CENTRALIZER_LARGER = "CENTRALIZER_LARGER"
FAIL_CENTRALIZER_SMALLER = "CENTRALIZER_SMALLER"
FAIL_PAIRING_DEGENERATE = "PAIRING_DEGENERATE"
FAIL_IDENTITY_COMPONENT_MISMATCH = "IDENTITY_COMPONENT_MISMATCH"


@dataclass(frozen=True)
class VerificationFailure:
    code: str
    detail: str

    def to_json_dict(self):
        return {"code": self.code, "detail": self.detail}


@dataclass
class VerificationReport:
    is_dual_pair: bool
    g_dim: int
    h_dim: int
    g_components: int
    h_components: int
    pairing: PairingTable | None
    failures: list[VerificationFailure] = field(default_factory=list)

    def failure_codes(self):
        return [f.code for f in self.failures]

    def to_json_dict(self):
        return {
            "is_dual_pair": self.is_dual_pair,
            "g_dim": self.g_dim,
            "h_dim": self.h_dim,
            "g_components": self.g_components,
            "h_components": self.h_components,
            "pairing": self.pairing.to_json_dict() if self.pairing else None,
            "failures": [f.to_json_dict() for f in self.failures],
        }


def _membership(candidate: CycMatrix, coset_rep: CycMatrix, span: VectorSpan) -> bool:
    """Is candidate inside coset_rep * (algebra of the span)?"""
    mono = Monomial.from_matrix(coset_rep)
    if mono is not None:
        shifted = mono.inverse().to_matrix() @ candidate
    else:
        shifted = coset_rep.inverse() @ candidate
    return span.contains(shifted.flatten())


def _compare_with_centralizer(claimed: GroupSpec, computed: CentralizerData,
                              reference: GroupSpec):
    """Failures from comparing a claimed side against the computed
    centralizer of the other side."""
    failures = []
    claimed_span = claimed.algebra_span()
    comp_span = computed.algebra_span
    span_cl_in_co = comp_span.contains_span(claimed_span)
    span_co_in_cl = claimed_span.contains_span(comp_span)

    ref_monos = [reference.monomial_generator(c) for c in computed.ref_cosets]
    ref_mats = [reference.generator(c) for c in computed.ref_cosets]

    claimed_in_computed = span_cl_in_co
    claimed_tuples = {}
    if claimed_in_computed:
        for coords, mat in claimed.generators.items():
            try:
                t = _scalar_tuple(mat, ref_monos, ref_mats, computed.moduli)
            except NotProjectivelyCommuting:
                claimed_in_computed = False
                break
            claimed_tuples[t] = coords
            target_coset = computed.tuple_to_coset.get(t)
            if target_coset is None:
                claimed_in_computed = False
                break
            if not _membership(mat, computed.spec.generator(target_coset), comp_span):
                claimed_in_computed = False
                break

    computed_in_claimed = span_co_in_cl
    if computed_in_claimed:
        if len(claimed_tuples) != claimed.component_count():
            # build tuples if the previous pass did not finish
            claimed_tuples = {}
            for coords, mat in claimed.generators.items():
                try:
                    t = _scalar_tuple(mat, ref_monos, ref_mats, computed.moduli)
                except NotProjectivelyCommuting:
                    break
                claimed_tuples[t] = coords
        for t, coords in computed.tuple_to_coset.items():
            claimed_coset = claimed_tuples.get(t)
            if claimed_coset is None:
                computed_in_claimed = False
                break
            if not _membership(computed.spec.generator(coords),
                               claimed.generator(claimed_coset), claimed_span):
                computed_in_claimed = False
                break

    if claimed_in_computed and computed_in_claimed:
        return failures
    if claimed_in_computed and not computed_in_claimed:
        failures.append(VerificationFailure(
            FAIL_CENTRALIZER_LARGER,
            f"computed centralizer strictly contains the claimed group "
            f"(identity dims {computed.spec.identity_component_dim()} vs "
            f"{claimed.identity_component_dim()}, components "
            f"{computed.spec.component_count()} vs {claimed.component_count()})",
        ))
    elif computed_in_claimed and not claimed_in_computed:
        failures.append(VerificationFailure(
            FAIL_CENTRALIZER_SMALLER,
            "claimed group is strictly larger than the computed centralizer",
        ))
    else:
        failures.append(VerificationFailure(
            FAIL_IDENTITY_COMPONENT_MISMATCH,
            "claimed group and computed centralizer are incomparable",
        ))
    return failures


def verify_dual_pair(g: GroupSpec, h: GroupSpec, workers: int = 1) -> VerificationReport:
    """Check the mutual-centralizer axioms from first principles.

    Computes the projective centralizer of each side and compares it with
    the other side; fills the component pairing table and checks that it
    is a nondegenerate bicharacter with matching component counts.
    """
    if not g.ambient.compatible_with(h.ambient):
        raise ShapeMismatch(
            f"ambient spaces differ: {g.ambient.summand_dims()} vs {h.ambient.summand_dims()}"
        )
    failures = []
    cent_h = compute_centralizer(h, workers=workers)
    failures.extend(_compare_with_centralizer(g, cent_h, h))
    cent_g = compute_centralizer(g, workers=workers)
    for fail in _compare_with_centralizer(h, cent_g, g):
        failures.append(VerificationFailure(fail.code, "mirror check: " + fail.detail))

    table = None
    try:
        table = pairing_table(g, h)
        if g.component_count() != h.component_count() or not table.is_nondegenerate():
            failures.append(VerificationFailure(
                FAIL_PAIRING_DEGENERATE,
                f"pairing table degenerate or size mismatch "
                f"({g.component_count()} vs {h.component_count()})",
            ))
    except NotProjectivelyCommuting as exc:
        failures.append(VerificationFailure(
            FAIL_PAIRING_DEGENERATE, f"pairing not defined: {exc}"
        ))

    return VerificationReport(
        is_dual_pair=not failures,
        g_dim=g.identity_component_dim(),
        h_dim=h.identity_component_dim(),
        g_components=g.component_count(),
        h_components=h.component_count(),
        pairing=table,
        failures=failures,
    )


def specs_equal(a: GroupSpec, b: GroupSpec) -> bool:
    """Equality of two specified subgroups of the same GL(U).

    Identity components compare as algebra spans; components must biject
    with projectively matching generators (one direction plus equal counts
    suffices because distinct cosets are disjoint).
    """
    if a.ambient.dim != b.ambient.dim:
        return False
    span_a = a.algebra_span()
    span_b = b.algebra_span()
    if not span_a.equals(span_b):
        return False
    if a.component_count() != b.component_count():
        return False
    for coords, mat in a.generators.items():
        if not any(
            _membership(mat, b.generator(bc), span_b) for bc in b.generators
        ):
            return False
    return True
