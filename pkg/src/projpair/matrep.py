"""Concrete operators on L^2 of a finite abelian group, tensor-slot
embeddings, commutator scalars, and projective equality.

The basis of L^2(X, C) is indexed by the lexicographically ordered group
elements with the identity first, so every matrix here is pinned down
exactly.  Translation and character operators are monomial (one nonzero
entry per column); the Monomial class keeps that structure explicit so
that products, inverses and commutator scalars cost O(n) instead of
O(n^3).  Conversion to and from dense CycMatrix is lossless.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import Character, FinAbGroup, GroupElement, char_eval
from .cyclo import ONE, ZERO, CycMatrix, CycNum, as_cyc
from .errors import (
    DimensionMismatch,
    GroupMismatch,
    NotProjectivelyCommuting,
    UnknownLabel,
)


@dataclass(frozen=True)
class TensorShape:
    """An ordered tensor decomposition of an ambient space.

    Factor order is the Kronecker slot order: the first factor's index
    varies slowest in the flattened basis.
    """

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        factors = tuple((str(lbl), int(dim)) for lbl, dim in self.factors)
        object.__setattr__(self, "factors", factors)
        labels = [lbl for lbl, _ in factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate factor labels in {labels}")
        for lbl, dim in factors:
            if dim < 1:
                raise ValueError(f"factor {lbl} has nonpositive dimension {dim}")

    @property
    def dim(self) -> int:
        total = 1
        for _, d in self.factors:
            total *= d
        return total

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.factors)

    def dim_of(self, label: str) -> int:
        for lbl, d in self.factors:
            if lbl == label:
                return d
        raise UnknownLabel(f"no factor labeled {label!r} in {self.labels}")

    def position(self, label: str) -> int:
        for i, (lbl, _) in enumerate(self.factors):
            if lbl == label:
                return i
        raise UnknownLabel(f"no factor labeled {label!r} in {self.labels}")

    def flatten(self, multi_index) -> int:
        idx = 0
        for (lbl, d), k in zip(self.factors, multi_index):
            if not 0 <= k < d:
                raise ValueError(f"index {k} out of range for factor {lbl}")
            idx = idx * d + k
        return idx

    def unflatten(self, index: int) -> tuple[int, ...]:
        out = []
        for _, d in reversed(self.factors):
            out.append(index % d)
            index //= d
        return tuple(reversed(out))


class Monomial:
    """An invertible matrix with one nonzero entry per row and column.

    Column j holds scale[j] at row perm[j].  All the operators built from
    translations and characters are of this form, as are their Kronecker
    products, so the verification pipeline works at O(n) per product.
    """

    __slots__ = ("perm", "scales")

    def __init__(self, perm, scales):
        perm = tuple(perm)
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError("perm is not a permutation")
        scales = tuple(as_cyc(s) for s in scales)
        if len(scales) != n:
            raise ValueError("need one scale per column")
        if any(s.is_zero() for s in scales):
            raise ValueError("monomial scales must be nonzero")
        self.perm = perm
        self.scales = scales

    @property
    def n(self) -> int:
        return len(self.perm)

    @staticmethod
    def identity(n: int) -> "Monomial":
        return Monomial(range(n), [ONE] * n)

    def is_identity(self) -> bool:
        return all(p == j for j, p in enumerate(self.perm)) and all(
            s.is_one() for s in self.scales
        )

    def __matmul__(self, other: "Monomial") -> "Monomial":
        if self.n != other.n:
            raise DimensionMismatch("monomial sizes differ")
        # (self @ other): column j -> other sends j to (other.perm[j], other.scales[j]),
        # then self sends that row index as a column
        perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
        scales = tuple(other.scales[j] * self.scales[other.perm[j]] for j in range(self.n))
        return Monomial(perm, scales)

    def inverse(self) -> "Monomial":
        n = self.n
        perm = [0] * n
        scales: list[CycNum] = [ONE] * n
        for j in range(n):
            perm[self.perm[j]] = j
            scales[self.perm[j]] = self.scales[j].inverse()
        return Monomial(perm, scales)

    def __pow__(self, e: int) -> "Monomial":
        if e < 0:
            return self.inverse() ** (-e)
        out = Monomial.identity(self.n)
        base = self
        while e:
            if e & 1:
                out = out @ base
            e >>= 1
            if e:
                base = base @ base
        return out

    def scale_by(self, c) -> "Monomial":
        c = as_cyc(c)
        return Monomial(self.perm, tuple(c * s for s in self.scales))

    def kron(self, other: "Monomial") -> "Monomial":
        """Row-major Kronecker product; this factor's indices vary slowest."""
        n2 = other.n
        perm = []
        scales = []
        for j1 in range(self.n):
            for j2 in range(n2):
                perm.append(self.perm[j1] * n2 + other.perm[j2])
                scales.append(self.scales[j1] * other.scales[j2])
        return Monomial(perm, scales)

    def entry(self, i: int, j: int) -> CycNum:
        return self.scales[j] if self.perm[j] == i else ZERO

    def to_matrix(self) -> CycMatrix:
        cells = {(self.perm[j], j): self.scales[j] for j in range(self.n)}
        return CycMatrix.from_entries(self.n, self.n, cells)

    @staticmethod
    def from_matrix(mat: CycMatrix):
        """Detect monomial structure; returns None when the matrix is not monomial."""
        if not mat.is_square():
            return None
        n = mat.rows
        perm = [-1] * n
        scales = [None] * n
        for j in range(n):
            hit = None
            for i in range(n):
                v = mat.entry(i, j)
                if not v.is_zero():
                    if hit is not None:
                        return None
                    hit = (i, v)
            if hit is None:
                return None
            perm[j], scales[j] = hit
        if sorted(perm) != list(range(n)):
            return None
        return Monomial(perm, scales)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.perm == other.perm and self.scales == other.scales

    __hash__ = None

    def __repr__(self):
        return f"Monomial(perm={self.perm}, scales={list(map(repr, self.scales))})"


def translation_monomial(group: FinAbGroup, x: GroupElement) -> Monomial:
    if x.group != group:
        raise GroupMismatch("element of a different group")
    order = list(group.elements())
    perm = [group.index_of(e + x) for e in order]
    return Monomial(perm, [ONE] * len(order))


def character_monomial(group: FinAbGroup, xi: Character) -> Monomial:
    if xi.group != group:
        raise GroupMismatch("character of a different group")
    return Monomial(range(group.order), [char_eval(xi, e) for e in group.elements()])


def translation_matrix(group: FinAbGroup, x: GroupElement) -> CycMatrix:
    """The permutation matrix sending the basis vector at g to the one at g + x."""
    return translation_monomial(group, x).to_matrix()


def character_matrix(group: FinAbGroup, xi: Character) -> CycMatrix:
    """diag(xi(g)) over the lexicographically ordered group elements."""
    return character_monomial(group, xi).to_matrix()


def heisenberg_monomial(group: FinAbGroup, x: GroupElement, xi: Character) -> Monomial:
    """The canonical section tau_x sigma_xi of a translation-character coset."""
    return translation_monomial(group, x) @ character_monomial(group, xi)


def embed_factor(mat: CycMatrix, shape: TensorShape, label: str) -> CycMatrix:
    """Place a square matrix at one tensor slot, identity elsewhere."""
    pos = shape.position(label)
    d = shape.factors[pos][1]
    if not mat.is_square() or mat.rows != d:
        raise DimensionMismatch(
            f"matrix is {mat.shape}, factor {label!r} has dimension {d}"
        )
    pre = 1
    for _, dd in shape.factors[:pos]:
        pre *= dd
    post = 1
    for _, dd in shape.factors[pos + 1:]:
        post *= dd
    out = mat
    if pre > 1:
        out = CycMatrix.identity(pre).kron(out)
    if post > 1:
        out = out.kron(CycMatrix.identity(post))
    return out


def embed_factor_monomial(mono: Monomial, shape: TensorShape, label: str) -> Monomial:
    pos = shape.position(label)
    d = shape.factors[pos][1]
    if mono.n != d:
        raise DimensionMismatch(f"monomial is {mono.n}, factor {label!r} has dimension {d}")
    pre = 1
    for _, dd in shape.factors[:pos]:
        pre *= dd
    post = 1
    for _, dd in shape.factors[pos + 1:]:
        post *= dd
    out = mono
    if pre > 1:
        out = Monomial.identity(pre).kron(out)
    if post > 1:
        out = out.kron(Monomial.identity(post))
    return out


def _first_nonzero(mat: CycMatrix):
    for i in range(mat.rows):
        for j in range(mat.cols):
            if not mat.entry(i, j).is_zero():
                return i, j
    return None


def commutator_scalar_monomial(g: Monomial, h: Monomial) -> CycNum:
    """Exact scalar c with g h g^-1 h^-1 = c, for monomial matrices."""
    if g.n != h.n:
        raise DimensionMismatch("sizes differ")
    gh = g @ h
    hg = h @ g
    if gh.perm != hg.perm:
        raise NotProjectivelyCommuting("commutator permutes the basis nontrivially")
    c = gh.scales[0] / hg.scales[0]
    for j in range(1, g.n):
        if gh.scales[j] != c * hg.scales[j]:
            raise NotProjectivelyCommuting("commutator is not scalar")
    return c


def commutator_scalar(g, h) -> CycNum:
    """Exact scalar c with g h g^-1 h^-1 = c I, else NotProjectivelyCommuting.

    The result always satisfies c^n = 1 (take determinants of g h = c h g).
    """
    if isinstance(g, Monomial) and isinstance(h, Monomial):
        c = commutator_scalar_monomial(g, h)
        n = g.n
    else:
        gm = g if isinstance(g, CycMatrix) else g.to_matrix()
        hm = h if isinstance(h, CycMatrix) else h.to_matrix()
        if gm.shape != hm.shape or not gm.is_square():
            raise DimensionMismatch("need square matrices of equal size")
        mg = Monomial.from_matrix(gm)
        mh = Monomial.from_matrix(hm)
        if mg is not None and mh is not None:
            c = commutator_scalar_monomial(mg, mh)
            n = gm.rows
        else:
            gh = gm @ hm
            hg = hm @ gm
            pos = _first_nonzero(hg)
            if pos is None:
                raise NotProjectivelyCommuting("singular product")
            c = gh.entry(*pos) / hg.entry(*pos)
            if gh != hg.scale(c):
                raise NotProjectivelyCommuting("commutator is not scalar")
            n = gm.rows
    if (c ** n) != ONE:
        raise NotProjectivelyCommuting("scalar is not an n-th root of unity")
    return c


def projective_equal(g: CycMatrix, h: CycMatrix) -> bool:
    """True iff g = c h for some scalar c (exact, zero tolerance)."""
    if g.shape != h.shape:
        return False
    pos = _first_nonzero(h)
    pos_g = _first_nonzero(g)
    if pos is None or pos_g is None:
        return pos == pos_g
    if g.entry(*pos).is_zero():
        return False
    c = g.entry(*pos) / h.entry(*pos)
    return g == h.scale(c)
