"""Finite abelian groups in invariant-factor form, characters, and
hyperbolic decomposition of alternating pairings.

A group is a divisibility chain d_1 | d_2 | ... | d_r (each >= 2, the
empty chain is the trivial group).  Elements and characters are integer
coordinate vectors against the canonical generators; element enumeration
is lexicographic on coordinates, which fixes the basis order of every
matrix built on a group.  Pairing values are kept as exponents in Q/Z so
that group-theoretic computations stay conductor-free.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycNum, prime_factors
from .errors import DegeneratePairing, GroupMismatch, NotAlternating, NotIsomorphism


def canonical_factors(factors) -> tuple[int, ...]:
    """Canonical invariant-factor chain of a direct product of cyclic groups."""
    primary: dict[int, list[int]] = {}
    for f in factors:
        if f < 1:
            raise ValueError(f"cyclic factor must be positive, got {f}")
        if f == 1:
            continue
        n = f
        for p in prime_factors(f):
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            primary.setdefault(p, []).append(p ** e)
    if not primary:
        return ()
    for p in primary:
        primary[p].sort(reverse=True)
    depth = max(len(v) for v in primary.values())
    out = []
    for i in range(depth):
        d = 1
        for p in primary:
            if i < len(primary[p]):
                d *= primary[p][i]
        out.append(d)
    out.reverse()
    return tuple(out)


@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group given by its invariant factors d_1 | ... | d_r."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = tuple(self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for d in fs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain: {fs}")

    @staticmethod
    def trivial() -> "FinAbGroup":
        return FinAbGroup(())

    @staticmethod
    def cyclic(n: int) -> "FinAbGroup":
        return FinAbGroup(() if n == 1 else (n,))

    @staticmethod
    def from_factors(factors) -> "FinAbGroup":
        return FinAbGroup(canonical_factors(factors))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def elements(self):
        """All elements in lexicographic coordinate order (identity first)."""
        for coords in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(self, coords)
        if not self.invariant_factors:
            return

    def element_at(self, index: int) -> "GroupElement":
        coords = []
        for d in reversed(self.invariant_factors):
            coords.append(index % d)
            index //= d
        return GroupElement(self, tuple(reversed(coords)))

    def index_of(self, x: "GroupElement") -> int:
        if x.group != self:
            raise GroupMismatch("element of a different group")
        idx = 0
        for c, d in zip(x.coords, self.invariant_factors):
            idx = idx * d + c
        return idx

    def generators(self):
        return [
            GroupElement(self, tuple(1 if j == i else 0 for j in range(self.rank)))
            for i in range(self.rank)
        ]

    def characters(self):
        for coords in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield Character(self, coords)

    def character(self, coords) -> "Character":
        return Character(self, tuple(coords))

    def trivial_character(self) -> "Character":
        return Character(self, (0,) * self.rank)

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def _check_coords(group: FinAbGroup, coords: tuple[int, ...]) -> tuple[int, ...]:
    if len(coords) != group.rank:
        raise ValueError(f"need {group.rank} coordinates, got {len(coords)}")
    return tuple(c % d for c, d in zip(coords, group.invariant_factors))


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _check_coords(self.group, tuple(self.coords)))

    def _same(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatch("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._same(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-c for c in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(k * c for c in self.coords))

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coords)

    def order(self) -> int:
        o = 1
        for c, d in zip(self.coords, self.group.invariant_factors):
            o = math.lcm(o, d // math.gcd(c, d))
        return o


@dataclass(frozen=True)
class Character:
    """A character in the self-dual coordinates of the group.

    Coordinates (c_1, ..., c_r) send the i-th canonical generator to
    zeta_{d_i}^{c_i}; every character arises exactly once this way.
    """

    group: FinAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", _check_coords(self.group, tuple(self.coords)))

    def __add__(self, other: "Character") -> "Character":
        if other.group != self.group:
            raise GroupMismatch("characters of different groups")
        return Character(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Character":
        return Character(self.group, tuple(-c for c in self.coords))

    def is_trivial(self) -> bool:
        return all(c == 0 for c in self.coords)

    def exponent_at(self, x: GroupElement) -> Fraction:
        """The value of the character as an exponent in Q/Z."""
        if x.group != self.group:
            raise GroupMismatch("character applied to element of a different group")
        total = Fraction(0)
        for c, v, d in zip(self.coords, x.coords, self.group.invariant_factors):
            total += Fraction(c * v, d)
        return total % 1

    def order(self) -> int:
        return GroupElement(self.group, self.coords).order()


def char_eval(xi: Character, x: GroupElement) -> CycNum:
    """Evaluate a character, exactly, as a root of unity."""
    q = xi.exponent_at(x)
    return CycNum.root_of_unity(q.denominator, q.numerator)


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n, parts weakly decreasing."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining, maximum, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, maximum), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return tuple(out)


def partition_count(n: int) -> int:
    return len(_partitions(n))


def enumerate_abelian_groups(n: int) -> list[FinAbGroup]:
    """All isomorphism classes of abelian groups of order n.

    Canonical invariant-factor form, sorted lexicographically on the
    factor tuples, so the order is deterministic.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return [FinAbGroup.trivial()]
    primes = prime_factors(n)
    exps = []
    rest = n
    for p in primes:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        exps.append((p, e))
    choices = []
    for p, e in exps:
        choices.append([[p ** part for part in parts] for parts in _partitions(e)])
    groups = set()
    for combo in itertools.product(*choices):
        factors = [f for block in combo for f in block]
        groups.add(canonical_factors(factors))
    return [FinAbGroup(fs) for fs in sorted(groups)]


# ---------------------------------------------------------------------------
# direct products with explicit embeddings
# ---------------------------------------------------------------------------


def direct_product(groups) -> tuple[FinAbGroup, list[list[list[int]]]]:
    """Canonical form of a direct product, with one embedding matrix per factor.

    The j-th matrix has a column per canonical generator of the j-th factor;
    the column holds that generator's coordinates inside the product group.
    """
    groups = list(groups)
    all_factors = [d for g in groups for d in g.invariant_factors]
    product = FinAbGroup(canonical_factors(all_factors))
    # assign the primary components of each cyclic factor to product slots,
    # mirroring the largest-with-largest merge in canonical_factors
    primary: dict[int, list[int]] = {}
    for d in all_factors:
        for p in prime_factors(d):
            e = 0
            dd = d
            while dd % p == 0:
                dd //= p
                e += 1
            primary.setdefault(p, []).append(p ** e)
    slot_of: dict[tuple[int, int, int], int] = {}
    depth = len(product.invariant_factors)
    for p, powers in primary.items():
        order = sorted(range(len(powers)), key=lambda i: -powers[i])
        for rank_pos, idx in enumerate(order):
            # largest primary part lands in the largest invariant factor
            slot_of[(p, idx)] = depth - 1 - rank_pos
    # now walk the factors again in the same discovery order to consume indices
    counters: dict[int, int] = {}
    embeds = []
    for g in groups:
        cols = []
        for d in g.invariant_factors:
            col = [0] * depth
            dd = d
            for p in prime_factors(d):
                e = 0
                while dd % p == 0:
                    dd //= p
                    e += 1
                idx = counters.get(p, 0)
                counters[p] = idx + 1
                slot = slot_of[(p, idx)]
                pe = p ** e
                col[slot] = (col[slot] + product.invariant_factors[slot] // pe) % \
                    product.invariant_factors[slot]
            cols.append(col)
        embeds.append([[cols[j][i] for j in range(len(cols))] for i in range(depth)])
    return product, embeds


def apply_matrix(matrix: list[list[int]], coords, target: FinAbGroup) -> GroupElement:
    """Apply an integer matrix to coordinates, landing in the target group."""
    out = []
    for i in range(target.rank):
        acc = 0
        for j, c in enumerate(coords):
            acc += matrix[i][j] * c
        out.append(acc)
    return GroupElement(target, tuple(out))


def product_embedding(groups):
    """Return (product group, combine, split) where combine maps a tuple of
    per-factor elements to a product element and split inverts it."""
    groups = list(groups)
    product, embeds = direct_product(groups)
    table = {}
    for combo in itertools.product(*(g.elements() for g in groups)):
        total = product.identity()
        for x, emb in zip(combo, embeds):
            total = total + apply_matrix(emb, x.coords, product)
        table[total.coords] = combo
    if len(table) != product.order:
        raise AssertionError("direct product embedding is not bijective")

    def combine(parts):
        total = product.identity()
        for x, emb in zip(parts, embeds):
            total = total + apply_matrix(emb, x.coords, product)
        return total

    def split(x: GroupElement):
        return table[x.coords]

    return product, combine, split


# ---------------------------------------------------------------------------
# homomorphisms given by integer matrices on coordinates
# ---------------------------------------------------------------------------


def is_homomorphism_matrix(q, source: FinAbGroup, target: FinAbGroup) -> bool:
    if len(q) != target.rank or any(len(row) != source.rank for row in q):
        return False
    for j, d in enumerate(source.invariant_factors):
        for i, e in enumerate(target.invariant_factors):
            if (d * q[i][j]) % e:
                return False
    return True


def is_isomorphism_matrix(q, source: FinAbGroup, target: FinAbGroup) -> bool:
    """Bijectivity check; groups at desk scale, so image size is counted."""
    if source.order != target.order:
        return False
    if not is_homomorphism_matrix(q, source, target):
        return False
    seen = set()
    for x in source.elements():
        seen.add(apply_matrix(q, x.coords, target).coords)
    return len(seen) == source.order


def invert_isomorphism(q, source: FinAbGroup, target: FinAbGroup) -> list[list[int]]:
    if not is_isomorphism_matrix(q, source, target):
        raise NotIsomorphism("matrix is not an isomorphism")
    lookup = {apply_matrix(q, x.coords, target).coords: x.coords for x in source.elements()}
    cols = [lookup[g.coords] for g in target.generators()]
    return [[cols[j][i] for j in range(target.rank)] for i in range(source.rank)]


def random_automorphism(group: FinAbGroup, rng) -> list[list[int]]:
    """One automorphism drawn from a seeded RNG via rejection sampling.

    Entries respect the homomorphism condition d_j * q[i][j] = 0 mod d_i;
    a random legal matrix is invertible with decent probability, so this
    stays cheap even where enumerating the automorphism group would not.
    """
    fs = group.invariant_factors
    r = group.rank
    if r == 0:
        return []
    while True:
        q = []
        for i in range(r):
            row = []
            for j in range(r):
                g = math.gcd(fs[i], fs[j])
                row.append(rng.randrange(g) * (fs[i] // g))
            q.append(row)
        if is_isomorphism_matrix(q, group, group):
            return q


@lru_cache(maxsize=None)
def automorphisms(group: FinAbGroup) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All automorphisms as integer matrices (cached; desk-scale groups only)."""
    r = group.rank
    if r == 0:
        return ((),)
    candidate_images = []
    for d in group.invariant_factors:
        candidate_images.append([x for x in group.elements() if d % x.order() == 0])
    out = []
    for combo in itertools.product(*candidate_images):
        q = [[combo[j].coords[i] for j in range(r)] for i in range(r)]
        if is_isomorphism_matrix(q, group, group):
            out.append(tuple(tuple(row) for row in q))
    return tuple(out)


def identity_matrix(group: FinAbGroup) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(group.rank)] for i in range(group.rank)]


def transport_character(u, delta: Character, target: FinAbGroup) -> Character:
    """Apply a character-space matrix to a character's coordinates."""
    coords = tuple(
        sum(u[i][j] * delta.coords[j] for j in range(len(delta.coords)))
        for i in range(target.rank)
    )
    return Character(target, coords)


def dual_isomorphism_transport(q, source: FinAbGroup, target: FinAbGroup) -> list[list[int]]:
    """Given an isomorphism q: source -> target, return the character-space
    isomorphism u with u(delta)(q(gamma)) = delta(gamma) for all gamma, delta.

    Both character spaces use the self-dual coordinates, so u is again an
    integer matrix.  The defining relation is verified exhaustively on
    generator pairs before returning.
    """
    q_inv = invert_isomorphism(q, source, target)
    # u(delta) on the j-th target generator equals delta(q^{-1} generator)
    preimages = [
        apply_matrix(q_inv, tuple(1 if t == j else 0 for t in range(target.rank)), source)
        for j in range(target.rank)
    ]
    u = [[0] * source.rank for _ in range(target.rank)]
    for k in range(source.rank):
        delta = Character(source, tuple(1 if t == k else 0 for t in range(source.rank)))
        for j, e in enumerate(target.invariant_factors):
            val = delta.exponent_at(preimages[j]) * e  # denominator must divide e
            if val.denominator != 1:
                raise NotIsomorphism("transport does not land in the character lattice")
            u[j][k] = int(val) % e
    for k in range(source.rank):
        delta = Character(source, tuple(1 if t == k else 0 for t in range(source.rank)))
        u_delta = transport_character(u, delta, target)
        for g in source.generators():
            if u_delta.exponent_at(apply_matrix(q, g.coords, target)) != delta.exponent_at(g):
                raise NotIsomorphism("transported map fails the defining relation")
    return u


# ---------------------------------------------------------------------------
# alternating pairings and hyperbolic decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymplecticPairing:
    """A bicharacter on a finite abelian group, stored as exponents in Q/Z
    on the canonical generators and extended bilinearly."""

    group: FinAbGroup
    gen_table: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        r = self.group.rank
        table = tuple(tuple(Fraction(v) % 1 for v in row) for row in self.gen_table)
        object.__setattr__(self, "gen_table", table)
        if len(table) != r or any(len(row) != r for row in table):
            raise ValueError("generator table must be rank x rank")
        fs = self.group.invariant_factors
        for i in range(r):
            for j in range(r):
                if (table[i][j] * fs[i]) % 1 or (table[i][j] * fs[j]) % 1:
                    raise ValueError("pairing value not compatible with generator orders")

    @staticmethod
    def standard_hyperbolic(lagrangian: FinAbGroup) -> "SymplecticPairing":
        """The pairing on L x L-hat with <(x,xi),(y,eta)> = eta(x) - xi(y)."""
        fs = lagrangian.invariant_factors
        omega = FinAbGroup.from_factors(list(fs) + list(fs))
        product, combine, split = product_embedding([lagrangian, lagrangian])
        if product != omega:
            raise AssertionError("product group mismatch")
        r = omega.rank
        table = [[Fraction(0)] * r for _ in range(r)]
        gens = omega.generators()
        for i in range(r):
            xi_part_i = split(gens[i])
            for j in range(r):
                xi_part_j = split(gens[j])
                x1, c1 = xi_part_i
                x2, c2 = xi_part_j
                val = Character(lagrangian, c2.coords).exponent_at(x1) - \
                    Character(lagrangian, c1.coords).exponent_at(x2)
                table[i][j] = val % 1
        return SymplecticPairing(omega, tuple(tuple(row) for row in table))

    def value(self, x: GroupElement, y: GroupElement) -> Fraction:
        if x.group != self.group or y.group != self.group:
            raise GroupMismatch("pairing applied across groups")
        total = Fraction(0)
        for i, a in enumerate(x.coords):
            if not a:
                continue
            row = self.gen_table[i]
            for j, b in enumerate(y.coords):
                if b and row[j]:
                    total += a * b * row[j]
        return total % 1

    def value_as_root(self, x: GroupElement, y: GroupElement) -> tuple[int, int]:
        f = self.value(x, y)
        return (f.denominator, f.numerator)

    def is_alternating(self) -> bool:
        fs = self.group.invariant_factors
        r = self.group.rank
        for i in range(r):
            if self.gen_table[i][i] % 1:
                return False
        for i in range(r):
            for j in range(i + 1, r):
                if (self.gen_table[i][j] + self.gen_table[j][i]) % 1:
                    return False
        return True

    def is_nondegenerate(self) -> bool:
        """Exhaustive: the map omega -> (pairing with generators) is injective."""
        seen = set()
        gens = self.group.generators()
        for x in self.group.elements():
            key = tuple(self.value(x, g) for g in gens)
            if key in seen:
                return False
            seen.add(key)
        return True

    def conjugate(self, alpha) -> "SymplecticPairing":
        """Pull the pairing back along an automorphism matrix."""
        gens = self.group.generators()
        imgs = [apply_matrix(alpha, g.coords, self.group) for g in gens]
        table = [[self.value(imgs[i], imgs[j]) for j in range(len(gens))]
                 for i in range(len(gens))]
        return SymplecticPairing(self.group, tuple(tuple(row) for row in table))


@dataclass(frozen=True)
class HyperbolicDecomposition:
    """Hyperbolic pairs extracted from an alternating nondegenerate pairing.

    Each pair (lam, lam_prime, r) satisfies: both have order r, their pairing
    value is a primitive r-th root of unity, and distinct pairs pair trivially.
    The extracted group has the pair orders as its cyclic decomposition.
    """

    pairing: SymplecticPairing
    pairs: tuple[tuple[GroupElement, GroupElement, int], ...]
    lagrangian: FinAbGroup

    def coordinates(self, x: GroupElement) -> list[tuple[int, int]]:
        """(a_i, b_i) with x = sum a_i lam_i + b_i lam'_i; checked exactly."""
        coords = []
        total = self.pairing.group.identity()
        for lam, lam_p, r in self.pairs:
            s = self.pairing.value(lam, lam_p)  # primitive, denominator r
            k = s.numerator * (r // s.denominator)
            k_inv = pow(k, -1, r)
            a = (self.pairing.value(x, lam_p) * r)
            b = (self.pairing.value(lam, x) * r)
            if a.denominator != 1 or b.denominator != 1:
                raise DegeneratePairing("element does not decompose over the pairs")
            a_i = (int(a) * k_inv) % r
            b_i = (int(b) * k_inv) % r
            coords.append((a_i, b_i))
            total = total + lam.scale(a_i) + lam_p.scale(b_i)
        if total != x:
            raise DegeneratePairing("hyperbolic pairs do not span the group")
        return coords

    def reconstruct_value(self, x: GroupElement, y: GroupElement) -> Fraction:
        """Bilinear extension of the pairs' pairing table."""
        cx = self.coordinates(x)
        cy = self.coordinates(y)
        total = Fraction(0)
        for (a, b), (c, d), (lam, lam_p, r) in zip(cx, cy, self.pairs):
            s = self.pairing.value(lam, lam_p)
            total += (a * d - b * c) * s
        return total % 1

    def reconstructs_pairing(self) -> bool:
        """Exhaustive check that the bilinear extension of the pairs equals
        the input pairing pointwise (coordinates computed once per element)."""
        elems = list(self.pairing.group.elements())
        coords = {e.coords: self.coordinates(e) for e in elems}
        values = [self.pairing.value(lam, lam_p) for lam, lam_p, _ in self.pairs]
        for x in elems:
            cx = coords[x.coords]
            for y in elems:
                cy = coords[y.coords]
                total = Fraction(0)
                for (a, b), (c, d), s in zip(cx, cy, values):
                    total += (a * d - b * c) * s
                if total % 1 != self.pairing.value(x, y):
                    return False
        return True


def symplectic_decompose(pairing: SymplecticPairing) -> HyperbolicDecomposition:
    """Iterated extraction of hyperbolic pairs.

    Pick a maximal-order element lam, find lam' whose pairing value with lam
    is a primitive root of unity of that order, pass to the orthogonal
    complement of the pair, and recurse.  Ties are broken lexicographically
    on coordinates so the output is deterministic.
    """
    if not pairing.is_alternating():
        raise NotAlternating("pairing is not alternating")
    group = pairing.group
    if not group.is_trivial() and not pairing.is_nondegenerate():
        raise DegeneratePairing("pairing has a nontrivial radical")
    current = sorted(group.elements(), key=lambda e: e.coords)
    pairs = []
    while len(current) > 1:
        max_order = max(e.order() for e in current)
        lam = next(e for e in current if e.order() == max_order)
        r = max_order
        lam_p = None
        for cand in current:
            v = pairing.value(lam, cand)
            if v.denominator == r:
                lam_p = cand
                break
        if lam_p is None:
            raise DegeneratePairing(
                "no partner with primitive pairing value; restriction is degenerate"
            )
        pairs.append((lam, lam_p, r))
        nxt = [
            w
            for w in current
            if pairing.value(lam, w) == 0 and pairing.value(lam_p, w) == 0
        ]
        if len(nxt) * r * r != len(current):
            raise DegeneratePairing("orthogonal complement has the wrong size")
        current = nxt
    lagrangian = FinAbGroup.from_factors([r for _, _, r in pairs])
    if lagrangian.order ** 2 != group.order:
        raise DegeneratePairing("extracted group does not square to the input order")
    return HyperbolicDecomposition(pairing, tuple(pairs), lagrangian)


# ---------------------------------------------------------------------------
# subgroups presented by explicit element lists
# ---------------------------------------------------------------------------


def smith_normal_form(mat: list[list[int]]):
    """U @ mat @ V = D diagonal with d_1 | d_2 | ...; returns (D, U, V)."""
    a = [row[:] for row in mat]
    n = len(a)
    m = len(a[0]) if n else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(n, m):
        pivot = None
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # Euclid on the pivot row and column until both are clear
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    k = a[i][t] // a[t][t]
                    add_row(t, i, -k)
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if a[t][j]:
                    k = a[t][j] // a[t][t]
                    add_col(t, j, -k)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            if any(a[i][t] for i in range(t + 1, n)):
                continue
            # the pivot must divide every remaining entry
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, m):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def subgroup_from_elements(moduli: list[int], elements):
    """Identify a subgroup of prod Z/moduli given by an explicit element list.

    Returns (group, to_canonical) where group is the canonical form of the
    subgroup and to_canonical maps an ambient coordinate tuple (which must
    lie in the subgroup) to canonical coordinates.
    """
    elements = [tuple(e) for e in elements]
    r = len(moduli)
    if r == 0 or all(all(c == 0 for c in e) for e in elements):
        return FinAbGroup.trivial(), lambda coords: ()
    # lattice L spanned by the lifted elements together with diag(moduli);
    # the subgroup is L / diag(moduli), read off from the relation matrix
    # of the moduli in a basis of L
    cols = [list(e) for e in elements] + [
        [moduli[i] if j == i else 0 for i in range(r)] for j in range(r)
    ]
    basis = _lattice_basis(cols, r)
    rel_cols = []
    for i in range(r):
        target = [moduli[i] if k == i else 0 for k in range(r)]
        rel_cols.append(_solve_integral(basis, target))
    rel_mat = [[rel_cols[j][i] for j in range(r)] for i in range(r)]
    diag_mat, u_left, _ = smith_normal_form(rel_mat)
    diag = [diag_mat[i][i] for i in range(r)]
    if any(d == 0 for d in diag):
        raise AssertionError("relation lattice should have full rank")
    keep = [i for i in range(r) if diag[i] > 1]
    group = FinAbGroup(tuple(diag[i] for i in keep))

    def to_canonical(coords):
        y = _solve_integral(basis, list(coords))
        z = [sum(u_left[i][j] * y[j] for j in range(r)) for i in range(r)]
        return tuple(z[i] % diag[i] for i in keep)

    return group, to_canonical


def _lattice_basis(cols: list[list[int]], r: int) -> list[list[int]]:
    """A basis (as r columns) of the full-rank lattice spanned by cols."""
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(r)]
    d, u, v = smith_normal_form(mat)
    # mat = U^{-1} D V^{-1}; basis of the column lattice is U^{-1} * diag(d)
    u_inv = _int_matrix_inverse(u)
    basis = []
    for k in range(r):
        if d[k][k] == 0:
            raise AssertionError("lattice is not full rank")
        basis.append([u_inv[i][k] * d[k][k] for i in range(r)])
    return basis


def _int_matrix_inverse(u: list[list[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, exactly."""
    n = len(u)
    work = [[Fraction(u[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
            for i in range(n)]
    for c in range(n):
        pr = next(i for i in range(c, n) if work[i][c])
        work[c], work[pr] = work[pr], work[c]
        inv = 1 / work[c][c]
        work[c] = [x * inv for x in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = work[i][n + j]
            if x.denominator != 1:
                raise AssertionError("matrix is not unimodular")
            row.append(int(x))
        out.append(row)
    return out


def _solve_integral(basis: list[list[int]], target: list[int]) -> list[int]:
    """Solve basis @ y = target for integral y (basis given as columns)."""
    n = len(target)
    work = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(target[i])]
            for i in range(n)]
    for c in range(n):
        pr = next((i for i in range(c, n) if work[i][c]), None)
        if pr is None:
            raise AssertionError("basis is singular")
        work[c], work[pr] = work[pr], work[c]
        inv = 1 / work[c][c]
        work[c] = [x * inv for x in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    out = []
    for i in range(n):
        x = work[i][n]
        if x.denominator != 1:
            raise AssertionError("target is not in the lattice")
        out.append(int(x))
    return out
