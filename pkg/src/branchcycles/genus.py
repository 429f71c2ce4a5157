"""Genus and factorization arithmetic from branch cycles: Riemann-Hurwitz,
fiber-product genus via the lcm ramification rule, factor counts of a pair
of representations, exceptionality tests, decomposition blocks, and the
quadratic wreath lift."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import gcd, lcm, factorial

from .errors import DomainError
from .nielsen import NielsenTuple, PermutationRepresentation
from .permcore import PermGroup, Permutation, generate_group


@dataclass(frozen=True)
class BranchData:
    """Branch cycles of a cover: one permutation per branch point, with
    opaque labels (last label conventionally "inf" for polynomial covers)."""

    degree: int
    entries: tuple[Permutation, ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if any(g.degree != self.degree for g in self.entries):
            raise DomainError("entry degree mismatch")
        if not self.labels:
            labels = tuple(f"b{i + 1}" for i in range(len(self.entries)))
            object.__setattr__(self, "labels", labels)
        if len(self.labels) != len(self.entries):
            raise DomainError("one label per branch point required")
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("branch point labels must be distinct")

    @classmethod
    def from_tuple(cls, t: NielsenTuple, labels=None) -> "BranchData":
        if labels is None:
            labels = tuple(f"b{i + 1}" for i in range(t.r - 1)) + ("inf",)
        return cls(t.degree, t.entries, tuple(labels))

    def index_sum(self) -> int:
        return sum(g.index() for g in self.entries)


def _check_transitive(entries, degree: int) -> None:
    orb = {1}
    frontier = [1]
    while frontier:
        nf = []
        for x in frontier:
            for g in entries:
                y = g(x)
                if y not in orb:
                    orb.add(y)
                    nf.append(y)
        frontier = nf
    if len(orb) != degree:
        raise DomainError("branch cycles are not transitive")


def rh_genus(data: BranchData) -> int:
    """Genus from 2(n + g - 1) = sum of indices."""
    return rh_genus_over_base(data.degree, 0, data)


def rh_genus_over_base(deg: int, g_z: int, data: BranchData) -> int:
    """Genus over a genus-g_z base: 2(deg + g - 1) = 2 deg g_z + sum ind."""
    _check_transitive(data.entries, data.degree)
    prod = Permutation.identity(data.degree)
    for g in data.entries:
        prod = prod * g
    if not prod.is_identity():
        raise DomainError("branch cycles violate product-one")
    total = data.index_sum()
    if total % 2:
        raise DomainError(f"odd index sum {total}")
    genus2 = 2 * deg * g_z + total - 2 * (deg - 1)
    if genus2 % 2 or genus2 < 0:
        raise DomainError(f"inconsistent branch data: 2g = {genus2}")
    return genus2 // 2


# ---------------------------------------------------------------------------
# fiber products


@dataclass(frozen=True)
class FiberComponent:
    degree: int
    index_sum: int
    genus: int
    letters: tuple[tuple[int, int], ...]


def fiber_product_genus(f_data: BranchData, g_data: BranchData) -> list[FiberComponent]:
    """Components of the fiber product of two covers and their genera.

    Branch points are matched by label; at a point only one cover ramifies
    the other side acts trivially.  Components are the orbits of the tensor
    action on letter pairs; each (length-a, length-b) cycle pair over a
    common point contributes gcd(a,b) cycles of length lcm(a,b), which the
    tensor construction realizes and the per-point assertion re-checks."""
    m, n = f_data.degree, g_data.degree
    labels = list(dict.fromkeys(f_data.labels + g_data.labels))
    f_at = dict(zip(f_data.labels, f_data.entries))
    g_at = dict(zip(g_data.labels, g_data.entries))
    idf = Permutation.identity(m)
    idg = Permutation.identity(n)

    pairs = [(x, y) for x in range(1, m + 1) for y in range(1, n + 1)]
    index = {xy: i + 1 for i, xy in enumerate(pairs)}

    tensor_entries = []
    for lab in labels:
        a = f_at.get(lab, idf)
        b = g_at.get(lab, idg)
        img = [0] * len(pairs)
        for (x, y), i in index.items():
            img[i - 1] = index[(a(x), b(y))]
        t = Permutation(img)
        expected = sum(
            gcd(len(ca), len(cb)) for ca in a.cycles() for cb in b.cycles()
        )
        if len(t.cycles()) != expected:
            raise DomainError("tensor cycle count disagrees with the lcm rule")
        tensor_entries.append(t)

    tensor_group = generate_group(tensor_entries)
    components = []
    for orbit in sorted(tensor_group.orbits(), key=lambda o: (len(o), sorted(o))):
        letters = sorted(orbit)
        relabel = {x: i + 1 for i, x in enumerate(letters)}
        restricted = [
            Permutation(tuple(relabel[t(x)] for x in letters)) for t in tensor_entries
        ]
        data = BranchData(len(letters), tuple(restricted), tuple(labels))
        genus = rh_genus(data)
        components.append(
            FiberComponent(
                degree=len(letters),
                index_sum=data.index_sum(),
                genus=genus,
                letters=tuple(pairs[x - 1] for x in letters),
            )
        )
    return components


# ---------------------------------------------------------------------------
# representation pairs


class RepPair:
    """One group seen through two faithful transitive permutation
    representations, as parallel images of every element."""

    def __init__(self, G: PermGroup, rep_f: PermutationRepresentation | None,
                 rep_g: PermutationRepresentation | None):
        self.G = G
        self._pairs = []
        for g in G.elements():
            a = rep_f.apply(g) if rep_f is not None else g
            b = rep_g.apply(g) if rep_g is not None else g
            self._pairs.append((a, b))
        self.degree_f = self._pairs[0][0].degree
        self.degree_g = self._pairs[0][1].degree
        for side in (0, 1):
            imgs = {p[side].images for p in self._pairs}
            if len(imgs) != len(self._pairs):
                raise DomainError("representation is not faithful")
        for side, deg in ((0, self.degree_f), (1, self.degree_g)):
            orb = {1}
            frontier = [1]
            while frontier:
                nf = []
                for x in frontier:
                    for p in self._pairs:
                        y = p[side](x)
                        if y not in orb:
                            orb.add(y)
                            nf.append(y)
                frontier = nf
            if len(orb) != deg:
                raise DomainError("representation is not transitive")

    def pairs(self):
        return list(self._pairs)


def factor_count(pair: RepPair) -> tuple[int, ...]:
    """Orbit lengths of the T_f point stabilizer acting through T_g; the
    number of orbits counts the irreducible factors of f(x) - g(y)."""
    stab = [b for a, b in pair.pairs() if a(1) == 1]
    seen: set[int] = set()
    sizes = []
    for y in range(1, pair.degree_g + 1):
        if y in seen:
            continue
        orb = {y}
        frontier = [y]
        while frontier:
            nf = []
            for x in frontier:
                for b in stab:
                    z = b(x)
                    if z not in orb:
                        orb.add(z)
                        nf.append(z)
            frontier = nf
        seen |= orb
        sizes.append(len(orb))
    return tuple(sorted(sizes))


def group_rep_equiv(pair: RepPair) -> bool:
    """Equal fixed-point characters on every element."""
    if pair.degree_f != pair.degree_g:
        return False
    return all(
        len(a.fixed_points()) == len(b.fixed_points()) for a, b in pair.pairs()
    )


def perm_rep_equiv(pair: RepPair) -> bool:
    """Whether the T_f point stabilizer fixes a letter of T_g (conjugate
    point stabilizers, i.e. equivalent permutation representations)."""
    if pair.degree_f != pair.degree_g:
        return False
    stab = [b for a, b in pair.pairs() if a(1) == 1]
    return any(all(b(y) == y for b in stab) for y in range(1, pair.degree_g + 1))


def davenport_trace_equiv(pair: RepPair, coset=None) -> bool:
    """tr T_f > 0 iff tr T_g > 0 over the coset (default: the whole group,
    the geometric statement)."""
    elements = pair.pairs() if coset is None else list(coset)
    return all(
        bool(a.fixed_points()) == bool(b.fixed_points()) for a, b in elements
    )


def exceptionality_group_test(arith: PermGroup, geom: PermGroup,
                              frob: Permutation) -> bool:
    """Whether every element of the coset frob*geom fixes exactly one
    letter (the two trace inequalities at once)."""
    if arith.degree != geom.degree or frob.degree != arith.degree:
        raise DomainError("degree mismatch")
    geom_els = geom.elements()
    arith_set = frozenset(g.images for g in arith.elements())
    if any(g.images not in arith_set for g in geom_els):
        raise DomainError("geometric group is not inside the arithmetic group")
    if frob.images not in arith_set:
        raise DomainError("Frobenius element is not in the arithmetic group")
    geom_set = frozenset(g.images for g in geom_els)
    if any(
        g.conjugate(a).images not in geom_set
        for g in geom.generators
        for a in arith.generators
    ):
        raise DomainError("geometric group is not normal in the arithmetic group")
    gens = list(geom.generators) + [frob]
    if generate_group(gens).order() != arith.order():
        raise DomainError("frob coset does not generate the quotient")
    return all(len((frob * g).fixed_points()) == 1 for g in geom_els)


# ---------------------------------------------------------------------------
# decomposition blocks and the wreath lift


def poly_decomposition_blocks(t: NielsenTuple) -> list[int]:
    """Divisors d of n (1 < d < n) whose residue blocks mod d are permuted
    by every finite entry of a straightened polynomial tuple; each certifies
    an outer composition factor of degree d (block size n/d)."""
    n = t.degree
    target = Permutation.from_cycles(n, [tuple(range(1, n + 1))]).inverse()
    if t.entries[-1] != target:
        raise DomainError("tuple is not straightened: last entry must be (1..n)^-1")
    found = []
    for d in range(2, n):
        if n % d:
            continue
        # block of letter x is x mod d; letter n plays residue 0
        def block(x):
            return x % d

        ok = True
        for g in t.entries[:-1]:
            for j in range(d):
                images = {block(g(x)) for x in range(1, n + 1) if block(x) == j}
                if len(images) != 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(d)
    return found


def quadratic_wreath_lift(t: NielsenTuple) -> NielsenTuple:
    """Branch cycles for h((x-b)^2) from the normal form
    ((1 2), (1 3), ..., (1 n), (1 2 ... n)^-1) of a simple-branched
    polynomial h; the lift doubles each 2-cycle, adds the involution
    (1' 1'') and a 2n-cycle inverse at infinity, and generates the order
    n! 2^n wreath product."""
    n = t.degree
    expected = tuple(
        Permutation.from_cycles(n, [(1, j)]) for j in range(2, n + 1)
    ) + (Permutation.from_cycles(n, [tuple(range(1, n + 1))]).inverse(),)
    if t.entries != expected:
        raise DomainError("tuple is not in the simple-branched normal form")
    m = 2 * n
    entries = [
        Permutation.from_cycles(m, [(1, j), (n + 1, n + j)]) for j in range(2, n + 1)
    ]
    entries.append(Permutation.from_cycles(m, [(1, n + 1)]))
    entries.append(Permutation.from_cycles(m, [tuple(range(1, m + 1))]).inverse())
    lifted = NielsenTuple.spanning(entries, cap=max(t.group.order_cap,
                                                    factorial(n) * 2 ** n + 1))
    if lifted.group.order() != factorial(n) * 2 ** n:
        raise DomainError("lift does not generate the full wreath product")
    return lifted
