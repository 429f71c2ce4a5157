"""Named presets: the projective groups, class vectors and difference sets
that the batch computations exercise, so runs need no hand-typed group
data."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .diffsets import DifferenceSet, singer_difference_set
from .errors import DomainError
from .nielsen import ClassVector, NielsenTuple, PermutationRepresentation, \
    perm_rep_on_translates
from .permcore import PermGroup, Permutation, generate_group


def sigma_infinity(n: int) -> Permutation:
    return Permutation.from_cycles(n, [tuple(range(1, n + 1))])


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return generate_group([Permutation.identity(1)])
    gens = [Permutation.from_cycles(n, [(1, 2)]), sigma_infinity(n)]
    return generate_group(gens)


@lru_cache(maxsize=None)
def cyclic_group(n: int) -> PermGroup:
    return generate_group([sigma_infinity(n)])


@lru_cache(maxsize=None)
def dihedral_group(n: int) -> PermGroup:
    """D_n on n letters: rotation plus the reversal fixing 1."""
    if n < 3:
        raise DomainError("dihedral preset needs n >= 3")
    reflection = Permutation((1,) + tuple(range(n, 1, -1)))
    return generate_group([sigma_infinity(n), reflection])


# ---------------------------------------------------------------------------
# degree 7: PGL_3(Z/2) on points and lines


@lru_cache(maxsize=None)
def pgl32_points() -> PermGroup:
    """PGL_3(Z/2) of order 168 on the 7 points, with lines the translates
    of {1, 2, 4} mod 7."""
    G = generate_group(
        [sigma_infinity(7), Permutation.from_cycles(7, [(3, 5), (6, 7)])]
    )
    assert G.order() == 168
    return G


@lru_cache(maxsize=None)
def pgl32_lines_rep() -> PermutationRepresentation:
    """The second doubly transitive degree-7 action, on the line system."""
    return perm_rep_on_translates(pgl32_points(), (1, 2, 4))


@lru_cache(maxsize=None)
def dav7_classes(which: int = 2) -> ClassVector:
    """Three involution classes plus a 7-cycle class: which=2 takes the
    class of sigma_infinity^-1 (the polynomial normalization), which=1 the
    class of sigma_infinity."""
    G = pgl32_points()
    sigma = sigma_infinity(7)
    seven = G.class_of(sigma if which == 1 else sigma.inverse())
    inv = G.class_of(Permutation.from_cycles(7, [(3, 5), (6, 7)]))
    return ClassVector(G, (inv, inv, inv, seven))


def dav7_pinned_last() -> Permutation:
    return sigma_infinity(7).inverse()


# ---------------------------------------------------------------------------
# degree 13: PGL_3(F_3) on the points of the projective plane over F_3


@lru_cache(maxsize=None)
def pgl33_points() -> PermGroup:
    """PGL_3(F_3) of order 5616 on the 13 points of P^2(F_3), generated by a
    Singer element and a transvection."""
    p = 3

    def norm(v):
        lead = next(x for x in v if x)
        inv = 1 if lead == 1 else 2
        return tuple((inv * x) % p for x in v)

    points = sorted({norm(v) for v in itertools.product(range(p), repeat=3) if any(v)})
    index = {pt: i + 1 for i, pt in enumerate(points)}

    def mat_perm(M):
        img = [0] * len(points)
        for pt, i in index.items():
            w = tuple(sum(M[r][c] * pt[c] for c in range(3)) % p for r in range(3))
            img[i - 1] = index[norm(w)]
        return Permutation(img)

    # companion matrix of x^3 + 2x + 1 (irreducible over F_3), plus a transvection
    singer = mat_perm([[0, 0, 2], [1, 0, 1], [0, 1, 0]])
    transvection = mat_perm([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    G = generate_group([singer, transvection])
    assert G.order() == 5616
    return G


@lru_cache(maxsize=None)
def dav13_classes() -> ClassVector:
    """Three involution classes plus a 13-cycle class in PGL_3(F_3)."""
    G = pgl33_points()
    thirteen = next(g for g in G.elements() if g.is_n_cycle())
    involution = next(
        g
        for g in G.elements()
        if g.order() == 2 and len(g.fixed_points()) == 5
    )
    inv = G.class_of(involution)
    return ClassVector(G, (inv, inv, inv, G.class_of(thirteen)))


# ---------------------------------------------------------------------------
# degree 5: the Hilbert-Siegel Nielsen class of S_5


@lru_cache(maxsize=None)
def s5_hilbert_siegel() -> ClassVector:
    """S_5 classes: one 5-cycle, two 2-cycles, one (2)(2)."""
    G = symmetric_group(5)
    c5 = G.class_of(sigma_infinity(5))
    c2 = G.class_of(Permutation.from_cycles(5, [(1, 2)]))
    c2d = G.class_of(Permutation.from_cycles(5, [(1, 2), (3, 4)]))
    return ClassVector(G, (c2, c2, c2d, c5))


# ---------------------------------------------------------------------------
# dihedral Nielsen classes (four involution classes)


@lru_cache(maxsize=None)
def dihedral_c2_4(n: int) -> ClassVector:
    """ni(D_n, C_2^4) for odd n: the involution class repeated four times."""
    if n % 2 == 0:
        raise DomainError("preset covers odd n")
    G = dihedral_group(n)
    c2 = G.class_of(Permutation((1,) + tuple(range(n, 1, -1))))
    return ClassVector(G, (c2, c2, c2, c2))


def dihedral_seed_tuple(n: int) -> NielsenTuple:
    """A product-one generating 4-tuple of reflections in D_n (odd n)."""
    G = dihedral_group(n)
    r0 = Permutation((1,) + tuple(range(n, 1, -1)))  # reversal fixing 1
    r1 = r0.conjugate(sigma_infinity(n))
    # r0 r1 is a double rotation, so <r0, r1> = D_n for odd n
    return NielsenTuple(G, (r0, r1, r1, r0))


# ---------------------------------------------------------------------------
# difference sets


@lru_cache(maxsize=None)
def d15_singer() -> DifferenceSet:
    return singer_difference_set(2, 3, (1, 1, 0, 0, 1))


@lru_cache(maxsize=None)
def d7_difference_set() -> DifferenceSet:
    return DifferenceSet(7, frozenset({1, 2, 4}))


@lru_cache(maxsize=None)
def d13_difference_set() -> DifferenceSet:
    return DifferenceSet(13, frozenset({1, 2, 4, 10}))


GROUP_PRESETS = {
    "pgl32-points": pgl32_points,
    "pgl33-points": pgl33_points,
    "s5": lambda: symmetric_group(5),
}

CLASS_PRESETS = {
    "dav7": dav7_classes,
    "dav7-1": lambda: dav7_classes(which=1),
    "dav13": dav13_classes,
    "s5-hilbert-siegel": s5_hilbert_siegel,
    "d5-c2^4": lambda: dihedral_c2_4(5),
    "d7-c2^4": lambda: dihedral_c2_4(7),
}

DIFFSET_PRESETS = {
    "d15-singer": d15_singer,
    "d7": d7_difference_set,
    "d13": d13_difference_set,
}
