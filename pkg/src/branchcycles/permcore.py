"""Exact permutation and small-group arithmetic.

Composition convention (load-bearing, see test_composition_convention):
permutations act on the RIGHT of integers, so ``p * q`` applies ``p``
first:  (i)(p*q) = ((i)p)q.  All products of group elements, tuple
products and braid words in this package read left to right under this
rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import total_ordering
from math import gcd, lcm

from .errors import (
    DegreeMismatchError,
    DomainError,
    GroupOrderCapExceeded,
    SearchCapExceeded,
)

DEFAULT_ORDER_CAP = 10_000_000
DEFAULT_SEARCH_DEGREE_CAP = 12


@total_ordering
class Permutation:
    """A permutation of {1..n}, stored as the tuple of images of 1..n."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise DomainError(f"not a bijection of 1..{n}: {images}")
        self.images = images

    # -- construction ----------------------------------------------------

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(1, degree + 1))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> "Permutation":
        img = list(range(1, degree + 1))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree:
                    raise DomainError(f"point {a} outside 1..{degree}")
                if a in seen:
                    raise DomainError(f"repeated point {a} in cycles")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                img[a - 1] = b
        return cls(img)

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse disjoint-cycle text like ``"(1 2)(3 4)"``; ``"()"`` is the
        identity.  Points are whitespace-separated; repeats are rejected."""
        s = text.strip()
        if not s:
            raise DomainError("empty permutation text")
        cycles = []
        depth = 0
        cur: list[str] = []
        for ch in s:
            if ch == "(":
                if depth:
                    raise DomainError(f"nested parenthesis in {text!r}")
                depth, cur = 1, []
            elif ch == ")":
                if not depth:
                    raise DomainError(f"unbalanced parenthesis in {text!r}")
                depth = 0
                pts = "".join(cur).replace(",", " ").split()
                if pts:
                    cycles.append(tuple(int(p) for p in pts))
            elif depth:
                cur.append(ch)
            elif not ch.isspace():
                raise DomainError(f"unexpected character {ch!r} in {text!r}")
        if depth:
            raise DomainError(f"unbalanced parenthesis in {text!r}")
        if degree is None:
            degree = max((p for c in cycles for p in c), default=1)
        return cls.from_cycles(degree, cycles)

    # -- basic protocol --------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __hash__(self):
        return hash(self.images)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __repr__(self):
        return f"Permutation.parse({str(self)!r}, degree={self.degree})"

    def __str__(self):
        cs = [c for c in self.cycles() if len(c) > 1]
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    # -- arithmetic ------------------------------------------------------

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Left factor first: (i)(self*other) = ((i)self)other."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatchError(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        oi = other.images
        return Permutation(oi[v - 1] for v in self.images)

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, v in enumerate(self.images):
            out[v - 1] = i + 1
        return Permutation(out)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, h: "Permutation") -> "Permutation":
        """h^-1 * self * h (conjugation compatible with the right action)."""
        return h.inverse() * self * h

    # -- structure -------------------------------------------------------

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles in order of smallest point, fixed points included."""
        n = self.degree
        seen = [False] * n
        out = []
        for i in range(1, n + 1):
            if seen[i - 1]:
                continue
            c = [i]
            seen[i - 1] = True
            j = self.images[i - 1]
            while j != i:
                c.append(j)
                seen[j - 1] = True
                j = self.images[j - 1]
            out.append(tuple(c))
        return out

    def cycle_type(self) -> "CycleType":
        return CycleType(tuple(sorted((len(c) for c in self.cycles()), reverse=True)))

    def index(self) -> int:
        """n minus the number of disjoint cycles (fixed points counted)."""
        return self.degree - len(self.cycles())

    def parity(self) -> int:
        return self.index() % 2

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, v in enumerate(self.images) if v == i + 1)

    def is_n_cycle(self) -> bool:
        return len(self.cycles()) == 1 and self.degree >= 1


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    return p * q


def cycle_type(p: Permutation) -> "CycleType":
    return p.cycle_type()


def index(p: Permutation) -> int:
    return p.index()


@dataclass(frozen=True, order=True)
class CycleType:
    """Multiset of disjoint-cycle lengths, stored descending; sums to n."""

    partition: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(self.partition, reverse=True)) != self.partition:
            object.__setattr__(
                self, "partition", tuple(sorted(self.partition, reverse=True))
            )
        if any(part < 1 for part in self.partition):
            raise DomainError(f"bad cycle type {self.partition}")

    @property
    def degree(self) -> int:
        return sum(self.partition)

    def __str__(self):
        return "(" + ")(".join(map(str, self.partition)) + ")"


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators, with fully enumerated
    elements (materialized lazily, refused above ``order_cap``)."""

    def __init__(self, generators, order_cap: int = DEFAULT_ORDER_CAP):
        generators = tuple(generators)
        if not generators:
            raise DomainError("empty generator list")
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise DegreeMismatchError("generators of mixed degree")
        self.degree = degree
        self.generators = generators
        self.order_cap = order_cap
        self._elements: tuple[Permutation, ...] | None = None
        self._element_set: frozenset[tuple[int, ...]] | None = None
        self._classes: tuple[ConjClass, ...] | None = None

    @classmethod
    def from_elements(cls, elements, order_cap: int = DEFAULT_ORDER_CAP):
        """Build from a set already closed under composition (trusted,
        spot-checked on a few products)."""
        elements = tuple(sorted(set(elements)))
        g = cls(elements, order_cap=order_cap)
        images = frozenset(e.images for e in elements)
        step = max(1, len(elements) // 8)
        for a, b in zip(elements[::step], reversed(elements[::step])):
            if (a * b).images not in images:
                raise DomainError("element set is not closed under composition")
        g._elements = elements
        g._element_set = images
        return g

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- materialization -------------------------------------------------

    def _materialize(self):
        if self._elements is not None:
            return
        gens = [g for g in self.generators if not g.is_identity()]
        ident = Permutation.identity(self.degree)
        els = {ident.images: ident}
        frontier = [ident]
        while frontier:
            new = []
            for b in frontier:
                for a in gens:
                    c = b * a
                    if c.images not in els:
                        els[c.images] = c
                        new.append(c)
                        if len(els) > self.order_cap:
                            raise GroupOrderCapExceeded(
                                f"group order exceeds cap {self.order_cap}"
                            )
            frontier = new
        self._elements = tuple(sorted(els.values()))
        self._element_set = frozenset(els)

    def elements(self) -> tuple[Permutation, ...]:
        self._materialize()
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        self._materialize()
        return p.images in self._element_set

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return frozenset(g.images for g in self.elements()) == frozenset(
            g.images for g in other.elements()
        )

    def __hash__(self):
        return hash((self.degree, frozenset(g.images for g in self.elements())))

    # -- orbits and transitivity ------------------------------------------

    def orbit(self, letter: int) -> frozenset[int]:
        if not 1 <= letter <= self.degree:
            raise DomainError(f"letter {letter} out of range")
        orb = {letter}
        frontier = [letter]
        while frontier:
            nf = []
            for x in frontier:
                for g in self.generators:
                    y = g(x)
                    if y not in orb:
                        orb.add(y)
                        nf.append(y)
            frontier = nf
        return frozenset(orb)

    def orbits(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for i in range(1, self.degree + 1):
            if i not in seen:
                orb = self.orbit(i)
                seen |= orb
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree

    def is_doubly_transitive(self) -> bool:
        if not self.is_transitive():
            raise DomainError("double-transitivity test requires a transitive group")
        if self.degree <= 2:
            return True
        stab = self.stabilizer(1)
        return len(stab.orbit(2)) == self.degree - 1

    # -- block systems ----------------------------------------------------

    def _block_closure(self, a: int, b: int) -> tuple[frozenset[int], ...]:
        """Finest G-invariant partition with a, b in the same block
        (the standard seed-pair minimal-block algorithm on a union-find)."""
        n = self.degree
        parent = list(range(n + 1))

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        parent[find(b)] = find(a)
        queue = [b]
        while queue:
            gamma = queue.pop()
            rho = find(gamma)
            for g in self.generators:
                d, e = find(g(gamma)), find(g(rho))
                if d != e:
                    parent[d] = e
                    queue.append(d)
        blocks: dict[int, set[int]] = {}
        for x in range(1, n + 1):
            blocks.setdefault(find(x), set()).add(x)
        return tuple(sorted((frozenset(s) for s in blocks.values()), key=sorted))

    def block_systems(self) -> list[tuple[frozenset[int], ...]]:
        """All minimal nontrivial block systems (transitive groups only)."""
        if not self.is_transitive():
            raise DomainError("block systems require a transitive group")
        n = self.degree
        systems = set()
        for b in range(2, n + 1):
            part = self._block_closure(1, b)
            if 1 < len(part) < n:
                systems.add(part)
        # keep the minimal ones under refinement
        def refines(p, q):
            return all(any(bp <= bq for bq in q) for bp in p)

        minimal = [
            p
            for p in systems
            if not any(q != p and refines(q, p) for q in systems)
        ]
        return sorted(minimal, key=lambda p: (len(p[0]), sorted(map(sorted, p))))

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            raise DomainError("primitivity test requires a transitive group")
        return not self.block_systems()

    # -- subgroups ---------------------------------------------------------

    def stabilizer(self, letter: int) -> "PermGroup":
        if not 1 <= letter <= self.degree:
            raise DomainError(f"letter {letter} out of range")
        els = [g for g in self.elements() if g(letter) == letter]
        return PermGroup.from_elements(els, order_cap=self.order_cap)

    def subgroup_from(self, elements) -> "PermGroup":
        return PermGroup.from_elements(elements, order_cap=self.order_cap)

    # -- conjugacy classes ---------------------------------------------------

    def conjugacy_class(self, rep: Permutation) -> frozenset[Permutation]:
        if rep not in self:
            raise DomainError("representative not in group")
        orb = {rep}
        frontier = [rep]
        while frontier:
            nf = []
            for x in frontier:
                for g in self.generators:
                    y = x.conjugate(g)
                    if y not in orb:
                        orb.add(y)
                        nf.append(y)
            frontier = nf
        return frozenset(orb)

    def class_of(self, rep: Permutation) -> "ConjClass":
        els = self.conjugacy_class(rep)
        return ConjClass(self, min(els), els)

    def conjugacy_classes(self) -> tuple["ConjClass", ...]:
        if self._classes is None:
            remaining = set(self.elements())
            out = []
            while remaining:
                rep = min(remaining)
                els = self.conjugacy_class(rep)
                remaining -= els
                out.append(ConjClass(self, rep, els))
            self._classes = tuple(out)
        return self._classes


@dataclass(frozen=True)
class ConjClass:
    """Conjugacy class keyed by (ambient group, minimal representative)."""

    group: PermGroup = field(compare=False)
    rep: Permutation
    elements: frozenset[Permutation] = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def element_order(self) -> int:
        return self.rep.order()

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def __str__(self):
        return str(self.rep)


def generate_group(gens, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Closure of the generators under composition; errors above the cap."""
    g = PermGroup(gens, order_cap=cap)
    g._materialize()
    return g


def is_transitive(G: PermGroup) -> bool:
    return G.is_transitive()


def is_primitive(G: PermGroup) -> bool:
    return G.is_primitive()


def is_doubly_transitive(G: PermGroup) -> bool:
    return G.is_doubly_transitive()


def stabilizer(G: PermGroup, letter: int) -> PermGroup:
    return G.stabilizer(letter)


def conjugacy_class(G: PermGroup, rep: Permutation) -> frozenset[Permutation]:
    return G.conjugacy_class(rep)


def fixed_point_free_element(G: PermGroup) -> Permutation | None:
    """Some element moving every letter (exists for transitive G, n > 1)."""
    if not G.is_transitive():
        raise DomainError("fixed-point-free search requires a transitive group")
    for g in G.elements():
        if not g.fixed_points():
            return g
    return None


# ---------------------------------------------------------------------------
# S_n searches: centralizer and normalizer


def centralizer_in_sym(
    G: PermGroup, degree_cap: int = DEFAULT_SEARCH_DEGREE_CAP
) -> PermGroup:
    """Centralizer of G in S_n by constrained backtracking.

    Assigning the image of one point per G-orbit forces the rest through
    sigma(i^g) = sigma(i)^g, so the search is a pruned DFS over anchors."""
    n = G.degree
    if n > degree_cap:
        raise SearchCapExceeded(f"centralizer search capped at degree {degree_cap}")
    gens = G.generators
    found: list[Permutation] = []

    def extend(partial: dict[int, int]):
        # propagate sigma(i^g) = sigma(i)^g to a fixpoint; None on clash
        queue = list(partial.items())
        out = dict(partial)
        while queue:
            i, im = queue.pop()
            for g in gens:
                j, jm = g(i), g(im)
                if j in out:
                    if out[j] != jm:
                        return None
                else:
                    out[j] = jm
                    queue.append((j, jm))
        return out

    def dfs(assign: dict[int, int]):
        if len(assign) == n:
            if sorted(assign.values()) == list(range(1, n + 1)):
                found.append(Permutation(assign[i] for i in range(1, n + 1)))
            return
        anchor = min(i for i in range(1, n + 1) if i not in assign)
        for im in range(1, n + 1):
            if im in assign.values():
                continue
            nxt = extend({**assign, anchor: im})
            if nxt is not None and len(set(nxt.values())) == len(nxt):
                dfs(nxt)

    dfs({})
    return PermGroup.from_elements(found)


def normalizer_condition(G: PermGroup) -> bool:
    """Whether N_G(G(1)) = G(1); equivalent to the centralizer in S_n of a
    transitive G being trivial."""
    stab = G.stabilizer(1)
    stab_set = frozenset(g.images for g in stab.elements())
    for g in G.elements():
        if g.images in stab_set:
            continue
        if all(h.conjugate(g).images in stab_set for h in stab.elements()):
            return False
    return True


def _transporter_perms(src: Permutation, dst: Permutation) -> list[Permutation]:
    """All h in S_n with h^-1 * src * h = dst, for src, dst single n-cycles."""
    n = src.degree
    c1 = src.cycles()[0]
    c2 = dst.cycles()[0]
    out = []
    for k in range(n):
        img = [0] * n
        rotated = c2[k:] + c2[:k]
        for a, b in zip(c1, rotated):
            img[a - 1] = b
        out.append(Permutation(img))
    return out


def normalizer_in_sym(
    G: PermGroup, degree_cap: int = DEFAULT_SEARCH_DEGREE_CAP
) -> PermGroup:
    """Normalizer of G in S_n.

    When G contains an n-cycle sigma, every normalizing h must map sigma to
    another n-cycle of G, so N(G) is found exactly by checking the finitely
    many transporters sigma -> tau.  Otherwise a capped backtracking runs."""
    n = G.degree
    els = G.elements()
    gen_imgs = [g for g in G.generators]
    el_set = frozenset(g.images for g in els)

    def normalizes(h: Permutation) -> bool:
        return all(g.conjugate(h).images in el_set for g in gen_imgs)

    ncycles = [g for g in els if g.is_n_cycle()]
    if ncycles and n > 1:
        sigma = ncycles[0]
        out = []
        for tau in ncycles:
            for h in _transporter_perms(sigma, tau):
                if normalizes(h):
                    out.append(h)
        return PermGroup.from_elements(out)

    if n > degree_cap:
        raise SearchCapExceeded(f"normalizer search capped at degree {degree_cap}")
    out = [
        h
        for h in (Permutation(im) for im in itertools.permutations(range(1, n + 1)))
        if normalizes(h)
    ]
    return PermGroup.from_elements(out)


def normalizer_preserving_classes(
    G: PermGroup, classes, degree_cap: int = DEFAULT_SEARCH_DEGREE_CAP
) -> PermGroup:
    """The subgroup of N_{S_n}(G) permuting the listed conjugacy classes
    with multiplicity."""
    import collections

    norm = normalizer_in_sym(G, degree_cap=degree_cap)
    class_index = {g: c.rep for c in G.conjugacy_classes() for g in c.elements}
    mult = collections.Counter(class_index[c.rep] for c in classes)
    reps = [c.rep for c in classes]

    def preserves(h: Permutation) -> bool:
        image_mult = collections.Counter(class_index[r.conjugate(h)] for r in reps)
        return image_mult == mult

    kept = [h for h in norm.elements() if preserves(h)]
    return PermGroup.from_elements(kept)
