"""Nielsen classes: r-tuples in prescribed conjugacy classes satisfying
generation and product-one, up to raw / inner / absolute / reduced
equivalence."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import lcm

from .errors import DomainError, DegreeMismatchError
from .permcore import (
    ConjClass,
    PermGroup,
    Permutation,
    generate_group,
    normalizer_preserving_classes,
)


@dataclass(frozen=True)
class ClassVector:
    """An r-multiset of conjugacy classes of one ambient group, stored in
    the canonical order (element order, class size, minimal representative)."""

    group: PermGroup
    classes: tuple[ConjClass, ...]

    def __post_init__(self):
        if not self.classes:
            raise DomainError("empty class vector")
        if any(c.group is not self.group for c in self.classes):
            # allow equal-but-distinct group handles, reject genuinely foreign ones
            for c in self.classes:
                if c.rep not in self.group:
                    raise DomainError("class from a different ambient group")
        object.__setattr__(self, "classes", tuple(sorted(
            self.classes, key=lambda c: (c.element_order, c.size, c.rep.images)
        )))

    @property
    def r(self) -> int:
        return len(self.classes)

    @property
    def modulus(self) -> int:
        """N_C: the lcm of the element orders of the classes."""
        return lcm(*(c.element_order for c in self.classes))

    def multiset(self) -> Counter:
        return Counter(c.rep for c in self.classes)

    def __str__(self):
        return "[" + ", ".join(str(c.rep) for c in self.classes) + "]"


VALID_KINDS = ("raw", "inner", "absolute", "reduced")


@dataclass(frozen=True)
class EquivalencePolicy:
    """Which conjugations identify tuples: nothing (raw), the group itself
    (inner), N_{S_n}(G, C) (absolute), or additionally the r=4 quotient
    Q'' (reduced; for r >= 5 reduced collapses to its base policy)."""

    kind: str
    base: str = "absolute"

    def __post_init__(self):
        if self.kind not in VALID_KINDS:
            raise DomainError(f"unknown policy kind {self.kind!r}")
        if self.base not in ("inner", "absolute"):
            raise DomainError(f"unknown base policy {self.base!r}")

    @property
    def is_reduced(self) -> bool:
        return self.kind == "reduced"

    def conjugators(self, G: PermGroup, classes: ClassVector) -> tuple[Permutation, ...]:
        kind = self.base if self.kind == "reduced" else self.kind
        if kind == "raw":
            return (Permutation.identity(G.degree),)
        if kind == "inner":
            return G.elements()
        key = (id(G), tuple(c.rep.images for c in classes.classes))
        cached = _NORMALIZER_CACHE.get(key)
        if cached is None:
            cached = normalizer_preserving_classes(G, classes.classes).elements()
            _NORMALIZER_CACHE[key] = cached
        return cached


_NORMALIZER_CACHE: dict = {}


RAW = EquivalencePolicy("raw")
INNER = EquivalencePolicy("inner")
ABSOLUTE = EquivalencePolicy("absolute")
REDUCED_ABSOLUTE = EquivalencePolicy("reduced", "absolute")
REDUCED_INNER = EquivalencePolicy("reduced", "inner")


class NielsenTuple:
    """An r-tuple of group elements generating the group with product one
    (left-first products throughout)."""

    __slots__ = ("group", "entries")

    def __init__(self, group: PermGroup, entries, _trusted: bool = False):
        entries = tuple(entries)
        if not entries:
            raise DomainError("empty tuple")
        if any(g.degree != group.degree for g in entries):
            raise DegreeMismatchError("entry degree differs from group degree")
        if not _trusted:
            prod = Permutation.identity(group.degree)
            for g in entries:
                prod = prod * g
            if not prod.is_identity():
                raise DomainError("tuple violates product-one")
            if generate_group(entries, cap=group.order_cap).order() != group.order():
                raise DomainError("tuple does not generate the group")
        self.group = group
        self.entries = entries

    @classmethod
    def spanning(cls, entries, cap: int | None = None) -> "NielsenTuple":
        """Tuple over the group its own entries generate."""
        kwargs = {} if cap is None else {"cap": cap}
        return cls(generate_group(entries, **kwargs), entries)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return self.group.degree

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return (
            isinstance(other, NielsenTuple)
            and self.entries == other.entries
            and self.group.degree == other.group.degree
        )

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "NielsenTuple(" + ", ".join(str(g) for g in self.entries) + ")"

    def images_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.images for g in self.entries)

    def conjugate(self, h: Permutation) -> "NielsenTuple":
        return NielsenTuple(
            self.group, tuple(g.conjugate(h) for g in self.entries), _trusted=True
        )

    def class_multiset(self) -> Counter:
        return Counter(min(self.group.conjugacy_class(g)) for g in self.entries)

    def class_vector(self) -> ClassVector:
        return ClassVector(self.group, tuple(self.group.class_of(g) for g in self.entries))

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "degree": self.degree,
            "entries": [str(g) for g in self.entries],
        }

    @classmethod
    def from_json_dict(cls, data: dict, group: PermGroup | None = None) -> "NielsenTuple":
        degree = int(data["degree"])
        entries = tuple(Permutation.parse(s, degree=degree) for s in data["entries"])
        if group is None:
            return cls.spanning(entries)
        return cls(group, entries)


@dataclass(frozen=True)
class PermutationRepresentation:
    """An action of degree-n permutations on a fresh, canonically ordered
    letter set (each letter a frozenset of original points)."""

    source_degree: int
    letters: tuple[frozenset[int], ...]
    name: str = ""

    @property
    def degree(self) -> int:
        return len(self.letters)

    def apply(self, p: Permutation) -> Permutation:
        if p.degree != self.source_degree:
            raise DegreeMismatchError("permutation degree does not match action")
        index = {letter: i + 1 for i, letter in enumerate(self.letters)}
        img = [0] * len(self.letters)
        for letter, i in index.items():
            moved = frozenset(p(x) for x in letter)
            j = index.get(moved)
            if j is None:
                raise DomainError(f"{p} does not preserve the letter system")
            img[i - 1] = j
        return Permutation(img)

    def check_action_of(self, G: PermGroup) -> None:
        for g in G.generators:
            self.apply(g)


def perm_rep_on_pairs(G: PermGroup) -> PermutationRepresentation:
    """Action on the unordered pairs of letters."""
    letters = tuple(
        frozenset(pair) for pair in itertools.combinations(range(1, G.degree + 1), 2)
    )
    rep = PermutationRepresentation(G.degree, letters, name="pairs")
    rep.check_action_of(G)
    return rep


def perm_rep_on_translates(G: PermGroup, residues, modulus: int | None = None
                           ) -> PermutationRepresentation:
    """Action on the translate system of a difference set (letter n plays
    residue 0); errors if G does not permute the translates."""
    n = modulus if modulus is not None else G.degree
    if n != G.degree:
        raise DomainError("translate system modulus must equal the group degree")
    base = sorted(residues)
    letters = tuple(
        sorted(
            {frozenset(((d + j - 1) % n) + 1 for d in base) for j in range(n)},
            key=sorted,
        )
    )
    rep = PermutationRepresentation(n, letters, name="translates")
    rep.check_action_of(G)
    return rep


def induced_tuple(t: NielsenTuple, rep: PermutationRepresentation) -> NielsenTuple:
    """Entrywise image of the tuple under the representation; product-one
    and generation are re-verified on the image."""
    entries = tuple(rep.apply(g) for g in t.entries)
    return NielsenTuple.spanning(entries, cap=t.group.order_cap)


# ---------------------------------------------------------------------------
# canonical forms and enumeration


def canonical_form(t: NielsenTuple, policy: EquivalencePolicy,
                   classes: ClassVector | None = None) -> NielsenTuple:
    """Lexicographically minimal conjugate of the tuple under the policy's
    conjugating group (reduced policies additionally minimize over Q'')."""
    if policy.is_reduced and t.r == 4:
        from .braid import reduced_canonical_form

        return reduced_canonical_form(t, policy, classes)
    return _conjugation_canonical(t, policy, classes)


def _conjugation_canonical(t: NielsenTuple, policy: EquivalencePolicy,
                           classes: ClassVector | None) -> NielsenTuple:
    if classes is None:
        classes = t.class_vector()
    conjugators = policy.conjugators(t.group, classes)
    best = min(
        (tuple(g.conjugate(h) for g in t.entries) for h in conjugators),
        key=lambda entries: tuple(g.images for g in entries),
    )
    return NielsenTuple(t.group, best, _trusted=True)


def are_equivalent(t1: NielsenTuple, t2: NielsenTuple,
                   policy: EquivalencePolicy) -> bool:
    if t1.group.degree != t2.group.degree or t1.group.order() != t2.group.order():
        raise DomainError("tuples live over different ambient data")
    if t1.class_multiset() != t2.class_multiset():
        raise DomainError("tuples have different class multisets")
    return canonical_form(t1, policy).entries == canonical_form(t2, policy).entries


def enumerate_nielsen(
    G: PermGroup,
    classes: ClassVector,
    policy: EquivalencePolicy,
    last: Permutation | None = None,
    all_orderings: bool = False,
) -> list[NielsenTuple]:
    """One canonical representative per equivalence class of the Nielsen
    class ni(G, C) under the policy.

    Entries follow the canonical class order, except that ``last`` pins the
    final entry to a specific element (the polynomial sigma_infinity^-1
    convention).  With ``all_orderings`` every distinct slot ordering of the
    class multiset is enumerated (the full Nielsen class rather than its
    sorted-slot transversal)."""
    r = classes.r
    if r < 2:
        raise DomainError("need r >= 2 classes")
    order = G.order()

    slot_orders: list[tuple[ConjClass, ...]]
    if last is not None:
        last_class = next((c for c in classes.classes if last in c), None)
        if last_class is None:
            raise DomainError("pinned last entry lies in no class of the vector")
        rest = list(classes.classes)
        rest.remove(last_class)
        slot_orders = [tuple(rest) + (last_class,)]
    elif all_orderings:
        slot_orders = sorted(
            set(itertools.permutations(classes.classes)),
            key=lambda order_: tuple(c.rep.images for c in order_),
        )
    else:
        slot_orders = [classes.classes]

    seen: dict[tuple, NielsenTuple] = {}
    ident = Permutation.identity(G.degree)
    for slots in slot_orders:
        free = slots[:-2] if last is not None else slots[:-1]
        forced_class = slots[-2] if last is not None else slots[-1]
        for prefix in itertools.product(*(sorted(c.elements) for c in free)):
            prod = ident
            for g in prefix:
                prod = prod * g
            if last is not None:
                forced = prod.inverse() * last.inverse()
                candidate = prefix + (forced, last)
            else:
                forced = prod.inverse()
                candidate = prefix + (forced,)
            if forced not in forced_class:
                continue
            if generate_group(candidate, cap=G.order_cap).order() != order:
                continue
            t = NielsenTuple(G, candidate, _trusted=True)
            key = canonical_form(t, policy, classes).images_key()
            if key not in seen:
                seen[key] = NielsenTuple(G, [Permutation(im) for im in key],
                                         _trusted=True)
    return [seen[k] for k in sorted(seen)]


def straighten_polynomial_tuple(t: NielsenTuple) -> NielsenTuple:
    """Normalize a tuple with an n-cycle entry so the last entry is exactly
    (1 2 ... n)^-1, resolving the leftover sigma_infinity-conjugation by the
    canonical-representative rule.  For r = 4 the n-cycle is first carried to
    the last slot by Q'' moves; otherwise it must already sit there."""
    n = t.degree
    target = Permutation.from_cycles(n, [tuple(range(1, n + 1))]).inverse()
    candidates = [t] if t.entries[-1].is_n_cycle() else []
    if not candidates:
        if not any(g.is_n_cycle() for g in t.entries):
            raise DomainError("tuple has no n-cycle entry")
        if t.r != 4:
            raise DomainError("n-cycle entry must be in the last slot when r != 4")
        from .braid import qq_orbit_tuples

        candidates = [u for u in qq_orbit_tuples(t) if u.entries[-1].is_n_cycle()]
        if not candidates:
            raise DomainError("no Q'' move brings the n-cycle to the last slot")
    from .permcore import _transporter_perms

    best = None
    for u in candidates:
        for h in _transporter_perms(u.entries[-1], target):
            v = tuple(g.conjugate(h) for g in u.entries)
            key = tuple(g.images for g in v)
            if best is None or key < best[0]:
                best = (key, v)
    return NielsenTuple(t.group, best[1], _trusted=True)
