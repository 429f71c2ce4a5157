"""The Hurwitz monodromy action on Nielsen tuples: twists q_1..q_{r-1} and
the shift, orbit enumeration, the r=4 reduced (mapping-class) action with
cusp and genus data, fine-moduli predicates, and the cyclotomic multiplier
groups attached to a class vector."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from .errors import DomainError, OrbitCapExceeded
from .nielsen import (
    ClassVector,
    EquivalencePolicy,
    NielsenTuple,
    _conjugation_canonical,
    canonical_form,
)
from .permcore import ConjClass, PermGroup, Permutation, generate_group

DEFAULT_ORBIT_CAP = 1_000_000


# ---------------------------------------------------------------------------
# generators of H_r on tuples


def q_action(i: int, t: NielsenTuple) -> NielsenTuple:
    """The i-th twist: slots i, i+1 become (g_i g_{i+1} g_i^-1, g_i)."""
    if not 1 <= i <= t.r - 1:
        raise DomainError(f"twist index {i} out of range 1..{t.r - 1}")
    g = list(t.entries)
    a, b = g[i - 1], g[i]
    g[i - 1] = a * b * a.inverse()
    g[i] = a
    return NielsenTuple(t.group, g, _trusted=True)


def q_inverse(i: int, t: NielsenTuple) -> NielsenTuple:
    if not 1 <= i <= t.r - 1:
        raise DomainError(f"twist index {i} out of range 1..{t.r - 1}")
    g = list(t.entries)
    a, b = g[i - 1], g[i]
    g[i - 1] = b
    g[i] = b.inverse() * a * b
    return NielsenTuple(t.group, g, _trusted=True)


def sh_action(t: NielsenTuple) -> NielsenTuple:
    """The left shift (g_1,...,g_r) -> (g_2,...,g_r,g_1)."""
    return NielsenTuple(t.group, t.entries[1:] + t.entries[:1], _trusted=True)


def sh_inverse(t: NielsenTuple) -> NielsenTuple:
    return NielsenTuple(t.group, t.entries[-1:] + t.entries[:-1], _trusted=True)


def apply_word(word, t: NielsenTuple) -> NielsenTuple:
    """Apply a braid word, e.g. "q1 q3^-1 sh", left to right."""
    if isinstance(word, str):
        word = word.split()
    for w in word:
        inv = w.endswith("^-1")
        name = w[:-3] if inv else w
        if name == "sh":
            t = sh_inverse(t) if inv else sh_action(t)
        elif name.startswith("q"):
            i = int(name[1:])
            t = q_inverse(i, t) if inv else q_action(i, t)
        else:
            raise DomainError(f"unknown braid letter {w!r}")
    return t


# ---------------------------------------------------------------------------
# Q''_4 and reduced canonical forms


def _qq_generator_moves(r: int):
    """Q''_4 tuple moves: sh^2 and q_1 q_3^-1, with inverses."""
    if r != 4:
        return []
    return [
        lambda t: sh_action(sh_action(t)),
        lambda t: sh_inverse(sh_inverse(t)),
        lambda t: q_inverse(3, q_action(1, t)),
        lambda t: q_action(3, q_inverse(1, t)),
    ]


def qq_orbit_tuples(t: NielsenTuple) -> list[NielsenTuple]:
    """Raw-tuple orbit of t under the Q''_4 generators."""
    moves = _qq_generator_moves(t.r)
    seen = {t.images_key(): t}
    frontier = [t]
    while frontier:
        new = []
        for x in frontier:
            for mv in moves:
                y = mv(x)
                k = y.images_key()
                if k not in seen:
                    seen[k] = y
                    new.append(y)
        frontier = new
    return [seen[k] for k in sorted(seen)]


def reduced_canonical_form(t: NielsenTuple, policy: EquivalencePolicy,
                           classes: ClassVector | None = None) -> NielsenTuple:
    """Minimal base-policy canonical form over the Q''-orbit of the tuple
    (for r != 4 Q'' is trivial and this is the base canonical form)."""
    base = EquivalencePolicy(policy.base)
    if t.r != 4:
        return _conjugation_canonical(t, base, classes)
    moves = _qq_generator_moves(4)
    best = _conjugation_canonical(t, base, classes)
    seen = {best.images_key()}
    frontier = [best]
    while frontier:
        new = []
        for x in frontier:
            for mv in moves:
                y = _conjugation_canonical(mv(x), base, classes)
                k = y.images_key()
                if k not in seen:
                    seen.add(k)
                    new.append(y)
                    if k < best.images_key():
                        best = y
        frontier = new
    return best


def qq_orbit_length_on_classes(t: NielsenTuple, policy: EquivalencePolicy,
                               classes: ClassVector | None = None) -> int:
    """Number of base-policy classes in the Q''-orbit of t (the length-4
    test of the b-fine criterion)."""
    if t.r != 4:
        return 1
    base = EquivalencePolicy(policy.base if policy.is_reduced else policy.kind)
    moves = _qq_generator_moves(4)
    start = _conjugation_canonical(t, base, classes)
    seen = {start.images_key()}
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            for mv in moves:
                y = _conjugation_canonical(mv(x), base, classes)
                if y.images_key() not in seen:
                    seen.add(y.images_key())
                    new.append(y)
        frontier = new
    return len(seen)


# ---------------------------------------------------------------------------
# braid orbits


@dataclass(frozen=True)
class BraidOrbit:
    """A finite orbit of Nielsen tuples under H_r, with the action tables of
    q_1..q_{r-1} and sh as permutations of the representative indices."""

    policy: EquivalencePolicy
    representatives: tuple[NielsenTuple, ...]
    tables: dict

    @property
    def size(self) -> int:
        return len(self.representatives)

    @property
    def r(self) -> int:
        return self.representatives[0].r

    @property
    def group(self) -> PermGroup:
        return self.representatives[0].group

    def index_of(self, t: NielsenTuple) -> int:
        """1-based index of the class of t in the representative list."""
        key = canonical_form(t, self.policy).images_key()
        for i, rep in enumerate(self.representatives):
            if rep.images_key() == key:
                return i + 1
        raise DomainError("tuple is not in the orbit")

    def __contains__(self, t: NielsenTuple) -> bool:
        try:
            self.index_of(t)
            return True
        except DomainError:
            return False


def braid_orbit(seed: NielsenTuple, policy: EquivalencePolicy,
                cap: int = DEFAULT_ORBIT_CAP) -> BraidOrbit:
    """Closure of the seed under q_1..q_{r-1} and sh modulo the policy;
    deterministic representative order."""
    classes = seed.class_vector()
    r = seed.r
    start = canonical_form(seed, policy, classes)
    seen = {start.images_key(): start}
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            images = [q_action(i, x) for i in range(1, r)]
            images.append(sh_action(x))
            images.extend(q_inverse(i, x) for i in range(1, r))
            for y in images:
                yc = canonical_form(y, policy, classes)
                k = yc.images_key()
                if k not in seen:
                    if len(seen) >= cap:
                        raise OrbitCapExceeded(f"braid orbit exceeds cap {cap}")
                    seen[k] = yc
                    new.append(yc)
        frontier = new
    reps = tuple(seen[k] for k in sorted(seen))
    index = {rep.images_key(): i + 1 for i, rep in enumerate(reps)}

    def table(move) -> Permutation:
        img = [0] * len(reps)
        for i, rep in enumerate(reps):
            img[i] = index[canonical_form(move(rep), policy, classes).images_key()]
        return Permutation(img)

    tables = {f"q{i}": table(lambda t, i=i: q_action(i, t)) for i in range(1, r)}
    tables["sh"] = table(sh_action)
    return BraidOrbit(policy, reps, tables)


# ---------------------------------------------------------------------------
# relations


@dataclass
class RelationReport:
    checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def _is_simultaneous_conjugate(t1: NielsenTuple, t2: NielsenTuple) -> bool:
    """Whether t2 = h^-1 t1 h entrywise for some h in S_n."""
    n = t1.degree
    # anchor h on the first entry: try transporters within the symmetric group
    # via a pruned point-image DFS
    def dfs(assign: dict[int, int]) -> bool:
        if len(assign) == n:
            h = Permutation(assign[i] for i in range(1, n + 1))
            return all(a.conjugate(h) == b for a, b in zip(t1.entries, t2.entries))
        i = min(k for k in range(1, n + 1) if k not in assign)
        used = set(assign.values())
        for im in range(1, n + 1):
            if im in used:
                continue
            nxt = {**assign, i: im}
            # propagate: h(g1(i)) = g2(h(i)) for every entry pair
            ok = True
            queue = [i]
            while queue and ok:
                x = queue.pop()
                for a, b in zip(t1.entries, t2.entries):
                    xx, yy = a(x), b(nxt[x])
                    if xx in nxt:
                        if nxt[xx] != yy:
                            ok = False
                            break
                    elif yy in set(nxt.values()):
                        ok = False
                        break
                    else:
                        nxt[xx] = yy
                        queue.append(xx)
            if ok and len(set(nxt.values())) == len(nxt) and dfs(nxt):
                return True
        return False

    return dfs({})


def verify_relations(r: int, samples) -> RelationReport:
    """Check the commuting, twisting and sphere relations as actions on each
    sample tuple; the sphere word must act by simultaneous conjugation."""
    failures = []
    checked = 0
    for t in samples:
        if t.r != r:
            raise DomainError("sample tuple has wrong length")
        for i in range(1, r):
            for j in range(i + 2, r):
                checked += 1
                if q_action(j, q_action(i, t)) != q_action(i, q_action(j, t)):
                    failures.append(("commuting", i, j, t))
        for i in range(1, r - 1):
            checked += 1
            lhs = q_action(i, q_action(i + 1, q_action(i, t)))
            rhs = q_action(i + 1, q_action(i, q_action(i + 1, t)))
            if lhs != rhs:
                failures.append(("twisting", i, t))
        checked += 1
        word = list(range(1, r)) + list(range(r - 1, 0, -1))
        image = t
        for i in word:
            image = q_action(i, image)
        if not _is_simultaneous_conjugate(t, image):
            failures.append(("sphere", t))
    return RelationReport(checked, failures)


# ---------------------------------------------------------------------------
# reduced data: gammas, cusps, genus, fine moduli


@dataclass(frozen=True)
class ReducedOrbitData:
    """Branch cycles of the orbit's reduced space as a j-line cover."""

    gamma0: Permutation
    gamma1: Permutation
    gamma_inf: Permutation
    cusp_orbits: tuple[tuple[int, ...], ...]
    cusp_widths: tuple[int, ...]
    genus: int

    @property
    def index_sum(self) -> int:
        return self.gamma0.index() + self.gamma1.index() + self.gamma_inf.index()


def reduced_data(orbit: BraidOrbit) -> ReducedOrbitData:
    """gamma_0 = q1 q2, gamma_1 = sh, gamma_inf = q2 on reduced classes;
    cusps are gamma_inf orbits with their widths; genus from
    2(|O| + g - 1) = ind(gamma_0) + ind(gamma_1) + ind(gamma_inf)."""
    if orbit.r != 4:
        raise DomainError("reduced data requires r = 4")
    if not orbit.policy.is_reduced:
        raise DomainError("orbit was not built under a reduced policy")
    g0 = orbit.tables["q1"] * orbit.tables["q2"]
    g1 = orbit.tables["sh"]
    ginf = orbit.tables["q2"]
    if not (g0 * g1 * ginf).is_identity():
        raise DomainError("gamma product-one fails; inconsistent orbit tables")
    cusps = tuple(sorted(ginf.cycles(), key=lambda c: (-len(c), c)))
    widths = tuple(len(c) for c in cusps)
    n = orbit.size
    total = g0.index() + g1.index() + ginf.index()
    if total % 2:
        raise DomainError("odd index sum on reduced classes")
    genus = (total - 2 * (n - 1)) // 2
    if genus < 0:
        raise DomainError("negative genus; inconsistent orbit")
    return ReducedOrbitData(g0, g1, ginf, cusps, widths, genus)


@dataclass(frozen=True)
class FineModuli:
    b_fine: bool
    e_fine: bool


def fine_moduli(orbit: BraidOrbit) -> FineModuli:
    """b-fine: every Q''-orbit on the braid orbit has length 4;
    e-fine: b-fine and gamma_0, gamma_1 fixed-point-free."""
    if orbit.r != 4:
        raise DomainError("fine-moduli predicates require r = 4")
    classes = orbit.representatives[0].class_vector()
    b_fine = all(
        qq_orbit_length_on_classes(rep, orbit.policy, classes) == 4
        for rep in orbit.representatives
    )
    if not b_fine:
        return FineModuli(False, False)
    data = reduced_data(orbit)
    e_fine = not data.gamma0.fixed_points() and not data.gamma1.fixed_points()
    return FineModuli(b_fine, e_fine)


def verify_qq_normality(orbit: BraidOrbit) -> bool:
    """Exact check that the Q'' generators generate a normal subgroup of the
    full braid image on this orbit's base-policy classes (replaces bounded
    word-length closure: the induced action is finite, so normality is
    decidable outright)."""
    if orbit.r != 4:
        return True
    base_policy = EquivalencePolicy(orbit.policy.base)
    classes = orbit.representatives[0].class_vector()
    reps: dict[tuple, NielsenTuple] = {}
    frontier = [_conjugation_canonical(t, base_policy, classes)
                for t in orbit.representatives]
    for t in frontier:
        reps[t.images_key()] = t
    moves = [lambda t: q_action(1, t), lambda t: q_action(2, t),
             lambda t: q_action(3, t), sh_action]
    while frontier:
        new = []
        for x in frontier:
            for mv in moves:
                y = _conjugation_canonical(mv(x), base_policy, classes)
                if y.images_key() not in reps:
                    reps[y.images_key()] = y
                    new.append(y)
        frontier = new
    keys = sorted(reps)
    index = {k: i + 1 for i, k in enumerate(keys)}

    def induced(mv) -> Permutation:
        img = [0] * len(keys)
        for k, i in index.items():
            img[i - 1] = index[
                _conjugation_canonical(mv(reps[k]), base_policy, classes).images_key()
            ]
        return Permutation(img)

    action = [induced(mv) for mv in moves]
    qq_gens = [induced(lambda t: sh_action(sh_action(t))),
               induced(lambda t: q_inverse(3, q_action(1, t)))]
    H = generate_group(action)
    QQ = generate_group(qq_gens)
    return all(q.conjugate(h) in QQ for q in qq_gens for h in H.elements())


# ---------------------------------------------------------------------------
# class powers, rational unions, multiplier groups


def class_power(c: ConjClass, power: int) -> ConjClass:
    """The class of rep^power; power must be prime to the element order."""
    if gcd(power, c.element_order) != 1:
        raise DomainError(f"{power} is not a unit mod the element order")
    return c.group.class_of(c.rep ** power)


def is_rational_union(classes: ClassVector, modulus: int | None = None) -> bool:
    """Whether the class multiset is invariant under all unit powers."""
    n = modulus if modulus is not None else classes.modulus
    mult = Counter(c.rep for c in classes.classes)
    for c_unit in range(1, n):
        if gcd(c_unit, n) != 1:
            continue
        powered = Counter(class_power(c, c_unit).rep for c in classes.classes)
        if powered != mult:
            return False
    return True


@dataclass(frozen=True)
class CyclotomicSubfield:
    """A unit subgroup H of (Z/N)*; the associated field is the fixed field
    of H in the N-th cyclotomic field, of degree phi(N)/|H|."""

    modulus: int
    units: frozenset[int]

    def __post_init__(self):
        if 1 not in self.units:
            raise DomainError("unit subgroup must contain 1")
        for a in self.units:
            for b in self.units:
                if (a * b) % self.modulus not in self.units:
                    raise DomainError("unit set is not multiplicatively closed")

    @property
    def degree_over_q(self) -> int:
        phi = sum(1 for k in range(1, self.modulus + 1) if gcd(k, self.modulus) == 1)
        return phi // len(self.units)

    def sorted_units(self) -> tuple[int, ...]:
        return tuple(sorted(self.units))


def inner_multiplier(classes: ClassVector) -> CyclotomicSubfield:
    """Units c mod N_C whose power map permutes the class multiset."""
    n = classes.modulus
    mult = Counter(c.rep for c in classes.classes)
    units = [
        c_unit
        for c_unit in range(1, n + 1)
        if gcd(c_unit, n) == 1
        and Counter(class_power(c, c_unit).rep for c in classes.classes) == mult
    ]
    return CyclotomicSubfield(n, frozenset(units))


def multiplier_group_MC(G: PermGroup, classes: ClassVector) -> CyclotomicSubfield:
    """Units c mod N_C for which some h in N_{S_n}(G, C) carries the powered
    class multiset back to the original one."""
    from .permcore import normalizer_in_sym

    n = classes.modulus
    norm = normalizer_in_sym(G)
    class_index = {g: cl.rep for cl in G.conjugacy_classes() for g in cl.elements}
    original = Counter(class_index[c.rep] for c in classes.classes)

    # distinct class-permutation signatures of normalizer elements
    signatures = set()
    base_reps = sorted({c.rep for c in G.conjugacy_classes()})
    for h in norm.elements():
        signatures.add(tuple(class_index[rep.conjugate(h)] for rep in base_reps))
    sig_maps = [dict(zip(base_reps, sig)) for sig in sorted(signatures)]

    units = []
    for c_unit in range(1, n + 1):
        if gcd(c_unit, n) != 1:
            continue
        powered = [class_index[c.rep ** c_unit] for c in classes.classes]
        if any(Counter(m[p] for p in powered) == original for m in sig_maps):
            units.append(c_unit)
    return CyclotomicSubfield(n, frozenset(units))


def braidable(h: Permutation, orbit: BraidOrbit) -> bool:
    """Whether conjugation by h maps the orbit into itself (h must normalize
    the group; changing the class vector is an immediate obstruction)."""
    G = orbit.group
    el_set = frozenset(g.images for g in G.elements())
    if any(g.conjugate(h).images not in el_set for g in G.generators):
        raise DomainError("h does not normalize the group")
    rep = orbit.representatives[0]
    conj = rep.conjugate(h)
    if conj.class_multiset() != rep.class_multiset():
        return False
    return conj in orbit
