"""Cyclic difference sets: verification, exhaustive search, multipliers,
the minus-one test, feasibility triples, Bruck-Ryser-Chowla elimination,
and the Singer projective construction."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import DomainError, SearchCapExceeded
from .permcore import Permutation

SEARCH_MODULUS_CAP = 64


def _difference_counts(n: int, residues) -> Counter:
    res = sorted(r % n for r in residues)
    return Counter((a - b) % n for a in res for b in res if a != b)


def is_difference_set(n: int, residues) -> tuple[bool, int | None]:
    """Whether every nonzero residue appears equally often as a difference;
    returns (flag, lambda)."""
    res = {r % n for r in residues}
    if not res:
        raise DomainError("empty residue set")
    if len(res) != len(list(residues)):
        raise DomainError("repeated residues")
    counts = _difference_counts(n, res)
    if len(counts) != n - 1:
        return False, None
    values = set(counts.values())
    if len(values) != 1:
        return False, None
    return True, values.pop()


@dataclass(frozen=True)
class DifferenceSet:
    """A (n, k, u) cyclic difference set; u = k(k-1)/(n-1)."""

    modulus: int
    residues: frozenset[int]

    def __post_init__(self):
        object.__setattr__(
            self, "residues", frozenset(r % self.modulus for r in self.residues)
        )
        ok, u = is_difference_set(self.modulus, self.residues)
        if not ok:
            raise DomainError(
                f"{sorted(self.residues)} is not a difference set mod {self.modulus}"
            )

    @property
    def k(self) -> int:
        return len(self.residues)

    @property
    def u(self) -> int:
        return self.k * (self.k - 1) // (self.modulus - 1)

    def sorted_residues(self) -> tuple[int, ...]:
        return tuple(sorted(self.residues))

    def translate(self, j: int) -> "DifferenceSet":
        return DifferenceSet(
            self.modulus, frozenset((r + j) % self.modulus for r in self.residues)
        )

    def scale(self, c: int) -> "DifferenceSet":
        if gcd(c, self.modulus) != 1:
            raise DomainError(f"{c} is not a unit mod {self.modulus}")
        return DifferenceSet(
            self.modulus, frozenset((c * r) % self.modulus for r in self.residues)
        )

    def canonical_translate(self) -> tuple[int, ...]:
        return canonical_translate(self.modulus, self.residues)

    def is_normalized(self) -> bool:
        return 2 <= self.k <= (self.modulus - 1) // 2

    def complement(self) -> "DifferenceSet":
        return DifferenceSet(
            self.modulus,
            frozenset(set(range(self.modulus)) - set(self.residues)),
        )

    def __str__(self):
        return "{" + ", ".join(map(str, self.sorted_residues())) + "} mod %d" % self.modulus


def canonical_translate(n: int, residues) -> tuple[int, ...]:
    """Lexicographically minimal translate, as a sorted tuple."""
    res = sorted(r % n for r in residues)
    return min(tuple(sorted((r + j) % n for r in res)) for j in range(n))


def translation_equivalent(n: int, a, b) -> bool:
    return canonical_translate(n, a) == canonical_translate(n, b)


# ---------------------------------------------------------------------------
# feasibility


def feasible_triples(max_n: int, all_k: bool = False) -> list[tuple[int, int, int]]:
    """Candidate (n, k, u) triples with u = k(k-1)/(n-1) integral and
    2 <= k <= (n-1)/2.

    By default one candidate per modulus is reported (the smallest k), the
    per-degree normalization under which the classical candidate list up to
    n = 31 has 13 entries; ``all_k`` lists every admissible k (n = 31 also
    admits k = 10 and k = 15)."""
    out = []
    for n in range(7, max_n + 1):
        ks = [
            k
            for k in range(2, (n - 1) // 2 + 1)
            if k * (k - 1) % (n - 1) == 0 and k * (k - 1) // (n - 1) >= 1
        ]
        if not ks:
            continue
        if all_k:
            out.extend((n, k, k * (k - 1) // (n - 1)) for k in ks)
        else:
            k = ks[0]
            out.append((n, k, k * (k - 1) // (n - 1)))
    return out


# ---------------------------------------------------------------------------
# Bruck-Ryser-Chowla


def _squarefree_part(x: int) -> int:
    sign = -1 if x < 0 else 1
    x = abs(x)
    out = 1
    d = 2
    while d * d <= x:
        while x % (d * d) == 0:
            x //= d * d
        if x % d == 0:
            out *= d
            x //= d
        d += 1
    return sign * out * x


def _is_qr(a: int, m: int) -> bool:
    """Whether a is a square mod every odd prime dividing m (m squarefree)."""
    a %= m
    d = 3
    while d * d <= m:
        if m % d == 0:
            if pow(a % d, (d - 1) // 2, d) not in (0, 1):
                return False
            m //= d
        else:
            d += 2 if d > 2 else 1
    if m > 2:
        if pow(a % m, (m - 1) // 2, m) not in (0, 1):
            return False
    return True


def ternary_solvable(a: int, b: int, c: int) -> bool:
    """Whether a x^2 + b y^2 + c z^2 = 0 has a nontrivial integer solution
    (Legendre's criterion after squarefree/coprime reduction)."""
    if a == 0 or b == 0 or c == 0:
        return True  # a zero coefficient leaves a rank-2 form with free slot
    a, b, c = map(_squarefree_part, (a, b, c))
    # make pairwise coprime: a common prime of two slots moves to the third
    changed = True
    while changed:
        changed = False
        for (i, j, k) in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            vals = [a, b, c]
            g = gcd(vals[i], vals[j])
            if g > 1:
                vals[i] //= g
                vals[j] //= g
                vals[k] = _squarefree_part(vals[k] * g)
                a, b, c = vals
                changed = True
    if a > 0 and b > 0 and c > 0:
        return False
    if a < 0 and b < 0 and c < 0:
        return False
    return (
        _is_qr(-b * c, abs(a))
        and _is_qr(-a * c, abs(b))
        and _is_qr(-a * b, abs(c))
    )


def brc_feasible(n: int, k: int, u: int) -> bool:
    """The Bruck-Ryser-Chowla necessary condition: for n even, k - u must be
    a square; for n odd, z^2 = (k-u) x^2 + (-1)^((n-1)/2) u y^2 must have a
    nontrivial integer solution."""
    if u * (n - 1) != k * (k - 1):
        raise DomainError(f"({n}, {k}, {u}) is not a design triple")
    order = k - u
    if n % 2 == 0:
        r = isqrt(order)
        return r * r == order
    sign = -1 if ((n - 1) // 2) % 2 else 1
    return ternary_solvable(order, sign * u, -1)


def brc_certificate(n: int, k: int, u: int, box: int = 200):
    """Small solution certificate (x, y, z) for the odd case, or None."""
    if n % 2 == 0:
        raise DomainError("certificates apply to the odd case")
    sign = -1 if ((n - 1) // 2) % 2 else 1
    for x in range(box):
        for y in range(box):
            v = (k - u) * x * x + sign * u * y * y
            if v < 0:
                continue
            z = isqrt(v)
            if z * z == v and (x or y or z):
                return (x, y, z)
    return None


# ---------------------------------------------------------------------------
# search


def enumerate_difference_sets(n: int, k: int, workers: int = 1
                              ) -> list[DifferenceSet]:
    """All (n, k) difference sets up to translation, one canonical
    representative each, by pruned backtracking (counts capped at u)."""
    if n > SEARCH_MODULUS_CAP:
        raise SearchCapExceeded(f"difference-set search capped at n <= {SEARCH_MODULUS_CAP}")
    if k * (k - 1) % (n - 1):
        return []
    u = k * (k - 1) // (n - 1)

    found: set[tuple[int, ...]] = set()

    def extend(chosen: list[int], counts: Counter, start: int):
        if len(chosen) == k:
            found.add(canonical_translate(n, chosen))
            return
        # not enough residues left to finish
        if n - start < k - len(chosen):
            return
        for nxt in range(start, n):
            new = Counter()
            ok = True
            for c in chosen:
                for d in ((nxt - c) % n, (c - nxt) % n):
                    new[d] += 1
                    if counts[d] + new[d] > u:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                counts.update(new)
                chosen.append(nxt)
                extend(chosen, counts, nxt + 1)
                chosen.pop()
                counts.subtract(new)

    # translates allow anchoring 0 in the set
    extend([0], Counter(), 1)
    sets = [DifferenceSet(n, frozenset(t)) for t in sorted(found)]
    return sets


# ---------------------------------------------------------------------------
# multipliers


@dataclass(frozen=True)
class MultiplierGroup:
    modulus: int
    units: frozenset[int]

    def __post_init__(self):
        if 1 not in self.units:
            raise DomainError("multiplier group must contain 1")
        for a in self.units:
            for b in self.units:
                if (a * b) % self.modulus not in self.units:
                    raise DomainError("multipliers are not closed under product")

    @property
    def order(self) -> int:
        return len(self.units)

    def sorted_units(self) -> tuple[int, ...]:
        return tuple(sorted(self.units))

    def __contains__(self, c: int) -> bool:
        return c % self.modulus in self.units


def multipliers(D: DifferenceSet) -> MultiplierGroup:
    """Units c with cD a translate of D."""
    n = D.modulus
    canon = D.canonical_translate()
    units = frozenset(
        c
        for c in range(1, n)
        if gcd(c, n) == 1
        and canonical_translate(n, [(c * r) % n for r in D.residues]) == canon
    )
    return MultiplierGroup(n, units)


def storer_check(D: DifferenceSet) -> bool:
    """True when -1 is NOT a multiplier."""
    return (D.modulus - 1) not in multipliers(D).units


# ---------------------------------------------------------------------------
# Singer construction


def _prime_factors(x: int) -> list[int]:
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


def _poly_mul_mod(a, b, modulus, p):
    deg = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, deg - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(deg):
                prod[d - deg + i] = (prod[d - deg + i] - c * modulus[i]) % p
    out = prod[:deg]
    while len(out) < deg:
        out.append(0)
    return tuple(out)


def _is_irreducible(modulus, p) -> bool:
    """Rabin test: x^(p^d) = x mod f and x^(p^(d/l)) != x for prime l | d."""
    d = len(modulus) - 1
    x = tuple([0, 1] + [0] * (d - 2)) if d >= 2 else (0,)

    def frob_iterate(e, times):
        for _ in range(times):
            out = e
            acc = (1,) + (0,) * (d - 1)
            base = e
            k = p
            while k:
                if k & 1:
                    acc = _poly_mul_mod(acc, base, modulus, p)
                base = _poly_mul_mod(base, base, modulus, p)
                k >>= 1
            e = acc
        return e

    if frob_iterate(x, d) != x:
        return False
    for ell in _prime_factors(d):
        if ell < d and frob_iterate(x, d // ell) == x:
            return False
    return True


def singer_data(q: int, v: int, irreducible=None):
    """Discrete-log labels of projective v-space over F_q, q prime: returns
    (n, labels of hyperplane points, multiplication-by-x n-cycle).

    Nonzero field elements are labelled by discrete log of the residue class
    of x, plus one; the hyperplane is the span of 1, x, ..., x^(v-1)."""
    p = q
    if any(p % d == 0 for d in range(2, p)) or p < 2:
        raise DomainError("Singer construction implemented for prime q")
    deg = v + 1
    if irreducible is None:
        irreducible = _default_irreducible(p, deg)
    modulus = tuple(c % p for c in irreducible)
    if len(modulus) != deg + 1 or modulus[-1] != 1:
        raise DomainError(f"need a monic degree-{deg} polynomial")
    if not _is_irreducible(modulus, p):
        raise DomainError("polynomial is reducible")
    n = (p ** deg - 1) // (p - 1)
    x = tuple([0, 1] + [0] * (deg - 2))
    # walk powers of x through projective classes: class of x^j has label j+1
    labels: dict[tuple, int] = {}
    e = (1,) + (0,) * (deg - 1)
    for j in range(n):
        for c in range(1, p):
            scaled = tuple((c * t) % p for t in e)
            if scaled in labels:
                raise DomainError("polynomial's root does not generate the point cycle")
            labels[scaled] = j + 1
        e = _poly_mul_mod(e, x, modulus, p)
    # back at a scalar multiple of 1: the walk closed up
    hyper = []
    for coeffs in itertools.product(range(p), repeat=v):
        if not any(coeffs):
            continue
        vec = tuple(coeffs) + (0,)
        hyper.append(labels[vec])
    return n, sorted(set(hyper)), labels


_DEFAULT_IRREDUCIBLES = {
    # p, degree -> monic coefficients, constant first
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 3): (1, 2, 0, 1),
}


def _default_irreducible(p: int, deg: int):
    """Table entry, else the lexicographically first monic irreducible whose
    root generates the projective point cycle."""
    table = _DEFAULT_IRREDUCIBLES.get((p, deg))
    if table is not None:
        return table
    for lower in itertools.product(range(p), repeat=deg):
        modulus = tuple(lower) + (1,)
        if not _is_irreducible(modulus, p):
            continue
        try:
            singer_data(p, deg - 1, modulus)
        except DomainError:
            continue
        return modulus
    raise DomainError(f"no usable irreducible found for p={p}, degree {deg}")


def singer_difference_set(q: int, v: int, irreducible=None) -> DifferenceSet:
    """The hyperplane difference set of projective v-space over F_q."""
    n, hyper, _ = singer_data(q, v, irreducible)
    return DifferenceSet(n, frozenset(hyper))


def singer_cycle(q: int, v: int, irreducible=None) -> Permutation:
    """Multiplication by the polynomial root as the n-cycle on the
    discrete-log point labels: exactly (1 2 ... n)."""
    n, _, _ = singer_data(q, v, irreducible)
    return Permutation.from_cycles(n, [tuple(range(1, n + 1))])


# ---------------------------------------------------------------------------
# incidence identity


@dataclass(frozen=True)
class IncidenceReport:
    alpha: int
    u: int
    equals_k_minus_u: bool
    equals_k_minus_1: bool
    transpose_realizes_negative: bool


def incidence_identity_check(D: DifferenceSet) -> IncidenceReport:
    """Compute N N^t for the translate incidence matrix and write it as
    alpha I + u J with alpha measured empirically; also check that the
    transposed system realizes -1 times the set up to translation."""
    n = D.modulus
    rows = [[1 if (j - i) % n in D.residues else 0 for j in range(n)] for i in range(n)]
    diag = sum(rows[0][j] * rows[0][j] for j in range(n)) - D.u
    for i in range(n):
        for j in range(n):
            dot = sum(rows[i][t] * rows[j][t] for t in range(n))
            expected = D.u + (diag if i == j else 0)
            if dot != expected:
                raise DomainError("incidence product is not of the form alpha I + u J")
    last_col = frozenset(i for i in range(n) if rows[i][n - 1])
    neg = frozenset((-r) % n for r in D.residues)
    return IncidenceReport(
        alpha=diag,
        u=D.u,
        equals_k_minus_u=diag == D.k - D.u,
        equals_k_minus_1=diag == D.k - 1,
        transpose_realizes_negative=canonical_translate(n, last_col)
        == canonical_translate(n, neg),
    )
