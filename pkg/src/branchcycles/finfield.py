"""Finite-field arithmetic and value-set censuses.

Fields of size q <= 2^16 run on discrete log/antilog tables; larger fields
switch to vectorized coefficient arithmetic (the two representations are
cross-checked in the test suite).  Censuses evaluate exhaustively with a
configurable total point budget."""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from .errors import BudgetExceeded, DomainError

LOG_TABLE_LIMIT = 1 << 16
DEFAULT_BUDGET = 1 << 24
_CHUNK = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """q = p^t with p prime, else error."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    for p in range(2, isqrt(q) + 1):
        if q % p == 0:
            t = 0
            while q % p == 0:
                q //= p
                t += 1
            if q != 1:
                raise DomainError("not a prime power")
            return p, t
    return q, 1


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


# -- scalar polynomial helpers over F_p (coefficient tuples, constant first)


def _poly_mul_mod(a, b, modulus, p):
    deg = len(modulus) - 1
    prod_ = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod_[i + j] = (prod_[i + j] + ai * bj) % p
    for d in range(len(prod_) - 1, deg - 1, -1):
        c = prod_[d]
        if c:
            prod_[d] = 0
            for i in range(deg):
                prod_[d - deg + i] = (prod_[d - deg + i] - c * modulus[i]) % p
    out = (prod_ + [0] * deg)[:deg]
    return tuple(out)


def _is_irreducible(modulus, p) -> bool:
    deg = len(modulus) - 1
    if deg < 1:
        return False
    x = tuple([0, 1] + [0] * (deg - 2)) if deg >= 2 else (0,)

    def frob(e, times):
        for _ in range(times):
            acc = (1,) + (0,) * (deg - 1)
            base = e
            k = p
            while k:
                if k & 1:
                    acc = _poly_mul_mod(acc, base, modulus, p)
                base = _poly_mul_mod(base, base, modulus, p)
                k >>= 1
            e = acc
        return e

    if frob(x, deg) != x:
        return False
    return all(frob(x, deg // ell) != x for ell in _prime_factors(deg) if ell < deg)


def find_irreducible(p: int, deg: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of the given degree."""
    if deg == 1:
        return (0, 1)
    for lower in itertools.product(range(p), repeat=deg):
        cand = tuple(lower) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise DomainError(f"no irreducible of degree {deg} over F_{p}")


class FiniteField:
    """F_q, q = p^deg; elements encoded as integers whose base-p digits are
    the coefficients (constant digit first)."""

    def __init__(self, p: int, deg: int = 1, modulus=None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if deg < 1:
            raise DomainError("degree must be positive")
        self.p = p
        self.deg = deg
        self.q = p ** deg
        if deg == 1:
            self.modulus = (0, 1)
            self.mode = "prime"
        else:
            self.modulus = tuple(
                c % p for c in (modulus if modulus is not None else find_irreducible(p, deg))
            )
            if len(self.modulus) != deg + 1 or self.modulus[-1] != 1:
                raise DomainError(f"modulus must be monic of degree {deg}")
            if not _is_irreducible(self.modulus, p):
                raise DomainError("modulus polynomial is reducible")
            self.mode = "log" if self.q <= LOG_TABLE_LIMIT else "poly"
        self._tables_built = False
        self._generator: int | None = None
        if self.mode == "poly":
            self._powers = np.array([p ** i for i in range(deg)], dtype=np.int64)
            red = np.zeros((deg - 1, deg), dtype=np.int64)
            for excess in range(deg - 1):
                e = [0] * (deg + excess) + [1]
                e = self._reduce_scalar(e)
                red[excess] = e
            self._red = red

    @classmethod
    def of_order(cls, q: int, modulus=None) -> "FiniteField":
        p, t = factor_prime_power(q)
        return cls(p, t, modulus=modulus)

    def __repr__(self):
        return f"FiniteField({self.p}, {self.deg})"

    # -- encoding ----------------------------------------------------------

    def encode(self, coeffs) -> int:
        coeffs = list(coeffs)[: self.deg]
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def decode(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.deg):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_int(self, c: int) -> int:
        """Embed an integer through the prime subfield."""
        return c % self.p

    def _reduce_scalar(self, coeffs):
        p, deg, modulus = self.p, self.deg, self.modulus
        coeffs = [c % p for c in coeffs]
        for d in range(len(coeffs) - 1, deg - 1, -1):
            c = coeffs[d]
            if c:
                coeffs[d] = 0
                for i in range(deg):
                    coeffs[d - deg + i] = (coeffs[d - deg + i] - c * modulus[i]) % p
        return (coeffs + [0] * deg)[:deg]

    # -- scalar arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.mode == "prime":
            return (a + b) % self.p
        return self.encode(x + y for x, y in zip(self.decode(a), self.decode(b)))

    def neg(self, a: int) -> int:
        if self.mode == "prime":
            return (-a) % self.p
        return self.encode(-x for x in self.decode(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.mode == "prime":
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self.encode(
            _poly_mul_mod(self.decode(a), self.decode(b), self.modulus, self.p)
        )

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        out, base = 1, a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def eval_poly(self, coeffs, x: int) -> int:
        """Horner evaluation; coefficients are encoded field elements."""
        acc = 0
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def eval_int_poly(self, coeffs, x: int) -> int:
        """Horner evaluation of an integer-coefficient polynomial (the
        coefficients embed through the prime subfield)."""
        return self.eval_poly([c % self.p for c in coeffs], x)

    # -- generator -----------------------------------------------------------

    def generator(self) -> int:
        """Smallest-encoded multiplicative generator (asserts the group is
        cyclic of order q - 1)."""
        if self._generator is None:
            factors = _prime_factors(self.q - 1)
            for a in range(1, self.q):
                if self.mode != "prime" or a != 0:
                    if all(
                        self.pow(a, (self.q - 1) // ell) != 1 for ell in factors
                    ):
                        self._generator = a
                        break
            else:
                raise DomainError("no multiplicative generator found")
        return self._generator

    # -- tables / batch arithmetic -------------------------------------------

    def _build_tables(self):
        if self._tables_built:
            return
        if self.mode == "log":
            g = self.generator()
            exp = np.zeros(2 * (self.q - 1), dtype=np.int64)
            log = np.zeros(self.q, dtype=np.int64)
            a = 1
            for i in range(self.q - 1):
                exp[i] = a
                log[a] = i
                a = self.mul(a, g)
            exp[self.q - 1 :] = exp[: self.q - 1]
            self._exp, self._log = exp, log
            digits = np.zeros((self.q, self.deg), dtype=np.int64)
            rest = np.arange(self.q, dtype=np.int64)
            for i in range(self.deg):
                digits[:, i] = rest % self.p
                rest //= self.p
            self._digits = digits
            self._enc = np.array([self.p ** i for i in range(self.deg)], dtype=np.int64)
        self._tables_built = True

    def elements_array(self):
        """All elements: encoded int64 vector (prime/log) or digit matrix
        (poly mode)."""
        if self.mode in ("prime", "log"):
            return np.arange(self.q, dtype=np.int64)
        digits = np.zeros((self.q, self.deg), dtype=np.int64)
        rest = np.arange(self.q, dtype=np.int64)
        for i in range(self.deg):
            digits[:, i] = rest % self.p
            rest //= self.p
        return digits

    def mul_batch(self, A, B):
        """Elementwise products of two batches in the native representation."""
        if self.mode == "prime":
            return (A * B) % self.p
        if self.mode == "log":
            self._build_tables()
            out = np.zeros_like(A)
            nz = (A != 0) & (B != 0)
            out[nz] = self._exp[self._log[A[nz]] + self._log[B[nz]]]
            return out
        p, deg = self.p, self.deg
        conv = np.zeros((A.shape[0], 2 * deg - 1), dtype=np.int64)
        for i in range(deg):
            conv[:, i : i + deg] += A[:, i : i + 1] * B
        conv %= p
        for d in range(2 * deg - 2, deg - 1, -1):
            c = conv[:, d]
            conv[:, :deg] += c[:, None] * self._red[d - deg]
            conv[:, d] = 0
            conv[:, :deg] %= p
        return conv[:, :deg]

    def add_batch(self, A, B):
        if self.mode == "prime":
            return (A + B) % self.p
        if self.mode == "log":
            self._build_tables()
            dig = (self._digits[A] + self._digits[B]) % self.p
            return dig @ self._enc
        return (A + B) % self.p

    def sub_batch(self, A, B):
        if self.mode == "prime":
            return (A - B) % self.p
        if self.mode == "log":
            self._build_tables()
            dig = (self._digits[A] - self._digits[B]) % self.p
            return dig @ self._enc
        return (A - B) % self.p

    def constant_batch(self, c: int, npoints: int):
        """A batch of copies of an encoded field element."""
        if self.mode in ("prime", "log"):
            return np.full(npoints, c % self.q, dtype=np.int64)
        digits = self.decode(c % self.q)
        return np.tile(np.array(digits, dtype=np.int64), (npoints, 1))

    def add_int_batch(self, A, c: int):
        """Add a prime-subfield constant to a batch."""
        if self.mode in ("prime", "log"):
            one_digit = c % self.p
            if self.mode == "prime":
                return (A + one_digit) % self.p
            self._build_tables()
            dig = self._digits[A].copy()
            dig[:, 0] = (dig[:, 0] + one_digit) % self.p
            return dig @ self._enc
        out = A.copy()
        out[:, 0] = (out[:, 0] + c) % self.p
        return out

    def encode_batch(self, A):
        """Collapse the native representation to encoded int64 values."""
        if self.mode in ("prime", "log"):
            return A
        return A @ self._powers

    def eval_int_poly_batch(self, coeffs, X):
        """Horner evaluation of an integer-coefficient polynomial on a batch
        of points in native representation."""
        coeffs = [c % self.p for c in coeffs]
        if self.mode in ("prime", "log"):
            acc = np.full_like(X, coeffs[-1])
        else:
            acc = np.zeros_like(X)
            acc[:, 0] = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = self.mul_batch(acc, X)
            acc = self.add_int_batch(acc, c)
        return acc


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class FieldPolynomial:
    """Coefficient sequence, constant first; integer coefficients mean a
    polynomial over Z awaiting reduction."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            raise DomainError("empty polynomial")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x, mod: int | None = None):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
            if mod is not None:
                acc %= mod
        return acc

    def derivative(self) -> "FieldPolynomial":
        if self.degree == 0:
            return FieldPolynomial((0,))
        return FieldPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def compose(self, inner: "FieldPolynomial") -> "FieldPolynomial":
        acc = FieldPolynomial((self.coeffs[-1],))
        for c in reversed(self.coeffs[:-1]):
            acc = acc * inner + FieldPolynomial((c,))
        return acc

    def __mul__(self, other: "FieldPolynomial") -> "FieldPolynomial":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return FieldPolynomial(tuple(out))

    def __add__(self, other: "FieldPolynomial") -> "FieldPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FieldPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __str__(self):
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*\*?\s*)?
        (?:x(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> FieldPolynomial:
    """Parse text like ``"16*x^8 - 1"`` into integer coefficients."""
    s = text.strip()
    if not s:
        raise DomainError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, coef, exp = m.group("sign"), m.group("coef"), m.group("exp")
        if sign is None and not first:
            raise DomainError(f"missing sign in {text!r}")
        has_x = "x" in s[pos : m.end()]
        if coef is None and not has_x:
            raise DomainError(f"empty term in {text!r}")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        e = int(exp) if exp is not None else (1 if has_x else 0)
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        first = False
    deg = max(coeffs)
    return FieldPolynomial(tuple(coeffs.get(i, 0) for i in range(deg + 1)))


def resultant_int(f: FieldPolynomial, g: FieldPolynomial) -> int:
    """Exact resultant over Z via fraction-based elimination on the
    Sylvester matrix."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise DomainError("resultant of zero polynomial")
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in fc]
                    + [Fraction(0)] * (size - i - m - 1))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in gc]
                    + [Fraction(0)] * (size - i - n - 1))
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    assert det.denominator == 1
    return int(det)


def is_good_prime(f: FieldPolynomial, p: int) -> bool:
    """Good reduction: p divides neither the leading coefficient nor the
    resultant of (f, f')."""
    if f.leading % p == 0:
        return False
    return resultant_int(f, f.derivative()) % p != 0


def good_primes(f: FieldPolynomial, bound: int) -> tuple[list[int], list[int]]:
    """(good, skipped) primes up to the bound."""
    good, skipped = [], []
    for p in range(2, bound + 1):
        if not is_prime(p):
            continue
        (good if is_good_prime(f, p) else skipped).append(p)
    return good, skipped


# ---------------------------------------------------------------------------
# censuses


@dataclass(frozen=True)
class CensusEntry:
    k: int
    field_size: int
    value_set_size: int
    fiber_histogram: tuple[tuple[int, int], ...]
    surjective: bool
    injective: bool


@dataclass(frozen=True)
class FieldCensus:
    base_q: int
    entries: tuple[CensusEntry, ...]

    def entry(self, k: int) -> CensusEntry:
        for e in self.entries:
            if e.k == k:
                return e
        raise DomainError(f"no census entry for k={k}")

    def bijective_degrees(self) -> tuple[int, ...]:
        return tuple(e.k for e in self.entries if e.surjective and e.injective)


def _census_entry_from_values(k: int, q_k: int, values) -> CensusEntry:
    uniq, counts = np.unique(values, return_counts=True)
    hist = Counter(int(c) for c in counts)
    return CensusEntry(
        k=k,
        field_size=q_k,
        value_set_size=int(len(uniq)),
        fiber_histogram=tuple(sorted(hist.items())),
        surjective=len(uniq) == q_k,
        injective=bool((counts == 1).all()),
    )


def _evaluate_all(field: FiniteField, coeffs, workers: int = 1):
    """Encoded values of an integer-coefficient polynomial at every field
    point, evaluated in chunks (threads share the work when workers > 1;
    the chunked merge is order-independent)."""
    X = field.elements_array()
    npoints = field.q
    chunks = [(start, min(start + _CHUNK, npoints)) for start in range(0, npoints, _CHUNK)]

    def run(chunk):
        start, stop = chunk
        block = X[start:stop]
        return field.encode_batch(field.eval_int_poly_batch(coeffs, block))

    if workers > 1 and len(chunks) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    return np.concatenate(parts)


def value_census(f: FieldPolynomial, q: int, k_max: int,
                 budget: int = DEFAULT_BUDGET, workers: int = 1) -> FieldCensus:
    """Exact value-set statistics of f over F_{q^k}, k = 1..k_max."""
    p, t = factor_prime_power(q)
    if f.leading % p == 0:
        raise DomainError(f"leading coefficient vanishes mod {p}")
    total = sum(q ** k for k in range(1, k_max + 1))
    if total > budget:
        raise BudgetExceeded(f"census needs {total} points > budget {budget}")
    entries = []
    for k in range(1, k_max + 1):
        field = FiniteField(p, t * k)
        values = _evaluate_all(field, f.coeffs, workers=workers)
        entries.append(_census_entry_from_values(k, field.q, values))
    return FieldCensus(q, tuple(entries))


def is_permutation_poly(f: FieldPolynomial, q: int) -> bool:
    entry = value_census(f, q, 1).entry(1)
    return entry.surjective and entry.injective


def exceptional_census(f: FieldPolynomial, q: int, k_max: int,
                       budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """Degrees k <= k_max with f bijective on F_{q^k} (a finite-window proxy
    for exceptionality: genuinely exceptional maps are bijective along the
    full gcd-pattern progression, which the window exhibits)."""
    return value_census(f, q, k_max, budget=budget).bijective_degrees()


# ---------------------------------------------------------------------------
# Dickson polynomials


def dickson(n: int, a: int = 1) -> FieldPolynomial:
    """Integer Dickson polynomial: D_0 = 2, D_1 = x,
    D_m = x D_{m-1} - a D_{m-2}; satisfies D_n(y + a/y) = y^n + (a/y)^n."""
    if n < 0:
        raise DomainError("Dickson degree must be nonnegative")
    prev = FieldPolynomial((2,))
    if n == 0:
        return prev
    cur = FieldPolynomial((0, 1))
    for _ in range(n - 1):
        nxt_coeffs = [0] + list(cur.coeffs)
        prev_coeffs = list(prev.coeffs) + [0] * (len(nxt_coeffs) - len(prev.coeffs))
        cur, prev = (
            FieldPolynomial(tuple(x - a * y for x, y in zip(nxt_coeffs, prev_coeffs))),
            cur,
        )
    return cur


def dickson_values_batch(field: FiniteField, n_max: int, a: int = 1,
                         workers: int = 1) -> dict[int, np.ndarray]:
    """Encoded value arrays of D_n(., a) over the whole field for every
    n <= n_max, via the linear recurrence on batches; ``a`` is an encoded
    field element (plain small integers embed through the prime subfield)."""
    X = field.elements_array()
    npoints = field.q
    chunks = [(s, min(s + _CHUNK, npoints)) for s in range(0, npoints, _CHUNK)]
    out: dict[int, list] = {n: [] for n in range(n_max + 1)}

    def run(chunk):
        start, stop = chunk
        x = X[start:stop]
        npts = stop - start
        two = field.constant_batch(field.from_int(2), npts)
        aconst = None if a == 1 else field.constant_batch(a, npts)
        values = {0: two, 1: x}
        prev, cur = two, x
        for m in range(2, n_max + 1):
            a_prev = prev if aconst is None else field.mul_batch(aconst, prev)
            nxt = field.sub_batch(field.mul_batch(x, cur), a_prev)
            values[m] = nxt
            prev, cur = cur, nxt
        return {m: field.encode_batch(v) for m, v in values.items()}

    if workers > 1 and len(chunks) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    return {
        m: np.concatenate([part[m] for part in parts]) for m in range(n_max + 1)
    }


def dickson_exceptional(n: int, q: int) -> bool:
    """Monodromy-precise criterion: gcd(n, q^2 - 1) = 1 (n odd prime to p,
    q odd)."""
    p, _ = factor_prime_power(q)
    if n % 2 == 0 or n % p == 0 or q % 2 == 0:
        raise DomainError("criterion needs n odd, gcd(n, p) = 1, q odd")
    return gcd(n, q * q - 1) == 1


@dataclass(frozen=True)
class DicksonComponentTable:
    n: int
    q: int
    rational: tuple[int, ...]
    exceptional: bool


def dickson_component_fields(n: int, q: int) -> DicksonComponentTable:
    """Rationality of the paired-root components: U_j is F_q-rational iff
    q j = +-j mod n; exceptional iff no 1 <= j <= (n-1)/2 is rational
    (cross-checked against the gcd criterion by the caller's tests)."""
    p, _ = factor_prime_power(q)
    if n % 2 == 0 or n % p == 0 or q % 2 == 0:
        raise DomainError("criterion needs n odd, gcd(n, p) = 1, q odd")
    rational = tuple(
        j
        for j in range(1, (n - 1) // 2 + 1)
        if (q * j) % n in (j % n, (-j) % n)
    )
    return DicksonComponentTable(n, q, rational, exceptional=not rational)


# ---------------------------------------------------------------------------
# Davenport pairs over residue fields


@dataclass(frozen=True)
class DavenportReport:
    prime: int
    per_degree: tuple[tuple[int, bool, bool], ...]
    """(k, ranges_equal, multiplicities_equal) per extension degree."""

    @property
    def ranges_equal(self) -> bool:
        return all(r for _, r, _ in self.per_degree)

    @property
    def multiplicities_equal(self) -> bool:
        return all(m for _, _, m in self.per_degree)


def davenport_pair_check(f: FieldPolynomial, g: FieldPolynomial, q: int,
                         k_max: int, budget: int = DEFAULT_BUDGET,
                         workers: int = 1) -> DavenportReport:
    """Per extension degree: equal value sets (the Davenport property) and
    equal fiber histograms (the isovalent refinement)."""
    p, t = factor_prime_power(q)
    if f.leading % p == 0 or g.leading % p == 0:
        raise DomainError(f"bad reduction prime {p}: leading coefficient vanishes")
    total = 2 * sum(q ** k for k in range(1, k_max + 1))
    if total > budget:
        raise BudgetExceeded(f"census needs {total} points > budget {budget}")
    rows = []
    for k in range(1, k_max + 1):
        field = FiniteField(p, t * k)
        vf = _evaluate_all(field, f.coeffs, workers=workers)
        vg = _evaluate_all(field, g.coeffs, workers=workers)
        uf, cf = np.unique(vf, return_counts=True)
        ug, cg = np.unique(vg, return_counts=True)
        ranges = len(uf) == len(ug) and bool((uf == ug).all())
        mults = ranges and bool((cf == cg).all())
        rows.append((k, ranges, mults))
    return DavenportReport(p, tuple(rows))


def root_everywhere_locally(f: FieldPolynomial, prime_bound: int) -> list[int]:
    """Good primes up to the bound where f has NO root mod p."""
    if f.degree < 1:
        raise DomainError("need a nonconstant polynomial")
    good, _ = good_primes(f, prime_bound)
    out = []
    for p in good:
        if not any(f(x, mod=p) == 0 for x in range(p)):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# exponent support and Frobenius progressions


def exponent_support_gcd(f: FieldPolynomial) -> int:
    """gcd of the exponents with nonzero coefficients (constant excluded)."""
    if f.degree < 1:
        raise DomainError("need a nonconstant polynomial")
    support = [i for i, c in enumerate(f.coeffs) if c and i > 0]
    return gcd(*support) if len(support) > 1 else support[0]


def penultimate_normalize(f: FieldPolynomial) -> tuple[Fraction, ...]:
    """Coefficients of f(x - c_{m-1}/(m c_m)) over Q: penultimate
    coefficient zero."""
    m = f.degree
    if m < 1:
        raise DomainError("need a nonconstant polynomial")
    shift = Fraction(-f.coeffs[m - 1], m * f.coeffs[m])
    # expand f(x + shift)
    out = [Fraction(0)] * (m + 1)
    for i, c in enumerate(f.coeffs):
        # c * (x + shift)^i
        term = [Fraction(0)] * (i + 1)
        binom = 1
        for j in range(i + 1):
            term[j] = c * binom * shift ** (i - j)
            binom = binom * (i - j) // (j + 1)
        for j, v in enumerate(term):
            out[j] += v
    assert out[m - 1] == 0
    return tuple(out)


@dataclass(frozen=True)
class ProgressionFit:
    modulus: int
    residue_orbits: tuple[tuple[int, ...], ...]
    accidental: tuple[int, ...]
    exact: bool


def _unit_orbits(n: int) -> list[tuple[int, ...]]:
    units = [u for u in range(1, n + 1) if gcd(u, n) == 1]
    seen: set[int] = set()
    orbits = []
    for a in range(n):
        if a in seen:
            continue
        orb = sorted({(a * u) % n for u in units})
        seen.update(orb)
        orbits.append(tuple(orb))
    return orbits


def frobenius_progression_fit(support, k_max: int, candidates=None
                              ) -> ProgressionFit:
    """Smallest candidate modulus n for which the support is, minus a minimal
    accidental set, a union of full Frobenius progressions mod n (unions of
    residue classes closed under multiplication by units)."""
    support = {k for k in support if 1 <= k <= k_max}
    if candidates is None:
        candidates = range(1, k_max + 1)
    best: ProgressionFit | None = None
    for n in candidates:
        included = []
        accidental: set[int] = set()
        for orb in _unit_orbits(n):
            window = {k for k in range(1, k_max + 1) if k % n in orb}
            inside = window & support
            outside = window - support
            if len(inside) >= len(outside):
                included.append(orb)
                accidental |= outside
            else:
                accidental |= inside
        fit = ProgressionFit(
            n, tuple(included), tuple(sorted(accidental)), not accidental
        )
        if fit.exact:
            return fit
        if best is None or len(fit.accidental) < len(best.accidental):
            best = fit
    return best
