"""Exact arithmetic: polynomials, matrices, linear recurrences.

Everything here works over the integers or the rationals (``fractions.Fraction``)
and never touches floating point. Polynomials are dense, lowest degree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError, InsufficientDataError, ZeroPolynomialError

Number = Union[int, Fraction]

PRIMES_BELOW_100 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                    53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial with rational coefficients.

    ``Poly([c0, c1, c2])`` is ``c0 + c1 z + c2 z^2``. Trailing zeros are
    stripped, so the zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroPolynomialError("zero polynomial has no monic form")
        lead = self.leading
        return Poly(c / lead for c in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                f = c / lead
                quot[i - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= f * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return self.format("z")

    def format(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly([x])
    raise TypeError(f"cannot treat {x!r} as a polynomial")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_divides(a: Poly, b: Poly) -> bool:
    """True iff ``a`` divides ``b`` exactly over the rationals."""
    if a.is_zero():
        raise ZeroPolynomialError("cannot divide by the zero polynomial")
    return (b % a).is_zero()


def power_sums(p: Poly, kmax: int) -> list[Fraction]:
    """Power sums s_1..s_kmax of the roots of monic ``p`` via Newton's identities."""
    if not p.is_monic():
        raise ValueError("power_sums needs a monic polynomial")
    n = p.degree
    # e_i with p = z^n - e1 z^{n-1} + e2 z^{n-2} - ...
    e = [Fraction(1)] + [(-1) ** i * p[n - i] for i in range(1, n + 1)]
    s: list[Fraction] = [Fraction(n)]
    for k in range(1, kmax + 1):
        acc = Fraction(0)
        for i in range(1, min(k, n + 1)):
            acc += (-1) ** (i - 1) * e[i] * s[k - i]
        if k <= n:
            acc += (-1) ** (k - 1) * k * e[k]
        s.append(acc)
    return s[1:]


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Number, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("ragged or mis-sized matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "ExactMatrix":
        rows = [tuple(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("rows have different lengths")
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Number:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i][j]

    def column(self, j: int) -> list[Number]:
        return [r[j] for r in self.entries]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ())

    def is_integral(self) -> bool:
        return all(isinstance(x, int) or x.denominator == 1 for r in self.entries for x in r)


def _integer_rows(M: ExactMatrix) -> list[list[int]]:
    """Scale each row by its denominators' lcm; rank is unchanged."""
    out = []
    for row in M.entries:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank_exact(M: ExactMatrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    a = _integer_rows(M)
    nrows, ncols = M.rows, M.cols
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col + 1, ncols):
                row_r[c] = (p * row_r[c] - f * row_p[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
    return rank


def rank_mod_p(M: ExactMatrix, p: int) -> int:
    """Rank over GF(p). Used as an independent cross-check of ``rank_exact``."""
    a = [[int(x) % p for x in row] for row in _integer_rows(M)]
    rank = 0
    for col in range(M.cols):
        piv = next((r for r in range(rank, M.rows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        for r in range(M.rows):
            if r != rank and a[r][col]:
                f = a[r][col] * inv % p
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def char_poly(A: ExactMatrix) -> Poly:
    """det(zI - A) for an integer matrix, by Faddeev-LeVerrier over the integers.

    Every intermediate value is an integer: the division by k in each step is
    exact. Sparse rows of A are exploited since callers pass adjacency matrices.
    """
    if A.rows != A.cols:
        raise DimensionError(f"char_poly needs a square matrix, got {A.rows}x{A.cols}")
    if not A.is_integral():
        raise ValueError("char_poly expects integer entries")
    n = A.rows
    rows = [[(j, int(x)) for j, x in enumerate(r) if x] for r in A.entries]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]  # M_0 = 0
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        c_prev = coeffs[n - k + 1]
        newM = []
        for i in range(n):
            acc = [0] * n
            for j, aij in rows[i]:
                Mj = M[j]
                for c in range(n):
                    if Mj[c]:
                        acc[c] += aij * Mj[c]
            acc[i] += c_prev
            newM.append(acc)
        M = newM
        # c_{n-k} = -tr(A M_k) / k
        tr = 0
        for i in range(n):
            for j, aij in rows[i]:
                tr += aij * M[j][i]
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = -tr // k
    return Poly(coeffs)


def adjacency_char_poly(A: Sequence[Sequence[int]]) -> Poly:
    return char_poly(ExactMatrix.from_rows(A))


def solve_exact(rows: Sequence[Sequence[Number]], rhs: Sequence[Number]):
    """Solve ``rows @ x = rhs`` over Q.

    Returns one solution (free variables set to zero) or ``None`` if the
    system is inconsistent.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    a = [[_frac(x) for x in r] + [_frac(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = a[i][ncols]
    return x


# ---------------------------------------------------------------------------
# Linear recurrences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecurrenceSpec:
    """y_t = c_1 y_{t-1} + ... + c_r y_{t-r}."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order:
            raise ValueError("coefficient count must equal the order")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number]) -> "RecurrenceSpec":
        cs = tuple(_frac(c) for c in coeffs)
        return cls(len(cs), cs)

    @classmethod
    def from_charpoly(cls, chi: Poly) -> "RecurrenceSpec":
        chi = chi.monic()
        r = chi.degree
        return cls(r, tuple(-chi[r - i] for i in range(1, r + 1)))

    @property
    def charpoly(self) -> Poly:
        # z^r - c_1 z^{r-1} - ... - c_r
        r = self.order
        return Poly([-self.coeffs[r - 1 - i] for i in range(r)] + [1])


class _NotDetermined:
    """Sentinel: no recurrence of the allowed order fits the prefix."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotDetermined"

    def __bool__(self):
        return False


NotDetermined = _NotDetermined()


def hankel_matrix(seq: Sequence[Number], size: int, cols: int | None = None) -> ExactMatrix:
    cols = size if cols is None else cols
    if size + cols - 1 > len(seq):
        raise InsufficientDataError(
            f"{size}x{cols} Hankel matrix needs {size + cols - 1} terms, have {len(seq)}")
    return ExactMatrix.from_rows([[seq[i + j] for j in range(cols)] for i in range(size)])


def min_recurrence(prefix: Sequence[Number], max_order: int):
    """Minimal-order linear recurrence satisfied by ``prefix``.

    Tries orders 0, 1, ..., ``max_order`` and solves the overdetermined
    Hankel system for each. Returns a :class:`RecurrenceSpec`, or
    ``NotDetermined`` if nothing of order <= max_order fits. The prefix must
    hold at least ``2 * max_order`` terms, which is what makes the answer
    unique whenever the true order is at most ``max_order``.
    """
    if max_order < 0:
        raise ValueError("max_order must be non-negative")
    L = len(prefix)
    if L < 2 * max_order:
        raise InsufficientDataError(
            f"need at least {2 * max_order} terms to decide order <= {max_order}, got {L}")
    y = [_frac(v) for v in prefix]
    if all(v == 0 for v in y):
        return RecurrenceSpec(0, ())
    for r in range(1, max_order + 1):
        rows = [[y[t - i] for i in range(1, r + 1)] for t in range(r, L)]
        rhs = [y[t] for t in range(r, L)]
        if not rows:
            return RecurrenceSpec(r, (Fraction(0),) * r)
        sol = solve_exact(rows, rhs)
        if sol is not None:
            return RecurrenceSpec(r, tuple(sol))
    return NotDetermined


def extend_recurrence(spec: RecurrenceSpec, seed: Sequence[Number], upto: int) -> list:
    """Terms 0..upto of the sequence that starts with ``seed`` and obeys ``spec``."""
    r = spec.order
    if len(seed) < r:
        raise InsufficientDataError(f"seed has {len(seed)} terms, recurrence order is {r}")
    out = list(seed[: upto + 1])
    integral = all(c.denominator == 1 for c in spec.coeffs)
    cs = [int(c) for c in spec.coeffs] if integral else list(spec.coeffs)
    while len(out) <= upto:
        t = len(out)
        out.append(sum(cs[i - 1] * out[t - i] for i in range(1, r + 1)) if r else 0)
    return out


# ---------------------------------------------------------------------------
# Irreducibility certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Irreducible:
    prime: int


@dataclass(frozen=True)
class Reducible:
    factor: Poly


@dataclass(frozen=True)
class Inconclusive:
    primes_tried: tuple[int, ...]


IrreducibilityCertificate = Union[Irreducible, Reducible, Inconclusive]

_DIVISOR_SCAN_LIMIT = 10 ** 7


def _integer_roots(coeffs: list[int]) -> list[int]:
    c0 = coeffs[0]
    if c0 == 0:
        return [0]
    a = abs(c0)
    lim = math.isqrt(a)
    if lim > _DIVISOR_SCAN_LIMIT:
        return []
    cands = set()
    for d in range(1, lim + 1):
        if a % d == 0:
            cands.update((d, a // d))
    p = Poly(coeffs)
    return sorted(r for c in cands for r in (c, -c) if p(r) == 0)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], q: int) -> list[int]:
    a = [x % q for x in a]
    _trim(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, q)
    while len(a) - 1 >= dm:
        f = a[-1] * inv % q
        shift = len(a) - 1 - dm
        for j, b in enumerate(m):
            a[shift + j] = (a[shift + j] - f * b) % q
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, q)


def _ppowmod(a: list[int], e: int, m: list[int], q: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, q)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, q)
        base = _pmulmod(base, base, m, q)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], q: int) -> list[int]:
    a = _trim([x % q for x in a])
    b = _trim([x % q for x in b])
    while b:
        a, b = b, _pmod(a, b, q)
    return a


def irreducible_mod_p(coeffs: Sequence[int], q: int) -> bool:
    """Ben-Or test: monic f of degree d is irreducible over GF(q) iff
    gcd(x^(q^i) - x, f) = 1 for every 1 <= i <= d/2."""
    f = _trim([c % q for c in coeffs])
    d = len(f) - 1
    if d < 1 or len(f) != len(coeffs):
        return False
    h = [0, 1]
    for _ in range(d // 2):
        h = _ppowmod(h, q, f, q)
        g = list(h) + [0] * max(0, 2 - len(h))
        g[1] = (g[1] - 1) % q
        if len(_pgcd(f, _trim(g), q)) > 1:
            return False
    return True


def irreducibility_certificate(p: Poly, primes: Sequence[int] = PRIMES_BELOW_100):
    """One-sided irreducibility certificate for a monic integer polynomial.

    ``Reducible`` carries an exact rational linear factor; ``Irreducible``
    names a prime modulo which ``p`` is irreducible (which implies
    irreducibility over Q for monic ``p``). ``Inconclusive`` otherwise.
    """
    if not p.is_monic() or not p.is_integral() or p.degree < 1:
        raise ValueError("expected a monic integer polynomial of degree >= 1")
    coeffs = p.int_coeffs()
    if p.degree == 1:
        return Irreducible(primes[0] if primes else 2)
    roots = _integer_roots(coeffs)
    if roots:
        return Reducible(Poly([-roots[0], 1]))
    for q in primes:
        if irreducible_mod_p(coeffs, q):
            return Irreducible(q)
    return Inconclusive(tuple(primes))
