"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis ``1, z, ..., z^(phi(n)-1)`` of
``Q(zeta_n)`` modulo the cyclotomic polynomial, as integer numerators over
one positive common denominator.  Mixed-conductor arithmetic lifts both
operands to the lcm of the conductors; nothing is compressed automatically
(see :meth:`Cyc.compress`).

:class:`CycMatrix` is a dense matrix over a single ``Q(zeta_n)`` backed by
numpy integer tensors.  It is used wherever whole matrix products are needed
(modular relations, SL(2,Z) words, Verlinde sums).
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Cyc",
    "CycMatrix",
    "make_root",
    "lift",
    "conj",
    "approx",
    "euler_phi",
    "cyclotomic_poly",
    "as_cyc",
    "root_of_unity_exponent",
]


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


class _Field:
    """Per-conductor tables: reduction of every power of zeta_n."""

    def __init__(self, n: int):
        self.n = n
        phi = euler_phi(n)
        self.phi = phi
        poly = cyclotomic_poly(n)
        # dense[e] = coordinates of zeta^e, e in [0, n)
        dense = []
        vec = [0] * phi
        vec[0] = 1
        for _ in range(n):
            dense.append(tuple(vec))
            # multiply by zeta: shift, then reduce x^phi
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for t in range(phi):
                    vec[t] -= top * poly[t]
        self.dense = dense
        self.sparse = [tuple((t, c) for t, c in enumerate(v) if c) for v in dense]
        # reduction of x^phi .. x^(2phi-2) for products of reduced vectors
        self.high = np.array(
            [dense[e % n] for e in range(phi, 2 * phi - 1)], dtype=np.int64
        ).reshape(max(phi - 1, 0), phi)
        self.high_norm = int(np.abs(self.high).sum()) if phi > 1 else 0
        self._galois: dict[int, np.ndarray] = {}

    def galois_matrix(self, k: int) -> np.ndarray:
        """Integer matrix of zeta -> zeta^k acting on coordinate rows."""
        k %= self.n
        mat = self._galois.get(k)
        if mat is None:
            mat = np.array([self.dense[(t * k) % self.n] for t in range(self.phi)], dtype=np.int64)
            self._galois[k] = mat
        return mat


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    return _Field(n)


@lru_cache(maxsize=None)
def _lift_matrix(n: int, m: int) -> np.ndarray:
    fm = _field(m)
    step = m // n
    return np.array([fm.dense[t * step] for t in range(_field(n).phi)], dtype=np.int64)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = math.gcd(den, *num)
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class Cyc:
    """An element of Q(zeta_n), immutable.

    ``Cyc(n, coeffs)`` takes ``phi(n)`` rational coordinates in the power basis.
    """

    __slots__ = ("n", "num", "den", "_hash")

    def __init__(self, n: int, coeffs: Iterable = (), *, _raw=None):
        if _raw is not None:
            self.n = n
            self.num, self.den = _raw
            self._hash = None
            return
        phi = _field(n).phi
        fr = [Fraction(c) for c in coeffs]
        if not fr:
            fr = [Fraction(0)] * phi
        if len(fr) != phi:
            raise ValueError(f"expected {phi} coefficients for conductor {n}, got {len(fr)}")
        den = reduce(_lcm, (f.denominator for f in fr), 1)
        self.n = n
        self.num, self.den = _normalize([int(f * den) for f in fr], den)
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def _of(cls, n: int, num: Sequence[int], den: int = 1) -> "Cyc":
        return cls(n, _raw=_normalize(list(num), den))

    @classmethod
    def rational(cls, value) -> "Cyc":
        f = Fraction(value)
        return cls(1, _raw=((f.numerator,), f.denominator))

    @classmethod
    def zero(cls, n: int = 1) -> "Cyc":
        return cls(n, _raw=((0,) * _field(n).phi, 1))

    @classmethod
    def one(cls, n: int = 1) -> "Cyc":
        return make_root(n, 0)

    # basic queries --------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:]) if self.n > 1 else True

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def lift(self, m: int) -> "Cyc":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        f = _field(m)
        step = m // self.n
        out = [0] * f.phi
        for t, c in enumerate(self.num):
            if c:
                for s, v in f.sparse[t * step]:
                    out[s] += c * v
        return Cyc(m, _raw=(tuple(out), self.den))

    def galois(self, k: int) -> "Cyc":
        """Apply the automorphism zeta_n -> zeta_n^k (k coprime to n)."""
        n = self.n
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        f = _field(n)
        out = [0] * f.phi
        for t, c in enumerate(self.num):
            if c:
                for s, v in f.sparse[(t * k) % n]:
                    out[s] += c * v
        return Cyc(n, _raw=(tuple(out), self.den))

    def conj(self) -> "Cyc":
        return self.galois(self.n - 1) if self.n > 2 else self

    def approx(self) -> complex:
        n = self.n
        re = math.fsum(c * math.cos(2 * math.pi * t / n) for t, c in enumerate(self.num) if c)
        im = math.fsum(c * math.sin(2 * math.pi * t / n) for t, c in enumerate(self.num) if c)
        return complex(re / self.den, im / self.den)

    def compress(self) -> "Cyc":
        """Same value at the smallest conductor containing it."""
        if self.is_rational():
            return Cyc(1, _raw=((self.num[0],), self.den))
        for d in _divisors(self.n):
            if d == self.n:
                return self
            if d % 4 == 2:
                continue
            sol = _solve_lift(self, d)
            if sol is not None:
                return sol
        return self

    def norm(self) -> Fraction:
        """Field norm from Q(zeta_n) down to Q."""
        prod = self
        for k in range(2, self.n):
            if math.gcd(k, self.n) == 1:
                prod = prod * self.galois(k)
        return prod.to_fraction()

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            f = self.to_fraction()
            return Cyc(self.n, _raw=_normalize([f.denominator] + [0] * (len(self.num) - 1), f.numerator))
        others = None
        for k in range(2, self.n):
            if math.gcd(k, self.n) == 1:
                g = self.galois(k)
                others = g if others is None else others * g
        nrm = (self * others).to_fraction()
        return others / nrm

    def trace_key(self) -> Fraction:
        # average of the Galois conjugates: conductor-independent
        n = self.n
        total = Fraction(0)
        for t, c in enumerate(self.num):
            if c:
                m = n // math.gcd(t, n)
                total += Fraction(c * _mobius(m), euler_phi(m))
        return total / self.den

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "Cyc | None":
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(other)
        return None

    def _align(self, other: "Cyc") -> tuple["Cyc", "Cyc"]:
        if self.n == other.n:
            return self, other
        m = _lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        if a.den == b.den:
            return Cyc._of(a.n, [x + y for x, y in zip(a.num, b.num)], a.den)
        return Cyc._of(a.n, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, _raw=(tuple(-c for c in self.num), self.den))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyc._of(self.n, [c * f.numerator for c in self.num], self.den * f.denominator)
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._align(other)
        if b.is_rational():
            return Cyc._of(a.n, [c * b.num[0] for c in a.num], a.den * b.den)
        if a.is_rational():
            return Cyc._of(a.n, [c * a.num[0] for c in b.num], a.den * b.den)
        f = _field(a.n)
        phi, n = f.phi, f.n
        conv = [0] * (2 * phi - 1)
        bn = b.num
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        out = conv[:phi]
        for e in range(phi, 2 * phi - 1):
            c = conv[e]
            if c:
                for s, v in f.sparse[e % n]:
                    out[s] += c * v
        return Cyc._of(n, out, a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyc.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._align(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.trace_key())
        return self._hash

    def __repr__(self):
        return f"Cyc({self.n}, {self.format()})"

    def format(self) -> str:
        terms = []
        for t, c in enumerate(self.coeffs):
            if not c:
                continue
            if t == 0:
                terms.append(str(c))
            else:
                z = "z" if t == 1 else f"z^{t}"
                terms.append(z if c == 1 else ("-" + z if c == -1 else f"{c}*{z}"))
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return body if self.n <= 2 else f"{body} [z=zeta_{self.n}]"

    # JSON -------------------------------------------------------------
    def to_json(self) -> dict:
        c = self.compress()
        return {"n": c.n, "c": [_frac_str(x) for x in c.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Cyc":
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        return cls(int(obj["n"]), [Fraction(x) for x in obj["c"]])


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@lru_cache(maxsize=None)
def _mobius(m: int) -> int:
    result, p = 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def _solve_lift(a: Cyc, d: int) -> Cyc | None:
    """Find x at conductor d with lift(x, a.n) == a, or None."""
    L = _lift_matrix(d, a.n)  # phi(d) x phi(n)
    rows = [[Fraction(int(L[t, s])) for t in range(L.shape[0])] + [Fraction(a.num[s])]
            for s in range(L.shape[1])]
    ncols = L.shape[0]
    piv_cols = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        x[col] = rows[i][-1]
    return Cyc(d, [v / a.den for v in x])


def as_cyc(x) -> Cyc:
    if isinstance(x, Cyc):
        return x
    return Cyc.rational(x)


def make_root(n: int, k: int) -> Cyc:
    """zeta_n ** k."""
    f = _field(n)
    return Cyc(n, _raw=(f.dense[k % n], 1))


def lift(a: Cyc, m: int) -> Cyc:
    return a.lift(m)


def conj(a: Cyc) -> Cyc:
    return a.conj()


def approx(a: Cyc) -> complex:
    return a.approx()


def root_of_unity_exponent(a: Cyc) -> tuple[int, int] | None:
    """Return ``(m, k)`` with ``a == zeta_m^k`` and m = lcm(2, conductor), else None."""
    m = _lcm(2, a.n)
    z = a.approx()
    if abs(abs(z) - 1) > 1e-6:
        return None
    k = round(cmath.phase(z) * m / (2 * math.pi)) % m
    if make_root(m, k) == a:
        return m, k
    return None


# ---------------------------------------------------------------------------
# dense matrices over a single cyclotomic field

_INT64_LIMIT = 2**62
_FLOAT_EXACT = 2**52


def _absmax(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.flat)
    return int(np.abs(arr).max())


def _shrink(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object and _absmax(arr) < _INT64_LIMIT:
        return arr.astype(np.int64)
    return arr


class CycMatrix:
    """Dense matrix over Q(zeta_n): integer tensor ``num[i, j, t]`` over ``den``."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num: np.ndarray, den: int = 1):
        self.n = n
        if den < 0:
            num, den = -num, -den
        self.num, self.den = num, den
        self._reduce()

    def _reduce(self):
        if self.den == 1 or self.num.size == 0:
            if self.num.size == 0:
                self.den = 1
            return
        if self.num.dtype == object:
            g = math.gcd(self.den, *(int(v) for v in self.num.flat))
        else:
            g = math.gcd(self.den, int(np.gcd.reduce(self.num.ravel())))
        if g > 1:
            self.num = self.num // g
            self.den //= g

    @property
    def shape(self) -> tuple[int, int]:
        return self.num.shape[0], self.num.shape[1]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], n: int | None = None) -> "CycMatrix":
        entries = [[as_cyc(x) for x in row] for row in rows]
        r = len(entries)
        c = len(entries[0]) if r else 0
        if n is None:
            n = reduce(_lcm, (x.n for row in entries for x in row), 1)
        phi = _field(n).phi
        den = reduce(_lcm, (x.den for row in entries for x in row), 1)
        big = False
        data = [[[0] * phi for _ in range(c)] for _ in range(r)]
        lifted: dict[tuple, list[int]] = {}  # entries repeat a lot in practice
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                key = (x.n, x.num, x.den)
                vec = lifted.get(key)
                if vec is None:
                    y = x.lift(n)
                    scale = den // y.den
                    vec = lifted[key] = [v * scale for v in y.num]
                    if any(abs(v) >= _INT64_LIMIT for v in vec):
                        big = True
                data[i][j] = vec
        if big:
            num = np.empty((r, c, phi), dtype=object)
            for i in range(r):
                for j in range(c):
                    for t in range(phi):
                        num[i, j, t] = data[i][j][t]
        else:
            num = np.array(data, dtype=np.int64).reshape(r, c, phi)
        return cls(n, num, den)

    @classmethod
    def identity(cls, size: int, n: int = 1) -> "CycMatrix":
        num = np.zeros((size, size, _field(n).phi), dtype=np.int64)
        for i in range(size):
            num[i, i, 0] = 1
        return cls(n, num)

    @classmethod
    def diagonal(cls, entries: Sequence, n: int | None = None) -> "CycMatrix":
        size = len(entries)
        rows = [[entries[i] if i == j else 0 for j in range(size)] for i in range(size)]
        return cls.from_rows(rows, n)

    @classmethod
    def permutation(cls, perm: Sequence[int], n: int = 1) -> "CycMatrix":
        """Matrix with ones at (i, perm[i])."""
        size = len(perm)
        num = np.zeros((size, size, _field(n).phi), dtype=np.int64)
        for i, j in enumerate(perm):
            num[i, j, 0] = 1
        return cls(n, num)

    def entry(self, i: int, j: int) -> Cyc:
        return Cyc._of(self.n, [int(v) for v in self.num[i, j]], self.den)

    def to_rows(self) -> list[list[Cyc]]:
        r, c = self.shape
        return [[self.entry(i, j) for j in range(c)] for i in range(r)]

    def lift(self, m: int) -> "CycMatrix":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        L = _lift_matrix(self.n, m)
        if self.num.dtype == object:
            L = L.astype(object)
        return CycMatrix(m, np.tensordot(self.num, L, axes=([2], [0])), self.den)

    def _align(self, other: "CycMatrix") -> tuple["CycMatrix", "CycMatrix"]:
        if self.n == other.n:
            return self, other
        m = _lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        g = math.gcd(a.den, b.den)
        fa, fb = b.den // g, a.den // g
        if (_absmax(a.num) * fa + _absmax(b.num) * fb) < _INT64_LIMIT:
            num = a.num.astype(np.int64) * fa + b.num.astype(np.int64) * fb
        else:
            num = _promote(a.num) * fa + _promote(b.num) * fb
        return CycMatrix(a.n, _shrink(num), a.den * fa)

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.n, -self.num, self.den)

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return self + (-other)

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        f = _field(a.n)
        phi = f.phi
        inner = a.shape[1]
        if inner != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        r, c = a.shape[0], b.shape[1]
        amax, bmax = _absmax(a.num), _absmax(b.num)
        bound = amax * bmax * inner * phi * (1 + f.high_norm)
        if bound < _INT64_LIMIT:
            # one product over all coefficient pairs; float64 is exact below 2^53
            A2 = a.num.transpose(0, 2, 1).reshape(r * phi, inner)
            B2 = b.num.reshape(inner, c * phi)
            if amax * bmax * inner < _FLOAT_EXACT:
                P = np.rint(A2.astype(np.float64) @ B2.astype(np.float64)).astype(np.int64)
            else:
                P = A2.astype(np.int64) @ B2.astype(np.int64)
            P = P.reshape(r, phi, c, phi)
            full = np.zeros((r, c, 2 * phi - 1), dtype=np.int64)
            for t in range(phi):
                full[:, :, t:t + phi] += P[:, t, :, :]
            H = f.high
        else:
            A, B, H = a.num.astype(object), b.num.astype(object), f.high.astype(object)
            full = np.zeros((r, c, 2 * phi - 1), dtype=object)
            for t in range(phi):
                At = A[:, :, t]
                if At.any():
                    full[:, :, t:t + phi] += np.tensordot(At, B, axes=([1], [0]))
        out = full[:, :, :phi]
        if phi > 1:
            out = out + np.tensordot(full[:, :, phi:], H, axes=([2], [0]))
        return CycMatrix(a.n, _shrink(out), a.den * b.den)

    def scale(self, c) -> "CycMatrix":
        c = as_cyc(c)
        m = _lcm(self.n, c.n)
        a = self.lift(m)
        c = c.lift(m)
        f = _field(m)
        # row t: coordinates of zeta^t * c
        rows = [(make_root(m, t) * c).lift(m) for t in range(f.phi)]
        cden = reduce(_lcm, (x.den for x in rows), 1)
        mat = [[v * (cden // x.den) for v in x.num] for x in rows]
        mmax = max((abs(v) for row in mat for v in row), default=0)
        if _absmax(a.num) * mmax * f.phi < _INT64_LIMIT:
            num = a.num.astype(np.int64) @ np.array(mat, dtype=np.int64)
        else:
            num = _promote(a.num) @ np.array(mat, dtype=object)
        return CycMatrix(m, _shrink(num), a.den * cden)

    def scale_columns(self, factors: Sequence) -> "CycMatrix":
        D = CycMatrix.diagonal(list(factors))
        return self @ D

    def conj(self) -> "CycMatrix":
        if self.n <= 2:
            return self
        G = _field(self.n).galois_matrix(self.n - 1).astype(self.num.dtype)
        num = np.tensordot(self.num, G, axes=([2], [0]))
        return CycMatrix(self.n, _shrink(num), self.den)

    def transpose(self) -> "CycMatrix":
        return CycMatrix(self.n, self.num.transpose(1, 0, 2).copy(), self.den)

    @property
    def T(self) -> "CycMatrix":
        return self.transpose()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._align(other)
        return a.den == b.den and bool(np.all(_promote(a.num) == _promote(b.num)))

    __hash__ = None

    def is_zero(self) -> bool:
        return not bool(np.any(self.num))

    def scalar_value(self) -> Cyc | None:
        """The scalar c if the matrix equals c * identity, else None."""
        r, c = self.shape
        if r != c:
            return None
        diag0 = self.num[0, 0]
        for i in range(r):
            for j in range(c):
                v = self.num[i, j]
                if i == j:
                    if not np.array_equal(v, diag0):
                        return None
                elif np.any(v):
                    return None
        return self.entry(0, 0) if r else Cyc.one()

    def first_nonzero(self) -> tuple[int, int] | None:
        nz = np.argwhere(np.any(self.num != 0, axis=2))
        return (int(nz[0][0]), int(nz[0][1])) if len(nz) else None

    def __repr__(self):
        return f"CycMatrix(n={self.n}, shape={self.shape}, den={self.den})"


def _promote(arr: np.ndarray) -> np.ndarray:
    return arr.astype(object) if arr.dtype != object else arr
