"""Finite groups, character tables and pre-metric groups.

A :class:`FiniteGroup` is a validated multiplication table with identity 0.
Character tables are computed exactly with the Burnside-Dixon method: the
class-multiplication matrices are diagonalised simultaneously modulo a prime
``p = 1 mod exponent``, and each character value is lifted back to
``Q(zeta_exponent)`` through its eigenvalue multiplicities.

A :class:`PreMetricGroup` is a finite abelian group ``Z/n1 + ... + Z/nr`` with a
quadratic form ``q`` valued in ``Q/Z``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .cyclotomic import Cyc, make_root

DEFAULT_GROUP_BOUND = 200


class GroupError(ValueError):
    """Invalid group input."""


class NotAssociativeError(GroupError):
    def __init__(self, witness: tuple[int, int, int]):
        a, b, c = witness
        super().__init__(f"table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.witness = witness


class NoIdentityError(GroupError):
    pass


class NoInverseError(GroupError):
    def __init__(self, element: int):
        super().__init__(f"element {element} has no inverse")
        self.element = element


class BoundExceededError(ValueError):
    """A configured size bound was exceeded."""


class FiniteGroup:
    """Group given by its multiplication table; element 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], *, validate: bool = True):
        self.table = [list(map(int, row)) for row in table]
        self.order = len(self.table)
        if validate:
            _validate_table(self.table)
        ident = 0
        self.inverse = [0] * self.order
        for a in range(self.order):
            row = self.table[a]
            for b in range(self.order):
                if row[b] == ident:
                    self.inverse[a] = b
                    break

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.table[self.table[h][g]][self.inverse[h]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        result = 0
        for _ in range(k):
            result = self.table[result][g]
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b),
                      (self.element_order(g) for g in range(self.order)), 1)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def to_json(self) -> dict:
        return {"kind": "table", "table": self.table}

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def _validate_table(table: list[list[int]]) -> None:
    n = len(table)
    if n == 0:
        raise GroupError("empty table")
    for row in table:
        if len(row) != n:
            raise GroupError("table is not square")
        if any(not 0 <= x < n for x in row):
            raise GroupError("table entry out of range")
    if any(table[0][a] != a or table[a][0] != a for a in range(n)):
        raise NoIdentityError("index 0 is not a two-sided unit")
    for a in range(n):
        if not any(table[a][b] == 0 and table[b][a] == 0 for b in range(n)):
            raise NoInverseError(a)
    arr = np.asarray(table, dtype=np.int64)
    left = arr[arr, :]  # left[a, b, c] = (a*b)*c
    right = arr[:, arr]  # right[a, b, c] = a*(b*c)
    bad = np.argwhere(left != right)
    if len(bad):
        raise NotAssociativeError(tuple(int(v) for v in bad[0]))


def group_from_table(table: Sequence[Sequence[int]]) -> FiniteGroup:
    return FiniteGroup(table)


# ---------------------------------------------------------------------------
# abelian groups in mixed radix

class AbelianCodec:
    """Mixed-radix enumeration of Z/n1 + ... + Z/nr (last coordinate fastest)."""

    def __init__(self, orders: Sequence[int]):
        self.orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in self.orders):
            raise GroupError(f"cyclic orders must be positive: {self.orders}")
        self.size = math.prod(self.orders)

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def index(self, x: Sequence[int]) -> int:
        i = 0
        for xi, n in zip(x, self.orders):
            i = i * n + (xi % n)
        return i

    def element(self, i: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.orders):
            i, r = divmod(i, n)
            out.append(r)
        return tuple(reversed(out))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % n for a, n in zip(x, self.orders))

    def scale(self, m: int, x) -> tuple[int, ...]:
        return tuple((m * a) % n for a, n in zip(x, self.orders))

    def generators(self) -> list[tuple[int, ...]]:
        """Standard generators e_i, reduced so a factor of order 1 gives zero."""
        r = len(self.orders)
        return [tuple(int(j == i) % n for j, n in enumerate(self.orders)) for i in range(r)]

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    @property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), self.orders, 1)

    def order_of(self, x) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b),
                      (n // math.gcd(a, n) for a, n in zip(x, self.orders)), 1)


def abelian_group(orders: Sequence[int]) -> tuple[FiniteGroup, AbelianCodec]:
    """Componentwise-addition group on Z/n1 + ... + Z/nr with its index codec."""
    codec = AbelianCodec(orders)
    elems = codec.elements()
    table = [[codec.index(codec.add(x, y)) for y in elems] for x in elems]
    return FiniteGroup(table, validate=False), codec


def cyclic_group(n: int) -> FiniteGroup:
    return abelian_group([n])[0]


def _perm_group(gens: list[tuple[int, ...]]) -> FiniteGroup:
    """Group generated by permutations, elements sorted with identity first."""
    ident = tuple(range(len(gens[0])))
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(p[i] for i in g)
                if q not in elems:
                    elems.add(q)
                    new.append(q)
        frontier = new
    ordered = sorted(elems)
    assert ordered[0] == ident
    index = {p: i for i, p in enumerate(ordered)}
    # composition (p*q)(i) = p(q(i))
    table = [[index[tuple(p[q[i]] for i in range(len(ident)))] for q in ordered] for p in ordered]
    return FiniteGroup(table)


def symmetric_group_3() -> FiniteGroup:
    return _perm_group([(1, 0, 2), (1, 2, 0)])


def dihedral_group_4() -> FiniteGroup:
    """Symmetries of the square, order 8."""
    return _perm_group([(1, 2, 3, 0), (0, 3, 2, 1)])


def quaternion_group() -> FiniteGroup:
    # Q8 acting on itself by left multiplication, via integer quaternion units
    units = [(1, 0, 0, 0), (-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0),
             (0, 0, 1, 0), (0, 0, -1, 0), (0, 0, 0, 1), (0, 0, 0, -1)]

    def qmul(x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    index = {u: i for i, u in enumerate(units)}
    return FiniteGroup([[index[qmul(x, y)] for y in units] for x in units])


BUILTIN_GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "S3": symmetric_group_3,
    "D4": dihedral_group_4,
    "Q8": quaternion_group,
    **{f"Z{n}": (lambda n=n: cyclic_group(n)) for n in range(1, 9)},
}


def builtin_group(name: str) -> FiniteGroup:
    try:
        return BUILTIN_GROUPS[name]()
    except KeyError:
        raise GroupError(f"unknown built-in group {name!r}; choose from {sorted(BUILTIN_GROUPS)}") from None


def group_from_json(obj: dict) -> FiniteGroup:
    kind = obj.get("kind")
    if kind == "abelian":
        return abelian_group(obj["orders"])[0]
    if kind == "table":
        return FiniteGroup(obj["table"])
    raise GroupError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# conjugacy structure

@dataclass(frozen=True)
class ConjugacyClasses:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @property
    def reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def __len__(self):
        return len(self.classes)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Classes sorted by (size, smallest member); representative = smallest member."""
    seen = [False] * G.order
    classes = []
    for g in range(G.order):
        if seen[g]:
            continue
        orbit = sorted({G.conj(h, g) for h in range(G.order)})
        for x in orbit:
            seen[x] = True
        classes.append(tuple(orbit))
    classes.sort(key=lambda c: (len(c), c[0]))
    class_of = [0] * G.order
    for i, c in enumerate(classes):
        for x in c:
            class_of[x] = i
    return ConjugacyClasses(tuple(classes), tuple(class_of))


@dataclass
class Subgroup:
    group: FiniteGroup
    elements: list[int]  # parent indices, sorted, elements[0] == 0

    def to_parent(self, i: int) -> int:
        return self.elements[i]

    @cached_property
    def from_parent(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.elements)}


def subgroup_from_elements(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    elems = sorted(set(elements))
    if not elems or elems[0] != 0:
        raise GroupError("subgroup must contain the identity")
    pos = {g: i for i, g in enumerate(elems)}
    table = [[pos[G.table[a][b]] for b in elems] for a in elems]
    return Subgroup(FiniteGroup(table, validate=False), elems)


def centralizer_subgroup(G: FiniteGroup, g: int) -> Subgroup:
    t = G.table
    return subgroup_from_elements(G, (h for h in range(G.order) if t[h][g] == t[g][h]))


# ---------------------------------------------------------------------------
# character tables

@dataclass
class CharacterTable:
    classes: ConjugacyClasses
    chars: list[list[Cyc]]
    conductor: int
    group_order: int

    @property
    def degrees(self) -> list[int]:
        return [int(row[0].to_fraction()) for row in self.chars]

    def value(self, char: int, element: int) -> Cyc:
        return self.chars[char][self.classes.class_of[element]]

    def to_json(self) -> dict:
        return {"classes": [list(c) for c in self.classes.classes],
                "chars": [[v.to_json() for v in row] for row in self.chars]}


@dataclass
class TableReport:
    ok: bool
    problems: list[str] = field(default_factory=list)


def check_character_table(G: FiniteGroup, ct: CharacterTable) -> TableReport:
    """Row and column orthogonality, exactly."""
    problems = []
    sizes = ct.classes.sizes
    inv_class = [ct.classes.class_of[G.inverse[r]] for r in ct.classes.reps]
    k = len(sizes)
    if len(ct.chars) != k:
        problems.append(f"{len(ct.chars)} characters for {k} classes")
    for i, a in enumerate(ct.chars):
        for j, b in enumerate(ct.chars):
            if j < i:
                continue
            s = sum((a[c] * b[inv_class[c]] * sizes[c] for c in range(k)), Cyc.zero())
            if s != (G.order if i == j else 0):
                problems.append(f"row orthogonality fails for characters {i}, {j}")
    if sum(d * d for d in ct.degrees) != G.order:
        problems.append("sum of squared degrees differs from |G|")
    for c1 in range(k):
        for c2 in range(c1, k):
            s = sum((row[c1] * row[inv_class[c2]] for row in ct.chars), Cyc.zero())
            expected = G.order // sizes[c1] if c1 == c2 else 0
            if s != expected:
                problems.append(f"column orthogonality fails for classes {c1}, {c2}")
    return TableReport(not problems, problems)


def character_table_from_json(G: FiniteGroup, obj: dict) -> CharacterTable:
    """Ingest an externally supplied table and validate it against G."""
    classes = conjugacy_classes(G)
    given = [tuple(sorted(c)) for c in obj["classes"]]
    if sorted(given) != sorted(classes.classes):
        raise GroupError("supplied classes do not match the conjugacy classes of the group")
    perm = [given.index(c) for c in classes.classes]
    chars = [[Cyc.from_json(row[p]) for p in perm] for row in obj["chars"]]
    ct = CharacterTable(classes, chars, G.exponent, G.order)
    report = check_character_table(G, ct)
    if not report.ok:
        raise GroupError("invalid character table: " + "; ".join(report.problems))
    return ct


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1


def _nullspace_mod(mat: list[list[int]], p: int) -> list[list[int]]:
    """Basis (as column vectors) of the right nullspace of mat over F_p."""
    rows = [list(r) for r in mat]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def _column_echelon(vectors: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Re-basis so that basis vector k has a 1 at pivot[k] and 0 at the other pivots."""
    vecs = [list(v) for v in vectors]
    pivots = []
    for k in range(len(vecs)):
        pos = next(i for i, x in enumerate(vecs[k]) if x % p)
        inv = pow(vecs[k][pos], -1, p)
        vecs[k] = [(x * inv) % p for x in vecs[k]]
        for j in range(len(vecs)):
            if j != k and vecs[j][pos]:
                f = vecs[j][pos]
                vecs[j] = [(x - f * y) % p for x, y in zip(vecs[j], vecs[k])]
        pivots.append(pos)
    return vecs, pivots


def _split_eigenspaces(mats: list[list[list[int]]], dim: int, p: int) -> list[list[int]]:
    spaces = [[[1 if i == k else 0 for i in range(dim)] for k in range(dim)]]
    for A in mats:
        if all(len(s) == 1 for s in spaces):
            break
        new_spaces = []
        for basis in spaces:
            m = len(basis)
            if m == 1:
                new_spaces.append(basis)
                continue
            basis, pivots = _column_echelon(basis, p)
            # X[a][b] = coordinate a of A * basis[b]
            images = [[sum(A[i][j] * v[j] for j in range(dim)) % p for i in range(dim)] for v in basis]
            X = [[images[b][pivots[a]] for b in range(m)] for a in range(m)]
            found = 0
            for lam in range(p):
                shifted = [[(X[a][b] - (lam if a == b else 0)) % p for b in range(m)] for a in range(m)]
                null = _nullspace_mod(shifted, p)
                if null:
                    found += len(null)
                    new_spaces.append([[sum(basis[b][i] * w[b] for b in range(m)) % p
                                        for i in range(dim)] for w in null])
                if found == m:
                    break
            if found != m:
                raise ArithmeticError(f"class matrix not diagonalisable modulo {p}")
        spaces = new_spaces
    if any(len(s) != 1 for s in spaces):
        raise ArithmeticError("simultaneous eigenspaces did not split completely")
    return [s[0] for s in spaces]


def character_table(G: FiniteGroup, bound: int = DEFAULT_GROUP_BOUND) -> CharacterTable:
    """Exact character table by the Burnside-Dixon method.

    Rows are sorted by degree (trivial character first), then by values.
    """
    if G.order > bound:
        raise BoundExceededError(f"group order {G.order} exceeds bound {bound}")
    cc = conjugacy_classes(G)
    if G.is_abelian():
        return _abelian_table(G, cc)
    k = len(cc)
    e = G.exponent
    t = G.table
    inv = G.inverse
    # a[i][j][l] = #{x in C_i : x^-1 z_l in C_j}
    coeff = [[[0] * k for _ in range(k)] for _ in range(k)]
    for l, z in enumerate(cc.reps):
        for x in range(G.order):
            coeff[cc.class_of[x]][cc.class_of[t[inv[x]][z]]][l] += 1
    sizes = cc.sizes
    inv_class = [cc.class_of[inv[r]] for r in cc.reps]
    power_class = [[cc.class_of[G.power(r, l)] for l in range(e)] for r in cc.reps]

    p = 2 * math.isqrt(G.order) + 1
    while True:
        p += 1
        if p % e != 1 or not _is_prime(p):
            continue
        try:
            chars = _dixon_at_prime(G, p, coeff, sizes, inv_class, power_class, e)
        except ArithmeticError:
            continue
        ct = CharacterTable(cc, chars, e, G.order)
        if check_character_table(G, ct).ok:
            return ct


def _dixon_at_prime(G, p, coeff, sizes, inv_class, power_class, e) -> list[list[Cyc]]:
    k = len(sizes)
    vectors = _split_eigenspaces(coeff, k, p)
    z = pow(_primitive_root(p), (p - 1) // e, p)
    e_inv = pow(e, -1, p)
    rows = []
    for v in vectors:
        scale = pow(v[0], -1, p)
        omega = [(x * scale) % p for x in v]
        s = sum(omega[c] * omega[inv_class[c]] * pow(sizes[c], -1, p) for c in range(k)) % p
        target = (G.order * pow(s, -1, p)) % p
        deg = next((d for d in range(1, math.isqrt(G.order) + 1) if (d * d - target) % p == 0), None)
        if deg is None:
            raise ArithmeticError("no degree found")
        chi_mod = [(omega[c] * deg * pow(sizes[c], -1, p)) % p for c in range(k)]
        row = []
        for c in range(k):
            mults = []
            for j in range(e):
                m = sum(chi_mod[power_class[c][l]] * pow(z, (-j * l) % e, p) for l in range(e)) * e_inv % p
                if m > deg:
                    raise ArithmeticError("multiplicity out of range")
                mults.append(m)
            if sum(mults) != deg:
                raise ArithmeticError("multiplicities do not sum to the degree")
            value = Cyc.zero(e)
            for j, m in enumerate(mults):
                if m:
                    value = value + make_root(e, j) * m
            row.append(value)
        rows.append(row)

    rows.sort(key=_row_key)
    return rows


def _row_key(row):
    trivial = all(v == 1 for v in row)
    return (int(row[0].to_fraction()), not trivial, [v.num + (v.den,) for v in row])


def _abelian_table(G: FiniteGroup, cc: ConjugacyClasses) -> CharacterTable:
    """Characters x -> prod zeta_{n_i}^{k_i c_i(x)} over a cyclic decomposition."""
    e = G.exponent
    orders, _, coords = decompose_abelian(list(range(G.order)), G.mul, 0)
    rows = []
    for k in itertools.product(*(range(n) for n in orders)):
        row = []
        for r in cc.reps:
            c = coords[r]
            row.append(make_root(e, sum(ki * ci * (e // n) for ki, ci, n in zip(k, c, orders))))
        rows.append(row)
    rows.sort(key=_row_key)
    return CharacterTable(cc, rows, e, G.order)


# ---------------------------------------------------------------------------
# pre-metric groups

def _frac_mod1(x) -> Fraction:
    f = Fraction(x)
    return f - math.floor(f)


class PreMetricGroup:
    """Finite abelian group with a quadratic form q: A -> Q/Z.

    ``q`` maps element tuples to rationals; missing elements default to 0 and
    every stored value is reduced into [0, 1).
    """

    def __init__(self, orders: Sequence[int], q: dict | Callable | None = None):
        self.codec = AbelianCodec(orders)
        self.orders = self.codec.orders
        elems = self.codec.elements()
        if q is None:
            values = {x: Fraction(0) for x in elems}
        elif callable(q):
            values = {x: _frac_mod1(q(x)) for x in elems}
        else:
            norm = {tuple(int(a) % n for a, n in zip(k, self.orders)): v for k, v in q.items()}
            values = {x: _frac_mod1(norm.get(x, 0)) for x in elems}
        self.values = values

    @property
    def size(self) -> int:
        return self.codec.size

    def elements(self) -> list[tuple[int, ...]]:
        return self.codec.elements()

    def q(self, x) -> Fraction:
        return self.values[tuple(a % n for a, n in zip(x, self.orders))]

    def b(self, x, y) -> Fraction:
        return _frac_mod1(self.q(self.codec.add(x, y)) - self.q(x) - self.q(y))

    def __eq__(self, other):
        return (isinstance(other, PreMetricGroup) and self.orders == other.orders
                and self.values == other.values)

    def __repr__(self):
        gens = []
        for i in range(len(self.orders)):
            x = tuple(1 if j == i else 0 for j in range(len(self.orders)))
            gens.append(str(self.q(x)))
        return f"PreMetricGroup(orders={self.orders}, q(gens)=[{', '.join(gens)}])"

    def to_json(self) -> dict:
        return {"group": {"kind": "abelian", "orders": list(self.orders)},
                "q": {_key(x): _fstr(v) for x, v in self.values.items()}}

    @classmethod
    def from_json(cls, obj: dict) -> "PreMetricGroup":
        group = obj["group"]
        if group.get("kind") != "abelian":
            raise GroupError("forms need an abelian group given by cyclic orders")
        q = {_parse_key(k): Fraction(v) for k, v in obj.get("q", {}).items()}
        return cls(group["orders"], q)


def _key(x) -> str:
    return "(" + ",".join(str(a) for a in x) + ")"


def _parse_key(s: str) -> tuple[int, ...]:
    body = s.strip().strip("()")
    return tuple(int(v) for v in body.split(",") if v.strip())


def _fstr(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def cyclic_form(n: int, a: int) -> PreMetricGroup:
    """q(x) = a x^2 / (2n); needs a*n even for q to be well defined."""
    if (a * n) % 2:
        raise GroupError(f"q(x) = {a}x^2/{2 * n} is not well defined on Z/{n}")
    return PreMetricGroup([n], lambda x: Fraction(a * x[0] * x[0], 2 * n))


def orthogonal_sum(m1: PreMetricGroup, m2: PreMetricGroup) -> PreMetricGroup:
    r = len(m1.orders)
    return PreMetricGroup(m1.orders + m2.orders, lambda x: m1.q(x[:r]) + m2.q(x[r:]))


def negate_form(m: PreMetricGroup) -> PreMetricGroup:
    return PreMetricGroup(m.orders, lambda x: -m.q(x))


def double_form(orders: Sequence[int]) -> PreMetricGroup:
    """Form of A x A^ with q((g, phi)) = phi(g), characters identified with A."""
    orders = tuple(orders)
    r = len(orders)

    def q(x):
        g, phi = x[:r], x[r:]
        return sum((Fraction(a * c, n) for a, c, n in zip(g, phi, orders)), Fraction(0))

    return PreMetricGroup(orders + orders, q)


@dataclass
class FormReport:
    ok: bool
    violations: list[tuple[str, tuple]]
    elements: list[tuple[int, ...]]
    # b(x_i, x_j) = matrix[i, j] / modulus; addition[i, j] is the index of x_i + x_j
    matrix: np.ndarray
    modulus: int
    addition: np.ndarray

    @cached_property
    def bicharacter(self) -> dict:
        L, B, el = self.modulus, self.matrix, self.elements
        return {(x, y): Fraction(int(B[i, j]), L) for i, x in enumerate(el) for j, y in enumerate(el)}

    def summary(self) -> str:
        if self.ok:
            return "valid quadratic form"
        return "; ".join(f"{kind} at {w}" for kind, w in self.violations)


def validate_form(M: PreMetricGroup) -> FormReport:
    """Check q(0)=0, q(-x)=q(x), q(mx)=m^2 q(x), and biadditivity of b.

    Arithmetic runs on the integers L q(x) mod L, with L the common denominator.
    """
    c = M.codec
    elems = M.elements()
    n = len(elems)
    L = reduce(lambda a, v: a * v.denominator // math.gcd(a, v.denominator), M.values.values(), 1)
    Q = np.array([int(M.values[x] * L) for x in elems], dtype=np.int64)
    coords = np.array(elems, dtype=np.int64).reshape(n, len(c.orders))
    orders = np.array(c.orders, dtype=np.int64)
    weights = np.array([math.prod(c.orders[i + 1:]) for i in range(len(c.orders))], dtype=np.int64)

    def index(arr):
        return ((arr % orders) * weights).sum(axis=-1)

    violations = []
    if Q[0] != 0:
        violations.append(("q(0) != 0", (c.zero,)))
    for i in np.flatnonzero(Q[index(-coords)] != Q):
        violations.append(("q(-x) != q(x)", (elems[i],)))
    first_bad: dict[int, int] = {}
    for m in range(2, 2 * c.exponent + 1):
        for i in np.flatnonzero(Q[index(m * coords)] != (m * m * Q) % L):
            first_bad.setdefault(int(i), m)
    for i in sorted(first_bad):
        violations.append(("q(mx) != m^2 q(x)", (elems[i], first_bad[i])))
    if n <= 1024:
        add = index(coords[:, None, :] + coords[None, :, :])
    else:  # row by row keeps memory at n^2 rather than n^2 * rank
        add = np.stack([index(coords[i] + coords) for i in range(n)])
    B = (Q[add] - Q[:, None] - Q[None, :]) % L
    for i, j in np.argwhere(B != B.T):
        violations.append(("b not symmetric", (elems[i], elems[j])))
    # additivity along each cyclic generator implies additivity in general
    for g in c.generators():
        gi = c.index(g)
        bad = B[index(coords + np.array(g, dtype=np.int64))] != (B + B[gi]) % L
        for i in np.flatnonzero(bad.any(axis=1)):
            violations.append(("b not biadditive", (elems[i], g, elems[int(np.argmax(bad[i]))])))
    return FormReport(not violations, violations, elems, B, L, add)


def radical(M: PreMetricGroup) -> list[tuple[int, ...]]:
    """{x : b(x, y) = 0 for all y}, in element order."""
    elems = M.elements()
    return [x for x in elems if all(M.b(x, y) == 0 for y in elems)]


def theta(value: Fraction) -> Cyc:
    """exp(2 pi i value) as a cyclotomic number."""
    f = _frac_mod1(value)
    return make_root(f.denominator, f.numerator)


def gauss_sum(M: PreMetricGroup, sign: int = 1) -> Cyc:
    """Direct summation of exp(+-2 pi i q(x)) over A."""
    total = Cyc.zero()
    for v in M.values.values():
        total = total + theta(sign * v)
    return total


def decompose_abelian(elements: list[Hashable], add: Callable, zero: Hashable
                      ) -> tuple[list[int], list[Hashable], dict]:
    """Cyclic decomposition of a finite abelian group given by its elements.

    Returns (orders, basis, coords) with every element equal to the unique
    combination sum c_i * basis_i, coords[x] = (c_1, ...).  Orders are prime
    powers, grouped by prime.
    """
    def mult(k, x):
        r = zero
        for _ in range(k):
            r = add(r, x)
        return r

    def order(x, sub: set) -> int:
        k, y = 1, x
        while y not in sub:
            y = add(y, x)
            k += 1
        return k

    n = len(elements)
    primes = sorted({p for p in range(2, n + 1) if n % p == 0 and _is_prime(p)})
    orders, basis = [], []
    for p in primes:
        sylow = [x for x in elements if _is_p_power(order(x, {zero}), p)]
        span = {zero}
        while len(span) < len(sylow):
            k, _, best = max((order(x, span), -i, x) for i, x in enumerate(sylow))
            # adjust to an element of exact order k, so <x> meets span trivially
            chosen = None
            for s in sorted(span, key=lambda v: str(v)):
                cand = add(best, s)
                if order(cand, {zero}) == k:
                    chosen = cand
                    break
            assert chosen is not None
            multiples = [mult(i, chosen) for i in range(k)]
            span = {add(s, m) for s in span for m in multiples}
            orders.append(k)
            basis.append(chosen)
    coords = {}
    for combo in itertools.product(*(range(k) for k in orders)):
        x = zero
        for c, g in zip(combo, basis):
            x = add(x, mult(c, g))
        coords[x] = combo
    assert len(coords) == n
    return orders, basis, coords


def _is_p_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1
