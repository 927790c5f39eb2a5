"""Fusion rings (finite hypergroups): validation, FP dimensions, grading, subrings."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .groups import BoundExceededError

DEFAULT_MAX_RANK = int(os.environ.get("MODCAT_MAX_RANK", "24"))


class FusionRingError(ValueError):
    pass


class FusionRing:
    """Index set 0..rank-1 with unit 0, duality ``dual`` and coefficients N[i][j] = {k: n}."""

    def __init__(self, rank: int, dual: Sequence[int], N: dict[tuple[int, int, int], int]):
        self.rank = rank
        self.dual = list(dual)
        self.products: list[list[dict[int, int]]] = [[{} for _ in range(rank)] for _ in range(rank)]
        for (i, j, k), n in N.items():
            if n < 0:
                raise FusionRingError(f"negative coefficient N[{i},{j}]^{k} = {n}")
            if n:
                self.products[i][j][k] = int(n)

    def N(self, i: int, j: int, k: int) -> int:
        return self.products[i][j].get(k, 0)

    def fuse(self, i: int, j: int) -> dict[int, int]:
        return self.products[i][j]

    def triples(self) -> Iterable[tuple[int, int, int, int]]:
        for i in range(self.rank):
            for j in range(self.rank):
                for k, n in sorted(self.products[i][j].items()):
                    yield i, j, k, n

    @cached_property
    def is_commutative(self) -> bool:
        return all(self.products[i][j] == self.products[j][i]
                   for i in range(self.rank) for j in range(i))

    def fusion_matrix(self, i: int) -> np.ndarray:
        """(N_i)_{jk} = N_{ij}^k."""
        m = np.zeros((self.rank, self.rank))
        for j in range(self.rank):
            for k, n in self.products[i][j].items():
                m[j, k] = n
        return m

    def to_json(self) -> dict:
        return {"rank": self.rank, "dual": list(self.dual),
                "N": [[i, j, k, n] for i, j, k, n in self.triples()]}

    @classmethod
    def from_json(cls, obj: dict) -> "FusionRing":
        N = {(int(i), int(j), int(k)): int(n) for i, j, k, n in obj["N"]}
        return cls(int(obj["rank"]), [int(d) for d in obj["dual"]], N)

    def restrict(self, members: Sequence[int]) -> "FusionRing":
        members = list(members)
        pos = {m: a for a, m in enumerate(members)}
        N = {}
        for a, i in enumerate(members):
            for b, j in enumerate(members):
                for k, n in self.products[i][j].items():
                    if k not in pos:
                        raise FusionRingError(f"{members} is not closed under fusion")
                    N[(a, b, pos[k])] = n
        return FusionRing(len(members), [pos[self.dual[i]] for i in members], N)

    def __eq__(self, other):
        return (isinstance(other, FusionRing) and self.rank == other.rank
                and self.dual == other.dual and self.products == other.products)

    def __repr__(self):
        return f"FusionRing(rank={self.rank})"


def group_ring(table: Sequence[Sequence[int]], inverse: Sequence[int]) -> FusionRing:
    n = len(table)
    return FusionRing(n, inverse, {(i, j, table[i][j]): 1 for i in range(n) for j in range(n)})


@dataclass
class FusionReport:
    ok: bool
    commutative: bool
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    def summary(self) -> str:
        if self.ok:
            return f"valid fusion ring ({'commutative' if self.commutative else 'non-commutative'})"
        return "; ".join(f"{k} at {w}" for k, w in self.violations)


def validate_fusion_ring(R: FusionRing) -> FusionReport:
    """Unit, duality, associativity and involution axioms, with witnesses."""
    r = R.rank
    v = []
    if len(R.dual) != r or any(not 0 <= d < r for d in R.dual):
        v.append(("dual is not a map on indices", ()))
        return FusionReport(False, R.is_commutative, v)
    if R.dual[0] != 0:
        v.append(("dual of unit is not the unit", (0,)))
    for i in range(r):
        if R.dual[R.dual[i]] != i:
            v.append(("dual is not an involution", (i,)))
    for i in range(r):
        if R.fuse(i, 0) != {i: 1}:
            v.append(("N_{i0}^j != delta_ij", (i,)))
        if R.fuse(0, i) != {i: 1}:
            v.append(("N_{0i}^j != delta_ij", (i,)))
    for i in range(r):
        for j in range(r):
            expected = 1 if j == R.dual[i] else 0
            if R.N(i, j, 0) != expected:
                v.append(("N_{ij}^0 != delta_{i,dual j}", (i, j)))
    for i in range(r):
        for j in range(r):
            ij = R.fuse(i, j)
            for k in range(r):
                left: dict[int, int] = {}
                for m, a in ij.items():
                    for l, b in R.fuse(m, k).items():
                        left[l] = left.get(l, 0) + a * b
                right: dict[int, int] = {}
                for m, a in R.fuse(j, k).items():
                    for l, b in R.fuse(i, m).items():
                        right[l] = right.get(l, 0) + a * b
                if left != right:
                    v.append(("not associative", (i, j, k)))
    return FusionReport(not v, R.is_commutative, v)


# ---------------------------------------------------------------------------
# Frobenius-Perron dimensions

@dataclass
class FPDims:
    dims: list[float]
    total: float
    error: float


def fp_dims(R: FusionRing, tol: float = 1e-12, max_iter: int = 100000) -> FPDims:
    """Perron-Frobenius dimensions by power iteration on sum_i N_i.

    The error bound is the largest spread of the Collatz-Wielandt ratios
    ``(N_i x)_k / x_k`` over k, for every i.
    """
    mats = [R.fusion_matrix(i) for i in range(R.rank)]
    M = sum(mats)
    if np.any(M <= 0):
        raise FusionRingError("fusion graph is not connected")
    x = np.ones(R.rank)
    for _ in range(max_iter):
        y = M @ x
        y /= y.max()
        if np.max(np.abs(y - x)) < tol:
            x = y
            break
        x = y
    x = x / x[0]
    dims, err = [], 0.0
    for Ni in mats:
        ratios = (Ni @ x) / x
        dims.append(float(np.mean(ratios)))
        err = max(err, float(ratios.max() - ratios.min()))
    return FPDims(dims, float(sum(d * d for d in dims)), err)


# ---------------------------------------------------------------------------
# universal grading

def smith_normal_form(A: list[list[int]]) -> tuple[list[int], list[list[int]]]:
    """Nonzero Smith invariants of A (rows x cols) and the column transform V.

    U A V = diag(d_1, ..., d_k, 0, ...), with d_i | d_{i+1}; only the d_i and V
    are returned.
    """
    A = [list(row) for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(j1, j2, a, b, c, d):
        # (col j1, col j2) <- (a*c1 + b*c2, c*c1 + d*c2), determinant +-1
        for row in A:
            x, y = row[j1], row[j2]
            row[j1], row[j2] = a * x + b * y, c * x + d * y
        for row in V:
            x, y = row[j1], row[j2]
            row[j1], row[j2] = a * x + b * y, c * x + d * y

    def row_op(i1, i2, a, b, c, d):
        r1, r2 = A[i1], A[i2]
        A[i1] = [a * x + b * y for x, y in zip(r1, r2)]
        A[i2] = [c * x + d * y for x, y in zip(r1, r2)]

    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            col_op(t, pj, 0, 1, 1, 0)
        while True:
            done = True
            for j in range(t + 1, n):
                if A[t][j] and A[t][j] % A[t][t] == 0:
                    col_op(t, j, 1, 0, -(A[t][j] // A[t][t]), 1)
                elif A[t][j]:
                    g, s, u = _xgcd(A[t][t], A[t][j])
                    a, b = A[t][t] // g, A[t][j] // g
                    col_op(t, j, s, u, -b, a)
                    done = False
            for i in range(t + 1, m):
                if A[i][t] and A[i][t] % A[t][t] == 0:
                    row_op(t, i, 1, 0, -(A[i][t] // A[t][t]), 1)
                elif A[i][t]:
                    g, s, u = _xgcd(A[t][t], A[i][t])
                    a, b = A[t][t] // g, A[i][t] // g
                    row_op(t, i, s, u, -b, a)
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                row_op(t, bad[0], 1, 1, 0, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        diag.append(A[t][t])
        t += 1
    return diag, V


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    x, y = a, b
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if x < 0:
        x, s0, t0 = -x, -s0, -t0
    return x, s0, t0


def _lattice_basis_insert(basis: list[list[int]], pivots: list[int], row: list[int]) -> None:
    """Add row to an integer echelon basis (basis[p] leads at column pivots[p])."""
    v = list(row)
    while True:
        lead = next((c for c, x in enumerate(v) if x), None)
        if lead is None:
            return
        if lead not in pivots:
            pos = next((p for p, c in enumerate(pivots) if c > lead), len(pivots))
            pivots.insert(pos, lead)
            basis.insert(pos, v)
            return
        p = pivots.index(lead)
        b = basis[p]
        g, s, t = _xgcd(b[lead], v[lead])
        a1, a2 = b[lead] // g, v[lead] // g
        basis[p] = [s * x + t * y for x, y in zip(b, v)]
        v = [a1 * y - a2 * x for x, y in zip(b, v)]


@dataclass
class Grading:
    orders: list[int]  # invariant factors > 1
    degree: list[tuple[int, ...]]  # degree[i] = grading of simple i

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))


def grading_group(R: FusionRing) -> Grading:
    """Universal grading group of a commutative fusion ring via Smith normal form."""
    if not R.is_commutative:
        raise FusionRingError("grading group is only computed for commutative rings")
    r = R.rank
    relations = []
    e0 = [0] * r
    e0[0] = 1
    relations.append(e0)
    for i, j, k, _ in R.triples():
        if i > j:
            continue
        row = [0] * r
        row[k] += 1
        row[i] -= 1
        row[j] -= 1
        if any(row):
            relations.append(row)
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in relations:
        _lattice_basis_insert(basis, pivots, row)
    if not basis:
        basis = [[0] * r]
    diag, V = smith_normal_form(basis)
    diag = diag + [0] * (r - len(diag))
    if any(d == 0 for d in diag):
        raise FusionRingError("grading group is infinite; ring axioms violated")
    keep = [c for c, d in enumerate(diag) if d > 1]
    orders = [diag[c] for c in keep]
    # generator e_i has coordinates given by row i of V
    degree = [tuple(V[i][c] % diag[c] for c in keep) for i in range(r)]
    return Grading(orders, degree)


# ---------------------------------------------------------------------------
# invertible objects and subrings

@dataclass
class Invertibles:
    members: list[int]
    product: dict[tuple[int, int], int]


def invertibles(R: FusionRing) -> Invertibles:
    members = [i for i in range(R.rank) if sum(R.fuse(i, R.dual[i]).values()) == 1]
    product = {}
    for a in members:
        for b in members:
            out = R.fuse(a, b)
            (k, n), = out.items()
            assert n == 1
            product[(a, b)] = k
    return Invertibles(members, product)


def closure(R: FusionRing, seed: Iterable[int]) -> frozenset[int]:
    """Smallest fusion subring containing seed."""
    members = {0} | set(seed)
    members |= {R.dual[i] for i in members}
    frontier = set(members)
    while frontier:
        new = set()
        for i in frontier:
            for j in list(members):
                for k in R.fuse(i, j):
                    if k not in members:
                        new.add(k)
                for k in R.fuse(j, i):
                    if k not in members:
                        new.add(k)
        new |= {R.dual[k] for k in new}
        new -= members
        members |= new
        frontier = new
    return frozenset(members)


def enumerate_subrings(R: FusionRing, max_rank: int | None = None) -> list[tuple[int, ...]]:
    """All fusion subrings, as sorted member tuples in canonical order."""
    bound = DEFAULT_MAX_RANK if max_rank is None else max_rank
    if R.rank > bound:
        raise BoundExceededError(f"rank {R.rank} exceeds subring enumeration bound {bound}")
    start = closure(R, [])
    found = {start}
    queue = [start]
    while queue:
        K = queue.pop()
        for x in range(R.rank):
            if x in K:
                continue
            L = closure(R, K | {x})
            if L not in found:
                found.add(L)
                queue.append(L)
    return sorted((tuple(sorted(K)) for K in found), key=lambda m: (len(m), m))
