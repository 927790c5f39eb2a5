"""Premodular and modular data: dims, twists and an unnormalized S-matrix.

Conventions.  ``S`` is stored with ``S[0][i] = d_i`` and, for pointed data,
``S[x][y] = exp(-2 pi i b(x, y))``.  With this choice the identities

    S^2 = dim * C            TSTST = Omega^+ * S

hold on the nose, and the balancing relation reads

    S[i][j] = theta_i^-1 theta_j^-1 sum_k N[dual(i), j]^k theta_k d_k,

so for pointed data ``theta(x + y) = theta(x) theta(y) S[-x][y]``; the double
braiding scalar of ``x`` and ``y`` is ``S[-x][y] = conj(S[x][y])``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .cyclotomic import Cyc, CycMatrix, as_cyc, root_of_unity_exponent
from .fusion import (FusionRing, closure, enumerate_subrings, grading_group,
                     invertibles, validate_fusion_ring, DEFAULT_MAX_RANK)


class ModularDataError(ValueError):
    pass


class InconsistentDataError(RuntimeError):
    """Two independent criteria disagree; the datum is corrupt."""


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class ModularData:
    def __init__(self, ring: FusionRing, dims: Sequence, twists: Sequence, S: Sequence[Sequence]):
        r = ring.rank
        if len(dims) != r or len(twists) != r or len(S) != r or any(len(row) != r for row in S):
            raise ModularDataError(f"shape mismatch for rank {r}")
        self.ring = ring
        self.dims = [as_cyc(x) for x in dims]
        self.twists = [as_cyc(x) for x in twists]
        self.S = [[as_cyc(x) for x in row] for row in S]

    @property
    def rank(self) -> int:
        return self.ring.rank

    @cached_property
    def conductor(self) -> int:
        vals = self.dims + self.twists + [x for row in self.S for x in row]
        return reduce(_lcm, (x.n for x in vals), 1)

    @cached_property
    def S_matrix(self) -> CycMatrix:
        return CycMatrix.from_rows(self.S, self.conductor)

    @cached_property
    def T_matrix(self) -> CycMatrix:
        return CycMatrix.diagonal(self.twists, self.conductor)

    @cached_property
    def C_matrix(self) -> CycMatrix:
        return CycMatrix.permutation(self.ring.dual)

    def __eq__(self, other):
        return (isinstance(other, ModularData) and self.ring == other.ring
                and self.dims == other.dims and self.twists == other.twists and self.S == other.S)

    __hash__ = None

    def __repr__(self):
        return f"ModularData(rank={self.rank})"

    def to_json(self) -> dict:
        return {"ring": self.ring.to_json(),
                "dims": [d.to_json() for d in self.dims],
                "T": [t.to_json() for t in self.twists],
                "S": [[x.to_json() for x in row] for row in self.S]}

    @classmethod
    def from_json(cls, obj: dict) -> "ModularData":
        try:
            ring = FusionRing.from_json(obj["ring"])
            dims = [Cyc.from_json(x) for x in obj["dims"]]
            twists = [Cyc.from_json(x) for x in obj["T"]]
            S = [[Cyc.from_json(x) for x in row] for row in obj["S"]]
        except (KeyError, TypeError) as exc:
            raise ModularDataError(f"malformed modular data JSON: {exc}") from exc
        return cls(ring, dims, twists, S)


# ---------------------------------------------------------------------------
# basic invariants

def global_dim(md: ModularData) -> Cyc:
    return sum((d * d for d in md.dims), Cyc.zero())


def subring_dim(md: ModularData, K: Iterable[int]) -> Cyc:
    return sum((md.dims[i] * md.dims[i] for i in K), Cyc.zero())


def _commute(md: ModularData, i: int, j: int) -> bool:
    return md.S[i][j] == md.dims[i] * md.dims[j]


def transparent_objects(md: ModularData) -> tuple[int, ...]:
    r = md.rank
    return tuple(i for i in range(r) if all(_commute(md, i, j) for j in range(r)))


def centralizer_of(md: ModularData, K: Iterable[int]) -> tuple[int, ...]:
    K = list(K)
    return tuple(j for j in range(md.rank) if all(_commute(md, i, j) for i in K))


@dataclass
class Modularity:
    modular: bool
    transparent: tuple[int, ...]
    certificate: bool  # S^2 == dim * C

    def __bool__(self):
        return self.modular


def is_modular(md: ModularData) -> Modularity:
    Z2 = transparent_objects(md)
    by_transparency = Z2 == (0,)
    S = md.S_matrix
    cert = (S @ S) == md.C_matrix.scale(global_dim(md))
    if by_transparency != cert:
        raise InconsistentDataError(
            f"transparent set {Z2} disagrees with the S^2 = dim C certificate ({cert})")
    return Modularity(by_transparency, Z2, cert)


def _raw_gauss_sums(md: ModularData) -> tuple[Cyc, Cyc]:
    plus = sum((t * d * d for t, d in zip(md.twists, md.dims)), Cyc.zero())
    minus = sum((t.conj() * d * d for t, d in zip(md.twists, md.dims)), Cyc.zero())
    return plus, minus


def gauss_sums(md: ModularData) -> tuple[Cyc, Cyc]:
    plus, minus = _raw_gauss_sums(md)
    if transparent_objects(md) == (0,) and plus * minus != global_dim(md):
        raise InconsistentDataError("Omega+ Omega- != dim on modular data")
    return plus, minus


def is_anomaly_free(md: ModularData) -> bool:
    plus, minus = gauss_sums(md)
    return plus == minus


# ---------------------------------------------------------------------------
# verification

@dataclass
class Report:
    ok: bool
    checks: dict[str, bool] = field(default_factory=dict)
    violations: list[tuple[str, tuple]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, check: str, witness: tuple) -> None:
        self.checks[check] = False
        self.ok = False
        self.violations.append((check, witness))

    def passed(self, check: str) -> None:
        self.checks.setdefault(check, True)

    def summary(self) -> str:
        if self.ok:
            return "pass: " + ", ".join(sorted(self.checks))
        return "fail: " + "; ".join(f"{c} at {w}" for c, w in self.violations[:10])


def validate_premodular(md: ModularData, max_rank: int | None = None) -> Report:
    """Structural checks, balancing, and the subring projection formula.

    The projection formula runs over every fusion subring when the rank is
    within ``max_rank``; above that it is skipped and a note says so.
    """
    rep = Report(True)
    R, r = md.ring, md.rank
    ring_rep = validate_fusion_ring(R)
    if not ring_rep.ok:
        for kind, w in ring_rep.violations:
            rep.fail(f"ring: {kind}", w)
        return rep
    rep.passed("fusion ring axioms")

    one = Cyc.one()
    if md.dims[0] != one:
        rep.fail("d_0 = 1", (0,))
    if md.twists[0] != one:
        rep.fail("theta_0 = 1", (0,))
    rep.passed("unit normalization")
    for i in range(r):
        if md.S[0][i] != md.dims[i]:
            rep.fail("S_0i = d_i", (i,))
        if md.dims[R.dual[i]] != md.dims[i]:
            rep.fail("d_i = d_dual(i)", (i,))
        if md.twists[R.dual[i]] != md.twists[i]:
            rep.fail("theta_i = theta_dual(i)", (i,))
        if root_of_unity_exponent(md.twists[i]) is None:
            rep.fail("theta_i root of unity", (i,))
        for j in range(i + 1, r):
            if md.S[i][j] != md.S[j][i]:
                rep.fail("S symmetric", (i, j))
    for name in ("S_0i = d_i", "d_i = d_dual(i)", "theta_i = theta_dual(i)",
                 "theta_i root of unity", "S symmetric"):
        rep.passed(name)
    for i in range(r):
        for j in range(r):
            if md.S[R.dual[i]][R.dual[j]] != md.S[i][j]:
                rep.fail("S under duality", (i, j))
    rep.passed("S under duality")

    # balancing: S_ij theta_i theta_j = sum_k N_{dual i, j}^k theta_k d_k
    for i in range(r):
        for j in range(r):
            rhs = sum((n * md.twists[k] * md.dims[k] for k, n in R.fuse(R.dual[i], j).items()),
                      Cyc.zero())
            if md.S[i][j] * md.twists[i] * md.twists[j] != rhs:
                rep.fail("balancing", (i, j))
    rep.passed("balancing")

    bound = DEFAULT_MAX_RANK if max_rank is None else max_rank
    if r > bound:
        rep.notes.append(f"projection formula skipped: rank {r} exceeds bound {bound}")
        return rep
    S = md.S_matrix
    for K in enumerate_subrings(R, bound):
        dK = subring_dim(md, K)
        row = CycMatrix.from_rows([[md.dims[i] if i in K else 0 for i in range(r)]],
                                  md.conductor) @ S
        cent = set(centralizer_of(md, K))
        for j in range(r):
            expected = md.dims[j] * dK if j in cent else Cyc.zero()
            if row.entry(0, j) != expected:
                rep.fail("projection formula", (K, j))
    rep.passed("projection formula")
    return rep


def verify_modular_relations(md: ModularData) -> Report:
    """Exact check of S^2 = dim C and TSTST = Omega^+ S."""
    rep = Report(True)
    S, T = md.S_matrix, md.T_matrix
    lhs = S @ S
    rhs = md.C_matrix.scale(global_dim(md))
    if lhs == rhs:
        rep.passed("S^2 = dim C")
    else:
        rep.fail("S^2 = dim C", (lhs - rhs).first_nonzero())
    # no consistency check here: broken data should be reported, not raised
    plus, _ = _raw_gauss_sums(md)
    lhs = T @ S @ T @ S @ T
    rhs = S.scale(plus)
    if lhs == rhs:
        rep.passed("TSTST = Omega+ S")
    else:
        rep.fail("TSTST = Omega+ S", (lhs - rhs).first_nonzero())
    return rep


# ---------------------------------------------------------------------------
# restriction, Verlinde, isomorphisms

def restrict(md: ModularData, K: Sequence[int]) -> ModularData:
    K = sorted(K)
    return ModularData(md.ring.restrict(K), [md.dims[i] for i in K], [md.twists[i] for i in K],
                       [[md.S[i][j] for j in K] for i in K])


def verlinde_fusion(md: ModularData) -> dict[tuple[int, int, int], Cyc]:
    """N_ij^k = sum_r S_ir S_jr conj(S_kr) / (dim d_r), exactly; nonzero entries only."""
    S = md.S_matrix
    Sc = S.conj().T
    inv_dim = global_dim(md).inverse()
    inv_d = [d.inverse() for d in md.dims]
    out = {}
    for i in range(md.rank):
        D = CycMatrix.diagonal([md.S[i][r] * inv_d[r] for r in range(md.rank)], md.conductor)
        M = (S @ D @ Sc).scale(inv_dim)
        for j in range(md.rank):
            for k in range(md.rank):
                v = M.entry(j, k)
                if not v.is_zero():
                    out[(i, j, k)] = v
    return out


def verlinde_check(md: ModularData) -> Report:
    rep = Report(True)
    N = verlinde_fusion(md)
    R = md.ring
    for (i, j, k), v in N.items():
        if not v.is_rational() or v.to_fraction() != R.N(i, j, k):
            rep.fail("Verlinde formula", (i, j, k))
    for i, j, k, n in R.triples():
        if (i, j, k) not in N:
            rep.fail("Verlinde formula", (i, j, k))
    rep.passed("Verlinde formula")
    return rep


def find_data_isomorphism(md1: ModularData, md2: ModularData) -> list[int] | None:
    """A bijection p with d, theta, S and N preserved (data-level equivalence), or None."""
    r = md1.rank
    if md2.rank != r:
        return None

    def signature(md, i):
        return (md.dims[i], md.twists[i], tuple(sorted(hash(x) for x in md.S[i])))

    sig2: dict = {}
    for j in range(r):
        sig2.setdefault(signature(md2, j), []).append(j)
    cands = []
    for i in range(r):
        c = sig2.get(signature(md1, i))
        if not c:
            return None
        cands.append(c)
    order = sorted(range(r), key=lambda i: (len(cands[i]), i))
    perm = [-1] * r
    used = [False] * r

    def consistent(i, j):
        for i2 in range(r):
            j2 = perm[i2]
            if j2 >= 0 and md1.S[i][i2] != md2.S[j][j2]:
                return False
        return md1.S[i][i] == md2.S[j][j]

    def search(pos):
        if pos == r:
            return _fusion_preserved(md1.ring, md2.ring, perm)
        i = order[pos]
        for j in cands[i]:
            if not used[j] and consistent(i, j):
                perm[i], used[j] = j, True
                if search(pos + 1):
                    return True
                perm[i], used[j] = -1, False
        return False

    return list(perm) if search(0) else None


def _fusion_preserved(R1: FusionRing, R2: FusionRing, perm: Sequence[int]) -> bool:
    for i in range(R1.rank):
        for j in range(R1.rank):
            mapped = {perm[k]: n for k, n in R1.fuse(i, j).items()}
            if mapped != R2.fuse(perm[i], perm[j]):
                return False
    return True


# ---------------------------------------------------------------------------
# factorization into prime modular pieces

@dataclass
class Splitting:
    D: tuple[int, ...]
    D_prime: tuple[int, ...]
    bijection: dict[int, tuple[int, int]]  # simple of C -> (simple of D, simple of D')


@dataclass
class Factorization:
    modular_subrings: list[tuple[int, ...]]
    splittings: list[Splitting]
    primes: list[tuple[int, ...]]
    factorizations: list[tuple[tuple[int, ...], ...]]
    is_prime: bool

    def summary(self) -> str:
        if self.is_prime:
            return "prime: no proper nontrivial modular subring"
        return (f"{len(self.modular_subrings)} modular subrings, {len(self.splittings)} splittings, "
                f"{len(self.primes)} prime factors, {len(self.factorizations)} prime factorizations")


def _product_bijection(md: ModularData, D: Sequence[int], Dp: Sequence[int]
                       ) -> dict[int, tuple[int, int]] | None:
    """Backtracking for k <-> (a, b) matching N, S, d and theta by the product rules.

    The fusion product a x b is tried first for each k; it is the expected answer.
    """
    R = md.ring
    pairs = [(a, b) for a in D for b in Dp]
    if len(pairs) != md.rank:
        return None
    candidates: dict[int, list[tuple[int, int]]] = {k: [] for k in range(md.rank)}
    for a, b in pairs:
        prod = R.fuse(a, b)
        if len(prod) == 1 and next(iter(prod.values())) == 1:
            candidates[next(iter(prod))].append((a, b))
    for k in range(md.rank):
        for a, b in pairs:
            if (a, b) not in candidates[k] and md.dims[k] == md.dims[a] * md.dims[b] \
                    and md.twists[k] == md.twists[a] * md.twists[b]:
                candidates[k].append((a, b))
    assign: dict[int, tuple[int, int]] = {}
    taken: set = set()

    def ok(k, ab):
        a, b = ab
        if md.dims[k] != md.dims[a] * md.dims[b] or md.twists[k] != md.twists[a] * md.twists[b]:
            return False
        for k2, (a2, b2) in assign.items():
            if md.S[k][k2] != md.S[a][a2] * md.S[b][b2]:
                return False
        return True

    def search(k):
        if k == md.rank:
            return _product_fusion_ok(R, assign)
        for ab in candidates[k]:
            if ab not in taken and ok(k, ab):
                assign[k] = ab
                taken.add(ab)
                if search(k + 1):
                    return True
                del assign[k]
                taken.discard(ab)
        return False

    return dict(assign) if search(0) else None


def _product_fusion_ok(R: FusionRing, assign: dict[int, tuple[int, int]]) -> bool:
    back = {ab: k for k, ab in assign.items()}
    for k1, (a1, b1) in assign.items():
        for k2, (a2, b2) in assign.items():
            expect: dict[int, int] = {}
            for a3, n in R.fuse(a1, a2).items():
                for b3, m in R.fuse(b1, b2).items():
                    k3 = back[(a3, b3)]
                    expect[k3] = expect.get(k3, 0) + n * m
            if expect != R.fuse(k1, k2):
                return False
    return True


def prime_factorize(md: ModularData, max_rank: int | None = None) -> Factorization:
    """All data-level factorizations into prime modular subrings.

    ``splittings`` lists every ordered pair (D, D') with D a proper nontrivial
    modular subring and D' its centralizer.  ``factorizations`` lists the
    distinct unordered decompositions into primes, each a sorted tuple of
    subrings given in the indices of ``md``.
    """
    if not is_modular(md):
        raise ModularDataError("prime_factorize needs modular data")
    subrings = enumerate_subrings(md.ring, max_rank)
    dimC = global_dim(md)
    modular = [K for K in subrings if 1 < len(K) < md.rank and is_modular(restrict(md, K))]
    splittings = []
    for D in modular:
        Dp = centralizer_of(md, D)
        if subring_dim(md, D) * subring_dim(md, Dp) != dimC:
            raise InconsistentDataError(f"dim D dim D' != dim C for D = {D}")
        bij = _product_bijection(md, D, Dp)
        if bij is None:
            raise InconsistentDataError(f"no product bijection for D = {D}, D' = {Dp}")
        splittings.append(Splitting(D, Dp, bij))

    modular_set = set(modular)
    # a modular subring is prime iff no other modular subring sits properly inside it
    primes = [D for D in modular
              if not any(E != D and set(E) < set(D) and len(E) > 1 for E in modular_set)]
    whole = tuple(range(md.rank))
    is_prime = not modular

    memo: dict[tuple[int, ...], set] = {}

    def decompose(K: tuple[int, ...]) -> set:
        if K in memo:
            return memo[K]
        inner = [D for D in primes if set(D) < set(K)]
        if not inner:
            memo[K] = {(K,)}
            return memo[K]
        out = set()
        for D in inner:
            rest = tuple(j for j in centralizer_of(md, D) if j in K)
            for f in decompose(rest):
                out.add(tuple(sorted((D,) + f)))
        memo[K] = out
        return out

    facts = sorted(decompose(whole)) if not is_prime else [(whole,)]
    return Factorization(modular, splittings, primes, facts, is_prime)


# ---------------------------------------------------------------------------
# grading / invertibles pairing

@dataclass
class PairingReport:
    ok: bool
    grading_orders: list[int]
    invertibles: list[int]
    problems: list[str] = field(default_factory=list)


def gn_pairing(md: ModularData) -> PairingReport:
    """Check that S_xL / (d_x d_L) pairs the grading group with the invertibles.

    Verified: the value depends on x only through its degree, it is
    multiplicative in both arguments, non-degenerate on both sides, and the two
    groups have the same order, so L -> f(-, L) is an isomorphism onto the
    character group of the grading group.
    """
    R = md.ring
    G = grading_group(R)
    inv = invertibles(R)
    problems = []
    by_degree: dict[tuple, list[int]] = {}
    for x in range(R.rank):
        by_degree.setdefault(G.degree[x], []).append(x)

    def f(x, L):
        return md.S[x][L] / (md.dims[x] * md.dims[L])

    table: dict[tuple[tuple, int], Cyc] = {}
    for g, xs in by_degree.items():
        for L in inv.members:
            vals = {f(x, L) for x in xs}
            if len(vals) != 1:
                problems.append(f"pairing not constant on degree {g} against {L}")
            table[(g, L)] = f(xs[0], L)
    if problems:
        return PairingReport(False, G.orders, inv.members, problems)
    if len(by_degree) != G.size:
        problems.append("grading map is not surjective")
    degrees = list(by_degree)
    for g in degrees:
        for L1 in inv.members:
            for L2 in inv.members:
                if table[(g, inv.product[(L1, L2)])] != table[(g, L1)] * table[(g, L2)]:
                    problems.append(f"not multiplicative in L at {g}, {L1}, {L2}")
    for g1 in degrees:
        for g2 in degrees:
            g3 = G.add(g1, g2)
            for L in inv.members:
                if table[(g3, L)] != table[(g1, L)] * table[(g2, L)]:
                    problems.append(f"not multiplicative in degree at {g1}, {g2}, {L}")
    one = Cyc.one()
    zero_deg = G.degree[0]
    for L in inv.members:
        if L != 0 and all(table[(g, L)] == one for g in degrees):
            problems.append(f"invertible {L} pairs trivially")
    for g in degrees:
        if g != zero_deg and all(table[(g, L)] == one for L in inv.members):
            problems.append(f"degree {g} pairs trivially")
    if len(inv.members) != G.size:
        problems.append(f"|I_1| = {len(inv.members)} but |G| = {G.size}")
    return PairingReport(not problems, G.orders, inv.members, problems)


def double_braiding(md: ModularData, x: int, y: int) -> Cyc:
    """Scalar of the double braiding between invertible x and y: S[dual x][y]."""
    return md.S[md.ring.dual[x]][y]


def closure_of(md: ModularData, K: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(closure(md.ring, K)))
