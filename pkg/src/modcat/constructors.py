"""Builders for modular data: pointed, doubles, D_N, Drinfeld doubles, products."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .cyclotomic import Cyc, CycMatrix
from .fusion import FusionRing
from .groups import (FiniteGroup, PreMetricGroup, centralizer_subgroup,
                     character_table, conjugacy_classes, cyclic_form, double_form, theta,
                     validate_form, DEFAULT_GROUP_BOUND, BoundExceededError)
from .modular_data import ModularData, restrict, global_dim


class ConstructionError(ValueError):
    pass


def pointed(M: PreMetricGroup) -> ModularData:
    """Pointed datum of (A, q): theta_x = e(q(x)), S_xy = e(-b(x, y))."""
    report = validate_form(M)
    if not report.ok:
        raise ConstructionError(f"invalid quadratic form: {report.summary()}")
    c = M.codec
    elems = M.elements()
    n = len(elems)
    N = {(i, j, int(k)): 1 for (i, j), k in np.ndenumerate(report.addition)}
    ring = FusionRing(n, [c.index(c.neg(x)) for x in elems], N)
    twists = [theta(M.q(x)) for x in elems]
    L = report.modulus
    roots: dict[int, Cyc] = {}
    for v in np.unique(report.matrix):
        roots[int(v)] = theta(Fraction(-int(v), L))
    S = [[roots[v] for v in map(int, row)] for row in report.matrix]
    return ModularData(ring, [Cyc.one()] * n, twists, S)


def trivial() -> ModularData:
    return ModularData(FusionRing(1, [0], {(0, 0, 0): 1}), [1], [1], [[1]])


def double_abelian(orders) -> ModularData:
    """C(A) = A x A^ with theta((g, phi)) = phi(g); characters identified with A."""
    return pointed(double_form(orders))


def diagonal_DN(N: int) -> ModularData:
    """Diagonal {(k, k)} inside C(Z/N), N odd: q(k) = k^2 / N."""
    if N < 1 or N % 2 == 0:
        raise ConstructionError(f"D_N is only built for odd N >= 1, got {N}")
    md = pointed(cyclic_form(N, 2))
    full = double_abelian([N])
    diag = [k * N + k for k in range(N)]
    sub = restrict(full, diag)
    if sub != md:
        raise ConstructionError("diagonal restriction of C(Z/N) disagrees with q(k) = k^2/N")
    return md


def drinfeld_double(G: FiniteGroup, bound: int = DEFAULT_GROUP_BOUND) -> ModularData:
    """Modular data of D(G)-Mod.

    Simples are pairs (a, chi): a a class representative, chi an irreducible
    character of the centralizer Z(a), ordered by class then by character.
    d = |[a]| chi(e), theta = chi(a) / chi(e), and

        S[(a,x)][(b,y)] = |G| / (|Z(a)| |Z(b)|) *
            sum over g with a and g b g^-1 commuting of conj(x(g b g^-1)) conj(y(g^-1 a g)).

    Fusion coefficients come from the Verlinde sum and must be nonnegative integers.
    """
    if G.order > bound:
        raise BoundExceededError(f"|G| = {G.order} exceeds bound {bound}")
    cc = conjugacy_classes(G)
    t = G.table
    inv = G.inverse
    simples = []  # (class index, character index)
    tables = []
    for ci, a in enumerate(cc.reps):
        Z = centralizer_subgroup(G, a)
        ct = character_table(Z.group)
        tables.append((a, Z, ct))
        for chi in range(len(ct.chars)):
            simples.append((ci, chi))
    r = len(simples)

    def char_at(ci, chi, g):
        a, Z, ct = tables[ci]
        return ct.value(chi, Z.from_parent[g])

    dims, twists = [], []
    for ci, chi in simples:
        a, Z, ct = tables[ci]
        deg = ct.chars[chi][0]
        dims.append(deg * len(cc.classes[ci]))
        twists.append(char_at(ci, chi, a) / deg)

    S = [[None] * r for _ in range(r)]
    for p, (ci, chi) in enumerate(simples):
        a, Za, _ = tables[ci]
        for q_, (cj, psi) in enumerate(simples):
            if q_ < p:
                S[p][q_] = S[q_][p]
                continue
            b, Zb, _ = tables[cj]
            total = Cyc.zero()
            for g in range(G.order):
                gbg = t[t[g][b]][inv[g]]
                if t[a][gbg] != t[gbg][a]:
                    continue
                gag = t[t[inv[g]][a]][g]
                total = total + (char_at(ci, chi, gbg) * char_at(cj, psi, gag)).conj()
            S[p][q_] = total * Fraction(G.order, len(Za.elements) * len(Zb.elements))

    N, dual = _verlinde_ring(S, dims)
    md = ModularData(FusionRing(r, dual, N), dims, twists, S)
    if global_dim(md) != G.order ** 2:
        raise ConstructionError("dim D(G) != |G|^2")
    return md


def _verlinde_ring(S, dims) -> tuple[dict, list[int]]:
    r = len(dims)
    Sm = CycMatrix.from_rows(S)
    Sc = Sm.conj().T
    dimC = sum((d * d for d in dims), Cyc.zero())
    inv_dim = dimC.inverse()
    N = {}
    for i in range(r):
        D = CycMatrix.diagonal([S[i][k] / dims[k] for k in range(r)], Sm.n)
        M = (Sm @ D @ Sc).scale(inv_dim)
        for j in range(r):
            for k in range(r):
                v = M.entry(j, k)
                if v.is_zero():
                    continue
                if not v.is_rational() or v.to_fraction().denominator != 1 or v.to_fraction() < 0:
                    raise ConstructionError(f"Verlinde coefficient N[{i},{j}]^{k} = {v!r} "
                                            "is not a nonnegative integer")
                N[(i, j, k)] = int(v.to_fraction())
    dual = []
    for i in range(r):
        ds = [j for j in range(r) if N.get((i, j, 0), 0)]
        if len(ds) != 1:
            raise ConstructionError(f"simple {i} has no unique dual")
        dual.append(ds[0])
    return N, dual


def deligne_product(md1: ModularData, md2: ModularData) -> ModularData:
    """Index (i, j) -> i * rank2 + j; all data multiply entrywise."""
    r1, r2 = md1.rank, md2.rank
    idx = lambda i, j: i * r2 + j  # noqa: E731
    N = {}
    for i1, j1, k1, n1 in md1.ring.triples():
        for i2, j2, k2, n2 in md2.ring.triples():
            N[(idx(i1, i2), idx(j1, j2), idx(k1, k2))] = n1 * n2
    dual = [idx(md1.ring.dual[i], md2.ring.dual[j]) for i in range(r1) for j in range(r2)]
    dims = [a * b for a in md1.dims for b in md2.dims]
    twists = [a * b for a in md1.twists for b in md2.twists]
    S = [[md1.S[i1][j1] * md2.S[i2][j2] for j1 in range(r1) for j2 in range(r2)]
         for i1 in range(r1) for i2 in range(r2)]
    return ModularData(FusionRing(r1 * r2, dual, N), dims, twists, S)


def reverse(md: ModularData) -> ModularData:
    """Opposite braiding: conjugate twists and S."""
    return ModularData(md.ring, md.dims, [t.conj() for t in md.twists],
                       [[x.conj() for x in row] for row in md.S])


def semion() -> ModularData:
    return pointed(cyclic_form(2, 1))
