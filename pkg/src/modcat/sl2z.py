"""The SL(2, Z) representation of modular data.

Letters are ``s = [[0, -1], [1, 0]]`` and ``t = [[1, 1], [0, 1]]``, which satisfy
``s^4 = 1`` and ``(st)^3 = s^2``.  A word is a tuple of letters from
``("s", "s^-1", "t", "t^-1")``.  Under ``s -> S / lam`` and ``t -> T / mu`` with
``lam^2 = dim`` and ``mu^3 = Omega^+ / lam`` these relations hold exactly.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .cyclotomic import Cyc, CycMatrix, make_root, root_of_unity_exponent
from .modular_data import (ModularData, ModularDataError, gauss_sums, global_dim,
                           is_anomaly_free, is_modular)

LETTERS = ("s", "s^-1", "t", "t^-1")
INVERSE = {"s": "s^-1", "s^-1": "s", "t": "t^-1", "t^-1": "t"}
_INT = {"s": ((0, -1), (1, 0)), "s^-1": ((0, 1), (-1, 0)),
        "t": ((1, 1), (0, 1)), "t^-1": ((1, -1), (0, 1))}
MAX_LEVEL = 24

Word = tuple[str, ...]


class RootError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# roots inside cyclotomic fields

def _factor(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _sqrt_prime(p: int) -> Cyc:
    if p == 2:
        return make_root(8, 1) + make_root(8, 7)
    g = sum((make_root(p, k * k) for k in range(p)), Cyc.zero())
    return g if p % 4 == 1 else g * make_root(4, 3)


def sqrt_int(m) -> Cyc:
    """Square root of a rational m; positive for m > 0, i * sqrt(-m) for m < 0."""
    m = Fraction(m)
    if m < 0:
        return make_root(4, 1) * sqrt_int(-m)
    if m == 0:
        return Cyc.zero()
    num = m.numerator * m.denominator
    root = Cyc.one()
    outside = 1
    for p, e in _factor(num).items():
        outside *= p ** (e // 2)
        if e % 2:
            root = root * _sqrt_prime(p)
    root = root * Fraction(outside, m.denominator)
    if root.approx().real < 0:
        root = -root
    if root * root != Cyc.rational(m):
        raise RootError(f"square root construction failed for {m}")
    return root


def cube_roots_of_unity_element(xi: Cyc) -> list[Cyc]:
    """The three cube roots of a root of unity xi, at conductor 3 * order field."""
    found = root_of_unity_exponent(xi)
    if found is None:
        raise RootError(f"{xi!r} is not a root of unity")
    m, k = found
    roots = [make_root(3 * m, k + m * j).compress() for j in range(3)]
    for mu in roots:
        if mu ** 3 != xi:
            raise RootError("cube root verification failed")
    return roots


def sqrt_dim(md: ModularData) -> Cyc:
    D = global_dim(md)
    if not D.is_rational():
        raise RootError("global dimension is irrational; no square root construction available")
    return sqrt_int(D.to_fraction())


# ---------------------------------------------------------------------------
# representations

def t_order(md: ModularData) -> int:
    N = 1
    for th in md.twists:
        found = root_of_unity_exponent(th)
        if found is None:
            raise ModularDataError(f"twist {th!r} is not a root of unity")
        m, k = found
        o = m // math.gcd(m, k)
        N = N * o // math.gcd(N, o)
    return N


@dataclass
class Rep:
    """Images of the four letters; a projective pair or a true representation."""
    mats: dict[str, CycMatrix]
    lam: Cyc | None = None
    mu: Cyc | None = None
    canonical: bool = False

    @property
    def s(self) -> CycMatrix:
        return self.mats["s"]

    @property
    def t(self) -> CycMatrix:
        return self.mats["t"]

    @property
    def size(self) -> int:
        return self.s.shape[0]


def projective_pair(md: ModularData) -> Rep:
    """s -> S, t -> T, with S^-1 = C S / dim and T^-1 = conj(T)."""
    S, T = md.S_matrix, md.T_matrix
    s_inv = (md.C_matrix @ S).scale(global_dim(md).inverse())
    t_inv = CycMatrix.diagonal([th.conj() for th in md.twists], md.conductor)
    return Rep({"s": S, "s^-1": s_inv, "t": T, "t^-1": t_inv})


def _true_rep(md: ModularData, lam: Cyc, mu: Cyc, canonical: bool) -> Rep:
    S, T = md.S_matrix, md.T_matrix
    s = S.scale(lam.inverse())
    t = T.scale(mu.inverse())
    s_inv = (md.C_matrix @ S).scale(lam / global_dim(md))
    t_inv = CycMatrix.diagonal([th.conj() * mu for th in md.twists])
    return Rep({"s": s, "s^-1": s_inv, "t": t, "t^-1": t_inv}, lam, mu, canonical)


def check_true_rep(rep: Rep) -> bool:
    s, t = rep.s, rep.t
    ident = CycMatrix.identity(rep.size)
    s2 = s @ s
    st = s @ t
    return (s2 @ s2) == ident and (st @ st @ st) == s2


def renormalizations(md: ModularData) -> list[Rep]:
    """The six pairs (lam, mu) with lam = +-sqrt(dim) and mu^3 = Omega^+ / lam.

    With lam^2 = dim, s^2 maps to the charge conjugation C.  When the datum is
    anomaly-free the pair (Omega^+, 1) is among them and flagged canonical.
    """
    if not is_modular(md):
        raise ModularDataError("renormalizations need modular data")
    root = sqrt_dim(md)
    plus, _ = gauss_sums(md)
    anomaly_free = is_anomaly_free(md)
    reps = []
    for lam in (root, -root):
        for mu in cube_roots_of_unity_element(plus / lam):
            canon = anomaly_free and lam == plus and mu == Cyc.one()
            rep = _true_rep(md, lam, mu, canon)
            if not check_true_rep(rep):
                raise RootError(f"renormalization ({lam!r}, {mu!r}) fails s^4 = 1 or (st)^3 = s^2")
            reps.append(rep)
    pairs = {(r.lam, r.mu) for r in reps}
    if len(pairs) != 6:
        raise RootError("renormalizations are not pairwise distinct")
    return reps


def canonical_rep(md: ModularData) -> Rep:
    reps = renormalizations(md)
    for r in reps:
        if r.canonical:
            return r
    return reps[0]


def evaluate(rep: Union[Rep, ModularData], word: Sequence[str]) -> CycMatrix:
    if isinstance(rep, ModularData):
        rep = projective_pair(rep)
    out = CycMatrix.identity(rep.size)
    for letter in word:
        out = out @ rep.mats[letter]
    return out


# ---------------------------------------------------------------------------
# SL(2, Z/N) cosets and Gamma(N) generators

def word_matrix(word: Sequence[str], N: int | None = None) -> tuple[int, int, int, int]:
    a, b, c, d = 1, 0, 0, 1
    for letter in word:
        (p, q), (r, s) = _INT[letter]
        a, b, c, d = a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s
        if N:
            a, b, c, d = a % N, b % N, c % N, d % N
    return a, b, c, d


def _mul_mod(x, letter, N):
    (p, q), (r, s) = _INT[letter]
    a, b, c, d = x
    return ((a * p + b * r) % N, (a * q + b * s) % N, (c * p + d * r) % N, (c * q + d * s) % N)


def sl2_order(N: int) -> int:
    out = N ** 3
    for p in _factor(N) if N > 1 else {}:
        out = out * (p * p - 1) // (p * p)
    return out


@dataclass
class CosetTable:
    N: int
    words: list[Word]              # shortlex representative of each coset
    edges: dict[tuple[int, str], int]
    tree: set[tuple[int, str]]     # edges used to reach a coset for the first time


def coset_table(N: int) -> CosetTable:
    """Right cosets of Gamma(N), i.e. elements of SL(2, Z/N), found by BFS over s then t."""
    if not 1 <= N <= MAX_LEVEL:
        raise ValueError(f"level N = {N} outside 1..{MAX_LEVEL}")
    start = (1 % N, 0, 0, 1 % N)
    index = {start: 0}
    words: list[Word] = [()]
    edges, tree = {}, set()
    queue = deque([start])
    while queue:
        x = queue.popleft()
        i = index[x]
        for letter in ("s", "t"):
            y = _mul_mod(x, letter, N)
            if y not in index:
                index[y] = len(words)
                words.append(words[i] + (letter,))
                queue.append(y)
                tree.add((i, letter))
            edges[(i, letter)] = index[y]
    return CosetTable(N, words, edges, tree)


def _free_reduce(word: Sequence[str]) -> Word:
    out: list[str] = []
    for letter in word:
        if out and out[-1] == INVERSE[letter]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def inverse_word(word: Sequence[str]) -> Word:
    return tuple(INVERSE[x] for x in reversed(word))


def gamma_generators(N: int) -> list[Word]:
    """Schreier generators r x (rep of r x)^-1 of Gamma(N), each checked to be 1 mod N."""
    table = coset_table(N)
    gens = []
    for (i, letter), j in sorted(table.edges.items()):
        if (i, letter) in table.tree:
            continue
        w = _free_reduce(table.words[i] + (letter,) + inverse_word(table.words[j]))
        if not w:
            continue
        if word_matrix(w, N) != (1 % N, 0, 0, 1 % N):
            raise AssertionError(f"Schreier word {w} is not in Gamma({N})")
        gens.append(w)
    return gens


# ---------------------------------------------------------------------------
# congruence check

@dataclass
class CongruenceReport:
    ok: bool
    level: int
    t_order: int
    cosets: int
    generators: int
    scalars: list[Cyc] = field(default_factory=list)
    canonical: bool = False
    all_scalars_one: bool | None = None
    attempts: list[int] = field(default_factory=list)
    failure: str | None = None


def _scalar_images(rep: Rep, table: CosetTable) -> list[Cyc] | None:
    """rho(w) for every Schreier generator w, or None when one is not scalar."""
    images = [None] * len(table.words)
    images[0] = CycMatrix.identity(rep.size)
    scalars = []
    # BFS order guarantees the parent image exists before it is needed
    for i in range(len(table.words)):
        for letter in ("s", "t"):
            j = table.edges[(i, letter)]
            A = images[i] @ rep.mats[letter]
            if (i, letter) in table.tree:
                images[j] = A
                continue
            B = images[j]
            pos = B.first_nonzero()
            c = A.entry(*pos) / B.entry(*pos)
            if A != B.scale(c):
                return None
            scalars.append(c)
    return scalars


def congruence_check(md: ModularData, rep: Rep | None = None) -> CongruenceReport:
    """Gamma(N) acts by scalars, N = ord(T); retried once at 2N before failing."""
    if not is_modular(md):
        raise ModularDataError("congruence check needs modular data")
    N0 = t_order(md)
    if rep is None:
        rep = canonical_rep(md)
    attempts = []
    for N in (N0, 2 * N0):
        if N > MAX_LEVEL:
            break
        attempts.append(N)
        table = coset_table(N)
        if len(table.words) != sl2_order(N):
            raise AssertionError(f"coset count {len(table.words)} != |SL(2, Z/{N})|")
        scalars = _scalar_images(rep, table)
        if scalars is not None:
            one = Cyc.one()
            all_one = all(c == one for c in scalars) if rep.canonical else None
            return CongruenceReport(True, N, N0, len(table.words), len(scalars), scalars,
                                    rep.canonical, all_one, attempts)
    return CongruenceReport(False, attempts[-1] if attempts else N0, N0, 0, 0, [], rep.canonical,
                            None, attempts, "a Gamma(N) generator has a non-scalar image")
