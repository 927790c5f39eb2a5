"""Reference collections of forms and modular data used by tests and the CLI."""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .constructors import (deligne_product, diagonal_DN, double_abelian, drinfeld_double,
                           pointed, reverse, semion, trivial)
from .groups import (PreMetricGroup, builtin_group, cyclic_form, double_form, orthogonal_sum,
                     radical)
from .modular_data import ModularData
from .witt import find_form_isomorphism


def abelian_groups(max_order: int) -> list[list[int]]:
    """Invariant factors d1 | d2 | ... with product <= max_order, one list per isomorphism class."""
    out: list[list[int]] = [[]]

    def extend(factors: list[int], size: int) -> None:
        step = factors[-1] if factors else 2
        for d in range(step, max_order // size + 1, step if factors else 1):
            out.append(factors + [d])
            extend(factors + [d], size * d)

    extend([], 1)
    return out


def _is_prime_power(n: int) -> bool:
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def cyclic_atoms(max_order: int) -> list[PreMetricGroup]:
    """Non-degenerate forms q(x) = a x^2 / 2n on Z/n, n a prime power, one per value of q(1)."""
    out = []
    for n in range(2, max_order + 1):
        if not _is_prime_power(n):
            continue
        for a in range(1, 2 * n):
            if math.gcd(a, n) == 1 and (a * n) % 2 == 0:
                out.append(cyclic_form(n, a))
    return out


def plane_atoms(max_size: int) -> list[PreMetricGroup]:
    """The two forms on (Z/2^k)^2 that do not split into cyclic ones: xy/2^k and (x^2+xy+y^2)/2^k."""
    out = []
    m = 2
    while m * m <= max_size:
        out.append(double_form([m]))
        out.append(PreMetricGroup([m, m], lambda x, m=m: Fraction(x[0] * x[0] + x[0] * x[1]
                                                                   + x[1] * x[1], m)))
        m *= 2
    return out


def klein_atoms() -> list[PreMetricGroup]:
    return plane_atoms(4)


def _invariant(M: PreMetricGroup) -> tuple:
    c = M.codec
    return M.size, tuple(sorted(Counter((c.order_of(x), M.q(x)) for x in M.elements()).items()))


def dedupe_forms(forms) -> list[PreMetricGroup]:
    """One representative per isomorphism class, first occurrence kept."""
    buckets: dict[tuple, list[PreMetricGroup]] = {}
    out = []
    for M in forms:
        bucket = buckets.setdefault(_invariant(M), [])
        if any(find_form_isomorphism(M, R) is not None for R in bucket):
            continue
        bucket.append(M)
        out.append(M)
    return out


@lru_cache(maxsize=None)
def form_corpus(max_size: int = 16) -> tuple[PreMetricGroup, ...]:
    """Every non-degenerate form with 1 < |A| <= max_size, up to isomorphism.

    Non-degenerate forms split orthogonally into prime-power cyclic pieces and
    2-primary planes, so orthogonal sums of the atoms reach every class.
    """
    atoms = dedupe_forms(cyclic_atoms(max_size) + plane_atoms(max_size))
    out = []

    def extend(start: int, M: PreMetricGroup | None, size: int) -> None:
        if M is not None:
            out.append(M)
        for i in range(start, len(atoms)):
            if size * atoms[i].size <= max_size:
                extend(i, atoms[i] if M is None else orthogonal_sum(M, atoms[i]),
                       size * atoms[i].size)

    extend(0, None, 1)
    forms = dedupe_forms(out)
    for M in forms:
        assert len(radical(M)) == 1
    return tuple(forms)


def three_fermion() -> ModularData:
    return pointed(klein_atoms()[1])


@lru_cache(maxsize=None)
def modular_corpus() -> tuple[tuple[str, ModularData], ...]:
    sem = semion()
    toric = double_abelian([2])
    items = [
        ("trivial", trivial()),
        ("semion", sem),
        ("reverse semion", reverse(sem)),
        ("three fermion", three_fermion()),
        ("toric code C(Z/2)", toric),
        ("C(Z/3)", double_abelian([3])),
        ("C(Z/4)", double_abelian([4])),
        ("C(Z/2 x Z/2)", double_abelian([2, 2])),
        ("C(Z/5)", double_abelian([5])),
        ("D_3", diagonal_DN(3)),
        ("D_5", diagonal_DN(5)),
        ("D_7", diagonal_DN(7)),
        ("D(S3)", drinfeld_double(builtin_group("S3"))),
        ("D(D4)", drinfeld_double(builtin_group("D4"))),
        ("D(Q8)", drinfeld_double(builtin_group("Q8"))),
        ("toric x semion", deligne_product(toric, sem)),
        ("semion x reverse semion", deligne_product(sem, reverse(sem))),
        ("D_3 x semion", deligne_product(diagonal_DN(3), sem)),
    ]
    return tuple(items)
