"""Condensation, modularization and Witt classes of pre-metric groups.

Everything here acts on forms ``(A, q)``; :func:`modcat.constructors.pointed`
turns any result back into modular data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import Cyc, root_of_unity_exponent
from .groups import (BoundExceededError, PreMetricGroup, decompose_abelian,
                     gauss_sum, radical, validate_form)
from .modular_data import ModularData, gauss_sums, is_modular
from .fusion import invertibles
from .sl2z import sqrt_dim, sqrt_int

ISOTROPIC_BOUND = 4096

Element = tuple[int, ...]


class WittError(ValueError):
    pass


@dataclass(frozen=True)
class IsotropicSubgroup:
    elements: frozenset
    generators: tuple[Element, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def _span(M: PreMetricGroup, gens: Sequence[Element]) -> frozenset:
    c = M.codec
    out = {c.zero}
    frontier = [c.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = c.add(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def _minimal_generators(M: PreMetricGroup, elements: frozenset) -> tuple[Element, ...]:
    gens: list[Element] = []
    span = frozenset({M.codec.zero})
    for x in sorted(elements):
        if x not in span:
            gens.append(x)
            span = _span(M, gens)
        if len(span) == len(elements):
            break
    return tuple(gens)


def subgroup(M: PreMetricGroup, gens: Sequence[Sequence[int]]) -> IsotropicSubgroup:
    """Subgroup generated by gens, checked to be isotropic."""
    gens = [tuple(int(a) % n for a, n in zip(g, M.orders)) for g in gens]
    elems = _span(M, gens)
    if any(M.q(x) != 0 for x in elems):
        raise WittError("subgroup is not isotropic")
    return IsotropicSubgroup(elems, _minimal_generators(M, elems))


def isotropic_subgroups(M: PreMetricGroup, bound: int = ISOTROPIC_BOUND) -> list[IsotropicSubgroup]:
    """All subgroups on which q vanishes, sorted by (order, generators)."""
    if M.size > bound:
        raise BoundExceededError(f"|A| = {M.size} exceeds bound {bound}")
    iso = [x for x in M.elements() if M.q(x) == 0 and any(x)]
    start = frozenset({M.codec.zero})
    found = {start}
    queue = [start]
    while queue:
        H = queue.pop()
        for x in iso:
            if x in H or any(M.b(x, h) != 0 for h in H):
                continue
            H2 = _span(M, list(H) + [x])
            if H2 not in found:
                found.add(H2)
                queue.append(H2)
    subs = [IsotropicSubgroup(H, _minimal_generators(M, H)) for H in found]
    return sorted(subs, key=lambda h: (h.order, h.generators))


def perp(M: PreMetricGroup, H: IsotropicSubgroup) -> list[Element]:
    return [x for x in M.elements() if all(M.b(x, h) == 0 for h in H.elements)]


def condense(M: PreMetricGroup, H: IsotropicSubgroup) -> PreMetricGroup:
    """H^perp / H with the induced form; coset representatives are minimal tuples."""
    return _condense(M, H)[0]


def _condense(M: PreMetricGroup, H: IsotropicSubgroup) -> tuple[PreMetricGroup, dict]:
    if any(M.q(h) != 0 for h in H.elements):
        raise WittError("condensation needs an isotropic subgroup")
    c = M.codec
    P = perp(M, H)
    rep = {}
    for x in P:
        if x not in rep:
            coset = [c.add(x, h) for h in H.elements]
            m = min(coset)
            for y in coset:
                rep[y] = m
    reps = sorted(set(rep.values()))
    add = lambda x, y: rep[c.add(x, y)]  # noqa: E731
    orders, basis, coords = decompose_abelian(reps, add, c.zero)
    q = {coords[x]: M.q(x) for x in reps}
    result = PreMetricGroup(orders, q)
    quotient_map = {x: coords[rep[x]] for x in P}
    return result, quotient_map


def module_dims(M: PreMetricGroup, H: IsotropicSubgroup) -> tuple[int, int]:
    """(|A| / |H|, |A| / |H|^2), the latter checked against |condense(M, H)|."""
    if len(radical(M)) != 1:
        raise WittError("module dimensions need a non-degenerate form")
    n, h = M.size, H.order
    if n % h or n % (h * h):
        raise WittError("non-integral module dimension")
    local = n // (h * h)
    if condense(M, H).size != local:
        raise WittError("condensed size disagrees with |A| / |H|^2")
    return n // h, local


@dataclass
class CenterType:
    kind: str  # modular | modularizable | almost | other
    radical: list[Element]
    q_on_radical: dict = field(default_factory=dict)


def center_type(M: PreMetricGroup) -> CenterType:
    """Classify the radical R of b.

    ``almost`` means R has exactly two elements and q is 1/2 on the generator,
    the symmetric center of super vector spaces.
    """
    R = radical(M)
    qR = {x: M.q(x) for x in R}
    if len(R) == 1:
        kind = "modular"
    elif all(v == 0 for v in qR.values()):
        kind = "modularizable"
    elif len(R) == 2 and sorted(qR.values()) == [0, Fraction(1, 2)]:
        kind = "almost"
    else:
        kind = "other"
    return CenterType(kind, R, qR)


def modularize(M: PreMetricGroup) -> PreMetricGroup:
    ct = center_type(M)
    if ct.kind == "modular":
        return M
    if ct.kind != "modularizable":
        raise WittError(f"form of center type {ct.kind!r} has no modularization")
    H = IsotropicSubgroup(frozenset(ct.radical), _minimal_generators(M, frozenset(ct.radical)))
    return condense(M, H)


def _smallest_isotropic_vector(M: PreMetricGroup) -> Element | None:
    best = None
    for x in M.elements():
        if not any(x) or M.q(x) != 0:
            continue
        p = M.codec.order_of(x)
        if all(p % d for d in range(2, int(math.isqrt(p)) + 1)):
            key = (p, x)
            if best is None or key < best:
                best = key
    return best[1] if best else None


def anisotropic_part(M: PreMetricGroup) -> PreMetricGroup:
    """Condense by <x> for the smallest isotropic x of prime order until none is left."""
    if len(radical(M)) != 1:
        raise WittError("anisotropic part needs a non-degenerate form")
    while True:
        x = _smallest_isotropic_vector(M)
        if x is None:
            return M
        M = condense(M, subgroup(M, [x]))


def find_form_isomorphism(M1: PreMetricGroup, M2: PreMetricGroup) -> list[Element] | None:
    """Images of the standard generators of M1 defining a q-preserving isomorphism onto M2."""
    if M1.size != M2.size:
        return None
    c2 = M2.codec
    r = len(M1.orders)
    gens = M1.codec.generators()
    elems2 = M2.elements()
    cands = []
    for i, g in enumerate(gens):
        n = M1.orders[i]
        cands.append([y for y in elems2 if n % c2.order_of(y) == 0 and M2.q(y) == M1.q(g)])
    images: list[Element] = []

    def search(i):
        if i == r:
            return _is_bijective(M1, M2, images)
        for y in cands[i]:
            if all(M2.b(y, images[j]) == M1.b(gens[i], gens[j]) for j in range(i)):
                images.append(y)
                if search(i + 1):
                    return True
                images.pop()
        return False

    return list(images) if search(0) else None


def _is_bijective(M1: PreMetricGroup, M2: PreMetricGroup, images: Sequence[Element]) -> bool:
    c2 = M2.codec
    seen = set()
    for x in M1.elements():
        y = c2.zero
        for a, img in zip(x, images):
            y = c2.add(y, c2.scale(a, img))
        seen.add(y)
    return len(seen) == M2.size


@dataclass
class WittResult:
    equivalent: bool
    anisotropic: tuple[PreMetricGroup, PreMetricGroup]
    witness: list[Element] | None


def witt_equivalent(M1: PreMetricGroup, M2: PreMetricGroup) -> WittResult:
    a1, a2 = anisotropic_part(M1), anisotropic_part(M2)
    iso = find_form_isomorphism(a1, a2)
    return WittResult(iso is not None, (a1, a2), iso)


def central_charge(obj) -> Cyc:
    """Omega^+ / sqrt(dim) for a non-degenerate form or modular datum; of modulus one."""
    if isinstance(obj, ModularData):
        if not is_modular(obj):
            raise WittError("central charge needs modular data")
        xi = gauss_sums(obj)[0] / sqrt_dim(obj)
    else:
        if len(radical(obj)) != 1:
            raise WittError("central charge needs a non-degenerate form")
        xi = gauss_sum(obj) / sqrt_int(obj.size)
    xi = xi.compress()
    if xi * xi.conj() != Cyc.one() or root_of_unity_exponent(xi) is None:
        raise WittError("central charge is not a root of unity")
    return xi


def form_from_pointed(md: ModularData) -> PreMetricGroup:
    """Recover (A, q) from pointed modular data: fusion gives A, twists give q."""
    inv = invertibles(md.ring)
    if len(inv.members) != md.rank:
        raise WittError("datum is not pointed")
    orders, basis, coords = decompose_abelian(list(range(md.rank)),
                                              lambda a, b: inv.product[(a, b)], 0)
    q = {}
    for x in range(md.rank):
        found = root_of_unity_exponent(md.twists[x])
        if found is None:
            raise WittError(f"twist of {x} is not a root of unity")
        m, k = found
        q[coords[x]] = Fraction(k, m)
    M = PreMetricGroup(orders, q)
    report = validate_form(M)
    if not report.ok:
        raise WittError(f"twists do not define a quadratic form: {report.summary()}")
    return M


def as_form(obj) -> PreMetricGroup:
    if isinstance(obj, PreMetricGroup):
        return obj
    if isinstance(obj, ModularData):
        return form_from_pointed(obj)
    raise TypeError(f"expected a form or pointed modular data, got {type(obj).__name__}")


def is_nondegenerate(M: PreMetricGroup) -> bool:
    return len(radical(M)) == 1
