"""Invariants of the curve attached to a congruence subgroup, and the
route decision for the height-bound theorems.

A subgroup is handled through its image H in SL2(Z/N).  Cusps are orbits of
<H, -I> on unimodular column vectors; elliptic points are detected by the
coset-conjugation test against the order-4 element s = [[0,-1],[1,0]] and
the order-3 element t = [[0,-1],[1,-1]]; the genus follows from the exact
integer identity 12(g-1) = mu - 3*nu2 - 4*nu3 - 6*nuInf.  The curve only
depends on <H, -I>, and all counts are taken there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .numtheory import euler_phi, prime_factors
from .sl2n import (
    ENUMERATION_CAP,
    CapExceeded,
    Mat,
    SubgroupImage,
    closure,
    enumerate_group,
    group_order,
    identity,
    iter_group_raw,
    mat_inv,
    mat_mul,
    mat_neg,
    minus_identity,
    pm_elements,
)


class SubgroupKind(str, enum.Enum):
    GAMMA0 = "gamma0"       # upper triangular mod N
    GAMMA1 = "gamma1"       # upper triangular with unit diagonal entries = 1
    PRINCIPAL = "gamma"     # the trivial image (kernel of reduction)
    FULL = "full"           # all of SL2(Z/N)


class Verdict(str, enum.Enum):
    MAIN_DIRECT = "MainDirect"          # the subgroup's curve has >= 3 cusps
    MAIN_VIA_TILDE = "MainViaTilde"     # the elliptic-stabilizer subgroup's curve does
    INAPPLICABLE = "Inapplicable"       # neither curve has 3 cusps


@dataclass(frozen=True)
class CurveInvariants:
    """Index mu (in the +-1 quotient), cusp count, elliptic counts, genus."""

    mu: int
    nu_inf: int
    nu2: int
    nu3: int
    genus: int

    def __post_init__(self) -> None:
        if self.mu != 12 * (self.genus - 1) + 3 * self.nu2 + 4 * self.nu3 + 6 * self.nu_inf:
            raise ValueError(f"inconsistent invariants: {self!r}")
        if self.nu_inf < 1 or self.genus < 0:
            raise ValueError(f"impossible invariants: {self!r}")


@dataclass(frozen=True)
class EllipticData:
    """Coset representatives of the elliptic points over j=1728 and j=0, and
    the stabilizer generators found inside <H, -I> (sign as found)."""

    order2_cosets: tuple
    order3_cosets: tuple
    stabilizer_generators: tuple

    @property
    def nu2(self) -> int:
        return len(self.order2_cosets)

    @property
    def nu3(self) -> int:
        return len(self.order3_cosets)


@dataclass(frozen=True)
class Applicability:
    verdict: Verdict
    tilde_image: SubgroupImage
    tilde_invariants: CurveInvariants
    sufficient_criterion_holds: bool


@lru_cache(maxsize=None)
def standard_subgroup(kind: SubgroupKind | str, n: int,
                      cap: int = ENUMERATION_CAP) -> SubgroupImage:
    """The image of a classical family at level n."""
    kind = SubgroupKind(kind)
    if n < 2:
        raise ValueError(f"level must be >= 2, got {n}")
    if kind is SubgroupKind.PRINCIPAL:
        return closure(n, [], cap)
    if kind is SubgroupKind.GAMMA1:
        if n > cap:
            raise CapExceeded(f"subgroup order {n} exceeds the cap {cap}")
        t = Mat(n, 1, 1, 0, 1)
        elems = [Mat(n, 1, b, 0, 1) for b in range(n)]
        return SubgroupImage.from_elements(n, elems, [t])
    if kind is SubgroupKind.GAMMA0:
        if n * euler_phi(n) > cap:
            raise CapExceeded(
                f"subgroup order {n * euler_phi(n)} exceeds the cap {cap}")
        elems = []
        for a in range(1, n):
            if gcd(a, n) != 1:
                continue
            ainv = pow(a, -1, n)
            elems.extend(Mat(n, a, b, 0, ainv) for b in range(n))
        return SubgroupImage.from_elements(n, elems)
    # FULL
    s = Mat(n, 0, n - 1, 1, 0)
    t = Mat(n, 1, 1, 0, 1)
    return SubgroupImage.from_elements(n, enumerate_group(n, cap), [s, t])


def cusp_count(H: SubgroupImage, cap: int = ENUMERATION_CAP) -> int:
    """Orbits of <H, -I> on column vectors (a; c) with gcd(a, c, N) = 1."""
    n = H.level
    if n * n > cap:
        raise CapExceeded(f"vector sweep size {n * n} exceeds the cap {cap}")
    action = list(H.generators) + [minus_identity(n)]
    seen: set[tuple[int, int]] = set()
    count = 0
    for a0 in range(n):
        for c0 in range(n):
            if gcd(gcd(a0, c0), n) != 1 or (a0, c0) in seen:
                continue
            count += 1
            stack = [(a0, c0)]
            seen.add((a0, c0))
            while stack:
                a, c = stack.pop()
                for m in action:
                    w = ((m.a * a + m.b * c) % n, (m.c * a + m.d * c) % n)
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
    return count


def _pm_tuple_set(H: SubgroupImage) -> frozenset:
    return frozenset((m.a, m.b, m.c, m.d) for m in pm_elements(H))


def _signed_member(n: int, conj: tuple, helems4: frozenset) -> Mat:
    """The conjugate as it actually sits inside H (or -conj when only that is)."""
    if conj in helems4:
        return Mat(n, *conj)
    neg = tuple((n - x) % n for x in conj)
    if neg in helems4:
        return Mat(n, *neg)
    raise AssertionError("internal: conjugate not found in +-H")


def _is_new_coset(g: Mat, reps: list, hpm4: frozenset) -> bool:
    for rep in reps:
        prod = mat_mul(g, mat_inv(rep))
        if (prod.a, prod.b, prod.c, prod.d) in hpm4:
            return False
    return True


@lru_cache(maxsize=None)
def elliptic_counts(H: SubgroupImage, cap: int = ENUMERATION_CAP) -> EllipticData:
    """Scan all of SL2(Z/N): the coset of g is elliptic over j=1728 when
    g s g^-1 lands in <H, -I>, and over j=0 when g t g^-1 does.  Counts come
    out as exact multiples of |<H, -I>|."""
    n = H.level
    order = group_order(n)
    if order > cap:
        raise CapExceeded(f"|SL2(Z/{n})| = {order} exceeds the cap {cap}")
    helems4 = frozenset((m.a, m.b, m.c, m.d) for m in H.elements)
    hpm4 = _pm_tuple_set(H)
    hits2 = hits3 = 0
    reps2: list[Mat] = []
    reps3: list[Mat] = []
    stab: list[Mat] = []
    for a, b, c, d in iter_group_raw(n):
        e1 = (a * c + b * d) % n
        sconj = (e1, (-(a * a + b * b)) % n, (c * c + d * d) % n, (n - e1) % n)
        if sconj in hpm4:
            hits2 += 1
            g = Mat(n, a, b, c, d)
            if _is_new_coset(g, reps2, hpm4):
                reps2.append(g)
                stab.append(_signed_member(n, sconj, helems4))
        f1 = (b * d + a * c + b * c) % n
        tconj = (f1, (-(a * a + a * b + b * b)) % n,
                 (c * c + c * d + d * d) % n, (-(b * d + a * c + a * d)) % n)
        if tconj in hpm4:
            hits3 += 1
            g = Mat(n, a, b, c, d)
            if _is_new_coset(g, reps3, hpm4):
                reps3.append(g)
                stab.append(_signed_member(n, tconj, helems4))
    pm_size = len(hpm4)
    nu2, r2 = divmod(hits2, pm_size)
    nu3, r3 = divmod(hits3, pm_size)
    if r2 or r3:
        raise AssertionError("internal: elliptic hit count is not a multiple of |<H,-I>|")
    if len(reps2) != nu2 or len(reps3) != nu3:
        raise AssertionError("internal: coset representative count mismatch")
    return EllipticData(tuple(reps2), tuple(reps3), tuple(stab))


def psl_index(H: SubgroupImage) -> int:
    """mu: the index of the +-1 image of H in the +-1 quotient of SL2(Z/N)."""
    mu, rem = divmod(group_order(H.level), len(pm_elements(H)))
    if rem:
        raise AssertionError("internal: subgroup order does not divide the group order")
    return mu


@lru_cache(maxsize=None)
def curve_invariants(H: SubgroupImage, cap: int = ENUMERATION_CAP) -> CurveInvariants:
    mu = psl_index(H)
    nu_inf = cusp_count(H, cap)
    ell = elliptic_counts(H, cap)
    g12, rem = divmod(12 + mu - 3 * ell.nu2 - 4 * ell.nu3 - 6 * nu_inf, 12)
    if rem:
        raise AssertionError("internal: genus formula did not give an integer")
    return CurveInvariants(mu, nu_inf, ell.nu2, ell.nu3, g12)


def genus(H: SubgroupImage, cap: int = ENUMERATION_CAP) -> int:
    return curve_invariants(H, cap).genus


@lru_cache(maxsize=None)
def tilde_subgroup(H: SubgroupImage, cap: int = ENUMERATION_CAP) -> SubgroupImage:
    """The image generated by the elliptic stabilizer generators of H, with
    -I adjoined when H contains it and there is something to adjoin it to.
    No elliptic cosets means the trivial image."""
    ell = elliptic_counts(H, cap)
    gens = list(ell.stabilizer_generators)
    if gens and H.contains_minus_i:
        gens.append(minus_identity(H.level))
    return closure(H.level, gens, cap)


def forces_three_cusps(G: SubgroupImage) -> bool:
    """Sufficient order test: 4|G| < N^2 prod_{q|N}(1 - q^-2) forces the curve
    of G to have at least three cusps (each +-G orbit has at most 2|G| of the
    N^2 prod (1 - q^-2) unimodular vectors)."""
    n = G.level
    rad = 1
    for q in prime_factors(n):
        rad *= q
    rhs = (n // rad) ** 2
    for q in prime_factors(n):
        rhs *= q * q - 1
    return 4 * len(G.elements) < rhs


def applicability(H: SubgroupImage, cap: int = ENUMERATION_CAP) -> Applicability:
    """Which bound route applies: the subgroup's own curve having >= 3 cusps,
    the elliptic-stabilizer subgroup's curve having >= 3 cusps, or neither."""
    nu_h = cusp_count(H, cap)
    tilde = tilde_subgroup(H, cap)
    tinv = curve_invariants(tilde, cap)
    crit = forces_three_cusps(tilde)
    if nu_h >= 3:
        verdict = Verdict.MAIN_DIRECT
    elif tinv.nu_inf >= 3:
        verdict = Verdict.MAIN_VIA_TILDE
    else:
        verdict = Verdict.INAPPLICABLE
    return Applicability(verdict, tilde, tinv, crit)


def verify_unramified(H: SubgroupImage, G: SubgroupImage,
                      cap: int = ENUMERATION_CAP) -> bool:
    """True when the covering of curves attached to G inside <H, -I> is
    unramified away from the cusps: every conjugate of s or t that lands in
    <H, -I> must already land in <G, -I>."""
    if H.level != G.level:
        raise ValueError("subgroups must share a level")
    n = H.level
    order = group_order(n)
    if order > cap:
        raise CapExceeded(f"|SL2(Z/{n})| = {order} exceeds the cap {cap}")
    hpm4 = _pm_tuple_set(H)
    gpm4 = _pm_tuple_set(G)
    if not gpm4 <= hpm4:
        raise ValueError("G is not contained in <H, -I>")
    for a, b, c, d in iter_group_raw(n):
        e1 = (a * c + b * d) % n
        sconj = (e1, (-(a * a + b * b)) % n, (c * c + d * d) % n, (n - e1) % n)
        if sconj in hpm4 and sconj not in gpm4:
            return False
        f1 = (b * d + a * c + b * c) % n
        tconj = (f1, (-(a * a + a * b + b * b)) % n,
                 (c * c + c * d + d * d) % n, (-(b * d + a * c + a * d)) % n)
        if tconj in hpm4 and tconj not in gpm4:
            return False
    return True
