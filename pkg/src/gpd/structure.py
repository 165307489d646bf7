"""Semigroup-theoretic structure of the endomorphism monoids.

All operations take an enumerated ``MonoidTable`` and scan it exhaustively:
idempotents and one-sided zeros, ideals with the generated-ideal minimality
criterion, the group of units characterised through bijective left
translations (cross-checked against the set of Cayley-invertible elements),
the dense-translation submonoid, subsemigroups attached to subgroupoids,
and the classification of antihomomorphism members.  Verdicts carry
witnesses so a failure is reproducible from the report alone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EmptySubset, MembershipError, NotASubgroupoid, PreconditionFailed, ShapeError
from .groupoid import UNDEFINED, Groupoid, is_principal, morphism_classify
from .endo import (
    GFun,
    MonoidTable,
    gfun,
    involution_star,
    iter_monoid_maps,
    left_translation,
    membership,
    right_translation,
    star,
)


def j_index(t: MonoidTable) -> int:
    return t.index[tuple(t.groupoid.inverse)]


@dataclass(frozen=True)
class SpecialElements:
    idempotents: tuple[int, ...]
    right_zeros: tuple[int, ...]
    left_zeros: tuple[int, ...]


def special_elements(t: MonoidTable) -> SpecialElements:
    op = t.op
    n = len(t)
    diag = op[np.arange(n), np.arange(n)]
    idem = np.flatnonzero(diag == np.arange(n))
    right = np.flatnonzero((op == np.arange(n)[None, :]).all(axis=0))
    left = np.flatnonzero((op == np.arange(n)[:, None]).all(axis=1))
    return SpecialElements(tuple(map(int, idem)), tuple(map(int, right)), tuple(map(int, left)))


@dataclass(frozen=True)
class LeftZeroVerdict:
    j_is_left_zero: bool
    all_maps_fix_units: bool
    equivalence_holds: bool
    witness: tuple | None


def left_zero_criterion(g: Groupoid, t: MonoidTable) -> LeftZeroVerdict:
    """j is a left zero exactly when every member fixes every unit; both
    sides of the equivalence are computed independently."""
    j = j_index(t)
    j_left = bool((t.op[j] == j).all())
    witness = None
    fix = True
    for i, f in enumerate(t.elements):
        for u in g.units:
            if f.map[u] != u:
                fix = False
                witness = (i, u)
                break
        if not fix:
            break
    return LeftZeroVerdict(j_left, fix, j_left == fix, witness)


@dataclass(frozen=True)
class IdealVerdict:
    left_ideal: bool
    right_ideal: bool
    ideal: bool
    minimal_left: bool
    minimal_right: bool
    minimal: bool


def ideal_check(t: MonoidTable, subset: Sequence[int]) -> IdealVerdict:
    """Ideal membership by table scan; minimality via generated ideals.

    A left (right, two-sided) ideal T is minimal exactly when the ideal
    generated by each of its elements is all of T: S x = T, x S = T, or
    S x S = T for every x in T.  S is a monoid here, so the generated
    ideals automatically contain x.
    """
    sub = sorted(set(int(i) for i in subset))
    if not sub:
        raise EmptySubset("ideal subset must be nonempty")
    subset_set = frozenset(sub)
    op = t.op
    arr = np.array(sub)
    left = bool(np.isin(op[:, arr], arr).all())
    right = bool(np.isin(op[arr, :], arr).all())
    both = left and right

    def gen_left(x):
        return frozenset(int(v) for v in op[:, x])

    def gen_right(x):
        return frozenset(int(v) for v in op[x, :])

    def gen_two(x):
        return frozenset(int(v) for v in op[:, op[x, :]].ravel())

    minimal_left = left and all(gen_left(x) == subset_set for x in sub)
    minimal_right = right and all(gen_right(x) == subset_set for x in sub)
    minimal = both and all(gen_two(x) == subset_set for x in sub)
    return IdealVerdict(left, right, both, minimal_left, minimal_right, minimal)


def j_ideal(t: MonoidTable) -> tuple[int, ...]:
    """The two-sided ideal j S (or j S' on the mirror side)."""
    return tuple(sorted(set(int(v) for v in t.op[j_index(t)])))


@dataclass(frozen=True)
class UnitGroup:
    indices: tuple[int, ...]
    inverse: dict[int, int]
    verified: bool
    witness: tuple | None


def group_of_units(g: Groupoid, t: MonoidTable) -> UnitGroup:
    """H(1) = members whose left translation is a bijection of G.

    For each member the inverse is constructed pointwise from the
    translation: psi(y) = (phi(x))^-1 where y = phi(x) x, then the group
    laws phi psi = psi phi = identity and closure are verified against the
    table.  Mirrored via right translations on side S'.
    """
    n = g.size
    indices = []
    inverse = {}
    witness = None
    verified = True
    for i, f in enumerate(t.elements):
        trans = left_translation(f) if t.side == "S" else right_translation(f)
        if len(set(trans)) != n:
            continue
        indices.append(i)
        psi = [0] * n
        for x in g.elements():
            y = trans[x]
            psi[y] = g.inverse[f.map[x]]
        k = t.index.get(tuple(psi))
        if k is None:
            verified, witness = False, (i, "inverse not a member")
            continue
        inverse[i] = k
        if t.mul(i, k) != t.identity or t.mul(k, i) != t.identity:
            verified, witness = False, (i, k)
    idx = np.array(indices)
    if len(idx) and not np.isin(t.op[np.ix_(idx, idx)], idx).all():
        verified, witness = False, ("closure",)
    if t.identity not in indices:
        verified, witness = False, ("identity missing",)
    return UnitGroup(tuple(indices), inverse, verified, witness)


@dataclass(frozen=True)
class CrossCheck:
    agrees: bool
    cayley_invertible: tuple[int, ...]
    witness: tuple | None


def units_crosscheck(t: MonoidTable, h1: UnitGroup) -> CrossCheck:
    """Independently compute the two-sided-invertible set from the table and
    compare it with H(1); this is the maximality claim at testable level."""
    e = t.identity
    m = t.op == e
    inv_set = tuple(int(i) for i in np.flatnonzero((m & m.T).any(axis=1)))
    agrees = inv_set == tuple(sorted(h1.indices))
    witness = None
    if not agrees:
        witness = tuple(sorted(set(inv_set) ^ set(h1.indices)))
    return CrossCheck(agrees, inv_set, witness)


@dataclass(frozen=True)
class DenseSubmonoid:
    indices: tuple[int, ...]
    closed: bool
    contains_identity: bool
    left_cancellative: bool
    involution_matches: bool
    witness: tuple | None


def dense_submonoid(g: Groupoid, t: MonoidTable) -> DenseSubmonoid:
    """Members whose translation image is dense, i.e. all of G at finite
    discrete scale.  Verifies closure, the identity, exhaustive left
    cancellativity, and that the involution carries the set onto its mirror
    (computed independently on the other side)."""
    n = g.size
    indices = []
    for i, f in enumerate(t.elements):
        trans = left_translation(f) if t.side == "S" else right_translation(f)
        if len(set(trans)) == n:
            indices.append(i)
    idx = np.array(indices)
    closed = bool(len(idx) == 0 or np.isin(t.op[np.ix_(idx, idx)], idx).all())
    contains_identity = t.identity in indices

    cancel = True
    witness = None
    for i in indices:
        row = t.op[i]
        if len(set(int(v) for v in row)) != len(t):
            cancel = False
            dup = {}
            for k, v in enumerate(row):
                if int(v) in dup:
                    witness = (i, dup[int(v)], k)
                    break
                dup[int(v)] = k
            break

    mirror_side = "S'" if t.side == "S" else "S"
    mirror = set()
    for m in iter_monoid_maps(g, mirror_side):
        f = gfun(g, m)
        trans = right_translation(f) if mirror_side == "S'" else left_translation(f)
        if len(set(trans)) == n:
            mirror.add(m)
    image = {involution_star(t.elements[i]).map for i in indices}
    involution_matches = image == mirror

    return DenseSubmonoid(tuple(indices), closed, contains_identity, cancel,
                          involution_matches, witness)


def validate_subgroupoid(g: Groupoid, a: Sequence[int]) -> tuple[int, ...]:
    """A nonempty id set closed under inverses and defined products."""
    sub = sorted(set(int(x) for x in a))
    if not sub:
        raise NotASubgroupoid("empty set")
    for x in sub:
        if not 0 <= x < g.size:
            raise ShapeError(f"id {x} out of range")
        if g.inverse[x] not in sub:
            raise NotASubgroupoid((x, "inverse"))
    for x in sub:
        for y in sub:
            v = g.product[x][y]
            if v != UNDEFINED and v not in sub:
                raise NotASubgroupoid((x, y))
    return tuple(sub)


@dataclass(frozen=True)
class SubgroupoidSemigroup:
    subgroupoid: tuple[int, ...]
    indices: tuple[int, ...]
    closed: bool
    translation_agrees: bool
    witness: tuple | None


def subgroupoid_semigroup(g: Groupoid, a: Sequence[int], t: MonoidTable) -> SubgroupoidSemigroup:
    """Members mapping a subgroupoid A into itself form a subsemigroup.

    Also verifies the auxiliary fact the closure argument rests on: a member
    preserves A exactly when its translation map does.
    """
    sub = validate_subgroupoid(g, a)
    sub_set = set(sub)
    indices = [i for i, f in enumerate(t.elements) if all(f.map[x] in sub_set for x in sub)]
    idx = np.array(indices)
    closed = bool(len(idx) == 0 or np.isin(t.op[np.ix_(idx, idx)], idx).all())

    agrees = True
    witness = None
    for i, f in enumerate(t.elements):
        trans = left_translation(f) if t.side == "S" else right_translation(f)
        in_ia = all(f.map[x] in sub_set for x in sub)
        trans_in_ia = all(trans[x] in sub_set for x in sub)
        if in_ia != trans_in_ia:
            agrees = False
            witness = (i,)
            break
    return SubgroupoidSemigroup(sub, tuple(indices), closed, agrees, witness)


@dataclass(frozen=True)
class RangeDomainVerdict:
    in_sg: bool
    hits_every_unit: bool
    equivalence_holds: bool


def range_domain_criterion(g: Groupoid, phi: Sequence[int]) -> RangeDomainVerdict:
    """For maps intertwining d and r (d(phi(x)) = phi(r(x))): membership in
    side S is equivalent to the image of every range-fiber meeting the
    matching domain-fiber."""
    if len(phi) != g.size or any(not 0 <= v < g.size for v in phi):
        raise ShapeError("phi must be a total self-map")
    for x in g.elements():
        if g.domain_map[phi[x]] != phi[g.range_map[x]]:
            raise PreconditionFailed(f"d(phi({x})) != phi(r({x}))")
    in_sg = membership(g, phi).in_sg
    hits = True
    for u in g.units:
        image = {phi[x] for x in g.r_fibers[u]}
        if not image & set(g.d_fibers[u]):
            hits = False
            break
    return RangeDomainVerdict(in_sg, hits, in_sg == hits)


def iter_intertwining_maps(g: Groupoid):
    """All total maps with d(phi(x)) = phi(r(x)), by direct construction.

    Such a map sends units to units; choosing the unit assignment first
    forces each remaining value into a single domain-fiber.
    """
    units = g.units
    non_units = [x for x in g.elements() if not g.is_unit(x)]
    for sigma in itertools.product(units, repeat=len(units)):
        assign = dict(zip(units, sigma))
        pools = [g.d_fibers[assign[g.range_map[x]]] for x in non_units]
        for choice in itertools.product(*pools):
            phi = [0] * g.size
            for u in units:
                phi[u] = assign[u]
            for x, v in zip(non_units, choice):
                phi[x] = v
            yield tuple(phi)


def count_intertwining_maps(g: Groupoid) -> int:
    units = g.units
    non_units = [x for x in g.elements() if not g.is_unit(x)]
    total = 0
    for sigma in itertools.product(units, repeat=len(units)):
        assign = dict(zip(units, sigma))
        prod = 1
        for x in non_units:
            prod *= len(g.d_fibers[assign[g.range_map[x]]])
        total += prod
    return total


@dataclass(frozen=True)
class AntihomVerdicts:
    injective_idempotent_antihoms: tuple[int, ...]
    right_zero_antihoms: tuple[int, ...]
    only_j_rule_six: bool
    only_j_rule_seven: bool
    bijective_inverses_in_mirror: bool
    injective_idempotent_non_antihoms: tuple[int, ...]
    witness: tuple | None


def antihom_classification(g: Groupoid, t: MonoidTable) -> AntihomVerdicts:
    """Classify members that are antihomomorphisms of the base groupoid.

    Checks that j is the only injective idempotent antihomomorphism and the
    only right-zero antihomomorphism, and that the function inverse of each
    bijective member lands on the mirror side.  Injective idempotents that
    are not antihomomorphisms are recorded separately.
    """
    j = j_index(t)
    spec = special_elements(t)
    idem = set(spec.idempotents)
    rzero = set(spec.right_zeros)
    anti_flags = {}
    for i, f in enumerate(t.elements):
        anti_flags[i] = morphism_classify(g, g, f.map).antihomomorphism

    rule6 = tuple(sorted(i for i in idem
                         if len(set(t.elements[i].map)) == g.size and anti_flags[i]))
    rule7 = tuple(sorted(i for i in rzero if anti_flags[i]))
    extra = tuple(sorted(i for i in idem
                         if len(set(t.elements[i].map)) == g.size and not anti_flags[i]))

    mirror_ok = True
    witness = None
    for i, f in enumerate(t.elements):
        if len(set(f.map)) != g.size:
            continue
        back = [0] * g.size
        for x, v in enumerate(f.map):
            back[v] = x
        flags = membership(g, back)
        ok = flags.in_spg if t.side == "S" else flags.in_sg
        if not ok:
            mirror_ok = False
            witness = (i,)
            break

    return AntihomVerdicts(
        injective_idempotent_antihoms=rule6,
        right_zero_antihoms=rule7,
        only_j_rule_six=rule6 == (j,),
        only_j_rule_seven=rule7 == (j,),
        bijective_inverses_in_mirror=mirror_ok,
        injective_idempotent_non_antihoms=extra,
        witness=witness,
    )


@dataclass(frozen=True)
class IntersectionReport:
    indices: tuple[int, ...]
    equals_j_only: bool
    principal: bool
    forward_implication_holds: bool


def intersection_analysis(g: Groupoid, t: MonoidTable) -> IntersectionReport:
    """S and S' intersected, as indices of the given table, together with
    the principality flag and the one-way implication between them."""
    if t.side == "S":
        inter = tuple(i for i, f in enumerate(t.elements) if f.in_spg)
    else:
        inter = tuple(i for i, f in enumerate(t.elements) if f.in_sg)
    only_j = inter == (j_index(t),)
    principal = is_principal(g)
    forward = (not principal) or only_j
    return IntersectionReport(inter, only_j, principal, forward)
