"""The combined verification suite over one groupoid.

``full_report`` enumerates both monoids and runs every registered check,
producing a ``StructureReport``: the structural index sets plus one verdict
per check id.  The ids below are the stable names used in report files and
on the command line (see the README table for what each one verifies):

    P3.2     monoid laws on both sides; the involution is an isomorphism
    P3.3.1   j is a shared idempotent right zero
    P3.3.2   j left zero  <=>  every member fixes every unit (both sides)
    P3.3.3   the intersection is a left ideal of both monoids
    P3.3.4   the ideal generated by j is minimal in both monoids
    P3.3.5   bijective members have their function inverse on the mirror side
    P3.3.6   the only injective idempotent antihomomorphism member is j
    P3.3.7   the only right-zero antihomomorphism member is j
    P3.3.8   antihomomorphism members of the intersection square identically
    L3.7     the translation embedding is injective and turns * into composition
    P3.8     the unit group is the bijective-translation set, cross-checked
    P3.9     subgroupoid-preserving members form subsemigroups
    P3.10    fiber-meeting criterion for membership among intertwining maps
    P3.11    dense-translation submonoids: cancellative, involution-matched
    P4.1     left operator representation (hom, injective, units, dense)
    P4.2     right operator representation (mirror)
    C4.3     the induced mixed right action satisfies its composite law
    CLOSING  principal implies the intersection is exactly {j}

A verdict with ``passed None`` was skipped (reason in the witness field);
skipped checks do not count as failures unless explicitly requested.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .endo import (
    DEFAULT_MONOID_CAP,
    DEFAULT_PRODUCT_CAP,
    MonoidTable,
    enumerate_monoid,
    gfun,
    involution_star,
    law_scan,
    star,
    star_prime,
)
from .errors import ShapeError
from .groupoid import Groupoid, is_principal, morphism_classify
from .operators import representation_audit
from .structure import (
    antihom_classification,
    count_intertwining_maps,
    dense_submonoid,
    group_of_units,
    ideal_check,
    intersection_analysis,
    iter_intertwining_maps,
    j_ideal,
    j_index,
    left_zero_criterion,
    range_domain_criterion,
    special_elements,
    subgroupoid_semigroup,
    units_crosscheck,
    validate_subgroupoid,
)

CHECK_IDS = (
    "P3.2",
    "P3.3.1", "P3.3.2", "P3.3.3", "P3.3.4",
    "P3.3.5", "P3.3.6", "P3.3.7", "P3.3.8",
    "L3.7",
    "P3.8", "P3.9", "P3.10", "P3.11",
    "P4.1", "P4.2", "C4.3",
    "CLOSING",
)

SUBGROUPOID_SWEEP_LIMIT = 12   # enumerate all subsets up to this groupoid size
INTERTWINING_SWEEP_CAP = 1_000_000


@dataclass(frozen=True)
class Verdict:
    passed: bool | None
    witness: tuple | str | None = None

    def as_dict(self):
        out = {"pass": self.passed}
        if self.witness is not None:
            out["witness"] = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return out


@dataclass
class StructureReport:
    groupoid: Groupoid
    monoid_size: int
    idempotent_indices: tuple[int, ...]
    right_zero_indices: tuple[int, ...]
    left_zero_indices: tuple[int, ...]
    unit_group_indices: tuple[int, ...]
    unit_group_inverse: dict[int, int]
    tg_indices: tuple[int, ...]
    j_ideal_indices: tuple[int, ...]
    intersection_indices: tuple[int, ...]
    verdicts: dict[str, Verdict]

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values() if v.passed is not None)

    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if v.passed is False]

    def to_dict(self) -> dict:
        return {
            "groupoid": self.groupoid.name,
            "size": self.groupoid.size,
            "monoid_size": self.monoid_size,
            "checks": {k: v.as_dict() for k, v in self.verdicts.items()},
            "structure": {
                "idempotents": list(self.idempotent_indices),
                "right_zeros": list(self.right_zero_indices),
                "left_zeros": list(self.left_zero_indices),
                "unit_group": {
                    "indices": list(self.unit_group_indices),
                    "inverse": {str(k): v for k, v in self.unit_group_inverse.items()},
                },
                "tg": list(self.tg_indices),
                "j_ideal": list(self.j_ideal_indices),
                "intersection": list(self.intersection_indices),
            },
        }


class _Ctx:
    """Lazily shared intermediates between checks."""

    def __init__(self, g: Groupoid, cap, product_cap):
        self.g = g
        self.ts = enumerate_monoid(g, "S", cap, product_cap)
        self.tsp = enumerate_monoid(g, "S'", cap, product_cap)
        self.sigma = np.array(
            [self.tsp.index[involution_star(f).map] for f in self.ts.elements],
            dtype=np.int64,
        )
        self.h1 = group_of_units(g, self.ts)
        self.h1p = group_of_units(g, self.tsp)
        self.tg = dense_submonoid(g, self.ts)
        self.tgp = dense_submonoid(g, self.tsp)
        self.inter = intersection_analysis(g, self.ts)
        self._rep = None

    @property
    def rep_verdicts(self):
        if self._rep is None:
            self._rep = representation_audit(
                self.ts, self.tsp,
                self.h1.indices, self.tg.indices,
                self.h1p.indices, self.tgp.indices,
            )
        return self._rep


def _check_p32(ctx: _Ctx) -> Verdict:
    for side in ("S", "S'"):
        scan = law_scan(ctx.g, side)
        if not (scan.identity_ok and scan.closure_ok and scan.assoc_ok):
            return Verdict(False, (side, scan.witness))
    # involution: bijective and converts * into the mirror product
    if len(set(ctx.sigma.tolist())) != len(ctx.ts):
        return Verdict(False, ("involution not bijective",))
    lhs = ctx.sigma[ctx.ts.op]
    rhs = ctx.tsp.op[ctx.sigma[:, None], ctx.sigma[None, :]]
    if not np.array_equal(lhs, rhs):
        i, j = (int(v) for v in np.argwhere(lhs != rhs)[0])
        return Verdict(False, (i, j))
    for i, f in enumerate(ctx.ts.elements):
        if involution_star(involution_star(f)).map != f.map:
            return Verdict(False, (i, "involution not involutive"))
    if int(ctx.sigma[ctx.ts.identity]) != ctx.tsp.identity:
        return Verdict(False, ("identity not preserved",))
    return Verdict(True)


def _check_p331(ctx: _Ctx) -> Verdict:
    for t in (ctx.ts, ctx.tsp):
        j = j_index(t)
        spec = special_elements(t)
        if j not in spec.idempotents or j not in spec.right_zeros:
            return Verdict(False, (t.side, j))
    return Verdict(True)


def _check_p332(ctx: _Ctx) -> Verdict:
    for t in (ctx.ts, ctx.tsp):
        v = left_zero_criterion(ctx.g, t)
        if not v.equivalence_holds:
            return Verdict(False, (t.side, v.witness))
    return Verdict(True)


def _check_p333(ctx: _Ctx) -> Verdict:
    inter = ctx.inter.indices
    if not ideal_check(ctx.ts, inter).left_ideal:
        return Verdict(False, ("S",))
    mirror = tuple(sorted(int(ctx.sigma[i]) for i in inter))
    if not ideal_check(ctx.tsp, mirror).left_ideal:
        return Verdict(False, ("S'",))
    return Verdict(True)


def _check_p334(ctx: _Ctx) -> Verdict:
    for t in (ctx.ts, ctx.tsp):
        verdict = ideal_check(t, j_ideal(t))
        if not (verdict.ideal and verdict.minimal):
            return Verdict(False, (t.side,))
    return Verdict(True)


def _antihoms(ctx: _Ctx):
    return antihom_classification(ctx.g, ctx.ts)


def _check_p335(ctx: _Ctx) -> Verdict:
    v = _antihoms(ctx)
    return Verdict(v.bijective_inverses_in_mirror, v.witness)


def _check_p336(ctx: _Ctx) -> Verdict:
    v = _antihoms(ctx)
    return Verdict(v.only_j_rule_six, v.injective_idempotent_antihoms)


def _check_p337(ctx: _Ctx) -> Verdict:
    v = _antihoms(ctx)
    return Verdict(v.only_j_rule_seven, v.right_zero_antihoms)


def _check_p338(ctx: _Ctx) -> Verdict:
    for i in ctx.inter.indices:
        f = ctx.ts.elements[i]
        if not morphism_classify(ctx.g, ctx.g, f.map).antihomomorphism:
            continue
        if star(f, f).map != star_prime(f, f).map:
            return Verdict(False, (i,))
    return Verdict(True)


def _check_l37(ctx: _Ctx) -> Verdict:
    from .endo import left_translation

    lm = np.array([left_translation(f) for f in ctx.ts.elements], dtype=np.int64)
    if len({tuple(map(int, row)) for row in lm}) != len(ctx.ts):
        return Verdict(False, ("not injective",))
    for i in range(len(ctx.ts)):
        lhs = lm[ctx.ts.op[i]]
        rhs = lm[:, lm[i]]
        if not np.array_equal(lhs, rhs):
            j = int(np.argwhere((lhs != rhs).any(axis=1))[0][0])
            return Verdict(False, (i, j))
    return Verdict(True)


def _check_p38(ctx: _Ctx) -> Verdict:
    for t, h1 in ((ctx.ts, ctx.h1), (ctx.tsp, ctx.h1p)):
        if not h1.verified:
            return Verdict(False, (t.side, h1.witness))
        cross = units_crosscheck(t, h1)
        if not cross.agrees:
            return Verdict(False, (t.side, cross.witness))
    return Verdict(True)


def _subgroupoids(g: Groupoid):
    if g.size <= SUBGROUPOID_SWEEP_LIMIT:
        found = []
        for mask in range(1, 1 << g.size):
            subset = [x for x in range(g.size) if mask >> x & 1]
            try:
                found.append(validate_subgroupoid(g, subset))
            except Exception:
                continue
        return found, "all-subsets"
    notable = [tuple(g.units), tuple(g.elements())]
    return notable, "units-and-full"


def _check_p39(ctx: _Ctx) -> Verdict:
    subs, mode = _subgroupoids(ctx.g)
    for sub in subs:
        repnt = subgroupoid_semigroup(ctx.g, sub, ctx.ts)
        if not (repnt.closed and repnt.translation_agrees):
            return Verdict(False, (sub, repnt.witness))
    return Verdict(True, mode)


def _check_p310(ctx: _Ctx) -> Verdict:
    count = count_intertwining_maps(ctx.g)
    if count > INTERTWINING_SWEEP_CAP:
        return Verdict(None, f"skipped: {count} intertwining maps exceed the sweep cap")
    for phi in iter_intertwining_maps(ctx.g):
        v = range_domain_criterion(ctx.g, phi)
        if not v.equivalence_holds:
            return Verdict(False, tuple(phi))
        fixes = all(phi[u] == u for u in ctx.g.units)
        if v.in_sg != fixes:
            return Verdict(False, tuple(phi))
    return Verdict(True)


def _check_p311(ctx: _Ctx) -> Verdict:
    for t, tg, h1 in ((ctx.ts, ctx.tg, ctx.h1), (ctx.tsp, ctx.tgp, ctx.h1p)):
        ok = (tg.closed and tg.contains_identity and tg.left_cancellative
              and tg.involution_matches and tg.indices == h1.indices)
        if not ok:
            return Verdict(False, (t.side, tg.witness))
    return Verdict(True)


def _check_p41(ctx: _Ctx) -> Verdict:
    verdicts = ctx.rep_verdicts
    for key in ("left_hom", "left_injective", "left_units_invertible", "left_dense_full_rank"):
        if not verdicts[key].passed:
            return Verdict(False, (key, verdicts[key].witness))
    return Verdict(True)


def _check_p42(ctx: _Ctx) -> Verdict:
    verdicts = ctx.rep_verdicts
    for key in ("right_hom", "right_injective", "right_units_invertible", "right_dense_full_rank"):
        if not verdicts[key].passed:
            return Verdict(False, (key, verdicts[key].witness))
    return Verdict(True)


def _check_c43(ctx: _Ctx) -> Verdict:
    v = ctx.rep_verdicts["mixed_right_action"]
    return Verdict(v.passed, v.witness)


def _check_closing(ctx: _Ctx) -> Verdict:
    v = ctx.inter
    return Verdict(v.forward_implication_holds,
                   ("principal", v.principal, "only_j", v.equals_j_only))


_CHECKS = {
    "P3.2": _check_p32,
    "P3.3.1": _check_p331,
    "P3.3.2": _check_p332,
    "P3.3.3": _check_p333,
    "P3.3.4": _check_p334,
    "P3.3.5": _check_p335,
    "P3.3.6": _check_p336,
    "P3.3.7": _check_p337,
    "P3.3.8": _check_p338,
    "L3.7": _check_l37,
    "P3.8": _check_p38,
    "P3.9": _check_p39,
    "P3.10": _check_p310,
    "P3.11": _check_p311,
    "P4.1": _check_p41,
    "P4.2": _check_p42,
    "C4.3": _check_c43,
    "CLOSING": _check_closing,
}

assert tuple(_CHECKS) == CHECK_IDS


def full_report(
    g: Groupoid,
    checks: tuple[str, ...] | None = None,
    cap: int = DEFAULT_MONOID_CAP,
    product_cap: int = DEFAULT_PRODUCT_CAP,
) -> StructureReport:
    """Run the selected checks (default: all) and assemble the report."""
    selected = CHECK_IDS if checks is None else tuple(checks)
    unknown = [c for c in selected if c not in _CHECKS]
    if unknown:
        raise ShapeError(f"unknown check ids: {unknown}")
    ctx = _Ctx(g, cap, product_cap)
    verdicts = {cid: _CHECKS[cid](ctx) for cid in CHECK_IDS if cid in selected}
    spec = special_elements(ctx.ts)
    return StructureReport(
        groupoid=g,
        monoid_size=len(ctx.ts),
        idempotent_indices=spec.idempotents,
        right_zero_indices=spec.right_zeros,
        left_zero_indices=spec.left_zeros,
        unit_group_indices=ctx.h1.indices,
        unit_group_inverse=ctx.h1.inverse,
        tg_indices=ctx.tg.indices,
        j_ideal_indices=j_ideal(ctx.ts),
        intersection_indices=ctx.inter.indices,
        verdicts=verdicts,
    )
