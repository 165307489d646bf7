"""Isomorphism machinery, the small-groupoid census, and the converse probe.

The induced map on endomorphism monoids: a groupoid isomorphism psi sends a
member f to psi . f . psi^-1, and this assignment preserves identities and
products and composes functorially; ``monoid_iso_audit`` and
``functoriality_audit`` verify those laws exhaustively at small scale.

``enumerate_groupoids`` finds every groupoid structure on n labeled points
by backtracking: the inverse involution and the range map are chosen first
(they pin down which cells of the product table exist), then products are
filled cell by cell under the cancellation laws, each assignment forcing
its three companions x^-1(xy) = y, (xy)y^-1 = x and (xy)^-1 = y^-1 x^-1.
Completed tables are re-validated from scratch and deduplicated by a
canonical form, so representatives are deterministic.

The probe records, for every census groupoid, whether it is principal and
whether the two monoids meet only in j; a non-principal groupoid whose
intersection is {j} would be a counterexample candidate to the open
converse.  The probe is search evidence over the stated range, nothing
more.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .endo import (
    GFun,
    _Kernel,
    gfun,
    iter_monoid_maps,
    monoid_maps_array,
    predicted_size,
    star,
)
from .errors import CapExceeded, NotAnIsomorphism, ShapeError
from .groupoid import (
    UNDEFINED,
    GroupAction,
    Groupoid,
    is_principal,
    make_groupoid,
    morphism_classify,
    transformation_groupoid,
)

MAX_CENSUS_ORDER = 6
DEFAULT_MONOID_CAP = 1_000_000


# ---------------------------------------------------------------------------
# canonical forms and isomorphisms


def _fingerprints(g: Groupoid) -> list[tuple]:
    """Per-element data preserved by every isomorphism."""
    out = []
    for x in g.elements():
        out.append((
            g.is_unit(x),
            x == g.inverse[x],
            g.range_map[x] == g.domain_map[x],
            len(g.r_fibers[g.range_map[x]]),
            len(g.d_fibers[g.domain_map[x]]),
        ))
    return out


def _block_relabelings(g: Groupoid):
    """All relabelings that send each fingerprint class onto a fixed block
    of new ids (classes ordered by fingerprint); every isomorphism between
    two groupoids respects these blocks, so minimising over them gives a
    form that is equal exactly for isomorphic groupoids."""
    fps = _fingerprints(g)
    classes: dict[tuple, list[int]] = {}
    for x, fp in enumerate(fps):
        classes.setdefault(fp, []).append(x)
    ordered = [classes[key] for key in sorted(classes)]
    starts = []
    pos = 0
    for group in ordered:
        starts.append(pos)
        pos += len(group)
    for arrangement in itertools.product(*[itertools.permutations(grp) for grp in ordered]):
        sigma = [0] * g.size
        for start, perm in zip(starts, arrangement):
            for offset, old in enumerate(perm):
                sigma[old] = start + offset
        yield tuple(sigma)


def _relabel_key(g: Groupoid, sigma) -> tuple:
    n = g.size
    inv = [0] * n
    for x in range(n):
        inv[sigma[x]] = sigma[g.inverse[x]]
    flat = [UNDEFINED] * (n * n)
    for x in range(n):
        row = g.product[x]
        sx = sigma[x]
        for y in range(n):
            v = row[y]
            if v != UNDEFINED:
                flat[sx * n + sigma[y]] = sigma[v]
    return tuple(inv) + tuple(flat)


def canonical_form(g: Groupoid) -> tuple:
    return min(_relabel_key(g, sigma) for sigma in _block_relabelings(g))


def groupoid_from_canonical(key: tuple, size: int, name: str = "") -> Groupoid:
    inv = key[:size]
    flat = key[size:]
    prod = [list(flat[i * size:(i + 1) * size]) for i in range(size)]
    return make_groupoid(size, prod, inv, name)


def isomorphic(g: Groupoid, h: Groupoid) -> bool:
    if g.size != h.size or sorted(_fingerprints(g)) != sorted(_fingerprints(h)):
        return False
    return canonical_form(g) == canonical_form(h)


def _class_preserving_perms(g: Groupoid):
    """Bijections sending each fingerprint class onto itself; every
    automorphism is one of these."""
    fps = _fingerprints(g)
    classes: dict[tuple, list[int]] = {}
    for x, fp in enumerate(fps):
        classes.setdefault(fp, []).append(x)
    groups = list(classes.values())
    for arrangement in itertools.product(*[itertools.permutations(grp) for grp in groups]):
        sigma = [0] * g.size
        for grp, perm in zip(groups, arrangement):
            for old, new in zip(grp, perm):
                sigma[old] = new
        yield tuple(sigma)


def automorphisms(g: Groupoid) -> list[tuple[int, ...]]:
    """All self-isomorphisms, in lexicographic order of their map arrays."""
    base = _relabel_key(g, tuple(range(g.size)))
    out = [sigma for sigma in _class_preserving_perms(g)
           if _relabel_key(g, sigma) == base]
    return sorted(out)


@dataclass(frozen=True)
class Isomorphism:
    src: Groupoid
    dst: Groupoid
    map: tuple[int, ...]
    inverse_map: tuple[int, ...]


def as_isomorphism(g: Groupoid, h: Groupoid, m) -> Isomorphism:
    m = tuple(int(v) for v in m)
    if len(m) != g.size or g.size != h.size:
        raise NotAnIsomorphism("size mismatch")
    rep = morphism_classify(g, h, m)
    if not rep.isomorphism:
        raise NotAnIsomorphism(f"map {m} is not an isomorphism")
    back = [0] * h.size
    for x, v in enumerate(m):
        back[v] = x
    return Isomorphism(g, h, m, tuple(back))


def induced_gfun(iso: Isomorphism, f: GFun) -> GFun:
    """Transport a member along an isomorphism: x -> psi(f(psi^-1(x)))."""
    if f.base != iso.src:
        raise ShapeError("member lives on a different groupoid")
    mapping = tuple(iso.map[f.map[iso.inverse_map[x]]] for x in iso.dst.elements())
    out = gfun(iso.dst, mapping)
    if f.in_sg and not out.in_sg:
        raise NotAnIsomorphism("transport left side S")
    return out


@dataclass(frozen=True)
class FunctorAudit:
    members_transported: bool
    identity_preserved: bool
    products_preserved: bool
    bijective: bool
    witness: tuple | None

    @property
    def passed(self):
        return (self.members_transported and self.identity_preserved
                and self.products_preserved and self.bijective)


def monoid_iso_audit(iso: Isomorphism, cap: int = DEFAULT_MONOID_CAP) -> FunctorAudit:
    """Exhaustively verify that transport along iso is a monoid isomorphism."""
    g, h = iso.src, iso.dst
    pred = predicted_size(g, "S")
    if pred > cap:
        raise CapExceeded(f"monoid size {pred} exceeds cap {cap}", predicted=pred)
    src = [gfun(g, m) for m in iter_monoid_maps(g, "S")]
    images = [induced_gfun(iso, f) for f in src]
    members = all(f.in_sg for f in images)
    target = set(iter_monoid_maps(h, "S"))
    bij = {f.map for f in images} == target and len({f.map for f in images}) == len(images)
    ident = induced_gfun(iso, gfun(g, g.range_map)).map == tuple(h.range_map)
    witness = None
    products = True
    for f1, f2 in itertools.product(range(len(src)), repeat=2):
        lhs = induced_gfun(iso, star(src[f1], src[f2])).map
        rhs = star(images[f1], images[f2]).map
        if lhs != rhs:
            products = False
            witness = (f1, f2)
            break
    return FunctorAudit(members, ident, products, bij, witness)


def functoriality_audit(iso1: Isomorphism, iso2: Isomorphism,
                        cap: int = DEFAULT_MONOID_CAP) -> bool:
    """Transport along a composite equals the composite of transports."""
    if iso1.dst != iso2.src:
        raise NotAnIsomorphism("isomorphisms do not compose")
    comp = as_isomorphism(
        iso1.src, iso2.dst,
        tuple(iso2.map[iso1.map[x]] for x in iso1.src.elements()),
    )
    pred = predicted_size(iso1.src, "S")
    if pred > cap:
        raise CapExceeded(f"monoid size {pred} exceeds cap {cap}", predicted=pred)
    for m in iter_monoid_maps(iso1.src, "S"):
        f = gfun(iso1.src, m)
        if induced_gfun(comp, f).map != induced_gfun(iso2, induced_gfun(iso1, f)).map:
            return False
    return True


# ---------------------------------------------------------------------------
# the embedding attached to a transformation groupoid


@dataclass(frozen=True)
class EmbeddingAudit:
    monoid_size: int
    members: bool
    products_match: bool
    injective: bool
    units_embed: bool
    constant_family_law: bool
    twisted_members_dense: bool
    witness: tuple | None

    @property
    def passed(self):
        return (self.members and self.products_match and self.injective
                and self.units_embed and self.constant_family_law
                and self.twisted_members_dense)


def transformation_embedding_audit(action: GroupAction,
                                   cap: int = DEFAULT_MONOID_CAP) -> EmbeddingAudit:
    """Audit the embedding of the acting group's monoid into the monoid of
    its transformation groupoid.

    A self-map phi of the group T goes to the member
    f_phi(u, t) = (u . phi(t)^-1, phi(t)) of the groupoid U x T.  Verified
    exhaustively: every f_phi is a member, phi -> f_phi is injective and
    turns the product of maps on T into the product on U x T, units go to
    units, the constant maps give a family with f_z1 * f_z2 = f_(z1 z2),
    and the twisted maps t -> t s^-1 t land in the dense-translation
    submonoid.
    """
    t = action.group
    g = transformation_groupoid(action)
    k = t.size
    pred = predicted_size(t, "S")
    if pred > cap:
        raise CapExceeded(f"|T|^|T| = {pred} exceeds cap {cap}", predicted=pred)

    def embed(phi) -> GFun:
        m = [0] * g.size
        for u in range(action.space):
            for x in range(k):
                px = phi[x]
                m[u * k + x] = action.act[u][t.inverse[px]] * k + px
        return gfun(g, m)

    t_maps = [gfun(t, m) for m in iter_monoid_maps(t, "S")]
    images = [embed(f.map) for f in t_maps]
    members = all(f.in_sg for f in images)
    injective = len({f.map for f in images}) == len(images)

    witness = None
    products = True
    for i, j in itertools.product(range(len(t_maps)), repeat=2):
        lhs = star(images[i], images[j]).map
        rhs = embed(star(t_maps[i], t_maps[j]).map).map
        if lhs != rhs:
            products = False
            witness = (i, j)
            break

    def bijective_translation(f: GFun) -> bool:
        base = f.base
        trans = {base.product[f.map[x]][x] for x in base.elements()}
        return len(trans) == base.size

    units_embed = all(
        bijective_translation(images[i])
        for i, f in enumerate(t_maps) if bijective_translation(f)
    )

    constant_ok = True
    for z1 in range(k):
        f1 = embed([z1] * k)
        for z2 in range(k):
            f2 = embed([z2] * k)
            if star(f1, f2).map != embed([t.mul(z1, z2)] * k).map:
                constant_ok = False

    twisted_ok = True
    for s in range(k):
        phi = [t.mul(t.mul(x, t.inverse[s]), x) for x in range(k)]
        if not bijective_translation(embed(phi)):
            twisted_ok = False

    return EmbeddingAudit(pred, members, products, injective, units_embed,
                          constant_ok, twisted_ok, witness)


# ---------------------------------------------------------------------------
# exhaustive census


def _involutions(n: int):
    """All self-inverse maps on n points, in lexicographic order."""
    cur = [None] * n

    def rec(x):
        if x == n:
            yield tuple(cur)
            return
        if cur[x] is not None:
            yield from rec(x + 1)
            return
        cur[x] = x
        yield from rec(x + 1)
        cur[x] = None
        for y in range(x + 1, n):
            if cur[y] is None:
                cur[x], cur[y] = y, x
                yield from rec(x + 1)
                cur[x] = cur[y] = None

    yield from rec(0)


def _subsets_sorted(items):
    for mask in range(1, 1 << len(items)):
        yield [items[i] for i in range(len(items)) if mask >> i & 1]


def _range_maps(n: int, iota):
    """Candidate range maps: pick the unit set U inside Fix(iota), fix U
    pointwise, and send every other element anywhere in U."""
    fixed = [x for x in range(n) if iota[x] == x]
    for units in _subsets_sorted(fixed):
        unit_set = set(units)
        free = [x for x in range(n) if x not in unit_set]
        for choice in itertools.product(units, repeat=len(free)):
            rng = [0] * n
            for u in units:
                rng[u] = u
            for x, v in zip(free, choice):
                rng[x] = v
            yield tuple(rng)


def _complete_products(n: int, iota, rng):
    """Backtrack over the product table consistent with (iota, rng).

    dom is rng . iota; cells exist exactly where rng[y] == dom[x].  Each
    assignment x y = z forces iota[x] z = y, z iota[y] = x and
    iota[y] iota[x] = iota[z]; rows and columns stay duplicate-free by
    cancellation.  Completed tables still get a final associativity scan.
    """
    dom = tuple(rng[iota[x]] for x in range(n))
    fibers: dict[tuple[int, int], list[int]] = {}
    for z in range(n):
        fibers.setdefault((rng[z], dom[z]), []).append(z)

    table = [[UNDEFINED] * n for _ in range(n)]
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n) if rng[y] == dom[x]]

    def assign(x, y, z, trail):
        stack = [(x, y, z)]
        while stack:
            a, b, c = stack.pop()
            cur = table[a][b]
            if cur != UNDEFINED:
                if cur != c:
                    return False
                continue
            if rng[c] != rng[a] or dom[c] != dom[b]:
                return False
            if c in row_used[a] or c in col_used[b]:
                return False
            table[a][b] = c
            row_used[a].add(c)
            col_used[b].add(c)
            trail.append((a, b, c))
            stack.append((iota[a], c, b))
            stack.append((c, iota[b], a))
            stack.append((iota[b], iota[a], iota[c]))
        return True

    def undo(trail, mark):
        while len(trail) > mark:
            a, b, c = trail.pop()
            table[a][b] = UNDEFINED
            row_used[a].discard(c)
            col_used[b].discard(c)

    trail: list[tuple[int, int, int]] = []
    for x in range(n):
        if not assign(rng[x], x, x, trail):
            return
        if not assign(x, dom[x], x, trail):
            return
        if not assign(x, iota[x], rng[x], trail):
            return
        if not assign(iota[x], x, dom[x], trail):
            return

    def associative() -> bool:
        for x in range(n):
            for y in range(n):
                xy = table[x][y]
                if xy == UNDEFINED:
                    continue
                for z in range(n):
                    yz = table[y][z]
                    if yz == UNDEFINED:
                        continue
                    if table[xy][z] != table[x][yz]:
                        return False
        return True

    def dfs(pos):
        while pos < len(cells) and table[cells[pos][0]][cells[pos][1]] != UNDEFINED:
            pos += 1
        if pos == len(cells):
            if associative():
                yield [row[:] for row in table]
            return
        x, y = cells[pos]
        for z in fibers.get((rng[x], dom[y]), ()):
            if z in row_used[x] or z in col_used[y]:
                continue
            mark = len(trail)
            if assign(x, y, z, trail):
                yield from dfs(pos + 1)
            undo(trail, mark)

    yield from dfs(0)


@dataclass(frozen=True)
class Census:
    order: int
    representatives: tuple[Groupoid, ...]
    total_found: int

    @property
    def count(self):
        return len(self.representatives)


def enumerate_groupoids(order: int, max_order: int = MAX_CENSUS_ORDER) -> Census:
    """Every groupoid on ``order`` labeled points, up to isomorphism.

    Deterministic: candidates arrive in a fixed search order and
    representatives are sorted by canonical form.
    """
    if order < 1:
        raise ShapeError(f"order must be >= 1, got {order}")
    if order > max_order:
        raise CapExceeded(f"census order {order} exceeds cap {max_order}", predicted=order)
    seen: dict[tuple, None] = {}
    total = 0
    for iota in _involutions(order):
        for rng in _range_maps(order, iota):
            for table in _complete_products(order, iota, rng):
                candidate = make_groupoid(order, table, iota)
                total += 1
                key = canonical_form(candidate)
                if key not in seen:
                    seen[key] = None
    reps = tuple(
        groupoid_from_canonical(key, order, f"census-{order}-{i}")
        for i, key in enumerate(sorted(seen))
    )
    return Census(order=order, representatives=reps, total_found=total)


# ---------------------------------------------------------------------------
# the converse probe


@dataclass(frozen=True)
class ProbeRow:
    order: int
    name: str
    principal: bool
    intersection_size: int
    candidate: bool


@dataclass(frozen=True)
class ProbeReport:
    max_order: int
    rows: tuple[ProbeRow, ...]
    forward_holds: bool
    candidates: tuple[str, ...]


def intersection_size(g: Groupoid, cap: int = DEFAULT_MONOID_CAP) -> tuple[int, bool]:
    """Size of the two-sided intersection and whether it is exactly {j}."""
    maps = monoid_maps_array(g, "S", cap)
    ker = _Kernel(g)
    flags = ker.member_rows(maps, "S'")
    size = int(flags.sum())
    only_j = size == 1 and tuple(int(v) for v in maps[int(np.argmax(flags))]) == tuple(g.inverse)
    return size, only_j


def principal_converse_search(max_order: int,
                              census_cap: int = MAX_CENSUS_ORDER,
                              monoid_cap: int = DEFAULT_MONOID_CAP) -> ProbeReport:
    """Scan the full census for the converse of: principal implies the two
    monoids meet only in j.  Reports any non-principal groupoid whose
    intersection is {j}; finding one is a result to report, not an error.
    Evidence is limited to the searched range."""
    if max_order > census_cap:
        raise CapExceeded(f"order {max_order} exceeds census cap {census_cap}",
                          predicted=max_order)
    rows = []
    forward = True
    candidates = []
    for order in range(1, max_order + 1):
        census = enumerate_groupoids(order, census_cap)
        for rep in census.representatives:
            size, only_j = intersection_size(rep, monoid_cap)
            principal = is_principal(rep)
            candidate = (not principal) and only_j
            if principal and not only_j:
                forward = False
            if candidate:
                candidates.append(rep.name)
            rows.append(ProbeRow(order, rep.name, principal, size, candidate))
    return ProbeReport(max_order, tuple(rows), forward, tuple(candidates))
