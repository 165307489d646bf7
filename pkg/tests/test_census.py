import itertools

import pytest

from gpd import corpus
from gpd.census import (
    Census,
    as_isomorphism,
    automorphisms,
    canonical_form,
    enumerate_groupoids,
    functoriality_audit,
    induced_gfun,
    intersection_size,
    isomorphic,
    monoid_iso_audit,
    principal_converse_search,
    transformation_embedding_audit,
)
from gpd.endo import gfun, iter_monoid_maps, star
from gpd.errors import CapExceeded, NotAnIsomorphism
from gpd.groupoid import Groupoid, disjoint_union, make_groupoid

# ---------------------------------------------------------------------------
# oracle 1: blind brute force over every (product, inverse) combination with
# a standalone axiom checker, feasible for order <= 2.  Written first; the
# census must reproduce its counts.


def oracle_valid(n, prod, inv):
    for x in range(n):
        if inv[inv[x]] != x:
            return False
        if prod[x][inv[x]] < 0 or prod[inv[x]][x] < 0:
            return False
    rng = [prod[x][inv[x]] for x in range(n)]
    dom = [prod[inv[x]][x] for x in range(n)]
    for x in range(n):
        for y in range(n):
            if (prod[x][y] >= 0) != (rng[y] == dom[x]):
                return False
    for x in range(n):
        if prod[rng[x]][x] != x or prod[x][dom[x]] != x:
            return False
        for y in range(n):
            if prod[x][y] >= 0 and prod[inv[x]][prod[x][y]] != y:
                return False
            if prod[y][x] >= 0 and prod[prod[y][x]][inv[x]] != y:
                return False
    for x in range(n):
        for y in range(n):
            if prod[x][y] < 0:
                continue
            for z in range(n):
                if prod[y][z] < 0:
                    continue
                if prod[prod[x][y]][z] != prod[x][prod[y][z]]:
                    return False
    return set(rng) == set(dom)


def oracle_brute_census(n):
    structures = []
    cells = [(i, j) for i in range(n) for j in range(n)]
    for inv in itertools.product(range(n), repeat=n):
        if any(inv[inv[x]] != x for x in range(n)):
            continue
        for values in itertools.product(range(-1, n), repeat=n * n):
            prod = [[values[i * n + j] for j in range(n)] for i in range(n)]
            if oracle_valid(n, prod, inv):
                structures.append((tuple(map(tuple, prod)), tuple(inv)))
    # dedup by brute-force relabeling
    classes = []
    for prod, inv in structures:
        found = False
        for cls in classes:
            if _oracle_iso(n, (prod, inv), cls):
                found = True
                break
        if not found:
            classes.append((prod, inv))
    return len(structures), len(classes)


def _oracle_iso(n, a, b):
    pa, ia = a
    pb, ib = b
    for sigma in itertools.permutations(range(n)):
        if any(sigma[ia[x]] != ib[sigma[x]] for x in range(n)):
            continue
        ok = True
        for x in range(n):
            for y in range(n):
                v = pa[x][y]
                w = pb[sigma[x]][sigma[y]]
                if (v < 0) != (w < 0) or (v >= 0 and sigma[v] != w):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def brute_iso(g: Groupoid, h: Groupoid) -> bool:
    if g.size != h.size:
        return False
    return _oracle_iso(g.size, (g.product, g.inverse), (h.product, h.inverse))


# ---------------------------------------------------------------------------
# oracle 2: constructive.  Every finite groupoid splits into connected
# components, and a component with k units and isotropy group H is the
# product of the pair groupoid on k units with H.  Groups up to order 5 are
# known (C1..C5 plus the Klein group), so the full census at order <= 5 can
# be generated independently of the search.

GROUPS_BY_ORDER = {
    1: [corpus.trivial()],
    2: [corpus.cyclic(2)],
    3: [corpus.cyclic(3)],
    4: [corpus.cyclic(4), corpus.klein_four()],
    5: [corpus.cyclic(5)],
}


def component_groupoid(k: int, h: Groupoid) -> Groupoid:
    """pair(k) x H: elements (i, j, a), product (i,j,a)(j,l,b) = (i,l,ab)."""
    m = h.size
    size = k * k * m

    def eid(i, j, a):
        return (i * k + j) * m + a

    prod = [[-1] * size for _ in range(size)]
    inv = [0] * size
    for i in range(k):
        for j in range(k):
            for a in range(m):
                inv[eid(i, j, a)] = eid(j, i, h.inverse[a])
                for l in range(k):
                    for b in range(m):
                        prod[eid(i, j, a)][eid(j, l, b)] = eid(i, l, h.mul(a, b))
    return make_groupoid(size, prod, inv, f"comp({k},{h.name})")


def component_types(size: int):
    out = []
    for k in range(1, size + 1):
        if k * k > size or size % (k * k):
            continue
        for h in GROUPS_BY_ORDER.get(size // (k * k), []):
            out.append((k, h))
    return out


def oracle_constructive_census(n: int) -> list[Groupoid]:
    """All groupoids of order n as unions of components, one per iso class."""
    type_list = []
    for size in range(1, n + 1):
        for k, h in component_types(size):
            type_list.append((size, k, h))

    results = []

    def rec(remaining, start, chosen):
        if remaining == 0:
            g = chosen[0]
            for extra in chosen[1:]:
                g = disjoint_union(g, extra)
            results.append(g)
            return
        for idx in range(start, len(type_list)):
            size, k, h = type_list[idx]
            if size <= remaining:
                rec(remaining - size, idx, chosen + [component_groupoid(k, h)])

    rec(n, 0, [])
    return results


# ---------------------------------------------------------------------------
# the tests


def test_brute_census_counts_orders_1_2():
    total1, classes1 = oracle_brute_census(1)
    assert classes1 == 1
    total2, classes2 = oracle_brute_census(2)
    assert classes2 == 2
    c1 = enumerate_groupoids(1)
    c2 = enumerate_groupoids(2)
    assert c1.count == classes1 and c1.total_found == total1
    assert c2.count == classes2 and c2.total_found == total2


def test_canonical_iso_agrees_with_brute_force():
    pool = [g for _, g in corpus.standard_corpus() if g.size <= 4]
    pool += list(enumerate_groupoids(3).representatives)
    for g, h in itertools.combinations(pool, 2):
        assert isomorphic(g, h) == brute_iso(g, h), (g.name, h.name)
    for g in pool:
        relabeled = _shift_relabel(g)
        assert isomorphic(g, relabeled) and brute_iso(g, relabeled)


def _shift_relabel(g: Groupoid) -> Groupoid:
    n = g.size
    sigma = [(x + 1) % n for x in range(n)]
    prod = [[-1] * n for _ in range(n)]
    inv = [0] * n
    for x in range(n):
        inv[sigma[x]] = sigma[g.inverse[x]]
        for y in range(n):
            v = g.product[x][y]
            if v >= 0:
                prod[sigma[x]][sigma[y]] = sigma[v]
    return make_groupoid(n, prod, inv, g.name + "-shift")


@pytest.mark.parametrize("order,count", [(1, 1), (2, 2), (3, 3), (4, 7), (5, 9)])
def test_census_matches_constructive_oracle(order, count):
    reps = enumerate_groupoids(order).representatives
    oracle = oracle_constructive_census(order)
    assert len(oracle) == count
    assert len(reps) == count
    # 1:1 matching between oracle classes and search representatives
    used = set()
    for g in oracle:
        matches = [i for i, rep in enumerate(reps) if isomorphic(g, rep)]
        assert len(matches) == 1, g.name
        assert matches[0] not in used
        used.add(matches[0])


def test_census_order3_membership():
    reps = enumerate_groupoids(3).representatives
    known = [
        corpus.cyclic(3),
        corpus.unit_groupoid(3),
        disjoint_union(corpus.trivial(), corpus.cyclic(2)),
    ]
    for g in known:
        assert any(isomorphic(g, rep) for rep in reps), g.name


def test_census_determinism_and_validity():
    a = enumerate_groupoids(4)
    b = enumerate_groupoids(4)
    assert [r.product for r in a.representatives] == [r.product for r in b.representatives]
    assert all(isinstance(r, Groupoid) for r in a.representatives)
    # representatives pairwise non-isomorphic by brute force
    for g, h in itertools.combinations(a.representatives, 2):
        assert not brute_iso(g, h)


def test_census_cap():
    with pytest.raises(CapExceeded):
        enumerate_groupoids(7)


# ---------------------------------------------------------------------------
# isomorphism transport


def test_automorphism_counts(c2, c3, pair2):
    assert automorphisms(c2) == [(0, 1)]
    assert automorphisms(c3) == [(0, 1, 2), (0, 2, 1)]  # identity and inversion
    assert len(automorphisms(pair2)) == 2  # unit swap
    assert len(automorphisms(corpus.unit_groupoid(2))) == 2


def test_as_isomorphism_rejects(c2, pair2):
    with pytest.raises(NotAnIsomorphism):
        as_isomorphism(c2, c2, [0, 0])
    with pytest.raises(NotAnIsomorphism):
        as_isomorphism(c2, pair2, [0, 1])


def test_identity_transport_is_identity(c3):
    iso = as_isomorphism(c3, c3, [0, 1, 2])
    for m in iter_monoid_maps(c3, "S"):
        f = gfun(c3, m)
        assert induced_gfun(iso, f).map == m


def test_monoid_iso_audit_automorphisms(c2, c3, pair2):
    for g in (c2, c3, pair2):
        for sigma in automorphisms(g):
            audit = monoid_iso_audit(as_isomorphism(g, g, sigma))
            assert audit.passed, (g.name, sigma)


def test_monoid_iso_audit_relabeling(c2):
    relabeled = _shift_relabel(c2)
    iso = as_isomorphism(c2, relabeled, [1, 0])
    audit = monoid_iso_audit(iso)
    assert audit.passed


def test_functoriality(c3, pair2):
    for g in (c3, pair2):
        autos = automorphisms(g)
        for s1 in autos:
            i1 = as_isomorphism(g, g, s1)
            for s2 in autos:
                i2 = as_isomorphism(g, g, s2)
                assert functoriality_audit(i1, i2)
        # an automorphism composed with its inverse transports trivially
        for s1 in autos:
            i1 = as_isomorphism(g, g, s1)
            back = [0] * g.size
            for x, v in enumerate(s1):
                back[v] = x
            i2 = as_isomorphism(g, g, back)
            comp_ok = functoriality_audit(i1, i2)
            assert comp_ok
            for m in iter_monoid_maps(g, "S"):
                f = gfun(g, m)
                assert induced_gfun(i2, induced_gfun(i1, f)).map == m


# ---------------------------------------------------------------------------
# the embedding audit


def test_embedding_audit_swap_action():
    audit = transformation_embedding_audit(corpus.swap_action())
    assert audit.monoid_size == 4
    assert audit.passed, audit


def test_embedding_constant_identity_is_range_map():
    action = corpus.swap_action()
    from gpd.groupoid import transformation_groupoid

    g = transformation_groupoid(action)
    t = action.group
    e = t.units[0]
    # f attached to the constant-identity map is the range map, idempotent
    m = [0] * g.size
    for u in range(action.space):
        for x in range(t.size):
            m[u * t.size + x] = action.act[u][t.inverse[e]] * t.size + e
    f = gfun(g, m)
    assert f.map == tuple(g.range_map)
    assert star(f, f).map == f.map


def test_embedding_cap():
    with pytest.raises(CapExceeded):
        transformation_embedding_audit(corpus.swap_action(), cap=3)


# ---------------------------------------------------------------------------
# the probe


def test_probe_order_2():
    report = principal_converse_search(2)
    assert report.forward_holds
    assert report.candidates == ()
    by_order = {}
    for row in report.rows:
        by_order.setdefault(row.order, []).append(row)
    assert len(by_order[1]) == 1 and len(by_order[2]) == 2
    c2_rows = [r for r in by_order[2] if not r.principal]
    assert len(c2_rows) == 1
    assert c2_rows[0].intersection_size == 4  # all of C(C2, C2)
    assert not c2_rows[0].candidate


def test_probe_order_3():
    report = principal_converse_search(3)
    assert report.forward_holds and not report.candidates
    assert len(report.rows) == 1 + 2 + 3


def test_intersection_size_function(c2, pair2):
    assert intersection_size(c2) == (4, False)
    assert intersection_size(pair2) == (1, True)


def test_probe_cap():
    with pytest.raises(CapExceeded):
        principal_converse_search(9)
