import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpd import corpus
from gpd.endo import (
    LawScan,
    canonical_elements,
    closure_scan_dense,
    enumerate_monoid,
    gfun,
    involution_star,
    iter_monoid_maps,
    law_scan,
    left_translation,
    membership,
    monoid_maps_array,
    predicted_size,
    right_translation,
    star,
    star_prime,
    translation_maps,
)
from gpd.errors import BaseMismatch, CapExceeded, MembershipError, ShapeError

# ---------------------------------------------------------------------------
# oracle: the full star table of C(C2, C2), computed from the definition.
# C2 product is XOR; every total map is a member on both sides.
# Maps in lexicographic order: (0,0)=r, (0,1)=id=j, (1,0)=swap, (1,1)=const-a.


def c2_star_oracle(f, g):
    return tuple(g[f[x] ^ x] ^ f[x] for x in range(2))


def c2_star_prime_oracle(h, k):
    return tuple(h[x] ^ k[x ^ h[x]] for x in range(2))


C2_MAPS = [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_membership_group_case(c2):
    # on a group every total map belongs to both sides
    for m in C2_MAPS:
        flags = membership(c2, m)
        assert flags.in_sg and flags.in_spg


def test_membership_range_map(pair2):
    flags = membership(pair2, pair2.range_map)
    assert flags.in_sg
    # constant map to a fixed non-unit fails side S
    flags = membership(pair2, [1, 1, 1, 1])
    assert not flags.in_sg


def test_membership_shape_errors(c2):
    with pytest.raises(ShapeError):
        membership(c2, [0])
    with pytest.raises(ShapeError):
        membership(c2, [0, 9])


def test_star_matches_oracle_on_c2(c2):
    for fm in C2_MAPS:
        for gm in C2_MAPS:
            got = star(gfun(c2, fm), gfun(c2, gm)).map
            assert got == c2_star_oracle(fm, gm)
            got_p = star_prime(gfun(c2, fm), gfun(c2, gm)).map
            assert got_p == c2_star_prime_oracle(fm, gm)


def test_star_identity_laws(sg_c2, pair2):
    r = gfun(pair2, pair2.range_map)
    for m in iter_monoid_maps(pair2, "S"):
        f = gfun(pair2, m)
        assert star(r, f).map == m
        assert star(f, r).map == m


def test_const_a_squares_to_identity(c2):
    const_a = gfun(c2, (1, 1))
    assert star(const_a, const_a).map == tuple(c2.range_map)


def test_star_prime_identity(c2, pair2):
    for g in (c2, pair2):
        d = gfun(g, g.domain_map)
        for m in iter_monoid_maps(g, "S'"):
            h = gfun(g, m)
            assert star_prime(d, h).map == m
            assert star_prime(h, d).map == m


def test_j_is_right_zero(pair2, c2):
    for g in (pair2, c2):
        j = gfun(g, g.inverse)
        assert star(j, j).map == j.map
        assert star_prime(j, j).map == j.map
        for m in iter_monoid_maps(g, "S"):
            assert star(gfun(g, m), j).map == j.map
        for m in iter_monoid_maps(g, "S'"):
            assert star_prime(gfun(g, m), j).map == j.map


def test_star_errors(c2, c3):
    with pytest.raises(BaseMismatch):
        star(gfun(c2, (0, 0)), gfun(c3, (0, 0, 0)))
    g = corpus.pair_groupoid(2)
    non_member = gfun(g, [1, 1, 1, 1])
    member = gfun(g, g.range_map)
    with pytest.raises(MembershipError):
        star(non_member, member)


def test_involution_basics(c2, c3, pair2):
    for g in (c2, c3, pair2):
        j = gfun(g, g.inverse)
        assert involution_star(j).map == j.map
        r = gfun(g, g.range_map)
        assert involution_star(r).map == tuple(g.domain_map)
    # constant generator map on C3: image is the inverse constant, in side S'
    f = gfun(c3, (1, 1, 1))
    fs = involution_star(f)
    assert fs.map == (2, 2, 2)
    assert fs.in_spg


def test_involution_is_isomorphism_on_small(c2, pair2):
    for g in (c2, pair2):
        for fm, gm in itertools.product(iter_monoid_maps(g, "S"), repeat=2):
            f, h = gfun(g, fm), gfun(g, gm)
            assert involution_star(involution_star(f)).map == fm
            lhs = involution_star(star(f, h))
            rhs = star_prime(involution_star(f), involution_star(h))
            assert lhs.map == rhs.map


def test_canonical_elements(pair2, c2):
    triple = canonical_elements(pair2)
    assert triple.r.in_sg and triple.d.in_spg
    assert triple.j.in_sg and triple.j.in_spg
    # pair(2): j swaps (0,1) <-> (1,0) and fixes the units
    assert triple.j.map == (0, 2, 1, 3)
    # C2 and the unit groupoid: j is the identity map
    assert canonical_elements(c2).j.map == (0, 1)
    u2 = corpus.unit_groupoid(2)
    t = canonical_elements(u2)
    assert t.r.map == t.d.map == t.j.map == (0, 1)


def test_translations(c2, pair2):
    r = gfun(c2, c2.range_map)
    assert left_translation(r) == (0, 1)  # identity on G
    j = gfun(pair2, pair2.inverse)
    assert left_translation(j) == tuple(pair2.domain_map)
    const_a = gfun(c2, (1, 1))
    assert left_translation(const_a) == (1, 0)  # the swap
    tr = translation_maps(const_a)
    assert tr.lmap == (1, 0) and tr.rmap == (1, 0)
    with pytest.raises(MembershipError):
        left_translation(gfun(pair2, [1, 1, 1, 1]))


def test_translation_composition_law(pair2):
    for fm, gm in itertools.product(iter_monoid_maps(pair2, "S"), repeat=2):
        f, g = gfun(pair2, fm), gfun(pair2, gm)
        lf, lg = left_translation(f), left_translation(g)
        lfg = left_translation(star(f, g))
        assert lfg == tuple(lg[lf[x]] for x in pair2.elements())


# ---------------------------------------------------------------------------
# enumeration


def test_predicted_sizes(named_corpus):
    expected = {
        "trivial": 1,
        "units(2)": 1,
        "C2": 4,
        "C3": 27,
        "C4": 256,
        "V4": 256,
        "pair(2)": 16,
        "pair(3)": 19683,
        "C2+C2": 16,
        "transform": 16,
    }
    for name, g in named_corpus:
        pred = predicted_size(g, "S")
        assert pred == expected[name]
        assert pred == predicted_size(g, "S'")
        # cross-check the formula against an explicit product of fiber sizes
        brute = math.prod(
            sum(1 for y in g.elements() if g.domain_map[y] == g.range_map[x])
            for x in g.elements()
        )
        assert pred == brute


def test_enumeration_matches_prediction(small_corpus):
    for _, g in small_corpus:
        maps = list(iter_monoid_maps(g, "S"))
        assert len(maps) == predicted_size(g, "S")
        assert maps == sorted(maps)  # lexicographic
        for m in maps:
            assert membership(g, m).in_sg


def test_unit_groupoid_monoid_is_trivial():
    u2 = corpus.unit_groupoid(2)
    t = enumerate_monoid(u2, "S")
    assert len(t) == 1
    assert t.elements[0].map == (0, 1)


def test_cap_exceeded(c3):
    with pytest.raises(CapExceeded) as err:
        enumerate_monoid(c3, "S", cap=10)
    assert err.value.predicted == 27
    with pytest.raises(CapExceeded):
        enumerate_monoid(c3, "S", product_cap=100)


def test_cayley_table_matches_scalar_star(sg_c2, spg_c2, sg_pair2):
    for table, op_fn in ((sg_c2, star), (sg_pair2, star)):
        for i, f in enumerate(table.elements):
            for j, h in enumerate(table.elements):
                assert table.elements[table.mul(i, j)].map == op_fn(f, h).map
    for i, f in enumerate(spg_c2.elements):
        for j, h in enumerate(spg_c2.elements):
            assert spg_c2.elements[spg_c2.mul(i, j)].map == star_prime(f, h).map


def test_c2_cayley_oracle(sg_c2):
    # indices in lex order: 0=r, 1=id(=j), 2=swap, 3=const-a
    expected = [
        [0, 1, 2, 3],
        [1, 1, 2, 2],
        [2, 1, 2, 1],
        [3, 1, 2, 0],
    ]
    assert sg_c2.op.tolist() == expected
    assert sg_c2.identity == 0


def test_identity_located(sg_pair2, spg_pair2):
    assert sg_pair2.elements[sg_pair2.identity].map == tuple(sg_pair2.groupoid.range_map)
    assert spg_pair2.elements[spg_pair2.identity].map == tuple(spg_pair2.groupoid.domain_map)


def test_monoid_membership_flags(sg_pair2):
    # every enumerated element is in side S; the S' flag marks the intersection
    assert all(f.in_sg for f in sg_pair2.elements)
    inter = [f for f in sg_pair2.elements if f.in_spg]
    assert len(inter) == 1  # pair groupoids: only j


# ---------------------------------------------------------------------------
# bulk scans


def test_law_scan_small_and_dense_crosscheck(small_corpus):
    for name, g in small_corpus:
        for side in ("S", "S'"):
            scan = law_scan(g, side)
            assert scan.identity_ok and scan.closure_ok and scan.assoc_ok, (name, side)
            assert scan.assoc_mode == "exhaustive"
            assert closure_scan_dense(g, side)


def test_law_scan_pair3(pair3):
    scan = law_scan(pair3, "S", sample_triples=50_000)
    assert scan.size == 19683
    assert scan.identity_ok and scan.closure_ok and scan.assoc_ok
    assert scan.assoc_mode == "sampled"
    # every pairwise closure condition was covered by the factored scan
    assert scan.closure_conditions == sum(
        len(np.unique(monoid_maps_array(pair3, "S")[:, x])) * scan.size
        for x in range(pair3.size)
    )


def test_law_scan_deterministic(pair3):
    a = law_scan(pair3, "S", sample_triples=10_000)
    b = law_scan(pair3, "S", sample_triples=10_000)
    assert a == b


# ---------------------------------------------------------------------------
# sampled properties on the big instance


def sg_map_strategy(g):
    fibers = [sorted(y for y in g.elements() if g.domain_map[y] == g.range_map[x])
              for x in g.elements()]
    return st.tuples(*[st.sampled_from(f) for f in fibers])


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_sampled_associativity_pair3(data):
    g = corpus.pair_groupoid(3)
    strat = sg_map_strategy(g)
    f, h, k = (gfun(g, data.draw(strat)) for _ in range(3))
    assert star(star(f, h), k).map == star(f, star(h, k)).map


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_sampled_involution_pair3(data):
    g = corpus.pair_groupoid(3)
    strat = sg_map_strategy(g)
    f, h = gfun(g, data.draw(strat)), gfun(g, data.draw(strat))
    assert involution_star(involution_star(f)).map == f.map
    lhs = involution_star(star(f, h)).map
    rhs = star_prime(involution_star(f), involution_star(h)).map
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_sampled_left_translation_embedding_pair3(data):
    g = corpus.pair_groupoid(3)
    strat = sg_map_strategy(g)
    f, h = gfun(g, data.draw(strat)), gfun(g, data.draw(strat))
    lf, lh = left_translation(f), left_translation(h)
    assert left_translation(star(f, h)) == tuple(lh[lf[x]] for x in g.elements())
