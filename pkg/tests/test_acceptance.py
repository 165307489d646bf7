"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.  The
pair(3) monoid (19683 elements) is too large for a stored Cayley table, so
its associativity is checked on one million fixed-seed random triples on
top of the exhaustive all-pairs closure and identity scans; every other
corpus member is checked exhaustively on all triples.
"""

import itertools
import math
import time

import numpy as np
import pytest

from gpd import corpus
from gpd.census import (
    as_isomorphism,
    automorphisms,
    enumerate_groupoids,
    monoid_iso_audit,
    functoriality_audit,
    principal_converse_search,
    transformation_embedding_audit,
)
from gpd.endo import (
    enumerate_monoid,
    gfun,
    involution_star,
    law_scan,
    predicted_size,
)
from gpd.groupoid import GroupoidSpec, build_groupoid
from gpd.operators import representation_audit
from gpd.report import full_report
from gpd.structure import (
    dense_submonoid,
    group_of_units,
    j_index,
    special_elements,
    units_crosscheck,
)

from test_census import oracle_brute_census


def verdict(name, ok):
    print(f"ACCEPT {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, name


@pytest.fixture(scope="module")
def corpus_list():
    return corpus.standard_corpus()


@pytest.fixture(scope="module")
def table_corpus(corpus_list):
    """Corpus members with stored tables on both sides (pair(3) excluded)."""
    out = []
    for name, g in corpus_list:
        if name == "pair(3)":
            continue
        out.append((name, g, enumerate_monoid(g, "S"), enumerate_monoid(g, "S'")))
    return out


def test_axiom_suite(corpus_list):
    small = [(n, g) for n, g in corpus_list if g.size <= 16]
    t0 = time.monotonic()
    for name, g in small:
        rebuilt = build_groupoid(
            GroupoidSpec(g.size, g.product, g.inverse, g.name)
        )
        assert rebuilt.units == g.units, name
    elapsed = time.monotonic() - t0
    for order in (1, 2, 3, 4):
        for rep in enumerate_groupoids(order).representatives:
            build_groupoid(GroupoidSpec(rep.size, rep.product, rep.inverse, rep.name))
    verdict("axiom-suite", elapsed < 1.0)


def test_monoid_laws(corpus_list):
    expected_sizes = {"C3": 27, "pair(2)": 16, "units(2)": 1}
    t0 = time.monotonic()
    ok = True
    for name, g in corpus_list:
        formula = math.prod(
            sum(1 for y in g.elements() if g.domain_map[y] == g.range_map[x])
            for x in g.elements()
        )
        for side in ("S", "S'"):
            scan = law_scan(g, side)
            ok &= scan.identity_ok and scan.closure_ok and scan.assoc_ok
            ok &= scan.size == formula
            if name == "pair(3)":
                ok &= scan.assoc_mode == "sampled" and scan.assoc_triples == 1_000_000
            else:
                ok &= scan.assoc_mode == "exhaustive"
        if name in expected_sizes:
            ok &= formula == expected_sizes[name]
    elapsed = time.monotonic() - t0
    verdict("monoid-laws", ok and elapsed < 60.0)


def test_involution(table_corpus):
    ok = True
    for name, g, ts, tsp in table_corpus:
        if len(ts) > 2000:
            continue
        sigma = np.array([tsp.index[involution_star(f).map] for f in ts.elements])
        ok &= len(set(sigma.tolist())) == len(ts)
        for f in ts.elements:
            ok &= involution_star(involution_star(f)).map == f.map
        lhs = sigma[ts.op]
        rhs = tsp.op[sigma[:, None], sigma[None, :]]
        ok &= bool(np.array_equal(lhs, rhs))
    verdict("involution", ok)


def test_prop_3_3_suite(table_corpus):
    ok = True
    ids = ("P3.3.1", "P3.3.2", "P3.3.3", "P3.3.4",
           "P3.3.5", "P3.3.6", "P3.3.7", "P3.3.8")
    for name, g, ts, tsp in table_corpus:
        report = full_report(g, checks=ids)
        ok &= report.all_passed
        if name == "C2":
            spec = special_elements(ts)
            maps = {ts.elements[i].map for i in spec.idempotents}
            ok &= maps == {(0, 0), (0, 1), (1, 0)}
            zmaps = {ts.elements[i].map for i in spec.right_zeros}
            ok &= zmaps == {(0, 1), (1, 0)}
    verdict("prop-3.3-suite", ok)


def test_units(table_corpus):
    ok = True
    for name, g, ts, tsp in table_corpus:
        for t in (ts, tsp):
            h1 = group_of_units(g, t)
            ok &= h1.verified
            ok &= units_crosscheck(t, h1).agrees
            for i, k in h1.inverse.items():
                ok &= t.mul(i, k) == t.identity and t.mul(k, i) == t.identity
        if name == "C2":
            ok &= len(group_of_units(g, ts).indices) == 2
    verdict("units", ok)


def test_dense_submonoid(table_corpus):
    ok = True
    for name, g, ts, tsp in table_corpus:
        for t in (ts, tsp):
            tg = dense_submonoid(g, t)
            h1 = group_of_units(g, t)
            ok &= tg.indices == h1.indices
            ok &= tg.closed and tg.contains_identity and tg.left_cancellative
            ok &= tg.involution_matches
    verdict("dense-submonoid", ok)


def test_operator_representation(table_corpus):
    ok = True
    for name, g, ts, tsp in table_corpus:
        h1 = group_of_units(g, ts)
        tg = dense_submonoid(g, ts)
        h1p = group_of_units(g, tsp)
        tgp = dense_submonoid(g, tsp)
        verdicts = representation_audit(
            ts, tsp, h1.indices, tg.indices, h1p.indices, tgp.indices
        )
        ok &= all(v.passed for v in verdicts.values())
    verdict("operator-representation", ok)


def test_functor(corpus_list):
    ok = True
    for g in (corpus.cyclic(2), corpus.cyclic(3), corpus.pair_groupoid(2)):
        autos = automorphisms(g)
        isos = [as_isomorphism(g, g, sigma) for sigma in autos]
        identity = as_isomorphism(g, g, list(g.elements()))
        for iso in isos:
            ok &= monoid_iso_audit(iso).passed
            ok &= functoriality_audit(identity, iso)
            ok &= functoriality_audit(iso, identity)
        for i1, i2 in itertools.product(isos, repeat=2):
            ok &= functoriality_audit(i1, i2)
    verdict("functor", ok)


def test_embedding():
    audit = transformation_embedding_audit(corpus.swap_action())
    verdict("transformation-embedding",
            audit.passed and audit.monoid_size == 4)


def test_census_and_probe():
    t0 = time.monotonic()
    total1, classes1 = oracle_brute_census(1)
    total2, classes2 = oracle_brute_census(2)
    c1, c2 = enumerate_groupoids(1), enumerate_groupoids(2)
    ok = classes1 == c1.count == 1
    ok &= classes2 == c2.count == 2
    ok &= total1 == c1.total_found and total2 == c2.total_found
    report = principal_converse_search(5)
    ok &= report.forward_holds
    ok &= report.candidates == ()  # a found candidate would be reported, not failed
    if report.candidates:
        print(f"NOTE counterexample candidates: {report.candidates}")
    counts = {}
    for row in report.rows:
        counts[row.order] = counts.get(row.order, 0) + 1
    ok &= counts == {1: 1, 2: 2, 3: 3, 4: 7, 5: 9}
    elapsed = time.monotonic() - t0
    verdict("census-and-probe", ok and elapsed < 600.0)
