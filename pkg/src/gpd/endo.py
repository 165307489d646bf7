"""The two endomorphism monoids of a finite groupoid.

Side "S" holds the maps f with f(x) in the domain-fiber of r(x), a monoid
under (f * g)(x) = g(f(x)x) f(x) whose identity is the range map r.
Side "S'" holds the mirror family f(x) in the range-fiber of d(x), a monoid
under (h ? k)(x) = h(x) k(x h(x)) with identity d.  The involution
f -> f~, f~(x) = (f(x^-1))^-1, swaps the two sides and converts one product
into the other.

Enumeration walks the per-position fibers in lexicographic order of the map
arrays, so element indices are deterministic.  Cayley tables and the bulk
law scans are vectorized with numpy; the scalar ``star``/``star_prime``
functions are the semantic reference the vector paths are tested against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import BaseMismatch, CapExceeded, MembershipError, ShapeError
from .groupoid import Groupoid, UNDEFINED

DEFAULT_MONOID_CAP = 1_000_000
DEFAULT_PRODUCT_CAP = 100_000_000

SIDES = ("S", "S'")


@dataclass(frozen=True)
class GFun:
    """A total self-map of a groupoid with eagerly computed membership flags."""

    base: Groupoid
    map: tuple[int, ...]
    in_sg: bool
    in_spg: bool

    def __call__(self, x: int) -> int:
        return self.map[x]


@dataclass(frozen=True)
class Membership:
    in_sg: bool
    in_spg: bool


def membership(g: Groupoid, m: Sequence[int]) -> Membership:
    """Check both defining conditions for a total map."""
    if len(m) != g.size:
        raise ShapeError(f"map must have length {g.size}, got {len(m)}")
    for x, v in enumerate(m):
        if not 0 <= v < g.size:
            raise ShapeError(f"map[{x}] = {v} out of range")
    in_sg = all(g.domain_map[m[x]] == g.range_map[x] for x in g.elements())
    in_spg = all(g.range_map[m[x]] == g.domain_map[x] for x in g.elements())
    return Membership(in_sg, in_spg)


def gfun(g: Groupoid, m: Sequence[int]) -> GFun:
    flags = membership(g, m)
    return GFun(g, tuple(int(v) for v in m), flags.in_sg, flags.in_spg)


def _require(f: GFun, side: str):
    if side == "S" and not f.in_sg:
        raise MembershipError(f"map {f.map} is not in side S")
    if side == "S'" and not f.in_spg:
        raise MembershipError(f"map {f.map} is not in side S'")


def _same_base(f: GFun, g: GFun):
    if f.base is not g.base and f.base != g.base:
        raise BaseMismatch("operands live on different groupoids")


def star(f: GFun, g: GFun) -> GFun:
    """(f * g)(x) = g(f(x) x) f(x); closed on side S."""
    _same_base(f, g)
    _require(f, "S")
    _require(g, "S")
    gg = f.base
    out = []
    for x in gg.elements():
        t = gg.product[f.map[x]][x]
        out.append(gg.product[g.map[t]][f.map[x]])
    res = gfun(gg, out)
    if not res.in_sg:
        raise MembershipError(f"closure failed for * at {f.map} . {g.map}")
    return res


def star_prime(h: GFun, k: GFun) -> GFun:
    """(h ? k)(x) = h(x) k(x h(x)); closed on side S'."""
    _same_base(h, k)
    _require(h, "S'")
    _require(k, "S'")
    gg = h.base
    out = []
    for x in gg.elements():
        t = gg.product[x][h.map[x]]
        out.append(gg.product[h.map[x]][k.map[t]])
    res = gfun(gg, out)
    if not res.in_spg:
        raise MembershipError(f"closure failed for ? at {h.map} . {k.map}")
    return res


def involution_star(f: GFun) -> GFun:
    """f~(x) = (f(x^-1))^-1; swaps side S with side S'."""
    if not (f.in_sg or f.in_spg):
        raise MembershipError("involution needs a member of either side")
    g = f.base
    return gfun(g, [g.inverse[f.map[g.inverse[x]]] for x in g.elements()])


@dataclass(frozen=True)
class CanonicalElements:
    r: GFun
    d: GFun
    j: GFun


def canonical_elements(g: Groupoid) -> CanonicalElements:
    """The range map (identity of S), domain map (identity of S'), and the
    inverse map j, which lies in both sides."""
    return CanonicalElements(
        r=gfun(g, g.range_map),
        d=gfun(g, g.domain_map),
        j=gfun(g, g.inverse),
    )


@dataclass(frozen=True)
class Translations:
    lmap: tuple[int, ...] | None
    rmap: tuple[int, ...] | None


def left_translation(f: GFun) -> tuple[int, ...]:
    """x -> f(x) x, defined because f is in side S."""
    _require(f, "S")
    g = f.base
    return tuple(g.product[f.map[x]][x] for x in g.elements())


def right_translation(f: GFun) -> tuple[int, ...]:
    """x -> x f(x), defined because f is in side S'."""
    _require(f, "S'")
    g = f.base
    return tuple(g.product[x][f.map[x]] for x in g.elements())


def translation_maps(f: GFun) -> Translations:
    """Both translation maps; each side is present iff f belongs to it."""
    if not (f.in_sg or f.in_spg):
        raise MembershipError("translations need a member of either side")
    return Translations(
        lmap=left_translation(f) if f.in_sg else None,
        rmap=right_translation(f) if f.in_spg else None,
    )


# ---------------------------------------------------------------------------
# enumeration


def _position_fibers(g: Groupoid, side: str) -> list[tuple[int, ...]]:
    if side == "S":
        return [g.d_fibers[g.range_map[x]] for x in g.elements()]
    if side == "S'":
        return [g.r_fibers[g.domain_map[x]] for x in g.elements()]
    raise ShapeError(f"side must be one of {SIDES}, got {side!r}")


def predicted_size(g: Groupoid, side: str = "S") -> int:
    """Exact member count: the product of per-position fiber sizes."""
    return math.prod(len(c) for c in _position_fibers(g, side))


def iter_monoid_maps(g: Groupoid, side: str = "S") -> Iterator[tuple[int, ...]]:
    """All member maps in lexicographic order of their arrays."""
    return itertools.product(*_position_fibers(g, side))


def monoid_maps_array(g: Groupoid, side: str = "S", cap: int = DEFAULT_MONOID_CAP) -> np.ndarray:
    pred = predicted_size(g, side)
    if pred > cap:
        raise CapExceeded(f"predicted monoid size {pred} exceeds cap {cap}", predicted=pred)
    arr = np.fromiter(
        (v for m in iter_monoid_maps(g, side) for v in m),
        dtype=np.int32,
        count=pred * g.size,
    )
    return arr.reshape(pred, g.size)


class _Kernel:
    """Shared numpy views of one groupoid's tables."""

    def __init__(self, g: Groupoid):
        self.g = g
        self.n = g.size
        self.P = np.asarray(g.product, dtype=np.int32)
        self.Pflat = self.P.ravel()
        self.rm = np.asarray(g.range_map, dtype=np.int32)
        self.dm = np.asarray(g.domain_map, dtype=np.int32)
        self.inv = np.asarray(g.inverse, dtype=np.int32)
        self.xs = np.arange(self.n, dtype=np.int32)

    def star_rows(self, A: np.ndarray, B: np.ndarray, side: str) -> np.ndarray:
        """Row-wise products of two (T, n) stacks of member maps."""
        if side == "S":
            la = self.Pflat[A * self.n + self.xs[None, :]]
            gl = np.take_along_axis(B, la, axis=1)
            return self.Pflat[gl * self.n + A]
        ra = self.Pflat[self.xs[None, :] * self.n + A]
        kl = np.take_along_axis(B, ra, axis=1)
        return self.Pflat[A * self.n + kl]

    def member_rows(self, M: np.ndarray, side: str) -> np.ndarray:
        if side == "S":
            return (self.dm[M] == self.rm[None, :]).all(axis=1)
        return (self.rm[M] == self.dm[None, :]).all(axis=1)


def _ranker(g: Groupoid, side: str):
    """Mixed-radix rank of a member map into the lexicographic enumeration."""
    fibers = _position_fibers(g, side)
    n = g.size
    pos = -np.ones((n, g.size), dtype=np.int64)
    for x, fib in enumerate(fibers):
        for p, y in enumerate(fib):
            pos[x, y] = p
    strides = np.ones(n, dtype=np.int64)
    for x in range(n - 2, -1, -1):
        strides[x] = strides[x + 1] * len(fibers[x + 1])

    def rank(rows: np.ndarray) -> np.ndarray:
        p = pos[np.arange(n)[None, :], rows]
        if (p < 0).any():
            bad = np.argwhere(p < 0)[0]
            raise MembershipError(f"row {bad[0]} leaves its fiber at position {bad[1]}")
        return (p * strides[None, :]).sum(axis=1)

    return rank


@dataclass(frozen=True, eq=False)
class MonoidTable:
    """A fully enumerated monoid: elements, index Cayley table, identity.

    Construction verifies totality, both identity laws, and associativity
    over every index triple before the table is handed out.
    """

    groupoid: Groupoid
    side: str
    elements: tuple[GFun, ...]
    op: np.ndarray
    identity: int

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {f.map: i for i, f in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return int(self.op[i, j])

    def __repr__(self):
        return f"<monoid {self.side} of {self.groupoid!r}: {len(self)} elements>"


def _verify_table(op: np.ndarray, identity: int, budget: int = 20_000_000):
    n = len(op)
    if not (op[identity] == np.arange(n)).all() or not (op[:, identity] == np.arange(n)).all():
        raise MembershipError("identity law fails in the Cayley table")
    chunk = max(1, budget // max(1, n * n))
    for i0 in range(0, n, chunk):
        blk = op[i0:i0 + chunk]
        left = op[blk]            # (B, n, n): (i*j)*k
        right = blk[:, op]        # (B, n, n): i*(j*k)
        if not np.array_equal(left, right):
            b, j, k = (int(v) for v in np.argwhere(left != right)[0])
            raise MembershipError(f"associativity fails at indices ({i0 + b}, {j}, {k})")


def _fill_op_table(ker: _Kernel, maps: np.ndarray, side: str, rank) -> np.ndarray:
    n, total = ker.n, len(maps)
    op = np.empty((total, total), dtype=np.int32)
    chunk = max(1, 4_000_000 // max(1, total * n))
    for i0 in range(0, total, chunk):
        F = maps[i0:i0 + chunk]
        k = len(F)
        rep = np.repeat(F, total, axis=0)
        til = np.tile(maps, (k, 1))
        res = ker.star_rows(rep, til, side)
        if (res < 0).any():
            raise MembershipError("closure failed while filling the Cayley table")
        op[i0:i0 + k] = rank(res).reshape(k, total)
    return op


def enumerate_monoid(
    g: Groupoid,
    side: str = "S",
    cap: int = DEFAULT_MONOID_CAP,
    product_cap: int = DEFAULT_PRODUCT_CAP,
) -> MonoidTable:
    """Enumerate one side and build its verified Cayley table.

    Raises CapExceeded before doing any work if the predicted element count
    exceeds ``cap`` or the table would need more than ``product_cap``
    products.  Runtime is dominated by the exhaustive associativity scan.
    """
    pred = predicted_size(g, side)
    if pred > cap:
        raise CapExceeded(f"predicted monoid size {pred} exceeds cap {cap}", predicted=pred)
    if pred * pred > product_cap:
        raise CapExceeded(
            f"Cayley table needs {pred * pred} products, cap {product_cap}",
            predicted=pred * pred,
        )
    maps = monoid_maps_array(g, side, cap)
    ker = _Kernel(g)
    total = len(maps)

    sg_flags = ker.member_rows(maps, "S")
    spg_flags = ker.member_rows(maps, "S'")
    elements = tuple(
        GFun(g, tuple(int(v) for v in maps[i]), bool(sg_flags[i]), bool(spg_flags[i]))
        for i in range(total)
    )

    rank = _ranker(g, side)
    op = _fill_op_table(ker, maps, side, rank)
    ident_map = g.range_map if side == "S" else g.domain_map
    identity = int(rank(np.asarray(ident_map, dtype=np.int32)[None, :])[0])
    _verify_table(op, identity)
    return MonoidTable(groupoid=g, side=side, elements=elements, op=op, identity=identity)


def enumerate_sg(g: Groupoid, cap: int = DEFAULT_MONOID_CAP,
                 product_cap: int = DEFAULT_PRODUCT_CAP) -> MonoidTable:
    return enumerate_monoid(g, "S", cap, product_cap)


def enumerate_spg(g: Groupoid, cap: int = DEFAULT_MONOID_CAP,
                  product_cap: int = DEFAULT_PRODUCT_CAP) -> MonoidTable:
    return enumerate_monoid(g, "S'", cap, product_cap)


# ---------------------------------------------------------------------------
# bulk law verification without a stored table

LAW_SCAN_SEED = 20260810


@dataclass(frozen=True)
class LawScan:
    side: str
    size: int
    identity_ok: bool
    closure_ok: bool
    closure_conditions: int
    assoc_ok: bool
    assoc_mode: str
    assoc_triples: int
    witness: tuple | None


def _closure_profiles(ker: _Kernel, maps: np.ndarray, side: str):
    """Exhaustive closure check factored through value profiles.

    The product of f and g at position x depends on f only through
    v = f(x): on side S the value is P[g[c], v] with c = P[v, x], on side
    S' it is P[v, g[c]] with c = P[x, v].  Scanning every (x, v, g) with v
    running over the fiber of x therefore covers every (f, g, x) condition
    exactly; no pair is sampled away.  The equivalence with the direct
    pairwise scan is pinned by tests on small instances.
    """
    n = ker.n
    conditions = 0
    for x in range(n):
        vals = np.unique(maps[:, x])
        for v in (int(w) for w in vals):
            if side == "S":
                c = int(ker.P[v, x])
                res = ker.Pflat[maps[:, c] * n + v]
                good = (res >= 0) & (ker.dm[np.maximum(res, 0)] == int(ker.rm[x]))
            else:
                c = int(ker.P[x, v])
                res = ker.Pflat[v * n + maps[:, c]]
                good = (res >= 0) & (ker.rm[np.maximum(res, 0)] == int(ker.dm[x]))
            conditions += len(res)
            if not good.all():
                bad = int(np.argmax(~good))
                return False, conditions, (x, v, bad)
    return True, conditions, None


def law_scan(
    g: Groupoid,
    side: str = "S",
    cap: int = DEFAULT_MONOID_CAP,
    sample_triples: int = 1_000_000,
    exhaustive_triple_cap: int = 20_000_000,
    seed: int = LAW_SCAN_SEED,
) -> LawScan:
    """Verify the monoid laws of one side without storing a Cayley table.

    Identity laws and closure are checked exhaustively (closure via the
    factored profile scan).  Associativity is exhaustive when the triple
    count fits ``exhaustive_triple_cap``, otherwise ``sample_triples``
    triples are drawn from a fixed-seed generator so runs are reproducible.
    """
    maps = monoid_maps_array(g, side, cap)
    ker = _Kernel(g)
    n, total = g.size, len(maps)

    ident = np.asarray(g.range_map if side == "S" else g.domain_map, dtype=np.int32)
    ident_block = np.broadcast_to(ident, (total, n))
    left_id = ker.star_rows(ident_block, maps, side)
    right_id = ker.star_rows(maps, ident_block, side)
    identity_ok = np.array_equal(left_id, maps) and np.array_equal(right_id, maps)

    closure_ok, conditions, witness = _closure_profiles(ker, maps, side)

    assoc_ok = True
    if total ** 3 <= exhaustive_triple_cap:
        # index-level scan over every triple, via a throwaway Cayley table
        mode, count = "exhaustive", total ** 3
        op = _fill_op_table(ker, maps, side, _ranker(g, side))
        try:
            ident_row = np.asarray(ident, dtype=np.int32)[None, :]
            _verify_table(op, int(_ranker(g, side)(ident_row)[0]))
        except MembershipError as err:
            assoc_ok = False
            if witness is None:
                witness = (str(err),)
    else:
        rng = np.random.default_rng(seed)
        I = rng.integers(0, total, sample_triples)
        J = rng.integers(0, total, sample_triples)
        K = rng.integers(0, total, sample_triples)
        mode, count = "sampled", sample_triples
        budget = 4_000_000
        for t0 in range(0, len(I), budget):
            i, j, k = I[t0:t0 + budget], J[t0:t0 + budget], K[t0:t0 + budget]
            fij = ker.star_rows(maps[i], maps[j], side)
            left = ker.star_rows(fij, maps[k], side)
            right = ker.star_rows(maps[i], ker.star_rows(maps[j], maps[k], side), side)
            if not np.array_equal(left, right):
                assoc_ok = False
                if witness is None:
                    bad = int(np.argwhere((left != right).any(axis=1))[0][0])
                    witness = (int(i[bad]), int(j[bad]), int(k[bad]))
                break

    return LawScan(
        side=side,
        size=total,
        identity_ok=bool(identity_ok),
        closure_ok=closure_ok,
        closure_conditions=conditions,
        assoc_ok=assoc_ok,
        assoc_mode=mode,
        assoc_triples=count,
        witness=witness,
    )


def closure_scan_dense(g: Groupoid, side: str = "S", cap: int = 66_000) -> bool:
    """Direct all-pairs closure scan (quadratic); cross-checks the factored path."""
    maps = monoid_maps_array(g, side, cap)
    ker = _Kernel(g)
    total = len(maps)
    for i in range(total):
        F = np.broadcast_to(maps[i], maps.shape)
        res = ker.star_rows(F, maps, side)
        if (res < 0).any() or not ker.member_rows(res, side).all():
            return False
    return True
