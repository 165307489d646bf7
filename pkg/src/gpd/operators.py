"""Members of the endomorphism monoids as linear operators on C(G).

For finite discrete G, C(G) is the coordinate space indexed by elements,
and a member f acts by composition with its translation map: the operator
matrix is 0/1 with a single 1 per row, row x carrying its 1 in column
tau(x).  With the convention apply(M, v)[x] = v[tau(x)], the assignment
f -> matrix is a monoid homomorphism on either side, injective because f
is recoverable from its translation (f(x) = tau(x) x^-1).

All arithmetic is exact: determinants come from the permutation structure,
ranks from fraction-free Gaussian elimination over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .endo import (
    GFun,
    MonoidTable,
    involution_star,
    left_translation,
    right_translation,
)
from .errors import ShapeError
from .groupoid import Groupoid


@dataclass(frozen=True, eq=False)
class LinOp:
    """A composition operator: 0/1 matrix with one 1 per row."""

    base: Groupoid
    tau: tuple[int, ...]

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.base.size
        return tuple(
            tuple(1 if c == t else 0 for c in range(n)) for t in self.tau
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.base.size:
            raise ShapeError(f"vector must have length {self.base.size}")
        return tuple(v[t] for t in self.tau)

    def determinant(self) -> int:
        """0 unless tau is a permutation, otherwise its sign."""
        n = self.base.size
        if len(set(self.tau)) != n:
            return 0
        seen = [False] * n
        sign = 1
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.tau[x]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def rank(self) -> int:
        return exact_rank(self.matrix)


def exact_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by Gaussian elimination with Fractions."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return 0
    cols = len(rows[0])
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][c]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                factor = rows[r][c] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def left_operator(f: GFun) -> LinOp:
    """Operator of g -> g composed with the left translation of f (side S)."""
    return LinOp(f.base, left_translation(f))


def right_operator(f: GFun) -> LinOp:
    """Operator of g -> g composed with the right translation of f (side S')."""
    return LinOp(f.base, right_translation(f))


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


def _translation_stack(t: MonoidTable) -> np.ndarray:
    fn = left_translation if t.side == "S" else right_translation
    return np.array([fn(f) for f in t.elements], dtype=np.int64)


def _matrix_stack(taus: np.ndarray, n: int) -> np.ndarray:
    total = len(taus)
    mats = np.zeros((total, n, n), dtype=np.int64)
    rows = np.repeat(np.arange(n)[None, :], total, axis=0)
    mats[np.arange(total)[:, None], rows, taus] = 1
    return mats


def _audit_one_side(t: MonoidTable, unit_indices, dense_indices) -> dict[str, Verdict]:
    """Matrix-level checks for one monoid table.

    (hom)   matrix(f1 f2) = matrix(f1) . matrix(f2), by integer matmul over
            every pair, compared against the table;
    (inj)   distinct members give distinct matrices;
    (units) determinant is nonzero exactly on the group of units;
    (dense) exact rank is full exactly on the dense-translation submonoid.
    """
    g = t.groupoid
    n = g.size
    total = len(t)
    taus = _translation_stack(t)
    mats = _matrix_stack(taus, n)

    hom = Verdict(True)
    chunk = max(1, 2_000_000 // max(1, total * n * n))
    for i0 in range(0, total, chunk):
        blk = mats[i0:i0 + chunk]
        prod = np.matmul(blk[:, None, :, :], mats[None, :, :, :])
        expect = mats[t.op[i0:i0 + len(blk)]]
        if not np.array_equal(prod, expect):
            bad = np.argwhere((prod != expect).any(axis=(2, 3)))[0]
            hom = Verdict(False, (int(i0 + bad[0]), int(bad[1])))
            break

    distinct = len({tuple(map(int, row)) for row in taus})
    inj = Verdict(distinct == total, None if distinct == total else (distinct, total))

    unit_set = set(unit_indices)
    dense_set = set(dense_indices)
    units_v = Verdict(True)
    dense_v = Verdict(True)
    for i, f in enumerate(t.elements):
        op_ = LinOp(g, tuple(int(v) for v in taus[i]))
        det = op_.determinant()
        if (det != 0) != (i in unit_set):
            units_v = Verdict(False, (i, det))
            break
        if (op_.rank() == n) != (i in dense_set):
            dense_v = Verdict(False, (i,))
            break
    return {"hom": hom, "injective": inj, "units_invertible": units_v,
            "dense_full_rank": dense_v}


def _audit_mixed_action(ts: MonoidTable, tsp: MonoidTable) -> Verdict:
    """The right action of side S on C(G) through the involution.

    g . f is apply(right_operator(f~), g); the action law has the composite
    on the mirror side of the application order:
        act(g, f1 * f2) = act(act(g, f2), f1).
    Verified for every pair as the matrix identity
        matrix((f1 * f2)~) = matrix(f1~) . matrix(f2~).
    """
    g = ts.groupoid
    n = g.size
    sigma = np.array(
        [tsp.index[involution_star(f).map] for f in ts.elements], dtype=np.int64
    )
    taus_p = _translation_stack(tsp)
    mats_p = _matrix_stack(taus_p, n)
    total = len(ts)
    chunk = max(1, 2_000_000 // max(1, total * n * n))
    for i0 in range(0, total, chunk):
        blk = mats_p[sigma[i0:i0 + chunk]]
        prod = np.matmul(blk[:, None, :, :], mats_p[sigma][None, :, :, :])
        expect = mats_p[sigma[ts.op[i0:i0 + len(blk)]]]
        if not np.array_equal(prod, expect):
            bad = np.argwhere((prod != expect).any(axis=(2, 3)))[0]
            return Verdict(False, (int(i0 + bad[0]), int(bad[1])))
    return Verdict(True)


def representation_audit(
    ts: MonoidTable,
    tsp: MonoidTable,
    unit_indices_s, dense_indices_s,
    unit_indices_sp, dense_indices_sp,
) -> dict[str, Verdict]:
    """Full operator audit over both sides plus the mixed right action."""
    out = {}
    for key, verdict in _audit_one_side(ts, unit_indices_s, dense_indices_s).items():
        out[f"left_{key}"] = verdict
    for key, verdict in _audit_one_side(tsp, unit_indices_sp, dense_indices_sp).items():
        out[f"right_{key}"] = verdict
    out["mixed_right_action"] = _audit_mixed_action(ts, tsp)
    return out
