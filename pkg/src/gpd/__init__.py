"""Finite groupoids, their endomorphism monoids, and machine verification.

Build or load a small groupoid, enumerate the monoid of fiber-compatible
self-maps on either side, analyse its semigroup structure, represent it by
exact integer composition operators, and run the verification suite; a
census of all groupoids up to order 6 feeds an exhaustive search probe.
"""

from .groupoid import (
    GroupAction,
    Groupoid,
    GroupoidSpec,
    build_groupoid,
    disjoint_union,
    fixed_points,
    group_as_groupoid,
    is_principal,
    make_action,
    make_groupoid,
    morphism_classify,
    pair_groupoid,
    transformation_groupoid,
    unit_groupoid,
)
from .endo import (
    GFun,
    MonoidTable,
    canonical_elements,
    enumerate_monoid,
    enumerate_sg,
    enumerate_spg,
    gfun,
    involution_star,
    law_scan,
    membership,
    predicted_size,
    star,
    star_prime,
    translation_maps,
)
from .report import CHECK_IDS, StructureReport, full_report

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
