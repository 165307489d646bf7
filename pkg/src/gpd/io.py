"""JSON wire formats.

Groupoid file:     {"name": str, "size": n, "product": [[int|-1]xn]xn,
                    "inverse": [int]xn}          (-1 marks undefined)
Action file:       {"group": <groupoid object>, "space": m,
                    "act": [[int]x|T|]xm}
Member file:       {"groupoid": <name or inline object>, "map": [int]xn}
Monoid export:     {"side": "S"|"S'", "elements": [[int]xn...],
                    "identity": i, "op": [[int]]}
Operator export:   {"fn": [int]xn, "matrix": [[0|1]xn]xn}
Census manifest:   {"order": n, "count": k, "names": [...]}
Probe row:         {"order", "name", "principal", "intersection_size",
                    "candidate"}

All dumps are canonical (sorted keys, two-space indent, trailing newline),
so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

from .census import Census, ProbeReport
from .endo import GFun, MonoidTable, gfun
from .errors import ShapeError
from .groupoid import GroupAction, Groupoid, GroupoidSpec, build_groupoid, make_action
from .operators import LinOp


def dump_bytes(obj: Any) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode("utf-8")


def write_json(path, obj: Any):
    with open(path, "wb") as fh:
        fh.write(dump_bytes(obj))


def _load(path) -> Any:
    try:
        with open(path, "rb") as fh:
            return json.loads(fh.read().decode("utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ShapeError(f"cannot read {path}: {exc}") from None


# ---------------------------------------------------------------------------
# groupoids


def groupoid_to_dict(g: Groupoid) -> dict:
    return {
        "name": g.name,
        "size": g.size,
        "product": [list(row) for row in g.product],
        "inverse": list(g.inverse),
    }


def groupoid_from_dict(obj: Any, *, max_size=None) -> Groupoid:
    if not isinstance(obj, dict):
        raise ShapeError("groupoid object must be a JSON object")
    try:
        spec = GroupoidSpec(
            size=int(obj["size"]),
            product=tuple(tuple(int(v) for v in row) for row in obj["product"]),
            inverse=tuple(int(v) for v in obj["inverse"]),
            name=str(obj.get("name", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed groupoid object: {exc!r}") from None
    kwargs = {} if max_size is None else {"max_size": max_size}
    return build_groupoid(spec, **kwargs)


def load_groupoid(path, **kw) -> Groupoid:
    return groupoid_from_dict(_load(path), **kw)


def save_groupoid(path, g: Groupoid):
    write_json(path, groupoid_to_dict(g))


# ---------------------------------------------------------------------------
# actions


def action_to_dict(a: GroupAction) -> dict:
    return {
        "group": groupoid_to_dict(a.group),
        "space": a.space,
        "act": [list(row) for row in a.act],
    }


def action_from_dict(obj: Any) -> GroupAction:
    if not isinstance(obj, dict):
        raise ShapeError("action object must be a JSON object")
    try:
        group = groupoid_from_dict(obj["group"])
        return make_action(group, int(obj["space"]), obj["act"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed action object: {exc!r}") from None


def load_action(path) -> GroupAction:
    return action_from_dict(_load(path))


def save_action(path, a: GroupAction):
    write_json(path, action_to_dict(a))


# ---------------------------------------------------------------------------
# members, monoids, operators


def gfun_to_dict(f: GFun, inline: bool = False) -> dict:
    ref = groupoid_to_dict(f.base) if inline or not f.base.name else f.base.name
    return {"groupoid": ref, "map": list(f.map)}


def gfun_from_dict(obj: Any, base: Groupoid | None = None) -> GFun:
    if not isinstance(obj, dict) or "map" not in obj:
        raise ShapeError("member object must contain a map")
    ref = obj.get("groupoid")
    if isinstance(ref, dict):
        base = groupoid_from_dict(ref)
    elif base is None:
        raise ShapeError(f"member references groupoid {ref!r} but none was supplied")
    elif isinstance(ref, str) and base.name and ref != base.name:
        raise ShapeError(f"member references {ref!r}, expected {base.name!r}")
    return gfun(base, [int(v) for v in obj["map"]])


def monoid_to_dict(t: MonoidTable) -> dict:
    return {
        "side": t.side,
        "elements": [list(f.map) for f in t.elements],
        "identity": t.identity,
        "op": t.op.tolist(),
    }


def linop_to_dict(f: GFun, op: LinOp) -> dict:
    return {"fn": list(f.map), "matrix": [list(row) for row in op.matrix]}


# ---------------------------------------------------------------------------
# census and probe


def census_manifest(c: Census) -> dict:
    return {
        "order": c.order,
        "count": c.count,
        "names": [g.name for g in c.representatives],
    }


def census_to_dict(c: Census) -> dict:
    out = census_manifest(c)
    out["total_found"] = c.total_found
    out["groupoids"] = [groupoid_to_dict(g) for g in c.representatives]
    return out


def probe_to_dict(report: ProbeReport) -> dict:
    return {
        "max_order": report.max_order,
        "forward_holds": report.forward_holds,
        "candidates": list(report.candidates),
        "rows": [
            {
                "order": row.order,
                "name": row.name,
                "principal": row.principal,
                "intersection_size": row.intersection_size,
                "candidate": row.candidate,
            }
            for row in report.rows
        ],
    }
