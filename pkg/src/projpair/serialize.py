"""Canonical JSON forms for every value that crosses the CLI boundary.

All integers that can grow without bound (numerators, denominators) are
decimal strings; keys are emitted sorted, so serialization is bit-exact
and round-trips losslessly.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .abelian import FinAbGroup, SymplecticPairing
from .construct import (
    Ambient,
    Block,
    GroupSpec,
    MultiOrbitSpec,
    SingleOrbitIngredients,
)
from .cyclo import CycMatrix, CycNum
from .matrep import TensorShape


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# -- cyclotomic values ---------------------------------------------------


def cyc_num_to_json(c: CycNum) -> dict:
    return {
        "conductor": c.conductor,
        "coeffs": [
            [str(f.numerator), str(f.denominator)] for f in c.coefficients()
        ],
    }


def cyc_num_from_json(data: dict) -> CycNum:
    m = int(data["conductor"])
    coeffs = [Fraction(int(n), int(d)) for n, d in data["coeffs"]]
    den = 1
    for f in coeffs:
        den = den * f.denominator // _gcd(den, f.denominator)
    return CycNum(m, [int(f * den) for f in coeffs], den)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def cyc_matrix_to_json(mat: CycMatrix) -> dict:
    return {
        "rows": mat.rows,
        "cols": mat.cols,
        "conductor": mat.m,
        "entries": [
            [[str(f.numerator), str(f.denominator)] for f in mat.entry(i, j).coefficients()]
            for i in range(mat.rows)
            for j in range(mat.cols)
        ],
    }


def cyc_matrix_from_json(data: dict) -> CycMatrix:
    rows, cols, m = int(data["rows"]), int(data["cols"]), int(data["conductor"])
    values = []
    for coeffs in data["entries"]:
        values.append(cyc_num_from_json({"conductor": m, "coeffs": coeffs}))
    grid = [values[i * cols:(i + 1) * cols] for i in range(rows)]
    return CycMatrix(grid)


# -- groups ----------------------------------------------------------------


def group_to_json(g: FinAbGroup) -> dict:
    return {"invariant_factors": list(g.invariant_factors)}


def group_from_json(data: dict) -> FinAbGroup:
    return FinAbGroup(tuple(int(d) for d in data["invariant_factors"]))


def pairing_to_json(p: SymplecticPairing) -> dict:
    return {
        "group": group_to_json(p.group),
        "table": [
            [[f.denominator, f.numerator] for f in row] for row in p.gen_table
        ],
    }


def pairing_from_json(data: dict) -> SymplecticPairing:
    group = group_from_json(data["group"])
    table = tuple(
        tuple(Fraction(int(expo), int(order)) for order, expo in row)
        for row in data["table"]
    )
    return SymplecticPairing(group, table)


# -- specs ------------------------------------------------------------------


def shape_to_json(shape: TensorShape) -> list:
    return [{"label": lbl, "dim": d} for lbl, d in shape.factors]


def shape_from_json(data: list) -> TensorShape:
    return TensorShape(tuple((f["label"], int(f["dim"])) for f in data))


def spec_to_json(spec: GroupSpec) -> dict:
    out = {
        "shape": [shape_to_json(s) for s in spec.ambient.summands],
        "blocks": None
        if spec.blocks is None
        else [{"dim": b.dim, "grid": [list(r) for r in b.grid]} for b in spec.blocks],
        "component_group": group_to_json(spec.component_group),
        "generators": [
            {"coset": list(coords), "matrix": cyc_matrix_to_json(mat)}
            for coords, mat in sorted(spec.generators.items())
        ],
    }
    if spec.blocks is None:
        out["algebra_basis"] = [cyc_matrix_to_json(m) for m in spec.algebra_basis()]
    return out


def spec_from_json(data: dict) -> GroupSpec:
    ambient = Ambient(tuple(shape_from_json(s) for s in data["shape"]))
    blocks = None
    if data.get("blocks") is not None:
        blocks = tuple(
            Block(int(b["dim"]), tuple(tuple(int(i) for i in r) for r in b["grid"]))
            for b in data["blocks"]
        )
    group = group_from_json(data["component_group"])
    gens = {
        tuple(int(c) for c in item["coset"]): cyc_matrix_from_json(item["matrix"])
        for item in data["generators"]
    }
    basis = None
    if data.get("algebra_basis") is not None:
        basis = [cyc_matrix_from_json(m) for m in data["algebra_basis"]]
    return GroupSpec(ambient, blocks, group, gens, algebra_basis=basis)


def pair_to_json(g: GroupSpec, h: GroupSpec, meta=None) -> dict:
    return {
        "g": spec_to_json(g),
        "h": spec_to_json(h),
        "meta": dict(meta or {}),
    }


def pair_from_json(data: dict):
    return spec_from_json(data["g"]), spec_from_json(data["h"])


# -- ingredients ------------------------------------------------------------


def ingredients_to_json(ing: SingleOrbitIngredients) -> dict:
    return {
        "b": ing.b,
        "e": ing.e,
        "L": group_to_json(ing.L_group),
        "J": group_to_json(ing.J_group),
        "K": group_to_json(ing.K_group),
    }


def ingredients_from_json(data: dict) -> SingleOrbitIngredients:
    return SingleOrbitIngredients(
        int(data["b"]),
        int(data["e"]),
        group_from_json(data["L"]),
        group_from_json(data["J"]),
        group_from_json(data["K"]),
    )


def multi_spec_to_json(spec: MultiOrbitSpec) -> dict:
    return {
        "gamma": group_to_json(spec.gamma),
        "summands": [
            {"ingredients": ingredients_to_json(ing), "q": [list(r) for r in q]}
            for ing, q in spec.summands
        ],
    }


def multi_spec_from_json(data: dict) -> MultiOrbitSpec:
    gamma = group_from_json(data["gamma"])
    summands = tuple(
        (
            ingredients_from_json(item["ingredients"]),
            tuple(tuple(int(x) for x in r) for r in item["q"]),
        )
        for item in data["summands"]
    )
    return MultiOrbitSpec(gamma, summands)


def row_to_json(row) -> dict:
    out = {
        "kind": row.kind,
        "n": row.ambient_dim,
        "parts": row.parts,
        "gamma": group_to_json(row.gamma),
        "gamma_hat": group_to_json(row.gamma_hat),
        "flags": list(row.flags),
    }
    if row.kind == "single":
        out["ingredients"] = ingredients_to_json(row.single)
    else:
        out["glue"] = multi_spec_to_json(row.multi)
    return out
