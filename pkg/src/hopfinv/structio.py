"""JSON serialization of Hopf structure constants.

Schema: {"l", "dim", "basis", "mult": [[i,j,k,scalar]...],
"coproduct": [[i,j,k,scalar]...] (Delta(e_i) has a term e_j (x) e_k),
"antipode": [[i,j,scalar]...], "counit": [[i,scalar]...],
"unit": [[i,scalar]...], optional "R": [[i,j,scalar]...] and
"theta": [[i,scalar]...]}, with scalars in the {"l", "coeffs"} form.

The loader validates index ranges and runs the full axiom verifier before
handing back a usable algebra; serialization is deterministic (sorted keys
and entries) so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

from hopfinv.hopf import Element, HopfAlgebra, TensorElement, verify_axioms
from hopfinv.scalars import Cyc


class StructureFileError(ValueError):
    """Raised for malformed or axiom-violating structure-constant files."""


def _scalar_out(c: Cyc) -> dict:
    return c.to_json()


def _scalar_in(obj: Any, l: int) -> Cyc:
    c = Cyc.from_json(obj)
    if c.l != l:
        raise StructureFileError(f"scalar order {c.l} does not match file order {l}")
    return c


def algebra_to_dict(
    A: HopfAlgebra, R: TensorElement | None = None, theta: Element | None = None
) -> dict:
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in sorted(A.mult_basis(i, j).items()):
                mult.append([i, j, k, _scalar_out(c)])
    coproduct = []
    for i in range(A.dim):
        for (j, k), c in sorted(A.coprod_basis(i).items()):
            coproduct.append([i, j, k, _scalar_out(c)])
    antipode = []
    for i in range(A.dim):
        for j, c in sorted(A.antipode_basis(i).items()):
            antipode.append([i, j, _scalar_out(c)])
    out = {
        "l": A.l,
        "dim": A.dim,
        "basis": list(A.labels),
        "mult": mult,
        "coproduct": coproduct,
        "antipode": antipode,
        "counit": [[i, _scalar_out(c)] for i, c in enumerate(A.counit) if not c.is_zero()],
        "unit": [[i, _scalar_out(c)] for i, c in sorted(A.unit.items())],
    }
    if R is not None:
        out["R"] = [[i, j, _scalar_out(c)] for (i, j), c in sorted(R.terms.items())]
    if theta is not None:
        out["theta"] = [[i, _scalar_out(c)] for i, c in sorted(theta.terms.items())]
    return out


def dump_algebra(
    path: str, A: HopfAlgebra, R: TensorElement | None = None, theta: Element | None = None
) -> None:
    with open(path, "w") as fh:
        json.dump(algebra_to_dict(A, R, theta), fh, indent=1, sort_keys=True)
        fh.write("\n")


def algebra_from_dict(
    obj: dict, check: bool = True, name: str = "H"
) -> tuple[HopfAlgebra, TensorElement | None, Element | None]:
    try:
        l = int(obj["l"])
        dim = int(obj["dim"])
        labels = [str(s) for s in obj["basis"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureFileError(f"missing or malformed header: {exc}") from exc
    if len(labels) != dim:
        raise StructureFileError("basis label count does not match dim")

    def idx(v) -> int:
        i = int(v)
        if not 0 <= i < dim:
            raise StructureFileError(f"basis index {i} out of range [0, {dim})")
        return i

    zero = Cyc.zero(l)
    mult: dict[tuple[int, int], dict[int, Cyc]] = {}
    for i, j, k, s in obj.get("mult", []):
        mult.setdefault((idx(i), idx(j)), {})[idx(k)] = _scalar_in(s, l)
    coprod: dict[int, dict[tuple[int, int], Cyc]] = {}
    for i, j, k, s in obj.get("coproduct", []):
        coprod.setdefault(idx(i), {})[(idx(j), idx(k))] = _scalar_in(s, l)
    antipode: dict[int, dict[int, Cyc]] = {}
    for i, j, s in obj.get("antipode", []):
        antipode.setdefault(idx(i), {})[idx(j)] = _scalar_in(s, l)
    counit = [zero] * dim
    for i, s in obj.get("counit", []):
        counit[idx(i)] = _scalar_in(s, l)
    unit = {idx(i): _scalar_in(s, l) for i, s in obj.get("unit", [])}
    if not unit:
        raise StructureFileError("unit is missing or zero")

    A = HopfAlgebra(
        l=l,
        dim=dim,
        labels=labels,
        mult=mult,
        coproduct=coprod,
        antipode=antipode,
        unit=unit,
        counit=tuple(counit),
        name=name,
    )
    R = None
    if "R" in obj:
        R = TensorElement(
            A, 2, {(idx(i), idx(j)): _scalar_in(s, l) for i, j, s in obj["R"]}
        )
    theta = None
    if "theta" in obj:
        theta = Element(A, {idx(i): _scalar_in(s, l) for i, s in obj["theta"]})
    if check:
        rep = verify_axioms(A, R=R, theta=theta)
        if not rep.ok:
            raise StructureFileError(
                "structure constants violate the Hopf axioms: " + ", ".join(rep.failures())
            )
    return A, R, theta


def load_algebra(
    path: str, check: bool = True, name: str | None = None
) -> tuple[HopfAlgebra, TensorElement | None, Element | None]:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureFileError(f"not valid JSON: {exc}") from exc
    return algebra_from_dict(obj, check=check, name=name or path)
