"""Structure-constant JSON round trips and validation."""

import json

import pytest

from hopfinv.double import group_algebra, taft_algebra
from hopfinv.hopf import verify_axioms
from hopfinv.scalars import Cyc
from hopfinv.structio import (
    StructureFileError,
    algebra_from_dict,
    algebra_to_dict,
    dump_algebra,
    load_algebra,
)
from hopfinv.uqsl2 import build_uqsl2


def test_round_trip_group_algebra(tmp_path):
    A = group_algebra(3, 3)
    path = tmp_path / "z3.json"
    dump_algebra(str(path), A)
    B, R, theta = load_algebra(str(path))
    assert B.dim == A.dim and B.l == A.l
    assert R is None and theta is None
    assert algebra_to_dict(B) == algebra_to_dict(A)


def test_round_trip_uqsl2_with_ribbon(tmp_path):
    data = build_uqsl2(3)
    path = tmp_path / "uq.json"
    dump_algebra(str(path), data.structure, R=data.R, theta=data.theta)
    B, R, theta = load_algebra(str(path), check=False)
    assert B.dim == 27
    assert R is not None and len(R.terms) == len(data.R.terms)
    assert theta is not None and theta.terms == {
        k: v for k, v in data.theta.terms.items()
    }
    # behavior matches: same multiplication table
    A = data.structure
    for i in (0, 5, 13, 26):
        for j in (1, 7, 22):
            assert B.mult_basis(i, j) == A.mult_basis(i, j)
    rep = verify_axioms(B, R=R, theta=theta)
    assert rep.ok, rep.summary()


def test_byte_identical_dumps(tmp_path):
    A = taft_algebra(2, 3)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    dump_algebra(str(p1), A)
    dump_algebra(str(p2), A)
    assert p1.read_bytes() == p2.read_bytes()


def test_loader_rejects_broken_antipode(tmp_path):
    A = group_algebra(3, 3)
    obj = algebra_to_dict(A)
    one = Cyc.one(3).to_json()
    obj["antipode"] = [[i, i, one] for i in range(3)]  # identity: not an antipode
    with pytest.raises(StructureFileError):
        algebra_from_dict(obj)


def test_loader_rejects_bad_ranges_and_json(tmp_path):
    A = group_algebra(2, 3)
    obj = algebra_to_dict(A)
    obj["mult"] = [[0, 0, 5, Cyc.one(3).to_json()]]
    with pytest.raises(StructureFileError):
        algebra_from_dict(obj)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(StructureFileError):
        load_algebra(str(bad))
