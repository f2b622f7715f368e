"""Positive weight detection: solver vs oracle, frozen cases, witnesses."""

import random

import pytest

from oracles import brute_force_weights, random_presentation
from rht.corpus import entries, load_presentation
from rht.errors import ToolkitError
from rht.weights import WeightAssignment, check_weights, extract_constraints, find_weights


def test_two_sphere_weights():
    rep = find_weights(load_presentation("s2"))
    assert rep.feasible
    assert rep.assignment.weights == {"x": 1, "y": 2}


def test_cp3_weights():
    rep = find_weights(load_presentation("cp3"))
    assert rep.feasible
    assert rep.assignment.weights == {"x": 1, "y": 4}


def test_product_model_weights():
    rep = find_weights(load_presentation("s2xs3"))
    assert rep.feasible
    assert rep.assignment.weights == {"x": 1, "y": 2, "u": 1}


def test_closed_generators_default_to_weight_one():
    rep = find_weights(load_presentation("s3"))
    assert rep.assignment.weights == {"x": 1}


def test_every_formal_corpus_entry_is_feasible():
    for e in entries():
        rep = find_weights(e.load())
        assert rep.feasible == e.expected["feasible"], e.key
        if rep.feasible:
            assert dict(sorted(rep.assignment.weights.items())) == e.expected["weights"]


def test_synthetic_entry_is_infeasible_with_frozen_witness():
    p = load_presentation("infeasible-synthetic")
    rep = find_weights(p)
    assert not rep.feasible
    assert [r.label for r in rep.witness_rows] == [
        "d(q): a^3",
        "d(z): a^2*p",
        "d(z): a^2*u",
        "d(w): a*p*u",
        "d(w): a^4",
        "d(w): p*q",
    ]


def test_witness_is_minimal():
    # dropping any single witness row restores feasibility
    from rht.qlinalg import QMatrix, positive_integer_kernel

    p = load_presentation("infeasible-synthetic")
    rep = find_weights(p)
    witness = list(rep.witness_rows)

    def feasible_without(skip):
        keep = [r for r in witness if r is not skip]
        m = QMatrix.from_rows([list(r.coefficients) for r in keep])
        return positive_integer_kernel(m).feasible

    assert all(feasible_without(r) for r in witness)


def test_constraint_rows_annihilate_any_valid_assignment():
    p = load_presentation("s2-wedge-s4")
    system = extract_constraints(p)
    rep = find_weights(p)
    w = rep.assignment
    order = [g.name for g in p.generators]
    vec = [w[name] for name in order]
    for row in system.rows:
        assert sum(c * v for c, v in zip(row.coefficients, vec)) == 0


def test_check_weights_accepts_scaled_solution():
    p = load_presentation("s2")
    assert check_weights(p, WeightAssignment({"x": 3, "y": 6})) == []


def test_check_weights_rejects_inhomogeneous():
    p = load_presentation("s2")
    bad = check_weights(p, WeightAssignment({"x": 1, "y": 3}))
    assert bad
    assert "d(y)" in str(bad[0])


def test_check_weights_requires_every_generator():
    p = load_presentation("s2")
    bad = check_weights(p, WeightAssignment({"x": 1}))
    assert bad


def test_weight_assignment_rejects_nonpositive():
    with pytest.raises(ToolkitError):
        WeightAssignment({"x": 0})
    with pytest.raises(ToolkitError):
        WeightAssignment({"x": -2})


def test_solver_agrees_with_box_oracle_on_random_presentations():
    rng = random.Random(424242)
    for _ in range(60):
        p = random_presentation(rng)
        rep = find_weights(p)
        found = brute_force_weights(p, box=12)
        if rep.feasible:
            assert check_weights(p, rep.assignment) == []
            if max(rep.assignment.weights.values()) <= 12:
                assert found is not None
        else:
            assert found is None
