import random

import pytest

from superlie.catalog import get_entry
from superlie.classify import (
    BudgetExceeded,
    SCVariable,
    admissible_variables,
    evaluate,
    fingerprint,
    generate_constraints,
    grid_search,
    table_from_assignment,
)
from superlie.nlie import BracketTable, change_of_basis, filippov_residual, verify_axioms
from superlie.scalar import ZERO, GaussScalar
from superlie.superspace import BasisSignature

from oracles import filippov_ok, random_invertible

S01, S02, S11, S21 = (BasisSignature(*s) for s in [(0, 1), (0, 2), (1, 1), (2, 1)])


def assignment_of(system, T):
    return [T.vector(v.args)[v.target] for v in system.variables]


def test_admissible_variable_counts():
    assert len(admissible_variables(S02)) == 8
    assert admissible_variables(BasisSignature(1, 0)) == []
    assert admissible_variables(S21) == [
        SCVariable((0, 1, 2), 2),
        SCVariable((0, 2, 2), 0),
        SCVariable((0, 2, 2), 1),
        SCVariable((1, 2, 2), 0),
        SCVariable((1, 2, 2), 1),
        SCVariable((2, 2, 2), 2),
    ]
    assert len(admissible_variables(BasisSignature(1, 2))) == 11
    assert len(admissible_variables(BasisSignature(2, 0), 2)) == 2


def test_single_odd_generator_system():
    sys01 = generate_constraints(S01)
    assert len(sys01.variables) == 1 and len(sys01.constraints) == 1
    assert sys01.to_text().splitlines()[-1] == "2*K[f1,f1,f1->f1]^2"
    assert evaluate(sys01, [0]) == [ZERO]
    assert evaluate(sys01, [1]) == [GaussScalar(2)]
    assert evaluate(sys01, {sys01.variables[0]: 1}) == [GaussScalar(2)]
    with pytest.raises(KeyError, match="missing"):
        evaluate(sys01, {})
    with pytest.raises(ValueError):
        evaluate(sys01, [1, 2])


def test_known_solutions_have_zero_residuals():
    sys02 = generate_constraints(S02)
    for name in ("T4a", "T4b"):
        T = get_entry(name).table
        assert not any(evaluate(sys02, assignment_of(sys02, T)))
    for sig in [S01, S11, S21, BasisSignature(1, 2)]:
        sys_ = generate_constraints(sig)
        assert not any(evaluate(sys_, [0] * len(sys_.variables)))


def test_constraint_sources_match_direct_residuals():
    rng = random.Random(1)
    for sig in [S02, S21, BasisSignature(1, 2)]:
        system = generate_constraints(sig)
        for _ in range(5):
            values = [GaussScalar(rng.choice([0, 1, -1, 2])) for _ in system.variables]
            T = table_from_assignment(system, values)
            res = evaluate(system, values)
            for c, r in zip(system.constraints, res):
                for y, x, h in c.sources:
                    assert filippov_residual(T, y, x).get(h, ZERO) == r


def test_constraints_cover_every_nonzero_residual():
    rng = random.Random(2)
    system = generate_constraints(S21)
    covered = {s for c in system.constraints for s in c.sources}
    for _ in range(10):
        values = [GaussScalar(rng.choice([0, 1, -1])) for _ in system.variables]
        T = table_from_assignment(system, values)
        for (y, x), vec in _all_residuals(T).items():
            for h in vec:
                assert (y, x, h) in covered


def _all_residuals(T):
    import itertools

    out = {}
    for y in itertools.combinations_with_replacement(range(T.dim), T.arity - 1):
        for x in itertools.combinations_with_replacement(range(T.dim), T.arity):
            out[(y, x)] = filippov_residual(T, y, x)
    return out


@pytest.mark.parametrize("sig", [(0, 1), (1, 1), (0, 2), (2, 1), (1, 2), (0, 3), (3, 0)])
def test_oracle_equivalence_random(sig):
    sig = BasisSignature(*sig)
    system = generate_constraints(sig)
    rng = random.Random(str(sig))
    for trial in range(40):
        # sparse assignments hit solutions often enough to exercise both outcomes
        density = rng.choice([0.1, 0.25, 0.5])
        values = [GaussScalar(rng.choice([1, -1, 2])) if rng.random() < density else ZERO for _ in system.variables]
        T = table_from_assignment(system, values)
        ok = not any(evaluate(system, values))
        assert ok == verify_axioms(T).filippov_ok
        if T.dim <= 3:
            assert ok == filippov_ok(T)


def test_generation_is_deterministic():
    a = generate_constraints(BasisSignature(1, 2))
    b = generate_constraints(BasisSignature(1, 2))
    assert a.variables == b.variables
    assert [c.poly for c in a.constraints] == [c.poly for c in b.constraints]
    assert a.to_text() == b.to_text()


def test_constraint_text_header():
    lines = generate_constraints(S02).to_text().splitlines()
    assert lines[0] == "# superlie constraint system"
    assert lines[1] == "# signature 0|2"
    assert lines[2] == "# arity 3"
    assert lines[3].startswith("# variables 8: K[f1,f1,f1->f1] K[f1,f1,f1->f2]")
    assert int(lines[4].split()[-1]) == len(lines) - 5


def test_constraints_are_quadratic():
    for c in generate_constraints(BasisSignature(2, 2)).constraints:
        assert c.poly.degree == 2 and c.sources


# -- grid search ------------------------------------------------------------------


def test_grid_single_odd_only_abelian():
    found = grid_search(S01, grid=[0, 1])
    assert len(found) == 1 and found[0].is_abelian()
    found = grid_search(S11)
    assert len(found) == 1 and found[0].is_abelian()


def test_grid_two_odd_contains_t4b():
    found = grid_search(S02, grid=[0, 1])
    assert get_entry("T4b").table in found
    for T in found:
        assert filippov_ok(T) and verify_axioms(T).ok


def test_grid_workers_match_serial():
    assert grid_search(S21, workers=1) == grid_search(S21, workers=2)


def test_grid_budget_refusal():
    with pytest.raises(BudgetExceeded) as err:
        grid_search(BasisSignature(0, 3), budget=1000)
    assert err.value.count == 3**30
    with pytest.raises(ValueError):
        grid_search(S01, grid=[])


def test_grid_without_variables():
    assert grid_search(BasisSignature(1, 0)) == [BracketTable.abelian(BasisSignature(1, 0))]


# -- fingerprints ---------------------------------------------------------------------


def test_fingerprint_examples():
    fp = fingerprint(BracketTable.abelian(S21))
    assert fp == (0, 0, 0, 0, (0, 0), True, True)
    t4a, t4b = get_entry("T4a").table, get_entry("T4b").table
    assert fingerprint(t4b).dim_d1 == 1 and fingerprint(t4b).dim_d2 == 0 and fingerprint(t4b).solvable
    assert fingerprint(t4a) == fingerprint(t4b)


@pytest.mark.parametrize("sig", [(0, 2), (2, 1)])
def test_fingerprint_invariant_under_change_of_basis(sig):
    sig = BasisSignature(*sig)
    rng = random.Random(str(sig))
    for T in grid_search(sig):
        fp = fingerprint(T)
        for _ in range(10):
            Pe = random_invertible(rng, sig.even_count)
            Po = random_invertible(rng, sig.odd_count)
            assert fingerprint(change_of_basis(T, Pe, Po)) == fp
