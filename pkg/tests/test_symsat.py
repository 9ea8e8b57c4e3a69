"""Tests for symmetric-gate circuits, the equation solver, and the
free-probability analysis."""

import math
from fractions import Fraction
from random import Random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thrsat.counters import WorkCounters
from thrsat.errors import InputError
from thrsat.model import Restriction
from thrsat.oracle import (brute_circuit_sat, enumerate_satisfying,
                           random_eq_system, random_symmetric_circuit)
from thrsat.symsat import (DEFAULT_KAPPA, EqRow, EqSystem, PDistribution,
                           Predicate, SymmetricCircuit, SymmetricGate,
                           adversarial_densities, candidate_values, choose_p,
                           evaluate_symmetric, evaluate_symmetric_batch,
                           expected_savings, grid_size, p_grid,
                           residual_value_systems, sat_by_value_guessing,
                           savings, simplify_symmetric,
                           solve_boolean_linear_system, solve_symmetric,
                           value_tuple_count, wire_distribution)


def all_assignments(n):
    for x in range(1 << n):
        yield tuple((x >> (n - 1 - i)) & 1 for i in range(n))


def brute_eq(system):
    for values in all_assignments(system.n_vars):
        if all(sum(w * values[i] for i, w in row.coeffs) == row.target
               for row in system.rows):
            return values
    return None


# --- predicates -------------------------------------------------------------

def test_predicate_kinds():
    assert Predicate.ge(2).holds(2)
    assert not Predicate.ge(2).holds(1)
    assert Predicate.eq(-1).holds(-1)
    assert Predicate.mod(3, 1).holds(7)
    assert not Predicate.mod(3, 1).holds(6)
    assert Predicate.members((2, 5)).holds(5)
    assert not Predicate.members((2, 5)).holds(3)


def test_predicate_validation():
    with pytest.raises(InputError):
        Predicate.mod(0, 0)
    with pytest.raises(InputError):
        Predicate.mod(3, 3)
    with pytest.raises(InputError):
        Predicate.members(())
    with pytest.raises(InputError):
        Predicate.members((1, 1))


@given(st.sampled_from(["ge", "eq", "mod", "set"]),
       st.integers(-30, 30), st.integers(-40, 40))
@settings(max_examples=200)
def test_shifted_matches_definition(kind, base, s):
    if kind == "ge":
        pred = Predicate.ge(7)
    elif kind == "eq":
        pred = Predicate.eq(-3)
    elif kind == "mod":
        pred = Predicate.mod(5, 2)
    else:
        pred = Predicate.members((-2, 0, 9))
    assert pred.shifted(base).holds(s) == pred.holds(s + base)


def test_holds_batch_matches_scalar():
    sums = np.arange(-20, 21, dtype=np.int64)
    for pred in (Predicate.ge(3), Predicate.eq(0), Predicate.mod(4, 1),
                 Predicate.members((-5, 2, 13))):
        batch = pred.holds_batch(sums)
        for s, verdict in zip(sums, batch):
            assert pred.holds(int(s)) == bool(verdict)


# --- circuits ---------------------------------------------------------------

def test_symmetric_circuit_validation():
    gate = SymmetricGate(((0, 1),), Predicate.ge(1))
    with pytest.raises(InputError):
        SymmetricCircuit(1, (gate,), (), (), Predicate.ge(1))
    with pytest.raises(InputError):
        SymmetricCircuit(2, (gate,), (1,), ((1, 0),), Predicate.ge(1))
    circuit = SymmetricCircuit(1, (gate,), (1,), (), Predicate.ge(1))
    assert circuit.weighted_wires == 1
    assert evaluate_symmetric(circuit, (1,))
    assert not evaluate_symmetric(circuit, (0,))


def test_declared_density_budget():
    gate = SymmetricGate(((0, 2), (1, 3)), Predicate.ge(1))
    SymmetricCircuit(2, (gate,), (1,), (), Predicate.ge(1), declared_density=3)
    with pytest.raises(InputError):
        SymmetricCircuit(2, (gate,), (1,), (), Predicate.ge(1),
                         declared_density=2)


def test_weighted_fan_in():
    gate = SymmetricGate(((0, 2), (3, -4)), Predicate.eq(0))
    assert gate.fan_in == 2
    assert gate.weighted_fan_in == 6


@given(st.integers(0, 10_000))
@settings(max_examples=100, deadline=None)
def test_batch_matches_scalar(seed):
    circuit = random_symmetric_circuit(1 + seed % 8, 1 + seed % 12, seed=seed,
                                       weight_bound=3)
    n = circuit.n_vars
    rows = np.array(list(all_assignments(n)), dtype=np.uint8)
    batch = evaluate_symmetric_batch(circuit, rows)
    for row, verdict in zip(rows, batch):
        assert evaluate_symmetric(circuit, tuple(int(v) for v in row)) == bool(verdict)


@given(st.integers(0, 10_000), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_simplify_preserves_semantics(seed, rng):
    circuit = random_symmetric_circuit(2 + seed % 7, 2 + seed % 10, seed=seed,
                                       weight_bound=3, direct_count=seed % 3)
    n = circuit.n_vars
    free = frozenset(i for i in range(n) if rng.random() < 0.5)
    assigned = {i: rng.randint(0, 1) for i in range(n) if i not in free}
    restriction = Restriction(assigned=assigned, free=free)
    residual = simplify_symmetric(circuit, restriction)
    assert residual.n_vars == len(free)
    assert all(g.fan_in >= 2 for g in residual.bottom)
    for values in all_assignments(len(free)):
        combined = restriction.combine(values)
        assert evaluate_symmetric(residual, values) \
            == evaluate_symmetric(circuit, combined)


# --- value guessing ---------------------------------------------------------

def test_candidate_values_superset_and_bound():
    coeffs = ((0, 2), (1, -3), (2, 2))
    values = candidate_values(coeffs)
    sums = {2 * a - 3 * b + 2 * c for a in (0, 1) for b in (0, 1) for c in (0, 1)}
    assert sums <= set(values)
    lo, hi = -3, 4
    assert len(values) <= min(2 ** 3, hi - lo + 1)


def test_candidate_values_interval_for_many_vars():
    coeffs = tuple((i, 1) for i in range(20))
    values = candidate_values(coeffs)
    assert values == tuple(range(0, 21))


def test_eq_examples():
    one_of_two = EqSystem(2, (EqRow(((0, 1), (1, 1)), 1),))
    values = solve_boolean_linear_system(one_of_two)
    assert values is not None and sum(values) == 1
    assert solve_boolean_linear_system(
        EqSystem(2, (EqRow(((0, 1), (1, 1)), 3),))) is None


def test_eq_counts_both_half_lists():
    # Infeasible system: both halves are enumerated in full.
    cnt = WorkCounters()
    system = EqSystem(5, (EqRow(((0, 1),), 2),))
    assert solve_boolean_linear_system(system, counters=cnt) is None
    assert cnt.vectors == 2 ** 3 + 2 ** 2
    assert cnt.eq_solves == 1


@given(st.integers(0, 10_000))
@settings(max_examples=150, deadline=None)
def test_eq_matches_brute(seed):
    system = random_eq_system(1 + seed % 10, seed % 4, seed=seed)
    values = solve_boolean_linear_system(system)
    ref = brute_eq(system)
    assert (values is None) == (ref is None)
    if values is not None:
        for row in system.rows:
            assert sum(w * values[i] for i, w in row.coeffs) == row.target


def test_eq_empty_system():
    assert solve_boolean_linear_system(EqSystem(0, ())) == ()
    assert solve_boolean_linear_system(EqSystem(0, (EqRow((), 1),))) is None


def test_residual_systems_cover_sat_set_exactly():
    for seed in range(25):
        circuit = random_symmetric_circuit(2 + seed % 7, 2 + seed % 6,
                                           seed=seed, weight_bound=2,
                                           direct_count=seed % 2)
        n = circuit.n_vars
        covered = set()
        for _, _, system in residual_value_systems(circuit):
            for values in all_assignments(n):
                if all(sum(w * values[i] for i, w in row.coeffs) == row.target
                       for row in system.rows):
                    covered.add(values)
        expected = set(enumerate_satisfying(circuit))
        assert covered == expected


def test_value_tuple_count_matches_enumeration():
    circuit = random_symmetric_circuit(6, 8, seed=3, weight_bound=2)
    count = value_tuple_count(circuit)
    yielded = sum(1 for _ in residual_value_systems(circuit))
    # The enumeration filters by the top predicate, so it can only be smaller.
    assert yielded <= count


@given(st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_value_guessing_matches_brute(seed):
    circuit = random_symmetric_circuit(1 + seed % 8, 1 + seed % 8, seed=seed,
                                       weight_bound=2)
    witness = sat_by_value_guessing(circuit)
    ref = brute_circuit_sat(circuit)
    assert (witness is None) == (ref is None)


# --- savings analysis -------------------------------------------------------

def test_savings_below_knee_is_exact():
    p, f, c = Fraction(1, 64), 2, Fraction(2)
    assert p * f < Fraction(1, 4) / c
    assert savings(p, f, c) == p / 4


def test_savings_above_knee_formula():
    p, f, c = Fraction(1, 2), 8, Fraction(1)
    expected = 0.5 / 2 - (1 / 8) * math.log2(8 * 1 * 0.5 * 8)
    assert math.isclose(float(savings(p, f, c)), expected, rel_tol=1e-12)


def test_savings_power_of_two_branch_is_exact():
    # 8*c*p*f = 32 here, so the logarithm is exactly 5.
    p, f, c = Fraction(1, 2), 8, Fraction(1)
    assert savings(p, f, c) == Fraction(1, 4) - Fraction(5, 8)


def test_savings_rejects_bad_inputs():
    with pytest.raises(InputError):
        savings(Fraction(0), 1, Fraction(1))
    with pytest.raises(InputError):
        savings(Fraction(2), 1, Fraction(1))
    with pytest.raises(InputError):
        savings(Fraction(1, 2), 0, Fraction(1))


def test_expected_savings_weights_by_density():
    dens = {2: Fraction(1), 8: Fraction(1, 2)}
    c = Fraction(2)
    total = expected_savings(Fraction(1, 4), dens, c)
    manual = (Fraction(1) / c) * savings(Fraction(1, 4), 2, c) \
        + (Fraction(1, 2) / c) * savings(Fraction(1, 4), 8, c)
    assert total == manual


def test_grid_size_formula():
    assert grid_size(Fraction(1)) == DEFAULT_KAPPA
    assert grid_size(Fraction(2)) == DEFAULT_KAPPA * 4
    assert grid_size(Fraction(3)) == math.ceil(
        DEFAULT_KAPPA * 9 * math.log2(3))
    assert p_grid(Fraction(1), 4)[0] == Fraction(1, 2)
    assert len(p_grid(Fraction(1), 4)) == 4


def test_choose_p_is_grid_argmax():
    rng = Random(7)
    for _ in range(20):
        dens = {rng.randint(1, 64): Fraction(rng.randint(1, 8), 8)
                for _ in range(rng.randint(1, 5))}
        c = sum(dens.values()) + Fraction(rng.randint(0, 4), 4)
        best, best_score = None, None
        for cand in p_grid(c, 8):
            score = expected_savings(cand, dens, c)
            if best_score is None or score > best_score:
                best, best_score = cand, score
        assert choose_p(dens, c, kappa=8) == best


def test_choose_p_prefers_largest_below_knee_point():
    # Fan-in one at density c=1: the knee sits at p = 1/4, scores above it
    # are negative, and below it they grow as p/4, so p = 1/8 wins.
    dens = {1: Fraction(1)}
    c = Fraction(1)
    assert choose_p(dens, c) == Fraction(1, 8)
    assert choose_p({}, c) == Fraction(1)


def test_pdistribution_masses():
    dist = PDistribution.for_density(Fraction(1), kappa=4)
    assert dist.size == 4
    assert sum(m for _, m in dist.points) == 1
    ps = [p for p, _ in dist.points]
    assert ps == list(p_grid(Fraction(1), 4))
    # Mass doubles at each smaller p.
    masses = [m for _, m in dist.points]
    for a, b in zip(masses, masses[1:]):
        assert b == 2 * a


def test_adversarial_densities_structure():
    dens = adversarial_densities(3)
    assert dens == {2: Fraction(1), 4: Fraction(1), 8: Fraction(1)}
    with pytest.raises(InputError):
        adversarial_densities(0)


def test_adversarial_tightness_small_grids():
    for c in (1, 2):
        dens = adversarial_densities(c)
        for p in p_grid(Fraction(c)):
            assert expected_savings(p, dens, Fraction(c)) <= p / 2


def test_calibration_positive_mean():
    for c in (1, 2):
        dist = PDistribution.for_density(Fraction(c))
        assert dist.mean_savings(adversarial_densities(c), Fraction(c)) > 0


def test_wire_distribution():
    gates = (SymmetricGate(((0, 1), (1, -1)), Predicate.ge(1)),
             SymmetricGate(((2, 1), (3, 1)), Predicate.eq(1)),
             SymmetricGate(((0, 2), (2, 2)), Predicate.ge(2)))
    circuit = SymmetricCircuit(4, gates, (1, 1, 1), (), Predicate.ge(1))
    dens = wire_distribution(circuit)
    assert dens == {2: Fraction(2 * 2, 4), 4: Fraction(4, 4)}


# --- the solver -------------------------------------------------------------

@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_solve_matches_brute_forced(seed):
    n = 6 + seed % 7
    circuit = random_symmetric_circuit(n, n + seed % n, seed=seed,
                                       weight_bound=3)
    outcome = solve_symmetric(circuit, seed=seed, force_restriction=True)
    ref = brute_circuit_sat(circuit)
    assert outcome.satisfiable == (ref is not None)
    if outcome.witness is not None:
        assert evaluate_symmetric(circuit, outcome.witness)


def test_solve_fast_path():
    circuit = random_symmetric_circuit(8, 12, seed=1, weight_bound=3)
    outcome = solve_symmetric(circuit)
    assert outcome.restriction is None
    assert outcome.branches == 1 << 8
    assert outcome.satisfiable == (brute_circuit_sat(circuit) is not None)


def test_solve_tuple_budget_fallback():
    for seed in range(8):
        circuit = random_symmetric_circuit(10, 14, seed=seed, weight_bound=3)
        forced = solve_symmetric(circuit, seed=seed, force_restriction=True,
                                 p=Fraction(1, 2), tuple_budget=0)
        assert forced.fallback_branches > 0
        assert forced.satisfiable == (brute_circuit_sat(circuit) is not None)


def test_solve_negative_savings_falls_back_to_scan():
    # With a one-point grid every candidate p sits above the knee of these
    # fan-in-two gates and scores negative, so the solver scans instead.
    gates = tuple(SymmetricGate(((2 * i, 1), (2 * i + 1, 1)), Predicate.ge(1))
                  for i in range(11))
    circuit = SymmetricCircuit(22, gates, tuple([1] * 11), (),
                               Predicate.ge(6))
    outcome = solve_symmetric(circuit, seed=0, kappa=1)
    assert outcome.restriction is None
    assert outcome.branches == 1 << 22
    assert outcome.satisfiable


def test_solve_seed_is_deterministic():
    circuit = random_symmetric_circuit(12, 18, seed=4, weight_bound=3)
    a = solve_symmetric(circuit, force_restriction=True)
    b = solve_symmetric(circuit, force_restriction=True)
    assert a.restriction == b.restriction
    assert a.satisfiable == b.satisfiable
