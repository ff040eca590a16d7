import json
import random
from fractions import Fraction

import pytest

from conftest import F, swap_matrix
from tdlc_scale.errors import SingularMatrixError, VerificationError
from tdlc_scale.lattice_qp import Lattice, random_matrix
from tdlc_scale.matrices import diag, identity
from tdlc_scale.scale_core import (
    check_inequality,
    check_laws,
    random_law_inputs,
    run_properties,
    scale,
)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_scale_swap(p):
    rep = scale(swap_matrix(p), p)
    assert rep.scale_exponent == rep.entropy_exponent == 0
    assert rep.witness.terminal_exponent == 0


def test_scale_identity():
    rep = scale(identity(3), 2)
    assert (rep.scale_exponent, rep.entropy_exponent) == (0, 0)
    assert rep.witness.terminal_n == 0


def test_scale_diagonal():
    rep = scale(diag(F(1, 2), F(1, 4), 2), 2)
    assert rep.scale_exponent == rep.entropy_exponent == 3
    assert rep.witness.terminal_exponent == 3


def test_scale_rejects_singular():
    with pytest.raises(SingularMatrixError):
        scale(((1, 2), (2, 4)), 3)


def test_scale_engines_agree_on_random_inputs(rng):
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        m = random_matrix(rng, p, rng.randint(1, 3))
        rep = scale(m, p)
        assert rep.scale_exponent == rep.entropy_exponent == rep.witness.terminal_exponent


def test_scale_report_json():
    rep = scale(swap_matrix(3), 3, seed=11)
    out = json.loads(json.dumps(rep.to_json()))
    assert out["seed"] == 11
    assert {"p", "n", "scale_exponent", "entropy_exponent", "tidy_trace", "newton"} <= set(out)
    assert out["tidy_trace"][0] == {"n": 0, "s_exponent": 1}
    assert set(out["newton"]) == {"vertices", "segments"}


@pytest.mark.parametrize("p", [2, 3])
def test_laws_swap_square(p):
    rep = check_laws(swap_matrix(p), identity(1), identity(2), 2, p)
    assert rep.passed and rep.checks["power"]


def test_laws_trivial_conjugation(rng):
    m = random_matrix(rng, 3, 3)
    rep = check_laws(m, m, identity(3), 1, 3)
    assert rep.checks["conjugation"]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_laws_block_diagonal(p):
    rep = check_laws(diag(F(1, p)), diag(F(1, p**2)), identity(1), 1, p)
    assert rep.passed
    assert rep.checks["product"] and rep.checks["extension"]


def test_laws_random(rng):
    for _ in range(30):
        p = rng.choice([2, 3, 5])
        m, n_mat, q, c = random_law_inputs(rng, p, rng.randint(1, 3), rng.randint(1, 2))
        rep = check_laws(m, n_mat, q, rng.randint(0, 4), p, c)
        assert rep.passed, rep.failures


def test_laws_bad_shapes():
    with pytest.raises(Exception):
        check_laws(identity(2), identity(1), identity(3), 1, 2)
    with pytest.raises(ValueError):
        check_laws(identity(2), identity(1), identity(2), -1, 2)


def test_inequality_identity():
    rep = check_inequality(identity(2), 3, 10, seed=1)
    assert rep.scale_exponent == 0
    assert all(v >= 0 for v in rep.local_exponents)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_inequality_swap_strict(p):
    rep = check_inequality(swap_matrix(p), p, 1, lattices=[Lattice.standard(p, 2)])
    assert rep.local_exponents[0] == 1 and rep.scale_exponent == 0
    assert rep.strict >= 1


def test_inequality_random(rng):
    for _ in range(5):
        p = rng.choice([2, 3, 5])
        m = random_matrix(rng, p, rng.randint(1, 3))
        rep = check_inequality(m, p, 50, rng=rng)
        assert min(rep.local_exponents) >= rep.scale_exponent


def test_inequality_needs_trials():
    with pytest.raises(ValueError):
        check_inequality(identity(1), 2, 0)


def test_properties_seeded():
    a = run_properties(15, seed=3)
    b = run_properties(15, seed=3)
    assert a == b
    assert a["passed"]
    assert a["seed"] == 3


def test_random_lattice_seeded():
    from tdlc_scale.lattice_qp import random_lattice

    xs = [random_lattice(random.Random(5), 3, 3) for _ in range(2)]
    assert xs[0] == xs[1]
    for row in xs[0].basis:
        assert all(isinstance(x, Fraction) for x in row)


def test_verification_error_carries_witness():
    err = VerificationError("x", witness={"a": 1})
    assert err.witness == {"a": 1}
