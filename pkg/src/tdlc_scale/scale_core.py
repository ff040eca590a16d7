"""Scale and entropy of matrix automorphisms of Q_p^n, with law checks.

:func:`scale` runs three independent routes (Newton polygon, tidying
iteration from ``Z_p^n``, stabilized entropy increments) and refuses to
return unless they agree.  The ``check_*`` functions verify the
power, conjugation, product and extension laws and the inequality
``s(M, L) >= s(M)`` as exact exponent identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .errors import DimensionError, IterationCapError, VerificationError
from .exact_arith import check_prime
from .lattice_qp import (
    DEFAULT_WINDOW,
    Lattice,
    TidyTrace,
    entropy_exponent,
    random_lattice,
    random_matrix,
    s_local,
    tidy_iterate,
)
from .matrices import (
    Matrix,
    as_matrix,
    block_diag,
    block_upper,
    identity,
    inverse,
    mat_pow,
    matmul,
    require_invertible,
    to_json,
)
from .poly_newton import NewtonPolygon, char_poly, matrix_scale_exponent, newton_polygon


@dataclass(frozen=True)
class ScaleReport:
    p: int
    n: int
    scale_exponent: int
    entropy_exponent: int
    entropy_start: int
    witness: TidyTrace
    newton: NewtonPolygon
    seed: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "scale_exponent": self.scale_exponent,
            "entropy_exponent": self.entropy_exponent,
            "entropy_stabilization_n": self.entropy_start,
            "tidy_trace": self.witness.to_json(),
            "tidy_terminal_lattice": self.witness.terminal_lattice.to_json(),
            "newton": self.newton.to_json(),
            "seed": self.seed,
        }


def scale(
    m,
    p: int,
    *,
    window: int = DEFAULT_WINDOW,
    max_steps: Optional[int] = None,
    seed: Optional[int] = None,
) -> ScaleReport:
    check_prime(p)
    m = require_invertible(as_matrix(m, square=True))
    n = len(m)
    poly = char_poly(m)
    newton = newton_polygon(poly, p)
    closed_form = matrix_scale_exponent(m, p)
    std = Lattice.standard(p, n)
    trace = tidy_iterate(m, std, max_steps=max_steps)
    try:
        h, start = entropy_exponent(m, std, window=window, max_steps=max_steps)
    except IterationCapError as exc:
        raise VerificationError(str(exc), witness={"increments": exc.trace}) from exc
    if not (closed_form == trace.terminal_exponent == h):
        raise VerificationError(
            "scale engines disagree",
            witness={
                "matrix": to_json(m),
                "newton": newton.to_json(),
                "tidy_trace": trace.to_json(include_lattices=True),
                "entropy": h,
            },
        )
    return ScaleReport(p, n, closed_form, h, start, trace, newton, seed)


# law checks ---------------------------------------------------------------


@dataclass
class LawReport:
    passed: bool = True
    checks: Dict[str, bool] = field(default_factory=dict)
    failures: List[Dict[str, Any]] = field(default_factory=list)
    seed: Optional[int] = None

    def record(self, name: str, ok: bool, **data) -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.passed = False
            self.failures.append({"law": name, **data})

    def merge(self, other: "LawReport") -> None:
        for name, ok in other.checks.items():
            self.checks[name] = self.checks.get(name, True) and ok
        self.failures.extend(other.failures)
        self.passed = self.passed and other.passed

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checks": dict(sorted(self.checks.items())),
            "failures": self.failures,
            "seed": self.seed,
        }


def check_laws(m, n_mat, q, k: int, p: int, c=None) -> LawReport:
    """Exact exponent forms of the power, conjugation and product laws.

    ``c`` is the off-diagonal block for the block-triangular check (zero
    block when omitted).
    """
    check_prime(p)
    m = require_invertible(as_matrix(m, square=True))
    n_mat = require_invertible(as_matrix(n_mat, square=True))
    q = require_invertible(as_matrix(q, square=True))
    if len(q) != len(m):
        raise DimensionError("conjugating matrix must match M")
    if k < 0:
        raise ValueError("power must be non-negative")
    e = lambda a: matrix_scale_exponent(a, p)  # noqa: E731
    em, en = e(m), e(n_mat)
    rep = LawReport()

    ek = e(mat_pow(m, k))
    rep.record("power", ek == k * em, matrix=to_json(m), k=k, lhs=ek, rhs=k * em)

    conj = matmul(matmul(q, m), inverse(q))
    ec = e(conj)
    rep.record("conjugation", ec == em, matrix=to_json(m), q=to_json(q), lhs=ec, rhs=em)

    eb = e(block_diag(m, n_mat))
    rep.record("product", eb == em + en, lhs=eb, rhs=em + en)

    if c is not None:
        c = as_matrix(c)
        if len(c) != len(m) or len(c[0]) != len(n_mat):
            raise DimensionError("off-diagonal block has the wrong shape")
    et = e(block_upper(m, c, n_mat))
    rep.record("extension", et == em + en, lhs=et, rhs=em + en)
    return rep


@dataclass
class InequalityReport:
    scale_exponent: int
    local_exponents: List[int]
    strict: int
    seed: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "scale_exponent": self.scale_exponent,
            "local_exponents": self.local_exponents,
            "strict_count": self.strict,
            "seed": self.seed,
        }


def check_inequality(
    m,
    p: int,
    trials: int,
    *,
    seed: int = 0,
    rng: Optional[random.Random] = None,
    lattices: Optional[List[Lattice]] = None,
) -> InequalityReport:
    """``s(M, L) >= s(M)`` on ``trials`` random lattices (plus any given ones)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    m = require_invertible(as_matrix(m, square=True))
    rng = rng or random.Random(seed)
    target = matrix_scale_exponent(m, p)
    lats = list(lattices or []) + [random_lattice(rng, p, len(m)) for _ in range(trials)]
    values = []
    for lat in lats:
        s = s_local(m, lat)
        if s < target:
            raise VerificationError(
                f"s(M, L) = p^{s} below s(M) = p^{target}",
                witness={"matrix": to_json(m), "lattice": lat.to_json()},
            )
        values.append(s)
    return InequalityReport(target, values, sum(v > target for v in values), seed)


# property suite ------------------------------------------------------------


def random_law_inputs(rng: random.Random, p: int, n: int, n2: int):
    m = random_matrix(rng, p, n)
    n_mat = random_matrix(rng, p, n2)
    q = random_matrix(rng, p, n)
    c = tuple(tuple(_rand_entry_or_zero(rng, p) for _ in range(n2)) for _ in range(n))
    return m, n_mat, q, c


def _rand_entry_or_zero(rng, p):
    from .lattice_qp import random_entry

    return random_entry(rng, p) if rng.random() < 0.8 else 0


def run_properties(trials: int, seed: int, primes=(2, 3, 5), max_dim: int = 3) -> dict:
    """Seeded sweep used by the ``props`` command."""
    rng = random.Random(seed)
    laws = LawReport(seed=seed)
    agreement_failures = []
    inequality_violations = 0
    for t in range(trials):
        p = primes[t % len(primes)]
        n = rng.randint(1, max_dim)
        n2 = rng.randint(1, 2)
        m, n_mat, q, c = random_law_inputs(rng, p, n, n2)
        laws.merge(check_laws(m, n_mat, q, rng.randint(0, 4), p, c))
        try:
            scale(m, p)
        except (VerificationError, IterationCapError) as exc:
            agreement_failures.append({"trial": t, "error": str(exc)})
        try:
            check_inequality(m, p, 3, rng=rng)
        except VerificationError:
            inequality_violations += 1
    passed = laws.passed and not agreement_failures and not inequality_violations
    return {
        "passed": passed,
        "seed": seed,
        "trials": trials,
        "laws": laws.to_json(),
        "engine_agreement_failures": agreement_failures,
        "inequality_violations": inequality_violations,
    }


__all__ = [
    "LawReport",
    "InequalityReport",
    "ScaleReport",
    "check_inequality",
    "check_laws",
    "run_properties",
    "scale",
]
