"""Full-rank Z_p-lattices in Q_p^n.

A lattice is stored through a generator matrix whose *columns* span it
over Z_p.  Because every entry is rational, all computations happen over
the localization Z_(p) of the integers at p, which has the same lattice
theory as Z_p for rational inputs.  Each lattice is brought to a column
normal form (lower triangular, pivots ``p**k``, entries left of a pivot
reduced to a fixed residue system modulo the pivot), so equality of
lattices is equality of normal forms.

Indices between nested lattices are powers of p and are returned as
exponents.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DimensionError,
    EnumerationBoundError,
    IterationCapError,
    NotContainedError,
    SingularMatrixError,
    VerificationError,
)
from .exact_arith import check_prime, unit_part, vp
from .matrices import (
    Matrix,
    as_matrix,
    det,
    hstack,
    identity,
    inverse,
    matmul,
    require_invertible,
    to_json,
    transpose,
)
from .poly_newton import matrix_scale_exponent

DEFAULT_MAX_STEPS = 64
DEFAULT_WINDOW = 3
MAX_STEPS_ENV = "TDLC_SCALE_MAX_STEPS"


def default_max_steps() -> int:
    raw = os.environ.get(MAX_STEPS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value > 0:
            return value
    return DEFAULT_MAX_STEPS


def _residue(a: Fraction, k: int, p: int) -> Fraction:
    """Canonical representative of ``a`` modulo ``p**k * Z_(p)``.

    The result is ``p**v * t`` with ``t`` an integer in ``[0, p**(k-v))``.
    """
    if a == 0:
        return Fraction(0)
    v = vp(a, p)
    if v >= k:
        return Fraction(0)
    u = unit_part(a, p)
    mod = p ** (k - v)
    t = (u.numerator * pow(u.denominator, -1, mod)) % mod
    return Fraction(p) ** v * t


def _normal_form(gens: Matrix, p: int) -> Matrix:
    n = len(gens)
    cols = [list(c) for c in transpose(gens)]
    pivots: List[List[Fraction]] = []
    exps: List[int] = []
    for row in range(n):
        best = None
        for j, c in enumerate(cols):
            if c[row] != 0:
                v = vp(c[row], p)
                if best is None or v < best[0]:
                    best = (v, j)
        if best is None:
            raise SingularMatrixError("generators do not span a full-rank lattice")
        k, j = best
        piv = cols.pop(j)
        # scaling by a p-adic unit keeps the lattice unchanged
        u = unit_part(piv[row], p)
        piv = [x / u for x in piv]
        for c in cols:
            if c[row] != 0:
                f = c[row] / piv[row]
                for r in range(row, n):
                    c[r] -= f * piv[r]
        pivots.append(piv)
        exps.append(k)
    assert all(x == 0 for c in cols for x in c)
    # reduce entries left of each pivot
    for i in range(1, n):
        pi = pivots[i]
        for j in range(i):
            pj = pivots[j]
            rep = _residue(pj[i], exps[i], p)
            q = (pj[i] - rep) / pi[i]
            if q:
                for r in range(i, n):
                    pj[r] -= q * pi[r]
    return transpose(tuple(tuple(c) for c in pivots))


@dataclass(frozen=True)
class Lattice:
    """Z_p-span of the columns of ``basis``, kept in normal form."""

    p: int
    basis: Matrix
    _det_v: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        check_prime(self.p)
        b = as_matrix(self.basis, square=True)
        b = _normal_form(b, self.p)
        object.__setattr__(self, "basis", b)
        dv = sum(vp(b[i][i], self.p) for i in range(len(b)))
        object.__setattr__(self, "_det_v", dv)

    @classmethod
    def standard(cls, p: int, n: int) -> "Lattice":
        return cls(p, identity(n))

    @classmethod
    def from_generators(cls, p: int, gens) -> "Lattice":
        """Lattice spanned by the columns of an n x m matrix (m >= n)."""
        check_prime(p)
        g = as_matrix(gens)
        if len(g[0]) < len(g):
            raise SingularMatrixError("too few generators for a full-rank lattice")
        return cls(p, _normal_form(g, p))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def det_valuation(self) -> int:
        return self._det_v

    def contains(self, other: "Lattice") -> bool:
        _compatible(self, other)
        coords = matmul(inverse(self.basis), other.basis)
        return all(x == 0 or vp(x, self.p) >= 0 for row in coords for x in row)

    def contains_vector(self, vec: Sequence) -> bool:
        col = tuple((Fraction(x),) for x in vec)
        coords = matmul(inverse(self.basis), col)
        return all(r[0] == 0 or vp(r[0], self.p) >= 0 for r in coords)

    def __le__(self, other: "Lattice") -> bool:
        return other.contains(self)

    def to_json(self) -> dict:
        return {"p": self.p, "basis": to_json(self.basis)}

    @classmethod
    def from_json(cls, obj: dict) -> "Lattice":
        return cls(int(obj["p"]), as_matrix(obj["basis"], square=True))


def _compatible(a: Lattice, b: Lattice) -> None:
    if a.p != b.p:
        raise DimensionError(f"lattices over different primes ({a.p} vs {b.p})")
    if a.dim != b.dim:
        raise DimensionError(f"lattices of different dimension ({a.dim} vs {b.dim})")


def _check_action(m, lat: Lattice) -> Matrix:
    m = require_invertible(as_matrix(m, square=True))
    if len(m) != lat.dim:
        raise DimensionError(f"{len(m)}x{len(m)} matrix acting on a rank-{lat.dim} lattice")
    return m


def image(m, lat: Lattice) -> Lattice:
    m = _check_action(m, lat)
    return Lattice(lat.p, matmul(m, lat.basis))


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    _compatible(a, b)
    return Lattice.from_generators(a.p, hstack(a.basis, b.basis))


def dual(lat: Lattice) -> Lattice:
    """Dual lattice under the standard pairing: inverse-transpose basis."""
    return Lattice(lat.p, transpose(inverse(lat.basis)))


def intersect(a: Lattice, b: Lattice) -> Lattice:
    _compatible(a, b)
    return dual(lattice_sum(dual(a), dual(b)))


def index(small: Lattice, big: Lattice) -> int:
    """Exponent ``e`` with ``[big : small] = p**e``."""
    _compatible(small, big)
    if not big.contains(small):
        raise NotContainedError("index requested for a lattice that is not a sublattice")
    return small.det_valuation - big.det_valuation


def s_local(m, lat: Lattice) -> int:
    """Exponent of ``[M(L) : L ∩ M(L)]``."""
    img = image(m, lat)
    return index(intersect(lat, img), img)


def chain(m, lat: Lattice, n: int, direction: str = "forward") -> Lattice:
    """``⋂_{k=0}^{n} M^k(L)`` (forward) or ``⋂_{k=0}^{n} M^{-k}(L)`` (backward)."""
    if n < 0:
        raise ValueError("chain length must be non-negative")
    m = _check_action(m, lat)
    if direction == "backward":
        m = inverse(m)
    elif direction != "forward":
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    cur = lat
    for _ in range(n):
        cur = intersect(lat, image(m, cur))
    return cur


def entropy_exponent(
    m,
    lat: Lattice,
    window: int = DEFAULT_WINDOW,
    max_steps: Optional[int] = None,
) -> Tuple[int, int]:
    """Stabilized increment of ``n -> log_p [L : L_{-n}]``.

    Returns ``(increment, start)`` where ``start`` is the first ``n`` of
    the run of ``window`` equal increments ``c_{n+1} - c_n``.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    cap = max_steps or default_max_steps()
    m = _check_action(m, lat)
    inv = inverse(m)
    increments: List[int] = []
    prev_c = 0
    cur = lat
    for _ in range(cap):
        cur = intersect(lat, image(inv, cur))
        c = index(cur, lat)
        increments.append(c - prev_c)
        prev_c = c
        tail = increments[-window:]
        if len(tail) == window and len(set(tail)) == 1:
            return tail[0], len(increments) - window
    raise IterationCapError(
        f"entropy increments did not stabilize within {cap} steps",
        trace=increments,
    )


@dataclass(frozen=True)
class TidyStep:
    n: int
    lattice: Lattice
    s_exponent: int


@dataclass(frozen=True)
class TidyTrace:
    steps: Tuple[TidyStep, ...]
    terminal_n: int
    terminal_exponent: int

    @property
    def terminal_lattice(self) -> Lattice:
        return self.steps[-1].lattice

    def to_json(self, include_lattices: bool = False) -> list:
        out = []
        for st in self.steps:
            d = {"n": st.n, "s_exponent": st.s_exponent}
            if include_lattices:
                d["lattice"] = st.lattice.to_json()
            out.append(d)
        return out


def tidy_iterate(m, lat: Lattice, max_steps: Optional[int] = None) -> TidyTrace:
    """Walk ``U_0 = L, U_1, U_2, ...`` until ``s(M, U_k)`` reaches the scale.

    The target value comes from the Newton polygon of the characteristic
    polynomial; reaching it certifies that ``U_k`` is tidy.
    """
    cap = max_steps or default_max_steps()
    m = _check_action(m, lat)
    target = matrix_scale_exponent(m, lat.p)
    steps: List[TidyStep] = []
    cur = lat
    for k in range(cap + 1):
        s = s_local(m, cur)
        steps.append(TidyStep(k, cur, s))
        if s == target:
            return TidyTrace(tuple(steps), k, s)
        if s < target:
            raise VerificationError(
                f"s(M, U_{k}) = {s} fell below the Newton value {target}", witness=steps
            )
        cur = intersect(cur, image(m, cur))
    raise IterationCapError(
        f"no tidy U_n found within {cap} steps (target exponent {target})", trace=steps
    )


def brute_index(small: Lattice, big: Lattice, k: int, max_elements: int = 1 << 16) -> int:
    """Index exponent by enumerating ``big / p^k big`` explicitly.

    Independent of determinants: counts the residues ``c mod p^k`` whose
    vector ``B_big c`` lands in ``small``.
    """
    _compatible(small, big)
    p, n = big.p, big.dim
    total = p ** (k * n)
    if total > max_elements:
        raise EnumerationBoundError(
            f"quotient of size {p}^{k * n} exceeds the enumeration bound {max_elements}"
        )
    if not big.contains(small):
        raise NotContainedError("brute_index needs small ⊆ big")
    scaled = Lattice(p, tuple(tuple(x * p**k for x in row) for row in big.basis))
    if not small.contains(scaled):
        raise EnumerationBoundError(f"p^{k}·big is not inside small; raise k")
    to_small = matmul(inverse(small.basis), big.basis)
    count = 0
    for c in itertools.product(range(p**k), repeat=n):
        ok = True
        for row in to_small:
            x = sum((a * ci for a, ci in zip(row, c)), Fraction(0))
            if x != 0 and vp(x, p) < 0:
                ok = False
                break
        count += ok
    q, e = total // count, 0
    assert total % count == 0
    while q > 1:
        assert q % p == 0
        q //= p
        e += 1
    return e


# random generation -------------------------------------------------------


def _units(p: int, bound: int = 9) -> List[int]:
    return [u for u in range(1, bound + 1) if u % p]


def random_entry(rng: random.Random, p: int, amin: int = -3, amax: int = 3) -> Fraction:
    u = rng.choice(_units(p)) * rng.choice((1, -1))
    return Fraction(p) ** rng.randint(amin, amax) * u


def random_matrix(rng: random.Random, p: int, n: int, amin: int = -3, amax: int = 3) -> Matrix:
    """Invertible n x n matrix with entries ``p**a * u``, ``a`` in ``[amin, amax]``."""
    while True:
        m = tuple(tuple(random_entry(rng, p, amin, amax) for _ in range(n)) for _ in range(n))
        if det(m) != 0:
            return m


def random_lattice(rng: random.Random, p: int, n: int) -> Lattice:
    return Lattice(p, random_matrix(rng, p, n))


__all__ = [
    "DEFAULT_MAX_STEPS",
    "DEFAULT_WINDOW",
    "Lattice",
    "TidyStep",
    "TidyTrace",
    "brute_index",
    "chain",
    "dual",
    "entropy_exponent",
    "image",
    "index",
    "intersect",
    "lattice_sum",
    "random_lattice",
    "random_matrix",
    "s_local",
    "tidy_iterate",
]
