"""The left shift on F^Z, F = Z(p^K), restricted to coordinatewise cylinders.

A cylinder is a product ``prod_i p^{e_i} F``: exponent 0 is the whole
coordinate group, exponent K is ``{0}``.  Subgroups of a cyclic p-group
form a chain, so intersection and sum are coordinatewise max and min of
exponents, and an index is a finite sum of exponent differences.

Three topologies are modelled, each by the compact open subgroup ``O``
that carries the product topology:

``FULL_COMPACT``
    ``O = F^Z``; G is compact.
``RIGHT_OPEN``
    ``O = F^{i >= 0}`` (zero on negative coordinates).
``HEIGHT_OPEN``
    ``O = (p^{K-1} F)^Z``, a stand-in for ``Z(p)^Z`` inside ``Z(p^inf)^Z``.

A compact open cylinder is then one whose tails agree with ``O``'s.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

from .errors import InadmissibleCylinderError, InfiniteIndexError, InputError, VerificationError
from .exact_arith import check_prime


class Mode(str, enum.Enum):
    FULL_COMPACT = "FULL_COMPACT"
    RIGHT_OPEN = "RIGHT_OPEN"
    HEIGHT_OPEN = "HEIGHT_OPEN"


@dataclass(frozen=True)
class Cylinder:
    """Exponent ``left`` for ``i < lo``, ``window[i - lo]`` on ``lo..hi``, ``right`` for ``i > hi``.

    Stored trimmed: window entries equal to the adjacent tail are absorbed,
    so equal subgroups have equal fields.
    """

    lo: int
    hi: int
    left: int
    window: Tuple[int, ...]
    right: int

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        lo, hi = int(self.lo), int(self.hi)
        if hi - lo + 1 != len(w):
            raise InputError(f"window has {len(w)} entries but lo..hi spans {hi - lo + 1}")
        if min((self.left, self.right) + w) < 0:
            raise InputError("cylinder exponents must be non-negative")
        while w and w[0] == self.left:
            w, lo = w[1:], lo + 1
        while w and w[-1] == self.right:
            w, hi = w[:-1], hi - 1
        if not w:
            hi = lo - 1
            if self.left == self.right:
                lo, hi = 0, -1
        object.__setattr__(self, "window", w)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def constant(cls, e: int) -> "Cylinder":
        return cls(0, -1, e, (), e)

    def exp(self, i: int) -> int:
        if i < self.lo:
            return self.left
        if i > self.hi:
            return self.right
        return self.window[i - self.lo]

    @property
    def top(self) -> int:
        return max((self.left, self.right) + self.window)

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "left": self.left,
            "window": list(self.window),
            "right": self.right,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Cylinder":
        try:
            return cls(int(obj["lo"]), int(obj["hi"]), int(obj["left"]),
                       tuple(obj["window"]), int(obj["right"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed cylinder {obj!r}: {exc}") from None


@dataclass(frozen=True)
class ShiftSystem:
    p: int
    K: int
    mode: Mode

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.K < 1:
            raise InputError("height K must be at least 1")
        if self.mode is Mode.HEIGHT_OPEN and self.K < 2:
            raise InputError("HEIGHT_OPEN needs K >= 2")

    @property
    def tails(self) -> Tuple[int, int]:
        return {
            Mode.FULL_COMPACT: (0, 0),
            Mode.RIGHT_OPEN: (self.K, 0),
            Mode.HEIGHT_OPEN: (self.K - 1, self.K - 1),
        }[self.mode]

    def open_subgroup(self) -> Cylinder:
        left, right = self.tails
        return Cylinder(0, -1, left, (), right)

    def admissible(self, v: Cylinder) -> Cylinder:
        if v.top > self.K:
            raise InadmissibleCylinderError(f"exponent above K={self.K} in {v.to_json()}")
        if (v.left, v.right) != self.tails:
            raise InadmissibleCylinderError(
                f"cylinder with tails ({v.left}, {v.right}) is not compact open in "
                f"{self.mode.value}; tails must be {self.tails}"
            )
        return v

    def to_json(self) -> dict:
        return {"p": self.p, "K": self.K, "mode": self.mode.value}

    @classmethod
    def from_json(cls, obj: dict) -> "ShiftSystem":
        try:
            return cls(int(obj["p"]), int(obj["K"]), Mode(obj["mode"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed shift system {obj!r}: {exc}") from None


# coordinatewise operations ----------------------------------------------


def _combine(v: Cylinder, w: Cylinder, f: Callable[[int, int], int]) -> Cylinder:
    lo = min(v.lo, w.lo)
    hi = max(v.hi, w.hi)
    return Cylinder(lo, hi, f(v.left, w.left),
                    tuple(f(v.exp(i), w.exp(i)) for i in range(lo, hi + 1)),
                    f(v.right, w.right))


def _span(*cyls: Cylinder) -> range:
    return range(min(c.lo for c in cyls), max(c.hi for c in cyls) + 1)


def shift_image(v: Cylinder, k: int = 1) -> Cylinder:
    """``sigma^k(V)``: the exponent at ``i`` becomes V's exponent at ``i + k``."""
    return Cylinder(v.lo - k, v.hi - k, v.left, v.window, v.right)


def meet(v: Cylinder, w: Cylinder) -> Cylinder:
    return _combine(v, w, max)


def join(v: Cylinder, w: Cylinder) -> Cylinder:
    return _combine(v, w, min)


def contains(big: Cylinder, small: Cylinder) -> bool:
    return (small.left >= big.left and small.right >= big.right
            and all(small.exp(i) >= big.exp(i) for i in _span(big, small)))


def cyl_index(small: Cylinder, big: Cylinder) -> int:
    """Exponent of ``[big : small]`` for ``small ⊆ big``."""
    if not contains(big, small):
        raise InputError("cyl_index needs small ⊆ big")
    if small.left != big.left or small.right != big.right:
        raise InfiniteIndexError("cylinders differ on an infinite tail: the index is infinite")
    return sum(small.exp(i) - big.exp(i) for i in _span(big, small))


def u_plus(v: Cylinder) -> Cylinder:
    """``⋂_{n>=0} sigma^n(V)``: exponent at i is ``max_{j >= i} e(j)``."""
    out = []
    run = v.right
    for x in reversed(v.window):
        run = max(run, x)
        out.append(run)
    return Cylinder(v.lo, v.hi, max(v.left, run), tuple(reversed(out)), v.right)


def u_minus(v: Cylinder) -> Cylinder:
    """``⋂_{n>=0} sigma^{-n}(V)``: exponent at i is ``max_{j <= i} e(j)``."""
    out = []
    run = v.left
    for x in v.window:
        run = max(run, x)
        out.append(run)
    return Cylinder(v.lo, v.hi, v.left, tuple(out), max(v.right, run))


def _closed_union(chain_member: Cylinder, limit: Cylinder, system: ShiftSystem) -> bool:
    # A subgroup is closed iff its trace on the open subgroup O is closed in
    # O's product topology; an increasing union of cylinders there is closed
    # iff it differs from its coordinatewise limit at finitely many places.
    o = system.open_subgroup()
    a, b = meet(chain_member, o), meet(limit, o)
    return a.left == b.left and a.right == b.right


def u_plusplus(v: Cylinder, system: ShiftSystem) -> Tuple[Cylinder, bool]:
    """Coordinatewise limit of ``sigma^n(V_+)`` and whether the union is closed."""
    vp_ = u_plus(v)
    limit = Cylinder.constant(vp_.right)  # V_+ is non-increasing in i
    return limit, _closed_union(vp_, limit, system)


def u_minusminus(v: Cylinder, system: ShiftSystem) -> Tuple[Cylinder, bool]:
    vm = u_minus(v)
    limit = Cylinder.constant(vm.left)
    return limit, _closed_union(vm, limit, system)


@dataclass(frozen=True)
class TidyVerdict:
    tidy_above: bool
    tidy_below: bool
    minusminus_closed: bool

    @property
    def tidy(self) -> bool:
        return self.tidy_above and self.tidy_below

    def to_json(self) -> dict:
        return {
            "tidy_above": self.tidy_above,
            "tidy_below": self.tidy_below,
            "minusminus_closed": self.minusminus_closed,
        }


def tidy_check(v: Cylinder, system: ShiftSystem) -> TidyVerdict:
    system.admissible(v)
    above = join(u_plus(v), u_minus(v)) == v
    _, below = u_plusplus(v, system)
    _, mm = u_minusminus(v, system)
    return TidyVerdict(above, below, mm)


def s_sigma(v: Cylinder) -> int:
    img = shift_image(v, 1)
    return cyl_index(meet(v, img), img)


def H_sigma(v: Cylinder) -> int:
    vp_ = u_plus(v)
    return cyl_index(vp_, shift_image(vp_, 1))


# global invariants --------------------------------------------------------


def nub(system: ShiftSystem) -> Cylinder:
    """Largest shift-stable compact subgroup with no proper stable open subgroup.

    Among cylinders the stable ones are constant; the largest compact
    constant cylinder is the whole group, ``{0}``, or ``O`` by mode.  It is
    ``{0}`` exactly when ``O`` itself is not stable.
    """
    return Cylinder.constant({
        Mode.FULL_COMPACT: 0,
        Mode.RIGHT_OPEN: system.K,
        Mode.HEIGHT_OPEN: system.K - 1,
    }[system.mode])


def is_trivial(v: Cylinder, system: ShiftSystem) -> bool:
    return v == Cylinder.constant(system.K)


def local_base(system: ShiftSystem, n: int) -> Cylinder:
    """``V_n``: zero on coordinates ``-n..n``, the mode's tails elsewhere."""
    left, right = system.tails
    return Cylinder(-n, n, left, (system.K,) * (2 * n + 1), right)


def generated_family(system: ShiftSystem, depth: int = 4,
                     extra: Iterable[Cylinder] = ()) -> List[Cylinder]:
    # O is constant (hence stable) in the two modes where a stable one exists
    fam = [system.open_subgroup()]
    fam.extend(local_base(system, n) for n in range(depth + 1))
    fam.extend(system.admissible(c) for c in extra)
    return fam


@dataclass(frozen=True)
class ScaleResult:
    exponent: int
    witness: Cylinder
    verdict: TidyVerdict


def scale(system: ShiftSystem, depth: int = 4, extra: Iterable[Cylinder] = ()) -> ScaleResult:
    """Minimum of ``s_sigma`` over the generated family; the minimizer must be tidy."""
    fam = generated_family(system, depth, extra)
    best = min(fam, key=s_sigma)
    verdict = tidy_check(best, system)
    if not verdict.tidy:
        raise VerificationError(
            "minimizing cylinder is not tidy",
            witness={"cylinder": best.to_json(), **verdict.to_json()},
        )
    return ScaleResult(s_sigma(best), best, verdict)


def h_top(system: ShiftSystem, depth: int = 4, extra: Iterable[Cylinder] = ()) -> int:
    """Supremum of ``H_sigma`` over the local base ``V_0..V_depth`` plus ``extra``."""
    fam = [local_base(system, n) for n in range(depth + 1)]
    fam.extend(system.admissible(c) for c in extra)
    return max(H_sigma(v) for v in fam)


def random_cylinder(rng: random.Random, system: ShiftSystem, max_width: int = 6) -> Cylinder:
    left, right = system.tails
    width = rng.randint(0, max_width)
    lo = rng.randint(-4, 4)
    window = tuple(rng.randint(0, system.K) for _ in range(width))
    return Cylinder(lo, lo + width - 1, left, window, right)


__all__ = [
    "Cylinder",
    "H_sigma",
    "Mode",
    "ScaleResult",
    "ShiftSystem",
    "TidyVerdict",
    "contains",
    "cyl_index",
    "generated_family",
    "h_top",
    "is_trivial",
    "join",
    "local_base",
    "meet",
    "nub",
    "random_cylinder",
    "s_sigma",
    "scale",
    "shift_image",
    "tidy_check",
    "u_minus",
    "u_minusminus",
    "u_plus",
    "u_plusplus",
]
