"""Pontryagin duality on the self-dual group Q_p^n.

Q_p^n is identified with its dual through ``(x, y) -> chi(x . y)`` where
``chi`` is a character of Q_p with kernel Z_p.  Under this identification
the annihilator of a lattice ``L`` is the dual lattice (inverse-transpose
basis) and the dual of ``x -> Mx`` is ``y -> M^T y``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VerificationError
from .lattice_qp import Lattice, dual, s_local, tidy_iterate
from .matrices import as_matrix, require_invertible, to_json, transpose
from .poly_newton import matrix_scale_exponent


@dataclass(frozen=True)
class DualLattice:
    underlying: Lattice

    @property
    def p(self) -> int:
        return self.underlying.p

    def annihilator(self) -> "DualLattice":
        return DualLattice(dual(self.underlying))


def dual_lattice(lat: Lattice) -> DualLattice:
    return DualLattice(dual(lat))


def dual_automorphism(m):
    return transpose(require_invertible(as_matrix(m, square=True)))


@dataclass(frozen=True)
class BridgeReport:
    local: int
    dual_local: int
    scale: int
    dual_scale: int

    def to_json(self) -> dict:
        return {
            "s_local": self.local,
            "s_local_dual": self.dual_local,
            "scale_exponent": self.scale,
            "scale_exponent_dual": self.dual_scale,
        }


def check_bridge(m, lat: Lattice) -> BridgeReport:
    m = require_invertible(as_matrix(m, square=True))
    mt = dual_automorphism(m)
    ann = dual_lattice(lat).underlying
    rep = BridgeReport(
        s_local(m, lat),
        s_local(mt, ann),
        matrix_scale_exponent(m, lat.p),
        matrix_scale_exponent(mt, lat.p),
    )
    if rep.local != rep.dual_local or rep.scale != rep.dual_scale:
        raise VerificationError(
            "bridge identity violated",
            witness={"matrix": to_json(m), "lattice": lat.to_json(), **rep.to_json()},
        )
    return rep


def check_minimizing_correspondence(m, lat: Lattice) -> bool:
    """A tidy witness for ``M`` dualizes to a minimizing lattice for ``M^T``."""
    trace = tidy_iterate(m, lat)
    tidy = trace.terminal_lattice
    mt = dual_automorphism(m)
    return s_local(mt, dual(tidy)) == matrix_scale_exponent(mt, lat.p) == trace.terminal_exponent
